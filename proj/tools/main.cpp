// dissipacert command-line front end: certify / simulate / validate / sweep.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dissipacert/function_class.hpp"
#include "dissipacert/lmi.hpp"
#include "dissipacert/optimizers.hpp"
#include "dissipacert/problem.hpp"
#include "dissipacert/rate_bounds.hpp"
#include "dissipacert/supply_rates.hpp"
#include "dissipacert/validation.hpp"

namespace {

using namespace dissipacert;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- deterministic JSON emission (fixed key order, 17 significant digits) ----

std::string jnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string jvec(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += jnum(v[i]);
  }
  return out + "]";
}

std::string jmat(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) out += ",";
    out += jvec(m.row(r));
  }
  return out + "]";
}

/// Ordered key/value assembly; values are pre-rendered JSON fragments.
class JsonObject {
 public:
  JsonObject& raw(const std::string& key, const std::string& fragment) {
    if (!body_.empty()) body_ += ",";
    body_ += jstr(key) + ":" + fragment;
    return *this;
  }
  JsonObject& num(const std::string& key, double v) { return raw(key, jnum(v)); }
  JsonObject& integer(const std::string& key, long long v) {
    return raw(key, std::to_string(v));
  }
  JsonObject& str(const std::string& key, const std::string& v) {
    return raw(key, jstr(v));
  }
  JsonObject& boolean(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
  }
  std::string render() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

// ---- options ----

struct Opts {
  std::string subcommand;
  std::string method = "svrg1";
  std::string assumption;  // empty: per-method default
  double sigma = 0.1;
  double lipschitz = 1.0;
  double sigma_psi = -1.0;  // composite only; default sigma
  double eta = -1.0;
  int m = -1;
  double tau1 = -1.0, tau2 = -1.0, alpha = -1.0, zeta = -1.0;
  double rho2 = -1.0;
  bool rho2_set = false;
  double tol = 1e-9;
  int n = 5, p = 4;
  std::uint64_t seed = 12345;
  int trials = 200;
  int epochs = 1;
  std::string suite = "all";
  bool json = false, csv = false;
  bool dump_lmi = false, dump_supply = false;
  std::string out_path;
  // sweep grids
  double eta_min = 0.01, eta_max = 0.45;
  int eta_steps = 10;
  double tau1_min = 0.05, tau1_max = 0.5;
  int tau1_steps = 10;
  double tau2_min = 0.2, tau2_max = 0.5;
  int tau2_steps = 4;
};

Method family_of(const Opts& o) { return method_from_string(o.method); }

ComponentAssumption assumption_of(const Opts& o) {
  if (!o.assumption.empty()) return component_assumption_from_string(o.assumption);
  return ComponentAssumption::SmoothConvex;
}

FunctionClass make_fc(const Opts& o) {
  const bool composite = family_of(o) == Method::Katyusha;
  return FunctionClass(o.sigma, o.lipschitz, assumption_of(o), composite);
}

MethodSpec make_spec(const Opts& o) {
  MethodSpec spec;
  spec.family = family_of(o);
  spec.m = o.m > 0 ? o.m : 1;
  switch (spec.family) {
    case Method::SG:
    case Method::SvrgOptionI:
    case Method::SvrgOptionII:
      if (o.eta <= 0.0) throw UsageError("missing required parameter: eta");
      spec.eta = o.eta;
      break;
    case Method::Katyusha: {
      if (o.tau1 <= 0.0 && o.tau2 <= 0.0 && o.alpha <= 0.0 && o.m > 0) {
        spec = MethodSpec::katyusha_recipe(o.sigma, o.lipschitz, o.m);
        break;
      }
      if (o.tau1 <= 0.0) throw UsageError("missing required parameter: tau1");
      if (o.tau2 <= 0.0) throw UsageError("missing required parameter: tau2");
      if (o.alpha <= 0.0) throw UsageError("missing required parameter: alpha");
      spec.tau1 = o.tau1;
      spec.tau2 = o.tau2;
      spec.alpha = o.alpha;
      spec.zeta = o.zeta > 0.0 ? o.zeta : 1.0 / (3.0 * o.lipschitz);
      break;
    }
  }
  return spec;
}

LmiInstance analytic_instance(const FunctionClass& fc, const MethodSpec& spec) {
  switch (spec.family) {
    case Method::SG: return sg_paper_instance(fc, spec.eta);
    case Method::SvrgOptionI: return svrg_i_paper_instance(fc, spec.eta);
    case Method::SvrgOptionII: return svrg_ii_paper_instance(fc, spec.eta);
    case Method::Katyusha: return katyusha_paper_instance(fc, spec);
  }
  throw std::logic_error("unreachable");
}

PFamily p_family_of(Method family) {
  return family == Method::Katyusha ? PFamily::KatyushaAnchor : PFamily::Identity;
}

std::optional<RateReport> try_rate(const FunctionClass& fc, const MethodSpec& spec) {
  try {
    switch (spec.family) {
      case Method::SG: return std::nullopt;
      case Method::SvrgOptionI:
        return fc.assumption() == ComponentAssumption::SmoothOnly
                   ? svrg_i_rate_smooth_only(fc, spec.eta, spec.m)
                   : svrg_i_rate(fc, spec.eta, spec.m);
      case Method::SvrgOptionII: return svrg_ii_rate(fc, spec.eta, spec.m);
      case Method::Katyusha: return katyusha_epoch_rate(fc, spec);
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

Regularizer make_reg(const Opts& o) {
  if (family_of(o) != Method::Katyusha) return Regularizer::none();
  return Regularizer::quadratic_l2(o.sigma_psi > 0.0 ? o.sigma_psi : o.sigma);
}

std::ostream& output_stream(const Opts& o, std::ofstream& file) {
  if (o.out_path.empty()) return std::cout;
  file.open(o.out_path);
  if (!file) throw std::ios_base::failure("cannot open output file: " + o.out_path);
  return file;
}

// ---- certify ----

int run_certify(const Opts& o, std::ostream& out) {
  const FunctionClass fc = make_fc(o);
  const MethodSpec spec = make_spec(o);
  const LmiInstance analytic = analytic_instance(fc, spec);

  Certificate cert;
  std::optional<double> bisected;
  if (o.rho2_set) {
    SearchResult r =
        search_certificate(analytic.system, analytic.supply_rates, o.rho2,
                           p_family_of(spec.family), o.tol, {analytic.lambdas});
    cert = r.best;
    if (spec.family == Method::Katyusha)
      cert.analytic_feasible = katyusha_feasibility_predicate(fc, spec);
  } else {
    cert = spec.family == Method::Katyusha
               ? katyusha_certificate(fc, spec, o.tol)
               : verify_certificate(analytic, o.tol);
    if (cert.verified) {
      try {
        bisected = bisect_rate(analytic.system, analytic.supply_rates,
                               p_family_of(spec.family), 1e-4, o.tol,
                               {analytic.lambdas});
      } catch (const std::exception&) {
      }
    }
  }
  const std::optional<RateReport> rate = try_rate(fc, spec);
  if (rate) cert.derived_nu = rate->nu;

  if (o.json) {
    JsonObject fc_obj;
    fc_obj.num("sigma", fc.sigma())
        .num("lipschitz", fc.lipschitz())
        .str("component_assumption", to_string(fc.assumption()));
    JsonObject spec_obj;
    spec_obj.num("eta", spec.eta)
        .integer("m", spec.m)
        .num("tau1", spec.tau1)
        .num("tau2", spec.tau2)
        .num("alpha", spec.alpha)
        .num("zeta", spec.zeta);
    JsonObject root;
    root.str("subcommand", "certify")
        .str("method", to_string(spec.family))
        .raw("function_class", fc_obj.render())
        .raw("spec", spec_obj.render())
        .num("rho_sq", cert.instance.rho_sq)
        .raw("lambdas", jvec(cert.instance.lambdas))
        .raw("pbar", jmat(cert.instance.pbar))
        .num("lhs_max_eig", cert.lhs_max_eig)
        .boolean("verified", cert.verified)
        .str("failure", cert.failure);
    root.raw("analytic_feasible",
             cert.analytic_feasible ? (*cert.analytic_feasible ? "true" : "false")
                                    : "null");
    root.raw("nu", cert.derived_nu ? jnum(*cert.derived_nu) : "null");
    if (rate) {
      JsonObject terms;
      for (const auto& [k, v] : rate->residual_terms) terms.num(k, v);
      root.raw("nu_terms", terms.render());
    } else {
      root.raw("nu_terms", "null");
    }
    root.raw("bisect_rho_sq", bisected ? jnum(*bisected) : "null");
    if (o.dump_lmi) root.raw("lmi", jmat(assemble_lhs(cert.instance)));
    if (o.dump_supply) {
      std::string arr = "[";
      for (std::size_t j = 0; j < cert.instance.supply_rates.size(); ++j) {
        const auto& s = cert.instance.supply_rates[j];
        if (j) arr += ",";
        JsonObject sr;
        sr.str("name", s.name)
            .str("multiplier_sign",
                 s.multiplier_sign == MultiplierSign::Free ? "free" : "nonnegative")
            .raw("xbar", jmat(s.xbar));
        arr += sr.render();
      }
      root.raw("supply_rates", arr + "]");
    }
    out << root.render() << "\n";
  } else {
    out << "method: " << to_string(spec.family) << "\n"
        << "rho_sq: " << jnum(cert.instance.rho_sq) << "\n"
        << "lambdas:";
    for (int j = 0; j < cert.instance.lambdas.size(); ++j)
      out << " " << jnum(cert.instance.lambdas[j]);
    out << "\n"
        << "lhs_max_eig: " << jnum(cert.lhs_max_eig) << "\n"
        << "verified: " << (cert.verified ? "yes" : "no") << "\n";
    if (!cert.failure.empty()) out << "failure: " << cert.failure << "\n";
    if (cert.analytic_feasible)
      out << "analytic_feasible: " << (*cert.analytic_feasible ? "yes" : "no") << "\n";
    if (cert.derived_nu) out << "nu: " << jnum(*cert.derived_nu) << "\n";
    if (bisected) out << "bisect_rho_sq: " << jnum(*bisected) << "\n";
    if (o.dump_lmi) out << "lmi:\n" << assemble_lhs(cert.instance) << "\n";
  }
  return cert.verified ? 0 : 1;
}

// ---- simulate ----

int run_simulate(const Opts& o, std::ostream& out) {
  const FunctionClass fc = make_fc(o);
  const MethodSpec spec = make_spec(o);
  const FiniteSumProblem prob = generate_problem(o.seed, o.n, o.p, fc, make_reg(o));
  Eigen::VectorXd x0 =
      prob.x_star() + Eigen::VectorXd::Ones(o.p) / std::sqrt(double(o.p));

  if (o.csv) {
    out << "# dissipacert-csv v1\n";
    out << "step,index,v_value,iterate_norm\n";
    Eigen::VectorXd anchor = x0;
    long long step = 0;
    for (int e = 0; e < o.epochs; ++e) {
      EpochTrace tr;
      const std::uint64_t es = epoch_seed(o.seed, e);
      switch (spec.family) {
        case Method::SG: tr = run_sg(prob, spec.eta, spec.m, anchor, es); break;
        case Method::SvrgOptionI:
        case Method::SvrgOptionII:
          tr = run_svrg_epoch(prob, spec.eta, spec.m, spec.family, anchor, es);
          break;
        case Method::Katyusha:
          tr = run_katyusha_epoch(prob, spec, anchor, es);
          break;
      }
      for (int k = 0; k < tr.steps(); ++k) {
        const Eigen::VectorXd& iter =
            spec.family == Method::Katyusha ? tr.y[k + 1] : tr.x[k + 1];
        out << step++ << "," << tr.indices[k] << ","
            << jnum(lyapunov_value(prob, spec.family, iter)) << ","
            << jnum(iter.norm()) << "\n";
      }
      anchor = tr.output;
    }
    return 0;
  }

  auto summaries = run_epochs(prob, spec, o.epochs, x0, o.seed);
  if (o.json) {
    std::string arr = "[";
    for (std::size_t i = 0; i < summaries.size(); ++i) {
      if (i) arr += ",";
      JsonObject s;
      s.integer("epoch", summaries[i].epoch)
          .num("v_before", summaries[i].v_before)
          .num("v_after", summaries[i].v_after)
          .num("anchor_norm", summaries[i].anchor_norm);
      arr += s.render();
    }
    JsonObject root;
    root.str("subcommand", "simulate")
        .str("method", to_string(spec.family))
        .integer("seed", static_cast<long long>(o.seed))
        .integer("n", o.n)
        .integer("p", o.p)
        .raw("epochs", arr + "]");
    out << root.render() << "\n";
  } else {
    for (const auto& s : summaries)
      out << "epoch " << s.epoch << ": V " << jnum(s.v_before) << " -> "
          << jnum(s.v_after) << "\n";
  }
  return 0;
}

// ---- validate ----

std::vector<InequalityReport> suite_appendix(const Opts& o) {
  FunctionClass fc(o.sigma, o.lipschitz, assumption_of(o), false);
  FiniteSumProblem prob =
      generate_problem(o.seed, o.n, o.p, fc, Regularizer::none());
  auto reps = check_appendix_inequalities(prob, o.trials, o.seed + 1);
  auto svrg = check_svrg_supply_bounds(prob, o.trials, o.seed + 2);
  reps.insert(reps.end(), svrg.begin(), svrg.end());
  return reps;
}

std::vector<InequalityReport> suite_katyusha(const Opts& o) {
  FunctionClass fc(o.sigma, o.lipschitz, ComponentAssumption::SmoothConvex, true);
  FiniteSumProblem prob = generate_problem(
      o.seed, o.n, o.p, fc,
      Regularizer::quadratic_l2(o.sigma_psi > 0.0 ? o.sigma_psi : o.sigma));
  MethodSpec spec = MethodSpec::katyusha_recipe(o.sigma, o.lipschitz,
                                                o.m > 0 ? o.m : 10);
  if (o.tau1 > 0.0) spec.tau1 = o.tau1;
  if (o.tau2 > 0.0) spec.tau2 = o.tau2;
  if (o.alpha > 0.0) spec.alpha = o.alpha;
  if (o.zeta > 0.0) spec.zeta = o.zeta;
  return check_katyusha_supply(prob, spec, o.trials, o.seed + 3);
}

std::vector<InequalityReport> suite_dissipation(const Opts& o) {
  std::vector<InequalityReport> reps;
  const int num_paths = std::min(o.trials, 20);
  const int m = o.m > 0 ? o.m : 20;

  auto run_family = [&](Method family, const FunctionClass& fc,
                        const Regularizer& reg, const MethodSpec& spec,
                        const Certificate& cert) {
    FiniteSumProblem prob = generate_problem(o.seed, o.n, o.p, fc, reg);
    Eigen::VectorXd x0 =
        prob.x_star() + Eigen::VectorXd::Ones(o.p) / std::sqrt(double(o.p));
    InequalityReport worst;
    worst.name = "DISS." + to_string(family);
    worst.slack = 1e-8;
    for (int s = 0; s < num_paths; ++s) {
      EpochTrace tr;
      const std::uint64_t es = epoch_seed(o.seed + 7, s);
      switch (family) {
        case Method::SG: tr = run_sg(prob, spec.eta, m, x0, es); break;
        case Method::SvrgOptionI:
        case Method::SvrgOptionII:
          tr = run_svrg_epoch(prob, spec.eta, m, family, x0, es);
          break;
        case Method::Katyusha: tr = run_katyusha_epoch(prob, spec, x0, es); break;
      }
      InequalityReport r = check_dissipation_on_trace(prob, tr, cert);
      worst.trials += r.trials;
      worst.max_violation = std::max(worst.max_violation, r.max_violation);
    }
    worst.pass = worst.max_violation <= worst.slack;
    reps.push_back(worst);
  };

  {
    FunctionClass fc(o.sigma, o.lipschitz, ComponentAssumption::SmoothConvex);
    MethodSpec spec;
    spec.family = Method::SG;
    spec.eta = 0.1 / o.lipschitz;
    spec.m = m;
    run_family(Method::SG, fc, Regularizer::none(), spec,
               verify_certificate(sg_paper_instance(fc, spec.eta)));
  }
  for (Method fam : {Method::SvrgOptionI, Method::SvrgOptionII}) {
    FunctionClass fc(o.sigma, o.lipschitz, ComponentAssumption::SmoothConvex);
    MethodSpec spec;
    spec.family = fam;
    spec.eta = 0.1 / o.lipschitz;
    spec.m = m;
    run_family(fam, fc, Regularizer::none(), spec,
               verify_certificate(fam == Method::SvrgOptionI
                                      ? svrg_i_paper_instance(fc, spec.eta)
                                      : svrg_ii_paper_instance(fc, spec.eta)));
  }
  {
    FunctionClass fc(o.sigma, o.lipschitz, ComponentAssumption::SmoothConvex, true);
    MethodSpec spec = MethodSpec::katyusha_recipe(o.sigma, o.lipschitz, m);
    run_family(Method::Katyusha, fc, Regularizer::quadratic_l2(o.sigma),
               spec, katyusha_certificate(fc, spec));
  }
  return reps;
}

std::vector<InequalityReport> suite_contraction(const Opts& o) {
  std::vector<InequalityReport> reps;
  const int seeds = std::min(o.trials, 200);

  auto start = [](const FiniteSumProblem& prob) {
    return Eigen::VectorXd(prob.x_star() +
                           Eigen::VectorXd::Ones(prob.p()) /
                               std::sqrt(double(prob.p())));
  };
  {
    FunctionClass fc(0.1, 1.0, ComponentAssumption::SmoothConvex);
    FiniteSumProblem prob = generate_problem(o.seed, 50, 10, fc, Regularizer::none());
    MethodSpec spec;
    spec.family = Method::SvrgOptionI;
    spec.eta = 0.01;
    spec.m = 100;
    reps.push_back(check_epoch_contraction(prob, spec, svrg_i_rate(fc, 0.01, 100).nu,
                                           start(prob), seeds, o.seed + 11));
  }
  {
    FunctionClass fc(0.05, 1.0, ComponentAssumption::SmoothConvex);
    FiniteSumProblem prob = generate_problem(o.seed, 50, 10, fc, Regularizer::none());
    MethodSpec spec;
    spec.family = Method::SvrgOptionII;
    spec.eta = 0.1;
    spec.m = 400;
    reps.push_back(check_epoch_contraction(prob, spec, svrg_ii_rate(fc, 0.1, 400).nu,
                                           start(prob), seeds, o.seed + 12));
  }
  {
    FunctionClass fc(0.01, 1.0, ComponentAssumption::SmoothConvex, true);
    FiniteSumProblem prob =
        generate_problem(o.seed, 50, 10, fc, Regularizer::quadratic_l2(0.01));
    MethodSpec spec = MethodSpec::katyusha_recipe(0.01, 1.0, 200);
    reps.push_back(check_epoch_contraction(prob, spec,
                                           katyusha_epoch_rate(fc, spec).nu,
                                           start(prob), seeds, o.seed + 13));
    reps.push_back(
        check_katyusha_coupling_mc(prob, spec, start(prob), seeds, o.seed + 14));
  }
  return reps;
}

int run_validate(const Opts& o, std::ostream& out) {
  std::vector<InequalityReport> reps;
  auto append = [&reps](std::vector<InequalityReport> v) {
    reps.insert(reps.end(), v.begin(), v.end());
  };
  if (o.suite == "appendix" || o.suite == "all") append(suite_appendix(o));
  if (o.suite == "katyusha" || o.suite == "all") append(suite_katyusha(o));
  if (o.suite == "dissipation" || o.suite == "all") append(suite_dissipation(o));
  if (o.suite == "contraction" || o.suite == "all") append(suite_contraction(o));
  if (reps.empty()) throw UsageError("unknown suite: " + o.suite);

  bool all_pass = true;
  for (const auto& r : reps)
    if (!r.skipped && !r.pass) all_pass = false;

  if (o.json) {
    std::string arr = "[";
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (i) arr += ",";
      JsonObject r;
      r.str("name", reps[i].name)
          .integer("trials", reps[i].trials)
          .num("max_violation", reps[i].max_violation)
          .num("slack", reps[i].slack)
          .boolean("pass", reps[i].pass)
          .boolean("skipped", reps[i].skipped)
          .str("reason", reps[i].reason);
      arr += r.render();
    }
    JsonObject root;
    root.str("subcommand", "validate")
        .str("suite", o.suite)
        .integer("seed", static_cast<long long>(o.seed))
        .raw("reports", arr + "]")
        .boolean("pass", all_pass);
    out << root.render() << "\n";
  } else {
    for (const auto& r : reps) {
      if (r.skipped)
        out << "[skip] " << r.name << " (" << r.reason << ")\n";
      else
        out << (r.pass ? "[pass] " : "[FAIL] ") << r.name << " max_violation "
            << jnum(r.max_violation) << " over " << r.trials << " trials\n";
    }
    out << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
  }
  return all_pass ? 0 : 1;
}

// ---- sweep ----

int run_sweep(const Opts& o, std::ostream& out) {
  const Method family = family_of(o);
  out << "# dissipacert-csv v1\n";
  out << "method,sigma,lipschitz,eta,tau1,tau2,alpha,m,rho_sq,lhs_max_eig,"
         "verified,nu,nu_terms\n";

  auto emit = [&](const MethodSpec& spec, const FunctionClass& fc) {
    Certificate cert = spec.family == Method::Katyusha
                           ? katyusha_certificate(fc, spec, o.tol)
                           : verify_certificate(analytic_instance(fc, spec), o.tol);
    std::optional<RateReport> rate = try_rate(fc, spec);
    out << to_string(spec.family) << "," << jnum(fc.sigma()) << ","
        << jnum(fc.lipschitz()) << "," << jnum(spec.eta) << "," << jnum(spec.tau1)
        << "," << jnum(spec.tau2) << "," << jnum(spec.alpha) << "," << spec.m << ","
        << jnum(cert.instance.rho_sq) << "," << jnum(cert.lhs_max_eig) << ","
        << (cert.verified ? 1 : 0) << "," << (rate ? jnum(rate->nu) : "") << ",";
    if (rate) {
      bool first = true;
      for (const auto& [k, v] : rate->residual_terms) {
        if (!first) out << ";";
        out << k << "=" << jnum(v);
        first = false;
      }
    }
    out << "\n";
  };

  const FunctionClass fc = make_fc(o);
  if (family == Method::Katyusha) {
    if (o.alpha <= 0.0) throw UsageError("sweep over katyusha requires alpha");
    for (int i = 0; i < o.tau2_steps; ++i) {
      const double t2 = o.tau2_steps == 1
                            ? o.tau2_min
                            : o.tau2_min + (o.tau2_max - o.tau2_min) * i /
                                               (o.tau2_steps - 1);
      for (int j = 0; j < o.tau1_steps; ++j) {
        MethodSpec spec;
        spec.family = family;
        spec.m = o.m > 0 ? o.m : 100;
        spec.tau2 = t2;
        spec.tau1 = o.tau1_steps == 1
                        ? o.tau1_min
                        : o.tau1_min + (o.tau1_max - o.tau1_min) * j /
                                           (o.tau1_steps - 1);
        spec.alpha = o.alpha;
        spec.zeta = o.zeta > 0.0 ? o.zeta : 1.0 / (3.0 * o.lipschitz);
        emit(spec, fc);
      }
    }
  } else {
    for (int i = 0; i < o.eta_steps; ++i) {
      MethodSpec spec;
      spec.family = family;
      spec.m = o.m > 0 ? o.m : 100;
      spec.eta = o.eta_steps == 1
                     ? o.eta_min
                     : o.eta_min + (o.eta_max - o.eta_min) * i / (o.eta_steps - 1);
      emit(spec, fc);
    }
  }
  return 0;
}

// ---- argument plumbing ----

void apply_config(const std::string& path, CLI::App& app, Opts& o) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  nlohmann::json cfg = nlohmann::json::parse(in);

  auto unset = [&app](const std::string& flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  auto take_num = [&](const char* key, double& field, const std::string& flag) {
    if (cfg.contains(key) && unset(flag)) field = cfg[key].get<double>();
  };
  auto take_int = [&](const char* key, int& field, const std::string& flag) {
    if (cfg.contains(key) && unset(flag)) field = cfg[key].get<int>();
  };
  auto take_str = [&](const char* key, std::string& field, const std::string& flag) {
    if (cfg.contains(key) && unset(flag)) field = cfg[key].get<std::string>();
  };

  if (cfg.contains("function_class")) {
    const auto& fcj = cfg["function_class"];
    if (fcj.contains("sigma") && unset("--sigma")) o.sigma = fcj["sigma"].get<double>();
    if (fcj.contains("lipschitz") && unset("--lipschitz"))
      o.lipschitz = fcj["lipschitz"].get<double>();
    if (fcj.contains("component_assumption") && unset("--assumption"))
      o.assumption = fcj["component_assumption"].get<std::string>();
  }
  take_str("method", o.method, "--method");
  take_str("component_assumption", o.assumption, "--assumption");
  take_str("suite", o.suite, "--suite");
  take_num("sigma", o.sigma, "--sigma");
  take_num("lipschitz", o.lipschitz, "--lipschitz");
  take_num("sigma_psi", o.sigma_psi, "--sigma-psi");
  take_num("eta", o.eta, "--eta");
  take_num("tau1", o.tau1, "--tau1");
  take_num("tau2", o.tau2, "--tau2");
  take_num("alpha", o.alpha, "--alpha");
  take_num("zeta", o.zeta, "--zeta");
  take_num("tol", o.tol, "--tol");
  take_int("m", o.m, "--m");
  take_int("n", o.n, "--n");
  take_int("p", o.p, "--p");
  take_int("trials", o.trials, "--trials");
  take_int("epochs", o.epochs, "--epochs");
  if (cfg.contains("seed") && unset("--seed")) o.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("rho2") && unset("--rho2")) {
    o.rho2 = cfg["rho2"].get<double>();
    o.rho2_set = true;
  }
}

void add_common(CLI::App* cmd, Opts& o, std::string& config_path) {
  cmd->add_option("--method", o.method)
      ->check(CLI::IsMember({"sg", "svrg1", "svrg2", "katyusha"}));
  cmd->add_option("--sigma", o.sigma);
  cmd->add_option("--lipschitz", o.lipschitz);
  cmd->add_option("--assumption", o.assumption)
      ->check(CLI::IsMember({"SmoothConvex", "SmoothStronglyConvex", "SmoothOnly"}));
  cmd->add_option("--sigma-psi", o.sigma_psi);
  cmd->add_option("--eta", o.eta);
  cmd->add_option("--m", o.m);
  cmd->add_option("--tau1", o.tau1);
  cmd->add_option("--tau2", o.tau2);
  cmd->add_option("--alpha", o.alpha);
  cmd->add_option("--zeta", o.zeta);
  cmd->add_option("--tol", o.tol);
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--config", config_path);
  cmd->add_option("--out", o.out_path);
  cmd->add_flag("--json", o.json);
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  if (const char* env = std::getenv("DISSIPACERT_SEED"))
    o.seed = std::strtoull(env, nullptr, 10);

  CLI::App app{"convergence-certificate engine for variance-reduced methods"};
  app.require_subcommand(1);
  std::string config_path;

  CLI::App* certify = app.add_subcommand("certify", "verify or search a certificate");
  add_common(certify, o, config_path);
  certify->add_option("--rho2", o.rho2);
  certify->add_flag("--dump-lmi", o.dump_lmi);
  certify->add_flag("--dump-supply-rates", o.dump_supply);

  CLI::App* simulate = app.add_subcommand("simulate", "run epochs on a generated instance");
  add_common(simulate, o, config_path);
  simulate->add_option("--n", o.n);
  simulate->add_option("--p", o.p);
  simulate->add_option("--epochs", o.epochs);
  simulate->add_flag("--csv", o.csv);

  CLI::App* validate = app.add_subcommand("validate", "numeric inequality suites");
  add_common(validate, o, config_path);
  validate->add_option("--suite", o.suite)
      ->check(CLI::IsMember({"appendix", "katyusha", "dissipation", "contraction", "all"}));
  validate->add_option("--trials", o.trials);
  validate->add_option("--n", o.n);
  validate->add_option("--p", o.p);

  CLI::App* sweep = app.add_subcommand("sweep", "parameter grid to CSV");
  add_common(sweep, o, config_path);
  sweep->add_option("--eta-min", o.eta_min);
  sweep->add_option("--eta-max", o.eta_max);
  sweep->add_option("--eta-steps", o.eta_steps);
  sweep->add_option("--tau1-min", o.tau1_min);
  sweep->add_option("--tau1-max", o.tau1_max);
  sweep->add_option("--tau1-steps", o.tau1_steps);
  sweep->add_option("--tau2-min", o.tau2_min);
  sweep->add_option("--tau2-max", o.tau2_max);
  sweep->add_option("--tau2-steps", o.tau2_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!config_path.empty()) apply_config(config_path, *active, o);
    if (active->get_option_no_throw("--rho2") &&
        active->count("--rho2") > 0)
      o.rho2_set = true;

    std::ofstream file;
    std::ostream& out = output_stream(o, file);
    if (active == certify) return run_certify(o, out);
    if (active == simulate) return run_simulate(o, out);
    if (active == validate) return run_validate(o, out);
    if (active == sweep) return run_sweep(o, out);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
