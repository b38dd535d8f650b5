// bvp: validate, certify and numerically solve the three-point integral
// boundary value problem
//
//   u'' + a(t) f(u) = 0 on (0, T),
//   u(0) = beta u(eta),  u(T) = alpha * integral of u over [0, eta].
//
// Exit codes: 0 success, 1 parameters outside the admissible window,
// 2 malformed input, 3 analysis inconclusive, 4 no positive solution found,
// 5 reproduce mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bvp/cone_constants.hpp"
#include "bvp/criteria.hpp"
#include "bvp/errors.hpp"
#include "bvp/hammerstein.hpp"
#include "bvp/params.hpp"
#include "bvp/problem_spec.hpp"
#include "bvp/reproduce.hpp"
#include "bvp/solver.hpp"
#include "bvp/text_format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInadmissible = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitNoSolution = 4;
constexpr int kExitMismatch = 5;

using bvp::fmt_g12;

struct ProblemSource {
  std::string file;
  std::string example;

  bvp::ProblemSpec load() const {
    if (!example.empty()) {
      if (!bvp::is_builtin_example(example))
        throw bvp::ParseError("unknown built-in example: " + example, 0);
      return bvp::ProblemSpec::parse_text(bvp::builtin_example_text(example));
    }
    if (file.empty())
      throw bvp::ParseError("no problem given: pass a file or --example", 0);
    return bvp::ProblemSpec::load_file(file);
  }
};

void add_source_options(CLI::App* cmd, ProblemSource& src) {
  CLI::Option* file = cmd->add_option("problem", src.file, "problem file path");
  cmd->add_option("-e,--example", src.example,
                  "built-in example id (ex1..ex4)")
      ->check(CLI::IsMember(bvp::builtin_example_ids()))
      ->excludes(file);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Porcelain output is stable key=value, one per line, 12 significant digits.
void emit(bool porcelain, const std::string& key, const std::string& value,
          const std::string& human) {
  if (porcelain)
    std::cout << key << "=" << value << "\n";
  else
    std::cout << human << "\n";
}

void print_params(const bvp::BvpParams& p, bool porcelain) {
  if (porcelain) {
    std::cout << "alpha=" << fmt_g12(p.alpha) << "\n"
              << "beta=" << fmt_g12(p.beta) << "\n"
              << "eta=" << fmt_g12(p.eta) << "\n"
              << "T=" << fmt_g12(p.T) << "\n"
              << "alpha_sup=" << fmt_g12(p.alpha_sup()) << "\n"
              << "beta_sup=" << fmt_g12(p.beta_sup()) << "\n"
              << "neg_denominator=" << fmt_g12(p.neg_denominator()) << "\n";
  } else {
    std::cout << "parameters: alpha=" << fmt_g12(p.alpha)
              << " beta=" << fmt_g12(p.beta) << " eta=" << fmt_g12(p.eta)
              << " T=" << fmt_g12(p.T) << "\n"
              << "window: alpha < " << fmt_g12(p.alpha_sup()) << ", beta < "
              << fmt_g12(p.beta_sup())
              << ", -D = " << fmt_g12(p.neg_denominator()) << "\n";
  }
}

int run_validate(const ProblemSource& src, bool porcelain) {
  bvp::ProblemSpec spec = src.load();
  bvp::Admissibility region = bvp::classify_region(spec.params);
  print_params(spec.params, porcelain);
  bvp::CoefficientCheck signs =
      bvp::check_coefficients(spec.a, spec.f, spec.params);
  if (porcelain) {
    std::cout << "region=" << to_string(region) << "\n"
              << "a_nonneg=" << (signs.a_nonneg ? 1 : 0) << "\n"
              << "a_positive_on_tail=" << (signs.a_positive_on_tail ? 1 : 0)
              << "\n"
              << "f_nonneg=" << (signs.f_nonneg ? 1 : 0) << "\n";
  } else {
    std::cout << "region: " << to_string(region) << "\n"
              << "coefficient signs: a>=0 " << (signs.a_nonneg ? "yes" : "NO")
              << ", a>0 on tail " << (signs.a_positive_on_tail ? "yes" : "NO")
              << ", f>=0 " << (signs.f_nonneg ? "yes" : "NO") << "\n";
  }
  return region == bvp::Admissibility::kAdmissible ? kExitOk
                                                   : kExitInadmissible;
}

int require_admissible(const bvp::ProblemSpec& spec, bool porcelain) {
  bvp::Admissibility region = bvp::classify_region(spec.params);
  if (region == bvp::Admissibility::kAdmissible) return kExitOk;
  if (porcelain)
    std::cout << "region=" << to_string(region) << "\n";
  else
    std::cout << "region: " << to_string(region)
              << " (constants are only defined inside the positivity window)\n";
  return kExitInadmissible;
}

void print_constants(const bvp::ConeConstants& c,
                     const std::array<double, 3>& branches, bool porcelain) {
  if (porcelain) {
    std::cout << "gamma=" << fmt_g12(c.gamma) << "\n"
              << "gamma_branch_tail=" << fmt_g12(branches[0]) << "\n"
              << "gamma_branch_head=" << fmt_g12(branches[1]) << "\n"
              << "gamma_branch_mixed=" << fmt_g12(branches[2]) << "\n"
              << "lambda1=" << fmt_g12(c.lambda1) << "\n"
              << "lambda2=" << fmt_g12(c.lambda2) << "\n"
              << "lambda2_over_gamma=" << fmt_g12(c.lambda2 / c.gamma) << "\n";
  } else {
    std::cout << "gamma = " << fmt_g12(c.gamma) << "  (branches "
              << fmt_g12(branches[0]) << ", " << fmt_g12(branches[1]) << ", "
              << fmt_g12(branches[2]) << ")\n"
              << "lambda1 = " << fmt_g12(c.lambda1) << "\n"
              << "lambda2 = " << fmt_g12(c.lambda2)
              << "  (lambda2/gamma = " << fmt_g12(c.lambda2 / c.gamma)
              << ")\n";
  }
}

int run_constants(const ProblemSource& src, bool porcelain) {
  bvp::ProblemSpec spec = src.load();
  int gate = require_admissible(spec, porcelain);
  if (gate != kExitOk) return gate;
  bvp::ConeConstants c = bvp::compute_cone_constants(spec.params, spec.a);
  auto branches = bvp::cone_gamma_branches(spec.params);
  print_params(spec.params, porcelain);
  if (porcelain) std::cout << "region=admissible\n";
  print_constants(c, branches, porcelain);
  return kExitOk;
}

void print_witness(const bvp::HypothesisWitness& w, bool porcelain) {
  if (porcelain) {
    std::string base = "witness." + w.name + ".";
    std::cout << base << "holds=" << (w.holds ? 1 : 0) << "\n";
    if (w.rho) std::cout << base << "rho=" << fmt_g12(*w.rho) << "\n";
    std::cout << base << "extremum=" << fmt_g12(w.extremum) << "\n";
    if (w.m) std::cout << base << "slope=" << fmt_g12(*w.m) << "\n";
    if (w.theta) std::cout << base << "theta=" << fmt_g12(*w.theta) << "\n";
    std::cout << base << "marginal=" << (w.marginal ? 1 : 0) << "\n";
  } else {
    std::cout << "  " << w.name << (w.holds ? " holds" : " fails");
    if (w.rho) std::cout << " at rho=" << fmt_g12(*w.rho);
    if (w.m) std::cout << ", slope " << fmt_g12(*w.m);
    if (w.theta) std::cout << ", theta " << fmt_g12(*w.theta);
    if (w.marginal) std::cout << " (marginal)";
    std::cout << ": " << w.evidence << "\n";
  }
}

int run_certify(const ProblemSource& src, bool porcelain) {
  bvp::ProblemSpec spec = src.load();
  int gate = require_admissible(spec, porcelain);
  if (gate != kExitOk) return gate;
  bvp::ConeConstants c = bvp::compute_cone_constants(spec.params, spec.a);

  bvp::CertifyInput input;
  input.f = spec.f;
  input.declared_asymptotics = spec.asymptotics;
  input.rho1 = spec.rho1;
  input.rho2 = spec.rho2;
  bvp::CertifyResult res = bvp::certify(input, c);

  auto branches = bvp::cone_gamma_branches(spec.params);
  if (porcelain) {
    std::cout << "region=admissible\n";
    print_constants(c, branches, true);
    std::cout << "f0_class=" << to_string(res.asymptotics.f0_class) << "\n";
    if (res.asymptotics.f0_class == bvp::LimitClass::kFinite)
      std::cout << "f0_value=" << fmt_g12(res.asymptotics.f0_value) << "\n";
    std::cout << "finf_class=" << to_string(res.asymptotics.finf_class)
              << "\n";
    if (res.asymptotics.finf_class == bvp::LimitClass::kFinite)
      std::cout << "finf_value=" << fmt_g12(res.asymptotics.finf_value)
                << "\n";
    std::cout << "asymptotics_declared=" << (res.asymptotics.declared ? 1 : 0)
              << "\n";
  } else {
    print_constants(c, branches, false);
    std::cout << "f(u)/u at 0+: " << to_string(res.asymptotics.f0_class);
    if (res.asymptotics.f0_class == bvp::LimitClass::kFinite)
      std::cout << " (" << fmt_g12(res.asymptotics.f0_value) << ")";
    std::cout << "; at infinity: " << to_string(res.asymptotics.finf_class);
    if (res.asymptotics.finf_class == bvp::LimitClass::kFinite)
      std::cout << " (" << fmt_g12(res.asymptotics.finf_value) << ")";
    std::cout << (res.asymptotics.declared ? " [declared]" : " [sampled]")
              << "\n";
  }

  std::vector<std::string> fired;
  for (const auto& cert : res.certificates)
    fired.push_back(to_string(cert.id));
  if (porcelain) {
    std::cout << "fired=" << join(fired, ";") << "\n";
    for (const auto& cert : res.certificates) {
      std::string base = std::string("cert.") + to_string(cert.id) + ".";
      std::cout << base << "count=" << cert.solution_count << "\n";
      std::vector<std::string> ivs;
      for (const auto& iv : cert.norm_localization)
        ivs.push_back("(" + fmt_g12(iv.first) + "," + fmt_g12(iv.second) +
                      ")");
      std::cout << base << "intervals=" << join(ivs, ";") << "\n";
      std::cout << base << "marginal=" << (cert.marginal ? 1 : 0) << "\n";
    }
  } else {
    if (res.certificates.empty()) {
      std::cout << "no certificate fired\n";
    } else {
      std::cout << "fired certificates:\n";
      for (const auto& cert : res.certificates) {
        std::cout << "  " << to_string(cert.id) << ": at least "
                  << cert.solution_count << " positive solution"
                  << (cert.solution_count == 1 ? "" : "s");
        for (const auto& iv : cert.norm_localization)
          std::cout << "  norm in (" << fmt_g12(iv.first) << ", "
                    << fmt_g12(iv.second) << ")";
        if (cert.marginal) std::cout << "  [marginal]";
        std::cout << "\n";
        for (const auto& w : cert.witnesses) print_witness(w, false);
      }
    }
  }
  if (porcelain) {
    if (res.h2) print_witness(*res.h2, true);
    if (res.h4) print_witness(*res.h4, true);
  }
  return res.certificates.empty() ? kExitInconclusive : kExitOk;
}

void dump_solution(const std::string& prefix, int index,
                   const bvp::GridFunction& u) {
  std::string path = prefix + std::to_string(index) + ".tsv";
  std::ofstream out(path);
  out << "t\tu\n";
  for (int i = 0; i < u.grid().node_count(); ++i)
    out << fmt_g12(u.grid().node(i)) << "\t" << fmt_g12(u[i]) << "\n";
}

int run_solve(const ProblemSource& src, bool porcelain,
              const std::string& dump_prefix) {
  bvp::ProblemSpec spec = src.load();
  int gate = require_admissible(spec, porcelain);
  if (gate != kExitOk) return gate;
  bvp::ConeConstants c = bvp::compute_cone_constants(spec.params, spec.a);

  // Certificates are optional context for bucket labels; an inconclusive
  // classification must not block the numerics.
  std::vector<bvp::Certificate> certs;
  try {
    bvp::CertifyInput input;
    input.f = spec.f;
    input.declared_asymptotics = spec.asymptotics;
    input.rho1 = spec.rho1;
    input.rho2 = spec.rho2;
    certs = bvp::certify(input, c).certificates;
  } catch (const bvp::InconclusiveAsymptotics&) {
  } catch (const bvp::EvalError&) {
  }

  bvp::SolveOptions opts;
  opts.grid_n = spec.solver.n;
  opts.residual_tol = spec.solver.residual_tol;
  opts.max_iterations = spec.solver.max_iterations;
  opts.rho_ref = spec.rho1 ? *spec.rho1 : (spec.rho2 ? *spec.rho2 : 1.0);

  bvp::OperatorContext ctx(spec.params, spec.a, spec.f, opts.grid_n);
  bvp::SolveOutcome outcome = bvp::solve_fixed_points(ctx, opts);
  for (auto& r : outcome.positive)
    r.in_cone = bvp::check_cone_bound(spec.params, r.u, c.gamma).holds;
  bvp::ClassificationReport cls =
      bvp::classify_against_certificates(outcome.positive, certs);

  if (porcelain) {
    std::cout << "grid_n=" << opts.grid_n << "\n"
              << "solutions=" << outcome.positive.size() << "\n"
              << "trivial=" << (outcome.trivial ? 1 : 0) << "\n"
              << "converged_starts=" << outcome.converged_starts << "\n"
              << "best_residual=" << fmt_g12(outcome.best_residual) << "\n";
    for (size_t i = 0; i < outcome.positive.size(); ++i) {
      const auto& r = outcome.positive[i];
      std::string base = "solution." + std::to_string(i) + ".";
      std::cout << base << "norm=" << fmt_g12(r.sup_norm) << "\n"
                << base << "residual=" << fmt_g12(r.fixed_point_residual)
                << "\n"
                << base << "ode_residual=" << fmt_g12(r.ode_residual) << "\n"
                << base << "bc_origin=" << fmt_g12(r.bc_residual_origin)
                << "\n"
                << base << "bc_integral=" << fmt_g12(r.bc_residual_integral)
                << "\n"
                << base << "in_cone=" << (r.in_cone ? 1 : 0) << "\n"
                << base << "method=" << r.method << "\n"
                << base << "buckets=" << r.certificate_bucket << "\n";
    }
    std::cout << "buckets_all_occupied=" << (cls.all_buckets_occupied ? 1 : 0)
              << "\n";
  } else {
    std::cout << "grid n=" << opts.grid_n << ", " << outcome.positive.size()
              << " positive solution"
              << (outcome.positive.size() == 1 ? "" : "s");
    if (outcome.trivial) std::cout << " plus the trivial solution u=0";
    std::cout << "\n";
    for (size_t i = 0; i < outcome.positive.size(); ++i) {
      const auto& r = outcome.positive[i];
      std::cout << "  #" << i << ": sup norm " << fmt_g12(r.sup_norm)
                << ", residual " << fmt_g12(r.fixed_point_residual) << " ("
                << r.method << ")"
                << (r.in_cone ? ", in cone" : ", OUTSIDE cone");
      if (!r.certificate_bucket.empty())
        std::cout << ", matches " << r.certificate_bucket;
      std::cout << "\n";
    }
    if (!cls.all_buckets_occupied)
      std::cout << "warning: some certified solution ranges have no computed "
                   "match\n";
  }
  if (!dump_prefix.empty())
    for (size_t i = 0; i < outcome.positive.size(); ++i)
      dump_solution(dump_prefix, static_cast<int>(i), outcome.positive[i].u);
  return outcome.positive.empty() ? kExitNoSolution : kExitOk;
}

int run_reproduce_cmd(const std::string& id, bool all, bool no_solve) {
  std::vector<std::string> ids;
  if (all)
    ids = bvp::builtin_example_ids();
  else if (!id.empty())
    ids.push_back(id);
  else
    throw bvp::ParseError("reproduce needs an example id or --all", 0);

  bool ok = true;
  for (const auto& eid : ids) {
    bvp::ReproduceReport rep = bvp::run_reproduce(eid, !no_solve);
    for (const auto& v : rep.values)
      std::cout << "[" << eid << "] " << v.name << ": expected "
                << fmt_g12(v.expected) << " actual " << fmt_g12(v.actual)
                << " rel " << fmt_g12(v.rel_error) << " "
                << (v.pass ? "PASS" : "FAIL") << "\n";
    std::cout << "[" << eid << "] certificates: expected {"
              << join(rep.expected_certificates, ",") << "} fired {"
              << join(rep.fired_certificates, ",") << "} "
              << (rep.certificates_pass ? "PASS" : "FAIL") << "\n";
    if (rep.ran_solver) {
      std::vector<std::string> norms;
      for (double n : rep.solution_norms) norms.push_back(fmt_g12(n));
      std::cout << "[" << eid << "] solve: " << rep.solve_requirement
                << ": norms {" << join(norms, ", ") << "} "
                << (rep.solve_pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "[" << eid << "] overall "
              << (rep.pass ? "PASS" : "FAIL") << "\n";
    ok = ok && rep.pass;
  }
  return ok ? kExitOk : kExitMismatch;
}

struct VarySpec {
  std::string key;
  std::vector<double> values;
};

VarySpec parse_vary(const std::string& arg) {
  size_t eq = arg.find('=');
  if (eq == std::string::npos)
    throw bvp::ParseError("--vary expects key=lo:hi:steps, got " + arg, 0);
  VarySpec v;
  v.key = arg.substr(0, eq);
  if (v.key != "alpha" && v.key != "beta" && v.key != "eta" && v.key != "T")
    throw bvp::ParseError("--vary key must be alpha, beta, eta or T", 0);
  std::string rest = arg.substr(eq + 1);
  size_t c1 = rest.find(':');
  size_t c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw bvp::ParseError("--vary expects key=lo:hi:steps, got " + arg, 0);
  double lo = bvp::parse_number_token(rest.substr(0, c1), 0);
  double hi = bvp::parse_number_token(rest.substr(c1 + 1, c2 - c1 - 1), 0);
  double steps_raw = bvp::parse_number_token(rest.substr(c2 + 1), 0);
  int steps = static_cast<int>(steps_raw);
  if (steps_raw != steps || steps < 1)
    throw bvp::ParseError("--vary steps must be a positive integer", 0);
  if (steps == 1) {
    v.values.push_back(lo);
  } else {
    for (int i = 0; i < steps; ++i)
      v.values.push_back(lo + (hi - lo) * i / (steps - 1));
  }
  return v;
}

int run_sweep(const ProblemSource& src, const std::vector<std::string>& vary,
              const std::string& output) {
  bvp::ProblemSpec spec = src.load();
  std::vector<VarySpec> axes;
  for (const auto& v : vary) axes.push_back(parse_vary(v));
  if (axes.empty())
    throw bvp::ParseError("sweep needs at least one --vary axis", 0);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty()) {
    file.open(output, std::ios::binary);  // binary keeps LF on every platform
    if (!file) throw bvp::ParseError("cannot open output file: " + output, 0);
    out = &file;
  }

  *out << "alpha,beta,eta,T,admissible,gamma,lambda1,lambda2,"
          "fired_certificates\n";

  std::vector<size_t> idx(axes.size(), 0);
  bool done = false;
  while (!done) {
    bvp::BvpParams p = spec.params;
    for (size_t k = 0; k < axes.size(); ++k) {
      double v = axes[k].values[idx[k]];
      if (axes[k].key == "alpha") p.alpha = v;
      else if (axes[k].key == "beta") p.beta = v;
      else if (axes[k].key == "eta") p.eta = v;
      else p.T = v;
    }

    std::string admissible = "no";
    std::string gamma_s, l1_s, l2_s, fired_s;
    bool geometry_ok = p.T > 0.0 && p.eta > 0.0 && p.eta < p.T;
    if (geometry_ok &&
        bvp::classify_region(p) == bvp::Admissibility::kAdmissible) {
      admissible = "yes";
      try {
        bvp::ConeConstants c = bvp::compute_cone_constants(p, spec.a);
        gamma_s = fmt_g12(c.gamma);
        l1_s = fmt_g12(c.lambda1);
        l2_s = fmt_g12(c.lambda2);
        bvp::CertifyInput input;
        input.f = spec.f;
        input.declared_asymptotics = spec.asymptotics;
        input.rho1 = spec.rho1;
        input.rho2 = spec.rho2;
        std::vector<std::string> fired;
        for (const auto& cert : bvp::certify(input, c).certificates)
          fired.push_back(to_string(cert.id));
        fired_s = join(fired, ";");
      } catch (const bvp::DegenerateProblem&) {
        gamma_s = l1_s = l2_s = fired_s = "";
      } catch (const bvp::InconclusiveAsymptotics&) {
        fired_s = "";
      } catch (const bvp::EvalError&) {
        // f or a cannot be evaluated at this grid point; leave whatever was
        // computed before the failure and move to the next combination.
        fired_s = "";
      }
    }
    *out << fmt_g12(p.alpha) << "," << fmt_g12(p.beta) << ","
         << fmt_g12(p.eta) << "," << fmt_g12(p.T) << "," << admissible << ","
         << gamma_s << "," << l1_s << "," << l2_s << "," << fired_s << "\n";

    done = true;
    for (size_t k = axes.size(); k-- > 0;) {
      if (++idx[k] < axes[k].values.size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "three-point integral boundary value problem toolkit: existence "
      "certificates and numerical solutions for u'' + a(t) f(u) = 0"};
  app.require_subcommand(1);

  ProblemSource val_src, con_src, cer_src, sol_src, swe_src;
  bool val_porc = false, con_porc = false, cer_porc = false, sol_porc = false;
  std::string dump_prefix;
  std::string rep_id;
  bool rep_all = false, rep_no_solve = false;
  std::vector<std::string> vary;
  std::string sweep_output;

  CLI::App* validate =
      app.add_subcommand("validate", "check admissibility and signs");
  add_source_options(validate, val_src);
  validate->add_flag("--porcelain", val_porc, "machine-readable output");

  CLI::App* constants =
      app.add_subcommand("constants", "cone and growth constants");
  add_source_options(constants, con_src);
  constants->add_flag("--porcelain", con_porc, "machine-readable output");

  CLI::App* certify =
      app.add_subcommand("certify", "existence certificates");
  add_source_options(certify, cer_src);
  certify->add_flag("--porcelain", cer_porc, "machine-readable output");

  CLI::App* solve = app.add_subcommand("solve", "compute positive solutions");
  add_source_options(solve, sol_src);
  solve->add_flag("--porcelain", sol_porc, "machine-readable output");
  solve->add_option("--dump", dump_prefix,
                    "write each solution to <prefix><k>.tsv");

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "recompute built-in examples against expected values");
  reproduce->add_option("example", rep_id, "example id (ex1..ex4)")
      ->check(CLI::IsMember(bvp::builtin_example_ids()));
  reproduce->add_flag("--all", rep_all, "run every built-in example");
  reproduce->add_flag("--no-solve", rep_no_solve,
                      "skip the solver, check constants and certificates");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "scan parameter ranges, emit one CSV row per combination");
  add_source_options(sweep, swe_src);
  sweep->add_option("--vary", vary,
                    "axis key=lo:hi:steps (repeatable, Cartesian product)");
  sweep->add_option("-o,--output", sweep_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (validate->parsed()) return run_validate(val_src, val_porc);
    if (constants->parsed()) return run_constants(con_src, con_porc);
    if (certify->parsed()) return run_certify(cer_src, cer_porc);
    if (solve->parsed()) return run_solve(sol_src, sol_porc, dump_prefix);
    if (reproduce->parsed())
      return run_reproduce_cmd(rep_id, rep_all, rep_no_solve);
    if (sweep->parsed()) return run_sweep(swe_src, vary, sweep_output);
  } catch (const bvp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const bvp::InconclusiveAsymptotics& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const bvp::DegenerateProblem& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const bvp::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitInconclusive;
  }
  return kExitOk;
}
