#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ilscond/diagnostics.hpp"
#include "ilscond/examples.hpp"
#include "ilscond/io.hpp"
#include "ilscond/probe.hpp"

namespace {

using namespace ilscond;

// Text reports round to six significant digits; CSV and JSON carry full
// precision.
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct SourceOptions {
  std::string input;
  int example = 0;
  double alpha = 0.0;
};

void add_source_options(CLI::App* cmd, SourceOptions& src) {
  auto* input = cmd->add_option("--input", src.input, "problem JSON file");
  auto* example =
      cmd->add_option("--example", src.example, "built-in example family")
          ->check(CLI::IsMember({1, 2}));
  auto* alpha =
      cmd->add_option("--alpha", src.alpha, "example parameter in (0, pi/4]");
  input->excludes(example);
  input->excludes(alpha);
  alpha->needs(example);
}

IlsProblem load_source(const SourceOptions& src) {
  if (!src.input.empty()) return load_problem(src.input);
  if (src.example == 0) {
    throw std::invalid_argument("give exactly one of --input or --example");
  }
  if (src.alpha == 0.0) {
    throw std::invalid_argument("--example needs --alpha");
  }
  return src.example == 1 ? example1(src.alpha).first
                          : example2(src.alpha).first;
}

int run_solve(const SourceOptions& src, const std::string& format) {
  IlsProblem p = load_source(src);
  IlsSolution s = solve(p);
  if (format == "json") {
    nlohmann::json j;
    j["problem"] = problem_to_json(p);
    j["solution"] = solution_to_json(s);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "x =";
  for (Index i = 0; i < s.x.size(); ++i) std::cout << " " << fmt6(s.x(i));
  std::cout << "\nr =";
  for (Index i = 0; i < s.r.size(); ++i) std::cout << " " << fmt6(s.r(i));
  std::cout << "\nnorm_x = " << fmt6(s.x.norm())
            << "\nnorm_r = " << fmt6(s.r.norm()) << "\n";
  return 0;
}

void print_report_text(const IlsProblem& p, const ConditioningReport& rep) {
  std::cout << "problem: m = " << p.rows() << ", n = " << p.cols()
            << ", m_plus = " << p.J.m_plus << ", m_minus = " << p.J.m_minus
            << "\n";
  std::cout << "norm_a = " << fmt6(rep.norm_a) << "\n";
  std::cout << "norm_b = " << fmt6(rep.norm_b) << "\n";
  std::cout << "norm_x = " << fmt6(rep.norm_x) << "\n";
  std::cout << "norm_r = " << fmt6(rep.norm_r) << "\n";
  std::cout << "norm_gram_inv = " << fmt6(rep.norm_gram_inv) << "\n";
  std::cout << "norm_gram_inv_At = " << fmt6(rep.norm_gram_inv_At) << "\n";
  std::cout << "norm_M1 = " << fmt6(rep.norm_M1) << "\n";
  std::cout << "norm_M2 = " << fmt6(rep.norm_M2) << "\n";
  std::cout << "norm_JxA = " << fmt6(rep.norm_JxA) << "\n";
  std::cout << "norm_Jxb = " << fmt6(rep.norm_Jxb) << "\n";
  std::cout << "chi_A = " << fmt6(rep.chi_A) << "\n";
  std::cout << "chi_b = " << fmt6(rep.chi_b) << "\n";
  std::cout << "chi_Ab = " << fmt6(rep.chi_Ab) << "\n";
  std::cout << "B = " << fmt6(rep.bhp) << "\n";
  std::cout << "chi_A+chi_b = " << fmt6(rep.bound_iii) << "\n";
  std::cout << "B+chi_b = " << fmt6(rep.bound_iv) << "\n";
}

void print_diagnostics_text(const TheoremDiagnostics& d, double tau) {
  std::cout << "theorem diagnostics (tau = " << fmt6(tau) << "):\n";
  std::cout << "rho = " << fmt6(d.rho) << "\n";
  std::cout << "lambda1 = " << fmt6(d.lambda1) << "\n";
  std::cout << "lambda2 = " << fmt6(d.lambda2) << "\n";
  std::cout << "2*rho >= lambda1: " << (d.star_b_holds ? "yes" : "no") << "\n";
  std::cout << "rho+1/2 >= lambda2: " << (d.star_d_holds ? "yes" : "no")
            << "\n";
  std::cout << "lambda1 >= " << fmt6(d.lower1)
            << ", lambda2 >= " << fmt6(d.lower2) << "\n";
  std::cout << "overestimation_floor = " << fmt6(d.overestimation_floor)
            << "\n";
  std::cout << "provisionally_forward_stable = "
            << (d.provisionally_forward_stable ? "yes" : "no") << "\n";
}

int run_analyze(const SourceOptions& src, const std::string& format,
                double tau, const std::string& emit_problem) {
  IlsProblem p = load_source(src);
  IlsSolution s = solve(p);
  JacobianParts parts = jacobian_wrt_A(p, s);
  ConditioningReport rep = bound_coefficients(p, s, parts);

  std::optional<TheoremDiagnostics> diag;
  std::string diag_reason;
  int exit_code = 0;
  if (p.norm_b == 0.0) {
    // The perturb-A-only regime: lambda2 is undefined by construction, so
    // skipping the diagnostics is the expected outcome, not an error.
    diag_reason = "norm_b = 0 (perturbations to A only)";
  } else {
    try {
      diag = theorem_diagnostics(rep, tau);
    } catch (const VanishingTerm& e) {
      diag_reason = e.what();
      exit_code = 3;
    }
  }

  if (!emit_problem.empty()) {
    std::ofstream out(emit_problem);
    if (!out) throw std::runtime_error("cannot write " + emit_problem);
    out << problem_to_json(p).dump(2) << "\n";
  }

  if (format == "json") {
    nlohmann::json j;
    j["problem"] = problem_to_json(p);
    j["solution"] = solution_to_json(s);
    j["report"] = report_to_json(rep);
    if (diag) {
      j["diagnostics"] = diagnostics_to_json(*diag);
      j["diagnostics"]["available"] = true;
    } else {
      j["diagnostics"] = {{"available", false}, {"reason", diag_reason}};
    }
    std::cout << j.dump(2) << "\n";
    return exit_code;
  }

  print_report_text(p, rep);
  if (diag) {
    print_diagnostics_text(*diag, tau);
  } else {
    std::cout << "theorem diagnostics: unavailable (" << diag_reason << ")\n";
  }
  return exit_code;
}

void write_probe_csv(const std::string& path, const ProbeResult& res,
                     const ConditioningReport& rep) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "index,epsilon,norm_dA,norm_db,ratio,margin_i,margin_ii,margin_iii,"
         "margin_iv\n";
  for (const ProbeSample& s : res.samples) {
    const double mii = s.ratio > 0.0 ? rep.chi_Ab / s.ratio : 0.0;
    const double miii = s.ratio > 0.0 ? rep.bound_iii / s.ratio : 0.0;
    const double miv = s.ratio > 0.0 ? rep.bound_iv / s.ratio : 0.0;
    out << s.index << "," << fmt17(res.epsilon) << "," << fmt17(s.norm_dA)
        << "," << fmt17(s.norm_db) << "," << fmt17(s.ratio) << ","
        << fmt17(s.margin_i) << "," << fmt17(mii) << "," << fmt17(miii) << ","
        << fmt17(miv) << "\n";
  }
}

int run_probe(const SourceOptions& src, const std::string& mode_name,
              double epsilon, int samples, std::uint64_t seed, int threads,
              const std::string& csv_path, const std::string& format) {
  IlsProblem p = load_source(src);
  ProbeConfig cfg;
  cfg.mode = probe_mode_from_string(mode_name);
  cfg.epsilon = epsilon;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.keep_samples = !csv_path.empty();

  const bool directed = cfg.mode == ProbeMode::DirectedA ||
                        cfg.mode == ProbeMode::DirectedJoint;
  ProbeResult res = directed ? directed_probe(p, cfg) : random_probe(p, cfg);

  if (!csv_path.empty()) {
    IlsSolution s = solve(p);
    JacobianParts parts = jacobian_wrt_A(p, s);
    ConditioningReport rep = bound_coefficients(p, s, parts);
    write_probe_csv(csv_path, res, rep);
  }

  if (format == "json") {
    std::cout << probe_result_to_json(res).dump(2) << "\n";
    return 0;
  }
  std::cout << "mode = " << to_string(res.mode) << "\n";
  std::cout << "epsilon = " << fmt17(res.epsilon) << "\n";
  std::cout << "samples = " << samples << "\n";
  std::cout << "seed = " << seed << "\n";
  std::cout << "accepted = " << res.accepted << "\n";
  std::cout << "rejected = " << res.rejected << "\n";
  std::cout << "max_ratio = " << fmt17(res.max_ratio) << "\n";
  std::cout << "margin_i = " << fmt17(res.margin_i) << "\n";
  std::cout << "margin_ii = " << fmt17(res.margin_ii) << "\n";
  std::cout << "margin_iii = " << fmt17(res.margin_iii) << "\n";
  std::cout << "margin_iv = " << fmt17(res.margin_iv) << "\n";
  if (directed) {
    std::cout << "chi_reference = " << fmt17(res.chi_reference) << "\n";
    std::cout << "attained_fraction = " << fmt17(res.attained_fraction)
              << "\n";
  }
  return 0;
}

int run_sweep(int example, std::vector<double> alphas, double alpha_from,
              double alpha_to, int alpha_steps, double tau) {
  if (alphas.empty()) {
    if (!(alpha_from > 0.0) || !(alpha_to > 0.0) || alpha_steps < 2) {
      throw std::invalid_argument(
          "sweep needs --alphas or --alpha-from/--alpha-to/--alpha-steps");
    }
    const double ratio = std::pow(alpha_to / alpha_from,
                                  1.0 / static_cast<double>(alpha_steps - 1));
    for (int k = 0; k < alpha_steps; ++k) {
      alphas.push_back(alpha_from * std::pow(ratio, k));
    }
  }

  std::cout << "alpha,chi_A,chi_b,chi_Ab,B,bound_iii,bound_iv,rho,lambda1,"
               "lambda2,overestimation_floor\n";
  for (double alpha : alphas) {
    IlsProblem p =
        example == 1 ? example1(alpha).first : example2(alpha).first;
    IlsSolution s = solve(p);
    JacobianParts parts = jacobian_wrt_A(p, s);
    ConditioningReport rep = bound_coefficients(p, s, parts);
    double rho = std::nan("");
    double lambda1 = std::nan("");
    double lambda2 = std::nan("");
    double floor_val = std::nan("");
    if (p.norm_b > 0.0) {
      TheoremDiagnostics d = theorem_diagnostics(rep, tau);
      rho = d.rho;
      lambda1 = d.lambda1;
      lambda2 = d.lambda2;
      floor_val = d.overestimation_floor;
    }
    std::cout << fmt17(alpha) << "," << fmt17(rep.chi_A) << ","
              << fmt17(rep.chi_b) << "," << fmt17(rep.chi_Ab) << ","
              << fmt17(rep.bhp) << "," << fmt17(rep.bound_iii) << ","
              << fmt17(rep.bound_iv) << "," << fmt17(rho) << ","
              << fmt17(lambda1) << "," << fmt17(lambda2) << ","
              << fmt17(floor_val) << "\n";
  }
  return 0;
}

int run_check_lemmas(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  auto positive = [&]() { return std::pow(10.0, exponent(rng)); };

  for (int i = 0; i < samples; ++i) {
    const double m1 = positive();
    const double m2 = positive();
    MBounds mb = lemma_m_bounds(m1, m2);
    if (!(mb.lower <= mb.value * (1 + 1e-12)) ||
        !(mb.value <= mb.upper * (1 + 1e-12))) {
      std::cout << "FAIL lemma_m_bounds at m1 = " << fmt17(m1)
                << ", m2 = " << fmt17(m2) << "\n";
      return 1;
    }
  }
  std::cout << "lemma_m_bounds: " << samples << " samples ok\n";

  int b_only = 0, d_only = 0, both = 0;
  for (int i = 0; i < samples; ++i) {
    const double u = positive();
    double v = positive();
    double w = positive();
    if (w < v) std::swap(v, w);  // forces rho >= 1
    UvwReport rep = lemma_uvw_check(u, v, w);
    if (!rep.a_holds || !rep.c_holds || (!rep.b_holds && !rep.d_holds)) {
      std::cout << "FAIL lemma_uvw_check at u = " << fmt17(u)
                << ", v = " << fmt17(v) << ", w = " << fmt17(w) << "\n";
      return 1;
    }
    if (rep.b_holds && rep.d_holds) {
      ++both;
    } else if (rep.b_holds) {
      ++b_only;
    } else {
      ++d_only;
    }
  }
  std::cout << "lemma_uvw_check: " << samples << " samples ok (b only "
            << b_only << ", d only " << d_only << ", both " << both << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indefinite least squares conditioning analyzer"};
  app.require_subcommand(1);

  SourceOptions solve_src, analyze_src, probe_src;
  std::string solve_format = "text", analyze_format = "text",
              probe_format = "text";
  double tau = 10.0;
  std::string emit_problem;

  auto* cmd_solve = app.add_subcommand("solve", "solve an ILS problem");
  add_source_options(cmd_solve, solve_src);
  cmd_solve->add_option("--output", solve_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* cmd_analyze = app.add_subcommand(
      "analyze", "condition numbers, bound coefficients, diagnostics");
  add_source_options(cmd_analyze, analyze_src);
  cmd_analyze->add_option("--output", analyze_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_analyze->add_option("--tau", tau,
                          "threshold for the forward-stability screen");
  cmd_analyze->add_option("--emit-problem", emit_problem,
                          "write the problem JSON to this path");

  std::string probe_mode = "random-joint";
  double probe_eps = 0.0;
  int probe_samples = 1;
  std::uint64_t probe_seed = 0;
  int probe_threads = 1;
  std::string probe_csv;
  auto* cmd_probe =
      app.add_subcommand("probe", "perturbation experiments against bounds");
  add_source_options(cmd_probe, probe_src);
  cmd_probe
      ->add_option("--mode", probe_mode,
                   "directed-A | directed-joint | random-A | random-b | "
                   "random-joint")
      ->check(CLI::IsMember({"directed-A", "directed-joint", "random-A",
                             "random-b", "random-joint"}));
  cmd_probe->add_option("--eps", probe_eps, "relative perturbation size")
      ->required();
  cmd_probe->add_option("--samples", probe_samples, "sample count");
  cmd_probe->add_option("--seed", probe_seed, "RNG seed")
      ->envname("ILSCOND_SEED");
  cmd_probe->add_option("--threads", probe_threads, "worker threads");
  cmd_probe->add_option("--csv", probe_csv, "per-sample CSV output path");
  cmd_probe->add_option("--output", probe_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  int sweep_example = 0;
  std::vector<double> sweep_alphas;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 0;
  auto* cmd_sweep =
      app.add_subcommand("sweep", "alpha sweep over an example family, CSV");
  cmd_sweep->add_option("--example", sweep_example, "example family")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  cmd_sweep->add_option("--alphas", sweep_alphas, "explicit alpha list")
      ->delimiter(',');
  cmd_sweep->add_option("--alpha-from", sweep_from, "geometric range start");
  cmd_sweep->add_option("--alpha-to", sweep_to, "geometric range end");
  cmd_sweep->add_option("--alpha-steps", sweep_steps, "geometric range count");
  cmd_sweep->add_option("--tau", tau, "forward-stability threshold");

  int lemma_samples = 10000;
  std::uint64_t lemma_seed = 0;
  auto* cmd_lemmas = app.add_subcommand(
      "check-lemmas", "property suites for the scalar inequality lemmas");
  cmd_lemmas->add_option("--samples", lemma_samples, "sample count");
  cmd_lemmas->add_option("--seed", lemma_seed, "RNG seed")
      ->envname("ILSCOND_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cmd_solve->parsed()) return run_solve(solve_src, solve_format);
    if (cmd_analyze->parsed()) {
      return run_analyze(analyze_src, analyze_format, tau, emit_problem);
    }
    if (cmd_probe->parsed()) {
      return run_probe(probe_src, probe_mode, probe_eps, probe_samples,
                       probe_seed, probe_threads, probe_csv, probe_format);
    }
    if (cmd_sweep->parsed()) {
      return run_sweep(sweep_example, sweep_alphas, sweep_from, sweep_to,
                       sweep_steps, tau);
    }
    if (cmd_lemmas->parsed()) return run_check_lemmas(lemma_samples, lemma_seed);
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: not positive definite: " << e.what() << "\n";
    return 2;
  } catch (const VanishingTerm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ZeroSolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const PerturbationLeftDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
