// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances are fixed here, not tuned at runtime.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ilscond/diagnostics.hpp"
#include "ilscond/examples.hpp"
#include "ilscond/probe.hpp"
#include "test_support.hpp"

using namespace ilscond;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
  std::string cmd = std::string(ILSCOND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), got);
  }
  int status = pclose(pipe);
  if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string six(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

ConditioningReport analyze_problem(const IlsProblem& p) {
  IlsSolution s = solve(p);
  JacobianParts parts = jacobian_wrt_A(p, s);
  return bound_coefficients(p, s, parts);
}

// ---- criterion 1: first example paper regression -------------------------
void criterion1(Checker& c) {
  int code = 0;
  std::string out = run_cli("analyze --example 1 --alpha 0.01", &code);
  c.require(code == 0, "analyze exited " + std::to_string(code));
  c.require(out.find("chi_A = 1.00005") != std::string::npos,
            "chi_A line missing");
  c.require(out.find("B = 100.007") != std::string::npos, "B line missing");

  for (double alpha : {0.3, 0.1, 0.01, 0.001}) {
    auto [p, expect] = example1(alpha);
    ConditioningReport rep = analyze_problem(p);
    const double sec_a = 1.0 / std::cos(alpha);
    const double two_csc = 2.0 / std::sin(2.0 * alpha);
    c.require(std::abs(rep.chi_A - sec_a) <= 1e-9 * sec_a,
              "chi_A vs sec(alpha) at alpha = " + std::to_string(alpha));
    c.require(std::abs(rep.bhp - two_csc) <= 1e-9 * two_csc,
              "B vs 2 csc(2 alpha) at alpha = " + std::to_string(alpha));
  }
}

// ---- criterion 2: second example paper regression -------------------------
void criterion2(Checker& c) {
  int code = 0;
  std::string out = run_cli("analyze --example 2 --alpha 0.01", &code);
  c.require(code == 0, "analyze exited " + std::to_string(code));
  c.require(out.find("chi_A+chi_b = 244.937") != std::string::npos,
            "bound (iii) line missing");
  c.require(out.find("B+chi_b = 10123.1") != std::string::npos,
            "bound (iv) line missing");

  auto [p, expect] = example2(0.01);
  ConditioningReport rep = analyze_problem(p);
  TheoremDiagnostics d = theorem_diagnostics(rep);
  c.require(six(rep.bound_iii) == "244.937", "bound_iii six digits");
  c.require(six(rep.bound_iv) == "10123.1", "bound_iv six digits");
  c.require(round2(2.0 * d.rho) == 82.66, "2 rho at two decimals");
  c.require(round2(d.lambda1) == 81.66, "lambda1 at two decimals");
  c.require(round2(d.rho) == 41.33, "rho at two decimals");
  c.require(round2(d.rho + 0.5) == 41.83, "rho + 1/2 at two decimals");
  c.require(round2(d.lambda2) == 40.83, "lambda2 at two decimals");
  c.require(round2(0.5 * d.rho - 1.0) == 19.66, "rho/2 - 1 at two decimals");
  c.require(d.star_b_holds || d.star_d_holds, "no (*) inequality true");
}

// ---- criterion 3: finite-difference Jacobian agreement --------------------
void criterion3(Checker& c) {
  for (int k = 0; k < 100; ++k) {
    IlsProblem p = testing::random_problem(9000 + k);
    IlsSolution s = solve(p);
    JacobianParts parts = jacobian_wrt_A(p, s);
    const Index m = p.rows();
    const Index n = p.cols();
    const double h = 1e-6 * p.A.norm();

    for (Index j = 0; j < n && c.ok; ++j) {
      for (Index i = 0; i < m && c.ok; ++i) {
        Mat dA = Mat::Zero(m, n);
        dA(i, j) = h;
        Vec xp = solve(perturb(p, dA, Vec::Zero(m))).x;
        Vec xm = solve(perturb(p, Mat(-dA), Vec::Zero(m))).x;
        Vec fd = (xp - xm) / (2.0 * h);
        for (Index row = 0; row < n; ++row) {
          const double want = parts.JxA(row, j * m + i);
          const double err = std::abs(fd(row) - want);
          c.require(err <= std::max(1e-9, 1e-6 * std::abs(want)),
                    "JxA entry FD mismatch, problem " + std::to_string(k));
        }
      }
    }
    for (Index i = 0; i < m && c.ok; ++i) {
      Vec db = Vec::Zero(m);
      db(i) = h;
      Vec xp = solve(perturb(p, Mat::Zero(m, n), db)).x;
      Vec xm = solve(perturb(p, Mat::Zero(m, n), Vec(-db))).x;
      Vec fd = (xp - xm) / (2.0 * h);
      for (Index row = 0; row < n; ++row) {
        const double want = parts.Jxb(row, i);
        const double err = std::abs(fd(row) - want);
        c.require(err <= std::max(1e-9, 1e-6 * std::abs(want)),
                  "Jxb entry FD mismatch, problem " + std::to_string(k));
      }
    }
    if (!c.ok) return;
  }
}

// ---- criterion 4: norm identities, sandwich, oracle agreement -------------
void criterion4(Checker& c) {
  for (int k = 0; k < 100 && c.ok; ++k) {
    IlsProblem p = testing::random_problem(9000 + k);
    IlsSolution s = solve(p);
    JacobianParts parts = jacobian_wrt_A(p, s);
    Mat inv = s.factor.inverse();

    const double m1_closed = spectral_norm(inv) * s.r.norm();
    const double m2_closed = s.x.norm() * spectral_norm(inv * p.A.transpose());
    c.require(std::abs(parts.norm_M1 - m1_closed) <= 1e-10 * m1_closed,
              "||M1|| closed form, problem " + std::to_string(k));
    c.require(std::abs(parts.norm_M2 - m2_closed) <= 1e-10 * m2_closed,
              "||M2|| closed form, problem " + std::to_string(k));

    const double joint = chi_Ab(p, s, parts);
    const double sum = chi_A(p, s, parts) + chi_b(p, s);
    c.require(sum >= joint * (1.0 - 1e-9),
              "sandwich lower bound, problem " + std::to_string(k));
    c.require(sum <= 2.0 * joint * (1.0 + 1e-9),
              "sandwich upper bound, problem " + std::to_string(k));

    const double oracle = testing::sphere_oracle_chi_Ab(p, s, parts);
    c.require(std::abs(joint - oracle) <= 1e-6 * oracle,
              "sphere oracle disagreement, problem " + std::to_string(k));
  }
}

// ---- criterion 5: theorem and lemma property suites ------------------------
void criterion5(Checker& c) {
  for (int k = 0; k < 10000 && c.ok; ++k) {
    IlsProblem p = testing::random_problem(5000 + k);
    ConditioningReport rep = analyze_problem(p);
    TheoremDiagnostics d = theorem_diagnostics(rep);
    c.require(d.lambda1 >= d.rho * (1.0 - 1e-12),
              "lambda1 >= rho, problem " + std::to_string(k));
    c.require(d.lambda2 >= 0.5 * d.rho - 1.0 - 1e-12 * std::abs(d.lambda2),
              "lambda2 >= rho/2 - 1, problem " + std::to_string(k));
    c.require(d.star_b_holds || d.star_d_holds,
              "no star inequality, problem " + std::to_string(k));
  }

  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  for (int i = 0; i < 10000 && c.ok; ++i) {
    const double m1 = std::pow(10.0, expo(rng));
    const double m2 = std::pow(10.0, expo(rng));
    MBounds mb = lemma_m_bounds(m1, m2);
    c.require(mb.lower <= mb.value * (1.0 + 1e-12) &&
                  mb.value <= mb.upper * (1.0 + 1e-12),
              "lemma 1 ordering, sample " + std::to_string(i));

    const double u = std::pow(10.0, expo(rng));
    double v = std::pow(10.0, expo(rng));
    double w = std::pow(10.0, expo(rng));
    if (w < v) std::swap(v, w);
    UvwReport rep = lemma_uvw_check(u, v, w);
    c.require(rep.a_holds && rep.c_holds && (rep.b_holds || rep.d_holds),
              "lemma 2 system, sample " + std::to_string(i));
  }
}

// ---- criterion 6: directed attainability ----------------------------------
void criterion6(Checker& c) {
  auto [p1, e1] = example1(0.01);
  ProbeConfig cfg1;
  cfg1.mode = ProbeMode::DirectedA;
  cfg1.epsilon = 1e-8;
  ProbeResult r1 = directed_probe(p1, cfg1);
  c.require(r1.attained_fraction >= 0.999,
            "directed-A attained " + std::to_string(r1.attained_fraction));

  auto [p2, e2] = example2(0.01);
  ProbeConfig cfg2;
  cfg2.mode = ProbeMode::DirectedJoint;
  cfg2.epsilon = 1e-8;
  ProbeResult r2 = directed_probe(p2, cfg2);
  c.require(r2.attained_fraction >= 0.99,
            "directed-joint attained " + std::to_string(r2.attained_fraction));
}

// ---- criterion 7: overestimation of the published bound -------------------
void criterion7(Checker& c) {
  auto [p, expect] = example2(0.01);
  ProbeConfig cfg;
  cfg.mode = ProbeMode::RandomJoint;
  cfg.epsilon = 1e-6;
  cfg.samples = 10000;
  cfg.seed = 7;
  ProbeResult res = random_probe(p, cfg);
  c.require(res.rejected == 0, "samples rejected");
  c.require(res.max_ratio <= 244.937 * (1.0 + 1e-3),
            "max ratio " + std::to_string(res.max_ratio));
  c.require(res.margin_iv >= 30.0,
            "bound (iv) margin " + std::to_string(res.margin_iv));
}

// ---- criterion 8: remainder order ------------------------------------------
void criterion8(Checker& c) {
  auto [p, expect] = example1(0.1);
  IlsSolution s = solve(p);
  JacobianParts parts = jacobian_wrt_A(p, s);
  Mat U = worst_direction_A(parts, 2, 1);
  RemainderReport rep = remainder_order_check(p, U, {1e-2, 5e-3, 2.5e-3});
  double lo = rep.points.front().ratio_over_t2;
  double hi = lo;
  for (const RemainderPoint& pt : rep.points) {
    lo = std::min(lo, pt.ratio_over_t2);
    hi = std::max(hi, pt.ratio_over_t2);
  }
  c.require(rep.quadratic, "successive remainder factors exceed 4");
  c.require(hi / lo <= 1.5, "remainder ratio varies by " +
                                std::to_string(hi / lo));

  // pure-b perturbation: no remainder beyond roundoff
  auto [p2, e2] = example2(0.05);
  IlsSolution s2 = solve(p2);
  JacobianParts parts2 = jacobian_wrt_A(p2, s2);
  Vec db(3);
  db << 3e-4, -2e-4, 1e-4;
  Vec dx = solve(perturb(p2, Mat::Zero(3, 2), db)).x - s2.x;
  Vec linear = parts2.Jxb * db;
  c.require((dx - linear).norm() <= 1e-13 * s2.x.norm(),
            "pure-b remainder above roundoff");
}

// ---- criterion 9: determinism ----------------------------------------------
void criterion9(Checker& c) {
  const std::string cmd =
      "probe --example 2 --alpha 0.01 --mode random-joint --eps 1e-6 "
      "--samples 2000 --seed 7";
  std::string a = run_cli(cmd);
  std::string b = run_cli(cmd);
  std::string threaded = run_cli(cmd + " --threads 4");
  c.require(!a.empty(), "probe produced no output");
  c.require(a == b, "repeated runs differ");
  c.require(a == threaded, "threaded run differs");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Checker&)> run;
  };
  const std::vector<Entry> criteria{
      {1, "paper regression, example 1", criterion1},
      {2, "paper regression, example 2", criterion2},
      {3, "finite-difference Jacobian agreement", criterion3},
      {4, "norm identities, sandwich, oracle", criterion4},
      {5, "theorem and lemma property suites", criterion5},
      {6, "directed attainability", criterion6},
      {7, "bound (iv) overestimation", criterion7},
      {8, "remainder order", criterion8},
      {9, "probe determinism", criterion9},
  };

  int failures = 0;
  for (const Entry& entry : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.run(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s  criterion %d: %s (%.2fs)%s%s\n",
                checker.ok ? "PASS" : "FAIL", entry.id, entry.name, secs,
                checker.ok ? "" : " -- ", checker.ok ? "" : checker.detail.c_str());
    if (!checker.ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
