#include "ilscond/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace ilscond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform in [0, 1) from the top 53 bits of the engine output; fully
// determined by the engine so results do not depend on library internals.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  double u1 = 1.0 - canonical(rng);
  double u2 = canonical(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::mt19937_64 sample_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

bool mode_perturbs_A(ProbeMode mode) {
  return mode != ProbeMode::RandomB;
}

bool mode_perturbs_b(ProbeMode mode) {
  return mode == ProbeMode::DirectedJoint || mode == ProbeMode::RandomB ||
         mode == ProbeMode::RandomJoint;
}

struct ProbeContext {
  IlsSolution base;
  JacobianParts parts;
  ConditioningReport report;
};

ProbeContext analyze_base(const IlsProblem& p) {
  IlsSolution s = solve(p);
  JacobianParts parts = jacobian_wrt_A(p, s);
  ConditioningReport report = bound_coefficients(p, s, parts);
  return ProbeContext{std::move(s), std::move(parts), std::move(report)};
}

void check_config(const IlsProblem& p, const ProbeConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
    throw InvalidEpsilon("epsilon must be positive");
  }
  if (cfg.samples < 1) {
    throw std::invalid_argument("samples must be >= 1");
  }
  if (cfg.threads < 1) {
    throw std::invalid_argument("threads must be >= 1");
  }
  if (mode_perturbs_b(cfg.mode) && p.norm_b <= 0.0) {
    throw ZeroNormalizer("probe mode perturbs b but norm_b = 0");
  }
}

// Applies (dA, db), re-solves, and measures the realized ratio and the
// sample-specific bound (i) margin. Returns false when the perturbation
// exits the SPD region.
bool run_sample(const IlsProblem& p, const ProbeContext& ctx, double epsilon,
                const Mat& dA, const Vec& db, ProbeSample& out) {
  out.norm_dA = dA.norm();
  out.norm_db = db.norm();
  try {
    IlsProblem q = perturb(p, dA, db);
    IlsSolution sq = solve(q);
    const double nx = ctx.base.x.norm();
    out.ratio = (sq.x - ctx.base.x).norm() / nx / epsilon;
    const double bound_i = eval_bound_i(ctx.report, dA, db) / epsilon;
    out.margin_i = out.ratio > 0.0 ? bound_i / out.ratio : kInf;
    out.rejected = false;
    return true;
  } catch (const NotPositiveDefinite&) {
    out.rejected = true;
    return false;
  }
}

ProbeResult reduce(const IlsProblem& p, const ProbeContext& ctx,
                   const ProbeConfig& cfg, std::vector<ProbeSample>&& rows) {
  ProbeResult res;
  res.mode = cfg.mode;
  res.epsilon = cfg.epsilon;
  res.margin_i = kInf;
  for (const ProbeSample& row : rows) {
    if (row.rejected) {
      ++res.rejected;
      continue;
    }
    ++res.accepted;
    res.max_ratio = std::max(res.max_ratio, row.ratio);
    res.margin_i = std::min(res.margin_i, row.margin_i);
  }
  if (res.max_ratio > 0.0) {
    res.margin_ii = ctx.report.chi_Ab / res.max_ratio;
    res.margin_iii = ctx.report.bound_iii / res.max_ratio;
    res.margin_iv = ctx.report.bound_iv / res.max_ratio;
  } else {
    res.margin_ii = res.margin_iii = res.margin_iv = kInf;
  }
  if (cfg.keep_samples) res.samples = std::move(rows);
  return res;
}

}  // namespace

ProbeMode probe_mode_from_string(const std::string& s) {
  if (s == "directed-A") return ProbeMode::DirectedA;
  if (s == "directed-joint") return ProbeMode::DirectedJoint;
  if (s == "random-A") return ProbeMode::RandomA;
  if (s == "random-b") return ProbeMode::RandomB;
  if (s == "random-joint") return ProbeMode::RandomJoint;
  throw std::invalid_argument("unknown probe mode: " + s);
}

std::string to_string(ProbeMode mode) {
  switch (mode) {
    case ProbeMode::DirectedA: return "directed-A";
    case ProbeMode::DirectedJoint: return "directed-joint";
    case ProbeMode::RandomA: return "random-A";
    case ProbeMode::RandomB: return "random-b";
    case ProbeMode::RandomJoint: return "random-joint";
  }
  return "unknown";
}

Mat worst_direction_A(const JacobianParts& parts, Index m, Index n) {
  Eigen::JacobiSVD<Mat> svd(parts.JxA, Eigen::ComputeThinV);
  Vec v = svd.matrixV().col(0);
  // first nonzero entry positive; entries at roundoff level relative to the
  // largest are treated as zero so noise cannot decide the sign
  const double cutoff = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  v.normalize();
  return mat_of_vec(v, m, n);
}

ProbeResult directed_probe(const IlsProblem& p, const ProbeConfig& cfg) {
  if (cfg.mode != ProbeMode::DirectedA && cfg.mode != ProbeMode::DirectedJoint) {
    throw std::invalid_argument("directed_probe: mode is not directed");
  }
  check_config(p, cfg);
  ProbeContext ctx = analyze_base(p);

  Mat dA = Mat::Zero(p.rows(), p.cols());
  Vec db = Vec::Zero(p.rows());
  double chi = 0.0;
  if (cfg.mode == ProbeMode::DirectedA) {
    Mat U = worst_direction_A(ctx.parts, p.rows(), p.cols());
    dA = cfg.epsilon * p.norm_a * U;
    chi = ctx.report.chi_A;
  } else {
    JointNorm joint = joint_condition_number(p, ctx.base, ctx.parts);
    dA = cfg.epsilon * p.norm_a * joint.dir_A;
    db = cfg.epsilon * p.norm_b * joint.dir_b;
    chi = joint.value;
  }

  ProbeSample row;
  row.index = 0;
  if (!run_sample(p, ctx, cfg.epsilon, dA, db, row)) {
    throw PerturbationLeftDomain(
        "directed perturbation left the positive definite region");
  }
  std::vector<ProbeSample> rows{row};
  ProbeResult res = reduce(p, ctx, cfg, std::move(rows));
  res.chi_reference = chi;
  res.attained_fraction = chi > 0.0 ? res.max_ratio / chi : 0.0;
  return res;
}

ProbeResult random_probe(const IlsProblem& p, const ProbeConfig& cfg) {
  if (cfg.mode != ProbeMode::RandomA && cfg.mode != ProbeMode::RandomB &&
      cfg.mode != ProbeMode::RandomJoint) {
    throw std::invalid_argument("random_probe: mode is not random");
  }
  check_config(p, cfg);
  ProbeContext ctx = analyze_base(p);

  const Index m = p.rows();
  const Index n = p.cols();
  const bool with_A = mode_perturbs_A(cfg.mode);
  const bool with_b = mode_perturbs_b(cfg.mode);

  std::vector<ProbeSample> rows(cfg.samples);
  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      std::mt19937_64 rng = sample_rng(cfg.seed, i);
      Mat dA = Mat::Zero(m, n);
      Vec db = Vec::Zero(m);
      if (with_A) {
        double norm = 0.0;
        do {
          for (Index c = 0; c < n; ++c) {
            for (Index r = 0; r < m; ++r) dA(r, c) = standard_normal(rng);
          }
          norm = dA.norm();
        } while (norm == 0.0);
        dA *= cfg.epsilon * p.norm_a / norm;
      }
      if (with_b) {
        double norm = 0.0;
        do {
          for (Index r = 0; r < m; ++r) db(r) = standard_normal(rng);
          norm = db.norm();
        } while (norm == 0.0);
        db *= cfg.epsilon * p.norm_b / norm;
      }
      rows[i].index = i;
      run_sample(p, ctx, cfg.epsilon, dA, db, rows[i]);
    }
  };

  const int threads = std::min(cfg.threads, cfg.samples);
  if (threads <= 1) {
    worker(0, cfg.samples);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(cfg.samples, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  return reduce(p, ctx, cfg, std::move(rows));
}

RemainderReport remainder_order_check(const IlsProblem& p, const Mat& U,
                                      const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("empty t sequence");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0)) throw std::invalid_argument("t values must be positive");
    if (k > 0 && ts[k] >= ts[k - 1]) {
      throw std::invalid_argument("t sequence must be decreasing");
    }
  }
  if (U.rows() != p.rows() || U.cols() != p.cols()) {
    throw DimensionMismatch("remainder_order_check: direction shape mismatch");
  }

  IlsSolution s = solve(p);
  JacobianParts parts = jacobian_wrt_A(p, s);
  Vec zero_db = Vec::Zero(p.rows());

  RemainderReport rep;
  rep.points.reserve(ts.size());
  for (double t : ts) {
    Mat dA = t * U;
    IlsProblem q;
    try {
      q = perturb(p, dA, zero_db);
    } catch (const NotPositiveDefinite&) {
      throw PerturbationLeftDomain("t = " + std::to_string(t) +
                                   " leaves the positive definite region");
    }
    IlsSolution sq = solve(q);
    Vec linear = parts.JxA * vec_of_matrix(dA);
    Vec remainder = sq.x - s.x - linear;
    RemainderPoint pt;
    pt.t = t;
    pt.remainder_norm = remainder.norm();
    pt.ratio_over_t2 = pt.remainder_norm / (t * t);
    rep.points.push_back(pt);
  }

  rep.quadratic = true;
  rep.max_successive_factor = 1.0;
  for (std::size_t k = 1; k < rep.points.size(); ++k) {
    const double prev = rep.points[k - 1].ratio_over_t2;
    const double cur = rep.points[k].ratio_over_t2;
    if (prev == 0.0 && cur == 0.0) continue;
    const double factor = (prev == 0.0 || cur == 0.0)
                              ? kInf
                              : std::max(cur / prev, prev / cur);
    rep.max_successive_factor = std::max(rep.max_successive_factor, factor);
    if (!(factor <= 4.0)) rep.quadratic = false;
  }
  return rep;
}

}  // namespace ilscond
