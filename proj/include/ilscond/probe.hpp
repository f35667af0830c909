#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ilscond/conditioning.hpp"

namespace ilscond {

enum class ProbeMode {
  DirectedA,      // worst Delta A direction from the Jacobian singular vector
  DirectedJoint,  // worst (Delta A, Delta b) pair from the joint maximizer
  RandomA,
  RandomB,
  RandomJoint,
};

ProbeMode probe_mode_from_string(const std::string& s);
std::string to_string(ProbeMode mode);

struct ProbeConfig {
  double epsilon = 0.0;  // relative perturbation size
  int samples = 1;
  std::uint64_t seed = 0;
  ProbeMode mode = ProbeMode::RandomJoint;
  int threads = 1;            // sampling is per-sample seeded, so the thread
                              // count never changes the result
  bool keep_samples = false;  // record per-sample rows (CSV emission)
};

struct ProbeSample {
  int index = 0;
  double norm_dA = 0.0;
  double norm_db = 0.0;
  double ratio = 0.0;     // (||dx|| / ||x||) / epsilon
  double margin_i = 0.0;  // bound (i) at this (dA, db), in epsilon units,
                          // divided by ratio
  bool rejected = false;  // perturbation left the SPD region
};

struct ProbeResult {
  ProbeMode mode = ProbeMode::RandomJoint;
  double epsilon = 0.0;
  double max_ratio = 0.0;
  // Overestimation factors bound / realized sensitivity; >= 1 means the
  // bound was sound for this run. margin_i is the minimum over samples of
  // the perturbation-specific bound (i) margin; the others divide the fixed
  // coefficients by max_ratio.
  double margin_i = 0.0;
  double margin_ii = 0.0;
  double margin_iii = 0.0;
  double margin_iv = 0.0;
  double attained_fraction = 0.0;  // max_ratio / chi (directed modes only)
  double chi_reference = 0.0;      // chi_A or chi_Ab in directed modes
  int accepted = 0;
  int rejected = 0;
  std::vector<ProbeSample> samples;  // filled iff cfg.keep_samples
};

// U = mat(top right singular vector of J_x(A)), ||U||_F = 1, sign fixed so
// the first nonzero entry of vec(U) is positive. J_x(A) vec(U) realizes
// ||J_x(A)||_2.
Mat worst_direction_A(const JacobianParts& parts, Index m, Index n);

// Perturbs along the bound-attaining direction(s) with exact radius
// epsilon * normalizer, re-solves exactly, and reports the realized
// sensitivity ratio; as epsilon -> 0 the ratio approaches chi_A
// (directed-A) or chi_Ab (directed-joint). Throws PerturbationLeftDomain if
// the directed step exits the SPD region, InvalidEpsilon for epsilon <= 0.
ProbeResult directed_probe(const IlsProblem& p, const ProbeConfig& cfg);

// Seeded Gaussian directions scaled to the exact perturbation radius per
// mode; each sample re-solves the perturbed problem exactly. Samples whose
// Gram matrix fails the SPD test are counted as rejected, not fatal.
// Identical (seed, config) gives identical results regardless of thread
// count or execution order.
ProbeResult random_probe(const IlsProblem& p, const ProbeConfig& cfg);

// Second-order remainder probe along direction U:
//   R(t) = x(A + tU) - x(A) - J_x(A) vec(tU).
// For decreasing t the ratio ||R(t)||/t^2 stays bounded (factor-4 window
// between successive points as t halves) when the Taylor remainder is
// genuinely second order.
struct RemainderPoint {
  double t = 0.0;
  double remainder_norm = 0.0;
  double ratio_over_t2 = 0.0;
};

struct RemainderReport {
  std::vector<RemainderPoint> points;
  bool quadratic = false;  // successive ratio factors within [1/4, 4]
  double max_successive_factor = 0.0;
};

RemainderReport remainder_order_check(const IlsProblem& p, const Mat& U,
                                      const std::vector<double>& ts);

}  // namespace ilscond
