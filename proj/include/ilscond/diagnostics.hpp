#pragma once

#include "ilscond/conditioning.hpp"

namespace ilscond {

// Two-sided bracket for (m1 + m2) / m2 in terms of the cancellation ratio
// mu = |m1 - m2| / (m1 + m2): lower <= value <= upper.
struct MBounds {
  double lower = 0.0;  // 2 / (1 + mu)
  double value = 0.0;  // (m1 + m2) / m2
  double upper = 0.0;  // 2 / (1 - mu)
};

MBounds lemma_m_bounds(double m1, double m2);  // throws NonPositiveInput

// For positive u, v, w with rho = (w + u) / (v + u) >= 1:
//   (a) w/u + 1 >= rho      (b) rho >= (w/u + 1) / 2
//   (c) w/v     >= rho      (d) rho >= (w/v) / 2
// (a) and (c) always hold; at least one of (b), (d) holds.
struct UvwReport {
  double rho = 0.0;
  bool a_holds = false;
  bool b_holds = false;
  bool c_holds = false;
  bool d_holds = false;
};

UvwReport lemma_uvw_check(double u, double v, double w);

// The overestimation diagnostics:
//   rho     = (B + chi_b) / (chi_A + chi_b)   -- bound (iv) over bound (iii)
//   lambda1 = (||M1|| + ||M2||) / ||M1 - M2|| -- cancellation factor
//   lambda2 = norm_a ||x|| / norm_b           -- scale factor
// Guaranteed system: 2 rho >=* lambda1 >= rho and
// rho + 1/2 >=* lambda2 >= rho/2 - 1, with at least one (*) true. Bound (iv)
// uniformly overestimates all perturbations iff both lambdas are large; the
// factor is then at least max(lambda1/2, lambda2 - 1/2).
struct TheoremDiagnostics {
  double rho = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool star_b_holds = false;  // 2 rho >= lambda1
  bool star_d_holds = false;  // rho + 1/2 >= lambda2
  double lower1 = 0.0;        // rho        (guaranteed <= lambda1)
  double lower2 = 0.0;        // rho/2 - 1  (guaranteed <= lambda2)
  double overestimation_floor = 0.0;  // max(lambda1/2, lambda2 - 1/2)
  // Advisory screen: lambda1 <= tau or lambda2 <= tau means the published
  // bound approximates an attainable one for this problem, so an algorithm
  // whose error satisfies it behaves like a backward stable method here.
  bool provisionally_forward_stable = false;
};

// Requires chi_A, chi_b, B, ||M1||, ||M2||, ||M1 - M2||, norm_a, norm_b and
// ||x|| all positive; throws VanishingTerm naming the offender otherwise.
TheoremDiagnostics theorem_diagnostics(const ConditioningReport& report,
                                       double tau = 10.0);

}  // namespace ilscond
