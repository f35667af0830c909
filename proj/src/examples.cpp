#include "ilscond/examples.hpp"

#include <cmath>

namespace ilscond {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > kQuarterPi || !std::isfinite(alpha)) {
    throw AlphaOutOfRange("alpha must lie in (0, pi/4], got " +
                          std::to_string(alpha));
  }
}

}  // namespace

std::pair<IlsProblem, ExampleExpectation> example1(double alpha) {
  check_alpha(alpha);
  const double theta = kQuarterPi - alpha;

  GsvdSpec spec;
  spec.thetas = {theta};
  spec.X = Mat::Identity(1, 1);
  spec.m_plus = 1;
  spec.m_minus = 1;
  Mat A = gsvd_matrix(spec);
  const double norm_a = A.norm();
  Vec b(2);
  b << 1.0, 1.0;
  IlsProblem p = make_problem(std::move(A), std::move(b), Signature{1, 1},
                              norm_a, /*norm_b=*/0.0);

  const double sec_a = 1.0 / std::cos(alpha);
  const double csc_2a = 1.0 / std::sin(2.0 * alpha);

  ExampleExpectation e;
  e.alpha = alpha;
  e.values["chi_A"] = {sec_a, FormKind::Exact};
  e.values["B"] = {2.0 * csc_2a, FormKind::Exact};
  e.values["norm_JxA"] = {sec_a * sec_a / std::sqrt(2.0), FormKind::Exact};
  e.values["norm_M1"] = {csc_2a * sec_a / std::sqrt(2.0), FormKind::Exact};
  e.values["norm_M2"] = {csc_2a * sec_a / std::sqrt(2.0), FormKind::Exact};
  e.values["x1"] = {1.0 / (std::sqrt(2.0) * std::cos(alpha)), FormKind::Exact};
  e.values["gram"] = {std::sin(2.0 * alpha), FormKind::Exact};
  return {std::move(p), std::move(e)};
}

std::pair<IlsProblem, ExampleExpectation> example2(double alpha) {
  check_alpha(alpha);
  const double theta = kQuarterPi - alpha;

  GsvdSpec spec;
  spec.thetas = {theta, 0.0};
  spec.X = Mat::Zero(2, 2);
  spec.X(0, 0) = 1.0;
  spec.X(1, 1) = 1.0 / alpha;
  spec.m_plus = 2;
  spec.m_minus = 1;
  Vec b(3);
  b << 1.0, 1.0, 1.0;
  IlsProblem p = problem_from_gsvd(spec, std::move(b));

  const double inv_a = 1.0 / alpha;
  const double sqrt2 = std::sqrt(2.0);
  const double sqrt3 = std::sqrt(3.0);
  const double sqrt6 = std::sqrt(6.0);

  ExampleExpectation e;
  e.alpha = alpha;
  auto asym = [](double v) { return ClosedForm{v, FormKind::Asymptotic}; };
  e.values["norm_a"] = asym(inv_a);
  e.values["norm_b"] = asym(sqrt3);
  e.values["norm_r"] = asym(1.0 / sqrt2);
  e.values["norm_x"] = asym(1.0 / sqrt2);
  e.values["norm_gram_inv"] = asym(0.5 * inv_a);
  e.values["norm_gram_inv_At"] = asym(0.5 * inv_a);
  e.values["norm_JxA"] = asym(0.5 * sqrt3);
  e.values["norm_M1"] = asym(inv_a / (2.0 * sqrt2));
  e.values["norm_M2"] = asym(inv_a / (2.0 * sqrt2));
  e.values["chi_A"] = asym(sqrt3 / sqrt2 * inv_a);
  e.values["chi_b"] = asym(sqrt3 / sqrt2 * inv_a);
  e.values["B"] = asym(inv_a * inv_a);
  e.values["rho"] = asym(inv_a / sqrt6);
  e.values["lambda1"] = asym(sqrt2 / sqrt3 * inv_a);
  e.values["lambda2"] = asym(inv_a / sqrt6);
  return {std::move(p), std::move(e)};
}

}  // namespace ilscond
