#include "ilscond/diagnostics.hpp"

#include <cmath>

namespace ilscond {

namespace {

// Relative slack absorbing roundoff when double-checking inequalities the
// underlying theorems guarantee; a genuine violation is an internal bug.
constexpr double kSlack = 1e-12;

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw NonPositiveInput(std::string(name) + " must be positive");
  }
}

}  // namespace

MBounds lemma_m_bounds(double m1, double m2) {
  require_positive_finite(m1, "m1");
  require_positive_finite(m2, "m2");
  // 2/(1 +- mu) with mu = |m1 - m2|/(m1 + m2) simplifies to the stable
  // forms below; the naive 1 - mu cancels catastrophically when m1 >> m2
  // and would let roundoff break the tight inequality value <= upper.
  MBounds out;
  out.lower = (m1 + m2) / std::max(m1, m2);
  out.value = (m1 + m2) / m2;
  out.upper = (m1 + m2) / std::min(m1, m2);
  return out;
}

UvwReport lemma_uvw_check(double u, double v, double w) {
  require_positive_finite(u, "u");
  require_positive_finite(v, "v");
  require_positive_finite(w, "w");
  const double rho = (w + u) / (v + u);
  if (rho < 1.0) {
    throw PreconditionViolated("lemma_uvw_check: rho = " +
                               std::to_string(rho) + " < 1");
  }
  UvwReport rep;
  rep.rho = rho;
  const double wu = w / u;
  const double wv = w / v;
  rep.a_holds = wu + 1.0 >= rho;
  rep.b_holds = rho >= 0.5 * (wu + 1.0);
  rep.c_holds = wv >= rho;
  rep.d_holds = rho >= 0.5 * wv;
  if (wu + 1.0 < rho * (1.0 - kSlack) || wv < rho * (1.0 - kSlack) ||
      (!rep.b_holds && !rep.d_holds &&
       rho * (1.0 + kSlack) < 0.5 * std::min(wu + 1.0, wv))) {
    throw std::logic_error("lemma_uvw_check: guaranteed inequality violated");
  }
  return rep;
}

TheoremDiagnostics theorem_diagnostics(const ConditioningReport& report,
                                       double tau) {
  const struct {
    double value;
    const char* name;
  } required[] = {
      {report.chi_A, "chi_A"},       {report.chi_b, "chi_b"},
      {report.bhp, "B"},             {report.norm_M1, "norm_M1"},
      {report.norm_M2, "norm_M2"},   {report.norm_JxA, "norm_JxA"},
      {report.norm_a, "norm_a"},     {report.norm_b, "norm_b"},
      {report.norm_x, "norm_x"},
  };
  for (const auto& q : required) {
    if (!(q.value > 0.0) || !std::isfinite(q.value)) {
      throw VanishingTerm(q.name);
    }
  }

  TheoremDiagnostics d;
  d.rho = (report.bhp + report.chi_b) / (report.chi_A + report.chi_b);
  d.lambda1 = (report.norm_M1 + report.norm_M2) / report.norm_JxA;
  d.lambda2 = report.norm_a * report.norm_x / report.norm_b;
  d.star_b_holds = 2.0 * d.rho >= d.lambda1;
  d.star_d_holds = d.rho + 0.5 >= d.lambda2;
  d.lower1 = d.rho;
  d.lower2 = 0.5 * d.rho - 1.0;
  d.overestimation_floor = std::max(0.5 * d.lambda1, d.lambda2 - 0.5);
  d.provisionally_forward_stable = d.lambda1 <= tau || d.lambda2 <= tau;

  // The theorem guarantees both lower bounds and at least one star; a
  // violation beyond roundoff means the report is inconsistent.
  const bool lower1_ok = d.lambda1 >= d.rho * (1.0 - kSlack);
  const bool lower2_ok = d.lambda2 >= (0.5 * d.rho - 1.0) * (1.0 + kSlack) -
                                          kSlack;
  const bool star_ok = 2.0 * d.rho >= d.lambda1 * (1.0 - kSlack) ||
                       d.rho + 0.5 >= d.lambda2 * (1.0 - kSlack);
  if (!lower1_ok || !lower2_ok || !star_ok) {
    throw std::logic_error("theorem_diagnostics: guaranteed inequality violated");
  }
  return d;
}

}  // namespace ilscond
