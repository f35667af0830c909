#pragma once

#include "ilscond/problem.hpp"

namespace ilscond {

// The solution Jacobian with respect to vec(A) splits into two
// Kronecker-structured terms whose mutual cancellation drives everything
// this library measures:
//   J_x(A) = M1 - M2,
//   M1 = (A^t J A)^{-1} (x) (Jr)^t,      ||M1|| = ||(A^t J A)^{-1}|| ||r||
//   M2 = x^t (x) (A^t J A)^{-1} A^t J,   ||M2|| = ||x|| ||(A^t J A)^{-1} A^t||
// where (x) is the Kronecker product. J_x(b) = (A^t J A)^{-1} A^t J.
struct JacobianParts {
  Mat M1;   // n x mn
  Mat M2;   // n x mn
  Mat JxA;  // M1 - M2
  Mat Jxb;  // n x m
  double norm_M1 = 0.0;
  double norm_M2 = 0.0;
  double norm_JxA = 0.0;
  double norm_Jxb = 0.0;
};

JacobianParts jacobian_wrt_A(const IlsProblem& p, const IlsSolution& s);

// (A^t J A)^{-1} A^t J. x is linear in b, so this Jacobian is exact with no
// remainder term.
Mat jacobian_wrt_b(const IlsProblem& p, const IlsSolution& s);

// chi_x(A) = (norm_a / ||x||) ||J_x(A)||_2. Throws ZeroSolution.
double chi_A(const IlsProblem& p, const IlsSolution& s,
             const JacobianParts& parts);

// chi_x(b) = (norm_b / ||x||) ||J_x(b)||_2 = norm_b ||M2|| / ||x||^2.
// Throws ZeroSolution / ZeroNormalizer.
double chi_b(const IlsProblem& p, const IlsSolution& s);

// Exact joint condition number under the max-of-relative-norms perturbation
// measure:
//   chi_x(A,b) = (1/||x||) max_{||w||=1}
//                  norm_a ||J_x(A)^t w|| + norm_b ||J_x(b)^t w||.
// The max-ball of the measure is the product of the two scaled balls, so the
// induced norm is this dual-norm maximum. Computed by a monotone fixed-point
// ascent with 64 seeded random restarts plus singular-vector warm starts;
// convergence 1e-12. The maximizing w and the aligned unit perturbation
// directions are returned for the directed attainability probes.
struct JointNorm {
  double value = 0.0;  // chi_x(A,b)
  Vec w;               // maximizing unit vector in R^n
  Mat dir_A;           // unit-Frobenius worst Delta A direction (m x n)
  Vec dir_b;           // unit worst Delta b direction (m)
};

JointNorm joint_condition_number(const IlsProblem& p, const IlsSolution& s,
                                 const JacobianParts& parts);
double chi_Ab(const IlsProblem& p, const IlsSolution& s,
              const JacobianParts& parts);

// B = (norm_a / ||x||)(||M1|| + ||M2||): the published coefficient, an upper
// bound for chi_x(A) that ignores cancellation between M1 and M2.
double bhp_coefficient(const IlsProblem& p, const IlsSolution& s,
                       const JacobianParts& parts);

// Everything the bound hierarchy needs, in one record. With norm_b = 0 the
// b-terms drop out: chi_b = 0, chi_Ab = chi_A, bound (iv) reduces to B.
struct ConditioningReport {
  double chi_A = 0.0;
  double chi_b = 0.0;
  double chi_Ab = 0.0;
  double bhp = 0.0;        // B
  double bound_iii = 0.0;  // chi_A + chi_b
  double bound_iv = 0.0;   // B + chi_b

  double norm_M1 = 0.0;
  double norm_M2 = 0.0;
  double norm_JxA = 0.0;
  double norm_Jxb = 0.0;

  double norm_a = 0.0;  // normalizers in effect
  double norm_b = 0.0;
  double norm_A_fro = 0.0;  // ||A||_F of the data
  double norm_b2 = 0.0;     // ||b||_2 of the data
  double norm_x = 0.0;
  double norm_r = 0.0;
  double norm_gram_inv = 0.0;     // ||(A^t J A)^{-1}||_2
  double norm_gram_inv_At = 0.0;  // ||(A^t J A)^{-1} A^t||_2
};

ConditioningReport bound_coefficients(const IlsProblem& p,
                                      const IlsSolution& s,
                                      const JacobianParts& parts);

// Bound (i), the only perturbation-specific one:
//   chi_A ||dA||_F / norm_a + chi_b ||db||_2 / norm_b.
// The db term requires norm_b > 0 unless db = 0.
double eval_bound_i(const ConditioningReport& report, const Mat& dA,
                    const Vec& db);

}  // namespace ilscond
