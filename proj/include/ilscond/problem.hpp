#pragma once

#include <optional>
#include <vector>

#include "ilscond/linalg.hpp"

namespace ilscond {

// Signature matrix J = diag(+1,...,+1,-1,...,-1), stored as block counts.
// Arbitrary sign orderings are normalized to this block form on input
// (see make_problem_from_signs).
struct Signature {
  Index m_plus = 0;
  Index m_minus = 0;

  Index size() const { return m_plus + m_minus; }
  double sign(Index i) const { return i < m_plus ? 1.0 : -1.0; }
  Vec diagonal() const;
  Vec apply(const Vec& v) const;    // J v
  Mat apply_left(const Mat& M) const;  // J M
};

// Indefinite least squares problem: minimize (b - Au)^t J (b - Au) over u,
// with A^t J A positive definite. norm_a and norm_b are the normalizing
// factors of the relative perturbation measure; they default to ||A||_F and
// ||b||_2 but are explicit so norm_b = 0 can encode the "perturb A only"
// regime.
struct IlsProblem {
  Mat A;
  Vec b;
  Signature J;
  double norm_a = 0.0;
  double norm_b = 0.0;

  Index rows() const { return A.rows(); }
  Index cols() const { return A.cols(); }
  Mat gram() const;  // A^t J A
};

// Validates shapes, finiteness, m > n >= 1, m_plus >= n, and normalizer
// signs. Does not test positive definiteness; see validate()/solve().
IlsProblem make_problem(Mat A, Vec b, Signature J);
IlsProblem make_problem(Mat A, Vec b, Signature J, double norm_a,
                        double norm_b);

// Accepts an arbitrary per-row sign pattern (+1/-1) and permutes rows of A
// and b so all +1 rows come first, yielding the block signature form.
IlsProblem make_problem_from_signs(const Mat& A, const Vec& b,
                                   const std::vector<int>& signs);

// Throws NotPositiveDefinite unless A^t J A passes the SPD pivot test.
void validate(const IlsProblem& p);
bool is_positive_definite(const IlsProblem& p) noexcept;

struct IlsSolution {
  Vec x;
  Vec r;          // b - A x
  Mat gram;       // A^t J A
  SpdFactor factor;  // Cholesky factor of gram
};

// Solves the first-order optimality condition A^t J A x = A^t J b.
IlsSolution solve(const IlsProblem& p);

// Canonical-form builder: A = blockdiag(Q+, Q-) [C; S] X with
// C = diag(cos theta_i) zero-padded to m_plus rows and
// S = diag(sin theta_j), under pi/4 > theta_1 >= ... >= theta_n >= 0 and
// theta_i = 0 for i > m_minus. Absent Q factors default to identity.
struct GsvdSpec {
  std::vector<double> thetas;  // n angles, descending
  Mat X;                       // n x n, invertible
  std::optional<Mat> Q_plus;   // m_plus x m_plus orthogonal
  std::optional<Mat> Q_minus;  // m_minus x m_minus orthogonal
  Index m_plus = 0;
  Index m_minus = 0;
};

// Builds the matrix A of the canonical form. Throws AngleOutOfRange or
// SingularX; Q orthogonality failures throw std::invalid_argument.
Mat gsvd_matrix(const GsvdSpec& spec);

// gsvd_matrix plus problem assembly with default normalizers.
IlsProblem problem_from_gsvd(const GsvdSpec& spec, Vec b);

// Returns the problem with A + dA, b + db, the same J and the *same*
// normalizers as p (perturbations are measured relative to the base data).
// Throws NotPositiveDefinite if the perturbed Gram matrix fails the SPD
// test, i.e. the perturbation left the admissible set.
IlsProblem perturb(const IlsProblem& p, const Mat& dA, const Vec& db);

// epsilon = max(||dA||_F / norm_a, ||db||_2 / norm_b); the db term is
// omitted when db = 0, and requesting it with norm_b = 0 throws
// ZeroNormalizer.
double epsilon_of(const IlsProblem& p, const Mat& dA, const Vec& db);

}  // namespace ilscond
