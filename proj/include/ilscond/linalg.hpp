#pragma once

#include <Eigen/Dense>

#include "ilscond/errors.hpp"

namespace ilscond {

// Column-major dense types. Column-major storage makes vec_of_matrix the
// plain memory layout, so the Kronecker identities for the solution
// Jacobian hold entrywise without index shuffling.
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

// Stacks the columns of A into one vector: entry (i,j) of A lands at
// position j*rows + i.
Vec vec_of_matrix(const Mat& A);

// Inverse of vec_of_matrix. Throws DimensionMismatch if v.size() != rows*cols.
Mat mat_of_vec(const Vec& v, Index rows, Index cols);

// Kronecker product: block (i,j) of the result is H(i,j) * K.
Mat kron(const Mat& H, const Mat& K);

// Largest singular value. Full SVD for small matrices; power iteration on
// M^t M (tolerance 1e-12, at most 1e5 iterations) once the matrix is too
// large for a dense SVD to be reasonable.
double spectral_norm(const Mat& M);

namespace detail {
double spectral_norm_svd(const Mat& M);
double spectral_norm_power(const Mat& M, double tol = 1e-12,
                           long max_iter = 100000);
}  // namespace detail

// Cholesky factorization S = L L^t that refuses matrices which are not
// numerically positive definite: any pivot <= pivot_tol * max(diag(S))
// throws NotPositiveDefinite. Only the lower triangle of S is read.
class SpdFactor {
 public:
  static constexpr double kDefaultPivotTol = 1e-13;

  explicit SpdFactor(const Mat& S, double pivot_tol = kDefaultPivotTol);

  Vec solve(const Vec& y) const;
  Mat solve_cols(const Mat& B) const;  // one solve per column
  Mat inverse() const;
  const Mat& lower() const { return L_; }
  Index size() const { return L_.rows(); }

 private:
  Mat L_;
};

// One-shot solve of S z = y through SpdFactor.
Vec spd_solve(const Mat& S, const Vec& y);

}  // namespace ilscond
