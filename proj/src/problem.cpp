#include "ilscond/problem.hpp"

#include <algorithm>
#include <cmath>

namespace ilscond {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;
constexpr double kOrthogonalityTol = 1e-12;

void check_dimensions(const Mat& A, const Vec& b, const Signature& J) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (J.m_plus < 1 || J.m_minus < 0) {
    throw DimensionMismatch("signature must have m_plus >= 1, m_minus >= 0");
  }
  if (J.size() != m) {
    throw DimensionMismatch("signature size " + std::to_string(J.size()) +
                            " != row count " + std::to_string(m));
  }
  if (b.size() != m) {
    throw DimensionMismatch("b length " + std::to_string(b.size()) +
                            " != row count " + std::to_string(m));
  }
  if (!(m > n) || n < 1) {
    throw DimensionMismatch("need m > n >= 1, got m = " + std::to_string(m) +
                            ", n = " + std::to_string(n));
  }
  if (J.m_plus < n) {
    throw DimensionMismatch("m_plus = " + std::to_string(J.m_plus) +
                            " < n = " + std::to_string(n) +
                            " cannot give a positive definite Gram matrix");
  }
  if (!A.allFinite() || !b.allFinite()) {
    throw DimensionMismatch("problem data contains non-finite entries");
  }
}

void check_orthogonal(const Mat& Q, Index order, const char* name) {
  if (Q.rows() != order || Q.cols() != order) {
    throw DimensionMismatch(std::string(name) + " must be " +
                            std::to_string(order) + "x" +
                            std::to_string(order));
  }
  Mat residual = Q.transpose() * Q - Mat::Identity(order, order);
  if (residual.cwiseAbs().maxCoeff() >
      kOrthogonalityTol * std::max<double>(1.0, order)) {
    throw std::invalid_argument(std::string(name) + " is not orthogonal");
  }
}

}  // namespace

Vec Signature::diagonal() const {
  Vec d(size());
  d.head(m_plus).setOnes();
  d.tail(m_minus).setConstant(-1.0);
  return d;
}

Vec Signature::apply(const Vec& v) const {
  if (v.size() != size()) {
    throw DimensionMismatch("Signature::apply: length mismatch");
  }
  Vec out = v;
  out.tail(m_minus) = -out.tail(m_minus);
  return out;
}

Mat Signature::apply_left(const Mat& M) const {
  if (M.rows() != size()) {
    throw DimensionMismatch("Signature::apply_left: row mismatch");
  }
  Mat out = M;
  out.bottomRows(m_minus) = -out.bottomRows(m_minus);
  return out;
}

Mat IlsProblem::gram() const { return A.transpose() * J.apply_left(A); }

IlsProblem make_problem(Mat A, Vec b, Signature J) {
  const double na = A.norm();  // Frobenius
  const double nb = b.norm();
  return make_problem(std::move(A), std::move(b), J, na, nb);
}

IlsProblem make_problem(Mat A, Vec b, Signature J, double norm_a,
                        double norm_b) {
  check_dimensions(A, b, J);
  if (!(norm_a > 0.0) || !std::isfinite(norm_a)) {
    throw ZeroNormalizer("norm_a must be positive");
  }
  if (norm_b < 0.0 || !std::isfinite(norm_b)) {
    throw ZeroNormalizer("norm_b must be >= 0");
  }
  return IlsProblem{std::move(A), std::move(b), J, norm_a, norm_b};
}

IlsProblem make_problem_from_signs(const Mat& A, const Vec& b,
                                   const std::vector<int>& signs) {
  if (static_cast<Index>(signs.size()) != A.rows()) {
    throw DimensionMismatch("sign pattern length != row count");
  }
  std::vector<Index> order;
  order.reserve(signs.size());
  Index plus = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (Index i = 0; i < A.rows(); ++i) {
      if (signs[i] != 1 && signs[i] != -1) {
        throw std::invalid_argument("sign entries must be +1 or -1");
      }
      if ((pass == 0) == (signs[i] == 1)) {
        order.push_back(i);
        if (pass == 0) ++plus;
      }
    }
  }
  Mat Ap(A.rows(), A.cols());
  Vec bp(b.size());
  for (Index k = 0; k < static_cast<Index>(order.size()); ++k) {
    Ap.row(k) = A.row(order[k]);
    bp(k) = b(order[k]);
  }
  return make_problem(std::move(Ap), std::move(bp),
                      Signature{plus, A.rows() - plus});
}

void validate(const IlsProblem& p) {
  check_dimensions(p.A, p.b, p.J);
  SpdFactor factor(p.gram());  // throws NotPositiveDefinite
}

bool is_positive_definite(const IlsProblem& p) noexcept {
  try {
    validate(p);
    return true;
  } catch (const IlsError&) {
    return false;
  }
}

IlsSolution solve(const IlsProblem& p) {
  check_dimensions(p.A, p.b, p.J);
  Mat gram = p.gram();
  SpdFactor factor(gram);
  Vec x = factor.solve(p.A.transpose() * p.J.apply(p.b));
  Vec r = p.b - p.A * x;
  return IlsSolution{std::move(x), std::move(r), std::move(gram),
                     std::move(factor)};
}

Mat gsvd_matrix(const GsvdSpec& spec) {
  const Index n = static_cast<Index>(spec.thetas.size());
  if (n < 1) throw DimensionMismatch("gsvd: need at least one angle");
  if (spec.X.rows() != n || spec.X.cols() != n) {
    throw DimensionMismatch("gsvd: X must be n x n with n = angle count");
  }
  if (spec.m_plus < n || spec.m_minus < 0) {
    throw DimensionMismatch("gsvd: need m_plus >= n and m_minus >= 0");
  }

  for (Index i = 0; i < n; ++i) {
    const double t = spec.thetas[i];
    if (!(t >= 0.0) || t >= kQuarterPi) {
      throw AngleOutOfRange("theta_" + std::to_string(i + 1) +
                            " outside [0, pi/4)");
    }
    if (i > 0 && spec.thetas[i] > spec.thetas[i - 1]) {
      throw AngleOutOfRange("angles must be non-increasing");
    }
    if (i >= spec.m_minus && t != 0.0) {
      throw AngleOutOfRange("theta_" + std::to_string(i + 1) +
                            " must be zero beyond the negative block");
    }
  }

  Eigen::FullPivLU<Mat> lu(spec.X);
  if (!lu.isInvertible()) throw SingularX("gsvd: X is singular");

  const Index m = spec.m_plus + spec.m_minus;
  Mat CS = Mat::Zero(m, n);
  for (Index i = 0; i < n; ++i) CS(i, i) = std::cos(spec.thetas[i]);
  for (Index j = 0; j < std::min(spec.m_minus, n); ++j) {
    CS(spec.m_plus + j, j) = std::sin(spec.thetas[j]);
  }

  Mat A = CS * spec.X;
  if (spec.Q_plus) {
    check_orthogonal(*spec.Q_plus, spec.m_plus, "Q_plus");
    A.topRows(spec.m_plus) = (*spec.Q_plus) * A.topRows(spec.m_plus);
  }
  if (spec.Q_minus && spec.m_minus > 0) {
    check_orthogonal(*spec.Q_minus, spec.m_minus, "Q_minus");
    A.bottomRows(spec.m_minus) = (*spec.Q_minus) * A.bottomRows(spec.m_minus);
  }
  return A;
}

IlsProblem problem_from_gsvd(const GsvdSpec& spec, Vec b) {
  Mat A = gsvd_matrix(spec);
  return make_problem(std::move(A), std::move(b),
                      Signature{spec.m_plus, spec.m_minus});
}

IlsProblem perturb(const IlsProblem& p, const Mat& dA, const Vec& db) {
  if (dA.rows() != p.rows() || dA.cols() != p.cols() ||
      db.size() != p.rows()) {
    throw DimensionMismatch("perturb: perturbation shape mismatch");
  }
  IlsProblem q{p.A + dA, p.b + db, p.J, p.norm_a, p.norm_b};
  SpdFactor factor(q.gram());  // reject perturbations that leave the domain
  return q;
}

double epsilon_of(const IlsProblem& p, const Mat& dA, const Vec& db) {
  if (dA.rows() != p.rows() || dA.cols() != p.cols() ||
      db.size() != p.rows()) {
    throw DimensionMismatch("epsilon_of: perturbation shape mismatch");
  }
  const double rel_a = dA.norm() / p.norm_a;
  const double ndb = db.norm();
  if (ndb == 0.0) return rel_a;
  if (p.norm_b == 0.0) {
    throw ZeroNormalizer("epsilon_of: db != 0 but norm_b = 0");
  }
  return std::max(rel_a, ndb / p.norm_b);
}

}  // namespace ilscond
