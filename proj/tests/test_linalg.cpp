#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ilscond/linalg.hpp"
#include "test_support.hpp"

using namespace ilscond;

TEST_CASE("vec_of_matrix stacks columns") {
  Mat A(2, 2);
  A << 1, 2, 3, 4;
  Vec v = vec_of_matrix(A);
  CHECK(v.size() == 4);
  CHECK(v(0) == 1);
  CHECK(v(1) == 3);
  CHECK(v(2) == 2);
  CHECK(v(3) == 4);

  Mat one(1, 1);
  one << 5;
  CHECK(vec_of_matrix(one)(0) == 5);

  Mat col(2, 1);
  col << 7, 9;
  Vec vc = vec_of_matrix(col);
  CHECK(vc(0) == 7);
  CHECK(vc(1) == 9);
}

TEST_CASE("mat_of_vec inverts vec_of_matrix") {
  Vec v(4);
  v << 1, 3, 2, 4;
  Mat A = mat_of_vec(v, 2, 2);
  CHECK(A(0, 0) == 1);
  CHECK(A(0, 1) == 2);
  CHECK(A(1, 0) == 3);
  CHECK(A(1, 1) == 4);

  Vec single(1);
  single << 5;
  CHECK(mat_of_vec(single, 1, 1)(0, 0) == 5);

  Vec col(2);
  col << 7, 9;
  Mat C = mat_of_vec(col, 2, 1);
  CHECK(C(0, 0) == 7);
  CHECK(C(1, 0) == 9);

  CHECK_THROWS_AS(mat_of_vec(v, 3, 2), DimensionMismatch);
}

TEST_CASE("round trip mat_of_vec(vec_of_matrix(A)) == A") {
  auto rng = testing::seeded(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<Index> dim(1, 7);
    const Index r = dim(rng);
    const Index c = dim(rng);
    Mat A = testing::random_matrix(rng, r, c);
    Mat back = mat_of_vec(vec_of_matrix(A), r, c);
    CHECK((back - A).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("kron basics") {
  Mat I2 = Mat::Identity(2, 2);
  Mat five(1, 1);
  five << 5;
  Mat d = kron(I2, five);
  CHECK(d.rows() == 2);
  CHECK(d.cols() == 2);
  CHECK(d(0, 0) == 5);
  CHECK(d(1, 1) == 5);
  CHECK(d(0, 1) == 0);

  Mat col(2, 1);
  col << 1, 2;
  Mat three(1, 1);
  three << 3;
  Mat k = kron(col, three);
  CHECK(k.rows() == 2);
  CHECK(k.cols() == 1);
  CHECK(k(0, 0) == 3);
  CHECK(k(1, 0) == 6);
}

TEST_CASE("kron 2x2 by 2x2 expanded blockwise") {
  Mat H(2, 2), K(2, 2);
  H << 1, 2, 3, 4;
  K << 0, 1, 1, 0;
  Mat G = kron(H, K);
  // expected blocks H(i,j)*K, expanded by hand
  Mat expected(4, 4);
  expected << 0, 1, 0, 2,
              1, 0, 2, 0,
              0, 3, 0, 4,
              3, 0, 4, 0;
  CHECK((G - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectral norm of simple matrices") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -4;
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-12));

  Mat nil(2, 2);
  nil << 0, 1, 0, 0;
  CHECK(spectral_norm(nil) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(spectral_norm(Mat::Zero(3, 3)) == 0.0);
}

TEST_CASE("spectral norm vs sphere-sampling oracle on a random 3x2") {
  auto rng = testing::seeded(7);
  Mat M = testing::random_matrix(rng, 3, 2);
  const double sigma = spectral_norm(M);

  // independent oracle: max of ||M u|| over sampled unit directions
  double best = 0.0;
  std::mt19937_64 orng(123);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int kSamples = 1000000;
  for (int i = 0; i < kSamples; ++i) {
    Vec u(2);
    u << gauss(orng), gauss(orng);
    const double nu = u.norm();
    if (nu == 0.0) continue;
    best = std::max(best, (M * (u / nu)).norm());
  }
  CHECK(best <= sigma * (1 + 1e-12));
  CHECK(best == doctest::Approx(sigma).epsilon(1e-4));
}

TEST_CASE("spectral norm invariants") {
  auto rng = testing::seeded(19);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<Index> dim(1, 6);
    Mat M = testing::random_matrix(rng, dim(rng), dim(rng));
    const double a = spectral_norm(M);
    const double b = spectral_norm(Mat(M.transpose()));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("kron norm multiplicativity") {
  auto rng = testing::seeded(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<Index> dim(1, 4);
    Mat H = testing::random_matrix(rng, dim(rng), dim(rng));
    Mat K = testing::random_matrix(rng, dim(rng), dim(rng));
    const double lhs = spectral_norm(kron(H, K));
    const double rhs = spectral_norm(H) * spectral_norm(K);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("power iteration fallback agrees with SVD") {
  auto rng = testing::seeded(31);
  for (int trial = 0; trial < 10; ++trial) {
    Mat M = testing::random_matrix(rng, 9, 14);
    const double svd = detail::spectral_norm_svd(M);
    const double pow = detail::spectral_norm_power(M);
    CHECK(pow == doctest::Approx(svd).epsilon(1e-10));
  }
  CHECK(detail::spectral_norm_power(Mat::Zero(4, 4)) == 0.0);
}

TEST_CASE("spd_solve solves and rejects") {
  Vec y(2);
  y << 1, 2;
  CHECK((spd_solve(Mat::Identity(2, 2), y) - y).norm() == 0.0);

  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 4;
  d(1, 1) = 9;
  Vec y2(2);
  y2 << 4, 9;
  Vec z = spd_solve(d, y2);
  CHECK(z(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z(1) == doctest::Approx(1.0).epsilon(1e-14));

  Mat s(2, 2);
  s << 2, 1, 1, 2;
  Vec y3(2);
  y3 << 3, 3;
  Vec z3 = spd_solve(s, y3);
  CHECK(z3(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(z3(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((s * z3 - y3).norm() <= 1e-14 * y3.norm());

  Mat indef(2, 2);
  indef << 1, 0, 0, -1;
  CHECK_THROWS_AS(spd_solve(indef, y), NotPositiveDefinite);
  CHECK_THROWS_AS(spd_solve(Mat::Zero(2, 2), y), NotPositiveDefinite);

  Mat rect(2, 3);
  rect.setOnes();
  CHECK_THROWS_AS(spd_solve(rect, y), DimensionMismatch);
}

TEST_CASE("spd solve round trip on random well-conditioned matrices") {
  auto rng = testing::seeded(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<Index> dim(1, 6);
    const Index n = dim(rng);
    Mat G = testing::random_matrix(rng, n + 2, n);
    Mat S = G.transpose() * G + Mat::Identity(n, n);
    Vec y = testing::random_vector(rng, n);
    Vec z = spd_solve(S, y);
    CHECK((S * z - y).norm() <= 1e-10 * y.norm());
  }
}
