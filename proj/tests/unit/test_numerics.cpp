#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>

#include "collinear/distributions.hpp"
#include "collinear/error.hpp"
#include "collinear/fixtures.hpp"
#include "collinear/linalg.hpp"
#include "doctest.h"

using namespace collinear;

namespace {

// Determinant by cofactor expansion along the first row.
double cofactor_det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    det += (c % 2 ? -1.0 : 1.0) * a(0, c) * cofactor_det(minor);
  }
  return det;
}

Matrix adjugate_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  const double det = cofactor_det(a);
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Matrix minor(n - 1, n - 1);
      for (std::size_t i = 0, ii = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, jj = 0; j < n; ++j)
          if (j != c) minor(ii, jj++) = a(i, j);
        ++ii;
      }
      inv(c, r) = ((r + c) % 2 ? -1.0 : 1.0) * cofactor_det(minor) / det;
    }
  return inv;
}

Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = g(rng);
  Matrix a = b.transpose() * b;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 0.5;
  return a;
}

}  // namespace

TEST_CASE("solve_spd trivial systems") {
  const Matrix b{{1, 2}, {3, 4}, {5, 6}};
  CHECK(max_abs(solve_spd(Matrix::identity(3), b) - b) == 0.0);
  const Matrix x = solve_spd(Matrix{{2, 0}, {0, 4}}, Matrix{{1}, {1}});
  CHECK(x(0, 0) == doctest::Approx(0.5));
  CHECK(x(1, 0) == doctest::Approx(0.25));
}

TEST_CASE("solve_spd agrees with the adjugate inverse") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_spd(5, rng);
    const Matrix inv = solve_spd(a, Matrix::identity(5));
    const Matrix oracle = adjugate_inverse(a);
    CHECK(max_abs(inv - oracle) <= 1e-8 * std::max(1.0, max_abs(oracle)));
  }
}

TEST_CASE("solve round trip on moderately conditioned matrices") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    // Q diag(d) Q^T with eigenvalues spread over six decades.
    const std::size_t n = 6;
    Matrix q = random_spd(n, rng);
    // Gram-Schmidt for an orthogonal basis.
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < j; ++p) {
        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d += q(i, j) * q(i, p);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= d * q(i, p);
      }
      double nrm = 0;
      for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= std::sqrt(nrm);
    }
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = std::pow(10.0, -6.0 * i / (n - 1));
    Matrix a = q * d * q.transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
    Matrix b(n, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = g(rng);
    const Matrix x = solve_spd(a, b);
    CHECK(max_abs(a * x - b) <= 1e-8 * max_abs(b));
  }
}

TEST_CASE("factorization rejects singular and asymmetric input") {
  CHECK_THROWS_AS(solve_spd(Matrix{{1, 1}, {1, 1}}, Matrix::identity(2)), NotPositiveDefinite);
  CHECK_THROWS_AS(solve_spd(Matrix{{1, 0}, {0, -1}}, Matrix::identity(2)), NotPositiveDefinite);
  CHECK_THROWS_AS(solve_spd(Matrix{{2, 1}, {0, 2}}, Matrix::identity(2)), ValidationError);
  const Matrix nearly{{1, 1 - 1e-14}, {1 - 1e-14, 1}};
  CHECK_THROWS_AS(inverse_spd(nearly), NotPositiveDefinite);
}

TEST_CASE("inverse_spd trivial cases") {
  CHECK(max_abs(inverse_spd(Matrix::identity(4)) - Matrix::identity(4)) == 0.0);
  const Matrix inv = inverse_spd(Matrix{{4, 0}, {0, 2}});
  CHECK(inv(0, 0) == doctest::Approx(0.25));
  CHECK(inv(1, 1) == doctest::Approx(0.5));
  CHECK(inv(0, 1) == 0.0);
}

TEST_CASE("correlation matrix") {
  SUBCASE("duplicated column") {
    const Matrix x{{1, 1, 3}, {2, 2, 1}, {4, 4, 2}, {3, 3, 5}};
    const Matrix r = correlation_matrix(x);
    CHECK(r(0, 1) == doctest::Approx(1.0));
    CHECK(r(1, 0) == r(0, 1));
    for (std::size_t i = 0; i < 3; ++i) CHECK(r(i, i) == 1.0);
  }
  SUBCASE("simulation design") {
    const Matrix r = correlation_matrix(fixtures::sim_design());
    CHECK(std::abs(r(0, 1) - 0.9067720) < 1e-7);
    CHECK(std::abs(r(2, 3) - 0.9669495) < 1e-7);
    CHECK(std::abs(r(4, 5) - 0.03298507) < 1e-7);
  }
  SUBCASE("augmented Hald") {
    const Matrix r = correlation_matrix(fixtures::hald_augmented().x());
    CHECK(std::abs(r(1, 3) - (-0.97295)) < 5e-6);
    CHECK(std::abs(r(0, 2) - (-0.82413)) < 5e-6);
  }
  SUBCASE("affine rescaling invariance") {
    Matrix x = fixtures::sim_design();
    const Matrix r0 = correlation_matrix(x);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      x(i, 1) = 3.5 * x(i, 1) - 20.0;
      x(i, 4) = 0.01 * x(i, 4) + 7.0;
    }
    CHECK(max_abs(correlation_matrix(x) - r0) < 1e-12);
  }
  SUBCASE("zero variance") {
    const Matrix x{{1, 2}, {2, 2}, {3, 2}};
    CHECK_THROWS_AS(correlation_matrix(x), ZeroVariance);
  }
}

TEST_CASE("incomplete beta against boost") {
  for (double a : {0.5, 1.0, 2.5, 4.0, 10.0})
    for (double b : {0.5, 1.0, 3.0, 7.5})
      for (double x : {0.001, 0.1, 0.35, 0.5, 0.8, 0.999})
        CHECK(std::abs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-12);
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
}

TEST_CASE("t distribution p-values") {
  for (double df : {1.0, 2.0, 5.0, 8.0, 30.0, 200.0}) {
    boost::math::students_t dist(df);
    for (double t : {-12.0, -3.1, -0.4, 0.0, 0.2, 1.96, 5.0, 40.0}) {
      const double oracle = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
      CHECK(std::abs(t_two_sided_p(t, df) - oracle) < 1e-10);
      CHECK(std::abs(student_t_cdf(t, df) - boost::math::cdf(dist, t)) < 1e-10);
    }
  }
  CHECK(t_two_sided_p(0.0, 3) == 1.0);
  CHECK(std::abs(t_two_sided_p(11.53733, 8) - 2.89122e-06) < 5e-12);
  // 0.89487 is printed from an unrounded t, so allow one unit in the last place.
  CHECK(std::abs(t_two_sided_p(-0.13640, 8) - 0.89487) < 1e-5);
}

TEST_CASE("t p-value is monotone in |t|") {
  for (double df : {1.0, 4.0, 8.0, 50.0}) {
    double prev = 1.0;
    for (double t = 0.05; t < 30; t *= 1.3) {
      const double p = t_two_sided_p(t, df);
      CHECK(p < prev);
      CHECK(t_two_sided_p(-t, df) == p);
      prev = p;
    }
  }
}

TEST_CASE("F upper tail") {
  for (double d1 : {1.0, 2.0, 4.0, 5.0})
    for (double d2 : {1.0, 3.0, 7.0, 8.0, 40.0}) {
      boost::math::fisher_f dist(d1, d2);
      for (double f : {0.01, 0.5, 1.0, 2.7, 20.0, 111.5}) {
        const double oracle = boost::math::cdf(boost::math::complement(dist, f));
        CHECK(std::abs(f_upper_p(f, d1, d2) - oracle) < 1e-10);
      }
    }
  CHECK(f_upper_p(0.0, 4, 8) == 1.0);
  // The printed 111.5 is a rounding of 111.479; the printed tail belongs to
  // the unrounded statistic.
  CHECK(std::abs(f_upper_p(111.4792, 4, 8) - 4.756e-07) < 5e-11);
  CHECK(std::abs(f_upper_p(81.86, 5, 7) - 4.691e-06) < 5e-10);
  // F(1, 1) tail has the closed form 1 - (2/pi) atan(sqrt(f)).
  CHECK(std::abs(f_upper_p(1.0 / 3.0, 1, 1) - 2.0 / 3.0) < 1e-12);
}
