#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "small_linalg.hpp"

using namespace stabilyze;
using linalg::eigenvalues;
using linalg::expm;
using linalg::operator_norm;
using linalg::smallest_singular_value;
using linalg::solve;

namespace {

Mat random_mat(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  return m;
}

CMat random_cmat(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  return m;
}

// test-only oracle: plain scaled Taylor series, independent of the Pade path
Mat expm_series(const Mat& m, double t) {
  const int n = static_cast<int>(m.rows());
  Mat a = m * t;
  int s = 0;
  while (a.cwiseAbs().maxCoeff() * n > 0.25) {
    a /= 2.0;
    ++s;
  }
  Mat sum = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = (term * a / k).eval();
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = (sum * sum).eval();
  return sum;
}

}  // namespace

TEST_CASE("eigenvalues: identity and rotation block") {
  Mat id = Mat::Identity(5, 5);
  for (const auto& ev : eigenvalues(id)) {
    CHECK(ev.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev.imag()) < 1e-12);
  }

  Mat rot = Mat::Identity(5, 5);
  rot(0, 0) = 0.0;
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  rot(1, 1) = 0.0;
  bool plus_i = false, minus_i = false;
  for (const auto& ev : eigenvalues(rot)) {
    if (std::abs(ev - std::complex<double>(0, 1)) < 1e-10) plus_i = true;
    if (std::abs(ev - std::complex<double>(0, -1)) < 1e-10) minus_i = true;
  }
  CHECK(plus_i);
  CHECK(minus_i);
}

TEST_CASE("eigenvalues: trace identity on random matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    Mat m = random_mat(rng, 5);
    std::complex<double> sum = 0.0;
    for (const auto& ev : eigenvalues(m)) sum += ev;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    CHECK(std::abs(sum.real() - m.trace()) <= 1e-9 * scale);
    CHECK(std::abs(sum.imag()) <= 1e-9 * scale);
  }
}

TEST_CASE("eigenvalues: non-finite input is a reported failure") {
  Mat m = Mat::Zero(3, 3);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues(m), NumericalError);
}

TEST_CASE("smallest_singular_value: diagonal and singular cases") {
  Mat d = Mat::Identity(5, 5);
  d(0, 0) = 3;
  d(1, 1) = 2;
  d(2, 2) = 1;
  CHECK(smallest_singular_value(d) == doctest::Approx(1.0).epsilon(1e-12));

  Mat s = Mat::Zero(4, 4);
  std::mt19937_64 rng(2);
  s = random_mat(rng, 4);
  s.col(3) = s.col(0);  // repeated column
  CHECK(smallest_singular_value(s) <= 1e-12 * operator_norm(s));
}

TEST_CASE("smallest_singular_value equals inverse operator norm") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    CMat m = random_cmat(rng, 5);
    // inverse-norm oracle via column solves
    CMat inv(5, 5);
    for (int j = 0; j < 5; ++j) {
      CVec e = CVec::Zero(5);
      e(j) = 1.0;
      inv.col(j) = solve(m, e);
    }
    const double smin = smallest_singular_value(m);
    CHECK(smin * operator_norm(inv) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("solve: identity, diagonal, random residual") {
  CMat id = CMat::Identity(5, 5);
  CVec b(5);
  b << 1.0, 2.0, 3.0, 4.0, 5.0;
  CHECK((solve(id, b) - b).norm() < 1e-14);

  CMat d = CMat::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = std::complex<double>(0, 4);
  d(2, 2) = -8.0;
  CVec b3(3);
  b3 << 2.0, 4.0, 8.0;
  const CVec x = solve(d, b3);
  CHECK(std::abs(x(0) - 1.0) < 1e-14);
  CHECK(std::abs(x(1) - std::complex<double>(0, -1)) < 1e-14);
  CHECK(std::abs(x(2) + 1.0) < 1e-14);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    CMat m = random_cmat(rng, 5);
    CVec rhs = CVec::Zero(5);
    for (int i = 0; i < 5; ++i) rhs(i) = std::complex<double>(trial + i, -i);
    const CVec x5 = solve(m, rhs);
    CHECK((m * x5 - rhs).norm() <= 1e-10 * operator_norm(m) * x5.norm());
  }
}

TEST_CASE("solve: singular system is rejected") {
  CMat s = CMat::Zero(3, 3);
  s(0, 0) = 1.0;
  s(1, 1) = 1.0;  // rank 2
  CVec b(3);
  b << 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(solve(s, b), SingularSystemError);
}

TEST_CASE("expm: t = 0, nilpotent, diagonal") {
  std::mt19937_64 rng(5);
  Mat m = random_mat(rng, 5);
  CHECK((expm(m, 0.0) - Mat::Identity(5, 5)).norm() == 0.0);

  Mat nil = Mat::Zero(4, 4);
  for (int i = 0; i + 1 < 4; ++i) nil(i, i + 1) = 1.0;
  const Mat en = expm(nil, 1.0);
  // I + N + N^2/2 + N^3/6 exactly
  Mat expect = Mat::Identity(4, 4) + nil + 0.5 * nil * nil + (1.0 / 6.0) * nil * nil * nil;
  CHECK((en - expect).cwiseAbs().maxCoeff() < 1e-14);

  Mat d = Mat::Zero(3, 3);
  d(0, 0) = -1.0;
  d(1, 1) = 0.5;
  d(2, 2) = 2.0;
  const Mat ed = expm(d, 2.0);
  CHECK(ed(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(ed(1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
  CHECK(ed(2, 2) == doctest::Approx(std::exp(4.0)).epsilon(1e-13));
}

TEST_CASE("expm: semigroup property and series oracle") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    Mat m = random_mat(rng, 5);
    const double s = 0.3 + 0.1 * trial, t = 0.7;
    const Mat lhs = expm(m, s) * expm(m, t);
    const Mat rhs = expm(m, s + t);
    CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());

    const Mat ref = expm_series(m, s);
    CHECK((expm(m, s) - ref).norm() <= 1e-11 * ref.norm());
  }
}

TEST_CASE("expm: overflow guard fires on growing systems") {
  Mat m = Mat::Identity(2, 2);
  m *= 10.0;
  CHECK_THROWS_AS(expm(m, 100.0), OverflowError);
}

TEST_CASE("operator_norm basics") {
  CHECK(operator_norm(Mat(Mat::Identity(5, 5))) == doctest::Approx(1.0));
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = -2.0;
  d(1, 1) = 1.0;
  CHECK(operator_norm(d) == doctest::Approx(2.0));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = random_mat(rng, 4);
    Mat inv = m.inverse();
    CHECK(operator_norm(m) * operator_norm(inv) >= 1.0 - 1e-12);
  }
}
