#include "small_linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace stabilyze::linalg {

namespace {

template <typename M>
void check_finite(const M& m) {
  if (!m.allFinite()) throw NumericalError("matrix has non-finite entries");
}

template <typename Scalar>
void balance_impl(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>& m) {
  const int n = static_cast<int>(m.rows());
  const double radix = 2.0;
  bool done = false;
  int sweeps = 0;
  while (!done && sweeps++ < 100) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if (c + r < 0.95 * s) {
        done = false;
        m.col(i) *= f;
        m.row(i) /= f;
      }
    }
  }
}

}  // namespace

void balance(Mat& m) { balance_impl<double>(m); }
void balance(CMat& m) { balance_impl<std::complex<double>>(m); }

std::vector<std::complex<double>> eigenvalues(const Mat& m) {
  check_finite(m);
  Mat b = m;
  balance(b);
  Eigen::EigenSolver<Mat> es(b, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration failed to converge");
  std::vector<std::complex<double>> out(b.rows());
  for (int i = 0; i < b.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

std::vector<std::complex<double>> eigenvalues(const CMat& m) {
  check_finite(m);
  CMat b = m;
  balance(b);
  Eigen::ComplexEigenSolver<CMat> es(b, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration failed to converge");
  std::vector<std::complex<double>> out(b.rows());
  for (int i = 0; i < b.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

double spectral_abscissa_of(const Mat& m) {
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues(m)) sup = std::max(sup, ev.real());
  return sup;
}

double smallest_singular_value(const Mat& m) {
  check_finite(m);
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

double smallest_singular_value(const CMat& m) {
  check_finite(m);
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

double operator_norm(const Mat& m) {
  check_finite(m);
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const CMat& m) {
  check_finite(m);
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

namespace {

// Partial-pivot LU (plain substitution, never rank-truncated) followed by
// refinement passes with the residual accumulated in extended precision;
// recovers digits lost to ill conditioning near resolvent blow-up.
template <typename Scalar, typename Wide>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 5, 1> solve_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>& m,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 5, 1>& rhs, bool gate) {
  check_finite(m);
  const int n = static_cast<int>(m.rows());
  if (rhs.size() != n) throw std::invalid_argument("solve: rhs size mismatch");
  if (gate) {
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>> svd(m);
    if (!(svd.singularValues()(n - 1) > 1e-14 * svd.singularValues()(0)))
      throw SingularSystemError("solve: system is singular to working precision");
  }
  Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>> lu(m);
  if (!(lu.matrixLU().diagonal().cwiseAbs().minCoeff() > 0.0))
    throw SingularSystemError("solve: exactly singular system");
  auto x = lu.solve(rhs).eval();
  if (!x.allFinite()) throw SingularSystemError("solve: substitution overflowed");
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::Matrix<Wide, Eigen::Dynamic, 1, 0, 5, 1> r(n);
    for (int i = 0; i < n; ++i) {
      Wide acc = static_cast<Wide>(rhs(i));
      for (int j = 0; j < n; ++j) acc -= static_cast<Wide>(m(i, j)) * static_cast<Wide>(x(j));
      r(i) = acc;
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 5, 1> rd(n);
    for (int i = 0; i < n; ++i) rd(i) = static_cast<Scalar>(r(i));
    const auto dx = lu.solve(rd).eval();
    if (!dx.allFinite() || dx.norm() > x.norm()) break;
    x += dx;
  }
  return x;
}

}  // namespace

CVec solve(const CMat& m, const CVec& rhs) {
  return solve_impl<std::complex<double>, std::complex<long double>>(m, rhs, true);
}

Vec solve(const Mat& m, const Vec& rhs) { return solve_impl<double, long double>(m, rhs, true); }

CVec solve_relaxed(const CMat& m, const CVec& rhs) {
  return solve_impl<std::complex<double>, std::complex<long double>>(m, rhs, false);
}

namespace {

// Higham's degree-(3,5,7,9,13) Pade cascade.
template <typename Scalar>
using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;

template <typename Scalar>
MatT<Scalar> pade_solve(const MatT<Scalar>& u, const MatT<Scalar>& v) {
  Eigen::PartialPivLU<MatT<Scalar>> lu(v - u);
  return lu.solve(v + u);
}

template <typename Scalar>
MatT<Scalar> expm_impl(const MatT<Scalar>& m, double t) {
  check_finite(m);
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("expm: t must be finite and >= 0");
  const int n = static_cast<int>(m.rows());
  const MatT<Scalar> id = MatT<Scalar>::Identity(n, n);
  if (t == 0.0) return id;

  MatT<Scalar> a = m * t;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > 700.0) {
    // growth guard: only a positive abscissa can actually overflow
    double absc = -std::numeric_limits<double>::infinity();
    if constexpr (std::is_same_v<Scalar, double>) {
      absc = spectral_abscissa_of(a);
    } else {
      CMat tmp = a;
      for (const auto& ev : eigenvalues(tmp)) absc = std::max(absc, ev.real());
    }
    if (absc > 700.0) throw OverflowError("expm: exp(t*m) overflows double range");
  }

  const double theta3 = 1.495585217958292e-2, theta5 = 2.539398330063230e-1,
               theta7 = 9.504178996162932e-1, theta9 = 2.097847961257068,
               theta13 = 5.371920351148152;

  auto pade_low = [&](const std::vector<double>& b) {
    MatT<Scalar> a2 = a * a;
    MatT<Scalar> u = b[1] * id, v = b[0] * id;
    MatT<Scalar> p = id;
    for (std::size_t k = 2; k + 1 < b.size(); k += 2) {
      p = (p * a2).eval();
      u += b[k + 1] * p;
      v += b[k] * p;
    }
    u = (a * u).eval();
    return pade_solve<Scalar>(u, v);
  };

  if (norm1 <= theta3) return pade_low({120, 60, 12, 1});
  if (norm1 <= theta5) return pade_low({30240, 15120, 3360, 420, 30, 1});
  if (norm1 <= theta7) return pade_low({17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1});
  if (norm1 <= theta9)
    return pade_low({17643225600, 8821612800, 2075673600, 302702400, 30270240, 2162160, 110880, 3960, 90, 1});

  int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  a /= std::pow(2.0, s);

  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  MatT<Scalar> a2 = a * a, a4 = a2 * a2, a6 = a2 * a4;
  MatT<Scalar> u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  MatT<Scalar> v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  MatT<Scalar> x = pade_solve<Scalar>(u, v);
  for (int k = 0; k < s; ++k) x = (x * x).eval();
  return x;
}

}  // namespace

Mat expm(const Mat& m, double t) { return expm_impl<double>(m, t); }
CMat expm(const CMat& m, double t) { return expm_impl<std::complex<double>>(m, t); }

}  // namespace stabilyze::linalg
