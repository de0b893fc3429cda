#pragma once

// Dense kernels for the small (dim <= 5) real and complex matrices that
// arise from the modal reduction: eigenvalues, singular values, linear
// solves and the matrix exponential.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace stabilyze {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystemError : NumericalError {
  using NumericalError::NumericalError;
};

struct OverflowError : NumericalError {
  using NumericalError::NumericalError;
};

// Stack-allocated dynamic matrices capped at 5x5.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 5, 1>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;
using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, 0, 5, 1>;

namespace linalg {

// Diagonal similarity scaling with radix powers (Parlett-Reinsch); leaves
// the spectrum untouched but shrinks the norm spread so the QR iteration
// resolves weakly damped eigenvalues.
void balance(Mat& m);
void balance(CMat& m);

std::vector<std::complex<double>> eigenvalues(const Mat& m);
std::vector<std::complex<double>> eigenvalues(const CMat& m);

// Max over eigenvalues of the real part.
double spectral_abscissa_of(const Mat& m);

double smallest_singular_value(const Mat& m);
double smallest_singular_value(const CMat& m);

double operator_norm(const Mat& m);
double operator_norm(const CMat& m);

// LU solve with extended-precision refinement passes; throws
// SingularSystemError when sigma_min <= 1e-14 * ||m||.
CVec solve(const CMat& m, const CVec& rhs);
Vec solve(const Mat& m, const Vec& rhs);

// Same solver without the conditioning gate: rejects only exactly singular
// systems.  Needed where near-singularity is the quantity being measured
// (resolvent blow-up along witness frequencies).
CVec solve_relaxed(const CMat& m, const CVec& rhs);

// Scaling-and-squaring Pade approximation of exp(t*m).
Mat expm(const Mat& m, double t);
CMat expm(const CMat& m, double t);

}  // namespace linalg
}  // namespace stabilyze
