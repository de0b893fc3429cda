#pragma once

// Stability criteria as computations over the sampled spectrum: spectral
// abscissae, resolvent margins on the imaginary axis, inverse-norm growth,
// semiuniform decay curves, witness-sequence blow-up and the final verdict.

#include <optional>
#include <string>
#include <vector>

#include "modal_block.hpp"
#include "spectrum.hpp"

namespace stabilyze {

double spectral_abscissa(const ModalBlock& block);

struct UniformAbscissa {
  double sup = 0.0;
  double argmax_alpha = 0.0;
  bool all_negative = false;
};

UniformAbscissa uniform_abscissa(const Model& model, const Spectrum& spectrum, int workers = 1);

struct ResolventScan {
  std::vector<double> lambda_grid;
  std::vector<double> alphas;
  std::vector<std::vector<double>> sigma_min;  // [alpha index][lambda index]
  std::vector<double> per_alpha_min;
  std::vector<double> per_alpha_argmin_lambda;
  double margin = 0.0;
  double argmin_alpha = 0.0;
  double argmin_lambda = 0.0;
};

// Log-spaced lambda grid on [lambda_min, 2 sqrt(a alpha_max / rho1)] with 0
// prepended and the exact modal wave frequencies of every sampled alpha
// merged in; negative lambda is covered by conjugate symmetry.
std::vector<double> default_lambda_grid(const Model& model, const Spectrum& spectrum,
                                        int count = 2000, double lambda_min = 1e-2);

ResolventScan pruss_margin(const Model& model, const Spectrum& spectrum,
                           const std::vector<double>& lambda_grid, int workers = 1);

// Fitted log-log slope of the per-decade prefix margins against the alpha
// cutoff; <= threshold means the margin vanishes as alpha_max grows.
double margin_trend_slope(const ResolventScan& scan);

struct WitnessCase {
  enum class Id { I, II, III };
  Id id = Id::I;
  double c1 = 0.0, c2 = 0.0;
  int watched_component = 1;  // state index whose magnitude is fitted
  bool watch_real = true;
  double predicted_exponent = 0.0;
  double lambda(const SystemParams& p, double alpha) const;
  std::string name() const;
};

struct CaseMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// I: gamma > 1/2; II: gamma <= 1/2 and chi != 0; III: gamma < 1/2 and
// chi = 0.  The exponentially stable point gamma = 1/2, chi = 0 has none.
WitnessCase witness_case_for(const SystemParams& p);

struct WitnessPoint {
  double alpha = 0.0;
  double lambda = 0.0;
  double magnitude = 0.0;
};

struct WitnessScanResult {
  WitnessCase witness;
  double fitted_exponent = 0.0;
  std::vector<WitnessPoint> per_alpha;
};

WitnessScanResult witness_scan(const SystemParams& p, const Spectrum& spectrum);

struct InverseGrowth {
  std::optional<double> exponent;  // set when the fitted slope exceeds 0.1
  double slope = 0.0;
};

InverseGrowth inverse_norm_growth(const Model& model, const Spectrum& spectrum);

struct DecayCurve {
  std::vector<double> t;
  std::vector<double> h;  // max over alpha of ||e^{tM} M^{-1}||
  double ratio = 0.0;     // h(t_final) / h(t_first)
  bool decayed = false;
};

DecayCurve semiuniform_decay(const Model& model, const Spectrum& spectrum,
                             const std::vector<double>& times, double decay_threshold = 0.1,
                             int workers = 1);

enum class Classification { Exponential, Semiuniform, StableOnly, NotSemiuniform, Indeterminate };

std::string to_string(Classification c);

struct ClassifyOptions {
  double margin_threshold = 1e-6;
  double abscissa_threshold = 1e-8;
  double decay_threshold = 0.1;
  double trend_threshold = -0.2;  // margin trend slope at or below => vanishing
  int lambda_count = 2000;
  double lambda_min = 1e-2;
  double decay_alpha_cap = 1e4;
  double decay_t_min = 1e-2;
  double decay_t_max = 1e5;
  int decay_t_count = 15;
  int workers = 1;
};

struct StabilityReport {
  Model model;
  double sup_abscissa = 0.0;
  double argmax_alpha = 0.0;
  bool all_modes_damped = false;
  double pruss_margin = 0.0;
  double margin_trend = 0.0;
  std::optional<double> inverse_growth_exponent;
  std::optional<double> witness_exponent_fit;
  double decay_ratio = 0.0;
  Classification numerical_verdict = Classification::Indeterminate;
  Classification analytic_prediction = Classification::Indeterminate;
  Classification classification = Classification::Indeterminate;
  bool agree = false;
};

// What the decay theory asserts for these coefficients on this kind of
// spectrum; continuum samples below the gamma = 1/2 line stay StableOnly.
Classification analytic_prediction(const Model& model, const Spectrum& spectrum);

StabilityReport classify(const Model& model, const Spectrum& spectrum,
                         const ClassifyOptions& options = {});

// Ordinary least squares of log(y) on log(x) restricted to x >= x_cut.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double x_cut);

}  // namespace stabilyze
