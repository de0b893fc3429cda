#include "spectral_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace stabilyze {

double spectral_abscissa(const ModalBlock& block) { return linalg::spectral_abscissa_of(block.M); }

UniformAbscissa uniform_abscissa(const Model& model, const Spectrum& spectrum, int workers) {
  const auto& alphas = spectrum.values();
  std::vector<double> absc(alphas.size());
  parallel_for(alphas.size(), workers,
               [&](std::size_t i) { absc[i] = spectral_abscissa(make_block(model, alphas[i])); });
  UniformAbscissa out;
  out.sup = -std::numeric_limits<double>::infinity();
  out.all_negative = true;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (absc[i] > out.sup) {
      out.sup = absc[i];
      out.argmax_alpha = alphas[i];
    }
    if (!(absc[i] < 0.0)) out.all_negative = false;
  }
  return out;
}

namespace {

double witness_beta(const SystemParams& p, double alpha) {
  return (2.0 * p.rho2 * p.a * alpha + p.a * p.rho1 +
          p.a * std::sqrt(p.rho1 * p.rho1 + 4.0 * p.rho1 * p.rho2 * alpha)) /
         (2.0 * p.rho1 * p.rho2);
}

}  // namespace

std::vector<double> default_lambda_grid(const Model& model, const Spectrum& spectrum, int count,
                                        double lambda_min) {
  const SystemParams& p = model.params;
  const double lambda_max = 2.0 * std::sqrt(p.a * spectrum.alpha_max() / p.rho1);
  std::vector<double> grid;
  grid.reserve(count + 2 * spectrum.size() + 1);
  grid.push_back(0.0);
  const double top = std::max(lambda_max, 2.0 * lambda_min);
  const double l0 = std::log(lambda_min), l1 = std::log(top);
  for (int i = 0; i + 1 < count; ++i) grid.push_back(std::exp(l0 + (l1 - l0) * i / (count - 1)));
  grid.push_back(top);
  for (double alpha : spectrum.values()) {
    grid.push_back(std::sqrt(p.a * alpha / p.rho1));
    grid.push_back(std::sqrt(witness_beta(p, alpha)));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ResolventScan pruss_margin(const Model& model, const Spectrum& spectrum,
                           const std::vector<double>& lambda_grid, int workers) {
  if (lambda_grid.empty()) throw std::invalid_argument("pruss_margin: empty lambda grid");
  const SystemParams& p = model.params;
  const double lambda_needed = 2.0 * std::sqrt(p.a * spectrum.alpha_max() / p.rho1);
  if (lambda_grid.back() < lambda_needed)
    throw std::invalid_argument("pruss_margin: lambda grid must reach 2 sqrt(a alpha_max / rho1)");

  ResolventScan scan;
  scan.lambda_grid = lambda_grid;
  scan.alphas = spectrum.values();
  scan.sigma_min.assign(scan.alphas.size(), {});
  scan.per_alpha_min.assign(scan.alphas.size(), 0.0);
  scan.per_alpha_argmin_lambda.assign(scan.alphas.size(), 0.0);

  parallel_for(scan.alphas.size(), workers, [&](std::size_t i) {
    const ModalBlock block = make_block(model, scan.alphas[i]);
    const int n = block.dim;
    const CMat negM = (-block.M).cast<std::complex<double>>();
    std::vector<double> row(lambda_grid.size());
    double best = std::numeric_limits<double>::infinity();
    double best_lambda = 0.0;
    for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
      CMat shifted = negM;  // i lambda I - M
      for (int k = 0; k < n; ++k) shifted(k, k) += std::complex<double>(0.0, lambda_grid[j]);
      row[j] = linalg::smallest_singular_value(shifted);
      if (row[j] < best) {
        best = row[j];
        best_lambda = lambda_grid[j];
      }
    }
    scan.sigma_min[i] = std::move(row);
    scan.per_alpha_min[i] = best;
    scan.per_alpha_argmin_lambda[i] = best_lambda;
  });

  scan.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
    for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
      if (scan.sigma_min[i][j] < scan.margin) {
        scan.margin = scan.sigma_min[i][j];
        scan.argmin_alpha = scan.alphas[i];
        scan.argmin_lambda = lambda_grid[j];
      }
    }
  }
  return scan;
}

double margin_trend_slope(const ResolventScan& scan) {
  if (scan.alphas.size() < 2) return 0.0;
  std::vector<double> cutoffs;
  const double lo = scan.alphas.front(), hi = scan.alphas.back();
  for (int k = static_cast<int>(std::ceil(std::log10(lo))); k <= 8; ++k) {
    const double c = std::pow(10.0, k);
    if (c > lo && c < hi) cutoffs.push_back(c);
  }
  cutoffs.push_back(hi);
  std::vector<double> xs, ys;
  for (double cut : cutoffs) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scan.alphas.size() && scan.alphas[i] <= cut; ++i)
      m = std::min(m, scan.per_alpha_min[i]);
    if (std::isfinite(m) && m > 0.0) {
      xs.push_back(cut);
      ys.push_back(m);
    }
  }
  if (xs.size() < 3) return 0.0;
  return fit_loglog_slope(xs, ys, 0.0);
}

double WitnessCase::lambda(const SystemParams& p, double alpha) const {
  if (id == Id::III) return std::sqrt(witness_beta(p, alpha));
  return std::sqrt(p.a * alpha / p.rho1);
}

std::string WitnessCase::name() const {
  switch (id) {
    case Id::I: return "I";
    case Id::II: return "II";
    case Id::III: return "III";
  }
  return "?";
}

WitnessCase witness_case_for(const SystemParams& p) {
  p.validate();
  const double chi = p.chi();
  const bool chi_zero = std::abs(chi) <= 1e-9 * (std::abs(p.a / p.rho1) + std::abs(p.b / p.rho2));
  WitnessCase w;
  if (p.gamma > 0.5) {
    w.id = WitnessCase::Id::I;
    w.c1 = 1.0 / std::sqrt(p.rho1);
    w.c2 = 0.0;
    w.watched_component = 1;
    w.watch_real = true;
    w.predicted_exponent = 2.0 * p.gamma - 1.0;
  } else if (!chi_zero) {
    w.id = WitnessCase::Id::II;
    w.c1 = 1.0 / std::sqrt(p.rho1);
    w.c2 = 0.0;
    w.watched_component = 1;
    w.watch_real = false;
    w.predicted_exponent = 0.5;
  } else if (p.gamma < 0.5) {
    w.id = WitnessCase::Id::III;
    w.c1 = 0.0;
    w.c2 = 1.0 / std::sqrt(p.rho2);
    w.watched_component = 3;
    w.watch_real = true;
    w.predicted_exponent = 1.0 - 2.0 * p.gamma;
  } else {
    throw CaseMismatchError(
        "witness_case_for: gamma = 1/2 with chi = 0 is the exponentially stable point; no witness exists");
  }
  return w;
}

WitnessScanResult witness_scan(const SystemParams& p, const Spectrum& spectrum) {
  WitnessScanResult out;
  out.witness = witness_case_for(p);
  out.per_alpha.reserve(spectrum.size());

  for (double alpha : spectrum.values()) {
    const ModalBlock block = timoshenko_block(p, alpha);
    const double lambda = out.witness.lambda(p, alpha);
    CMat A = (-block.L).cast<std::complex<double>>();
    for (int k = 0; k < 5; ++k) A(k, k) += std::complex<double>(0.0, lambda);
    CVec zhat = CVec::Zero(5);
    zhat(1) = out.witness.c1;
    zhat(3) = out.witness.c2;
    const CVec z = linalg::solve_relaxed(A, zhat);
    const std::complex<double> watched = z(out.witness.watched_component);
    const double mag = std::abs(out.witness.watch_real ? watched.real() : watched.imag());
    out.per_alpha.push_back({alpha, lambda, mag});
  }

  std::vector<double> xs, ys;
  for (const auto& pt : out.per_alpha) {
    xs.push_back(pt.alpha);
    ys.push_back(pt.magnitude);
  }
  out.fitted_exponent = fit_loglog_slope(xs, ys, spectrum.alpha_max() / 100.0);
  return out;
}

InverseGrowth inverse_norm_growth(const Model& model, const Spectrum& spectrum) {
  std::vector<double> xs, ys;
  xs.reserve(spectrum.size());
  ys.reserve(spectrum.size());
  for (double alpha : spectrum.values()) {
    xs.push_back(alpha);
    ys.push_back(linalg::operator_norm(modal_inverse_energy(model, alpha)));
  }
  InverseGrowth out;
  out.slope = fit_loglog_slope(xs, ys, spectrum.alpha_max() / 100.0);
  if (out.slope > 0.1) out.exponent = out.slope;
  return out;
}

DecayCurve semiuniform_decay(const Model& model, const Spectrum& spectrum,
                             const std::vector<double>& times, double decay_threshold, int workers) {
  if (times.empty()) throw std::invalid_argument("semiuniform_decay: empty time grid");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]) || !(times[i] >= 0.0))
      throw std::invalid_argument("semiuniform_decay: times must be ascending and nonnegative");

  const auto& alphas = spectrum.values();
  std::vector<std::vector<double>> norms(alphas.size());
  parallel_for(alphas.size(), workers, [&](std::size_t i) {
    const ModalBlock block = make_block(model, alphas[i]);
    const Mat Mi = modal_inverse_energy(model, alphas[i]);
    std::vector<double> row(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Mat prop = linalg::expm(block.M, times[k]);
      row[k] = linalg::operator_norm(Mat(prop * Mi));
    }
    norms[i] = std::move(row);
  });

  DecayCurve curve;
  curve.t = times;
  curve.h.assign(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k)
    for (std::size_t i = 0; i < alphas.size(); ++i) curve.h[k] = std::max(curve.h[k], norms[i][k]);
  curve.ratio = curve.h.front() > 0.0 ? curve.h.back() / curve.h.front() : 0.0;
  curve.decayed = curve.ratio < decay_threshold;
  return curve;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Exponential: return "Exponential";
    case Classification::Semiuniform: return "Semiuniform";
    case Classification::StableOnly: return "StableOnly";
    case Classification::NotSemiuniform: return "NotSemiuniform";
    case Classification::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Classification analytic_prediction(const Model& model, const Spectrum& spectrum) {
  const SystemParams& p = model.params;
  const double g = p.gamma;
  if (model.kind == ModelKind::WaveHeat) {
    if (g >= 0.5 && g <= 1.0) return Classification::Exponential;
    if (g > 1.0) return Classification::NotSemiuniform;
    return spectrum.discrete() ? Classification::Semiuniform : Classification::StableOnly;
  }
  const bool chi_zero = std::abs(p.chi()) <= 1e-9 * (p.a / p.rho1 + p.b / p.rho2);
  if (chi_zero && g == 0.5) return Classification::Exponential;
  if (g >= 0.5 && g <= 1.0) return Classification::Semiuniform;
  if (g > 1.0) return Classification::NotSemiuniform;
  return spectrum.discrete() ? Classification::Semiuniform : Classification::StableOnly;
}

StabilityReport classify(const Model& model, const Spectrum& spectrum, const ClassifyOptions& options) {
  StabilityReport report;
  report.model = model;

  const UniformAbscissa ua = uniform_abscissa(model, spectrum, options.workers);
  report.sup_abscissa = ua.sup;
  report.argmax_alpha = ua.argmax_alpha;
  report.all_modes_damped = ua.all_negative;

  const auto grid = default_lambda_grid(model, spectrum, options.lambda_count, options.lambda_min);
  const ResolventScan scan = pruss_margin(model, spectrum, grid, options.workers);
  report.pruss_margin = scan.margin;
  report.margin_trend = margin_trend_slope(scan);

  const InverseGrowth growth = inverse_norm_growth(model, spectrum);
  report.inverse_growth_exponent = growth.exponent;

  if (model.kind == ModelKind::Timoshenko) {
    try {
      report.witness_exponent_fit = witness_scan(model.params, spectrum).fitted_exponent;
    } catch (const CaseMismatchError&) {
      report.witness_exponent_fit = std::nullopt;
    }
  }

  const Spectrum probe = spectrum.truncated(options.decay_alpha_cap);
  std::vector<double> times(options.decay_t_count);
  const double l0 = std::log(options.decay_t_min), l1 = std::log(options.decay_t_max);
  for (int i = 0; i < options.decay_t_count; ++i)
    times[i] = std::exp(l0 + (l1 - l0) * i / (options.decay_t_count - 1));
  const DecayCurve curve =
      semiuniform_decay(model, probe, times, options.decay_threshold, options.workers);
  report.decay_ratio = curve.ratio;

  const bool margin_vanishing = report.margin_trend <= options.trend_threshold;
  if (growth.exponent) {
    report.numerical_verdict = Classification::NotSemiuniform;
  } else if (report.pruss_margin >= options.margin_threshold &&
             report.sup_abscissa <= -options.abscissa_threshold && !margin_vanishing) {
    report.numerical_verdict = Classification::Exponential;
  } else if (margin_vanishing && curve.decayed) {
    report.numerical_verdict = Classification::Semiuniform;
  } else if (report.all_modes_damped) {
    report.numerical_verdict = Classification::StableOnly;
  } else {
    report.numerical_verdict = Classification::Indeterminate;
  }

  report.analytic_prediction = analytic_prediction(model, spectrum);
  report.agree = report.numerical_verdict == report.analytic_prediction;
  report.classification = report.agree ? report.numerical_verdict : Classification::Indeterminate;
  return report;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double x_cut) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_cut || !(y[i] > 0.0) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace stabilyze
