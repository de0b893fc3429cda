#include "spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stabilyze {

Spectrum::Spectrum(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("spectrum: at least one point required");
  double prev = 0.0;
  for (double v : values_) {
    if (!(v > prev) || !std::isfinite(v))
      throw std::invalid_argument("spectrum: values must be finite, positive and strictly increasing");
    prev = v;
  }
}

Spectrum Spectrum::explicit_list(std::vector<double> values) {
  return Spectrum(Kind::ExplicitList, std::move(values));
}

Spectrum Spectrum::dirichlet(double ell, int n_max) {
  if (!(ell > 0.0)) throw std::invalid_argument("spectrum: ell must be positive");
  if (n_max < 1) throw std::invalid_argument("spectrum: n_max must be >= 1");
  std::vector<double> vals(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double k = n * std::numbers::pi / ell;
    vals[n - 1] = k * k;
  }
  return Spectrum(Kind::Dirichlet, std::move(vals));
}

Spectrum Spectrum::geometric(double alpha0, double ratio, int count) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("spectrum: alpha0 must be positive");
  if (!(ratio > 1.0)) throw std::invalid_argument("spectrum: ratio must exceed 1");
  if (count < 1) throw std::invalid_argument("spectrum: count must be >= 1");
  std::vector<double> vals(count);
  double v = alpha0;
  for (int i = 0; i < count; ++i, v *= ratio) vals[i] = v;
  return Spectrum(Kind::Geometric, std::move(vals));
}

Spectrum Spectrum::log_grid(double alpha_min, double alpha_max, int count) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    throw std::invalid_argument("spectrum: need 0 < alpha_min < alpha_max");
  if (count < 2) throw std::invalid_argument("spectrum: count must be >= 2");
  std::vector<double> vals(count);
  const double l0 = std::log(alpha_min), l1 = std::log(alpha_max);
  for (int i = 0; i < count; ++i) vals[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  vals.front() = alpha_min;
  vals.back() = alpha_max;
  return Spectrum(Kind::LogGrid, std::move(vals));
}

Spectrum Spectrum::truncated(double cap) const {
  std::vector<double> vals;
  for (double v : values_)
    if (v <= cap) vals.push_back(v);
  if (vals.empty()) vals.push_back(values_.front());
  return Spectrum(kind_, std::move(vals));
}

std::string Spectrum::describe() const {
  switch (kind_) {
    case Kind::ExplicitList: return "explicit[" + std::to_string(values_.size()) + "]";
    case Kind::Dirichlet: return "dirichlet[" + std::to_string(values_.size()) + "]";
    case Kind::Geometric: return "geometric[" + std::to_string(values_.size()) + "]";
    case Kind::LogGrid: return "loggrid[" + std::to_string(values_.size()) + "]";
  }
  return "?";
}

}  // namespace stabilyze
