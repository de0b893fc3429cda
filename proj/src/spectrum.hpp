#pragma once

#include <string>
#include <vector>

namespace stabilyze {

// Sampled model of the spectrum of the leading selfadjoint operator.
// Dirichlet and Geometric stand for discrete spectra (compact inverse);
// LogGrid samples a continuum (non-compact resolvent).
class Spectrum {
 public:
  enum class Kind { ExplicitList, Dirichlet, Geometric, LogGrid };

  static Spectrum explicit_list(std::vector<double> values);
  static Spectrum dirichlet(double ell, int n_max);       // alpha_n = (n pi / ell)^2
  static Spectrum geometric(double alpha0, double ratio, int count);
  static Spectrum log_grid(double alpha_min, double alpha_max, int count);

  Kind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  double alpha0() const { return values_.front(); }
  double alpha_max() const { return values_.back(); }
  std::size_t size() const { return values_.size(); }

  // Discrete spectra model a compact inverse; the log grid does not.
  bool discrete() const { return kind_ != Kind::LogGrid; }

  // Sub-sample with alpha <= cap (keeps at least the first point).
  Spectrum truncated(double cap) const;

  std::string describe() const;

 private:
  Spectrum(Kind kind, std::vector<double> values);
  Kind kind_;
  std::vector<double> values_;
};

}  // namespace stabilyze
