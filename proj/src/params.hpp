#pragma once

#include <stdexcept>

namespace stabilyze {

// Coefficients of the abstract thermoelastic Timoshenko system.  All seven
// structural constants are strictly positive; the coupling exponent gamma is
// any real with |gamma| <= 4 (alpha^{2 gamma} must stay inside double range
// over the default alpha window).
struct SystemParams {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double rho3 = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double delta = 1.0;
  double gamma = 0.5;

  // Stability number: difference of the squared propagation speeds of the
  // two wave equations.
  double chi() const { return a / rho1 - b / rho2; }

  void validate() const;

  // chi-targeted construction: b = rho2 (a/rho1 - chi), requires chi < a/rho1.
  static SystemParams from_chi(double rho1, double rho2, double rho3, double a, double chi,
                               double c, double delta, double gamma);
};

inline constexpr double kGammaGuard = 4.0;

SystemParams unit_params(double gamma, double chi = 0.0);

double stability_number(const SystemParams& p);

}  // namespace stabilyze
