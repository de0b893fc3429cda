#include "params.hpp"

#include <cmath>
#include <string>

namespace stabilyze {

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be strictly positive");
  };
  positive(rho1, "rho1");
  positive(rho2, "rho2");
  positive(rho3, "rho3");
  positive(a, "a");
  positive(b, "b");
  positive(c, "c");
  positive(delta, "delta");
  if (!std::isfinite(gamma) || std::abs(gamma) > kGammaGuard)
    throw std::invalid_argument("gamma out of range: |gamma| <= 4 required");
}

SystemParams SystemParams::from_chi(double rho1, double rho2, double rho3, double a, double chi,
                                    double c, double delta, double gamma) {
  const double b = rho2 * (a / rho1 - chi);
  if (!(b > 0.0)) throw std::invalid_argument("b would be non-positive: chi must be < a/rho1");
  SystemParams p{rho1, rho2, rho3, a, b, c, delta, gamma};
  p.validate();
  return p;
}

SystemParams unit_params(double gamma, double chi) {
  return SystemParams::from_chi(1.0, 1.0, 1.0, 1.0, chi, 1.0, 1.0, gamma);
}

double stability_number(const SystemParams& p) { return p.chi(); }

}  // namespace stabilyze
