#include "dynamics.hpp"

#include <cmath>
#include <random>

namespace stabilyze {

namespace {

struct Quadratics {
  // functional values and exact derivatives along zdot = L z
  double E, dE;
  double L1, dL1, L2, dL2, L3, dL3;
  double psit2, theta1sq, coupled2, psi1sq, phit2;
};

Quadratics eval_quadratics(const SystemParams& p, double alpha, const Vec& z, const Vec& zd) {
  const double sa = std::sqrt(alpha);
  const double phi = z(0), phit = z(1), psi = z(2), psit = z(3), theta = z(4);
  const double dphi = zd(0), dphit = zd(1), dpsi = zd(2), dpsit = zd(3), dtheta = zd(4);
  const double coupled = sa * phi + psi;
  const double dcoupled = sa * dphi + dpsi;

  Quadratics q;
  q.coupled2 = coupled * coupled;
  q.psi1sq = alpha * psi * psi;
  q.theta1sq = alpha * theta * theta;
  q.psit2 = psit * psit;
  q.phit2 = phit * phit;
  q.E = 0.5 * (p.a * q.coupled2 + p.b * q.psi1sq + p.rho1 * q.phit2 + p.rho2 * q.psit2 +
               p.rho3 * theta * theta);
  q.dE = p.a * coupled * dcoupled + p.b * alpha * psi * dpsi + p.rho1 * phit * dphit +
         p.rho2 * psit * dpsit + p.rho3 * theta * dtheta;

  q.L1 = 2.0 * p.rho2 * psit * psi - 2.0 * p.rho1 * phit * phi;
  q.dL1 = 2.0 * p.rho2 * (dpsit * psi + psit * dpsi) - 2.0 * p.rho1 * (dphit * phi + phit * dphi);
  const double w2 = 2.0 * p.rho2 * p.rho3 / (p.delta * sa);
  q.L2 = w2 * theta * psit;
  q.dL2 = w2 * (dtheta * psit + theta * dpsit);
  q.L3 = 2.0 * p.rho2 * psit * coupled - 2.0 * p.rho2 * sa * psi * phit;
  q.dL3 = 2.0 * p.rho2 * (dpsit * coupled + psit * dcoupled) -
          2.0 * p.rho2 * sa * (dpsi * phit + psi * dphit);
  return q;
}

LyapunovResiduals residuals_from(const SystemParams& p, const Quadratics& q,
                                 const LyapunovConstants& k) {
  LyapunovResiduals r;
  r.r1 = q.dL1 + p.rho1 * q.phit2 + p.b * q.psi1sq - k.C1 * (q.psit2 + q.coupled2 + q.theta1sq);
  r.r2 = q.dL2 + p.rho2 * q.psit2 - k.nu * (q.psi1sq + q.coupled2) - (k.C2 / k.nu) * q.theta1sq;
  r.r3 = q.dL3 + p.a * q.coupled2 - k.C3 * (q.psit2 + q.theta1sq);
  const double weight1 = p.a / (2.0 * k.C1);
  const double dLam = q.dE + k.eps * k.M_const * (weight1 * q.dL1 + q.dL3) + std::sqrt(k.eps) * q.dL2;
  r.combined = dLam + k.eps * k.eps * q.E;
  return r;
}

void require_chi_zero(const SystemParams& p, const char* who) {
  if (std::abs(p.chi()) > 1e-9 * (p.a / p.rho1 + p.b / p.rho2))
    throw std::invalid_argument(std::string(who) + ": requires chi = 0 (equal wave speeds)");
}

}  // namespace

ModalState evolve(const SystemParams& p, const ModalBlock& block, const ModalState& state0, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: t must be >= 0");
  const Mat Ti = energy_transform_inverse(p, block.alpha);
  const Vec u0 = block.T * state0.components;
  const Vec u = linalg::expm(block.M, t) * u0;
  return ModalState{block.alpha, Vec(Ti * u)};
}

double energy_identity_residual(const SystemParams& p, const ModalBlock& block,
                                const ModalState& state0, const std::vector<double>& t_grid) {
  const double e0 = energy(p, state0);
  double worst = 0.0;
  for (double t : t_grid) {
    const ModalState st = evolve(p, block, state0, t);
    const Vec zd = block.L * st.components;
    const Quadratics q = eval_quadratics(p, block.alpha, st.components, zd);
    worst = std::max(worst, std::abs(q.dE + p.c * q.theta1sq));
  }
  return worst / (1.0 + e0);
}

LyapunovConstants lyapunov_constants(const SystemParams& p, double alpha0) {
  p.validate();
  require_chi_zero(p, "lyapunov_constants");
  if (!(alpha0 > 0.0)) throw std::invalid_argument("lyapunov_constants: alpha0 must be positive");

  LyapunovConstants k;
  k.alpha0 = alpha0;
  k.C1 = std::max({2.0 * p.rho2, 2.0 * p.a + 8.0 * p.a * p.a / (p.b * alpha0),
                   2.0 * p.delta * p.delta / (p.b * alpha0)});
  k.C2 = 2.0 * p.rho3 / alpha0 + p.c * p.c * p.rho2 / (p.delta * p.delta) +
         p.b * p.b * p.rho3 * p.rho3 / (p.delta * p.delta * alpha0) +
         p.a * p.a * p.rho3 * p.rho3 / (p.delta * p.delta * alpha0 * alpha0);
  k.C3 = std::max(2.0 * p.rho2, p.delta * p.delta / p.a);
  k.M_const = 1.0 + std::max(4.0 * k.C2 / (p.a * p.c), 4.0 * k.C1 * k.C2 / (p.a * p.b * p.c));

  // probe states across the sample window
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_probe = 1000;
  std::vector<double> alphas(n_probe);
  std::vector<Vec> states(n_probe);
  const double l0 = std::log(alpha0), l1 = std::log(1e8);
  std::uniform_real_distribution<double> ua(l0, std::max(l0, l1));
  for (int i = 0; i < n_probe; ++i) {
    alphas[i] = std::exp(ua(rng));
    Vec z(5);
    for (int j = 0; j < 5; ++j) z(j) = gauss(rng);
    states[i] = z;
  }

  for (double eps = 1.0; eps >= 1e-8; eps *= 0.5) {
    k.eps = eps;
    k.nu = 2.0 * std::sqrt(eps) * k.C2 / p.c;
    bool ok = true;
    for (int i = 0; i < n_probe && ok; ++i) {
      const SystemParams pg = p;
      const ModalBlock block = timoshenko_block(pg, alphas[i]);
      const Vec zd = block.L * states[i];
      const Quadratics q = eval_quadratics(p, alphas[i], states[i], zd);
      const LyapunovResiduals r = residuals_from(p, q, k);
      const double tol = 1e-10 * std::max(q.E, 1e-300);
      const double weight1 = p.a / (2.0 * k.C1);
      const double lam = q.E + eps * k.M_const * (weight1 * q.L1 + q.L3) + std::sqrt(eps) * q.L2;
      ok = r.r1 <= tol && r.r2 <= tol && r.r3 <= tol && r.combined <= tol &&
           0.5 * q.E - lam <= tol && lam - 2.0 * q.E <= tol;
    }
    if (ok) return k;
  }
  throw NumericalError("lyapunov_constants: no eps in [1e-8, 1] validates the probe set");
}

LyapunovValues lyapunov_values(const SystemParams& p, double alpha, const Vec& z,
                               const LyapunovConstants& consts) {
  const ModalBlock block = timoshenko_block(p, alpha);
  const Vec zd = block.L * z;
  const Quadratics q = eval_quadratics(p, alpha, z, zd);
  LyapunovValues v;
  v.lambda1 = q.L1;
  v.lambda2 = q.L2;
  v.lambda3 = q.L3;
  v.energy = q.E;
  const double weight1 = p.a / (2.0 * consts.C1);
  v.lambda = q.E + consts.eps * consts.M_const * (weight1 * q.L1 + q.L3) +
             std::sqrt(consts.eps) * q.L2;
  return v;
}

LyapunovResiduals lyapunov_residuals_at(const SystemParams& p, double alpha, const Vec& z,
                                        const LyapunovConstants& consts) {
  const ModalBlock block = timoshenko_block(p, alpha);
  const Vec zd = block.L * z;
  const Quadratics q = eval_quadratics(p, alpha, z, zd);
  LyapunovResiduals r = residuals_from(p, q, consts);
  r.r1 = std::max(0.0, r.r1);
  r.r2 = std::max(0.0, r.r2);
  r.r3 = std::max(0.0, r.r3);
  r.combined = std::max(0.0, r.combined);
  return r;
}

LyapunovResiduals lyapunov_residuals(const SystemParams& p, const ModalBlock& block,
                                     const ModalState& state0, const std::vector<double>& t_grid,
                                     const LyapunovConstants& consts) {
  LyapunovResiduals worst;
  for (double t : t_grid) {
    const ModalState st = evolve(p, block, state0, t);
    const LyapunovResiduals r = lyapunov_residuals_at(p, block.alpha, st.components, consts);
    worst.r1 = std::max(worst.r1, r.r1);
    worst.r2 = std::max(worst.r2, r.r2);
    worst.r3 = std::max(worst.r3, r.r3);
    worst.combined = std::max(worst.combined, r.combined);
  }
  return worst;
}

double kappa_fit_single(const Mat& M_energy, const Vec& u0, double t_cap) {
  const double e0 = 0.5 * u0.squaredNorm();
  if (!(e0 > 0.0)) throw std::invalid_argument("kappa_fit_single: zero initial state");
  const double norm1 = M_energy.cwiseAbs().colwise().sum().maxCoeff();
  double T = 1.0 / std::max(norm1, 1e-300);
  const double target = e0 * std::exp(-30.0);
  while (T < t_cap) {
    const Vec u = linalg::expm(M_energy, T) * u0;
    if (0.5 * u.squaredNorm() < target) break;
    T *= 2.0;
  }
  T = std::min(T, t_cap);
  const int npts = 33;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < npts; ++i) {
    const double t = T / 2.0 + (T / 2.0) * i / (npts - 1);
    const Vec u = linalg::expm(M_energy, t) * u0;
    const double e = 0.5 * u.squaredNorm();
    if (!(e > 0.0)) continue;
    const double le = std::log(e);
    sx += t;
    sy += le;
    sxx += t * t;
    sxy += t * le;
    ++n;
  }
  if (n < 2) throw NumericalError("kappa_fit_single: energy underflow across the fit window");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

DecayFit decay_rate_fit(const SystemParams& p, const Spectrum& spectrum,
                        const std::vector<Vec>& state_family, double t_cap) {
  std::vector<Vec> family = state_family;
  if (family.empty()) {
    std::mt19937_64 rng(0xdecafULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < 3; ++s) {
      Vec z(5);
      for (int j = 0; j < 5; ++j) z(j) = gauss(rng);
      family.push_back(z);
    }
  }

  DecayFit fit;
  fit.kappa = std::numeric_limits<double>::infinity();
  for (double alpha : spectrum.values()) {
    const ModalBlock block = timoshenko_block(p, alpha);
    double slowest = std::numeric_limits<double>::infinity();
    for (const Vec& z : family) {
      const Vec u0 = block.T * z;
      slowest = std::min(slowest, kappa_fit_single(block.M, u0, t_cap));
    }
    fit.per_mode.emplace_back(alpha, slowest);
    fit.kappa = std::min(fit.kappa, slowest);
  }
  if (!(fit.kappa > 0.0)) throw NumericalError("decay_rate_fit: energy non-monotone or non-decaying");

  // prefactor over a coarse probe of each mode's curve
  fit.K = 1.0;
  for (const auto& [alpha, kap] : fit.per_mode) {
    const ModalBlock block = timoshenko_block(p, alpha);
    for (const Vec& z : family) {
      const Vec u0 = block.T * z;
      const double e0 = 0.5 * u0.squaredNorm();
      for (double t : {0.0, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        if (t > t_cap) break;
        const Vec u = linalg::expm(block.M, t) * u0;
        const double e = 0.5 * u.squaredNorm();
        fit.K = std::max(fit.K, e / (e0 * std::exp(-fit.kappa * t)));
      }
    }
  }
  return fit;
}

}  // namespace stabilyze
