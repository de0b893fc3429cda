#include "modal_block.hpp"

#include <cmath>

namespace stabilyze {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be strictly positive");
}

}  // namespace

Model Model::waveheat(double gamma) {
  SystemParams p;
  p.gamma = gamma;
  p.validate();
  return {ModelKind::WaveHeat, p};
}

Mat energy_transform(const SystemParams& p, double alpha) {
  check_alpha(alpha);
  const double sa = std::sqrt(alpha);
  Mat T = Mat::Zero(5, 5);
  T(0, 0) = std::sqrt(p.a) * sa;
  T(0, 2) = std::sqrt(p.a);
  T(1, 2) = std::sqrt(p.b * alpha);
  T(2, 1) = std::sqrt(p.rho1);
  T(3, 3) = std::sqrt(p.rho2);
  T(4, 4) = std::sqrt(p.rho3);
  return T;
}

Mat energy_transform_inverse(const SystemParams& p, double alpha) {
  check_alpha(alpha);
  const double sa = std::sqrt(alpha);
  Mat Ti = Mat::Zero(5, 5);
  Ti(0, 0) = 1.0 / (std::sqrt(p.a) * sa);
  Ti(0, 1) = -1.0 / (std::sqrt(p.b * alpha) * sa);
  Ti(2, 1) = 1.0 / std::sqrt(p.b * alpha);
  Ti(1, 2) = 1.0 / std::sqrt(p.rho1);
  Ti(3, 3) = 1.0 / std::sqrt(p.rho2);
  Ti(4, 4) = 1.0 / std::sqrt(p.rho3);
  return Ti;
}

ModalBlock timoshenko_block(const SystemParams& p, double alpha) {
  p.validate();
  check_alpha(alpha);
  const double sa = std::sqrt(alpha);
  const double ag = std::pow(alpha, p.gamma);

  Mat L = Mat::Zero(5, 5);
  L(0, 1) = 1.0;
  L(1, 0) = -p.a * alpha / p.rho1;
  L(1, 2) = -p.a * sa / p.rho1;
  L(2, 3) = 1.0;
  L(3, 0) = -p.a * sa / p.rho2;
  L(3, 2) = -(p.b * alpha + p.a) / p.rho2;
  L(3, 4) = p.delta * ag / p.rho2;
  L(4, 3) = -p.delta * ag / p.rho3;
  L(4, 4) = -p.c * alpha / p.rho3;

  // skew part in energy coordinates
  const double w1 = std::sqrt(p.a * alpha / p.rho1);
  const double w2 = std::sqrt(p.a / p.rho2);
  const double w3 = std::sqrt(p.b * alpha / p.rho2);
  const double w4 = p.delta * ag / std::sqrt(p.rho2 * p.rho3);
  const double d = p.c * alpha / p.rho3;
  Mat M = Mat::Zero(5, 5);
  M(0, 2) = w1;
  M(0, 3) = w2;
  M(1, 3) = w3;
  M(2, 0) = -w1;
  M(3, 0) = -w2;
  M(3, 1) = -w3;
  M(3, 4) = w4;
  M(4, 3) = -w4;
  M(4, 4) = -d;

  return ModalBlock{alpha, 5, L, M, energy_transform(p, alpha)};
}

ModalBlock waveheat_block(double gamma, double alpha) {
  if (std::abs(gamma) > kGammaGuard || !std::isfinite(gamma))
    throw std::invalid_argument("gamma out of range: |gamma| <= 4 required");
  check_alpha(alpha);
  const double sa = std::sqrt(alpha);
  const double ag = std::pow(alpha, gamma);

  Mat L = Mat::Zero(3, 3);
  L(0, 1) = 1.0;
  L(1, 0) = -alpha;
  L(1, 2) = ag;
  L(2, 1) = -ag;
  L(2, 2) = -alpha;

  Mat M = Mat::Zero(3, 3);
  M(0, 1) = sa;
  M(1, 0) = -sa;
  M(1, 2) = ag;
  M(2, 1) = -ag;
  M(2, 2) = -alpha;

  Mat T = Mat::Zero(3, 3);
  T(0, 0) = sa;
  T(1, 1) = 1.0;
  T(2, 2) = 1.0;

  return ModalBlock{alpha, 3, L, M, T};
}

ModalBlock make_block(const Model& model, double alpha) {
  return model.kind == ModelKind::Timoshenko ? timoshenko_block(model.params, alpha)
                                             : waveheat_block(model.params.gamma, alpha);
}

double energy(const SystemParams& p, const ModalState& s) {
  const double sa = std::sqrt(s.alpha);
  const double phi = s.components(0), phit = s.components(1), psi = s.components(2),
               psit = s.components(3), theta = s.components(4);
  const double coupled = sa * phi + psi;
  return 0.5 * (p.a * coupled * coupled + p.b * s.alpha * psi * psi + p.rho1 * phit * phit +
                p.rho2 * psit * psit + p.rho3 * theta * theta);
}

double energy_waveheat(double alpha, const Vec& v) {
  return 0.5 * (alpha * v(0) * v(0) + v(1) * v(1) + v(2) * v(2));
}

Vec explicit_inverse_apply(const SystemParams& p, double alpha, const Vec& f) {
  p.validate();
  check_alpha(alpha);
  if (f.size() != 5) throw std::invalid_argument("explicit_inverse_apply: f must have 5 components");
  auto pw = [&](double q) { return std::pow(alpha, q); };
  const double f1 = f(0), f2 = f(1), f3 = f(2), f4 = f(3), f5 = f(4);

  Vec z(5);
  z(0) = -(p.rho1 / (p.a * p.b)) * (p.b + p.a / alpha) / alpha * f2 +
         (p.delta * p.delta / (p.b * p.c)) * pw(2 * p.gamma - 2.5) * f3 +
         (p.rho2 / p.b) * pw(-1.5) * f4 + (p.rho3 * p.delta / (p.b * p.c)) * pw(p.gamma - 2.5) * f5;
  z(1) = f1;
  z(2) = (p.rho1 / p.b) * pw(-1.5) * f2 - (p.delta * p.delta / (p.b * p.c)) * pw(2 * p.gamma - 2.0) * f3 -
         (p.rho2 / p.b) / alpha * f4 - (p.rho3 * p.delta / (p.b * p.c)) * pw(p.gamma - 2.0) * f5;
  z(3) = f3;
  z(4) = -(p.delta / p.c) * pw(p.gamma - 1.0) * f3 - (p.rho3 / p.c) / alpha * f5;
  return z;
}

namespace {

// 3x3 closed-form inverse for the wave-heat block, state (u, u_t, theta).
Mat waveheat_inverse_physical(double gamma, double alpha) {
  auto pw = [&](double q) { return std::pow(alpha, q); };
  Mat Li = Mat::Zero(3, 3);
  // z = L^{-1} f:  u_t = f1; theta = -alpha^{g-1} f1 - f3/alpha;
  // u = alpha^{g-1} theta - f2/alpha
  Li(1, 0) = 1.0;
  Li(2, 0) = -pw(gamma - 1.0);
  Li(2, 2) = -1.0 / alpha;
  Li(0, 0) = -pw(2.0 * gamma - 2.0);
  Li(0, 1) = -1.0 / alpha;
  Li(0, 2) = -pw(gamma - 2.0);
  return Li;
}

}  // namespace

Mat modal_inverse_energy(const Model& model, double alpha) {
  check_alpha(alpha);
  if (model.kind == ModelKind::Timoshenko) {
    const SystemParams& p = model.params;
    Mat Li(5, 5);
    for (int j = 0; j < 5; ++j) {
      Vec e = Vec::Zero(5);
      e(j) = 1.0;
      Li.col(j) = explicit_inverse_apply(p, alpha, e);
    }
    return energy_transform(p, alpha) * Li * energy_transform_inverse(p, alpha);
  }
  const double gamma = model.params.gamma;
  const double sa = std::sqrt(alpha);
  Mat Li = waveheat_inverse_physical(gamma, alpha);
  Mat T = Mat::Zero(3, 3), Ti = Mat::Zero(3, 3);
  T(0, 0) = sa;
  T(1, 1) = T(2, 2) = 1.0;
  Ti(0, 0) = 1.0 / sa;
  Ti(1, 1) = Ti(2, 2) = 1.0;
  return T * Li * Ti;
}

ResolventPolynomials resolvent_polynomials(const SystemParams& p, double t) {
  p.validate();
  if (!(t > 0.0)) throw std::invalid_argument("resolvent_polynomials: t must be positive");
  const double g2 = std::pow(t, 2.0 * p.gamma);
  const double st = std::sqrt(t);
  const double A1 = p.rho1 + p.a * t, B1 = p.rho2 + p.b * t, C1 = p.rho3 + p.c * t;
  const double d2 = p.delta * p.delta;

  ResolventPolynomials r;
  r.w = p.rho2 + p.a + p.b * t - p.a * p.a * t / A1 + d2 * g2 / C1;
  r.v = A1 * B1 * C1 + p.a * p.rho1 * C1 + d2 * g2 * A1;
  r.p1 = p.rho1 * (B1 * C1 + p.a * C1 + d2 * g2);
  r.p2 = p.rho1 * ((p.rho2 + p.a + p.b * t) * C1 + d2 * g2);
  r.p3 = -p.a * st * (p.rho2 * C1 + d2 * g2);
  r.p4 = -p.a * st * p.rho2 * C1;
  r.p5 = -p.rho3 * p.delta * p.a * std::pow(t, p.gamma + 0.5);
  r.q1 = p.rho1 * p.a * (d2 * std::pow(t, 2.0 * p.gamma - 0.5) + p.b * st * C1);
  r.q2 = p.rho1 * p.a * d2 * std::pow(t, 2.0 * p.gamma - 1.0) - p.b * p.rho2 * A1 * C1;
  r.q3 = -p.rho2 * A1 * (d2 * std::pow(t, 2.0 * p.gamma - 1.0) + p.b * C1);
  r.q4 = p.rho3 * p.delta * std::pow(t, p.gamma - 1.0) * (p.a * p.rho1 + p.rho2 * A1);
  r.r1 = -p.rho1 * p.rho3 * p.a * p.delta * std::pow(t, p.gamma - 0.5);
  r.r2 = -p.rho3 * p.delta * std::pow(t, p.gamma - 1.0) * (p.rho1 * p.a + p.rho1 * p.b * t + p.a * p.b * t * t);
  r.r3 = p.rho2 * p.rho3 * p.delta * std::pow(t, p.gamma - 1.0) * A1;
  r.r4 = p.c * p.rho3 * (p.a * p.rho1 + A1 * B1) + p.rho3 * d2 * std::pow(t, 2.0 * p.gamma - 1.0) * A1;
  return r;
}

}  // namespace stabilyze
