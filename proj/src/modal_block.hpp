#pragma once

// Per-spectral-point reduction: substituting a spectral value alpha for the
// leading operator turns the evolution into a finite ODE block.  Physical
// coordinates keep the state order (phi, phi_t, psi, psi_t, theta); the
// energy transform T makes the phase-space norm Euclidean, under which the
// generator is skew except for a single dissipative diagonal entry.

#include "params.hpp"
#include "small_linalg.hpp"

namespace stabilyze {

enum class ModelKind { Timoshenko, WaveHeat };

struct Model {
  ModelKind kind = ModelKind::Timoshenko;
  SystemParams params;  // WaveHeat uses only gamma; the other fields are 1

  static Model timoshenko(const SystemParams& p) { return {ModelKind::Timoshenko, p}; }
  static Model waveheat(double gamma);
};

struct ModalBlock {
  double alpha = 0.0;
  int dim = 5;
  Mat L;  // physical coordinates
  Mat M;  // energy coordinates, M = T L T^{-1}
  Mat T;
};

struct ModalState {
  double alpha = 0.0;
  Vec components;  // (phi, phi_t, psi, psi_t, theta)
};

ModalBlock timoshenko_block(const SystemParams& p, double alpha);
ModalBlock waveheat_block(double gamma, double alpha);
ModalBlock make_block(const Model& model, double alpha);

// T maps (phi, phi_t, psi, psi_t, theta) to
// (sqrt(a)(sqrt(alpha) phi + psi), sqrt(b alpha) psi, sqrt(rho1) phi_t,
//  sqrt(rho2) psi_t, sqrt(rho3) theta), so that |u|^2 = 2E.
Mat energy_transform(const SystemParams& p, double alpha);
Mat energy_transform_inverse(const SystemParams& p, double alpha);

double energy(const SystemParams& p, const ModalState& s);
double energy_waveheat(double alpha, const Vec& v);

// Closed-form solution of L_alpha z = f.  Valid as a formula for every
// gamma; for gamma > 1 the growth of the result over alpha is itself the
// non-invertibility diagnostic.
Vec explicit_inverse_apply(const SystemParams& p, double alpha, const Vec& f);

// Inverse of the energy-coordinate generator assembled from the closed
// forms: entrywise exact, so its norm stays meaningful where an SVD of M
// would drown in roundoff.
Mat modal_inverse_energy(const Model& model, double alpha);

// Every rational expression of the surjectivity lemma, evaluated at t.
struct ResolventPolynomials {
  double w = 0, v = 0;
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0, p5 = 0;
  double q1 = 0, q2 = 0, q3 = 0, q4 = 0;
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0;
};

ResolventPolynomials resolvent_polynomials(const SystemParams& p, double t);

}  // namespace stabilyze
