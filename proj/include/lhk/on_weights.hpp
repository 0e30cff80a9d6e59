#pragma once

// Integrable weights of the square-lattice loop model with loop fugacity
// n = -2 cos 4*lambda, the four-equation linear system expressing that the
// spin-s observable is discretely holomorphic across a rhombus, and the
// corresponding one-equation condition at a triangular boundary face.

#include <array>
#include <cmath>
#include <complex>

#include "lhk/numerics.hpp"

namespace lhk {

// Face weights: t empty, u1/u2 the two corner-arc orientations, v straight
// crossings, w1/w2 the two double-arc states.
struct OnWeightSet {
    double lambda = 0.0, u = 0.0;
    double n = 0.0;
    double t = 0.0, u1 = 0.0, u2 = 0.0, v = 0.0, w1 = 0.0, w2 = 0.0;
};

struct OnBoundaryWeights {
    double lambda = 0.0, u = 0.0;
    double r = 0.0;  // weight of the empty (no-contact) triangle state
    double y = 0.0;  // weight of the leg-to-leg reflection arc
};

// tau carries the conformal spin, mu the rhombus half-angle phase.
struct SpinParams {
    double s = 0.0;
    cplx tau{1.0, 0.0};
    cplx mu{1.0, 0.0};
};

inline double loop_fugacity(double lambda) { return -2.0 * std::cos(4.0 * lambda); }

// The spin value for which the integrable weights solve the rhombus system.
inline double conformal_spin(double lambda) { return 3.0 * lambda / pi - 1.0; }

// Bulk spectral parameter tied to the rhombus angle.
inline double bulk_spectral(double s, double alpha) { return (s + 1.0) * alpha; }

// Boundary faces are half rhombi and carry half the spectral parameter.
inline double boundary_spectral(double s, double alpha) { return (s + 1.0) * alpha / 2.0; }

inline SpinParams make_spin_params(double s, double alpha) {
    SpinParams sp;
    sp.s = s;
    sp.tau = std::polar(1.0, pi * s);
    sp.mu = std::polar(1.0, (s + 1.0) * alpha);
    return sp;
}

inline OnWeightSet bulk_weights(double lambda, double u) {
    OnWeightSet w;
    w.lambda = lambda;
    w.u = u;
    w.n = loop_fugacity(lambda);
    const double a = std::sin(3.0 * lambda - u), b = std::sin(u);
    const double s2 = std::sin(2.0 * lambda), s3 = std::sin(3.0 * lambda);
    w.t = a * b + s2 * s3;
    w.u1 = -a * s2;
    w.u2 = -b * s2;
    w.v = a * b;
    w.w1 = a * std::sin(2.0 * lambda - u);
    w.w2 = -std::sin(lambda - u) * b;
    return w;
}

inline OnBoundaryWeights boundary_weights(double lambda, double u) {
    OnBoundaryWeights bw;
    bw.lambda = lambda;
    bw.u = u;
    bw.r = -std::cos((3.0 * lambda + 2.0 * u) / 2.0);
    bw.y = std::cos((3.0 * lambda - 2.0 * u) / 2.0);
    return bw;
}

// The other critical surface universality class is reached by shifting lambda
// by pi in the boundary weights only; the bulk weights map to +/- themselves.
inline OnBoundaryWeights ordinary_transition_weights(double lambda, double u) {
    return boundary_weights(lambda + pi, u);
}

// Left-hand sides of the four linear equations tying the six face weights to
// (tau, mu, n).  A weight set is discretely holomorphic across a rhombus iff
// all four vanish.
inline std::array<cplx, 4> cr_system_residuals(const OnWeightSet& w, const SpinParams& sp,
                                               double alpha) {
    (void)alpha;  // already folded into sp.mu; kept for call-site clarity
    const cplx tau = sp.tau, mu = sp.mu;
    const cplx ti = 1.0 / tau, ti2 = ti * ti, t2 = tau * tau;
    const double n = w.n;
    std::array<cplx, 4> eq;
    eq[0] = w.t + mu * w.u1 - mu * ti * w.u2 - w.v;
    eq[1] = -ti * w.u1 + n * w.u2 + tau * mu * w.v - mu * ti * (w.w1 + n * w.w2);
    eq[2] = n * w.u1 - tau * w.u2 - mu * ti2 * w.v + mu * (n * w.w1 + w.w2);
    eq[3] = -mu * ti2 * w.u1 + mu * tau * w.u2 + n * w.v - ti2 * w.w1 - t2 * w.w2;
    return eq;
}

inline double max_cr_residual(const OnWeightSet& w, const SpinParams& sp, double alpha) {
    double m = 0.0;
    for (const cplx& e : cr_system_residuals(w, sp, alpha)) m = std::max(m, std::abs(e));
    return m;
}

// Real part of the discrete contour condition at a triangular boundary face,
// for explicitly supplied triangle weights.
inline double boundary_cr_residual(double lambda, double alpha, const OnBoundaryWeights& bw) {
    const double s = conformal_spin(lambda);
    const cplx pr = std::polar(1.0, 0.5 * ((s + 1.0) * alpha + pi * (1.0 - s)));
    const cplx py = std::polar(1.0, 0.5 * (-(s + 1.0) * alpha + pi * (1.0 - s)));
    return std::abs((-pr * bw.r - py * bw.y).real());
}

// Same condition with the integrable boundary weights at the half-rhombus
// spectral parameter.
inline double boundary_cr_residual(double lambda, double alpha) {
    const double s = conformal_spin(lambda);
    return boundary_cr_residual(lambda, alpha,
                                boundary_weights(lambda, boundary_spectral(s, alpha)));
}

}  // namespace lhk
