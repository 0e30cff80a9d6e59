#pragma once

// Clock-spin (Z_N) model weights and the algebraic identities they satisfy.
//
// Spins take values omega^r with omega = exp(2 i pi / N); an edge carries a
// weight depending only on the spin difference r mod N.  The product family
//
//     W(u|0) = 1,   W(u|r) = prod_{p<r} sin((2p+1)L - u) / sin((2p+1)L + u),
//
// with crossing parameter L = pi/(2N), solves the star-triangle relation up
// to a spin-independent scale, is self-dual under the discrete Fourier
// transform (in ratio form), and makes the parafermionic plaquette bracket
// vanish.  The boundary family Yhat(u,xi|k), a two-factor analogue of the
// same product, solves the boundary analogue of the bracket and the
// reflection (boundary Yang-Baxter) equation for any boundary field xi.
//
// Two phase conventions deserve a note because the naive transcriptions fail:
//   * bulk bracket: an edge whose coupling argument is u spans a plaquette
//     whose geometric phase factors carry the complementary argument L - u
//     (the two arguments are exchanged by lattice duality).  With phases at
//     L - u the bracket vanishes identically; with phases at u it does not.
//   * boundary bracket: the boundary field enters through e^{+-2 i xi}.  Each
//     step of the Yhat product absorbs a (+xi, -xi) pair of factors, so the
//     single-angle phase e^{+- i xi} cannot match it.
// Both statements are exercised by the tests, which check the failing
// variants as well.

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lhk/numerics.hpp"

namespace lhk {

inline double zn_lambda(int N) { return pi / (2.0 * N); }

// Conformal spin of the unit-charge parafermion.
inline double zn_spin(int N) { return 1.0 - 1.0 / N; }

// Conformal spin of the charge-m parafermion.
inline double zn_charged_spin(int N, int m) {
    return static_cast<double>(m) * (N - m) / N;
}

inline cplx zn_omega(int N) { return std::polar(1.0, 2.0 * pi / N); }

inline void require_zn(int N) {
    if (N < 2) throw std::invalid_argument("zn: N must be at least 2");
}

// Bulk edge weights W(u|r) indexed by the spin difference r mod N.
struct ZnWeightTable {
    int N = 0;
    double lambda = 0.0;
    double u = 0.0;
    std::vector<double> W;  // W[0] = 1

    double at(long r) const {
        const long m = ((r % N) + N) % N;
        return W[static_cast<std::size_t>(m)];
    }
};

inline ZnWeightTable fz_weights(int N, double u) {
    require_zn(N);
    const double L = zn_lambda(N);
    ZnWeightTable t;
    t.N = N;
    t.lambda = L;
    t.u = u;
    t.W.assign(static_cast<std::size_t>(N), 1.0);
    for (int r = 1; r < N; ++r) {
        const double den = std::sin((2 * r - 1) * L + u);
        if (std::abs(den) < 1e-12)
            throw std::domain_error("fz_weights: weight denominator vanishes");
        t.W[static_cast<std::size_t>(r)] =
            t.W[static_cast<std::size_t>(r - 1)] * std::sin((2 * r - 1) * L - u) / den;
    }
    return t;
}

// max_k | What[k]/What[0] - W(L-u|k) |: the Fourier transform of the weight
// table reproduces the table at the complementary argument, up to overall
// normalization (the raw transform differs by the factor What[0]).
inline double self_duality_residual(int N, double u) {
    const ZnWeightTable t = fz_weights(N, u);
    const ZnWeightTable d = fz_weights(N, zn_lambda(N) - u);
    const std::vector<cplx> hat = dft(std::vector<cplx>(t.W.begin(), t.W.end()));
    if (std::abs(hat[0]) < 1e-12) throw std::domain_error("self_duality_residual: What[0] vanishes");
    double worst = 0.0;
    for (int k = 0; k < N; ++k)
        worst = std::max(worst, std::abs(hat[static_cast<std::size_t>(k)] / hat[0] - d.at(k)));
    return worst;
}

// The star-triangle relation holds up to a spin-independent scale: for all
// (r1,r2,r3),
//   sum_{r'} W(L-u|r1-r') W(u+v|r2-r') W(L-v|r3-r')
//     = scale(u,v) * W(u|r2-r3) W(L-u-v|r1-r3) W(v|r1-r2).
// star_triangle_scale returns the common ratio at (0,0,0);
// star_triangle_spread returns the worst deviation of the ratio from it.
namespace detail {
inline void star_triangle_ratios(int N, double u, double v, double& scale, double& spread) {
    const double L = zn_lambda(N);
    const ZnWeightTable wlu = fz_weights(N, L - u);
    const ZnWeightTable wuv = fz_weights(N, u + v);
    const ZnWeightTable wlv = fz_weights(N, L - v);
    const ZnWeightTable wu = fz_weights(N, u);
    const ZnWeightTable wluv = fz_weights(N, L - u - v);
    const ZnWeightTable wv = fz_weights(N, v);
    bool first = true;
    scale = 0.0;
    spread = 0.0;
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int r3 = 0; r3 < N; ++r3) {
                double lhs = 0.0;
                for (int rp = 0; rp < N; ++rp)
                    lhs += wlu.at(r1 - rp) * wuv.at(r2 - rp) * wlv.at(r3 - rp);
                const double rhs = wu.at(r2 - r3) * wluv.at(r1 - r3) * wv.at(r1 - r2);
                if (std::abs(rhs) < 1e-12) {
                    if (std::abs(lhs) >= 1e-10)
                        throw std::domain_error("star_triangle: one side vanishes while the other does not");
                    continue;
                }
                const double rho = lhs / rhs;
                if (first) {
                    scale = rho;
                    first = false;
                }
                spread = std::max(spread, std::abs(rho - scale));
            }
    if (first) throw std::domain_error("star_triangle: no usable spin triple");
}
}  // namespace detail

inline double star_triangle_scale(int N, double u, double v) {
    double scale = 0.0, spread = 0.0;
    detail::star_triangle_ratios(N, u, v, scale, spread);
    return scale;
}

inline double star_triangle_spread(int N, double u, double v) {
    double scale = 0.0, spread = 0.0;
    detail::star_triangle_ratios(N, u, v, scale, spread);
    return spread;
}

// Plaquette bracket around one face: with s the conformal spin and ph the
// geometric phase angle,
//   I(r) = (e^{-i ph} - e^{i ph} omega^r) W(u|r)
//        + (e^{i(ph + pi s)} - e^{-i(ph + pi s)} omega^r) W(u|r+1).
// The bracket vanishes for every r exactly when ph = L - u and s = 1 - 1/N
// (see the header comment on the complementary argument).
inline double bulk_I_residual(int N, double u, double s) {
    const ZnWeightTable t = fz_weights(N, u);
    const double ph = zn_lambda(N) - u;
    double worst = 0.0;
    for (int r = 0; r < N; ++r) {
        const cplx wr = std::polar(1.0, 2.0 * pi * r / N);
        const cplx Ir = (std::polar(1.0, -ph) - std::polar(1.0, ph) * wr) * t.at(r) +
                        (std::polar(1.0, ph + pi * s) - std::polar(1.0, -(ph + pi * s)) * wr) * t.at(r + 1);
        worst = std::max(worst, std::abs(Ir));
    }
    return worst;
}

// One-step recursion satisfied by the product weights:
//   W(u|r+1) = W(u|r) * (-e^{i(pi s + pi/N)})
//            * sin((2r+1)L - u) / sin((2r+1)L + u),
// whose phase prefactor is exactly 1 at s = 1 - 1/N.
inline double recursion_check(int N, double u, double s) {
    const ZnWeightTable t = fz_weights(N, u);
    const double L = zn_lambda(N);
    double worst = 0.0;
    for (int r = 0; r < N; ++r) {
        const double den = std::sin((2 * r + 1) * L + u);
        if (std::abs(den) < 1e-12) throw std::domain_error("recursion_check: denominator vanishes");
        const cplx pref = -std::polar(1.0, pi * s + pi / N);
        const cplx rhs = t.at(r) * pref * (std::sin((2 * r + 1) * L - u) / den);
        worst = std::max(worst, std::abs(cplx(t.at(r + 1)) - rhs));
    }
    return worst;
}

// Relabel spins sigma -> sigma^m: the table index transforms as r -> m r,
// i.e. the returned table satisfies W'[(m r) mod N] = W[r].  Requires
// gcd(m, N) = 1 so the relabeling is a bijection.
inline ZnWeightTable charged_transform(const ZnWeightTable& t, int m) {
    require_zn(t.N);
    const int N = t.N;
    const int mm = ((m % N) + N) % N;
    if (mm == 0 || std::gcd(mm, N) != 1)
        throw std::invalid_argument("charged_transform: charge must be invertible mod N");
    ZnWeightTable out = t;
    for (int r = 0; r < N; ++r)
        out.W[static_cast<std::size_t>((mm * r) % N)] = t.W[static_cast<std::size_t>(r)];
    return out;
}

// Plaquette bracket for the charge-m parafermion: spin difference enters as
// omega^{m r}, the disorder line shifts the table argument by m, the spin is
// m(N-m)/N, and the geometric phase is eps*(L - u) with eps = +1 when
// m^2 = +1 mod N and eps = -1 when m^2 = -1 mod N.  (For other charges the
// relabeled table is not of product form and no pure phase works.)
inline double charged_I_residual(int N, double u, int m) {
    require_zn(N);
    const int mm = ((m % N) + N) % N;
    if (mm == 0 || std::gcd(mm, N) != 1)
        throw std::invalid_argument("charged_I_residual: charge must be invertible mod N");
    const int msq = (mm * mm) % N;
    double eps = 0.0;
    if (msq == 1 % N)
        eps = 1.0;
    else if (msq == (N - 1) % N)
        eps = -1.0;
    else
        throw std::invalid_argument("charged_I_residual: charge must square to +-1 mod N");
    const ZnWeightTable v = charged_transform(fz_weights(N, u), mm);
    const double ph = eps * (zn_lambda(N) - u);
    const double sm = zn_charged_spin(N, mm);
    double worst = 0.0;
    for (int r = 0; r < N; ++r) {
        const cplx wr = std::polar(1.0, 2.0 * pi * ((mm * r) % N) / N);
        const cplx Ir = (std::polar(1.0, -ph) - std::polar(1.0, ph) * wr) * v.at(r) +
                        (std::polar(1.0, ph + pi * sm) - std::polar(1.0, -(ph + pi * sm)) * wr) * v.at(r + mm);
        worst = std::max(worst, std::abs(Ir));
    }
    return worst;
}

// Boundary weight table Y(u,xi|r) and its Fourier transform.  The field xi
// may be complex; for real xi both Yhat and Y are real and symmetric.
struct ZnBoundaryTable {
    int N = 0;
    double u = 0.0;
    cplx xi{0.0, 0.0};
    std::vector<cplx> Yhat;  // Yhat[0] = 1
    std::vector<cplx> Y;     // inverse transform of Yhat

    cplx hat(long k) const {
        const long m = ((k % N) + N) % N;
        return Yhat[static_cast<std::size_t>(m)];
    }
    cplx at(long r) const {
        const long m = ((r % N) + N) % N;
        return Y[static_cast<std::size_t>(m)];
    }
};

inline ZnBoundaryTable boundary_y(int N, double u, cplx xi) {
    require_zn(N);
    const double L = zn_lambda(N);
    ZnBoundaryTable t;
    t.N = N;
    t.u = u;
    t.xi = xi;
    t.Yhat.assign(static_cast<std::size_t>(N), cplx{1.0, 0.0});
    for (int k = 1; k < N; ++k) {
        const int l = k - 1;
        const cplx num = std::sin((2 * l + 1) * L - u + xi) * std::sin((2 * l + 1) * L - u - xi);
        const cplx den = std::sin((2 * l + 1) * L + u + xi) * std::sin((2 * l + 1) * L + u - xi);
        if (std::abs(den) < 1e-12)
            throw std::domain_error("boundary_y: weight denominator vanishes");
        t.Yhat[static_cast<std::size_t>(k)] = t.Yhat[static_cast<std::size_t>(k - 1)] * num / den;
    }
    t.Y = idft(t.Yhat);
    return t;
}

// Boundary analogue of the plaquette bracket, in Fourier variables:
//   C(k) = [cos(phi_k - 2u) - cos(2 xi)] Yhat[k]
//        - [cos(phi_k + 2u) - cos(2 xi)] Yhat[k+1],   phi_k = (4k+2) L.
// For real xi this equals Re[e^{i phi_k} Jhat(k)] with the transformed
// four-term bracket Jhat; for complex xi it is its analytic continuation.
inline double boundary_cr_residual_zn(int N, double u, cplx xi) {
    const ZnBoundaryTable t = boundary_y(N, u, xi);
    const double L = zn_lambda(N);
    double worst = 0.0;
    for (int k = 0; k < N; ++k) {
        const double phik = (4 * k + 2) * L;
        const cplx c = (std::cos(phik - 2 * u) - std::cos(2.0 * xi)) * t.hat(k) -
                       (std::cos(phik + 2 * u) - std::cos(2.0 * xi)) * t.hat(k + 1);
        worst = std::max(worst, std::abs(c));
    }
    return worst;
}

// Literal real-part residual max_k |Re[e^{i phi(k)} Jhat(k)]| for real xi,
// with phi(k) = slope*k + offset and
//   Jhat(k) = (e^{-2iu} + e^{i(2 xi + pi s)} omega^{-k}) Yhat[k]
//           - (e^{2iu} + e^{-i(2 xi + pi s)} omega^{-k-1}) Yhat[k+1].
// At (slope, offset) = (4L, 2L) this vanishes; other phases detect it.
inline double boundary_cr_phase_residual(int N, double u, double xi, double slope, double offset) {
    const ZnBoundaryTable t = boundary_y(N, u, cplx{xi, 0.0});
    const double s = zn_spin(N);
    double worst = 0.0;
    for (int k = 0; k < N; ++k) {
        const cplx omk = std::polar(1.0, -2.0 * pi * k / N);
        const cplx omk1 = std::polar(1.0, -2.0 * pi * (k + 1) / N);
        const cplx J = (std::polar(1.0, -2.0 * u) + std::polar(1.0, 2.0 * xi + pi * s) * omk) * t.hat(k) -
                       (std::polar(1.0, 2.0 * u) + std::polar(1.0, -(2.0 * xi + pi * s)) * omk1) * t.hat(k + 1);
        const double phi = slope * k + offset;
        worst = std::max(worst, std::abs((std::polar(1.0, phi) * J).real()));
    }
    return worst;
}

// Solve the boundary bracket recursion for an arbitrary phase function
// phi(k) = slope*k + offset and measure how badly the solution violates the
// required symmetry Yhat[k] = Yhat[N-k] (and the period-N closure).  Only
// the phase (4L, 2L) produces a symmetric solution beyond the trivial one.
inline double boundary_phase_symmetry_defect(int N, double u, cplx xi, double slope, double offset) {
    require_zn(N);
    std::vector<cplx> Y(static_cast<std::size_t>(N) + 1);
    Y[0] = 1.0;
    for (int k = 0; k < N; ++k) {
        const double phi = slope * k + offset;
        const cplx num = std::cos(phi - 2 * u) - std::cos(2.0 * xi);
        const cplx den = std::cos(phi + 2 * u) - std::cos(2.0 * xi);
        if (std::abs(den) < 1e-12)
            throw std::domain_error("boundary_phase_symmetry_defect: recursion denominator vanishes");
        Y[static_cast<std::size_t>(k) + 1] = Y[static_cast<std::size_t>(k)] * num / den;
    }
    double worst = std::abs(Y[static_cast<std::size_t>(N)] - cplx{1.0, 0.0});
    for (int k = 1; k < N; ++k)
        worst = std::max(worst, std::abs(Y[static_cast<std::size_t>(k)] -
                                         Y[static_cast<std::size_t>(N - k)]));
    return worst;
}

// Reflection (boundary Yang-Baxter) equation in Fourier variables: for all
// (k, l),
//   Yv[k] sum_m Wd[m] Yu[l-m] Ws[k+l-m] = Yv[l] sum_m Wd[m] Ws[k+l-m] Yu[k-m]
// with Wd = dft(W(u-v|.)), Ws = dft(W(u+v|.)), Yu = Yhat(u,xi), Yv = Yhat(v,xi).
inline double boundary_ybe_hat_residual(int N, const std::vector<cplx>& wd_hat,
                                        const std::vector<cplx>& ws_hat,
                                        const std::vector<cplx>& yu_hat,
                                        const std::vector<cplx>& yv_hat) {
    require_zn(N);
    auto at = [N](const std::vector<cplx>& v, long i) {
        const long m = ((i % N) + N) % N;
        return v[static_cast<std::size_t>(m)];
    };
    double worst = 0.0;
    for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
            cplx lhs = 0.0, rhs = 0.0;
            for (int m = 0; m < N; ++m) {
                lhs += at(wd_hat, m) * at(yu_hat, l - m) * at(ws_hat, k + l - m);
                rhs += at(wd_hat, m) * at(ws_hat, k + l - m) * at(yu_hat, k - m);
            }
            lhs *= at(yv_hat, k);
            rhs *= at(yv_hat, l);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

inline double boundary_ybe_residual(int N, double u, double v, cplx xi) {
    const ZnWeightTable wd = fz_weights(N, u - v);
    const ZnWeightTable ws = fz_weights(N, u + v);
    const ZnBoundaryTable yu = boundary_y(N, u, xi);
    const ZnBoundaryTable yv = boundary_y(N, v, xi);
    return boundary_ybe_hat_residual(N, dft(std::vector<cplx>(wd.W.begin(), wd.W.end())),
                                     dft(std::vector<cplx>(ws.W.begin(), ws.W.end())), yu.Yhat,
                                     yv.Yhat);
}

// Position-space form of the same equation: for all (r1, r2, r3),
//   W(u-v|r1-r2) sum_{r'} Y(u,xi|r1-r') W(u+v|r2-r') Y(v,xi|r3-r')
//     = W(u-v|r2-r3) sum_{r'} Y(v,xi|r1-r') W(u+v|r2-r') Y(u,xi|r3-r').
inline double boundary_ybe_position_residual(int N, double u, double v, cplx xi) {
    const ZnWeightTable wd = fz_weights(N, u - v);
    const ZnWeightTable ws = fz_weights(N, u + v);
    const ZnBoundaryTable yu = boundary_y(N, u, xi);
    const ZnBoundaryTable yv = boundary_y(N, v, xi);
    double worst = 0.0;
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int r3 = 0; r3 < N; ++r3) {
                cplx lhs = 0.0, rhs = 0.0;
                for (int rp = 0; rp < N; ++rp) {
                    lhs += yu.at(r1 - rp) * ws.at(r2 - rp) * yv.at(r3 - rp);
                    rhs += yv.at(r1 - rp) * ws.at(r2 - rp) * yu.at(r3 - rp);
                }
                lhs *= wd.at(r1 - r2);
                rhs *= wd.at(r2 - r3);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

// At boundary field xi = u/2 evaluated at spectral argument u/2, the boundary
// table is proportional to the bulk table at the complementary argument:
// returns max_r | Y[r]/Y[0] - W(L-u|r) |.  (In Fourier variables the same
// statement is the exact identity Yhat(u/2,u/2|k) = W(u|k).)
inline double free_bc_proportionality(int N, double u) {
    const ZnBoundaryTable y = boundary_y(N, u / 2.0, cplx{u / 2.0, 0.0});
    const ZnWeightTable wd = fz_weights(N, zn_lambda(N) - u);
    if (std::abs(y.Y[0]) < 1e-12) throw std::domain_error("free_bc_proportionality: Y[0] vanishes");
    double worst = 0.0;
    for (int r = 0; r < N; ++r)
        worst = std::max(worst, std::abs(y.at(r) / y.Y[0] - wd.at(r)));
    return worst;
}

}  // namespace lhk
