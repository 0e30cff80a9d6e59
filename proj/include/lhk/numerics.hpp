#pragma once

// Small numeric helpers shared across the verification library: naive DFTs on
// Z_N, scale-aware residuals, and the per-identity report record used by the
// command line driver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lhk {

using cplx = std::complex<double>;

constexpr double pi = 3.141592653589793238462643383279502884;

inline bool is_finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Forward transform on Z_N, f_hat[k] = sum_r omega^{k r} f[r] with
// omega = exp(2 i pi / N).  Naive O(N^2) on purpose: N stays small and the
// code doubles as a reference implementation.
inline std::vector<cplx> dft(const std::vector<cplx>& f) {
    if (f.empty()) throw std::invalid_argument("dft: empty input");
    const std::size_t n = f.size();
    for (const cplx& v : f)
        if (!is_finite(v)) throw std::invalid_argument("dft: non-finite input");
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) {
            const double ang = 2.0 * pi * static_cast<double>(k * r % n) / static_cast<double>(n);
            acc += f[r] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[k] = acc;
    }
    return out;
}

// Inverse transform, f[r] = (1/N) sum_k omega^{-k r} f_hat[k].
inline std::vector<cplx> idft(const std::vector<cplx>& fh) {
    if (fh.empty()) throw std::invalid_argument("idft: empty input");
    const std::size_t n = fh.size();
    for (const cplx& v : fh)
        if (!is_finite(v)) throw std::invalid_argument("idft: non-finite input");
    std::vector<cplx> out(n);
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = -2.0 * pi * static_cast<double>(k * r % n) / static_cast<double>(n);
            acc += fh[k] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[r] = acc / static_cast<double>(n);
    }
    return out;
}

// Scale-aware deviation |lhs - rhs| / max(1, |lhs|, |rhs|).
inline double residual(cplx lhs, cplx rhs) {
    if (!is_finite(lhs) || !is_finite(rhs)) throw std::invalid_argument("residual: non-finite input");
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / scale;
}

inline double residual(double lhs, double rhs) { return residual(cplx{lhs, 0.0}, cplx{rhs, 0.0}); }

// One verification data point: which identity, where in parameter space, how
// large the defect was and whether it beat the pinned tolerance.
struct ResidualReport {
    std::string identity_name;
    std::map<std::string, double> parameter_point;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

inline ResidualReport make_report(std::string name, std::map<std::string, double> point,
                                  double res, double tol) {
    ResidualReport r;
    r.identity_name = std::move(name);
    r.parameter_point = std::move(point);
    r.residual = res;
    r.tolerance = tol;
    r.passed = std::isfinite(res) && res < tol;
    return r;
}

}  // namespace lhk
