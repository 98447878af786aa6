#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "pathint/summation.hpp"

namespace pathint {

struct ProbitConfig {
    double abs_tolerance = 1e-12;
    int max_iterations = 200;
};

namespace detail {

/// erf(z) for 0 <= z < 2.5 via the positive-term expansion
///   erf(z) = (2/sqrt(pi)) e^{-z^2} sum_{n>=0} 2^n z^{2n+1} / (1*3*...*(2n+1)).
/// All terms are positive (no cancellation); summed compensated. Truncation
/// stops below 1e-18 relative, so the absolute error is a few ulp (< 1e-15).
inline double erf_series(double z) {
    const double zz2 = 2.0 * z * z;
    double term = z;
    KahanSum sum;
    sum.add(term);
    for (int n = 0; n < 200; ++n) {
        term *= zz2 / (2.0 * n + 3.0);
        sum.add(term);
        if (term < sum.value() * 1e-18) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z) * sum.value();
}

/// erfc(z) for z >= 2.5 via the Laplace continued fraction
///   erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z+ (1/2)/(z+ 1/(z+ (3/2)/(z+ ...))))
/// evaluated with modified Lentz. Converges to machine precision in a few
/// dozen iterations for z >= 2.5; relative error a few ulp.
inline double erfc_continued_fraction(double z) {
    constexpr double tiny = 1e-300;
    double f = tiny;
    double C = f;
    double D = 0.0;
    for (int n = 1; n <= 300; ++n) {
        const double a = (n == 1) ? 1.0 : 0.5 * static_cast<double>(n - 1);
        const double b = z;
        D = b + a * D;
        if (D == 0.0) D = tiny;
        C = b + a / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-z * z) / std::sqrt(std::numbers::pi) * f;
}

inline double erf_impl(double z) {
    if (z < 2.5) return erf_series(z);
    return 1.0 - erfc_continued_fraction(z);
}

} // namespace detail

/// Probability integral psi(x) = sqrt(2/pi) * Int_0^x exp(-t^2/2) dt
///                             = erf(x / sqrt(2)),  x >= 0.
/// Absolute error below 1e-14 (see detail notes). Note that in double
/// precision psi(x) rounds to exactly 1.0 once x exceeds about 8.3.
inline double psi(double x) {
    if (x < 0.0) throw std::domain_error("psi: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return detail::erf_impl(x / std::numbers::sqrt2);
}

/// Inverse of psi on [0, 1): the x >= 0 with psi(x) = p, located by a
/// doubling bracket and Newton steps safeguarded by bisection. Terminates
/// with |psi(x) - p| <= cfg.abs_tolerance.
inline double psi_inv(double p, const ProbitConfig& cfg = {}) {
    if (p < 0.0 || p >= 1.0) throw std::domain_error("psi_inv: p must lie in [0,1)");
    if (p == 0.0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (psi(hi) < p && hi < 64.0) hi *= 2.0;

    const double deriv_scale = std::sqrt(2.0 / std::numbers::pi);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double err = psi(x) - p;
        if (std::abs(err) <= cfg.abs_tolerance) return x;
        if (err > 0.0) hi = x; else lo = x;
        const double deriv = deriv_scale * std::exp(-0.5 * x * x);
        double next = x - err / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

/// Standard normal quantile as the odd extension of psi_inv:
/// gauss_quantile(p) = sign(2p-1) * psi_inv(|2p-1|). Antisymmetric by
/// construction: gauss_quantile(1-p) = -gauss_quantile(p).
inline double gauss_quantile(double p, const ProbitConfig& cfg = {}) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gauss_quantile: p must lie in (0,1)");
    const double u = 2.0 * p - 1.0;
    if (u == 0.0) return 0.0;
    return u > 0.0 ? psi_inv(u, cfg) : -psi_inv(-u, cfg);
}

} // namespace pathint
