#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pathint/measure.hpp"

namespace pathint {

/// Smoothness class F_r: r-1 bounded derivatives plus a Lipschitz condition
/// on the (r-1)-st, with constants K[0..r]. K[i] bounds the i-th derivative
/// norm; K[r] is the Lipschitz constant.
struct SmoothnessClass {
    int r;
    std::vector<double> K;

    SmoothnessClass(int r_, std::vector<double> K_) : r(r_), K(std::move(K_)) {
        if (r < 1) throw std::invalid_argument("SmoothnessClass: r must be >= 1");
        if (K.size() != static_cast<std::size_t>(r) + 1)
            throw std::invalid_argument("SmoothnessClass: need exactly r+1 constants K0..Kr");
        for (double v : K)
            if (!(v > 0.0)) throw std::invalid_argument("SmoothnessClass: all K_i must be positive");
    }

    double K0() const { return K[0]; }
    double K1() const { return K[1]; }
    double K2() const {
        if (r < 2) throw std::logic_error("SmoothnessClass: K2 requires r >= 2");
        return K[2];
    }
};

/// Closed-form upper bound on the truncation dimension d(eps, F_r):
/// the smallest d so that replacing the path integral by its d-dimensional
/// Gaussian section loses at most eps/2.
///   Wiener,  r = 1: ceil( (2 K1 / (pi^2 eps))^2 + 1/2 )
///   Wiener,  r >= 2: ceil( K2 / (pi^2 eps) + 1/2 )
///   PowerLaw, r = 1: ceil( (4 a K1^2 / (k-1))^(1/(k-1)) * eps^(-2/(k-1)) )
///   PowerLaw, r >= 2: ceil( (a K2 / (k-1))^(1/(k-1)) * eps^(-1/(k-1)) )
inline std::uint64_t dimension_upper(const EigenSpectrum& spec, const SmoothnessClass& cls,
                                     double eps) {
    if (!(eps > 0.0)) throw std::domain_error("dimension_upper: eps must be positive");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double interior;
    if (spec.kind() == SpectrumKind::Wiener) {
        if (cls.r == 1) {
            const double base = 2.0 * cls.K1() / (pi2 * eps);
            interior = base * base + 0.5;
        } else {
            interior = cls.K2() / (pi2 * eps) + 0.5;
        }
    } else {
        const double a = spec.a();
        const double k = spec.k();
        if (cls.r == 1) {
            interior = std::pow(4.0 * a * cls.K1() * cls.K1() / (k - 1.0), 1.0 / (k - 1.0)) *
                       std::pow(eps, -2.0 / (k - 1.0));
        } else {
            interior = std::pow(a * cls.K2() / (k - 1.0), 1.0 / (k - 1.0)) *
                       std::pow(eps, -1.0 / (k - 1.0));
        }
    }
    const double d = std::ceil(interior);
    if (!(d >= 1.0)) return 1;
    return static_cast<std::uint64_t>(d);
}

/// Wiener-spectrum dimension bound with the integrand range K0 folded in
/// (the summation stage runs at accuracy eps/K0):
///   ceil( (K0 beta(r) / (pi^2 eps))^(1+gamma(r)) + 1/2 )
/// with beta(1) = 2 K1, beta(r>=2) = K2, gamma(1) = 1 and gamma(r>=2) = 0.
inline std::uint64_t dimension_upper_scaled(const SmoothnessClass& cls, double K0, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("dimension_upper_scaled: eps must be positive");
    if (!(K0 > 0.0)) throw std::domain_error("dimension_upper_scaled: K0 must be positive");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double beta = (cls.r == 1) ? 2.0 * cls.K1() : cls.K2();
    const double base = K0 * beta / (pi2 * eps);
    const double interior = (cls.r == 1 ? base * base : base) + 0.5;
    const double d = std::ceil(interior);
    if (!(d >= 1.0)) return 1;
    return static_cast<std::uint64_t>(d);
}

namespace detail {

inline bool tail_small_enough(const EigenSpectrum& spec, const SmoothnessClass& cls,
                              double eps, std::uint64_t d) {
    if (cls.r == 1) {
        const double rhs = eps * eps / (4.0 * cls.K1() * cls.K1());
        return spec.tail_bound(d) <= rhs;
    }
    return 0.5 * cls.K2() * spec.tail_bound(d) <= eps;
}

} // namespace detail

/// Smallest dimension whose eigenvalue tail bound meets the truncation
/// criterion: tail <= eps^2/(2 K1)^2 for r = 1, (K2/2) tail <= eps for
/// r >= 2. Doubling search followed by bisection; the tail bound is
/// monotone decreasing in d for both spectrum families.
inline std::uint64_t dimension_by_tail(const EigenSpectrum& spec, const SmoothnessClass& cls,
                                       double eps) {
    if (!(eps > 0.0)) throw std::domain_error("dimension_by_tail: eps must be positive");
    if (detail::tail_small_enough(spec, cls, eps, 1)) return 1;

    std::uint64_t hi = 2;
    while (!detail::tail_small_enough(spec, cls, eps, hi)) {
        if (hi >= (std::uint64_t{1} << 62))
            throw std::runtime_error("dimension_by_tail: search exceeded 2^62 dimensions");
        hi *= 2;
    }
    std::uint64_t lo = hi / 2; // fails the criterion
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (detail::tail_small_enough(spec, cls, eps, mid)) hi = mid; else lo = mid;
    }
    return hi;
}

} // namespace pathint
