#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "pathint/summation.hpp"

namespace pathint {

enum class SpectrumKind { Wiener, PowerLaw };

/// Eigenvalue model of the covariance operator of a zero-mean Gaussian
/// measure. Two families:
///   Wiener:    lambda_j = 4 / (pi^2 (2j-1)^2), trace = 1/2
///   PowerLaw:  lambda_j = a * j^-k with a > 0, k > 1 (finite trace)
/// Eigenvalues are computed on demand; nothing is stored per index.
class EigenSpectrum {
public:
    static EigenSpectrum wiener() { return EigenSpectrum(SpectrumKind::Wiener, 0.0, 0.0); }

    static EigenSpectrum power_law(double a, double k) {
        if (!(a > 0.0)) throw std::invalid_argument("power_law: a must be positive");
        if (!(k > 1.0)) throw std::invalid_argument("power_law: k must exceed 1 for a finite trace");
        return EigenSpectrum(SpectrumKind::PowerLaw, a, k);
    }

    SpectrumKind kind() const { return kind_; }
    double a() const { return a_; }
    double k() const { return k_; }

    double eigenvalue(std::uint64_t j) const {
        if (j == 0) throw std::domain_error("eigenvalue: index starts at 1");
        if (kind_ == SpectrumKind::Wiener) {
            const double odd = 2.0 * static_cast<double>(j) - 1.0;
            return 4.0 / (std::numbers::pi * std::numbers::pi * odd * odd);
        }
        return a_ * std::pow(static_cast<double>(j), -k_);
    }

    /// Sum of the first d eigenvalues, compensated, in increasing-j order.
    double partial_trace(std::uint64_t d) const {
        KahanSum sum;
        for (std::uint64_t j = 1; j <= d; ++j) sum.add(eigenvalue(j));
        return sum.value();
    }

    /// Upper bound on the tail sum over j > d.
    /// Wiener: 1/(pi^2 (d - 1/2)). PowerLaw: the integral bound
    /// a / ((k-1) d^(k-1)).
    double tail_bound(std::uint64_t d) const {
        if (d == 0) throw std::domain_error("tail_bound: d must be >= 1");
        const double dd = static_cast<double>(d);
        if (kind_ == SpectrumKind::Wiener) {
            return 1.0 / (std::numbers::pi * std::numbers::pi * (dd - 0.5));
        }
        return a_ / ((k_ - 1.0) * std::pow(dd, k_ - 1.0));
    }

    /// Full trace. Closed form 1/2 for Wiener; a * zeta(k) for the power law.
    double trace() const {
        if (kind_ == SpectrumKind::Wiener) return 0.5;
        return a_ * std::riemann_zeta(k_);
    }

private:
    EigenSpectrum(SpectrumKind kind, double a, double k) : kind_(kind), a_(a), k_(k) {}

    SpectrumKind kind_;
    double a_;
    double k_;
};

/// Orthonormal eigenfunctions of the Wiener covariance on L2[0,1]:
/// eta_i(t) = sqrt(2) sin((2i-1) pi t / 2).
inline double wiener_eigenfunction(std::uint64_t i, double t) {
    if (i == 0) throw std::domain_error("wiener_eigenfunction: index starts at 1");
    if (t < 0.0 || t > 1.0) throw std::domain_error("wiener_eigenfunction: t must lie in [0,1]");
    const double odd = 2.0 * static_cast<double>(i) - 1.0;
    return std::numbers::sqrt2 * std::sin(0.5 * odd * std::numbers::pi * t);
}

} // namespace pathint
