#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pathint/errors.hpp"
#include "pathint/grid.hpp"
#include "pathint/measure.hpp"
#include "pathint/summation.hpp"

namespace pathint {

enum class IntegrandKind { Constant, Linear, CosineLinear, Custom };

/// Test integrands with analytically known Gaussian integrals, plus an escape
/// hatch for caller-supplied functions. The analytic families:
///   Constant(c):            f = c
///   Linear(w):              f(t) = sum_j w_j t_j            (odd, integral 0)
///   CosineLinear(w, A):     f(t) = A cos(sum_j w_j t_j)
/// CosineLinear also comes in a path-average flavour whose coefficients are
/// w_j = 2 sqrt(2) / ((2j-1) pi) for every j; under the Wiener spectrum this
/// is the cosine of the time average of the path, with exact integral
/// exp(-1/6) and unit norm (K0 = K1 = K2 = 1).
class Integrand {
public:
    using Fn = std::function<double(std::span<const double>)>;

    static Integrand constant(double c) {
        Integrand f(IntegrandKind::Constant);
        f.constant_ = c;
        return f;
    }

    static Integrand linear(std::vector<double> w) {
        Integrand f(IntegrandKind::Linear);
        f.w_ = std::move(w);
        return f;
    }

    static Integrand cosine_linear(std::vector<double> w, double amplitude = 1.0) {
        Integrand f(IntegrandKind::CosineLinear);
        f.w_ = std::move(w);
        f.amplitude_ = amplitude;
        return f;
    }

    /// cos of the path time-average, expressed in eigencoordinates.
    static Integrand cosine_path_average(double amplitude = 1.0) {
        Integrand f(IntegrandKind::CosineLinear);
        f.path_average_ = true;
        f.amplitude_ = amplitude;
        return f;
    }

    static Integrand custom(Fn fn, double K0, double K1,
                            std::optional<double> K2 = std::nullopt) {
        if (!(K0 > 0.0) || !(K1 > 0.0))
            throw std::invalid_argument("Integrand::custom: K0 and K1 must be positive");
        Integrand f(IntegrandKind::Custom);
        f.custom_ = std::move(fn);
        f.custom_K0_ = K0;
        f.custom_K1_ = K1;
        f.custom_K2_ = K2;
        return f;
    }

    IntegrandKind kind() const { return kind_; }
    bool is_path_average() const { return path_average_; }
    double amplitude() const { return amplitude_; }
    const std::vector<double>& weights() const { return w_; }

    /// Coefficient w_j (1-based); zero beyond an explicit vector.
    double coeff(std::uint64_t j) const {
        if (path_average_) {
            return 2.0 * std::numbers::sqrt2 / ((2.0 * static_cast<double>(j) - 1.0) * std::numbers::pi);
        }
        if (j == 0 || j > w_.size()) return 0.0;
        return w_[static_cast<std::size_t>(j - 1)];
    }

    double evaluate(std::span<const double> t) const {
        switch (kind_) {
        case IntegrandKind::Constant:
            return constant_;
        case IntegrandKind::Linear: {
            KahanSum s;
            for (std::size_t i = 0; i < t.size(); ++i) s.add(coeff(i + 1) * t[i]);
            return s.value();
        }
        case IntegrandKind::CosineLinear: {
            KahanSum s;
            for (std::size_t i = 0; i < t.size(); ++i) s.add(coeff(i + 1) * t[i]);
            return amplitude_ * std::cos(s.value());
        }
        case IntegrandKind::Custom:
            return custom_(t);
        }
        return 0.0; // unreachable
    }

    /// Declared sup |f|. Infinite for Linear (unbounded on R^d).
    double K0() const {
        switch (kind_) {
        case IntegrandKind::Constant: return std::abs(constant_);
        case IntegrandKind::Linear: return std::numeric_limits<double>::infinity();
        case IntegrandKind::CosineLinear: return std::abs(amplitude_);
        case IntegrandKind::Custom: return custom_K0_;
        }
        return 0.0;
    }

    /// Lipschitz constant w.r.t. the l2 norm.
    double K1() const {
        switch (kind_) {
        case IntegrandKind::Constant: return 0.0;
        case IntegrandKind::Linear: return weight_norm();
        case IntegrandKind::CosineLinear: return std::abs(amplitude_) * weight_norm();
        case IntegrandKind::Custom: return custom_K1_;
        }
        return 0.0;
    }

    std::optional<double> K2() const {
        switch (kind_) {
        case IntegrandKind::Constant: return 0.0;
        case IntegrandKind::Linear: return 0.0;
        case IntegrandKind::CosineLinear: {
            const double n = weight_norm();
            return std::abs(amplitude_) * n * n;
        }
        case IntegrandKind::Custom: return custom_K2_;
        }
        return std::nullopt;
    }

    /// sum_{j<=d} w_j^2 lambda_j (the variance of the linear form under the
    /// truncated measure).
    double variance_upto(const EigenSpectrum& spec, std::uint64_t d) const {
        KahanSum s;
        const std::uint64_t last = path_average_ ? d : std::min<std::uint64_t>(d, w_.size());
        for (std::uint64_t j = 1; j <= last; ++j) {
            const double wj = coeff(j);
            s.add(wj * wj * spec.eigenvalue(j));
        }
        return s.value();
    }

    /// Full-series variance. Closed form 1/3 for the path average under
    /// Wiener; numerical convergence (tail below 1e-14) otherwise.
    double variance_total(const EigenSpectrum& spec) const {
        if (!path_average_) return variance_upto(spec, w_.size());
        if (spec.kind() == SpectrumKind::Wiener) return 1.0 / 3.0;
        KahanSum s;
        for (std::uint64_t j = 1; j <= 10'000'000; ++j) {
            const double wj = coeff(j);
            const double term = wj * wj * spec.eigenvalue(j);
            s.add(term);
            if (j >= 64 && term <= 1e-18 * std::max(1.0, s.value())) break;
        }
        return s.value();
    }

    /// Exact Gaussian integral of the d-dimensional section (or of the full
    /// path integral for d = nullopt) when analytically known.
    std::optional<double> exact_value(const EigenSpectrum& spec,
                                      std::optional<std::uint64_t> d = std::nullopt) const {
        switch (kind_) {
        case IntegrandKind::Constant: return constant_;
        case IntegrandKind::Linear: return 0.0;
        case IntegrandKind::CosineLinear: {
            const double v = d ? variance_upto(spec, *d) : variance_total(spec);
            return amplitude_ * std::exp(-0.5 * v);
        }
        case IntegrandKind::Custom: return std::nullopt;
        }
        return std::nullopt;
    }

    /// Exact mean of f over every grid point, when the product structure
    /// gives it in O(d*m): axis factors are real by antisymmetry, so for the
    /// cosine family  S_n = A * prod_i (m^-1 sum_j cos(w_i t_ij)).
    std::optional<double> grid_mean(const QuantileGrid& grid) const {
        switch (kind_) {
        case IntegrandKind::Constant: return constant_;
        case IntegrandKind::Linear: return 0.0;
        case IntegrandKind::CosineLinear: {
            double prod = amplitude_;
            for (std::uint32_t i = 0; i < grid.dimension(); ++i) {
                const double wi = coeff(i + 1);
                KahanSum s;
                for (double node : grid.axis_nodes(i)) s.add(std::cos(wi * node));
                prod *= s.value() / static_cast<double>(grid.nodes_per_axis());
            }
            return prod;
        }
        case IntegrandKind::Custom: return std::nullopt;
        }
        return std::nullopt;
    }

private:
    explicit Integrand(IntegrandKind kind) : kind_(kind) {}

    double weight_norm() const {
        if (path_average_) return 1.0; // sum_j 8/((2j-1)^2 pi^2) = 1 exactly
        KahanSum s;
        for (double wj : w_) s.add(wj * wj);
        return std::sqrt(s.value());
    }

    IntegrandKind kind_;
    double constant_ = 0.0;
    std::vector<double> w_;
    bool path_average_ = false;
    double amplitude_ = 1.0;
    Fn custom_;
    double custom_K0_ = 0.0;
    double custom_K1_ = 0.0;
    std::optional<double> custom_K2_;
};

/// Analytic oracle for the cosine family:
/// E cos(sum w_j T_j) = exp(-1/2 sum_{j<=d} w_j^2 lambda_j) for independent
/// zero-mean Gaussians with variances lambda_j.
inline double exact_gaussian_value(const Integrand& f, const EigenSpectrum& spec,
                                   std::optional<std::uint64_t> d = std::nullopt) {
    if (f.kind() != IntegrandKind::CosineLinear)
        throw std::invalid_argument("exact_gaussian_value: cosine-of-linear integrands only");
    return *f.exact_value(spec, d);
}

/// Deterministic map from a linear index to a summand in [-bound, bound],
/// with an exact tally of value() invocations. Copies share the tally.
class SummandOracle {
public:
    SummandOracle(std::uint64_t n, std::function<double(std::uint64_t)> fn, double bound = 1.0)
        : n_(n), fn_(std::move(fn)), bound_(bound),
          queries_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
        if (n_ == 0) throw std::invalid_argument("SummandOracle: size must be positive");
        if (!(bound_ > 0.0)) throw std::invalid_argument("SummandOracle: bound must be positive");
    }

    std::uint64_t size() const { return n_; }
    double bound() const { return bound_; }

    double value(std::uint64_t i) const {
        if (i >= n_) throw std::out_of_range("SummandOracle: index out of range");
        const double v = fn_(i);
        if (!(std::abs(v) <= bound_)) {
            std::ostringstream msg;
            msg << "summand " << i << " = " << v << " escapes the declared bound " << bound_;
            throw bound_violation_error(msg.str());
        }
        queries_->fetch_add(1, std::memory_order_relaxed);
        return v;
    }

    std::uint64_t queries() const { return queries_->load(std::memory_order_relaxed); }
    void reset_queries() { queries_->store(0, std::memory_order_relaxed); }

private:
    std::uint64_t n_;
    std::function<double(std::uint64_t)> fn_;
    double bound_;
    std::shared_ptr<std::atomic<std::uint64_t>> queries_;
};

/// Scaled summand oracle over the grid: value(i) = f(point(i)) / K0, which
/// lies in [-1, 1] whenever K0 really bounds |f|. A violation at an
/// evaluated point raises bound_violation_error naming the point.
inline SummandOracle make_oracle(const QuantileGrid& grid, const Integrand& f, double K0) {
    if (!(K0 > 0.0)) throw std::invalid_argument("make_oracle: K0 must be positive");
    const double declared = f.K0();
    if (std::isfinite(declared) && K0 < declared * (1.0 - 1e-12))
        throw std::invalid_argument("make_oracle: K0 below the integrand's declared bound");

    auto shared_grid = std::make_shared<QuantileGrid>(grid);
    auto shared_f = std::make_shared<Integrand>(f);
    const std::uint64_t n = grid.size();
    auto fn = [shared_grid, shared_f, K0](std::uint64_t i) {
        std::vector<double> x(shared_grid->dimension());
        shared_grid->point_into(i, x);
        const double fv = shared_f->evaluate(x);
        if (!(std::abs(fv) <= K0)) {
            std::ostringstream msg;
            msg << "integrand value " << fv << " at grid point " << i << " (";
            for (std::size_t c = 0; c < x.size(); ++c) msg << (c ? "," : "") << x[c];
            msg << ") exceeds K0 = " << K0;
            throw bound_violation_error(msg.str());
        }
        return fv / K0;
    };
    return SummandOracle(n, std::move(fn), 1.0);
}

/// Mean of all oracle values (exactly n queries), compensated.
inline double oracle_mean(const SummandOracle& oracle,
                          std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    if (oracle.size() > enumeration_cap)
        throw cap_exceeded_error("oracle_mean: " + std::to_string(oracle.size()) +
                                 " summands exceed the enumeration cap of " +
                                 std::to_string(enumeration_cap));
    KahanSum s;
    for (std::uint64_t i = 0; i < oracle.size(); ++i) s.add(oracle.value(i));
    return s.value() / static_cast<double>(oracle.size());
}

} // namespace pathint
