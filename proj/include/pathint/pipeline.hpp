#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "pathint/baselines.hpp"
#include "pathint/grid.hpp"
#include "pathint/measure.hpp"
#include "pathint/oracle.hpp"
#include "pathint/qae.hpp"
#include "pathint/rng.hpp"
#include "pathint/truncate.hpp"

namespace pathint {

enum class Method { WorstCaseClassical, MonteCarlo, QuantumStatevector, QuantumAnalytic };

/// Absolute error budget per stage; must sum to the total eps.
struct ErrorSplits {
    double trunc = 0.0;
    double grid = 0.0;
    double sum = 0.0;

    double total() const { return trunc + grid + sum; }
};

struct PipelineConfig {
    double eps = 0.1;
    std::optional<ErrorSplits> splits; // default: eps/4, eps/4, eps/2
    Method method = Method::QuantumAnalytic;
    int repetitions = 1;
    std::uint64_t seed = 0;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::uint64_t memory_cap_bytes = std::uint64_t{2} << 30;
};

/// Wiener-measure resource predictions for the quantum pipeline at accuracy
/// eps: d_up from the K0-scaled dimension bound, 2 K0 / eps queries,
/// d_up * log2(16 K0 K1 / eps) qubits.
struct ResourcePrediction {
    std::uint64_t d_up = 0;
    double queries = 0.0;
    double qubits = 0.0;
};

inline ResourcePrediction predict_wiener_resources(const SmoothnessClass& cls, double eps) {
    ResourcePrediction p;
    p.d_up = dimension_upper_scaled(cls, cls.K0(), eps);
    p.queries = 2.0 * cls.K0() / eps;
    p.qubits = static_cast<double>(p.d_up) * std::log2(16.0 * cls.K0() * cls.K1() / eps);
    return p;
}

/// Predicted total cost (2 K0 d_up / eps) * (c + 2 log2(16 K0 K1 / eps))
/// where c is the per-query cost of one integrand evaluation.
inline double report_cost(const SmoothnessClass& cls, double K0, double eps,
                          double unit_query_cost) {
    if (!(eps > 0.0)) throw std::domain_error("report_cost: eps must be positive");
    const auto d_up = static_cast<double>(dimension_upper_scaled(cls, K0, eps));
    return (2.0 * K0 * d_up / eps) *
           (unit_query_cost + 2.0 * std::log2(16.0 * K0 * cls.K1() / eps));
}

struct PipelineReport {
    Method method = Method::QuantumAnalytic;
    double eps = 0.0;
    ErrorSplits splits;
    double estimate = 0.0;
    std::uint64_t d = 0;
    std::uint64_t m = 0;
    PointCount n;
    std::uint64_t queries = 0;
    int qubits = 0;
    std::optional<ResourcePrediction> predicted; // Wiener spectrum only
    std::optional<double> exact_value;
    std::optional<double> observed_error;
    std::uint64_t seed = 0;
    int repetitions = 1;
    double timing_ms = 0.0;
};

namespace detail {

inline void check_class_consistency(const SmoothnessClass& cls, const Integrand& f) {
    constexpr double slack = 1.0 + 1e-9;
    if (!(f.K0() <= cls.K0() * slack))
        throw std::invalid_argument("pipeline: integrand bound exceeds the class K0");
    if (!(f.K1() <= cls.K1() * slack))
        throw std::invalid_argument("pipeline: integrand Lipschitz constant exceeds the class K1");
    if (cls.r >= 2) {
        const auto k2 = f.K2();
        if (k2 && !(*k2 <= cls.K2() * slack))
            throw std::invalid_argument("pipeline: integrand K2 exceeds the class K2");
    }
}

/// Exact grid mean of f/K0: product factorization when available, full
/// enumeration through the oracle otherwise (cap applies).
inline double exact_scaled_grid_mean(const QuantileGrid& grid, const Integrand& f, double K0,
                                     std::uint64_t enumeration_cap) {
    if (auto mean = f.grid_mean(grid)) return *mean / K0;
    const SummandOracle oracle = make_oracle(grid, f, K0);
    return oracle_mean(oracle, enumeration_cap);
}

} // namespace detail

/// End-to-end path-integral estimate:
///   1. truncation dimension d from the eigenvalue-tail budget splits.trunc;
///   2. per-axis node count m so the worst-case grid error is at most
///      splits.grid;
///   3. the grid mean S_n estimated by the configured method at summand
///      accuracy splits.sum / K0 (quantum), with ceil((2K0/splits.sum)^2)
///      samples (Monte Carlo), or exactly (classical, cap permitting);
///   4. the estimate K0 * S reported with exact resource accounting.
/// Total error is at most eps, deterministically for the classical method
/// and with probability >= 3/4 per quantum/Monte Carlo repetition.
///
/// Degenerate accuracy eps >= 2 K0 short-circuits to estimate 0 with zero
/// queries: 0 is within eps of any integral bounded by K0.
inline PipelineReport run_pipeline(const PipelineConfig& config, const EigenSpectrum& spec,
                                   const SmoothnessClass& cls, const Integrand& f) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(config.eps > 0.0)) throw std::domain_error("pipeline: eps must be positive");
    if (config.repetitions < 1 || config.repetitions % 2 == 0)
        throw std::invalid_argument("pipeline: repetitions must be odd and >= 1");
    detail::check_class_consistency(cls, f);

    ErrorSplits splits = config.splits.value_or(
        ErrorSplits{config.eps / 4.0, config.eps / 4.0, config.eps / 2.0});
    if (!(splits.trunc > 0.0 && splits.grid > 0.0 && splits.sum > 0.0))
        throw std::invalid_argument("pipeline: all error splits must be positive");
    if (std::abs(splits.total() - config.eps) > 1e-12)
        throw std::invalid_argument("pipeline: splits must sum to eps");

    PipelineReport report;
    report.method = config.method;
    report.eps = config.eps;
    report.splits = splits;
    report.seed = config.seed;
    report.repetitions = config.repetitions;
    report.exact_value = f.exact_value(spec, std::nullopt);
    if (spec.kind() == SpectrumKind::Wiener)
        report.predicted = predict_wiener_resources(cls, config.eps);

    const double K0 = cls.K0();
    if (config.eps >= 2.0 * K0) {
        report.estimate = 0.0;
        if (report.exact_value)
            report.observed_error = std::abs(report.estimate - *report.exact_value);
        report.timing_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t_start)
                               .count();
        return report;
    }

    const std::uint64_t d = dimension_by_tail(spec, cls, splits.trunc);
    const std::uint64_t m =
        select_node_count(spec, static_cast<std::uint32_t>(d), cls.K1(), 2.0 * splits.grid);
    const QuantileGrid grid = build_grid(spec, static_cast<std::uint32_t>(d), m);
    report.d = d;
    report.m = m;
    report.n = grid.point_count();

    switch (config.method) {
    case Method::WorstCaseClassical: {
        const SummandOracle oracle = make_oracle(grid, f, K0);
        report.estimate = K0 * oracle_mean(oracle, config.enumeration_cap);
        report.queries = oracle.size();
        report.qubits = 0;
        break;
    }
    case Method::MonteCarlo: {
        const double ratio = 2.0 * K0 / splits.sum;
        const auto samples = static_cast<std::uint64_t>(std::ceil(ratio * ratio));
        Rng rng(config.seed);
        double mean;
        if (grid.point_count().exact) {
            const SummandOracle oracle = make_oracle(grid, f, K0);
            mean = monte_carlo_mean(oracle, samples, rng);
        } else {
            mean = monte_carlo_grid_mean(grid, f, K0, samples, rng);
        }
        report.estimate = K0 * mean;
        report.queries = samples;
        report.qubits = 0;
        break;
    }
    case Method::QuantumStatevector: {
        const SummandOracle oracle = make_oracle(grid, f, K0);
        const double delta_y = std::min(splits.sum / K0, 0.999);
        QaeCaps caps{config.enumeration_cap, config.memory_cap_bytes};
        const QaeResult res = estimate_mean(oracle, delta_y, config.repetitions,
                                            QaeMode::Statevector, config.seed, caps);
        report.estimate = K0 * res.estimate;
        report.queries = res.queries;
        report.qubits = res.qubits;
        break;
    }
    case Method::QuantumAnalytic: {
        const double S_true = detail::exact_scaled_grid_mean(grid, f, K0, config.enumeration_cap);
        const double delta_y = std::min(splits.sum / K0, 0.999);
        const int index_qubits = ceil_log2_pow(m, static_cast<std::uint32_t>(d));
        const QaeResult res = estimate_mean_exact_bits(S_true, index_qubits, delta_y,
                                                       config.repetitions, config.seed);
        report.estimate = K0 * res.estimate;
        report.queries = res.queries;
        report.qubits = res.qubits;
        break;
    }
    }

    if (report.exact_value)
        report.observed_error = std::abs(report.estimate - *report.exact_value);
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    return report;
}

} // namespace pathint
