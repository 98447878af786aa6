#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathint/errors.hpp"
#include "pathint/oracle.hpp"
#include "pathint/rng.hpp"
#include "pathint/summation.hpp"

namespace pathint {

enum class QaeMode { Statevector, AnalyticDistribution };

namespace detail {

inline int ceil_log2_u64(std::uint64_t n) {
    if (n <= 1) return 0;
    const int floor_log = 63 - std::countl_zero(n);
    return std::has_single_bit(n) ? floor_log : floor_log + 1;
}

/// In-place forward DFT, X[j] = sum_x v[x] e^{-2 pi i j x / M}, radix-2.
inline void fft_pow2(std::vector<std::complex<double>>& v) {
    const std::size_t M = v.size();
    for (std::size_t i = 1, j = 0; i < M; ++i) {
        std::size_t bit = M >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= M; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < M; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = v[i + k];
                const std::complex<double> t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
}

/// Fejer-type phase-estimation kernel F_M(delta) = sin^2(M pi d) / (M^2
/// sin^2(pi d)) with the integer-argument limit F = 1; 1-periodic.
inline double phase_kernel(std::uint64_t M, double delta) {
    const double r = delta - std::round(delta);
    if (std::abs(r) < 1e-12) return 1.0;
    const double Md = static_cast<double>(M);
    const double s = std::sin(std::numbers::pi * r);
    const double sM = std::sin(Md * std::numbers::pi * r);
    return (sM * sM) / (Md * Md * s * s);
}

inline void normalize_law(std::vector<double>& law) {
    KahanSum total;
    for (double p : law) total.add(p);
    const double t = total.value();
    if (!(t > 0.0)) throw std::runtime_error("outcome law does not normalize");
    for (double& p : law) p /= t;
}

} // namespace detail

/// Phase grid size for a mean-error target delta: M = 2^ceil(log2(4 pi /
/// delta)). This makes 2(pi sqrt(a(1-a))/M + pi^2/M^2) <= delta for every
/// amplitude a, so a single repetition meets |estimate - S_n| <= delta with
/// probability at least 8/pi^2 (> 3/4).
inline std::uint64_t choose_phase_grid(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("choose_phase_grid: delta must lie in (0,1)");
    const double target = 4.0 * std::numbers::pi / delta;
    std::uint64_t M = 2;
    while (static_cast<double>(M) < target) {
        if (M >= (std::uint64_t{1} << 62))
            throw std::domain_error("choose_phase_grid: delta too small");
        M <<= 1;
    }
    return M;
}

inline std::uint64_t queries_per_repetition(std::uint64_t M) { return 2 * (M - 1) + 1; }

inline int qubit_count_from_bits(int index_qubits, std::uint64_t M) {
    return index_qubits + std::countr_zero(M) + 1;
}

inline int qubit_count(std::uint64_t n, std::uint64_t M) {
    return qubit_count_from_bits(detail::ceil_log2_u64(n), M);
}

/// Closed-form outcome law of M-point phase estimation over the Grover
/// iterate for a mean S_true in [-1, 1]: with a = (S_true+1)/2 and
/// omega = asin(sqrt(a))/pi, P(j) = (F_M(j/M - omega) + F_M(j/M + omega))/2,
/// renormalized to machine precision.
inline std::vector<double> analytic_law(double S_true, std::uint64_t M) {
    if (!(S_true >= -1.0 && S_true <= 1.0))
        throw std::domain_error("analytic_law: mean must lie in [-1,1]");
    if (M < 2 || !std::has_single_bit(M))
        throw std::invalid_argument("analytic_law: M must be a power of two >= 2");
    const double a = std::clamp(0.5 * (S_true + 1.0), 0.0, 1.0);
    const double omega = std::asin(std::sqrt(a)) / std::numbers::pi;
    std::vector<double> law(static_cast<std::size_t>(M));
    for (std::uint64_t j = 0; j < M; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(M);
        law[static_cast<std::size_t>(j)] =
            0.5 * (detail::phase_kernel(M, x - omega) + detail::phase_kernel(M, x + omega));
    }
    detail::normalize_law(law);
    return law;
}

/// Outcome law from an explicit statevector simulation. The register holds
/// the index (ceil(log2 n) qubits) and one rotated ancilla; the preparation
/// encodes sin^2(theta_i) = (y_i + 1)/2 over the true n indices, so the
/// good-state amplitude is exactly (S_n + 1)/2 with no padding bias. The
/// M-point phase estimation applies the Grover iterate
/// Q = (2|phi><phi| - I)(I - 2 P_good) as M-1 sequential reflections and
/// reads the phase register through an exact DFT.
///
/// The simulation consumes every oracle value once to build the state;
/// reported query counts elsewhere follow the quantum cost model
/// (2 per iterate + 1 preparation), not this classical bookkeeping.
inline std::vector<double> statevector_law(const SummandOracle& oracle, std::uint64_t M,
                                           std::uint64_t memory_cap_bytes = std::uint64_t{2} << 30) {
    if (M < 2 || !std::has_single_bit(M))
        throw std::invalid_argument("statevector_law: M must be a power of two >= 2");
    const std::uint64_t n = oracle.size();
    const std::uint64_t dim = 2 * n;
    const std::uint64_t bytes = M * dim * sizeof(double);
    if (bytes > memory_cap_bytes)
        throw cap_exceeded_error(
            "statevector_law: " + std::to_string(bytes) +
            " bytes of state exceed the memory cap; use AnalyticDistribution mode");

    // |phi> (all amplitudes real, and they stay real under both reflections).
    std::vector<double> phi(static_cast<std::size_t>(dim));
    const double root_inv_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        const double y = oracle.value(i);
        const double good = std::clamp(0.5 * (y + 1.0), 0.0, 1.0);
        phi[static_cast<std::size_t>(2 * i)] = std::sqrt(1.0 - good) * root_inv_n;
        phi[static_cast<std::size_t>(2 * i + 1)] = std::sqrt(good) * root_inv_n;
    }

    std::vector<std::vector<double>> powers;
    powers.reserve(static_cast<std::size_t>(M));
    powers.push_back(phi);
    std::vector<double> cur = phi;
    for (std::uint64_t x = 1; x < M; ++x) {
        // I - 2 P_good: flip the sign of the ancilla-1 components.
        for (std::uint64_t i = 0; i < n; ++i) cur[static_cast<std::size_t>(2 * i + 1)] *= -1.0;
        // 2|phi><phi| - I.
        KahanSum inner;
        for (std::uint64_t l = 0; l < dim; ++l)
            inner.add(phi[static_cast<std::size_t>(l)] * cur[static_cast<std::size_t>(l)]);
        const double twice = 2.0 * inner.value();
        for (std::uint64_t l = 0; l < dim; ++l) {
            auto& c = cur[static_cast<std::size_t>(l)];
            c = twice * phi[static_cast<std::size_t>(l)] - c;
        }
        powers.push_back(cur);
    }

    // P(j) = sum_l |M^-1 sum_x e^{-2 pi i j x / M} Q^x phi[l]|^2.
    std::vector<double> law(static_cast<std::size_t>(M), 0.0);
    std::vector<std::complex<double>> col(static_cast<std::size_t>(M));
    const double inv_m2 = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
    for (std::uint64_t l = 0; l < dim; ++l) {
        for (std::uint64_t x = 0; x < M; ++x)
            col[static_cast<std::size_t>(x)] = powers[static_cast<std::size_t>(x)][static_cast<std::size_t>(l)];
        detail::fft_pow2(col);
        for (std::uint64_t j = 0; j < M; ++j)
            law[static_cast<std::size_t>(j)] += std::norm(col[static_cast<std::size_t>(j)]) * inv_m2;
    }
    detail::normalize_law(law);
    return law;
}

inline std::uint64_t sample_outcome(const std::vector<double>& law, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t j = 0; j < law.size(); ++j) {
        acc += law[j];
        if (u < acc) return static_cast<std::uint64_t>(j);
    }
    return static_cast<std::uint64_t>(law.size() - 1);
}

/// Result of a quantum-summation run, with exact resource accounting:
/// queries = R * (2(M-1) + 1) under the declared convention (two oracle
/// queries per Grover iterate - preparation and its inverse - plus one for
/// the initial preparation), qubits = ceil(log2 n) + log2 M + 1.
struct QaeResult {
    double estimate = 0.0;
    std::uint64_t queries = 0;
    int qubits = 0;
    std::vector<std::uint64_t> outcomes;
    std::vector<double> amplitude_estimates;
    std::uint64_t M = 0;
    int repetitions = 1;
    QaeMode mode = QaeMode::AnalyticDistribution;
    std::uint64_t seed = 0;
    double delta = 0.0;

    static constexpr const char* kQueryConvention =
        "2 queries per Grover iterate (preparation + inverse) plus 1 initial preparation";
};

struct QaeCaps {
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::uint64_t memory_cap_bytes = std::uint64_t{2} << 30;
};

namespace detail {

inline QaeResult run_from_law(const std::vector<double>& law, int index_qubits, std::uint64_t M,
                              double delta, int repetitions, QaeMode mode, std::uint64_t seed) {
    if (repetitions < 1 || repetitions % 2 == 0)
        throw std::invalid_argument("quantum summation: repetitions must be odd and >= 1");
    QaeResult res;
    res.M = M;
    res.repetitions = repetitions;
    res.mode = mode;
    res.seed = seed;
    res.delta = delta;
    res.qubits = qubit_count_from_bits(index_qubits, M);
    res.queries = static_cast<std::uint64_t>(repetitions) * queries_per_repetition(M);

    const Rng base(seed);
    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        Rng rng = base.split(static_cast<std::uint64_t>(r));
        const std::uint64_t j = sample_outcome(law, rng);
        const double s = std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(M));
        const double a_hat = s * s;
        res.outcomes.push_back(j);
        res.amplitude_estimates.push_back(a_hat);
        estimates.push_back(2.0 * a_hat - 1.0);
    }
    std::vector<double> sorted = estimates;
    std::nth_element(sorted.begin(), sorted.begin() + repetitions / 2, sorted.end());
    res.estimate = sorted[static_cast<std::size_t>(repetitions / 2)];
    return res;
}

} // namespace detail

/// Quantum summation of the oracle mean to target accuracy delta: one phase
/// estimation per repetition, median of the per-repetition estimates
/// 2 sin^2(pi j / M) - 1. A single repetition meets the target with
/// probability >= 3/4; the median of R repetitions amplifies that.
inline QaeResult estimate_mean(const SummandOracle& oracle, double delta, int repetitions,
                               QaeMode mode, std::uint64_t seed, const QaeCaps& caps = {}) {
    const std::uint64_t M = choose_phase_grid(delta);
    std::vector<double> law;
    if (mode == QaeMode::Statevector) {
        law = statevector_law(oracle, M, caps.memory_cap_bytes);
    } else {
        law = analytic_law(oracle_mean(oracle, caps.enumeration_cap), M);
    }
    return detail::run_from_law(law, detail::ceil_log2_u64(oracle.size()), M, delta, repetitions,
                                mode, seed);
}

/// Analytic-mode quantum summation from a known exact mean and an explicit
/// index-register width; reaches sizes no statevector (or 64-bit index) fits
/// by sampling the closed-form outcome law directly.
inline QaeResult estimate_mean_exact_bits(double S_true, int index_qubits, double delta,
                                          int repetitions, std::uint64_t seed) {
    const std::uint64_t M = choose_phase_grid(delta);
    return detail::run_from_law(analytic_law(S_true, M), index_qubits, M, delta, repetitions,
                                QaeMode::AnalyticDistribution, seed);
}

inline QaeResult estimate_mean_exact_source(double S_true, std::uint64_t n, double delta,
                                            int repetitions, std::uint64_t seed) {
    return estimate_mean_exact_bits(S_true, detail::ceil_log2_u64(n), delta, repetitions, seed);
}

/// Summands in [-B, B]: rescale to y/B, estimate at delta/B, multiply back.
/// The composed estimate meets |result - S_n| <= delta.
inline QaeResult estimate_mean_rescaled(const SummandOracle& oracle, double B, double delta,
                                        int repetitions, QaeMode mode, std::uint64_t seed,
                                        const QaeCaps& caps = {}) {
    if (!(B > 0.0)) throw std::domain_error("estimate_mean_rescaled: B must be positive");
    SummandOracle scaled(
        oracle.size(),
        [oracle, B](std::uint64_t i) {
            const double v = oracle.value(i);
            if (!(std::abs(v) <= B))
                throw bound_violation_error("summand " + std::to_string(i) +
                                            " escapes the rescale bound " + std::to_string(B));
            return v / B;
        },
        1.0);
    QaeResult res = estimate_mean(scaled, delta / B, repetitions, mode, seed, caps);
    res.estimate *= B;
    res.delta = delta;
    return res;
}

} // namespace pathint
