#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pathint/grid.hpp"
#include "pathint/oracle.hpp"
#include "pathint/qae.hpp"
#include "pathint/rng.hpp"
#include "pathint/summation.hpp"
#include "pathint/truncate.hpp"

namespace pathint {

/// Monte Carlo mean: N i.i.d. uniform-index draws from the oracle, each with
/// probability 1/n, averaged. Exactly N oracle queries.
inline double monte_carlo_mean(const SummandOracle& oracle, std::uint64_t N, Rng& rng) {
    if (N == 0) throw std::invalid_argument("monte_carlo_mean: N must be >= 1");
    KahanSum s;
    for (std::uint64_t i = 0; i < N; ++i) s.add(oracle.value(rng.uniform_index(oracle.size())));
    return s.value() / static_cast<double>(N);
}

/// Monte Carlo over grids too large to index linearly: a uniform grid point
/// is a tuple of independent uniform per-axis digits, so sampling needs no
/// 64-bit linear index. Evaluates f/K0 at N such points.
inline double monte_carlo_grid_mean(const QuantileGrid& grid, const Integrand& f, double K0,
                                    std::uint64_t N, Rng& rng) {
    if (N == 0) throw std::invalid_argument("monte_carlo_grid_mean: N must be >= 1");
    const std::uint32_t d = grid.dimension();
    const std::uint64_t m = grid.nodes_per_axis();
    std::vector<double> x(d);
    KahanSum s;
    for (std::uint64_t i = 0; i < N; ++i) {
        for (std::uint32_t axis = 0; axis < d; ++axis)
            x[axis] = grid.axis_nodes(axis)[static_cast<std::size_t>(rng.uniform_index(m))];
        s.add(f.evaluate(x) / K0);
    }
    return s.value() / static_cast<double>(N);
}

/// One row of the resource comparison at accuracy eps: grid shape from the
/// closed-form dimension bound (truncation budget split*eps, grid budget
/// (1-split)*eps), the worst-case point count (kept symbolic when
/// astronomically large), the Chebyshev Monte Carlo sample count
/// ceil((2 K0/eps)^2) for a 3/4-probability summation at eps, and the
/// quantum plan 2(M-1)+1 queries at summand accuracy eps/K0.
struct ComplexityRow {
    double eps = 0.0;
    std::uint64_t d = 0;
    std::uint64_t m = 0;
    PointCount n_worst;
    std::uint64_t mc_samples = 0;
    std::uint64_t quantum_queries = 0;
    int qubits = 0;
};

inline ComplexityRow predict_resources(const EigenSpectrum& spec, const SmoothnessClass& cls,
                                       double K0, double eps, double split = 0.5) {
    if (!(eps > 0.0)) throw std::domain_error("predict_resources: eps must be positive");
    if (!(split > 0.0 && split < 1.0))
        throw std::domain_error("predict_resources: split must lie in (0,1)");
    if (!(K0 > 0.0)) throw std::domain_error("predict_resources: K0 must be positive");

    ComplexityRow row;
    row.eps = eps;
    row.d = dimension_upper(spec, cls, split * eps);
    row.m = select_node_count(spec, static_cast<std::uint32_t>(row.d), cls.K1(),
                              (1.0 - split) * eps);
    row.n_worst = pow_point_count(row.m, static_cast<std::uint32_t>(row.d));

    const double delta_y = std::min(eps / K0, 0.999); // summand-scale target, kept in (0,1)
    const std::uint64_t M = choose_phase_grid(delta_y);
    row.quantum_queries = queries_per_repetition(M);
    row.qubits = qubit_count_from_bits(ceil_log2_pow(row.m, static_cast<std::uint32_t>(row.d)), M);

    const double mc = std::ceil((2.0 * K0 / eps) * (2.0 * K0 / eps));
    row.mc_samples = static_cast<std::uint64_t>(mc);
    return row;
}

} // namespace pathint
