#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathint/errors.hpp"
#include "pathint/measure.hpp"
#include "pathint/probit.hpp"
#include "pathint/summation.hpp"

namespace pathint {

/// m^d kept symbolically: the exact 64-bit value when it fits, and always
/// the base-10 magnitude. Grids whose point count exceeds 2^64 can still be
/// described, sampled per axis, and costed; only index-addressed enumeration
/// requires the exact value.
struct PointCount {
    std::optional<std::uint64_t> exact;
    double log10_value = 0.0;

    int digits() const { return static_cast<int>(std::floor(log10_value)) + 1; }

    std::string to_string() const {
        if (exact) return std::to_string(*exact);
        return "~10^" + std::to_string(log10_value);
    }
};

/// ceil(log2(m^d)) without materializing m^d. Exact for the grids here:
/// m is odd, so log2(m) is irrational for m > 1 and the ceiling never sits
/// on a representability edge.
inline int ceil_log2_pow(std::uint64_t m, std::uint32_t d) {
    if (m <= 1 || d == 0) return 0;
    const long double bits =
        static_cast<long double>(d) * std::log2(static_cast<long double>(m));
    return static_cast<int>(std::ceil(bits));
}

inline PointCount pow_point_count(std::uint64_t m, std::uint32_t d) {
    PointCount out;
    out.log10_value = static_cast<double>(d) * std::log10(static_cast<double>(m));
    std::uint64_t acc = 1;
    bool fits = true;
    for (std::uint32_t i = 0; i < d && fits; ++i) {
        if (__builtin_mul_overflow(acc, m, &acc)) fits = false;
    }
    if (fits) out.exact = acc;
    return out;
}

/// Full product grid over the leading d eigencoordinates: axis i carries the
/// m equal-mass midpoint quantiles of N(0, lambda_i), i.e.
/// node[i][j] = sqrt(lambda_i) * gauss_quantile((j - 1/2) / m), j = 1..m.
/// Between consecutive cell boundaries (with -inf/+inf sentinels on the
/// outermost cells) this keeps the representative of smaller magnitude, so
/// each axis is strictly increasing and exactly antisymmetric with the
/// middle node at 0 (m odd). Points are addressed by mixed-radix index with
/// axis 0 as the least significant digit.
class QuantileGrid {
public:
    QuantileGrid(EigenSpectrum spec, std::uint32_t d, std::uint64_t m,
                 std::vector<std::vector<double>> nodes)
        : spec_(std::move(spec)), d_(d), m_(m), nodes_(std::move(nodes)),
          n_(pow_point_count(m, d)) {}

    const EigenSpectrum& spectrum() const { return spec_; }
    std::uint32_t dimension() const { return d_; }
    std::uint64_t nodes_per_axis() const { return m_; }
    const PointCount& point_count() const { return n_; }
    std::span<const double> axis_nodes(std::uint32_t axis) const { return nodes_.at(axis); }

    /// Requires an index-addressable grid (n within 2^64).
    std::uint64_t size() const {
        if (!n_.exact)
            throw cap_exceeded_error("grid holds " + n_.to_string() +
                                     " points; exact indexing needs n < 2^64");
        return *n_.exact;
    }

    /// Mixed-radix decode of a linear index into grid coordinates.
    void point_into(std::uint64_t index, std::span<double> out) const {
        if (index >= size()) throw std::out_of_range("grid point index out of range");
        for (std::uint32_t i = 0; i < d_; ++i) {
            out[i] = nodes_[i][static_cast<std::size_t>(index % m_)];
            index /= m_;
        }
    }

    std::vector<double> point(std::uint64_t index) const {
        std::vector<double> out(d_);
        point_into(index, out);
        return out;
    }

private:
    EigenSpectrum spec_;
    std::uint32_t d_;
    std::uint64_t m_;
    std::vector<std::vector<double>> nodes_;
    PointCount n_;
};

/// Minimal odd node count per axis meeting the worst-case target:
/// smallest odd m >= max(1, 4 K1 (pi * sum_{i<=d} lambda_i)^(1/2) / eps_grid),
/// which makes the worst-case bound below at most eps_grid / 2.
inline std::uint64_t select_node_count(const EigenSpectrum& spec, std::uint32_t d, double K1,
                                       double eps_grid) {
    if (!(eps_grid > 0.0)) throw std::domain_error("select_node_count: eps_grid must be positive");
    if (!(K1 > 0.0)) throw std::domain_error("select_node_count: K1 must be positive");
    const double bound =
        4.0 * K1 * std::sqrt(std::numbers::pi * spec.partial_trace(d)) / eps_grid;
    if (!(bound > 1.0)) return 1;
    auto m = static_cast<std::uint64_t>(std::ceil(bound));
    if (m % 2 == 0) ++m;
    return m;
}

/// Builds the grid. Axis nodes are materialized (O(d*m) memory); the total
/// point count may exceed any enumeration cap and is kept symbolically.
inline QuantileGrid build_grid(const EigenSpectrum& spec, std::uint32_t d, std::uint64_t m,
                               const ProbitConfig& probit = {}) {
    if (d == 0) throw std::invalid_argument("build_grid: dimension must be >= 1");
    if (m == 0 || m % 2 == 0) throw std::invalid_argument("build_grid: m must be odd and >= 1");

    std::vector<std::vector<double>> nodes(d);
    const std::uint64_t mid = (m + 1) / 2;
    for (std::uint32_t i = 0; i < d; ++i) {
        const double scale = std::sqrt(spec.eigenvalue(i + 1));
        std::vector<double>& axis = nodes[i];
        axis.resize(static_cast<std::size_t>(m));
        axis[static_cast<std::size_t>(mid - 1)] = 0.0;
        // Upper half from the positive branch of the quantile; lower half
        // mirrored so antisymmetry holds exactly, bit for bit.
        for (std::uint64_t j = mid + 1; j <= m; ++j) {
            const double u = static_cast<double>(2 * j - 1 - m) / static_cast<double>(m);
            const double q = psi_inv(u, probit);
            axis[static_cast<std::size_t>(j - 1)] = scale * q;
            axis[static_cast<std::size_t>(m - j)] = -scale * q;
        }
    }
    return QuantileGrid(spec, d, m, std::move(nodes));
}

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Deterministic mean of f over every grid point (the worst-case summation
/// algorithm). Enumerates in mixed-radix order with compensated summation.
/// Refuses past the cap: the point count is exponential in the dimension.
template <class F>
double classical_sum(const QuantileGrid& grid, F&& f,
                     std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    const PointCount& n = grid.point_count();
    if (!n.exact || *n.exact > enumeration_cap) {
        throw cap_exceeded_error("classical_sum: grid holds " + n.to_string() +
                                 " points, above the enumeration cap of " +
                                 std::to_string(enumeration_cap));
    }
    const std::uint64_t total = *n.exact;
    const std::uint32_t d = grid.dimension();
    const std::uint64_t m = grid.nodes_per_axis();

    std::vector<std::uint64_t> digit(d, 0);
    std::vector<double> x(d);
    for (std::uint32_t i = 0; i < d; ++i) x[i] = grid.axis_nodes(i)[0];

    KahanSum sum;
    for (std::uint64_t idx = 0;; ++idx) {
        sum.add(f(std::span<const double>(x)));
        if (idx + 1 == total) break;
        for (std::uint32_t i = 0; i < d; ++i) {
            if (++digit[i] < m) {
                x[i] = grid.axis_nodes(i)[static_cast<std::size_t>(digit[i])];
                break;
            }
            digit[i] = 0;
            x[i] = grid.axis_nodes(i)[0];
        }
    }
    return sum.value() / static_cast<double>(total);
}

/// Worst-case error bound of the grid mean over K1-Lipschitz integrands:
/// 2 K1 (pi * sum_{i<=d} lambda_i)^(1/2) / m.
inline double worst_case_bound(const QuantileGrid& grid, double K1) {
    return 2.0 * K1 *
           std::sqrt(std::numbers::pi * grid.spectrum().partial_trace(grid.dimension())) /
           static_cast<double>(grid.nodes_per_axis());
}

} // namespace pathint
