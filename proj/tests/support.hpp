// Test-side numerical oracles, independent of the library implementations
// they check.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace testsupport {

/// Composite Simpson rule with n (even) subintervals.
template <class F>
double composite_simpson(F&& f, double a, double b, std::size_t n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        const double x = a + h * static_cast<double>(i);
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
    }
    return sum * h / 3.0;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Least-squares slope of y against x.
inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope: need matching arrays of size >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

inline double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

} // namespace testsupport
