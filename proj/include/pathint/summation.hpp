#pragma once

#include <cstdint>

namespace pathint {

/// Kahan compensated accumulator. Keeps rounding error at a few ulp
/// independently of the number of terms.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }

    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace pathint
