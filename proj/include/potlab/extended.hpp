#pragma once

// Extended nonnegative reals [0, +inf] on top of IEEE doubles, with the
// measure-theory convention 0 * inf = 0, plus a fixed-order compensated sum.

#include <cmath>
#include <limits>

namespace potlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
/// Floor for relative-error denominators.
inline constexpr double kTiny = 1e-300;

/// Product with 0 * inf = 0.
inline double ext_mul(double a, double b) noexcept
{
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

/// x^e for x in [0, inf]. inf^e is inf, 1 or 0 for e > 0, e == 0, e < 0;
/// 0^e is 0, 1 or inf likewise.
inline double ext_pow(double x, double e) noexcept
{
    if (e == 0.0) return 1.0;
    if (std::isinf(x)) return e > 0.0 ? kInf : 0.0;
    if (x == 0.0) return e > 0.0 ? 0.0 : kInf;
    return std::pow(x, e);
}

/// Neumaier summation. Any +inf term makes the result +inf; terms are
/// accumulated strictly in call order so results are reproducible.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        if (std::isinf(x)) {
            infinite_ = true;
            return;
        }
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const noexcept { return infinite_ ? kInf : sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    bool infinite_ = false;
};

} // namespace potlab
