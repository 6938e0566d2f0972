// Monotone piecewise-cubic Hermite interpolation.
//
// Knot slopes either come from the caller (when the true derivative is known,
// e.g. from a vector field along a trajectory) or are estimated with the
// weighted-harmonic-mean rule. Either way every slope is clamped into the
// region that makes each cubic piece monotone between its knots, so the
// interpolant can never overshoot the data.
#pragma once

#include <cstddef>
#include <vector>

namespace lvc {

class MonotoneCubic {
public:
    // Data must have strictly increasing x and monotone (non-decreasing or
    // non-increasing) y. Supplied slopes are clamped for monotonicity.
    static MonotoneCubic with_slopes(std::vector<double> x,
                                     std::vector<double> y,
                                     std::vector<double> slopes);

    // Same, with slopes estimated from the data (shape-preserving
    // three-point endpoint rule, weighted harmonic mean inside).
    static MonotoneCubic estimated(std::vector<double> x,
                                   std::vector<double> y);

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }
    const std::vector<double>& slopes() const { return d_; }

    // Throws OutOfDomain outside [x_front, x_back] (beyond a relative snap
    // tolerance of ~1e-12).
    double eval(double x) const;
    double derivative(double x) const;

    // Inverse of a strictly monotone interpolant; y must lie between the
    // first and last knot values. Bisection to near machine precision.
    double inverse(double y) const;

private:
    MonotoneCubic() = default;
    void clamp_slopes();
    std::size_t locate(double x) const;

    std::vector<double> x_, y_, d_;
    bool increasing_ = true;
};

}  // namespace lvc
