#include "lvc/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lvc/errors.hpp"

namespace lvc {

namespace {

void check_grid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2 || x.size() != y.size())
        throw InvalidInput("interpolation needs >= 2 matching knots");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw InvalidInput("knot abscissas must be strictly increasing");
}

bool is_monotone(const std::vector<double>& y, bool& increasing) {
    bool up = true, down = true;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] < y[i - 1]) up = false;
        if (y[i] > y[i - 1]) down = false;
    }
    increasing = up;
    return up || down;
}

}  // namespace

MonotoneCubic MonotoneCubic::with_slopes(std::vector<double> x,
                                         std::vector<double> y,
                                         std::vector<double> slopes) {
    check_grid(x, y);
    if (slopes.size() != x.size())
        throw InvalidInput("one slope per knot required");
    MonotoneCubic m;
    m.x_ = std::move(x);
    m.y_ = std::move(y);
    m.d_ = std::move(slopes);
    if (!is_monotone(m.y_, m.increasing_))
        throw InvalidInput("knot values must be monotone");
    m.clamp_slopes();
    return m;
}

MonotoneCubic MonotoneCubic::estimated(std::vector<double> x,
                                       std::vector<double> y) {
    check_grid(x, y);
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        del[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] == 0.0 || del[i] == 0.0 ||
            (del[i - 1] > 0.0) != (del[i] > 0.0)) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    // Shape-preserving three-point endpoint rule.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d0 == 0.0 || (d > 0.0) != (d0 > 0.0))
            d = 0.0;
        else if ((d0 > 0.0) != (d1 > 0.0) && std::abs(d) > 3.0 * std::abs(d0))
            d = 3.0 * d0;
        return d;
    };
    d[0] = n == 2 ? del[0] : endpoint(h[0], h[1], del[0], del[1]);
    d[n - 1] =
        n == 2 ? del[0] : endpoint(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return with_slopes(std::move(x), std::move(y), std::move(d));
}

void MonotoneCubic::clamp_slopes() {
    // Keep each slope inside [0, 3*min(adjacent chord slopes)] (sign-adjusted
    // for decreasing data); sufficient for piecewise monotonicity.
    const std::size_t n = x_.size();
    const double sign = increasing_ ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lim = std::numeric_limits<double>::infinity();
        if (i > 0)
            lim = std::min(lim,
                           3.0 * sign * (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]));
        if (i + 1 < n)
            lim = std::min(lim,
                           3.0 * sign * (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]));
        double d = sign * d_[i];
        d = std::max(0.0, std::min(d, lim));
        d_[i] = sign * d;
    }
}

std::size_t MonotoneCubic::locate(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double MonotoneCubic::eval(double x) const {
    const double span = x_.back() - x_.front();
    const double snap = 1e-12 * std::max(1.0, std::abs(span));
    if (x < x_.front() - snap || x > x_.back() + snap) {
        std::ostringstream os;
        os << "abscissa " << x << " outside [" << x_.front() << ", "
           << x_.back() << "]";
        throw OutOfDomain(os.str());
    }
    x = std::min(std::max(x, x_.front()), x_.back());
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    const double span = x_.back() - x_.front();
    const double snap = 1e-12 * std::max(1.0, std::abs(span));
    if (x < x_.front() - snap || x > x_.back() + snap)
        throw OutOfDomain("derivative query outside the knot range");
    x = std::min(std::max(x, x_.front()), x_.back());
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double g00 = (6.0 * t2 - 6.0 * t) / h;
    const double g10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double g01 = (-6.0 * t2 + 6.0 * t) / h;
    const double g11 = 3.0 * t2 - 2.0 * t;
    return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double MonotoneCubic::inverse(double y) const {
    const double lo = increasing_ ? y_.front() : y_.back();
    const double hi = increasing_ ? y_.back() : y_.front();
    const double snap = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (y < lo - snap || y > hi + snap) {
        std::ostringstream os;
        os << "ordinate " << y << " outside [" << lo << ", " << hi << "]";
        throw OutOfDomain(os.str());
    }
    y = std::min(std::max(y, lo), hi);
    double a = x_.front(), b = x_.back();
    // eval is monotone, so plain bisection converges unconditionally.
    for (int iter = 0; iter < 200 && b - a > 0.0; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const bool below = increasing_ ? eval(mid) < y : eval(mid) > y;
        (below ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace lvc
