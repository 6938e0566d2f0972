// Embedded Dormand-Prince 5(4) stepper with PI step-size control.
//
// Header-only and templated on the state dimension so the same core drives
// the planar flow (N = 2), the separatrix graph equation and the variational
// sensitivity equation (N = 1). The controller follows the classic scheme:
// scaled RMS error norm, accept when err <= 1, step factor
// safe * err^-expo1 * err_prev^pi_beta clipped to [1/5, 10], growth inhibited
// right after a rejection. The pair is FSAL: the last stage of an accepted
// step is the first stage of the next.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace lvc {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace dp5 {

// Butcher tableau of the Dormand-Prince 5(4) pair.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                        a76 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights (error estimator).
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Controller constants (PI controller with beta = 0.04).
inline constexpr double pi_beta = 0.04;
inline constexpr double expo1 = 0.2 - pi_beta * 0.75;
inline constexpr double safe = 0.9;
inline constexpr double fac_min = 0.2;   // strongest shrink per step
inline constexpr double fac_max = 10.0;  // strongest growth per step

}  // namespace dp5

struct StepControlOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double min_step = 1e-12;  // magnitude; going below it is an underflow
    double max_step = std::numeric_limits<double>::infinity();
};

// One accepted step with the data an observer needs: endpoint states and
// endpoint derivatives (exact, thanks to FSAL).
template <std::size_t N>
struct StepRecord {
    double t0 = 0.0;
    double h = 0.0;
    Vec<N> y0{}, y1{};
    Vec<N> f0{}, f1{};
};

enum class StepStatus { Ok, Underflow };

template <std::size_t N, class RHS>
class AdaptiveDP5 {
public:
    AdaptiveDP5(RHS rhs, StepControlOptions opt) : rhs_(rhs), opt_(opt) {}

    // Starts a run at (t0, y0) heading in `direction` (+1 or -1); picks the
    // initial step from the standard curvature probe.
    void start(double t0, const Vec<N>& y0, double direction) {
        t_ = t0;
        y_ = y0;
        dir_ = direction;
        f1_ = rhs_(t_, y_);
        fac_old_ = 1e-4;
        just_rejected_ = false;
        h_ = initial_step();
    }

    double t() const { return t_; }
    const Vec<N>& y() const { return y_; }
    const Vec<N>& f() const { return f1_; }

    // The caller adjusted the state in place (e.g. axis clamping); refresh the
    // cached derivative so FSAL stays consistent.
    void reset_state(const Vec<N>& y) {
        y_ = y;
        f1_ = rhs_(t_, y_);
    }

    // Caps the magnitude of the next trial step.
    void cap_next_step(double cap) {
        if (std::abs(h_) > cap) h_ = dir_ * cap;
    }

    double next_step_magnitude() const { return std::abs(h_); }

    // Advances by one accepted step of magnitude at most `limit` (pass
    // infinity for no limit beyond the controller's own choice). On success
    // fills `rec` and updates the internal state.
    StepStatus step(double limit, StepRecord<N>& rec) {
        for (;;) {
            double h = h_;
            if (std::abs(h) > opt_.max_step) h = dir_ * opt_.max_step;
            bool truncated = false;
            if (std::abs(h) > limit) {
                h = dir_ * limit;
                truncated = true;
            }
            if (std::abs(h) < opt_.min_step) return StepStatus::Underflow;

            Vec<N> y1, f1, err_vec;
            stages(h, y1, f1, err_vec);
            const double err = error_norm(y1, err_vec);

            if (err <= 1.0) {
                rec.t0 = t_;
                rec.h = h;
                rec.y0 = y_;
                rec.y1 = y1;
                rec.f0 = f1_;
                rec.f1 = f1;
                t_ += h;
                y_ = y1;
                f1_ = f1;
                double fac = controller_factor(err);
                if (just_rejected_) fac = std::min(fac, 1.0);
                just_rejected_ = false;
                fac_old_ = std::max(err, 1e-4);
                // Grow from the controller's own choice, not the truncation.
                h_ = (truncated ? h_ : h) * fac;
                return StepStatus::Ok;
            }
            just_rejected_ = true;
            const double fac =
                std::min(1.0, controller_factor(err));
            h_ = h * std::max(dp5::fac_min, fac);
        }
    }

    // Drives the state to exactly t = target, invoking obs(rec) per accepted
    // step. Requires target to lie in the current direction.
    template <class Observer>
    StepStatus integrate_to(double target, Observer&& obs) {
        constexpr double snap = 1e3 * std::numeric_limits<double>::epsilon();
        while (dir_ * (target - t_) >
               snap * std::max(1.0, std::abs(target))) {
            StepRecord<N> rec;
            const StepStatus st = step(std::abs(target - t_), rec);
            if (st != StepStatus::Ok) return st;
            obs(rec);
        }
        t_ = target;
        return StepStatus::Ok;
    }

private:
    double initial_step() const {
        const double inf = std::numeric_limits<double>::infinity();
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
            d0 = std::max(d0, std::abs(y_[i]) / sc);
            d1 = std::max(d1, std::abs(f1_[i]) / sc);
        }
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
        h0 = std::min(h0, opt_.max_step);
        // Explicit Euler probe of the derivative's variation.
        Vec<N> y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + dir_ * h0 * f1_[i];
        const Vec<N> f1 = rhs_(t_ + dir_ * h0, y1);
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
            d2 = std::max(d2, std::abs(f1[i] - f1_[i]) / sc);
        }
        d2 /= h0;
        double h1 = inf;
        if (std::max(d1, d2) > 1e-15)
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        const double h = std::min({100.0 * h0, h1, opt_.max_step});
        return dir_ * std::max(h, opt_.min_step);
    }

    void stages(double h, Vec<N>& y1, Vec<N>& f1, Vec<N>& err_vec) const {
        using namespace dp5;
        Vec<N> w;
        const Vec<N>& k1 = f1_;
        for (std::size_t i = 0; i < N; ++i) w[i] = y_[i] + h * a21 * k1[i];
        const Vec<N> k2 = rhs_(t_ + c2 * h, w);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec<N> k3 = rhs_(t_ + c3 * h, w);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec<N> k4 = rhs_(t_ + c4 * h, w);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] +
                   h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec<N> k5 = rhs_(t_ + c5 * h, w);
        for (std::size_t i = 0; i < N; ++i)
            w[i] = y_[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
        const Vec<N> k6 = rhs_(t_ + h, w);
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y_[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                                 a75 * k5[i] + a76 * k6[i]);
        f1 = rhs_(t_ + h, y1);  // FSAL stage
        for (std::size_t i = 0; i < N; ++i)
            err_vec[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * f1[i]);
    }

    double error_norm(const Vec<N>& y1, const Vec<N>& err_vec) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc =
                opt_.abs_tol +
                opt_.rel_tol * std::max(std::abs(y_[i]), std::abs(y1[i]));
            const double r = err_vec[i] / sc;
            sum += r * r;
        }
        return std::sqrt(sum / static_cast<double>(N));
    }

    // New-step factor of the PI controller, clipped to [fac_min, fac_max].
    double controller_factor(double err) const {
        using namespace dp5;
        const double fac11 = std::pow(std::max(err, 1e-30), expo1);
        double fac = fac11 / std::pow(fac_old_, pi_beta);
        fac = safe / fac;
        return std::max(fac_min, std::min(fac_max, fac));
    }

    RHS rhs_;
    StepControlOptions opt_;
    double t_ = 0.0;
    Vec<N> y_{};
    Vec<N> f1_{};  // derivative at (t_, y_)
    double dir_ = 1.0;
    double h_ = 0.0;
    double fac_old_ = 1e-4;
    bool just_rejected_ = false;
};

}  // namespace lvc
