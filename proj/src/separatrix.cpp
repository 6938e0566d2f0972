#include "lvc/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lvc/quadrature.hpp"
#include "lvc/rk45.hpp"

namespace lvc {

namespace {

// Trajectory slope dy/dx = g/f with the removable value m at the saddle.
// Shared by the graph integration and the public slope_field.
double slope_value(double x, double y, const NondimParams& q,
                   const SaddleSpectrum& sp, bool throw_on_singular) {
    const double dx = x - sp.saddle.x;
    const double dy = y - sp.saddle.y;
    if (std::sqrt(dx * dx + dy * dy) < 1e-9) return sp.stable_slope;
    const double f = x * (1.0 - x - q.alpha * y);
    if (throw_on_singular && std::abs(f) < 1e-13)
        throw SingularCoefficient("f vanishes away from the saddle");
    const double g = q.delta * (y * (1.0 - y - q.beta * x));
    return g / f;
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(hi);
        return out;
    }
    const double ratio = std::log(hi / lo);
    for (std::size_t j = 0; j < n; ++j)
        out.push_back(lo * std::exp(ratio * static_cast<double>(j) /
                                    static_cast<double>(n - 1)));
    out.front() = lo;
    out.back() = hi;
    return out;
}

struct GraphRHS {
    NondimParams q;
    SaddleSpectrum sp;
    Vec<1> operator()(double x, const Vec<1>& y) const {
        return {slope_value(x, y[0], q, sp, /*throw_on_singular=*/false)};
    }
};

// Integrates the slope equation from the seed through `targets` (given in
// sweep order), recording y at each. Enforces the confinement band
// [y_lo - 1e-6, y_hi + 1e-6] on every accepted step. Stops early once a
// recorded value exceeds y_stop (right branch ceiling); returns how many
// targets were reached.
std::size_t sweep_branch(const NondimParams& q, const SaddleSpectrum& sp,
                         double seed_x, double seed_y,
                         const std::vector<double>& targets, double y_lo,
                         double y_hi, double y_stop,
                         const IntegrationConfig& icfg, const char* side,
                         std::vector<double>& values) {
    StepControlOptions opt;
    opt.rel_tol = icfg.rel_tol;
    // Pure relative control: the branch tails vanish like x^delta, and any
    // absolute floor would turn them into noise once y drops below it.
    opt.abs_tol = std::numeric_limits<double>::min();
    opt.min_step = icfg.min_step;

    AdaptiveDP5<1, GraphRHS> stepper(GraphRHS{q, sp}, opt);
    const double dir = (!targets.empty() && targets.front() < seed_x) ? -1.0 : 1.0;
    stepper.start(seed_x, {seed_y}, dir);

    const double band_lo = y_lo - 1e-6, band_hi = y_hi + 1e-6;
    auto check = [&](const StepRecord<1>& rec) {
        if (rec.y1[0] < band_lo || rec.y1[0] > band_hi) {
            std::ostringstream os;
            os << side << " separatrix branch left its confinement band at x="
               << rec.t0 + rec.h << ", y=" << rec.y1[0];
            throw ManifoldEscape(os.str());
        }
    };

    // Below this the step controller can no longer resolve y relative to
    // itself (rel_tol * y < DBL_MIN) and landings would jitter at denormal
    // scale. The flow preserves y = 0 exactly, so snapping there is safe.
    const double y_snap = std::numeric_limits<double>::min() / opt.rel_tol;

    values.clear();
    values.reserve(targets.size());
    for (double x_t : targets) {
        if (stepper.integrate_to(x_t, check) == StepStatus::Underflow) {
            std::ostringstream os;
            os << side << " separatrix branch stalled (step underflow) near x="
               << stepper.t();
            throw ManifoldEscape(os.str());
        }
        if (std::abs(stepper.y()[0]) < y_snap) stepper.reset_state({0.0});
        values.push_back(stepper.y()[0]);
        if (values.back() >= y_stop) break;
    }
    return values.size();
}

}  // namespace

SeparatrixCurve compute_separatrix(const NondimParams& q,
                                   const SeparatrixBuildConfig& cfg,
                                   const IntegrationConfig& icfg) {
    require_strong(q);
    validate(icfg);
    const SaddleSpectrum sp = saddle_spectrum(q);
    const double A = sp.saddle.x, B = sp.saddle.y;

    if (!(cfg.x_max > A))
        throw InvalidInput("x_max must exceed the saddle abscissa");
    if (cfg.resample_count < 16)
        throw InvalidInput("resample_count must be at least 16");
    if (!(cfg.eigen_offset > 0.0) || cfg.eigen_offset > 1e-3)
        throw InvalidInput("eigen_offset must lie in (0, 1e-3]");
    if (!(cfg.y_cap > B))
        throw InvalidInput("y_cap must exceed the saddle ordinate");

    // Knot grid: log-clustered toward 0 (where the curve has a power-law
    // corner for delta != 1) and toward A from both sides (where queries are
    // most demanding), plus the exact anchors 0 and A.
    const double x_lo = A * 1e-5;
    const double off_min = std::min({1e-4, A / 8.0, (cfg.x_max - A) / 8.0});
    const std::size_t n_half = (cfg.resample_count - 2) / 2;
    const std::size_t n_ll = n_half / 2;
    const std::size_t n_lu = n_half - n_ll;
    const std::size_t n_right = cfg.resample_count - 2 - n_half;

    std::vector<double> xs;
    xs.reserve(cfg.resample_count + cfg.extra_knots.size() + 2);
    xs.push_back(0.0);
    for (double v : log_space(x_lo, A / 2.0, n_ll)) xs.push_back(v);
    {
        auto offs = log_space(off_min, A / 2.0, n_lu + 1);
        offs.pop_back();  // A/2 already present
        for (auto it = offs.rbegin(); it != offs.rend(); ++it)
            xs.push_back(A - *it);
    }
    xs.push_back(A);
    for (double v : log_space(off_min, cfg.x_max - A, n_right))
        xs.push_back(A + v);

    for (double v : cfg.extra_knots) {
        if (!std::isfinite(v) || v <= 0.0 || v > cfg.x_max)
            throw InvalidInput("extra knots must lie in (0, x_max]");
        // Points inside the seed offset of the saddle are unreachable by the
        // sweeps; the interpolant covers them anyway.
        if (std::abs(v - A) <= std::max(2.0 * cfg.eigen_offset, 1e-9)) continue;
        xs.push_back(v);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) {
                             return b - a <= 1e-12 * std::max(1.0, std::abs(b));
                         }),
             xs.end());

    const std::size_t idx_a = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), A) - xs.begin());
    // xs[idx_a] == A by construction (A inserted exactly, dedupe keeps it).

    // Seed on the stable eigendirection, eigen_offset away from the saddle.
    const double norm = std::sqrt(sp.stable_dir[0] * sp.stable_dir[0] +
                                  sp.stable_dir[1] * sp.stable_dir[1]);
    const double ux = sp.stable_dir[0] / norm, uy = sp.stable_dir[1] / norm;

    std::vector<double> left_targets(xs.begin() + 1, xs.begin() + idx_a);
    std::reverse(left_targets.begin(), left_targets.end());
    std::vector<double> right_targets(xs.begin() + idx_a + 1, xs.end());

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> left_vals, right_vals;
    sweep_branch(q, sp, A - cfg.eigen_offset * ux, B - cfg.eigen_offset * uy,
                 left_targets, 0.0, B, inf, icfg, "left", left_vals);
    const std::size_t right_n = sweep_branch(
        q, sp, A + cfg.eigen_offset * ux, B + cfg.eigen_offset * uy,
        right_targets, B, inf, cfg.y_cap, icfg, "right", right_vals);

    std::vector<double> knots_x, knots_y, slopes;
    const std::size_t n_knots = 2 + left_vals.size() + right_n;
    knots_x.reserve(n_knots);
    knots_y.reserve(n_knots);
    slopes.reserve(n_knots);

    knots_x.push_back(0.0);
    knots_y.push_back(0.0);
    slopes.push_back(0.0);  // placeholder, fixed below
    for (std::size_t i = 0; i < left_vals.size(); ++i) {
        const double x = left_targets[left_vals.size() - 1 - i];
        const double y = left_vals[left_vals.size() - 1 - i];
        knots_x.push_back(x);
        knots_y.push_back(y);
        slopes.push_back(slope_value(x, y, q, sp, true));
    }
    knots_x.push_back(A);
    knots_y.push_back(B);
    slopes.push_back(sp.stable_slope);
    for (std::size_t i = 0; i < right_n; ++i) {
        knots_x.push_back(right_targets[i]);
        knots_y.push_back(right_vals[i]);
        slopes.push_back(slope_value(right_targets[i], right_vals[i], q, sp, true));
    }
    // Origin slope: first chord (exact for delta = 1; the sub-x_lo strip is
    // only covered by the anchored first interval anyway).
    slopes.front() = (knots_y[1] - knots_y[0]) / (knots_x[1] - knots_x[0]);

    return SeparatrixCurve(
        q, sp,
        MonotoneCubic::with_slopes(std::move(knots_x), std::move(knots_y),
                                   std::move(slopes)));
}

double model_separatrix(const NondimParams& q, double x) {
    require_strong(q);
    if (!(x >= 0.0)) throw InvalidInput("model separatrix needs x >= 0");
    const double denom = q.alpha * q.beta - 1.0;
    const double a = (q.alpha - 1.0) / denom;
    const double b = (q.beta - 1.0) / denom;
    return b * std::pow(x / a, q.delta);
}

double slope_field(const State& s, const NondimParams& q) {
    const SaddleSpectrum sp = saddle_spectrum(q);
    return slope_value(s.x, s.y, q, sp, /*throw_on_singular=*/true);
}

double integral_residual(const SeparatrixCurve& curve, double x) {
    const NondimParams& q = curve.params();
    const SaddleSpectrum& sp = curve.spectrum();
    const double A = sp.saddle.x, B = sp.saddle.y, m = sp.stable_slope;
    if (!(x > 0.0)) throw InvalidInput("residual needs x > 0");
    if (x > curve.x_max() * (1.0 + 1e-12))
        throw OutOfDomain("residual query beyond the computed domain");

    // Integrand of the exact integral form, written in offsets from the
    // saddle so the double root at u = A cancels exactly instead of by
    // subtraction; the value at A itself is the removable limit.
    const double limit_at_a =
        ((q.beta - 1.0) - (q.alpha - 1.0) * m) / (A * (1.0 + q.alpha * m));
    auto integrand = [&](double u) {
        const double du = u - A;
        if (std::abs(du) <= 1e-7) return limit_at_a;
        const double ds = curve.eval(u) - B;
        const double num = (q.alpha - 1.0) * ds - (q.beta - 1.0) * du;
        const double den = u * (-du - q.alpha * ds);
        return num / den;
    };
    const double integral =
        adaptive_simpson(integrand, A, x, 1e-10, 1e-13, 48);
    return curve.eval(x) -
           model_separatrix(q, x) * std::exp(q.delta * integral);
}

double bisection_oracle(const NondimParams& q, double x, double tol,
                        const IntegrationConfig& cfg) {
    require_strong(q);
    if (!(x > 0.0)) throw InvalidInput("oracle needs x > 0");
    if (!(tol > 0.0)) throw InvalidInput("oracle tolerance must be positive");

    auto classify = [&](double y) {
        return classify_initial_condition({x, y}, q, cfg);
    };

    // Grow the ceiling until the point is in the competitor's basin. Any
    // y below the separatrix classifies NativeWins, so 0 is a valid floor.
    double lo = 0.0, hi = 1.0;
    for (;;) {
        const BasinLabel lab = classify(hi);
        if (lab == BasinLabel::InvaderWins) break;
        if (lab == BasinLabel::NativeWins) lo = hi;
        hi *= 2.0;
        if (hi > 1e9)
            throw OracleStall("no competitor-basin ceiling found below 1e9");
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        BasinLabel lab = classify(mid);
        if (lab == BasinLabel::Undecided) {
            // Point is numerically on the separatrix: probe off-center once.
            const double alt = lo + 0.75 * (hi - lo);
            lab = classify(alt);
            if (lab == BasinLabel::Undecided) {
                std::ostringstream os;
                os << "undecidable bracket [" << lo << ", " << hi << "] at x="
                   << x;
                throw OracleStall(os.str());
            }
            (lab == BasinLabel::NativeWins ? lo : hi) = alt;
            continue;
        }
        (lab == BasinLabel::NativeWins ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace lvc
