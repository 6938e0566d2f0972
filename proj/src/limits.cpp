#include "lvc/limits.hpp"

#include <algorithm>
#include <cmath>

namespace lvc {

const char* to_string(LimitDirection d) {
    return d == LimitDirection::DeltaToZero ? "delta_to_zero"
                                            : "delta_to_infinity";
}

double slow_manifold_reduced_flow(const NondimParams& q, LimitDirection dir,
                                  double coordinate) {
    validate(q);
    if (dir == LimitDirection::DeltaToZero) {
        if (!(coordinate > 0.0) || !(coordinate < 1.0 / q.alpha))
            throw InvalidInput(
                "reduced-flow coordinate must lie in (0, 1/alpha)");
        return coordinate *
               (1.0 - coordinate - q.beta * (1.0 - q.alpha * coordinate));
    }
    if (!(coordinate > 0.0) || !(coordinate < 1.0 / q.beta))
        throw InvalidInput("reduced-flow coordinate must lie in (0, 1/beta)");
    return coordinate *
           (1.0 - coordinate - q.alpha * (1.0 - q.beta * coordinate));
}

double deviation_from_limit(const NondimParams& q, LimitDirection dir,
                            std::array<double, 2> window,
                            const SeparatrixBuildConfig& cfg,
                            const IntegrationConfig& icfg) {
    require_strong(q);
    if (!(window[0] > 0.0) || !(window[1] > window[0]))
        throw InvalidInput(
            "deviation window must be an interval bounded away from 0");

    const SeparatrixCurve curve = compute_separatrix(q, cfg, icfg);
    const double A = curve.spectrum().saddle.x;
    const double B = curve.spectrum().saddle.y;

    // The distance is piecewise monotone (one sign change at the saddle), so
    // a moderate scan plus the endpoints captures the sup.
    constexpr int n_scan = 256;
    double sup = 0.0;
    if (dir == LimitDirection::DeltaToZero) {
        if (window[1] > curve.x_max() * (1.0 + 1e-12))
            throw OutOfDomain("deviation window exceeds the computed curve");
        for (int i = 0; i <= n_scan; ++i) {
            const double x =
                window[0] + (window[1] - window[0]) * i / n_scan;
            sup = std::max(sup, std::abs(curve.eval(x) - B));
        }
        return sup;
    }
    if (window[1] > curve.max_y())
        throw OutOfDomain("deviation window exceeds the computed curve");
    for (int i = 0; i <= n_scan; ++i) {
        const double y = window[0] + (window[1] - window[0]) * i / n_scan;
        sup = std::max(sup, std::abs(curve.eval_inverse(y) - A));
    }
    return sup;
}

LimitStudy limit_study(const NondimParams& base, LimitDirection dir,
                       std::vector<double> ladder,
                       std::array<double, 2> window,
                       const IntegrationConfig& icfg) {
    require_strong(base);
    if (ladder.empty()) {
        ladder = dir == LimitDirection::DeltaToZero
                     ? std::vector<double>{1.0, 0.3, 0.1, 0.03, 0.01}
                     : std::vector<double>{1.0, 3.0, 10.0, 30.0, 100.0};
    }
    const bool toward_zero = dir == LimitDirection::DeltaToZero;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0) || !std::isfinite(ladder[i]))
            throw InvalidInput("ladder entries must be positive and finite");
        if (i > 0 && !(toward_zero ? ladder[i] < ladder[i - 1]
                                   : ladder[i] > ladder[i - 1]))
            throw InvalidInput(
                "ladder must be strictly monotone toward the limit");
    }

    LimitStudy study;
    study.direction = dir;
    study.window = window;
    study.ladder = ladder;
    study.deviations.reserve(ladder.size());

    const double ab1 = base.alpha * base.beta - 1.0;
    const double A = (base.alpha - 1.0) / ab1;
    for (double d : ladder) {
        NondimParams q = base;
        q.delta = d;
        SeparatrixBuildConfig cfg;
        if (toward_zero) {
            // Only the window in x matters; a shorter right branch is cheaper
            // for small delta.
            cfg.x_max = std::max(A + 0.5, window[1] + 0.2);
        } else {
            // The curve is queried through y = window[1]; stopping shortly
            // above it avoids chasing the steep branch at large delta.
            cfg.y_cap = window[1] + 0.5;
        }
        study.deviations.push_back(
            deviation_from_limit(q, dir, window, cfg, icfg));
    }
    return study;
}

}  // namespace lvc
