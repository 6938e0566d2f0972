// Adaptive Simpson quadrature.
//
// Plain recursive bisection with the 15x Richardson acceptance test. The
// integrands in this project are smooth except for isolated kinks (the
// clipped latitude integrand) and integrable endpoint behavior, which plain
// adaptivity handles; the depth limit turns genuinely divergent requests into
// a QuadratureFailure instead of a hang.
#pragma once

#include <cmath>

#include "lvc/errors.hpp"

namespace lvc {

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw QuadratureFailure("adaptive Simpson hit its depth limit");
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] (either orientation) to roughly
// abs_tol + rel_tol * |integral|. Throws QuadratureFailure past max_depth
// subdivision levels.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol,
                        double abs_tol, int max_depth = 48) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = abs_tol + rel_tol * std::abs(whole);
    return sign *
           detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace lvc
