// Parameter sensitivities of the separatrix: z(x) = ds(x)/dxi for
// xi in {alpha, beta, delta}.
//
// Differentiating the slope equation s' = h(x, s; xi) in xi gives the scalar
// linear variational ODE
//   z' = a(x) z + b(x),   a = dh/ds,  b = dh/dxi,  evaluated along y = s(x),
// with initial value z(A) = C = dB/dxi - m dA/dxi (from differentiating
// s(A(xi); xi) = B(xi)).
//
// Both a and b have a simple pole at x = A (the slope equation is singular
// where f vanishes); z(A) = C is exactly the regularity condition, and the
// regular solution has a plain Taylor series there. The integration therefore
// starts a small offset h_start away from A with the series value
//   z(A +- h) = C +- h z1,   z1 = (a0 C + b0) / (1 - a_res),
// where a(x) = a_res/(x-A) + a0 + ... and b0 is the finite part of b; the
// expansion coefficients come from probes at A +- coeff_probe, whose
// half-sum/half-difference cancel the pole terms. Away from A the pole makes
// the homogeneous mode decay in both sweep directions, so the integration is
// self-correcting just like the curve construction.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "lvc/model.hpp"
#include "lvc/separatrix.hpp"

namespace lvc {

// Closed-form derivatives of the saddle coordinates in alpha and beta
// (A and B do not depend on delta). Signs: +, -, -, +.
struct ABDerivatives {
    double dA_dalpha;  //  (beta-1)/(alpha beta-1)^2
    double dB_dalpha;  // -beta(beta-1)/(alpha beta-1)^2
    double dA_dbeta;   // -alpha(alpha-1)/(alpha beta-1)^2
    double dB_dbeta;   //  (alpha-1)/(alpha beta-1)^2
};

ABDerivatives dAB_dparam(const NondimParams& q);

// C = dB/dxi - m dA/dxi; zero for xi = delta.
double initial_value_C(const NondimParams& q, Param xi);

struct SensitivityConfig {
    double h_start = 1e-4;      // series seeding offset from the saddle
    double coeff_probe = 1e-6;  // probe half-width for the expansion coeffs
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
};

struct SensitivitySolution {
    Param param_name = Param::Alpha;
    NondimParams base_params;
    double C = 0.0;                              // z at x = A
    std::vector<std::array<double, 2>> samples;  // (x, z), in input order
};

// Variational coefficients along the curve, exposed for property checks.
// Throws SingularCoefficient when 1 - x - alpha s(x) vanishes at the query
// (cannot happen on a correct curve except at x = A).
double variational_a(const SeparatrixCurve& c, double x);
double variational_b(const SeparatrixCurve& c, Param xi, double x);

// Solves the variational ODE left and right from the saddle and reports z on
// x_grid (entries in (0, x_max]; order preserved). Queries within h_start of
// A use the series directly.
SensitivitySolution separatrix_sensitivity(const SeparatrixCurve& c, Param xi,
                                           const std::vector<double>& x_grid,
                                           const SensitivityConfig& cfg = {});

// Expected monotonicity pattern: s strictly decreasing in alpha, strictly
// increasing in beta; in delta decreasing left of the saddle and increasing
// right of it (matching the delta-derivative of the model curve,
// s* ln(x/A), which changes sign at A).
struct MonotonicityRow {
    double x;
    std::array<double, 3> z;    // z_alpha, z_beta, z_delta
    std::array<bool, 3> ok;     // sign matches the expected pattern
};

struct MonotonicityReport {
    NondimParams params;
    std::vector<MonotonicityRow> rows;
    bool all_ok = false;
    std::string note;
};

MonotonicityReport monotonicity_report(const NondimParams& q,
                                       const std::vector<double>& x_grid,
                                       const SeparatrixBuildConfig& scfg = {},
                                       const SensitivityConfig& cfg = {});

}  // namespace lvc
