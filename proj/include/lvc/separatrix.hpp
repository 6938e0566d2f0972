// The separatrix: the stable manifold of the interior saddle, which divides
// the first quadrant into the two basins of attraction.
//
// In the strong regime the manifold is the graph of a strictly increasing
// function y = s(x) through (0,0) and the saddle (A,B). It is computed by
// integrating the slope equation dy/dx = g/f outward from the saddle along
// the stable eigendirection (the manifold attracts under this sweep, so the
// integration is self-correcting), landing exactly on a fixed knot grid; the
// curve is then a monotone cubic through the knots with the vector-field
// slope attached at each knot.
//
// The closed-form model curve s*(x) = B (x/A)^delta is exact at delta = 1 and
// an approximation otherwise; the integral form
//   s(x) = s*(x) exp( delta * I(x) ),
//   I(x) = integral_A^x [(alpha-1) s(u) - (beta-1) u] / (u (1 - u - alpha s(u))) du
// is exact, so the residual s(x) - s*(x) exp(delta I(x)) measures the
// computed curve's self-consistency.
#pragma once

#include <cstddef>
#include <vector>

#include "lvc/integrator.hpp"
#include "lvc/interp.hpp"
#include "lvc/model.hpp"

namespace lvc {

struct SeparatrixBuildConfig {
    double x_max = 3.0;         // requested right end of the domain
    std::size_t resample_count = 512;  // stored knot count (approximate)
    double eigen_offset = 1e-7;  // seed displacement along the stable direction
    double y_cap = 1e3;          // right branch stops once y exceeds this
    std::vector<double> extra_knots;  // extra abscissas to pin exactly
};

class SeparatrixCurve {
public:
    const NondimParams& params() const { return q_; }
    const SaddleSpectrum& spectrum() const { return sp_; }

    // Right end of the computed domain; at most the requested x_max, smaller
    // when the right branch hit the y ceiling first.
    double x_max() const { return interp_.x_back(); }
    double max_y() const { return interp_.ys().back(); }

    const std::vector<double>& knots_x() const { return interp_.xs(); }
    const std::vector<double>& knots_y() const { return interp_.ys(); }

    // s(x) for x in [0, x_max]; throws OutOfDomain outside.
    double eval(double x) const { return interp_.eval(x); }
    // Inverse on [0, max_y]; throws OutOfDomain outside.
    double eval_inverse(double y) const { return interp_.inverse(y); }

private:
    friend SeparatrixCurve compute_separatrix(const NondimParams&,
                                              const SeparatrixBuildConfig&,
                                              const IntegrationConfig&);
    SeparatrixCurve(NondimParams q, SaddleSpectrum sp, MonotoneCubic interp)
        : q_(q), sp_(sp), interp_(std::move(interp)) {}

    NondimParams q_;
    SaddleSpectrum sp_;
    MonotoneCubic interp_;
};

// Throws RegimeError outside the strong regime, ManifoldEscape if a branch
// leaves its confinement rectangle or stalls.
SeparatrixCurve compute_separatrix(const NondimParams& q,
                                   const SeparatrixBuildConfig& cfg = {},
                                   const IntegrationConfig& icfg = {});

// Closed-form model curve s*(x) = B (x/A)^delta, x >= 0.
double model_separatrix(const NondimParams& q, double x);

// Slope g/f of trajectories through a state; returns the stable-manifold
// slope m within 1e-9 of the saddle (the removable value). Throws
// SingularCoefficient when f vanishes anywhere else.
double slope_field(const State& s, const NondimParams& q);

// Residual of the exact integral form at x in (0, x_max]; zero for the true
// curve up to quadrature error.
double integral_residual(const SeparatrixCurve& curve, double x);

// Independent route to s(x): bisection on the basin classification of (x, y)
// over y. Returns the bracket midpoint once the bracket width is below tol.
// Throws OracleStall if classification becomes undecidable.
double bisection_oracle(const NondimParams& q, double x, double tol = 1e-6,
                        const IntegrationConfig& cfg = {});

}  // namespace lvc
