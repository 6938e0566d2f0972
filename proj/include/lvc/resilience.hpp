// Resilience measures of the native state, built on the separatrix curve.
//
// Precariousness Pr(x0) = s(x0): the smallest competitor density that tips
// the outcome when the native population sits at density x0. Latitude: the
// fraction of the unit square of initial conditions from which the native
// species survives, i.e. the integral of min(s(x), 1) over [0, 1]. The
// integrand is clipped at 1 because latitude is the *area* of the native
// basin inside [0,1]^2; where the curve exits the square the whole column
// belongs to the native basin.
//
// A Monte-Carlo estimate of latitude doubles as an independent oracle: it
// never touches the curve, only forward integration of random points.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lvc/integrator.hpp"
#include "lvc/separatrix.hpp"

namespace lvc {

struct LatitudeMC {
    double estimate = 0.0;   // NativeWins fraction among decided points
    double std_error = 0.0;  // binomial standard error
    std::size_t n = 0;       // points drawn
    std::uint64_t seed = 0;
    std::size_t undecided = 0;  // excluded from the estimate, reported
};

// s(x0) for x0 in [0,1] within the curve's domain.
double precariousness(const SeparatrixCurve& c, double x0);

// Integral of min(s(x), 1) over [0,1]; in [0,1]. Requires the curve to reach
// x=1 or to exceed y=1 (columns past a y-capped right end count as 1 by
// monotonicity); throws OutOfDomain otherwise.
double latitude(const SeparatrixCurve& c);

// Classifies n points drawn uniformly in (0,1)^2. Each point's coordinates
// come from a counter-based generator keyed by (seed, index), so the result
// is independent of evaluation order and bit-identical across runs and
// thread counts. Requires n >= 100.
LatitudeMC latitude_monte_carlo(const NondimParams& q, std::size_t n,
                                std::uint64_t seed,
                                const IntegrationConfig& icfg = {});

// Basin labels at the cell centers of a resolution x resolution grid over
// [0,1]^2, row-major: entry i*resolution + j is the cell centered at
// ((i+0.5)/resolution, (j+0.5)/resolution). Requires resolution >= 2.
std::vector<BasinLabel> basin_grid(const NondimParams& q,
                                   std::size_t resolution,
                                   const IntegrationConfig& icfg = {});

struct ResilienceReport {
    NondimParams params;
    std::vector<std::array<double, 2>> precariousness_samples;  // (x0, Pr)
    double latitude_quadrature = 0.0;
    LatitudeMC latitude_mc;
    std::size_t basin_resolution = 0;  // 0 when no grid was requested
    std::vector<BasinLabel> basin;     // row-major, see basin_grid
};

// Assembles the full report. x0_grid entries must lie in [0,1] and within
// the curve's domain; basin_resolution = 0 skips the grid.
ResilienceReport resilience_report(const SeparatrixCurve& c,
                                   const std::vector<double>& x0_grid,
                                   std::size_t mc_n, std::uint64_t seed,
                                   const IntegrationConfig& icfg = {},
                                   std::size_t basin_resolution = 0);

}  // namespace lvc
