// Singular-perturbation limits of the separatrix.
//
// As delta -> 0 the competitor is the slow species: trajectories collapse
// onto the slow manifold 1 - x - alpha y = 0 and the separatrix flattens
// toward the horizontal line y = B. As delta -> infinity the roles swap
// (1 - y - beta x = 0) and the separatrix steepens toward the vertical line
// x = A. Both claims are checked quantitatively: the sup-distance between
// the computed curve and the limiting line, measured over a window bounded
// away from the origin (the limit sets contain the origin as an isolated
// point, so convergence cannot be uniform near it), must shrink along a
// ladder of delta values.
#pragma once

#include <array>
#include <vector>

#include "lvc/integrator.hpp"
#include "lvc/model.hpp"
#include "lvc/separatrix.hpp"

namespace lvc {

enum class LimitDirection { DeltaToZero, DeltaToInfinity };

const char* to_string(LimitDirection d);

// One-dimensional vector field of the reduced dynamics on the slow manifold:
// for DeltaToZero, dy/dt = y(1 - y - beta(1 - alpha y)) at coordinate y in
// (0, 1/alpha); for DeltaToInfinity, dx/dt = x(1 - x - alpha(1 - beta x)) at
// coordinate x in (0, 1/beta). The unique interior zero is B resp. A.
double slow_manifold_reduced_flow(const NondimParams& q, LimitDirection dir,
                                  double coordinate);

// Sup-distance between the computed curve and the limiting line over the
// window: sup |s(x) - B| for x in window (DeltaToZero), or
// sup |s^{-1}(y) - A| for y in window (DeltaToInfinity). Throws OutOfDomain
// when the window exceeds the computed curve.
double deviation_from_limit(const NondimParams& q, LimitDirection dir,
                            std::array<double, 2> window,
                            const SeparatrixBuildConfig& cfg = {},
                            const IntegrationConfig& icfg = {});

struct LimitStudy {
    LimitDirection direction = LimitDirection::DeltaToZero;
    std::array<double, 2> window{0.2, 0.8};
    std::vector<double> ladder;      // delta values, monotone toward the limit
    std::vector<double> deviations;  // one per ladder entry
};

// Runs deviation_from_limit along a delta ladder (base_params' delta is
// replaced by each entry). An empty ladder picks the default:
// {1, 0.3, 0.1, 0.03, 0.01} toward zero, {1, 3, 10, 30, 100} toward
// infinity. The ladder must be strictly monotone toward the limit.
LimitStudy limit_study(const NondimParams& base, LimitDirection dir,
                       std::vector<double> ladder = {},
                       std::array<double, 2> window = {0.2, 0.8},
                       const IntegrationConfig& icfg = {});

}  // namespace lvc
