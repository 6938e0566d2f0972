// Trajectory integration of the planar competition flow with stop events.
//
// Wraps the adaptive Dormand-Prince core with the event logic the rest of the
// project needs: stop inside a small ball around a watched equilibrium, stop
// on leaving a half-plane (used to truncate unbounded branches), stop on a
// time budget, and stop on step underflow. States are clamped onto the axes
// when a coordinate falls within abs_tol of zero; both axes are invariant
// lines of the model, so this only removes integration noise.
//
// An undecidable outcome (time budget or underflow before any watched event)
// is an ordinary result, not an error.
#pragma once

#include <optional>
#include <vector>

#include "lvc/model.hpp"

namespace lvc {

enum class Direction { Forward, Backward };

enum class StopReason { ReachedEquilibrium, MaxTime, LeftDomain, StepUnderflow };

const char* to_string(StopReason r);

struct IntegrationConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double max_time = 1e4;            // budget on |t|
    double min_step = 1e-12;
    double equilibrium_radius = 1e-8; // Euclidean stop radius around targets
};

// Throws InvalidInput if tolerances are nonpositive or the stop radius does
// not dominate abs_tol.
void validate(const IntegrationConfig& cfg);

// What to watch while integrating. `targets` are equilibria (stop within
// equilibrium_radius of any); the `*_exceeds` bounds trigger LeftDomain.
struct StopSpec {
    std::vector<State> targets;
    std::optional<double> x_exceeds;
    std::optional<double> y_exceeds;
};

struct TrajectorySample {
    double t;
    State s;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // includes the initial state
    StopReason stop_reason;
    int reached_target = -1;  // index into StopSpec::targets, -1 if none
};

// Integrates from s0 (closed first quadrant) in the given time direction
// until a stop event fires. Time starts at 0 and is signed by the direction.
Trajectory integrate(const State& s0, const NondimParams& q, Direction dir,
                     const IntegrationConfig& cfg, const StopSpec& stop);

enum class BasinLabel { NativeWins, InvaderWins, Undecided };

const char* to_string(BasinLabel label);

// Forward-integrates from an interior initial condition and reports which
// single-species equilibrium captured it: (1,0) -> NativeWins, (0,1) ->
// InvaderWins, neither within the time budget -> Undecided.
BasinLabel classify_initial_condition(const State& s0, const NondimParams& q,
                                      const IntegrationConfig& cfg);

}  // namespace lvc
