#include "lvc/integrator.hpp"

#include <cmath>
#include <limits>

#include "lvc/rk45.hpp"

namespace lvc {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::ReachedEquilibrium: return "ReachedEquilibrium";
        case StopReason::MaxTime: return "MaxTime";
        case StopReason::LeftDomain: return "LeftDomain";
        case StopReason::StepUnderflow: return "StepUnderflow";
    }
    return "?";
}

const char* to_string(BasinLabel label) {
    switch (label) {
        case BasinLabel::NativeWins: return "NativeWins";
        case BasinLabel::InvaderWins: return "InvaderWins";
        case BasinLabel::Undecided: return "Undecided";
    }
    return "?";
}

void validate(const IntegrationConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw InvalidInput("integration tolerances must be positive");
    if (!(cfg.max_time > 0.0))
        throw InvalidInput("max_time must be positive");
    if (!(cfg.min_step > 0.0))
        throw InvalidInput("min_step must be positive");
    if (!(cfg.equilibrium_radius > cfg.abs_tol))
        throw InvalidInput("equilibrium_radius must exceed abs_tol");
}

namespace {

struct FlowRHS {
    NondimParams q;
    Vec<2> operator()(double, const Vec<2>& v) const {
        return {v[0] * (1.0 - v[0] - q.alpha * v[1]),
                q.delta * (v[1] * (1.0 - v[1] - q.beta * v[0]))};
    }
};

int hit_target(const Vec<2>& v, const StopSpec& stop, double radius) {
    for (std::size_t i = 0; i < stop.targets.size(); ++i) {
        const double dx = v[0] - stop.targets[i].x;
        const double dy = v[1] - stop.targets[i].y;
        if (std::sqrt(dx * dx + dy * dy) < radius)
            return static_cast<int>(i);
    }
    return -1;
}

bool left_domain(const Vec<2>& v, const StopSpec& stop) {
    if (stop.x_exceeds && v[0] >= *stop.x_exceeds) return true;
    if (stop.y_exceeds && v[1] >= *stop.y_exceeds) return true;
    return false;
}

// Snap coordinates within abs_tol of an axis to exactly zero. Returns whether
// anything changed (the cached derivative must then be refreshed).
bool clamp_axes(Vec<2>& v, double abs_tol) {
    bool changed = false;
    for (double& c : v) {
        if (c != 0.0 && std::abs(c) < abs_tol) {
            c = 0.0;
            changed = true;
        }
    }
    return changed;
}

Trajectory run(const State& s0, const NondimParams& q, Direction dir,
               const IntegrationConfig& cfg, const StopSpec& stop,
               bool record) {
    validate(q);
    validate(cfg);
    if (!std::isfinite(s0.x) || !std::isfinite(s0.y) || s0.x < 0.0 ||
        s0.y < 0.0)
        throw InvalidInput("initial state must lie in the closed first quadrant");

    StepControlOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.min_step = cfg.min_step;
    // Guard the controller for extreme timescale ratios.
    if (q.delta < 1e-3 || q.delta > 1e3)
        opt.max_step = 0.1 / std::max(1.0, q.delta);

    AdaptiveDP5<2, FlowRHS> stepper(FlowRHS{q}, opt);
    const double direction = dir == Direction::Forward ? 1.0 : -1.0;
    Vec<2> v{s0.x, s0.y};
    stepper.start(0.0, v, direction);

    Trajectory traj;
    auto push = [&](double t, const Vec<2>& s) {
        if (record || traj.samples.empty())
            traj.samples.push_back({t, {s[0], s[1]}});
        else
            traj.samples.back() = {t, {s[0], s[1]}};
    };
    push(0.0, v);

    traj.reached_target = hit_target(v, stop, cfg.equilibrium_radius);
    if (traj.reached_target >= 0) {
        traj.stop_reason = StopReason::ReachedEquilibrium;
        return traj;
    }
    if (left_domain(v, stop)) {
        traj.stop_reason = StopReason::LeftDomain;
        return traj;
    }

    constexpr long max_steps = 5'000'000;
    for (long n = 0; n < max_steps; ++n) {
        const double remaining = cfg.max_time - std::abs(stepper.t());
        if (remaining <= 0.0) {
            traj.stop_reason = StopReason::MaxTime;
            return traj;
        }
        StepRecord<2> rec;
        if (stepper.step(remaining, rec) == StepStatus::Underflow) {
            traj.stop_reason = StopReason::StepUnderflow;
            return traj;
        }
        Vec<2> cur = stepper.y();
        if (clamp_axes(cur, cfg.abs_tol)) stepper.reset_state(cur);
        push(stepper.t(), cur);

        traj.reached_target = hit_target(cur, stop, cfg.equilibrium_radius);
        if (traj.reached_target >= 0) {
            traj.stop_reason = StopReason::ReachedEquilibrium;
            return traj;
        }
        if (left_domain(cur, stop)) {
            traj.stop_reason = StopReason::LeftDomain;
            return traj;
        }
        if (std::abs(stepper.t()) >= cfg.max_time) {
            traj.stop_reason = StopReason::MaxTime;
            return traj;
        }
    }
    throw NumericalError("integration exceeded the step budget");
}

}  // namespace

Trajectory integrate(const State& s0, const NondimParams& q, Direction dir,
                     const IntegrationConfig& cfg, const StopSpec& stop) {
    return run(s0, q, dir, cfg, stop, /*record=*/true);
}

BasinLabel classify_initial_condition(const State& s0, const NondimParams& q,
                                      const IntegrationConfig& cfg) {
    if (!(s0.x > 0.0) || !(s0.y > 0.0))
        throw InvalidInput(
            "classification needs an interior initial condition");
    StopSpec stop;
    stop.targets = {{1.0, 0.0}, {0.0, 1.0}};
    const Trajectory traj =
        run(s0, q, Direction::Forward, cfg, stop, /*record=*/false);
    if (traj.stop_reason == StopReason::ReachedEquilibrium) {
        if (traj.reached_target == 0) return BasinLabel::NativeWins;
        if (traj.reached_target == 1) return BasinLabel::InvaderWins;
    }
    return BasinLabel::Undecided;
}

}  // namespace lvc
