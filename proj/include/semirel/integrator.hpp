#pragma once

// Implicit centered finite-difference scheme for Hamilton's equations:
//
//   p_{i+1} = p_i - (tau/2) (x_{i+1} + x_i)
//   x_{i+1} = x_i + (tau/2) (r(p_{i+1}) + r(p_i)),   r(p) = z p / sqrt(z (z + p^2))
//
// solved per step by simple (Gauss-Seidel ordered) fixed-point iteration
// seeded at (x_i, p_i). Proper time is accumulated with the trapezoid rule on
// the dilation integrand at both step endpoints.

#include <cmath>
#include <cstddef>
#include <utility>

#include "semirel/error.hpp"
#include "semirel/executor.hpp"
#include "semirel/model.hpp"

namespace semirel {

struct StepControls {
    double dt = 0.01;
    /// Relative stopping tolerance on successive fixed-point iterates.
    double fp_tol = 1e-13;
    int fp_max_iter = 50;

    void validate() const;
};

struct TrajectoryState {
    PhasePoint point;
    double t = 0.0;
    double proper_time = 0.0;

    friend bool operator==(const TrajectoryState&, const TrajectoryState&) = default;
};

struct ImplicitSolution {
    PhasePoint point;
    int iterations = 0;
};

/// Solves the implicit pair for one signed step `tau`. Negative `tau` runs the
/// scheme backwards in time.
ImplicitSolution solve_implicit_step(PhasePoint start, double z, double tau, double fp_tol,
                                     int fp_max_iter);

/// Single-trajectory stepper with z-dependent constants cached.
class Stepper {
public:
    Stepper(double z, const StepControls& controls);

    double z() const noexcept { return z_; }
    const StepControls& controls() const noexcept { return controls_; }

    /// Advances by `tau` (0 < tau <= dt).
    TrajectoryState advance(const TrajectoryState& state, double tau) const;
    TrajectoryState advance(const TrajectoryState& state) const {
        return advance(state, controls_.dt);
    }

private:
    double z_;
    double sqrt_z_;
    StepControls controls_;
};

TrajectoryState step(const TrajectoryState& state, double z, const StepControls& controls);

/// Step sequence used to go from `t` to `t_target`: full steps of dt while at
/// least dt (up to a 1e-9 dt slack) remains, then one shortened step for any
/// remainder larger than the slack. The step grid only depends on dt, so
/// splitting a propagation at a grid point gives bitwise identical results.
double next_step_size(double t, double t_target, double dt) noexcept;

/// Advances `state` to `t_target`, calling `observer(previous, current)` after
/// each step.
template <typename Observer>
TrajectoryState propagate(TrajectoryState state, double t_target, const Stepper& stepper,
                          Observer&& observer) {
    if (!(t_target >= state.t)) {
        throw DomainError("propagate: target time precedes the current state");
    }
    const double dt = stepper.controls().dt;
    for (double tau = next_step_size(state.t, t_target, dt); tau > 0.0;
         tau = next_step_size(state.t, t_target, dt)) {
        TrajectoryState next = stepper.advance(state, tau);
        observer(std::as_const(state), std::as_const(next));
        state = next;
    }
    return state;
}

template <typename Observer>
TrajectoryState propagate(const TrajectoryState& state, double t_target, double z,
                          const StepControls& controls, Observer&& observer) {
    return propagate(state, t_target, Stepper(z, controls), std::forward<Observer>(observer));
}

TrajectoryState propagate(const TrajectoryState& state, double t_target, double z,
                          const StepControls& controls);

/// First integral of the momentum equation in scheme units,
/// C1 = x^2 + 2 sqrt(z (z + p^2)) = 2 E / (hbar omega).
double first_integral(const TrajectoryState& state, double z);

/// Advances every trajectory of the ensemble to `t_target`, block-parallel.
void propagate_ensemble(Ensemble& ensemble, double t_target, double z,
                        const StepControls& controls, Executor& executor);

}  // namespace semirel
