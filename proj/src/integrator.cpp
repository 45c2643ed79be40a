#include "semirel/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace semirel {

void StepControls::validate() const {
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (dt > kMaxTimeStep) throw DomainError("dt exceeds the maximum step 0.1");
    if (!(fp_tol > 0.0)) throw DomainError("fp_tol must be positive");
    if (fp_max_iter < 1) throw DomainError("fp_max_iter must be >= 1");
}

namespace {

ImplicitSolution solve(PhasePoint start, double z, double sqrt_z, double tau, double fp_tol,
                       int fp_max_iter) {
    const double half = 0.5 * tau;
    const double rate0 = detail::coordinate_rate(start.p, z, sqrt_z);
    double x = start.x;
    double p = start.p;
    double update = 0.0;
    for (int it = 1; it <= fp_max_iter; ++it) {
        const double p_next = start.p - half * (x + start.x);
        const double x_next = start.x + half * (detail::coordinate_rate(p_next, z, sqrt_z) + rate0);
        update = std::max(std::abs(x_next - x), std::abs(p_next - p));
        x = x_next;
        p = p_next;
        if (update <= fp_tol * (1.0 + std::abs(x) + std::abs(p))) {
            if (!std::isfinite(x) || !std::isfinite(p)) break;
            return {{x, p}, it};
        }
    }
    if (!std::isfinite(x) || !std::isfinite(p)) {
        throw NumericalError("implicit step produced a non-finite phase point");
    }
    std::ostringstream msg;
    msg << "implicit step did not converge in " << fp_max_iter << " iterations (last update "
        << update << ", start x=" << start.x << " p=" << start.p << ", tau=" << tau
        << ", z=" << z << "); reduce dt";
    throw ConvergenceError(msg.str(), fp_max_iter, update);
}

}  // namespace

ImplicitSolution solve_implicit_step(PhasePoint start, double z, double tau, double fp_tol,
                                     int fp_max_iter) {
    if (!(z > 0.0)) throw DomainError("z must be positive");
    require_finite(start.x, "x");
    require_finite(start.p, "p");
    return solve(start, z, std::sqrt(z), tau, fp_tol, fp_max_iter);
}

Stepper::Stepper(double z, const StepControls& controls)
    : z_(z), sqrt_z_(0.0), controls_(controls) {
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("z must be positive and finite");
    controls_.validate();
    sqrt_z_ = std::sqrt(z);
}

TrajectoryState Stepper::advance(const TrajectoryState& state, double tau) const {
    const ImplicitSolution sol =
        solve(state.point, z_, sqrt_z_, tau, controls_.fp_tol, controls_.fp_max_iter);
    const double g0 = detail::proper_time_rate(state.point.p, z_, sqrt_z_);
    const double g1 = detail::proper_time_rate(sol.point.p, z_, sqrt_z_);
    return {sol.point, state.t + tau, state.proper_time + 0.5 * tau * (g0 + g1)};
}

TrajectoryState step(const TrajectoryState& state, double z, const StepControls& controls) {
    require_finite(state.point.x, "x");
    require_finite(state.point.p, "p");
    return Stepper(z, controls).advance(state);
}

double next_step_size(double t, double t_target, double dt) noexcept {
    const double slack = 1e-9 * dt;
    const double remaining = t_target - t;
    if (remaining >= dt - slack) return dt;
    if (remaining > slack) return remaining;
    return 0.0;
}

TrajectoryState propagate(const TrajectoryState& state, double t_target, double z,
                          const StepControls& controls) {
    return propagate(state, t_target, Stepper(z, controls),
                     [](const TrajectoryState&, const TrajectoryState&) {});
}

double first_integral(const TrajectoryState& state, double z) {
    if (!(z > 0.0)) throw DomainError("z must be positive");
    const PhasePoint pt = state.point;
    require_finite(pt.x, "x");
    require_finite(pt.p, "p");
    return pt.x * pt.x + 2.0 * std::sqrt(z * (z + pt.p * pt.p));
}

void propagate_ensemble(Ensemble& ensemble, double t_target, double z,
                        const StepControls& controls, Executor& executor) {
    const std::size_t n = ensemble.size();
    if (n == 0) return;
    const Stepper stepper(z, controls);
    const auto noop = [](const TrajectoryState&, const TrajectoryState&) {};
    std::vector<double> block_time(block_count(n), ensemble.t);
    executor.for_each_block(n, [&](const BlockRange& r) {
        double t = ensemble.t;
        for (std::size_t i = r.begin; i < r.end; ++i) {
            TrajectoryState s{ensemble.points[i], ensemble.t, ensemble.proper_time[i]};
            s = propagate(s, t_target, stepper, noop);
            ensemble.points[i] = s.point;
            ensemble.proper_time[i] = s.proper_time;
            t = s.t;
        }
        block_time[r.index] = t;
    });
    ensemble.t = block_time.front();
}

}  // namespace semirel
