#include "semirel/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "semirel/error.hpp"

namespace semirel {

namespace {

constexpr double kAgmTol = 4 * std::numeric_limits<double>::epsilon();
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

}  // namespace

double elliptic_K(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
        throw DomainError("elliptic_K: parameter must lie in [0, 1), got " + std::to_string(m));
    }
    double a = 1.0;
    double g = std::sqrt(1.0 - m);
    while (std::abs(a - g) > kAgmTol * a) {
        const double a_next = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = a_next;
    }
    return kPi / (a + g);
}

double elliptic_E(double m) {
    if (!(m >= 0.0 && m <= 1.0)) {
        throw DomainError("elliptic_E: parameter must lie in [0, 1], got " + std::to_string(m));
    }
    if (m == 1.0) return 1.0;
    // E = K (1 - sum_n 2^(n-1) c_n^2), c_0^2 = m, c_{n+1} = (a_n - g_n) / 2.
    double a = 1.0;
    double g = std::sqrt(1.0 - m);
    double weight = 0.5;
    double sum = weight * m;
    while (std::abs(a - g) > kAgmTol * a) {
        const double c = 0.5 * (a - g);
        const double a_next = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = a_next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    const double K = kPi / (a + g);
    return K * (1.0 - sum);
}

double period(double energy, double z) {
    if (!(z > 0.0)) throw DomainError("period: z must be positive");
    if (!(energy >= z) || !std::isfinite(energy)) {
        throw DomainError("period: energy " + std::to_string(energy) +
                          " is below the rest energy " + std::to_string(z));
    }
    const double k = (energy - z) / (energy + z);
    const double s = std::sqrt(energy / z + 1.0);
    return 4.0 * kSqrt2 * s * elliptic_E(k) - 4.0 * kSqrt2 / s * elliptic_K(k);
}

double amplitude_for_energy(double energy, double z) {
    if (!(z > 0.0)) throw DomainError("z must be positive");
    if (!(energy >= z)) throw DomainError("energy is below the rest energy");
    return std::sqrt(2.0 * (energy - z));
}

double period_numeric(double x0, double p0, double z, const StepControls& controls,
                      int periods) {
    if (x0 == 0.0 && p0 == 0.0) {
        throw DomainError("period_numeric: the origin is a fixed point");
    }
    if (periods < 1) throw DomainError("period_numeric: need at least one period");
    const Stepper stepper(z, controls);
    const double estimate = period(energy({x0, p0}, z), z);
    const double give_up_after = 10.0 * estimate;

    TrajectoryState state{{x0, p0}, 0.0, 0.0};
    int direction = 0;  // +1 upward, -1 downward; fixed by the first crossing
    int crossings = 0;
    double first = 0.0;
    double last = 0.0;
    double since = 0.0;  // time of the last crossing (or the start)
    while (crossings <= periods) {
        const TrajectoryState next = stepper.advance(state);
        const double pa = state.point.p;
        const double pb = next.point.p;
        // The starting point itself never counts as a crossing.
        const bool up = pa < 0.0 && pb >= 0.0;
        const bool down = pa > 0.0 && pb <= 0.0;
        if ((up || down) && (direction == 0 || (up ? 1 : -1) == direction)) {
            direction = up ? 1 : -1;
            const double tc = state.t + (next.t - state.t) * (-pa) / (pb - pa);
            if (crossings == 0) first = tc;
            last = tc;
            since = tc;
            ++crossings;
        }
        state = next;
        if (state.t - since > give_up_after) {
            throw NumericalError("period_numeric: no momentum zero crossing within 10x the "
                                 "analytic period estimate");
        }
    }
    return (last - first) / periods;
}

PeriodScanRow period_scan_point(double energy, double z, const StepControls& controls) {
    if (!(energy > z)) {
        throw DomainError("period scan energies must exceed the rest energy z");
    }
    PeriodScanRow row;
    row.energy = energy;
    row.period_analytic = period(energy, z);
    row.period_numeric = period_numeric(amplitude_for_energy(energy, z), 0.0, z, controls);
    row.rel_err = std::abs(row.period_numeric - row.period_analytic) / row.period_analytic;
    return row;
}

double nonrel_wigner(double x, double p, double t, double x_tilde, double p_tilde) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double xc = x_tilde * c + p_tilde * s;
    const double pc = p_tilde * c - x_tilde * s;
    const double dx = x - xc;
    const double dp = p - pc;
    return std::exp(-dx * dx - dp * dp) / kPi;
}

NonrelMoments nonrel_moments(double t, double x_tilde, double p_tilde, double z) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    NonrelMoments m;
    m.mean_x = x_tilde * c + p_tilde * s;
    m.mean_p = p_tilde * c - x_tilde * s;
    m.var_x = 0.5;
    m.var_p = 0.5;
    m.energy = 0.5 + 0.5 * p_tilde * p_tilde + 0.5 * x_tilde * x_tilde + z;
    return m;
}

}  // namespace semirel
