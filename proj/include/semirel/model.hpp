#pragma once

// Dimensionless semi-relativistic harmonic oscillator.
//
// Scheme units: x_m = sqrt(z) (omega/c) x, p_m = c p / (hbar omega sqrt(z)),
// t_m = omega t, with z = m c^2 / (hbar omega). In these variables
//
//     H / (hbar omega) = sqrt(z (z + p_m^2)) + x_m^2 / 2
//
// and Hamilton's equations read dx_m/dt_m = z p_m / sqrt(z (z + p_m^2)),
// dp_m/dt_m = -x_m. Presentation ("physical") units set hbar = omega = c = 1,
// so m = z, x = x_m / sqrt(z), p = sqrt(z) p_m, energies in hbar omega,
// velocities in c and times in 1/omega.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace semirel {

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Model definition in scheme units.
struct ModelParams {
    double z = 1.0;
    double x_center = 0.0;
    double p_center = 0.0;
    double dt = 0.01;
    double t_end = 10.0;
    std::size_t n_traj = 1;
    std::uint64_t seed = 0;

    /// Throws DomainError naming the first violated invariant.
    void validate() const;
};

inline constexpr double kMaxTimeStep = 0.1;

/// Conversions between scheme units and presentation units for a given z.
class UnitSystem {
public:
    explicit UnitSystem(double z);

    double z() const noexcept { return z_; }
    /// Rest energy m c^2 in units of hbar omega.
    double rest_energy() const noexcept { return z_; }

    double x_to_physical(double x_m) const noexcept { return x_m / sqrt_z_; }
    double x_from_physical(double x) const noexcept { return x * sqrt_z_; }
    double p_to_physical(double p_m) const noexcept { return p_m * sqrt_z_; }
    double p_from_physical(double p) const noexcept { return p / sqrt_z_; }
    /// Mass in presentation units (hbar = omega = c = 1).
    double mass() const noexcept { return z_; }

    PhasePoint to_physical(PhasePoint pt) const noexcept {
        return {x_to_physical(pt.x), p_to_physical(pt.p)};
    }
    PhasePoint from_physical(PhasePoint pt) const noexcept {
        return {x_from_physical(pt.x), p_from_physical(pt.p)};
    }

private:
    double z_;
    double sqrt_z_;
};

/// Total energy E / (hbar omega), rest energy included.
double energy(PhasePoint point, double z);

/// Velocity in units of c.
double velocity(double p, double z);

/// dp_m/dt_m for the harmonic potential.
double force(double x);

/// sqrt(1 - v^2/c^2) = sqrt(z / (z + p^2)), the proper-time rate.
double dilation_integrand(double p, double z);

/// Phase points plus the accumulated proper time of each trajectory.
/// All trajectories share the lab time `t`.
struct Ensemble {
    std::vector<PhasePoint> points;
    std::vector<double> proper_time;
    double t = 0.0;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

namespace detail {

// Unchecked kernels shared by the hot loops.

/// dx_m/dt_m = z p / sqrt(z (z + p^2)) = sqrt(z) p / sqrt(z + p^2).
inline double coordinate_rate(double p, double z, double sqrt_z) noexcept {
    return sqrt_z * p / std::sqrt(z + p * p);
}

inline double proper_time_rate(double p, double z, double sqrt_z) noexcept {
    return sqrt_z / std::sqrt(z + p * p);
}

}  // namespace detail

/// Throws NumericalError if `value` is NaN or infinite.
void require_finite(double value, const char* what);

}  // namespace semirel
