#pragma once

#include "semirel/integrator.hpp"
#include "semirel/model.hpp"

namespace semirel {

/// Complete elliptic integral of the first kind in parameter convention,
/// K(m) = int_0^{pi/2} dphi / sqrt(1 - m sin^2 phi), for 0 <= m < 1.
/// Computed as pi / (2 AGM(1, sqrt(1 - m))).
double elliptic_K(double m);

/// Complete elliptic integral of the second kind,
/// E(m) = int_0^{pi/2} sqrt(1 - m sin^2 phi) dphi, for 0 <= m <= 1.
double elliptic_E(double m);

/// Oscillation period (units 1/omega) of a trajectory with energy E (units
/// hbar omega, rest energy z included):
///
///   T = 4 sqrt(2) s E(k) - (4 sqrt(2) / s) K(k),
///   s = sqrt(E/z + 1),  k = (E - z) / (E + z).
///
/// T(z) = 2 pi; T grows like sqrt(E) for E >> z.
double period(double energy, double z);

/// Initial coordinate x0 >= 0 of the p0 = 0 trajectory with energy E.
double amplitude_for_energy(double energy, double z);

/// Period measured on a propagated trajectory: mean spacing of successive
/// zero crossings of p in the direction of the first crossing, linearly
/// interpolated inside the bracketing step, over `periods` periods.
double period_numeric(double x0, double p0, double z, const StepControls& controls,
                      int periods = 3);

struct PeriodScanRow {
    double energy = 0.0;
    double period_analytic = 0.0;
    double period_numeric = 0.0;
    double rel_err = 0.0;
};

/// Compares both period routes for the p0 = 0 trajectory of energy E > z.
PeriodScanRow period_scan_point(double energy, double z, const StepControls& controls);

/// Closed-form Wigner function of the non-relativistic oscillator started in
/// the coherent state centred at (x_tilde, p_tilde): a unit-normalised
/// Gaussian with variances 1/2 whose centre rotates clockwise by angle t.
double nonrel_wigner(double x, double p, double t, double x_tilde, double p_tilde);

struct NonrelMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    /// Includes the rest energy z.
    double energy = 0.0;
};

NonrelMoments nonrel_moments(double t, double x_tilde, double p_tilde, double z);

}  // namespace semirel
