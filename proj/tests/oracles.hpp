#pragma once

// Reference values computed independently of the library's algorithms:
// adaptive Gauss-Kronrod quadrature of defining integrals, physical-unit
// formulas, and closed-form harmonic motion.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline double integrate(auto f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

inline double elliptic_K(double m) {
    return integrate([m](double phi) { return 1.0 / std::sqrt(1.0 - m * std::sin(phi) * std::sin(phi)); },
                     0.0, std::numbers::pi / 2);
}

inline double elliptic_E(double m) {
    return integrate([m](double phi) { return std::sqrt(1.0 - m * std::sin(phi) * std::sin(phi)); },
                     0.0, std::numbers::pi / 2);
}

/// Period from the momentum equation u'' = -u / sqrt(1 + u^2), u = p / (m c),
/// whose first integral gives u'^2 = 2 (eps - sqrt(1 + u^2)), eps = E / (m c^2).
/// With u = u_max sin(theta) the quarter period becomes the regular integral
///   int_0^{pi/2} sqrt((eps + sqrt(eps^2 - (eps^2 - 1) cos^2 theta)) / 2) dtheta.
inline double period_by_quadrature(double energy, double z) {
    const double eps = energy / z;
    const auto f = [eps](double th) {
        const double c = std::cos(th);
        return std::sqrt(0.5 * (eps + std::sqrt(eps * eps - (eps * eps - 1.0) * c * c)));
    };
    return 4.0 * integrate(f, 0.0, std::numbers::pi / 2);
}

/// Energy in SI-like physical units with arbitrary m, c, hbar, omega.
inline double physical_energy(double p, double x, double m, double c, double omega) {
    return std::sqrt(p * p * c * c + m * m * c * c * c * c) + 0.5 * m * omega * omega * x * x;
}

/// Non-relativistic harmonic motion in scheme units.
struct Rotation {
    double x, p;
};
inline Rotation harmonic(double x0, double p0, double t) {
    return {x0 * std::cos(t) + p0 * std::sin(t), p0 * std::cos(t) - x0 * std::sin(t)};
}

}  // namespace oracle
