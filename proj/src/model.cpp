#include "semirel/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semirel/error.hpp"

namespace semirel {

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw NumericalError(std::string("non-finite value for ") + what);
    }
}

namespace {

void require_positive_z(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("z must be positive and finite, got " + std::to_string(z));
    }
}

}  // namespace

void ModelParams::validate() const {
    require_positive_z(z);
    if (!std::isfinite(x_center) || !std::isfinite(p_center)) {
        throw DomainError("initial centers must be finite");
    }
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (dt > kMaxTimeStep) {
        throw DomainError("dt = " + std::to_string(dt) + " exceeds the maximum step " +
                          std::to_string(kMaxTimeStep));
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be >= 0");
    if (n_traj < 1) throw DomainError("n_traj must be >= 1");
}

UnitSystem::UnitSystem(double z) : z_(z), sqrt_z_(0.0) {
    require_positive_z(z);
    sqrt_z_ = std::sqrt(z);
}

double energy(PhasePoint point, double z) {
    require_positive_z(z);
    require_finite(point.x, "x");
    require_finite(point.p, "p");
    return std::sqrt(z * (z + point.p * point.p)) + 0.5 * point.x * point.x;
}

double velocity(double p, double z) {
    require_positive_z(z);
    require_finite(p, "p");
    const double v = p / std::sqrt(z + p * p);
    // Keep |v| < 1 once p^2 swamps z in double precision.
    constexpr double kBelowLight = 1.0 - std::numeric_limits<double>::epsilon() / 2;
    return std::clamp(v, -kBelowLight, kBelowLight);
}

double force(double x) {
    require_finite(x, "x");
    return -x;
}

double dilation_integrand(double p, double z) {
    require_positive_z(z);
    require_finite(p, "p");
    return std::sqrt(z) / std::sqrt(z + p * p);
}

}  // namespace semirel
