#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "semirel/error.hpp"
#include "semirel/model.hpp"

using namespace semirel;

TEST(Energy, RestEnergyAtOrigin) { EXPECT_DOUBLE_EQ(energy({0.0, 0.0}, 1.0), 1.0); }

TEST(Energy, PotentialTerm) { EXPECT_NEAR(energy({2.0, 0.0}, 0.1), 2.1, 1e-15); }

TEST(Energy, MatchesPhysicalUnits) {
    EXPECT_NEAR(energy({0.0, 1.0}, 1.0), 1.41421356237309505, 1e-15);

    // Arbitrary physical constants; scheme energy times hbar omega must agree.
    const double m = 2.0, c = 3.0, hbar = 0.5, omega = 1.5;
    const double z = m * c * c / (hbar * omega);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double p = u(gen), x = u(gen);
        const double p_m = c * p / (hbar * omega * std::sqrt(z));
        const double x_m = std::sqrt(z) * omega * x / c;
        const double expected = oracle::physical_energy(p, x, m, c, omega) / (hbar * omega);
        EXPECT_NEAR(energy({x_m, p_m}, z), expected, 1e-12 * expected);
    }
}

TEST(Energy, NonRelativisticExpansion) {
    for (double z : {0.1, 1.0, 100.0}) {
        for (double frac : {1e-3, 5e-4, 1e-4}) {
            const double p = frac * std::sqrt(z);
            const double x = 0.7;
            const double kinetic = energy({x, p}, z) - z - 0.5 * x * x;
            // p^2 / (2 m) in scheme units is p_m^2 / 2.
            EXPECT_NEAR(kinetic, 0.5 * p * p, 1e-6 * 0.5 * p * p + 1e-15) << z;
        }
    }
}

TEST(Energy, EvenInBothCoordinates) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(gen), p = u(gen);
        const double e = energy({x, p}, 0.3);
        EXPECT_EQ(e, energy({-x, p}, 0.3));
        EXPECT_EQ(e, energy({x, -p}, 0.3));
        EXPECT_GE(e, 0.3);
    }
}

TEST(Energy, RejectsNonFinite) {
    EXPECT_THROW(energy({std::nan(""), 0.0}, 1.0), NumericalError);
    EXPECT_THROW(energy({0.0, INFINITY}, 1.0), NumericalError);
    EXPECT_THROW(energy({0.0, 0.0}, 0.0), DomainError);
}

TEST(Velocity, Examples) {
    EXPECT_EQ(velocity(0.0, 0.1), 0.0);
    for (double z : {0.1, 1.0, 100.0}) {
        EXPECT_NEAR(velocity(std::sqrt(z), z), 1.0 / std::sqrt(2.0), 1e-15);
    }
    const double v = velocity(1e6, 0.1);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(1.0 - v, 1e-12);
}

TEST(Velocity, BoundedOddMonotone) {
    double prev = -1.0;
    for (double p = -1e3; p <= 1e3; p += 0.37) {
        const double v = velocity(p, 0.5);
        EXPECT_GT(v, -1.0);
        EXPECT_LT(v, 1.0);
        EXPECT_EQ(v, -velocity(-p, 0.5));
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_LT(velocity(1e300, 1.0), 1.0);
    EXPECT_GT(velocity(-1e300, 1.0), -1.0);
    EXPECT_THROW(velocity(NAN, 1.0), NumericalError);
}

TEST(Force, LinearRestoring) {
    EXPECT_EQ(force(0.0), 0.0);
    EXPECT_EQ(force(1.5), -1.5);
    EXPECT_EQ(force(-6.3), 6.3);
    EXPECT_THROW(force(INFINITY), NumericalError);
}

TEST(DilationIntegrand, Examples) {
    EXPECT_EQ(dilation_integrand(0.0, 0.1), 1.0);
    EXPECT_NEAR(dilation_integrand(std::sqrt(0.1), 0.1), 1.0 / std::sqrt(2.0), 1e-15);
    // 1 / sqrt(1 + (p/mc)^2) with p/mc = p_m / sqrt(z) = 3.
    EXPECT_NEAR(dilation_integrand(3.0, 1.0), 1.0 / std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(dilation_integrand(3.0, 1.0), 0.31622777, 1e-8);
}

TEST(DilationIntegrand, PythagoreanIdentityWithVelocity) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> logp(-6.0, 6.0);
    for (double z : {0.01, 0.1, 1.0, 100.0}) {
        for (int i = 0; i < 500; ++i) {
            const double p = (i % 2 ? 1.0 : -1.0) * std::pow(10.0, logp(gen));
            const double v = velocity(p, z);
            const double g = dilation_integrand(p, z);
            EXPECT_NEAR(v * v + g * g, 1.0, 1e-12);
            EXPECT_GT(g, 0.0);
            EXPECT_LE(g, 1.0);
            EXPECT_EQ(g, dilation_integrand(-p, z));
        }
    }
}

TEST(UnitSystem, RoundTrip) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (double z : {1e-3, 0.1, 1.0, 100.0, 1e6}) {
        const UnitSystem units(z);
        for (int i = 0; i < 100; ++i) {
            const PhasePoint pt{u(gen), u(gen)};
            const PhasePoint back = units.from_physical(units.to_physical(pt));
            EXPECT_NEAR(back.x, pt.x, 4 * std::numeric_limits<double>::epsilon() * std::abs(pt.x));
            EXPECT_NEAR(back.p, pt.p, 4 * std::numeric_limits<double>::epsilon() * std::abs(pt.p));
        }
    }
    EXPECT_THROW(UnitSystem(-1.0), DomainError);
}

TEST(UnitSystem, ConvertsReferenceAmplitudes) {
    const UnitSystem units(0.1);
    EXPECT_NEAR(units.x_from_physical(6.3), 1.99223, 1e-5);
    EXPECT_NEAR(units.x_from_physical(1.58), 0.49964, 1e-5);
    EXPECT_NEAR(UnitSystem(100.0).x_from_physical(0.05), 0.5, 1e-15);
}

TEST(ModelParams, Validation) {
    ModelParams m;
    EXPECT_NO_THROW(m.validate());
    m.dt = 0.2;
    EXPECT_THROW(m.validate(), DomainError);
    m.dt = 0.01;
    m.z = 0.0;
    EXPECT_THROW(m.validate(), DomainError);
    m.z = 1.0;
    m.n_traj = 0;
    EXPECT_THROW(m.validate(), DomainError);
    m.n_traj = 1;
    m.t_end = -1.0;
    EXPECT_THROW(m.validate(), DomainError);
}
