#pragma once

#include <cstddef>
#include <cstdint>

#include "semirel/model.hpp"

namespace semirel {

enum class InitialKind { Coherent, Delta };

/// Initial Wigner function: the non-relativistic coherent state (a Gaussian
/// with var(x_m) = var(p_m) = 1/2) or a phase-space delta.
struct InitialState {
    InitialKind kind = InitialKind::Coherent;
    double x_center = 0.0;
    double p_center = 0.0;
};

/// Marginal variance of each coordinate of the coherent state, in scheme units.
inline constexpr double kCoherentVariance = 0.5;

/// Point `index` of the coherent ensemble for `seed`. Each index owns an
/// independent counter-based stream, so any subset of points can be generated
/// in any order or on any worker with identical results.
///
/// Transform: two uniforms u1 in (0, 1], u2 in [0, 1) from the stream,
/// r = sqrt(-2 ln u1) * sqrt(1/2), x = x_c + r cos(2 pi u2), p = p_c + r sin(2 pi u2).
PhasePoint coherent_point(const InitialState& state, std::uint64_t seed, std::uint64_t index);

Ensemble sample_coherent(const InitialState& state, std::size_t n, std::uint64_t seed);

Ensemble sample_delta(double x0, double p0, std::size_t n);

/// Dispatches on `state.kind`; the seed is ignored for delta states.
Ensemble sample(const InitialState& state, std::size_t n, std::uint64_t seed);

/// Whether the state satisfies the pure-state restriction on Wigner functions.
/// The coherent state saturates var(x) var(p) = hbar^2/4; a delta does not
/// describe a physical state.
bool check_purity(const InitialState& state);

/// Analytic var(x_m) * var(p_m) of the initial state (0 for a delta).
double variance_product(const InitialState& state);

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Key of the stream owned by trajectory `index`.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept;

/// k-th 53-bit uniform of a stream, in [0, 1).
double uniform(std::uint64_t key, std::uint64_t k) noexcept;

}  // namespace rng

}  // namespace semirel
