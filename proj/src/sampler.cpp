#include "semirel/sampler.hpp"

#include <cmath>
#include <numbers>

#include "semirel/error.hpp"

namespace semirel {

namespace rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(seed ^ splitmix64(index));
}

double uniform(std::uint64_t key, std::uint64_t k) noexcept {
    const std::uint64_t bits = splitmix64(key + k * 0xD1B54A32D192ED03ULL);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace rng

namespace {

void require_finite_centers(double x, double p) {
    if (!std::isfinite(x) || !std::isfinite(p)) {
        throw DomainError("initial state centers must be finite");
    }
}

void require_size(std::size_t n) {
    if (n == 0) throw DomainError("ensemble size must be >= 1");
}

Ensemble make_ensemble(std::size_t n) {
    Ensemble e;
    e.points.resize(n);
    e.proper_time.assign(n, 0.0);
    e.t = 0.0;
    return e;
}

}  // namespace

PhasePoint coherent_point(const InitialState& state, std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = rng::stream_key(seed, index);
    const double u1 = 1.0 - rng::uniform(key, 0);  // (0, 1]
    const double u2 = rng::uniform(key, 1);
    const double r = std::sqrt(-2.0 * std::log(u1) * kCoherentVariance);
    const double angle = 2.0 * std::numbers::pi * u2;
    return {state.x_center + r * std::cos(angle), state.p_center + r * std::sin(angle)};
}

Ensemble sample_coherent(const InitialState& state, std::size_t n, std::uint64_t seed) {
    if (state.kind != InitialKind::Coherent) {
        throw DomainError("sample_coherent requires a coherent initial state");
    }
    require_size(n);
    require_finite_centers(state.x_center, state.p_center);
    Ensemble e = make_ensemble(n);
    for (std::size_t i = 0; i < n; ++i) e.points[i] = coherent_point(state, seed, i);
    return e;
}

Ensemble sample_delta(double x0, double p0, std::size_t n) {
    require_size(n);
    require_finite_centers(x0, p0);
    Ensemble e = make_ensemble(n);
    for (auto& pt : e.points) pt = {x0, p0};
    return e;
}

Ensemble sample(const InitialState& state, std::size_t n, std::uint64_t seed) {
    if (state.kind == InitialKind::Coherent) return sample_coherent(state, n, seed);
    return sample_delta(state.x_center, state.p_center, n);
}

bool check_purity(const InitialState& state) {
    return state.kind == InitialKind::Coherent;
}

double variance_product(const InitialState& state) {
    return state.kind == InitialKind::Coherent ? kCoherentVariance * kCoherentVariance : 0.0;
}

}  // namespace semirel
