#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semirel/executor.hpp"
#include "semirel/model.hpp"

namespace semirel {

/// Ensemble averages of the Weyl symbols p, x, v, E and the proper time at one
/// lab time, in scheme units. Variances use the population convention.
struct ObservableRecord {
    double t = 0.0;
    double mean_p = 0.0;
    double mean_x = 0.0;
    double mean_v = 0.0;
    double mean_E = 0.0;
    double var_p = 0.0;
    double var_x = 0.0;
    /// var_p * var_x; identical in scheme and presentation units (hbar = 1).
    double uncertainty_product = 0.0;
    double mean_proper_time = 0.0;
};

/// Same fields in presentation units (hbar = omega = c = 1, m = z).
ObservableRecord to_presentation(const ObservableRecord& record, const UnitSystem& units);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double value) noexcept;
    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.compensation_);
    }
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Reduces the ensemble at its current time. Per-block partial sums are merged
/// in block order, so the result is bitwise independent of the executor's
/// worker count.
ObservableRecord reduce(const Ensemble& ensemble, double z, Executor* executor = nullptr);

/// max_t |<E>(t) - <E>(0)| / <E>(0).
double conservation_check(std::span<const ObservableRecord> records);

struct DilationPoint {
    double t = 0.0;
    double mean_proper_time = 0.0;
};

std::vector<DilationPoint> dilation_series(std::span<const ObservableRecord> records);

}  // namespace semirel
