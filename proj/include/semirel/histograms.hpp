#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "semirel/executor.hpp"
#include "semirel/model.hpp"

namespace semirel {

enum class HistogramKind { Momentum, Coordinate, Velocity };

/// "p", "x" or "v".
std::string_view kind_code(HistogramKind kind);

/// Validated, strictly increasing bin edges. Bins are left-closed and
/// right-open except the last, which is closed.
class BinEdges {
public:
    explicit BinEdges(std::vector<double> edges);
    static BinEdges uniform(double lo, double hi, std::size_t bins);

    const std::vector<double>& values() const noexcept { return edges_; }
    std::size_t bins() const noexcept { return edges_.size() - 1; }
    double lo() const noexcept { return edges_.front(); }
    double hi() const noexcept { return edges_.back(); }

    static constexpr std::ptrdiff_t kUnderflow = -1;
    /// Bin index of `value`, kUnderflow, or bins() for overflow.
    std::ptrdiff_t locate(double value) const;

private:
    std::vector<double> edges_;
    bool uniform_ = false;
};

/// Raw trajectory counts of one marginal at one time (not normalised).
struct HistogramSnapshot {
    double t = 0.0;
    HistogramKind kind = HistogramKind::Momentum;
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;

    std::uint64_t total() const noexcept;
};

/// Bins the p, x, or velocity(p, z) projection of the ensemble. Velocity edges
/// must lie inside [-1, 1].
HistogramSnapshot bin(const Ensemble& ensemble, HistogramKind kind, const BinEdges& edges,
                      double z, Executor* executor = nullptr);

/// Counts strict local maxima (flat tops count once) of the zero-padded moving-average
/// smoothed counts whose topographic prominence exceeds
/// `min_prominence * max(counts)`.
std::size_t detect_modes(const HistogramSnapshot& snapshot, std::size_t smoothing_window = 5,
                         double min_prominence = 0.05);

struct GoodnessOfFit {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of the snapshot against Gaussian(mean, variance).
/// Underflow/overflow enter as tail cells; adjacent cells are pooled until
/// each expects at least `min_expected` counts. `fitted_parameters` are
/// subtracted from the degrees of freedom.
GoodnessOfFit gaussian_chi_square(const HistogramSnapshot& snapshot, double mean,
                                  double variance, std::size_t fitted_parameters = 0,
                                  double min_expected = 5.0);

struct HistogramGrid {
    BinEdges p;
    BinEdges x;
    BinEdges v;

    const BinEdges& operator[](HistogramKind kind) const;
};

/// Fixed grids for a whole run. With a zero override, the p and x half-widths
/// are the largest |p| and |x| reachable at the highest energy present in the
/// initial ensemble (energy is conserved), padded by 2% and at least 1.
/// Velocity always spans [-1, 1].
HistogramGrid default_grid(const Ensemble& initial, double z, std::size_t bins,
                           double p_half_width = 0.0, double x_half_width = 0.0);

}  // namespace semirel
