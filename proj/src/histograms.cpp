#include "semirel/histograms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "semirel/error.hpp"

namespace semirel {

std::string_view kind_code(HistogramKind kind) {
    switch (kind) {
        case HistogramKind::Momentum: return "p";
        case HistogramKind::Coordinate: return "x";
        case HistogramKind::Velocity: return "v";
    }
    return "?";
}

BinEdges::BinEdges(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw DomainError("histogram needs at least two edges");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i])) throw DomainError("histogram edges must be finite");
        if (i > 0 && !(edges_[i] > edges_[i - 1])) {
            throw DomainError("histogram edges must be strictly increasing");
        }
    }
    const double width = (hi() - lo()) / static_cast<double>(bins());
    uniform_ = true;
    for (std::size_t i = 1; i < edges_.size() && uniform_; ++i) {
        const double w = edges_[i] - edges_[i - 1];
        uniform_ = std::abs(w - width) <= 1e-9 * width;
    }
}

BinEdges BinEdges::uniform(double lo, double hi, std::size_t bins) {
    if (bins == 0) throw DomainError("histogram needs at least one bin");
    if (!(hi > lo)) throw DomainError("histogram range must satisfy lo < hi");
    std::vector<double> e(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    e.back() = hi;
    return BinEdges(std::move(e));
}

std::ptrdiff_t BinEdges::locate(double value) const {
    if (std::isnan(value)) throw NumericalError("cannot bin NaN");
    const auto n = static_cast<std::ptrdiff_t>(bins());
    if (value < edges_.front()) return kUnderflow;
    if (value > edges_.back()) return n;
    if (value == edges_.back()) return n - 1;
    std::ptrdiff_t i;
    if (uniform_) {
        i = static_cast<std::ptrdiff_t>((value - lo()) / (hi() - lo()) * static_cast<double>(n));
        i = std::clamp<std::ptrdiff_t>(i, 0, n - 1);
        while (i > 0 && value < edges_[i]) --i;
        while (i + 1 < n && value >= edges_[i + 1]) ++i;
    } else {
        i = std::upper_bound(edges_.begin(), edges_.end(), value) - edges_.begin() - 1;
    }
    return i;
}

std::uint64_t HistogramSnapshot::total() const noexcept {
    std::uint64_t s = underflow + overflow;
    for (auto c : counts) s += c;
    return s;
}

HistogramSnapshot bin(const Ensemble& ensemble, HistogramKind kind, const BinEdges& edges,
                      double z, Executor* executor) {
    if (!(z > 0.0)) throw DomainError("bin: z must be positive");
    if (kind == HistogramKind::Velocity && (edges.lo() < -1.0 || edges.hi() > 1.0)) {
        throw DomainError("velocity histogram edges must lie inside [-1, 1]");
    }
    const std::size_t n = ensemble.size();
    const std::size_t nb = edges.bins();
    // Per-block counts; integer merging is order independent.
    std::vector<std::vector<std::uint64_t>> partial(block_count(n),
                                                    std::vector<std::uint64_t>(nb + 2, 0));
    Executor serial(1);
    Executor& exec = executor != nullptr ? *executor : serial;
    exec.for_each_block(n, [&](const BlockRange& r) {
        auto& c = partial[r.index];
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const PhasePoint pt = ensemble.points[i];
            double value = 0.0;
            switch (kind) {
                case HistogramKind::Momentum: value = pt.p; break;
                case HistogramKind::Coordinate: value = pt.x; break;
                case HistogramKind::Velocity: value = pt.p / std::sqrt(z + pt.p * pt.p); break;
            }
            c[static_cast<std::size_t>(edges.locate(value) + 1)] += 1;
        }
    });
    HistogramSnapshot snap;
    snap.t = ensemble.t;
    snap.kind = kind;
    snap.edges = edges.values();
    snap.counts.assign(nb, 0);
    for (const auto& c : partial) {
        snap.underflow += c.front();
        snap.overflow += c.back();
        for (std::size_t b = 0; b < nb; ++b) snap.counts[b] += c[b + 1];
    }
    return snap;
}

std::size_t detect_modes(const HistogramSnapshot& snapshot, std::size_t smoothing_window,
                         double min_prominence) {
    if (smoothing_window < 1 || smoothing_window % 2 == 0) {
        throw DomainError("smoothing window must be a positive odd integer");
    }
    if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
        throw DomainError("min_prominence must lie in (0, 1)");
    }
    const auto& counts = snapshot.counts;
    const std::size_t n = counts.size();
    if (n == 0) return 0;
    const std::uint64_t peak_count = *std::max_element(counts.begin(), counts.end());
    if (peak_count == 0) return 0;

    const std::size_t half = smoothing_window / 2;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Zero padding outside the grid; a shrinking window would lift edge bins.
        const std::size_t a = i >= half ? i - half : 0;
        const std::size_t b = std::min(n - 1, i + half);
        double acc = 0.0;
        for (std::size_t j = a; j <= b; ++j) acc += static_cast<double>(counts[j]);
        s[i] = acc / static_cast<double>(smoothing_window);
    }

    const double threshold = min_prominence * static_cast<double>(peak_count);
    std::size_t modes = 0;
    std::size_t i = 0;
    while (i < n) {
        // Flat run [i, j).
        std::size_t j = i + 1;
        while (j < n && s[j] == s[i]) ++j;
        const bool rises = i == 0 || s[i - 1] < s[i];
        const bool falls = j == n || s[j] < s[i];
        if (rises && falls) {
            const double height = s[i];
            // Lowest point on each side before reaching higher ground.
            double base = -std::numeric_limits<double>::infinity();
            if (i > 0) {
                double lowest = height;
                for (std::size_t k = i; k-- > 0 && s[k] <= height;) lowest = std::min(lowest, s[k]);
                base = std::max(base, lowest);
            }
            if (j < n) {
                double lowest = height;
                for (std::size_t k = j; k < n && s[k] <= height; ++k) lowest = std::min(lowest, s[k]);
                base = std::max(base, lowest);
            }
            const double prominence = std::isinf(base) ? height : height - base;
            if (prominence > threshold) ++modes;
        }
        i = j;
    }
    return modes;
}

GoodnessOfFit gaussian_chi_square(const HistogramSnapshot& snapshot, double mean,
                                  double variance, std::size_t fitted_parameters,
                                  double min_expected) {
    if (!(variance > 0.0)) throw DomainError("gaussian_chi_square: variance must be positive");
    if (snapshot.counts.empty()) throw DomainError("gaussian_chi_square: empty histogram");
    const double total = static_cast<double>(snapshot.total());
    if (total <= 0.0) throw DomainError("gaussian_chi_square: no counts");
    const double scale = std::sqrt(2.0 * variance);
    const auto cdf = [&](double v) { return 0.5 * std::erfc(-(v - mean) / scale); };

    // Cells: underflow, each bin, overflow.
    std::vector<double> observed;
    std::vector<double> expected;
    observed.push_back(static_cast<double>(snapshot.underflow));
    expected.push_back(total * cdf(snapshot.edges.front()));
    for (std::size_t b = 0; b < snapshot.counts.size(); ++b) {
        observed.push_back(static_cast<double>(snapshot.counts[b]));
        expected.push_back(total * (cdf(snapshot.edges[b + 1]) - cdf(snapshot.edges[b])));
    }
    observed.push_back(static_cast<double>(snapshot.overflow));
    expected.push_back(total * (1.0 - cdf(snapshot.edges.back())));

    std::vector<double> obs_pooled;
    std::vector<double> exp_pooled;
    double o_acc = 0.0;
    double e_acc = 0.0;
    for (std::size_t c = 0; c < observed.size(); ++c) {
        o_acc += observed[c];
        e_acc += expected[c];
        if (e_acc >= min_expected) {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (o_acc > 0.0 || e_acc > 0.0) {
        if (exp_pooled.empty()) {
            obs_pooled.push_back(o_acc);
            exp_pooled.push_back(e_acc);
        } else {
            obs_pooled.back() += o_acc;
            exp_pooled.back() += e_acc;
        }
    }

    GoodnessOfFit fit;
    for (std::size_t c = 0; c < obs_pooled.size(); ++c) {
        const double d = obs_pooled[c] - exp_pooled[c];
        fit.statistic += exp_pooled[c] > 0.0 ? d * d / exp_pooled[c]
                                             : (obs_pooled[c] > 0.0 ? HUGE_VAL : 0.0);
    }
    const std::size_t cells = obs_pooled.size();
    if (cells <= 1 + fitted_parameters) {
        throw DomainError("gaussian_chi_square: too few cells for the requested fit");
    }
    fit.dof = cells - 1 - fitted_parameters;
    fit.p_value = std::isinf(fit.statistic)
                      ? 0.0
                      : boost::math::gamma_q(0.5 * static_cast<double>(fit.dof),
                                             0.5 * fit.statistic);
    return fit;
}

const BinEdges& HistogramGrid::operator[](HistogramKind kind) const {
    switch (kind) {
        case HistogramKind::Momentum: return p;
        case HistogramKind::Coordinate: return x;
        case HistogramKind::Velocity: return v;
    }
    return p;
}

HistogramGrid default_grid(const Ensemble& initial, double z, std::size_t bins,
                           double p_half_width, double x_half_width) {
    if (initial.empty()) throw DomainError("default_grid: empty ensemble");
    double e_max = z;
    for (const auto& pt : initial.points) e_max = std::max(e_max, energy(pt, z));
    constexpr double kPad = 1.02;
    if (!(p_half_width > 0.0)) {
        p_half_width = std::max(1.0, kPad * std::sqrt(std::max(0.0, e_max * e_max / z - z)));
    }
    if (!(x_half_width > 0.0)) {
        x_half_width = std::max(1.0, kPad * std::sqrt(2.0 * (e_max - z)));
    }
    return {BinEdges::uniform(-p_half_width, p_half_width, bins),
            BinEdges::uniform(-x_half_width, x_half_width, bins),
            BinEdges::uniform(-1.0, 1.0, bins)};
}

}  // namespace semirel
