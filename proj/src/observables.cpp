#include "semirel/observables.hpp"

#include <algorithm>
#include <cmath>

#include "semirel/error.hpp"

namespace semirel {

void CompensatedSum::add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
        compensation_ += (sum_ - t) + value;
    } else {
        compensation_ += (value - t) + sum_;
    }
    sum_ = t;
}

ObservableRecord to_presentation(const ObservableRecord& r, const UnitSystem& units) {
    ObservableRecord out = r;
    const double z = units.z();
    out.mean_p = units.p_to_physical(r.mean_p);
    out.mean_x = units.x_to_physical(r.mean_x);
    out.var_p = r.var_p * z;
    out.var_x = r.var_x / z;
    return out;
}

namespace {

struct FirstMoments {
    CompensatedSum p, x, v, e, tau;
};

struct SecondMoments {
    CompensatedSum pp, xx;
};

}  // namespace

ObservableRecord reduce(const Ensemble& ensemble, double z, Executor* executor) {
    const std::size_t n = ensemble.size();
    if (n == 0) throw DomainError("reduce: empty ensemble");
    if (!(z > 0.0)) throw DomainError("reduce: z must be positive");
    const std::size_t n_blocks = block_count(n);

    Executor serial(1);
    Executor& exec = executor != nullptr ? *executor : serial;

    std::vector<FirstMoments> first(n_blocks);
    exec.for_each_block(n, [&](const BlockRange& r) {
        FirstMoments& m = first[r.index];
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const PhasePoint pt = ensemble.points[i];
            if (!std::isfinite(pt.x) || !std::isfinite(pt.p)) {
                throw NumericalError("reduce: non-finite phase point");
            }
            m.p.add(pt.p);
            m.x.add(pt.x);
            m.v.add(pt.p / std::sqrt(z + pt.p * pt.p));
            m.e.add(std::sqrt(z * (z + pt.p * pt.p)) + 0.5 * pt.x * pt.x);
            m.tau.add(ensemble.proper_time[i]);
        }
    });
    FirstMoments total;
    for (const auto& m : first) {
        total.p.merge(m.p);
        total.x.merge(m.x);
        total.v.merge(m.v);
        total.e.merge(m.e);
        total.tau.merge(m.tau);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    ObservableRecord rec;
    rec.t = ensemble.t;
    rec.mean_p = total.p.value() * inv_n;
    rec.mean_x = total.x.value() * inv_n;
    rec.mean_v = total.v.value() * inv_n;
    rec.mean_E = total.e.value() * inv_n;
    rec.mean_proper_time = total.tau.value() * inv_n;

    std::vector<SecondMoments> second(n_blocks);
    exec.for_each_block(n, [&](const BlockRange& r) {
        SecondMoments& m = second[r.index];
        for (std::size_t i = r.begin; i < r.end; ++i) {
            const double dp = ensemble.points[i].p - rec.mean_p;
            const double dx = ensemble.points[i].x - rec.mean_x;
            m.pp.add(dp * dp);
            m.xx.add(dx * dx);
        }
    });
    SecondMoments sq;
    for (const auto& m : second) {
        sq.pp.merge(m.pp);
        sq.xx.merge(m.xx);
    }
    rec.var_p = sq.pp.value() * inv_n;
    rec.var_x = sq.xx.value() * inv_n;
    rec.uncertainty_product = rec.var_p * rec.var_x;
    return rec;
}

double conservation_check(std::span<const ObservableRecord> records) {
    if (records.size() < 2) throw DomainError("conservation_check needs at least two records");
    const double e0 = records.front().mean_E;
    double worst = 0.0;
    for (const auto& r : records) worst = std::max(worst, std::abs(r.mean_E - e0) / std::abs(e0));
    return worst;
}

std::vector<DilationPoint> dilation_series(std::span<const ObservableRecord> records) {
    std::vector<DilationPoint> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && records[i].t < records[i - 1].t) {
            throw DomainError("dilation_series: records are not ordered in time");
        }
        out.push_back({records[i].t, records[i].mean_proper_time});
    }
    return out;
}

}  // namespace semirel
