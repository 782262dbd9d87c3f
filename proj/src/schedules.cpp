#include "loclab/schedules.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "loclab/errors.hpp"

namespace loclab {

unsigned block_t(double M, std::size_t j) {
    if (j < 1) throw DomainError("block index must be >= 1");
    // log2 is exact at powers of two, where the floor is most fragile
    return static_cast<unsigned>(std::floor((M + 1.0) * std::log2(static_cast<double>(j))));
}

const ScheduleBlock& BlockSchedule::block(std::size_t j) const {
    if (j < 1 || j > blocks_.size()) throw RangeError("schedule block index out of range");
    return blocks_[j - 1];
}

double BlockSchedule::level(std::size_t j, unsigned t) const {
    const auto& b = block(j);
    if (t > b.t_max) throw RangeError("schedule doubling index exceeds t(j)");
    const double v = std::exp(b.log_levels[t]);
    if (!std::isfinite(v)) throw DomainError("schedule level is not representable in linear space");
    return v;
}

BlockSchedule block_schedule(double M, std::size_t j_max, const ScheduleMode& mode) {
    if (!(M > 0.0)) throw DomainError("schedule exponent M must be positive");
    if (j_max < 2) throw DomainError("schedule needs j_max >= 2");
    double log_base = 0.0;
    double growth = 1.0;
    if (const auto* s = std::get_if<ScaledSurrogate>(&mode)) {
        if (!(s->base > 0.0) || !(s->growth > 0.0)) throw DomainError("surrogate base and growth must be positive");
        log_base = std::log(s->base);
        growth = s->growth;
    }
    const auto f = WindowFamily::power_log(M);
    BlockSchedule out;
    out.M_ = M;
    out.mode_ = mode;
    out.blocks_.reserve(j_max);
    for (std::size_t j = 1; j <= j_max; ++j) {
        ScheduleBlock b;
        b.j = j;
        const double jd = static_cast<double>(j);
        b.log_N = log_base + growth * (M + 3.0) * jd * std::log(jd);
        b.t_max = block_t(M, j);
        b.log_H = b.t_max * std::numbers::ln2;
        b.log_levels.reserve(b.t_max + 1);
        for (unsigned t = 0; t <= b.t_max; ++t) b.log_levels.push_back(b.log_N + t * std::numbers::ln2);
        b.covers_window = b.log_N > 0.0 && b.log_H >= f.log_width(b.log_N);
        out.blocks_.push_back(std::move(b));
    }
    return out;
}

std::vector<GridPoint> grid_points_within(const BlockSchedule& schedule, const VarianceProfile& profile) {
    std::vector<GridPoint> out;
    const double lo = profile.prefix(profile.first_positive());
    const double log_hi = std::log(profile.horizon());
    for (const auto& b : schedule.blocks()) {
        for (unsigned t = 0; t <= b.t_max; ++t) {
            if (b.log_levels[t] > log_hi) break;
            const double level = std::exp(b.log_levels[t]);
            if (level < lo || level > profile.horizon()) continue;
            out.push_back({b.j, t, level, index_of_variance(profile, level)});
        }
    }
    return out;
}

bool level_bounds_hold(const VarianceProfile& profile, double D, const GridPoint& point) {
    const double s = profile.s(point.U);
    const double root = std::sqrt(point.level);
    return root / D <= s && s <= root;
}

StarSchedule star_schedule(const WindowFamily& f, double D, std::size_t j_max, double max_log_level,
                           std::optional<double> log_start) {
    if (!(D >= 1.0)) throw DomainError("star schedule needs D >= 1");
    if (j_max < 1) throw DomainError("star schedule needs j_max >= 1");
    StarSchedule out;
    out.K = 2.0 * D * D;
    const double log_K = std::log(out.K);

    double x;  // log N*_1
    if (log_start) {
        x = *log_start;
        if (f.log_width(x) < log_K) throw InfeasibleError("supplied N*_1 has f_{N*_1} < K");
    } else {
        // Search over N >= e where every family's width is non-decreasing in N.
        double lo = 1.0;
        if (f.log_width(lo) >= log_K) {
            x = lo;
        } else {
            double hi = max_log_level;
            if (f.log_width(hi) < log_K) {
                std::ostringstream os;
                os << "no N*_1 <= exp(" << max_log_level << ") has f_{N*_1} >= K = " << out.K << " for "
                   << f.describe();
                throw InfeasibleError(os.str());
            }
            for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (f.log_width(mid) >= log_K ? hi : lo) = mid;
            }
            x = hi;
        }
    }

    out.log_levels.push_back(x);
    for (std::size_t j = 1; j < j_max; ++j) {
        const double ratio = f.log_width(x) / log_K;
        const auto u = static_cast<unsigned>(std::floor(ratio));
        if (u < 1) throw InvariantError("star schedule step with u(j) = 0");
        out.u.push_back(u);
        out.squared_bound.push_back(u * log_K <= x);
        x += u * log_K;
        out.log_levels.push_back(x);
    }
    return out;
}

std::vector<double> star_block_maxima(const PartialSumPath& path, const StarSchedule& schedule) {
    const VarianceProfile& profile = *path.profile;
    const double horizon = profile.prefix(std::min(path.size(), profile.size()));
    const auto prefix = profile.prefix_sums();
    std::vector<double> out;
    for (std::size_t j = 0; j + 1 < schedule.log_levels.size(); ++j) {
        if (schedule.log_levels[j + 1] > std::log(horizon)) break;
        const double lo_level = std::exp(schedule.log_levels[j]);
        const double hi_level = std::exp(schedule.log_levels[j + 1]);
        if (hi_level > horizon || lo_level < prefix[1]) break;
        const std::size_t a = index_of_variance(profile, lo_level);
        const std::size_t b = index_of_variance(profile, hi_level);
        double best = 0.0;
        for (std::size_t n = a; n <= b; ++n) {
            if (!(prefix[n] > 0.0)) continue;
            best = std::max(best, std::fabs(path.sums[n]) / std::sqrt(prefix[n]));
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace loclab
