#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "loclab/generators.hpp"
#include "loclab/variance_ladder.hpp"
#include "loclab/window_family.hpp"

namespace loclab {

/// N_j = j^((M+3) j): the proof-time grid, kept in log space.
struct PaperExact {
    friend bool operator==(const PaperExact&, const PaperExact&) = default;
};

/// log N_j = log(base) + growth * (M+3) j log j: a desk-scale stand-in that
/// keeps t(j) and the doubling levels 2^t N_j. growth = 1, base = 1 is PaperExact.
struct ScaledSurrogate {
    double base = 1.0;
    double growth = 0.5;
    friend bool operator==(const ScaledSurrogate&, const ScaledSurrogate&) = default;
};

using ScheduleMode = std::variant<PaperExact, ScaledSurrogate>;

/// One block j: levels 2^t N_j for 0 <= t <= t(j).
struct ScheduleBlock {
    std::size_t j = 0;
    double log_N = 0.0;                ///< log N_j
    unsigned t_max = 0;                ///< t(j) = floor((M+1) log2 j)
    double log_H = 0.0;                ///< log H_j = t(j) log 2
    std::vector<double> log_levels;    ///< log(2^t N_j), t = 0..t(j)
    bool covers_window = false;        ///< H_j N_j >= N_j f_{N_j} with f_N = (log N)^M
};

class BlockSchedule {
public:
    double M() const noexcept { return M_; }
    const ScheduleMode& mode() const noexcept { return mode_; }
    const std::vector<ScheduleBlock>& blocks() const noexcept { return blocks_; }
    const ScheduleBlock& block(std::size_t j) const;

    /// 2^t N_j in linear space; DomainError if it overflows a double.
    double level(std::size_t j, unsigned t) const;

private:
    friend BlockSchedule block_schedule(double M, std::size_t j_max, const ScheduleMode& mode);

    double M_ = 1.0;
    ScheduleMode mode_;
    std::vector<ScheduleBlock> blocks_;
};

/// t(j) = floor((M+1) log j / log 2).
unsigned block_t(double M, std::size_t j);

/// Blocks j = 1..j_max. DomainError for M <= 0 or j_max < 2.
BlockSchedule block_schedule(double M, std::size_t j_max, const ScheduleMode& mode = PaperExact{});

/// A schedule level resolved against a profile: U_{j,t} = h(2^t N_j).
struct GridPoint {
    std::size_t j = 0;
    unsigned t = 0;
    double level = 0.0;
    std::size_t U = 0;
};

/// Every level with s_{first positive}^2 <= level <= horizon, in (j, t) order.
std::vector<GridPoint> grid_points_within(const BlockSchedule& schedule, const VarianceProfile& profile);

/// D^-1 sqrt(level) <= s_U <= sqrt(level) for one resolved grid point.
bool level_bounds_hold(const VarianceProfile& profile, double D, const GridPoint& point);

/// Starred schedule with K = 2 D^2, N*_{j+1} = N*_j K^{u(j)}, u(j) = floor(log f_{N*_j} / log K).
struct StarSchedule {
    double K = 2.0;
    std::vector<double> log_levels;   ///< log N*_j, j = 1..
    std::vector<unsigned> u;          ///< u(j) for each materialized step j
    std::vector<bool> squared_bound;  ///< N*_{j+1} <= (N*_j)^2, checked per step
};

/// DomainError for D < 1; InfeasibleError if no N*_1 with f_{N*_1} >= K exists
/// below `max_log_level` (natural log). `log_start` overrides the search for N*_1.
StarSchedule star_schedule(const WindowFamily& f, double D, std::size_t j_max, double max_log_level = 700.0,
                           std::optional<double> log_start = std::nullopt);

/// Y_j = max over U*_j <= n <= U*_{j+1} of |S_n|/s_n for every starred block inside the path horizon.
std::vector<double> star_block_maxima(const PartialSumPath& path, const StarSchedule& schedule);

}  // namespace loclab
