#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "loclab/localization.hpp"
#include "loclab/window_family.hpp"

namespace loclab {

/// t_i = t0 * 2^(i / points_per_octave).
struct GeometricGrid {
    unsigned points_per_octave = 64;
    friend bool operator==(const GeometricGrid&, const GeometricGrid&) = default;
};

/// t_i = t0 + i * step.
struct UniformGrid {
    double step = 1.0;
    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

using GridRule = std::variant<GeometricGrid, UniformGrid>;

/// W sampled on a strictly increasing grid starting at t0 >= 1.
struct BrownianPath {
    std::vector<double> times;
    std::vector<double> values;
    GridRule rule;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    unsigned refinements = 0;  ///< bridge-refinement passes applied

    double horizon() const { return times.back(); }
};

/// Grid points t0 <= t_i <= T; the last point is T.
std::vector<double> brownian_grid(double T, const GridRule& rule, double t0 = 1.0);

/// W(t0) ~ N(0, t0) then independent N(0, dt) increments.
/// DomainError for T < t0, t0 < 1, or a degenerate grid rule.
BrownianPath simulate_brownian(double T, const GridRule& rule, std::uint64_t seed, std::uint64_t path_index = 0,
                               double t0 = 1.0);

/// Inserts one point inside every grid interval, drawn from the Brownian bridge
/// between its endpoints (geometric midpoint for geometric grids). Existing
/// values are kept, so the result is a refinement of the same sample path.
BrownianPath refine_brownian(const BrownianPath& path);

struct LocalizedSupRecord {
    double N = 0.0;
    double f_N = 0.0;
    bool empty = true;
    double value = 0.0;    ///< NaN when empty
    double arg_time = 0.0;
    std::size_t points = 0;     ///< grid points in (N, N f_N]
    double resolution = 0.0;    ///< points per octave (geometric) or step (uniform), after refinements
};

/// max |W(t_i)|/sqrt(t_i) over grid points with N < t_i <= N f_N.
/// HorizonError if N f_N exceeds the path horizon.
LocalizedSupRecord localized_sup(const BrownianPath& path, double N, const WindowFamily& f);

/// min over levels in [G, G^exponent] (geometric ratio 2, endpoints included) of localized_sup.
SurrogateRecord brownian_i_surrogate(const BrownianPath& path, const WindowFamily& f, double G,
                                     double exponent = 5.0 / 3.0);

/// sqrt(2 t log log t); DomainError for t <= e.
double lil_envelope(double t);

}  // namespace loclab
