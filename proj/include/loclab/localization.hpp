#pragma once

#include <cstddef>
#include <vector>

#include "loclab/generators.hpp"
#include "loclab/variance_ladder.hpp"
#include "loclab/window_family.hpp"

namespace loclab {

/// max |S_n|/s_n over one window. An empty window carries no value.
struct LocalizedMaxRecord {
    double N = 0.0;
    double f_N = 0.0;
    IndexWindow window;
    bool empty = true;
    double max_value = 0.0;    ///< NaN when empty
    std::size_t argmax_n = 0;  ///< smallest maximizing index; 0 when empty
};

/// Localized maximum over h(N) < n <= h(N f_N). Ties go to the smallest n.
/// HorizonError if the window top exceeds the path's horizon;
/// DegenerateError if an index in the window has s_n = 0.
LocalizedMaxRecord localized_max(const PartialSumPath& path, double N, const WindowFamily& f);

enum class LevelGrid {
    Geometric,  ///< G, 2G, 4G, ... below G^exponent, then G^exponent
    Dense,      ///< G, every integer in (G, G^exponent), then G^exponent
};

/// Levels N in [G, G^exponent] on the requested grid.
std::vector<double> surrogate_levels(double G, double exponent, LevelGrid grid);

/// Finite-horizon surrogate for the liminf: min over levels of the localized max.
struct SurrogateRecord {
    bool empty = true;          ///< every level had an empty window
    double value = 0.0;         ///< NaN when empty
    double argmin_level = 0.0;
    std::size_t levels_evaluated = 0;
    std::size_t empty_levels = 0;
    double grid_ratio = 2.0;    ///< declared coarseness: 2 for geometric, 0 for dense
};

/// min over N in [G, G^exponent] of localized_max(path, N, f); empty windows are skipped.
/// Requires G >= 2 and exponent >= 1.
SurrogateRecord i_surrogate(const PartialSumPath& path, const WindowFamily& f, double G, double exponent = 5.0 / 3.0,
                            LevelGrid grid = LevelGrid::Geometric);

/// 15 sqrt(M+1) D^2, the almost-sure bound on I for power-log windows.
double paper_bound(double M, double D);

}  // namespace loclab
