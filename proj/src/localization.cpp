#include "loclab/localization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "loclab/errors.hpp"

namespace loclab {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

LocalizedMaxRecord localized_max(const PartialSumPath& path, double N, const WindowFamily& f) {
    if (!path.profile) throw InvariantError("path has no variance profile");
    const VarianceProfile& profile = *path.profile;
    LocalizedMaxRecord rec;
    rec.window = window(profile, N, f);
    rec.N = N;
    rec.f_N = rec.window.width;
    rec.max_value = kNaN;
    if (rec.window.empty()) return rec;
    if (rec.window.hi > path.size()) {
        std::ostringstream os;
        os << "window reaches index " << rec.window.hi << " but the path has only " << path.size() << " terms";
        throw HorizonError(os.str(), profile.prefix(std::min(path.size(), profile.size())));
    }
    const auto prefix = profile.prefix_sums();
    if (!(prefix[rec.window.lo + 1] > 0.0))
        throw DegenerateError("window contains an index with s_n = 0");
    rec.empty = false;
    double best = -1.0;
    for (std::size_t n = rec.window.lo + 1; n <= rec.window.hi; ++n) {
        const double v = std::fabs(path.sums[n]) / std::sqrt(prefix[n]);
        if (v > best) {
            best = v;
            rec.argmax_n = n;
        }
    }
    rec.max_value = best;
    return rec;
}

std::vector<double> surrogate_levels(double G, double exponent, LevelGrid grid) {
    if (!(G >= 1.0) || !(exponent >= 1.0)) throw DomainError("surrogate levels need G >= 1 and exponent >= 1");
    const double top = std::pow(G, exponent);
    std::vector<double> levels{G};
    if (grid == LevelGrid::Geometric) {
        for (double N = 2.0 * G; N < top; N *= 2.0) levels.push_back(N);
    } else {
        for (double N = std::floor(G) + 1.0; N < top; N += 1.0) levels.push_back(N);
    }
    if (top > G) levels.push_back(top);
    return levels;
}

SurrogateRecord i_surrogate(const PartialSumPath& path, const WindowFamily& f, double G, double exponent,
                            LevelGrid grid) {
    if (!(G >= 2.0)) throw DomainError("i_surrogate needs G >= 2");
    const auto levels = surrogate_levels(G, exponent, grid);
    // refuse up front rather than after partial work
    const double top = levels.back();
    if (top * f(top) > path.profile->horizon()) {
        std::ostringstream os;
        os << "level " << top << " with width " << f(top) << " exceeds the horizon; largest representable level is "
           << path.profile->horizon();
        throw HorizonError(os.str(), path.profile->horizon());
    }
    SurrogateRecord rec;
    rec.grid_ratio = grid == LevelGrid::Geometric ? 2.0 : 0.0;
    rec.value = kNaN;
    for (double N : levels) {
        const auto m = localized_max(path, N, f);
        ++rec.levels_evaluated;
        if (m.empty) {
            ++rec.empty_levels;
            continue;
        }
        if (rec.empty || m.max_value < rec.value) {
            rec.value = m.max_value;
            rec.argmin_level = N;
            rec.empty = false;
        }
    }
    return rec;
}

double paper_bound(double M, double D) {
    if (!(M > 0.0)) throw DomainError("paper_bound needs M > 0");
    if (!(D >= 1.0)) throw DomainError("paper_bound needs D >= 1");
    return 15.0 * std::sqrt(M + 1.0) * D * D;
}

}  // namespace loclab
