#include "loclab/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/rng.hpp"

namespace loclab {

std::vector<double> brownian_grid(double T, const GridRule& rule, double t0) {
    if (!(t0 >= 1.0)) throw DomainError("Brownian grid must start at t0 >= 1");
    if (!(T >= t0) || !std::isfinite(T)) throw DomainError("Brownian horizon T must be finite and >= t0");
    std::vector<double> t;
    if (const auto* g = std::get_if<GeometricGrid>(&rule)) {
        if (g->points_per_octave == 0) throw DomainError("geometric grid needs points_per_octave >= 1");
        const double ppo = g->points_per_octave;
        for (std::size_t i = 0;; ++i) {
            const double ti = t0 * std::exp2(static_cast<double>(i) / ppo);
            if (ti >= T) break;
            t.push_back(ti);
        }
    } else {
        const double step = std::get<UniformGrid>(rule).step;
        if (!(step > 0.0)) throw DomainError("uniform grid needs step > 0");
        for (std::size_t i = 0;; ++i) {
            const double ti = t0 + static_cast<double>(i) * step;
            if (ti >= T) break;
            t.push_back(ti);
        }
    }
    // the endpoint T closes the grid; it may duplicate nothing since t < T above
    t.push_back(T);
    return t;
}

BrownianPath simulate_brownian(double T, const GridRule& rule, std::uint64_t seed, std::uint64_t path_index,
                               double t0) {
    BrownianPath p;
    p.times = brownian_grid(T, rule, t0);
    p.rule = rule;
    p.seed = seed;
    p.path_index = path_index;
    p.values.resize(p.times.size());
    CounterStream rng(seed, path_index);
    double w = std::sqrt(p.times[0]) * rng.normal();
    p.values[0] = w;
    for (std::size_t i = 1; i < p.times.size(); ++i) {
        w += std::sqrt(p.times[i] - p.times[i - 1]) * rng.normal();
        p.values[i] = w;
    }
    return p;
}

BrownianPath refine_brownian(const BrownianPath& path) {
    BrownianPath out;
    out.rule = path.rule;
    out.seed = path.seed;
    out.path_index = path.path_index;
    out.refinements = path.refinements + 1;
    const bool geometric = std::holds_alternative<GeometricGrid>(path.rule);
    // substream 1 + pass keeps refinement draws apart from the base path
    CounterStream rng(path.seed, path.path_index, out.refinements);
    const std::size_t n = path.times.size();
    out.times.reserve(2 * n);
    out.values.reserve(2 * n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = path.times[i], b = path.times[i + 1];
        const double wa = path.values[i], wb = path.values[i + 1];
        const double m = geometric ? std::sqrt(a * b) : 0.5 * (a + b);
        const double mean = wa + (m - a) / (b - a) * (wb - wa);
        const double var = (m - a) * (b - m) / (b - a);
        out.times.push_back(a);
        out.values.push_back(wa);
        out.times.push_back(m);
        out.values.push_back(mean + std::sqrt(var) * rng.normal());
    }
    out.times.push_back(path.times.back());
    out.values.push_back(path.values.back());
    return out;
}

LocalizedSupRecord localized_sup(const BrownianPath& path, double N, const WindowFamily& f) {
    if (!(N >= 1.0)) throw DomainError("Brownian window level N must be >= 1");
    LocalizedSupRecord rec;
    rec.N = N;
    rec.f_N = f(N);
    rec.value = std::numeric_limits<double>::quiet_NaN();
    if (const auto* g = std::get_if<GeometricGrid>(&path.rule))
        rec.resolution = g->points_per_octave * std::exp2(static_cast<double>(path.refinements));
    else
        rec.resolution = std::get<UniformGrid>(path.rule).step / std::exp2(static_cast<double>(path.refinements));
    const double top = N * rec.f_N;
    if (top > path.horizon()) {
        std::ostringstream os;
        os << "window top " << top << " exceeds the Brownian horizon " << path.horizon();
        throw HorizonError(os.str(), path.horizon());
    }
    const auto first = std::upper_bound(path.times.begin(), path.times.end(), N);
    const auto last = std::upper_bound(path.times.begin(), path.times.end(), top);
    double best = -1.0;
    for (auto it = first; it != last; ++it) {
        const auto i = static_cast<std::size_t>(it - path.times.begin());
        const double v = std::fabs(path.values[i]) / std::sqrt(path.times[i]);
        if (v > best) {
            best = v;
            rec.arg_time = path.times[i];
        }
        ++rec.points;
    }
    if (rec.points > 0) {
        rec.empty = false;
        rec.value = best;
    }
    return rec;
}

SurrogateRecord brownian_i_surrogate(const BrownianPath& path, const WindowFamily& f, double G, double exponent) {
    if (!(G >= 1.0)) throw DomainError("Brownian surrogate needs G >= 1");
    const auto levels = surrogate_levels(G, exponent, LevelGrid::Geometric);
    SurrogateRecord rec;
    rec.value = std::numeric_limits<double>::quiet_NaN();
    for (double N : levels) {
        const auto s = localized_sup(path, N, f);
        ++rec.levels_evaluated;
        if (s.empty) {
            ++rec.empty_levels;
            continue;
        }
        if (rec.empty || s.value < rec.value) {
            rec.value = s.value;
            rec.argmin_level = N;
            rec.empty = false;
        }
    }
    return rec;
}

double lil_envelope(double t) {
    if (!(t > std::numbers::e)) throw DomainError("lil_envelope needs t > e");
    return std::sqrt(2.0 * t * std::log(std::log(t)));
}

}  // namespace loclab
