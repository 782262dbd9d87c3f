#pragma once

// Exhaustive-scan reference implementations. They share no code paths with the
// library beyond the data types, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "loclab/generators.hpp"
#include "loclab/omega.hpp"
#include "loclab/profile_statistic.hpp"
#include "loclab/variance_ladder.hpp"
#include "loclab/window_family.hpp"

namespace oracle {

/// Hand-rolled generator source for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(eng_);
    }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    /// Variance sequence with optional leading zeros, sporadic zero terms and heavy spread.
    std::vector<double> sigma_sq(std::size_t n) {
        std::vector<double> v(n);
        const std::size_t zeros = coin(0.3) ? integer(0, std::min<std::size_t>(n - 1, 5)) : 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i < zeros) continue;
            if (i > zeros && coin(0.1)) continue;
            v[i] = std::exp(real(-3.0, 3.0));
        }
        if (v[n - 1] == 0.0) v[n - 1] = 1.0;
        return v;
    }

    std::vector<double> path(std::size_t n) {
        std::vector<double> s(n + 1, 0.0);
        for (std::size_t i = 1; i <= n; ++i) s[i] = s[i - 1] + real(-2.0, 2.0);
        return s;
    }

    loclab::WindowFamily family() {
        switch (integer(0, 3)) {
            case 0: return loclab::WindowFamily::power_log(real(0.3, 3.0));
            case 1: return loclab::WindowFamily::growing_log(loclab::XiShape::LogLog, real(0.5, 4.0));
            case 2: return loclab::WindowFamily::growing_log(loclab::XiShape::SqrtLog, real(0.2, 1.5), coin());
            default: return loclab::WindowFamily::constant(real(1.0, 6.0));
        }
    }

private:
    std::mt19937_64 eng_;
};

/// max{k : s_k^2 <= level} by linear scan.
inline std::size_t h(const loclab::VarianceProfile& p, double level) {
    std::size_t k = 0;
    for (std::size_t n = 0; n <= p.size(); ++n)
        if (p.prefix(n) <= level) k = n;
    return k;
}

struct MaxResult {
    bool empty = true;
    double value = 0.0;
    std::size_t argmax = 0;
};

/// max |S_n|/s_n over n with N < s_n^2 <= N f_N, filtering every index.
inline MaxResult localized_max(const loclab::VarianceProfile& p, const std::vector<double>& sums, double N,
                               double fN) {
    MaxResult r;
    for (std::size_t n = 1; n <= p.size(); ++n) {
        const double s2 = p.prefix(n);
        if (!(N < s2 && s2 <= N * fN)) continue;
        const double v = std::fabs(sums[n]) / std::sqrt(s2);
        if (r.empty || v > r.value) {
            r.value = v;
            r.argmax = n;
        }
        r.empty = false;
    }
    return r;
}

/// Level grid G, 2G, 4G, ... below G^e, then G^e.
inline std::vector<double> doubling_levels(double G, double e) {
    std::vector<double> out;
    const double top = std::pow(G, e);
    double N = G;
    while (N < top) {
        out.push_back(N);
        N *= 2.0;
    }
    if (out.empty() || out.back() != top) out.push_back(top);
    return out;
}

inline MaxResult i_surrogate(const loclab::VarianceProfile& p, const std::vector<double>& sums,
                             const loclab::WindowFamily& f, double G, double e) {
    MaxResult best;
    for (double N : doubling_levels(G, e)) {
        const auto m = localized_max(p, sums, N, f(N));
        if (m.empty) continue;
        if (best.empty || m.value < best.value) {
            best.value = m.value;
            best.argmax = m.argmax;
        }
        best.empty = false;
    }
    return best;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime factors by trial division.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d != 0) continue;
        out.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) out.push_back(m);
    return out;
}

inline unsigned omega(std::uint64_t m, std::uint64_t t) {
    unsigned c = 0;
    for (auto p : prime_factors(m))
        if (p <= t) ++c;
    return c;
}

/// Primes up to x by trial division.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= x; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

/// Profile statistic straight from its definition over the given prime thresholds.
inline MaxResult profile_statistic(std::uint64_t m, const std::vector<std::uint64_t>& primes, double g,
                          const loclab::WindowFamily& f, bool bound_probe, double budget) {
    const auto factors = prime_factors(m);
    std::vector<double> levels;
    if (bound_probe) {
        levels = doubling_levels(g, 2.0);
    } else {
        for (double N = g; N <= budget; N *= 2.0) {
            const double fN = f(N);
            if (N * fN <= budget && fN <= N) levels.push_back(N);
        }
    }
    MaxResult best;
    for (double N : levels) {
        const double top = N * f(N);
        bool empty = true;
        double mx = 0.0;
        for (auto p : primes) {
            const double L = std::log(std::log(static_cast<double>(p)));
            if (!((bound_probe ? N < L : N <= L) && L <= top)) continue;
            double w = 0;
            for (auto q : factors) w += q <= p ? 1 : 0;
            const double v = std::fabs(w - L) / std::sqrt(L);
            if (empty || v > mx) mx = v;
            empty = false;
        }
        if (empty) continue;
        if (best.empty || mx < best.value) best.value = mx;
        best.empty = false;
    }
    return best;
}

}  // namespace oracle
