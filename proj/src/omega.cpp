#include "loclab/omega.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/stats.hpp"

namespace loclab {

double loglog(double t) { return std::log(std::log(t)); }

double logloglog(double t) { return std::log(loglog(t)); }

OmegaThresholdProfile omega_profile(const SieveTable& table, std::uint64_t m,
                                    std::span<const std::uint64_t> thresholds) {
    if (m < 2 || m > table.horizon()) {
        std::ostringstream os;
        os << "m = " << m << " outside [2, " << table.horizon() << "]";
        throw RangeError(os.str());
    }
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] <= thresholds[i - 1]) throw DomainError("thresholds must be strictly increasing");
    OmegaThresholdProfile out;
    out.m = m;
    out.thresholds.assign(thresholds.begin(), thresholds.end());
    const auto primes = table.distinct_prime_factors(m);
    out.counts.reserve(thresholds.size());
    for (std::uint64_t t : thresholds) {
        const auto c = std::upper_bound(primes.begin(), primes.end(), t) - primes.begin();
        out.counts.push_back(static_cast<unsigned>(c));
    }
    return out;
}

MertensTables::MertensTables(std::span<const std::uint32_t> primes, std::uint64_t covered_to)
    : primes_(primes.begin(), primes.end()),
      covered_to_(covered_to != 0 ? covered_to : (primes.empty() ? 0 : primes.back())) {
    if (!primes_.empty() && primes_.back() > covered_to_) throw DomainError("primes listed beyond covered_to");
    recip_.reserve(primes_.size());
    var_.reserve(primes_.size());
    loglog_.reserve(primes_.size());
    CompensatedSum r, v;
    for (std::uint32_t p : primes_) {
        const double inv = 1.0 / static_cast<double>(p);
        r.add(inv);
        v.add(inv - inv * inv);
        recip_.push_back(r.value());
        var_.push_back(v.value());
        loglog_.push_back(loglog(static_cast<double>(p)));
    }
}

std::size_t MertensTables::count_le(double t) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), t,
                                                     [](double a, std::uint32_t b) { return a < b; }) -
                                    primes_.begin());
}

void MertensTables::check_covered(double t) const {
    if (t > static_cast<double>(covered_to_)) {
        std::ostringstream os;
        os << "threshold " << t << " beyond the tabulated range " << covered_to_;
        throw HorizonError(os.str(), static_cast<double>(covered_to_));
    }
}

double MertensTables::reciprocal_sum(double t) const {
    check_covered(t);
    const std::size_t c = count_le(t);
    return c == 0 ? 0.0 : recip_[c - 1];
}

double MertensTables::variance_sum(double t) const {
    check_covered(t);
    const std::size_t c = count_le(t);
    return c == 0 ? 0.0 : var_[c - 1];
}

MertensTables mertens_tables(std::span<const std::uint32_t> primes, std::uint64_t covered_to) {
    return MertensTables(primes, covered_to);
}

double rho(unsigned omega, double t) {
    if (!(t > std::numbers::e)) throw DomainError("rho needs t > e so that loglog t > 0");
    const double L = loglog(t);
    return std::fabs(static_cast<double>(omega) - L) / std::sqrt(L);
}

double rho_tilde(unsigned omega, double t, const MertensTables& tables) {
    if (!(t >= 2.0)) throw DomainError("rho_tilde needs t >= 2");
    const double mean = tables.reciprocal_sum(t);
    const double var = tables.variance_sum(t);
    if (!(var > 0.0)) throw DegenerateError("no tabulated primes below t");
    return std::fabs(static_cast<double>(omega) - mean) / std::sqrt(var);
}

}  // namespace loclab
