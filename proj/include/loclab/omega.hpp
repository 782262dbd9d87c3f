#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loclab/sieve.hpp"

namespace loclab {

/// Iterated logarithms. Throughout, "loglog" is log(log t), never a base-2 log.
double loglog(double t);
double logloglog(double t);

/// omega(m, t_i) = #{p <= t_i : p | m} at increasing thresholds t_1 < ... < t_r.
struct OmegaThresholdProfile {
    std::uint64_t m = 0;
    std::vector<std::uint64_t> thresholds;
    std::vector<unsigned> counts;
};

/// RangeError unless 2 <= m <= table horizon; DomainError for non-increasing thresholds.
OmegaThresholdProfile omega_profile(const SieveTable& table, std::uint64_t m,
                                    std::span<const std::uint64_t> thresholds);

/// Prime-threshold prefix sums  sum_{p<=t} 1/p  and  sum_{p<=t} (1/p - 1/p^2),
/// accumulated with compensated summation.
class MertensTables {
public:
    /// `primes` must be every prime <= covered_to (0 means the last listed prime).
    explicit MertensTables(std::span<const std::uint32_t> primes, std::uint64_t covered_to = 0);

    std::uint64_t covered_to() const noexcept { return covered_to_; }

    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    /// Values after the i-th prime (0-based), i.e. at threshold primes()[i].
    double reciprocal_at(std::size_t i) const { return recip_.at(i); }
    double variance_at(std::size_t i) const { return var_.at(i); }
    /// loglog(primes()[i]), computed once.
    std::span<const double> loglog_primes() const noexcept { return loglog_; }

    /// Sums over p <= t for any real t (0 below the first prime).
    /// HorizonError if t exceeds covered_to().
    double reciprocal_sum(double t) const;
    double variance_sum(double t) const;

    /// Number of tabulated primes <= t.
    std::size_t count_le(double t) const;

private:
    void check_covered(double t) const;

    std::vector<std::uint32_t> primes_;
    std::vector<double> recip_;
    std::vector<double> var_;
    std::vector<double> loglog_;
    std::uint64_t covered_to_ = 0;
};

MertensTables mertens_tables(std::span<const std::uint32_t> primes, std::uint64_t covered_to = 0);

/// |omega - loglog t| / sqrt(loglog t); DomainError for t <= e.
double rho(unsigned omega, double t);

/// |omega - sum 1/p| / sqrt(sum (1/p - 1/p^2)) over p <= t; DomainError for t < 2.
double rho_tilde(unsigned omega, double t, const MertensTables& tables);

}  // namespace loclab
