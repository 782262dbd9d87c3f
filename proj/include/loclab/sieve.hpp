#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace loclab {

/// Plain sieve of Eratosthenes; all primes <= limit.
std::vector<std::uint32_t> simple_primes(std::uint64_t limit);

struct SieveOptions {
    std::size_t segment_size = std::size_t{1} << 18;   ///< integers per segment
    std::uint64_t max_horizon = 100'000'000;           ///< capacity bound on x
    unsigned threads = 1;
};

/// Smallest-prime-factor table for 2..x, built segment by segment.
///
/// Storage is odd-only with 16-bit entries: every composite m <= x < 2^32 has
/// spf(m) <= sqrt(m) < 2^16, and 0 marks a prime. Even m have spf 2.
class SieveTable {
public:
    std::uint64_t horizon() const noexcept { return x_; }

    /// Smallest prime factor of m, 2 <= m <= x.
    std::uint64_t spf(std::uint64_t m) const;
    bool is_prime(std::uint64_t m) const;

    /// Primes <= x in increasing order.
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// Distinct prime factors of m in increasing order; empty for m = 1.
    std::vector<std::uint32_t> distinct_prime_factors(std::uint64_t m) const;

    /// Number of distinct prime factors of m that are <= t (m = 1 gives 0).
    unsigned omega(std::uint64_t m, std::uint64_t t) const;

private:
    friend SieveTable build_sieve(std::uint64_t x, const SieveOptions& options);

    std::uint64_t x_ = 0;
    std::vector<std::uint16_t> odd_spf_;  // index m/2 for odd m
    std::vector<std::uint32_t> primes_;
};

/// DomainError for x < 2, CapacityError beyond options.max_horizon.
SieveTable build_sieve(std::uint64_t x, const SieveOptions& options = {});

}  // namespace loclab
