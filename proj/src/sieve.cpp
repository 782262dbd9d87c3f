#include "loclab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/parallel.hpp"

namespace loclab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr std::uint64_t kHardLimit = 0xFFFFFFFFull;

}  // namespace

std::vector<std::uint32_t> simple_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

SieveTable build_sieve(std::uint64_t x, const SieveOptions& options) {
    if (x < 2) throw DomainError("sieve horizon must be >= 2");
    if (x > options.max_horizon || x > kHardLimit) {
        std::ostringstream os;
        os << "sieve horizon " << x << " exceeds the configured capacity "
           << std::min(options.max_horizon, kHardLimit);
        throw CapacityError(os.str());
    }
    if (options.segment_size < 2) throw DomainError("segment size must be >= 2");

    SieveTable table;
    table.x_ = x;
    table.odd_spf_.assign(x / 2 + 1, 0);

    const std::uint64_t root = isqrt(x);
    const auto base = simple_primes(root);

    // Segments cover [lo, hi) in integers; each writes only its own odd slots.
    const std::uint64_t seg = options.segment_size;
    const std::uint64_t n_segments = (x + seg) / seg;
    std::vector<std::vector<std::uint32_t>> seg_primes(n_segments);

    parallel_for(
        n_segments, options.threads,
        [&](std::size_t s) {
            const std::uint64_t lo = s * seg;
            const std::uint64_t hi = std::min(x + 1, lo + seg);
            for (std::uint32_t p : base) {
                if (p == 2) continue;
                const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
                if (pp >= hi) break;
                std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
                if (start % 2 == 0) start += p;
                for (std::uint64_t m = start; m < hi; m += 2 * static_cast<std::uint64_t>(p)) {
                    auto& slot = table.odd_spf_[m / 2];
                    if (slot == 0) slot = static_cast<std::uint16_t>(p);
                }
            }
            auto& found = seg_primes[s];
            if (lo <= 2 && 2 < hi) found.push_back(2);
            for (std::uint64_t m = std::max<std::uint64_t>(3, lo | 1); m < hi; m += 2)
                if (table.odd_spf_[m / 2] == 0) found.push_back(static_cast<std::uint32_t>(m));
        },
        1);

    std::size_t total = 0;
    for (const auto& v : seg_primes) total += v.size();
    table.primes_.reserve(total);
    for (auto& v : seg_primes) {
        table.primes_.insert(table.primes_.end(), v.begin(), v.end());
        std::vector<std::uint32_t>().swap(v);
    }
    return table;
}

std::uint64_t SieveTable::spf(std::uint64_t m) const {
    if (m < 2 || m > x_) {
        std::ostringstream os;
        os << "integer " << m << " outside sieve range [2, " << x_ << "]";
        throw RangeError(os.str());
    }
    if (m % 2 == 0) return 2;
    const std::uint16_t v = odd_spf_[m / 2];
    return v == 0 ? m : v;
}

bool SieveTable::is_prime(std::uint64_t m) const { return m >= 2 && spf(m) == m; }

std::vector<std::uint32_t> SieveTable::distinct_prime_factors(std::uint64_t m) const {
    std::vector<std::uint32_t> out;
    if (m == 1) return out;
    while (m > 1) {
        const std::uint64_t p = spf(m);
        out.push_back(static_cast<std::uint32_t>(p));
        do m /= p;
        while (m % p == 0);
    }
    return out;
}

unsigned SieveTable::omega(std::uint64_t m, std::uint64_t t) const {
    if (m == 1) return 0;
    unsigned count = 0;
    while (m > 1) {
        const std::uint64_t p = spf(m);
        if (p > t) break;
        ++count;
        do m /= p;
        while (m % p == 0);
    }
    return count;
}

}  // namespace loclab
