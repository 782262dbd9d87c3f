#include <gtest/gtest.h>

#include "loclab/errors.hpp"
#include "loclab/sieve.hpp"
#include "oracles.hpp"

using namespace loclab;

TEST(Sieve, SmallExamples) {
    const auto t = build_sieve(30);
    EXPECT_EQ(t.spf(30), 2u);
    EXPECT_EQ(t.spf(21), 3u);
    EXPECT_EQ(t.spf(25), 5u);
    EXPECT_EQ(t.spf(29), 29u);
    EXPECT_THROW(t.spf(49), RangeError);
    EXPECT_THROW(t.spf(1), RangeError);
    EXPECT_EQ(t.primes().size(), 10u);
}

TEST(Sieve, PrimeCountAndSimpleSieveAgree) {
    const auto t = build_sieve(1'000'000, {.segment_size = 1 << 16, .threads = 4});
    EXPECT_EQ(t.primes().size(), 78498u);
    const auto simple = simple_primes(1'000'000);
    EXPECT_TRUE(std::equal(t.primes().begin(), t.primes().end(), simple.begin(), simple.end()));
}

TEST(Sieve, SegmentSizeDoesNotMatter) {
    const auto a = build_sieve(1'000'000, {.segment_size = 1 << 14, .threads = 3});
    const auto b = build_sieve(1'000'000, {.segment_size = 1 << 18, .threads = 1});
    const auto c = build_sieve(1'000'000, {.segment_size = 1000, .threads = 8});
    for (std::uint64_t m = 2; m <= 1'000'000; ++m) {
        ASSERT_EQ(a.spf(m), b.spf(m)) << m;
        ASSERT_EQ(a.spf(m), c.spf(m)) << m;
    }
}

TEST(Sieve, SpfIsSmallestPrimeDivisor) {
    const auto t = build_sieve(100'000, {.segment_size = 4096});
    for (std::uint64_t m = 2; m <= 100'000; ++m) {
        const auto p = t.spf(m);
        ASSERT_EQ(m % p, 0u);
        ASSERT_TRUE(oracle::is_prime(p));
        ASSERT_EQ(p, oracle::prime_factors(m).front());
    }
}

TEST(Sieve, OmegaAgreesWithTrialDivision) {
    const auto t = build_sieve(100'000);
    for (std::uint64_t m = 1; m <= 100'000; ++m) {
        const auto f = oracle::prime_factors(m);
        ASSERT_EQ(t.omega(m, 100'000), f.size()) << m;
        const auto d = t.distinct_prime_factors(m);
        ASSERT_TRUE(std::equal(d.begin(), d.end(), f.begin(), f.end())) << m;
    }
}

TEST(Sieve, Capacity) {
    EXPECT_THROW(build_sieve(1000, {.max_horizon = 999}), CapacityError);
    EXPECT_THROW(build_sieve(1), DomainError);
    EXPECT_THROW(build_sieve(std::uint64_t{1} << 33, {.max_horizon = ~std::uint64_t{0}}), CapacityError);
}
