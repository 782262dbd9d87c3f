#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "loclab/rng.hpp"

using loclab::CounterStream;
using loclab::Philox4x32;

TEST(Philox, KnownAnswerZero) {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
    EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
    EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, ReproducibleAndKeyedByStream) {
    CounterStream a(7, 3), b(7, 3), c(7, 4), d(8, 3), e(7, 3, 1);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
        EXPECT_NE(x, d.next_u64());
        EXPECT_NE(x, e.next_u64());
    }
}

TEST(CounterStream, UniformMoments) {
    CounterStream r(1, 0);
    const int n = 1'000'000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(s2 / n - (s / n) * (s / n), 1.0 / 12, 1e-3);
}

TEST(CounterStream, BelowIsUnbiasedOnSmallRange) {
    CounterStream r(2, 0);
    std::vector<int> counts(7, 0);
    const int n = 700'000;
    for (int i = 0; i < n; ++i) {
        const auto k = r.below(7);
        ASSERT_LT(k, 7u);
        ++counts[k];
    }
    for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
    EXPECT_EQ(r.below(1), 0u);
}

TEST(CounterStream, NormalMomentsAndTails) {
    CounterStream r(3, 0);
    const int n = 2'000'000;
    double s = 0, s2 = 0, s4 = 0;
    int beyond1 = 0, beyond3 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
        s4 += z * z * z * z;
        beyond1 += std::fabs(z) > 1.0;
        beyond3 += std::fabs(z) > 3.0;
    }
    EXPECT_NEAR(s / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 4 * std::sqrt(96.0 / n));
    const double p1 = 0.31731050786291415, p3 = 0.0026997960632601866;
    EXPECT_NEAR(beyond1 / double(n), p1, 4 * std::sqrt(p1 * (1 - p1) / n));
    EXPECT_NEAR(beyond3 / double(n), p3, 4 * std::sqrt(p3 * (1 - p3) / n));
}

TEST(CounterStream, BitsAreFair) {
    CounterStream r(4, 9);
    int ones = 0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) ones += r.bit();
    EXPECT_NEAR(ones, n / 2.0, 4 * std::sqrt(n / 4.0));
}

TEST(CounterStream, SatisfiesUrbg) {
    CounterStream r(5, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) seen.insert(r());
    EXPECT_EQ(seen.size(), 1000u);
}
