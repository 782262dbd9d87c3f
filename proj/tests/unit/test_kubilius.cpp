#include <gtest/gtest.h>

#include <cmath>

#include "loclab/errors.hpp"
#include "loclab/kubilius.hpp"
#include "loclab/stats.hpp"

using namespace loclab;

TEST(PoissonBinomial, MatchesEnumeration) {
    const std::vector<double> p{0.5, 1.0 / 3, 0.2, 1.0 / 7};
    const auto law = poisson_binomial(p);
    ASSERT_EQ(law.size(), 5u);
    std::vector<double> brute(5, 0.0);
    for (int mask = 0; mask < 16; ++mask) {
        double pr = 1;
        int k = 0;
        for (int i = 0; i < 4; ++i) {
            const bool on = mask >> i & 1;
            pr *= on ? p[i] : 1 - p[i];
            k += on;
        }
        brute[k] += pr;
    }
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(law[k], brute[k], 1e-15);
    EXPECT_THROW(poisson_binomial(std::vector<double>{1.5}), DomainError);
}

TEST(Kubilius, RTwo) {
    const auto t = build_sieve(1001);
    KubiliusOptions opt;
    opt.trials = 10'000;
    const auto r = kubilius_compare(t, 1001, 2, StatisticRule::Omega, opt);
    ASSERT_EQ(r.model_exact.size(), 2u);
    EXPECT_EQ(r.model_exact[1], 0.5);
    EXPECT_DOUBLE_EQ(r.sieve[1], 500.0 / 1001.0);
    EXPECT_EQ(r.primes_used, 1u);
}

TEST(Kubilius, AgreementAtOneMillion) {
    const auto t = build_sieve(1'000'000, {.threads = 4});
    KubiliusOptions opt;
    opt.threads = 4;
    const auto r = kubilius_compare(t, 1'000'000, 31, StatisticRule::Omega, opt);
    EXPECT_EQ(r.primes_used, 11u);
    EXPECT_NEAR(r.u, std::log(1e6) / std::log(31.0), 1e-12);
    EXPECT_LE(r.tv_sieve_vs_exact, 0.02);
    EXPECT_LE(r.tv_mc_vs_exact, 4 * r.mc_noise_scale);
    double total = 0;
    for (double v : r.sieve) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Kubilius, ModelAgainstItself) {
    const auto t = build_sieve(10'000);
    KubiliusOptions a, b;
    a.trials = b.trials = 200'000;
    a.seed = 1;
    b.seed = 2;
    const auto ra = kubilius_compare(t, 10'000, 31, StatisticRule::Omega, a);
    const auto rb = kubilius_compare(t, 10'000, 31, StatisticRule::Omega, b);
    // twice the per-sample noise: both sides fluctuate
    EXPECT_LE(total_variation(ra.model_mc, rb.model_mc), 3 * std::sqrt(2.0) * ra.mc_noise_scale);
}

TEST(Kubilius, ParityRuleAndDeterminism) {
    const auto t = build_sieve(100'000);
    KubiliusOptions a, b;
    a.trials = b.trials = 50'000;
    a.threads = 1;
    b.threads = 8;
    const auto ra = kubilius_compare(t, 100'000, 17, StatisticRule::OmegaParity, a);
    const auto rb = kubilius_compare(t, 100'000, 17, StatisticRule::OmegaParity, b);
    EXPECT_EQ(ra.model_mc, rb.model_mc);
    EXPECT_EQ(ra.sieve, rb.sieve);
    EXPECT_EQ(ra.model_exact.size(), 2u);
    EXPECT_EQ(statistic_rule_from_string(to_string(StatisticRule::OmegaParity)), StatisticRule::OmegaParity);
    EXPECT_THROW(statistic_rule_from_string("bogus"), ConfigError);
}

TEST(Kubilius, RangeErrors) {
    const auto t = build_sieve(10'000);
    EXPECT_THROW(kubilius_compare(t, 10'000, 1, StatisticRule::Omega, {}), RangeError);
    EXPECT_THROW(kubilius_compare(t, 10'000, 101, StatisticRule::Omega, {}), RangeError);
    EXPECT_THROW(kubilius_compare(t, 20'000, 31, StatisticRule::Omega, {}), RangeError);
}
