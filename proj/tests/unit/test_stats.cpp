#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "loclab/parallel.hpp"
#include "loclab/stats.hpp"

using namespace loclab;

TEST(Stats, CompensatedSumRecoversSmallTerms) {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    EXPECT_EQ(s.value(), 1000.0);
}

TEST(Stats, MeanVarianceQuantile) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(x), 2.5);
    EXPECT_DOUBLE_EQ(sample_variance(x), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(median(x), 2.5);
    EXPECT_DOUBLE_EQ(quantile(x, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile(x, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(median({5.0}), 5.0);
}

TEST(Stats, DistancesAndErrors) {
    EXPECT_DOUBLE_EQ(total_variation(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0}), 0.5);
    EXPECT_DOUBLE_EQ(total_variation(std::vector<double>{0.2, 0.8}, std::vector<double>{0.2, 0.8}), 0.0);
    EXPECT_DOUBLE_EQ(ks_distance({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_distance({0, 0}, {1, 1}), 1.0);
    EXPECT_DOUBLE_EQ(binomial_se(0.25, 100), std::sqrt(0.25 * 0.75 / 100));
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
    auto run = [](unsigned threads) {
        return parallel_map<double>(1000, threads, [](std::size_t i) { return std::sin(double(i)); }, 7);
    };
    const auto a = run(1);
    EXPECT_EQ(a, run(4));
    EXPECT_EQ(a, run(8));
}

TEST(Parallel, PropagatesWorkerExceptions) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 57) throw std::runtime_error("boom");
                              },
                              4),
                 std::runtime_error);
}
