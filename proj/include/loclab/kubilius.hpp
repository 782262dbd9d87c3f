#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loclab/sieve.hpp"
#include "loclab/profile_statistic.hpp"

namespace loclab {

/// Law of a sum of independent Bernoulli(p_i), by exact convolution. Entry k is P(sum = k).
std::vector<double> poisson_binomial(std::span<const double> probabilities);

/// Integer statistic of the small-prime divisibility pattern.
enum class StatisticRule {
    Omega,        ///< omega(m, r) / sum of T_p
    OmegaParity,  ///< the same count mod 2
};

std::string to_string(StatisticRule rule);
StatisticRule statistic_rule_from_string(const std::string& name);

struct KubiliusOptions {
    std::size_t trials = 1'000'000;
    std::uint64_t seed = 1;
    double c = 0.5;
    unsigned threads = 1;
};

struct KubiliusReport {
    std::uint64_t x = 0;
    std::uint64_t r = 0;
    double u = 0.0;  ///< log x / log r
    std::size_t primes_used = 0;
    std::string statistic;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> sieve;  ///< (1/x) histogram over 1 <= m <= x
    std::vector<double> model_mc;
    std::vector<double> model_exact;
    double tv_sieve_vs_exact = 0.0;
    double tv_sieve_vs_mc = 0.0;
    double tv_mc_vs_exact = 0.0;
    double mc_noise_scale = 0.0;  ///< expected TV from sampling noise alone, (1/2) sum sqrt(2 p (1-p) / (pi n))
    ErrorBudget error_budget;
};

/// Compares the sieve histogram of a statistic of omega(m, r) over m <= x with
/// the independent model T_p ~ Bernoulli(1/p), p <= r.
/// RangeError unless 2 <= r and r^2 <= x <= table horizon.
KubiliusReport kubilius_compare(const SieveTable& table, std::uint64_t x, std::uint64_t r, StatisticRule rule,
                                const KubiliusOptions& options);

}  // namespace loclab
