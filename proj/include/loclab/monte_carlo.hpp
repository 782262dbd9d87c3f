#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loclab/generators.hpp"
#include "loclab/schedules.hpp"

namespace loclab {

/// Empirical P(max_{j<=k} |S_j| >= lambda s_k) against the bound 1/lambda^2.
struct KolmogorovReport {
    double lambda = 0.0;
    std::size_t k = 0;
    std::size_t trials = 0;
    std::size_t hits = 0;
    double empirical = 0.0;
    double bound = 0.0;
    double std_error = 0.0;  ///< binomial standard error of `empirical`

    bool within(double n_se = 3.0) const noexcept { return empirical <= bound + n_se * std_error; }
};

/// One report per lambda, all from the same `trials` paths (streams 0..trials-1 of spec.seed).
/// DegenerateError if s_k = 0; DomainError for lambda <= 0 or k, trials = 0.
std::vector<KolmogorovReport> kolmogorov_check(const GeneratorSpec& spec, std::size_t k,
                                               std::span<const double> lambdas, std::size_t trials,
                                               unsigned threads = 1);

KolmogorovReport kolmogorov_check(const GeneratorSpec& spec, std::size_t k, double lambda, std::size_t trials,
                                  unsigned threads = 1);

/// Monte Carlo frequencies of the proof events A_j, B_j, C_j for block j.
struct EventReport {
    std::size_t j = 0;
    std::size_t trials = 0;
    double D = 1.0;
    double k_threshold = 0.0;  ///< 3 D sqrt(M+1)

    std::size_t V_j = 0;                  ///< h(H_j N_j)
    std::vector<std::size_t> U_next;      ///< U_{j+1,t}, t = 0..t(j)

    double freq_A = 0.0, freq_B = 0.0, freq_C = 0.0, freq_BC = 0.0, freq_ABC = 0.0;
    double se_A = 0.0, se_B = 0.0, se_C = 0.0;
    double cov_BC = 0.0;     ///< empirical covariance of the indicators of B_j and C_j
    double se_cov_BC = 0.0;  ///< its standard error under independence

    double bound_not_A = 0.0;  ///< D^2 / j^2
    double bound_B = 0.0;      ///< j^{-1/2} (large-j lower bound)
    double bound_C = 0.75;
};

/// Needs levels of blocks j and j+1 within the horizon of a profile of length n_max.
EventReport event_frequencies(const GeneratorSpec& spec, const BlockSchedule& schedule, std::size_t j,
                              std::size_t n_max, std::size_t trials, unsigned threads = 1);

}  // namespace loclab
