#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loclab {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double mean(std::span<const double> xs);

/// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

/// Linear-interpolation quantile (Hyndman-Fan type 7). q in [0, 1]; xs non-empty.
double quantile(std::vector<double> xs, double q);

double median(std::vector<double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Half the L1 distance between two probability vectors; shorter input is zero-padded.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Binomial standard error sqrt(p(1-p)/n).
double binomial_se(double p, std::size_t n);

}  // namespace loclab
