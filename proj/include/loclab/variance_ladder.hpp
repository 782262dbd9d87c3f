#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loclab/window_family.hpp"

namespace loclab {

/// Per-term variances sigma_j^2 (j >= 1) with their prefix sums s_n^2.
///
/// Indices are 1-based as in the sums they model; prefix(0) = 0. Prefix sums
/// are built once with compensated summation and stored, so every window query
/// resolves against identical values. Immutable after construction.
class VarianceProfile {
public:
    /// `sigma_sq[0]` is sigma_1^2. Entries must be finite and >= 0 with a positive total.
    VarianceProfile(std::vector<double> sigma_sq, std::string label);

    std::size_t size() const noexcept { return sigma_sq_.size(); }
    const std::string& label() const noexcept { return label_; }

    double sigma_sq(std::size_t j) const;
    /// s_n^2 for 0 <= n <= size().
    double prefix(std::size_t n) const;
    /// s_n.
    double s(std::size_t n) const;

    /// Largest representable variance level, s_{size()}^2.
    double horizon() const noexcept { return prefix_.back(); }

    /// Smallest index with s_j > 0.
    std::size_t first_positive() const noexcept { return first_positive_; }

    /// All prefix sums, index 0 holding s_0^2 = 0.
    std::span<const double> prefix_sums() const noexcept { return prefix_; }

private:
    std::vector<double> sigma_sq_;
    std::vector<double> prefix_;
    std::string label_;
    std::size_t first_positive_ = 0;
};

/// Empirical ratio bound D = max s_{j+1}/s_j over represented j with s_j > 0.
struct RatioBound {
    double D = 1.0;
    std::size_t argmax_j = 0;  ///< j attaining the maximum (0 if no ratio is defined)
};

/// Indices n with lo < n <= hi, equivalently N < s_n^2 <= N * width.
struct IndexWindow {
    std::size_t lo = 0;
    std::size_t hi = 0;
    double N = 0.0;
    double width = 0.0;

    bool empty() const noexcept { return hi <= lo; }
    std::size_t count() const noexcept { return empty() ? 0 : hi - lo; }
};

/// s_n^2; RangeError unless 1 <= n <= size.
double cumulative_variance(const VarianceProfile& profile, std::size_t n);

/// DegenerateError if every prefix sum is zero.
RatioBound ratio_bound(const VarianceProfile& profile);

/// h(level) = max{k : s_k^2 <= level}.
/// DomainError below s_1^2, HorizonError above the largest prefix sum.
std::size_t index_of_variance(const VarianceProfile& profile, double level);

/// Index window (h(N), h(N f_N)] for N >= 1, with h taken as 0 below s_1^2.
IndexWindow window(const VarianceProfile& profile, double N, const WindowFamily& f);

}  // namespace loclab
