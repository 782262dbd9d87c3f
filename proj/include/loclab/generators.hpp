#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "loclab/rng.hpp"
#include "loclab/variance_ladder.hpp"

namespace loclab {

/// Standard deviations sigma_j for the independent families.
struct SigmaSchedule {
    enum class Kind { Constant, Power, Explicit };

    Kind kind = Kind::Constant;
    double value = 1.0;          ///< constant sigma, or the multiplier of j^exponent
    double exponent = 0.0;       ///< Power: sigma_j = value * j^exponent
    std::vector<double> values;  ///< Explicit: sigma_j for j = zero_prefix + 1, ...
    std::size_t zero_prefix = 0; ///< leading indices with sigma_j = 0

    static SigmaSchedule constant(double sigma) { return {Kind::Constant, sigma, 0.0, {}, 0}; }
    static SigmaSchedule power(double scale, double exponent) { return {Kind::Power, scale, exponent, {}, 0}; }
    static SigmaSchedule explicit_values(std::vector<double> v) { return {Kind::Explicit, 1.0, 0.0, std::move(v), 0}; }

    double sigma(std::size_t j) const;

    friend bool operator==(const SigmaSchedule&, const SigmaSchedule&) = default;
};

/// X_j = +-sigma_j with equal probability.
struct Rademacher {
    SigmaSchedule sigma;
    friend bool operator==(const Rademacher&, const Rademacher&) = default;
};

/// X_j = sigma_j * Z_j.
struct Gaussian {
    SigmaSchedule sigma;
    friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

/// X_p = Y_p - 1/p at primes with P(Y_p = 1) = 1/p; X_j = 0 elsewhere.
struct PrimeBernoulli {
    friend bool operator==(const PrimeBernoulli&, const PrimeBernoulli&) = default;
};

/// X_j = {q^j * omega} - 1/2 with omega uniform on [0, 1), integer q >= 2.
struct LacunaryFractional {
    std::uint64_t ratio = 2;
    friend bool operator==(const LacunaryFractional&, const LacunaryFractional&) = default;
};

using GeneratorKind = std::variant<Rademacher, Gaussian, PrimeBernoulli, LacunaryFractional>;

struct GeneratorSpec {
    GeneratorKind kind;
    std::uint64_t seed = 0;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

std::string family_name(const GeneratorSpec& spec);

/// SpecError if the spec violates its family's invariants.
void validate(const GeneratorSpec& spec);

/// One realization S_0 = 0, S_1, ..., S_{n_max} on the matching profile.
struct PartialSumPath {
    std::vector<double> sums;        ///< sums[n] = S_n, sums[0] = 0
    std::vector<double> increments;  ///< increments[n] = S_n - S_{n-1} as realized in floating point, increments[0] = 0
    std::shared_ptr<const VarianceProfile> profile;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;

    std::size_t size() const noexcept { return sums.size() - 1; }
    double S(std::size_t n) const { return sums.at(n); }
};

/// Exact per-term variances for `spec` on indices 1..n_max.
VarianceProfile variance_profile_of(const GeneratorSpec& spec, std::size_t n_max);

class PathSampler;

/// Sequential draw of increments X_1, X_2, ... for one path.
/// The randomness is keyed by (spec.seed, path_index) only.
class IncrementStream {
public:
    double next();
    std::size_t position() const noexcept { return j_; }

private:
    friend class PathSampler;
    IncrementStream(const PathSampler& owner, std::uint64_t path_index);

    const PathSampler* owner_;
    CounterStream rng_;
    std::size_t j_ = 0;
    // lacunary: the next base-q digits of omega as an integer numerator over q^digits
    std::uint64_t window_ = 0;
};

/// Shared per-ensemble state: the profile and, for the prime model, the prime flags.
class PathSampler {
public:
    PathSampler(GeneratorSpec spec, std::size_t n_max);

    const GeneratorSpec& spec() const noexcept { return spec_; }
    std::size_t n_max() const noexcept { return n_max_; }
    const std::shared_ptr<const VarianceProfile>& profile() const noexcept { return profile_; }

    IncrementStream stream(std::uint64_t path_index) const;

    /// Full path of length `length` (default n_max) for stream `path_index`.
    PartialSumPath sample(std::uint64_t path_index, std::size_t length = 0) const;

private:
    friend class IncrementStream;

    GeneratorSpec spec_;
    std::size_t n_max_;
    std::shared_ptr<const VarianceProfile> profile_;
    std::vector<char> is_prime_;
    // lacunary: digits per fractional part and q^digits
    unsigned lac_digits_ = 0;
    std::uint64_t lac_scale_ = 1;
};

/// RangeError for n_max = 0, SpecError for an invalid spec.
PartialSumPath sample_path(const GeneratorSpec& spec, std::size_t n_max, std::uint64_t path_index = 0);

/// Lindeberg sum  sum_{j<=n} E(X_j^2 / s_n^2 ; |X_j| > eps * s_n), in closed form per family.
double lindeberg_diagnostic(const GeneratorSpec& spec, std::size_t n, double eps);

/// E|X_p|^3 for the prime model: (1-1/p)^3/p + (1/p)^3 (1-1/p).
double prime_third_abs_moment(std::uint64_t p);

/// E(Z^2 ; |Z| > c) for standard normal Z.
double normal_tail_second_moment(double c);

}  // namespace loclab
