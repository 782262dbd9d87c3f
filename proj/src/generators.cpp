#include "loclab/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/sieve.hpp"

namespace loclab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

const SigmaSchedule* sigma_of(const GeneratorSpec& spec) {
    if (const auto* r = std::get_if<Rademacher>(&spec.kind)) return &r->sigma;
    if (const auto* g = std::get_if<Gaussian>(&spec.kind)) return &g->sigma;
    return nullptr;
}

std::vector<char> prime_flags(std::size_t n_max) {
    std::vector<char> flags(n_max + 1, 0);
    for (std::uint32_t p : simple_primes(n_max)) flags[p] = 1;
    return flags;
}

constexpr double kLacunaryVariance = 1.0 / 12.0;

}  // namespace

double SigmaSchedule::sigma(std::size_t j) const {
    if (j < 1) throw RangeError("sigma index must be >= 1");
    if (j <= zero_prefix) return 0.0;
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::Power: return value * std::pow(static_cast<double>(j), exponent);
        case Kind::Explicit: {
            const std::size_t k = j - zero_prefix - 1;
            if (k >= values.size()) {
                std::ostringstream os;
                os << "explicit sigma schedule has no entry for index " << j;
                throw SpecError(os.str());
            }
            return values[k];
        }
    }
    throw InvariantError("unknown sigma schedule kind");
}

std::string family_name(const GeneratorSpec& spec) {
    return std::visit(overloaded{[](const Rademacher&) { return std::string("rademacher"); },
                                 [](const Gaussian&) { return std::string("gaussian"); },
                                 [](const PrimeBernoulli&) { return std::string("prime_bernoulli"); },
                                 [](const LacunaryFractional&) { return std::string("lacunary"); }},
                      spec.kind);
}

void validate(const GeneratorSpec& spec) {
    if (const auto* sigma = sigma_of(spec)) {
        switch (sigma->kind) {
            case SigmaSchedule::Kind::Constant:
            case SigmaSchedule::Kind::Power:
                if (!(sigma->value > 0.0) || !std::isfinite(sigma->value) || !std::isfinite(sigma->exponent))
                    throw SpecError("sigma schedule must have a positive finite scale");
                break;
            case SigmaSchedule::Kind::Explicit:
                if (sigma->values.empty()) throw SpecError("explicit sigma schedule is empty");
                for (double v : sigma->values)
                    if (!(v > 0.0) || !std::isfinite(v))
                        throw SpecError("explicit sigma values must be positive; use zero_prefix for leading zeros");
                break;
        }
    }
    if (const auto* lac = std::get_if<LacunaryFractional>(&spec.kind)) {
        if (lac->ratio < 2 || lac->ratio > (1u << 26))
            throw SpecError("lacunary ratio must be an integer in [2, 2^26]");
    }
}

VarianceProfile variance_profile_of(const GeneratorSpec& spec, std::size_t n_max) {
    if (n_max == 0) throw RangeError("n_max must be >= 1");
    validate(spec);
    std::vector<double> var(n_max, 0.0);
    std::ostringstream label;
    label << family_name(spec);
    std::visit(overloaded{[&](const Rademacher& r) {
                              for (std::size_t j = 1; j <= n_max; ++j) {
                                  const double s = r.sigma.sigma(j);
                                  var[j - 1] = s * s;
                              }
                          },
                          [&](const Gaussian& g) {
                              for (std::size_t j = 1; j <= n_max; ++j) {
                                  const double s = g.sigma.sigma(j);
                                  var[j - 1] = s * s;
                              }
                          },
                          [&](const PrimeBernoulli&) {
                              for (std::uint32_t p : simple_primes(n_max)) {
                                  const double inv = 1.0 / p;
                                  var[p - 1] = (1.0 - inv) * inv;
                              }
                          },
                          [&](const LacunaryFractional& l) {
                              label << "(q=" << l.ratio << ")";
                              var.assign(n_max, kLacunaryVariance);
                          }},
               spec.kind);
    return VarianceProfile(std::move(var), label.str());
}

PathSampler::PathSampler(GeneratorSpec spec, std::size_t n_max)
    : spec_(std::move(spec)),
      n_max_(n_max),
      profile_(std::make_shared<const VarianceProfile>(variance_profile_of(spec_, n_max))) {
    if (std::holds_alternative<PrimeBernoulli>(spec_.kind)) is_prime_ = prime_flags(n_max);
    if (const auto* lac = std::get_if<LacunaryFractional>(&spec_.kind)) {
        // largest digit count with q^digits <= 2^53, so numerator/q^digits < 1 after rounding
        constexpr std::uint64_t kLimit = std::uint64_t{1} << 53;
        lac_digits_ = 0;
        lac_scale_ = 1;
        while (lac_scale_ <= kLimit / lac->ratio) {
            lac_scale_ *= lac->ratio;
            ++lac_digits_;
        }
    }
}

IncrementStream PathSampler::stream(std::uint64_t path_index) const { return IncrementStream(*this, path_index); }

IncrementStream::IncrementStream(const PathSampler& owner, std::uint64_t path_index)
    : owner_(&owner), rng_(owner.spec_.seed, path_index) {
    if (const auto* lac = std::get_if<LacunaryFractional>(&owner.spec_.kind)) {
        for (unsigned k = 0; k < owner.lac_digits_; ++k) window_ = window_ * lac->ratio + rng_.below(lac->ratio);
    }
}

double IncrementStream::next() {
    const std::size_t j = ++j_;
    if (j > owner_->n_max_) throw RangeError("increment stream exhausted its horizon");
    const auto& kind = owner_->spec_.kind;
    switch (kind.index()) {
        case 0: {
            const double s = std::get<Rademacher>(kind).sigma.sigma(j);
            return rng_.bit() ? s : -s;
        }
        case 1: {
            const double s = std::get<Gaussian>(kind).sigma.sigma(j);
            if (s == 0.0) return 0.0;
            return s * rng_.normal();
        }
        case 2: {
            if (!owner_->is_prime_[j]) return 0.0;
            const double inv = 1.0 / static_cast<double>(j);
            return rng_.uniform() < inv ? 1.0 - inv : -inv;
        }
        case 3: {
            // shift omega's digits left by one: {q^j omega} from {q^(j-1) omega}
            const std::uint64_t q = std::get<LacunaryFractional>(kind).ratio;
            const std::uint64_t top = owner_->lac_scale_ / q;
            window_ = (window_ % top) * q + rng_.below(q);
            return static_cast<double>(window_) / static_cast<double>(owner_->lac_scale_) - 0.5;
        }
    }
    throw InvariantError("unknown generator family");
}

PartialSumPath PathSampler::sample(std::uint64_t path_index, std::size_t length) const {
    if (length == 0) length = n_max_;
    if (length > n_max_) throw RangeError("requested path length exceeds the sampler horizon");
    PartialSumPath path;
    path.profile = profile_;
    path.seed = spec_.seed;
    path.path_index = path_index;
    path.sums.resize(length + 1);
    path.increments.resize(length + 1);
    path.sums[0] = 0.0;
    path.increments[0] = 0.0;
    auto inc = stream(path_index);
    for (std::size_t n = 1; n <= length; ++n) {
        path.sums[n] = path.sums[n - 1] + inc.next();
        // the realized step, so S_n - S_{n-1} reproduces it exactly
        path.increments[n] = path.sums[n] - path.sums[n - 1];
    }
    return path;
}

PartialSumPath sample_path(const GeneratorSpec& spec, std::size_t n_max, std::uint64_t path_index) {
    if (n_max == 0) throw RangeError("n_max must be >= 1");
    return PathSampler(spec, n_max).sample(path_index);
}

double normal_tail_second_moment(double c) {
    c = std::fabs(c);
    const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
    const double tail = 0.5 * std::erfc(c / std::numbers::sqrt2);
    return 2.0 * (c * phi + tail);
}

double prime_third_abs_moment(std::uint64_t p) {
    const double inv = 1.0 / static_cast<double>(p);
    return std::pow(1.0 - inv, 3) * inv + inv * inv * inv * (1.0 - inv);
}

double lindeberg_diagnostic(const GeneratorSpec& spec, std::size_t n, double eps) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    const auto profile = variance_profile_of(spec, n);
    const double s2 = profile.prefix(n);
    if (!(s2 > 0.0)) throw DegenerateError("s_n = 0; the Lindeberg sum is undefined");
    const double threshold = eps * std::sqrt(s2);
    double total = 0.0;
    std::visit(overloaded{[&](const Rademacher& r) {
                              for (std::size_t j = 1; j <= n; ++j) {
                                  const double s = r.sigma.sigma(j);
                                  if (s > threshold) total += s * s;
                              }
                          },
                          [&](const Gaussian& g) {
                              for (std::size_t j = 1; j <= n; ++j) {
                                  const double s = g.sigma.sigma(j);
                                  if (s > 0.0) total += s * s * normal_tail_second_moment(threshold / s);
                              }
                          },
                          [&](const PrimeBernoulli&) {
                              for (std::uint32_t p : simple_primes(n)) {
                                  const double inv = 1.0 / p;
                                  if (1.0 - inv > threshold) total += (1.0 - inv) * (1.0 - inv) * inv;
                                  if (inv > threshold) total += inv * inv * (1.0 - inv);
                              }
                          },
                          [&](const LacunaryFractional&) {
                              // uniform marginal on [-1/2, 1/2): E(X^2; |X| > a) = (2/3)(1/8 - a^3)
                              if (threshold < 0.5)
                                  total = static_cast<double>(n) * (2.0 / 3.0) * (0.125 - threshold * threshold * threshold);
                          }},
               spec.kind);
    return total / s2;
}

}  // namespace loclab
