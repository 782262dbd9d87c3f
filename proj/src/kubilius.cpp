#include "loclab/kubilius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"
#include "loclab/stats.hpp"

namespace loclab {
namespace {

std::size_t apply_rule(StatisticRule rule, std::size_t count) {
    return rule == StatisticRule::Omega ? count : count % 2;
}

std::vector<double> normalize(const std::vector<std::uint64_t>& counts, double total) {
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / total;
    return out;
}

void merge_into(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& part) {
    if (into.size() < part.size()) into.resize(part.size(), 0);
    for (std::size_t i = 0; i < part.size(); ++i) into[i] += part[i];
}

}  // namespace

std::vector<double> poisson_binomial(std::span<const double> probabilities) {
    std::vector<double> law{1.0};
    law.reserve(probabilities.size() + 1);
    for (double p : probabilities) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("Poisson-binomial probabilities must lie in [0, 1]");
        law.push_back(0.0);
        for (std::size_t k = law.size() - 1; k > 0; --k) law[k] = law[k] * (1.0 - p) + law[k - 1] * p;
        law[0] *= 1.0 - p;
    }
    return law;
}

std::string to_string(StatisticRule rule) { return rule == StatisticRule::Omega ? "omega" : "omega_parity"; }

StatisticRule statistic_rule_from_string(const std::string& name) {
    if (name == "omega") return StatisticRule::Omega;
    if (name == "omega_parity") return StatisticRule::OmegaParity;
    throw ConfigError("unknown statistic rule '" + name + "' (expected omega or omega_parity)");
}

KubiliusReport kubilius_compare(const SieveTable& table, std::uint64_t x, std::uint64_t r, StatisticRule rule,
                                const KubiliusOptions& options) {
    if (r < 2) throw RangeError("r must be >= 2 so that some prime lies below it");
    if (x > table.horizon()) throw RangeError("x exceeds the sieve horizon");
    if (r > x / r) {
        std::ostringstream os;
        os << "r = " << r << " exceeds sqrt(x); the comparison needs u = log x / log r >= 2";
        throw RangeError(os.str());
    }
    if (options.trials == 0) throw ConfigError("kubilius comparison needs trials >= 1");

    KubiliusReport rep;
    rep.x = x;
    rep.r = r;
    rep.u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(r));
    rep.statistic = to_string(rule);
    rep.trials = options.trials;
    rep.seed = options.seed;

    std::vector<double> probs;
    for (std::uint32_t p : table.primes()) {
        if (p > r) break;
        probs.push_back(1.0 / static_cast<double>(p));
    }
    rep.primes_used = probs.size();

    const auto exact_count = poisson_binomial(probs);
    if (rule == StatisticRule::Omega) {
        rep.model_exact = exact_count;
    } else {
        rep.model_exact.assign(2, 0.0);
        for (std::size_t k = 0; k < exact_count.size(); ++k) rep.model_exact[k % 2] += exact_count[k];
    }

    constexpr std::size_t kChunk = 1 << 14;
    {
        const std::size_t chunks = static_cast<std::size_t>((x + kChunk - 1) / kChunk);
        std::vector<std::vector<std::uint64_t>> parts(chunks);
        parallel_for(
            chunks, options.threads,
            [&](std::size_t c) {
                auto& h = parts[c];
                const std::uint64_t begin = 1 + c * kChunk, end = std::min<std::uint64_t>(x, begin + kChunk - 1);
                for (std::uint64_t m = begin; m <= end; ++m) {
                    const std::size_t k = apply_rule(rule, table.omega(m, r));
                    if (h.size() <= k) h.resize(k + 1, 0);
                    ++h[k];
                }
            },
            1);
        std::vector<std::uint64_t> total;
        for (const auto& h : parts) merge_into(total, h);
        rep.sieve = normalize(total, static_cast<double>(x));
    }
    {
        const std::size_t chunks = (options.trials + kChunk - 1) / kChunk;
        std::vector<std::vector<std::uint64_t>> parts(chunks);
        parallel_for(
            chunks, options.threads,
            [&](std::size_t c) {
                auto& h = parts[c];
                const std::size_t begin = c * kChunk, end = std::min(options.trials, begin + kChunk);
                for (std::size_t trial = begin; trial < end; ++trial) {
                    CounterStream rng(options.seed, trial);
                    std::size_t count = 0;
                    for (double p : probs) count += rng.uniform() < p ? 1 : 0;
                    const std::size_t k = apply_rule(rule, count);
                    if (h.size() <= k) h.resize(k + 1, 0);
                    ++h[k];
                }
            },
            1);
        std::vector<std::uint64_t> total;
        for (const auto& h : parts) merge_into(total, h);
        rep.model_mc = normalize(total, static_cast<double>(options.trials));
    }

    rep.tv_sieve_vs_exact = total_variation(rep.sieve, rep.model_exact);
    rep.tv_sieve_vs_mc = total_variation(rep.sieve, rep.model_mc);
    rep.tv_mc_vs_exact = total_variation(rep.model_mc, rep.model_exact);
    double noise = 0.0;
    for (double p : rep.model_exact)
        noise += std::sqrt(2.0 * p * (1.0 - p) / (std::numbers::pi * static_cast<double>(options.trials)));
    rep.mc_noise_scale = 0.5 * noise;
    rep.error_budget = kubilius_error_budget(static_cast<double>(x), rep.u, options.c);
    return rep;
}

}  // namespace loclab
