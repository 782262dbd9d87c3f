// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "loclab/cli/commands.hpp"
#include "loclab/errors.hpp"
#include "loclab/generators.hpp"
#include "loclab/localization.hpp"
#include "loclab/monte_carlo.hpp"
#include "loclab/omega.hpp"
#include "loclab/parallel.hpp"
#include "loclab/rng.hpp"
#include "loclab/schedules.hpp"
#include "loclab/sieve.hpp"
#include "loclab/stats.hpp"
#include "loclab/profile_statistic.hpp"
#include "oracles.hpp"

using namespace loclab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

unsigned g_threads = 0;

// medians of i_surrogate for PowerLog M=1 and GrowingLog loglog x{1, 2, 4}, seed 2024
constexpr double kFrozenMedians[] = {0.923229, 0.916813, 1.18367, 1.54052};
// max |rho~ - rho| sqrt(loglog t), sample seed 8
constexpr double kFrozenRhoGap = 0.38067;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const SieveTable& sieve_1e8() {
    static const SieveTable t = [] {
        SieveOptions o;
        o.threads = g_threads;
        return build_sieve(100'000'000, o);
    }();
    return t;
}

// 1. maximal inequality at 3 standard errors, three families, 10^5 trials per cell
Outcome kolmogorov_suite() {
    const std::vector<GeneratorSpec> specs{
        {Rademacher{SigmaSchedule::constant(1.0)}, 101},
        {Gaussian{SigmaSchedule::constant(1.0)}, 102},
        {PrimeBernoulli{}, 103},
    };
    const std::vector<double> lambdas{1.5, 2.0, 4.0};
    std::size_t cells = 0, bad = 0;
    double worst = -1.0;
    std::string where;
    for (const auto& spec : specs)
        for (std::size_t k : {std::size_t{100}, std::size_t{10'000}})
            for (const auto& r : kolmogorov_check(spec, k, lambdas, 100'000, g_threads)) {
                ++cells;
                const double margin = (r.empirical - r.bound) / std::max(r.std_error, 1e-300);
                if (!r.within(3.0)) ++bad;
                if (r.empirical - r.bound > worst) {
                    worst = r.empirical - r.bound;
                    where = family_name(spec) + " lambda=" + fmt(r.lambda) + " k=" + std::to_string(k) +
                            " margin=" + fmt(margin) + "se";
                }
            }
    return {bad == 0 && cells == 18,
            std::to_string(cells) + " cells, " + std::to_string(bad) + " above bound+3se; largest excess " + where};
}

// 2. D^-1 sqrt(level) <= s_U <= sqrt(level) on every materialized level
Outcome grid_bounds() {
    const std::size_t n = 1'000'000;
    const std::vector<GeneratorSpec> specs{
        {Gaussian{SigmaSchedule::constant(1.0)}, 0},
        {PrimeBernoulli{}, 0},
        {Rademacher{SigmaSchedule::power(1.0, 0.3)}, 0},
        {Gaussian{SigmaSchedule::power(2.0, -0.45)}, 0},
        {Rademacher{SigmaSchedule{SigmaSchedule::Kind::Constant, 1.0, 0.0, {}, 7}}, 0},
    };
    const std::vector<ScheduleMode> modes{PaperExact{}, ScaledSurrogate{1.0, 0.5}, ScaledSurrogate{1.0, 0.25},
                                          ScaledSurrogate{10.0, 0.1}};
    std::size_t points = 0, bad = 0;
    for (const auto& spec : specs) {
        const auto profile = variance_profile_of(spec, n);
        const double D = ratio_bound(profile).D;
        for (double M : {0.5, 1.0, 2.0})
            for (const auto& mode : modes) {
                const auto sched = block_schedule(M, 400, mode);
                for (const auto& pt : grid_points_within(sched, profile)) {
                    ++points;
                    if (!level_bounds_hold(profile, D, pt)) ++bad;
                }
            }
    }
    return {bad == 0 && points > 0, std::to_string(points) + " levels checked, " + std::to_string(bad) + " violations"};
}

// 3. Mertens-type gap over primes in [100, 10^8] and its value at 10^8
Outcome mertens() {
    const auto& table = sieve_1e8();
    const auto tables = mertens_tables(table.primes(), table.horizon());
    const auto primes = tables.primes();
    const auto L = tables.loglog_primes();
    double worst = 0.0;
    std::uint32_t worst_p = 0;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 100) continue;
        const double gap = std::fabs(tables.variance_at(i) - L[i]);
        ++checked;
        if (gap > worst) {
            worst = gap;
            worst_p = primes[i];
        }
    }
    const double end_gap = tables.variance_sum(1e8) - loglog(1e8);
    const bool ok = worst <= 0.5 && std::fabs(end_gap - (-0.19)) <= 0.02;
    return {ok, std::to_string(checked) + " primes, max |gap| = " + fmt(worst) + " at p = " + std::to_string(worst_p) +
                    ", gap(1e8) = " + fmt(end_gap)};
}

// 4. sieve histogram of omega(m, 31) vs the exact independent law
Outcome kubilius() {
    SieveOptions o;
    o.threads = g_threads;
    const auto table = build_sieve(1'000'000, o);
    KubiliusOptions k;
    k.trials = 100'000;
    k.seed = 1;
    k.threads = g_threads;
    const auto r = kubilius_compare(table, 1'000'000, 31, StatisticRule::Omega, k);
    return {r.tv_sieve_vs_exact <= 0.02, "TV = " + fmt(r.tv_sieve_vs_exact) + " (limit 0.02), error budget " +
                                             fmt(r.error_budget.total)};
}

// 5. finite-horizon echo of the dichotomy; medians frozen from the first verified run
Outcome dichotomy() {
    const std::size_t n = 1'000'000, trials = 1000;
    const GeneratorSpec spec{Gaussian{SigmaSchedule::constant(1.0)}, 2024};
    const PathSampler sampler(spec, n);
    const double D = ratio_bound(*sampler.profile()).D;
    const std::vector<WindowFamily> windows{
        WindowFamily::power_log(1.0),
        WindowFamily::growing_log(XiShape::LogLog, 1.0),
        WindowFamily::growing_log(XiShape::LogLog, 2.0),
        WindowFamily::growing_log(XiShape::LogLog, 4.0),
    };
    // one pass per path, common random numbers across windows
    const auto values = parallel_map<std::vector<double>>(
        trials, g_threads,
        [&](std::size_t i) {
            const auto path = sampler.sample(i);
            std::vector<double> v;
            for (const auto& f : windows) v.push_back(i_surrogate(path, f, 10.0).value);
            return v;
        },
        1);
    std::vector<double> med;
    for (std::size_t w = 0; w < windows.size(); ++w) {
        std::vector<double> col;
        for (const auto& v : values)
            if (std::isfinite(v[w])) col.push_back(v[w]);
        med.push_back(col.size() == trials ? median(col) : std::nan(""));
    }
    // regression band: +-5% around the frozen medians
    const std::vector<double> frozen(std::begin(kFrozenMedians), std::end(kFrozenMedians));
    bool in_band = true;
    for (std::size_t w = 0; w < med.size(); ++w) in_band = in_band && std::fabs(med[w] / frozen[w] - 1.0) <= 0.05;
    const double bound = paper_bound(1.0, D);
    const bool ok = med[0] <= bound && med[1] <= med[2] && med[2] <= med[3] && med[3] >= 1.2 * med[0] && in_band;
    return {ok, "median PL = " + fmt(med[0]) + " (bound " + fmt(bound) + "), GL x{1,2,4} = " + fmt(med[1]) + ", " +
                    fmt(med[2]) + ", " + fmt(med[3]) + ", ratio " + fmt(med[3] / med[0]) +
                    (in_band ? ", within frozen bands" : ", OUTSIDE frozen bands")};
}

PartialSumPath injected(std::vector<double> sigma_sq, std::vector<double> sums) {
    PartialSumPath p;
    p.profile = std::make_shared<const VarianceProfile>(std::move(sigma_sq), "fixture");
    p.increments.assign(sums.size(), 0.0);
    for (std::size_t i = 1; i < sums.size(); ++i) p.increments[i] = sums[i] - sums[i - 1];
    p.sums = std::move(sums);
    return p;
}

// 6. exact agreement with exhaustive scans
Outcome oracles() {
    oracle::Gen gen(6);
    std::size_t n_h = 0, n_max = 0, n_sur = 0, n_omega = 0, n_t4 = 0;
    std::string first_failure;
    auto fail = [&](const std::string& what) {
        if (first_failure.empty()) first_failure = what;
    };

    while (n_h < 200 || n_max < 200 || n_sur < 200) {
        const std::size_t n = gen.integer(2, 10'000);
        const auto sums = gen.path(n);
        const auto path = injected(gen.sigma_sq(n), sums);
        const auto& p = *path.profile;
        const double s1 = p.prefix(p.first_positive());
        for (int k = 0; k < 3; ++k) {
            const double level = gen.real(s1, p.horizon());
            if (index_of_variance(p, level) != oracle::h(p, level)) fail("h at level " + fmt(level));
            ++n_h;
        }
        const auto f = gen.family();
        const double N = gen.real(1.0, std::max(1.0, p.horizon() / 4));
        if (N * f(N) <= p.horizon()) {
            const auto r = localized_max(path, N, f);
            const auto o = oracle::localized_max(p, sums, N, f(N));
            if (r.empty != o.empty || (!o.empty && (r.max_value != o.value || r.argmax_n != o.argmax)))
                fail("localized_max at N = " + fmt(N));
            ++n_max;
        }
        const double G = gen.real(2.0, 12.0), e = gen.real(1.0, 2.0);
        const double top = std::pow(G, e);
        if (top * f(top) <= p.horizon()) {
            const auto r = i_surrogate(path, f, G, e);
            const auto o = oracle::i_surrogate(p, sums, f, G, e);
            if (r.empty != o.empty || (!o.empty && r.value != o.value)) fail("i_surrogate at G = " + fmt(G));
            ++n_sur;
        }
    }

    const std::uint64_t x = 100'000;
    const auto table = build_sieve(x);
    const auto oracle_primes = oracle::primes_upto(x);
    const std::vector<std::uint64_t> all(table.primes().begin(), table.primes().end());
    if (all != oracle_primes) fail("prime list");
    for (; n_omega < 300; ++n_omega) {
        const std::uint64_t m = gen.integer(2, x);
        std::vector<std::uint64_t> th;
        for (auto q : oracle_primes)
            if (gen.coin(0.01)) th.push_back(q);
        if (th.empty()) th.push_back(2);
        const auto prof = omega_profile(table, m, th);
        for (std::size_t i = 0; i < th.size(); ++i)
            if (prof.counts[i] != oracle::omega(m, th[i])) fail("omega_profile m = " + std::to_string(m));
    }
    const std::vector<WindowFamily> fams{WindowFamily::power_log(1.0), WindowFamily::power_log(0.5),
                                         WindowFamily::growing_log(XiShape::LogLog, 1.5),
                                         WindowFamily::constant(1.3)};
    while (n_t4 < 200) {
        const auto& f = fams[gen.integer(0, fams.size() - 1)];
        const bool bound_probe = gen.coin();
        const double g = bound_probe ? gen.real(1.02, 1.2) : gen.real(1.02, 1.6);
        const double budget = bound_probe ? 0.0 : gen.real(1.5, 2.44);
        const ProbeMode mode = bound_probe ? ProbeMode{BoundProbe{}} : ProbeMode{GrowthProbe{budget}};
        const std::uint64_t m = gen.integer(2, x);
        ProfileStatResult r;
        try {
            r = profile_statistic(omega_profile(table, m, all), g, f, mode);
        } catch (const HorizonError&) {
            continue;
        }
        const auto o = oracle::profile_statistic(m, oracle_primes, g, f, bound_probe, budget);
        if (r.empty != o.empty || (!o.empty && r.value != o.value)) fail("profile_statistic m = " + std::to_string(m));
        ++n_t4;
    }
    const bool ok = first_failure.empty();
    return {ok, "fixtures h " + std::to_string(n_h) + ", localized_max " + std::to_string(n_max) + ", i_surrogate " +
                    std::to_string(n_sur) + ", omega_profile " + std::to_string(n_omega) + ", profile_statistic " +
                    std::to_string(n_t4) + (ok ? "" : "; first mismatch: " + first_failure)};
}

// 7. omega(m, x) - omega(m, x^{1/sqrt(loglog x)}) <= sqrt(loglog x) for all m <= 10^6
Outcome late_growth() {
    const std::uint64_t x = 1'000'000;
    const auto table = build_sieve(x);
    const double L = loglog(static_cast<double>(x));
    const auto cut = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(x), 1.0 / std::sqrt(L))));
    unsigned worst = 0;
    std::uint64_t bad = 0;
    for (std::uint64_t m = 1; m <= x; ++m) {
        const unsigned d = table.omega(m, x) - table.omega(m, cut);
        worst = std::max(worst, d);
        if (d > std::sqrt(L)) ++bad;
    }
    return {bad == 0, "cut = " + std::to_string(cut) + ", max growth " + std::to_string(worst) + " vs sqrt(loglog x) = " +
                          fmt(std::sqrt(L)) + ", violations " + std::to_string(bad)};
}

// 8. max |rho~ - rho| sqrt(loglog t) over sampled m <= 10^8 and prime t in [10^3, 10^6], frozen within 5%
Outcome rho_gap() {
    const auto& table = sieve_1e8();
    const auto tables = mertens_tables(table.primes(), table.horizon());
    const auto primes = tables.primes();
    const std::size_t first = tables.count_le(999.0), last = tables.count_le(1e6);
    CounterStream rng(8, 0, 0);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const std::uint64_t m = 2 + rng.below(100'000'000 - 1);
        const auto factors = table.distinct_prime_factors(m);
        std::size_t k = 0;
        for (std::size_t i = first; i < last; ++i) {
            const double t = primes[i];
            while (k < factors.size() && factors[k] <= primes[i]) ++k;
            const auto w = static_cast<unsigned>(k);
            const double gap = std::fabs(rho_tilde(w, t, tables) - rho(w, t)) * std::sqrt(loglog(t));
            worst = std::max(worst, gap);
        }
    }
    const double frozen = kFrozenRhoGap;
    const bool ok = std::isfinite(worst) && std::fabs(worst / frozen - 1.0) <= 0.05;
    return {ok, "max = " + fmt(worst) + " (frozen " + fmt(frozen) + ", band 5%)"};
}

// 9. byte-identical payloads across reruns and thread counts {1, 4, 8}
Outcome determinism() {
    using namespace loclab::cli;
    const std::vector<std::pair<std::string, std::string>> cases{
        {"kolmogorov", R"({"generator": {"family": "prime_bernoulli"}, "trials": 20000, "ks": [100, 1000]})"},
        {"localized", R"({"n_max": 100000, "trials": 64, "events": {"j": 2, "trials": 2000}})"},
        {"brownian", R"({"T": 100000, "trials": 64, "refinements": 1})"},
        {"omega-scan", R"({"x": 1000000, "ms": [510510, 999983, 720720], "thresholds": [], "t_max": 1000})"},
        {"density", R"({"x": 1000000, "K": 1.0})"},
        {"density", R"({"x": 1000000, "probe": "growth", "g": {"kind": "constant", "value": 1.1}})"},
        {"kubilius", R"({"x": 1000000, "r": 31, "trials": 200000})"},
        {"schedule", R"({"j_max": 12, "mode": {"kind": "scaled_surrogate"}, "star": {}})"},
    };
    auto strip = [](std::string s) {
        const auto p = s.find("wall_time_s");
        return p == std::string::npos ? s : s.substr(0, p);
    };
    std::size_t runs = 0;
    std::string diff;
    for (const auto& [name, params] : cases) {
        auto c = parse_config(R"({"command": ")" + name + R"(", "seed": 9, "params": )" + params + "}");
        c.threads = 1;
        const auto base = run(c);
        const auto base_payload = payload_dump(base);
        const auto base_csv = strip(render_csv(base)), base_json = strip(render_json(base));
        for (unsigned t : {1u, 4u, 8u}) {
            c.threads = t;
            const auto r = run(c);
            ++runs;
            if (payload_dump(r) != base_payload || strip(render_csv(r)) != base_csv ||
                strip(render_json(r)) != base_json)
                if (diff.empty()) diff = name + " threads=" + std::to_string(t);
        }
    }
    return {diff.empty(), std::to_string(cases.size()) + " configs x {rerun, 4, 8 threads}, " + std::to_string(runs) +
                              " runs" + (diff.empty() ? "" : "; differs: " + diff)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_threads = static_cast<unsigned>(std::stoul(argv[1]));
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"kolmogorov inequality suite", kolmogorov_suite},
        {"grid level bounds", grid_bounds},
        {"mertens gap", mertens},
        {"kubilius agreement", kubilius},
        {"dichotomy echo", dichotomy},
        {"oracle equivalence", oracles},
        {"late growth", late_growth},
        {"rho tilde vs rho", rho_gap},
        {"cli determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("criterion %zu %-28s %s  %s [%.1fs]\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
