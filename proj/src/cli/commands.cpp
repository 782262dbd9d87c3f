#include "loclab/cli/commands.hpp"

#include <chrono>
#include <cmath>

#include "loclab/brownian.hpp"
#include "loclab/errors.hpp"
#include "loclab/monte_carlo.hpp"
#include "loclab/parallel.hpp"
#include "loclab/sieve.hpp"
#include "loclab/stats.hpp"

namespace loclab::cli {
namespace {

GeneratorSpec seeded(GeneratorSpec spec, std::uint64_t seed) {
    spec.seed = seed;
    return spec;
}

SieveTable sieve_for(std::uint64_t x, unsigned threads) {
    SieveOptions opt;
    opt.threads = threads;
    return build_sieve(x, opt);
}

ordered_json quartiles(std::vector<double> values) {
    ordered_json j = ordered_json::object();
    j["count"] = values.size();
    if (values.empty()) {
        j["median"] = num(std::nan(""));
        j["q25"] = num(std::nan(""));
        j["q75"] = num(std::nan(""));
        return j;
    }
    j["median"] = num(median(values));
    j["q25"] = num(quantile(values, 0.25));
    j["q75"] = num(quantile(std::move(values), 0.75));
    return j;
}

ordered_json nums(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

}  // namespace

RunRecord run_kolmogorov(const ExperimentConfig& config) {
    const auto& p = std::get<KolmogorovParams>(config.params);
    const auto spec = seeded(p.generator, config.seed);
    RunRecord rec;
    rec.table.columns = {"lambda", "k", "trials", "empirical", "bound", "stderr"};
    bool all_within = true;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k : p.ks) {
        for (const auto& r : kolmogorov_check(spec, k, p.lambdas, p.trials, config.threads)) {
            rec.table.rows.push_back({num(r.lambda), r.k, r.trials, num(r.empirical), num(r.bound), num(r.std_error)});
            all_within = all_within && r.within(3.0);
            worst = std::max(worst, r.empirical - r.bound);
        }
    }
    rec.summary["family"] = family_name(spec);
    rec.summary["cells"] = rec.table.rows.size();
    rec.summary["all_within_3se"] = all_within;
    rec.summary["max_excess_over_bound"] = num(worst);
    return rec;
}

RunRecord run_localized(const ExperimentConfig& config) {
    const auto& p = std::get<LocalizedParams>(config.params);
    const auto spec = seeded(p.generator, config.seed);
    const PathSampler sampler(spec, p.n_max);
    const double D = ratio_bound(*sampler.profile()).D;

    struct Trial {
        SurrogateRecord sur;
        std::size_t argmax_n = 0;
    };
    const auto trials = parallel_map<Trial>(
        p.trials, config.threads,
        [&](std::size_t i) {
            const auto path = sampler.sample(i);
            Trial t;
            t.sur = i_surrogate(path, p.window, p.G, p.exponent, p.grid);
            if (!t.sur.empty) t.argmax_n = localized_max(path, t.sur.argmin_level, p.window).argmax_n;
            return t;
        },
        1);

    RunRecord rec;
    rec.table.columns = {"trial", "N", "max_value", "argmax_n", "levels_evaluated", "empty_levels"};
    std::vector<double> values;
    std::size_t empty = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& s = trials[i].sur;
        rec.table.rows.push_back({i, num(s.argmin_level), num(s.value), trials[i].argmax_n, s.levels_evaluated,
                                  s.empty_levels});
        if (s.empty)
            ++empty;
        else
            values.push_back(s.value);
    }
    rec.summary["family"] = family_name(spec);
    rec.summary["window"] = p.window.describe();
    rec.summary["D"] = num(D);
    rec.summary["power_log_bound"] =
        p.window.kind() == WindowFamily::Kind::PowerLog ? num(paper_bound(p.window.exponent(), D)) : num(std::nan(""));
    rec.summary["empty_trials"] = empty;
    rec.summary["i_surrogate"] = quartiles(std::move(values));

    if (p.events) {
        const auto& e = *p.events;
        const auto schedule = block_schedule(e.M, std::max<std::size_t>(e.j + 1, 2), e.mode);
        const auto r = event_frequencies(spec, schedule, e.j, p.n_max, e.trials, config.threads);
        ordered_json ev = ordered_json::object();
        ev["j"] = r.j;
        ev["trials"] = r.trials;
        ev["D"] = num(r.D);
        ev["k_threshold"] = num(r.k_threshold);
        ev["V_j"] = r.V_j;
        ev["freq_A"] = num(r.freq_A);
        ev["freq_B"] = num(r.freq_B);
        ev["freq_C"] = num(r.freq_C);
        ev["freq_BC"] = num(r.freq_BC);
        ev["freq_ABC"] = num(r.freq_ABC);
        ev["se_A"] = num(r.se_A);
        ev["se_B"] = num(r.se_B);
        ev["se_C"] = num(r.se_C);
        ev["cov_BC"] = num(r.cov_BC);
        ev["se_cov_BC"] = num(r.se_cov_BC);
        ev["bound_not_A"] = num(r.bound_not_A);
        ev["bound_B"] = num(r.bound_B);
        ev["bound_C"] = num(r.bound_C);
        rec.summary["events"] = ev;
    }
    return rec;
}

RunRecord run_brownian(const ExperimentConfig& config) {
    const auto& p = std::get<BrownianParams>(config.params);

    struct Trial {
        SurrogateRecord sur;
        LocalizedSupRecord at;
        double lil_ratio = 0.0;
    };
    const auto trials = parallel_map<Trial>(
        p.trials, config.threads,
        [&](std::size_t i) {
            auto path = simulate_brownian(p.T, p.grid, config.seed, i, p.t0);
            for (unsigned k = 0; k < p.refinements; ++k) path = refine_brownian(path);
            Trial t;
            t.sur = brownian_i_surrogate(path, p.window, p.G, p.exponent);
            if (!t.sur.empty) t.at = localized_sup(path, t.sur.argmin_level, p.window);
            t.lil_ratio = p.T > std::exp(1.0) ? path.values.back() / lil_envelope(p.T) : std::nan("");
            return t;
        },
        1);

    RunRecord rec;
    rec.table.columns = {"trial", "N", "sup_value", "arg_time", "points", "levels_evaluated", "empty_levels",
                         "lil_ratio_at_T"};
    std::vector<double> values, lil;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        rec.table.rows.push_back({i, num(t.sur.argmin_level), num(t.sur.value), num(t.at.arg_time), t.at.points,
                                  t.sur.levels_evaluated, t.sur.empty_levels, num(t.lil_ratio)});
        if (!t.sur.empty) values.push_back(t.sur.value);
        lil.push_back(t.lil_ratio);
    }
    rec.summary["window"] = p.window.describe();
    rec.summary["resolution"] = num(trials.empty() ? 0.0 : trials.front().at.resolution);
    rec.summary["empty_trials"] = trials.size() - values.size();
    rec.summary["i_surrogate"] = quartiles(std::move(values));
    rec.summary["lil_ratio_at_T"] = quartiles(std::move(lil));
    return rec;
}

RunRecord run_omega_scan(const ExperimentConfig& config) {
    const auto& p = std::get<OmegaScanParams>(config.params);
    std::vector<std::uint64_t> thresholds = p.thresholds;
    const std::uint64_t sieve_to = std::max(p.x, thresholds.empty() ? p.t_max : std::uint64_t{2});
    const auto table = sieve_for(sieve_to, config.threads);
    if (thresholds.empty())
        for (std::uint32_t q : table.primes())
            if (q <= p.t_max) thresholds.push_back(q);

    RunRecord rec;
    rec.table.columns = {"m", "t", "omega"};
    for (std::uint64_t m : p.ms) {
        const auto prof = omega_profile(table, m, thresholds);
        for (std::size_t i = 0; i < thresholds.size(); ++i)
            rec.table.rows.push_back({m, prof.thresholds[i], prof.counts[i]});
    }
    rec.summary["x"] = p.x;
    rec.summary["integers"] = p.ms.size();
    rec.summary["thresholds"] = thresholds.size();
    return rec;
}

RunRecord run_density(const ExperimentConfig& config) {
    const auto& p = std::get<DensityParams>(config.params);
    const auto table = sieve_for(p.x, config.threads);
    DensityOptions opt;
    opt.K = p.K;
    opt.level = p.level;
    opt.c = p.c;
    opt.u = p.u;
    opt.threads = config.threads;
    const ProbeMode mode = p.bound_probe ? ProbeMode{BoundProbe{}} : ProbeMode{GrowthProbe{}};
    const auto r = density_scan(table, p.g, p.window, mode, opt);

    RunRecord rec;
    rec.table.columns = {"x", "mode", "levels", "inadmissible_levels", "scanned", "satisfied", "empty", "fraction"};
    rec.table.rows.push_back(
        {r.x, r.mode, r.levels, r.inadmissible_levels, r.scanned, r.satisfied, r.empty, num(r.fraction)});
    auto& s = rec.summary;
    s["mode"] = r.mode;
    s["g_rule"] = r.g_rule;
    s["window"] = r.window;
    s["K"] = num(r.K);
    s["level"] = num(r.level);
    s["budget"] = num(r.budget);
    s["loglog_x"] = num(r.loglog_x);
    s["g_at_x"] = num(r.g_at_x);
    s["D_prime_model"] = num(r.D_prime_model);
    s["K_bound"] = num(r.K_bound);
    s["fraction"] = num(r.fraction);
    s["error_budget"] = {{"c", num(r.error_budget.c)},
                         {"u", num(r.error_budget.u)},
                         {"x_term", num(r.error_budget.x_term)},
                         {"u_term", num(r.error_budget.u_term)},
                         {"total", num(r.error_budget.total)}};
    s["regime_caveat"] = r.regime_caveat;
    return rec;
}

RunRecord run_kubilius(const ExperimentConfig& config) {
    const auto& p = std::get<KubiliusParams>(config.params);
    const auto table = sieve_for(p.x, config.threads);
    KubiliusOptions opt;
    opt.trials = p.trials;
    opt.seed = config.seed;
    opt.c = p.c;
    opt.threads = config.threads;
    const auto r = kubilius_compare(table, p.x, p.r, p.statistic, opt);

    RunRecord rec;
    rec.table.columns = {"value", "sieve", "model_exact", "model_mc"};
    const std::size_t n = std::max({r.sieve.size(), r.model_exact.size(), r.model_mc.size()});
    auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    for (std::size_t i = 0; i < n; ++i)
        rec.table.rows.push_back({i, num(at(r.sieve, i)), num(at(r.model_exact, i)), num(at(r.model_mc, i))});
    auto& s = rec.summary;
    s["statistic"] = r.statistic;
    s["u"] = num(r.u);
    s["primes_used"] = r.primes_used;
    s["trials"] = r.trials;
    s["tv_sieve_vs_exact"] = num(r.tv_sieve_vs_exact);
    s["tv_sieve_vs_mc"] = num(r.tv_sieve_vs_mc);
    s["tv_mc_vs_exact"] = num(r.tv_mc_vs_exact);
    s["mc_noise_scale"] = num(r.mc_noise_scale);
    s["error_budget"] = {{"c", num(r.error_budget.c)},
                         {"u", num(r.error_budget.u)},
                         {"x_term", num(r.error_budget.x_term)},
                         {"u_term", num(r.error_budget.u_term)},
                         {"total", num(r.error_budget.total)}};
    return rec;
}

RunRecord run_schedule(const ExperimentConfig& config) {
    const auto& p = std::get<ScheduleParams>(config.params);
    const auto sched = block_schedule(p.M, p.j_max, p.mode);

    RunRecord rec;
    rec.table.columns = {"j", "t", "log_level", "log_N", "t_max", "covers_window"};
    for (const auto& b : sched.blocks())
        for (std::size_t t = 0; t < b.log_levels.size(); ++t)
            rec.table.rows.push_back({b.j, t, num(b.log_levels[t]), num(b.log_N), b.t_max, b.covers_window});
    rec.summary["M"] = num(p.M);
    rec.summary["blocks"] = sched.blocks().size();
    if (p.star) {
        const auto st = star_schedule(p.star->window, p.star->D, p.star->j_max);
        ordered_json j = ordered_json::object();
        j["window"] = p.star->window.describe();
        j["K"] = num(st.K);
        j["log_levels"] = nums(st.log_levels);
        j["u"] = st.u;
        ordered_json sq = ordered_json::array();
        for (bool b : st.squared_bound) sq.push_back(b);
        j["squared_bound"] = sq;
        rec.summary["star"] = j;
    }
    return rec;
}

RunRecord run(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    if (config.command == "kolmogorov")
        rec = run_kolmogorov(config);
    else if (config.command == "localized")
        rec = run_localized(config);
    else if (config.command == "brownian")
        rec = run_brownian(config);
    else if (config.command == "omega-scan")
        rec = run_omega_scan(config);
    else if (config.command == "density")
        rec = run_density(config);
    else if (config.command == "kubilius")
        rec = run_kubilius(config);
    else if (config.command == "schedule")
        rec = run_schedule(config);
    else
        throw ConfigError("unknown command '" + config.command + "'");
    rec.command = config.command;
    rec.config_hash = config_hash(config);
    rec.seed = config.seed;
    rec.config = ordered_json::parse(params_to_json(config.params).dump());
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const HorizonError*>(&e) || dynamic_cast<const CapacityError*>(&e) ||
        dynamic_cast<const InfeasibleError*>(&e))
        return 3;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SpecError*>(&e) ||
        dynamic_cast<const DomainError*>(&e) || dynamic_cast<const RangeError*>(&e) ||
        dynamic_cast<const DegenerateError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
        return 2;
    return 4;
}

}  // namespace loclab::cli
