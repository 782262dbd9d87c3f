#include "loclab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/parallel.hpp"
#include "loclab/stats.hpp"

namespace loclab {

std::vector<KolmogorovReport> kolmogorov_check(const GeneratorSpec& spec, std::size_t k,
                                               std::span<const double> lambdas, std::size_t trials,
                                               unsigned threads) {
    if (k == 0) throw DomainError("kolmogorov_check needs k >= 1");
    if (trials == 0) throw DomainError("kolmogorov_check needs trials >= 1");
    for (double l : lambdas)
        if (!(l > 0.0)) throw DomainError("lambda must be positive");

    const PathSampler sampler(spec, k);
    const double s_k = sampler.profile()->s(k);
    if (!(s_k > 0.0)) throw DegenerateError("s_k = 0; the maximal inequality is vacuous");

    const auto max_abs = parallel_map<double>(trials, threads, [&](std::size_t trial) {
        auto inc = sampler.stream(trial);
        double S = 0.0;
        double best = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            S += inc.next();
            best = std::max(best, std::fabs(S));
        }
        return best;
    });

    std::vector<KolmogorovReport> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        KolmogorovReport r;
        r.lambda = lambda;
        r.k = k;
        r.trials = trials;
        const double threshold = lambda * s_k;
        r.hits = static_cast<std::size_t>(
            std::count_if(max_abs.begin(), max_abs.end(), [&](double m) { return m >= threshold; }));
        r.empirical = static_cast<double>(r.hits) / static_cast<double>(trials);
        r.bound = 1.0 / (lambda * lambda);
        r.std_error = binomial_se(r.empirical, trials);
        out.push_back(r);
    }
    return out;
}

KolmogorovReport kolmogorov_check(const GeneratorSpec& spec, std::size_t k, double lambda, std::size_t trials,
                                  unsigned threads) {
    const double l[] = {lambda};
    return kolmogorov_check(spec, k, l, trials, threads).front();
}

namespace {

struct EventOutcome {
    bool A = false, B = false, C = false;
};

}  // namespace

EventReport event_frequencies(const GeneratorSpec& spec, const BlockSchedule& schedule, std::size_t j,
                              std::size_t n_max, std::size_t trials, unsigned threads) {
    if (trials == 0) throw DomainError("event_frequencies needs trials >= 1");
    if (j < 1 || j + 1 > schedule.blocks().size()) throw RangeError("schedule must contain blocks j and j+1");

    const PathSampler sampler(spec, n_max);
    const VarianceProfile& profile = *sampler.profile();

    EventReport rep;
    rep.j = j;
    rep.trials = trials;
    rep.D = ratio_bound(profile).D;
    rep.k_threshold = 3.0 * rep.D * std::sqrt(schedule.M() + 1.0);

    const auto& blk = schedule.block(j);
    const auto& next = schedule.block(j + 1);
    auto resolve = [&](double log_level) {
        const double level = std::exp(log_level);
        if (!(level <= profile.horizon())) {
            std::ostringstream os;
            os << "schedule level " << level << " exceeds the horizon; largest representable level is "
               << profile.horizon();
            throw HorizonError(os.str(), profile.horizon());
        }
        return index_of_variance(profile, level);
    };
    rep.V_j = resolve(blk.log_levels[blk.t_max]);
    for (unsigned t = 0; t <= blk.t_max; ++t) rep.U_next.push_back(resolve(next.log_levels[t]));

    const std::size_t need = std::max(rep.V_j, rep.U_next.back());
    const std::size_t U1 = rep.U_next.front();
    const double s_U1 = profile.s(U1);
    std::vector<double> thresholds;
    for (unsigned t = 0; t < blk.t_max; ++t) thresholds.push_back(rep.k_threshold * profile.s(rep.U_next[t]));

    const auto outcomes = parallel_map<EventOutcome>(trials, threads, [&](std::size_t trial) {
        const auto path = sampler.sample(trial, need);
        const auto& S = path.sums;
        EventOutcome o;
        o.A = std::fabs(S[rep.V_j]) <= s_U1;
        o.C = std::fabs(S[U1] - S[rep.V_j]) <= 2.0 * s_U1;
        o.B = true;
        for (unsigned t = 0; t < blk.t_max && o.B; ++t) {
            const std::size_t a = rep.U_next[t];
            const std::size_t b = rep.U_next[t + 1];
            for (std::size_t n = a; n <= b; ++n) {
                if (std::fabs(S[b] - S[n]) > thresholds[t]) {
                    o.B = false;
                    break;
                }
            }
        }
        return o;
    });

    std::size_t a = 0, b = 0, c = 0, bc = 0, abc = 0;
    for (const auto& o : outcomes) {
        a += o.A;
        b += o.B;
        c += o.C;
        bc += o.B && o.C;
        abc += o.A && o.B && o.C;
    }
    const double n = static_cast<double>(trials);
    rep.freq_A = a / n;
    rep.freq_B = b / n;
    rep.freq_C = c / n;
    rep.freq_BC = bc / n;
    rep.freq_ABC = abc / n;
    rep.se_A = binomial_se(rep.freq_A, trials);
    rep.se_B = binomial_se(rep.freq_B, trials);
    rep.se_C = binomial_se(rep.freq_C, trials);
    rep.cov_BC = rep.freq_BC - rep.freq_B * rep.freq_C;
    rep.se_cov_BC = std::sqrt(rep.freq_B * (1.0 - rep.freq_B) * rep.freq_C * (1.0 - rep.freq_C) / n);
    const double jd = static_cast<double>(j);
    rep.bound_not_A = rep.D * rep.D / (jd * jd);
    rep.bound_B = 1.0 / std::sqrt(jd);
    return rep;
}

}  // namespace loclab
