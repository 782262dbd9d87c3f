#include "loclab/profile_statistic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/generators.hpp"
#include "loclab/localization.hpp"
#include "loclab/parallel.hpp"
#include "loclab/variance_ladder.hpp"

namespace loclab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_bound_probe(const ProbeMode& mode) { return std::holds_alternative<BoundProbe>(mode); }

// same arithmetic as rho() so both evaluation paths agree bit for bit
double rho_at(unsigned w, double L) { return std::fabs(static_cast<double>(w) - L) / std::sqrt(L); }

void fold(ProfileStatResult& r, double N, bool empty, double value) {
    ++r.levels_evaluated;
    if (empty) {
        ++r.empty_levels;
        return;
    }
    if (r.empty || value < r.value) {
        r.value = value;
        r.argmin_level = N;
        r.empty = false;
    }
}

}  // namespace

ProbeLevels probe_levels(double g, const WindowFamily& f, const ProbeMode& mode) {
    if (!(g > 1.0) || !std::isfinite(g)) throw DomainError("probe levels need finite g > 1");
    ProbeLevels out;
    if (is_bound_probe(mode)) {
        out.levels = surrogate_levels(g, 2.0, LevelGrid::Geometric);
        return out;
    }
    const double budget = std::get<GrowthProbe>(mode).budget;
    for (double N = g; N <= budget; N *= 2.0) {
        const double fN = f(N);
        if (N * fN > budget) continue;
        if (fN > N) {
            ++out.inadmissible;
            continue;
        }
        out.levels.push_back(N);
    }
    return out;
}

ProfileStatResult profile_statistic(const OmegaThresholdProfile& profile, double g, const WindowFamily& f,
                                  const ProbeMode& mode) {
    if (profile.thresholds.empty()) throw DomainError("empty threshold profile");
    if (profile.counts.size() != profile.thresholds.size()) throw DomainError("profile counts and thresholds differ");
    const double covered = loglog(static_cast<double>(profile.thresholds.back()));
    const auto lv = probe_levels(g, f, mode);
    const bool bound_probe = is_bound_probe(mode);
    const double reach = bound_probe ? lv.levels.back() * f(lv.levels.back()) : std::get<GrowthProbe>(mode).budget;
    if (reach > covered) {
        std::ostringstream os;
        os << "windows reach loglog t = " << reach << " but thresholds stop at loglog t = " << covered;
        throw HorizonError(os.str(), covered);
    }
    ProfileStatResult r;
    r.inadmissible_levels = lv.inadmissible;
    for (double N : lv.levels) {
        const double top = N * f(N);
        bool empty = true;
        double best = 0.0;
        for (std::size_t i = 0; i < profile.thresholds.size(); ++i) {
            const double t = static_cast<double>(profile.thresholds[i]);
            if (t <= 2.0) continue;
            const double L = loglog(t);
            const bool inside = (bound_probe ? N < L : N <= L) && L <= top;
            if (!inside) continue;
            const double v = rho(profile.counts[i], t);
            if (empty || v > best) best = v;
            empty = false;
        }
        fold(r, N, empty, best);
    }
    return r;
}

double bound_constant(double M, double D) {
    if (!(M > 0.0)) throw DomainError("bound constant needs M > 0");
    if (!(D >= 1.0)) throw DomainError("bound constant needs D >= 1");
    return 30.0 * D * D * std::sqrt(M + 1.0);
}

ProfileStatEvaluator::ProfileStatEvaluator(const SieveTable& table, const MertensTables& tables, WindowFamily f,
                                     ProbeMode mode)
    : table_(&table), tables_(&tables), f_(f), mode_(mode) {
    if (tables.primes().size() != table.primes().size())
        throw DomainError("Mertens tables do not match the sieve's prime list");
}

std::vector<ProfileStatEvaluator::Window> ProfileStatEvaluator::resolve(double g, std::size_t* inadmissible) const {
    const auto L = tables_->loglog_primes();
    const double covered = loglog(static_cast<double>(table_->horizon()));
    const auto lv = probe_levels(g, f_, mode_);
    const bool bound_probe = is_bound_probe(mode_);
    const double reach = bound_probe ? lv.levels.back() * f_(lv.levels.back()) : std::get<GrowthProbe>(mode_).budget;
    if (reach > covered) {
        std::ostringstream os;
        os << "windows reach loglog t = " << reach << " but the sieve stops at loglog x = " << covered;
        throw HorizonError(os.str(), covered);
    }
    if (inadmissible) *inadmissible = lv.inadmissible;
    std::vector<Window> out;
    out.reserve(lv.levels.size());
    for (double N : lv.levels) {
        const double top = N * f_(N);
        Window w;
        w.N = N;
        w.first = static_cast<std::size_t>(
            (bound_probe ? std::upper_bound(L.begin(), L.end(), N) : std::lower_bound(L.begin(), L.end(), N)) - L.begin());
        w.last = static_cast<std::size_t>(std::upper_bound(L.begin(), L.end(), top) - L.begin());
        w.last = std::max(w.first, w.last);
        out.push_back(w);
    }
    return out;
}

ProfileStatResult ProfileStatEvaluator::evaluate(std::uint64_t m, const std::vector<Window>& windows) const {
    const auto primes = tables_->primes();
    const auto L = tables_->loglog_primes();
    std::vector<std::size_t> pos;
    for (std::uint32_t p : table_->distinct_prime_factors(m))
        pos.push_back(static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), p) - primes.begin()));
    auto omega_at = [&](std::size_t i) {
        return static_cast<unsigned>(std::upper_bound(pos.begin(), pos.end(), i) - pos.begin());
    };
    ProfileStatResult r;
    for (const auto& w : windows) {
        if (w.first >= w.last) {
            fold(r, w.N, true, 0.0);
            continue;
        }
        double best = std::max(rho_at(omega_at(w.first), L[w.first]), rho_at(omega_at(w.last - 1), L[w.last - 1]));
        for (std::size_t P : pos) {
            if (P <= w.first || P >= w.last) continue;
            best = std::max(best, rho_at(omega_at(P - 1), L[P - 1]));
            best = std::max(best, rho_at(omega_at(P), L[P]));
        }
        fold(r, w.N, false, best);
    }
    return r;
}

ProfileStatResult ProfileStatEvaluator::evaluate(std::uint64_t m, double g) const {
    std::size_t inadmissible = 0;
    const auto windows = resolve(g, &inadmissible);
    auto r = evaluate(m, windows);
    r.inadmissible_levels = inadmissible;
    return r;
}

double GRule::operator()(double m) const {
    if (kind == Kind::Constant) return value;
    if (!(m > std::exp(1.0))) return value;
    return std::max(value, std::pow(loglog(m), exponent));
}

std::string GRule::describe() const {
    std::ostringstream os;
    if (kind == Kind::Constant)
        os << "constant(" << value << ")";
    else
        os << "max(" << value << ", (loglog m)^" << exponent << ")";
    return os.str();
}

ErrorBudget kubilius_error_budget(double x, double u, double c) {
    if (!(x > 1.0)) throw DomainError("error budget needs x > 1");
    if (!(c > 0.0 && c < 1.0)) throw DomainError("error budget needs 0 < c < 1");
    if (!(u > 0.0)) throw DomainError("error budget needs u > 0");
    ErrorBudget b;
    b.c = c;
    b.u = u;
    b.x_term = std::pow(x, -c);
    b.u_term = std::exp(-u * std::log(u));
    b.total = b.x_term + b.u_term;
    return b;
}

double script_L(double x) {
    if (!(x > std::exp(std::exp(1.0)))) throw DomainError("script_L needs logloglog x defined (x > e^e)");
    return loglog(x) - 0.5 * logloglog(x);
}

DensityReport density_scan(const SieveTable& table, const GRule& g, const WindowFamily& f, const ProbeMode& mode,
                           const DensityOptions& options) {
    const std::uint64_t x = table.horizon();
    const double xd = static_cast<double>(x);
    if (!(xd > std::exp(std::exp(1.0)))) throw ConfigError("density scan needs x > e^e");
    const bool bound_probe = is_bound_probe(mode);
    DensityReport rep;
    rep.x = x;
    rep.mode = bound_probe ? "bound" : "growth";
    rep.g_rule = g.describe();
    rep.window = f.describe();
    rep.K = options.K;
    rep.level = options.level;
    rep.loglog_x = loglog(xd);
    rep.g_at_x = g(xd);

    ProbeMode effective = mode;
    if (bound_probe) {
        const double g2 = rep.g_at_x * rep.g_at_x;
        const double reach = g2 * f(g2);
        if (reach > rep.loglog_x) {
            std::ostringstream os;
            os << "g^2 f(g^2) = " << reach << " exceeds loglog x = " << rep.loglog_x
               << "; smallest feasible x is exp(exp(" << reach << ")) = " << std::exp(std::exp(reach));
            throw ConfigError(os.str());
        }
    } else {
        const double cap = std::pow(rep.loglog_x, 0.1);
        if (rep.g_at_x > cap) {
            const double need = std::pow(rep.g_at_x, 10.0);
            std::ostringstream os;
            os << "g(x) = " << rep.g_at_x << " exceeds (loglog x)^(1/10) = " << cap
               << "; smallest feasible x is exp(exp(" << need << ")) = " << std::exp(std::exp(need));
            throw ConfigError(os.str());
        }
        rep.budget = script_L(xd);
        effective = GrowthProbe{rep.budget};
    }

    // D is attained at the start of the prime profile; later ratios only shrink toward 1
    const std::size_t n_profile = static_cast<std::size_t>(std::min<std::uint64_t>(x, 100'000));
    rep.D_prime_model = ratio_bound(variance_profile_of(GeneratorSpec{PrimeBernoulli{}, 0}, n_profile)).D;
    rep.K_bound = f.kind() == WindowFamily::Kind::PowerLog ? bound_constant(f.exponent(), rep.D_prime_model) : kNaN;

    const auto tables = mertens_tables(table.primes(), x);
    const ProfileStatEvaluator eval(table, tables, f, effective);
    const bool constant_g = g.kind == GRule::Kind::Constant;
    std::size_t inadmissible = 0;
    const auto fixed = eval.resolve(rep.g_at_x, &inadmissible);
    rep.levels = fixed.size();
    rep.inadmissible_levels = inadmissible;

    const std::size_t count = static_cast<std::size_t>(x - 1);
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    std::vector<std::size_t> sat(chunks, 0), emp(chunks, 0);
    parallel_for(
        chunks, options.threads,
        [&](std::size_t c) {
            const std::size_t begin = c * kChunk, end = std::min(count, begin + kChunk);
            std::size_t s = 0, e = 0;
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint64_t m = i + 2;
                const auto r = constant_g ? eval.evaluate(m, fixed) : eval.evaluate(m, g(static_cast<double>(m)));
                if (r.empty) {
                    ++e;
                    continue;
                }
                if (bound_probe ? r.value <= options.K : r.value >= options.level) ++s;
            }
            sat[c] = s;
            emp[c] = e;
        },
        1);
    for (std::size_t c = 0; c < chunks; ++c) {
        rep.satisfied += sat[c];
        rep.empty += emp[c];
    }
    rep.scanned = count;
    rep.fraction = static_cast<double>(rep.satisfied) / static_cast<double>(count);
    const double u = options.u > 0.0 ? options.u : std::sqrt(rep.loglog_x);
    rep.error_budget = kubilius_error_budget(xd, u, options.c);

    std::ostringstream cav;
    cav << "loglog x = " << rep.loglog_x
        << ": the g(m) -> infinity regime is out of reach at this horizon; the fraction is a finite-x diagnostic, "
           "not a density-one certificate, and the comparison error budget is "
        << rep.error_budget.total;
    rep.regime_caveat = cav.str();
    return rep;
}

}  // namespace loclab
