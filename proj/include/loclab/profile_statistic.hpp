#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "loclab/omega.hpp"
#include "loclab/sieve.hpp"
#include "loclab/window_family.hpp"

namespace loclab {

/// min over N in [g, g^2] of max over N < loglog t <= N f_N.
struct BoundProbe {
    friend bool operator==(const BoundProbe&, const BoundProbe&) = default;
};

/// min over N >= g with f_N <= N and N f_N <= budget of max over N <= loglog t <= N f_N.
struct GrowthProbe {
    double budget = 0.0;
    friend bool operator==(const GrowthProbe&, const GrowthProbe&) = default;
};

using ProbeMode = std::variant<BoundProbe, GrowthProbe>;

struct ProfileStatResult {
    bool empty = true;  ///< no admissible level had a non-empty window
    double value = std::numeric_limits<double>::quiet_NaN();
    double argmin_level = 0.0;
    std::size_t levels_evaluated = 0;
    std::size_t empty_levels = 0;
    std::size_t inadmissible_levels = 0;  ///< growth-probe levels skipped because f_N > N
};

/// Admissible levels (geometric ratio 2 from g) and how many were rejected for f_N > N.
struct ProbeLevels {
    std::vector<double> levels;
    std::size_t inadmissible = 0;
};

ProbeLevels probe_levels(double g, const WindowFamily& f, const ProbeMode& mode);

/// Direct scan of every threshold in the profile.
/// HorizonError if a window or the growth-probe budget reaches past loglog of the last threshold.
ProfileStatResult profile_statistic(const OmegaThresholdProfile& profile, double g, const WindowFamily& f,
                                  const ProbeMode& mode);

/// K = 30 D^2 sqrt(M+1).
double bound_constant(double M, double D);

/// Profile statistic for many m against one prime table.
///
/// omega(m, .) is a step function with one jump per distinct prime factor and
/// |w - L|/sqrt(L) is quasi-convex in L, so each window's maximum sits at a
/// segment endpoint; only those thresholds are evaluated.
class ProfileStatEvaluator {
public:
    struct Window {
        double N = 0.0;
        std::size_t first = 0;  ///< prime index range [first, last)
        std::size_t last = 0;
    };

    ProfileStatEvaluator(const SieveTable& table, const MertensTables& tables, WindowFamily f, ProbeMode mode);

    /// Windows for one g, resolved to prime indices.
    std::vector<Window> resolve(double g, std::size_t* inadmissible = nullptr) const;

    ProfileStatResult evaluate(std::uint64_t m, const std::vector<Window>& windows) const;
    ProfileStatResult evaluate(std::uint64_t m, double g) const;

private:
    const SieveTable* table_;
    const MertensTables* tables_;
    WindowFamily f_;
    ProbeMode mode_;
};

/// g(m) = value (Constant) or max(floor, (loglog m)^exponent) (LogLogPower).
struct GRule {
    enum class Kind { Constant, LogLogPower };
    Kind kind = Kind::Constant;
    double value = 1.2;     ///< Constant g, or the floor for LogLogPower
    double exponent = 0.1;

    double operator()(double m) const;
    std::string describe() const;

    friend bool operator==(const GRule&, const GRule&) = default;
};

struct ErrorBudget {
    double c = 0.5;
    double u = 0.0;
    double x_term = 0.0;  ///< x^-c
    double u_term = 0.0;  ///< e^{-u log u}
    double total = 0.0;
};

ErrorBudget kubilius_error_budget(double x, double u, double c);

struct DensityReport {
    std::uint64_t x = 0;
    std::string mode;  ///< "bound" or "growth"
    std::string g_rule;
    std::string window;
    double K = 0.0;            ///< bound-probe threshold (may be +inf)
    double level = 0.0;        ///< growth-probe level
    double budget = 0.0;       ///< growth-probe budget script_L(x)
    double loglog_x = 0.0;
    double g_at_x = 0.0;
    double D_prime_model = 0.0;
    double K_bound = 0.0;    ///< 30 D^2 sqrt(M+1) with the prime-model D; NaN unless the window is power-log
    std::size_t levels = 0;    ///< admissible levels at g(x)
    std::size_t inadmissible_levels = 0;
    std::size_t scanned = 0;
    std::size_t satisfied = 0;
    std::size_t empty = 0;
    double fraction = 0.0;
    ErrorBudget error_budget;
    std::string regime_caveat;
};

/// L(x) = loglog x - (1/2) logloglog x.
double script_L(double x);

struct DensityOptions {
    double K = std::numeric_limits<double>::infinity();  ///< bound probe
    double level = 0.0;                                  ///< growth probe
    double c = 0.5;
    double u = 0.0;  ///< 0 selects sqrt(loglog x)
    unsigned threads = 1;
};

/// Scans every 2 <= m <= table horizon.
/// ConfigError (naming the smallest feasible x) when g violates the mode's growth constraint at x.
DensityReport density_scan(const SieveTable& table, const GRule& g, const WindowFamily& f, const ProbeMode& mode,
                           const DensityOptions& options);

}  // namespace loclab
