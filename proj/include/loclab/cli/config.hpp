#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "loclab/brownian.hpp"
#include "loclab/generators.hpp"
#include "loclab/kubilius.hpp"
#include "loclab/localization.hpp"
#include "loclab/schedules.hpp"
#include "loclab/profile_statistic.hpp"
#include "loclab/window_family.hpp"

namespace loclab::cli {

using json = nlohmann::json;

enum class Format { Csv, Json };

std::string to_string(Format f);
Format format_from_string(const std::string& s);

struct KolmogorovParams {
    GeneratorSpec generator{Rademacher{SigmaSchedule::constant(1.0)}, 0};
    std::vector<double> lambdas{1.5, 2.0, 4.0};
    std::vector<std::size_t> ks{100, 10000};
    std::size_t trials = 100000;
};

struct EventParams {
    double M = 1.0;
    ScheduleMode mode = ScaledSurrogate{};
    std::size_t j = 2;
    std::size_t trials = 10000;
};

struct LocalizedParams {
    GeneratorSpec generator{Gaussian{SigmaSchedule::constant(1.0)}, 0};
    std::size_t n_max = 1000000;
    std::size_t trials = 1000;
    WindowFamily window = WindowFamily::power_log(1.0);
    double G = 10.0;
    double exponent = 5.0 / 3.0;
    LevelGrid grid = LevelGrid::Geometric;
    std::optional<EventParams> events;
};

struct BrownianParams {
    double T = 1e6;
    double t0 = 1.0;
    GridRule grid = GeometricGrid{};
    unsigned refinements = 0;
    std::size_t trials = 1000;
    WindowFamily window = WindowFamily::power_log(1.0);
    double G = 10.0;
    double exponent = 5.0 / 3.0;
};

struct OmegaScanParams {
    std::uint64_t x = 1000000;
    std::vector<std::uint64_t> ms{510510};
    /// Explicit thresholds; empty means every prime <= t_max.
    std::vector<std::uint64_t> thresholds{2, 3, 5, 7, 11, 13, 17};
    std::uint64_t t_max = 0;
};

struct DensityParams {
    std::uint64_t x = 1000000;
    bool bound_probe = true;
    GRule g{GRule::Kind::Constant, 1.2, 0.1};
    WindowFamily window = WindowFamily::power_log(1.0);
    double K = std::numeric_limits<double>::infinity();
    double level = 0.0;
    double c = 0.5;
    double u = 0.0;
};

struct KubiliusParams {
    std::uint64_t x = 1000000;
    std::uint64_t r = 31;
    StatisticRule statistic = StatisticRule::Omega;
    std::size_t trials = 1000000;
    double c = 0.5;
};

struct StarParams {
    WindowFamily window = WindowFamily::growing_log(XiShape::LogLog, 1.0, true);
    double D = 1.0;
    std::size_t j_max = 10;
};

struct ScheduleParams {
    double M = 1.0;
    std::size_t j_max = 10;
    ScheduleMode mode = PaperExact{};
    std::optional<StarParams> star;
};

using Params = std::variant<KolmogorovParams, LocalizedParams, BrownianParams, OmegaScanParams, DensityParams,
                            KubiliusParams, ScheduleParams>;

/// Subcommand names in Params variant order.
const std::vector<std::string>& command_names();

/// Everything a run depends on. `seed`, `threads`, `out` and `format` are run
/// controls; the hash covers only the command and its parameters.
struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    Format format = Format::Csv;
    std::string out;
    Params params;
};

/// Defaults for a subcommand. ConfigError for an unknown name.
ExperimentConfig default_config(const std::string& command);

/// Strict parse: unknown fields, wrong types and bad values raise ConfigError
/// naming the field path (and line/column for syntax errors).
ExperimentConfig parse_config(const std::string& text, const std::string& command = "");
ExperimentConfig load_config(const std::string& path, const std::string& command = "");

json to_json(const ExperimentConfig& config);
json params_to_json(const Params& params);

/// FNV-1a 64 of the canonical dump of {command, params}, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace loclab::cli
