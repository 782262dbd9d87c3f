#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "loclab/cli/commands.hpp"
#include "loclab/cli/config.hpp"
#include "loclab/cli/record.hpp"
#include "loclab/parallel.hpp"

namespace {

const char* kDescriptions[][2] = {
    {"kolmogorov", "empirical maximal-inequality frequencies against 1/lambda^2"},
    {"localized", "localized maxima and the finite-horizon surrogate over an ensemble"},
    {"brownian", "localized suprema of sampled Brownian paths"},
    {"omega-scan", "omega(m, t) profiles at prime thresholds"},
    {"density", "fraction of m <= x satisfying the threshold-profile statistic bound"},
    {"kubilius", "sieve histogram against the independent Bernoulli model"},
    {"schedule", "block and starred level schedules"},
};

}  // namespace

int main(int argc, char** argv) {
    using namespace loclab::cli;

    CLI::App app{"loclab: seeded experiments on localized maxima of partial sums and prime-factor profiles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string config_path, out_path, format_name;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "seed (overrides the config)");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads; 0 uses all cores (default)");

    for (const auto& d : kDescriptions) app.add_subcommand(d[0], d[1])->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        ExperimentConfig config = config_path.empty() ? default_config(command) : load_config(config_path, command);
        if (seed) config.seed = *seed;
        if (threads) config.threads = *threads;
        if (!format_name.empty()) config.format = format_from_string(format_name);
        if (!out_path.empty()) config.out = out_path;
        config.threads = loclab::resolve_threads(config.threads);

        const auto record = run(config);
        const auto text = render(record, config.format);
        if (config.out.empty() || config.out == "-") {
            std::cout << text;
        } else {
            std::ofstream out(config.out, std::ios::binary);
            if (!out) {
                std::cerr << "loclab: cannot write '" << config.out << "'\n";
                return 2;
            }
            out << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "loclab " << command << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}
