#pragma once

#include <exception>

#include "loclab/cli/config.hpp"
#include "loclab/cli/record.hpp"

namespace loclab::cli {

/// Each run uses `config.threads` workers (0 = all cores); payloads do not depend on it.
RunRecord run_kolmogorov(const ExperimentConfig& config);
RunRecord run_localized(const ExperimentConfig& config);
RunRecord run_brownian(const ExperimentConfig& config);
RunRecord run_omega_scan(const ExperimentConfig& config);
RunRecord run_density(const ExperimentConfig& config);
RunRecord run_kubilius(const ExperimentConfig& config);
RunRecord run_schedule(const ExperimentConfig& config);

/// Dispatches on config.command and stamps hash, seed, config and wall time.
RunRecord run(const ExperimentConfig& config);

/// 2 configuration/domain errors, 3 horizon/capacity/feasibility, 4 anything else.
int exit_code_for(const std::exception& e);

}  // namespace loclab::cli
