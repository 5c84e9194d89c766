#pragma once

// Dispatch of a parsed run configuration to the experiment implementations,
// producing CSV/JSON artifacts plus summary.json in the output directory.

#include <string>

#include "agsim/config.hpp"

namespace agsim {

struct RunOutcome {
    int exit_code = 0; ///< 0 ok, 1 validation failure, 2 numerical failure
    std::string summary_path;
};

RunOutcome run_experiment(const RunConfig& config, const std::string& out_dir, int jobs,
                          bool verify);

/// Derived Rabi parameters for the circuit-driven route, plus provenance.
struct UnruhDerived {
    RabiParams rabi;
    nlohmann::json provenance;
};
UnruhDerived derive_rabi(const RunConfig& config);

} // namespace agsim
