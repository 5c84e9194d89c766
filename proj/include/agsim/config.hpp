#pragma once

// Strict JSON run configuration: SI units at this boundary, every physical
// key carries its unit in the name, unknown keys are rejected, and physical
// quantities have no defaults.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "agsim/bogoliubov.hpp"
#include "agsim/lattice.hpp"
#include "agsim/lindblad.hpp"
#include "agsim/steady_state.hpp"
#include "agsim/transmon.hpp"
#include "agsim/wavepacket.hpp"

namespace agsim {

enum class Experiment {
    dispersion,
    horizon,
    hawking,
    lattice,
    bogoliubov,
    unruh_evolve,
    unruh_steady,
    unruh_sweep,
};

std::string to_string(Experiment e);

struct RunConfig {
    Experiment experiment;
    long seed = 0; ///< reserved; all current runs are deterministic

    std::string raw_text;
    nlohmann::json raw;
    std::uint64_t config_hash = 0;

    std::optional<SquidArrayParams> squid;
    std::optional<FluxProfile> profile;
    SimConfig sim;

    std::optional<WavePacketSpec> packet;
    std::optional<int> sine_mode_index;
    double packet_background_flux = 0.0;

    double t_final = 0.0; ///< lattice units, lattice/horizon experiments
    int snapshot_stride = 1000;
    int horizon_stride = 10;
    int dispersion_points = 129;

    BogoliubovOptions bogoliubov;

    std::optional<RabiParams> rabi;
    std::optional<UnruhCircuitParams> unruh_circuit;
    int transmon_cutoff = 20;
    double circuit_gamma_c = 0.0;  ///< [1/s], circuit-chain route
    double circuit_gamma_qb = 0.0; ///< [1/s]
    int circuit_n_fock = 8;

    EvolveOptions evolve;
    double evolve_t_final = 0.0; ///< units 1/omega_c
    SteadyStateOptions steady;
    SweepOptions sweep;

    std::vector<std::string> warnings;
};

/// Parses and validates a config document; error messages name the offending
/// key and the violated bound.
RunConfig parse_config(const std::string& text);

/// FNV-1a over the raw config bytes; stamped into every output artifact.
std::uint64_t config_fingerprint(const std::string& text);

} // namespace agsim
