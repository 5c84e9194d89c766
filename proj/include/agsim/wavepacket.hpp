#pragma once

// Gaussian wavepacket initial data, built as a superposition of exact lattice
// normal modes so the packet is unidirectional to machine precision.

#include <string>
#include <vector>

#include "agsim/lattice.hpp"

namespace agsim {

struct WavePacketSpec {
    enum class Direction { right, left };

    double center_wavenumber = 0.1; ///< rad per cell, in (0, pi)
    double width = 20.0;            ///< Gaussian sigma, cells
    double amplitude = 1e-3;        ///< peak phase amplitude
    double center = 0.0;            ///< cells
    Direction direction = Direction::right;

    std::vector<std::string> warnings() const;
    void validate(int num_cells, const SimConfig& config) const;
};

/// Packet on a uniform background bias (default zero flux).
LatticeState init_wavepacket(const WavePacketSpec& spec, const SquidArrayParams& params,
                             const SimConfig& config, double flux_fraction = 0.0);

/// Pure standing normal mode (fixed ends): phi = amplitude * s_m, p = 0.
LatticeState init_sine_mode(int mode_index, double amplitude, const SquidArrayParams& params,
                            const SimConfig& config, double flux_fraction = 0.0);

} // namespace agsim
