#pragma once

// Physical constants, CODATA 2018 (SI exact values where defined so).
// h, e and k_B are exact; Phi0 and R_K are derived from them.

#include <numbers>

namespace agsim::constants {

inline constexpr double pi = std::numbers::pi;

/// Planck constant [J s] (exact).
inline constexpr double planck = 6.62607015e-34;

/// Elementary charge [C] (exact).
inline constexpr double electron_charge = 1.602176634e-19;

/// Boltzmann constant [J/K] (exact).
inline constexpr double boltzmann = 1.380649e-23;

/// Reduced Planck constant [J s].
inline constexpr double hbar = planck / (2.0 * pi);

/// Magnetic flux quantum h/(2e) [Wb].
inline constexpr double flux_quantum = planck / (2.0 * electron_charge);

/// von Klitzing resistance h/e^2 [Ohm].
inline constexpr double von_klitzing = planck / (electron_charge * electron_charge);

} // namespace agsim::constants
