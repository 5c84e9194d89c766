#pragma once

// Charge-basis diagonalization of the dc-SQUID island Hamiltonian
// E_C n^2 - E_J cos(phi) and the circuit couplings it feeds. E_C here is the
// Cooper-pair charging energy (2e)^2/(2 C_Sigma).

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agsim/constants.hpp"
#include "agsim/errors.hpp"

namespace agsim {

struct TransmonSpec {
    int charge_cutoff = 0;            ///< n_max actually used
    Eigen::VectorXd eigenvalues;      ///< lowest levels [J], ascending
    double qubit_gap = 0.0;           ///< E_1 - E_0 [J]
    std::complex<double> charge_matrix_element; ///< <1|n|0>, gauge i|m|
    double cutoff_shift = 0.0;        ///< relative gap change on doubling n_max
};

/// Diagonalizes in the Cooper-pair number basis |n| <= n_max (zero offset
/// charge). The |1> phase is fixed so <1|n|0> is purely imaginary with
/// positive imaginary part. Throws cutoff_error if the gap has not converged
/// to 1e-8 relative under doubling of n_max.
TransmonSpec transmon_levels(double charging_energy, double josephson_energy, int n_max);

struct UnruhCircuitParams {
    double cavity_frequency = 0.0;    ///< omega_c [rad/s]
    double cavity_capacitance = 0.0;  ///< C_c [F]
    double cavity_impedance = 0.0;    ///< Z_c [Ohm]
    double fbar_capacitance = 0.0;    ///< C_m0 [F]
    double fbar_thickness = 0.0;      ///< D [m]
    double drive_amplitude = 0.0;     ///< A [m]
    double drive_frequency = 0.0;     ///< omega_m [rad/s]
    double junction_capacitance = 0.0;///< C_J [F]
    double josephson_energy = 0.0;    ///< E_J [J], flux-tunable

    /// C_Sigma = 2 C_J + C_m0 [F].
    double island_capacitance() const { return 2.0 * junction_capacitance + fbar_capacitance; }
    /// E_C = (2e)^2 / (2 C_Sigma) [J].
    double charging_energy() const {
        const double q = 2.0 * constants::electron_charge;
        return q * q / (2.0 * island_capacitance());
    }

    void validate() const;
    std::vector<std::string> warnings() const;
};

/// Cavity-qubit coupling sqrt(R_K/(4 pi Z_c)) E_C (C_m0/C_c) <1|n|0> / hbar [rad/s].
std::complex<double> coupling_g(const UnruhCircuitParams& circuit, const TransmonSpec& spec);

/// Mechanical sideband coupling g_m = (2 C_J / C_Sigma)(A/D) g [rad/s].
std::complex<double> coupling_gm(const UnruhCircuitParams& circuit, std::complex<double> g);

} // namespace agsim
