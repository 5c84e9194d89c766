#pragma once

// Pair production from the moving flux front in the harmonic approximation.
//
// In-modes are positive-frequency normal modes of the (uniform) lattice
// before the front arrives; they are evolved through the front and projected
// onto the uniform out-basis referenced to the flux at the right end of the
// array. The emission spectrum is measured separately with traveling
// wavepacket probes placed over the radiation band just ahead of the front
// and evolved backwards to the in-vacuum, which yields the exact occupancy
// per probe. Both directions use the same symplectic stepper, so Bogoliubov
// norms are conserved to round-off.

#include <Eigen/Dense>

#include "agsim/lattice.hpp"

namespace agsim {

struct BogoliubovOptions {
    int in_mode_count = 64;     ///< lowest in-modes evolved forward
    int spectrum_bins = 64;     ///< comoving-frequency probe targets
    double spectrum_lo = 0.01;  ///< lower probe target, fraction of kappa
    double spectrum_hi = 1.0;   ///< upper probe target, fraction of kappa
    double t_final = -1.0;      ///< lattice units; < 0: run until the front
                                ///< reaches front_stop_fraction * N
    double front_stop_fraction = 0.55;
    double probe_margin_widths = 4.0; ///< gap between front and probe band, x ramp width
    double min_cycles = 3.0;          ///< require k * sigma >= min_cycles
};

struct BogoliubovResult {
    Eigen::VectorXd in_omega;  ///< lab frequencies of evolved in-modes (lattice units)
    Eigen::MatrixXcd alpha;    ///< in_mode_count x N, out-basis columns
    Eigen::MatrixXcd beta;

    Eigen::VectorXd spectrum_omega_comoving; ///< omega' of measured probes (lattice units)
    Eigen::VectorXd spectrum_omega_lab;
    Eigen::VectorXd spectrum_occupancy;      ///< quanta per probe mode
    std::vector<bool> spectrum_in_fit;

    double kappa = 0.0; ///< |dc/dx| at the horizon, units c0/a; 0 when no horizon
    double fitted_temperature_kelvin = 0.0;
    double analytic_temperature_kelvin = 0.0;
    double fit_residual = 0.0;

    double norm_violation_max = 0.0;  ///< worst |sum(|a|^2-|b|^2) - 1|
    double max_abs_beta = 0.0;        ///< max |beta_jk| over the in-mode matrix
    double max_in_mode_beta_power = 0.0; ///< max_j sum_k |beta_jk|^2
    double t_final = 0.0;
};

/// Runs the scattering experiment defined by the profile. Requires harmonic
/// mode, fixed boundaries, and a front starting outside the array.
BogoliubovResult bogoliubov_spectrum(const SquidArrayParams& params, const FluxProfile& profile,
                                     const SimConfig& config, const BogoliubovOptions& options);

} // namespace agsim
