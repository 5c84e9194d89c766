#pragma once

// Long-time periodic steady state of the driven Rabi Lindblad model and the
// mechanical-drive resonance sweep.
//
// The lab-frame generator is exactly periodic in the drive period T_m, so the
// steady state is reached by composing a one-period propagator. The
// propagator is assembled column-by-column with the same rotating-frame RK4
// stepper used for direct integration, then twisted back to the lab frame by
// the diagonal phases accumulated over one period. Window-to-window
// convergence of the period-averaged photon number detects steadiness.

#include <vector>

#include "agsim/lindblad.hpp"

namespace agsim {

struct SteadyStateOptions {
    double dt_target = 0.1;        ///< RK4 step, units 1/omega_c
    double min_lifetimes = 5.0;    ///< evolve at least this many 1/min(gamma)
    double window_lifetimes = 1.0; ///< detection window length
    double convergence_tol = 1e-3; ///< rel change of window-averaged <n>
    int max_windows = 64;
    int fine_substeps = 4; ///< refinement factor for the final 2-period trace
};

struct SteadyStateResult {
    double mean_photon = 0.0;      ///< period-averaged
    double a_squared_mag = 0.0;    ///< period-averaged |<a^2>|
    double qubit_excitation = 0.0; ///< period-averaged
    double e_n_mean = 0.0;
    double e_n_max = 0.0;
    double photon_rate_si = 0.0; ///< gamma_c <a^dag a> [1/s]

    double photon_peak_phase = 0.0; ///< drive-period fraction of the <n> maximum
    double e_n_peak_phase = 0.0;
    double periodicity_error = 0.0; ///< max |x(t+T)-x(t)| / amplitude over a period

    bool converged = false;
    int windows_used = 0;
    double t_reached = 0.0; ///< units 1/omega_c

    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;

    DensityMatrix steady_state;   ///< lab frame, drive phase 0
    ObservableTrace steady_trace; ///< two drive periods, finely sampled
};

SteadyStateResult steady_state_observables(const RabiParams& params,
                                           const SteadyStateOptions& options = {});

/// One-period lab-frame propagator on vec(rho), built from rotating-frame RK4
/// steps (steps_per_period of size T_m/steps_per_period).
Eigen::MatrixXcd build_period_map(const RabiParams& params, int steps_per_period);

struct SweepOptions {
    double omega_m_lo = 2.15;  ///< units of omega_c
    double omega_m_hi = 2.25;
    double step = 1e-3;
    bool auto_refine = true; ///< add dressed-transition candidates + local zoom
    SteadyStateOptions steady;
};

struct SweepPoint {
    double omega_m_ratio;
    double mean_photon;
    double e_n_max;
};

struct SweepResult {
    std::vector<SweepPoint> points; ///< sorted by omega_m
    double argmax_omega_m = 0.0;    ///< photon-number maximizer
};

/// Transition frequencies (E_j - E_0)/hbar of the static Rabi Hamiltonian
/// inside [lo, hi], units of omega_c; used to seed sweep refinement.
std::vector<double> dressed_transition_frequencies(const RabiParams& params, double lo,
                                                   double hi);

SweepResult resonance_sweep(const RabiParams& base, const SweepOptions& options);

} // namespace agsim
