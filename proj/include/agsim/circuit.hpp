#pragma once

// Circuit-level parameter maps for a dc-SQUID transmission-line lattice:
// dispersion, flux-tunable wave speed, effective comoving metric, horizon
// location and Hawking temperature. All functions are pure.

#include <optional>

#include "agsim/constants.hpp"
#include "agsim/errors.hpp"

namespace agsim {

/// Fabrication constants of the dc-SQUID array.
struct SquidArrayParams {
    double critical_current;     ///< I_c per junction [A]
    double ground_capacitance;   ///< C_0 per cell [F]
    double junction_capacitance; ///< C_J per junction [F]
    double cell_length;          ///< a [m]
    int num_cells;               ///< N

    /// Josephson energy Phi0*I_c/(2*pi) [J].
    double josephson_energy() const;
    /// Zero-flux SQUID inductance Phi0/(4*pi*I_c) per cell [H].
    double squid_inductance() const;
    /// Capacitance ratio C_J/C_0 entering the lattice mass matrix.
    double capacitance_ratio() const;
    /// Line impedance sqrt(L0/C0) at zero bias [Ohm].
    double line_impedance() const;
    /// True when C_J << C_0 (lambda/a)^2 so junction capacitances are negligible.
    bool continuum_valid(double wavelength, double threshold = 0.05) const;

    /// Throws domain_error when any bound is violated.
    void validate() const;
};

/// Space-time external flux bias: a smooth tanh step of the given amplitude
/// riding on an optional constant floor, front moving at speed u.
/// Positions in cells, times in cell-traversal times a/c0 throughout.
struct FluxProfile {
    double amplitude = 0.0;   ///< step height, fraction of Phi0 in [0, 0.5)
    double front_speed = 0.0; ///< u, fraction of c0
    double ramp_width = 1.0;  ///< tanh scale length w, in cells
    double floor = 0.0;       ///< constant bias ahead of the front, fraction of Phi0
    double front_position_t0 = 0.0; ///< front centre at t=0, in cells

    /// Flux fraction Phi_ext/Phi0 at position x (cells), time t (a/c0).
    double flux_fraction(double x, double t) const;
    /// d/dx of flux_fraction [1/cell].
    double flux_gradient(double x, double t) const;
    /// d/dt of flux_fraction [c0/a].
    double flux_time_derivative(double x, double t) const;
    /// Front centre position at time t [cells].
    double front_position(double t) const { return front_position_t0 + front_speed * t; }

    void validate() const;
};

/// Tanh scale w such that the *speed* profile c(x) crosses its full height
/// over the requested chord length: length = (c_ahead - c_behind)/max|dc/dx|.
double ramp_width_for_speed_transition(double amplitude, double floor,
                                       double transition_length);

/// c(x,t) generated by a flux profile over a SQUID array.
struct SpeedProfile {
    FluxProfile profile;
    SquidArrayParams params;

    /// c(x,t)/c0 (dimensionless); x in cells, t in a/c0.
    double speed_fraction(double x, double t) const;
    /// Analytic d(c/c0)/dx [1/cell].
    double gradient_fraction(double x, double t) const;
    /// Central-difference d(c/c0)/dx with step 1/100 cell.
    double gradient_fraction_fd(double x, double t) const;
    /// c(x,t) in SI [m/s]; x in metres, t in seconds.
    double speed_si(double x_si, double t_si) const;
    /// Base speed c0 [m/s].
    double base_speed() const;
};

/// Inverse comoving metric (1/c)[[-1,u],[u,c^2-u^2]] in units c0=1.
struct MetricComponents {
    double g_tt;
    double g_tx;
    double g_xx;
    double determinant; ///< det of the 2x2 inverse metric (identically -1)
};

/// Lattice dispersion omega(k) = 2/sqrt(L0 C0) |sin(ka/2)| [rad/s], k in 1/m.
double dispersion_omega(double k, const SquidArrayParams& params);

/// Effective inductance per unit length Phi0 sec(pi Phi_frac)/(4 pi I_c a) [H/m].
double effective_inductance_per_length(double flux_fraction, const SquidArrayParams& params);

/// Wave speed c = c0 sqrt(cos(pi Phi_frac)) [m/s].
double phase_speed(double flux_fraction, const SquidArrayParams& params);

/// Same speed as a fraction of c0.
double phase_speed_fraction(double flux_fraction);

/// Zero-bias speed c0 = a sqrt(4 pi I_c / (Phi0 C_0)) [m/s].
double zero_flux_speed(const SquidArrayParams& params);

/// Root of c(x,t) = u c0 inside the ramp, in cells; nullopt when the front
/// speed lies outside [c_behind, c_ahead]. Multiple crossings resolve to the
/// rightmost one.
std::optional<double> find_horizon(const FluxProfile& profile, const SquidArrayParams& params,
                                   double t);

/// Metric components at position x (cells) for a front moving at u (fraction of c0).
MetricComponents effective_metric_at(double x, const FluxProfile& profile,
                                     const SquidArrayParams& params, double u, double t = 0.0);

/// T_H = hbar |dc/dx| / (2 pi k_B); gradient in 1/s (SI).
double hawking_temperature(double speed_gradient);

/// Circuit-value estimate sqrt(hbar e I_c / C_0) / (100 pi k_B) [K]
/// (speed step of 0.1 c0 over ten cells).
double hawking_estimate(const SquidArrayParams& params);

} // namespace agsim
