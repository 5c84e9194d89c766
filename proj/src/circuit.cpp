#include "agsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace agsim {

using constants::boltzmann;
using constants::electron_charge;
using constants::flux_quantum;
using constants::hbar;
using constants::pi;

double SquidArrayParams::josephson_energy() const {
    return flux_quantum * critical_current / (2.0 * pi);
}

double SquidArrayParams::squid_inductance() const {
    return flux_quantum / (4.0 * pi * critical_current);
}

double SquidArrayParams::capacitance_ratio() const {
    return junction_capacitance / ground_capacitance;
}

double SquidArrayParams::line_impedance() const {
    return std::sqrt(squid_inductance() / ground_capacitance);
}

bool SquidArrayParams::continuum_valid(double wavelength, double threshold) const {
    const double cells = wavelength / cell_length;
    return junction_capacitance < threshold * ground_capacitance * cells * cells;
}

void SquidArrayParams::validate() const {
    if (!(critical_current > 0.0)) throw domain_error("critical_current must be > 0");
    if (!(ground_capacitance > 0.0)) throw domain_error("ground_capacitance must be > 0");
    if (!(junction_capacitance > 0.0)) throw domain_error("junction_capacitance must be > 0");
    if (!(cell_length > 0.0)) throw domain_error("cell_length must be > 0");
    if (num_cells < 3) throw domain_error("num_cells must be >= 3");
}

double FluxProfile::flux_fraction(double x, double t) const {
    const double xi = (x - front_position(t)) / ramp_width;
    return floor + 0.5 * amplitude * (1.0 - std::tanh(xi));
}

double FluxProfile::flux_gradient(double x, double t) const {
    const double xi = (x - front_position(t)) / ramp_width;
    const double sech = 1.0 / std::cosh(xi);
    return -0.5 * amplitude * sech * sech / ramp_width;
}

double FluxProfile::flux_time_derivative(double x, double t) const {
    return -front_speed * flux_gradient(x, t);
}

void FluxProfile::validate() const {
    if (amplitude < 0.0 || floor < 0.0)
        throw domain_error("flux amplitude and floor must be >= 0");
    if (!(amplitude + floor < 0.5))
        throw singular_bias_error("amplitude + floor must be < 0.5 flux quanta");
    if (!(ramp_width > 0.0)) throw domain_error("ramp_width must be > 0");
    if (front_speed < 0.0) throw domain_error("front_speed must be >= 0");
}

double phase_speed_fraction(double flux_fraction) {
    if (!(std::abs(flux_fraction) < 0.5))
        throw singular_bias_error("|flux fraction| must be < 0.5");
    return std::sqrt(std::cos(pi * flux_fraction));
}

double ramp_width_for_speed_transition(double amplitude, double floor,
                                       double transition_length) {
    if (!(transition_length > 0.0)) throw domain_error("transition_length must be > 0");
    if (amplitude <= 0.0) throw domain_error("transition length undefined for zero amplitude");
    const double c_behind = phase_speed_fraction(floor + amplitude);
    const double c_ahead = phase_speed_fraction(floor);
    // Max slope of c against the scaled coordinate xi; w scales out linearly.
    double peak = 0.0;
    const int samples = 4000;
    for (int i = 0; i <= samples; ++i) {
        const double xi = -6.0 + 12.0 * i / samples;
        const double sech = 1.0 / std::cosh(xi);
        const double phi = floor + 0.5 * amplitude * (1.0 - std::tanh(xi));
        const double dc_dxi = 0.25 * pi * amplitude * std::sin(pi * phi) /
                              std::sqrt(std::cos(pi * phi)) * sech * sech;
        peak = std::max(peak, dc_dxi);
    }
    return transition_length * peak / (c_ahead - c_behind);
}

double SpeedProfile::speed_fraction(double x, double t) const {
    return phase_speed_fraction(profile.flux_fraction(x, t));
}

double SpeedProfile::gradient_fraction(double x, double t) const {
    const double phi = profile.flux_fraction(x, t);
    const double c = phase_speed_fraction(phi);
    return -0.5 * pi * std::sin(pi * phi) / c * profile.flux_gradient(x, t);
}

double SpeedProfile::gradient_fraction_fd(double x, double t) const {
    const double h = 0.01;
    return (speed_fraction(x + h, t) - speed_fraction(x - h, t)) / (2.0 * h);
}

double SpeedProfile::base_speed() const {
    return zero_flux_speed(params);
}

double SpeedProfile::speed_si(double x_si, double t_si) const {
    const double c0 = base_speed();
    const double a = params.cell_length;
    return c0 * speed_fraction(x_si / a, t_si * c0 / a);
}

double dispersion_omega(double k, const SquidArrayParams& params) {
    params.validate();
    const double l0 = params.squid_inductance();
    const double cutoff = 2.0 / std::sqrt(l0 * params.ground_capacitance);
    return cutoff * std::abs(std::sin(0.5 * k * params.cell_length));
}

double effective_inductance_per_length(double flux_fraction, const SquidArrayParams& params) {
    params.validate();
    if (!(std::abs(flux_fraction) < 0.5))
        throw singular_bias_error("|flux fraction| must be < 0.5 (inductance diverges)");
    const double base = flux_quantum / (4.0 * pi * params.critical_current * params.cell_length);
    return base / std::cos(pi * flux_fraction);
}

double phase_speed(double flux_fraction, const SquidArrayParams& params) {
    return zero_flux_speed(params) * phase_speed_fraction(flux_fraction);
}

double zero_flux_speed(const SquidArrayParams& params) {
    params.validate();
    return params.cell_length *
           std::sqrt(4.0 * pi * params.critical_current /
                     (flux_quantum * params.ground_capacitance));
}

std::optional<double> find_horizon(const FluxProfile& profile, const SquidArrayParams& params,
                                   double t) {
    params.validate();
    profile.validate();
    const double u = profile.front_speed;
    if (!(u > 0.0 && u < 1.0)) throw domain_error("front_speed must be in (0, 1) of c0");
    if (profile.amplitude == 0.0) return std::nullopt;

    const double c_behind = phase_speed_fraction(profile.floor + profile.amplitude);
    const double c_ahead = phase_speed_fraction(profile.floor);
    if (u <= c_behind || u >= c_ahead) return std::nullopt;

    const double xf = profile.front_position(t);
    const double w = profile.ramp_width;
    auto excess = [&](double x) {
        return phase_speed_fraction(profile.flux_fraction(x, t)) - u;
    };
    // Rightmost crossing: scan right-to-left on a fine grid, then bisect.
    const double lo = xf - 40.0 * w;
    const double hi = xf + 40.0 * w;
    const int steps = 2048;
    double right = hi;
    double f_right = excess(right);
    double a = lo, b = hi;
    bool bracketed = false;
    for (int i = 1; i <= steps; ++i) {
        const double x = hi - (hi - lo) * i / steps;
        const double f = excess(x);
        if (f == 0.0) return x;
        if (f * f_right < 0.0) {
            a = x;
            b = right;
            bracketed = true;
            break;
        }
        right = x;
        f_right = f;
    }
    if (!bracketed) return std::nullopt;
    double fa = excess(a);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = excess(mid);
        if (std::abs(fm) < 1e-12) return mid;
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

MetricComponents effective_metric_at(double x, const FluxProfile& profile,
                                     const SquidArrayParams& params, double u, double t) {
    SpeedProfile sp{profile, params};
    const double c = sp.speed_fraction(x, t);
    MetricComponents m;
    m.g_tt = -1.0 / c;
    m.g_tx = u / c;
    m.g_xx = (c * c - u * u) / c;
    m.determinant = m.g_tt * m.g_xx - m.g_tx * m.g_tx;
    return m;
}

double hawking_temperature(double speed_gradient) {
    if (!std::isfinite(speed_gradient)) throw domain_error("speed gradient must be finite");
    return hbar * std::abs(speed_gradient) / (2.0 * pi * boltzmann);
}

double hawking_estimate(const SquidArrayParams& params) {
    params.validate();
    return std::sqrt(hbar * electron_charge * params.critical_current /
                     params.ground_capacitance) /
           (100.0 * pi * boltzmann);
}

} // namespace agsim
