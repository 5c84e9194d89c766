#include "agsim/bogoliubov.hpp"

#include <cmath>
#include <complex>

#include "agsim/sine_basis.hpp"

namespace agsim {

namespace sb = sine_basis;
using constants::boltzmann;
using constants::hbar;
using constants::pi;

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Projection of phase-space columns (phi, p) onto the uniform basis at
// bond weight chi: alpha_m = (omega_m nu_m P_m + i Q_m)/sqrt(2 omega_m nu_m),
// beta_m = (omega_m nu_m P_m - i Q_m)/sqrt(2 omega_m nu_m), with P, Q the
// sine coefficients of phi and p.
struct Projection {
    Eigen::MatrixXcd alpha; // N x cols
    Eigen::MatrixXcd beta;
};

Projection project_onto_uniform_basis(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& p,
                                      double chi, double mu) {
    const int n = static_cast<int>(phi.rows());
    Projection out;
    Eigen::MatrixXcd cp = sb::analyze(phi);
    Eigen::MatrixXcd cq = sb::analyze(p);
    out.alpha.resize(n, phi.cols());
    out.beta.resize(n, phi.cols());
    for (int m = 1; m <= n; ++m) {
        const double k = sb::wavenumber(m, n);
        const double nu = sb::mass_eigenvalue(k, mu);
        const double om = sb::mode_frequency(k, chi, mu);
        const double scale = 1.0 / std::sqrt(2.0 * om * nu);
        out.alpha.row(m - 1) = scale * (om * nu * cp.row(m - 1) + kI * cq.row(m - 1));
        out.beta.row(m - 1) = scale * (om * nu * cp.row(m - 1) - kI * cq.row(m - 1));
    }
    return out;
}

// First-branch root of omega(k) - u k = target (k below the group-velocity
// blocking point where omega'(k) = u).
double solve_probe_wavenumber(double target, double chi, double mu, double u) {
    auto f = [&](double k) { return sb::mode_frequency(k, chi, mu) - u * k - target; };
    // Blocking point by bisection on the derivative sign.
    double lo = 1e-6, hi = pi - 1e-6;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double h = 1e-6;
        const double slope = (sb::mode_frequency(mid + h, chi, mu) -
                              sb::mode_frequency(mid - h, chi, mu)) / (2.0 * h);
        (slope > u ? lo : hi) = mid;
    }
    const double k_block = lo;
    if (f(k_block) < 0.0) return -1.0; // target above the branch maximum
    lo = 1e-9;
    hi = k_block;
    if (f(lo) > 0.0) return -1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

BogoliubovResult bogoliubov_spectrum(const SquidArrayParams& params, const FluxProfile& profile,
                                     const SimConfig& config, const BogoliubovOptions& options) {
    params.validate();
    profile.validate();
    const int n = params.num_cells;
    config.validate(n);
    if (config.mode != SimConfig::Mode::harmonic)
        throw domain_error("bogoliubov_spectrum requires harmonic mode");
    if (config.boundary != SimConfig::Boundary::fixed)
        throw config_error("bogoliubov_spectrum requires fixed boundaries");
    const int m_in = options.in_mode_count;
    if (m_in < 1 || m_in > n) throw config_error("in_mode_count must lie in [1, num_cells]");

    const double mu =
        config.include_junction_capacitance ? params.capacitance_ratio() : 0.0;
    const double u = profile.front_speed;

    // The in-region must be uniform: the front starts outside the array.
    double f_min = 1e300, f_max = -1e300;
    for (int k = 0; k <= n; ++k) {
        const double f = profile.flux_fraction(k - 0.5, 0.0);
        f_min = std::min(f_min, f);
        f_max = std::max(f_max, f);
    }
    if (f_max - f_min > 1e-9)
        throw config_error("flux front must start outside the array (in-region not uniform)");
    const double chi_in = std::cos(pi * f_min);

    double t_final = options.t_final;
    if (t_final <= 0.0) {
        if (!(u > 0.0)) throw config_error("t_final must be given for a static profile");
        t_final = (options.front_stop_fraction * n - profile.front_position_t0) / u;
    }
    const long nsteps = std::lround(t_final / config.dt);
    const double dt = config.dt;
    const double t_end = nsteps * dt;

    LatticeStepper stepper(params, profile, config);

    BogoliubovResult res;
    res.t_final = t_end;

    // Forward: lowest in-modes, KG-normalized positive-frequency data.
    Eigen::MatrixXcd phi(n, m_in), p(n, m_in);
    {
        Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(n, m_in);
        res.in_omega.resize(m_in);
        for (int j = 0; j < m_in; ++j) {
            const double k = sb::wavenumber(j + 1, n);
            const double nu = sb::mass_eigenvalue(k, mu);
            const double om = sb::mode_frequency(k, chi_in, mu);
            res.in_omega(j) = om;
            coeff(j, j) = 1.0 / std::sqrt(2.0 * om * nu);
        }
        phi = sb::synthesize(coeff);
        for (int j = 0; j < m_in; ++j) {
            const double k = sb::wavenumber(j + 1, n);
            const double nu = sb::mass_eigenvalue(k, mu);
            coeff(j, j) *= std::complex<double>(0.0, -res.in_omega(j) * nu);
        }
        p = sb::synthesize(coeff);
    }
    double t = 0.0;
    stepper.run_batch(phi, p, t, nsteps, dt);

    const double chi_out = std::cos(pi * profile.flux_fraction(n - 0.5, t_end));
    Projection fwd = project_onto_uniform_basis(phi, p, chi_out, mu);
    res.alpha = fwd.alpha.transpose();
    res.beta = fwd.beta.transpose();

    res.max_abs_beta = res.beta.cwiseAbs().maxCoeff();
    for (int j = 0; j < m_in; ++j) {
        const double norm = fwd.alpha.col(j).squaredNorm() - fwd.beta.col(j).squaredNorm();
        res.norm_violation_max = std::max(res.norm_violation_max, std::abs(norm - 1.0));
        res.max_in_mode_beta_power =
            std::max(res.max_in_mode_beta_power, fwd.beta.col(j).squaredNorm());
    }

    // Horizon and surface gravity.
    const double c0 = zero_flux_speed(params);
    const double lattice_rate = c0 / params.cell_length; // 1/s per lattice frequency unit
    SpeedProfile speed{profile, params};
    std::optional<double> xh;
    if (u > 0.0 && u < 1.0 && profile.amplitude > 0.0)
        xh = find_horizon(profile, params, 0.5 * t_end);
    if (xh) {
        res.kappa = std::abs(speed.gradient_fraction(*xh, 0.5 * t_end));
        res.analytic_temperature_kelvin = hawking_temperature(res.kappa * lattice_rate);
    }

    // Spectral probes over the radiation band ahead of the front.
    if (xh && res.kappa > 0.0 && options.spectrum_bins > 0) {
        const double x_front = profile.front_position(t_end);
        const double t_enter = (0.0 - profile.front_position_t0) / u;
        const double band_lo = x_front + options.probe_margin_widths * profile.ramp_width;
        std::vector<double> targets, ks, sigmas, centers;
        std::vector<bool> fit_flags;
        for (int b = 0; b < options.spectrum_bins; ++b) {
            const double frac =
                options.spectrum_lo *
                std::pow(options.spectrum_hi / options.spectrum_lo,
                         options.spectrum_bins == 1
                             ? 0.0
                             : double(b) / (options.spectrum_bins - 1));
            const double target = frac * res.kappa;
            const double k = solve_probe_wavenumber(target, chi_out, mu, u);
            if (k <= 0.0) continue;
            const double h = 1e-6;
            const double vg = (sb::mode_frequency(k + h, chi_out, mu) -
                               sb::mode_frequency(k - h, chi_out, mu)) / (2.0 * h);
            double band = (vg - u) * (t_end - t_enter);
            band = std::min(band, n - 8.0 - band_lo);
            if (band <= 0.0) continue;
            const double sigma = band / 5.0;
            if (k * sigma < options.min_cycles) continue;
            targets.push_back(target);
            ks.push_back(k);
            sigmas.push_back(sigma);
            centers.push_back(band_lo + 0.5 * band);
            const double lambda = 2.0 * pi / k;
            fit_flags.push_back(lambda >= 10.0);
        }

        const int np = static_cast<int>(targets.size());
        if (np > 0) {
            // Probe wavepackets, conjugated, evolved backwards to the in-vacuum.
            Eigen::MatrixXcd zp(n, np);
            for (int j = 0; j < np; ++j) {
                for (int i = 0; i < n; ++i) {
                    const double dx = i - centers[j];
                    const double env =
                        std::exp(-dx * dx / (4.0 * sigmas[j] * sigmas[j]));
                    zp(i, j) = env * std::exp(kI * (ks[j] * dx));
                }
            }
            Eigen::MatrixXcd cp = sb::analyze(zp);
            Eigen::MatrixXcd cq(n, np);
            for (int m = 1; m <= n; ++m) {
                const double k = sb::wavenumber(m, n);
                const double nu = sb::mass_eigenvalue(k, mu);
                const double om = sb::mode_frequency(k, chi_out, mu);
                cq.row(m - 1) = std::complex<double>(0.0, -om * nu) * cp.row(m - 1);
            }
            // KG norm = sum_m 2 omega_m nu_m |c_m|^2.
            for (int j = 0; j < np; ++j) {
                double norm = 0.0;
                for (int m = 1; m <= n; ++m) {
                    const double k = sb::wavenumber(m, n);
                    norm += 2.0 * sb::mode_frequency(k, chi_out, mu) *
                            sb::mass_eigenvalue(k, mu) * std::norm(cp(m - 1, j));
                }
                cp.col(j) /= std::sqrt(norm);
                cq.col(j) /= std::sqrt(norm);
            }
            Eigen::MatrixXcd wphi = sb::synthesize(cp).conjugate();
            Eigen::MatrixXcd wp = sb::synthesize(cq).conjugate();
            double tb = t_end;
            stepper.run_batch(wphi, wp, tb, nsteps, -dt);

            Projection bwd = project_onto_uniform_basis(wphi, wp, chi_in, mu);
            res.spectrum_omega_comoving.resize(np);
            res.spectrum_omega_lab.resize(np);
            res.spectrum_occupancy.resize(np);
            res.spectrum_in_fit.assign(np, false);
            for (int j = 0; j < np; ++j) {
                const double occupancy = bwd.alpha.col(j).squaredNorm();
                const double norm =
                    bwd.alpha.col(j).squaredNorm() - bwd.beta.col(j).squaredNorm();
                res.norm_violation_max =
                    std::max(res.norm_violation_max, std::abs(norm + 1.0));
                res.spectrum_omega_comoving(j) = targets[j];
                res.spectrum_omega_lab(j) = sb::mode_frequency(ks[j], chi_out, mu);
                res.spectrum_occupancy(j) = occupancy;
                res.spectrum_in_fit[j] = fit_flags[j] && occupancy > 0.0;
            }

            // Through-origin fit of log(1/n + 1) against omega'.
            double sxy = 0.0, sxx = 0.0;
            int used = 0;
            for (int j = 0; j < np; ++j) {
                if (!res.spectrum_in_fit[j]) continue;
                const double x = res.spectrum_omega_comoving(j);
                const double y = std::log(1.0 / res.spectrum_occupancy(j) + 1.0);
                sxy += x * y;
                sxx += x * x;
                ++used;
            }
            if (used >= 2 && sxy > 0.0) {
                const double slope = sxy / sxx;
                res.fitted_temperature_kelvin = hbar * lattice_rate / (boltzmann * slope);
                double ss = 0.0, sy = 0.0;
                for (int j = 0; j < np; ++j) {
                    if (!res.spectrum_in_fit[j]) continue;
                    const double x = res.spectrum_omega_comoving(j);
                    const double y = std::log(1.0 / res.spectrum_occupancy(j) + 1.0);
                    ss += (y - slope * x) * (y - slope * x);
                    sy += y;
                }
                res.fit_residual = std::sqrt(ss / used) / (sy / used);
            }
        }
    }

    if (res.norm_violation_max > 1e-4)
        throw accuracy_error("Bogoliubov norm violation " +
                             std::to_string(res.norm_violation_max) +
                             " exceeds 1e-4: reduce dt");
    return res;
}

} // namespace agsim
