#include "agsim/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "agsim/io.hpp"

namespace agsim {

using nlohmann::json;
using constants::hbar;
using constants::pi;

namespace {

namespace fs = std::filesystem;

json base_summary(const RunConfig& cfg) {
    json s;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(cfg.config_hash));
    s["experiment"] = to_string(cfg.experiment);
    s["config_hash"] = hash;
    s["config"] = cfg.raw;
    s["config_text"] = cfg.raw_text;
    s["seed"] = cfg.seed;
    s["warnings"] = cfg.warnings;
    return s;
}

json squid_derived(const SquidArrayParams& p) {
    json d;
    d["zero_flux_speed_m_per_s"] = zero_flux_speed(p);
    d["cutoff_frequency_rad_per_s"] = dispersion_omega(pi / p.cell_length, p);
    d["josephson_energy_J"] = p.josephson_energy();
    d["squid_inductance_H"] = p.squid_inductance();
    d["line_impedance_ohm"] = p.line_impedance();
    return d;
}

void run_dispersion(const RunConfig& cfg, const std::string& out, json& summary) {
    const auto& p = *cfg.squid;
    CsvWriter csv(out + "/dispersion.csv", cfg.config_hash, {"k_per_m", "omega_rad_per_s"});
    const int npts = cfg.dispersion_points;
    bool monotone = true;
    double prev = -1.0;
    for (int i = 0; i < npts; ++i) {
        const double k = pi / p.cell_length * i / (npts - 1);
        const double w = dispersion_omega(k, p);
        csv.row({k, w});
        if (w < prev) monotone = false;
        prev = w;
    }
    summary["derived"] = squid_derived(p);
    summary["invariants"]["omega_monotone_on_grid"] = monotone;
}

void run_hawking(const RunConfig& cfg, const std::string& out, json& summary) {
    (void)out;
    const auto& p = *cfg.squid;
    summary["derived"] = squid_derived(p);
    summary["hawking_estimate_K"] = hawking_estimate(p);
    if (cfg.profile) {
        const auto& prof = *cfg.profile;
        const double c0 = zero_flux_speed(p);
        summary["phase_speed_fraction_behind"] =
            phase_speed_fraction(prof.floor + prof.amplitude);
        summary["phase_speed_fraction_ahead"] = phase_speed_fraction(prof.floor);
        const auto xh = find_horizon(prof, p, 0.0);
        if (xh) {
            SpeedProfile sp{prof, p};
            const double kappa = std::abs(sp.gradient_fraction(*xh, 0.0));
            summary["horizon_position_cells"] = *xh;
            summary["kappa_per_s"] = kappa * c0 / p.cell_length;
            summary["hawking_temperature_K"] =
                hawking_temperature(kappa * c0 / p.cell_length);
            const auto m = effective_metric_at(*xh, prof, p, prof.front_speed, 0.0);
            summary["g_xx_at_horizon"] = m.g_xx;
            summary["metric_determinant"] = m.determinant;
        } else {
            summary["horizon_position_cells"] = nullptr;
        }
    }
}

void run_horizon(const RunConfig& cfg, const std::string& out, json& summary) {
    const auto& p = *cfg.squid;
    const auto& prof = *cfg.profile;
    const double c0 = zero_flux_speed(p);
    const double dt = cfg.sim.dt * cfg.horizon_stride;
    CsvWriter csv(out + "/horizon.csv", cfg.config_hash, {"t", "x_h"});
    double first_t = 0, first_x = 0, last_t = 0, last_x = 0;
    bool any = false;
    for (double t = 0.0; t <= cfg.t_final + 1e-9; t += dt) {
        const auto xh = find_horizon(prof, p, t);
        if (!xh) continue;
        const double t_si = t * p.cell_length / c0;
        const double x_si = *xh * p.cell_length;
        csv.row({t_si, x_si});
        if (!any) {
            first_t = t_si;
            first_x = x_si;
            any = true;
        }
        last_t = t_si;
        last_x = x_si;
    }
    summary["derived"] = squid_derived(p);
    if (any && last_t > first_t) {
        const double slope = (last_x - first_x) / (last_t - first_t);
        summary["horizon_speed_m_per_s"] = slope;
        summary["horizon_speed_fraction_c0"] = slope / c0;
        const auto xh0 = find_horizon(prof, p, 0.0);
        const auto m = effective_metric_at(*xh0, prof, p, prof.front_speed, 0.0);
        summary["g_xx_at_horizon"] = m.g_xx;
        summary["metric_determinant"] = m.determinant;
    } else {
        summary["horizon_speed_m_per_s"] = nullptr;
    }
}

void run_lattice(const RunConfig& cfg, const std::string& out, json& summary) {
    const auto& p = *cfg.squid;
    const auto& prof = *cfg.profile;
    const double c0 = zero_flux_speed(p);
    const double t_unit = p.cell_length / c0;

    LatticeState init;
    if (cfg.sine_mode_index) {
        init = init_sine_mode(*cfg.sine_mode_index, cfg.packet->amplitude, p, cfg.sim,
                              cfg.packet_background_flux);
    } else if (cfg.packet) {
        init = init_wavepacket(*cfg.packet, p, cfg.sim, cfg.packet_background_flux);
    } else {
        init.phi = Eigen::VectorXd::Zero(p.num_cells);
        init.p = Eigen::VectorXd::Zero(p.num_cells);
    }

    const auto evo = evolve_with_front(init, p, prof, cfg.sim, cfg.t_final,
                                       cfg.snapshot_stride, cfg.horizon_stride);

    {
        CsvWriter csv(out + "/snapshots.csv", cfg.config_hash,
                      {"t", "n", "phi", "p", "V", "I"});
        const double p_scale = std::pow(constants::flux_quantum / (2.0 * pi), 2) *
                               p.ground_capacitance / t_unit;
        for (std::size_t s = 0; s < evo.snapshots.size(); ++s) {
            const auto& st = evo.snapshots[s];
            const auto obs = node_observables(st, p, prof, cfg.sim);
            for (int n = 0; n < st.size(); ++n)
                csv.row({st.time * t_unit, double(n), st.phi(n), st.p(n) * p_scale,
                         obs.voltage(n), obs.current(n)});
        }
    }
    {
        CsvWriter csv(out + "/horizon.csv", cfg.config_hash, {"t", "x_h"});
        for (std::size_t i = 0; i < evo.horizon_times.size(); ++i)
            if (evo.horizon_positions[i])
                csv.row({evo.horizon_times[i] * t_unit,
                         *evo.horizon_positions[i] * p.cell_length});
    }

    summary["derived"] = squid_derived(p);
    summary["energy_drift_relative"] = evo.energy_drift;
    summary["initial_energy_J"] = total_energy(evo.snapshots.front(), p, prof, cfg.sim);
    summary["final_energy_J"] = total_energy(evo.snapshots.back(), p, prof, cfg.sim);
    double slope_frac = 0.0;
    {
        // Linear fit of the recorded horizon track, lattice units.
        double st = 0, sx = 0, stt = 0, stx = 0;
        long m = 0;
        for (std::size_t i = 0; i < evo.horizon_times.size(); ++i) {
            if (!evo.horizon_positions[i]) continue;
            const double t = evo.horizon_times[i];
            const double x = *evo.horizon_positions[i];
            st += t;
            sx += x;
            stt += t * t;
            stx += t * x;
            ++m;
        }
        if (m >= 2 && m * stt - st * st > 0) {
            slope_frac = (m * stx - st * sx) / (m * stt - st * st);
            summary["horizon_track_slope_fraction_c0"] = slope_frac;
        }
    }
    if (cfg.profile->amplitude > 0 && cfg.profile->front_speed > 0) {
        const auto xh = find_horizon(prof, p, cfg.t_final / 2);
        if (xh) {
            const auto m = effective_metric_at(*xh, prof, p, prof.front_speed,
                                               cfg.t_final / 2);
            summary["g_xx_at_horizon"] = m.g_xx;
        }
    }
}

void run_bogoliubov(const RunConfig& cfg, const std::string& out, json& summary) {
    const auto& p = *cfg.squid;
    const auto res = bogoliubov_spectrum(p, *cfg.profile, cfg.sim, cfg.bogoliubov);
    const double c0 = zero_flux_speed(p);
    const double rate = c0 / p.cell_length;

    json bog;
    bog["omega"] = json::array();
    bog["beta_sq"] = json::array();
    bog["omega_lab"] = json::array();
    bog["in_fit"] = json::array();
    for (int i = 0; i < res.spectrum_omega_comoving.size(); ++i) {
        bog["omega"].push_back(res.spectrum_omega_comoving(i) * rate);
        bog["beta_sq"].push_back(res.spectrum_occupancy(i));
        bog["omega_lab"].push_back(res.spectrum_omega_lab(i) * rate);
        bog["in_fit"].push_back(static_cast<bool>(res.spectrum_in_fit[i]));
    }
    bog["fitted_temperature_K"] = res.fitted_temperature_kelvin;
    bog["fit_residual"] = res.fit_residual;
    bog["norm_violation_max"] = res.norm_violation_max;
    bog["analytic_temperature_K"] = res.analytic_temperature_kelvin;
    bog["kappa_per_s"] = res.kappa * rate;
    bog["max_abs_beta"] = res.max_abs_beta;
    bog["max_in_mode_beta_power"] = res.max_in_mode_beta_power;
    bog["t_final_lattice"] = res.t_final;
    bog["in_mode_count"] = cfg.bogoliubov.in_mode_count;
    write_text_file(out + "/bogoliubov.json", bog.dump(2) + "\n");

    summary["derived"] = squid_derived(p);
    summary["fitted_temperature_K"] = res.fitted_temperature_kelvin;
    summary["analytic_temperature_K"] = res.analytic_temperature_kelvin;
    summary["norm_violation_max"] = res.norm_violation_max;
    summary["max_abs_beta"] = res.max_abs_beta;
    summary["max_in_mode_beta_power"] = res.max_in_mode_beta_power;
}

json rabi_provenance(const RabiParams& r) {
    json d;
    d["omega_c_rad_per_s"] = r.omega_c_si;
    d["qubit_gap_J"] = hbar * r.omega_c_si * r.qubit_gap_ratio;
    d["qubit_gap_over_h_Hz"] = r.omega_c_si * r.qubit_gap_ratio / (2.0 * pi);
    d["g_abs_rad_per_s"] = std::abs(r.g_ratio) * r.omega_c_si;
    d["gm_abs_rad_per_s"] = std::abs(r.gm_ratio) * r.omega_c_si;
    d["omega_m_rad_per_s"] = r.omega_m_ratio * r.omega_c_si;
    d["gamma_c_per_s"] = r.gamma_c_ratio * r.omega_c_si;
    d["gamma_qb_per_s"] = r.gamma_qb_ratio * r.omega_c_si;
    d["n_fock"] = r.n_fock;
    return d;
}

void trace_to_csv(const ObservableTrace& trace, double t_unit_s, const std::string& path,
                  std::uint64_t hash) {
    CsvWriter csv(path, hash,
                  {"t", "mean_photon", "re_a2", "im_a2", "qubit_excitation",
                   "log_negativity"});
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        csv.row({trace.times[i] * t_unit_s, trace.mean_photon[i],
                 trace.a_squared[i].real(), trace.a_squared[i].imag(),
                 trace.qubit_excitation[i],
                 trace.log_negativity.empty() ? 0.0 : trace.log_negativity[i]});
}

void run_unruh_evolve(const RunConfig& cfg, const std::string& out, json& summary) {
    const UnruhDerived d = derive_rabi(cfg);
    const auto res = lindblad_evolve(qubit_cavity_ground(d.rabi.n_fock), d.rabi,
                                     cfg.evolve_t_final, cfg.evolve);
    trace_to_csv(res.trace, 1.0 / d.rabi.omega_c_si, out + "/trace.csv", cfg.config_hash);
    summary["derived"] = d.provenance;
    summary["hygiene"]["max_trace_error"] = res.max_trace_error;
    summary["hygiene"]["max_hermiticity_error"] = res.max_hermiticity_error;
    summary["hygiene"]["min_eigenvalue"] = res.min_eigenvalue;
    summary["final_mean_photon"] = res.trace.mean_photon.back();
}

void run_unruh_steady(const RunConfig& cfg, const std::string& out, json& summary) {
    const UnruhDerived d = derive_rabi(cfg);
    const auto res = steady_state_observables(d.rabi, cfg.steady);
    trace_to_csv(res.steady_trace, 1.0 / d.rabi.omega_c_si, out + "/steady_trace.csv",
                 cfg.config_hash);
    summary["derived"] = d.provenance;
    summary["steady"]["mean_photon"] = res.mean_photon;
    summary["steady"]["a_squared_mag"] = res.a_squared_mag;
    summary["steady"]["qubit_excitation"] = res.qubit_excitation;
    summary["steady"]["e_n_mean"] = res.e_n_mean;
    summary["steady"]["e_n_max"] = res.e_n_max;
    summary["steady"]["photon_rate_per_s"] = res.photon_rate_si;
    summary["steady"]["photon_peak_phase"] = res.photon_peak_phase;
    summary["steady"]["e_n_peak_phase"] = res.e_n_peak_phase;
    summary["steady"]["periodicity_error"] = res.periodicity_error;
    summary["steady"]["converged"] = res.converged;
    summary["steady"]["windows_used"] = res.windows_used;
    summary["steady"]["t_reached_omega_c"] = res.t_reached;
    summary["hygiene"]["max_trace_error"] = res.trace_error;
    summary["hygiene"]["max_hermiticity_error"] = res.hermiticity_error;
    summary["hygiene"]["min_eigenvalue"] = res.min_eigenvalue;
}

void run_unruh_sweep(const RunConfig& cfg, const std::string& out, json& summary) {
    const UnruhDerived d = derive_rabi(cfg);
    SweepOptions opts = cfg.sweep;
    opts.steady = cfg.steady;
    const auto res = resonance_sweep(d.rabi, opts);
    CsvWriter csv(out + "/sweep.csv", cfg.config_hash,
                  {"omega_m", "mean_photon", "e_n_max"});
    for (const auto& pt : res.points)
        csv.row({pt.omega_m_ratio, pt.mean_photon, pt.e_n_max});
    summary["derived"] = d.provenance;
    summary["argmax_omega_m_ratio"] = res.argmax_omega_m;
    summary["points"] = res.points.size();
}

void verify_outputs(const RunConfig& cfg, const std::string& out, json& summary) {
    json v;
    bool ok = true;
    if (cfg.experiment == Experiment::dispersion) {
        const bool mono = summary["invariants"]["omega_monotone_on_grid"].get<bool>();
        v["omega_monotone"] = mono;
        ok = ok && mono;
    }
    if (cfg.experiment == Experiment::lattice &&
        summary.contains("horizon_track_slope_fraction_c0")) {
        const double slope = summary["horizon_track_slope_fraction_c0"].get<double>();
        const bool good =
            std::abs(slope - cfg.profile->front_speed) < 0.005 * cfg.profile->front_speed;
        v["horizon_slope_within_0p5_percent"] = good;
        ok = ok && good;
    }
    if (cfg.experiment == Experiment::bogoliubov) {
        const bool good = summary["norm_violation_max"].get<double>() < 1e-6;
        v["bogoliubov_norms_within_1e-6"] = good;
        ok = ok && good;
    }
    if (cfg.experiment == Experiment::unruh_evolve ||
        cfg.experiment == Experiment::unruh_steady) {
        const auto& h = summary["hygiene"];
        const bool good = h["max_trace_error"].get<double>() < 1e-8 &&
                          h["max_hermiticity_error"].get<double>() < 1e-10 &&
                          h["min_eigenvalue"].get<double>() > -1e-8;
        v["master_equation_hygiene"] = good;
        ok = ok && good;
    }
    v["all_passed"] = ok;
    summary["verify"] = v;
    if (!ok) throw accuracy_error("output verification failed; see summary.json");
    (void)out;
}

} // namespace

UnruhDerived derive_rabi(const RunConfig& cfg) {
    UnruhDerived d;
    if (cfg.rabi) {
        d.rabi = *cfg.rabi;
        d.provenance = rabi_provenance(d.rabi);
        d.provenance["route"] = "direct-ratios";
        return d;
    }
    const auto& c = *cfg.unruh_circuit;
    const double ec = c.charging_energy();
    const auto spec = transmon_levels(ec, c.josephson_energy, cfg.transmon_cutoff);
    const auto g = coupling_g(c, spec);
    const auto gm = coupling_gm(c, g);

    RabiParams r;
    r.omega_c_si = c.cavity_frequency;
    r.qubit_gap_ratio = spec.qubit_gap / (hbar * c.cavity_frequency);
    r.g_ratio = g / c.cavity_frequency;
    r.gm_ratio = gm / c.cavity_frequency;
    r.omega_m_ratio = c.drive_frequency / c.cavity_frequency;
    if (!(cfg.circuit_gamma_c > 0.0) || !(cfg.circuit_gamma_qb > 0.0))
        throw config_error(
            "unruh_circuit.gamma_c_per_s / gamma_qb_per_s: required for evolution runs");
    r.gamma_c_ratio = cfg.circuit_gamma_c / c.cavity_frequency;
    r.gamma_qb_ratio = cfg.circuit_gamma_qb / c.cavity_frequency;
    r.n_fock = cfg.circuit_n_fock;
    d.rabi = r;

    d.provenance = rabi_provenance(r);
    d.provenance["route"] = "circuit-chain";
    d.provenance["charging_energy_J"] = ec;
    d.provenance["charging_energy_over_h_Hz"] = ec / constants::planck;
    d.provenance["josephson_energy_J"] = c.josephson_energy;
    d.provenance["ej_over_ec"] = c.josephson_energy / ec;
    d.provenance["qubit_gap_J"] = spec.qubit_gap;
    d.provenance["qubit_gap_over_h_Hz"] = spec.qubit_gap / constants::planck;
    d.provenance["charge_matrix_element_abs"] = std::abs(spec.charge_matrix_element);
    d.provenance["charge_cutoff"] = spec.charge_cutoff;
    d.provenance["cutoff_shift_relative"] = spec.cutoff_shift;
    d.provenance["g_abs_rad_per_s"] = std::abs(g);
    d.provenance["gm_abs_rad_per_s"] = std::abs(gm);
    return d;
}

RunOutcome run_experiment(const RunConfig& cfg, const std::string& out_dir, int jobs,
                          bool verify) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif
    fs::create_directories(out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    json summary = base_summary(cfg);

    switch (cfg.experiment) {
        case Experiment::dispersion: run_dispersion(cfg, out_dir, summary); break;
        case Experiment::horizon: run_horizon(cfg, out_dir, summary); break;
        case Experiment::hawking: run_hawking(cfg, out_dir, summary); break;
        case Experiment::lattice: run_lattice(cfg, out_dir, summary); break;
        case Experiment::bogoliubov: run_bogoliubov(cfg, out_dir, summary); break;
        case Experiment::unruh_evolve: run_unruh_evolve(cfg, out_dir, summary); break;
        case Experiment::unruh_steady: run_unruh_steady(cfg, out_dir, summary); break;
        case Experiment::unruh_sweep: run_unruh_sweep(cfg, out_dir, summary); break;
    }

    if (verify) verify_outputs(cfg, out_dir, summary);

    const auto t1 = std::chrono::steady_clock::now();
    summary["wall_time_s"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1e3;

    RunOutcome outcome;
    outcome.summary_path = out_dir + "/summary.json";
    write_text_file(outcome.summary_path, summary.dump(2) + "\n");
    return outcome;
}

} // namespace agsim
