#include "agsim/config.hpp"

#include <set>

namespace agsim {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& section,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) throw config_error(section + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw config_error(section + ": unknown key '" + it.key() + "'");
    }
}

double need_num(const json& j, const std::string& section, const std::string& key) {
    if (!j.contains(key))
        throw config_error(section + ": missing required key '" + key + "'");
    if (!j.at(key).is_number())
        throw config_error(section + "." + key + ": expected a number");
    return j.at(key).get<double>();
}

double opt_num(const json& j, const std::string& section, const std::string& key,
               double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw config_error(section + "." + key + ": expected a number");
    return j.at(key).get<double>();
}

long opt_int(const json& j, const std::string& section, const std::string& key,
             long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw config_error(section + "." + key + ": expected an integer");
    return j.at(key).get<long>();
}

bool opt_bool(const json& j, const std::string& section, const std::string& key,
              bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean())
        throw config_error(section + "." + key + ": expected a boolean");
    return j.at(key).get<bool>();
}

std::string need_str(const json& j, const std::string& section, const std::string& key) {
    if (!j.contains(key))
        throw config_error(section + ": missing required key '" + key + "'");
    if (!j.at(key).is_string())
        throw config_error(section + "." + key + ": expected a string");
    return j.at(key).get<std::string>();
}

SquidArrayParams parse_squid(const json& j) {
    check_keys(j, "squid",
               {"critical_current_A", "ground_capacitance_F", "junction_capacitance_F",
                "cell_length_m", "num_cells"});
    SquidArrayParams p;
    p.critical_current = need_num(j, "squid", "critical_current_A");
    p.ground_capacitance = need_num(j, "squid", "ground_capacitance_F");
    p.junction_capacitance = need_num(j, "squid", "junction_capacitance_F");
    p.cell_length = need_num(j, "squid", "cell_length_m");
    p.num_cells = static_cast<int>(opt_int(j, "squid", "num_cells", 0));
    if (p.num_cells < 3) throw config_error("squid.num_cells: must be >= 3");
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("squid: ") + e.what());
    }
    return p;
}

FluxProfile parse_profile(const json& j) {
    check_keys(j, "profile",
               {"amplitude_flux_quanta", "front_speed_c0", "ramp_width_cells",
                "speed_transition_cells", "floor_flux_quanta", "front_position_t0_cells"});
    FluxProfile p;
    p.amplitude = need_num(j, "profile", "amplitude_flux_quanta");
    p.front_speed = need_num(j, "profile", "front_speed_c0");
    p.floor = opt_num(j, "profile", "floor_flux_quanta", 0.0);
    p.front_position_t0 = need_num(j, "profile", "front_position_t0_cells");
    const bool has_w = j.contains("ramp_width_cells");
    const bool has_len = j.contains("speed_transition_cells");
    if (has_w == has_len)
        throw config_error(
            "profile: give exactly one of ramp_width_cells / speed_transition_cells");
    if (has_w) {
        p.ramp_width = need_num(j, "profile", "ramp_width_cells");
    } else {
        p.ramp_width = ramp_width_for_speed_transition(
            p.amplitude, p.floor, need_num(j, "profile", "speed_transition_cells"));
    }
    if (!(p.amplitude + p.floor < 0.5))
        throw config_error(
            "profile.amplitude_flux_quanta: amplitude + floor must be < 0.5 flux quanta");
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("profile: ") + e.what());
    }
    return p;
}

SimConfig parse_sim(const json& j, int num_cells) {
    check_keys(j, "sim",
               {"mode", "dt", "boundary", "sponge_width_cells", "sponge_strength",
                "include_junction_capacitance"});
    SimConfig c;
    if (j.contains("mode")) {
        const std::string m = need_str(j, "sim", "mode");
        if (m == "harmonic")
            c.mode = SimConfig::Mode::harmonic;
        else if (m == "full_cosine")
            c.mode = SimConfig::Mode::full_cosine;
        else
            throw config_error("sim.mode: expected 'harmonic' or 'full_cosine'");
    }
    c.dt = opt_num(j, "sim", "dt", c.dt);
    if (j.contains("boundary")) {
        const std::string b = need_str(j, "sim", "boundary");
        if (b == "fixed")
            c.boundary = SimConfig::Boundary::fixed;
        else if (b == "periodic")
            c.boundary = SimConfig::Boundary::periodic;
        else if (b == "sponge")
            c.boundary = SimConfig::Boundary::sponge;
        else
            throw config_error("sim.boundary: expected 'fixed', 'periodic' or 'sponge'");
    }
    c.sponge_width = static_cast<int>(opt_int(j, "sim", "sponge_width_cells", 64));
    c.sponge_strength = opt_num(j, "sim", "sponge_strength", c.sponge_strength);
    c.include_junction_capacitance =
        opt_bool(j, "sim", "include_junction_capacitance", true);
    try {
        c.validate(num_cells);
    } catch (const std::exception& e) {
        throw config_error(std::string("sim: ") + e.what());
    }
    return c;
}

RabiParams parse_rabi(const json& j) {
    check_keys(j, "rabi",
               {"omega_c_rad_per_s", "qubit_gap_ratio", "g_ratio", "g_imag_ratio",
                "gm_ratio", "gm_imag_ratio", "omega_m_ratio", "gamma_c_ratio",
                "gamma_qb_ratio", "n_fock"});
    RabiParams p;
    p.omega_c_si = need_num(j, "rabi", "omega_c_rad_per_s");
    p.qubit_gap_ratio = need_num(j, "rabi", "qubit_gap_ratio");
    p.g_ratio = {need_num(j, "rabi", "g_ratio"), opt_num(j, "rabi", "g_imag_ratio", 0.0)};
    p.gm_ratio = {need_num(j, "rabi", "gm_ratio"),
                  opt_num(j, "rabi", "gm_imag_ratio", 0.0)};
    p.omega_m_ratio = need_num(j, "rabi", "omega_m_ratio");
    p.gamma_c_ratio = need_num(j, "rabi", "gamma_c_ratio");
    p.gamma_qb_ratio = need_num(j, "rabi", "gamma_qb_ratio");
    p.n_fock = static_cast<int>(opt_int(j, "rabi", "n_fock", 8));
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("rabi: ") + e.what());
    }
    return p;
}

UnruhCircuitParams parse_unruh_circuit(const json& j) {
    check_keys(j, "unruh_circuit",
               {"cavity_frequency_rad_per_s", "cavity_capacitance_F", "cavity_impedance_ohm",
                "fbar_capacitance_F", "fbar_thickness_m", "drive_amplitude_m",
                "drive_frequency_rad_per_s", "junction_capacitance_F", "ej_over_ec",
                "josephson_energy_J", "charge_cutoff", "gamma_c_per_s", "gamma_qb_per_s",
                "n_fock"});
    UnruhCircuitParams c;
    c.cavity_frequency = need_num(j, "unruh_circuit", "cavity_frequency_rad_per_s");
    c.cavity_capacitance = need_num(j, "unruh_circuit", "cavity_capacitance_F");
    c.cavity_impedance = need_num(j, "unruh_circuit", "cavity_impedance_ohm");
    c.fbar_capacitance = need_num(j, "unruh_circuit", "fbar_capacitance_F");
    c.fbar_thickness = need_num(j, "unruh_circuit", "fbar_thickness_m");
    c.drive_amplitude = need_num(j, "unruh_circuit", "drive_amplitude_m");
    c.drive_frequency = need_num(j, "unruh_circuit", "drive_frequency_rad_per_s");
    c.junction_capacitance = need_num(j, "unruh_circuit", "junction_capacitance_F");
    const bool has_ej = j.contains("josephson_energy_J");
    const bool has_ratio = j.contains("ej_over_ec");
    if (has_ej == has_ratio)
        throw config_error(
            "unruh_circuit: give exactly one of josephson_energy_J / ej_over_ec");
    if (has_ej)
        c.josephson_energy = need_num(j, "unruh_circuit", "josephson_energy_J");
    else
        c.josephson_energy = need_num(j, "unruh_circuit", "ej_over_ec") * c.charging_energy();
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("unruh_circuit: ") + e.what());
    }
    return c;
}

} // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::dispersion: return "dispersion";
        case Experiment::horizon: return "horizon";
        case Experiment::hawking: return "hawking";
        case Experiment::lattice: return "lattice";
        case Experiment::bogoliubov: return "bogoliubov";
        case Experiment::unruh_evolve: return "unruh-evolve";
        case Experiment::unruh_steady: return "unruh-steady";
        case Experiment::unruh_sweep: return "unruh-sweep";
    }
    return "?";
}

std::uint64_t config_fingerprint(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    check_keys(j, "config",
               {"experiment", "seed", "squid", "profile", "sim", "packet", "lattice",
                "dispersion", "bogoliubov", "rabi", "unruh_circuit", "evolve", "steady",
                "sweep"});

    RunConfig cfg;
    cfg.raw_text = text;
    cfg.raw = j;
    cfg.config_hash = config_fingerprint(text);
    cfg.seed = opt_int(j, "config", "seed", 0);

    const std::string exp = need_str(j, "config", "experiment");
    if (exp == "dispersion") cfg.experiment = Experiment::dispersion;
    else if (exp == "horizon") cfg.experiment = Experiment::horizon;
    else if (exp == "hawking") cfg.experiment = Experiment::hawking;
    else if (exp == "lattice") cfg.experiment = Experiment::lattice;
    else if (exp == "bogoliubov") cfg.experiment = Experiment::bogoliubov;
    else if (exp == "unruh-evolve") cfg.experiment = Experiment::unruh_evolve;
    else if (exp == "unruh-steady") cfg.experiment = Experiment::unruh_steady;
    else if (exp == "unruh-sweep") cfg.experiment = Experiment::unruh_sweep;
    else throw config_error("experiment: unknown value '" + exp + "'");

    const bool circuit_side = cfg.experiment == Experiment::dispersion ||
                              cfg.experiment == Experiment::horizon ||
                              cfg.experiment == Experiment::hawking ||
                              cfg.experiment == Experiment::lattice ||
                              cfg.experiment == Experiment::bogoliubov;

    if (circuit_side) {
        if (!j.contains("squid")) throw config_error("config: missing 'squid' section");
        cfg.squid = parse_squid(j.at("squid"));
        if (j.contains("profile")) cfg.profile = parse_profile(j.at("profile"));
        if (j.contains("sim")) cfg.sim = parse_sim(j.at("sim"), cfg.squid->num_cells);

        if (j.contains("packet")) {
            const json& pj = j.at("packet");
            check_keys(pj, "packet",
                       {"type", "center_wavenumber_rad_per_cell", "width_cells", "amplitude",
                        "center_cells", "direction", "mode_index",
                        "background_flux_quanta"});
            const std::string type = need_str(pj, "packet", "type");
            cfg.packet_background_flux =
                opt_num(pj, "packet", "background_flux_quanta", 0.0);
            if (type == "gaussian") {
                WavePacketSpec s;
                s.center_wavenumber =
                    need_num(pj, "packet", "center_wavenumber_rad_per_cell");
                s.width = need_num(pj, "packet", "width_cells");
                s.amplitude = need_num(pj, "packet", "amplitude");
                s.center = need_num(pj, "packet", "center_cells");
                const std::string dir = need_str(pj, "packet", "direction");
                if (dir == "right") s.direction = WavePacketSpec::Direction::right;
                else if (dir == "left") s.direction = WavePacketSpec::Direction::left;
                else throw config_error("packet.direction: expected 'right' or 'left'");
                for (auto& w : s.warnings()) cfg.warnings.push_back("packet: " + w);
                cfg.packet = s;
            } else if (type == "sine_mode") {
                cfg.sine_mode_index =
                    static_cast<int>(opt_int(pj, "packet", "mode_index", 1));
                WavePacketSpec s; // amplitude reused for the mode amplitude
                s.amplitude = need_num(pj, "packet", "amplitude");
                cfg.packet = s;
            } else {
                throw config_error("packet.type: expected 'gaussian' or 'sine_mode'");
            }
        }

        if (j.contains("lattice")) {
            const json& lj = j.at("lattice");
            check_keys(lj, "lattice", {"t_final", "snapshot_stride", "horizon_stride"});
            cfg.t_final = need_num(lj, "lattice", "t_final");
            cfg.snapshot_stride =
                static_cast<int>(opt_int(lj, "lattice", "snapshot_stride", 1000));
            cfg.horizon_stride =
                static_cast<int>(opt_int(lj, "lattice", "horizon_stride", 10));
        }
        if (j.contains("dispersion")) {
            const json& dj = j.at("dispersion");
            check_keys(dj, "dispersion", {"k_points"});
            cfg.dispersion_points = static_cast<int>(opt_int(dj, "dispersion", "k_points", 129));
            if (cfg.dispersion_points < 2)
                throw config_error("dispersion.k_points: must be >= 2");
        }
        if (j.contains("bogoliubov")) {
            const json& bj = j.at("bogoliubov");
            check_keys(bj, "bogoliubov",
                       {"in_mode_count", "spectrum_bins", "spectrum_lo_kappa",
                        "spectrum_hi_kappa", "t_final", "front_stop_fraction",
                        "probe_margin_widths", "min_cycles"});
            cfg.bogoliubov.in_mode_count =
                static_cast<int>(opt_int(bj, "bogoliubov", "in_mode_count", 64));
            cfg.bogoliubov.spectrum_bins =
                static_cast<int>(opt_int(bj, "bogoliubov", "spectrum_bins", 64));
            cfg.bogoliubov.spectrum_lo =
                opt_num(bj, "bogoliubov", "spectrum_lo_kappa", 0.01);
            cfg.bogoliubov.spectrum_hi =
                opt_num(bj, "bogoliubov", "spectrum_hi_kappa", 1.0);
            cfg.bogoliubov.t_final = opt_num(bj, "bogoliubov", "t_final", -1.0);
            cfg.bogoliubov.front_stop_fraction =
                opt_num(bj, "bogoliubov", "front_stop_fraction", 0.55);
            cfg.bogoliubov.probe_margin_widths =
                opt_num(bj, "bogoliubov", "probe_margin_widths", 4.0);
            cfg.bogoliubov.min_cycles = opt_num(bj, "bogoliubov", "min_cycles", 3.0);
        }
        if (cfg.experiment != Experiment::dispersion &&
            cfg.experiment != Experiment::hawking && !cfg.profile)
            throw config_error("config: missing 'profile' section");
        if (cfg.experiment == Experiment::lattice && !j.contains("lattice"))
            throw config_error("config: missing 'lattice' section");
    } else {
        // Unruh side: either direct rabi ratios or the circuit chain.
        if (j.contains("rabi")) cfg.rabi = parse_rabi(j.at("rabi"));
        if (j.contains("unruh_circuit")) {
            cfg.unruh_circuit = parse_unruh_circuit(j.at("unruh_circuit"));
            const json& uj = j.at("unruh_circuit");
            cfg.transmon_cutoff =
                static_cast<int>(opt_int(uj, "unruh_circuit", "charge_cutoff", 20));
            cfg.circuit_gamma_c = opt_num(uj, "unruh_circuit", "gamma_c_per_s", 0.0);
            cfg.circuit_gamma_qb = opt_num(uj, "unruh_circuit", "gamma_qb_per_s", 0.0);
            cfg.circuit_n_fock =
                static_cast<int>(opt_int(uj, "unruh_circuit", "n_fock", 8));
            for (auto& w : cfg.unruh_circuit->warnings())
                cfg.warnings.push_back("unruh_circuit: " + w);
        }
        if (!cfg.rabi && !cfg.unruh_circuit)
            throw config_error("config: needs a 'rabi' or 'unruh_circuit' section");

        if (j.contains("evolve")) {
            const json& ej = j.at("evolve");
            check_keys(ej, "evolve",
                       {"dt_omega_c", "stride", "frame", "t_final_omega_c",
                        "t_final_lifetimes", "record_negativity"});
            cfg.evolve.dt = opt_num(ej, "evolve", "dt_omega_c", 0.1);
            cfg.evolve.stride = opt_int(ej, "evolve", "stride", 100);
            cfg.evolve.record_negativity =
                opt_bool(ej, "evolve", "record_negativity", true);
            if (ej.contains("frame")) {
                const std::string f = need_str(ej, "evolve", "frame");
                if (f == "rotating") cfg.evolve.frame = Frame::rotating;
                else if (f == "lab") cfg.evolve.frame = Frame::lab;
                else throw config_error("evolve.frame: expected 'rotating' or 'lab'");
            }
            if (ej.contains("t_final_omega_c"))
                cfg.evolve_t_final = need_num(ej, "evolve", "t_final_omega_c");
        }
        if (j.contains("steady")) {
            const json& sj = j.at("steady");
            check_keys(sj, "steady",
                       {"dt_omega_c", "min_lifetimes", "window_lifetimes",
                        "convergence_tol", "max_windows", "fine_substeps"});
            cfg.steady.dt_target = opt_num(sj, "steady", "dt_omega_c", 0.1);
            cfg.steady.min_lifetimes = opt_num(sj, "steady", "min_lifetimes", 5.0);
            cfg.steady.window_lifetimes = opt_num(sj, "steady", "window_lifetimes", 1.0);
            cfg.steady.convergence_tol = opt_num(sj, "steady", "convergence_tol", 1e-3);
            cfg.steady.max_windows =
                static_cast<int>(opt_int(sj, "steady", "max_windows", 64));
            cfg.steady.fine_substeps =
                static_cast<int>(opt_int(sj, "steady", "fine_substeps", 4));
        }
        if (j.contains("sweep")) {
            const json& wj = j.at("sweep");
            check_keys(wj, "sweep", {"omega_m_lo", "omega_m_hi", "step", "auto_refine"});
            cfg.sweep.omega_m_lo = need_num(wj, "sweep", "omega_m_lo");
            cfg.sweep.omega_m_hi = need_num(wj, "sweep", "omega_m_hi");
            cfg.sweep.step = need_num(wj, "sweep", "step");
            cfg.sweep.auto_refine = opt_bool(wj, "sweep", "auto_refine", true);
            if (!(cfg.sweep.step <= 1e-3 + 1e-15))
                throw config_error("sweep.step: must be <= 1e-3 omega_c");
            cfg.sweep.steady = cfg.steady;
        }
        if (cfg.experiment == Experiment::unruh_evolve && !(cfg.evolve_t_final > 0.0))
            throw config_error("evolve.t_final_omega_c: required and must be > 0");
        if (cfg.experiment == Experiment::unruh_sweep && !j.contains("sweep"))
            throw config_error("config: missing 'sweep' section");
    }
    return cfg;
}

} // namespace agsim
