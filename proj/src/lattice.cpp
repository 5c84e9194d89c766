#include "agsim/lattice.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agsim {

using constants::flux_quantum;
using constants::pi;

namespace {

int bond_count(SimConfig::Boundary boundary, int n) {
    return boundary == SimConfig::Boundary::periodic ? n : n + 1;
}

// F_n without loop-carried state so the loop parallelizes deterministically.
template <bool Harmonic, typename Scalar>
inline Scalar force_at(const Scalar* phi, const double* chi, int n, int size,
                       bool periodic) {
    Scalar prev, next;
    if (periodic) {
        const int nm = (n == 0) ? size - 1 : n - 1;
        const int np = (n == size - 1) ? 0 : n + 1;
        prev = phi[nm];
        next = phi[np];
        const Scalar d_lo = phi[n] - prev;
        const Scalar d_hi = next - phi[n];
        const double c_lo = chi[n];
        const double c_hi = chi[(n + 1) % size];
        if constexpr (Harmonic)
            return c_hi * d_hi - c_lo * d_lo;
        else
            return c_hi * std::sin(d_hi) - c_lo * std::sin(d_lo);
    }
    prev = (n == 0) ? Scalar(0) : phi[n - 1];
    next = (n == size - 1) ? Scalar(0) : phi[n + 1];
    const Scalar d_lo = phi[n] - prev;
    const Scalar d_hi = next - phi[n];
    if constexpr (Harmonic)
        return chi[n + 1] * d_hi - chi[n] * d_lo;
    else
        return chi[n + 1] * std::sin(d_hi) - chi[n] * std::sin(d_lo);
}

} // namespace

void LatticeState::validate(int num_cells) const {
    if (phi.size() != num_cells || p.size() != num_cells)
        throw domain_error("lattice state arrays must have length num_cells");
    if (!phi.allFinite() || !p.allFinite())
        throw domain_error("lattice state contains non-finite entries");
}

void SimConfig::validate(int num_cells) const {
    if (!(dt > 0.0 && dt < 0.1))
        throw config_error("dt must lie in (0, 0.1) lattice units");
    if (boundary == Boundary::sponge) {
        if (sponge_width <= 0) throw config_error("sponge boundary needs sponge_width > 0");
        if (sponge_width >= num_cells / 4)
            throw config_error("sponge_width must be < num_cells/4");
        if (!(sponge_strength > 0.0)) throw config_error("sponge_strength must be > 0");
    }
}

ChiFiller make_profile_chi(const FluxProfile& profile, SimConfig::Boundary boundary, int n) {
    const int bonds = bond_count(boundary, n);
    return [profile, bonds](double t, Eigen::VectorXd& chi) {
        chi.resize(bonds);
        for (int k = 0; k < bonds; ++k)
            chi(k) = std::cos(pi * profile.flux_fraction(k - 0.5, t));
    };
}

ChiFiller make_uniform_chi(double flux_fraction, SimConfig::Boundary boundary, int n) {
    const int bonds = bond_count(boundary, n);
    const double value = std::cos(pi * flux_fraction);
    return [value, bonds](double, Eigen::VectorXd& chi) {
        chi.setConstant(bonds, value);
    };
}

LatticeStepper::LatticeStepper(const SquidArrayParams& params, const FluxProfile& profile,
                               SimConfig config)
    : LatticeStepper(params, make_profile_chi(profile, config.boundary, params.num_cells),
                     config) {
    profile.validate();
    profile_ = profile;
}

LatticeStepper::LatticeStepper(const SquidArrayParams& params, ChiFiller chi, SimConfig config)
    : n_(params.num_cells), mu_(params.capacitance_ratio()), config_(config),
      chi_(std::move(chi)) {
    params.validate();
    config_.validate(n_);
    if (!config_.include_junction_capacitance) mu_ = 0.0;
    const bool periodic = config_.boundary == SimConfig::Boundary::periodic;
    if (mu_ > 0.0)
        mass_.reset(n_, 1.0 + 4.0 * mu_, -2.0 * mu_, periodic);
    else
        mass_.reset(n_, 1.0, 0.0, false);
    if (config_.boundary == SimConfig::Boundary::sponge) {
        damp_ = Eigen::VectorXd::Ones(n_);
        const int w = config_.sponge_width;
        for (int i = 0; i < w; ++i) {
            const double xi = double(w - i) / w;
            const double factor = std::exp(-config_.sponge_strength * xi * xi * config_.dt);
            damp_(i) = factor;
            damp_(n_ - 1 - i) = factor;
        }
    }
}

void LatticeStepper::force(const Eigen::VectorXd& phi, double t, Eigen::VectorXd& f) const {
    chi_(t, chi_buf_);
    f.resize(n_);
    const bool periodic = config_.boundary == SimConfig::Boundary::periodic;
    const double* cp = chi_buf_.data();
    const double* pp = phi.data();
    double* fp = f.data();
    if (config_.mode == SimConfig::Mode::harmonic) {
#pragma omp parallel for schedule(static) if (n_ >= 16384)
        for (int i = 0; i < n_; ++i) fp[i] = force_at<true>(pp, cp, i, n_, periodic);
    } else {
#pragma omp parallel for schedule(static) if (n_ >= 8192)
        for (int i = 0; i < n_; ++i) fp[i] = force_at<false>(pp, cp, i, n_, periodic);
    }
}

void LatticeStepper::apply_sponge(Eigen::VectorXd& p) const {
    if (damp_.size() > 0) p.array() *= damp_.array();
}

void LatticeStepper::step(LatticeState& state) const { run(state, 1); }

void LatticeStepper::run(LatticeState& state, long nsteps) const {
    state.validate(n_);
    if (nsteps <= 0) return;
    const double dt = config_.dt;
    Eigen::VectorXd scratch(n_);

    force(state.phi, state.time, force_buf_);
    state.p += (0.5 * dt) * force_buf_;
    for (long s = 0; s < nsteps; ++s) {
        if (mass_.is_identity()) {
            state.phi += dt * state.p;
        } else {
            scratch = state.p;
            mass_.solve_in_place(scratch);
            state.phi += dt * scratch;
        }
        state.time += dt;
        force(state.phi, state.time, force_buf_);
        state.p += ((s + 1 < nsteps) ? dt : 0.5 * dt) * force_buf_;
        apply_sponge(state.p);
        if ((s & 255) == 255 && !state.phi.allFinite())
            throw divergence_error("lattice evolution diverged", s + 1);
    }
    if (!state.phi.allFinite() || !state.p.allFinite())
        throw divergence_error("lattice evolution diverged", nsteps);
}

void LatticeStepper::step_batch(Eigen::MatrixXcd& phi, Eigen::MatrixXcd& p, double& t,
                                double dt) const {
    run_batch(phi, p, t, 1, dt);
}

void LatticeStepper::run_batch(Eigen::MatrixXcd& phi, Eigen::MatrixXcd& p, double& t,
                               long nsteps, double dt) const {
    if (config_.mode != SimConfig::Mode::harmonic)
        throw domain_error("mode-function batches require harmonic mode");
    if (config_.boundary == SimConfig::Boundary::sponge)
        throw config_error("mode-function batches require non-dissipative boundaries");
    if (nsteps <= 0) return;
    const bool periodic = config_.boundary == SimConfig::Boundary::periodic;
    const int cols = static_cast<int>(phi.cols());

    auto kick = [&](double h) {
        const double* cp = chi_buf_.data();
#pragma omp parallel for schedule(static)
        for (int c = 0; c < cols; ++c) {
            const std::complex<double>* pc = phi.col(c).data();
            std::complex<double>* mc = p.col(c).data();
            for (int i = 0; i < n_; ++i)
                mc[i] += h * force_at<true>(pc, cp, i, n_, periodic);
        }
    };
    auto drift = [&]() {
        if (mass_.is_identity()) {
            phi.noalias() += dt * p;
        } else {
#pragma omp parallel for schedule(static)
            for (int c = 0; c < cols; ++c) {
                Eigen::VectorXcd tmp = p.col(c);
                mass_.solve_in_place(tmp);
                phi.col(c) += dt * tmp;
            }
        }
    };

    chi_(t, chi_buf_);
    kick(0.5 * dt);
    for (long s = 0; s < nsteps; ++s) {
        drift();
        t += dt;
        chi_(t, chi_buf_);
        kick((s + 1 < nsteps) ? dt : 0.5 * dt);
    }
}

Eigen::VectorXd LatticeStepper::phi_dot(const LatticeState& state) const {
    Eigen::VectorXd v = state.p;
    mass_.solve_in_place(v);
    return v;
}

Eigen::VectorXd LatticeStepper::phi_ddot(const LatticeState& state) const {
    Eigen::VectorXd f(n_);
    force(state.phi, state.time, f);
    mass_.solve_in_place(f);
    return f;
}

double LatticeStepper::energy(const LatticeState& state) const {
    Eigen::VectorXd v = state.p;
    mass_.solve_in_place(v);
    double kinetic = 0.5 * state.p.dot(v);

    chi_(state.time, chi_buf_);
    const bool periodic = config_.boundary == SimConfig::Boundary::periodic;
    const bool harmonic = config_.mode == SimConfig::Mode::harmonic;
    double potential = 0.0;
    const int bonds = static_cast<int>(chi_buf_.size());
    for (int k = 0; k < bonds; ++k) {
        double d;
        if (periodic) {
            d = state.phi(k) - state.phi((k + n_ - 1) % n_);
        } else {
            const double lo = (k == 0) ? 0.0 : state.phi(k - 1);
            const double hi = (k == n_) ? 0.0 : state.phi(k);
            d = hi - lo;
        }
        potential += chi_buf_(k) * (harmonic ? 0.5 * d * d : 1.0 - std::cos(d));
    }
    return kinetic + potential;
}

double LatticeStepper::drive_power(const LatticeState& state) const {
    if (!profile_) throw config_error("drive power requires a flux profile");
    const bool periodic = config_.boundary == SimConfig::Boundary::periodic;
    const bool harmonic = config_.mode == SimConfig::Mode::harmonic;
    const int bonds = bond_count(config_.boundary, n_);
    double power = 0.0;
    for (int k = 0; k < bonds; ++k) {
        const double x = k - 0.5;
        const double frac = profile_->flux_fraction(x, state.time);
        const double dchi_dt =
            -pi * std::sin(pi * frac) * profile_->flux_time_derivative(x, state.time);
        double d;
        if (periodic) {
            d = state.phi(k) - state.phi((k + n_ - 1) % n_);
        } else {
            const double lo = (k == 0) ? 0.0 : state.phi(k - 1);
            const double hi = (k == n_) ? 0.0 : state.phi(k);
            d = hi - lo;
        }
        power += dchi_dt * (harmonic ? 0.5 * d * d : 1.0 - std::cos(d));
    }
    return power;
}

LatticeState step_lattice(const LatticeState& state, const SquidArrayParams& params,
                          const FluxProfile& profile, const SimConfig& config) {
    LatticeStepper stepper(params, profile, config);
    LatticeState next = state;
    stepper.step(next);
    return next;
}

NodeObservables node_observables(const LatticeState& state, const SquidArrayParams& params,
                                 const FluxProfile& profile, const SimConfig& config) {
    LatticeStepper stepper(params, profile, config);
    const double c0 = zero_flux_speed(params);
    const double rate = c0 / params.cell_length; // lattice time -> 1/s
    const double phi0_2pi = flux_quantum / (2.0 * pi);

    NodeObservables obs;
    obs.voltage = phi0_2pi * rate * stepper.phi_dot(state);

    const int n = state.size();
    Eigen::VectorXd ddot = stepper.phi_ddot(state);
    obs.current = Eigen::VectorXd::Zero(n);
    for (int k = 0; k + 1 < n; ++k) {
        const double phi_j = state.phi(k) - state.phi(k + 1);
        const double chi = std::cos(pi * profile.flux_fraction(k + 0.5, state.time));
        obs.current(k) =
            2.0 * params.junction_capacitance * phi0_2pi * rate * rate * (ddot(k) - ddot(k + 1)) +
            2.0 * params.critical_current * chi * std::sin(phi_j);
    }
    return obs;
}

double total_energy(const LatticeState& state, const SquidArrayParams& params,
                    const FluxProfile& profile, const SimConfig& config) {
    LatticeStepper stepper(params, profile, config);
    return stepper.energy(state) * 2.0 * params.josephson_energy();
}

FrontEvolution evolve_with_front(const LatticeState& initial, const SquidArrayParams& params,
                                 const FluxProfile& profile, const SimConfig& config,
                                 double t_final, int snapshot_stride, int horizon_stride) {
    if (snapshot_stride <= 0 || horizon_stride <= 0)
        throw config_error("strides must be positive");
    LatticeStepper stepper(params, profile, config);
    const long nsteps = std::lround((t_final - initial.time) / config.dt);
    if (nsteps < 0) throw config_error("t_final earlier than the initial state time");

    FrontEvolution out;
    LatticeState state = initial;
    std::vector<double> energies;
    auto record = [&]() {
        out.snapshot_times.push_back(state.time);
        out.snapshots.push_back(state);
        energies.push_back(stepper.energy(state));
    };
    record();
    long done = 0;
    while (done < nsteps) {
        const long chunk = std::min<long>(snapshot_stride, nsteps - done);
        stepper.run(state, chunk);
        done += chunk;
        record();
    }

    const bool has_horizon = profile.amplitude > 0.0 && profile.front_speed > 0.0 &&
                             profile.front_speed < 1.0;
    for (long s = 0; s <= nsteps; s += horizon_stride) {
        const double t = initial.time + s * config.dt;
        out.horizon_times.push_back(t);
        out.horizon_positions.push_back(
            has_horizon ? find_horizon(profile, params, t) : std::nullopt);
    }

    // Secular energy drift: |linear-fit slope| x duration, relative.
    const int m = static_cast<int>(energies.size());
    if (m >= 3) {
        double st = 0, se = 0, stt = 0, ste = 0;
        for (int i = 0; i < m; ++i) {
            st += out.snapshot_times[i];
            se += energies[i];
            stt += out.snapshot_times[i] * out.snapshot_times[i];
            ste += out.snapshot_times[i] * energies[i];
        }
        const double denom = m * stt - st * st;
        if (denom > 0) {
            const double slope = (m * ste - st * se) / denom;
            const double duration = out.snapshot_times.back() - out.snapshot_times.front();
            const double scale = std::max(std::abs(energies.front()), 1e-300);
            out.energy_drift = std::abs(slope) * duration / scale;
        }
    }
    return out;
}

namespace reference {

LatticeState step_lattice(const LatticeState& state, const SquidArrayParams& params,
                          const FluxProfile& profile, const SimConfig& config) {
    params.validate();
    config.validate(params.num_cells);
    const int n = params.num_cells;
    state.validate(n);
    const double mu = config.include_junction_capacitance ? params.capacitance_ratio() : 0.0;
    const bool periodic = config.boundary == SimConfig::Boundary::periodic;
    const bool harmonic = config.mode == SimConfig::Mode::harmonic;

    Eigen::MatrixXd mass = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        mass(i, i) += 4.0 * mu;
        if (i + 1 < n) {
            mass(i, i + 1) -= 2.0 * mu;
            mass(i + 1, i) -= 2.0 * mu;
        }
    }
    if (periodic) {
        mass(0, n - 1) -= 2.0 * mu;
        mass(n - 1, 0) -= 2.0 * mu;
    }
    Eigen::LDLT<Eigen::MatrixXd> solver(mass);

    auto force = [&](const Eigen::VectorXd& phi, double t) {
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) {
            double prev, next;
            if (periodic) {
                prev = phi((i + n - 1) % n);
                next = phi((i + 1) % n);
            } else {
                prev = (i == 0) ? 0.0 : phi(i - 1);
                next = (i == n - 1) ? 0.0 : phi(i + 1);
            }
            const double chi_lo = std::cos(pi * profile.flux_fraction(i - 0.5, t));
            const double chi_hi = std::cos(pi * profile.flux_fraction(i + 0.5, t));
            const double d_lo = phi(i) - prev;
            const double d_hi = next - phi(i);
            f(i) = harmonic ? chi_hi * d_hi - chi_lo * d_lo
                            : chi_hi * std::sin(d_hi) - chi_lo * std::sin(d_lo);
        }
        return f;
    };

    LatticeState next = state;
    const double dt = config.dt;
    next.p += (0.5 * dt) * force(next.phi, next.time);
    next.phi += dt * solver.solve(next.p);
    next.time += dt;
    next.p += (0.5 * dt) * force(next.phi, next.time);
    return next;
}

} // namespace reference

} // namespace agsim
