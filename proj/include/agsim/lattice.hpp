#pragma once

// Time-domain integration of the dc-SQUID array in dimensionless lattice
// units: lengths in cells a, times in a/c0, energies in 2*E_J. In these units
// the equation of motion reads
//
//   M phi'' = F,   F_n = chi_{n+1} g(d_{n+1}) - chi_n g(d_n)
//
// with bond differences d_k = phi_k - phi_{k-1}, bond weights
// chi = cos(pi Phi_ext/Phi0), g = sin (full cosine) or identity (harmonic),
// and mass matrix M = I + 2 mu L (mu = C_J/C_0, L the graph Laplacian).
// Momenta are canonical: p = M phi'.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "agsim/circuit.hpp"
#include "agsim/tridiag.hpp"

namespace agsim {

struct LatticeState {
    Eigen::VectorXd phi;
    Eigen::VectorXd p;
    double time = 0.0;

    int size() const { return static_cast<int>(phi.size()); }
    void validate(int num_cells) const;
};

struct SimConfig {
    enum class Mode { full_cosine, harmonic };
    enum class Boundary { fixed, periodic, sponge };

    Mode mode = Mode::harmonic;
    double dt = 0.02;           ///< lattice units a/c0
    Boundary boundary = Boundary::fixed;
    int sponge_width = 0;       ///< cells damped at each end (sponge boundary)
    double sponge_strength = 0.5;
    bool include_junction_capacitance = true;

    void validate(int num_cells) const;
};

/// Fills chi = cos(pi Phi_ext/Phi0) on all bonds at time t. Bond k sits at
/// x = k - 0.5 (fixed: k = 0..N, virtual end nodes; periodic: k = 0..N-1).
using ChiFiller = std::function<void(double t, Eigen::VectorXd& chi)>;

ChiFiller make_profile_chi(const FluxProfile& profile, SimConfig::Boundary boundary, int n);
ChiFiller make_uniform_chi(double flux_fraction, SimConfig::Boundary boundary, int n);

/// Leapfrog integrator with precomputed mass factorization. One instance per
/// (params, profile, config); states pass through.
class LatticeStepper {
public:
    LatticeStepper(const SquidArrayParams& params, const FluxProfile& profile, SimConfig config);
    LatticeStepper(const SquidArrayParams& params, ChiFiller chi, SimConfig config);

    /// Advances one leapfrog step of length config.dt.
    void step(LatticeState& state) const;
    /// Advances n steps; checks for divergence periodically.
    void run(LatticeState& state, long nsteps) const;

    /// Lockstep leapfrog on a batch of complex mode functions (harmonic only);
    /// columns are independent trajectories sharing the flux schedule.
    /// dt may be negative for backward evolution.
    void step_batch(Eigen::MatrixXcd& phi, Eigen::MatrixXcd& p, double& t, double dt) const;
    void run_batch(Eigen::MatrixXcd& phi, Eigen::MatrixXcd& p, double& t, long nsteps,
                   double dt) const;

    /// phi' = M^{-1} p.
    Eigen::VectorXd phi_dot(const LatticeState& state) const;
    /// phi'' = M^{-1} F(phi, t).
    Eigen::VectorXd phi_ddot(const LatticeState& state) const;

    /// Total energy in lattice units (zero state -> 0).
    double energy(const LatticeState& state) const;
    /// Analytic dH/dt from the flux drive, lattice units.
    double drive_power(const LatticeState& state) const;

    const SimConfig& config() const { return config_; }
    double mu() const { return mu_; }
    int num_cells() const { return n_; }

private:
    void force(const Eigen::VectorXd& phi, double t, Eigen::VectorXd& f) const;
    void apply_sponge(Eigen::VectorXd& p) const;

    int n_;
    double mu_;
    SimConfig config_;
    ChiFiller chi_;
    std::optional<FluxProfile> profile_;
    TridiagSolver mass_;
    Eigen::VectorXd damp_;
    mutable Eigen::VectorXd chi_buf_;
    mutable Eigen::VectorXd force_buf_;
};

/// One step of the array equation of motion (convenience wrapper).
LatticeState step_lattice(const LatticeState& state, const SquidArrayParams& params,
                          const FluxProfile& profile, const SimConfig& config);

struct NodeObservables {
    Eigen::VectorXd voltage; ///< V_n [V]
    Eigen::VectorXd current; ///< SQUID current between nodes n, n+1 [A]; last entry 0
};

/// Voltages from momenta and SQUID currents from the junction relation, SI.
NodeObservables node_observables(const LatticeState& state, const SquidArrayParams& params,
                                 const FluxProfile& profile, const SimConfig& config);

/// Total energy in Joules (Legendre transform of the array Lagrangian,
/// constant offset fixed so the zero state has zero energy).
double total_energy(const LatticeState& state, const SquidArrayParams& params,
                    const FluxProfile& profile, const SimConfig& config);

struct FrontEvolution {
    std::vector<double> snapshot_times;
    std::vector<LatticeState> snapshots;
    std::vector<double> horizon_times;
    std::vector<std::optional<double>> horizon_positions; ///< cells
    double energy_drift = 0.0; ///< |linear-fit slope x duration| / max(E0, eps)
};

/// Integrates under the moving flux front, recording snapshots and the
/// horizon track x_h(t).
FrontEvolution evolve_with_front(const LatticeState& initial, const SquidArrayParams& params,
                                 const FluxProfile& profile, const SimConfig& config,
                                 double t_final, int snapshot_stride = 1000,
                                 int horizon_stride = 10);

namespace reference {
/// Plain-loop, Eigen-factorized stepper kept as an independent check of the
/// optimized kernels.
LatticeState step_lattice(const LatticeState& state, const SquidArrayParams& params,
                          const FluxProfile& profile, const SimConfig& config);
} // namespace reference

} // namespace agsim
