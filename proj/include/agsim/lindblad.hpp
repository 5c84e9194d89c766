#pragma once

// Lindblad master equation for the driven Rabi model with zero-temperature
// dissipators on the cavity (a) and qubit (sigma^-):
//   drho/dt = -i[H(t), rho] + gamma_c D[a] rho + gamma_qb D[s^-] rho.
//
// Production integration runs in the frame rotating at omega_c for both
// subsystems (all counter-rotating terms kept exactly; they appear as
// e^{+-2 i omega_c t} coefficients). A direct lab-frame path is retained as a
// slow oracle. The right-hand side is applied through the ladder-operator
// structure in O(D^2); a dense-matrix reference implementation is kept for
// testing and benchmarks.

#include <complex>

#include <Eigen/Dense>

#include "agsim/rabi.hpp"

namespace agsim {

struct DensityMatrix {
    Eigen::MatrixXcd rho;
    double time = 0.0; ///< units 1/omega_c

    void validate(double herm_tol = 1e-10, double trace_tol = 1e-8,
                  double eig_tol = 1e-8) const;
};

/// |g> x |0> pure state.
DensityMatrix qubit_cavity_ground(int n_fock);

enum class Frame { rotating, lab };

class LindbladEvolver {
public:
    LindbladEvolver(const RabiParams& params, Frame frame = Frame::rotating);

    int dim() const { return dim_; }
    Frame frame() const { return frame_; }
    const RabiParams& params() const { return p_; }

    /// out = L(t) rho via ladder-structured updates.
    void rhs(double t, const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;
    /// Same superoperator assembled from dense matrices (reference path).
    Eigen::MatrixXcd rhs_dense(double t, const Eigen::MatrixXcd& rho) const;

    /// Classic fixed-step RK4 update in place.
    void rk4_step(Eigen::MatrixXcd& rho, double& t, double dt) const;

    double mean_photon(const Eigen::MatrixXcd& rho) const;
    double qubit_excitation(const Eigen::MatrixXcd& rho) const;
    std::complex<double> a_squared(const Eigen::MatrixXcd& rho) const;

private:
    struct Coeffs {
        double num, sz; // real diagonal terms
        std::complex<double> pa, pad, ma, mad;
    };
    Coeffs coeffs(double t) const;

    RabiParams p_;
    Frame frame_;
    int nf_;
    int dim_;
    Eigen::VectorXd sq_; // sqrt(n), n = 0..nf
    mutable Eigen::MatrixXcd k1_, k2_, k3_, k4_, tmp_;
};

struct ObservableTrace {
    std::vector<double> times; ///< units 1/omega_c
    std::vector<double> mean_photon;
    std::vector<std::complex<double>> a_squared;
    std::vector<double> qubit_excitation;
    std::vector<double> log_negativity;
};

struct EvolveOptions {
    double dt = 0.1;   ///< units 1/omega_c
    long stride = 100; ///< record every stride steps
    Frame frame = Frame::rotating;
    bool record_negativity = true;
};

struct EvolveResult {
    ObservableTrace trace;
    DensityMatrix final_state;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

/// Integrates to t_final (units 1/omega_c), recording observables every
/// stride steps. Throws accuracy_error when trace drift exceeds 1e-6 or the
/// state develops negativity beyond tolerance.
EvolveResult lindblad_evolve(const DensityMatrix& rho0, const RabiParams& params,
                             double t_final, const EvolveOptions& options = {});

} // namespace agsim
