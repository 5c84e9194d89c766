#pragma once

// Driven Rabi model of the qubit photodetector coupled to one cavity mode,
// with the Rabi coupling modulated at the mechanical drive frequency:
//   H = hbar w_c a^dag a + (dE/2) s_z - i hbar G(t) s^+ (a - a^dag)
//       - i hbar G*(t) s^- (a - a^dag),  G(t) = g + g_m cos(w_m t).
// Counter-rotating terms are kept. Internally hbar = 1 and frequencies are in
// units of w_c; omega_c_si carries the SI scale.
//
// Basis: qubit {|g>,|e>} (s_z = diag(-1,+1)) tensor Fock {|0>..|N-1>},
// index = s * n_fock + n.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "agsim/constants.hpp"
#include "agsim/errors.hpp"

namespace agsim {

struct RabiParams {
    double omega_c_si = 0.0;      ///< cavity frequency [rad/s], SI scale anchor
    double qubit_gap_ratio = 0.0; ///< (Delta E / hbar) / omega_c
    std::complex<double> g_ratio{0.0, 0.0};  ///< g / omega_c
    std::complex<double> gm_ratio{0.0, 0.0}; ///< g_m / omega_c
    double omega_m_ratio = 0.0;   ///< omega_m / omega_c
    double gamma_c_ratio = 0.0;   ///< cavity decay / omega_c
    double gamma_qb_ratio = 0.0;  ///< qubit decay / omega_c
    int n_fock = 8;

    void validate() const;
    std::vector<std::string> warnings() const;
    double drive_period() const { return 2.0 * constants::pi / omega_m_ratio; }
};

/// Dimension of the joint Hilbert space, 2 * n_fock.
inline int hilbert_dim(const RabiParams& p) { return 2 * p.n_fock; }

/// Lab-frame Hamiltonian at time t (t in 1/omega_c) in Joules.
Eigen::MatrixXcd rabi_hamiltonian(double t, const RabiParams& p);

namespace ops {
Eigen::MatrixXcd annihilation(int n_fock);
Eigen::MatrixXcd number(int n_fock);
/// sigma^- tensor identity on the joint space.
Eigen::MatrixXcd sigma_minus(int n_fock);
Eigen::MatrixXcd sigma_z(int n_fock);
/// O_qubit tensor O_cavity.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& qubit, const Eigen::MatrixXcd& cavity);
/// a acting on the joint space.
Eigen::MatrixXcd joint_annihilation(int n_fock);
} // namespace ops

} // namespace agsim
