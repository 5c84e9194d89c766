#include "agsim/rabi.hpp"

#include <cmath>

namespace agsim {

void RabiParams::validate() const {
    if (!(omega_c_si > 0.0)) throw domain_error("omega_c must be > 0");
    if (!(qubit_gap_ratio > 0.0)) throw domain_error("qubit gap must be > 0");
    if (!(omega_m_ratio > 0.0)) throw domain_error("omega_m must be > 0");
    if (gamma_c_ratio < 0.0 || gamma_qb_ratio < 0.0)
        throw domain_error("decay rates must be >= 0");
    if (n_fock < 4) throw domain_error("n_fock must be >= 4");
}

std::vector<std::string> RabiParams::warnings() const {
    std::vector<std::string> out;
    const double detuning = std::abs(qubit_gap_ratio - 1.0);
    const double gamma = std::max(gamma_c_ratio, gamma_qb_ratio);
    if (gamma > 0.0 && detuning < 10.0 * gamma)
        out.push_back("qubit-cavity detuning within 10 linewidths: "
                      "photon pairs may appear directly in the cavity");
    return out;
}

namespace ops {

Eigen::MatrixXcd annihilation(int n_fock) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Eigen::MatrixXcd number(int n_fock) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_fock, n_fock);
    for (int n = 0; n < n_fock; ++n) m(n, n) = n;
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& qubit, const Eigen::MatrixXcd& cavity) {
    const int nq = static_cast<int>(qubit.rows());
    const int nc = static_cast<int>(cavity.rows());
    Eigen::MatrixXcd out(nq * nc, nq * nc);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nq; ++j) out.block(i * nc, j * nc, nc, nc) = qubit(i, j) * cavity;
    return out;
}

Eigen::MatrixXcd sigma_minus(int n_fock) {
    Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(2, 2);
    sm(0, 1) = 1.0;
    return kron(sm, Eigen::MatrixXcd::Identity(n_fock, n_fock));
}

Eigen::MatrixXcd sigma_z(int n_fock) {
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(2, 2);
    sz(0, 0) = -1.0;
    sz(1, 1) = 1.0;
    return kron(sz, Eigen::MatrixXcd::Identity(n_fock, n_fock));
}

Eigen::MatrixXcd joint_annihilation(int n_fock) {
    return kron(Eigen::MatrixXcd::Identity(2, 2), annihilation(n_fock));
}

} // namespace ops

Eigen::MatrixXcd rabi_hamiltonian(double t, const RabiParams& p) {
    p.validate();
    const int nf = p.n_fock;
    const std::complex<double> big_g =
        p.g_ratio + p.gm_ratio * std::cos(p.omega_m_ratio * t);
    const std::complex<double> i{0.0, 1.0};

    Eigen::MatrixXcd a = ops::annihilation(nf);
    Eigen::MatrixXcd x = a - a.adjoint();
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(2, 2);
    sp(1, 0) = 1.0;
    Eigen::MatrixXcd sm = sp.adjoint();

    Eigen::MatrixXcd h =
        ops::kron(Eigen::MatrixXcd::Identity(2, 2), ops::number(nf)) +
        0.5 * p.qubit_gap_ratio * ops::sigma_z(nf) -
        i * big_g * ops::kron(sp, x) - i * std::conj(big_g) * ops::kron(sm, x);
    return constants::hbar * p.omega_c_si * h;
}

} // namespace agsim
