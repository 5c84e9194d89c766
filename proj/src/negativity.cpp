#include "agsim/negativity.hpp"

#include <cmath>

namespace agsim {

Eigen::MatrixXcd partial_transpose_qubit(const Eigen::MatrixXcd& rho, int n_fock) {
    if (rho.rows() != 2 * n_fock || rho.cols() != 2 * n_fock)
        throw domain_error("density matrix dimension does not match 2 * n_fock");
    Eigen::MatrixXcd pt = rho;
    // (s,s') qubit blocks swap without transposing the cavity part.
    pt.block(0, n_fock, n_fock, n_fock) = rho.block(n_fock, 0, n_fock, n_fock);
    pt.block(n_fock, 0, n_fock, n_fock) = rho.block(0, n_fock, n_fock, n_fock);
    return pt;
}

double log_negativity(const Eigen::MatrixXcd& rho, int n_fock) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-8) throw domain_error("log_negativity requires a Hermitian state");
    Eigen::MatrixXcd pt = partial_transpose_qubit(rho, n_fock);
    pt = 0.5 * (pt + pt.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    const double en = std::log2(trace_norm);
    if (en < -1e-10) throw accuracy_error("log negativity below tolerance: invalid state");
    return std::max(0.0, en);
}

} // namespace agsim
