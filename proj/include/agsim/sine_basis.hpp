#pragma once

// Normal modes of the uniform lattice with clamped ends: Dirichlet sines
// s_m(n) = sqrt(2/(N+1)) sin(k_m (n+1)), k_m = m pi/(N+1), m = 1..N.
// They diagonalize both the bond Laplacian and the junction-capacitance mass
// matrix, with lambda_m = 4 sin^2(k_m/2), nu_m = 1 + 2 mu lambda_m and
// omega_m = sqrt(chi lambda_m / nu_m).

#include <Eigen/Dense>

namespace agsim::sine_basis {

inline double wavenumber(int m, int n) {
    return m * std::numbers::pi / (n + 1);
}

inline double laplace_eigenvalue(double k) {
    const double s = std::sin(0.5 * k);
    return 4.0 * s * s;
}

inline double mass_eigenvalue(double k, double mu) {
    return 1.0 + 2.0 * mu * laplace_eigenvalue(k);
}

inline double mode_frequency(double k, double chi, double mu) {
    return std::sqrt(chi * laplace_eigenvalue(k) / mass_eigenvalue(k, mu));
}

/// omega(k) - u k on the propagating branch, used to place spectral probes.
inline double comoving_frequency(double k, double chi, double mu, double u) {
    return mode_frequency(k, chi, mu) - u * k;
}

/// Fills block[m - m0] columns with sine modes m = m0..m0+cols-1 (1-based m).
void fill_block(Eigen::MatrixXd& block, int n, int m0, int cols);

/// C = S^T X for complex X (N x cols): sine-transform analysis.
Eigen::MatrixXcd analyze(const Eigen::MatrixXcd& x);
Eigen::MatrixXd analyze(const Eigen::MatrixXd& x);

/// X = S C: synthesis.
Eigen::MatrixXcd synthesize(const Eigen::MatrixXcd& c);

} // namespace agsim::sine_basis
