#pragma once

// Logarithmic negativity over the qubit/cavity split:
// E_N = log2 || rho^{T_qubit} ||_1.

#include <Eigen/Dense>

#include "agsim/errors.hpp"

namespace agsim {

/// Partial transpose over the qubit factor (basis index s * n_fock + n).
Eigen::MatrixXcd partial_transpose_qubit(const Eigen::MatrixXcd& rho, int n_fock);

/// Throws domain_error for non-Hermitian input; negative results beyond
/// -1e-10 raise accuracy_error, small negatives clip to zero.
double log_negativity(const Eigen::MatrixXcd& rho, int n_fock);

} // namespace agsim
