#pragma once

#include <Eigen/Dense>

namespace gica {

/// Solves Psi = A Psi A^T + Xi for Psi by vectorizing through the Kronecker
/// identity vec(A Psi A^T) = (A (x) A) vec(Psi) and factorizing the dense
/// (n^2 x n^2) system. Requires spectral radius of A below one; the result
/// is symmetrized.
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Xi);

}  // namespace gica
