#include "gica/lyapunov.hpp"

#include <string>

#include "gica/error.hpp"
#include "gica/var_model.hpp"

namespace gica {

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Xi) {
  const auto n = A.rows();
  if (A.cols() != n || Xi.rows() != n || Xi.cols() != n) {
    throw InvalidArgument("solve_discrete_lyapunov: dimension mismatch");
  }
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const double radius = spectral_radius(A);
  if (!(radius < 1.0)) {
    throw UnstableModel("discrete Lyapunov equation: spectral radius " +
                        std::to_string(radius) + " >= 1");
  }

  // Column-major vec: vec(A Psi A^T) = kron(A, A) vec(Psi).
  const auto m = n * n;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double aij = A(i, j);
      if (aij == 0.0) continue;
      system.block(i * n, j * n, n, n) -= aij * A;
    }
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(Xi.data(), m);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(std::abs(lu.determinant()) > 0.0)) {
    throw SingularSystem("discrete Lyapunov equation: singular linear system");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  Eigen::MatrixXd psi = Eigen::Map<const Eigen::MatrixXd>(sol.data(), n, n);
  return 0.5 * (psi + psi.transpose());
}

}  // namespace gica
