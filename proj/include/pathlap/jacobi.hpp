#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pathlap {

// Eigenvalues of a symmetric matrix by the cyclic Jacobi method, ascending.
// Sweeps stop once the off-diagonal Frobenius norm drops below
// 1e-12 * ||A||_F. The input is destroyed.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a);

}  // namespace pathlap
