#include "pathlap/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathlap/base.hpp"

namespace pathlap {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = p + 1; q < a.cols(); ++q) sum += a(p, q) * a(p, q);
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return {};

  const double frobenius = a.norm();
  const double tol = kJacobiTol * frobenius;
  int sweep = 0;
  while (frobenius > 0.0 && off_diagonal_norm(a) > tol) {
    if (++sweep > 60) throw std::runtime_error("jacobi did not converge in 60 sweeps");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
          a(p, r) = a(r, p);
          a(q, r) = a(r, q);
        }
      }
    }
  }

  std::vector<double> values(n);
  for (Eigen::Index i = 0; i < n; ++i) values[i] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace pathlap
