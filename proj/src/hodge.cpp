#include "pathlap/hodge.hpp"

#include <stdexcept>

#include "pathlap/exact.hpp"

namespace pathlap {

Weight Weight::canonical() { return Weight(Kind::canonical); }

Weight Weight::normalized() { return Weight(Kind::normalized); }

Weight::Weight(std::vector<Rational> values) : kind_(Kind::explicit_list), values_(std::move(values)) {
  for (const Rational& a : values_) {
    if (a <= 0) throw std::invalid_argument("weights must be positive");
  }
}

Rational Weight::at(int p) const {
  if (p < 0) return 1;
  switch (kind_) {
    case Kind::canonical:
      return 1;
    case Kind::normalized:
      return Rational(factorial(p));
    case Kind::explicit_list:
      if (p >= static_cast<int>(values_.size())) {
        throw std::out_of_range("weight sequence has no entry for degree " + std::to_string(p));
      }
      return values_[p];
  }
  throw std::logic_error("unreachable");
}

RatMatrix gram_matrix(const OmegaBasis& basis, const Weight& w) {
  const int d = basis.dim();
  RatMatrix g = RatMatrix::Zero(d, d);
  std::vector<std::pair<int, const Rational*>> row;
  for (Eigen::Index r = 0; r < basis.basis.rows(); ++r) {
    row.clear();
    for (int j = 0; j < d; ++j) {
      if (basis.basis(r, j) != 0) row.emplace_back(j, &basis.basis(r, j));
    }
    for (const auto& [i, vi] : row) {
      for (const auto& [j, vj] : row) {
        if (j < i) continue;
        g(i, j) += (*vi) * (*vj);
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) g(i, j) = g(j, i);
  }
  const Rational scale = Rational(1) / w.at(basis.degree);
  if (scale != 1) g *= scale;
  return g;
}

namespace {

// Gram of degree q, with degree -1 meaning the scalars of the augmented
// complex (a single basis vector of norm 1).
RatMatrix gram_of(const ComplexSnapshot& snap, int q, const Weight& w) {
  if (q == -1 && snap.augmented) {
    RatMatrix g(1, 1);
    g(0, 0) = 1;
    return g;
  }
  if (q < 0 || q > snap.max_degree || snap.omega[q].dim() == 0) return RatMatrix::Zero(0, 0);
  return gram_matrix(snap.omega[q], w);
}

}  // namespace

HodgeLevel assemble_level(const ComplexSnapshot& snapshot, int p, const Weight& w) {
  if (p < -1) throw std::invalid_argument("assemble_level needs p >= -1");
  if (p == -1 && !snapshot.augmented) {
    throw std::invalid_argument("degree -1 needs an augmented snapshot");
  }
  HodgeLevel level;
  level.degree = p;
  level.dim = (p <= snapshot.max_degree) ? snapshot.dim(p) : 0;
  if (level.dim > 0 && p + 1 > snapshot.max_degree) {
    throw std::out_of_range("snapshot too shallow for degree " + std::to_string(p));
  }

  level.g_here = gram_of(snapshot, p, w);
  level.g_prev = gram_of(snapshot, p - 1, w);
  level.g_next = (p + 1 <= snapshot.max_degree) ? gram_of(snapshot, p + 1, w) : RatMatrix::Zero(0, 0);

  if (p == -1) {
    level.b_here = RatMatrix::Zero(0, 1);
    level.b_next = snapshot.b[0];
  } else {
    const int prev_dim = (p - 1 <= snapshot.max_degree) ? snapshot.dim(p - 1) : 0;
    level.b_here = (p <= snapshot.max_degree) ? snapshot.b[p] : RatMatrix::Zero(prev_dim, 0);
    level.b_next = (p + 1 <= snapshot.max_degree) ? snapshot.b[p + 1]
                                                  : RatMatrix::Zero(level.dim, 0);
  }
  return level;
}

const RatMatrix& HodgeLevel::l_matrix() const {
  if (!l_) {
    if (g_prev.rows() == 0) {
      l_ = RatMatrix::Zero(dim, dim);
    } else {
      RatMatrix rhs = rat_mul(rat_mul(b_here.transpose(), g_prev), b_here);
      l_ = solve_exact(g_here, rhs);
    }
  }
  return *l_;
}

const RatMatrix& HodgeLevel::k_matrix() const {
  if (!k_) {
    if (g_next.rows() == 0) {
      k_ = RatMatrix::Zero(dim, dim);
    } else {
      RatMatrix rhs = rat_mul(b_next.transpose(), g_here);
      k_ = rat_mul(b_next, solve_exact(g_next, rhs));
    }
  }
  return *k_;
}

const RatMatrix& HodgeLevel::delta_matrix() const {
  if (!delta_) delta_ = k_matrix() + l_matrix();
  return *delta_;
}

void HodgeLevel::set_operators(RatMatrix k, RatMatrix l) {
  k_ = std::move(k);
  l_ = std::move(l);
  delta_ = *k_ + *l_;
}

HodgeLevel weighted_from_canonical(const HodgeLevel& level, const Weight& w) {
  const Rational a_prev = w.at(level.degree - 1);
  const Rational a_here = w.at(level.degree);
  const Rational a_next = w.at(level.degree + 1);

  HodgeLevel out;
  out.degree = level.degree;
  out.dim = level.dim;
  out.g_prev = level.g_prev * (Rational(1) / a_prev);
  out.g_here = level.g_here * (Rational(1) / a_here);
  out.g_next = level.g_next * (Rational(1) / a_next);
  out.b_here = level.b_here;
  out.b_next = level.b_next;
  out.set_operators((a_next / a_here) * level.k_matrix(), (a_here / a_prev) * level.l_matrix());
  return out;
}

Eigen::MatrixXd to_double_matrix(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  }
  return out;
}

}  // namespace pathlap
