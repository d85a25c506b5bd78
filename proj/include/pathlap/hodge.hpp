#pragma once

#include <optional>
#include <vector>

#include "pathlap/base.hpp"
#include "pathlap/chains.hpp"

namespace pathlap {

// A positive weight sequence a_0, a_1, ... scaling the inner product on each
// degree: elementary p-paths get squared norm 1/a_p. By convention a_{-1} = 1.
class Weight {
 public:
  static Weight canonical();   // a_p = 1
  static Weight normalized();  // a_p = p!
  explicit Weight(std::vector<Rational> values);

  Rational at(int p) const;
  bool is_canonical() const { return kind_ == Kind::canonical; }

 private:
  enum class Kind { canonical, normalized, explicit_list };
  Weight(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::vector<Rational> values_;
};

// G_p = (1/a_p) * M^T M for the basis matrix M in elementary-path
// coordinates. Symmetric positive definite.
RatMatrix gram_matrix(const OmegaBasis& basis, const Weight& w);

// One degree of the Hodge package: the Gram matrices of degrees p-1, p, p+1
// and the boundary matrices in and out of degree p, with the weight already
// folded into the Grams. The exact operator matrices are computed on demand:
//   L_p = G_p^{-1} B_p^T G_{p-1} B_p
//   K_p = B_{p+1} G_{p+1}^{-1} B_{p+1}^T G_p
// A neighbor degree of dimension 0 contributes the zero matrix.
class HodgeLevel {
 public:
  int degree = 0;
  int dim = 0;
  RatMatrix g_prev, g_here, g_next;
  RatMatrix b_here;  // B_p: degree p -> p-1
  RatMatrix b_next;  // B_{p+1}: degree p+1 -> p

  const RatMatrix& k_matrix() const;
  const RatMatrix& l_matrix() const;
  const RatMatrix& delta_matrix() const;

  void set_operators(RatMatrix k, RatMatrix l);

 private:
  mutable std::optional<RatMatrix> k_, l_, delta_;
};

// Assembles the level at degree p. With augmented = true the complex includes
// degree -1 (scalars, boundary of every vertex is the unit), so p = -1 is
// valid and L_0 becomes the all-ones ideal; the snapshot must have been built
// augmented in that case. Requires omega data through degree p+1 unless the
// complex has already died (dim 0).
HodgeLevel assemble_level(const ComplexSnapshot& snapshot, int p, const Weight& w);

// Rescales a canonically weighted level to the weight w using
// K^(a) = (a_{p+1}/a_p) K and L^(a) = (a_p/a_{p-1}) L, adjusting the Gram
// matrices to match.
HodgeLevel weighted_from_canonical(const HodgeLevel& level, const Weight& w);

Eigen::MatrixXd to_double_matrix(const RatMatrix& m);

}  // namespace pathlap
