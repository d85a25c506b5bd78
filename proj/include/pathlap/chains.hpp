#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/exact.hpp"

namespace pathlap {

// Vertex sequence of length p+1 for a p-path; the empty sequence is the unit
// of the augmented complex (degree -1). Regular means no two equal
// consecutive vertices.
using ElemPath = std::vector<int>;

bool is_regular(const ElemPath& p);

// Formal rational combination of regular elementary paths of one degree.
// Coefficients in the map are always nonzero; the zero chain has no terms.
struct Chain {
  int degree = -1;
  std::map<ElemPath, Rational> terms;

  static Chain zero(int degree) { return Chain{degree, {}}; }
  static Chain unit();  // degree -1, coefficient 1
  static Chain elem(ElemPath path, Rational coeff = 1);

  bool is_zero() const { return terms.empty(); }
  Chain& add_term(const ElemPath& path, const Rational& coeff);
  friend bool operator==(const Chain&, const Chain&) = default;
};

Chain operator+(const Chain& a, const Chain& b);
Chain operator-(const Chain& a, const Chain& b);
Chain operator*(const Rational& c, const Chain& a);

// Alternating face sum with non-regular faces dropped. Degree 0 terms map to
// the unit when augmented and to zero otherwise. Requires degree >= 0.
Chain boundary(const Chain& c, bool augmented = false);

// All allowed elementary p-paths in lexicographic order; p = 0 lists the
// vertices. Throws GuardrailError past max_paths.
std::vector<ElemPath> allowed_paths(const Digraph& g, int p,
                                    std::size_t max_paths = kDefaultMaxPaths);

// Coordinate system for Omega_p: the allowed p-paths, plus an exact integer
// matrix whose columns form the reduced column-echelon kernel basis (each
// column is the unique basis vector carried by its free coordinate).
struct OmegaBasis {
  int degree = 0;
  std::vector<ElemPath> allowed;  // lexicographic
  RatMatrix basis;                // |allowed| x dim, primitive integer columns
  // Row of the echelon coordinate of each column: basis(free_rows[i], i) is
  // the column's only nonzero among all free rows.
  std::vector<int> free_rows;

  int dim() const { return static_cast<int>(basis.cols()); }
  Chain column_chain(int i) const;
};

OmegaBasis omega_basis(const Digraph& g, int p, std::size_t max_paths = kDefaultMaxPaths);

// Omega bases and boundary matrices for degrees 0..max_degree. Once some
// degree has dim 0, all higher degrees are taken to be 0 without enumeration
// (a vanishing Omega_q forces every later Omega_p to vanish).
struct ComplexSnapshot {
  Digraph graph;
  bool augmented = false;
  int max_degree = 0;
  std::vector<OmegaBasis> omega;  // index p = 0..max_degree
  std::vector<RatMatrix> b;       // b[p] = B_p: dim_{p-1} x dim_p; B_0 is all ones (augmented) or 0 x dim

  int dim(int p) const;  // supports p = -1 (1 when augmented, else 0)
};

ComplexSnapshot build_snapshot(const Digraph& g, int max_degree, bool augmented = false,
                               std::size_t max_paths = kDefaultMaxPaths);

// dim H_p = dim ker B_p - rank B_{p+1} for p = 0..max_p, exact ranks.
std::vector<int> homology_dims(const Digraph& g, int max_p,
                               std::size_t max_paths = kDefaultMaxPaths);

// Alternating sum of dim Omega_p. Requires the Omega sequence to terminate;
// throws GuardrailError with the degree reached when it does not.
int euler_characteristic(const Digraph& g, std::size_t max_paths = kDefaultMaxPaths,
                         int max_degree = kMaxOmegaDegree);

// Staircase product: bilinear extension of the signed sum over all
// interleavings of a p-path on x with a q-path on y, living on
// cartesian_product(x, y). Zero chains of any degree pass through; nonzero
// factors need degree >= 0.
Chain cross_product(const Chain& u, const Chain& v, const Digraph& x, const Digraph& y);

// Concatenation product on join(x, y): degree p + q + 1, unit acts as the
// embedding of the other factor.
Chain join_product(const Chain& u, const Chain& v, const Digraph& x, const Digraph& y);

// One line per basis column: terms "coef*path" with dash-joined vertex labels,
// e.g. "1*0-1-3 -1*0-2-3".
std::vector<std::string> dump_basis(const OmegaBasis& basis, const std::vector<std::string>& labels);

// Coordinates of the chain in the basis, or nullopt when it is not in the
// span. Exact.
std::optional<std::vector<Rational>> chain_in_basis(const Chain& c, const OmegaBasis& basis);

}  // namespace pathlap
