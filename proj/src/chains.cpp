#include "pathlap/chains.hpp"

#include <algorithm>
#include <sstream>

namespace pathlap {

bool is_regular(const ElemPath& p) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i - 1] == p[i]) return false;
  }
  return true;
}

Chain Chain::unit() {
  Chain c{-1, {}};
  c.terms.emplace(ElemPath{}, Rational(1));
  return c;
}

Chain Chain::elem(ElemPath path, Rational coeff) {
  if (!is_regular(path)) throw std::invalid_argument("elementary chain on a non-regular path");
  Chain c{static_cast<int>(path.size()) - 1, {}};
  if (coeff != 0) c.terms.emplace(std::move(path), std::move(coeff));
  return c;
}

Chain& Chain::add_term(const ElemPath& path, const Rational& coeff) {
  if (static_cast<int>(path.size()) != degree + 1) {
    throw std::invalid_argument("term degree mismatch");
  }
  auto it = terms.find(path);
  if (it == terms.end()) {
    if (coeff != 0) terms.emplace(path, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

Chain operator+(const Chain& a, const Chain& b) {
  if (a.degree != b.degree) throw std::invalid_argument("chain degree mismatch");
  Chain out = a;
  for (const auto& [p, c] : b.terms) out.add_term(p, c);
  return out;
}

Chain operator-(const Chain& a, const Chain& b) {
  if (a.degree != b.degree) throw std::invalid_argument("chain degree mismatch");
  Chain out = a;
  for (const auto& [p, c] : b.terms) out.add_term(p, -c);
  return out;
}

Chain operator*(const Rational& c, const Chain& a) {
  Chain out = Chain::zero(a.degree);
  if (c == 0) return out;
  for (const auto& [p, x] : a.terms) out.terms.emplace(p, c * x);
  return out;
}

Chain boundary(const Chain& c, bool augmented) {
  if (c.degree < 0) throw std::invalid_argument("boundary needs degree >= 0");
  Chain out = Chain::zero(c.degree - 1);
  for (const auto& [path, coeff] : c.terms) {
    if (c.degree == 0) {
      if (augmented) out.add_term({}, coeff);
      continue;
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      // Dropping an interior vertex can break regularity; such faces vanish.
      if (k > 0 && k + 1 < path.size() && path[k - 1] == path[k + 1]) continue;
      ElemPath face;
      face.reserve(path.size() - 1);
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i != k) face.push_back(path[i]);
      }
      out.add_term(face, (k % 2 == 0) ? coeff : -coeff);
    }
  }
  return out;
}

namespace {

void extend_paths(const Digraph& g, ElemPath& prefix, int remaining, std::size_t max_paths,
                  std::vector<ElemPath>& out) {
  if (remaining == 0) {
    if (out.size() >= max_paths) {
      throw GuardrailError("more than " + std::to_string(max_paths) + " allowed paths of degree " +
                           std::to_string(prefix.size() - 1));
    }
    out.push_back(prefix);
    return;
  }
  for (int w : g.out_neighbors(prefix.back())) {
    prefix.push_back(w);
    extend_paths(g, prefix, remaining - 1, max_paths, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<ElemPath> allowed_paths(const Digraph& g, int p, std::size_t max_paths) {
  if (p < 0) throw std::invalid_argument("allowed_paths needs p >= 0");
  std::vector<ElemPath> out;
  ElemPath prefix;
  for (int v = 0; v < g.vertex_count(); ++v) {
    prefix.assign(1, v);
    extend_paths(g, prefix, p, max_paths, out);
  }
  return out;
}

OmegaBasis omega_basis(const Digraph& g, int p, std::size_t max_paths) {
  OmegaBasis basis;
  basis.degree = p;
  basis.allowed = allowed_paths(g, p, max_paths);
  const int cols = static_cast<int>(basis.allowed.size());

  if (p == 0) {
    basis.basis = RatMatrix::Zero(cols, cols);
    for (int i = 0; i < cols; ++i) {
      basis.basis(i, i) = 1;
      basis.free_rows.push_back(i);
    }
    return basis;
  }

  // Constraint rows: regular but non-allowed faces reachable from allowed
  // paths. Only interior vertex drops can produce them.
  std::map<ElemPath, int> row_index;
  std::vector<SparseCol> columns(cols);
  for (int c = 0; c < cols; ++c) {
    const ElemPath& path = basis.allowed[c];
    std::map<int, Rational> entries;
    for (int k = 1; k < p; ++k) {
      if (path[k - 1] == path[k + 1]) continue;            // non-regular face
      if (g.has_arrow(path[k - 1], path[k + 1])) continue;  // allowed face
      ElemPath face;
      face.reserve(path.size() - 1);
      for (int i = 0; i <= p; ++i) {
        if (i != k) face.push_back(path[i]);
      }
      auto [it, inserted] = row_index.emplace(face, static_cast<int>(row_index.size()));
      entries[it->second] += (k % 2 == 0) ? 1 : -1;
    }
    for (const auto& [r, val] : entries) {
      if (val != 0) columns[c].emplace_back(r, val);
    }
  }

  SparseKernelResult kernel = sparse_kernel(columns);
  const int dim = static_cast<int>(kernel.free_columns.size());
  basis.basis = RatMatrix::Zero(cols, dim);
  for (int i = 0; i < dim; ++i) {
    for (const auto& [r, val] : kernel.kernel[i]) basis.basis(r, i) = val;
    basis.free_rows.push_back(kernel.free_columns[i]);
  }
  return basis;
}

Chain OmegaBasis::column_chain(int i) const {
  Chain c = Chain::zero(degree);
  for (int r = 0; r < static_cast<int>(allowed.size()); ++r) {
    if (basis(r, i) != 0) c.terms.emplace(allowed[r], basis(r, i));
  }
  return c;
}

int ComplexSnapshot::dim(int p) const {
  if (p == -1) return augmented ? 1 : 0;
  if (p < -1 || p > max_degree) throw std::out_of_range("degree outside snapshot");
  return omega[p].dim();
}

namespace {

// Boundary of a basis column in the coordinates of the previous OmegaBasis.
// The echelon structure makes this a read-off: coordinate i is the value at
// the i-th free row over that column's scale. No linear solve is involved; an
// exact verification multiply guards the result.
RatVector express_in_basis(const std::map<ElemPath, Rational>& chain, const OmegaBasis& basis) {
  RatVector y = RatVector::Zero(basis.allowed.size());
  for (const auto& [path, coeff] : chain) {
    auto it = std::lower_bound(basis.allowed.begin(), basis.allowed.end(), path);
    if (it == basis.allowed.end() || *it != path) {
      throw std::logic_error("boundary term outside the allowed-path coordinate system");
    }
    y[it - basis.allowed.begin()] = coeff;
  }
  RatVector x(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    x[i] = y[basis.free_rows[i]] / basis.basis(basis.free_rows[i], i);
  }
  RatVector check = y;
  for (int i = 0; i < basis.dim(); ++i) {
    if (x[i] == 0) continue;
    for (Eigen::Index r = 0; r < basis.basis.rows(); ++r) {
      if (basis.basis(r, i) != 0) check[r] -= x[i] * basis.basis(r, i);
    }
  }
  for (Eigen::Index r = 0; r < check.size(); ++r) {
    if (check[r] != 0) throw std::logic_error("boundary not contained in the previous Omega basis");
  }
  return x;
}

}  // namespace

ComplexSnapshot build_snapshot(const Digraph& g, int max_degree, bool augmented,
                               std::size_t max_paths) {
  if (max_degree < 0) throw std::invalid_argument("snapshot needs max_degree >= 0");
  ComplexSnapshot snap;
  snap.graph = g;
  snap.augmented = augmented;
  snap.max_degree = max_degree;
  snap.omega.reserve(max_degree + 1);
  bool dead = false;
  for (int p = 0; p <= max_degree; ++p) {
    if (dead) {
      OmegaBasis empty;
      empty.degree = p;
      empty.basis = RatMatrix::Zero(0, 0);
      snap.omega.push_back(std::move(empty));
      continue;
    }
    snap.omega.push_back(omega_basis(g, p, max_paths));
    if (snap.omega.back().dim() == 0) dead = true;
  }

  snap.b.resize(max_degree + 1);
  const int d0 = snap.omega[0].dim();
  if (augmented) {
    snap.b[0] = RatMatrix::Constant(1, d0, Rational(1));
  } else {
    snap.b[0] = RatMatrix::Zero(0, d0);
  }
  for (int p = 1; p <= max_degree; ++p) {
    const OmegaBasis& cur = snap.omega[p];
    const OmegaBasis& prev = snap.omega[p - 1];
    RatMatrix bp = RatMatrix::Zero(prev.dim(), cur.dim());
    for (int j = 0; j < cur.dim(); ++j) {
      Chain db = boundary(cur.column_chain(j));
      bp.col(j) = express_in_basis(db.terms, prev);
    }
    snap.b[p] = std::move(bp);
  }
  return snap;
}

std::vector<int> homology_dims(const Digraph& g, int max_p, std::size_t max_paths) {
  if (max_p < 0) throw std::invalid_argument("homology needs max_p >= 0");
  ComplexSnapshot snap = build_snapshot(g, max_p + 1, false, max_paths);
  std::vector<int> dims;
  for (int p = 0; p <= max_p; ++p) {
    int kernel = snap.dim(p) - rank_exact(snap.b[p]);
    dims.push_back(kernel - rank_exact(snap.b[p + 1]));
  }
  return dims;
}

int euler_characteristic(const Digraph& g, std::size_t max_paths, int max_degree) {
  int chi = 0;
  for (int p = 0; p <= max_degree; ++p) {
    int dim = omega_basis(g, p, max_paths).dim();
    if (dim == 0) return chi;
    chi += (p % 2 == 0) ? dim : -dim;
  }
  throw GuardrailError("Omega dimension still positive at degree " + std::to_string(max_degree) +
                       "; Euler characteristic undetermined");
}

namespace {

void interleavings(const ElemPath& x, const ElemPath& y, std::size_t a, std::size_t b,
                   int elevation, ElemPath& z, int ny, std::vector<std::pair<ElemPath, int>>& out) {
  if (a + 1 == x.size() && b + 1 == y.size()) {
    out.emplace_back(z, elevation);
    return;
  }
  if (a + 1 < x.size()) {
    // horizontal step: elevation grows by the number of vertical steps taken
    z.push_back(x[a + 1] * ny + y[b]);
    interleavings(x, y, a + 1, b, elevation + static_cast<int>(b), z, ny, out);
    z.pop_back();
  }
  if (b + 1 < y.size()) {
    z.push_back(x[a] * ny + y[b + 1]);
    interleavings(x, y, a, b + 1, elevation, z, ny, out);
    z.pop_back();
  }
}

}  // namespace

Chain cross_product(const Chain& u, const Chain& v, const Digraph& x, const Digraph& y) {
  if (u.terms.empty() || v.terms.empty()) return Chain::zero(u.degree + v.degree);
  if (u.degree < 0 || v.degree < 0) throw std::invalid_argument("cross product needs degrees >= 0");
  const int ny = y.vertex_count();
  Chain out = Chain::zero(u.degree + v.degree);
  for (const auto& [px, cx] : u.terms) {
    for (const auto& [py, cy] : v.terms) {
      std::vector<std::pair<ElemPath, int>> stairs;
      ElemPath z{px[0] * ny + py[0]};
      interleavings(px, py, 0, 0, 0, z, ny, stairs);
      Rational c = cx * cy;
      for (const auto& [path, elevation] : stairs) {
        out.add_term(path, (elevation % 2 == 0) ? c : -c);
      }
    }
  }
  return out;
}

Chain join_product(const Chain& u, const Chain& v, const Digraph& x, const Digraph& y) {
  (void)y;
  const int nx = x.vertex_count();
  Chain out = Chain::zero(u.degree + v.degree + 1);
  for (const auto& [px, cx] : u.terms) {
    for (const auto& [py, cy] : v.terms) {
      ElemPath path = px;
      path.reserve(px.size() + py.size());
      for (int w : py) path.push_back(w + nx);
      out.add_term(path, cx * cy);
    }
  }
  return out;
}

std::vector<std::string> dump_basis(const OmegaBasis& basis, const std::vector<std::string>& labels) {
  std::vector<std::string> lines;
  for (int j = 0; j < basis.dim(); ++j) {
    std::ostringstream line;
    bool first = true;
    for (int r = 0; r < static_cast<int>(basis.allowed.size()); ++r) {
      const Rational& c = basis.basis(r, j);
      if (c == 0) continue;
      if (!first) line << ' ';
      first = false;
      line << c << '*';
      const ElemPath& path = basis.allowed[r];
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) line << '-';
        line << labels[path[i]];
      }
    }
    lines.push_back(line.str());
  }
  return lines;
}

std::optional<std::vector<Rational>> chain_in_basis(const Chain& c, const OmegaBasis& basis) {
  if (c.degree != basis.degree) return std::nullopt;
  RatVector y = RatVector::Zero(basis.allowed.size());
  for (const auto& [path, coeff] : c.terms) {
    auto it = std::lower_bound(basis.allowed.begin(), basis.allowed.end(), path);
    if (it == basis.allowed.end() || *it != path) return std::nullopt;
    y[it - basis.allowed.begin()] = coeff;
  }
  std::vector<Rational> x(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    x[i] = y[basis.free_rows[i]] / basis.basis(basis.free_rows[i], i);
  }
  RatVector check = y;
  for (int i = 0; i < basis.dim(); ++i) {
    if (x[i] == 0) continue;
    for (Eigen::Index r = 0; r < basis.basis.rows(); ++r) {
      if (basis.basis(r, i) != 0) check[r] -= x[i] * basis.basis(r, i);
    }
  }
  for (Eigen::Index r = 0; r < check.size(); ++r) {
    if (check[r] != 0) return std::nullopt;
  }
  return x;
}

}  // namespace pathlap
