#include "pathlap/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace pathlap {

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);  // exact: after this step r = C(n, i+1)
  }
  return r;
}

BigInt multinomial(long n, const std::vector<long>& ks) {
  long used = 0;
  for (long k : ks) {
    if (k < 0) throw std::invalid_argument("multinomial with negative part");
    used += k;
  }
  if (used > n) throw std::invalid_argument("multinomial parts exceed n");
  BigInt r = factorial(n);
  for (long k : ks) r /= factorial(k);
  r /= factorial(n - used);
  return r;
}

BigInt int_pow(const BigInt& b, long e) {
  if (e < 0) throw std::invalid_argument("int_pow with negative exponent");
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

namespace {

// ---- mod-p full-rank certificate --------------------------------------------
//
// If the columns are independent mod p they are independent over Q: scale a
// rational dependency to primitive integers, reduce mod p, and a nontrivial
// dependency mod p appears. So "no free column mod p" is a proof that the
// kernel is trivial, and the frequent kernel-free case costs only machine
// arithmetic. If the mod-p pass does see a free column the test is
// inconclusive and the caller falls through to exact arithmetic.

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::uint64_t to_mod(const Rational& q) {
  const BigInt p(kPrime);
  BigInt nm = boost::multiprecision::numerator(q) % p;
  if (nm < 0) nm += p;
  BigInt dm = boost::multiprecision::denominator(q) % p;
  std::uint64_t n = nm.convert_to<std::uint64_t>();
  std::uint64_t d = dm.convert_to<std::uint64_t>();
  if (d == 0) throw std::logic_error("denominator divisible by kernel modulus");
  return mulmod(n, invmod(d));
}

bool full_column_rank_mod_p(const std::vector<SparseCol>& cols) {
  struct ModBasis {
    int pivot_row;
    std::uint64_t pivot_val;
    std::vector<std::pair<int, std::uint64_t>> entries;
  };
  std::vector<ModBasis> basis;
  std::unordered_map<int, int> row_to_basis;

  for (const SparseCol& col : cols) {
    std::map<int, std::uint64_t> v;
    for (const auto& [r, q] : col) {
      std::uint64_t m = to_mod(q);
      if (m) v.emplace(r, m);
    }
    std::set<int> pending;
    for (const auto& [r, x] : v) {
      auto it = row_to_basis.find(r);
      if (it != row_to_basis.end()) pending.insert(it->second);
    }
    // Eliminate in increasing basis order. A basis column never touches the
    // pivot rows of earlier basis columns, so one monotone pass clears every
    // pivot row from v.
    while (!pending.empty()) {
      int j = *pending.begin();
      pending.erase(pending.begin());
      const ModBasis& b = basis[j];
      auto vp = v.find(b.pivot_row);
      if (vp == v.end()) continue;
      std::uint64_t alpha = mulmod(vp->second, invmod(b.pivot_val));
      for (const auto& [r, x] : b.entries) {
        std::uint64_t sub = mulmod(alpha, x);
        auto it = v.find(r);
        std::uint64_t cur = (it == v.end()) ? 0 : it->second;
        std::uint64_t nv = (cur + kPrime - sub) % kPrime;
        if (nv == 0) {
          if (it != v.end()) v.erase(it);
        } else {
          v[r] = nv;
          auto rb = row_to_basis.find(r);
          if (rb != row_to_basis.end() && rb->second > j) pending.insert(rb->second);
        }
      }
    }
    if (v.empty()) return false;  // dependency mod p: inconclusive
    ModBasis nb;
    nb.pivot_row = v.begin()->first;
    nb.pivot_val = v.begin()->second;
    nb.entries.assign(v.begin(), v.end());
    row_to_basis.emplace(nb.pivot_row, static_cast<int>(basis.size()));
    basis.push_back(std::move(nb));
  }
  return true;
}

// ---- exact elimination ------------------------------------------------------

struct RatBasis {
  int pivot_row = -1;
  int orig_col = -1;
  Rational pivot_val;
  SparseCol entries;
  // The combination subtracted while reducing this column: pairs (basis
  // index, coefficient). Kept so kernel vectors of later free columns can be
  // expanded by back-substitution instead of carrying dense expression
  // vectors through the whole elimination.
  std::vector<std::pair<int, Rational>> reductions;
};

SparseCol make_primitive(std::map<int, Rational>& x) {
  BigInt lcm = 1;
  for (const auto& [r, q] : x) {
    BigInt den = boost::multiprecision::denominator(q);
    lcm = boost::multiprecision::lcm(lcm, den);
  }
  BigInt gcd = 0;
  std::map<int, BigInt> ints;
  for (const auto& [r, q] : x) {
    BigInt v = boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q));
    gcd = boost::multiprecision::gcd(gcd, v);
    ints.emplace(r, std::move(v));
  }
  if (gcd == 0) return {};
  bool flip = ints.begin()->second < 0;
  SparseCol out;
  out.reserve(ints.size());
  for (auto& [r, v] : ints) {
    BigInt w = v / gcd;
    if (flip) w = -w;
    out.emplace_back(r, Rational(w));
  }
  return out;
}

}  // namespace

SparseKernelResult sparse_kernel(const std::vector<SparseCol>& cols) {
  SparseKernelResult result;
  if (cols.empty()) return result;
  if (full_column_rank_mod_p(cols)) return result;

  std::vector<RatBasis> basis;
  std::unordered_map<int, int> row_to_basis;
  struct FreeCol {
    int orig_col;
    std::vector<std::pair<int, Rational>> reductions;
  };
  std::vector<FreeCol> free_cols;

  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    std::map<int, Rational> v(cols[c].begin(), cols[c].end());
    std::vector<std::pair<int, Rational>> reductions;
    std::set<int> pending;
    for (const auto& [r, x] : v) {
      auto it = row_to_basis.find(r);
      if (it != row_to_basis.end()) pending.insert(it->second);
    }
    while (!pending.empty()) {
      int j = *pending.begin();
      pending.erase(pending.begin());
      const RatBasis& b = basis[j];
      auto vp = v.find(b.pivot_row);
      if (vp == v.end() || vp->second == 0) {
        if (vp != v.end()) v.erase(vp);
        continue;
      }
      Rational alpha = vp->second / b.pivot_val;
      for (const auto& [r, x] : b.entries) {
        Rational& cur = v[r];
        cur -= alpha * x;
        if (cur == 0) {
          v.erase(r);
        } else {
          auto rb = row_to_basis.find(r);
          if (rb != row_to_basis.end() && rb->second > j) pending.insert(rb->second);
        }
      }
      reductions.emplace_back(j, std::move(alpha));
    }
    for (auto it = v.begin(); it != v.end();) {
      it = (it->second == 0) ? v.erase(it) : std::next(it);
    }
    if (v.empty()) {
      free_cols.push_back({c, std::move(reductions)});
    } else {
      RatBasis nb;
      nb.pivot_row = v.begin()->first;
      nb.pivot_val = v.begin()->second;
      nb.orig_col = c;
      nb.entries.assign(v.begin(), v.end());
      nb.reductions = std::move(reductions);
      row_to_basis.emplace(nb.pivot_row, static_cast<int>(basis.size()));
      basis.push_back(std::move(nb));
    }
  }

  for (const FreeCol& f : free_cols) {
    // Expand x = e_f - sum gamma_j expr(b_j) over original columns, largest
    // basis index first (reductions only ever reference earlier columns).
    std::map<int, Rational> gamma(f.reductions.begin(), f.reductions.end());
    std::map<int, Rational> out;
    out[f.orig_col] = 1;
    while (!gamma.empty()) {
      auto top = std::prev(gamma.end());
      int j = top->first;
      Rational g = top->second;
      gamma.erase(top);
      if (g == 0) continue;
      out[basis[j].orig_col] -= g;
      for (const auto& [jp, alpha] : basis[j].reductions) gamma[jp] -= g * alpha;
    }
    for (auto it = out.begin(); it != out.end();) {
      it = (it->second == 0) ? out.erase(it) : std::next(it);
    }
    SparseCol vec = make_primitive(out);
    if (vec.empty()) throw std::logic_error("kernel vector vanished during expansion");

    // Exact re-check: the combination really is in the kernel.
    std::map<int, Rational> check;
    for (const auto& [col, coef] : vec) {
      for (const auto& [r, x] : cols[col]) {
        Rational& cur = check[r];
        cur += coef * x;
        if (cur == 0) check.erase(r);
      }
    }
    if (!check.empty()) throw std::logic_error("kernel verification failed");

    result.free_columns.push_back(f.orig_col);
    result.kernel.push_back(std::move(vec));
  }
  return result;
}

int rank_exact(RatMatrix m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (m(r, col) == 0) continue;
      Rational factor = m(r, col) / m(row, col);
      for (Eigen::Index cc = col; cc < cols; ++cc) {
        if (m(row, cc) != 0) m(r, cc) -= factor * m(row, cc);
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

RatMatrix solve_exact(RatMatrix a, RatMatrix rhs) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || rhs.rows() != n) throw std::invalid_argument("solve_exact shape mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw std::invalid_argument("solve_exact: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      rhs.row(piv).swap(rhs.row(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Rational factor = a(r, col) / a(col, col);
      for (Eigen::Index cc = col; cc < n; ++cc) {
        if (a(col, cc) != 0) a(r, cc) -= factor * a(col, cc);
      }
      for (Eigen::Index cc = 0; cc < rhs.cols(); ++cc) {
        if (rhs(col, cc) != 0) rhs(r, cc) -= factor * rhs(col, cc);
      }
    }
  }
  RatMatrix x(n, rhs.cols());
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    for (Eigen::Index cc = 0; cc < rhs.cols(); ++cc) {
      Rational acc = rhs(r, cc);
      for (Eigen::Index k = r + 1; k < n; ++k) {
        if (a(r, k) != 0 && x(k, cc) != 0) acc -= a(r, k) * x(k, cc);
      }
      x(r, cc) = acc / a(r, r);
    }
  }
  return x;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("rat_mul shape mismatch");
  RatMatrix out = RatMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

bool is_zero_matrix(const RatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) return false;
    }
  }
  return true;
}

}  // namespace pathlap
