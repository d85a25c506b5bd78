#include "pathlap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pathlap/jacobi.hpp"

namespace pathlap {

BigInt SpectrumMultiset::total() const {
  BigInt t = 0;
  for (const auto& e : entries) t += e.mult;
  return t;
}

bool values_match(double x, double y, double eps) {
  return std::abs(x - y) <= eps * std::max({1.0, std::abs(x), std::abs(y)});
}

SpectrumMultiset spectrum_from_values(const std::vector<double>& values) {
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  for (double& x : v) {
    if (x < 0.0) {
      if (x < -kClampTol) {
        std::ostringstream msg;
        msg << "eigenvalue " << x << " below the positive-semidefinite floor";
        throw SpectralIdentityError(msg.str());
      }
      x = 0.0;
    }
  }
  SpectrumMultiset out;
  std::size_t i = 0;
  while (i < v.size()) {
    double sum = v[i];
    long count = 1;
    double mean = sum;
    std::size_t j = i + 1;
    while (j < v.size() && values_match(mean, v[j], kClusterTol)) {
      sum += v[j];
      ++count;
      mean = sum / count;
      ++j;
    }
    if (std::abs(mean) <= kClampTol) mean = 0.0;
    out.entries.push_back({mean, BigInt(count)});
    i = j;
  }
  return out;
}

SpectrumMultiset spectrum_from_entries(std::vector<SpectrumEntry> entries, double eps) {
  std::erase_if(entries, [](const SpectrumEntry& e) { return e.mult == 0; });
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
  SpectrumMultiset out;
  out.eps = eps;
  std::size_t i = 0;
  while (i < entries.size()) {
    double wsum = to_double(entries[i].mult) * entries[i].value;
    double wtot = to_double(entries[i].mult);
    BigInt mult = entries[i].mult;
    double mean = entries[i].value;
    std::size_t j = i + 1;
    while (j < entries.size() && values_match(mean, entries[j].value, eps)) {
      wsum += to_double(entries[j].mult) * entries[j].value;
      wtot += to_double(entries[j].mult);
      mult += entries[j].mult;
      mean = wsum / wtot;
      ++j;
    }
    out.entries.push_back({mean, mult});
    i = j;
  }
  return out;
}

namespace {

Eigen::MatrixXd float_l_operator(const HodgeLevel& level, const Eigen::LLT<Eigen::MatrixXd>& llt) {
  const int n = level.dim;
  if (level.g_prev.rows() == 0) return Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd b = to_double_matrix(level.b_here);
  Eigen::MatrixXd g_prev = to_double_matrix(level.g_prev);
  return llt.solve(b.transpose() * g_prev * b);
}

Eigen::MatrixXd float_k_operator(const HodgeLevel& level, const Eigen::MatrixXd& g_here) {
  const int n = level.dim;
  if (level.g_next.rows() == 0) return Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd b = to_double_matrix(level.b_next);
  Eigen::MatrixXd g_next = to_double_matrix(level.g_next);
  Eigen::LLT<Eigen::MatrixXd> llt(g_next);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Gram matrix not positive definite");
  return b * llt.solve(b.transpose() * g_here);
}

}  // namespace

SpectrumMultiset spectrum(const HodgeLevel& level, Operator which) {
  const int n = level.dim;
  if (n == 0) return {};

  Eigen::MatrixXd g_here = to_double_matrix(level.g_here);
  Eigen::LLT<Eigen::MatrixXd> llt(g_here);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Gram matrix not positive definite");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (which == Operator::l || which == Operator::delta) m += float_l_operator(level, llt);
  if (which == Operator::k || which == Operator::delta) m += float_k_operator(level, g_here);

  // Conjugate by the Cholesky factor U of G: S = U M U^{-1} is symmetric
  // because M is self-adjoint with respect to G.
  Eigen::MatrixXd u = llt.matrixU();
  Eigen::MatrixXd x_t = llt.matrixL().solve(m.transpose());
  Eigen::MatrixXd s = u * x_t.transpose();

  const double residual = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (residual > kSymmetryTol) {
    std::ostringstream msg;
    msg << "symmetrized operator has asymmetry " << residual;
    throw SpectralIdentityError(msg.str());
  }
  s = 0.5 * (s + s.transpose()).eval();
  return spectrum_from_values(jacobi_eigenvalues(std::move(s)));
}

SpectrumMultiset ms_union(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  std::vector<SpectrumEntry> all = a.entries;
  all.insert(all.end(), b.entries.begin(), b.entries.end());
  return spectrum_from_entries(std::move(all), a.eps);
}

SpectrumMultiset ms_subtract(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  SpectrumMultiset out = a;
  for (const auto& sub : b.entries) {
    int best = -1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(out.entries.size()); ++i) {
      if (!values_match(out.entries[i].value, sub.value, out.eps)) continue;
      if (out.entries[i].mult < sub.mult) continue;
      double gap = std::abs(out.entries[i].value - sub.value);
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < 0) {
      std::ostringstream msg;
      msg << "multiset subtraction underflow at value " << sub.value << " x" << sub.mult;
      throw SpectralIdentityError(msg.str());
    }
    out.entries[best].mult -= sub.mult;
  }
  std::erase_if(out.entries, [](const SpectrumEntry& e) { return e.mult == 0; });
  return out;
}

SpectrumMultiset ms_scale(double c, const SpectrumMultiset& a) {
  if (a.empty()) return a;
  if (c == 0.0) {
    SpectrumMultiset out;
    out.eps = a.eps;
    out.entries.push_back({0.0, a.total()});
    return out;
  }
  std::vector<SpectrumEntry> scaled = a.entries;
  for (auto& e : scaled) e.value *= c;
  return spectrum_from_entries(std::move(scaled), a.eps);
}

SpectrumMultiset ms_add(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  if (a.empty() || b.empty()) return SpectrumMultiset{{}, a.eps};
  std::vector<SpectrumEntry> sums;
  sums.reserve(a.entries.size() * b.entries.size());
  for (const auto& ea : a.entries) {
    for (const auto& eb : b.entries) sums.push_back({ea.value + eb.value, ea.mult * eb.mult});
  }
  return spectrum_from_entries(std::move(sums), a.eps);
}

SpectrumMultiset ms_positive(const SpectrumMultiset& a) {
  SpectrumMultiset out;
  out.eps = a.eps;
  for (const auto& e : a.entries) {
    if (e.value > kZeroTol) out.entries.push_back(e);
  }
  return out;
}

CompareReport ms_compare(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  CompareReport report;
  report.left_total = a.total();
  report.right_total = b.total();
  const double eps = std::max(a.eps, b.eps);
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    double anchor;
    if (i >= a.entries.size()) {
      anchor = b.entries[j].value;
    } else if (j >= b.entries.size()) {
      anchor = a.entries[i].value;
    } else {
      anchor = std::min(a.entries[i].value, b.entries[j].value);
    }
    BigInt am = 0, bm = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool a_seen = false, b_seen = false;
    while (i < a.entries.size() && values_match(anchor, a.entries[i].value, eps)) {
      am += a.entries[i].mult;
      lo = std::min(lo, a.entries[i].value);
      hi = std::max(hi, a.entries[i].value);
      a_seen = true;
      ++i;
    }
    while (j < b.entries.size() && values_match(anchor, b.entries[j].value, eps)) {
      bm += b.entries[j].mult;
      lo = std::min(lo, b.entries[j].value);
      hi = std::max(hi, b.entries[j].value);
      b_seen = true;
      ++j;
    }
    if (am != bm) {
      report.equal = false;
      ++report.mult_mismatches;
    }
    if (a_seen && b_seen) report.max_dev = std::max(report.max_dev, hi - lo);
  }
  return report;
}

bool ms_equal(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  return ms_compare(a, b).equal;
}

DecomposeReport decompose_check(const ComplexSnapshot& snapshot, int p, const Weight& w) {
  HodgeLevel here = assemble_level(snapshot, p, w);
  HodgeLevel next = assemble_level(snapshot, p + 1, w);

  SpectrumMultiset delta = ms_positive(spectrum(here, Operator::delta));
  SpectrumMultiset k = ms_positive(spectrum(here, Operator::k));
  SpectrumMultiset l = ms_positive(spectrum(here, Operator::l));
  SpectrumMultiset l_next = ms_positive(spectrum(next, Operator::l));

  DecomposeReport report;
  report.split = ms_compare(delta, ms_union(k, l));
  report.shift = ms_compare(k, l_next);
  report.chain = ms_compare(delta, ms_union(l, l_next));
  report.ok = report.split.equal && report.shift.equal && report.chain.equal;
  report.max_dev = std::max({report.split.max_dev, report.shift.max_dev, report.chain.max_dev});
  return report;
}

SpectrumMultiset l_spectra_from_delta(const std::vector<SpectrumMultiset>& delta_specs) {
  if (delta_specs.empty()) throw std::invalid_argument("need at least spec of degree 0");
  SpectrumMultiset l = ms_positive(delta_specs[0]);
  for (std::size_t q = 1; q < delta_specs.size(); ++q) {
    l = ms_subtract(ms_positive(delta_specs[q]), l);
  }
  return l;
}

std::vector<SpectrumMultiset> canonical_specs_from_weighted(
    const std::vector<SpectrumMultiset>& weighted_specs, const Weight& w,
    const std::vector<int>& homology) {
  const int top = static_cast<int>(weighted_specs.size()) - 1;
  if (top < 0) throw std::invalid_argument("no weighted spectra supplied");
  if (static_cast<int>(homology.size()) <= top) {
    throw std::invalid_argument("homology dimensions missing for some degree");
  }

  // Positive weighted L-spectra via l_{q+1} = pos(Delta_q^(a)) \ l_q. The
  // shifted identity holds at any weight because K_q and L_{q+1} pick up the
  // same scale factor a_{q+1}/a_q.
  std::vector<SpectrumMultiset> l_a(top + 2);
  for (int q = 0; q <= top; ++q) {
    l_a[q + 1] = ms_subtract(ms_positive(weighted_specs[q]), l_a[q]);
  }

  std::vector<SpectrumMultiset> out(top + 1);
  for (int q = 0; q <= top; ++q) {
    double down = to_double(w.at(q - 1) / w.at(q));
    double up = to_double(w.at(q) / w.at(q + 1));
    SpectrumMultiset positive = ms_union(ms_scale(down, l_a[q]), ms_scale(up, l_a[q + 1]));
    if (homology[q] > 0) {
      SpectrumMultiset zero;
      zero.entries.push_back({0.0, BigInt(homology[q])});
      positive = ms_union(positive, zero);
    }
    out[q] = std::move(positive);
  }
  return out;
}

}  // namespace pathlap
