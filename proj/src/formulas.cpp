#include "pathlap/formulas.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace pathlap {

BigInt ClosedFormSpectrum::total() const {
  BigInt t = 0;
  for (const auto& e : entries) t += e.mult;
  return t;
}

SpectrumMultiset ClosedFormSpectrum::to_multiset(double eps) const {
  std::vector<SpectrumEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({to_double(e.value), e.mult});
  return spectrum_from_entries(std::move(out), eps);
}

namespace {

ClosedFormSpectrum from_accumulator(const std::map<Rational, BigInt>& acc, std::string provenance) {
  ClosedFormSpectrum out;
  out.provenance = std::move(provenance);
  for (const auto& [value, mult] : acc) {
    if (mult > 0) out.entries.push_back({value, mult});
  }
  return out;
}

}  // namespace

ClosedFormSpectrum cube_spectrum(long n, long p) {
  if (n < 0 || p < 0 || p > n) throw std::invalid_argument("cube spectrum needs 0 <= p <= n");
  std::map<Rational, BigInt> acc;
  if (p == 0) {
    for (long k = 0; k <= n; ++k) acc[Rational(2 * k)] += binomial(n, k);
  } else {
    for (long k = p; k <= n; ++k) {
      acc[Rational(2 * k) / p] += binomial(n, k) * binomial(k - 1, p - 1);
    }
    for (long k = p + 1; k <= n; ++k) {
      acc[Rational(2 * k) / (p + 1)] += binomial(n, k) * binomial(k - 1, p);
    }
  }
  std::ostringstream tag;
  tag << "cube(n=" << n << ",p=" << p << ")";
  return from_accumulator(acc, tag.str());
}

ClosedFormSpectrum torus_spectrum(long n, long p) {
  if (n < 0 || p < 0 || p > n) throw std::invalid_argument("torus spectrum needs 0 <= p <= n");
  std::map<Rational, BigInt> acc;
  if (p == 0) {
    for (long k = 0; k <= n; ++k) acc[Rational(3 * k)] += int_pow(2, k) * binomial(n, k);
  } else {
    for (long k = 0; k <= n; ++k) {
      acc[Rational(3 * k) / p] += int_pow(2, k) * binomial(n, k) * binomial(n - 1, p - 1);
      acc[Rational(3 * k) / (p + 1)] += int_pow(2, k) * binomial(n, k) * binomial(n - 1, p);
    }
  }
  std::ostringstream tag;
  tag << "torus(n=" << n << ",p=" << p << ")";
  return from_accumulator(acc, tag.str());
}

ClosedFormSpectrum join_power_spectrum(long m, long n, long r) {
  if (m < 1 || n < 1 || r < 0) throw std::invalid_argument("join spectrum needs m,n >= 1, r >= 0");
  std::map<Rational, BigInt> acc;
  if (n >= r) {
    for (long k = 0; k <= r; ++k) {
      acc[Rational((n - k) * m)] += int_pow(m - 1, k) * binomial(r, k) * binomial(n, r);
    }
  }
  std::ostringstream tag;
  tag << "join(m=" << m << ",n=" << n << ",r=" << r << ")";
  return from_accumulator(acc, tag.str());
}

namespace {

SpectrumMultiset delta_spectrum_of(const ComplexSnapshot& snap, int p, const Weight& w) {
  if (p > snap.max_degree - 1 && snap.dim(p) > 0) {
    throw std::logic_error("snapshot too shallow for requested spectrum");
  }
  if (p <= snap.max_degree && snap.dim(p) == 0) return {};
  return spectrum(assemble_level(snap, p, w), Operator::delta);
}

// Positive base eigenvalues (lambda_l, m_l) of Delta_0(g).
std::vector<std::pair<double, long>> base_positive_spectrum(const Digraph& g,
                                                            std::size_t max_paths) {
  ComplexSnapshot snap = build_snapshot(g, 1, false, max_paths);
  SpectrumMultiset spec0 = spectrum(assemble_level(snap, 0, Weight::canonical()), Operator::delta);
  std::vector<std::pair<double, long>> out;
  for (const auto& e : ms_positive(spec0).entries) {
    out.emplace_back(e.value, static_cast<long>(e.mult));
  }
  return out;
}

void enumerate_k_vectors(int slot, long remaining, std::vector<long>& k,
                         const std::function<void(const std::vector<long>&)>& visit) {
  if (slot == static_cast<int>(k.size())) {
    visit(k);
    return;
  }
  for (long v = 0; v <= remaining; ++v) {
    k[slot] = v;
    enumerate_k_vectors(slot + 1, remaining - v, k, visit);
  }
}

}  // namespace

PowerSpectrumResult power_spectrum_normalized(const Digraph& g, int n, int r,
                                              std::size_t max_paths) {
  if (n < 1 || r < 0) throw std::invalid_argument("power spectrum needs n >= 1, r >= 0");
  const long edges = static_cast<long>(g.arrow_count());
  const long verts = g.vertex_count();

  MotifReport motif = motifs(g);
  const bool motif_free = motif.double_arrows.empty() && motif.triangles.empty() &&
                          motif.squares.empty();
  const bool closed_shape = motif_free && g.component_count() == 1 &&
                            (edges == verts || edges == verts - 1);

  PowerSpectrumResult result;
  if (closed_shape) {
    const bool unicyclic = (edges == verts);
    result.method = unicyclic ? PowerMethod::unicyclic : PowerMethod::tree;
    auto base = base_positive_spectrum(g, max_paths);
    const int s = static_cast<int>(base.size());
    std::vector<SpectrumEntry> entries;
    std::vector<long> k(s, 0);
    enumerate_k_vectors(0, n, k, [&](const std::vector<long>& ks) {
      long ksum = 0;
      for (long v : ks) ksum += v;
      BigInt mult = multinomial(n, ks);
      double value = 0.0;
      for (int l = 0; l < s; ++l) {
        mult *= int_pow(base[l].second, ks[l]);
        value += static_cast<double>(ks[l]) * base[l].first;
      }
      mult *= unicyclic ? binomial(n, r) : binomial(ksum, r);
      if (mult > 0) entries.push_back({value, mult});
    });
    result.spectrum = spectrum_from_entries(std::move(entries));
    std::ostringstream tag;
    tag << "power(" << (unicyclic ? "unicyclic" : "tree") << ",n=" << n << ",r=" << r << ")";
    result.provenance = tag.str();
    return result;
  }

  // Convolution of normalized spectra: each box factor contributes one
  // degree q <= r per term.
  ComplexSnapshot snap = build_snapshot(g, r + 1, false, max_paths);
  const Weight w = Weight::normalized();
  std::vector<SpectrumMultiset> single(r + 1);
  for (int q = 0; q <= r; ++q) single[q] = delta_spectrum_of(snap, q, w);
  std::vector<SpectrumMultiset> acc = single;
  for (int step = 2; step <= n; ++step) {
    std::vector<SpectrumMultiset> next(r + 1);
    for (int q = 0; q <= r; ++q) {
      SpectrumMultiset sum;
      for (int i = 0; i <= q; ++i) {
        sum = ms_union(sum, ms_add(acc[i], single[q - i]));
      }
      next[q] = std::move(sum);
    }
    acc = std::move(next);
  }
  result.method = PowerMethod::convolution;
  result.spectrum = acc[r];
  std::ostringstream tag;
  tag << "power(convolution,n=" << n << ",r=" << r << ")";
  result.provenance = tag.str();
  return result;
}

SpectrumMultiset power_spectrum_canonical(const Digraph& g, int n, int p,
                                          std::size_t max_paths) {
  if (n < 1 || p < 0) throw std::invalid_argument("power spectrum needs n >= 1, p >= 0");
  std::vector<int> h1 = homology_dims(g, p, max_paths);
  std::vector<int> h = h1;
  for (int step = 2; step <= n; ++step) {
    std::vector<int> next(p + 1, 0);
    for (int q = 0; q <= p; ++q) {
      for (int i = 0; i <= q; ++i) next[q] += h[i] * h1[q - i];
    }
    h = std::move(next);
  }

  std::vector<SpectrumMultiset> weighted(p + 1);
  for (int q = 0; q <= p; ++q) {
    weighted[q] = power_spectrum_normalized(g, n, q, max_paths).spectrum;
  }
  return canonical_specs_from_weighted(weighted, Weight::normalized(), h)[p];
}

SpectrumMultiset generic_join_spectrum(const Digraph& x, const Digraph& y, int r,
                                       std::size_t max_paths) {
  if (r < -1) throw std::invalid_argument("join spectrum needs r >= -1");
  auto augmented_specs = [&](const Digraph& g) {
    ComplexSnapshot snap = build_snapshot(g, r + 1, true, max_paths);
    std::vector<SpectrumMultiset> specs(r + 2);  // index p + 1
    for (int p = -1; p <= r; ++p) {
      if (p >= 0 && snap.dim(p) == 0) continue;
      specs[p + 1] = spectrum(assemble_level(snap, p, Weight::canonical()), Operator::delta);
    }
    return specs;
  };
  std::vector<SpectrumMultiset> sx = augmented_specs(x);
  std::vector<SpectrumMultiset> sy = augmented_specs(y);

  SpectrumMultiset out;
  for (int p = -1; p <= r; ++p) {
    const int q = r - 1 - p;
    if (q < -1 || q > r) continue;
    out = ms_union(out, ms_add(sx[p + 1], sy[q + 1]));
  }
  return out;
}

BoundReport lambda1_bound(const Digraph& g) {
  MotifReport motif = motifs(g);
  if (!motif.double_arrows.empty()) {
    throw HypothesisError("bound needs a digraph without double arrows");
  }
  if (motif.multisquare_found) {
    throw HypothesisError("bound needs a digraph without multisquares");
  }

  BoundReport report;
  for (int v = 0; v < g.vertex_count(); ++v) {
    report.degree_term = std::max(report.degree_term, 2L * g.undirected_degree(v));
  }
  report.corollary_applies = true;
  for (std::size_t e = 0; e < g.arrow_count(); ++e) {
    long term = 3L * motif.triangle_degree[e] + 2L * motif.square_degree[e];
    report.arrow_term = std::max(report.arrow_term, term);
    if (motif.triangle_degree[e] > 2) report.corollary_applies = false;
  }
  report.bound = std::max(report.degree_term, report.arrow_term);
  report.corollary_bound = report.degree_term;
  return report;
}

bool is_hodge_isospectral(const Digraph& a, const Digraph& b, int max_p, std::size_t max_paths) {
  if (max_p < 0) throw std::invalid_argument("max_p must be >= 0");
  ComplexSnapshot sa = build_snapshot(a, max_p + 1, false, max_paths);
  ComplexSnapshot sb = build_snapshot(b, max_p + 1, false, max_paths);
  for (int p = 0; p <= max_p; ++p) {
    SpectrumMultiset qa = delta_spectrum_of(sa, p, Weight::canonical());
    SpectrumMultiset qb = delta_spectrum_of(sb, p, Weight::canonical());
    if (!ms_equal(qa, qb)) return false;
  }
  return true;
}

std::vector<Digraph> seeded_random_digraphs(int count, int vertices, std::uint32_t seed,
                                            bool admissible_only) {
  std::mt19937 gen(seed);
  std::vector<Digraph> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000) throw std::logic_error("random corpus rejection ran away");
    std::vector<Arrow> arrows;
    for (int i = 0; i < vertices; ++i) {
      for (int j = 0; j < vertices; ++j) {
        if (i == j) continue;
        // Draw for every slot so acceptance of earlier graphs never shifts
        // later ones; 0x40000000 out of 2^32 is exactly probability 1/4.
        if (gen() < 0x40000000u) arrows.push_back({i, j});
      }
    }
    Digraph g(vertices, {}, arrows);
    if (admissible_only) {
      MotifReport motif = motifs(g);
      if (!motif.double_arrows.empty() || motif.multisquare_found) continue;
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace pathlap
