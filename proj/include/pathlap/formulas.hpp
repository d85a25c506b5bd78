#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/spectrum.hpp"

namespace pathlap {

struct ClosedFormEntry {
  Rational value;
  BigInt mult;
};

// Exact spectrum produced by a closed-form generator: strictly increasing
// rational values, positive big-integer multiplicities, and a provenance tag
// recording the generator and its parameters.
struct ClosedFormSpectrum {
  std::vector<ClosedFormEntry> entries;
  std::string provenance;

  BigInt total() const;
  SpectrumMultiset to_multiset(double eps = kMatchEps) const;
};

// spec Delta_p of the directed n-cube. Requires 0 <= p <= n.
ClosedFormSpectrum cube_spectrum(long n, long p);

// spec Delta_p of the n-torus (n-th box power of the cyclic triangle).
// Requires 0 <= p <= n.
ClosedFormSpectrum torus_spectrum(long n, long p);

// spec of the augmented Laplacian in degree r-1 on the n-fold join power of
// the discrete digraph with m vertices; equals the plain Delta_{r-1}
// spectrum when r >= 2. Empty when n < r.
ClosedFormSpectrum join_power_spectrum(long m, long n, long r);

enum class PowerMethod { unicyclic, tree, convolution };

struct PowerSpectrumResult {
  PowerMethod method = PowerMethod::convolution;
  SpectrumMultiset spectrum;
  std::string provenance;
};

// spec Delta_r at the normalized weight on the n-th box power of g, without
// building the power. Connected motif-free digraphs with |E| in
// {|V|, |V|-1} take the closed combinatorial form built from spec Delta_0(g);
// everything else falls back to n-1 spectral convolutions.
PowerSpectrumResult power_spectrum_normalized(const Digraph& g, int n, int r,
                                              std::size_t max_paths = kDefaultMaxPaths);

// Canonical spec Delta_p of the n-th box power of g, recovered from the
// normalized-weight spectra and Kunneth homology, never building the power.
SpectrumMultiset power_spectrum_canonical(const Digraph& g, int n, int p,
                                          std::size_t max_paths = kDefaultMaxPaths);

// Augmented spectrum of degree r on the join X * Y by convolution of the
// augmented spectra of the factors over p + q = r - 1, p, q >= -1.
SpectrumMultiset generic_join_spectrum(const Digraph& x, const Digraph& y, int r,
                                       std::size_t max_paths = kDefaultMaxPaths);

struct BoundReport {
  long bound = 0;
  long degree_term = 0;  // twice the maximum undirected degree
  long arrow_term = 0;   // max over arrows of 3*triangle_degree + 2*square_degree
  bool corollary_applies = false;
  long corollary_bound = 0;
};

// Upper bound for the largest eigenvalue of Delta_1. Requires a digraph with
// no double arrows and no multisquares; otherwise throws HypothesisError.
BoundReport lambda1_bound(const Digraph& g);

// True iff the Delta_p spectra of the two digraphs agree for all
// 0 <= p <= max_p at the canonical weight.
bool is_hodge_isospectral(const Digraph& a, const Digraph& b, int max_p,
                          std::size_t max_paths = kDefaultMaxPaths);

// Reproducible corpus: digraphs on the given vertex count with arrow
// probability 1/4 drawn from mt19937(seed), in fixed (tail, head) order.
// With admissible_only, candidates containing a double arrow or multisquare
// are rejected.
std::vector<Digraph> seeded_random_digraphs(int count, int vertices, std::uint32_t seed,
                                            bool admissible_only);

}  // namespace pathlap
