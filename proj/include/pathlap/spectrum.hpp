#pragma once

#include <vector>

#include "pathlap/base.hpp"
#include "pathlap/hodge.hpp"

namespace pathlap {

struct SpectrumEntry {
  double value = 0.0;
  BigInt mult = 0;
};

// Eigenvalues with multiplicities, sorted by value, values strictly
// increasing after clustering. Comparisons between multisets match two
// values when |x - y| <= eps * max(1, |x|, |y|).
struct SpectrumMultiset {
  std::vector<SpectrumEntry> entries;
  double eps = kMatchEps;

  bool empty() const { return entries.empty(); }
  BigInt total() const;
};

bool values_match(double x, double y, double eps);

// Clusters raw eigensolver output: sort, clamp [-1e-9, 0) to zero, merge
// runs within the clustering tolerance to their multiplicity-weighted mean.
// Values below -1e-9 signal a broken positive-semidefinite identity.
SpectrumMultiset spectrum_from_values(const std::vector<double>& values);

// Builds a multiset from arbitrary (value, multiplicity) pairs, merging
// eps-equal values.
SpectrumMultiset spectrum_from_entries(std::vector<SpectrumEntry> entries, double eps = kMatchEps);

enum class Operator { delta, k, l };

// Floating-point spectrum of the requested operator on a Hodge level. The
// operator is conjugated by the Cholesky factor of G_p into symmetric form;
// a symmetry residual above 1e-9 throws SpectralIdentityError.
SpectrumMultiset spectrum(const HodgeLevel& level, Operator which);

SpectrumMultiset ms_union(const SpectrumMultiset& a, const SpectrumMultiset& b);
// Throws SpectralIdentityError when a value of b is missing from a or has
// insufficient multiplicity.
SpectrumMultiset ms_subtract(const SpectrumMultiset& a, const SpectrumMultiset& b);
// c = 0 collapses everything to a single zero entry.
SpectrumMultiset ms_scale(double c, const SpectrumMultiset& a);
// Minkowski sum weighted by multiplicities; empty if either operand is empty.
SpectrumMultiset ms_add(const SpectrumMultiset& a, const SpectrumMultiset& b);
// Entries with value above the zero threshold.
SpectrumMultiset ms_positive(const SpectrumMultiset& a);

struct CompareReport {
  bool equal = true;
  double max_dev = 0.0;
  int mult_mismatches = 0;
  BigInt left_total = 0;
  BigInt right_total = 0;
};

// Groups the two entry lists by eps-proximity and compares group
// multiplicities; max_dev is the largest value deviation inside a matched
// group.
CompareReport ms_compare(const SpectrumMultiset& a, const SpectrumMultiset& b);
bool ms_equal(const SpectrumMultiset& a, const SpectrumMultiset& b);

struct DecomposeReport {
  bool ok = true;
  double max_dev = 0.0;
  // delta vs K+L, K_p vs L_{p+1}, delta vs L_p+L_{p+1}
  CompareReport split, shift, chain;
};

// Checks the positive-spectrum decomposition identities at degree p.
DecomposeReport decompose_check(const ComplexSnapshot& snapshot, int p, const Weight& w);

// Positive L-spectrum at degree p from the positive delta spectra of degrees
// 0..p-1 via the alternating identity, evaluated as the stable recursion
// l_{q+1} = m_q \ l_q.
SpectrumMultiset l_spectra_from_delta(const std::vector<SpectrumMultiset>& delta_specs);

// Recovers the canonical spectra of Delta_0..Delta_p from spectra taken at
// the weight w, reattaching zeros with the supplied homology dimensions.
std::vector<SpectrumMultiset> canonical_specs_from_weighted(
    const std::vector<SpectrumMultiset>& weighted_specs, const Weight& w,
    const std::vector<int>& homology);

}  // namespace pathlap
