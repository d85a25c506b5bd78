#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "pathlap/chains.hpp"
#include "pathlap/digraph.hpp"
#include "pathlap/formulas.hpp"
#include "pathlap/hodge.hpp"
#include "pathlap/spectrum.hpp"
#include "test_support.hpp"

using namespace pathlap;
using testsupport::delta_spectrum;

namespace {

SpectrumMultiset ms(std::vector<std::pair<double, long>> pairs) {
  std::vector<SpectrumEntry> entries;
  for (auto& [v, m] : pairs) entries.push_back({v, BigInt(m)});
  return spectrum_from_entries(std::move(entries));
}

bool has_entry(const ClosedFormSpectrum& s, const Rational& value, const BigInt& mult) {
  for (const auto& e : s.entries) {
    if (e.value == value) return e.mult == mult;
  }
  return false;
}

}  // namespace

TEST_CASE("cube spectra in closed form") {
  ClosedFormSpectrum tiny = cube_spectrum(1, 1);
  REQUIRE(tiny.entries.size() == 1);
  CHECK(tiny.entries[0].value == 2);
  CHECK(tiny.entries[0].mult == 1);
  CHECK(tiny.provenance.find("cube") != std::string::npos);

  ClosedFormSpectrum c21 = cube_spectrum(2, 1);
  CHECK(ms_equal(c21.to_multiset(), ms({{2, 3}, {4, 1}})));

  ClosedFormSpectrum c31 = cube_spectrum(3, 1);
  CHECK(ms_equal(c31.to_multiset(), ms({{2, 6}, {3, 2}, {4, 3}, {6, 1}})));

  ClosedFormSpectrum top = cube_spectrum(3, 3);
  REQUIRE(top.entries.size() == 1);
  CHECK(top.entries[0].value == 2);
  CHECK(top.entries[0].mult == 1);

  for (long n = 1; n <= 5; ++n) {
    for (long p = 0; p <= n; ++p) {
      ClosedFormSpectrum s = cube_spectrum(n, p);
      // Dimension count and the extremal eigenvalues.
      CHECK(s.total() == binomial(n, p) * int_pow(2, n - p));
      if (p >= 1) {
        CHECK(s.entries.front().value == 2);
        CHECK(s.entries.front().mult == binomial(n + 1, p + 1));
        if (p == 1) {
          CHECK(s.entries.back().value == 2 * n);
          CHECK(s.entries.back().mult == 1);
        }
      } else {
        CHECK(s.entries.front().value == 0);
        CHECK(s.entries.front().mult == 1);
      }
    }
  }
}

TEST_CASE("cube closed form matches the eigensolver") {
  for (int n = 1; n <= 3; ++n) {
    ComplexSnapshot snap = build_snapshot(cube(n), n + 1);
    for (int p = 0; p <= n; ++p) {
      auto numeric = spectrum(assemble_level(snap, p, Weight::canonical()), Operator::delta);
      CompareReport rep = ms_compare(cube_spectrum(n, p).to_multiset(), numeric);
      CHECK(rep.equal);
      CHECK(rep.max_dev <= 1e-9);
    }
  }
}

TEST_CASE("torus spectra in closed form") {
  CHECK(ms_equal(torus_spectrum(1, 0).to_multiset(), ms({{0, 1}, {3, 2}})));
  CHECK(ms_equal(torus_spectrum(1, 1).to_multiset(), ms({{0, 1}, {3, 2}})));
  CHECK(ms_equal(torus_spectrum(2, 1).to_multiset(),
                 ms({{0, 2}, {1.5, 4}, {3, 8}, {6, 4}})));

  for (long n = 1; n <= 4; ++n) {
    for (long p = 0; p <= n; ++p) {
      ClosedFormSpectrum s = torus_spectrum(n, p);
      CHECK(s.total() == int_pow(3, n) * binomial(n, p));
      // Zero multiplicity counts the homology classes.
      if (binomial(n, p) > 0) {
        CHECK(s.entries.front().value == 0);
        CHECK(s.entries.front().mult == binomial(n, p));
      }
      if (p >= 1) {
        CHECK(s.entries.back().value == Rational(3 * n, p));
        CHECK(s.entries.back().mult == int_pow(2, n) * binomial(n - 1, p - 1));
      }
    }
  }
}

TEST_CASE("torus closed form matches the eigensolver") {
  for (int n = 1; n <= 2; ++n) {
    ComplexSnapshot snap = build_snapshot(torus(n), n + 1);
    for (int p = 0; p <= n; ++p) {
      auto numeric = spectrum(assemble_level(snap, p, Weight::canonical()), Operator::delta);
      CompareReport rep = ms_compare(torus_spectrum(n, p).to_multiset(), numeric);
      CHECK(rep.equal);
      CHECK(rep.max_dev <= 1e-9);
    }
  }
}

TEST_CASE("join power spectra in closed form") {
  // One-point factors give transitive tournaments with a single eigenvalue.
  for (long n = 2; n <= 5; ++n) {
    for (long r = 2; r <= n; ++r) {
      ClosedFormSpectrum s = join_power_spectrum(1, n, r);
      REQUIRE(s.entries.size() == 1);
      CHECK(s.entries[0].value == n);
      CHECK(s.entries[0].mult == binomial(n, r));
    }
  }

  CHECK(join_power_spectrum(2, 2, 3).entries.empty());
  ClosedFormSpectrum base = join_power_spectrum(3, 2, 0);
  REQUIRE(base.entries.size() == 1);
  CHECK(base.entries[0].value == 6);

  CHECK(ms_equal(join_power_spectrum(3, 2, 2).to_multiset(), ms({{0, 4}, {3, 4}, {6, 1}})));

  // Spheres: m = 2, eigenvalue 2(n-k) with multiplicity C(r,k) C(n,r).
  for (long n = 2; n <= 4; ++n) {
    ClosedFormSpectrum s = join_power_spectrum(2, n, 2);
    CHECK(has_entry(s, 2 * n, binomial(n, 2)));
    CHECK(has_entry(s, 2 * (n - 1), 2 * binomial(n, 2)));
    if (n > 2) {
      CHECK(has_entry(s, 2 * (n - 2), binomial(n, 2)));
    } else {
      CHECK(s.entries.front().value == 0);
      CHECK(s.entries.front().mult == 1);
    }
  }
}

TEST_CASE("join power closed form matches the eigensolver") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 2; n <= 3; ++n) {
      Digraph g = join_power(discrete(m), n);
      ComplexSnapshot snap = build_snapshot(g, n + 1, true);
      for (int r = 2; r <= n; ++r) {
        auto numeric = spectrum(assemble_level(snap, r - 1, Weight::canonical()), Operator::delta);
        CompareReport rep = ms_compare(join_power_spectrum(m, n, r).to_multiset(), numeric);
        CHECK(rep.equal);
        CHECK(rep.max_dev <= 1e-9);
      }
    }
  }
}

TEST_CASE("augmented spectrum of the discrete digraph") {
  ComplexSnapshot snap = build_snapshot(discrete(3), 1, true);
  auto spec = spectrum(assemble_level(snap, 0, Weight::canonical()), Operator::delta);
  CHECK(ms_equal(spec, ms({{0, 2}, {3, 1}})));
  auto bottom = spectrum(assemble_level(snap, -1, Weight::canonical()), Operator::delta);
  CHECK(ms_equal(bottom, ms({{3, 1}})));
}

TEST_CASE("box power spectra avoid building the power") {
  auto tol_equal = [](const SpectrumMultiset& a, const SpectrumMultiset& b) {
    CompareReport rep = ms_compare(a, b);
    return rep.equal && rep.max_dev <= 1e-6;
  };

  for (const Digraph& g : testsupport::six_examples()) {
    for (int n = 1; n <= 2; ++n) {
      Digraph power = box_power(g, n);
      ComplexSnapshot snap = build_snapshot(power, n + 1);
      for (int r = 0; r <= n; ++r) {
        PowerSpectrumResult got = power_spectrum_normalized(g, n, r);
        if (snap.dim(r) == 0) {
          CHECK(got.spectrum.empty());
          continue;
        }
        auto numeric = spectrum(assemble_level(snap, r, Weight::normalized()), Operator::delta);
        CHECK(tol_equal(got.spectrum, numeric));
      }
    }
  }

  // Method selection: trees, unicyclic digraphs, and the fallback.
  CHECK(power_spectrum_normalized(interval(), 2, 1).method == PowerMethod::tree);
  CHECK(power_spectrum_normalized(testsupport::path3(), 2, 1).method == PowerMethod::tree);
  CHECK(power_spectrum_normalized(testsupport::out_star(), 2, 1).method == PowerMethod::tree);
  CHECK(power_spectrum_normalized(cycle(3), 2, 1).method == PowerMethod::unicyclic);
  CHECK(power_spectrum_normalized(cycle(4), 2, 1).method == PowerMethod::unicyclic);
  CHECK(power_spectrum_normalized(testsupport::pendant_triangle(), 2, 1).method ==
        PowerMethod::unicyclic);
  CHECK(power_spectrum_normalized(testsupport::square_diamond(), 2, 1).method ==
        PowerMethod::convolution);
  CHECK(power_spectrum_normalized(testsupport::double_arrow_pair(), 2, 1).method ==
        PowerMethod::convolution);
  CHECK(power_spectrum_normalized(discrete(2), 2, 0).method == PowerMethod::convolution);

  // The square digraph is the 2-cube, so its powers are higher cubes and the
  // convolution fallback must agree with the tree formula for the interval.
  PowerSpectrumResult via_square = power_spectrum_normalized(testsupport::square_diamond(), 2, 1);
  PowerSpectrumResult via_interval = power_spectrum_normalized(interval(), 4, 1);
  CHECK(via_interval.method == PowerMethod::tree);
  CHECK(tol_equal(via_square.spectrum, via_interval.spectrum));
}

TEST_CASE("canonical power spectra recover the closed families") {
  for (int n = 1; n <= 3; ++n) {
    for (int p = 0; p <= n; ++p) {
      SpectrumMultiset got = power_spectrum_canonical(interval(), n, p);
      CompareReport rep = ms_compare(got, cube_spectrum(n, p).to_multiset());
      CHECK(rep.equal);
      CHECK(rep.max_dev <= 1e-6);
    }
  }
  for (int n = 1; n <= 2; ++n) {
    for (int p = 0; p <= n; ++p) {
      SpectrumMultiset got = power_spectrum_canonical(cycle(3), n, p);
      CHECK(ms_equal(got, torus_spectrum(n, p).to_multiset()));
    }
  }
  // A non-family digraph against the direct eigensolver.
  SpectrumMultiset got = power_spectrum_canonical(cycle(4), 2, 1);
  SpectrumMultiset direct = delta_spectrum(box_power(cycle(4), 2), 1, Weight::canonical());
  CHECK(ms_equal(got, direct));
}

TEST_CASE("join spectra by convolution") {
  Digraph d2 = discrete(2);
  Digraph diamond = join(d2, d2);
  ComplexSnapshot snap = build_snapshot(diamond, 3, true);
  for (int r = 0; r <= 2; ++r) {
    SpectrumMultiset got = generic_join_spectrum(d2, d2, r);
    auto direct = spectrum(assemble_level(snap, r, Weight::canonical()), Operator::delta);
    CHECK(ms_equal(got, direct));
  }

  // Cross-check against the closed join-power formula.
  SpectrumMultiset k33 = generic_join_spectrum(discrete(3), discrete(3), 1);
  CHECK(ms_equal(k33, join_power_spectrum(3, 2, 2).to_multiset()));

  // A join with a non-discrete factor.
  Digraph mixed = join(interval(), d2);
  ComplexSnapshot mixed_snap = build_snapshot(mixed, 3, true);
  for (int r = 0; r <= 2; ++r) {
    SpectrumMultiset got = generic_join_spectrum(interval(), d2, r);
    auto direct = spectrum(assemble_level(mixed_snap, r, Weight::canonical()), Operator::delta);
    CHECK(ms_equal(got, direct));
  }
}

TEST_CASE("largest eigenvalue bound") {
  BoundReport k3 = lambda1_bound(complete(3));
  CHECK(k3.degree_term == 4);
  CHECK(k3.arrow_term == 3);
  CHECK(k3.bound == 4);
  CHECK(k3.corollary_applies);
  CHECK(k3.corollary_bound == 4);

  for (int n = 2; n <= 3; ++n) {
    BoundReport rep = lambda1_bound(cube(n));
    CHECK(rep.bound == 2 * n);
    CHECK(rep.corollary_applies);
    auto spec = delta_spectrum(cube(n), 1, Weight::canonical());
    CHECK(std::abs(spec.entries.back().value - 2 * n) <= 1e-9);
  }

  BoundReport sq = lambda1_bound(testsupport::square_diamond());
  CHECK(sq.bound == 4);
  auto spec = delta_spectrum(testsupport::square_diamond(), 1, Weight::canonical());
  CHECK(std::abs(spec.entries.back().value - 4.0) <= 1e-9);

  CHECK_THROWS_AS(lambda1_bound(testsupport::double_arrow_pair()), HypothesisError);
  Digraph multi(5, {}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  CHECK_THROWS_AS(lambda1_bound(multi), HypothesisError);

  for (const Digraph& g : seeded_random_digraphs(20, 9, 0xC0FFEE, true)) {
    BoundReport rep = lambda1_bound(g);
    ComplexSnapshot snap = build_snapshot(g, 2);
    if (snap.dim(1) == 0) continue;
    auto s = spectrum(assemble_level(snap, 1, Weight::canonical()), Operator::delta);
    CHECK(s.entries.back().value <= rep.bound + 1e-9);
    if (rep.corollary_applies) {
      CHECK(rep.corollary_bound == rep.degree_term);
      CHECK(s.entries.back().value <= rep.corollary_bound + 1e-9);
    }
  }
}

TEST_CASE("hodge isospectrality comparisons") {
  Digraph c5 = cycle(5);
  CHECK(is_hodge_isospectral(c5, c5, 3));
  CHECK(is_hodge_isospectral(c5, c5.reversed(), 3));

  // Flipping one arrow of a long cycle changes the digraph but not the
  // spectra: no triangles or squares means orientation cannot matter.
  Digraph flipped5(5, {}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(is_hodge_isospectral(c5, flipped5, 3));

  Digraph c6 = cycle(6);
  Digraph flipped6(6, {}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  CHECK(is_hodge_isospectral(c6, c6.reversed(), 3));
  CHECK(is_hodge_isospectral(c6, flipped6, 3));

  CHECK_FALSE(is_hodge_isospectral(interval(), cycle(3), 2));
  CHECK_FALSE(is_hodge_isospectral(cycle(4), testsupport::square_diamond(), 2));
}
