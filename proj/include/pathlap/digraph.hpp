#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pathlap/base.hpp"

namespace pathlap {

struct Arrow {
  int tail;
  int head;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// Finite digraph without self-loops. Vertices are dense integer indices;
// labels are display-only. Arrows are kept sorted and unique.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int vertex_count, std::vector<std::string> labels, std::vector<Arrow> arrows);

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }

  bool has_arrow(int tail, int head) const;
  // Index of the arrow in arrows(), or -1.
  int arrow_index(int tail, int head) const;
  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }

  // Every arrow with v at either end counts once, so a double arrow between
  // i and j contributes 2 to both deg(i) and deg(j).
  int undirected_degree(int v) const;

  // Number of connected components of the underlying undirected graph.
  int component_count() const;

  Digraph relabeled(std::vector<std::string> labels) const;
  Digraph reversed() const;

 private:
  int vertex_count_ = 0;
  std::vector<std::string> labels_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct DigraphParse {
  Digraph graph;
  int duplicate_arrows = 0;  // dropped while deduplicating, kept as a warning count
};

// Edge-list text format: optional header "vertices: a b c ...", body lines
// "a -> b", '#' starts a comment, blank lines ignored.
DigraphParse parse_digraph(const std::string& text);

// Named families ------------------------------------------------------------

Digraph interval();                   // I: 0 -> 1
Digraph cycle(int n);                 // C(n), n >= 3; cycle(3) is the directed triangle T
Digraph discrete(int m);              // D(m): m vertices, no arrows
Digraph complete(int n);              // K(n): arrows i -> j for i < j
Digraph sphere(int n);                // S(n): (n+1)-fold join power of D(2)
Digraph cube(int n);                  // n-fold box power of the interval
Digraph torus(int n);                 // n-fold box power of the directed triangle

// Products --------------------------------------------------------------------

// Vertex set X x Y in row-major order ((x, y) -> x*|Y| + y); an arrow moves in
// exactly one coordinate. Labels are dot-joined with '.' doubled inside
// component labels.
Digraph cartesian_product(const Digraph& x, const Digraph& y);

// n-ary box power with flat labels (one escaping pass per atom label).
Digraph box_power(const Digraph& g, int n);

// Vertices of x then of y; all arrows of both plus every x -> y.
Digraph join(const Digraph& x, const Digraph& y);

Digraph join_power(const Digraph& g, int n);

// Motifs ----------------------------------------------------------------------

struct MotifReport {
  std::vector<std::pair<int, int>> double_arrows;   // (min, max) vertex pairs
  std::vector<std::array<int, 3>> triangles;        // (i, j, k): i->j->k and i->k
  // (i, j, j', k): i->j->k, i->j'->k, j < j', no arrow i->k, i != k.
  std::vector<std::array<int, 4>> squares;
  bool multisquare_found = false;
  // Pairs (a, c) with no arrow a->c admitting >= 3 middle vertices, with the
  // middle count.
  std::vector<std::array<int, 3>> multisquare_pairs;
  int max_middle_count = 0;  // over all non-arrow pairs
  std::vector<int> triangle_degree;  // per arrow, parallel to arrows()
  std::vector<int> square_degree;    // per arrow
  std::vector<int> vertex_degree;    // per vertex, undirected_degree
};

MotifReport motifs(const Digraph& g);

}  // namespace pathlap
