#pragma once

#include <string>
#include <vector>

#include "pathlap/digraph.hpp"

namespace pathlap {

// Graph expression tree. Atoms: I, T, C(n), D(m), K(n), S(n), file:PATH.
// Combinators: box(X,Y), join(X,Y), pow(X,n), jpow(X,n).
struct GraphExpr {
  enum class Kind { interval, triangle, cycle, discrete, complete, sphere, file, box, join, pow, jpow };
  Kind kind = Kind::interval;
  long param = 0;
  std::string path;
  std::vector<GraphExpr> children;
};

// Whitespace-insensitive recursive-descent parse; throws ParseError with the
// byte offset of the problem.
GraphExpr parse_expr(const std::string& text);

Digraph eval_expr(const GraphExpr& expr);

Digraph graph_from_expression(const std::string& text);

}  // namespace pathlap
