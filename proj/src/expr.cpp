#include "pathlap/expr.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace pathlap {

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  GraphExpr parse() {
    GraphExpr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at byte " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stol(text_.substr(start, pos_ - start));
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a graph expression");
    return text_.substr(start, pos_ - start);
  }

  GraphExpr expression() {
    std::string name = identifier();
    GraphExpr e;
    if (name == "I") {
      e.kind = GraphExpr::Kind::interval;
    } else if (name == "T") {
      e.kind = GraphExpr::Kind::triangle;
    } else if (name == "C" || name == "D" || name == "K" || name == "S") {
      e.kind = name == "C"   ? GraphExpr::Kind::cycle
               : name == "D" ? GraphExpr::Kind::discrete
               : name == "K" ? GraphExpr::Kind::complete
                             : GraphExpr::Kind::sphere;
      expect('(');
      e.param = integer();
      expect(')');
    } else if (name == "file") {
      e.kind = GraphExpr::Kind::file;
      expect(':');
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (pos_ == start) fail("expected a file path");
      e.path = text_.substr(start, pos_ - start);
    } else if (name == "box" || name == "join") {
      e.kind = name == "box" ? GraphExpr::Kind::box : GraphExpr::Kind::join;
      expect('(');
      e.children.push_back(expression());
      expect(',');
      e.children.push_back(expression());
      expect(')');
    } else if (name == "pow" || name == "jpow") {
      e.kind = name == "pow" ? GraphExpr::Kind::pow : GraphExpr::Kind::jpow;
      expect('(');
      e.children.push_back(expression());
      expect(',');
      e.param = integer();
      expect(')');
      if (e.param < 1) fail("repetition count must be >= 1");
    } else {
      pos_ -= name.size();
      fail("unknown atom '" + name + "'");
    }
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GraphExpr parse_expr(const std::string& text) { return ExprParser(text).parse(); }

Digraph eval_expr(const GraphExpr& expr) {
  switch (expr.kind) {
    case GraphExpr::Kind::interval:
      return interval();
    case GraphExpr::Kind::triangle:
      return cycle(3);
    case GraphExpr::Kind::cycle:
      return cycle(static_cast<int>(expr.param));
    case GraphExpr::Kind::discrete:
      return discrete(static_cast<int>(expr.param));
    case GraphExpr::Kind::complete:
      return complete(static_cast<int>(expr.param));
    case GraphExpr::Kind::sphere:
      return sphere(static_cast<int>(expr.param));
    case GraphExpr::Kind::file: {
      std::ifstream in(expr.path);
      if (!in) throw ParseError("cannot open digraph file '" + expr.path + "'");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      return parse_digraph(buffer.str()).graph;
    }
    case GraphExpr::Kind::box:
      return cartesian_product(eval_expr(expr.children[0]), eval_expr(expr.children[1]));
    case GraphExpr::Kind::join:
      return join(eval_expr(expr.children[0]), eval_expr(expr.children[1]));
    case GraphExpr::Kind::pow:
      return box_power(eval_expr(expr.children[0]), static_cast<int>(expr.param));
    case GraphExpr::Kind::jpow:
      return join_power(eval_expr(expr.children[0]), static_cast<int>(expr.param));
  }
  throw std::logic_error("unreachable");
}

Digraph graph_from_expression(const std::string& text) { return eval_expr(parse_expr(text)); }

}  // namespace pathlap
