#include "pathlap/digraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pathlap {

Digraph::Digraph(int vertex_count, std::vector<std::string> labels, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count), labels_(std::move(labels)), arrows_(std::move(arrows)) {
  if (vertex_count_ < 0) throw std::invalid_argument("negative vertex count");
  if (labels_.empty()) {
    labels_.reserve(vertex_count_);
    for (int i = 0; i < vertex_count_; ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != vertex_count_) {
    throw std::invalid_argument("label count does not match vertex count");
  }
  for (const Arrow& a : arrows_) {
    if (a.tail < 0 || a.tail >= vertex_count_ || a.head < 0 || a.head >= vertex_count_) {
      throw std::invalid_argument("arrow endpoint out of range");
    }
    if (a.tail == a.head) throw std::invalid_argument("self-loop");
  }
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
  out_.assign(vertex_count_, {});
  in_.assign(vertex_count_, {});
  for (const Arrow& a : arrows_) {
    out_[a.tail].push_back(a.head);
    in_[a.head].push_back(a.tail);
  }
}

bool Digraph::has_arrow(int tail, int head) const { return arrow_index(tail, head) >= 0; }

int Digraph::arrow_index(int tail, int head) const {
  Arrow probe{tail, head};
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), probe);
  if (it != arrows_.end() && *it == probe) return static_cast<int>(it - arrows_.begin());
  return -1;
}

int Digraph::undirected_degree(int v) const {
  return static_cast<int>(out_[v].size() + in_[v].size());
}

int Digraph::component_count() const {
  std::vector<int> color(vertex_count_, -1);
  int components = 0;
  for (int start = 0; start < vertex_count_; ++start) {
    if (color[start] >= 0) continue;
    ++components;
    std::vector<int> stack{start};
    color[start] = components;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : out_[v]) {
        if (color[w] < 0) {
          color[w] = components;
          stack.push_back(w);
        }
      }
      for (int w : in_[v]) {
        if (color[w] < 0) {
          color[w] = components;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

Digraph Digraph::relabeled(std::vector<std::string> labels) const {
  return Digraph(vertex_count_, std::move(labels), arrows_);
}

Digraph Digraph::reversed() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const Arrow& a : arrows_) rev.push_back({a.head, a.tail});
  return Digraph(vertex_count_, labels_, std::move(rev));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

}  // namespace

DigraphParse parse_digraph(const std::string& text) {
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  bool declared = false;
  std::vector<Arrow> arrows;
  std::map<std::pair<int, int>, bool> seen;
  int duplicates = 0;

  auto vertex_of = [&](const std::string& name, int line_no) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (declared) {
      throw ParseError("line " + std::to_string(line_no) + ": unknown vertex '" + name +
                       "' (not in vertices: header)");
    }
    int id = static_cast<int>(labels.size());
    labels.push_back(name);
    index.emplace(name, id);
    return id;
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool body_started = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!body_started && tokens[0] == "vertices:") {
      declared = true;
      body_started = true;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (index.count(tokens[i])) {
          throw ParseError("line " + std::to_string(line_no) + ": duplicate vertex '" + tokens[i] + "'");
        }
        index.emplace(tokens[i], static_cast<int>(labels.size()));
        labels.push_back(tokens[i]);
      }
      continue;
    }
    body_started = true;
    if (tokens.size() != 3 || tokens[1] != "->") {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'a -> b', got '" + raw + "'");
    }
    int tail = vertex_of(tokens[0], line_no);
    int head = vertex_of(tokens[2], line_no);
    if (tail == head) {
      throw ParseError("line " + std::to_string(line_no) + ": self-loop at '" + tokens[0] + "'");
    }
    if (seen.emplace(std::make_pair(tail, head), true).second) {
      arrows.push_back({tail, head});
    } else {
      ++duplicates;
    }
  }
  DigraphParse out;
  const int vertex_count = static_cast<int>(labels.size());
  out.graph = Digraph(vertex_count, std::move(labels), std::move(arrows));
  out.duplicate_arrows = duplicates;
  return out;
}

Digraph interval() { return Digraph(2, {}, {{0, 1}}); }

Digraph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i) arrows.push_back({i, (i + 1) % n});
  return Digraph(n, {}, std::move(arrows));
}

Digraph discrete(int m) {
  if (m < 1) throw std::invalid_argument("discrete needs at least 1 vertex");
  return Digraph(m, {}, {});
}

Digraph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete needs at least 1 vertex");
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) arrows.push_back({i, j});
  }
  return Digraph(n, {}, std::move(arrows));
}

Digraph sphere(int n) {
  if (n < 0) throw std::invalid_argument("sphere needs dimension >= 0");
  Digraph g = join_power(discrete(2), n + 1);
  std::vector<std::string> labels;
  for (int i = 0; i < g.vertex_count(); ++i) labels.push_back(std::to_string(i));
  return g.relabeled(std::move(labels));
}

Digraph cube(int n) { return box_power(interval(), n); }

Digraph torus(int n) { return box_power(cycle(3), n); }

namespace {

std::string escape_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    out.push_back(c);
    if (c == '.') out.push_back('.');
  }
  return out;
}

Digraph multi_box(const std::vector<const Digraph*>& factors) {
  long total = 1;
  for (const Digraph* g : factors) total *= g->vertex_count();
  if (total > 1 << 24) throw GuardrailError("box product with more than 2^24 vertices");
  const int n = static_cast<int>(factors.size());
  const int vertices = static_cast<int>(total);

  std::vector<std::string> labels(vertices);
  std::vector<int> digits(n, 0);
  for (int v = 0; v < vertices; ++v) {
    std::string label;
    for (int i = 0; i < n; ++i) {
      if (i) label.push_back('.');
      label += escape_label(factors[i]->labels()[digits[i]]);
    }
    labels[v] = std::move(label);
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < factors[i]->vertex_count()) break;
      digits[i] = 0;
    }
  }

  // stride[i] = product of vertex counts of later factors (row-major).
  std::vector<long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1]->vertex_count();

  std::vector<Arrow> arrows;
  std::fill(digits.begin(), digits.end(), 0);
  for (int v = 0; v < vertices; ++v) {
    for (int i = 0; i < n; ++i) {
      for (int w : factors[i]->out_neighbors(digits[i])) {
        arrows.push_back({v, static_cast<int>(v + (w - digits[i]) * stride[i])});
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < factors[i]->vertex_count()) break;
      digits[i] = 0;
    }
  }
  return Digraph(vertices, std::move(labels), std::move(arrows));
}

}  // namespace

Digraph cartesian_product(const Digraph& x, const Digraph& y) { return multi_box({&x, &y}); }

Digraph box_power(const Digraph& g, int n) {
  if (n < 1) throw std::invalid_argument("box power needs n >= 1");
  if (n == 1) return g;
  std::vector<const Digraph*> factors(n, &g);
  return multi_box(factors);
}

Digraph join(const Digraph& x, const Digraph& y) {
  const int nx = x.vertex_count();
  std::vector<std::string> labels = x.labels();
  labels.insert(labels.end(), y.labels().begin(), y.labels().end());
  std::vector<Arrow> arrows = x.arrows();
  for (const Arrow& a : y.arrows()) arrows.push_back({a.tail + nx, a.head + nx});
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < y.vertex_count(); ++j) arrows.push_back({i, nx + j});
  }
  return Digraph(nx + y.vertex_count(), std::move(labels), std::move(arrows));
}

Digraph join_power(const Digraph& g, int n) {
  if (n < 1) throw std::invalid_argument("join power needs n >= 1");
  Digraph acc = g;
  for (int i = 1; i < n; ++i) acc = join(acc, g);
  return acc;
}

MotifReport motifs(const Digraph& g) {
  MotifReport report;
  const int n = g.vertex_count();
  report.vertex_degree.resize(n);
  for (int v = 0; v < n; ++v) report.vertex_degree[v] = g.undirected_degree(v);
  report.triangle_degree.assign(g.arrow_count(), 0);
  report.square_degree.assign(g.arrow_count(), 0);

  for (const Arrow& a : g.arrows()) {
    if (a.tail < a.head && g.has_arrow(a.head, a.tail)) {
      report.double_arrows.emplace_back(a.tail, a.head);
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j : g.out_neighbors(i)) {
      for (int k : g.out_neighbors(j)) {
        if (k != i && g.has_arrow(i, k)) {
          report.triangles.push_back({i, j, k});
          ++report.triangle_degree[g.arrow_index(i, j)];
          ++report.triangle_degree[g.arrow_index(j, k)];
          ++report.triangle_degree[g.arrow_index(i, k)];
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (k == i || g.has_arrow(i, k)) continue;
      std::vector<int> middles;
      for (int j : g.out_neighbors(i)) {
        if (g.has_arrow(j, k)) middles.push_back(j);
      }
      int count = static_cast<int>(middles.size());
      report.max_middle_count = std::max(report.max_middle_count, count);
      if (count >= 3) {
        report.multisquare_found = true;
        report.multisquare_pairs.push_back({i, k, count});
      }
      for (std::size_t a = 0; a < middles.size(); ++a) {
        for (std::size_t b = a + 1; b < middles.size(); ++b) {
          int j = middles[a], jp = middles[b];
          report.squares.push_back({i, j, jp, k});
          ++report.square_degree[g.arrow_index(i, j)];
          ++report.square_degree[g.arrow_index(j, k)];
          ++report.square_degree[g.arrow_index(i, jp)];
          ++report.square_degree[g.arrow_index(jp, k)];
        }
      }
    }
  }
  return report;
}

}  // namespace pathlap
