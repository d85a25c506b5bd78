#include "pathlap/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pathlap/expr.hpp"
#include "pathlap/formulas.hpp"

namespace pathlap {

namespace {

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::size_t resolve_max_paths(std::size_t cli_value, bool cli_given) {
  if (cli_given) return cli_value;
  if (const char* env = std::getenv("PATHLAP_MAX_PATHS")) {
    try {
      std::size_t v = std::stoull(env);
      if (v == 0) throw std::invalid_argument("zero");
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("PATHLAP_MAX_PATHS is not a positive integer: ") + env);
    }
  }
  return kDefaultMaxPaths;
}

Weight parse_weight(const std::string& text) {
  if (text == "canonical") return Weight::canonical();
  if (text == "normalized") return Weight::normalized();
  std::vector<Rational> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty() || token.find_first_not_of("0123456789/") != std::string::npos) {
      throw ParseError("weight entry '" + token + "' is not a nonnegative rational");
    }
    try {
      values.emplace_back(token);
    } catch (const std::exception&) {
      throw ParseError("cannot parse weight entry '" + token + "'");
    }
  }
  if (values.empty()) throw ParseError("empty weight list");
  return Weight(values);
}

std::string human_multiset(const SpectrumMultiset& ms) {
  if (ms.empty()) return "(empty)";
  std::ostringstream out;
  bool first = true;
  for (const auto& e : ms.entries) {
    if (!first) out << ", ";
    first = false;
    out << fmt_g(e.value, 12) << " \xc3\x97" << e.mult;
  }
  return out.str();
}

std::string json_entries(const SpectrumMultiset& ms) {
  std::ostringstream out;
  out << "[";
  bool first = true;
  for (const auto& e : ms.entries) {
    if (!first) out << ",";
    first = false;
    out << "{\"value\":" << fmt_g(e.value, 17) << ",\"multiplicity\":" << e.mult << "}";
  }
  out << "]";
  return out.str();
}

void print_multiset(std::ostream& out, const SpectrumMultiset& ms, const std::string& format) {
  if (format == "human") {
    out << human_multiset(ms) << "\n";
  } else if (format == "json") {
    out << "{\"entries\":" << json_entries(ms) << ",\"total\":" << ms.total() << "}\n";
  } else {
    out << "value,multiplicity\n";
    for (const auto& e : ms.entries) out << fmt_g(e.value, 17) << "," << e.mult << "\n";
  }
}

struct VerifyRow {
  std::string family;
  long n = 0;
  long p = 0;
  std::size_t closed_entries = 0;
  std::size_t numeric_entries = 0;
  double max_dev = 0.0;
  int mult_mismatches = 0;
  bool ok = true;
};

VerifyRow compare_row(const std::string& family, long n, long p, const ClosedFormSpectrum& closed,
                      const SpectrumMultiset& numeric) {
  CompareReport rep = ms_compare(closed.to_multiset(), numeric);
  VerifyRow row;
  row.family = family;
  row.n = n;
  row.p = p;
  row.closed_entries = closed.entries.size();
  row.numeric_entries = numeric.entries.size();
  row.max_dev = rep.max_dev;
  row.mult_mismatches = rep.mult_mismatches;
  row.ok = rep.equal;
  return row;
}

void print_verify_rows(std::ostream& out, const std::vector<VerifyRow>& rows,
                       const std::string& format) {
  bool all_ok = true;
  for (const auto& r : rows) all_ok = all_ok && r.ok;
  if (format == "human") {
    for (const auto& r : rows) {
      out << r.family << " n=" << r.n << " p=" << r.p << ": closed=" << r.closed_entries
          << " numeric=" << r.numeric_entries << " max_dev=" << fmt_g(r.max_dev, 3)
          << " mismatches=" << r.mult_mismatches << (r.ok ? " OK" : " MISMATCH") << "\n";
    }
    out << (all_ok ? "all rows OK" : "mismatches found") << "\n";
  } else if (format == "json") {
    out << "{\"rows\":[";
    bool first = true;
    for (const auto& r : rows) {
      if (!first) out << ",";
      first = false;
      out << "{\"family\":\"" << r.family << "\",\"n\":" << r.n << ",\"p\":" << r.p
          << ",\"closed_entries\":" << r.closed_entries
          << ",\"numeric_entries\":" << r.numeric_entries
          << ",\"max_dev\":" << fmt_g(r.max_dev, 17)
          << ",\"mult_mismatches\":" << r.mult_mismatches << ",\"ok\":" << (r.ok ? "true" : "false")
          << "}";
    }
    out << "],\"ok\":" << (all_ok ? "true" : "false") << "}\n";
  } else {
    out << "family,n,p,closed_entries,numeric_entries,max_dev,mult_mismatches\n";
    for (const auto& r : rows) {
      out << r.family << "," << r.n << "," << r.p << "," << r.closed_entries << ","
          << r.numeric_entries << "," << fmt_g(r.max_dev, 17) << "," << r.mult_mismatches << "\n";
    }
  }
}

SpectrumMultiset numeric_delta_spectrum(const Digraph& g, int p, const Weight& w,
                                        std::size_t max_paths) {
  ComplexSnapshot snap = build_snapshot(g, p + 1, false, max_paths);
  return spectrum(assemble_level(snap, p, w), Operator::delta);
}

int run_verify(const std::string& family, long max_n, long max_p, long max_m,
               std::size_t max_paths, const std::string& format, std::ostream& out) {
  std::vector<VerifyRow> rows;
  if (family == "cube" || family == "torus") {
    for (long n = 1; n <= max_n; ++n) {
      Digraph g = family == "cube" ? cube(static_cast<int>(n)) : torus(static_cast<int>(n));
      long top = std::min(n, max_p);
      ComplexSnapshot snap = build_snapshot(g, static_cast<int>(top) + 1, false, max_paths);
      for (long p = 0; p <= top; ++p) {
        ClosedFormSpectrum closed =
            family == "cube" ? cube_spectrum(n, p) : torus_spectrum(n, p);
        SpectrumMultiset numeric =
            spectrum(assemble_level(snap, static_cast<int>(p), Weight::canonical()),
                     Operator::delta);
        rows.push_back(compare_row(family, n, p, closed, numeric));
      }
    }
  } else {
    for (long m = 1; m <= max_m; ++m) {
      for (long n = 2; n <= max_n; ++n) {
        long top_r = std::min(n, max_p + 1);
        for (long r = 2; r <= top_r; ++r) {
          Digraph g = join_power(discrete(static_cast<int>(m)), static_cast<int>(n));
          ClosedFormSpectrum closed = join_power_spectrum(m, n, r);
          SpectrumMultiset numeric = numeric_delta_spectrum(g, static_cast<int>(r) - 1,
                                                            Weight::canonical(), max_paths);
          std::ostringstream label;
          label << "join(m=" << m << ")";
          rows.push_back(compare_row(label.str(), n, r - 1, closed, numeric));
        }
      }
    }
  }
  print_verify_rows(out, rows, format);
  for (const auto& r : rows) {
    if (!r.ok) return 1;
  }
  return 0;
}

int dispatch(CLI::App& app, std::ostream& out) {
  // omega
  if (auto* cmd = app.get_subcommand("omega"); cmd->parsed()) {
    const std::string expr = cmd->get_option("expr")->as<std::string>();
    const int max_p = cmd->get_option("--max-p")->as<int>();
    const bool dump = cmd->count("--dump-basis") > 0;
    const std::string format = cmd->get_option("--format")->as<std::string>();
    const std::size_t max_paths = resolve_max_paths(
        cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);
    if (max_p < 0) throw std::invalid_argument("--max-p must be >= 0");

    Digraph g = graph_from_expression(expr);
    std::vector<OmegaBasis> bases;
    bool dead = false;
    for (int p = 0; p <= max_p; ++p) {
      if (dead) {
        OmegaBasis empty;
        empty.degree = p;
        empty.basis = RatMatrix::Zero(0, 0);
        bases.push_back(std::move(empty));
        continue;
      }
      bases.push_back(omega_basis(g, p, max_paths));
      if (bases.back().dim() == 0) dead = true;
    }

    if (format == "human") {
      for (int p = 0; p <= max_p; ++p) {
        out << "Omega_" << p << ": dim " << bases[p].dim() << "\n";
        if (dump) {
          for (const std::string& line : dump_basis(bases[p], g.labels())) {
            out << "  " << line << "\n";
          }
        }
      }
    } else if (format == "json") {
      out << "{\"dims\":[";
      for (int p = 0; p <= max_p; ++p) out << (p ? "," : "") << bases[p].dim();
      out << "]";
      if (dump) {
        out << ",\"bases\":[";
        for (int p = 0; p <= max_p; ++p) {
          out << (p ? "," : "") << "[";
          auto lines = dump_basis(bases[p], g.labels());
          for (std::size_t i = 0; i < lines.size(); ++i) {
            out << (i ? "," : "") << "\"" << lines[i] << "\"";
          }
          out << "]";
        }
        out << "]";
      }
      out << "}\n";
    } else {
      out << "p,dim\n";
      for (int p = 0; p <= max_p; ++p) out << p << "," << bases[p].dim() << "\n";
    }
    return 0;
  }

  // homology
  if (auto* cmd = app.get_subcommand("homology"); cmd->parsed()) {
    const std::string expr = cmd->get_option("expr")->as<std::string>();
    const int max_p = cmd->get_option("--max-p")->as<int>();
    const std::string format = cmd->get_option("--format")->as<std::string>();
    const std::size_t max_paths = resolve_max_paths(
        cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);
    if (max_p < 0) throw std::invalid_argument("--max-p must be >= 0");

    Digraph g = graph_from_expression(expr);
    std::vector<int> betti = homology_dims(g, max_p, max_paths);
    bool have_chi = true;
    int chi = 0;
    try {
      chi = euler_characteristic(g, max_paths);
    } catch (const GuardrailError&) {
      have_chi = false;
    }

    if (format == "human") {
      for (int p = 0; p <= max_p; ++p) out << "H_" << p << ": dim " << betti[p] << "\n";
      if (have_chi) {
        out << "chi = " << chi << "\n";
      } else {
        out << "chi: undetermined (Omega does not vanish within the degree cap)\n";
      }
    } else if (format == "json") {
      out << "{\"betti\":[";
      for (int p = 0; p <= max_p; ++p) out << (p ? "," : "") << betti[p];
      out << "],\"chi\":";
      if (have_chi) {
        out << chi;
      } else {
        out << "null";
      }
      out << "}\n";
    } else {
      out << "p,dim\n";
      for (int p = 0; p <= max_p; ++p) out << p << "," << betti[p] << "\n";
      out << "chi," << (have_chi ? std::to_string(chi) : std::string()) << "\n";
    }
    return 0;
  }

  // spectrum
  if (auto* cmd = app.get_subcommand("spectrum"); cmd->parsed()) {
    const std::string expr = cmd->get_option("expr")->as<std::string>();
    const int p = cmd->get_option("--p")->as<int>();
    const std::string weight_text = cmd->get_option("--weight")->as<std::string>();
    const bool augmented = cmd->count("--augmented") > 0;
    const std::string op_name = cmd->get_option("--op")->as<std::string>();
    const std::string format = cmd->get_option("--format")->as<std::string>();
    const std::size_t max_paths = resolve_max_paths(
        cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);
    if (p < (augmented ? -1 : 0)) throw std::invalid_argument("--p out of range");

    Digraph g = graph_from_expression(expr);
    Weight w = parse_weight(weight_text);
    Operator op = op_name == "delta" ? Operator::delta
                  : op_name == "k"   ? Operator::k
                                     : Operator::l;
    ComplexSnapshot snap = build_snapshot(g, p + 1 > 0 ? p + 1 : 0, augmented, max_paths);
    SpectrumMultiset ms = spectrum(assemble_level(snap, p, w), op);
    print_multiset(out, ms, format);
    return 0;
  }

  // closed-form
  if (auto* cmd = app.get_subcommand("closed-form"); cmd->parsed()) {
    const std::string family = cmd->get_option("family")->as<std::string>();
    const std::string format = cmd->get_option("--format")->as<std::string>();
    ClosedFormSpectrum closed;
    if (family == "cube" || family == "torus") {
      if (cmd->count("--n") == 0 || cmd->count("--p") == 0) {
        throw ParseError(family + " needs --n and --p");
      }
      long n = cmd->get_option("--n")->as<long>();
      long p = cmd->get_option("--p")->as<long>();
      closed = family == "cube" ? cube_spectrum(n, p) : torus_spectrum(n, p);
    } else {
      if (cmd->count("--m") == 0 || cmd->count("--n") == 0 || cmd->count("--r") == 0) {
        throw ParseError("join needs --m, --n and --r");
      }
      closed = join_power_spectrum(cmd->get_option("--m")->as<long>(),
                                   cmd->get_option("--n")->as<long>(),
                                   cmd->get_option("--r")->as<long>());
    }

    if (format == "human") {
      out << closed.provenance << ": ";
      if (closed.entries.empty()) {
        out << "(empty)";
      } else {
        bool first = true;
        for (const auto& e : closed.entries) {
          if (!first) out << ", ";
          first = false;
          out << e.value << " \xc3\x97" << e.mult;
        }
      }
      out << "\n";
    } else if (format == "json") {
      out << "{\"provenance\":\"" << closed.provenance << "\",\"entries\":[";
      bool first = true;
      for (const auto& e : closed.entries) {
        if (!first) out << ",";
        first = false;
        out << "{\"value\":" << fmt_g(to_double(e.value), 17) << ",\"exact\":\"" << e.value
            << "\",\"multiplicity\":" << e.mult << "}";
      }
      out << "],\"total\":" << closed.total() << "}\n";
    } else {
      out << "value,multiplicity\n";
      for (const auto& e : closed.entries) {
        out << fmt_g(to_double(e.value), 17) << "," << e.mult << "\n";
      }
    }
    return 0;
  }

  // verify
  if (auto* cmd = app.get_subcommand("verify"); cmd->parsed()) {
    const std::string family = cmd->get_option("family")->as<std::string>();
    const long max_n = cmd->get_option("--max-n")->as<long>();
    const long max_m = cmd->get_option("--max-m")->as<long>();
    const std::string format = cmd->get_option("--format")->as<std::string>();
    const std::size_t max_paths = resolve_max_paths(
        cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);
    const long max_p =
        cmd->count("--max-p") > 0 ? cmd->get_option("--max-p")->as<long>() : max_n;
    if (max_n < 1) throw std::invalid_argument("--max-n must be >= 1");
    return run_verify(family, max_n, max_p, max_m, max_paths, format, out);
  }

  // bound
  if (auto* cmd = app.get_subcommand("bound"); cmd->parsed()) {
    const std::string expr = cmd->get_option("expr")->as<std::string>();
    const bool check = cmd->count("--check") > 0;
    const std::string format = cmd->get_option("--format")->as<std::string>();
    const std::size_t max_paths = resolve_max_paths(
        cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);

    Digraph g = graph_from_expression(expr);
    BoundReport report = lambda1_bound(g);
    double lambda_max = 0.0;
    if (check) {
      SpectrumMultiset ms = numeric_delta_spectrum(g, 1, Weight::canonical(), max_paths);
      if (!ms.empty()) lambda_max = ms.entries.back().value;
    }

    if (format == "human") {
      out << "bound = " << report.bound << "\n";
      out << "degree term = " << report.degree_term << "\n";
      out << "arrow term = " << report.arrow_term << "\n";
      if (report.corollary_applies) {
        out << "corollary: applies, bound " << report.corollary_bound << "\n";
      } else {
        out << "corollary: does not apply\n";
      }
      if (check) out << "lambda_max(Delta_1) = " << fmt_g(lambda_max, 12) << "\n";
    } else if (format == "json") {
      out << "{\"bound\":" << report.bound << ",\"degree_term\":" << report.degree_term
          << ",\"arrow_term\":" << report.arrow_term << ",\"corollary_applies\":"
          << (report.corollary_applies ? "true" : "false")
          << ",\"corollary_bound\":" << report.corollary_bound;
      if (check) out << ",\"lambda_max\":" << fmt_g(lambda_max, 17);
      out << "}\n";
    } else {
      out << "key,value\n";
      out << "bound," << report.bound << "\n";
      out << "degree_term," << report.degree_term << "\n";
      out << "arrow_term," << report.arrow_term << "\n";
      out << "corollary_applies," << (report.corollary_applies ? "true" : "false") << "\n";
      out << "corollary_bound," << report.corollary_bound << "\n";
      if (check) out << "lambda_max," << fmt_g(lambda_max, 17) << "\n";
    }
    return 0;
  }

  // isospectral
  auto* cmd = app.get_subcommand("isospectral");
  const std::string expr1 = cmd->get_option("expr1")->as<std::string>();
  const std::string expr2 = cmd->get_option("expr2")->as<std::string>();
  const int max_p = cmd->get_option("--max-p")->as<int>();
  const std::string format = cmd->get_option("--format")->as<std::string>();
  const std::size_t max_paths = resolve_max_paths(
      cmd->get_option("--max-paths")->as<std::size_t>(), cmd->count("--max-paths") > 0);
  if (max_p < 0) throw std::invalid_argument("--max-p must be >= 0");

  bool same = is_hodge_isospectral(graph_from_expression(expr1), graph_from_expression(expr2),
                                   max_p, max_paths);
  if (format == "human") {
    out << "Hodge isospectral up to p=" << max_p << ": " << (same ? "yes" : "no") << "\n";
  } else if (format == "json") {
    out << "{\"isospectral\":" << (same ? "true" : "false") << ",\"max_p\":" << max_p << "}\n";
  } else {
    out << "key,value\nisospectral," << (same ? "true" : "false") << "\n";
  }
  return 0;
}

void add_common(CLI::App* cmd) {
  cmd->add_option("--format", "output format")
      ->default_str("human")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--max-paths", "allowed-path guardrail override")->default_str("200000");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hodge Laplacian spectra of the path complex of a digraph"};
  app.require_subcommand(1);

  auto* omega = app.add_subcommand("omega", "dimensions of the invariant path spaces");
  omega->add_option("expr", "graph expression")->required();
  omega->add_option("--max-p", "largest degree to report")->required();
  omega->add_flag("--dump-basis", "print the basis chains of each degree");
  add_common(omega);

  auto* homology = app.add_subcommand("homology", "path homology dimensions and Euler characteristic");
  homology->add_option("expr", "graph expression")->required();
  homology->add_option("--max-p", "largest degree to report")->required();
  add_common(homology);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of a Hodge operator");
  spectrum_cmd->add_option("expr", "graph expression")->required();
  spectrum_cmd->add_option("--p", "degree")->required();
  spectrum_cmd->add_option("--weight", "canonical, normalized, or a comma list of rationals")
      ->default_str("canonical");
  spectrum_cmd->add_flag("--augmented", "use the augmented complex (allows --p -1)");
  spectrum_cmd->add_option("--op", "operator")
      ->default_str("delta")
      ->check(CLI::IsMember({"delta", "k", "l"}));
  add_common(spectrum_cmd);

  auto* closed = app.add_subcommand("closed-form", "theorem-generated spectrum");
  closed->add_option("family", "cube, torus, or join")
      ->required()
      ->check(CLI::IsMember({"cube", "torus", "join"}));
  closed->add_option("--n", "family size parameter");
  closed->add_option("--p", "degree (cube, torus)");
  closed->add_option("--m", "part size (join)");
  closed->add_option("--r", "join degree parameter; the spectrum lives in degree r-1");
  add_common(closed);

  auto* verify = app.add_subcommand("verify", "closed form vs eigensolver over a grid");
  verify->add_option("family", "cube, torus, or join")
      ->required()
      ->check(CLI::IsMember({"cube", "torus", "join"}));
  verify->add_option("--max-n", "largest power")->required();
  verify->add_option("--max-p", "largest degree (default: follows n)");
  verify->add_option("--max-m", "largest part size (join)")->default_str("3");
  add_common(verify);

  auto* bound = app.add_subcommand("bound", "upper bound for the largest Delta_1 eigenvalue");
  bound->add_option("expr", "graph expression")->required();
  bound->add_flag("--check", "also run the eigensolver and print lambda_max");
  add_common(bound);

  auto* iso = app.add_subcommand("isospectral", "compare Hodge spectra of two digraphs");
  iso->add_option("expr1", "first graph expression")->required();
  iso->add_option("expr2", "second graph expression")->required();
  iso->add_option("--max-p", "largest degree to compare")->required();
  add_common(iso);

  std::vector<const char*> argv;
  argv.push_back("pathlap");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return dispatch(app, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardrailError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const SpectralIdentityError& e) {
    err << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pathlap
