#include "dac/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dac/core.hpp"
#include "dac/exact.hpp"
#include "dac/mc.hpp"
#include "dac/multigraph.hpp"
#include "dac/rational.hpp"
#include "dac/tree.hpp"

namespace dac {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_probability(const std::string& text, const char* name) {
  const Rational q = parse_rational(text);
  if (q < 0 || q > 1) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  return to_double(q);
}

// "a:b:step" (inclusive) or a comma-separated list; entries are exact rationals.
std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
    if (parts.size() != 3) throw std::invalid_argument("grid must be a:b:step");
    const Rational a = parse_rational(parts[0]), b = parse_rational(parts[1]), step = parse_rational(parts[2]);
    if (step <= 0 || b < a) throw std::invalid_argument("grid needs a <= b and step > 0");
    for (Rational x = a; x <= b; x += step) out.push_back(x);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_rational(trim(part)));
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

struct GraphSource {
  MultiGraph graph;
  std::optional<Gadget> gadget;
};

GraphSource load_graph(const std::string& spec, int k, int n) {
  auto from_gadget = [](Gadget g) {
    GraphSource s;
    s.graph = g.graph;
    s.gadget = std::move(g);
    return s;
  };
  if (spec == "edge") return from_gadget(single_edge_gadget());
  if (spec == "path") return from_gadget(path_gadget());
  if (spec == "doubled-edge") return from_gadget(make_gadget(make_multigraph(2, {{0, 1}, {0, 1}}), 0, 1));
  if (spec == "triangle") return from_gadget(make_gadget(make_multigraph(3, {{0, 1}, {1, 2}, {0, 2}}), 0, 1));
  if (spec == "dk") return from_gadget(complete_bipartite_dk(k));
  if (spec == "dn") return from_gadget(parallel_gadget_dn(n));
  if (spec == "bridge") return from_gadget(DoubledBridgeFamily::bridge(1));
  if (spec.rfind("file:", 0) == 0) {
    GraphFile file = read_graph_file(spec.substr(5));
    GraphSource s;
    s.graph = file.graph;
    if (file.a && file.b) s.gadget = make_gadget(file.graph, *file.a, *file.b);
    return s;
  }
  throw std::invalid_argument("unknown graph '" + spec + "'");
}

// Effective configuration as "# key = value" lines in declaration order.
std::string echo_config(const CLI::App& app) {
  std::ostringstream out;
  out << "# command = " << app.get_name() << '\n';
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "out" || name == "threads") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& v : opt->reduced_results()) value += (value.empty() ? "" : " ") + v;
    } else {
      value = opt->get_default_str();
    }
    if (value.empty()) continue;
    out << "# " << name << " = " << value << '\n';
  }
  return out.str();
}

struct Common {
  std::string config;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value file; command-line flags take precedence");
  sub->add_option("--out", c.out, "write the primary output to this file");
  sub->add_option("--threads", c.threads, "worker threads (results do not depend on it)")->default_val(1);
}

struct SampleArgs {
  std::string graph, p, r, event, orientation = "vertical";
  int k = 2, gadget_n = 1, L = 8;
  std::uint64_t n = 1, seed = 1;
};

struct ExactArgs {
  std::string graph, poly;
  int k = 2, n = 1, max_edges = 24;
  std::string eval_h;
  std::vector<std::string> eval_f;
};

struct CertifyArgs {
  std::string family_name, family = "edge-gadget", grid, p0;
  int k = 3, delta = 3, nmax = 0;
  long k4 = 0;
};

struct CurveArgs {
  std::string kind, grid = "0:0.4:0.1", p = "0.2";
  int L = 32, nmax = 24, depth = 3;
  std::uint64_t samples = 4000, seed = 1;
  double tolerance = 0.05;
};

int certificate_exit(Status s) {
  switch (s) {
    case Status::pass: return exit_ok;
    case Status::fail: return exit_certificate_failed;
    case Status::inconclusive: return exit_inconclusive;
  }
  return exit_certificate_failed;
}

int cmd_sample(const SampleArgs& a, const Common& c, std::string& body) {
  const double p = parse_probability(a.p, "p"), r = parse_probability(a.r, "r");
  std::ostringstream out;
  if (a.graph == "z2box") {
    if (a.L < 1) throw std::invalid_argument("L must be >= 1");
  }
  if (!a.event.empty()) {
    McOptions o{a.n, a.seed, c.threads};
    EstimatorResult res;
    if (a.event == "crossing" || a.event == "star-crossing") {
      if (a.graph != "z2box") throw std::invalid_argument("crossing events need --graph z2box");
      Orientation orientation;
      if (a.orientation == "vertical") orientation = Orientation::vertical;
      else if (a.orientation == "horizontal") orientation = Orientation::horizontal;
      else throw std::invalid_argument("orientation must be vertical or horizontal");
      const LatticeBox box(a.L, 3 * a.L, a.event == "crossing" ? Adjacency::nearest : Adjacency::star);
      res = estimate_crossing(box, orientation, p, r, o);
    } else if (a.event == "pivotal" || a.event == "connection") {
      if (a.graph == "z2box") throw std::invalid_argument(a.event + " needs a two-terminal graph");
      const GraphSource src = load_graph(a.graph, a.k, a.gadget_n);
      if (!src.gadget) throw std::invalid_argument("graph file has no terminals");
      const Gadget& g = *src.gadget;
      EventFn fn;
      if (a.event == "pivotal") {
        fn = [&g](const BondConfig& eta, const SiteConfig& xi) { return pivotal_event_holds(g, eta, xi); };
      } else {
        fn = [&g](const BondConfig& eta, const SiteConfig&) {
          ClusterPartition part = clusters(g.graph, eta);
          return part.same(g.a, g.b);
        };
      }
      res = estimate_event(g.graph, fn, p, r, o);
    } else {
      throw std::invalid_argument("unknown event '" + a.event + "'");
    }
    out << EstimatorResult::csv_header() << '\n' << res.csv_row() << '\n';
    body = out.str();
    return exit_ok;
  }
  MultiGraph graph;
  if (a.graph == "z2box") {
    graph = LatticeBox(a.L, 3 * a.L, Adjacency::nearest).graph();
  } else {
    graph = load_graph(a.graph, a.k, a.gadget_n).graph;
  }
  RngStream rng(a.seed, 0);
  out << "sample_id,edge_bits_hex,vertex_bits_hex\n";
  for (std::uint64_t i = 0; i < a.n; ++i) {
    const DacSample s = sample_dac(graph, p, r, rng);
    out << i << ',' << bits_to_hex(s.eta) << ',' << bits_to_hex(s.xi) << '\n';
  }
  body = out.str();
  return exit_ok;
}

int cmd_exact(const ExactArgs& a, std::string& body) {
  const GraphSource src = load_graph(a.graph, a.k, a.n);
  if (!src.gadget) throw std::invalid_argument("graph has no terminals a, b");
  ExactLimits limits;
  limits.max_edges = a.max_edges;
  std::string poly = a.poly;
  if (poly.empty()) poly = (a.eval_h.empty() && a.eval_f.empty()) ? "both" : "none";
  if (poly != "h" && poly != "f" && poly != "both" && poly != "none")
    throw std::invalid_argument("poly must be h, f or both");
  const bool want_h = poly == "h" || poly == "both" || !a.eval_h.empty();
  const bool want_f = poly == "f" || poly == "both" || !a.eval_f.empty();
  std::optional<BiPoly> h, f;
  if (want_h) h = connection_poly(*src.gadget, limits);
  if (want_f) f = pivotality_poly(*src.gadget, limits);
  std::ostringstream out;
  if (poly == "h" || poly == "both") out << "# h(p)\n" << h->to_csv() << "h = " << h->to_string() << '\n';
  if (poly == "f" || poly == "both") out << "# f(p,r)\n" << f->to_csv() << "f = " << f->to_string() << '\n';
  if (!a.eval_h.empty()) {
    const Rational p = parse_rational(a.eval_h);
    out << "h(" << to_string(p) << ") = " << to_string(h->evaluate_p(p)) << '\n';
  }
  if (!a.eval_f.empty()) {
    if (a.eval_f.size() != 2) throw std::invalid_argument("--eval-f takes P R");
    const Rational p = parse_rational(a.eval_f[0]), r = parse_rational(a.eval_f[1]);
    out << "f(" << to_string(p) << "," << to_string(r) << ") = " << to_string(f->evaluate(p, r)) << '\n';
  }
  body = out.str();
  return exit_ok;
}

int cmd_certify(const CertifyArgs& a, std::string& body) {
  std::ostringstream out;
  Status status = Status::fail;
  if (a.family_name == "dk-nonmonotone") {
    std::optional<Rational> p0;
    std::optional<long> k4;
    if (!a.p0.empty()) p0 = parse_rational(a.p0);
    if (a.k4 > 0) k4 = a.k4;
    const NonmonotonicityBundle bundle = nonmonotonicity_certificate(a.k, p0, k4);
    out << format_report(bundle.facts);
    status = overall_status(bundle.facts);
    out << "conclusion: r_c non-monotone on [0, p_c) for Gamma_k with k = " << bundle.choice.k << ": "
        << (bundle.conclusion ? "yes" : "not established") << '\n';
  } else if (a.family_name == "nonbounded-discontinuity") {
    std::vector<Rational> grid = parse_grid(a.grid.empty() ? "0:1/2:1/10" : a.grid);
    const DiscontinuityReport report = discontinuity_family_certificate(grid, a.nmax > 0 ? a.nmax : 8);
    out << format_report(report.checks);
    out << report.curve.to_csv();
    out << "jump = [" << to_double(report.jump.lo) << ", " << to_double(report.jump.hi)
        << "] (1/sqrt(2) - 1/2 = " << (std::sqrt(0.5) - 0.5) << ")\n";
    status = overall_status(report.checks);
  } else if (a.family_name == "bounded-degree-discontinuity") {
    const DoubledBridgeFamily family;
    const BoundedDegreeReport report = bounded_degree_certificate(family, a.delta, a.nmax > 0 ? a.nmax : 4);
    out << format_report(report.checks);
    status = report.status;
  } else if (a.family_name == "rcbounds-check") {
    const std::vector<Rational> grid = parse_grid(a.grid.empty() ? "0:3/10:1/10" : a.grid);
    const Certificate cert = rcbounds_check(a.family, grid);
    out << format_report({cert});
    status = cert.status;
  } else {
    throw std::invalid_argument("unknown certificate family '" + a.family_name + "'");
  }
  out << "status: " << status_name(status) << '\n';
  body = out.str();
  return certificate_exit(status);
}

int cmd_curve(const CurveArgs& a, const Common& c, std::string& body) {
  const McOptions o{a.samples, a.seed, c.threads};
  std::ostringstream out;
  if (a.kind == "rc") {
    std::vector<double> grid;
    for (const Rational& x : parse_grid(a.grid)) {
      if (x < 0 || x >= half()) throw std::invalid_argument("p grid must lie in [0,1/2)");
      grid.push_back(to_double(x));
    }
    const ScanReport scan = continuity_scan(grid, mc_rc_curve(a.L, o), a.tolerance, a.depth);
    out << RcCurvePoint::csv_header() << '\n';
    for (RcCurvePoint pt : scan.curve) {
      pt.L = a.L;
      out << pt.csv_row() << '\n';
    }
    out << "# max_gap = " << scan.max_gap << '\n';
    out << "# flagged = " << scan.flags.size() << '\n';
    for (const ScanFlag& f : scan.flags)
      out << "# jump candidate between " << f.p_left << " and " << f.p_right << ": gap " << f.initial_gap
          << " -> " << f.final_gap << '\n';
  } else if (a.kind == "duality") {
    const double p = parse_probability(a.p, "p");
    const DualityReport report = duality_check(p, a.L, o, a.tolerance);
    out << DualityReport::csv_header() << '\n' << report.csv_row() << '\n';
  } else if (a.kind == "psi") {
    const double p = parse_probability(a.p, "p");
    std::vector<int> ns;
    for (int n = 1; n <= a.nmax; ++n) ns.push_back(n);
    const PsiFit fit = psi_fit(p, ns, o);
    out << EstimatorResult::csv_header() << '\n';
    for (const PsiPoint& pt : fit.points) out << pt.result.csv_row() << '\n';
    out << '\n' << PsiFit::csv_header() << '\n' << fit.csv_row() << '\n';
    for (int n : fit.dropped) out << "# dropped n = " << n << " (frequency 0 or 1)\n";
  } else {
    throw std::invalid_argument("unknown curve kind '" + a.kind + "'");
  }
  body = out.str();
  return exit_ok;
}

// Inserts config-file entries right after the subcommand so that later
// command-line flags override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    const auto entries = parse_config(read_file(path));
    injected.insert(injected.end(), entries.begin(), entries.end());
  }
  if (!injected.empty() && !out.empty()) out.insert(out.begin() + 1, injected.begin(), injected.end());
  return out;
}

}  // namespace

std::vector<std::string> parse_config(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    tokens.push_back("--" + key);
    std::istringstream words(line.substr(eq + 1));
    for (std::string w; words >> w;) tokens.push_back(w);
  }
  return tokens;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divide-and-color percolation: sampling, exact polynomials, certificates and lattice curves", "dac"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  SampleArgs sa;
  ExactArgs ea;
  CertifyArgs ca;
  CurveArgs cu;

  auto* sample = app.add_subcommand("sample", "draw DaC configurations or tally an event");
  add_common(sample, common);
  sample->add_option("--graph", sa.graph, "edge|path|doubled-edge|triangle|dk|dn|bridge|z2box|file:PATH")->required();
  sample->add_option("--k", sa.k, "k for dk")->default_val(2);
  sample->add_option("--gadget-n", sa.gadget_n, "n for dn")->default_val(1);
  sample->add_option("--L", sa.L, "box [0,L] x [0,3L] for z2box")->default_val(8);
  sample->add_option("--p", sa.p, "bond parameter")->required();
  sample->add_option("--r", sa.r, "colour parameter")->required();
  sample->add_option("--n", sa.n, "number of samples")->default_val(1);
  sample->add_option("--seed", sa.seed)->default_val(1);
  sample->add_option("--event", sa.event, "crossing|star-crossing|pivotal|connection");
  sample->add_option("--orientation", sa.orientation, "vertical|horizontal")->default_val("vertical");

  auto* exact = app.add_subcommand("exact", "exact h and f polynomials of a two-terminal graph");
  add_common(exact, common);
  exact->add_option("--graph", ea.graph, "edge|path|doubled-edge|triangle|dk|dn|bridge|file:PATH")->required();
  exact->add_option("--k", ea.k, "k for dk")->default_val(2);
  exact->add_option("--n", ea.n, "n for dn")->default_val(1);
  exact->add_option("--poly", ea.poly, "h|f|both");
  exact->add_option("--eval-h", ea.eval_h, "evaluate h at P");
  exact->add_option("--eval-f", ea.eval_f, "evaluate f at P R")->expected(2);
  exact->add_option("--max-edges", ea.max_edges, "enumeration cap")->default_val(24);

  auto* certify = app.add_subcommand("certify", "exact certificates for tree-like graphs");
  add_common(certify, common);
  certify
      ->add_option("family_name", ca.family_name,
                   "dk-nonmonotone|nonbounded-discontinuity|bounded-degree-discontinuity|rcbounds-check")
      ->required();
  certify->add_option("--k", ca.k, "k for dk-nonmonotone")->default_val(3);
  certify->add_option("--p0", ca.p0, "fix p0 for fact (4)");
  certify->add_option("--k4", ca.k4, "fix k for fact (4)");
  certify->add_option("--family", ca.family, "edge-gadget|path-gadget|dk-<k>")->default_val("edge-gadget");
  certify->add_option("--grid", ca.grid, "p grid a:b:step or a list");
  certify->add_option("--delta", ca.delta, "maximal degree")->default_val(3);
  certify->add_option("--nmax", ca.nmax, "largest family index checked");

  auto* curve = app.add_subcommand("curve", "Monte Carlo curves on Z^2 boxes");
  add_common(curve, common);
  curve->add_option("kind", cu.kind, "rc|duality|psi")->required();
  curve->add_option("--grid", cu.grid, "p grid for rc")->default_val("0:0.4:0.1");
  curve->add_option("--p", cu.p, "bond parameter for duality and psi")->default_val("0.2");
  curve->add_option("--L", cu.L, "box size")->default_val(32);
  curve->add_option("--nmax", cu.nmax, "largest n for psi")->default_val(24);
  curve->add_option("--samples", cu.samples, "samples per probe")->default_val(4000);
  curve->add_option("--seed", cu.seed)->default_val(1);
  curve->add_option("--tolerance", cu.tolerance, "jump or duality tolerance")->default_val(0.05);
  curve->add_option("--depth", cu.depth, "refinement depth of the continuity scan")->default_val(3);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_bad_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_config;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::string body;
  int code = exit_ok;
  try {
    if (chosen == sample) code = cmd_sample(sa, common, body);
    else if (chosen == exact) code = cmd_exact(ea, body);
    else if (chosen == certify) code = cmd_certify(ca, body);
    else code = cmd_curve(cu, common, body);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_cap_exceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_bad_config;
  }

  const std::string text = echo_config(*chosen) + body;
  if (common.out.empty()) {
    out << text;
  } else {
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << common.out << "'\n";
      return exit_bad_config;
    }
    file << text;
  }
  return code;
}

}  // namespace dac
