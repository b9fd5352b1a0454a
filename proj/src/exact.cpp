#include "dac/exact.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

namespace dac {

namespace {

using Mask = std::uint64_t;

// Bond-configuration walker shared by the enumerators: for each edge subset
// it labels bond clusters and records their vertex masks.
class SubsetWalker {
 public:
  SubsetWalker(const MultiGraph& graph, const ExactLimits& limits) : graph_(graph) {
    if (graph.edge_count() > limits.max_edges)
      throw CapExceeded("graph has " + std::to_string(graph.edge_count()) + " edges; enumeration cap is " +
                        std::to_string(limits.max_edges));
    if (graph.vertex_count() > std::min(limits.max_vertices, 64))
      throw CapExceeded("graph has " + std::to_string(graph.vertex_count()) + " vertices; enumeration cap is " +
                        std::to_string(std::min(limits.max_vertices, 64)));
    const auto n = static_cast<std::size_t>(graph.vertex_count());
    adjacency_.assign(n, 0);
    for (const Edge& e : graph.edges()) {
      adjacency_[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
      adjacency_[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
    parent_.resize(n);
    label_.resize(n);
  }

  std::uint64_t subset_count() const { return std::uint64_t{1} << graph_.edge_count(); }
  int edge_count() const { return graph_.edge_count(); }
  Mask adjacency(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  // Fills label(v) and cluster masks (ordered by minimum vertex).
  void load(std::uint64_t subset) {
    const int n = graph_.vertex_count();
    for (int v = 0; v < n; ++v) parent_[static_cast<std::size_t>(v)] = v;
    for (int i = 0; i < graph_.edge_count(); ++i) {
      if (!((subset >> i) & 1u)) continue;
      int ru = root(graph_.edge(i).u), rv = root(graph_.edge(i).v);
      if (ru != rv) parent_[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
    clusters_.clear();
    for (int v = 0; v < n; ++v) {
      const int rt = root(v);
      if (rt == v) {
        label_[static_cast<std::size_t>(v)] = static_cast<int>(clusters_.size());
        clusters_.push_back(Mask{1} << v);
      } else {
        label_[static_cast<std::size_t>(v)] = label_[static_cast<std::size_t>(rt)];
        clusters_[static_cast<std::size_t>(label_[static_cast<std::size_t>(v)])] |= Mask{1} << v;
      }
    }
  }

  int label(Vertex v) const { return label_[static_cast<std::size_t>(v)]; }
  const std::vector<Mask>& clusters() const { return clusters_; }
  // Minimum vertex of cluster c (roots are minima by construction).
  Vertex cluster_min(int c) const { return std::countr_zero(clusters_[static_cast<std::size_t>(c)]); }

 private:
  int root(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  const MultiGraph& graph_;
  std::vector<Mask> adjacency_;
  std::vector<int> parent_;
  std::vector<int> label_;
  std::vector<Mask> clusters_;
};

// Sum over s of counts[s] p^s (1-p)^(E-s).
BiPoly bond_polynomial(const std::vector<std::uint64_t>& counts, int edges) {
  BiPoly out;
  for (int s = 0; s <= edges; ++s) {
    if (counts[static_cast<std::size_t>(s)] == 0) continue;
    out += BiPoly(Rational(mpz_class(std::to_string(counts[static_cast<std::size_t>(s)])))) * bernstein_p(s, edges - s);
  }
  return out;
}

Rational from_u64(std::uint64_t value) { return Rational(mpz_class(std::to_string(value))); }

void check_gadget_sizes(const Gadget& gadget) {
  if (!gadget.graph.valid(gadget.a) || !gadget.graph.valid(gadget.b) || gadget.a == gadget.b)
    throw GraphError("invalid gadget terminals");
}

}  // namespace

BiPoly connection_poly(const Gadget& gadget, const ExactLimits& limits) {
  check_gadget_sizes(gadget);
  SubsetWalker walker(gadget.graph, limits);
  const int edges = walker.edge_count();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(edges) + 1, 0);
  for (std::uint64_t subset = 0; subset < walker.subset_count(); ++subset) {
    walker.load(subset);
    if (walker.label(gadget.a) == walker.label(gadget.b)) ++counts[static_cast<std::size_t>(std::popcount(subset))];
  }
  return bond_polynomial(counts, edges);
}

BiPoly pivotality_poly(const Gadget& gadget, const ExactLimits& limits) {
  return pivotality_poly_restricted(gadget, {}, limits);
}

BiPoly pivotality_poly_restricted(const Gadget& gadget, const BondFilter& bond_event, const ExactLimits& limits) {
  check_gadget_sizes(gadget);
  SubsetWalker walker(gadget.graph, limits);
  const int edges = walker.edge_count();
  const int n = gadget.graph.vertex_count();
  const auto dim = static_cast<std::size_t>(n) + 1;
  // counts[s][m][j]: bond subsets of size s whose m non-C_a clusters admit
  // exactly that many colourings with j black clusters realising the event.
  std::vector<std::uint64_t> counts((static_cast<std::size_t>(edges) + 1) * dim * dim, 0);
  auto slot = [&](int s, int m, int j) -> std::uint64_t& {
    return counts[(static_cast<std::size_t>(s) * dim + static_cast<std::size_t>(m)) * dim + static_cast<std::size_t>(j)];
  };

  const Mask b_bit = Mask{1} << gadget.b;
  std::vector<Mask> others;
  for (std::uint64_t subset = 0; subset < walker.subset_count(); ++subset) {
    if (bond_event && !bond_event(subset)) continue;
    walker.load(subset);
    const int s = std::popcount(subset);
    const int label_a = walker.label(gadget.a);
    if (walker.label(gadget.b) == label_a) {
      ++slot(s, 0, 0);
      continue;
    }
    const Mask ca = walker.clusters()[static_cast<std::size_t>(label_a)];
    Mask boundary = 0;
    for (Mask rest = ca; rest; rest &= rest - 1) boundary |= walker.adjacency(std::countr_zero(rest));
    boundary &= ~ca;

    others.clear();
    int b_index = -1;
    for (std::size_t c = 0; c < walker.clusters().size(); ++c) {
      if (static_cast<int>(c) == label_a) continue;
      if (walker.clusters()[c] & b_bit) b_index = static_cast<int>(others.size());
      others.push_back(walker.clusters()[c]);
    }
    const int m = static_cast<int>(others.size());
    if (m > limits.max_clusters)
      throw CapExceeded("colour enumeration over " + std::to_string(m) + " clusters exceeds cap " +
                        std::to_string(limits.max_clusters));

    for (std::uint32_t coloring = 0; coloring < (std::uint32_t{1} << m); ++coloring) {
      if (!((coloring >> b_index) & 1u)) continue;  // b must be black
      Mask black = 0;
      for (int c = 0; c < m; ++c)
        if ((coloring >> c) & 1u) black |= others[static_cast<std::size_t>(c)];
      // Black component of b inside V \ C_a (black never meets C_a here).
      Mask reached = others[static_cast<std::size_t>(b_index)];
      Mask frontier = reached;
      bool hit = (reached & boundary) != 0;
      while (frontier && !hit) {
        Mask grow = 0;
        for (Mask rest = frontier; rest; rest &= rest - 1) grow |= walker.adjacency(std::countr_zero(rest));
        grow &= black & ~reached;
        reached |= grow;
        frontier = grow;
        hit = (reached & boundary) != 0;
      }
      if (hit) ++slot(s, m, std::popcount(coloring));
    }
  }

  BiPoly out;
  for (int s = 0; s <= edges; ++s) {
    BiPoly color_part;
    for (int m = 0; m <= n; ++m)
      for (int j = 0; j <= m; ++j)
        if (auto c = slot(s, m, j)) color_part += BiPoly(from_u64(c)) * bernstein_r(j, m - j);
    if (!color_part.is_zero()) out += bernstein_p(s, edges - s) * color_part;
  }
  return out;
}

bool pivotal_event_holds(const Gadget& gadget, const BondConfig& eta, const SiteConfig& xi) {
  const MultiGraph& g = gadget.graph;
  if (xi.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("site configuration size does not match vertex count");
  ClusterPartition partition = clusters(g, eta);
  if (partition.same(gadget.a, gadget.b)) return true;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::uint8_t> in_ca(n, 0), touches_ca(n, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) in_ca[static_cast<std::size_t>(v)] = partition.same(v, gadget.a) ? 1 : 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!in_ca[static_cast<std::size_t>(v)]) continue;
    for (const Incidence& inc : g.incident(v))
      if (!in_ca[static_cast<std::size_t>(inc.other)]) touches_ca[static_cast<std::size_t>(inc.other)] = 1;
  }
  if (!xi[static_cast<std::size_t>(gadget.b)]) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> queue{gadget.b};
  seen[static_cast<std::size_t>(gadget.b)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (touches_ca[static_cast<std::size_t>(v)]) return true;
    for (const Incidence& inc : g.incident(v)) {
      const auto w = static_cast<std::size_t>(inc.other);
      if (!seen[w] && !in_ca[w] && xi[w]) {
        seen[w] = 1;
        queue.push_back(inc.other);
      }
    }
  }
  return false;
}

ColorEvent::ColorEvent(std::vector<Vertex> support, std::vector<std::uint8_t> table)
    : support_(std::move(support)), table_(std::move(table)) {
  if (support_.size() > 30) throw CapExceeded("colour event support too large");
  if (table_.size() != (std::size_t{1} << support_.size()))
    throw std::invalid_argument("truth table size must be 2^|support|");
  auto sorted = support_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("colour event support has repeated vertices");
}

ColorEvent ColorEvent::from_predicate(std::vector<Vertex> support,
                                      const std::function<bool(std::span<const std::uint8_t>)>& predicate) {
  const std::size_t k = support.size();
  if (k > 30) throw CapExceeded("colour event support too large");
  std::vector<std::uint8_t> table(std::size_t{1} << k);
  std::vector<std::uint8_t> colors(k);
  for (std::size_t pattern = 0; pattern < table.size(); ++pattern) {
    for (std::size_t i = 0; i < k; ++i) colors[i] = (pattern >> i) & 1u;
    table[pattern] = predicate(colors) ? 1 : 0;
  }
  return ColorEvent(std::move(support), std::move(table));
}

ColorEvent ColorEvent::from_dnf(const std::vector<std::vector<Literal>>& clauses) {
  std::vector<Vertex> support;
  for (const auto& clause : clauses)
    for (const auto& [v, black] : clause)
      if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
  std::sort(support.begin(), support.end());
  auto position = [&](Vertex v) {
    return static_cast<std::size_t>(std::find(support.begin(), support.end(), v) - support.begin());
  };
  return from_predicate(support, [&](std::span<const std::uint8_t> colors) {
    for (const auto& clause : clauses) {
      bool all = true;
      for (const auto& [v, black] : clause) all = all && ((colors[position(v)] != 0) == black);
      if (all) return true;
    }
    return false;
  });
}

ColorEvent ColorEvent::all_black(std::vector<Vertex> vertices) {
  std::vector<Literal> clause;
  for (Vertex v : vertices) clause.emplace_back(v, true);
  return from_dnf({clause});
}

bool ColorEvent::holds(const SiteConfig& xi) const {
  std::uint32_t pattern = 0;
  for (std::size_t i = 0; i < support_.size(); ++i)
    if (xi.at(static_cast<std::size_t>(support_[i]))) pattern |= std::uint32_t{1} << i;
  return holds_on_pattern(pattern);
}

EventDecomposition event_prob_poly(const MultiGraph& graph, const ColorEvent& event, const ExactLimits& limits) {
  const auto& support = event.support();
  if (static_cast<int>(support.size()) > limits.max_support)
    throw CapExceeded("colour event support exceeds cap " + std::to_string(limits.max_support));
  for (Vertex x : support)
    if (!graph.valid(x)) throw std::invalid_argument("colour event support vertex out of range");

  SubsetWalker walker(graph, limits);
  const int edges = walker.edge_count();
  std::map<std::vector<Vertex>, std::vector<std::uint64_t>> by_minima;
  std::vector<Vertex> minima(support.size());
  for (std::uint64_t subset = 0; subset < walker.subset_count(); ++subset) {
    walker.load(subset);
    for (std::size_t i = 0; i < support.size(); ++i) minima[i] = walker.cluster_min(walker.label(support[i]));
    auto& counts = by_minima[minima];
    if (counts.empty()) counts.assign(static_cast<std::size_t>(edges) + 1, 0);
    ++counts[static_cast<std::size_t>(std::popcount(subset))];
  }

  EventDecomposition out;
  for (const auto& [mins, counts] : by_minima) {
    DecompositionTerm term;
    term.minima = mins;
    term.bond_part = bond_polynomial(counts, edges);

    std::vector<Vertex> distinct = mins;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int d = static_cast<int>(distinct.size());
    std::vector<int> slot_of(mins.size());
    for (std::size_t i = 0; i < mins.size(); ++i)
      slot_of[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), mins[i]) - distinct.begin());
    for (std::uint32_t kappa = 0; kappa < (std::uint32_t{1} << d); ++kappa) {
      std::uint32_t pattern = 0;
      for (std::size_t i = 0; i < mins.size(); ++i)
        if ((kappa >> slot_of[i]) & 1u) pattern |= std::uint32_t{1} << i;
      if (!event.holds_on_pattern(pattern)) continue;
      const int black = std::popcount(kappa);
      term.color_part += bernstein_r(black, d - black);
    }
    out.total += term.bond_part * term.color_part;
    out.terms.push_back(std::move(term));
  }
  return out;
}

std::vector<Rational> site_distribution(const MultiGraph& graph, const Rational& p, const Rational& r,
                                        const ExactLimits& limits) {
  if (graph.vertex_count() > 20) throw CapExceeded("site distribution limited to 20 vertices");
  SubsetWalker walker(graph, limits);
  const int edges = walker.edge_count();
  const int n = graph.vertex_count();
  std::vector<Rational> bond_weight, black_pow, white_pow;
  for (int s = 0; s <= edges; ++s) bond_weight.push_back(pow(p, static_cast<unsigned long>(s)) * pow(Rational(1 - p), static_cast<unsigned long>(edges - s)));
  for (int j = 0; j <= n; ++j) {
    black_pow.push_back(pow(r, static_cast<unsigned long>(j)));
    white_pow.push_back(pow(Rational(1 - r), static_cast<unsigned long>(j)));
  }

  std::vector<Rational> out(std::size_t{1} << n, Rational(0));
  for (std::uint64_t subset = 0; subset < walker.subset_count(); ++subset) {
    walker.load(subset);
    const Rational& w = bond_weight[static_cast<std::size_t>(std::popcount(subset))];
    if (w == 0) continue;
    const auto& cl = walker.clusters();
    const int m = static_cast<int>(cl.size());
    for (std::uint32_t coloring = 0; coloring < (std::uint32_t{1} << m); ++coloring) {
      Mask config = 0;
      for (int c = 0; c < m; ++c)
        if ((coloring >> c) & 1u) config |= cl[static_cast<std::size_t>(c)];
      const int j = std::popcount(coloring);
      out[config] += w * black_pow[static_cast<std::size_t>(j)] * white_pow[static_cast<std::size_t>(m - j)];
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> increasing_events(int n) {
  if (n < 0 || n > 4) throw CapExceeded("increasing events enumerated only for up to 4 vertices");
  const std::uint32_t patterns = std::uint32_t{1} << n;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t set = 0; set < (std::uint64_t{1} << patterns); ++set) {
    bool up_closed = true;
    for (std::uint32_t w = 0; w < patterns && up_closed; ++w) {
      if (!((set >> w) & 1u)) continue;
      for (int v = 0; v < n; ++v)
        if (!((set >> (w | (1u << v))) & 1u)) up_closed = false;
    }
    if (!up_closed) continue;
    std::vector<std::uint32_t> event;
    for (std::uint32_t w = 0; w < patterns; ++w)
      if ((set >> w) & 1u) event.push_back(w);
    out.push_back(std::move(event));
  }
  return out;
}

DominationReport check_domination_exact(const MultiGraph& graph, const Rational& p, const Rational& r) {
  if (graph.vertex_count() > 4) throw CapExceeded("exact domination check supports at most 4 vertices");
  if (p < 0 || p > 1 || r < 0 || r > 1) throw std::invalid_argument("parameters must lie in [0,1]");
  const int n = graph.vertex_count();
  const auto dist = site_distribution(graph, p, r);
  const Rational q = 1 - p;

  DominationReport report;
  const unsigned long delta = static_cast<unsigned long>(graph.max_degree());
  report.lower_parameter = r * pow(q, delta);
  report.upper_parameter = 1 - (1 - r) * pow(q, delta);

  std::vector<Rational> local_lower, local_upper;
  for (Vertex v = 0; v < n; ++v) {
    local_lower.push_back(r * pow(q, static_cast<unsigned long>(graph.degree(v))));
    local_upper.push_back(1 - (1 - r) * pow(q, static_cast<unsigned long>(graph.degree(v))));
  }
  auto product_prob = [&](std::uint32_t pattern, auto&& param) {
    Rational prob = 1;
    for (int v = 0; v < n; ++v) {
      const Rational& t = param(v);
      prob *= ((pattern >> v) & 1u) ? t : Rational(1 - t);
    }
    return prob;
  };

  bool first = true;
  for (const auto& event : increasing_events(n)) {
    Rational mu = 0, lo = 0, hi = 0, loc_lo = 0, loc_hi = 0;
    for (std::uint32_t w : event) {
      mu += dist[w];
      lo += product_prob(w, [&](int) -> const Rational& { return report.lower_parameter; });
      hi += product_prob(w, [&](int) -> const Rational& { return report.upper_parameter; });
      loc_lo += product_prob(w, [&](int v) -> const Rational& { return local_lower[static_cast<std::size_t>(v)]; });
      loc_hi += product_prob(w, [&](int v) -> const Rational& { return local_upper[static_cast<std::size_t>(v)]; });
    }
    ++report.increasing_events;
    const Rational lower_slack = mu - lo, upper_slack = hi - mu;
    if (first || lower_slack < report.min_lower_slack) report.min_lower_slack = lower_slack;
    if (first || upper_slack < report.min_upper_slack) report.min_upper_slack = upper_slack;
    first = false;
    if ((lower_slack < 0 || upper_slack < 0) && !report.witness) {
      const bool lower = lower_slack < 0;
      report.witness = DominationWitness{event, mu, lower ? lo : hi, lower};
    }
    if (lower_slack < 0 || upper_slack < 0) report.passed = false;
    if (mu < loc_lo || mu > loc_hi) report.local_passed = false;
  }
  return report;
}

Rational bk_probability(const Rational& p, long k) {
  if (k < 1) throw std::invalid_argument("B_k needs k >= 1");
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0,1]");
  const Rational q = 1 - p;
  return pow(q, 4) * (1 - pow(Rational(1 - p * p), static_cast<unsigned long>(k)));
}

Rational bk_probability_enumerated(const Rational& p, int k, const ExactLimits& limits) {
  const Gadget g = complete_bipartite_dk(k);
  const int edges = g.graph.edge_count();
  if (edges > limits.max_edges) throw CapExceeded("D^k too large for enumeration");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(edges) + 1, 0);
  const std::uint64_t terminal_edges = (1u << dk::e1) | (1u << dk::e1p) | (1u << dk::e2) | (1u << dk::e2p);
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << edges); ++subset) {
    if (subset & terminal_edges) continue;
    bool pair_open = false;
    for (int i = 1; i <= k && !pair_open; ++i)
      pair_open = ((subset >> dk::f(i)) & 1u) && ((subset >> dk::fp(i)) & 1u);
    if (pair_open) ++counts[static_cast<std::size_t>(std::popcount(subset))];
  }
  return bond_polynomial(counts, edges).evaluate_p(p);
}

}  // namespace dac
