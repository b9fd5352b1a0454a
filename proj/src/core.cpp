#include "dac/core.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dac {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " + std::to_string(value));
}

ClusterPartition::ClusterPartition(int vertex_count) { reset(vertex_count); }

void ClusterPartition::reset(int vertex_count) {
  const auto n = static_cast<std::size_t>(vertex_count);
  parent_.resize(n);
  min_.resize(n);
  size_.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    parent_[i] = static_cast<Vertex>(i);
    min_[i] = static_cast<Vertex>(i);
  }
  clusters_ = vertex_count;
}

Vertex ClusterPartition::find(Vertex v) {
  auto* parent = parent_.data();
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

bool ClusterPartition::unite(Vertex u, Vertex v) {
  Vertex ru = find(u), rv = find(v);
  if (ru == rv) return false;
  if (size_[static_cast<std::size_t>(ru)] < size_[static_cast<std::size_t>(rv)]) std::swap(ru, rv);
  parent_[static_cast<std::size_t>(rv)] = ru;
  size_[static_cast<std::size_t>(ru)] += size_[static_cast<std::size_t>(rv)];
  min_[static_cast<std::size_t>(ru)] = std::min(min_[static_cast<std::size_t>(ru)], min_[static_cast<std::size_t>(rv)]);
  --clusters_;
  return true;
}

BondConfig sample_bond(const MultiGraph& graph, double p, RngStream& rng) {
  check_probability(p, "p");
  BondConfig eta(static_cast<std::size_t>(graph.edge_count()));
  for (auto& bit : eta) bit = rng.bernoulli(p) ? 1 : 0;
  return eta;
}

ClusterPartition clusters(const MultiGraph& graph, const BondConfig& eta) {
  if (eta.size() != static_cast<std::size_t>(graph.edge_count()))
    throw std::invalid_argument("bond configuration size does not match edge count");
  ClusterPartition partition(graph.vertex_count());
  for (int i = 0; i < graph.edge_count(); ++i) {
    if (eta[static_cast<std::size_t>(i)]) partition.unite(graph.edge(i).u, graph.edge(i).v);
  }
  return partition;
}

SiteConfig color(ClusterPartition& partition, double r, RngStream& rng) {
  check_probability(r, "r");
  const int n = partition.vertex_count();
  std::vector<std::uint8_t> kappa(static_cast<std::size_t>(n));
  for (auto& k : kappa) k = rng.bernoulli(r) ? 1 : 0;
  SiteConfig xi(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) xi[static_cast<std::size_t>(v)] = kappa[static_cast<std::size_t>(partition.min_of(v))];
  return xi;
}

DacSample sample_dac(const MultiGraph& graph, double p, double r, RngStream& rng) {
  check_probability(r, "r");
  DacSample out;
  out.eta = sample_bond(graph, p, rng);
  ClusterPartition partition = clusters(graph, out.eta);
  out.xi = color(partition, r, rng);
  return out;
}

DacSampler::DacSampler(const MultiGraph& graph, double p, double r)
    : graph_(&graph), p_(p), r_(r),
      eta_(static_cast<std::size_t>(graph.edge_count())),
      xi_(static_cast<std::size_t>(graph.vertex_count())),
      kappa_(static_cast<std::size_t>(graph.vertex_count())) {
  check_probability(p, "p");
  check_probability(r, "r");
}

void DacSampler::sample(RngStream& rng) {
  const MultiGraph& g = *graph_;
  for (auto& bit : eta_) bit = rng.bernoulli(p_) ? 1 : 0;
  partition_.reset(g.vertex_count());
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (eta_[i]) partition_.unite(edges[i].u, edges[i].v);
  }
  for (auto& k : kappa_) k = rng.bernoulli(r_) ? 1 : 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) xi_[static_cast<std::size_t>(v)] = kappa_[static_cast<std::size_t>(partition_.min_of(v))];
}

CouplingSample exploration_coupling(const MultiGraph& graph, double p, double r, RngStream& rng) {
  check_probability(p, "p");
  check_probability(r, "r");
  const auto n = static_cast<std::size_t>(graph.vertex_count());
  const auto m = static_cast<std::size_t>(graph.edge_count());

  std::vector<std::uint8_t> kappa(n);
  for (auto& k : kappa) k = rng.bernoulli(r) ? 1 : 0;

  // directed[2e] is the bit for u -> v, directed[2e+1] for v -> u, where
  // (u, v) is the stored orientation of edge e. 2 = not drawn yet.
  std::vector<std::uint8_t> directed(2 * m, 2);
  auto directed_bit = [&](int e, Vertex from) -> std::uint8_t {
    const std::size_t slot = 2 * static_cast<std::size_t>(e) + (graph.edge(e).u == from ? 0 : 1);
    if (directed[slot] == 2) directed[slot] = rng.bernoulli(p) ? 1 : 0;
    return directed[slot];
  };

  CouplingSample out;
  out.eta.assign(m, 0);
  out.xi.assign(n, 0);
  out.z.assign(n, 0);
  std::vector<std::uint8_t> edge_assigned(m, 0);
  std::vector<std::uint8_t> colored(n, 0);
  std::vector<std::uint8_t> in_frontier(n, 0);
  std::vector<Vertex> explored;

  Vertex next_uncolored = 0;
  while (true) {
    // Step 1: least vertex without a color.
    while (next_uncolored < static_cast<Vertex>(n) && colored[static_cast<std::size_t>(next_uncolored)]) ++next_uncolored;
    if (next_uncolored == static_cast<Vertex>(n)) break;
    const Vertex start = next_uncolored;

    // Step 2: explore the directed open cluster of start. Vertices reachable
    // through open assigned edges are exactly the open neighbours of the
    // explored set, since edges are only assigned from explored vertices.
    explored.clear();
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> frontier;
    Vertex current = start;
    in_frontier[static_cast<std::size_t>(current)] = 1;
    while (true) {
      explored.push_back(current);
      for (const Incidence& inc : graph.incident(current)) {
        const auto e = static_cast<std::size_t>(inc.edge);
        if (edge_assigned[e]) continue;
        edge_assigned[e] = 1;
        out.eta[e] = directed_bit(inc.edge, current);
        if (out.eta[e] && !in_frontier[static_cast<std::size_t>(inc.other)]) {
          in_frontier[static_cast<std::size_t>(inc.other)] = 1;
          frontier.push(inc.other);
        }
      }
      if (frontier.empty()) break;
      current = frontier.top();
      frontier.pop();
    }

    // Step 3: the whole explored set takes the colour kappa_start.
    for (Vertex w : explored) {
      out.xi[static_cast<std::size_t>(w)] = kappa[static_cast<std::size_t>(start)];
      colored[static_cast<std::size_t>(w)] = 1;
    }
  }

  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    bool all_closed = true;
    for (const Incidence& inc : graph.incident(v)) {
      if (directed_bit(inc.edge, inc.other)) all_closed = false;
    }
    out.z[static_cast<std::size_t>(v)] = (kappa[static_cast<std::size_t>(v)] && all_closed) ? 1 : 0;
  }
  return out;
}

std::vector<Vertex> black_component(const NeighborTable& sites, const SiteConfig& xi, Vertex v) {
  if (v < 0 || v >= sites.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (xi.size() != static_cast<std::size_t>(sites.vertex_count()))
    throw std::invalid_argument("site configuration size does not match vertex count");
  const std::uint8_t target = xi[static_cast<std::size_t>(v)];
  std::vector<std::uint8_t> seen(xi.size(), 0);
  std::vector<Vertex> out{v};
  seen[static_cast<std::size_t>(v)] = 1;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Vertex w : sites.neighbors(out[head])) {
      if (!seen[static_cast<std::size_t>(w)] && xi[static_cast<std::size_t>(w)] == target) {
        seen[static_cast<std::size_t>(w)] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool box_crossing(const LatticeBox& box, const SiteConfig& xi, Orientation orientation) {
  if (xi.size() != static_cast<std::size_t>(box.graph().vertex_count()))
    throw std::invalid_argument("site configuration does not match the box");
  const bool vertical = orientation == Orientation::vertical;
  const int span = vertical ? box.width() : box.height();
  const int far = vertical ? box.height() : box.width();

  std::vector<std::uint8_t> seen(xi.size(), 0);
  std::vector<Vertex> queue;
  queue.reserve(xi.size());
  for (int t = 0; t <= span; ++t) {
    const Vertex v = vertical ? box.index(t, 0) : box.index(0, t);
    if (xi[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if ((vertical ? box.y_of(v) : box.x_of(v)) == far) return true;
    for (Vertex w : box.sites().neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)] && xi[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

bool vertical_crossing(const LatticeBox& box, const SiteConfig& xi) {
  if (box.height() != 3 * box.width())
    throw std::invalid_argument("V_n needs a box of shape [0,n] x [0,3n]");
  return box_crossing(box, xi, Orientation::vertical);
}

bool one_arm(const LatticeBox& box, const BondConfig& eta, int n) {
  if (n < 0 || box.width() != 2 * n || box.height() != 2 * n)
    throw std::invalid_argument("M_n needs the box [0,2n]^2");
  const MultiGraph& g = box.graph();
  if (eta.size() != static_cast<std::size_t>(g.edge_count()))
    throw std::invalid_argument("bond configuration does not match the box");
  const Vertex origin = box.index(n, n);
  auto distance = [&](Vertex v) { return std::abs(box.x_of(v) - n) + std::abs(box.y_of(v) - n); };
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<Vertex> queue{origin};
  seen[static_cast<std::size_t>(origin)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    if (distance(v) == n) return true;
    for (const Incidence& inc : g.incident(v)) {
      if (eta[static_cast<std::size_t>(inc.edge)] && !seen[static_cast<std::size_t>(inc.other)]) {
        seen[static_cast<std::size_t>(inc.other)] = 1;
        queue.push_back(inc.other);
      }
    }
  }
  return false;
}

std::string bits_to_hex(const std::vector<std::uint8_t>& bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out((bits.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    const std::size_t d = i / 4;
    const int value = (out[d] <= '9' ? out[d] - '0' : out[d] - 'a' + 10) | (1 << (i % 4));
    out[d] = digits[value];
  }
  return out;
}

std::vector<std::uint8_t> hex_to_bits(std::string_view hex, std::size_t count) {
  if (hex.size() != (count + 3) / 4) throw std::invalid_argument("hex length does not match bit count");
  std::vector<std::uint8_t> bits(count, 0);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    int value;
    if (c >= '0' && c <= '9') value = c - '0';
    else if (c >= 'a' && c <= 'f') value = c - 'a' + 10;
    else throw std::invalid_argument("invalid hex digit");
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + static_cast<std::size_t>(b);
      if (value & (1 << b)) {
        if (i >= count) throw std::invalid_argument("hex sets bits past the end");
        bits[i] = 1;
      }
    }
  }
  return bits;
}

}  // namespace dac
