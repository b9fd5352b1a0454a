#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dac/multigraph.hpp"
#include "dac/rng.hpp"

namespace dac {

using BondConfig = std::vector<std::uint8_t>;  // per edge, 1 = open
using SiteConfig = std::vector<std::uint8_t>;  // per vertex, 1 = black

// Throws std::invalid_argument unless 0 <= value <= 1.
void check_probability(double value, const char* name);

// Union-find over vertices; each root carries the minimum vertex and the
// size of its cluster.
class ClusterPartition {
 public:
  ClusterPartition() = default;
  explicit ClusterPartition(int vertex_count);

  void reset(int vertex_count);
  int vertex_count() const { return static_cast<int>(parent_.size()); }

  Vertex find(Vertex v);
  // Returns true if two clusters were merged.
  bool unite(Vertex u, Vertex v);
  bool same(Vertex u, Vertex v) { return find(u) == find(v); }
  Vertex min_of(Vertex v) { return min_[static_cast<std::size_t>(find(v))]; }
  int size_of(Vertex v) { return size_[static_cast<std::size_t>(find(v))]; }
  int cluster_count() const { return clusters_; }

 private:
  std::vector<Vertex> parent_;
  std::vector<Vertex> min_;
  std::vector<int> size_;
  int clusters_ = 0;
};

BondConfig sample_bond(const MultiGraph& graph, double p, RngStream& rng);
ClusterPartition clusters(const MultiGraph& graph, const BondConfig& eta);

// Draws kappa(v) ~ Bernoulli(r) for every vertex in index order and colors
// each vertex with kappa of the minimum of its cluster.
SiteConfig color(ClusterPartition& partition, double r, RngStream& rng);

struct DacSample {
  BondConfig eta;
  SiteConfig xi;
};

DacSample sample_dac(const MultiGraph& graph, double p, double r, RngStream& rng);

// Buffer-reusing sampler for Monte Carlo loops. Draw order is identical to
// sample_dac, so both produce the same configuration from the same stream.
class DacSampler {
 public:
  DacSampler(const MultiGraph& graph, double p, double r);
  void sample(RngStream& rng);
  const BondConfig& eta() const { return eta_; }
  const SiteConfig& xi() const { return xi_; }

 private:
  const MultiGraph* graph_;
  double p_;
  double r_;
  BondConfig eta_;
  SiteConfig xi_;
  std::vector<std::uint8_t> kappa_;
  ClusterPartition partition_;
};

struct CouplingSample {
  BondConfig eta;
  SiteConfig xi;
  SiteConfig z;
};

// Sequential exploration of directed open clusters. Every undirected edge
// carries two independent directed bits, drawn lazily on first touch. The
// returned xi has the DaC law; z(v) = kappa_v * [all bits pointing at v are
// closed] has product law with parameter r(1-p)^deg(v), and z <= xi.
CouplingSample exploration_coupling(const MultiGraph& graph, double p, double r, RngStream& rng);

// Maximal component of vertices with the color of v, under the given site
// adjacency. Sorted ascending.
std::vector<Vertex> black_component(const NeighborTable& sites, const SiteConfig& xi, Vertex v);

enum class Orientation { vertical, horizontal };

// Black crossing between the bottom and top rows (vertical) or the left and
// right columns (horizontal), using the box's site adjacency.
bool box_crossing(const LatticeBox& box, const SiteConfig& xi, Orientation orientation);

// V_n: vertical black crossing of [0,n] x [0,3n].
bool vertical_crossing(const LatticeBox& box, const SiteConfig& xi);

// M_n on the box [0,2n]^2 centred at (n,n): an open path from the centre to
// a vertex at graph distance n.
bool one_arm(const LatticeBox& box, const BondConfig& eta, int n);

std::string bits_to_hex(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> hex_to_bits(std::string_view hex, std::size_t count);

}  // namespace dac
