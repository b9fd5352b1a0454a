#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dac {

// Vertex indices double as the total order on vertices: v_i < v_j iff i < j.
using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;
};

struct Incidence {
  int edge;
  Vertex other;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite multigraph. Parallel edges are allowed, self-loops are not. Edge
// indices are stable: the i-th edge added is edge i forever.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int vertex_count);
  MultiGraph(int vertex_count, std::vector<Edge> edges);

  Vertex add_vertex(std::string label = {});
  int add_edge(Vertex u, Vertex v);

  int vertex_count() const { return static_cast<int>(incidence_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }

  // Incident edges counted with multiplicity, in edge-index order.
  std::span<const Incidence> incident(Vertex v) const { return incidence_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const;

  bool is_connected() const;
  bool valid(Vertex v) const { return v >= 0 && v < vertex_count(); }

  void set_label(Vertex v, std::string label);
  // Empty string when unlabeled.
  const std::string& label(Vertex v) const;

  bool operator==(const MultiGraph& other) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
  std::vector<std::string> labels_;
};

MultiGraph make_multigraph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list);

// Two-terminal graph (a, b). Constructors validate a != b and connectivity.
struct Gadget {
  MultiGraph graph;
  Vertex a = 0;
  Vertex b = 1;
};

Gadget make_gadget(MultiGraph graph, Vertex a, Vertex b);

Gadget single_edge_gadget();
Gadget path_gadget();  // a - c - b

// Edge layout of complete_bipartite_dk: vertices a=0, b=1, z1=2, z2=3,
// v_i = 3+i. Edges e1=(a,z1), e1'=(a,z2), e2=(b,z1), e2'=(b,z2), then
// f_i=(v_i,z1), f_i'=(v_i,z2) at indices 4+2(i-1), 5+2(i-1).
namespace dk {
inline constexpr int e1 = 0, e1p = 1, e2 = 2, e2p = 3;
inline constexpr int f(int i) { return 4 + 2 * (i - 1); }
inline constexpr int fp(int i) { return 5 + 2 * (i - 1); }
}  // namespace dk

Gadget complete_bipartite_dk(int k);

// n parallel edges a-c followed by the single edge c-b; vertices a=0, c=1, b=2.
Gadget parallel_gadget_dn(int n);

// Adds a fresh vertex joined to x only; the result has terminals (new, y).
Gadget attach_handle(const MultiGraph& base, Vertex x, Vertex y);

using GadgetSequence = std::function<Gadget(int level)>;

struct TreeLike {
  MultiGraph graph;
  Vertex root = 0;
  // Graph vertex standing in for each tree vertex, breadth-first order.
  std::vector<Vertex> tree_vertices;
  std::vector<int> tree_level;
};

// Depth-L truncation of Gamma_D: every edge of the 3-regular tree between
// levels n-1 and n is replaced by a copy of gadget_seq(n), a -> parent side.
TreeLike tree_like(const GadgetSequence& gadget_seq, int depth);

enum class Adjacency { nearest, star };

// Compressed neighbor lists used for color (site) connectivity.
class NeighborTable {
 public:
  NeighborTable() = default;
  explicit NeighborTable(const MultiGraph& graph);
  NeighborTable(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& pairs);

  int vertex_count() const { return static_cast<int>(offsets_.size()) - 1; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[static_cast<std::size_t>(v)],
            targets_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }
  std::size_t adjacency_count() const { return targets_.size() / 2; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

// Integer points of [0,width] x [0,height]; vertex index y*(width+1)+x.
// The bond graph is always nearest-neighbor; star mode only changes the site
// adjacency used for color clusters (diagonals added).
class LatticeBox {
 public:
  LatticeBox(int width, int height, Adjacency mode);

  int width() const { return width_; }
  int height() const { return height_; }
  Adjacency mode() const { return mode_; }
  Vertex index(int x, int y) const { return y * (width_ + 1) + x; }
  int x_of(Vertex v) const { return v % (width_ + 1); }
  int y_of(Vertex v) const { return v / (width_ + 1); }

  const MultiGraph& graph() const { return graph_; }
  const NeighborTable& sites() const { return sites_; }

 private:
  int width_;
  int height_;
  Adjacency mode_;
  MultiGraph graph_;
  NeighborTable sites_;
};

LatticeBox z2_box(int n, int m, Adjacency mode);

// Plain-text graph file: "vertices N", then "edge u v" lines, then optional
// "terminal a i" / "terminal b j".
struct GraphFile {
  MultiGraph graph;
  std::optional<Vertex> a;
  std::optional<Vertex> b;
};

std::string write_graph(const GraphFile& file);
GraphFile parse_graph(std::string_view text);
GraphFile read_graph_file(const std::string& path);

}  // namespace dac
