#include "dac/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace dac {

MultiGraph::MultiGraph(int vertex_count) {
  if (vertex_count < 0) throw GraphError("negative vertex count");
  incidence_.resize(static_cast<std::size_t>(vertex_count));
  labels_.resize(static_cast<std::size_t>(vertex_count));
}

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges) : MultiGraph(vertex_count) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

Vertex MultiGraph::add_vertex(std::string label) {
  incidence_.emplace_back();
  labels_.push_back(std::move(label));
  return vertex_count() - 1;
}

int MultiGraph::add_edge(Vertex u, Vertex v) {
  if (!valid(u) || !valid(v))
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") has endpoint out of range");
  if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
  const int index = edge_count();
  edges_.push_back({u, v});
  incidence_[static_cast<std::size_t>(u)].push_back({index, v});
  incidence_[static_cast<std::size_t>(v)].push_back({index, u});
  return index;
}

int MultiGraph::max_degree() const {
  int best = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

bool MultiGraph::is_connected() const {
  if (vertex_count() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(vertex_count()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : incident(v)) {
      if (!seen[static_cast<std::size_t>(inc.other)]) {
        seen[static_cast<std::size_t>(inc.other)] = 1;
        ++reached;
        stack.push_back(inc.other);
      }
    }
  }
  return reached == vertex_count();
}

void MultiGraph::set_label(Vertex v, std::string label) {
  if (!valid(v)) throw GraphError("label for invalid vertex");
  labels_[static_cast<std::size_t>(v)] = std::move(label);
}

const std::string& MultiGraph::label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }

bool MultiGraph::operator==(const MultiGraph& other) const {
  if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count()) return false;
  for (int i = 0; i < edge_count(); ++i) {
    if (edges_[i].u != other.edges_[i].u || edges_[i].v != other.edges_[i].v) return false;
  }
  return true;
}

MultiGraph make_multigraph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list) {
  MultiGraph g(vertex_count);
  for (auto [u, v] : edge_list) g.add_edge(u, v);
  return g;
}

Gadget make_gadget(MultiGraph graph, Vertex a, Vertex b) {
  if (!graph.valid(a) || !graph.valid(b)) throw GraphError("gadget terminal out of range");
  if (a == b) throw GraphError("gadget terminals must be distinct");
  if (!graph.is_connected()) throw GraphError("gadget graph must be connected");
  return Gadget{std::move(graph), a, b};
}

Gadget single_edge_gadget() {
  MultiGraph g(2);
  g.set_label(0, "a");
  g.set_label(1, "b");
  g.add_edge(0, 1);
  return make_gadget(std::move(g), 0, 1);
}

Gadget path_gadget() {
  MultiGraph g(3);
  g.set_label(0, "a");
  g.set_label(1, "c");
  g.set_label(2, "b");
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return make_gadget(std::move(g), 0, 2);
}

Gadget complete_bipartite_dk(int k) {
  if (k < 1) throw GraphError("D^k requires k >= 1");
  MultiGraph g(4 + k);
  g.set_label(0, "a");
  g.set_label(1, "b");
  g.set_label(2, "z1");
  g.set_label(3, "z2");
  for (int i = 1; i <= k; ++i) g.set_label(3 + i, "v" + std::to_string(i));
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  for (int i = 1; i <= k; ++i) {
    g.add_edge(3 + i, 2);
    g.add_edge(3 + i, 3);
  }
  return make_gadget(std::move(g), 0, 1);
}

Gadget parallel_gadget_dn(int n) {
  if (n < 1) throw GraphError("D_n requires n >= 1");
  MultiGraph g(3);
  g.set_label(0, "a");
  g.set_label(1, "c");
  g.set_label(2, "b");
  for (int i = 0; i < n; ++i) g.add_edge(0, 1);
  g.add_edge(1, 2);
  return make_gadget(std::move(g), 0, 2);
}

Gadget attach_handle(const MultiGraph& base, Vertex x, Vertex y) {
  if (!base.valid(x) || !base.valid(y)) throw GraphError("handle terminal out of range");
  if (x == y) throw GraphError("handle terminals must be distinct");
  MultiGraph g = base;
  Vertex a = g.add_vertex("a");
  g.add_edge(a, x);
  return make_gadget(std::move(g), a, y);
}

TreeLike tree_like(const GadgetSequence& gadget_seq, int depth) {
  if (depth < 1) throw GraphError("tree-like graph needs depth >= 1");

  std::map<int, Gadget> cache;
  auto gadget_at = [&](int level) -> const Gadget& {
    auto it = cache.find(level);
    if (it == cache.end()) {
      Gadget g = gadget_seq(level);
      g = make_gadget(std::move(g.graph), g.a, g.b);
      it = cache.emplace(level, std::move(g)).first;
    }
    return it->second;
  };

  TreeLike out;
  out.root = out.graph.add_vertex("rho");
  out.tree_vertices.push_back(out.root);
  out.tree_level.push_back(0);

  struct Pending {
    Vertex vertex;
    int level;
  };
  std::queue<Pending> frontier;
  frontier.push({out.root, 0});
  while (!frontier.empty()) {
    const Pending parent = frontier.front();
    frontier.pop();
    if (parent.level == depth) continue;
    const int children = parent.level == 0 ? 3 : 2;
    const int level = parent.level + 1;
    const Gadget& gadget = gadget_at(level);
    for (int c = 0; c < children; ++c) {
      std::vector<Vertex> local_to_global(static_cast<std::size_t>(gadget.graph.vertex_count()), -1);
      local_to_global[static_cast<std::size_t>(gadget.a)] = parent.vertex;
      for (Vertex v = 0; v < gadget.graph.vertex_count(); ++v) {
        if (v == gadget.a) continue;
        local_to_global[static_cast<std::size_t>(v)] = out.graph.add_vertex();
      }
      for (const Edge& e : gadget.graph.edges()) {
        out.graph.add_edge(local_to_global[static_cast<std::size_t>(e.u)],
                           local_to_global[static_cast<std::size_t>(e.v)]);
      }
      const Vertex child = local_to_global[static_cast<std::size_t>(gadget.b)];
      out.tree_vertices.push_back(child);
      out.tree_level.push_back(level);
      frontier.push({child, level});
    }
  }
  return out;
}

NeighborTable::NeighborTable(const MultiGraph& graph) {
  offsets_.assign(static_cast<std::size_t>(graph.vertex_count()) + 1, 0);
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] +
                                                 static_cast<std::size_t>(graph.degree(v));
  }
  targets_.reserve(offsets_.back());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    for (const Incidence& inc : graph.incident(v)) targets_.push_back(inc.other);
  }
}

NeighborTable::NeighborTable(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<std::vector<Vertex>> lists(static_cast<std::size_t>(vertex_count));
  for (auto [u, v] : pairs) {
    lists[static_cast<std::size_t>(u)].push_back(v);
    lists[static_cast<std::size_t>(v)].push_back(u);
  }
  offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (std::size_t v = 0; v < lists.size(); ++v) {
    offsets_[v + 1] = offsets_[v] + lists[v].size();
    targets_.insert(targets_.end(), lists[v].begin(), lists[v].end());
  }
}

LatticeBox::LatticeBox(int width, int height, Adjacency mode)
    : width_(width), height_(height), mode_(mode), graph_((width + 1) * (height + 1)) {
  if (width < 1 || height < 1) throw GraphError("lattice box needs positive dimensions");
  for (int y = 0; y <= height_; ++y)
    for (int x = 0; x < width_; ++x) graph_.add_edge(index(x, y), index(x + 1, y));
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x <= width_; ++x) graph_.add_edge(index(x, y), index(x, y + 1));

  if (mode_ == Adjacency::nearest) {
    sites_ = NeighborTable(graph_);
  } else {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const Edge& e : graph_.edges()) pairs.emplace_back(e.u, e.v);
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) {
        pairs.emplace_back(index(x, y), index(x + 1, y + 1));
        pairs.emplace_back(index(x + 1, y), index(x, y + 1));
      }
    }
    sites_ = NeighborTable(graph_.vertex_count(), pairs);
  }
}

LatticeBox z2_box(int n, int m, Adjacency mode) { return LatticeBox(n, m, mode); }

std::string write_graph(const GraphFile& file) {
  std::ostringstream out;
  out << "vertices " << file.graph.vertex_count() << '\n';
  for (const Edge& e : file.graph.edges()) out << "edge " << e.u << ' ' << e.v << '\n';
  if (file.a) out << "terminal a " << *file.a << '\n';
  if (file.b) out << "terminal b " << *file.b << '\n';
  return out.str();
}

GraphFile parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  GraphFile out;
  bool have_header = false;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw GraphError("graph file line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    if (keyword == "vertices") {
      int n = -1;
      if (have_header) fail("duplicate 'vertices' line");
      if (!(fields >> n) || n < 0) fail("bad vertex count");
      out.graph = MultiGraph(n);
      have_header = true;
    } else if (keyword == "edge") {
      if (!have_header) fail("'edge' before 'vertices'");
      int u = -1, v = -1;
      if (!(fields >> u >> v)) fail("malformed edge");
      out.graph.add_edge(u, v);
    } else if (keyword == "terminal") {
      if (!have_header) fail("'terminal' before 'vertices'");
      std::string which;
      int v = -1;
      if (!(fields >> which >> v) || !out.graph.valid(v)) fail("malformed terminal");
      if (which == "a") out.a = v;
      else if (which == "b") out.b = v;
      else fail("terminal must be 'a' or 'b'");
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
    std::string extra;
    if (fields >> extra) fail("trailing tokens");
  }
  if (!have_header) throw GraphError("graph file has no 'vertices' line");
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

}  // namespace dac
