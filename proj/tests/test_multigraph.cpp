#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dac/multigraph.hpp"

using namespace dac;

namespace {

int degree_sum(const MultiGraph& g) {
  int total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) total += g.degree(v);
  return total;
}

}  // namespace

TEST_CASE("make_multigraph counts multiplicity and rejects self-loops") {
  const MultiGraph single = make_multigraph(2, {{0, 1}});
  CHECK(single.max_degree() == 1);
  const MultiGraph doubled = make_multigraph(2, {{0, 1}, {0, 1}});
  CHECK(doubled.degree(0) == 2);
  CHECK(doubled.edge_count() == 2);
  CHECK_THROWS_AS(make_multigraph(3, {{0, 0}}), GraphError);
  CHECK_THROWS_AS(make_multigraph(2, {{0, 2}}), GraphError);
}

TEST_CASE("degree sum is twice the edge count") {
  for (int k = 1; k <= 5; ++k) {
    const Gadget g = complete_bipartite_dk(k);
    CHECK(degree_sum(g.graph) == 2 * g.graph.edge_count());
  }
  const MultiGraph tri = make_multigraph(3, {{0, 1}, {1, 2}, {0, 2}, {0, 1}});
  CHECK(degree_sum(tri) == 8);
}

TEST_CASE("gadgets validate terminals and connectivity") {
  CHECK_THROWS_AS(make_gadget(make_multigraph(2, {{0, 1}}), 0, 0), GraphError);
  CHECK_THROWS_AS(make_gadget(make_multigraph(3, {{0, 1}}), 0, 1), GraphError);
  CHECK_THROWS_AS(make_gadget(make_multigraph(2, {{0, 1}}), 0, 5), GraphError);
}

TEST_CASE("complete_bipartite_dk layout") {
  const Gadget d1 = complete_bipartite_dk(1);
  CHECK(d1.graph.edge_count() == 6);
  CHECK(d1.graph.vertex_count() == 5);
  const Gadget d2 = complete_bipartite_dk(2);
  CHECK(d2.graph.degree(2) == 4);
  CHECK(d2.graph.degree(3) == 4);
  CHECK(d2.graph.edge(dk::e1).u == d2.a);
  CHECK(d2.graph.edge(dk::e2p).u == d2.b);
  CHECK(d2.graph.edge(dk::f(2)).u == 5);
  CHECK(d2.graph.edge(dk::fp(2)).v == 3);
  for (int k = 1; k <= 5; ++k) CHECK(complete_bipartite_dk(k).graph.edge_count() == 2 * (k + 2));
  CHECK_THROWS_AS(complete_bipartite_dk(0), GraphError);
}

TEST_CASE("parallel_gadget_dn layout") {
  const Gadget d1 = parallel_gadget_dn(1);
  CHECK(d1.graph.edge_count() == 2);
  CHECK(d1.graph.degree(1) == 2);
  const Gadget d3 = parallel_gadget_dn(3);
  CHECK(d3.graph.degree(d3.a) == 3);
  CHECK(d3.graph.degree(1) == 4);
  CHECK(d3.graph.degree(d3.b) == 1);
}

TEST_CASE("attach_handle adds a degree-one terminal") {
  const Gadget base = single_edge_gadget();
  const Gadget h = attach_handle(base.graph, base.a, base.b);
  CHECK(h.graph.vertex_count() == 3);
  CHECK(h.graph.degree(h.a) == 1);
  CHECK(h.b == base.b);
  const Gadget big = attach_handle(complete_bipartite_dk(3).graph, 0, 1);
  CHECK(big.graph.degree(big.a) == 1);
}

TEST_CASE("tree_like with single-edge gadgets is the truncated 3-regular tree") {
  const auto edge = [](int) { return single_edge_gadget(); };
  const TreeLike t1 = tree_like(edge, 1);
  CHECK(t1.graph.edge_count() == 3);
  CHECK(t1.graph.vertex_count() == 4);
  CHECK(t1.graph.degree(t1.root) == 3);
  const TreeLike t2 = tree_like(edge, 2);
  CHECK(t2.graph.edge_count() == 9);
  CHECK(t2.graph.vertex_count() == 10);
  CHECK(t2.graph.max_degree() == 3);
  CHECK(t2.tree_vertices.size() == 10);
  CHECK(std::count(t2.tree_level.begin(), t2.tree_level.end(), 2) == 6);
}

TEST_CASE("tree_like uses the gadget of each level") {
  const TreeLike t = tree_like([](int n) { return parallel_gadget_dn(n); }, 2);
  // level 1: three copies of D_1 (2 edges), level 2: six copies of D_2 (3 edges)
  CHECK(t.graph.edge_count() == 3 * 2 + 6 * 3);
  CHECK(t.graph.vertex_count() == 1 + 3 * 2 + 6 * 2);
  CHECK(t.graph.is_connected());
}

TEST_CASE("lattice boxes") {
  const LatticeBox nn(1, 1, Adjacency::nearest);
  CHECK(nn.graph().vertex_count() == 4);
  CHECK(nn.graph().edge_count() == 4);
  CHECK(nn.sites().adjacency_count() == 4);
  const LatticeBox star = z2_box(1, 1, Adjacency::star);
  CHECK(star.graph().edge_count() == 4);
  CHECK(star.sites().adjacency_count() == 6);
  const LatticeBox v2 = z2_box(2, 6, Adjacency::nearest);
  CHECK(v2.graph().vertex_count() == 3 * 7);
  CHECK(v2.graph().edge_count() == 2 * 7 + 3 * 6);
  CHECK(v2.index(2, 6) == 20);
  CHECK(v2.x_of(20) == 2);
  CHECK(v2.y_of(20) == 6);
}

TEST_CASE("graph files round trip and report errors") {
  GraphFile file;
  file.graph = complete_bipartite_dk(2).graph;
  file.a = 0;
  file.b = 1;
  const GraphFile back = parse_graph(write_graph(file));
  CHECK(back.graph == file.graph);
  CHECK(back.a == file.a);
  CHECK(back.b == file.b);

  const GraphFile commented = parse_graph("# header\nvertices 3\nedge 0 1 # first\nedge 1 2\n");
  CHECK(commented.graph.edge_count() == 2);
  CHECK_FALSE(commented.a.has_value());

  CHECK_THROWS_AS(parse_graph("edge 0 1\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("vertices 2\nedge 0 0\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("vertices 2\nedge 0\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("vertices 2\nloop 0 1\n"), GraphError);
  CHECK_THROWS_AS(parse_graph("vertices 2\nterminal c 0\n"), GraphError);
  CHECK_THROWS_AS(read_graph_file("/nonexistent/graph.txt"), GraphError);
}
