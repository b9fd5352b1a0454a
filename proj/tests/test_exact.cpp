#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dac/exact.hpp"
#include "dac/tree.hpp"

using namespace dac;

namespace {

const BiPoly P = BiPoly::p();
const BiPoly R = BiPoly::r();
const BiPoly ONE = BiPoly(1);

// Brute-force f over every bond subset and colouring.
Rational brute_force_f(const Gadget& g, const Rational& p, const Rational& r) {
  const int m = g.graph.edge_count(), n = g.graph.vertex_count();
  Rational total = 0;
  for (std::uint64_t s = 0; s < (1ULL << m); ++s) {
    BondConfig eta(static_cast<std::size_t>(m));
    int open = 0;
    for (int e = 0; e < m; ++e) open += eta[static_cast<std::size_t>(e)] = (s >> e) & 1;
    ClusterPartition part = clusters(g.graph, eta);
    const Rational bond = pow(p, static_cast<unsigned long>(open)) * pow(Rational(1 - p), static_cast<unsigned long>(m - open));
    for (std::uint32_t k = 0; k < (1u << n); ++k) {
      // kappa on every vertex; only cluster minima matter.
      SiteConfig kappa(static_cast<std::size_t>(n)), xi(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) kappa[static_cast<std::size_t>(v)] = (k >> v) & 1;
      int black = 0;
      for (int v = 0; v < n; ++v) {
        xi[static_cast<std::size_t>(v)] = kappa[static_cast<std::size_t>(part.min_of(v))];
        black += kappa[static_cast<std::size_t>(v)];
      }
      const Rational colour = pow(r, static_cast<unsigned long>(black)) * pow(Rational(1 - r), static_cast<unsigned long>(n - black));
      if (pivotal_event_holds(g, eta, xi)) total += bond * colour;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("connection polynomials by hand") {
  CHECK(connection_poly(single_edge_gadget()) == P);
  CHECK(connection_poly(path_gadget()) == P * P);
  CHECK(connection_poly(DoubledBridgeFamily::bridge(1)) == DoubledBridgeFamily::bridge_polynomial());
  for (int n = 1; n <= 5; ++n)
    CHECK(connection_poly(parallel_gadget_dn(n)) == P * (ONE - (ONE - P).pow(static_cast<unsigned>(n))));
}

TEST_CASE("pivotality polynomials by hand") {
  const BiPoly edge = P + (ONE - P) * R;
  CHECK(pivotality_poly(single_edge_gadget()) == edge);
  CHECK(pivotality_poly(single_edge_gadget()).to_string() == "r + p - p*r");
  CHECK(pivotality_poly(path_gadget()) == edge * edge);
  for (int n = 1; n <= 4; ++n) CHECK(pivotality_poly(parallel_gadget_dn(n)).at_p(0) == R * R);
}

TEST_CASE("pivotality boundary values: f(p,1) = 1 and f(p,0) = h") {
  for (const Gadget& g : {path_gadget(), complete_bipartite_dk(2), parallel_gadget_dn(3), DoubledBridgeFamily::bridge(1)}) {
    const BiPoly f = pivotality_poly(g);
    CHECK(f.at_r(1) == ONE);
    CHECK(f.at_r(0) == connection_poly(g));
  }
}

TEST_CASE("pivotality polynomial agrees with brute force") {
  const std::vector<std::pair<Rational, Rational>> points{{Rational(1, 3), Rational(2, 3)}, {Rational(1, 5), Rational(1, 2)}};
  const Gadget triangle = make_gadget(make_multigraph(3, {{0, 1}, {1, 2}, {0, 2}}), 0, 1);
  const Gadget reversed = make_gadget(make_multigraph(4, {{3, 2}, {2, 1}, {1, 0}, {2, 0}}), 3, 0);
  for (const Gadget& g : {complete_bipartite_dk(1), triangle, reversed, DoubledBridgeFamily::bridge(1)}) {
    const BiPoly f = pivotality_poly(g);
    for (const auto& [p, r] : points) CHECK(f.evaluate(p, r) == brute_force_f(g, p, r));
  }
}

TEST_CASE("D^k values at the certificate points") {
  for (int k = 1; k <= 5; ++k) {
    const Gadget g = complete_bipartite_dk(k);
    const BiPoly h = connection_poly(g), f = pivotality_poly(g);
    CHECK(h.evaluate_p(Rational(1, 3)) <= Rational(25, 81));
    CHECK(f.evaluate(0, Rational(2, 3)) == Rational(16, 27));
    CHECK(f.evaluate(Rational(1, 3), Rational(2, 3)) >= Rational(130, 243));
  }
}

TEST_CASE("restricted pivotality splits over a bond event") {
  const Gadget g = complete_bipartite_dk(2);
  const auto in_b = [](std::uint64_t s) {
    const std::uint64_t terminal = (1ULL << dk::e1) | (1ULL << dk::e1p) | (1ULL << dk::e2) | (1ULL << dk::e2p);
    return (s & terminal) == 0;
  };
  const BiPoly with = pivotality_poly_restricted(g, in_b);
  const BiPoly without = pivotality_poly_restricted(g, [&](std::uint64_t s) { return !in_b(s); });
  CHECK(with + without == pivotality_poly(g));
  // With the four terminal edges closed, E needs b black and z_1 or z_2 black.
  const Rational p(1, 4), r(2, 3);
  const Rational closed = pow(Rational(3, 4), 4);
  CHECK(with.evaluate(p, r) >= r * r * closed);
  CHECK(with.evaluate(p, r) <= r * (1 - (1 - r) * (1 - r)) * closed);
}

TEST_CASE("event_prob_poly: single vertex, edge pair, decomposition identity") {
  const MultiGraph edge = single_edge_gadget().graph;
  CHECK(event_prob_poly(edge, ColorEvent::all_black({0})).total == R);
  CHECK(event_prob_poly(edge, ColorEvent::all_black({0, 1})).total == P * R + (ONE - P) * R * R);

  const MultiGraph dk2 = complete_bipartite_dk(2).graph;
  const ColorEvent ev = ColorEvent::from_dnf({{{0, true}, {2, true}}, {{1, true}, {3, false}}});
  const EventDecomposition dec = event_prob_poly(dk2, ev);
  BiPoly sum;
  Rational bond_total = 0;
  for (const auto& t : dec.terms) {
    sum += t.bond_part * t.color_part;
    CHECK_FALSE(t.bond_part.depends_on_r());
    CHECK(t.color_part.degree_p() == 0);
    bond_total += t.bond_part.evaluate_p(Rational(1, 3));
  }
  CHECK(sum == dec.total);
  CHECK(bond_total == 1);

  // Fixed p: a polynomial in r of degree at most the number of vertices.
  const MultiGraph path = path_gadget().graph;
  const BiPoly at = event_prob_poly(path, ColorEvent::all_black({0, 2})).total.at_p(Rational(1, 3));
  CHECK(at.degree_r() <= 3);
  CHECK(at.degree_p() == 0);
}

TEST_CASE("site distribution sums to one and matches the edge formula") {
  const MultiGraph edge = single_edge_gadget().graph;
  const Rational p(1, 3), r(3, 4);
  const auto dist = site_distribution(edge, p, r);
  Rational sum = 0;
  for (const auto& q : dist) sum += q;
  CHECK(sum == 1);
  CHECK(dist[3] == p * r + (1 - p) * r * r);
}

TEST_CASE("increasing events are counted by the Dedekind numbers") {
  CHECK(increasing_events(1).size() == 3);
  CHECK(increasing_events(2).size() == 6);
  CHECK(increasing_events(3).size() == 20);
  CHECK(increasing_events(4).size() == 168);
  CHECK_THROWS_AS(increasing_events(5), CapExceeded);
}

TEST_CASE("stochastic domination on small graphs") {
  const MultiGraph doubled = make_multigraph(2, {{0, 1}, {0, 1}});
  const DominationReport half_half = check_domination_exact(doubled, half(), half());
  CHECK(half_half.passed);
  CHECK(half_half.local_passed);
  CHECK(half_half.lower_parameter == Rational(1, 8));

  const MultiGraph path = path_gadget().graph;
  const DominationReport p0 = check_domination_exact(path, 0, Rational(2, 5));
  CHECK(p0.passed);
  CHECK(p0.min_lower_slack == 0);
  CHECK(p0.min_upper_slack == 0);

  const DominationReport r1 = check_domination_exact(path, Rational(1, 3), 1);
  CHECK(r1.passed);
  CHECK(r1.upper_parameter == 1);

  CHECK_THROWS_AS(check_domination_exact(complete_bipartite_dk(1).graph, half(), half()), CapExceeded);
}

TEST_CASE("B_k closed form and enumeration") {
  CHECK(bk_probability(0, 3) == 0);
  CHECK(bk_probability(1, 3) == 0);
  CHECK(bk_probability(Rational(1, 3), 2) == Rational(272, 6561));
  for (int k = 1; k <= 4; ++k)
    for (const Rational& p : {Rational(1, 4), Rational(1, 3)})
      CHECK(bk_probability_enumerated(p, k) == bk_probability(p, k));
}

TEST_CASE("enumeration caps are enforced") {
  ExactLimits small;
  small.max_edges = 5;
  CHECK_THROWS_AS(connection_poly(complete_bipartite_dk(1), small), CapExceeded);
  CHECK_THROWS_AS(pivotality_poly(complete_bipartite_dk(11)), CapExceeded);
}

TEST_CASE("ratio reduces and certificates accept any grid spelling") {
  CHECK(ratio(2, 10) == Rational(1, 5));
  CHECK(ratio(-4, 8).get_den() == 2);
  CHECK_THROWS_AS(ratio(1, 0), std::invalid_argument);
  std::vector<Rational> grid;
  for (int i = 0; i <= 5; ++i) grid.push_back(ratio(i, 10));
  CHECK(discontinuity_family_certificate(grid, 4).passed);
}
