#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dac/tree.hpp"

using namespace dac;

namespace {

const BiPoly P = BiPoly::p();
const BiPoly R = BiPoly::r();

}  // namespace

TEST_CASE("pc_root") {
  const RationalInterval edge = pc_root(P);
  CHECK(edge.contains(half()));
  CHECK(edge.width() <= root_tolerance());

  const RationalInterval path = pc_root(P * P);
  CHECK(path.lo * path.lo <= half());
  CHECK(half() <= path.hi * path.hi);
  CHECK(path.width() <= root_tolerance());

  const RationalInterval dk3 = pc_root(connection_poly(complete_bipartite_dk(3)));
  CHECK(dk3.lo > Rational(1, 3));

  CHECK_THROWS_AS(pc_root(P * Rational(1, 4)), NoCrossing);
  CHECK_THROWS_AS(pc_root(P * R), std::invalid_argument);
}

TEST_CASE("rc_root") {
  const BiPoly edge = P + (BiPoly(1) - P) * R;
  for (int i = 0; i < 8; ++i) {
    const Rational p(i, 16);
    const RcRoot root = rc_root(edge, p);
    CHECK(root.kind == RootKind::interior);
    CHECK(root.bracket.contains((half() - p) / (1 - p)));
  }
  const RcRoot at_half = rc_root(edge, half());
  CHECK(at_half.kind == RootKind::zero);
  CHECK(at_half.tie);
  CHECK(rc_root(edge, Rational(3, 4)).kind == RootKind::zero);
  CHECK_FALSE(rc_root(edge, Rational(3, 4)).tie);
  CHECK(rc_root(R * Rational(1, 3), 0).kind == RootKind::one);

  const BiPoly f = pivotality_poly(complete_bipartite_dk(2));
  CHECK(rc_root(f, 0).bracket.hi < Rational(2, 3));
  CHECK(rc_root(f, Rational(1, 3)).bracket.hi < Rational(2, 3));

  CHECK_THROWS_AS(rc_root(BiPoly(1) - R, 0), std::domain_error);
}

TEST_CASE("fact (4) search") {
  const Fact4Choice found = search_fact4();
  REQUIRE(found.found);
  CHECK(found.bk > Rational(17, 18));
  CHECK(found.bound < half());
  CHECK(found.p0 < Rational(1, 3));
  CHECK(found.bk == bk_probability(found.p0, found.k));

  // sup_k P(B_k) = (1-p)^4 = 81/256 at p0 = 1/4, below 17/18.
  const Fact4Choice refused = search_fact4(Rational(1, 4));
  CHECK_FALSE(refused.found);
  CHECK(refused.best_bk == pow(Rational(3, 4), 4));
  CHECK_THROWS_AS(search_fact4(Rational(1, 3)), std::invalid_argument);

  const Fact4Choice fixed = search_fact4(Rational(1, 128), 2);
  CHECK_FALSE(fixed.found);
}

TEST_CASE("non-monotonicity bundle") {
  for (int k : {1, 3, 5}) {
    const NonmonotonicityBundle bundle = nonmonotonicity_certificate(k);
    REQUIRE(bundle.facts.size() == 4);
    for (const Certificate& c : bundle.facts) CHECK(c.status == Status::pass);
    CHECK(bundle.conclusion);
  }
  // Beyond the enumeration cap, facts (1)-(3) rest on the k-uniform bounds.
  const NonmonotonicityBundle large = nonmonotonicity_certificate(50);
  CHECK(large.conclusion);
  CHECK_FALSE(large.facts[0].notes.empty());
}

TEST_CASE("discontinuity family") {
  CHECK(discontinuity_curve_value(Rational(1, 4)).lo == Rational(1, 3));
  const RationalInterval zero = discontinuity_curve_value(0);
  CHECK(zero.lo * zero.lo <= half());
  CHECK(half() <= zero.hi * zero.hi);

  const std::vector<Rational> grid{0, Rational(1, 10), Rational(1, 4), Rational(2, 5), half()};
  const DiscontinuityReport report = discontinuity_family_certificate(grid, 6);
  CHECK(report.passed);
  REQUIRE(report.curve.points.size() == grid.size());
  CHECK(report.curve.points[2].r.lo == Rational(1, 3));
  const double expected = std::sqrt(0.5) - 0.5;
  CHECK(std::abs(to_double(report.jump.lo) - expected) < 1e-9);
  CHECK(report.curve.to_csv().rfind("p,r_lo,r_hi,method\n", 0) == 0);

  // p -> 0+ approaches 1/2, not 1/sqrt(2).
  const Rational tiny(1, 1000000);
  CHECK(discontinuity_curve_value(tiny).lo < half());
  CHECK(discontinuity_curve_value(tiny).lo > Rational(49, 100));
}

TEST_CASE("doubled bridge family") {
  const DoubledBridgeFamily family;
  const BiPoly g = DoubledBridgeFamily::bridge_polynomial();
  CHECK(g.evaluate_p(half()) == half());
  CHECK(g.derivative_p().evaluate_p(half()) == Rational(13, 8));
  CHECK(DoubledBridgeFamily::bridge(2).graph.edge_count() == 25);
  CHECK(family.instance(1).graph.edge_count() == 10);
  const BiPoly doubled = BiPoly(1) - (BiPoly(1) - g).pow(2);
  CHECK(connection_poly(family.instance(1)) == doubled);
  CHECK(family.connection(3, half()) == Rational(3, 4));
  CHECK(family.connection(3, Rational(2, 5)) < family.connection(2, Rational(2, 5)));
}

TEST_CASE("quadratic surds") {
  const QuadraticSurd r0{Rational(-1, 2), half()};
  const QuadraticSurd prod = r0 * (QuadraticSurd{1, 0} + r0);
  CHECK(prod.a == 1);
  CHECK(prod.b == 0);
  CHECK(r0.sign() == 1);
  CHECK(QuadraticSurd{3, -1}.sign() == 1);
  CHECK(QuadraticSurd{2, -1}.sign() == -1);
  CHECK(QuadraticSurd{-3, 1}.sign() == -1);
  CHECK(QuadraticSurd{0, 0}.sign() == 0);
  CHECK(std::abs(r0.to_double() - (std::sqrt(5.0) - 1) / 2) < 1e-12);
}

TEST_CASE("bounded-degree certificate") {
  const DoubledBridgeFamily family;
  for (int delta : {3, 4, 5}) {
    const BoundedDegreeReport report = bounded_degree_certificate(family, delta, 3);
    CHECK(report.status == Status::pass);
    REQUIRE(report.p_prime.has_value());
    const Rational pp = *report.p_prime;
    CHECK(pp > half());
    CHECK(pp * (1 - pow(Rational(1 - pp), static_cast<unsigned long>(delta))) < half());
  }
}

TEST_CASE("rcbounds on tree families") {
  const std::vector<Rational> grid{0, Rational(1, 10), Rational(1, 5), Rational(3, 10)};
  CHECK(rcbounds_check("edge-gadget", grid).status == Status::pass);
  CHECK(rcbounds_check("path-gadget", grid).status == Status::pass);
  CHECK(rcbounds_check("dk-2", grid).status == Status::pass);
  CHECK_THROWS_AS(rcbounds_check("nope", grid), std::invalid_argument);
}

TEST_CASE("reports and overall status") {
  Certificate ok, bad, unsure;
  ok.status = Status::pass;
  bad.status = Status::fail;
  unsure.status = Status::inconclusive;
  CHECK(overall_status({ok, ok}) == Status::pass);
  CHECK(overall_status({ok, unsure}) == Status::inconclusive);
  CHECK(overall_status({unsure, bad}) == Status::fail);
  ok.claim = "x";
  ok.evidence.push_back({"v", Rational(1, 3), "< 1/2"});
  const std::string text = format_report({ok});
  CHECK(text.find("v = 1/3") != std::string::npos);
  CHECK(text.find("status: PASS") != std::string::npos);
}
