#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dac/exact.hpp"
#include "dac/mc.hpp"
#include "dac/tree.hpp"

using namespace dac;

TEST_CASE("Wilson interval") {
  const Interval mid = wilson_interval(50, 100);
  CHECK(mid.lo < 0.5);
  CHECK(mid.hi > 0.5);
  CHECK(std::abs((mid.lo + mid.hi) / 2 - 0.5) < 1e-12);
  const Interval none = wilson_interval(0, 100);
  CHECK(none.lo == 0);
  CHECK(none.hi > 0);
  const Interval all = wilson_interval(100, 100);
  CHECK(all.hi == 1);
  CHECK(all.lo < 1);
}

TEST_CASE("estimate_event basics") {
  const LatticeBox box(2, 6, Adjacency::nearest);
  const McOptions o{1000, 3, 1};
  const EstimatorResult all = estimate_crossing(box, Orientation::vertical, 1, 1, o);
  CHECK(all.estimate == 1);
  CHECK(all.ci_hi == 1);
  CHECK(all.ci_lo <= all.estimate);
  CHECK_THROWS_AS(estimate_crossing(box, Orientation::vertical, 0.5, 0.5, McOptions{99, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_crossing(box, Orientation::vertical, 1.5, 0.5, o), std::invalid_argument);
  CHECK(EstimatorResult::csv_header() == "p,r,L,samples,estimate,ci_lo,ci_hi,seed");
  CHECK(all.csv_row() == "1,1,2,1000,1,0.9961731014,1,3");
}

TEST_CASE("seed determinism and thread independence") {
  const LatticeBox box(4, 12, Adjacency::nearest);
  const McOptions one{10000, 17, 1}, three{10000, 17, 3};
  const EstimatorResult a = estimate_crossing(box, Orientation::vertical, 0.3, 0.6, one);
  const EstimatorResult b = estimate_crossing(box, Orientation::vertical, 0.3, 0.6, one);
  const EstimatorResult c = estimate_crossing(box, Orientation::vertical, 0.3, 0.6, three);
  CHECK(a == b);
  CHECK(a == c);
  const EstimatorResult d = estimate_crossing(box, Orientation::vertical, 0.3, 0.6, McOptions{10000, 18, 1});
  CHECK(d.successes != a.successes);
  CHECK(estimate_one_arm(0.4, 6, one) == estimate_one_arm(0.4, 6, three));
}

TEST_CASE("V_1 at p = 0 agrees with the exact value") {
  const LatticeBox box(1, 3, Adjacency::nearest);
  const int n = box.graph().vertex_count();
  std::vector<Vertex> support(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) support[static_cast<std::size_t>(v)] = v;
  const ColorEvent crossing = ColorEvent::from_predicate(support, [&](std::span<const std::uint8_t> bits) {
    return vertical_crossing(box, SiteConfig(bits.begin(), bits.end()));
  });
  const BiPoly exact = event_prob_poly(box.graph(), crossing).total;
  for (const char* text : {"0.4", "0.6"}) {
    const Rational rq = parse_rational(text);
    const double r = to_double(rq), value = to_double(exact.evaluate(0, rq));
    const EstimatorResult est = estimate_crossing(box, Orientation::vertical, 0, r, McOptions{40000, 5, 1});
    const double sd = std::sqrt(value * (1 - value) / 40000);
    CHECK(std::abs(est.estimate - value) <= 4 * sd);
  }
  // Exact value with p > 0 as well.
  const double value = to_double(exact.evaluate(Rational(1, 2), Rational(1, 2)));
  const EstimatorResult est = estimate_crossing(box, Orientation::vertical, 0.5, 0.5, McOptions{40000, 6, 1});
  CHECK(std::abs(est.estimate - value) <= 4 * std::sqrt(value * (1 - value) / 40000));
}

TEST_CASE("one-arm explorer agrees with the box event") {
  const int n = 3;
  const LatticeBox box(2 * n, 2 * n, Adjacency::nearest);
  const double p = 0.45;
  const EstimatorResult lazy = estimate_one_arm(p, n, McOptions{40000, 8, 1});
  const EstimatorResult full = estimate_event(
      box.graph(), [&](const BondConfig& eta, const SiteConfig&) { return one_arm(box, eta, n); }, p, 0.5,
      McOptions{40000, 9, 1});
  const double sd = std::sqrt(full.estimate * (1 - full.estimate) / 40000);
  CHECK(std::abs(lazy.estimate - full.estimate) <= 4 * std::sqrt(2.0) * sd);
  CHECK(estimate_one_arm(0, 1, McOptions{1000, 1, 1}).successes == 0);
  CHECK(estimate_one_arm(1, 5, McOptions{1000, 1, 1}).successes == 1000);
}

TEST_CASE("one-arm frequency at p = 0.3 decreases in n") {
  double previous = 1;
  for (int n = 1; n <= 6; ++n) {
    const EstimatorResult res = estimate_one_arm(0.3, n, McOptions{20000, 100 + static_cast<std::uint64_t>(n), 1});
    CHECK(res.estimate < previous);
    previous = res.estimate;
  }
}

TEST_CASE("crossing probability is nondecreasing in r") {
  const LatticeBox box(8, 24, Adjacency::nearest);
  EstimatorResult previous = estimate_crossing(box, Orientation::vertical, 0.25, 0.4, McOptions{5000, 1, 1});
  for (double r : {0.5, 0.6, 0.7, 0.8}) {
    const EstimatorResult res = estimate_crossing(box, Orientation::vertical, 0.25, r, McOptions{5000, 1, 1});
    CHECK(res.ci_hi >= previous.ci_lo);
    CHECK(res.estimate >= previous.estimate);
    previous = res;
  }
}

TEST_CASE("rc_estimate brackets the level 1/2") {
  const McOptions o{4000, 1, 1};
  const RcCurvePoint zero = rc_estimate(0, 32, Adjacency::nearest, o);
  CHECK(zero.rc_hi - zero.rc_lo <= rc_bracket_width);
  CHECK(zero.rc_hi > 0.55);
  CHECK(zero.rc_lo < 0.65);
  for (const RcProbe& probe : zero.probes) {
    if (probe.r == zero.rc_lo) CHECK(probe.result.estimate < 0.5);
    if (probe.r == zero.rc_hi) CHECK(probe.result.estimate >= 0.5);
  }
  const RcCurvePoint fifth = rc_estimate(0.2, 32, Adjacency::nearest, o);
  CHECK(fifth.rc_hi <= zero.rc_lo);

  const LatticeBox box(8, 24, Adjacency::nearest);
  CHECK(estimate_crossing(box, Orientation::vertical, 0.3, 1, o).estimate == 1);
  CHECK_THROWS_AS(rc_estimate(0.5, 8, Adjacency::nearest, o), std::invalid_argument);
  CHECK(RcCurvePoint::csv_header() == "p,rc_lo,rc_hi,L");
}

TEST_CASE("duality at small L") {
  const DualityReport report = duality_check(0, 16, McOptions{2000, 2, 1});
  CHECK(report.passed);
  CHECK(std::abs(report.sum - 1) <= 0.05);
  CHECK(report.sum_lo <= report.sum);
  CHECK(report.sum <= report.sum_hi);
  const LatticeBox star(4, 12, Adjacency::star);
  CHECK(estimate_crossing(star, Orientation::vertical, 0.2, 1, McOptions{100, 1, 1}).estimate == 1);
}

TEST_CASE("psi fit") {
  std::vector<int> ns;
  for (int n = 1; n <= 12; ++n) ns.push_back(n);
  const PsiFit low = psi_fit(0.1, ns, McOptions{20000, 1, 1});
  const PsiFit high = psi_fit(0.45, ns, McOptions{20000, 1, 1});
  CHECK(low.positive);
  CHECK(high.positive);
  CHECK(low.slope > high.slope);
  CHECK_FALSE(low.dropped.empty());
  const PsiFit zero = psi_fit(0, {1, 2, 3}, McOptions{100, 1, 1});
  CHECK(zero.infinite);
  for (const PsiPoint& pt : zero.points) CHECK(pt.result.successes == 0);
  CHECK_THROWS_AS(psi_fit(0.2, {3, 2}, McOptions{100, 1, 1}), std::invalid_argument);
}

TEST_CASE("continuity scan controls") {
  const CurveFn smooth = [](double p) { return Interval{0.6 - 0.3 * p, 0.6 - 0.3 * p + 1.0 / 64}; };
  CHECK(continuity_scan({0.25}, smooth).flags.empty());
  CHECK(continuity_scan({0, 0.1, 0.2, 0.3, 0.4}, smooth).flags.empty());

  const CurveFn steep = [](double p) { return Interval{0.9 - 2 * p, 0.9 - 2 * p}; };
  const ScanReport steep_scan = continuity_scan({0, 0.1, 0.2}, steep);
  CHECK(steep_scan.max_gap > 0.05);
  CHECK(steep_scan.flags.empty());

  const CurveFn exact = [](double p) {
    const RationalInterval v = discontinuity_curve_value(parse_rational(std::to_string(p)));
    return Interval{to_double(v.lo), to_double(v.hi)};
  };
  const ScanReport jump = continuity_scan({0, 0.1, 0.2, 0.3, 0.4}, exact);
  REQUIRE(jump.flags.size() == 1);
  CHECK(jump.flags[0].p_left == 0);
  CHECK(jump.flags[0].final_gap > 0.2);
}

TEST_CASE("finite-size criterion") {
  const FiniteSizeReport sure = finite_size_criterion(0, 1, 12, 0.3, McOptions{10000, 1, 1});
  CHECK(sure.one_arm.successes == 0);
  CHECK(sure.crossing.estimate == 1);
  CHECK(sure.satisfied);
  const FiniteSizeReport unsure = finite_size_criterion(0.3, 0.5, 12, 0.3, McOptions{2000, 1, 1});
  CHECK_FALSE(unsure.satisfied);
  CHECK_THROWS_AS(finite_size_criterion(0.3, 0.5, 12, 0, McOptions{2000, 1, 1}), std::invalid_argument);
}
