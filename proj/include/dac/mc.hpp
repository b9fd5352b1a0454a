#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dac/core.hpp"
#include "dac/multigraph.hpp"

namespace dac {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Wilson score interval at z = 1.96.
Interval wilson_interval(std::uint64_t successes, std::uint64_t samples);

struct EstimatorResult {
  double estimate = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  std::uint64_t successes = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double p = 0;
  double r = 0;
  int L = 0;

  static std::string csv_header();  // "p,r,L,samples,estimate,ci_lo,ci_hi,seed"
  std::string csv_row() const;
  bool operator==(const EstimatorResult&) const = default;
};

struct McOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
};

// Samples are split into fixed chunks; chunk c draws from RngStream(seed, c),
// so results do not depend on the thread count.
inline constexpr std::uint64_t chunk_size = 4096;

using EventFn = std::function<bool(const BondConfig& eta, const SiteConfig& xi)>;

// Frequency of event under mu_{p,r} on graph. Requires samples >= 100.
EstimatorResult estimate_event(const MultiGraph& graph, const EventFn& event, double p, double r,
                               const McOptions& options, int L = 0);

// Black crossing of the box in the given orientation under its site adjacency.
EstimatorResult estimate_crossing(const LatticeBox& box, Orientation orientation, double p, double r,
                                  const McOptions& options);

// M_n: open path from the origin of Z^2 to graph distance n. Bonds are drawn
// lazily inside the ball of radius n, which contains every such path up to
// its first visit to the sphere.
EstimatorResult estimate_one_arm(double p, int n, const McOptions& options);

struct RcProbe {
  double r;
  EstimatorResult result;
};

struct RcCurvePoint {
  double p = 0;
  double rc_lo = 0;
  double rc_hi = 1;
  int L = 0;
  std::uint64_t samples = 0;
  std::vector<RcProbe> probes;

  double estimate() const { return (rc_lo + rc_hi) / 2; }
  static std::string csv_header();  // "p,rc_lo,rc_hi,L"
  std::string csv_row() const;
};

inline constexpr double rc_bracket_width = 1.0 / 64;

// Bisection in r on the crossing probability of [0,L] x [0,3L] at level 1/2
// until the bracket is at most 1/64 wide. Requires 0 <= p < 1/2.
RcCurvePoint rc_estimate(double p, int L, Adjacency mode, const McOptions& options,
                         Orientation orientation = Orientation::vertical);

struct DualityReport {
  RcCurvePoint nearest;  // vertical nn crossing
  RcCurvePoint star;     // horizontal star crossing
  double sum = 0;        // midpoint sum
  double sum_lo = 0;
  double sum_hi = 0;
  double tolerance = 0.05;
  bool passed = false;

  static std::string csv_header();  // "p,L,rc,rc_star,sum,sum_lo,sum_hi,passed"
  std::string csv_row() const;
};

// r_c from the nn vertical crossing and r_c* from the star crossing in the
// dual (horizontal) direction on the same box. A vertical nn black crossing
// fails exactly when a horizontal star white crossing exists, so the two
// estimates target values summing to 1.
DualityReport duality_check(double p, int L, const McOptions& options, double tolerance = 0.05);

struct PsiPoint {
  int n;
  EstimatorResult result;
};

struct PsiFit {
  double p = 0;
  std::vector<PsiPoint> points;
  std::vector<int> dropped;  // n with frequency 0 or 1
  double slope = 0;          // psi estimate
  double intercept = 0;
  double stderr_slope = 0;
  bool positive = false;  // slope - 1.645 stderr > 0
  bool infinite = false;  // p = 0: no open edges, M_n impossible

  static std::string csv_header();  // "p,n_used,psi,stderr,lower95,positive"
  std::string csv_row() const;
};

// Weighted least squares fit of -log frequency(M_n) against n; weights are the
// inverse delta-method variances samples * f / (1 - f). Each n uses its own
// substream of the seed.
PsiFit psi_fit(double p, const std::vector<int>& n_list, const McOptions& options);

struct ScanFlag {
  double p_left;
  double p_right;
  double initial_gap;
  double final_gap;
};

struct ScanReport {
  std::vector<RcCurvePoint> curve;
  double max_gap = 0;  // largest gap between adjacent brackets
  std::vector<ScanFlag> flags;
};

using CurveFn = std::function<Interval(double p)>;

// Adjacent brackets separated by more than tolerance are refined by bisecting
// the p interval `depth` times, following the largest sub-gap. A jump is
// flagged when the final gap still exceeds the tolerance and is at least half
// the initial one; a continuous curve roughly halves its gap per level.
ScanReport continuity_scan(const std::vector<double>& grid, const CurveFn& curve, double tolerance = 0.05,
                           int depth = 3);

// MC curve for continuity_scan.
CurveFn mc_rc_curve(int L, const McOptions& options);

struct FiniteSizeReport {
  EstimatorResult one_arm;   // nu_p(M_{floor(L/3)})
  EstimatorResult crossing;  // P_{p,a}(V_L)
  double volume_term = 0;    // (3L+1)(L+1) * one_arm.ci_hi
  bool satisfied = false;
};

// (3L+1)(L+1) nu_p(M_{floor(L/3)}) <= gamma and P_{p,a}(V_L) >= 1 - gamma,
// checked on the upper and lower confidence limits respectively. gamma is
// user supplied.
FiniteSizeReport finite_size_criterion(double p, double a, int L, double gamma, const McOptions& options);

}  // namespace dac
