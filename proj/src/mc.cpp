#include "dac/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace dac {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Runs work(chunk) for every chunk and returns the per-chunk tallies in
// chunk order.
std::vector<std::uint64_t> run_chunks(std::uint64_t chunks, int threads,
                                      const std::function<std::uint64_t(std::uint64_t)>& work) {
  std::vector<std::uint64_t> tallies(chunks, 0);
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) tallies[c] = work(c);
    return tallies;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (std::uint64_t t = 0; t < std::min(workers, chunks); ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks && !failed; c = next++) {
        try {
          tallies[c] = work(c);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return tallies;
}

EstimatorResult make_result(std::uint64_t successes, const McOptions& options, double p, double r, int L) {
  EstimatorResult out;
  out.successes = successes;
  out.samples = options.samples;
  out.seed = options.seed;
  out.p = p;
  out.r = r;
  out.L = L;
  out.estimate = static_cast<double>(successes) / static_cast<double>(options.samples);
  const Interval ci = wilson_interval(successes, options.samples);
  out.ci_lo = std::min(ci.lo, out.estimate);
  out.ci_hi = std::max(ci.hi, out.estimate);
  return out;
}

void check_samples(const McOptions& options) {
  if (options.samples < 100) throw std::invalid_argument("at least 100 samples are required");
}

std::uint64_t chunk_count(std::uint64_t samples) { return (samples + chunk_size - 1) / chunk_size; }

std::uint64_t chunk_length(std::uint64_t samples, std::uint64_t c) {
  return std::min(chunk_size, samples - c * chunk_size);
}

class OneArmExplorer {
 public:
  explicit OneArmExplorer(int n) : n_(n), side_(2 * n + 1), stamp_(static_cast<std::size_t>(side_ * side_), 0) {}

  bool run(double p, RngStream& rng) {
    if (n_ == 0) return true;
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    stack_.clear();
    visit(0, 0);
    static constexpr int dx[] = {1, -1, 0, 0};
    static constexpr int dy[] = {0, 0, 1, -1};
    while (!stack_.empty()) {
      auto [x, y] = stack_.back();
      stack_.pop_back();
      for (int d = 0; d < 4; ++d) {
        const int nx = x + dx[d], ny = y + dy[d];
        if (std::abs(nx) + std::abs(ny) > n_ || visited(nx, ny)) continue;
        if (!rng.bernoulli(p)) continue;
        if (std::abs(nx) + std::abs(ny) == n_) return true;
        visit(nx, ny);
      }
    }
    return false;
  }

 private:
  std::size_t slot(int x, int y) const { return static_cast<std::size_t>((y + n_) * side_ + (x + n_)); }
  bool visited(int x, int y) const { return stamp_[slot(x, y)] == generation_; }
  void visit(int x, int y) {
    stamp_[slot(x, y)] = generation_;
    stack_.emplace_back(x, y);
  }

  int n_;
  int side_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::vector<std::pair<int, int>> stack_;
};

}  // namespace

Interval wilson_interval(std::uint64_t successes, std::uint64_t samples) {
  if (samples == 0) return {0, 1};
  const double z = 1.96;
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (phat + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.lo = 0;
  if (successes == samples) out.hi = 1;
  return out;
}

std::string EstimatorResult::csv_header() { return "p,r,L,samples,estimate,ci_lo,ci_hi,seed"; }

std::string EstimatorResult::csv_row() const {
  return fmt(p) + ',' + fmt(r) + ',' + std::to_string(L) + ',' + std::to_string(samples) + ',' + fmt(estimate) +
         ',' + fmt(ci_lo) + ',' + fmt(ci_hi) + ',' + std::to_string(seed);
}

EstimatorResult estimate_event(const MultiGraph& graph, const EventFn& event, double p, double r,
                               const McOptions& options, int L) {
  check_probability(p, "p");
  check_probability(r, "r");
  check_samples(options);
  const auto tallies = run_chunks(chunk_count(options.samples), options.threads, [&](std::uint64_t c) {
    RngStream rng(options.seed, c);
    DacSampler sampler(graph, p, r);
    std::uint64_t hits = 0;
    const std::uint64_t len = chunk_length(options.samples, c);
    for (std::uint64_t i = 0; i < len; ++i) {
      sampler.sample(rng);
      if (event(sampler.eta(), sampler.xi())) ++hits;
    }
    return hits;
  });
  std::uint64_t total = 0;
  for (auto t : tallies) total += t;
  return make_result(total, options, p, r, L);
}

EstimatorResult estimate_crossing(const LatticeBox& box, Orientation orientation, double p, double r,
                                  const McOptions& options) {
  return estimate_event(
      box.graph(), [&](const BondConfig&, const SiteConfig& xi) { return box_crossing(box, xi, orientation); }, p, r,
      options, box.width());
}

EstimatorResult estimate_one_arm(double p, int n, const McOptions& options) {
  check_probability(p, "p");
  check_samples(options);
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const auto tallies = run_chunks(chunk_count(options.samples), options.threads, [&](std::uint64_t c) {
    RngStream rng(options.seed, c);
    OneArmExplorer explorer(n);
    std::uint64_t hits = 0;
    const std::uint64_t len = chunk_length(options.samples, c);
    for (std::uint64_t i = 0; i < len; ++i)
      if (explorer.run(p, rng)) ++hits;
    return hits;
  });
  std::uint64_t total = 0;
  for (auto t : tallies) total += t;
  return make_result(total, options, p, 0, n);
}

std::string RcCurvePoint::csv_header() { return "p,rc_lo,rc_hi,L"; }

std::string RcCurvePoint::csv_row() const {
  return fmt(p) + ',' + fmt(rc_lo) + ',' + fmt(rc_hi) + ',' + std::to_string(L);
}

RcCurvePoint rc_estimate(double p, int L, Adjacency mode, const McOptions& options, Orientation orientation) {
  if (!(p >= 0 && p < 0.5)) throw std::invalid_argument("rc_estimate requires 0 <= p < 1/2");
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  check_samples(options);
  const LatticeBox box(L, 3 * L, mode);
  RcCurvePoint out;
  out.p = p;
  out.L = L;
  out.samples = options.samples;
  // r = 0 never crosses and r = 1 always does, so [0,1] brackets the level.
  double lo = 0, hi = 1;
  std::uint64_t probe = 0;
  while (hi - lo > rc_bracket_width) {
    const double mid = (lo + hi) / 2;
    McOptions probe_options = options;
    probe_options.seed = mix64(options.seed ^ mix64(++probe));
    EstimatorResult result = estimate_crossing(box, orientation, p, mid, probe_options);
    result.seed = options.seed;
    out.probes.push_back({mid, result});
    if (result.estimate >= 0.5) hi = mid;
    else lo = mid;
  }
  out.rc_lo = lo;
  out.rc_hi = hi;
  return out;
}

std::string DualityReport::csv_header() { return "p,L,rc,rc_star,sum,sum_lo,sum_hi,passed"; }

std::string DualityReport::csv_row() const {
  return fmt(nearest.p) + ',' + std::to_string(nearest.L) + ',' + fmt(nearest.estimate()) + ',' +
         fmt(star.estimate()) + ',' + fmt(sum) + ',' + fmt(sum_lo) + ',' + fmt(sum_hi) + ',' +
         (passed ? "1" : "0");
}

DualityReport duality_check(double p, int L, const McOptions& options, double tolerance) {
  DualityReport out;
  McOptions star_options = options;
  star_options.seed = mix64(options.seed + 0x5eed);
  out.nearest = rc_estimate(p, L, Adjacency::nearest, options, Orientation::vertical);
  out.star = rc_estimate(p, L, Adjacency::star, star_options, Orientation::horizontal);
  out.star.samples = options.samples;
  out.sum = out.nearest.estimate() + out.star.estimate();
  out.sum_lo = out.nearest.rc_lo + out.star.rc_lo;
  out.sum_hi = out.nearest.rc_hi + out.star.rc_hi;
  out.tolerance = tolerance;
  out.passed = std::abs(out.sum - 1) <= tolerance;
  return out;
}

std::string PsiFit::csv_header() { return "p,n_used,psi,stderr,lower95,positive"; }

std::string PsiFit::csv_row() const {
  if (infinite) return fmt(p) + ",0,inf,0,inf,1";
  return fmt(p) + ',' + std::to_string(points.size() - dropped.size()) + ',' + fmt(slope) + ',' + fmt(stderr_slope) +
         ',' + fmt(slope - 1.645 * stderr_slope) + ',' + (positive ? "1" : "0");
}

PsiFit psi_fit(double p, const std::vector<int>& n_list, const McOptions& options) {
  if (!(p >= 0 && p < 0.5)) throw std::invalid_argument("psi_fit requires 0 <= p < 1/2");
  if (n_list.empty()) throw std::invalid_argument("n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("n_list entries must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must be increasing");
  }
  PsiFit fit;
  fit.p = p;
  std::vector<double> xs, ys, ws;
  for (int n : n_list) {
    McOptions o = options;
    o.seed = mix64(options.seed ^ mix64(static_cast<std::uint64_t>(n)));
    EstimatorResult res = estimate_one_arm(p, n, o);
    res.seed = options.seed;
    fit.points.push_back({n, res});
    if (res.successes == 0 || res.successes == res.samples) {
      fit.dropped.push_back(n);
      continue;
    }
    const double f = res.estimate;
    xs.push_back(n);
    ys.push_back(-std::log(f));
    ws.push_back(static_cast<double>(res.samples) * f / (1 - f));
  }
  if (p == 0) {
    fit.infinite = true;
    fit.positive = true;
    fit.slope = std::numeric_limits<double>::infinity();
    return fit;
  }
  if (xs.size() < 2) return fit;
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sw += ws[i];
    sx += ws[i] * xs[i];
    sy += ws[i] * ys[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
    sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.stderr_slope = std::sqrt(1 / sxx);
  fit.positive = fit.slope - 1.645 * fit.stderr_slope > 0;
  return fit;
}

namespace {

double interval_gap(const Interval& a, const Interval& b) { return std::max({0.0, b.lo - a.hi, a.lo - b.hi}); }

}  // namespace

ScanReport continuity_scan(const std::vector<double>& grid, const CurveFn& curve, double tolerance, int depth) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be increasing");
  ScanReport report;
  std::vector<Interval> values;
  for (double p : grid) {
    const Interval v = curve(p);
    values.push_back(v);
    RcCurvePoint pt;
    pt.p = p;
    pt.rc_lo = v.lo;
    pt.rc_hi = v.hi;
    report.curve.push_back(pt);
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double gap = interval_gap(values[i - 1], values[i]);
    report.max_gap = std::max(report.max_gap, gap);
    if (gap <= tolerance) continue;
    double left = grid[i - 1], right = grid[i];
    Interval vl = values[i - 1], vr = values[i];
    double current = gap;
    for (int level = 0; level < depth; ++level) {
      const double mid = (left + right) / 2;
      const Interval vm = curve(mid);
      const double g_left = interval_gap(vl, vm), g_right = interval_gap(vm, vr);
      if (g_left >= g_right) {
        right = mid;
        vr = vm;
        current = g_left;
      } else {
        left = mid;
        vl = vm;
        current = g_right;
      }
    }
    if (current > tolerance && current >= 0.5 * gap) report.flags.push_back({grid[i - 1], grid[i], gap, current});
  }
  return report;
}

CurveFn mc_rc_curve(int L, const McOptions& options) {
  return [L, options](double p) {
    McOptions o = options;
    o.seed = mix64(options.seed ^ static_cast<std::uint64_t>(std::llround(p * 1e9)));
    const RcCurvePoint pt = rc_estimate(p, L, Adjacency::nearest, o);
    return Interval{pt.rc_lo, pt.rc_hi};
  };
}

FiniteSizeReport finite_size_criterion(double p, double a, int L, double gamma, const McOptions& options) {
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma must lie in (0,1)");
  if (L < 3) throw std::invalid_argument("L must be >= 3");
  FiniteSizeReport out;
  McOptions arm_options = options;
  arm_options.seed = mix64(options.seed + 1);
  out.one_arm = estimate_one_arm(p, L / 3, arm_options);
  out.one_arm.seed = options.seed;
  const LatticeBox box(L, 3 * L, Adjacency::nearest);
  out.crossing = estimate_crossing(box, Orientation::vertical, p, a, options);
  out.volume_term = static_cast<double>(3 * L + 1) * static_cast<double>(L + 1) * out.one_arm.ci_hi;
  out.satisfied = out.volume_term <= gamma && out.crossing.ci_lo >= 1 - gamma;
  return out;
}

}  // namespace dac
