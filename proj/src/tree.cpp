#include "dac/tree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace dac {

namespace {

std::string decimal(const Rational& q) {
  std::ostringstream out;
  out << std::setprecision(12) << to_double(q);
  return out.str();
}

// Exact value, or its size when the fraction is too long to be useful.
std::string exact_text(const Rational& q) {
  std::string text = to_string(q);
  if (text.size() <= 80) return text;
  return "<" + std::to_string(mpz_sizeinbase(q.get_num_mpz_t(), 10)) + "-digit numerator>";
}

Rational dyadic(int m) {
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(m);
  return Rational(mpz_class(1), den);
}

void add(Certificate& c, std::string name, const Rational& value, std::string relation = {}) {
  c.evidence.push_back({std::move(name), value, std::move(relation)});
}

}  // namespace

Rational root_tolerance() { return dyadic(40); }

RationalInterval pc_root(const BiPoly& h) {
  if (h.depends_on_r()) throw std::invalid_argument("pc_root expects a polynomial in p only");
  const Rational h0 = h.evaluate_p(0), h1 = h.evaluate_p(1);
  if (!(h0 < half() && half() < h1))
    throw NoCrossing("h does not cross 1/2 on [0,1]: h(0)=" + to_string(h0) + ", h(1)=" + to_string(h1));
  for (int i = 1; i < 32; ++i) {
    if (h.derivative_p().evaluate_p(ratio(i, 32)) <= 0)
      throw std::domain_error("h is not strictly increasing (derivative <= 0 at " + std::to_string(i) + "/32)");
  }
  Rational lo = 0, hi = 1;
  const Rational tol = root_tolerance();
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    Rational v = h.evaluate_p(mid);
    if (v == half()) return {mid, mid};
    if (v < half()) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

RcRoot rc_root(const BiPoly& f, const Rational& p) {
  const BiPoly g = f.at_p(p);
  // at_p leaves a polynomial in r; sample it along r.
  Rational prev = g.evaluate(0, 0);
  for (int i = 1; i <= 32; ++i) {
    Rational v = g.evaluate(0, ratio(i, 32));
    if (v < prev) throw std::domain_error("f(p, .) is not nondecreasing in r at p = " + to_string(p));
    prev = v;
  }
  RcRoot out;
  const Rational g0 = g.evaluate(0, 0), g1 = g.evaluate(0, 1);
  if (g0 >= half()) {
    out.kind = RootKind::zero;
    out.bracket = {0, 0};
    out.tie = g0 == half();
    return out;
  }
  if (g1 <= half()) {
    out.kind = RootKind::one;
    out.bracket = {1, 1};
    out.tie = g1 == half();
    return out;
  }
  Rational lo = 0, hi = 1;
  const Rational tol = root_tolerance();
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    Rational v = g.evaluate(0, mid);
    if (v == half()) {
      out.bracket = {mid, mid};
      return out;
    }
    if (v < half()) lo = mid;
    else hi = mid;
  }
  out.bracket = {lo, hi};
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string format_report(const std::vector<Certificate>& certificates) {
  std::ostringstream out;
  for (const auto& c : certificates) {
    out << "claim: " << c.claim << '\n';
    out << "  lemma: " << c.lemma << '\n';
    for (const auto& e : c.evidence) {
      out << "  evidence: " << e.name << " = " << exact_text(e.value) << " (~" << decimal(e.value) << ")";
      if (!e.relation.empty()) out << ' ' << e.relation;
      out << '\n';
    }
    for (const auto& n : c.notes) out << "  note: " << n << '\n';
    out << "  status: " << status_name(c.status) << "\n\n";
  }
  return out.str();
}

Status overall_status(const std::vector<Certificate>& certificates) {
  bool inconclusive = false;
  for (const auto& c : certificates) {
    if (c.status == Status::fail) return Status::fail;
    if (c.status == Status::inconclusive) inconclusive = true;
  }
  return inconclusive ? Status::inconclusive : Status::pass;
}

// --- D^k -----------------------------------------------------------------

Fact4Choice search_fact4(std::optional<Rational> p0, std::optional<long> k) {
  const Rational target(17, 18);
  Fact4Choice out;

  auto accept = [&](const Rational& p, long kk) {
    const Rational bk = bk_probability(p, kk);
    if (bk <= target) return false;
    out.found = true;
    out.p0 = p;
    out.k = kk;
    out.bk = bk;
    out.bound = Rational(4, 9) * bk + (1 - bk);
    return true;
  };

  std::vector<Rational> p_candidates;
  if (p0) {
    if (*p0 <= 0 || *p0 >= Rational(1, 3)) throw std::invalid_argument("p0 must lie in (0, 1/3)");
    p_candidates.push_back(*p0);
  } else {
    for (int m = 2; m <= 30; ++m) p_candidates.push_back(dyadic(m));
  }

  Rational best = 0;
  for (const Rational& p : p_candidates) {
    // sup_k P(B_k) = (1-p)^4; no k can work unless it exceeds 17/18.
    const Rational sup = pow(Rational(1 - p), 4);
    best = std::max(best, sup);
    if (sup <= target) continue;
    if (k) {
      if (accept(p, *k)) return out;
      continue;
    }
    // Floating scan for the first power of two that clears the target, then
    // an exact confirmation.
    const double pd = to_double(p);
    for (int j = 0; j <= 50; ++j) {
      const long kk = 1L << j;
      const double approx = std::pow(1 - pd, 4) * -std::expm1(static_cast<double>(kk) * std::log1p(-pd * pd));
      if (approx <= 17.0 / 18.0) continue;
      if (accept(p, kk)) return out;
    }
  }
  out.best_bk = k && p0 ? bk_probability(*p0, *k) : best;
  return out;
}

NonmonotonicityBundle nonmonotonicity_certificate(int k, std::optional<Rational> p0, std::optional<long> k4) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  NonmonotonicityBundle bundle;
  const Rational third(1, 3), two_thirds(2, 3);
  const Gadget gadget = complete_bipartite_dk(k);
  const bool enumerable = gadget.graph.edge_count() <= ExactLimits{}.max_edges;
  std::optional<BiPoly> h, f;
  if (enumerable) {
    h = connection_poly(gadget);
    f = pivotality_poly(gadget);
  }

  {
    Certificate c;
    c.claim = "p_c(Gamma_k) > 1/3";
    c.lemma = "bond comparison with T_3 (h < 1/2 => p <= p_c), h strictly increasing";
    // 1 - h(1/3) >= P({e1,e1' closed} or {e2,e2' closed}), independent of k.
    const Rational both_closed = pow(Rational(1 - third), 2);
    const Rational uniform = 1 - (1 - pow(Rational(1 - both_closed), 2));
    add(c, "uniform bound on h(1/3)", uniform, "== 25/81");
    bool ok = uniform == Rational(25, 81) && uniform < half();
    if (h) {
      const Rational value = h->evaluate_p(third);
      add(c, "h^{D^" + std::to_string(k) + "}(1/3)", value, "<= 25/81");
      ok = ok && value <= Rational(25, 81);
      const RationalInterval root = pc_root(*h);
      add(c, "p_c bracket lo", root.lo, "> 1/3");
      add(c, "p_c bracket hi", root.hi);
      ok = ok && root.lo > third;
    } else {
      c.notes.push_back("D^k beyond enumeration cap; k-uniform bound only");
    }
    c.status = ok ? Status::pass : Status::fail;
    bundle.facts.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = "r_c(Gamma_k)(0) < 2/3";
    c.lemma = "colour comparison with T_3 (f > 1/2 => r >= r_c), f strictly increasing in r";
    // With every edge closed, E_{a,b} = {b black and z1 or z2 black}.
    const Rational r = two_thirds;
    const Rational closed_form = r * (1 - pow(Rational(1 - r), 2));
    add(c, "f(0,2/3) closed form", closed_form, "== 16/27 > 1/2");
    bool ok = closed_form == Rational(16, 27) && closed_form > half();
    if (f) {
      const Rational value = f->evaluate(0, r);
      add(c, "f^{D^" + std::to_string(k) + "}(0,2/3)", value, "== 16/27");
      ok = ok && value == Rational(16, 27);
      const RcRoot root = rc_root(*f, 0);
      add(c, "r_c(0) bracket hi", root.bracket.hi, "< 2/3");
      ok = ok && root.bracket.hi < r;
    }
    c.status = ok ? Status::pass : Status::fail;
    bundle.facts.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = "r_c(Gamma_k)(1/3) < 2/3";
    c.lemma = "colour comparison with T_3 (f > 1/2 => r >= r_c), f strictly increasing in r";
    // On A = {some terminal edge open}, C_b black forces E_{a,b}.
    const Rational prob_a = 1 - pow(Rational(1 - third), 4);
    const Rational lower = two_thirds * prob_a;
    add(c, "P(A) at p=1/3", prob_a, "== 65/81");
    add(c, "uniform lower bound (2/3)P(A)", lower, "== 130/243 > 1/2");
    bool ok = lower == Rational(130, 243) && lower > half();
    if (f) {
      const Rational value = f->evaluate(third, two_thirds);
      add(c, "f^{D^" + std::to_string(k) + "}(1/3,2/3)", value, ">= 130/243");
      ok = ok && value >= Rational(130, 243);
      const RcRoot root = rc_root(*f, third);
      add(c, "r_c(1/3) bracket hi", root.bracket.hi, "< 2/3");
      ok = ok && root.bracket.hi < two_thirds;
    }
    c.status = ok ? Status::pass : Status::fail;
    bundle.facts.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = "r_c(Gamma_k)(p0) > 2/3 for some p0 in (0,1/3) and some k";
    c.lemma = "colour comparison with T_3 (f < 1/2 => r <= r_c); f(p0,2/3) <= (2/3)^2 P(B_k) + 1 - P(B_k)";
    bundle.choice = search_fact4(p0, k4);
    const Fact4Choice& ch = bundle.choice;
    if (ch.found) {
      add(c, "p0", ch.p0);
      add(c, "k", Rational(ch.k));
      add(c, "P(B_k)", ch.bk, "> 17/18");
      add(c, "bound on f(p0,2/3)", ch.bound, "< 1/2");
      const bool ok = ch.p0 > 0 && ch.p0 < third && ch.bk > Rational(17, 18) && ch.bound < half();
      c.status = ok ? Status::pass : Status::fail;
    } else {
      add(c, "best sup_k P(B_k)", ch.best_bk, "<= 17/18");
      c.notes.push_back("no (p0, k) with P(B_k) > 17/18 in the searched range");
      c.status = Status::fail;
    }
    bundle.facts.push_back(std::move(c));
  }

  bundle.conclusion = overall_status(bundle.facts) == Status::pass;
  return bundle;
}

// --- curves ---------------------------------------------------------------

std::string CriticalCurve::to_csv() const {
  std::ostringstream out;
  out << "p,r_lo,r_hi,method\n";
  out << std::setprecision(15);
  for (const auto& pt : points)
    out << to_double(pt.p) << ',' << to_double(pt.r.lo) << ',' << to_double(pt.r.hi) << ',' << pt.method << '\n';
  return out.str();
}

namespace {

BiPoly dn_pivotality_closed_form(int n) {
  const BiPoly p = BiPoly::p(), r = BiPoly::r();
  const BiPoly q = BiPoly(1) - p;
  const BiPoly qn = q.pow(static_cast<unsigned>(n));
  return (BiPoly(1) - qn) * (p + q * r) + qn * (p * r + q * r * r);
}

BiPoly dn_limit_positive_p() {
  const BiPoly p = BiPoly::p(), r = BiPoly::r();
  return p + (BiPoly(1) - p) * r;
}

}  // namespace

RationalInterval discontinuity_curve_value(const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0,1]");
  if (p == 0) return rc_root(BiPoly::r() * BiPoly::r(), 0).bracket;
  if (p >= half()) return {0, 0};
  const Rational value = (half() - p) / (1 - p);
  return {value, value};
}

DiscontinuityReport discontinuity_family_certificate(const std::vector<Rational>& grid, int n_max) {
  DiscontinuityReport report;
  const std::vector<Rational> r_tests{0, Rational(1, 4), half(), Rational(3, 4), 1};

  Certificate gadgets;
  gadgets.claim = "D_n polynomials match the closed forms and approach the limits monotonically";
  gadgets.lemma = "exact enumeration of h^{D_n}, f^{D_n} for n = 1.." + std::to_string(n_max);
  bool gadgets_ok = true;
  std::vector<BiPoly> f_n, h_n;
  for (int n = 1; n <= n_max; ++n) {
    const Gadget g = parallel_gadget_dn(n);
    h_n.push_back(connection_poly(g));
    f_n.push_back(pivotality_poly(g));
    const BiPoly h_closed = BiPoly::p() * (BiPoly(1) - (BiPoly(1) - BiPoly::p()).pow(static_cast<unsigned>(n)));
    if (!(h_n.back() == h_closed)) gadgets_ok = false;
    if (!(f_n.back() == dn_pivotality_closed_form(n))) gadgets_ok = false;
    if (!(f_n.back().at_p(0) == BiPoly::r() * BiPoly::r())) gadgets_ok = false;
  }
  gadgets.notes.push_back("h^{D_n} = p(1-(1-p)^n), f^{D_n}(0,r) = r^2 for every n");
  report.checks.push_back(std::move(gadgets));
  report.checks.back().status = gadgets_ok ? Status::pass : Status::fail;

  Certificate monotone;
  monotone.claim = "f^{D_n}(p,r) is nondecreasing in n with limit p + (1-p)r (p > 0) or r^2 (p = 0)";
  monotone.lemma = "exact evaluation on the grid, r in {0,1/4,1/2,3/4,1}";
  bool monotone_ok = true;
  for (const Rational& p : grid) {
    if (p < 0 || p > half()) throw std::invalid_argument("grid must lie in [0,1/2]");
    const BiPoly limit = p == 0 ? BiPoly::r() * BiPoly::r() : dn_limit_positive_p();
    for (const Rational& r : r_tests) {
      const Rational lim = limit.evaluate(p, r);
      Rational prev = -1;
      for (const BiPoly& f : f_n) {
        const Rational v = f.evaluate(p, r);
        if (v < prev || v > lim) monotone_ok = false;
        prev = v;
      }
      if (p > 0 && p < 1) {
        // Remaining gap is (1-p)^n (1-r)(p + (1-p) r) exactly.
        const Rational gap = lim - prev;
        const Rational expected = pow(Rational(1 - p), static_cast<unsigned long>(n_max)) * (1 - r) * (p + (1 - p) * r);
        if (gap != expected) monotone_ok = false;
      }
    }
  }
  monotone.status = monotone_ok ? Status::pass : Status::fail;
  report.checks.push_back(std::move(monotone));

  Certificate curve_check;
  curve_check.claim = "r_c(p) = (1/2-p)/(1-p) for p in (0,1/2] and r_c(0) = 1/sqrt(2)";
  curve_check.lemma = "colour comparison with T_3 applied to the limits of f^{D_n}";
  bool curve_ok = true;
  for (const Rational& p : grid) {
    CurvePoint pt;
    pt.p = p;
    if (p == 0) {
      const RcRoot root = rc_root(BiPoly::r() * BiPoly::r(), 0);
      pt.r = root.bracket;
      pt.method = "exact-root";
      curve_ok = curve_ok && root.kind == RootKind::interior && pt.r.lo * pt.r.lo <= half() &&
                 half() <= pt.r.hi * pt.r.hi;
    } else {
      const RcRoot root = rc_root(dn_limit_positive_p(), p);
      const Rational closed = (half() - p) / (1 - p);
      pt.r = {closed, closed};
      pt.method = "certificate";
      curve_ok = curve_ok && root.bracket.contains(closed) && dn_limit_positive_p().evaluate(p, closed) == half();
    }
    report.curve.points.push_back(pt);
  }
  curve_check.status = curve_ok ? Status::pass : Status::fail;
  report.checks.push_back(std::move(curve_check));

  const RationalInterval at_zero = discontinuity_curve_value(0);
  report.jump = {at_zero.lo - half(), at_zero.hi - half()};
  Certificate jump;
  jump.claim = "r_c jumps at 0 by 1/sqrt(2) - 1/2";
  jump.lemma = "lim_{p->0+} (1/2-p)/(1-p) = 1/2 < 1/sqrt(2) = r_c(0)";
  add(jump, "jump lower", report.jump.lo, "> 0");
  add(jump, "jump upper", report.jump.hi);
  jump.status = report.jump.lo > 0 ? Status::pass : Status::fail;
  report.checks.push_back(std::move(jump));

  report.passed = overall_status(report.checks) == Status::pass;
  return report;
}

// --- bounded degree -------------------------------------------------------

BiPoly DoubledBridgeFamily::bridge_polynomial() {
  const BiPoly p = BiPoly::p();
  return BiPoly(2) * p.pow(2) + BiPoly(2) * p.pow(3) - BiPoly(5) * p.pow(4) + BiPoly(2) * p.pow(5);
}

Gadget DoubledBridgeFamily::bridge(int levels) {
  if (levels < 0) throw std::invalid_argument("bridge levels must be >= 0");
  if (levels == 0) return single_edge_gadget();
  const Gadget inner = bridge(levels - 1);
  // Skeleton: s=0, t=1, u=2, w=3; edges s-u, s-w, u-t, w-t, u-w.
  MultiGraph g(4);
  const std::pair<Vertex, Vertex> skeleton[] = {{0, 2}, {0, 3}, {2, 1}, {3, 1}, {2, 3}};
  for (auto [from, to] : skeleton) {
    std::vector<Vertex> map(static_cast<std::size_t>(inner.graph.vertex_count()), -1);
    map[static_cast<std::size_t>(inner.a)] = from;
    map[static_cast<std::size_t>(inner.b)] = to;
    for (Vertex v = 0; v < inner.graph.vertex_count(); ++v)
      if (map[static_cast<std::size_t>(v)] < 0) map[static_cast<std::size_t>(v)] = g.add_vertex();
    for (const Edge& e : inner.graph.edges()) g.add_edge(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]);
  }
  return make_gadget(std::move(g), 0, 1);
}

Gadget DoubledBridgeFamily::instance(int n) const {
  if (n < 1) throw std::invalid_argument("family index must be >= 1");
  const Gadget copy = bridge(n);
  MultiGraph g(2);
  for (int c = 0; c < 2; ++c) {
    std::vector<Vertex> map(static_cast<std::size_t>(copy.graph.vertex_count()), -1);
    map[static_cast<std::size_t>(copy.a)] = 0;
    map[static_cast<std::size_t>(copy.b)] = 1;
    for (Vertex v = 0; v < copy.graph.vertex_count(); ++v)
      if (map[static_cast<std::size_t>(v)] < 0) map[static_cast<std::size_t>(v)] = g.add_vertex();
    for (const Edge& e : copy.graph.edges()) g.add_edge(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]);
  }
  return make_gadget(std::move(g), 0, 1);
}

Rational DoubledBridgeFamily::connection(int n, const Rational& p) const {
  if (n < 1) throw std::invalid_argument("family index must be >= 1");
  const BiPoly g = bridge_polynomial();
  Rational x = p;
  for (int i = 0; i < n; ++i) x = g.evaluate_p(x);
  return 1 - (1 - x) * (1 - x);
}

int QuadraticSurd::sign() const {
  auto sgn = [](const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); };
  const int sa = sgn(a), sb = sgn(b);
  if (sa >= 0 && sb >= 0) return (sa || sb) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  const Rational diff = a * a - 5 * b * b;
  return sa > 0 ? sgn(diff) : -sgn(diff);
}

double QuadraticSurd::to_double() const { return dac::to_double(a) + dac::to_double(b) * std::sqrt(5.0); }

BoundedDegreeReport bounded_degree_certificate(const ThresholdFamily& family, int delta, int n_max) {
  if (delta < 1) throw std::invalid_argument("Delta must be >= 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  BoundedDegreeReport report;
  report.r0 = {Rational(-1, 2), Rational(1, 2)};
  report.r1 = half();

  {
    Certificate c;
    c.claim = "r0 = (sqrt5-1)/2 solves r(1+r) = 1, r1 = 1/2 solves (2/3)(1+r) = 1, and r1 < r0";
    c.lemma = "exact arithmetic in Q(sqrt5)";
    const QuadraticSurd one{1, 0};
    const QuadraticSurd r0_eq = report.r0 * (one + report.r0);
    add(c, "r0(1+r0) rational part", r0_eq.a, "== 1");
    add(c, "r0(1+r0) sqrt5 part", r0_eq.b, "== 0");
    const Rational r1_eq = Rational(2, 3) * (1 + report.r1);
    add(c, "(2/3)(1+r1)", r1_eq, "== 1");
    const QuadraticSurd diff{report.r0.a - report.r1, report.r0.b};
    const bool ok = r0_eq.a == 1 && r0_eq.b == 0 && r1_eq == 1 && diff.sign() > 0;
    c.notes.push_back("r0 ~ " + std::to_string(report.r0.to_double()));
    c.status = ok ? Status::pass : Status::fail;
    report.checks.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = "some p' > 1/2 has p'(1-(1-p')^" + std::to_string(delta) + ") < 1/2";
    c.lemma = "h^{D_n}(p) = p c_n(p) <= p(1-(1-p)^Delta) < 1/2 => 1/2 < p' <= p_c";
    for (int m = 1; m <= 60; ++m) {
      const Rational p = half() + dyadic(m);
      const Rational value = p * (1 - pow(Rational(1 - p), static_cast<unsigned long>(delta)));
      if (value < half()) {
        report.p_prime = p;
        add(c, "p'", p, "> 1/2");
        add(c, "p'(1-(1-p')^Delta)", value, "< 1/2");
        break;
      }
    }
    c.status = report.p_prime ? Status::pass : Status::fail;
    report.checks.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = "((r+1)/2) r = 1/2 at r = r0, so lim f^{D_n}(p, r0) < 1/2 for p < 1/2";
    c.lemma = "upper bound f <= (p + r(1-p))(c + r(1-c)) with c -> 0";
    const QuadraticSurd one{1, 0}, half_surd{half(), 0};
    const QuadraticSurd value = (report.r0 + one) * half_surd * report.r0;
    add(c, "((r0+1)/2) r0 rational part", value.a, "== 1/2");
    add(c, "((r0+1)/2) r0 sqrt5 part", value.b, "== 0");
    c.status = (value.a == half() && value.b == 0) ? Status::pass : Status::fail;
    report.checks.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = family.name() + ": c_n(1/2) > 2/3 for n = 1.." + std::to_string(n_max);
    c.lemma = "sharp-threshold family property (1)";
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
      const Rational value = family.connection(n, half());
      add(c, "c_" + std::to_string(n) + "(1/2)", value, "> 2/3");
      ok = ok && value > Rational(2, 3);
    }
    c.status = ok ? Status::pass : Status::fail;
    report.checks.push_back(std::move(c));
  }

  {
    Certificate c;
    c.claim = family.name() + ": c_n(p) strictly decreasing in n for p in {1/4, 2/5, 9/20}";
    c.lemma = "sharp-threshold family property (2), checked at finite depth";
    bool ok = true;
    for (const Rational& p : {Rational(1, 4), Rational(2, 5), Rational(9, 20)}) {
      Rational prev = 2;
      for (int n = 1; n <= n_max; ++n) {
        const Rational value = family.connection(n, p);
        ok = ok && value < prev;
        prev = value;
      }
      add(c, "c_" + std::to_string(n_max) + "(" + to_string(p) + ")", prev);
    }
    c.notes.push_back("bounded degree (property 3) is not claimed for this instance");
    c.status = ok ? Status::pass : Status::fail;
    report.checks.push_back(std::move(c));
  }

  {
    // Gadget-level checks on D_1 = G_1 plus a handle, where enumeration is cheap.
    Certificate c;
    c.claim = "D_1 = handle + G_1: h = p c_1, f <= (p+r(1-p))(c+r(1-c)), f(1/2,r) >= c(1/2)(1+r)/2";
    c.lemma = "exact enumeration on the first family member";
    const Gadget base = family.instance(1);
    const Gadget d1 = attach_handle(base.graph, base.a, base.b);
    bool ok = true;
    if (d1.graph.edge_count() > ExactLimits{}.max_edges) {
      c.notes.push_back("first family member beyond enumeration cap; skipped");
      c.status = Status::inconclusive;
    } else {
      const BiPoly h = connection_poly(d1);
      const BiPoly f = pivotality_poly(d1);
      const BiPoly c1 = connection_poly(base);
      ok = ok && h == BiPoly::p() * c1;
      for (int i = 0; i <= 8; ++i) {
        const Rational p(i, 8);
        const Rational conn = c1.evaluate_p(p);
        for (int j = 0; j <= 8; ++j) {
          const Rational r(j, 8);
          const Rational upper = (p + r * (1 - p)) * (conn + r * (1 - conn));
          ok = ok && f.evaluate(p, r) <= upper;
        }
      }
      const Rational c_half = c1.evaluate_p(half());
      for (int j = 0; j <= 8; ++j) {
        const Rational r(j, 8);
        ok = ok && f.evaluate(half(), r) >= c_half * (1 + r) / 2;
      }
      add(c, "c_1(1/2) by enumeration", c_half);
      add(c, "c_1(1/2) by composition", family.connection(1, half()));
      ok = ok && c_half == family.connection(1, half());
      c.status = ok ? Status::pass : Status::fail;
    }
    report.checks.push_back(std::move(c));
  }

  report.status = overall_status(report.checks);
  return report;
}

// --- rcbounds ---------------------------------------------------------------

Certificate rcbounds_check(const std::string& family, const std::vector<Rational>& grid) {
  Gadget gadget;
  bool closed_form = false;
  if (family == "edge-gadget") {
    gadget = single_edge_gadget();
    closed_form = true;
  } else if (family == "path-gadget") {
    gadget = path_gadget();
  } else if (family.rfind("dk-", 0) == 0) {
    gadget = complete_bipartite_dk(std::stoi(family.substr(3)));
  } else {
    throw std::invalid_argument("unknown rcbounds family '" + family + "'");
  }
  const BiPoly f = pivotality_poly(gadget);
  const TreeLike tree = tree_like([&](int) { return gadget; }, 3);
  const int delta = tree.graph.max_degree();

  bool tie = false;
  auto curve = [&](const Rational& p) -> RationalInterval {
    const RcRoot root = rc_root(f, p);
    tie = tie || root.tie;
    if (closed_form && p < half()) {
      const Rational exact = (half() - p) / (1 - p);
      if (!root.bracket.contains(exact)) throw std::logic_error("closed form outside root bracket");
      return {exact, exact};
    }
    return root.bracket;
  };

  Certificate c;
  c.claim = "1 - (1-r_c(0))/(1-p)^" + std::to_string(delta) + " <= r_c(p) <= r_c(0)/(1-p)^" + std::to_string(delta) +
            " on " + family;
  c.lemma = "degree bounds from the stochastic domination";
  const RationalInterval rc0 = curve(0);
  add(c, "r_c(0) lo", rc0.lo);
  add(c, "r_c(0) hi", rc0.hi);
  bool ok = true;
  for (const Rational& p : grid) {
    if (p < 0 || p >= 1) throw std::invalid_argument("grid must lie in [0,1)");
    const RationalInterval rc = curve(p);
    const Rational scale = pow(Rational(1 - p), static_cast<unsigned long>(delta));
    const Rational lower = 1 - (1 - rc0.hi) / scale;
    const Rational upper = rc0.lo / scale;
    // At p = 0 both bounds reduce to r_c(0) itself.
    const bool here = p == 0 || (lower <= rc.lo && rc.hi <= upper);
    add(c, "r_c(" + to_string(p) + ")", rc.lo, "in [" + decimal(lower) + ", " + decimal(upper) + "]");
    ok = ok && here;
  }
  c.notes.push_back("Delta = " + std::to_string(delta) + " (max degree of the tree-like graph)");
  if (ok && tie) {
    c.notes.push_back("f(p, 0) or f(p, 1) equals 1/2 exactly at some grid point; the comparison does not decide there");
    c.status = Status::inconclusive;
  } else {
    c.status = ok ? Status::pass : Status::fail;
  }
  return c;
}

}  // namespace dac
