#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dac/exact.hpp"
#include "dac/multigraph.hpp"
#include "dac/poly.hpp"
#include "dac/rational.hpp"

namespace dac {

struct RationalInterval {
  Rational lo;
  Rational hi;

  bool degenerate() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  double midpoint() const { return to_double(Rational((lo + hi) / 2)); }
};

class NoCrossing : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bracket width used by the root finders.
Rational root_tolerance();  // 2^-40

// Solution of h(p) = 1/2 for a univariate, strictly increasing h with
// h(0) < 1/2 < h(1). Endpoints satisfy h(lo) <= 1/2 <= h(hi).
RationalInterval pc_root(const BiPoly& h);

enum class RootKind { interior, zero, one };

struct RcRoot {
  RationalInterval bracket;
  RootKind kind = RootKind::interior;
  // f(p, boundary) equals 1/2 exactly: the comparison lemma does not decide.
  bool tie = false;
};

// Root in r of f(p, r) = 1/2 at fixed p. Returns 0 when f(p,0) >= 1/2 and 1
// when f(p,1) <= 1/2.
RcRoot rc_root(const BiPoly& f, const Rational& p);

enum class Status { pass, fail, inconclusive };
const char* status_name(Status s);

struct Evidence {
  std::string name;
  Rational value;
  std::string relation;  // e.g. "<= 25/81"
};

struct Certificate {
  std::string claim;
  std::string lemma;
  std::vector<Evidence> evidence;
  std::vector<std::string> notes;
  Status status = Status::inconclusive;
};

std::string format_report(const std::vector<Certificate>& certificates);
// fail if any certificate fails, else inconclusive if any is, else pass.
Status overall_status(const std::vector<Certificate>& certificates);

// --- D^k non-monotonicity -------------------------------------------------

struct Fact4Choice {
  bool found = false;
  Rational p0;
  long k = 0;
  Rational bk;     // P(B_k) at p0
  Rational bound;  // (2/3)^2 P(B_k) + (1 - P(B_k))
  // Best value of sup_k P(B_k) when the search refuses.
  Rational best_bk;
};

// Scans p0 over 2^-m (m = 2..30) and k over powers of two (or the given p0 /
// k) for P(B_k) > 17/18; the first passing pair is returned.
Fact4Choice search_fact4(std::optional<Rational> p0 = std::nullopt, std::optional<long> k = std::nullopt);

struct NonmonotonicityBundle {
  std::vector<Certificate> facts;  // facts (1)-(4) in order
  Fact4Choice choice;
  bool conclusion = false;  // r_c non-monotone on [0, p_c) for Gamma_{choice.k}
};

// Facts (1)-(3) hold for every k through k-uniform closed-form bounds; when
// D^k is small enough for enumeration they are also checked on the exact
// polynomials of the given k.
NonmonotonicityBundle nonmonotonicity_certificate(int k, std::optional<Rational> p0 = std::nullopt,
                                                  std::optional<long> k4 = std::nullopt);

// --- critical curves ------------------------------------------------------

struct CurvePoint {
  Rational p;
  RationalInterval r;
  std::string method;  // exact-root | certificate | MC
};

struct CriticalCurve {
  std::vector<CurvePoint> points;
  // "p,r_lo,r_hi,method"
  std::string to_csv() const;
};

// Limit curve of the parallel-edge family: (1/2-p)/(1-p) for p > 0 and the
// root of r^2 = 1/2 at p = 0.
RationalInterval discontinuity_curve_value(const Rational& p);

struct DiscontinuityReport {
  CriticalCurve curve;
  RationalInterval jump;  // r_c(0) - lim_{p->0+} r_c(p)
  std::vector<Certificate> checks;
  bool passed = false;
};

DiscontinuityReport discontinuity_family_certificate(const std::vector<Rational>& grid, int n_max = 8);

// --- bounded-degree construction -----------------------------------------

// Two-terminal graphs G_n with terminals (x_n, y_n) = (gadget.a, gadget.b)
// and their exact connection probabilities.
class ThresholdFamily {
 public:
  virtual ~ThresholdFamily() = default;
  virtual std::string name() const = 0;
  virtual Gadget instance(int n) const = 0;
  virtual Rational connection(int n, const Rational& p) const = 0;
};

// Two parallel copies of the n-fold iterated Wheatstone bridge. The bridge
// polynomial g(p) = 2p^2 + 2p^3 - 5p^4 + 2p^5 fixes 1/2 with slope 13/8, so
// c_n(p) = 1 - (1 - g^n(p))^2 tends to 0 below 1/2 and equals 3/4 at 1/2.
// Vertex degrees grow with n.
class DoubledBridgeFamily : public ThresholdFamily {
 public:
  std::string name() const override { return "doubled-iterated-bridge"; }
  Gadget instance(int n) const override;
  Rational connection(int n, const Rational& p) const override;

  static BiPoly bridge_polynomial();
  static Gadget bridge(int levels);  // single copy, 5^levels edges
};

// a + b*sqrt(5)
struct QuadraticSurd {
  Rational a;
  Rational b;
  QuadraticSurd operator+(const QuadraticSurd& o) const { return {a + o.a, b + o.b}; }
  QuadraticSurd operator*(const QuadraticSurd& o) const { return {a * o.a + 5 * b * o.b, a * o.b + b * o.a}; }
  // Sign of a + b sqrt(5).
  int sign() const;
  double to_double() const;
};

struct BoundedDegreeReport {
  std::vector<Certificate> checks;
  QuadraticSurd r0;  // (sqrt5 - 1)/2
  Rational r1;       // 1/2
  std::optional<Rational> p_prime;
  Status status = Status::inconclusive;
};

BoundedDegreeReport bounded_degree_certificate(const ThresholdFamily& family, int delta, int n_max = 4);

// --- degree bounds on critical curves -------------------------------------

// Checks 1 - (1 - r_c(0))/(1-p)^Delta <= r_c(p) <= r_c(0)/(1-p)^Delta on the
// grid, using worst-case bracket endpoints. family: edge-gadget,
// path-gadget or dk-<k>.
Certificate rcbounds_check(const std::string& family, const std::vector<Rational>& grid);

}  // namespace dac
