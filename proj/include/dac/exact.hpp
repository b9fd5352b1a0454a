#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dac/core.hpp"
#include "dac/multigraph.hpp"
#include "dac/poly.hpp"

namespace dac {

// Exhaustive enumeration is refused beyond these sizes; callers fall back to
// Monte Carlo explicitly, never silently.
struct ExactLimits {
  int max_edges = 24;
  int max_clusters = 20;
  int max_vertices = 64;
  int max_support = 20;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// h(p): probability that a and b share a bond cluster.
BiPoly connection_poly(const Gadget& gadget, const ExactLimits& limits = {});

// f(p, r): probability of E_{a,b}. Either a and b share a bond cluster, or
// some vertex v outside C_a adjacent to C_a is joined to b by a black path.
// Black paths are taken inside V \ C_a, so the event ignores the colour of C_a.
BiPoly pivotality_poly(const Gadget& gadget, const ExactLimits& limits = {});

// P(E_{a,b} and S), where S is a bond event given as a predicate on the edge
// subset bitmask (bit i = edge i open).
using BondFilter = std::function<bool(std::uint64_t subset)>;
BiPoly pivotality_poly_restricted(const Gadget& gadget, const BondFilter& bond_event,
                                  const ExactLimits& limits = {});

// The same event evaluated on one configuration (reference implementation
// used by the samplers and as an independent check of the enumeration).
bool pivotal_event_holds(const Gadget& gadget, const BondConfig& eta, const SiteConfig& xi);

// Event depending on the colours of finitely many vertices, stored as a truth
// table over the support: bit i of the table index is the colour of support[i].
class ColorEvent {
 public:
  using Literal = std::pair<Vertex, bool>;  // (vertex, black?)

  ColorEvent(std::vector<Vertex> support, std::vector<std::uint8_t> table);

  static ColorEvent from_predicate(std::vector<Vertex> support,
                                   const std::function<bool(std::span<const std::uint8_t>)>& predicate);
  // Union of conjunctions of literals.
  static ColorEvent from_dnf(const std::vector<std::vector<Literal>>& clauses);
  static ColorEvent all_black(std::vector<Vertex> vertices);

  const std::vector<Vertex>& support() const { return support_; }
  bool holds_on_pattern(std::uint32_t pattern) const { return table_[pattern] != 0; }
  bool holds(const SiteConfig& xi) const;

 private:
  std::vector<Vertex> support_;
  std::vector<std::uint8_t> table_;
};

// One summand of the conditioning on m_x = (min C_{x_1}, ..., min C_{x_k}):
// bond_part = nu_p[m_x = minima], colour_part = nu_r[f(kappa(minima))].
struct DecompositionTerm {
  std::vector<Vertex> minima;
  BiPoly bond_part;
  BiPoly color_part;
};

struct EventDecomposition {
  BiPoly total;
  std::vector<DecompositionTerm> terms;
};

EventDecomposition event_prob_poly(const MultiGraph& graph, const ColorEvent& event,
                                   const ExactLimits& limits = {});

// Exact law of xi at rational (p, r); entry s is the probability of the site
// configuration whose bit v is the colour of v.
std::vector<Rational> site_distribution(const MultiGraph& graph, const Rational& p, const Rational& r,
                                        const ExactLimits& limits = {});

struct DominationWitness {
  std::vector<std::uint32_t> event;  // up-closed set of site patterns
  Rational dac_probability;
  Rational bound;
  bool lower_side = true;
};

struct DominationReport {
  Rational lower_parameter;  // r (1-p)^Delta
  Rational upper_parameter;  // 1 - (1-r)(1-p)^Delta
  int increasing_events = 0;
  bool passed = true;
  // Smallest slack over all events of mu(A) - nu_lower(A) and nu_upper(A) - mu(A).
  Rational min_lower_slack;
  Rational min_upper_slack;
  // Same check against the vertex-dependent product laws r(1-p)^d(v) and
  // 1-(1-r)(1-p)^d(v) realised by the exploration coupling.
  bool local_passed = true;
  std::optional<DominationWitness> witness;
};

// Checks nu_{r(1-p)^Delta} <= mu_{p,r} <= nu_{1-(1-r)(1-p)^Delta} on every
// increasing event. Graphs with at most 4 vertices.
DominationReport check_domination_exact(const MultiGraph& graph, const Rational& p, const Rational& r);

// All up-closed subsets of {0,1}^n, n <= 4, as pattern lists.
std::vector<std::vector<std::uint32_t>> increasing_events(int n);

// P(B_k) = (1-p)^4 (1 - (1-p^2)^k): e1, e1', e2, e2' closed and some pair
// f_i, f_i' open in D^k.
Rational bk_probability(const Rational& p, long k);
Rational bk_probability_enumerated(const Rational& p, int k, const ExactLimits& limits = {});

}  // namespace dac
