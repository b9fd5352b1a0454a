#pragma once

#include <map>
#include <string>
#include <utility>

#include "dac/rational.hpp"

namespace dac {

// Polynomial in (p, r) with exact rational coefficients, stored in the
// expanded monomial basis p^i r^j. Zero coefficients are never stored, so
// structural equality is polynomial equality.
class BiPoly {
 public:
  using Exponents = std::pair<int, int>;  // (i, j) for p^i r^j
  using Terms = std::map<Exponents, Rational>;

  BiPoly() = default;
  BiPoly(const Rational& constant);  // NOLINT: implicit on purpose, reads naturally in formulas
  BiPoly(int constant) : BiPoly(Rational(constant)) {}  // NOLINT

  static BiPoly p();
  static BiPoly r();
  static BiPoly monomial(int i, int j, const Rational& coefficient);

  const Terms& terms() const { return terms_; }
  Rational coefficient(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }
  int degree_p() const;
  int degree_r() const;
  bool depends_on_r() const { return degree_r() > 0; }

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator-=(const BiPoly& other);
  BiPoly& operator*=(const BiPoly& other);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly operator-() const;
  bool operator==(const BiPoly& other) const { return terms_ == other.terms_; }

  BiPoly pow(unsigned exponent) const;

  Rational evaluate(const Rational& p, const Rational& r) const;
  // Univariate helper for polynomials in p only.
  Rational evaluate_p(const Rational& p) const { return evaluate(p, Rational(0)); }
  // Fix p; the result is a polynomial in r (i = 0 for every term).
  BiPoly at_p(const Rational& p) const;
  BiPoly at_r(const Rational& r) const;
  BiPoly derivative_p() const;
  BiPoly derivative_r() const;

  // "p + r - p*r" style expression, terms ordered by (i, j).
  std::string to_string() const;
  // Rows "i,j,numerator,denominator" ordered by (i, j), with header.
  std::string to_csv() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

// p^s (1-p)^t and r^s (1-r)^t, expanded.
BiPoly bernstein_p(int s, int t);
BiPoly bernstein_r(int s, int t);

}  // namespace dac
