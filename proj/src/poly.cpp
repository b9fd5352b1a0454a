#include "dac/poly.hpp"

#include <sstream>
#include <vector>

namespace dac {

BiPoly::BiPoly(const Rational& constant) {
  if (constant != 0) terms_[{0, 0}] = constant;
}

BiPoly BiPoly::p() { return monomial(1, 0, 1); }
BiPoly BiPoly::r() { return monomial(0, 1, 1); }

BiPoly BiPoly::monomial(int i, int j, const Rational& coefficient) {
  BiPoly out;
  out.add_term({i, j}, coefficient);
  return out;
}

Rational BiPoly::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree_p() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BiPoly::degree_r() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

void BiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BiPoly& BiPoly::operator+=(const BiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return out;
}

BiPoly& BiPoly::operator*=(const BiPoly& other) { return *this = *this * other; }

BiPoly BiPoly::operator-() const {
  BiPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

BiPoly BiPoly::pow(unsigned exponent) const {
  BiPoly result(1), base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

Rational BiPoly::evaluate(const Rational& p, const Rational& r) const {
  if (terms_.empty()) return 0;
  std::vector<Rational> p_pow{Rational(1)}, r_pow{Rational(1)};
  const int dp = degree_p(), dr = degree_r();
  for (int i = 1; i <= dp; ++i) p_pow.push_back(p_pow.back() * p);
  for (int j = 1; j <= dr; ++j) r_pow.push_back(r_pow.back() * r);
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += c * p_pow[static_cast<std::size_t>(e.first)] * r_pow[static_cast<std::size_t>(e.second)];
  return sum;
}

BiPoly BiPoly::at_p(const Rational& p) const {
  BiPoly out;
  std::vector<Rational> p_pow{Rational(1)};
  for (int i = 1; i <= degree_p(); ++i) p_pow.push_back(p_pow.back() * p);
  for (const auto& [e, c] : terms_) out.add_term({0, e.second}, c * p_pow[static_cast<std::size_t>(e.first)]);
  return out;
}

BiPoly BiPoly::at_r(const Rational& r) const {
  BiPoly out;
  std::vector<Rational> r_pow{Rational(1)};
  for (int j = 1; j <= degree_r(); ++j) r_pow.push_back(r_pow.back() * r);
  for (const auto& [e, c] : terms_) out.add_term({e.first, 0}, c * r_pow[static_cast<std::size_t>(e.second)]);
  return out;
}

BiPoly BiPoly::derivative_p() const {
  BiPoly out;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) out.add_term({e.first - 1, e.second}, c * e.first);
  return out;
}

BiPoly BiPoly::derivative_r() const {
  BiPoly out;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) out.add_term({e.first, e.second - 1}, c * e.second);
  return out;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool has_vars = e.first > 0 || e.second > 0;
    bool need_star = false;
    if (!has_vars || magnitude != 1) {
      out << magnitude.get_str();
      need_star = true;
    }
    auto var = [&](const char* name, int power) {
      if (power == 0) return;
      if (need_star) out << "*";
      out << name;
      if (power > 1) out << "^" << power;
      need_star = true;
    };
    var("p", e.first);
    var("r", e.second);
  }
  return out.str();
}

std::string BiPoly::to_csv() const {
  std::ostringstream out;
  out << "i,j,numerator,denominator\n";
  for (const auto& [e, c] : terms_) {
    out << e.first << ',' << e.second << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
  }
  return out.str();
}

namespace {

BiPoly bernstein(int s, int t, bool in_p) {
  // x^s (1-x)^t = sum_u C(t,u) (-1)^u x^(s+u)
  BiPoly out;
  mpz_class binom = 1;
  for (int u = 0; u <= t; ++u) {
    Rational c(binom);
    if (u % 2) c = -c;
    out += in_p ? BiPoly::monomial(s + u, 0, c) : BiPoly::monomial(0, s + u, c);
    binom = binom * (t - u) / (u + 1);
  }
  return out;
}

}  // namespace

BiPoly bernstein_p(int s, int t) { return bernstein(s, t, true); }
BiPoly bernstein_r(int s, int t) { return bernstein(s, t, false); }

}  // namespace dac
