#include "dac/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dac {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class n(digits.empty() ? std::string("0") : digits, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    out = Rational(n, d);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(s), 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace dac
