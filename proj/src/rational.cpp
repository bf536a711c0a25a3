#include "einext/rational.hpp"

#include "einext/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>

namespace einext {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  v_ = Big(num) / Big(den);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  v_ = Big(num) / Big(den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw PreconditionError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << to_string(r); }

namespace {

// cpp_int reads a leading 0 as octal
Rational::BigInt decimal_digits(std::string digits) {
  const auto first = digits.find_first_not_of('0');
  return Rational::BigInt(first == std::string::npos ? std::string("0") : digits.substr(first));
}

Rational::BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("bad number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad number '" + std::string(whole) + "'");
  }
  Rational::BigInt v = decimal_digits(std::string(s.substr(start)));
  return s.front() == '-' ? Rational::BigInt(-v) : v;
}

Rational pow10(long long e) {
  Rational::BigInt p = 1;
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) p *= 10;
  return e >= 0 ? Rational(p, 1) : Rational(1, p);
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    auto parsed = parse_integer(exp_text, whole);
    if (parsed > 400 || parsed < -400) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    exponent = parsed.convert_to<long long>();
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw ParseError("bad number '" + std::string(whole) + "'");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw ParseError("bad number '" + std::string(whole) + "'");
    }
  }
  if (digits.empty()) throw ParseError("bad number '" + std::string(whole) + "'");
  Rational mantissa(decimal_digits(digits), Rational::BigInt(1));
  Rational r = mantissa * pow10(exponent - frac_digits);
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(s.substr(0, slash), text);
    auto den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(s, text);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite value cannot be made exact");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)),
                       std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::string to_fraction_string(const Rational& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

std::string to_string(const Rational& r) {
  if (r.is_integer()) return r.numerator().str();
  return to_fraction_string(r);
}

Rational::BigInt gcd(const Rational::BigInt& a, const Rational::BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

Eigen::VectorXd to_double(const RationalVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

}  // namespace einext
