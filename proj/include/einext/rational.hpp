#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace einext {

/*
 * Exact rational scalar usable as an Eigen matrix coefficient.
 *
 * Boost's cpp_rational cannot be placed in Eigen expressions directly (its
 * converting constructors collide with Eigen's scalar promotion), so this
 * wrapper exposes only the arithmetic Eigen needs.
 */
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  using BigInt = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(Big v) : v_(std::move(v)) {}
  Rational(const BigInt& num, const BigInt& den);

  const Big& value() const { return v_; }
  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }
  double to_double() const { return v_.convert_to<double>(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(Big(-v_)); }
  Rational operator+() const { return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational abs(const Rational& a) { return a.v_ < 0 ? -a : a; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  Big v_;
};

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Accepts "7", "-2/3", "0.25", "1e-3". Throws ParseError.
Rational parse_rational(std::string_view text);

// Exact value of the shortest decimal that round-trips to `x` (so 0.1 -> 1/10).
Rational rational_from_double(double x);

// Always "num/den", e.g. "2/1", "-1/2".
std::string to_fraction_string(const Rational& r);

// "3" for integers, "num/den" otherwise.
std::string to_string(const Rational& r);

Rational::BigInt gcd(const Rational::BigInt& a, const Rational::BigInt& b);

Eigen::VectorXd to_double(const RationalVector& v);

}  // namespace einext

namespace Eigen {

template <>
struct NumTraits<einext::Rational> : GenericNumTraits<einext::Rational> {
  using Real = einext::Rational;
  using NonInteger = einext::Rational;
  using Nested = einext::Rational;
  using Literal = einext::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static inline einext::Rational epsilon() { return einext::Rational(0); }
  static inline einext::Rational dummy_precision() { return einext::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
