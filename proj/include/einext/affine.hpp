#pragma once

#include "einext/rational.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace einext {

// Exact value c + s*t, linear in the single symbolic parameter t.
// Spectral entries and curvature exponents use this so that a free catalog
// parameter family is grouped symbolically, not numerically.
struct AffineRational {
  Rational constant;
  Rational slope;

  AffineRational() = default;
  AffineRational(Rational c) : constant(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  AffineRational(Rational c, Rational s) : constant(std::move(c)), slope(std::move(s)) {}

  static AffineRational parameter() { return {Rational(0), Rational(1)}; }

  bool is_constant() const { return slope.is_zero(); }
  bool is_zero() const { return constant.is_zero() && slope.is_zero(); }
  Rational evaluate(const Rational& t) const { return constant + slope * t; }

  AffineRational& operator+=(const AffineRational& o) {
    constant += o.constant;
    slope += o.slope;
    return *this;
  }
  AffineRational& operator-=(const AffineRational& o) {
    constant -= o.constant;
    slope -= o.slope;
    return *this;
  }
  AffineRational& operator*=(const Rational& k) {
    constant *= k;
    slope *= k;
    return *this;
  }
  friend AffineRational operator+(AffineRational a, const AffineRational& b) { return a += b; }
  friend AffineRational operator-(AffineRational a, const AffineRational& b) { return a -= b; }
  friend AffineRational operator*(AffineRational a, const Rational& k) { return a *= k; }
  friend AffineRational operator*(const Rational& k, AffineRational a) { return a *= k; }
  AffineRational operator-() const { return {-constant, -slope}; }

  friend bool operator==(const AffineRational&, const AffineRational&) = default;
  friend std::strong_ordering operator<=>(const AffineRational& a, const AffineRational& b) {
    if (auto c = a.constant <=> b.constant; c != 0) return c;
    return a.slope <=> b.slope;
  }
};

// "1/2", "t", "-2t", "1/2+3/2t". Constants alone print as num/den when `fractions` is set.
std::string to_string(const AffineRational& a, bool fractions = false);

// Inverse of to_string; also accepts plain decimals. The parameter symbol is 't'.
AffineRational parse_affine(std::string_view text);

}  // namespace einext
