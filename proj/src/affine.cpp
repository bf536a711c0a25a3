#include "einext/affine.hpp"

#include "einext/errors.hpp"

namespace einext {

std::string to_string(const AffineRational& a, bool fractions) {
  auto fmt = [&](const Rational& r) { return fractions ? to_fraction_string(r) : to_string(r); };
  if (a.is_constant()) return fmt(a.constant);
  std::string slope_text;
  if (a.slope == Rational(1)) {
    slope_text = "t";
  } else if (a.slope == Rational(-1)) {
    slope_text = "-t";
  } else {
    slope_text = fmt(a.slope) + "t";
  }
  if (a.constant.is_zero()) return slope_text;
  if (slope_text.front() == '-') return fmt(a.constant) + slope_text;
  return fmt(a.constant) + "+" + slope_text;
}

AffineRational parse_affine(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty spectral entry");
  auto t_pos = s.find('t');
  if (t_pos == std::string::npos) return AffineRational(parse_rational(s));
  if (t_pos != s.size() - 1) throw ParseError("parameter 't' must end the term in '" + std::string(text) + "'");
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = t_pos; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string constant_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string slope_part = split == std::string::npos ? s.substr(0, t_pos) : s.substr(split, t_pos - split);
  Rational slope;
  if (slope_part.empty() || slope_part == "+") {
    slope = Rational(1);
  } else if (slope_part == "-") {
    slope = Rational(-1);
  } else {
    slope = parse_rational(slope_part);
  }
  Rational constant = constant_part.empty() ? Rational(0) : parse_rational(constant_part);
  return {constant, slope};
}

}  // namespace einext
