#include "lcl/digits.hpp"

#include <stdexcept>

namespace lcl {

std::string DigitString::str() const {
  std::string s;
  s.reserve(digits.size());
  for (auto d : digits) {
    s.push_back(d ? '1' : '0');
  }
  return s;
}

DigitString to_digits(const Dyadic& x, std::size_t m) { return to_digits(Rational(x), m); }

DigitString to_digits(const Rational& x, std::size_t m) {
  if (x < Rational(0) || Rational(1) < x) {
    throw std::domain_error("to_digits: point outside [0,1]: " + x.str());
  }
  if (m == 0) {
    throw std::invalid_argument("to_digits: depth must be >= 1");
  }
  DigitString out;
  out.digits.reserve(m);
  if (x == Rational(1)) {
    out.digits.assign(m, 1);
    out.exact = false;
    return out;
  }
  // Binary long division.
  BigInt r = x.num();
  const BigInt& den = x.den();
  for (std::size_t i = 0; i < m; ++i) {
    r <<= 1;
    if (r >= den) {
      out.digits.push_back(1);
      r -= den;
    } else {
      out.digits.push_back(0);
    }
  }
  out.exact = r.is_zero();
  return out;
}

Dyadic from_digits(const DigitString& d) {
  BigInt num = 0;
  for (auto bit : d.digits) {
    num <<= 1;
    if (bit) {
      num += 1;
    }
  }
  return Dyadic(num, d.digits.size());
}

std::uint8_t digit_at(const Rational& x, std::uint64_t i) {
  return static_cast<std::uint8_t>(x.frac_scaled(i - 1).floor_scaled(1) == 1 ? 1 : 0);
}

} // namespace lcl
