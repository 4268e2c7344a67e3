#pragma once

#include "lcl/dyadic.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace lcl {

class Enclosure;

/// An exact point num/den, used where sample points are not dyadic
/// (1/3 and friends). Only ordering, binary shifts and enclosures are
/// provided; it is not a general rational arithmetic type.
class Rational {
public:
  Rational() = default;
  Rational(const Dyadic& d); // NOLINT(google-explicit-constructor)
  Rational(long long v) : Rational(Dyadic(v)) {} // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);

  /// "1/3", "0.25", "5", "3/2^4".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }
  std::optional<Dyadic> as_dyadic() const;

  /// floor(this * 2^k).
  BigInt floor_scaled(std::uint64_t k) const;
  /// Fractional part of this * 2^k.
  Rational frac_scaled(std::uint64_t k) const;

  /// Dyadic enclosure of width at most 2^-bits.
  Enclosure enclose(std::uint64_t bits) const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational operator-(const Rational& o) const;
  Rational operator+(const Rational& o) const;

  std::string str() const;
  double to_double() const;

private:
  BigInt num_{0};
  BigInt den_{1};
};

/// A dyadic strictly inside (lo, hi); requires lo < hi.
Dyadic dyadic_between(const Rational& lo, const Rational& hi);

} // namespace lcl
