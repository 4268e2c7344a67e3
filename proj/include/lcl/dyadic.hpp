#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lcl {

using BigInt = boost::multiprecision::cpp_int;

/// floor(n / 2^k) and ceil(n / 2^k) for signed n.
BigInt floor_shift(const BigInt& n, std::uint64_t k);
BigInt ceil_shift(const BigInt& n, std::uint64_t k);

/// Exact binary rational num / 2^exp.
///
/// Stored canonically: exp == 0 or num is odd, so two Dyadics are equal iff
/// their fields are equal.
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(long long value) : num_(value) {} // NOLINT(google-explicit-constructor)
  Dyadic(BigInt num, std::uint64_t exp);

  /// 2^k for any signed k.
  static Dyadic pow2(std::int64_t k);

  /// Parses "3/8", "-5", "0.375" or "3/2^4". Throws std::invalid_argument.
  static Dyadic parse(std::string_view text);

  const BigInt& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return exp_ == 0; }

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  /// this * 2^k.
  Dyadic ldexp(std::int64_t k) const;
  Dyadic half() const { return ldexp(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// floor(this * 2^k) and ceil(this * 2^k).
  BigInt floor_scaled(std::uint64_t k) const;
  BigInt ceil_scaled(std::uint64_t k) const;

  /// Nearest multiple of 2^-bits below / above.
  Dyadic round_down(std::uint64_t bits) const;
  Dyadic round_up(std::uint64_t bits) const;

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;
  /// "num/2^exp" (or plain "num" when exp == 0).
  std::string str() const;
  /// Exact decimal expansion; always finite for a dyadic.
  std::string to_decimal() const;

private:
  void normalize();

  BigInt num_{0};
  std::uint64_t exp_{0};
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

} // namespace lcl
