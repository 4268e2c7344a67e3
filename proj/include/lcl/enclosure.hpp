#pragma once

#include "lcl/dyadic.hpp"

#include <stdexcept>
#include <string_view>

namespace lcl {

/// Raised when a requested width cannot be reached within internal budgets.
class PrecisionFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Three-valued outcome of a certified comparison.
enum class Verdict { CertifiedTrue, CertifiedFalse, Inconclusive };

std::string_view to_string(Verdict v);

/// Closed interval [lo, hi] with dyadic endpoints that is guaranteed to
/// contain some exact real value.
class Enclosure {
public:
  Enclosure() = default;
  Enclosure(const Dyadic& point) : lo_(point), hi_(point) {} // NOLINT(google-explicit-constructor)
  Enclosure(Dyadic lo, Dyadic hi);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const { return (lo_ + hi_).half(); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& e) const { return lo_ <= e.lo_ && e.hi_ <= hi_; }
  bool overlaps(const Enclosure& e) const { return !(hi_ < e.lo_ || e.hi_ < lo_); }

  /// Every member strictly below / at most every member of `o`.
  bool certainly_lt(const Enclosure& o) const { return hi_ < o.lo_; }
  bool certainly_le(const Enclosure& o) const { return hi_ <= o.lo_; }

  /// sup |x| and inf |x| over the members.
  Dyadic mag() const;
  Dyadic mig() const;

  /// Outward rounding to multiples of 2^-bits.
  Enclosure round_out(std::uint64_t bits) const;

  Enclosure operator-() const { return {-hi_, -lo_}; }
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
  Enclosure& operator-=(const Enclosure& o) { return *this = *this - o; }

  Enclosure scale(const Dyadic& factor) const;

  friend bool operator==(const Enclosure& a, const Enclosure& b) = default;

private:
  Dyadic lo_;
  Dyadic hi_;
};

Enclosure hull(const Enclosure& a, const Enclosure& b);

/// A strictly positive lower bound mantissa * 2^-shift. The shift may be far
/// too large to materialize as a Dyadic (flat stretches of the Cantor curve
/// give bounds like 2^-(10^15)), so it is kept separately; past
/// kMaxShiftBits bits only an upper bound on log2(shift) is retained.
class PositiveBound {
public:
  static constexpr std::uint64_t kMaxShiftBits = 1u << 16;

  PositiveBound(Dyadic mantissa, BigInt shift);
  /// mantissa * 2^-s for some unknown s <= 2^log2_shift.
  static PositiveBound with_shift_log2(Dyadic mantissa, double log2_shift);

  const Dyadic& mantissa() const { return mantissa_; }
  /// Exact shift; only meaningful when !huge().
  const BigInt& shift() const { return shift_; }
  bool huge() const { return huge_; }
  /// log2 of (an upper bound of) the shift.
  double shift_log2() const;

  PositiveBound times(const Dyadic& positive) const;
  PositiveBound times(const PositiveBound& o) const;

  /// Approximate log2 of the bound (for reports); -inf when huge.
  double log2() const;

private:
  Dyadic mantissa_;
  BigInt shift_;
  double shift_log2_{0.0};
  bool huge_{false};
};

} // namespace lcl
