#pragma once

#include "lcl/curve.hpp"

#include <cstdint>

/// The strictly convex curve built from binary digits:
///
///   f(sum w_i 2^-i) = sum w_i 2^-(i^2),   F(x) = integral_0^x f.
///
/// f is strictly increasing, right-continuous, and jumps at every dyadic
/// point; its range is covered by 2^n intervals of diameter 2^-(n^2).
namespace lcl::digit_curve {

/// T_n = sum_{i>n} 2^-(i^2), width <= 2^-p.
Enclosure tail_sum(std::uint64_t n, int p);

/// Certifies T_n <= 2^-(n^2) (n >= 1).
bool tail_bound_certified(std::uint64_t n);

/// f(x), using the finite expansion at dyadic points and the all-ones
/// expansion at x = 1. Exact for dyadic x with exponent <= 64.
Enclosure f(const Rational& x, int p);

/// One-sided limits of f. Right limits equal f; the left limit at
/// x = k/2^n (k odd) is f(x - 2^-n) + T_n.
Enclosure f_sided(const Rational& x, Side side, int p);

/// F(x) by the shift recursion
///   F_s(x) = F_{s+1}(2x)/2                                   (x <= 1/2)
///   F_s(x) = T_{s+1}/4 + 2^-((1+s)^2) (x - 1/2) + F_{s+1}(2x-1)/2   (x > 1/2)
/// truncated with a certified remainder.
Enclosure F(const Rational& x, int p);

/// [head_n(k), head_n(k) + T_n]: the image of the block [k/2^n, (k+1)/2^n)
/// under f. std::out_of_range unless 0 <= k < 2^n.
Enclosure slope_block_image(std::uint64_t n, const BigInt& k);

class DigitCurve final : public Curve {
public:
  std::string_view id() const override { return "tbinc"; }
  Enclosure value(const Rational& x, int p) const override;
  Enclosure slope(const Rational& x, Side side, int p) const override;
  std::optional<PositiveBound> slope_gap(const Rational& lo, const Rational& hi) const override;
};

} // namespace lcl::digit_curve
