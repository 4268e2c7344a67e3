#pragma once

#include "lcl/dyadic.hpp"
#include "lcl/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lcl {

/// Binary digits w_1..w_m of a point of [0,1].
///
/// `exact` is true iff the point equals the finite sum. Dyadic points use
/// their finite expansion (trailing zeros). The endpoint 1 has no such
/// expansion after the binary point; it is represented by all ones with
/// exact == false, i.e. the true tail is taken to be all ones.
struct DigitString {
  std::vector<std::uint8_t> digits;
  bool exact{false};

  std::string str() const;
};

/// Domain error (std::domain_error) if x is outside [0,1].
DigitString to_digits(const Dyadic& x, std::size_t m);
DigitString to_digits(const Rational& x, std::size_t m);

/// sum w_i 2^-i.
Dyadic from_digits(const DigitString& d);

/// Digit i (1-based) of the canonical expansion of x in [0,1).
std::uint8_t digit_at(const Rational& x, std::uint64_t i);

} // namespace lcl
