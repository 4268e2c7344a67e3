#include "lcl/digit_curve.hpp"

#include "lcl/digits.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace lcl::digit_curve {

namespace {

constexpr std::uint64_t kExactDigits = 64;
constexpr std::uint64_t kGapScanLimit = 1u << 14;

std::uint64_t work_bits(int p) {
  if (p < 0) {
    throw std::invalid_argument("precision must be non-negative");
  }
  return static_cast<std::uint64_t>(p) + kGuardBits;
}

Dyadic pow2_neg(std::uint64_t k) { return Dyadic(BigInt(1), k); }

// Smallest m >= 1 with T_m <= 2^-(m+1)^2+1 below 2^-(bits).
std::uint64_t digits_for(std::uint64_t bits) {
  std::uint64_t m = 1;
  while ((m + 1) * (m + 1) - 1 < bits) {
    ++m;
  }
  return m;
}

Enclosure tail_at_bits(std::uint64_t n, std::uint64_t bits) {
  // Once the first omitted term is already below 2^-bits, a one-sided bound
  // keeps exponents from growing with n^2.
  if ((n + 1) * (n + 1) > bits + 1) {
    return {Dyadic(0), pow2_neg(bits)};
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, Enclosure> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find({n, bits}); it != memo.end()) {
      return it->second;
    }
  }
  // sum_{i=n+1}^{N} 2^-(i^2) exactly, remainder < 2^-(N+1)^2 + 1.
  std::uint64_t last = n + 1;
  while ((last + 1) * (last + 1) < bits + 2) {
    ++last;
  }
  Dyadic sum(0);
  for (std::uint64_t i = n + 1; i <= last; ++i) {
    sum += pow2_neg(i * i);
  }
  Enclosure out(sum, sum + pow2_neg((last + 1) * (last + 1) - 1));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(n, bits), out); // same value on every fill
  return out;
}

void check_unit(const Rational& x) {
  if (x < Rational(0) || Rational(1) < x) {
    throw std::domain_error("tbinc: point outside [0,1]: " + x.str());
  }
}

// sum_{i<=m} w_i 2^-(i^2) over the canonical digits of x.
Dyadic head_sum(const DigitString& ds) {
  Dyadic s(0);
  for (std::uint64_t i = 0; i < ds.digits.size(); ++i) {
    if (ds.digits[i]) {
      s += pow2_neg((i + 1) * (i + 1));
    }
  }
  return s;
}

} // namespace

Enclosure tail_sum(std::uint64_t n, int p) { return tail_at_bits(n, work_bits(p)); }

bool tail_bound_certified(std::uint64_t n) {
  if (n == 0) {
    return false;
  }
  Enclosure t = tail_at_bits(n, n * n + 2 * n + 8);
  return t.hi() <= pow2_neg(n * n);
}

Enclosure f(const Rational& x, int p) {
  check_unit(x);
  const std::uint64_t bits = work_bits(p);
  if (x == Rational(1)) {
    return tail_at_bits(0, bits);
  }
  const std::uint64_t m = digits_for(bits + 1);
  if (auto d = x.as_dyadic(); d && d->exp() <= std::max(kExactDigits, m)) {
    return Enclosure(head_sum(to_digits(*d, std::max<std::uint64_t>(d->exp(), 1))));
  }
  Dyadic head = head_sum(to_digits(x, m));
  return {head, head + tail_at_bits(m, bits + 1).hi()};
}

Enclosure f_sided(const Rational& x, Side side, int p) {
  check_unit(x);
  if (side == Side::Right) {
    if (x == Rational(1)) {
      throw std::domain_error("tbinc: no right limit at 1");
    }
    return f(x, p);
  }
  if (side == Side::Left) {
    if (x == Rational(0)) {
      throw std::domain_error("tbinc: no left limit at 0");
    }
    auto d = x.as_dyadic();
    if (!d || d->exp() == 0) {
      return f(x, p); // continuous off the dyadics; f(1) already uses the all-ones tail
    }
    const std::uint64_t n = d->exp();
    return f(Rational(*d - pow2_neg(n)), p + 1) + tail_at_bits(n, work_bits(p) + 1);
  }
  auto d = x.as_dyadic();
  if (d && x != Rational(0) && x != Rational(1)) {
    throw std::domain_error("tbinc: f jumps at the dyadic point " + x.str() + "; choose a side");
  }
  return f(x, p);
}

Enclosure F(const Rational& x, int p) {
  check_unit(x);
  const std::uint64_t bits = work_bits(p);
  if (x == Rational(1)) {
    return tail_at_bits(0, bits + 1).scale(Dyadic::pow2(-1));
  }
  // Remainder after `levels` shifts is 2^-levels F_levels(x_levels), which
  // lies in [0, 2^-levels T_levels].
  std::uint64_t levels = 1;
  while (levels + (levels + 1) * (levels + 1) - 1 < bits + 3) {
    ++levels;
  }
  bool exact_end = false;
  if (auto d = x.as_dyadic(); d && d->exp() <= levels) {
    levels = d->exp();
    exact_end = true;
  }
  const Rational half(Dyadic::pow2(-1));
  Enclosure acc(Dyadic(0));
  for (std::uint64_t j = 0; j < levels; ++j) {
    Rational xj = x.frac_scaled(j);
    if (xj < half) {
      continue;
    }
    Enclosure level = tail_at_bits(j + 1, bits + 3).scale(Dyadic::pow2(-2));
    Dyadic weight = pow2_neg((j + 1) * (j + 1));
    level += (xj - half).enclose(bits + 4).scale(weight);
    acc += level.scale(pow2_neg(j));
  }
  if (!exact_end) {
    acc += Enclosure(Dyadic(0), tail_at_bits(levels, bits + 3).hi() * pow2_neg(levels));
  }
  return acc.round_out(bits);
}

Enclosure slope_block_image(std::uint64_t n, const BigInt& k) {
  if (k.sign() < 0 || k >= (BigInt(1) << n)) {
    throw std::out_of_range("slope_block_image: block index " + k.str() + " outside [0, 2^" +
                            std::to_string(n) + ")");
  }
  Dyadic head(0);
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(n - i))) {
      head += pow2_neg(i * i);
    }
  }
  return {head, head + tail_at_bits(n, n * n + 2 * n + 8).hi()};
}

Enclosure DigitCurve::value(const Rational& x, int p) const { return F(x, p); }

Enclosure DigitCurve::slope(const Rational& x, Side side, int p) const {
  check_point(x, side);
  if (side == Side::TwoSided) {
    if (x == Rational(0)) {
      return f_sided(x, Side::Right, p);
    }
    if (x == Rational(1)) {
      return f_sided(x, Side::Left, p);
    }
  }
  return f_sided(x, side, p);
}

std::optional<PositiveBound> DigitCurve::slope_gap(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) {
    return std::nullopt;
  }
  check_point(lo);
  check_point(hi);
  // Compare the finite expansion of lo with the left (all-ones tail)
  // expansion of hi. At the first difference i, lo has 0 and hi has 1, so
  // f(hi-) - f(lo+) >= 2^-(i^2) - T_i >= 2^-(i^2+1).
  auto hd = hi.as_dyadic();
  std::uint64_t prefix_len = hd ? hd->exp() : 0;
  Rational prefix = hd ? Rational(*hd - pow2_neg(prefix_len)) : hi;
  for (std::uint64_t i = 1; i <= kGapScanLimit; ++i) {
    std::uint8_t lo_digit = digit_at(lo, i);
    std::uint8_t hi_digit = 1;
    if (!hd) {
      hi_digit = digit_at(hi, i);
    } else if (i <= prefix_len) {
      hi_digit = digit_at(prefix, i);
    }
    if (lo_digit != hi_digit) {
      if (lo_digit > hi_digit) {
        return std::nullopt;
      }
      return PositiveBound(Dyadic(1), BigInt(i) * i + 1);
    }
  }
  return std::nullopt;
}

} // namespace lcl::digit_curve
