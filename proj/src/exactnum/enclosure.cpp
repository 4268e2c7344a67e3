#include "lcl/enclosure.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcl {

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::CertifiedTrue:
    return "certified_true";
  case Verdict::CertifiedFalse:
    return "certified_false";
  case Verdict::Inconclusive:
    break;
  }
  return "inconclusive";
}

Enclosure::Enclosure(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) {
    throw std::invalid_argument("enclosure with lo > hi: " + lo_.str() + " > " + hi_.str());
  }
}

Dyadic Enclosure::mag() const { return max(lo_.abs(), hi_.abs()); }

Dyadic Enclosure::mig() const {
  if (lo_.sign() <= 0 && hi_.sign() >= 0) {
    return Dyadic(0);
  }
  return min(lo_.abs(), hi_.abs());
}

Enclosure Enclosure::round_out(std::uint64_t bits) const {
  return {lo_.round_down(bits), hi_.round_up(bits)};
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return {a.lo_ + b.lo_, a.hi_ + b.hi_};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return {a.lo_ - b.hi_, a.hi_ - b.lo_};
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (a.is_point()) {
    return b.scale(a.lo_);
  }
  if (b.is_point()) {
    return a.scale(b.lo_);
  }
  Dyadic p1 = a.lo_ * b.lo_;
  Dyadic p2 = a.lo_ * b.hi_;
  Dyadic p3 = a.hi_ * b.lo_;
  Dyadic p4 = a.hi_ * b.hi_;
  return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

Enclosure Enclosure::scale(const Dyadic& factor) const {
  if (factor.sign() >= 0) {
    return {lo_ * factor, hi_ * factor};
  }
  return {hi_ * factor, lo_ * factor};
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

PositiveBound::PositiveBound(Dyadic mantissa, BigInt shift)
    : mantissa_(std::move(mantissa)), shift_(std::move(shift)) {
  if (mantissa_.sign() <= 0) {
    throw std::invalid_argument("PositiveBound needs a positive mantissa");
  }
  if (shift_.sign() < 0) {
    throw std::invalid_argument("PositiveBound needs a non-negative shift");
  }
  if (!shift_.is_zero() && boost::multiprecision::msb(shift_) >= kMaxShiftBits) {
    shift_log2_ = static_cast<double>(boost::multiprecision::msb(shift_) + 1);
    shift_ = 0;
    huge_ = true;
  }
}

PositiveBound PositiveBound::with_shift_log2(Dyadic mantissa, double log2_shift) {
  PositiveBound b(std::move(mantissa), BigInt(0));
  b.shift_log2_ = log2_shift;
  b.huge_ = true;
  return b;
}

double PositiveBound::shift_log2() const {
  if (huge_) {
    return shift_log2_;
  }
  if (shift_.is_zero()) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log2(shift_.convert_to<double>());
}

PositiveBound PositiveBound::times(const Dyadic& positive) const {
  PositiveBound b = *this;
  b = huge_ ? with_shift_log2(mantissa_ * positive, shift_log2_)
            : PositiveBound(mantissa_ * positive, shift_);
  return b;
}

PositiveBound PositiveBound::times(const PositiveBound& o) const {
  if (!huge_ && !o.huge_) {
    return {mantissa_ * o.mantissa_, shift_ + o.shift_};
  }
  // s1 + s2 <= 2 * max(s1, s2)
  return with_shift_log2(mantissa_ * o.mantissa_, std::max(shift_log2(), o.shift_log2()) + 1.0);
}

double PositiveBound::log2() const {
  namespace mp = boost::multiprecision;
  if (huge_) {
    return -std::numeric_limits<double>::infinity();
  }
  const BigInt& n = mantissa_.num();
  double lg = static_cast<double>(mp::msb(n)) - static_cast<double>(mantissa_.exp());
  return lg - shift_.convert_to<double>();
}

} // namespace lcl
