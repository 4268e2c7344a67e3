#include "lcl/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcl {

namespace mp = boost::multiprecision;

BigInt floor_shift(const BigInt& n, std::uint64_t k) {
  if (n.sign() >= 0) {
    return n >> k;
  }
  // cpp_int shifts the magnitude, so negative values need explicit rounding.
  BigInt m = -n;
  BigInt q = m >> k;
  if ((q << k) != m) {
    q += 1;
  }
  return -q;
}

BigInt ceil_shift(const BigInt& n, std::uint64_t k) { return -floor_shift(-n, k); }

Dyadic::Dyadic(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) { normalize(); }

void Dyadic::normalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) {
    return;
  }
  BigInt mag = num_.sign() < 0 ? BigInt(-num_) : num_;
  std::uint64_t tz = mp::lsb(mag);
  std::uint64_t drop = std::min<std::uint64_t>(tz, exp_);
  if (drop > 0) {
    num_ >>= drop; // exact: the dropped bits are zero
    exp_ -= drop;
  }
}

Dyadic Dyadic::pow2(std::int64_t k) {
  if (k >= 0) {
    return Dyadic(BigInt(1) << static_cast<std::uint64_t>(k), 0);
  }
  return Dyadic(BigInt(1), static_cast<std::uint64_t>(-k));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.exp_ == b.exp_) {
    return Dyadic(a.num_ + b.num_, a.exp_);
  }
  if (a.exp_ < b.exp_) {
    return Dyadic((a.num_ << (b.exp_ - a.exp_)) + b.num_, b.exp_);
  }
  return Dyadic(a.num_ + (b.num_ << (a.exp_ - b.exp_)), a.exp_);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::ldexp(std::int64_t k) const {
  if (k >= 0) {
    auto up = static_cast<std::uint64_t>(k);
    if (up <= exp_) {
      return Dyadic(num_, exp_ - up);
    }
    return Dyadic(num_ << (up - exp_), 0);
  }
  return Dyadic(num_, exp_ + static_cast<std::uint64_t>(-k));
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign();
  int sb = b.sign();
  if (sa != sb) {
    return sa <=> sb;
  }
  BigInt lhs = a.num_;
  BigInt rhs = b.num_;
  if (a.exp_ < b.exp_) {
    lhs <<= (b.exp_ - a.exp_);
  } else if (b.exp_ < a.exp_) {
    rhs <<= (a.exp_ - b.exp_);
  }
  if (lhs < rhs) {
    return std::strong_ordering::less;
  }
  if (rhs < lhs) {
    return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

BigInt Dyadic::floor_scaled(std::uint64_t k) const {
  if (k >= exp_) {
    return num_ << (k - exp_);
  }
  return floor_shift(num_, exp_ - k);
}

BigInt Dyadic::ceil_scaled(std::uint64_t k) const {
  if (k >= exp_) {
    return num_ << (k - exp_);
  }
  return ceil_shift(num_, exp_ - k);
}

Dyadic Dyadic::round_down(std::uint64_t bits) const {
  if (exp_ <= bits) {
    return *this;
  }
  return Dyadic(floor_scaled(bits), bits);
}

Dyadic Dyadic::round_up(std::uint64_t bits) const {
  if (exp_ <= bits) {
    return *this;
  }
  return Dyadic(ceil_scaled(bits), bits);
}

double Dyadic::to_double() const {
  if (num_.is_zero()) {
    return 0.0;
  }
  // Keep 64 significant bits before converting so huge exponents do not
  // overflow the intermediate.
  BigInt mag = num_.sign() < 0 ? BigInt(-num_) : num_;
  std::int64_t shift = 0;
  auto top = static_cast<std::int64_t>(mp::msb(mag));
  if (top > 63) {
    shift = top - 63;
    mag >>= static_cast<std::uint64_t>(shift);
  }
  double m = static_cast<double>(mag.convert_to<std::uint64_t>());
  double v = std::ldexp(m, static_cast<int>(std::clamp<std::int64_t>(
                               shift - static_cast<std::int64_t>(exp_), -2000, 2000)));
  return num_.sign() < 0 ? -v : v;
}

std::string Dyadic::str() const {
  std::string s = num_.str();
  if (exp_ != 0) {
    s += "/2^" + std::to_string(exp_);
  }
  return s;
}

std::string Dyadic::to_decimal() const {
  if (exp_ == 0) {
    return num_.str();
  }
  // num / 2^e = num * 5^e / 10^e
  BigInt mag = num_.sign() < 0 ? BigInt(-num_) : num_;
  BigInt scaled = mag * mp::pow(BigInt(5), static_cast<unsigned>(exp_));
  std::string digits = scaled.str();
  if (digits.size() <= exp_) {
    digits.insert(0, exp_ + 1 - digits.size(), '0');
  }
  std::string out = digits.substr(0, digits.size() - exp_) + "." + digits.substr(digits.size() - exp_);
  return num_.sign() < 0 ? "-" + out : out;
}

namespace {

BigInt parse_int(std::string_view s) {
  if (s.empty()) {
    throw std::invalid_argument("empty integer");
  }
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not an integer: " + std::string(s));
  }
  return BigInt(std::string(s));
}

std::uint64_t log2_exact(const BigInt& den) {
  if (den.sign() <= 0 || (den & (den - 1)) != 0) {
    throw std::invalid_argument("denominator is not a power of two: " + den.str());
  }
  return mp::msb(den);
}

} // namespace

Dyadic Dyadic::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    std::string_view den = text.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      return Dyadic(num, std::stoull(std::string(den.substr(2))));
    }
    return Dyadic(num, log2_exact(parse_int(den)));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return Dyadic(parse_int(text), 0);
  }
  std::string whole(text.substr(0, dot));
  std::string frac(text.substr(dot + 1));
  bool negative = !whole.empty() && whole[0] == '-';
  BigInt ten_pow = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt mag = parse_int(negative ? whole.substr(1).empty() ? "0" : whole.substr(1)
                                  : (whole.empty() ? "0" : whole)) *
                   ten_pow +
               (frac.empty() ? BigInt(0) : parse_int(frac));
  // mag / 10^n is dyadic iff 5^n divides mag.
  BigInt five_pow = mp::pow(BigInt(5), static_cast<unsigned>(frac.size()));
  if (mag % five_pow != 0) {
    throw std::invalid_argument("decimal is not a dyadic rational: " + std::string(text));
  }
  Dyadic d(mag / five_pow, frac.size());
  return negative ? -d : d;
}

} // namespace lcl
