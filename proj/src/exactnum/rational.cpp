#include "lcl/rational.hpp"

#include "lcl/enclosure.hpp"

#include <stdexcept>

namespace lcl {

namespace mp = boost::multiprecision;

Rational::Rational(const Dyadic& d) : num_(d.num()), den_(BigInt(1) << d.exp()) {}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw std::invalid_argument("zero denominator");
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos && text.substr(slash + 1).rfind("2^", 0) != 0) {
    std::string n(text.substr(0, slash));
    std::string d(text.substr(slash + 1));
    try {
      return Rational(BigInt(n), BigInt(d));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed rational: " + std::string(text));
    }
  }
  return Rational(Dyadic::parse(text));
}

std::optional<Dyadic> Rational::as_dyadic() const {
  if (!is_dyadic()) {
    return std::nullopt;
  }
  return Dyadic(num_, mp::msb(den_));
}

BigInt Rational::floor_scaled(std::uint64_t k) const {
  BigInt n = num_ << k;
  BigInt q = n / den_; // truncates toward zero
  if (n.sign() < 0 && q * den_ != n) {
    q -= 1;
  }
  return q;
}

Rational Rational::frac_scaled(std::uint64_t k) const {
  BigInt n = num_ << k;
  BigInt r = n % den_;
  if (r.sign() < 0) {
    r += den_;
  }
  return Rational(r, den_);
}

Enclosure Rational::enclose(std::uint64_t bits) const {
  if (auto d = as_dyadic()) {
    return Enclosure(*d);
  }
  BigInt lo = floor_scaled(bits);
  return Enclosure(Dyadic(lo, bits), Dyadic(lo + 1, bits));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) {
    return std::strong_ordering::less;
  }
  if (rhs < lhs) {
    return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

std::string Rational::str() const {
  if (den_ == 1) {
    return num_.str();
  }
  return num_.str() + "/" + den_.str();
}

double Rational::to_double() const { return enclose(64).mid().to_double(); }

Dyadic dyadic_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("dyadic_between: empty interval");
  }
  // The first k at which a grid point fits strictly between lo and hi.
  for (std::uint64_t k = 1;; ++k) {
    Dyadic candidate(lo.floor_scaled(k) + 1, k);
    if (Rational(candidate) < hi) {
      return candidate;
    }
  }
}

} // namespace lcl
