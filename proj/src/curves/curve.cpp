#include "lcl/curve.hpp"

#include "lcl/cantor.hpp"
#include "lcl/digit_curve.hpp"

#include <stdexcept>
#include <string>

namespace lcl {

std::string_view to_string(Side s) {
  switch (s) {
  case Side::Left:
    return "left";
  case Side::Right:
    return "right";
  case Side::TwoSided:
    break;
  }
  return "twosided";
}

Side side_from_string(std::string_view s) {
  if (s == "left") {
    return Side::Left;
  }
  if (s == "right") {
    return Side::Right;
  }
  if (s == "twosided" || s == "two-sided") {
    return Side::TwoSided;
  }
  throw std::invalid_argument("unknown side: " + std::string(s));
}

void Curve::check_point(const Rational& x) const {
  if (x < Rational(0) || Rational(1) < x) {
    throw std::domain_error(std::string(id()) + ": point outside [0,1]: " + x.str());
  }
}

void Curve::check_point(const Rational& x, Side side) const {
  check_point(x);
  if (side == Side::Left && x == Rational(0)) {
    throw std::domain_error(std::string(id()) + ": no left slope at 0");
  }
  if (side == Side::Right && x == Rational(1)) {
    throw std::domain_error(std::string(id()) + ": no right slope at 1");
  }
}

Dyadic positive_lower_bound(const Rational& r) {
  if (r <= Rational(0)) {
    throw std::invalid_argument("positive_lower_bound of a non-positive value");
  }
  for (std::uint64_t k = 1;; k *= 2) {
    BigInt n = r.floor_scaled(k);
    if (n.sign() > 0) {
      return Dyadic(n, k);
    }
  }
}

Enclosure ParabolaCurve::value(const Rational& x, int p) const {
  check_point(x);
  if (auto d = x.as_dyadic()) {
    return Enclosure(*d * *d);
  }
  auto q = static_cast<std::uint64_t>(p + kGuardBits);
  Enclosure e = x.enclose(q + 2);
  return (e * e).round_out(q);
}

Enclosure ParabolaCurve::slope(const Rational& x, Side side, int p) const {
  check_point(x, side);
  if (auto d = x.as_dyadic()) {
    return Enclosure(d->ldexp(1));
  }
  auto q = static_cast<std::uint64_t>(p + kGuardBits);
  return x.enclose(q + 1).scale(Dyadic(2));
}

std::optional<PositiveBound> ParabolaCurve::slope_gap(const Rational& lo, const Rational& hi) const {
  if (!(lo < hi)) {
    return std::nullopt;
  }
  return PositiveBound(positive_lower_bound(hi - lo).ldexp(1), 0);
}

std::unique_ptr<Curve> make_curve(std::string_view id) {
  if (id == "parabola") {
    return std::make_unique<ParabolaCurve>();
  }
  if (id == "tbinc") {
    return std::make_unique<digit_curve::DigitCurve>();
  }
  if (id == "tcantc") {
    return std::make_unique<cantor::CantorCurve>();
  }
  throw std::invalid_argument("unknown curve id: " + std::string(id));
}

} // namespace lcl
