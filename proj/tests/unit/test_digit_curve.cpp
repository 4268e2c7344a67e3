#include <doctest.h>

#include "lcl/digit_curve.hpp"

#include <algorithm>
#include <random>

namespace dc = lcl::digit_curve;
using lcl::Dyadic;
using lcl::Enclosure;
using lcl::Rational;
using lcl::Side;

namespace {
Dyadic D(const char* s) { return Dyadic::parse(s); }
bool near(const Enclosure& e, double v, double tol) {
  return e.lo().to_double() - tol <= v && v <= e.hi().to_double() + tol;
}
} // namespace

TEST_CASE("tail sums") {
  CHECK(near(dc::tail_sum(0, 60), 0.564468413605938579, 1e-15));
  CHECK(near(dc::tail_sum(1, 60), 0.06446841360593858, 1e-15));
  CHECK(near(dc::tail_sum(2, 60), 0.0019684136059385793, 1e-15));
  CHECK(dc::tail_sum(3, 40).width() <= Dyadic::pow2(-40));
  for (std::uint64_t n = 1; n <= 12; ++n) {
    CHECK(dc::tail_bound_certified(n));
  }
}

TEST_CASE("f at sample points") {
  CHECK(dc::f(Rational(0), 40) == Enclosure(Dyadic(0)));
  CHECK(dc::f(Rational(D("1/2")), 40) == Enclosure(D("1/2")));
  CHECK(dc::f(Rational(D("3/4")), 40) == Enclosure(D("1/2") + D("1/16")));
  CHECK(near(dc::f(Rational(1), 50), 0.564468413605938579, 1e-14));
  Enclosure third = dc::f(Rational::parse("1/3"), 40);
  CHECK(third.width() <= Dyadic::pow2(-40));
  CHECK(near(third, 0.0625152588036144, 1e-12));
}

TEST_CASE("left limits jump by the tail") {
  Enclosure left = dc::f_sided(Rational(D("1/2")), Side::Left, 50);
  CHECK(near(left, 0.564468413605938579 - 0.5, 1e-14));
  CHECK_THROWS_AS(dc::f_sided(Rational(D("1/2")), Side::TwoSided, 40), std::domain_error);
  CHECK_THROWS_AS(dc::f_sided(Rational(0), Side::Left, 40), std::domain_error);
  CHECK_THROWS_AS(dc::f_sided(Rational(1), Side::Right, 40), std::domain_error);
}

TEST_CASE("F closed forms and brackets") {
  CHECK(near(dc::F(Rational(1), 50), 0.2822342068029693, 1e-14));
  CHECK(near(dc::F(Rational(D("1/2")), 50), 0.016117103401484645, 1e-14));
  CHECK(dc::F(Rational(0), 40) == Enclosure(Dyadic(0)));
  Enclosure third = dc::F(Rational::parse("1/3"), 40);
  CHECK(third.width() <= Dyadic::pow2(-40));
  // Riemann bracket at 2^14 panels (independent oracle)
  Enclosure one = dc::F(Rational(1), 40);
  CHECK(0.282234206803 - 1e-12 <= one.lo().to_double());
  CHECK(one.hi().to_double() <= 0.282268659221 + 1e-12);
}

TEST_CASE("F is convex along a dyadic grid") {
  const int p = 40;
  for (int k = 1; k < 63; ++k) {
    Enclosure l = dc::F(Rational(Dyadic(k - 1, 6)), p);
    Enclosure m = dc::F(Rational(Dyadic(k, 6)), p);
    Enclosure r = dc::F(Rational(Dyadic(k + 1, 6)), p);
    CHECK((l + r - m - m).hi() >= Dyadic(0));
  }
}

TEST_CASE("slope block images") {
  Enclosure b = dc::slope_block_image(2, 2);
  CHECK(b.lo() == D("1/2"));
  CHECK(b.width() <= Dyadic::pow2(-4));
  CHECK_THROWS_AS(dc::slope_block_image(2, 4), std::out_of_range);
}

TEST_CASE("slope gap witnesses") {
  dc::DigitCurve c;
  auto g = c.slope_gap(Rational(D("1/4")), Rational(D("3/4")));
  REQUIRE(g);
  CHECK(g->shift() == 2);
  CHECK(!c.slope_gap(Rational(D("3/4")), Rational(D("1/4"))));
  auto thin = c.slope_gap(Rational::parse("1/3"), Rational::parse("1/3") + Rational(Dyadic(1, 30)));
  REQUIRE(thin);
}

namespace {
Dyadic random_point(std::mt19937_64& rng, unsigned bits) { return Dyadic(lcl::BigInt(rng() >> (64 - bits)), bits); }
} // namespace

TEST_CASE("f strictly increasing on seeded pairs") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    Dyadic x = random_point(rng, 20);
    Dyadic y = random_point(rng, 20);
    if (y < x) {
      std::swap(x, y);
    }
    if (x == y) {
      continue;
    }
    // f is exact at these points; the first differing digit j <= 20 moves f by >= 2^-(j^2)
    Enclosure fx = dc::f_sided(Rational(x), Side::Right, 60);
    Enclosure fy = dc::f_sided(Rational(y), Side::Right, 60);
    CHECK(fx.hi() < fy.lo());
  }
}

TEST_CASE("F strictly below its chords on seeded triples") {
  std::mt19937_64 rng(22);
  const int p = 300;
  for (int t = 0; t < 500; ++t) {
    Dyadic v[3] = {random_point(rng, 12), random_point(rng, 12), random_point(rng, 12)};
    std::sort(v, v + 3);
    if (v[0] == v[1] || v[1] == v[2]) {
      continue;
    }
    Enclosure fx = dc::F(Rational(v[0]), p);
    Enclosure fy = dc::F(Rational(v[1]), p);
    Enclosure fz = dc::F(Rational(v[2]), p);
    Enclosure chord_minus_curve = fx.scale(v[2] - v[1]) + fz.scale(v[1] - v[0]) - fy.scale(v[2] - v[0]);
    CHECK(Dyadic(0) < chord_minus_curve.lo());
  }
}

TEST_CASE("difference quotients of F lie between the one-sided slopes") {
  std::mt19937_64 rng(23);
  const int p = 60;
  for (int t = 0; t < 200; ++t) {
    const auto k = static_cast<std::int64_t>(1 + rng() % 20);
    const Dyadic h = Dyadic::pow2(-k);
    Dyadic x = random_point(rng, 24);
    if (Dyadic(1) < x + h) {
      x = Dyadic(1) - h;
    }
    Enclosure q = (dc::F(Rational(x + h), p) - dc::F(Rational(x), p)).scale(Dyadic::pow2(k));
    Enclosure lo = dc::f_sided(Rational(x), Side::Right, p);
    Enclosure hi = dc::f_sided(Rational(x + h), Side::Left, p);
    CHECK(lo.lo() <= q.hi());
    CHECK(q.lo() <= hi.hi());
  }
}

TEST_CASE("slope block images contain f") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 200; ++t) {
    Dyadic x = random_point(rng, 30);
    const std::uint64_t n = 1 + rng() % 6;
    Enclosure b = dc::slope_block_image(n, x.floor_scaled(n));
    Enclosure fx = dc::f_sided(Rational(x), Side::Right, 60);
    CHECK(b.lo() <= fx.lo());
    CHECK(fx.hi() <= b.hi());
  }
}

TEST_CASE("one-sided slopes are ordered") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 200; ++t) {
    Dyadic x = random_point(rng, 16);
    if (x.is_zero()) {
      continue;
    }
    // the jump at a point with last digit j is about 2^-(j^2) <= 2^-256
    CHECK(dc::f_sided(Rational(x), Side::Left, 300).hi() < dc::f_sided(Rational(x), Side::Right, 300).lo());
  }
}
