#include "lcl/oracles.hpp"

#include "lcl/digit_curve.hpp"

#include <optional>

namespace lcl::oracles {

namespace {

// p/q with q > 0, plus whether the bound itself is attained.
struct Bound {
  BigInt num;
  BigInt den{1};
  bool closed{true};
};

int cmp(const Bound& a, const Bound& b) {
  BigInt l = a.num * b.den;
  BigInt r = b.num * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

struct Range {
  Bound lo{0, 1, true};
  Bound hi{1, 1, true};
  bool empty{false};

  void raise(const Bound& b) {
    int c = cmp(b, lo);
    if (c > 0 || (c == 0 && !b.closed)) {
      lo = b;
    }
  }
  void lower(const Bound& b) {
    int c = cmp(b, hi);
    if (c < 0 || (c == 0 && !b.closed)) {
      hi = b;
    }
  }
  bool nonempty() const {
    if (empty) {
      return false;
    }
    int c = cmp(lo, hi);
    return c < 0 || (c == 0 && lo.closed && hi.closed);
  }
};

Bound frac(BigInt num, BigInt den, bool closed) {
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  return {std::move(num), std::move(den), closed};
}

// start + s d in [lo, hi) (or [lo, hi] when hi_closed), for s in the range.
void constrain(Range& r, const BigInt& start, const BigInt& d, const BigInt& lo, const BigInt& hi, bool hi_closed) {
  if (d.is_zero()) {
    bool ok = lo <= start && (hi_closed ? start <= hi : start < hi);
    r.empty = r.empty || !ok;
    return;
  }
  Bound a = frac(lo - start, d, true);
  Bound b = frac(hi - start, d, hi_closed);
  if (d.sign() > 0) {
    r.raise(a);
    r.lower(b);
  } else {
    r.lower(a);
    r.raise(b);
  }
}

BigInt scaled(const Dyadic& v, std::uint64_t e) { return v.num() << (e - v.exp()); }

} // namespace

std::uint64_t brute_force_boxes(const std::vector<lines::Segment>& segments, const lines::Window& w, unsigned k) {
  std::uint64_t e = k;
  for (const Dyadic* d : {&w.x0, &w.y0, &w.x1, &w.y1}) {
    e = std::max(e, d->exp());
  }
  for (const auto& s : segments) {
    for (const Dyadic* d : {&s.x0, &s.y0, &s.x1, &s.y1}) {
      e = std::max(e, d->exp());
    }
  }
  const BigInt h = BigInt(1) << (e - k);
  const BigInt X0 = scaled(w.x0, e), Y0 = scaled(w.y0, e);
  const BigInt X1 = scaled(w.x1, e), Y1 = scaled(w.y1, e);
  std::uint64_t count = 0;
  for (BigInt xs = X0; xs < X1; xs += h) {
    BigInt xe = xs + h;
    bool last_col = xe >= X1;
    for (BigInt ys = Y0; ys < Y1; ys += h) {
      BigInt ye = ys + h;
      bool last_row = ye >= Y1;
      for (const auto& s : segments) {
        BigInt ax = scaled(s.x0, e), ay = scaled(s.y0, e);
        BigInt dx = scaled(s.x1, e) - ax, dy = scaled(s.y1, e) - ay;
        Range r;
        constrain(r, ax, dx, xs, last_col ? X1 : xe, last_col);
        constrain(r, ay, dy, ys, last_row ? Y1 : ye, last_row);
        if (r.nonempty()) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

Enclosure tbinc_riemann_bracket(const Rational& x, unsigned q, int p) {
  auto d = x.as_dyadic();
  if (!d) {
    throw std::invalid_argument("tbinc_riemann_bracket needs a dyadic endpoint");
  }
  const Dyadic h = d->ldexp(-static_cast<std::int64_t>(q));
  Dyadic lower(0);
  Dyadic upper(0);
  Enclosure prev = digit_curve::f(Rational(0), p);
  for (std::uint64_t j = 1; j <= (std::uint64_t{1} << q); ++j) {
    // f is increasing, so f(t_j) bounds it on [t_{j-1}, t_j] from above
    Enclosure cur = digit_curve::f(Rational(h * Dyadic(static_cast<long long>(j))), p);
    lower += prev.lo();
    upper += cur.hi();
    prev = cur;
  }
  return {lower * h, upper * h};
}

} // namespace lcl::oracles
