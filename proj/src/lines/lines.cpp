#include "lcl/lines.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace lcl::lines {

namespace {

std::uint64_t work_bits(int p) { return static_cast<std::uint64_t>(p) + kGuardBits; }

// Curve data at the 2^g + 1 grid points, shared by every line on that curve.
struct TangencyGrid {
  std::vector<Enclosure> value;
  std::vector<Enclosure> right; // F'_+, unused at 1
  std::vector<Enclosure> left;  // F'_-, unused at 0
};

std::shared_ptr<const TangencyGrid> tangency_grid(const Curve& curve, unsigned g, int p) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, unsigned, int>, std::shared_ptr<const TangencyGrid>> cache;
  auto key = std::make_tuple(std::string(curve.id()), g, p);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) {
      return it->second;
    }
  }
  const std::uint64_t n = std::uint64_t{1} << g;
  auto grid = std::make_shared<TangencyGrid>();
  grid->value.resize(n + 1);
  grid->right.resize(n + 1);
  grid->left.resize(n + 1);
  for (std::uint64_t j = 0; j <= n; ++j) {
    Rational u(Dyadic(BigInt(j), g));
    grid->value[j] = curve.value(u, p);
    if (j < n) {
      grid->right[j] = curve.slope(u, Side::Right, p);
    }
    if (j > 0) {
      grid->left[j] = curve.slope(u, Side::Left, p);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(grid)).first->second;
}

// a * x for a possibly non-dyadic x.
Enclosure times_point(const Enclosure& a, const Rational& x, std::uint64_t bits) {
  if (auto d = x.as_dyadic()) {
    return a.scale(*d);
  }
  return a * x.enclose(bits);
}

BigInt ceil_scaled(const Rational& r, std::uint64_t k) {
  BigInt f = r.floor_scaled(k);
  return Rational(Dyadic(f, k)) == r ? f : BigInt(f + 1);
}

Rational quotient(const Dyadic& num, const Dyadic& den) {
  // (n1 / 2^e1) / (n2 / 2^e2) = n1 2^e2 / (n2 2^e1)
  return {num.num() << den.exp(), den.num() << num.exp()};
}

} // namespace

std::string_view to_string(LineKind k) { return k == LineKind::Vertical ? "vertical" : "tangent"; }

std::string_view to_string(Intersection v) {
  return v == Intersection::CertifiedSingle ? "certified_single" : "inconclusive";
}

Line tangent_at(const Curve& curve, const Rational& x0, Side side, int p) {
  curve.check_point(x0, side);
  const std::uint64_t bits = work_bits(p);
  Line line;
  line.kind = LineKind::Tangent;
  line.x0 = x0;
  line.side = side;
  line.a = curve.slope(x0, side, p);
  line.b = (curve.value(x0, p) - times_point(line.a, x0, bits + 4)).round_out(bits + 2);
  const Dyadic limit = Dyadic::pow2(1 - p);
  if (limit < line.a.width() || limit < line.b.width()) {
    throw PrecisionFailure("tangent at " + x0.str() + " wider than 2^-" + std::to_string(p - 1));
  }
  return line;
}

Line vertical_at(const Rational& x0) {
  Line line;
  line.kind = LineKind::Vertical;
  line.x0 = x0;
  line.side = Side::TwoSided;
  return line;
}

PointEnc realize(const Line& line, const Dyadic& t) {
  if (line.is_vertical()) {
    throw std::invalid_argument("a vertical line has no code point");
  }
  return {Enclosure(t), line.a.scale(t) + line.b};
}

Verdict verify_code_lipschitz(const Line& l1, const Line& l2) {
  if (l1.is_vertical() || l2.is_vertical()) {
    throw std::invalid_argument("verify_code_lipschitz needs two tangent lines");
  }
  if (l1.x0 == l2.x0 && l1.side == l2.side) {
    return Verdict::CertifiedTrue; // the same line
  }
  Enclosure da = l1.a - l2.a;
  Enclosure db = l1.b - l2.b;
  if (db.mag() <= da.mig()) {
    return Verdict::CertifiedTrue;
  }
  if (da.mag() < db.mig()) {
    return Verdict::CertifiedFalse;
  }
  return Verdict::Inconclusive;
}

Verdict verify_code_lipschitz(const Curve& curve, const Line& l1, const Line& l2, int p) {
  Verdict v = verify_code_lipschitz(l1, l2);
  if (v != Verdict::Inconclusive) {
    return v;
  }
  auto d = curve.code_difference(l1.x0, l1.side, l2.x0, l2.side, p);
  if (!d) {
    return v;
  }
  if (d->db.mag() <= d->da.mig()) {
    return Verdict::CertifiedTrue;
  }
  if (d->da.mag() < d->db.mig()) {
    return Verdict::CertifiedFalse;
  }
  return Verdict::Inconclusive;
}

BelowReport verify_below(const Curve& curve, const Line& line, unsigned g, int p) {
  if (line.is_vertical()) {
    throw std::invalid_argument("verify_below needs a tangent line");
  }
  if (g > 24) {
    throw std::invalid_argument("grid depth above 24");
  }
  auto grid = tangency_grid(curve, g, p);
  const std::uint64_t n = std::uint64_t{1} << g;
  const Dyadic h = Dyadic::pow2(-static_cast<std::int64_t>(g));
  const Rational& x0 = line.x0;
  auto gap_at = [&](std::uint64_t j) {
    Dyadic u(BigInt(j), g);
    return grid->value[j] - (line.a.scale(u) + line.b);
  };

  // The structural route relies on the line being the tangent at x0, so it is
  // only used when the line's enclosures admit that tangent.
  const std::uint64_t bits = work_bits(p);
  const Enclosure slope0 = curve.slope(x0, line.side, p);
  const bool tangent_ok = line.a.overlaps(slope0) &&
                          line.b.overlaps(curve.value(x0, p) - times_point(line.a, x0, bits + 4));

  BelowReport report;
  for (std::uint64_t j = 0; j < n; ++j) {
    Dyadic u(BigInt(j), g);
    Dyadic v(BigInt(j + 1), g);
    Rational ur(u), vr(v);
    if (ur <= x0 && x0 <= vr) {
      report.equality_blocks.push_back(j);
      continue;
    }
    // convex lower bounds from either end of the block
    Dyadic from_left = gap_at(j).lo() + min(Dyadic(0), (grid->right[j] - line.a).lo()) * h;
    Dyadic from_right = gap_at(j + 1).lo() - max(Dyadic(0), (grid->left[j + 1] - line.a).hi()) * h;
    if (Dyadic(0) < max(from_left, from_right)) {
      ++report.numeric_blocks;
      continue;
    }
    std::optional<PositiveBound> witness;
    if (tangent_ok && x0 < ur) {
      witness = curve.slope_gap(x0, Rational(dyadic_between(x0, ur)));
    } else if (tangent_ok) {
      witness = curve.slope_gap(Rational(dyadic_between(vr, x0)), x0);
    }
    if (witness) {
      ++report.structural_blocks;
    } else {
      report.inconclusive_blocks.push_back(j);
    }
  }
  report.certified_below = report.inconclusive_blocks.empty();
  return report;
}

Intersection single_intersection(const Curve& curve, const Line& line, unsigned g, int p) {
  if (line.is_vertical()) {
    return Intersection::CertifiedSingle; // a graph meets a vertical line once
  }
  BelowReport r = verify_below(curve, line, g, p);
  if (!r.certified_below || r.equality_blocks.empty() || r.equality_blocks.size() > 2) {
    return Intersection::Inconclusive;
  }
  if (r.equality_blocks.size() == 2 && r.equality_blocks[1] != r.equality_blocks[0] + 1) {
    return Intersection::Inconclusive;
  }
  return Intersection::CertifiedSingle;
}

Window Window::parse(std::string_view text) {
  std::vector<Dyadic> parts;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    parts.push_back(Dyadic::parse(item));
  }
  if (parts.size() != 4) {
    throw std::invalid_argument("window needs x0,y0,x1,y1: " + s);
  }
  Window w{parts[0], parts[1], parts[2], parts[3]};
  if (!(w.x0 < w.x1) || !(w.y0 < w.y1)) {
    throw std::invalid_argument("empty window: " + s);
  }
  return w;
}

std::string Window::str() const {
  return x0.str() + "," + y0.str() + "," + x1.str() + "," + y1.str();
}

std::optional<Segment> clip(const Line& line, const Window& w) {
  if (line.is_vertical()) {
    auto x = line.x0.as_dyadic();
    if (!x) {
      throw std::invalid_argument("vertical line at a non-dyadic point");
    }
    if (*x < w.x0 || w.x1 < *x) {
      return std::nullopt;
    }
    return Segment{*x, w.y0, *x, w.y1};
  }
  const Dyadic a = line.a.mid();
  const Dyadic b = line.b.mid();
  if (a.is_zero()) {
    if (b < w.y0 || w.y1 < b) {
      return std::nullopt;
    }
    return Segment{w.x0, b, w.x1, b};
  }
  Rational t0 = quotient(w.y0 - b, a);
  Rational t1 = quotient(w.y1 - b, a);
  if (t1 < t0) {
    std::swap(t0, t1);
  }
  Rational lo = std::max(Rational(w.x0), t0);
  Rational hi = std::min(Rational(w.x1), t1);
  if (hi < lo) {
    return std::nullopt;
  }
  Dyadic tl(ceil_scaled(lo, kClipBits), kClipBits);
  Dyadic th(hi.floor_scaled(kClipBits), kClipBits);
  if (auto d = lo.as_dyadic()) {
    tl = *d;
  }
  if (auto d = hi.as_dyadic()) {
    th = *d;
  }
  if (th < tl) {
    return std::nullopt;
  }
  return Segment{tl, a * tl + b, th, a * th + b};
}

std::string_view to_string(SidePolicy s) {
  switch (s) {
  case SidePolicy::Left:
    return "left";
  case SidePolicy::Right:
    return "right";
  case SidePolicy::TwoSided:
    return "twosided";
  case SidePolicy::Random:
    break;
  }
  return "random";
}

SidePolicy side_policy_from_string(std::string_view s) {
  if (s == "random") {
    return SidePolicy::Random;
  }
  switch (side_from_string(s)) {
  case Side::Left:
    return SidePolicy::Left;
  case Side::Right:
    return SidePolicy::Right;
  case Side::TwoSided:
    break;
  }
  return SidePolicy::TwoSided;
}

std::string_view to_string(Scheme s) {
  switch (s) {
  case Scheme::DyadicGrid:
    return "dyadic-grid";
  case Scheme::SeededRandom:
    return "seeded-random";
  case Scheme::Explicit:
    break;
  }
  return "explicit";
}

Scheme scheme_from_string(std::string_view s) {
  if (s == "dyadic-grid" || s == "grid") {
    return Scheme::DyadicGrid;
  }
  if (s == "seeded-random" || s == "random") {
    return Scheme::SeededRandom;
  }
  if (s == "explicit") {
    return Scheme::Explicit;
  }
  throw std::invalid_argument("unknown sampling scheme: " + std::string(s));
}

std::vector<Rational> sample_points(const SampleSpec& spec) {
  std::vector<Rational> out;
  switch (spec.scheme) {
  case Scheme::DyadicGrid: {
    if (spec.depth > 24) {
      throw std::invalid_argument("grid depth above 24");
    }
    const std::uint64_t n = std::uint64_t{1} << spec.depth;
    for (std::uint64_t k = 0; k < n; ++k) {
      out.emplace_back(Dyadic(BigInt(k), spec.depth));
    }
    break;
  }
  case Scheme::SeededRandom: {
    std::mt19937_64 rng(spec.seed);
    for (std::uint64_t k = 0; k < spec.count; ++k) {
      out.emplace_back(Dyadic(BigInt(rng() >> 32), 32));
    }
    break;
  }
  case Scheme::Explicit:
    out = spec.points;
    break;
  }
  return out;
}

LineFamily build_family(const Curve& curve, const SampleSpec& spec, const Window& window, int p) {
  LineFamily family;
  family.curve = std::string(curve.id());
  family.window = window;
  std::mt19937_64 side_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const Rational& x : sample_points(spec)) {
    curve.check_point(x);
    Side side = Side::Right;
    switch (spec.sides) {
    case SidePolicy::Left:
      side = Side::Left;
      break;
    case SidePolicy::Right:
      side = Side::Right;
      break;
    case SidePolicy::TwoSided:
      side = Side::TwoSided;
      break;
    case SidePolicy::Random:
      side = (side_rng() >> 63) ? Side::Left : Side::Right;
      break;
    }
    if (curve.covered_vertically(x)) {
      family.lines.push_back(vertical_at(x));
      continue;
    }
    if (x == Rational(0) && side == Side::Left) {
      side = Side::Right;
    }
    if (x == Rational(1) && side == Side::Right) {
      side = Side::Left;
    }
    family.lines.push_back(tangent_at(curve, x, side, p));
  }
  return family;
}

} // namespace lcl::lines
