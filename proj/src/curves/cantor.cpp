#include "lcl/cantor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace lcl::cantor {

namespace mp = boost::multiprecision;

namespace {

constexpr std::uint64_t kGenerationCap = 4096;
constexpr std::uint64_t kWitnessStageCap = 4096;

Dyadic pow2_neg(std::uint64_t k) { return Dyadic(BigInt(1), k); }

std::uint64_t work_bits(int p) {
  if (p < 0) {
    throw std::invalid_argument("precision must be non-negative");
  }
  return static_cast<std::uint64_t>(p) + kGuardBits;
}

void check_unit(const Dyadic& x) {
  if (x < Dyadic(0) || Dyadic(1) < x) {
    throw std::domain_error("tcantc: point outside [0,1]: " + x.str());
  }
}

// Where x sits in the Cantor set scaled to [A, B] (A < x < B).
struct Located {
  enum class Kind { Endpoint, Gap, Open };
  Kind kind{};
  std::uint64_t gen{};
  BigInt position; // address of the parent interval among generation gen-1
  Dyadic value;    // phi there (lower end for Open)
  Dyadic gap_a;
  Dyadic gap_b;
  Dyadic c; // Open: current member interval
  Dyadic len;
};

Located locate(const Dyadic& x, const Dyadic& A, const Dyadic& B, std::uint64_t max_gen) {
  Dyadic c = A;
  Dyadic len = B - A;
  Dyadic val(0);
  BigInt pos = 0;
  for (std::uint64_t g = 1; g <= max_gen; ++g) {
    Dyadic child = len.ldexp(-2 * static_cast<std::int64_t>(g));
    Dyadic half = pow2_neg(g);
    Dyadic left_end = c + child;
    Dyadic right_start = c + len - child;
    if (x < left_end) {
      len = child;
      pos <<= 1;
      continue;
    }
    if (x == left_end || x == right_start) {
      return {Located::Kind::Endpoint, g, pos, val + half, {}, {}, {}, {}};
    }
    if (x < right_start) {
      return {Located::Kind::Gap, g, pos, val + half, left_end, right_start, {}, {}};
    }
    val += half;
    c = right_start;
    len = child;
    pos = (pos << 1) | 1;
  }
  return {Located::Kind::Open, max_gen, pos, val, {}, {}, c, len};
}

BigInt local_index(const Located& loc) { return (BigInt(1) << (loc.gen - 1)) + loc.position; }

// sum over stages >= m of all copies: <= 2^-(m + imin(m) - 2), imin the
// smallest index at stage m. Capped below 2^-cap_bits.
Dyadic stage_tail(std::uint64_t m, std::uint64_t cap_bits) {
  BigInt imin = 1;
  for (std::uint64_t n = 1; n < m; ++n) {
    imin = pair_index(imin, 1);
    if (imin > cap_bits + 2) {
      return pow2_neg(cap_bits);
    }
  }
  auto e = static_cast<std::uint64_t>(m + imin.convert_to<std::uint64_t>() - 2);
  return pow2_neg(std::min(e, cap_bits));
}

std::uint64_t auto_stages(std::uint64_t bits) {
  std::uint64_t m = 2;
  while (pow2_neg(bits + 2) < stage_tail(m, bits + 2)) {
    ++m;
  }
  return m;
}

// Index, or once it is too long to keep, an upper bound on its log2.
struct IndexMag {
  BigInt exact;
  double log2{0.0};
  bool huge{false};

  IndexMag child(const BigInt& l) const {
    IndexMag out;
    if (!huge) {
      out.exact = pair_index(exact, l);
      if (mp::msb(out.exact) < PositiveBound::kMaxShiftBits) {
        return out;
      }
      out.log2 = static_cast<double>(mp::msb(out.exact) + 1);
      out.exact = 0;
      out.huge = true;
      return out;
    }
    // J(i,l) <= (i+l)^2 <= 4 max(i,l)^2
    double ll = static_cast<double>(mp::msb(l) + 1);
    out.log2 = 2.0 * (std::max(log2, ll) + 1.0);
    out.huge = true;
    return out;
  }
};

enum class Cover { Found, Miss, Budget };

// Smallest generation g with a member interval of [A, B]'s Cantor set
// inside [lo, hi].
Cover contained_member(const Dyadic& lo, const Dyadic& hi, const Dyadic& A, const Dyadic& B,
                       std::uint64_t& gen) {
  if (lo <= A && B <= hi) {
    gen = 0;
    return Cover::Found;
  }
  if (!(A < hi && lo < B)) {
    return Cover::Miss;
  }
  std::vector<std::pair<Dyadic, Dyadic>> active{{A, B - A}};
  for (std::uint64_t g = 1; g <= kGenerationCap; ++g) {
    std::vector<std::pair<Dyadic, Dyadic>> next;
    for (const auto& [c, len] : active) {
      Dyadic child = len.ldexp(-2 * static_cast<std::int64_t>(g));
      for (const Dyadic& cc : {c, c + len - child}) {
        Dyadic end = cc + child;
        if (lo <= cc && end <= hi) {
          gen = g;
          return Cover::Found;
        }
        if (cc < hi && lo < end) {
          next.emplace_back(cc, child);
        }
      }
    }
    if (next.empty()) {
      return Cover::Miss;
    }
    active = std::move(next);
  }
  return Cover::Budget;
}

Dyadic require_dyadic(const Rational& x) {
  auto d = x.as_dyadic();
  if (!d) {
    throw std::domain_error("tcantc: only dyadic points are supported: " + x.str());
  }
  return *d;
}

} // namespace

Dyadic generation_length(std::uint64_t g) { return pow2_neg(g * (g + 1)); }

BigInt pair_index(const BigInt& i, const BigInt& l) {
  BigInt s = i + l;
  return s * (s + 1) / 2 + l;
}

std::pair<Dyadic, Dyadic> local_gap(const BigInt& l) {
  if (l < 1) {
    throw std::invalid_argument("local gap index must be >= 1");
  }
  const std::uint64_t g = mp::msb(l) + 1;
  Dyadic c(0);
  for (std::uint64_t j = 1; j < g; ++j) {
    if (mp::bit_test(l, static_cast<unsigned>(g - 1 - j))) {
      c += generation_length(j - 1) - generation_length(j);
    }
  }
  return {c + generation_length(g), c + generation_length(g - 1) - generation_length(g)};
}

GapRegistry::GapRegistry(std::uint64_t budget) : budget_(budget) {
  std::vector<GapRef> first;
  for (std::uint64_t l = 1; l <= budget; ++l) {
    auto [a, b] = local_gap(l);
    first.push_back({1, l, a, b, 0});
  }
  if (first.empty()) {
    return;
  }
  stages_.push_back(std::move(first));
  while (true) {
    std::vector<GapRef> next;
    for (const GapRef& g : stages_.back()) {
      for (BigInt l = 1;; ++l) {
        BigInt j = pair_index(g.i, l);
        if (j > budget) {
          break;
        }
        auto [la, lb] = local_gap(l);
        Dyadic w = g.b - g.a;
        next.push_back({g.n + 1, j, g.a + w * la, g.a + w * lb, g.i});
      }
    }
    if (next.empty()) {
      break;
    }
    std::sort(next.begin(), next.end(), [](const GapRef& x, const GapRef& y) { return x.i < y.i; });
    stages_.push_back(std::move(next));
  }
}

const std::vector<GapRef>& GapRegistry::stage(std::uint64_t n) const {
  static const std::vector<GapRef> empty;
  if (n == 0 || n > stages_.size()) {
    return empty;
  }
  return stages_[n - 1];
}

const GapRef* GapRegistry::find(std::uint64_t n, const BigInt& i) const {
  const auto& s = stage(n);
  auto it = std::lower_bound(s.begin(), s.end(), i, [](const GapRef& g, const BigInt& v) { return g.i < v; });
  return it != s.end() && it->i == i ? &*it : nullptr;
}

std::shared_ptr<const GapRegistry> registry(std::uint64_t budget) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const GapRegistry>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(budget); it != cache.end()) {
      return it->second;
    }
  }
  auto built = std::make_shared<const GapRegistry>(budget);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(budget, std::move(built)).first->second;
}

std::vector<GapRef> gaps(std::uint64_t n, std::uint64_t budget) {
  if (n == 0) {
    throw std::invalid_argument("stage must be >= 1");
  }
  return registry(budget)->stage(n);
}

Enclosure phi_on(const Dyadic& x, const Dyadic& a, const Dyadic& b, std::uint64_t depth) {
  if (x <= a) {
    return Enclosure(Dyadic(0));
  }
  if (b <= x) {
    return Enclosure(Dyadic(1));
  }
  Located loc = locate(x, a, b, depth);
  if (loc.kind != Located::Kind::Open) {
    return Enclosure(loc.value);
  }
  return {loc.value, loc.value + pow2_neg(depth)};
}

Enclosure phi(const Dyadic& x, std::uint64_t depth) { return phi_on(x, Dyadic(0), Dyadic(1), depth); }

Enclosure phi_integral_on(const Dyadic& x, const Dyadic& a, const Dyadic& b, std::uint64_t depth) {
  if (x <= a) {
    return Enclosure(Dyadic(0));
  }
  if (b <= x) {
    return Enclosure((b - a).half());
  }
  // On [c, c+len] the staircase is val + s * phi(scaled), whose integral over
  // the whole interval is (val + s/2) len by symmetry.
  Dyadic c = a;
  Dyadic len = b - a;
  Dyadic val(0);
  Dyadic s(1);
  Dyadic acc(0);
  for (std::uint64_t g = 1; g <= depth; ++g) {
    Dyadic child = len.ldexp(-2 * static_cast<std::int64_t>(g));
    Dyadic s2 = s.half();
    if (x <= c + child) {
      if (x == c + child) {
        return Enclosure(acc + (val + s2.half()) * child);
      }
      len = child;
      s = s2;
      continue;
    }
    Dyadic plateau = val + s2;
    acc += (val + s2.half()) * child;
    Dyadic right_start = c + len - child;
    if (x <= right_start) {
      return Enclosure(acc + plateau * (x - c - child));
    }
    acc += plateau * (right_start - c - child);
    c = right_start;
    val = plateau;
    len = child;
    s = s2;
  }
  return {acc + val * (x - c), acc + (val + s) * (x - c)};
}

std::string_view to_string(Membership::Kind k) {
  switch (k) {
  case Membership::Kind::Yes:
    return "yes";
  case Membership::Kind::No:
    return "no";
  case Membership::Kind::Unknown:
    break;
  }
  return "unknown";
}

Membership in_Cstar(const Dyadic& x, std::uint64_t depth) {
  check_unit(x);
  depth = std::min(depth, kMaxMembershipDepth);
  Membership out;
  Dyadic A(0);
  Dyadic B(1);
  BigInt parent = 0;
  for (std::uint64_t s = 1; s <= depth; ++s) {
    out.depth_used = s;
    if (x == A || x == B) {
      out.kind = Membership::Kind::Yes;
      return out;
    }
    Located loc = locate(x, A, B, kGenerationCap);
    if (loc.kind == Located::Kind::Endpoint) {
      out.kind = Membership::Kind::Yes;
      return out;
    }
    if (loc.kind == Located::Kind::Open) {
      out.kind = Membership::Kind::Unknown;
      return out;
    }
    BigInt l = local_index(loc);
    BigInt idx = s == 1 ? l : pair_index(parent, l);
    out.chain.push_back({s, idx, loc.gap_a, loc.gap_b, parent});
    A = loc.gap_a;
    B = loc.gap_b;
    parent = idx;
  }
  out.kind = Membership::Kind::No;
  return out;
}

std::uint64_t index_budget(int p) { return work_bits(p) + 2; }

Enclosure cantor_fm(const Dyadic& x, std::uint64_t m, int p) {
  check_unit(x);
  if (m == 0) {
    throw std::invalid_argument("stage must be >= 1");
  }
  const std::uint64_t bits = work_bits(p);
  const std::uint64_t budget = index_budget(p);
  auto reg = registry(budget);
  const std::uint64_t depth = bits + 8;
  Enclosure acc = phi(x, depth);
  for (std::uint64_t n = 1; n < m; ++n) {
    for (const GapRef& g : reg->stage(n)) {
      auto w = static_cast<std::uint64_t>(n + g.i.convert_to<std::uint64_t>());
      if (g.b <= x) {
        acc += Enclosure(pow2_neg(w));
      } else if (g.a < x) {
        acc += phi_on(x, g.a, g.b, depth).scale(pow2_neg(w));
      }
    }
  }
  if (m > 1) {
    acc += Enclosure(Dyadic(0), pow2_neg(budget)); // copies with index > budget
  }
  return acc.round_out(bits);
}

Enclosure cantor_f(const Dyadic& x, std::uint64_t m, int p) {
  if (x.is_zero()) {
    return Enclosure(Dyadic(0)); // every copy starts flat at 0
  }
  Enclosure head = cantor_fm(x, m, p);
  return head + Enclosure(Dyadic(0), stage_tail(m, work_bits(p) + 2));
}

Enclosure cantor_f(const Dyadic& x, int p) { return cantor_f(x, auto_stages(work_bits(p)), p); }

Enclosure cantor_F(const Dyadic& x, int p) {
  check_unit(x);
  if (x.is_zero()) {
    return Enclosure(Dyadic(0));
  }
  const std::uint64_t bits = work_bits(p);
  const std::uint64_t budget = index_budget(p);
  const std::uint64_t m = auto_stages(bits);
  auto reg = registry(budget);
  const std::uint64_t depth = bits + 8;
  Enclosure acc = phi_integral_on(x, Dyadic(0), Dyadic(1), depth);
  for (std::uint64_t n = 1; n < m; ++n) {
    for (const GapRef& g : reg->stage(n)) {
      if (x <= g.a) {
        continue;
      }
      auto w = static_cast<std::uint64_t>(n + g.i.convert_to<std::uint64_t>());
      acc += phi_integral_on(x, g.a, g.b, depth).scale(pow2_neg(w));
      if (g.b < x) {
        acc += Enclosure((x - g.b) * pow2_neg(w));
      }
    }
  }
  // each missing copy integrates to at most its weight times x <= 1
  acc += Enclosure(Dyadic(0), pow2_neg(budget) + stage_tail(m, bits + 2));
  return acc.round_out(bits);
}

Enclosure cantor_F_bracket(const Dyadic& x, std::uint64_t q, std::uint64_t m, int p) {
  check_unit(x);
  const Dyadic h = x.ldexp(-static_cast<std::int64_t>(q));
  const std::uint64_t panels = std::uint64_t{1} << q;
  Dyadic lower(0);
  Dyadic upper(0);
  Enclosure prev = cantor_f(Dyadic(0), m, p);
  for (std::uint64_t j = 1; j <= panels; ++j) {
    Enclosure cur = cantor_f(h * Dyadic(static_cast<long long>(j)), m, p);
    lower += prev.lo();
    upper += cur.hi();
    prev = cur;
  }
  return {lower * h, upper * h};
}

GapImage gap_image_bound(const GapRef& ref, int p) {
  if (ref.n == 0 || ref.i < 1) {
    throw std::invalid_argument("gap_image_bound: not a registered gap");
  }
  const std::uint64_t bits = work_bits(p);
  const BigInt limit = pair_index(ref.i, 1) + bits + 8;
  // Every other copy is constant across the gap; only the own copy and its
  // descendants move.
  Dyadic total(0);
  std::vector<std::pair<std::uint64_t, BigInt>> todo{{ref.n, ref.i}};
  while (!todo.empty()) {
    auto [n, i] = todo.back();
    todo.pop_back();
    total += Dyadic::pow2(-static_cast<std::int64_t>(n) - i.convert_to<std::int64_t>());
    for (BigInt l = 1;; ++l) {
      BigInt j = pair_index(i, l);
      if (j > limit) {
        break;
      }
      todo.emplace_back(n + 1, j);
    }
  }
  auto tail_exp = static_cast<std::uint64_t>(ref.n + limit.convert_to<std::uint64_t>());
  GapImage out;
  out.delta = Enclosure(total, total + pow2_neg(tail_exp));
  const auto own = static_cast<std::int64_t>(ref.n) + ref.i.convert_to<std::int64_t>();
  out.certified_le_relaxed = out.delta.hi() <= Dyadic::pow2(-(own - 1));
  if (out.delta.hi() <= Dyadic::pow2(-own)) {
    out.strict_bound = Verdict::CertifiedTrue;
  } else if (Dyadic::pow2(-own) < out.delta.lo()) {
    out.strict_bound = Verdict::CertifiedFalse;
  }
  return out;
}

std::optional<PositiveBound> increase_witness(const Dyadic& lo, const Dyadic& hi) {
  if (!(lo < hi)) {
    return std::nullopt;
  }
  check_unit(lo);
  check_unit(hi);
  // Descend through the planted copies until one of them has a member
  // interval inside [lo, hi]; that copy alone rises by weight * 2^-gen.
  Dyadic A(0);
  Dyadic B(1);
  std::uint64_t stage = 0;
  IndexMag index;
  for (std::uint64_t step = 0; step < kWitnessStageCap; ++step) {
    std::uint64_t gen = 0;
    Cover c = contained_member(lo, hi, A, B, gen);
    if (c == Cover::Budget) {
      return std::nullopt;
    }
    if (c == Cover::Found) {
      if (!index.huge) {
        return PositiveBound(Dyadic(1), BigInt(stage) + index.exact + gen);
      }
      return PositiveBound::with_shift_log2(Dyadic(1), index.log2 + 1.0);
    }
    Located loc = locate((lo + hi).half(), A, B, kGenerationCap);
    if (loc.kind != Located::Kind::Gap) {
      return std::nullopt;
    }
    BigInt l = local_index(loc);
    if (stage == 0) {
      index.exact = l;
    } else {
      index = index.child(l);
    }
    ++stage;
    A = loc.gap_a;
    B = loc.gap_b;
  }
  return std::nullopt;
}

std::optional<CodeDifference> tangent_difference(const Dyadic& x1, const Dyadic& x2, int p) {
  check_unit(x1);
  check_unit(x2);
  if (x2 < x1) {
    auto d = tangent_difference(x2, x1, p);
    if (d) {
      d->da = -d->da;
      d->db = -d->db;
    }
    return d;
  }
  if (x1 == x2) {
    return CodeDifference{Enclosure(Dyadic(0)), Enclosure(Dyadic(0))};
  }
  // the deepest copy whose gap holds [x1, x2]
  Dyadic A(0);
  Dyadic B(1);
  std::uint64_t stage = 0;
  IndexMag index;
  std::uint64_t gen = 0;
  for (;; ++stage) {
    if (stage >= kWitnessStageCap) {
      return std::nullopt;
    }
    Cover c = contained_member(x1, x2, A, B, gen);
    if (c == Cover::Budget) {
      return std::nullopt;
    }
    if (c == Cover::Found) {
      break;
    }
    Located loc = locate((x1 + x2).half(), A, B, kGenerationCap);
    if (loc.kind != Located::Kind::Gap) {
      return std::nullopt;
    }
    BigInt l = local_index(loc);
    index = stage == 0 ? IndexMag{l} : index.child(l);
    A = loc.gap_a;
    B = loc.gap_b;
  }
  if (stage == 0) {
    return std::nullopt;
  }
  // The root copy rises by at least 2^-gen over [x1, x2]. Descendants weigh
  // 2^-(1 + J - I) relative to it, with J > I, and all those with index
  // above `limit` sum to at most 2^-(limit - I).
  const std::uint64_t bits = work_bits(p);
  const std::uint64_t depth = gen + bits + 8;
  const std::uint64_t rel = gen + bits + 8;
  struct Copy {
    Dyadic a, b, w;
  };
  std::vector<Copy> copies{{A, B, Dyadic(1)}};
  // a huge I leaves J(I, 1) - I > I^2 / 2, so no descendant is in reach
  const Dyadic tail = pow2_neg(rel);
  if (!index.huge) {
    const BigInt limit = index.exact + rel;
    // (stage offset, index, a, b)
    std::vector<std::tuple<std::uint64_t, BigInt, Dyadic, Dyadic>> todo{{0, index.exact, A, B}};
    while (!todo.empty()) {
      auto [k, i, a, b] = todo.back();
      todo.pop_back();
      for (BigInt l = 1;; ++l) {
        BigInt j = pair_index(i, l);
        if (j > limit) {
          break;
        }
        auto [la, lb] = local_gap(l);
        Dyadic w = b - a;
        Dyadic ca = a + w * la;
        Dyadic cb = a + w * lb;
        auto shift = static_cast<std::uint64_t>(k + 1 + (j - index.exact).convert_to<std::uint64_t>());
        copies.push_back({ca, cb, pow2_neg(shift)});
        todo.emplace_back(k + 1, j, ca, cb);
      }
    }
  }
  const Dyadic dx = x2 - x1;
  Enclosure da(Dyadic(0));
  Enclosure rise(Dyadic(0)); // integral of f - f(x1) over [x1, x2]
  auto psi = [&](const Dyadic& x, const Copy& c) {
    Enclosure v = phi_integral_on(x, c.a, c.b, depth);
    return c.b < x ? v + Enclosure(x - c.b) : v;
  };
  for (const Copy& c : copies) {
    Enclosure v1 = phi_on(x1, c.a, c.b, depth);
    Enclosure v2 = phi_on(x2, c.a, c.b, depth);
    da += (v2 - v1).scale(c.w);
    rise += (psi(x2, c) - psi(x1, c) - v1.scale(dx)).scale(c.w);
  }
  da += Enclosure(Dyadic(0), tail);
  rise += Enclosure(Dyadic(0), tail * dx);
  if (rise.lo() < Dyadic(0)) {
    rise = Enclosure(Dyadic(0), rise.hi());
  }
  // a_i = f(x_i), b_i = F(x_i) - a_i x_i, so b2 - b1 = rise - (a2 - a1) x2
  Enclosure db = rise - da.scale(x2);
  return CodeDifference{-da, -db};
}

Enclosure CantorCurve::value(const Rational& x, int p) const {
  check_point(x);
  return cantor_F(require_dyadic(x), p);
}

Enclosure CantorCurve::slope(const Rational& x, Side side, int p) const {
  check_point(x, side);
  return cantor_f(require_dyadic(x), p); // f is continuous
}

std::optional<PositiveBound> CantorCurve::slope_gap(const Rational& lo, const Rational& hi) const {
  check_point(lo);
  check_point(hi);
  return increase_witness(require_dyadic(lo), require_dyadic(hi));
}

std::optional<CodeDifference> CantorCurve::code_difference(const Rational& x1, Side s1, const Rational& x2,
                                                             Side s2, int p) const {
  check_point(x1, s1);
  check_point(x2, s2);
  return tangent_difference(require_dyadic(x1), require_dyadic(x2), p);
}

bool CantorCurve::covered_vertically(const Rational& x) const {
  check_point(x);
  return in_Cstar(require_dyadic(x), kCoverDepth).kind == Membership::Kind::Yes;
}

} // namespace lcl::cantor
