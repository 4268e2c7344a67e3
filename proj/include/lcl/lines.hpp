#pragma once

#include "lcl/curve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcl::lines {

enum class LineKind { Tangent, Vertical };

std::string_view to_string(LineKind k);

/// A tangent y = a x + b at x0, or the vertical line x = x0.
/// Vertical lines have no code point; a and b are then meaningless.
struct Line {
  LineKind kind{LineKind::Tangent};
  Rational x0;
  Side side{Side::Right};
  Enclosure a;
  Enclosure b;

  bool is_vertical() const { return kind == LineKind::Vertical; }
};

/// Tangent through (x0, F(x0)) with the one-sided slope on `side`.
/// Throws PrecisionFailure if a or b ends up wider than 2 * 2^-p.
Line tangent_at(const Curve& curve, const Rational& x0, Side side, int p);
Line vertical_at(const Rational& x0);

struct PointEnc {
  Enclosure x;
  Enclosure y;
};

/// (t, a t + b). std::invalid_argument for a vertical line.
PointEnc realize(const Line& line, const Dyadic& t);

/// |b1 - b2| <= |a1 - a2| for two tangents of one convex curve.
Verdict verify_code_lipschitz(const Line& l1, const Line& l2);
/// As above, falling back on the curve's joint difference enclosure when the
/// separate enclosures cannot decide.
Verdict verify_code_lipschitz(const Curve& curve, const Line& l1, const Line& l2, int p);

struct BelowReport {
  bool certified_below{false};
  std::vector<std::uint64_t> equality_blocks;
  std::vector<std::uint64_t> inconclusive_blocks;
  std::uint64_t numeric_blocks{0};
  std::uint64_t structural_blocks{0};
};

/// Sweeps the 2^g blocks of [0,1] and certifies the curve strictly above the
/// line on every block whose closure misses x0.
///
/// A block is first tried with curve values and one-sided slopes at its ends.
/// Failing that, G = F - line is convex with its minimum at x0, so for a
/// block right of x0 starting at u and any m in (x0, u),
///   G(u) >= (u - m) (F'_-(m) - F'_+(x0)) > 0,
/// and symmetrically on the left.
BelowReport verify_below(const Curve& curve, const Line& line, unsigned g, int p);

enum class Intersection { CertifiedSingle, Inconclusive };

std::string_view to_string(Intersection v);

Intersection single_intersection(const Curve& curve, const Line& line, unsigned g, int p);

struct Window {
  Dyadic x0{0};
  Dyadic y0{0};
  Dyadic x1{1};
  Dyadic y1{1};

  /// "x0,y0,x1,y1".
  static Window parse(std::string_view text);
  std::string str() const;
};

struct Segment {
  Dyadic x0, y0, x1, y1;
};

/// Bits used when rounding clip endpoints.
inline constexpr std::uint64_t kClipBits = 64;

/// Clips the midpoint line of the enclosures to the window. Endpoints are
/// rounded inward to multiples of 2^-kClipBits, so both stay inside the
/// window and on the line exactly.
std::optional<Segment> clip(const Line& line, const Window& window);

enum class SidePolicy { Left, Right, TwoSided, Random };

std::string_view to_string(SidePolicy s);
SidePolicy side_policy_from_string(std::string_view s);

enum class Scheme { DyadicGrid, SeededRandom, Explicit };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view s);

struct SampleSpec {
  Scheme scheme{Scheme::DyadicGrid};
  /// DyadicGrid: k / 2^depth for k = 0 .. 2^depth - 1.
  unsigned depth{3};
  /// SeededRandom: count points k / 2^32.
  std::uint64_t count{1};
  std::uint64_t seed{0};
  std::vector<Rational> points;
  SidePolicy sides{SidePolicy::Right};
};

/// The sample points of a spec, in order.
std::vector<Rational> sample_points(const SampleSpec& spec);

struct LineFamily {
  std::string curve;
  Window window;
  std::vector<Line> lines;
};

/// One line per sample point: vertical where the curve's cover rule asks for
/// it, otherwise the tangent on the side chosen by the policy (forced inward
/// at 0 and 1).
LineFamily build_family(const Curve& curve, const SampleSpec& spec, const Window& window, int p);

} // namespace lcl::lines
