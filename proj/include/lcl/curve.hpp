#pragma once

#include "lcl/enclosure.hpp"
#include "lcl/rational.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace lcl {

/// Internal working precision is the requested p plus this many bits.
/// Results are only promised to width 2^-p.
inline constexpr int kGuardBits = 32;

enum class Side { Left, Right, TwoSided };

std::string_view to_string(Side s);
Side side_from_string(std::string_view s);

struct CodeDifference {
  Enclosure da;
  Enclosure db;
};

/// A convex curve y = F(x) on [0,1] evaluated through certified enclosures.
///
/// slope(x, Left) is F'_-(x) and slope(x, Right) is F'_+(x); TwoSided asks
/// for the derivative and is a domain error where F has a kink.
class Curve {
public:
  virtual ~Curve() = default;

  virtual std::string_view id() const = 0;

  /// F(x) with width <= 2^-p.
  virtual Enclosure value(const Rational& x, int p) const = 0;

  virtual Enclosure slope(const Rational& x, Side side, int p) const = 0;

  /// Certified lower bound on F'_-(hi) - F'_+(lo) for 0 <= lo < hi <= 1.
  /// The bound witnesses strict convexity between the two points.
  /// nullopt if no witness was found within the curve's search budget.
  virtual std::optional<PositiveBound> slope_gap(const Rational& lo, const Rational& hi) const = 0;

  /// a1 - a2 and b1 - b2 for the tangents at x1 and x2, enclosed jointly and
  /// up to one common positive factor. Meant for pairs whose plain
  /// enclosures are too wide to compare; nullopt when not available.
  virtual std::optional<CodeDifference> code_difference(const Rational& /*x1*/, Side /*s1*/,
                                                        const Rational& /*x2*/, Side /*s2*/, int /*p*/) const {
    return std::nullopt;
  }

  /// Whether the covering rule uses a vertical line through (x, F(x)).
  virtual bool covered_vertically(const Rational& /*x*/) const { return false; }

  /// Throws std::domain_error if x is outside [0,1] or `side` does not
  /// exist at x (no left slope at 0, no right slope at 1).
  void check_point(const Rational& x, Side side) const;
  void check_point(const Rational& x) const;
};

/// y = x^2, the smooth baseline.
class ParabolaCurve final : public Curve {
public:
  std::string_view id() const override { return "parabola"; }
  Enclosure value(const Rational& x, int p) const override;
  Enclosure slope(const Rational& x, Side side, int p) const override;
  std::optional<PositiveBound> slope_gap(const Rational& lo, const Rational& hi) const override;
};

/// "parabola", "tbinc" or "tcantc"; throws std::invalid_argument otherwise.
std::unique_ptr<Curve> make_curve(std::string_view id);

/// Lower dyadic bound of a positive rational.
Dyadic positive_lower_bound(const Rational& r);

} // namespace lcl
