#pragma once

#include "lcl/curve.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

/// A strictly convex C^1 curve whose slope set is small.
///
/// C is the symmetric Cantor set whose generation-g intervals have length
/// L_g = 2^-(g(g+1)); phi is its staircase. Stage 1 gaps are the gaps of C,
/// indexed by generation and then left to right. A scaled copy of phi is
/// planted in every stage-n gap (n, i) with weight 2^-(n+i), and the gaps of
/// that copy's Cantor set are the stage-(n+1) gaps, the l-th of them getting
/// index J(i, l). f is phi plus all copies, F its integral.
namespace lcl::cantor {

/// L_g = 2^-(g(g+1)).
Dyadic generation_length(std::uint64_t g);

/// J(i, l) = (i+l)(i+l+1)/2 + l.
BigInt pair_index(const BigInt& i, const BigInt& l);

/// Local gap l >= 1 of C inside [0,1]: generation bit_length(l), position
/// l - 2^(g-1) from the left.
std::pair<Dyadic, Dyadic> local_gap(const BigInt& l);

struct GapRef {
  std::uint64_t n{};
  BigInt i;
  Dyadic a;
  Dyadic b;
  /// Index of the enclosing stage-(n-1) gap; 0 at stage 1.
  BigInt parent;
};

/// All gaps with index <= budget, stage by stage. Immutable once built.
class GapRegistry {
public:
  explicit GapRegistry(std::uint64_t budget);

  std::uint64_t budget() const { return budget_; }
  /// Number of non-empty stages.
  std::uint64_t stage_count() const { return stages_.size(); }
  /// Gaps of stage n >= 1 in construction order; empty past the last stage.
  const std::vector<GapRef>& stage(std::uint64_t n) const;
  const GapRef* find(std::uint64_t n, const BigInt& i) const;

private:
  std::uint64_t budget_;
  std::vector<std::vector<GapRef>> stages_;
};

/// Shared frozen registry for a budget.
std::shared_ptr<const GapRegistry> registry(std::uint64_t budget);

/// Registered gaps of stage n with index <= budget.
std::vector<GapRef> gaps(std::uint64_t n, std::uint64_t budget);

/// phi(x) with width <= 2^-depth; clamped outside [0,1].
Enclosure phi(const Dyadic& x, std::uint64_t depth);
/// phi((x - a) / (b - a)).
Enclosure phi_on(const Dyadic& x, const Dyadic& a, const Dyadic& b, std::uint64_t depth);
/// Integral of phi((t - a) / (b - a)) over [a, min(x, b)]; 0 for x <= a.
Enclosure phi_integral_on(const Dyadic& x, const Dyadic& a, const Dyadic& b, std::uint64_t depth);

struct Membership {
  enum class Kind { Yes, No, Unknown };
  Kind kind{Kind::Unknown};
  /// Stage at which x was found in C_n (Yes), or stages examined.
  std::uint64_t depth_used{};
  /// Nested gaps containing x, one per examined stage.
  std::vector<GapRef> chain;
};

std::string_view to_string(Membership::Kind k);

/// Indices roughly square with every stage, so depth is capped here.
inline constexpr std::uint64_t kMaxMembershipDepth = 16;

/// Whether x lies in some C_n, n <= depth. Dyadic x always gets Yes or No.
Membership in_Cstar(const Dyadic& x, std::uint64_t depth);

/// Index budget used at working precision p.
std::uint64_t index_budget(int p);

/// f_m(x) = phi + copies of stages < m, with the index tail.
Enclosure cantor_fm(const Dyadic& x, std::uint64_t m, int p);
/// f(x): f_m(x) plus the tail of stages >= m.
Enclosure cantor_f(const Dyadic& x, std::uint64_t m, int p);
/// f(x) with the stage count chosen from p.
Enclosure cantor_f(const Dyadic& x, int p);

/// F(x) by exact integration of every evaluated copy.
Enclosure cantor_F(const Dyadic& x, int p);
/// Monotone Riemann bracket of F(x) on 2^q panels with f at stage m.
Enclosure cantor_F_bracket(const Dyadic& x, std::uint64_t q, std::uint64_t m, int p);

struct GapImage {
  Enclosure delta;
  bool certified_le_relaxed{};
  /// delta <= 2^-(n+i): true or false when decided, inconclusive otherwise.
  Verdict strict_bound{Verdict::Inconclusive};
};

/// f(b) - f(a) over a gap, from the structure: the own copy, the registered
/// descendants and a certified tail.
GapImage gap_image_bound(const GapRef& ref, int p);

/// Lower bound on f(hi) - f(lo) from a member interval inside [lo, hi].
std::optional<PositiveBound> increase_witness(const Dyadic& lo, const Dyadic& hi);

/// Slope and intercept differences of the tangents at x1 and x2, divided by
/// the weight of the deepest planted copy whose gap holds both points. Every
/// other copy is constant there and cancels. nullopt if that copy is phi.
std::optional<CodeDifference> tangent_difference(const Dyadic& x1, const Dyadic& x2, int p);

class CantorCurve final : public Curve {
public:
  static constexpr std::uint64_t kCoverDepth = 12;

  std::string_view id() const override { return "tcantc"; }
  Enclosure value(const Rational& x, int p) const override;
  Enclosure slope(const Rational& x, Side side, int p) const override;
  std::optional<PositiveBound> slope_gap(const Rational& lo, const Rational& hi) const override;
  std::optional<CodeDifference> code_difference(const Rational& x1, Side s1, const Rational& x2, Side s2,
                                                int p) const override;
  bool covered_vertically(const Rational& x) const override;
};

} // namespace lcl::cantor
