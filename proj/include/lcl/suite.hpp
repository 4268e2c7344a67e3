#pragma once

#include "lcl/lines.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

/// The acceptance checks, shared by `verify` and the acceptance test.
namespace lcl::suite {

struct Config {
  int p{40};
  std::uint64_t seed{7};
  /// Lipschitz: tangents per curve.
  std::uint64_t samples{200};
  /// Single intersection: lines per curve and grid depth.
  std::uint64_t tangency_lines{50};
  unsigned tangency_depth{10};
  /// Gap bound: stages n <= max_stage with n + i <= max_ni.
  std::uint64_t max_stage{3};
  std::uint64_t max_ni{14};
  /// Slope cover depths 1..cover_depth.
  std::uint64_t cover_depth{6};
  /// Dimension contrast.
  unsigned family_depth{9};
  unsigned kmin{3};
  unsigned kmax{9};
  /// Exact counting.
  std::uint64_t families{50};
  unsigned count_kmax{6};
};

/// Thresholds. The absolute dimension figures come from the recorded
/// pre-run in tests/data/dimension_prerun.json.
inline constexpr double kMinTrueFraction = 0.99;
inline constexpr double kParabolaDimMin = 1.8;
inline constexpr double kDigitDimMax = 1.4;
inline constexpr double kDimGapMin = 0.5;
inline constexpr double kDarbouxLo = 0.95;
inline constexpr double kDarbouxHi = 1.05;
inline constexpr unsigned kDarbouxKmin = 4;
inline constexpr unsigned kDarbouxKmax = 12;
inline constexpr unsigned kDarbouxDepth = 10;
inline constexpr unsigned kBracketPanels = 12;
inline constexpr unsigned kBracketPoints = 33;
inline constexpr std::uint64_t kStageMin = 2;
inline constexpr std::uint64_t kStageMax = 8;
inline constexpr unsigned kStageGridDepth = 8;

using nlohmann::json;

/// Each returns {"id", "name", "passed", ...details}.
json slope_cover(const Config& c);      // 1
json lipschitz(const Config& c);        // 2
json tangency(const Config& c);         // 3
json gap_bound(const Config& c);        // 4
json dimension(const Config& c);        // 5
json darboux(const Config& c);          // 6
json oracle_equivalence(const Config& c); // 7
json exact_counting(const Config& c);   // 8

/// One curve's part of criteria 2 and 3.
json lipschitz_curve(const Curve& curve, const Config& c);
json tangency_curve(const Curve& curve, const Config& c);

/// Each sample point's line meets (x, F(x)) and no other line does, up to
/// enclosure width.
json cover(const Curve& curve, const lines::SampleSpec& spec, int p);

/// Criteria 1-8 in order.
std::vector<json> run_all(const Config& c);

/// Criterion 9: the report produced twice by `produce` is byte-identical.
json determinism(const std::function<std::string()>& produce);

json config_json(const Config& c);

} // namespace lcl::suite
