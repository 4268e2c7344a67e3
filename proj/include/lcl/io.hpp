#pragma once

#include "lcl/boxdim.hpp"
#include "lcl/cantor.hpp"
#include "lcl/lines.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lcl::io {

using nlohmann::json;

/// {"num": "<decimal>", "exp": e}
json to_json(const Dyadic& d);
Dyadic dyadic_from_json(const json& j);

/// {"lo": ..., "hi": ...}
json to_json(const Enclosure& e);
Enclosure enclosure_from_json(const json& j);

/// Dyadic form when possible, {"num": "<decimal>", "den": "<decimal>"} otherwise.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const lines::Window& w);
lines::Window window_from_json(const json& j);

json to_json(const lines::Line& line);
lines::Line line_from_json(const json& j);

/// {curve, window, lines: [...]}
json to_json(const lines::LineFamily& family);
lines::LineFamily family_from_json(const json& j);

/// [{n, i, a, b}]
json registry_json(const cantor::GapRegistry& reg, std::uint64_t max_stage);

/// [{x, rule, depth_used}]
json cover_report_json(const std::vector<Rational>& points, const Curve& curve);

/// {window, scales, counts, fit: {range, dim, residual}}
json to_json(const boxdim::BoxCountReport& r);

/// Fixed six-decimal rendering used for every real in output files.
std::string fixed6(double v);

/// x0,y0,x1,y1 rows with exact decimal coordinates.
void write_segments_csv(std::ostream& os, const std::vector<lines::Segment>& segments);
/// k,count rows.
void write_report_csv(std::ostream& os, const boxdim::BoxCountReport& r);

/// Curve polyline, clipped family and an optional occupied-cell overlay.
struct PlotSpec {
  const Curve* curve{nullptr};
  std::vector<lines::Segment> segments;
  lines::Window window;
  int grid{-1};
  /// Polyline through the 2^curve_depth + 1 grid points.
  unsigned curve_depth{8};
  int p{40};
};

void write_svg(std::ostream& os, const PlotSpec& spec);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace lcl::io
