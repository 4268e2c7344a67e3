#pragma once

#include "lcl/lines.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace lcl::boxdim {

using lines::Segment;
using lines::Window;

/// Cells are [x0 + i h, x0 + (i+1) h) x [y0 + j h, y0 + (j+1) h), h = 2^-k,
/// anchored at the window's lower-left corner; the last row and column also
/// take the window's upper edges.
std::uint64_t boxes_of_segments(const std::vector<Segment>& segments, const Window& window, unsigned k);

/// Occupied cells as (column, row) pairs, sorted.
std::vector<std::pair<std::uint64_t, std::uint64_t>> cells_of_segments(const std::vector<Segment>& segments,
                                                                       const Window& window, unsigned k);

/// Cells of length 2^-k of [lo, hi] (last one closed) meeting a union of
/// closed intervals inside [lo, hi].
BigInt boxes_of_intervals(const std::vector<Enclosure>& intervals, unsigned k, const Dyadic& lo = Dyadic(0),
                          const Dyadic& hi = Dyadic(1));

struct SlopeCover {
  std::uint64_t n{};
  std::vector<Enclosure> intervals;
  Dyadic max_diameter;
  bool certified{false};
};

/// The 2^n block images of the digit curve's slope, each checked against
/// diameter 2^-(n^2).
SlopeCover slope_cover_check(std::uint64_t n);

/// Parabola slopes on the 2^depth blocks of [0,1], scaled into [0,1].
std::vector<Enclosure> parabola_slope_blocks(unsigned depth);

struct Fit {
  unsigned lo{};
  unsigned hi{};
  double dim{};
  double residual{};
};

struct BoxCountReport {
  Window window;
  std::vector<unsigned> scales;
  std::vector<std::uint64_t> counts;
  Fit fit;
};

/// Least-squares slope of log2 N against k over scales in [lo, hi]; the
/// residual is the RMS deviation. std::invalid_argument with fewer than two
/// scales in range.
Fit fit_dimension(const std::vector<unsigned>& scales, const std::vector<double>& log2_counts, unsigned lo,
                  unsigned hi);
Fit fit_dimension(const BoxCountReport& report, unsigned lo, unsigned hi);

/// Default fit range drops the two coarsest scales.
std::pair<unsigned, unsigned> default_fit_range(unsigned kmin, unsigned kmax);

std::vector<Segment> clip_family(const lines::LineFamily& family);

BoxCountReport segment_report(const std::vector<Segment>& segments, const Window& window, unsigned kmin,
                              unsigned kmax, std::pair<unsigned, unsigned> fit_range);
BoxCountReport family_report(const lines::LineFamily& family, unsigned kmin, unsigned kmax,
                             std::pair<unsigned, unsigned> fit_range);

} // namespace lcl::boxdim
