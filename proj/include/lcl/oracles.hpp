#pragma once

#include "lcl/lines.hpp"

#include <cstdint>
#include <vector>

/// Slow reference implementations used to cross-check the fast paths.
namespace lcl::oracles {

/// Tests every grid cell against every segment by intersecting the
/// parameter intervals of the half-open cell constraints.
std::uint64_t brute_force_boxes(const std::vector<lines::Segment>& segments, const lines::Window& window,
                                unsigned k);

/// Lower/upper Riemann sums of the digit curve's f on 2^q panels of [0, x].
Enclosure tbinc_riemann_bracket(const Rational& x, unsigned q, int p);

} // namespace lcl::oracles
