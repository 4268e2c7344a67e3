#include "lcl/boxdim.hpp"

#include "lcl/digit_curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcl::boxdim {

namespace {

// floor(n / d) for d > 0.
BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if (n.sign() < 0 && q * d != n) {
    q -= 1;
  }
  return q;
}

// Everything scaled by 2^E to integers.
struct Scaled {
  std::uint64_t e;
  BigInt cell;

  BigInt operator()(const Dyadic& v) const { return v.num() << (e - v.exp()); }
};

Scaled scaling(const std::vector<Segment>& segs, const Window& w, unsigned k) {
  std::uint64_t e = k;
  for (const Dyadic* d : {&w.x0, &w.y0, &w.x1, &w.y1}) {
    e = std::max(e, d->exp());
  }
  for (const Segment& s : segs) {
    for (const Dyadic* d : {&s.x0, &s.y0, &s.x1, &s.y1}) {
      e = std::max(e, d->exp());
    }
  }
  return {e, BigInt(1) << (e - k)};
}

std::uint64_t cells_along(const Dyadic& lo, const Dyadic& hi, unsigned k) {
  BigInt n = (hi - lo).ceil_scaled(k);
  return n.convert_to<std::uint64_t>();
}

std::uint64_t clamp_index(const BigInt& v, std::uint64_t n) {
  if (v.sign() < 0) {
    return 0;
  }
  if (v >= n) {
    return n - 1;
  }
  return v.convert_to<std::uint64_t>();
}

} // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> cells_of_segments(const std::vector<Segment>& segments,
                                                                       const Window& window, unsigned k) {
  const Scaled S = scaling(segments, window, k);
  const std::uint64_t nx = cells_along(window.x0, window.x1, k);
  const std::uint64_t ny = cells_along(window.y0, window.y1, k);
  const BigInt X0 = S(window.x0);
  const BigInt Y0 = S(window.y0);
  const BigInt& h = S.cell;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const Segment& seg : segments) {
    BigInt xa = S(seg.x0) - X0, ya = S(seg.y0) - Y0;
    BigInt xb = S(seg.x1) - X0, yb = S(seg.y1) - Y0;
    if (xb < xa) {
      std::swap(xa, xb);
      std::swap(ya, yb);
    }
    const BigInt dx = xb - xa;
    const BigInt dy = yb - ya;
    std::uint64_t ia = clamp_index(floor_div(xa, h), nx);
    std::uint64_t ib = clamp_index(floor_div(xb, h), nx);
    for (std::uint64_t i = ia; i <= ib; ++i) {
      // x range of the segment inside column i: [xl, xr], right end open
      // when it is the column's (non-final) right edge
      BigInt xs = BigInt(i) * h;
      BigInt xe = xs + h;
      BigInt xl = std::max(xa, xs);
      bool open_right = i + 1 < nx && xe <= xb;
      BigInt xr = open_right ? xe : xb;
      // y(x) = ya + (x - xa) dy / dx, compared in units of h * dx
      std::uint64_t jl = 0;
      std::uint64_t jh = 0;
      if (dx.is_zero()) {
        jl = clamp_index(floor_div(std::min(ya, yb), h), ny);
        jh = clamp_index(floor_div(std::max(ya, yb), h), ny);
      } else {
        BigInt nl = ya * dx + (xl - xa) * dy;
        BigInt nr = ya * dx + (xr - xa) * dy;
        BigInt den = h * dx;
        BigInt lo_num = std::min(nl, nr);
        BigInt hi_num = std::max(nl, nr);
        jl = clamp_index(floor_div(lo_num, den), ny);
        BigInt top = floor_div(hi_num, den);
        // an open upper end on a grid line does not reach the cell above it
        if (open_right && dy.sign() > 0 && top * den == hi_num) {
          top -= 1;
        }
        jh = clamp_index(top, ny);
        if (jh < jl) {
          jh = jl;
        }
      }
      for (std::uint64_t j = jl; j <= jh; ++j) {
        out.emplace_back(i, j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t boxes_of_segments(const std::vector<Segment>& segments, const Window& window, unsigned k) {
  return cells_of_segments(segments, window, k).size();
}

BigInt boxes_of_intervals(const std::vector<Enclosure>& intervals, unsigned k, const Dyadic& lo, const Dyadic& hi) {
  const BigInt n = (hi - lo).ceil_scaled(k);
  std::vector<std::pair<BigInt, BigInt>> ranges;
  for (const Enclosure& iv : intervals) {
    if (iv.lo() < lo || hi < iv.hi()) {
      throw std::invalid_argument("interval outside the normalization range");
    }
    BigInt a = (iv.lo() - lo).floor_scaled(k);
    BigInt b = (iv.hi() - lo).floor_scaled(k);
    ranges.emplace_back(std::min<BigInt>(a, n - 1), std::min<BigInt>(b, n - 1));
  }
  std::sort(ranges.begin(), ranges.end());
  BigInt total = 0;
  BigInt covered_to = -1; // last counted cell
  for (const auto& [a, b] : ranges) {
    BigInt start = std::max<BigInt>(a, covered_to + 1);
    if (start <= b) {
      total += b - start + 1;
      covered_to = b;
    }
  }
  return total;
}

SlopeCover slope_cover_check(std::uint64_t n) {
  if (n == 0 || n > 20) {
    throw std::invalid_argument("slope cover depth must be in 1..20");
  }
  SlopeCover out;
  out.n = n;
  const Dyadic bound = Dyadic::pow2(-static_cast<std::int64_t>(n * n));
  out.certified = true;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    Enclosure iv = digit_curve::slope_block_image(n, k);
    out.max_diameter = max(out.max_diameter, iv.width());
    out.certified = out.certified && iv.width() <= bound;
    out.intervals.push_back(iv);
  }
  return out;
}

std::vector<Enclosure> parabola_slope_blocks(unsigned depth) {
  std::vector<Enclosure> out;
  // slopes 2x over [j, j+1] / 2^depth, halved into [0,1]
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << depth); ++j) {
    out.emplace_back(Dyadic(BigInt(j), depth), Dyadic(BigInt(j + 1), depth));
  }
  return out;
}

Fit fit_dimension(const std::vector<unsigned>& scales, const std::vector<double>& log2_counts, unsigned lo,
                  unsigned hi) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t t = 0; t < scales.size(); ++t) {
    if (lo <= scales[t] && scales[t] <= hi) {
      xs.push_back(scales[t]);
      ys.push_back(log2_counts.at(t));
    }
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("degenerate fit range: fewer than two scales in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  const auto m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    mx += xs[t];
    my += ys[t];
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    sxy += (xs[t] - mx) * (ys[t] - my);
    sxx += (xs[t] - mx) * (xs[t] - mx);
  }
  Fit fit{lo, hi, sxy / sxx, 0.0};
  double ss = 0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    double r = ys[t] - (my + fit.dim * (xs[t] - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

Fit fit_dimension(const BoxCountReport& report, unsigned lo, unsigned hi) {
  std::vector<double> ys;
  for (std::uint64_t c : report.counts) {
    ys.push_back(std::log2(static_cast<double>(c)));
  }
  return fit_dimension(report.scales, ys, lo, hi);
}

std::pair<unsigned, unsigned> default_fit_range(unsigned kmin, unsigned kmax) {
  return {std::min(kmin + 2, kmax), kmax};
}

std::vector<Segment> clip_family(const lines::LineFamily& family) {
  std::vector<Segment> out;
  for (const auto& line : family.lines) {
    if (auto s = lines::clip(line, family.window)) {
      out.push_back(*s);
    }
  }
  return out;
}

BoxCountReport segment_report(const std::vector<Segment>& segments, const Window& window, unsigned kmin,
                              unsigned kmax, std::pair<unsigned, unsigned> fit_range) {
  if (kmax < kmin) {
    throw std::invalid_argument("empty scale range");
  }
  BoxCountReport r;
  r.window = window;
  for (unsigned k = kmin; k <= kmax; ++k) {
    r.scales.push_back(k);
    r.counts.push_back(boxes_of_segments(segments, window, k));
  }
  r.fit = fit_dimension(r, fit_range.first, fit_range.second);
  return r;
}

BoxCountReport family_report(const lines::LineFamily& family, unsigned kmin, unsigned kmax,
                             std::pair<unsigned, unsigned> fit_range) {
  return segment_report(clip_family(family), family.window, kmin, kmax, fit_range);
}

} // namespace lcl::boxdim
