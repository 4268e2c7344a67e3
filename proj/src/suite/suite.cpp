#include "lcl/suite.hpp"

#include "lcl/boxdim.hpp"
#include "lcl/cantor.hpp"
#include "lcl/digit_curve.hpp"
#include "lcl/io.hpp"
#include "lcl/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lcl::suite {

namespace {

json header(int id, const char* name) { return {{"id", id}, {"name", name}}; }

lines::Window tall_window() { return {Dyadic(0), Dyadic(-1), Dyadic(1), Dyadic(1)}; }

lines::LineFamily random_family(const Curve& curve, std::uint64_t count, std::uint64_t seed, int p) {
  lines::SampleSpec spec;
  spec.scheme = lines::Scheme::SeededRandom;
  spec.count = count;
  spec.seed = seed;
  spec.sides = lines::SidePolicy::Random;
  return lines::build_family(curve, spec, tall_window(), p);
}

json first_points(const lines::LineFamily& family) {
  json out = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(3, family.lines.size()); ++k) {
    out.push_back(family.lines[k].x0.str());
  }
  return out;
}

} // namespace

json slope_cover(const Config& c) {
  json out = header(1, "slope cover bound");
  bool ok = true;
  json rows = json::array();
  for (std::uint64_t n = 1; n <= c.cover_depth; ++n) {
    auto sc = boxdim::slope_cover_check(n);
    bool row_ok = sc.certified && sc.intervals.size() == (std::size_t{1} << n);
    ok = ok && row_ok;
    rows.push_back({{"n", n},
                    {"intervals", sc.intervals.size()},
                    {"max_diameter", io::to_json(sc.max_diameter)},
                    {"bound_exp", n * n},
                    {"certified", row_ok}});
  }
  out["rows"] = rows;
  out["passed"] = ok;
  return out;
}

json lipschitz_curve(const Curve& curve, const Config& c) {
  auto family = random_family(curve, c.samples, c.seed, c.p);
  std::vector<const lines::Line*> tangents;
  for (const auto& l : family.lines) {
    if (!l.is_vertical()) {
      tangents.push_back(&l);
    }
  }
  std::uint64_t t = 0, f = 0, u = 0, separate = 0;
  for (std::size_t i = 0; i < tangents.size(); ++i) {
    for (std::size_t j = i + 1; j < tangents.size(); ++j) {
      if (lines::verify_code_lipschitz(*tangents[i], *tangents[j]) == Verdict::CertifiedTrue) {
        ++separate;
      }
      switch (lines::verify_code_lipschitz(curve, *tangents[i], *tangents[j], c.p)) {
      case Verdict::CertifiedTrue:
        ++t;
        break;
      case Verdict::CertifiedFalse:
        ++f;
        break;
      case Verdict::Inconclusive:
        ++u;
        break;
      }
    }
  }
  const std::uint64_t pairs = t + f + u;
  const bool ok = f == 0 && pairs > 0 && static_cast<double>(t) >= kMinTrueFraction * static_cast<double>(pairs);
  return {{"tangents", tangents.size()},
          {"verticals", family.lines.size() - tangents.size()},
          {"first_points", first_points(family)},
          {"pairs", pairs},
          {"certified_true", t},
          {"certified_true_separate", separate},
          {"certified_false", f},
          {"inconclusive", u},
          {"true_fraction", io::fixed6(pairs ? static_cast<double>(t) / static_cast<double>(pairs) : 0.0)},
          {"passed", ok}};
}

json lipschitz(const Config& c) {
  json out = header(2, "code-set lipschitz");
  bool ok = true;
  for (const char* id : {"tbinc", "tcantc"}) {
    out[id] = lipschitz_curve(*make_curve(id), c);
    ok = ok && out[id]["passed"].get<bool>();
  }
  out["passed"] = ok;
  return out;
}

json tangency_curve(const Curve& curve, const Config& c) {
  auto family = random_family(curve, c.tangency_lines, c.seed + 1, c.p);
  std::uint64_t single = 0, vertical = 0, numeric = 0, structural = 0;
  json failed = json::array();
  for (const auto& l : family.lines) {
    if (l.is_vertical()) {
      ++vertical;
      ++single;
      continue;
    }
    auto r = lines::verify_below(curve, l, c.tangency_depth, c.p);
    numeric += r.numeric_blocks;
    structural += r.structural_blocks;
    if (lines::single_intersection(curve, l, c.tangency_depth, c.p) == lines::Intersection::CertifiedSingle) {
      ++single;
    } else {
      failed.push_back(io::to_json(l.x0));
    }
  }
  return {{"lines", family.lines.size()},
          {"first_points", first_points(family)},
          {"vertical", vertical},
          {"certified_single", single},
          {"numeric_blocks", numeric},
          {"structural_blocks", structural},
          {"failed", failed},
          {"passed", single == family.lines.size()}};
}

json tangency(const Config& c) {
  json out = header(3, "single intersection");
  bool ok = true;
  for (const char* id : {"parabola", "tbinc", "tcantc"}) {
    out[id] = tangency_curve(*make_curve(id), c);
    ok = ok && out[id]["passed"].get<bool>();
  }
  out["passed"] = ok;
  return out;
}

json cover(const Curve& curve, const lines::SampleSpec& spec, int p) {
  auto family = lines::build_family(curve, spec, tall_window(), p);
  auto points = lines::sample_points(spec);
  json rows = io::cover_report_json(points, curve);
  std::uint64_t own = 0, ambiguous = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Rational& x = points[k];
    auto d = x.as_dyadic();
    Enclosure y = curve.value(x, p);
    // which lines meet (x, F(x)) up to enclosure width
    std::uint64_t meets = 0;
    bool own_meets = false;
    for (std::size_t j = 0; j < family.lines.size(); ++j) {
      const auto& l = family.lines[j];
      bool m = false;
      if (l.is_vertical()) {
        m = l.x0 == x;
      } else if (d) {
        m = lines::realize(l, *d).y.overlaps(y);
      }
      meets += m ? 1 : 0;
      own_meets = own_meets || (m && j == k);
    }
    rows[k]["lines_meeting"] = meets;
    own += own_meets ? 1 : 0;
    ambiguous += meets > 1 ? 1 : 0;
  }
  return {{"curve", std::string(curve.id())},
          {"points", rows},
          {"own_line_meets", own},
          {"ambiguous", ambiguous},
          {"passed", own == points.size() && ambiguous == 0}};
}

json gap_bound(const Config& c) {
  json out = header(4, "gap image bound");
  auto reg = cantor::registry(c.max_ni);
  bool ok = true;
  json rows = json::array();
  std::uint64_t strict_true = 0, strict_false = 0, strict_open = 0;
  for (std::uint64_t n = 1; n <= c.max_stage; ++n) {
    for (const auto& g : reg->stage(n)) {
      if (BigInt(n) + g.i > c.max_ni) {
        continue;
      }
      auto img = cantor::gap_image_bound(g, c.p);
      ok = ok && img.certified_le_relaxed;
      switch (img.strict_bound) {
      case Verdict::CertifiedTrue:
        ++strict_true;
        break;
      case Verdict::CertifiedFalse:
        ++strict_false;
        break;
      case Verdict::Inconclusive:
        ++strict_open;
        break;
      }
      rows.push_back({{"n", n},
                      {"i", g.i.str()},
                      {"a", io::to_json(g.a)},
                      {"b", io::to_json(g.b)},
                      {"delta", io::to_json(img.delta)},
                      {"certified_le_relaxed", img.certified_le_relaxed},
                      {"strict_bound", std::string(to_string(img.strict_bound))}});
    }
  }
  out["gaps"] = rows;
  out["strict_bound_counts"] = {
      {"certified_true", strict_true}, {"certified_false", strict_false}, {"inconclusive", strict_open}};
  out["passed"] = ok && !rows.empty();
  return out;
}

json dimension(const Config& c) {
  json out = header(5, "dimension contrast");
  lines::SampleSpec spec;
  spec.scheme = lines::Scheme::DyadicGrid;
  spec.depth = c.family_depth;
  spec.sides = lines::SidePolicy::Right;
  auto range = boxdim::default_fit_range(c.kmin, c.kmax);
  auto parabola = make_curve("parabola");
  auto digit = make_curve("tbinc");
  auto rp = boxdim::family_report(lines::build_family(*parabola, spec, tall_window(), c.p), c.kmin, c.kmax, range);
  auto rd = boxdim::family_report(lines::build_family(*digit, spec, tall_window(), c.p), c.kmin, c.kmax, range);
  const double gap = rp.fit.dim - rd.fit.dim;
  out["parabola"] = io::to_json(rp);
  out["tbinc"] = io::to_json(rd);
  out["difference"] = io::fixed6(gap);
  out["thresholds"] = {{"parabola_min", io::fixed6(kParabolaDimMin)},
                       {"tbinc_max", io::fixed6(kDigitDimMax)},
                       {"difference_min", io::fixed6(kDimGapMin)}};
  out["passed"] = rp.fit.dim >= kParabolaDimMin && rd.fit.dim <= kDigitDimMax && gap >= kDimGapMin;
  return out;
}

json darboux(const Config&) {
  json out = header(6, "darboux slope set");
  auto blocks = boxdim::parabola_slope_blocks(kDarbouxDepth);
  std::vector<unsigned> scales;
  std::vector<double> logs;
  json counts = json::array();
  for (unsigned k = kDarbouxKmin; k <= kDarbouxKmax; ++k) {
    BigInt n = boxdim::boxes_of_intervals(blocks, k);
    scales.push_back(k);
    logs.push_back(std::log2(n.convert_to<double>()));
    counts.push_back(n.str());
  }
  auto fit = boxdim::fit_dimension(scales, logs, kDarbouxKmin, kDarbouxKmax);
  out["scales"] = scales;
  out["counts"] = counts;
  out["fit"] = {{"range", {fit.lo, fit.hi}}, {"dim", io::fixed6(fit.dim)}, {"residual", io::fixed6(fit.residual)}};
  out["passed"] = kDarbouxLo <= fit.dim && fit.dim <= kDarbouxHi;
  return out;
}

json oracle_equivalence(const Config& c) {
  json out = header(7, "oracle equivalence");
  std::uint64_t agree = 0;
  json disagree = json::array();
  for (unsigned j = 0; j < kBracketPoints; ++j) {
    Rational x(Dyadic(BigInt(j), 5));
    Enclosure rec = digit_curve::F(x, c.p);
    Enclosure br = oracles::tbinc_riemann_bracket(x, kBracketPanels, c.p);
    if (rec.overlaps(br)) {
      ++agree;
    } else {
      disagree.push_back(io::to_json(x));
    }
  }
  std::uint64_t checked = 0, within = 0;
  json worst = json::array();
  for (std::uint64_t m = kStageMin; m <= kStageMax; ++m) {
    const Dyadic bound = Dyadic::pow2(-static_cast<std::int64_t>(m));
    Dyadic max_diff(0);
    for (std::uint64_t k = 0; k <= (std::uint64_t{1} << kStageGridDepth); ++k) {
      Dyadic x(BigInt(k), kStageGridDepth);
      Enclosure next = cantor::cantor_fm(x, m + 1, c.p);
      Enclosure cur = cantor::cantor_fm(x, m, c.p);
      Dyadic diff = (next - cur).mag();
      max_diff = max(max_diff, diff);
      ++checked;
      if (diff <= bound + next.width() + cur.width()) {
        ++within;
      }
    }
    worst.push_back({{"m", m}, {"max_abs_diff", io::to_json(max_diff)}, {"bound_exp", m}});
  }
  out["tbinc_F"] = {{"points", kBracketPoints}, {"panels_log2", kBracketPanels}, {"agree", agree},
                    {"disagree", disagree}};
  out["cantor_stages"] = {{"checked", checked}, {"within", within}, {"per_stage", worst}};
  out["passed"] = agree == kBracketPoints && within == checked;
  return out;
}

json exact_counting(const Config& c) {
  json out = header(8, "exact counting");
  const lines::Window w = tall_window();
  const char* ids[] = {"parabola", "tbinc", "tcantc"};
  std::uint64_t compared = 0, equal = 0, refinement_ok = 0;
  json mismatches = json::array();
  for (std::uint64_t fam = 0; fam < c.families; ++fam) {
    std::mt19937_64 rng(c.seed * 1000003 + fam);
    auto curve = make_curve(ids[fam % 3]);
    lines::SampleSpec spec;
    spec.scheme = lines::Scheme::Explicit;
    spec.sides = lines::SidePolicy::Random;
    spec.seed = rng();
    for (int t = 0; t < 3; ++t) {
      spec.points.emplace_back(Dyadic(BigInt(rng() >> 58), 6));
    }
    auto segs = boxdim::clip_family(lines::build_family(*curve, spec, w, c.p));
    // raw segments on a coarse grid hit cell corners and edges often
    for (int t = 0; t < 3; ++t) {
      auto coord = [&](bool y) {
        auto v = static_cast<long long>(rng() >> 59); // 0..31
        return y ? Dyadic(v - 16, 4) : Dyadic(v, 5);
      };
      segs.push_back({coord(false), coord(true), coord(false), coord(true)});
    }
    std::uint64_t prev = 0;
    bool refine = true;
    for (unsigned k = 0; k <= c.count_kmax; ++k) {
      std::uint64_t fast = boxdim::boxes_of_segments(segs, w, k);
      std::uint64_t slow = oracles::brute_force_boxes(segs, w, k);
      ++compared;
      if (fast == slow) {
        ++equal;
      } else {
        mismatches.push_back({{"family", fam}, {"k", k}, {"traversal", fast}, {"brute_force", slow}});
      }
      if (k > 0 && (fast < prev || fast > 4 * prev)) {
        refine = false;
      }
      prev = fast;
    }
    refinement_ok += refine ? 1 : 0;
  }
  out["families"] = c.families;
  out["comparisons"] = compared;
  out["equal"] = equal;
  out["refinement_ok"] = refinement_ok;
  out["mismatches"] = mismatches;
  out["passed"] = equal == compared && refinement_ok == c.families;
  return out;
}

std::vector<json> run_all(const Config& c) {
  return {slope_cover(c), lipschitz(c), tangency(c),          gap_bound(c),
          dimension(c),   darboux(c),   oracle_equivalence(c), exact_counting(c)};
}

json determinism(const std::function<std::string()>& produce) {
  json out = header(9, "determinism");
  std::string first = produce();
  std::string second = produce();
  out["bytes"] = first.size();
  out["passed"] = first == second;
  return out;
}

json config_json(const Config& c) {
  return {{"p", c.p},
          {"seed", c.seed},
          {"samples", c.samples},
          {"tangency_lines", c.tangency_lines},
          {"tangency_depth", c.tangency_depth},
          {"max_stage", c.max_stage},
          {"max_ni", c.max_ni},
          {"cover_depth", c.cover_depth},
          {"family_depth", c.family_depth},
          {"kmin", c.kmin},
          {"kmax", c.kmax},
          {"families", c.families},
          {"count_kmax", c.count_kmax}};
}

} // namespace lcl::suite
