#include "lcl/boxdim.hpp"
#include "lcl/cantor.hpp"
#include "lcl/io.hpp"
#include "lcl/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace lcl;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string curve{"parabola"};
  int p{40};
  std::uint64_t seed{7};
  int grid{-1};
  std::uint64_t stage{0};
  std::string scheme{"grid"};
  std::uint64_t count{1};
  std::string points;
  std::string sides{"right"};
  std::string window;
  std::string scales{"3:9"};
  std::string fit;
  std::string family;
  std::string out;
  std::string csv;
  std::string segments;
  std::string cover;
  std::string format;
  std::uint64_t samples{200};
  std::uint64_t lines{50};
  unsigned depth{10};
  std::uint64_t max_stage{3};
  std::uint64_t max_ni{14};
  std::uint64_t cover_depth{6};
  unsigned curve_depth{8};
};

const char* kTallWindow = "0,-1,1,1";

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("expected lo:hi, got " + s);
  }
  return {static_cast<unsigned>(std::stoul(s.substr(0, colon))), static_cast<unsigned>(std::stoul(s.substr(colon + 1)))};
}

// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write " + path);
  }
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

lines::SampleSpec sample_spec(const RunConfig& c, unsigned default_grid) {
  lines::SampleSpec spec;
  spec.scheme = c.points.empty() ? lines::scheme_from_string(c.scheme) : lines::Scheme::Explicit;
  spec.depth = c.grid >= 0 ? static_cast<unsigned>(c.grid) : default_grid;
  spec.count = c.count;
  spec.seed = c.seed;
  spec.sides = lines::side_policy_from_string(c.sides);
  std::stringstream ss(c.points);
  for (std::string item; std::getline(ss, item, ',');) {
    spec.points.push_back(Rational::parse(item));
  }
  return spec;
}

suite::Config suite_config(const RunConfig& c) {
  suite::Config s;
  s.p = c.p;
  s.seed = c.seed;
  s.samples = c.samples;
  s.tangency_lines = c.lines;
  s.tangency_depth = c.depth;
  s.max_stage = c.max_stage;
  s.max_ni = c.max_ni;
  s.cover_depth = c.cover_depth;
  return s;
}

int cmd_gen(const RunConfig& c) {
  auto curve = make_curve(c.curve);
  const unsigned g = c.grid >= 0 ? static_cast<unsigned>(c.grid) : 3;
  if (g > 24) {
    throw std::invalid_argument("grid depth above 24");
  }
  const std::uint64_t n = std::uint64_t{1} << g;
  std::ostringstream os;
  json rows = json::array();
  const bool as_json = c.format == "json";
  if (!as_json) {
    os << "x,f_lo,f_hi,F_lo,F_hi\n";
  }
  for (std::uint64_t k = 0; k <= n; ++k) {
    Dyadic x(BigInt(k), g);
    const Side side = k == n ? Side::Left : Side::Right;
    Enclosure f = c.stage > 0 && curve->id() == "tcantc" ? cantor::cantor_f(x, c.stage, c.p)
                                                         : curve->slope(Rational(x), side, c.p);
    Enclosure F = curve->value(Rational(x), c.p);
    if (as_json) {
      rows.push_back({{"x", io::to_json(x)}, {"f", io::to_json(f)}, {"F", io::to_json(F)}});
    } else {
      os << x.to_decimal() << ',' << f.lo().to_decimal() << ',' << f.hi().to_decimal() << ','
         << F.lo().to_decimal() << ',' << F.hi().to_decimal() << '\n';
    }
  }
  emit(c.out, as_json ? dump(rows) : os.str());
  return 0;
}

int cmd_lines(const RunConfig& c) {
  auto curve = make_curve(c.curve);
  auto spec = sample_spec(c, 3);
  auto window = lines::Window::parse(c.window.empty() ? kTallWindow : c.window);
  auto family = lines::build_family(*curve, spec, window, c.p);
  emit(c.out, dump(io::to_json(family)));
  if (!c.segments.empty()) {
    std::ostringstream os;
    io::write_segments_csv(os, boxdim::clip_family(family));
    emit(c.segments, os.str());
  }
  if (!c.cover.empty()) {
    emit(c.cover, dump(io::cover_report_json(lines::sample_points(spec), *curve)));
  }
  return 0;
}

int cmd_boxcount(const RunConfig& c) {
  if (c.family.empty()) {
    throw std::invalid_argument("boxcount needs --family");
  }
  auto family = io::family_from_json(io::read_json_file(c.family));
  if (!c.window.empty()) {
    family.window = lines::Window::parse(c.window);
  }
  auto [kmin, kmax] = parse_range(c.scales);
  auto fit = c.fit.empty() ? boxdim::default_fit_range(kmin, kmax) : parse_range(c.fit);
  auto report = boxdim::family_report(family, kmin, kmax, fit);
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_report_csv(os, report);
    emit(c.out, os.str());
  } else {
    emit(c.out, dump(io::to_json(report)));
  }
  if (!c.csv.empty()) {
    std::ostringstream os;
    io::write_report_csv(os, report);
    emit(c.csv, os.str());
  }
  return 0;
}

std::string report_text(const RunConfig& c) {
  const auto sc = suite_config(c);
  json criteria = json::array();
  bool ok = true;
  for (auto& r : suite::run_all(sc)) {
    ok = ok && r["passed"].get<bool>();
    criteria.push_back(std::move(r));
  }
  return dump({{"config", suite::config_json(sc)}, {"criteria", criteria}, {"passed", ok}});
}

int cmd_verify(const std::string& what, const RunConfig& c) {
  const auto sc = suite_config(c);
  json r;
  if (what == "all") {
    std::string text = report_text(c);
    emit(c.out.empty() ? "report.json" : c.out, text);
    return json::parse(text)["passed"].get<bool>() ? 0 : 1;
  }
  if (what == "lipschitz") {
    r = suite::lipschitz_curve(*make_curve(c.curve), sc);
  } else if (what == "tangency") {
    r = suite::tangency_curve(*make_curve(c.curve), sc);
  } else if (what == "cover") {
    r = suite::cover(*make_curve(c.curve), sample_spec(c, 4), c.p);
  } else if (what == "gapbound") {
    r = suite::gap_bound(sc);
  } else if (what == "slopecover") {
    r = suite::slope_cover(sc);
  } else {
    throw std::invalid_argument("unknown verification: " + what);
  }
  emit(c.out, dump(r));
  return r["passed"].get<bool>() ? 0 : 1;
}

int cmd_plot(const RunConfig& c) {
  io::PlotSpec spec;
  std::string curve_id = c.curve;
  spec.window = lines::Window::parse(kTallWindow);
  if (!c.family.empty()) {
    auto family = io::family_from_json(io::read_json_file(c.family));
    curve_id = family.curve;
    spec.window = family.window;
    spec.segments = boxdim::clip_family(family);
  }
  if (!c.window.empty()) {
    spec.window = lines::Window::parse(c.window);
  }
  auto curve = make_curve(curve_id);
  spec.curve = curve.get();
  spec.grid = c.grid;
  spec.curve_depth = c.curve_depth;
  spec.p = c.p;
  std::ostringstream os;
  io::write_svg(os, spec);
  emit(c.out, os.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex curves with small code sets: certified lines, box counts and checks"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--curve", c.curve, "parabola, tbinc or tcantc")->capture_default_str();
  app.add_option("-p,--precision", c.p, "target precision bits")->envname("LCL_PRECISION")->capture_default_str();
  app.add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
  app.add_option("--grid", c.grid, "dyadic grid depth; for plot, the overlay scale");
  app.add_option("--stage", c.stage, "tcantc stage count for f (0 = automatic)");
  app.add_option("--scheme", c.scheme, "grid or random")->capture_default_str();
  app.add_option("--count", c.count, "random sample size")->capture_default_str();
  app.add_option("--points", c.points, "explicit points, e.g. 0,1/2,1");
  app.add_option("--sides", c.sides, "left, right, two-sided or random")->capture_default_str();
  app.add_option("--window", c.window, "x0,y0,x1,y1");
  app.add_option("--scales", c.scales, "kmin:kmax")->capture_default_str();
  app.add_option("--fit", c.fit, "fit range lo:hi");
  app.add_option("--family", c.family, "LineFamily JSON input");
  app.add_option("-o,--out", c.out, "output file (stdout if omitted)");
  app.add_option("--csv", c.csv, "extra CSV output");
  app.add_option("--segments", c.segments, "clipped segments CSV output");
  app.add_option("--cover", c.cover, "cover report JSON output");
  app.add_option("--format", c.format, "csv or json");
  app.add_option("--samples", c.samples, "lipschitz tangents per curve")->capture_default_str();
  app.add_option("--lines", c.lines, "tangency lines per curve")->capture_default_str();
  app.add_option("--depth", c.depth, "tangency grid depth")->capture_default_str();
  app.add_option("--max-stage", c.max_stage, "gap bound stages")->capture_default_str();
  app.add_option("--max-ni", c.max_ni, "gap bound limit on n + i")->capture_default_str();
  app.add_option("--cover-depth", c.cover_depth, "slope cover depths 1..n")->capture_default_str();
  app.add_option("--curve-depth", c.curve_depth, "plot polyline depth")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "sample f and F on a dyadic grid")->fallthrough();
  gen->add_option("curve", c.curve, "curve id");
  auto* lin = app.add_subcommand("lines", "build a covering line family")->fallthrough();
  lin->add_option("curve", c.curve, "curve id");
  app.add_subcommand("boxcount", "box counts and fitted dimension of a family")->fallthrough();
  auto* verify = app.add_subcommand("verify", "run a certified check")->fallthrough();
  std::string what;
  verify->add_option("what", what, "lipschitz, tangency, cover, gapbound, slopecover or all")
      ->required()
      ->check(CLI::IsMember({"lipschitz", "tangency", "cover", "gapbound", "slopecover", "all"}));
  app.add_subcommand("plot", "SVG of the curve, a family and a grid overlay")->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "gen") {
      return cmd_gen(c);
    }
    if (cmd == "lines") {
      return cmd_lines(c);
    }
    if (cmd == "boxcount") {
      return cmd_boxcount(c);
    }
    if (cmd == "verify") {
      return cmd_verify(what, c);
    }
    return cmd_plot(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
