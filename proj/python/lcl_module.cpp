#include "lcl/boxdim.hpp"
#include "lcl/cantor.hpp"
#include "lcl/io.hpp"
#include "lcl/suite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace lcl;
using nlohmann::json;

namespace {

std::string enclosure_text(const Enclosure& e) { return io::to_json(e).dump(); }

lines::SampleSpec make_spec(const std::string& scheme, unsigned depth, std::uint64_t count, std::uint64_t seed,
                            const std::string& sides, const std::vector<std::string>& points) {
  lines::SampleSpec spec;
  spec.scheme = points.empty() ? lines::scheme_from_string(scheme) : lines::Scheme::Explicit;
  spec.depth = depth;
  spec.count = count;
  spec.seed = seed;
  spec.sides = lines::side_policy_from_string(sides);
  for (const auto& x : points) {
    spec.points.push_back(Rational::parse(x));
  }
  return spec;
}

std::string verify(const std::string& what, const std::string& curve, int p, std::uint64_t seed,
                   std::uint64_t samples, std::uint64_t lines_per_curve, unsigned depth, std::uint64_t max_ni) {
  suite::Config c;
  c.p = p;
  c.seed = seed;
  c.samples = samples;
  c.tangency_lines = lines_per_curve;
  c.tangency_depth = depth;
  c.max_ni = max_ni;
  py::gil_scoped_release release;
  if (what == "lipschitz") {
    return suite::lipschitz_curve(*make_curve(curve), c).dump();
  }
  if (what == "tangency") {
    return suite::tangency_curve(*make_curve(curve), c).dump();
  }
  if (what == "gapbound") {
    return suite::gap_bound(c).dump();
  }
  if (what == "slopecover") {
    return suite::slope_cover(c).dump();
  }
  if (what == "all") {
    json criteria = json::array();
    bool ok = true;
    for (auto& r : suite::run_all(c)) {
      ok = ok && r["passed"].get<bool>();
      criteria.push_back(std::move(r));
    }
    return json{{"config", suite::config_json(c)}, {"criteria", criteria}, {"passed", ok}}.dump();
  }
  throw std::invalid_argument("unknown verification: " + what);
}

} // namespace

PYBIND11_MODULE(_lcl, m) {
  m.doc() = "Certified convex curves, covering lines and box counts";

  py::register_exception<PrecisionFailure>(m, "PrecisionFailure", PyExc_ArithmeticError);

  m.def(
      "value", [](const std::string& curve, const std::string& x, int p) {
        return enclosure_text(make_curve(curve)->value(Rational::parse(x), p));
      },
      py::arg("curve"), py::arg("x"), py::arg("p") = 40);
  m.def(
      "slope",
      [](const std::string& curve, const std::string& x, const std::string& side, int p) {
        return enclosure_text(make_curve(curve)->slope(Rational::parse(x), side_from_string(side), p));
      },
      py::arg("curve"), py::arg("x"), py::arg("side") = "right", py::arg("p") = 40);
  m.def(
      "tangent",
      [](const std::string& curve, const std::string& x, const std::string& side, int p) {
        return io::to_json(lines::tangent_at(*make_curve(curve), Rational::parse(x), side_from_string(side), p)).dump();
      },
      py::arg("curve"), py::arg("x"), py::arg("side") = "right", py::arg("p") = 40);
  m.def(
      "build_family",
      [](const std::string& curve, const std::string& scheme, unsigned depth, std::uint64_t count, std::uint64_t seed,
         const std::string& sides, const std::string& window, const std::vector<std::string>& points, int p) {
        auto spec = make_spec(scheme, depth, count, seed, sides, points);
        return io::to_json(lines::build_family(*make_curve(curve), spec, lines::Window::parse(window), p)).dump();
      },
      py::arg("curve"), py::arg("scheme") = "grid", py::arg("depth") = 3, py::arg("count") = 1, py::arg("seed") = 0,
      py::arg("sides") = "right", py::arg("window") = "0,-1,1,1", py::arg("points") = std::vector<std::string>{},
      py::arg("p") = 40);
  m.def(
      "code_lipschitz",
      [](const std::string& family, std::size_t i, std::size_t j, int p) {
        auto fam = io::family_from_json(json::parse(family));
        auto v = lines::verify_code_lipschitz(*make_curve(fam.curve), fam.lines.at(i), fam.lines.at(j), p);
        return std::string(to_string(v));
      },
      py::arg("family"), py::arg("i"), py::arg("j"), py::arg("p") = 40);
  m.def(
      "single_intersection",
      [](const std::string& family, std::size_t i, unsigned g, int p) {
        auto fam = io::family_from_json(json::parse(family));
        return std::string(
            lines::to_string(lines::single_intersection(*make_curve(fam.curve), fam.lines.at(i), g, p)));
      },
      py::arg("family"), py::arg("i"), py::arg("g") = 10, py::arg("p") = 40);
  m.def(
      "boxcount",
      [](const std::string& family, unsigned kmin, unsigned kmax, std::optional<std::pair<unsigned, unsigned>> fit) {
        auto fam = io::family_from_json(json::parse(family));
        auto range = fit ? *fit : boxdim::default_fit_range(kmin, kmax);
        return io::to_json(boxdim::family_report(fam, kmin, kmax, range)).dump();
      },
      py::arg("family"), py::arg("kmin") = 3, py::arg("kmax") = 9, py::arg("fit") = std::nullopt);
  m.def(
      "slope_cover",
      [](std::uint64_t n) {
        auto c = boxdim::slope_cover_check(n);
        json iv = json::array();
        for (const auto& e : c.intervals) {
          iv.push_back(io::to_json(e));
        }
        return json{{"n", n}, {"certified", c.certified}, {"max_diameter", io::to_json(c.max_diameter)},
                    {"intervals", iv}}
            .dump();
      },
      py::arg("n"));
  m.def(
      "registry",
      [](std::uint64_t max_stage, std::uint64_t budget) {
        return io::registry_json(*cantor::registry(budget), max_stage).dump();
      },
      py::arg("max_stage"), py::arg("budget"));
  m.def(
      "gap_image",
      [](std::uint64_t n, const std::string& i, int p) {
        auto reg = cantor::registry(BigInt(i).convert_to<std::uint64_t>());
        const cantor::GapRef* g = reg->find(n, BigInt(i));
        if (g == nullptr) {
          throw std::invalid_argument("gap not registered");
        }
        auto img = cantor::gap_image_bound(*g, p);
        return json{{"delta", io::to_json(img.delta)},
                    {"certified_le_relaxed", img.certified_le_relaxed},
                    {"strict_bound", std::string(to_string(img.strict_bound))}}
            .dump();
      },
      py::arg("n"), py::arg("i"), py::arg("p") = 40);
  m.def(
      "in_cstar",
      [](const std::string& x, std::uint64_t depth) {
        auto r = cantor::in_Cstar(Dyadic::parse(x), depth);
        return json{{"kind", std::string(cantor::to_string(r.kind))}, {"depth_used", r.depth_used}}.dump();
      },
      py::arg("x"), py::arg("depth") = 12);
  m.def(
      "svg",
      [](const std::string& curve, const std::optional<std::string>& family, int grid, const std::string& window,
         int p) {
        auto c = make_curve(curve);
        io::PlotSpec spec;
        spec.curve = c.get();
        spec.window = lines::Window::parse(window);
        if (family) {
          auto fam = io::family_from_json(json::parse(*family));
          spec.segments = boxdim::clip_family(fam);
        }
        spec.grid = grid;
        spec.p = p;
        std::ostringstream os;
        io::write_svg(os, spec);
        return os.str();
      },
      py::arg("curve"), py::arg("family") = std::nullopt, py::arg("grid") = -1, py::arg("window") = "0,-1,1,1",
      py::arg("p") = 40);
  m.def("verify", &verify, py::arg("what"), py::arg("curve") = "tbinc", py::arg("p") = 40, py::arg("seed") = 7,
        py::arg("samples") = 200, py::arg("lines") = 50, py::arg("depth") = 10, py::arg("max_ni") = 14);
}
