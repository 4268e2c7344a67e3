#include "lcl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace lcl::io {

json to_json(const Dyadic& d) { return {{"num", d.num().str()}, {"exp", d.exp()}}; }

Dyadic dyadic_from_json(const json& j) {
  if (j.is_string()) {
    return Dyadic::parse(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return Dyadic(j.get<long long>());
  }
  return {BigInt(j.at("num").get<std::string>()), j.at("exp").get<std::uint64_t>()};
}

json to_json(const Enclosure& e) { return {{"lo", to_json(e.lo())}, {"hi", to_json(e.hi())}}; }

Enclosure enclosure_from_json(const json& j) {
  return {dyadic_from_json(j.at("lo")), dyadic_from_json(j.at("hi"))};
}

json to_json(const Rational& r) {
  if (auto d = r.as_dyadic()) {
    return to_json(*d);
  }
  return {{"num", r.num().str()}, {"den", r.den().str()}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) {
    return Rational::parse(j.get<std::string>());
  }
  if (j.is_object() && j.contains("den")) {
    return {BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>())};
  }
  return Rational(dyadic_from_json(j));
}

json to_json(const lines::Window& w) {
  return {{"x0", to_json(w.x0)}, {"y0", to_json(w.y0)}, {"x1", to_json(w.x1)}, {"y1", to_json(w.y1)}};
}

lines::Window window_from_json(const json& j) {
  if (j.is_string()) {
    return lines::Window::parse(j.get<std::string>());
  }
  return {dyadic_from_json(j.at("x0")), dyadic_from_json(j.at("y0")), dyadic_from_json(j.at("x1")),
          dyadic_from_json(j.at("y1"))};
}

json to_json(const lines::Line& line) {
  json j = {{"kind", std::string(lines::to_string(line.kind))}, {"x0", to_json(line.x0)}};
  if (!line.is_vertical()) {
    j["side"] = std::string(to_string(line.side));
    j["a"] = to_json(line.a);
    j["b"] = to_json(line.b);
  }
  return j;
}

lines::Line line_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Rational x0 = rational_from_json(j.at("x0"));
  if (kind == "vertical") {
    return lines::vertical_at(x0);
  }
  if (kind != "tangent") {
    throw std::invalid_argument("unknown line kind: " + kind);
  }
  lines::Line line;
  line.kind = lines::LineKind::Tangent;
  line.x0 = x0;
  line.side = side_from_string(j.at("side").get<std::string>());
  line.a = enclosure_from_json(j.at("a"));
  line.b = enclosure_from_json(j.at("b"));
  return line;
}

json to_json(const lines::LineFamily& family) {
  json ls = json::array();
  for (const auto& l : family.lines) {
    ls.push_back(to_json(l));
  }
  return {{"curve", family.curve}, {"window", to_json(family.window)}, {"lines", ls}};
}

lines::LineFamily family_from_json(const json& j) {
  lines::LineFamily f;
  f.curve = j.at("curve").get<std::string>();
  f.window = window_from_json(j.at("window"));
  for (const auto& l : j.at("lines")) {
    f.lines.push_back(line_from_json(l));
  }
  return f;
}

json registry_json(const cantor::GapRegistry& reg, std::uint64_t max_stage) {
  json out = json::array();
  for (std::uint64_t n = 1; n <= std::min(max_stage, reg.stage_count()); ++n) {
    for (const auto& g : reg.stage(n)) {
      out.push_back({{"n", n}, {"i", g.i.str()}, {"a", to_json(g.a)}, {"b", to_json(g.b)}});
    }
  }
  return out;
}

json cover_report_json(const std::vector<Rational>& points, const Curve& curve) {
  json out = json::array();
  for (const Rational& x : points) {
    json row = {{"x", to_json(x)}};
    if (curve.id() == "tcantc") {
      auto d = x.as_dyadic();
      if (!d) {
        throw std::domain_error("tcantc cover needs dyadic points");
      }
      auto m = cantor::in_Cstar(*d, cantor::CantorCurve::kCoverDepth);
      row["rule"] = m.kind == cantor::Membership::Kind::Yes ? "vertical" : "tangent";
      row["membership"] = std::string(cantor::to_string(m.kind));
      row["depth_used"] = m.depth_used;
    } else {
      row["rule"] = curve.covered_vertically(x) ? "vertical" : "tangent";
      row["depth_used"] = 0;
    }
    out.push_back(row);
  }
  return out;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  return s == "-0.000000" ? "0.000000" : s;
}

json to_json(const boxdim::BoxCountReport& r) {
  return {{"window", to_json(r.window)},
          {"scales", r.scales},
          {"counts", r.counts},
          {"fit",
           {{"range", {r.fit.lo, r.fit.hi}}, {"dim", fixed6(r.fit.dim)}, {"residual", fixed6(r.fit.residual)}}}};
}

void write_segments_csv(std::ostream& os, const std::vector<lines::Segment>& segments) {
  os << "x0,y0,x1,y1\n";
  for (const auto& s : segments) {
    os << s.x0.to_decimal() << ',' << s.y0.to_decimal() << ',' << s.x1.to_decimal() << ',' << s.y1.to_decimal()
       << '\n';
  }
}

void write_report_csv(std::ostream& os, const boxdim::BoxCountReport& r) {
  os << "k,count\n";
  for (std::size_t t = 0; t < r.scales.size(); ++t) {
    os << r.scales[t] << ',' << r.counts[t] << '\n';
  }
}

namespace {

constexpr double kPixels = 512.0;

struct Frame {
  double x0, y0, sx, sy;
  double px(double x) const { return (x - x0) * sx; }
  double py(double y) const { return kPixels - (y - y0) * sy; }
};

} // namespace

void write_svg(std::ostream& os, const PlotSpec& spec) {
  const auto& w = spec.window;
  Frame fr{w.x0.to_double(), w.y0.to_double(), kPixels / (w.x1 - w.x0).to_double(),
           kPixels / (w.y1 - w.y0).to_double()};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n";
  if (spec.grid >= 0) {
    auto k = static_cast<unsigned>(spec.grid);
    const double h = std::ldexp(1.0, -spec.grid);
    for (const auto& [i, j] : boxdim::cells_of_segments(spec.segments, w, k)) {
      double x = fr.px(w.x0.to_double() + static_cast<double>(i) * h);
      double y = fr.py(w.y0.to_double() + static_cast<double>(j + 1) * h);
      os << "<rect x=\"" << fixed6(x) << "\" y=\"" << fixed6(y) << "\" width=\"" << fixed6(h * fr.sx)
         << "\" height=\"" << fixed6(h * fr.sy) << "\" fill=\"#dde6f0\"/>\n";
    }
    const auto nx = (w.x1 - w.x0).ceil_scaled(k).convert_to<std::uint64_t>();
    const auto ny = (w.y1 - w.y0).ceil_scaled(k).convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i <= nx; ++i) {
      double x = fr.px(w.x0.to_double() + static_cast<double>(i) * h);
      os << "<line x1=\"" << fixed6(x) << "\" y1=\"0\" x2=\"" << fixed6(x)
         << "\" y2=\"512\" stroke=\"#c0c0c0\" stroke-width=\"0.5\"/>\n";
    }
    for (std::uint64_t j = 0; j <= ny; ++j) {
      double y = fr.py(w.y0.to_double() + static_cast<double>(j) * h);
      os << "<line x1=\"0\" y1=\"" << fixed6(y) << "\" x2=\"512\" y2=\"" << fixed6(y)
         << "\" stroke=\"#c0c0c0\" stroke-width=\"0.5\"/>\n";
    }
  }
  if (spec.curve != nullptr) {
    os << "<path d=\"";
    const std::uint64_t n = std::uint64_t{1} << spec.curve_depth;
    for (std::uint64_t t = 0; t <= n; ++t) {
      Dyadic x(BigInt(t), spec.curve_depth);
      double y = spec.curve->value(Rational(x), spec.p).mid().to_double();
      os << (t == 0 ? "M" : " L") << fixed6(fr.px(x.to_double())) << ' ' << fixed6(fr.py(y));
    }
    os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& s : spec.segments) {
    os << "<path d=\"M" << fixed6(fr.px(s.x0.to_double())) << ' ' << fixed6(fr.py(s.y0.to_double())) << " L"
       << fixed6(fr.px(s.x1.to_double())) << ' ' << fixed6(fr.py(s.y1.to_double()))
       << "\" fill=\"none\" stroke=\"#2060a0\" stroke-width=\"0.5\"/>\n";
  }
  os << "</svg>\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << j.dump(2) << '\n';
}

} // namespace lcl::io
