#include <doctest.h>

#include "lcl/io.hpp"

#include <sstream>

using namespace lcl;
using nlohmann::json;

namespace {
Dyadic D(const char* s) { return Dyadic::parse(s); }
} // namespace

TEST_CASE("dyadic json") {
  CHECK(io::to_json(D("3/8")) == json{{"num", "3"}, {"exp", 3}});
  CHECK(io::dyadic_from_json(io::to_json(D("-5/1024"))) == D("-5/1024"));
  CHECK(io::dyadic_from_json(json("0.75")) == D("3/4"));
  const Dyadic big(BigInt(1) << 300, 400);
  CHECK(io::dyadic_from_json(json::parse(io::to_json(big).dump())) == big);
}

TEST_CASE("family json round trip") {
  auto curve = make_curve("tbinc");
  lines::SampleSpec spec;
  spec.depth = 4;
  spec.sides = lines::SidePolicy::Random;
  auto fam = lines::build_family(*curve, spec, lines::Window::parse("0,-1,1,1"), 40);
  fam.lines.push_back(lines::vertical_at(Rational::parse("1/3")));
  const json j = io::to_json(fam);
  CHECK(j["curve"] == "tbinc");
  CHECK(j["lines"].back() == json{{"kind", "vertical"}, {"x0", {{"num", "1"}, {"den", "3"}}}});
  CHECK(!j["lines"][0].contains("den"));
  auto back = io::family_from_json(json::parse(j.dump()));
  CHECK(io::to_json(back) == j);
  CHECK(back.lines[3].a == fam.lines[3].a);
  CHECK_THROWS(io::family_from_json(json{{"curve", "x"}, {"window", "0,0,1,1"}, {"lines", {{{"kind", "chord"}, {"x0", "0"}}}}}));
}

TEST_CASE("registry and cover reports") {
  auto reg = cantor::registry(10);
  json r = io::registry_json(*reg, 1);
  REQUIRE(r.size() == 10);
  CHECK(r[0] == json{{"n", 1}, {"i", "1"}, {"a", {{"num", "1"}, {"exp", 2}}}, {"b", {{"num", "3"}, {"exp", 2}}}});
  cantor::CantorCurve cc;
  json c = io::cover_report_json({Rational::parse("1/4"), Rational::parse("1/2")}, cc);
  CHECK(c[0]["rule"] == "vertical");
  CHECK(c[1]["rule"] == "tangent");
  CHECK(c[1]["depth_used"].get<int>() >= 1);
}

TEST_CASE("box count report formats") {
  std::vector<lines::Segment> segs{{D("0"), D("0"), D("1"), D("1")}};
  auto rep = boxdim::segment_report(segs, {}, 1, 4, {2, 4});
  json j = io::to_json(rep);
  CHECK(j["scales"] == json{1, 2, 3, 4});
  CHECK(j["counts"] == json{2, 4, 8, 16});
  CHECK(j["fit"]["dim"] == "1.000000");
  CHECK(j["fit"]["range"] == json{2, 4});
  std::ostringstream csv;
  io::write_report_csv(csv, rep);
  CHECK(csv.str() == "k,count\n1,2\n2,4\n3,8\n4,16\n");
  std::ostringstream seg;
  io::write_segments_csv(seg, segs);
  CHECK(seg.str() == "x0,y0,x1,y1\n0,0,1,1\n");
  CHECK(io::fixed6(-0.0000001) == "0.000000");
}

TEST_CASE("svg") {
  ParabolaCurve par;
  io::PlotSpec spec;
  spec.curve = &par;
  spec.window = lines::Window{};
  std::ostringstream a, b;
  io::write_svg(a, spec);
  io::write_svg(b, spec);
  CHECK(a.str() == b.str());
  auto count = [](const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) {
      ++n;
    }
    return n;
  };
  CHECK(count(a.str(), "<path") == 1);
  lines::LineFamily fam;
  fam.window = spec.window;
  for (const char* x : {"0", "1/2", "1"}) {
    fam.lines.push_back(lines::tangent_at(par, Rational::parse(x), std::string(x) == "1" ? Side::Left : Side::Right, 40));
  }
  spec.segments = boxdim::clip_family(fam);
  spec.grid = 4;
  std::ostringstream c;
  io::write_svg(c, spec);
  CHECK(count(c.str(), "<path") == 4);
  CHECK(count(c.str(), "fill=\"#dde6f0\"") == boxdim::boxes_of_segments(spec.segments, spec.window, 4));
  CHECK(count(c.str(), "<line") == 34);
}
