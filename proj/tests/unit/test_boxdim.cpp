#include <doctest.h>

#include "lcl/boxdim.hpp"
#include "lcl/io.hpp"
#include "lcl/oracles.hpp"

#include <cmath>
#include <random>

using namespace lcl;
using boxdim::Segment;
using nlohmann::json;

namespace {
Dyadic D(const char* s) { return Dyadic::parse(s); }
std::vector<double> logs(std::initializer_list<double> counts) {
  std::vector<double> out;
  for (double c : counts) {
    out.push_back(std::log2(c));
  }
  return out;
}
} // namespace

TEST_CASE("fit examples") {
  std::vector<unsigned> ks{3, 4, 5, 6};
  auto one = boxdim::fit_dimension(ks, logs({8, 16, 32, 64}), 3, 6);
  CHECK(one.dim == doctest::Approx(1.0));
  CHECK(one.residual == doctest::Approx(0.0));
  CHECK(boxdim::fit_dimension(ks, logs({64, 256, 1024, 4096}), 3, 6).dim == doctest::Approx(2.0));
  CHECK(boxdim::fit_dimension(ks, logs({40, 80, 160, 320}), 3, 6).dim == doctest::Approx(1.0));
  CHECK_THROWS_AS(boxdim::fit_dimension(ks, logs({8, 16, 32, 64}), 6, 9), std::invalid_argument);
  CHECK(boxdim::default_fit_range(3, 9) == std::pair<unsigned, unsigned>{5, 9});
}

TEST_CASE("single segment has dimension one") {
  std::vector<Segment> segs{{D("0"), D("1/8"), D("1"), D("7/8")}};
  auto r = boxdim::segment_report(segs, {}, 4, 10, {4, 10});
  CHECK(std::abs(r.fit.dim - 1.0) <= 0.05);
}

TEST_CASE("cell rules on the window boundary") {
  lines::Window unit;
  // the top edge belongs to the last row, an interior grid line to the cell above
  CHECK(boxdim::boxes_of_segments({{D("0"), D("1"), D("1"), D("1")}}, unit, 2) == 4);
  CHECK(boxdim::boxes_of_segments({{D("0"), D("1/2"), D("1"), D("1/2")}}, unit, 2) == 4);
  CHECK(boxdim::boxes_of_segments({{D("0"), D("0"), D("1"), D("1")}}, unit, 2) == 4);
  CHECK(boxdim::boxes_of_segments({{D("1/4"), D("0"), D("1/4"), D("1")}}, unit, 2) == 4);
  CHECK(boxdim::boxes_of_segments({{D("1/8"), D("1/8"), D("1/8"), D("1/8")}}, unit, 2) == 1);
}

TEST_CASE("traversal equals brute force and refines") {
  std::mt19937_64 rng(51);
  const lines::Window w = lines::Window::parse("0,-1,1,1");
  for (int fam = 0; fam < 30; ++fam) {
    std::vector<Segment> segs;
    for (int t = 0; t < 4; ++t) {
      auto c = [&](bool y) {
        auto v = static_cast<long long>(rng() >> 58);
        return y ? Dyadic(v - 32, 5) : Dyadic(v, 6);
      };
      segs.push_back({c(false), c(true), c(false), c(true)});
    }
    std::uint64_t prev = 0;
    for (unsigned k = 0; k <= 6; ++k) {
      const std::uint64_t n = boxdim::boxes_of_segments(segs, w, k);
      CHECK(n == oracles::brute_force_boxes(segs, w, k));
      if (k > 0) {
        CHECK(prev <= n);
        CHECK(n <= 4 * prev);
      }
      prev = n;
    }
  }
}

TEST_CASE("slope covers") {
  auto c1 = boxdim::slope_cover_check(1);
  CHECK(c1.certified);
  CHECK(c1.intervals.size() == 2);
  CHECK(c1.max_diameter <= D("1/2"));
  auto c2 = boxdim::slope_cover_check(2);
  CHECK(c2.intervals.size() == 4);
  CHECK(c2.max_diameter <= Dyadic::pow2(-4));
  auto c5 = boxdim::slope_cover_check(5);
  CHECK(c5.certified);
  CHECK(c5.intervals.size() == 32);
  CHECK(c5.max_diameter <= Dyadic::pow2(-25));
  CHECK_THROWS_AS(boxdim::slope_cover_check(0), std::invalid_argument);
}

TEST_CASE("slope-set counts: small for the digit curve, full for the parabola") {
  for (std::uint64_t n = 1; n <= 4; ++n) {
    auto cover = boxdim::slope_cover_check(n);
    BigInt count = boxdim::boxes_of_intervals(cover.intervals, static_cast<unsigned>(n * n));
    CHECK(count <= 2 * (BigInt(1) << n));
  }
  auto blocks = boxdim::parabola_slope_blocks(10);
  for (unsigned k = 1; k <= 10; ++k) {
    CHECK(boxdim::boxes_of_intervals(blocks, k) == (BigInt(1) << k));
  }
}

TEST_CASE("dimension families match the recorded exact pre-run") {
  const auto pre = io::read_json_file(LCL_DATA_DIR "/dimension_prerun.json");
  lines::SampleSpec spec;
  spec.depth = 9;
  spec.sides = lines::SidePolicy::Right;
  const auto w = lines::Window::parse("0,-1,1,1");
  for (const char* id : {"parabola", "tbinc"}) {
    auto curve = make_curve(id);
    // from p = 60 on every line lands in its exact cells
    auto exact = boxdim::family_report(lines::build_family(*curve, spec, w, 64), 3, 9, {5, 9});
    CHECK(json(exact.counts) == pre[id]["counts"]);
    CHECK(io::fixed6(exact.fit.dim) == pre[id]["dim"].get<std::string>());
    auto p40 = boxdim::family_report(lines::build_family(*curve, spec, w, 40), 3, 9, {5, 9});
    CHECK(json(p40.counts) == pre["library_p40"][id]["counts"]);
  }
}
