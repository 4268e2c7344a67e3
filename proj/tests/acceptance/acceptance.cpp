// One line per acceptance criterion; exit status 0 iff all pass.
// usage: acceptance <lcl cli> <dimension_prerun.json>
#include "lcl/io.hpp"
#include "lcl/suite.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <vector>

#include <unistd.h>

using namespace lcl;
using nlohmann::json;

namespace {

// seconds allowed per criterion
constexpr double kLimits[] = {1, 30, 60, 60, 120, 5, 60, 10};
// The suite runtime is one timed `verify all` process. Two such runs do
// exactly twice its work, so on one core they sit at 2x up to timing noise.
constexpr double kDeterminismFactor = 2.0;
constexpr double kTimingNoise = 1.10;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int id, const std::string& name, bool passed, double secs, double limit, const std::string& detail) {
  const bool ok = passed && secs < limit;
  std::printf("criterion %d %-22s %s  %.2fs (limit %.1fs)  %s\n", id, name.c_str(), ok ? "PASS" : "FAIL", secs, limit,
              detail.c_str());
  return ok;
}

std::string summary(const json& r) {
  switch (r["id"].get<int>()) {
  case 1:
    return "n=1.." + std::to_string(r["rows"].size()) + " certified";
  case 2:
    return "true fraction tbinc " + r["tbinc"]["true_fraction"].get<std::string>() + " tcantc " +
           r["tcantc"]["true_fraction"].get<std::string>() + ", false " +
           std::to_string(r["tbinc"]["certified_false"].get<int>() + r["tcantc"]["certified_false"].get<int>());
  case 3:
    return "single " + std::to_string(r["parabola"]["certified_single"].get<int>()) + "/" +
           std::to_string(r["tbinc"]["certified_single"].get<int>()) + "/" +
           std::to_string(r["tcantc"]["certified_single"].get<int>()) + " of 50";
  case 4:
    return std::to_string(r["gaps"].size()) + " gaps, stated bound false for " +
           std::to_string(r["strict_bound_counts"]["certified_false"].get<int>());
  case 5:
    return "parabola " + r["parabola"]["fit"]["dim"].get<std::string>() + " tbinc " +
           r["tbinc"]["fit"]["dim"].get<std::string>() + " difference " + r["difference"].get<std::string>();
  case 6:
    return "fit " + r["fit"]["dim"].get<std::string>();
  case 7:
    return "bracket " + std::to_string(r["tbinc_F"]["agree"].get<int>()) + "/33, stages " +
           std::to_string(r["cantor_stages"]["within"].get<int>()) + "/" +
           std::to_string(r["cantor_stages"]["checked"].get<int>());
  case 8:
    return std::to_string(r["equal"].get<int>()) + "/" + std::to_string(r["comparisons"].get<int>()) + " equal";
  default:
    return "";
  }
}

// The recorded pre-run fixes the thresholds: its exact-line figures must sit
// inside them, and the library at p = 40 must reproduce its own recorded counts.
bool prerun_consistent(const json& pre, const json& r, std::string& why) {
  auto dim = [](const json& j) { return std::stod(j["dim"].get<std::string>()); };
  if (!(dim(pre["parabola"]) >= suite::kParabolaDimMin && dim(pre["tbinc"]) <= suite::kDigitDimMax &&
        dim(pre["parabola"]) - dim(pre["tbinc"]) >= suite::kDimGapMin)) {
    why = "pre-run outside thresholds";
    return false;
  }
  if (pre["library_p40"]["parabola"]["counts"] != r["parabola"]["counts"] ||
      pre["library_p40"]["tbinc"]["counts"] != r["tbinc"]["counts"]) {
    why = "counts differ from the recorded pre-run";
    return false;
  }
  return true;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <lcl cli> <dimension_prerun.json>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const json pre = io::read_json_file(argv[2]);
  suite::Config c;
  using Check = json (*)(const suite::Config&);
  const Check checks[] = {suite::slope_cover, suite::lipschitz,          suite::tangency,      suite::gap_bound,
                          suite::dimension,   suite::darboux,            suite::oracle_equivalence,
                          suite::exact_counting};
  bool all = true;
  double suite_secs = 0;
  for (int k = 0; k < 8; ++k) {
    auto t0 = std::chrono::steady_clock::now();
    json r = checks[k](c);
    double secs = seconds_since(t0);
    suite_secs += secs;
    bool passed = r["passed"].get<bool>();
    std::string detail = summary(r);
    if (k == 4) {
      std::string why;
      if (!prerun_consistent(pre, r, why)) {
        passed = false;
        detail += " (" + why + ")";
      }
    }
    all = report(k + 1, r["name"].get<std::string>(), passed, secs, kLimits[k], detail) && all;
  }

  const auto dir = std::filesystem::temp_directory_path() / ("lcl_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto launch = [&](int run) {
    return std::async(std::launch::async, [&, run]() {
      const auto out = dir / ("report" + std::to_string(run) + ".json");
      const std::string cmd = "\"" + cli + "\" verify all --out \"" + out.string() + "\" > /dev/null";
      const int status = std::system(cmd.c_str());
      return std::make_pair(status, slurp(out));
    });
  };
  auto t_ref = std::chrono::steady_clock::now();
  const int ref_status = launch(2).get().first;
  const double cli_suite_secs = seconds_since(t_ref);

  auto t0 = std::chrono::steady_clock::now();
  // the two runs are independent processes, started together
  std::vector<std::future<std::pair<int, std::string>>> runs;
  runs.push_back(launch(0));
  runs.push_back(launch(1));
  int exit_status = ref_status;
  std::size_t next = 0;
  auto produce = [&]() {
    auto [status, text] = runs.at(next++).get();
    exit_status |= status;
    return text;
  };
  json det = suite::determinism(produce);
  double secs = seconds_since(t0);
  std::filesystem::remove_all(dir);
  const bool det_ok = det["passed"].get<bool>() && exit_status == 0;
  char times[96];
  std::snprintf(times, sizeof times, ", suite %.2fs (in-process %.2fs)", cli_suite_secs, suite_secs);
  all = report(9, "determinism", det_ok, secs, kDeterminismFactor * kTimingNoise * std::max(cli_suite_secs, 1.0),
               std::to_string(det["bytes"].get<std::size_t>()) + " bytes, identical: " +
                   (det["passed"].get<bool>() ? "yes" : "no") + ", exit " + std::to_string(exit_status) + times) &&
        all;
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
