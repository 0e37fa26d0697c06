#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/scenario.hpp"

using namespace possfuse;
using namespace possfuse::cli;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("possfuse_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_doc() {
  return json::parse(R"({
    "version": 1,
    "name": "pair",
    "frame": [0, 10],
    "grid_size": 513,
    "sources": [
      {"kind": "triangular", "label": "left", "peak": 4, "half_width": 4},
      {"kind": "triangular", "label": "right", "peak": 6, "half_width": 4}
    ]
  })");
}

}  // namespace

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario(base_doc());
  CHECK(s.name == "pair");
  CHECK(s.grid_size == 513);
  REQUIRE(s.sources.size() == 2);
  CHECK(s.sources[1].label == "right");
  CHECK(parse_scenario(to_json(s)).sources.size() == 2);

  json d = base_doc();
  d.erase("grid_size");
  d["sources"][0].erase("label");
  const Scenario defaults = parse_scenario(d);
  CHECK(defaults.grid_size == kDefaultGridSize);
  CHECK(defaults.sources[0].label == "source1");
}

TEST_CASE("malformed scenarios are rejected") {
  auto rejects = [](json d) { CHECK_THROWS_AS(parse_scenario(d), ScenarioError); };
  json d = base_doc();
  d["version"] = 2;
  rejects(d);
  d = base_doc();
  d["extra"] = true;
  rejects(d);
  d = base_doc();
  d["sources"][0]["colour"] = "red";
  rejects(d);
  d = base_doc();
  d["sources"][0]["kind"] = "trapezoid";
  rejects(d);
  d = base_doc();
  d["sources"][0]["half_width"] = -1;
  rejects(d);
  d = base_doc();
  d["sources"][1]["label"] = "left";
  rejects(d);
  d = base_doc();
  d["grid_size"] = 10;
  rejects(d);
  d = base_doc();
  d["frame"] = json::array({5, 1});
  rejects(d);
  d = base_doc();
  d["sources"] = json::array();
  rejects(d);
  d = base_doc();
  d["sources"][0] = {{"kind", "simple_support"}, {"interval", {2, 3}}, {"residual", 1.5}};
  rejects(d);
}

TEST_CASE("presets") {
  for (const std::string& name : preset_names()) {
    const auto s = preset(name);
    REQUIRE(s);
    CHECK(build_sources(*s).size() == s->sources.size());
  }
  CHECK_FALSE(preset("nope"));
}

TEST_CASE("fuse writes deterministic artifacts") {
  const Scenario s = parse_scenario(base_doc());
  const auto dir1 = scratch("fuse1");
  const auto dir2 = scratch("fuse2");
  std::ostringstream out, err;
  REQUIRE(run_fuse(s, {dir1, 200, false}, out, err) == kExitOk);
  REQUIRE(run_fuse(s, {dir2, 200, false}, out, err) == kExitOk);
  for (const char* f : {"report.json", "report.txt", "input_1_left.csv", "input_2_right.csv",
                        "fused.csv"}) {
    REQUIRE(std::filesystem::exists(dir1 / f));
    CHECK(slurp(dir1 / f) == slurp(dir2 / f));
  }

  const json r = json::parse(slurp(dir1 / "report.json"));
  CHECK(r["overall"]["agreement"].get<double>() == doctest::Approx(0.875).epsilon(1e-4));
  CHECK(r["overall"]["norm"].get<double>() == doctest::Approx(0.5625).epsilon(1e-4));
  CHECK(r["oracle"]["n"].get<std::size_t>() == 200);

  std::istringstream csv(slurp(dir1 / "fused.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,poss");
  std::size_t rows = 0;
  double peak = 0.0;
  while (std::getline(csv, line)) {
    ++rows;
    peak = std::max(peak, std::stod(line.substr(line.find(',') + 1)));
  }
  CHECK(rows == 513);
  CHECK(peak == 1.0);
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  const auto dir = scratch("codes");

  json d = base_doc();
  d["sources"][0]["peak"] = 1.5;
  d["sources"][0]["half_width"] = 1;
  d["sources"][1]["peak"] = 8;
  d["sources"][1]["half_width"] = 1;
  CHECK(run_fuse(parse_scenario(d), {dir, std::nullopt, false}, out, err) == kExitTotalConflict);
  CHECK(run_oracle_check(parse_scenario(d), 50, 1e-2, out, err) == kExitTotalConflict);

  // Two equal peaks make the likelihood non-unimodal.
  d = base_doc();
  d["sources"][0] = {{"kind", "piecewise_linear_likelihood"},
                     {"points", {{1, 0}, {3, 1}, {5, 0.2}, {7, 1}, {9, 0}}}};
  CHECK(run_fuse(parse_scenario(d), {dir, std::nullopt, false}, out, err) == kExitOk);
  CHECK(run_fuse(parse_scenario(d), {dir, std::nullopt, true}, out, err) ==
        kExitUnsupportedShape);
  CHECK(run_oracle_check(parse_scenario(d), 50, 1e-2, out, err) == kExitUnsupportedShape);

  const Scenario ok = parse_scenario(base_doc());
  CHECK(run_oracle_check(ok, 0, 1e-2, out, err) == kExitMalformed);
  CHECK(run_oracle_check(ok, 400, 1e-2, out, err) == kExitOk);
  CHECK(run_oracle_check(ok, 4, 1e-6, out, err) == kExitToleranceBreach);

  d = base_doc();
  d["sources"].push_back({{"kind", "triangular"}, {"peak", 5}, {"half_width", 3}});
  CHECK(run_oracle_check(parse_scenario(d), 50, 1e-2, out, err) == kExitMalformed);
}
