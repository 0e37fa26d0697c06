#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/scenario.hpp"
#include "possfuse/fusion.hpp"

namespace possfuse::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMalformed = 2,
  kExitTotalConflict = 3,
  kExitUnsupportedShape = 4,
  kExitToleranceBreach = 5,
};

struct FuseOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::size_t> oracle_n;
  bool strict = false;
};

// Dempster's-rule cross-check of a fusion: consonant inputs discretized at
// n levels (simple support witnesses kept exact) and combined in order.
struct OracleSummary {
  std::size_t n = 0;
  double conflict = 0.0;                // k_n accumulated over the chain
  double max_dominance_violation = 0.0; // max over grid of pl_Dempster - fused
  double worst_x = 0.0;                 // where that maximum occurs
  double proportionality_spread = 0.0;  // max |(pl_Dempster / fused) / (norm / (1 - k_n)) - 1|
  std::size_t focal_count = 0;
};

// Throws UnsupportedShape when an input has no consonant representation.
OracleSummary run_oracle(const std::vector<PossFn>& inputs, const FusionReport& report,
                         std::size_t n);

std::vector<PossFn> build_sources(const Scenario& scenario);

nlohmann::json report_json(const Scenario& scenario, const std::vector<PossFn>& inputs,
                           const FusionReport& report,
                           const std::optional<OracleSummary>& oracle,
                           const std::string& oracle_note);
std::string report_text(const nlohmann::json& report);

// Writes report.txt, report.json, one CSV per input and fused.csv into
// options.out_dir. Returns the process exit code; messages go to `err`.
int run_fuse(const Scenario& scenario, const FuseOptions& options, std::ostream& out,
             std::ostream& err);

int run_oracle_check(const Scenario& scenario, std::size_t n, double tolerance, std::ostream& out,
                     std::ostream& err);

// CSV body `x,poss` with a header row, values printed round-trip exact.
std::string curve_csv(const SampledCurve& curve);

}  // namespace possfuse::cli
