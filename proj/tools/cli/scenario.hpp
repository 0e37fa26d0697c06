#pragma once

// Scenario files: a frame, a grid size and an ordered list of evidence
// sources. JSON, "version": 1, unknown keys rejected.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "possfuse/error.hpp"
#include "possfuse/possibility.hpp"

namespace possfuse::cli {

// Malformed or inconsistent scenario input (exit code 2).
class ScenarioError : public Error {
public:
  using Error::Error;
};

struct TriangularSpec {
  double peak;
  double half_width;
};

struct CosineTaperSpec {
  double peak;
  double half_width;
};

struct GaussianLikelihoodSpec {
  double mean;
  double sd;
};

struct PiecewiseLinearLikelihoodSpec {
  std::vector<std::pair<double, double>> points;
};

struct SimpleSupportSpec {
  Interval interval;
  double residual;
};

using EvidenceParams = std::variant<TriangularSpec, CosineTaperSpec, GaussianLikelihoodSpec,
                                    PiecewiseLinearLikelihoodSpec, SimpleSupportSpec>;

struct EvidenceSpec {
  std::string label;
  EvidenceParams params;
};

struct Scenario {
  std::string name;
  Frame frame;
  std::size_t grid_size = kDefaultGridSize;
  std::vector<EvidenceSpec> sources;
};

const char* kind_name(const EvidenceParams& params) noexcept;

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& scenario);

// Throws ScenarioError when the parameters violate the constructor's
// preconditions.
PossFn build_source(const EvidenceSpec& spec, const Frame& frame, std::size_t grid_size);

// "speeding", "speeding-agree", "speeding-conflict".
std::optional<Scenario> preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace possfuse::cli
