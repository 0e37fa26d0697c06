#include "cli/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace possfuse::cli {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ScenarioError(where + ": unknown key \"" + key + "\"");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ScenarioError(where + ": missing required key \"" + key + "\"");
  return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ScenarioError(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

std::pair<double, double> number_pair(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ScenarioError(what + " must be a two-element numeric array");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

EvidenceSpec parse_source(const json& src, std::size_t index) {
  const std::string where = "sources[" + std::to_string(index) + "]";
  if (!src.is_object()) throw ScenarioError(where + " must be an object");
  const json& kind_v = require(src, "kind", where);
  if (!kind_v.is_string()) throw ScenarioError(where + ": \"kind\" must be a string");
  const std::string kind = kind_v.get<std::string>();

  std::string label = "source" + std::to_string(index + 1);
  if (src.contains("label")) {
    if (!src.at("label").is_string() || src.at("label").get<std::string>().empty()) {
      throw ScenarioError(where + ": \"label\" must be a non-empty string");
    }
    label = src.at("label").get<std::string>();
  }

  if (kind == "triangular" || kind == "cosine_taper") {
    reject_unknown_keys(src, {"kind", "label", "peak", "half_width"}, where);
    const double peak = number(src, "peak", where);
    const double hw = number(src, "half_width", where);
    if (kind == "triangular") return {label, TriangularSpec{peak, hw}};
    return {label, CosineTaperSpec{peak, hw}};
  }
  if (kind == "gaussian_likelihood") {
    reject_unknown_keys(src, {"kind", "label", "mean", "sd"}, where);
    return {label, GaussianLikelihoodSpec{number(src, "mean", where), number(src, "sd", where)}};
  }
  if (kind == "piecewise_linear_likelihood") {
    reject_unknown_keys(src, {"kind", "label", "points"}, where);
    const json& pts = require(src, "points", where);
    if (!pts.is_array()) throw ScenarioError(where + ": \"points\" must be an array");
    PiecewiseLinearLikelihoodSpec spec;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      spec.points.push_back(number_pair(pts[i], where + ".points[" + std::to_string(i) + "]"));
    }
    return {label, spec};
  }
  if (kind == "simple_support") {
    reject_unknown_keys(src, {"kind", "label", "interval", "residual"}, where);
    const auto [lo, hi] = number_pair(require(src, "interval", where), where + ".interval");
    return {label, SimpleSupportSpec{{lo, hi}, number(src, "residual", where)}};
  }
  throw ScenarioError(where + ": unknown kind \"" + kind + "\"");
}

}  // namespace

const char* kind_name(const EvidenceParams& params) noexcept {
  struct Namer {
    const char* operator()(const TriangularSpec&) const { return "triangular"; }
    const char* operator()(const CosineTaperSpec&) const { return "cosine_taper"; }
    const char* operator()(const GaussianLikelihoodSpec&) const { return "gaussian_likelihood"; }
    const char* operator()(const PiecewiseLinearLikelihoodSpec&) const {
      return "piecewise_linear_likelihood";
    }
    const char* operator()(const SimpleSupportSpec&) const { return "simple_support"; }
  };
  return std::visit(Namer{}, params);
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  reject_unknown_keys(doc, {"version", "name", "frame", "grid_size", "sources"}, "scenario");
  const json& version = require(doc, "version", "scenario");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw ScenarioError("scenario: \"version\" must be 1");
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ScenarioError("scenario: \"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }

  const auto [lo, hi] = number_pair(require(doc, "frame", "scenario"), "scenario.frame");
  std::optional<Frame> frame;
  try {
    frame.emplace(lo, hi);
  } catch (const ArgumentError& e) {
    throw ScenarioError(std::string("scenario.frame: ") + e.what());
  }

  std::size_t grid_size = kDefaultGridSize;
  if (doc.contains("grid_size")) {
    const json& g = doc.at("grid_size");
    if (!g.is_number_unsigned() || g.get<std::size_t>() < kMinGridSize) {
      throw ScenarioError("scenario: \"grid_size\" must be an integer >= " +
                          std::to_string(kMinGridSize));
    }
    grid_size = g.get<std::size_t>();
  }

  const json& sources = require(doc, "sources", "scenario");
  if (!sources.is_array() || sources.empty()) {
    throw ScenarioError("scenario: \"sources\" must be a non-empty array");
  }
  Scenario scenario{name, *frame, grid_size, {}};
  std::set<std::string> labels;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    EvidenceSpec spec = parse_source(sources[i], i);
    if (!labels.insert(spec.label).second) {
      throw ScenarioError("duplicate source label \"" + spec.label + "\"");
    }
    // Fail here rather than halfway through a run.
    build_source(spec, scenario.frame, scenario.grid_size);
    scenario.sources.push_back(std::move(spec));
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& scenario) {
  json sources = json::array();
  for (const EvidenceSpec& s : scenario.sources) {
    json src{{"kind", kind_name(s.params)}, {"label", s.label}};
    std::visit(
        [&src](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, TriangularSpec> || std::is_same_v<T, CosineTaperSpec>) {
            src["peak"] = p.peak;
            src["half_width"] = p.half_width;
          } else if constexpr (std::is_same_v<T, GaussianLikelihoodSpec>) {
            src["mean"] = p.mean;
            src["sd"] = p.sd;
          } else if constexpr (std::is_same_v<T, PiecewiseLinearLikelihoodSpec>) {
            json pts = json::array();
            for (const auto& [x, y] : p.points) pts.push_back({x, y});
            src["points"] = pts;
          } else {
            src["interval"] = {p.interval.lo, p.interval.hi};
            src["residual"] = p.residual;
          }
        },
        s.params);
    sources.push_back(src);
  }
  json doc{{"version", 1},
           {"frame", {scenario.frame.lo(), scenario.frame.hi()}},
           {"grid_size", scenario.grid_size},
           {"sources", sources}};
  if (!scenario.name.empty()) doc["name"] = scenario.name;
  return doc;
}

PossFn build_source(const EvidenceSpec& spec, const Frame& frame, std::size_t grid_size) {
  try {
    return std::visit(
        [&](const auto& p) -> PossFn {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, TriangularSpec>) {
            return make_triangular(frame, p.peak, p.half_width, grid_size);
          } else if constexpr (std::is_same_v<T, CosineTaperSpec>) {
            return make_cosine_taper(frame, p.peak, p.half_width, grid_size);
          } else if constexpr (std::is_same_v<T, GaussianLikelihoodSpec>) {
            return from_likelihood(make_gaussian_likelihood(frame, p.mean, p.sd, grid_size));
          } else if constexpr (std::is_same_v<T, PiecewiseLinearLikelihoodSpec>) {
            return from_likelihood(make_piecewise_linear_likelihood(frame, p.points, grid_size));
          } else {
            return make_simple_support(frame, p.interval, p.residual, grid_size);
          }
        },
        spec.params);
  } catch (const ArgumentError& e) {
    throw ScenarioError("source \"" + spec.label + "\": " + e.what());
  } catch (const DegenerateEvidence& e) {
    throw ScenarioError("source \"" + spec.label + "\": " + e.what());
  }
}

std::optional<Scenario> preset(std::string_view name) {
  // Radar reading peaked at 70 mph; the witness interval and reliability
  // select the regime.
  const Frame frame(40.0, 100.0);
  const EvidenceSpec radar{"radar", TriangularSpec{70.0, 10.0}};
  if (name == "speeding") {
    // Witness interval ends below the radar peak: partial conflict.
    return Scenario{"speeding", frame, kDefaultGridSize,
                    {radar, {"witness", SimpleSupportSpec{{55.0, 62.0}, 0.3}}}};
  }
  if (name == "speeding-agree") {
    return Scenario{"speeding-agree", frame, kDefaultGridSize,
                    {radar, {"witness", SimpleSupportSpec{{65.0, 80.0}, 0.3}}}};
  }
  if (name == "speeding-conflict") {
    // A reliable witness far below the radar peak pulls the estimate to v2.
    return Scenario{"speeding-conflict", frame, kDefaultGridSize,
                    {radar, {"witness", SimpleSupportSpec{{55.0, 64.0}, 0.05}}}};
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  return {"speeding", "speeding-agree", "speeding-conflict"};
}

}  // namespace possfuse::cli
