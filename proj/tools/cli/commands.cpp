#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "possfuse/consonant.hpp"
#include "possfuse/dempster.hpp"

namespace possfuse::cli {

using nlohmann::json;

namespace {

constexpr double kProportionalityFloor = 0.05;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json("n/a");
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

FiniteMass oracle_mass(const PossFn& p, std::size_t n) {
  if (p.shape() == Shape::SimpleSupport) return simple_support_mass(p);
  return discretize(ConsonantView(p), n);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << body;
}

}  // namespace

std::vector<PossFn> build_sources(const Scenario& scenario) {
  std::vector<PossFn> out;
  out.reserve(scenario.sources.size());
  for (const EvidenceSpec& s : scenario.sources) {
    out.push_back(build_source(s, scenario.frame, scenario.grid_size));
  }
  return out;
}

OracleSummary run_oracle(const std::vector<PossFn>& inputs, const FusionReport& report,
                         std::size_t n) {
  if (n == 0) throw ArgumentError("oracle needs n >= 1");
  std::vector<FiniteMass> masses;
  for (const PossFn& p : inputs) masses.push_back(oracle_mass(p, n));

  FiniteMass combined = masses.front();
  double agreement = 1.0;
  for (std::size_t i = 1; i < masses.size(); ++i) {
    CombineResult step = dempster_combine(combined, masses[i]);
    agreement *= 1.0 - step.conflict;
    combined = std::move(step.combined);
  }

  OracleSummary summary;
  summary.n = n;
  summary.conflict = 1.0 - agreement;
  summary.focal_count = combined.size();

  const SampledCurve& fused = report.fused.curve();
  std::vector<double> xs(fused.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = fused.abscissa(i);
  const std::vector<double> pl = singleton_plausibility_profile(combined, xs);
  const double expected_ratio = report.norm / agreement;
  double violation = -1.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (pl[i] - fused[i] > violation) {
      violation = pl[i] - fused[i];
      summary.worst_x = xs[i];
    }
    if (fused[i] > kProportionalityFloor) {
      spread = std::max(spread, std::abs(pl[i] / fused[i] / expected_ratio - 1.0));
    }
  }
  summary.max_dominance_violation = violation;
  summary.proportionality_spread = spread;
  return summary;
}

json report_json(const Scenario& scenario, const std::vector<PossFn>& inputs,
                 const FusionReport& report, const std::optional<OracleSummary>& oracle,
                 const std::string& oracle_note) {
  json in = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    in.push_back({{"label", scenario.sources[i].label},
                  {"kind", kind_name(scenario.sources[i].params)},
                  {"shape", to_string(inputs[i].shape())},
                  {"mode_x", inputs[i].mode_x()}});
  }
  json pairs = json::array();
  for (const PairSummary& p : report.pairs) {
    std::optional<double> k;
    std::optional<double> support;
    if (p.agreement) {
      k = 1.0 - *p.agreement;
      support = 1.0 - p.norm / *p.agreement;
    }
    pairs.push_back({{"first", scenario.sources[p.first].label},
                     {"second", scenario.sources[p.first + 1].label},
                     {"norm", p.norm},
                     {"agreement", optional_number(p.agreement)},
                     {"contradiction", optional_number(k)},
                     {"support_against_mle", optional_number(support)}});
  }
  json doc{{"scenario", scenario.name},
           {"frame", {scenario.frame.lo(), scenario.frame.hi()}},
           {"grid_size", scenario.grid_size},
           {"inputs", in},
           {"pairs", pairs},
           {"overall",
            {{"norm", report.norm},
             {"agreement", optional_number(report.agreement_a)},
             {"contradiction", optional_number(report.contradiction_k)},
             {"mle_x", report.mle_x},
             {"mle_tied", report.mle_tied},
             {"support_against_mle", optional_number(report.support_against_mle)},
             {"fused_shape", to_string(report.fused.shape())}}}};
  if (oracle) {
    doc["oracle"] = {{"n", oracle->n},
                     {"conflict", oracle->conflict},
                     {"agreement", 1.0 - oracle->conflict},
                     {"max_dominance_violation", oracle->max_dominance_violation},
                     {"worst_x", oracle->worst_x},
                     {"dominance_tolerance", 2.0 / static_cast<double>(oracle->n) + 1e-4},
                     {"proportionality_spread", oracle->proportionality_spread},
                     {"focal_count", oracle->focal_count}};
  } else if (!oracle_note.empty()) {
    doc["oracle"] = {{"skipped", oracle_note}};
  }
  return doc;
}

std::string report_text(const json& r) {
  auto num = [](const json& v) {
    return v.is_number() ? fixed(v.get<double>()) : v.get<std::string>();
  };
  std::ostringstream out;
  out << "scenario: " << (r["scenario"].get<std::string>().empty() ? "(unnamed)"
                                                                  : r["scenario"].get<std::string>())
      << "\n";
  out << "frame: [" << num(r["frame"][0]) << ", " << num(r["frame"][1])
      << "], grid size " << r["grid_size"].get<std::size_t>() << "\n\n";
  out << "inputs:\n";
  for (const auto& in : r["inputs"]) {
    out << "  " << in["label"].get<std::string>() << " (" << in["kind"].get<std::string>()
        << ", " << in["shape"].get<std::string>() << ") mode " << num(in["mode_x"]) << "\n";
  }
  if (!r["pairs"].empty()) {
    out << "\npairs:\n";
    for (const auto& p : r["pairs"]) {
      out << "  " << p["first"].get<std::string>() << " x " << p["second"].get<std::string>()
          << ": norm " << num(p["norm"]) << ", a " << num(p["agreement"]) << ", k "
          << num(p["contradiction"]) << ", support against MLE " << num(p["support_against_mle"])
          << "\n";
    }
  }
  const json& o = r["overall"];
  out << "\noverall:\n";
  out << "  norm                  " << num(o["norm"]) << "\n";
  out << "  agreement a           " << num(o["agreement"]) << "\n";
  out << "  contradiction k       " << num(o["contradiction"]) << "\n";
  out << "  MLE                   " << num(o["mle_x"])
      << (o["mle_tied"].get<bool>() ? " (tied)" : "") << "\n";
  out << "  support against MLE   " << num(o["support_against_mle"]) << "\n";
  out << "  fused shape           " << o["fused_shape"].get<std::string>() << "\n";
  if (r.contains("oracle")) {
    const json& q = r["oracle"];
    out << "\noracle:\n";
    if (q.contains("skipped")) {
      out << "  skipped: " << q["skipped"].get<std::string>() << "\n";
    } else {
      out << "  n                     " << q["n"].get<std::size_t>() << "\n";
      out << "  k_n                   " << num(q["conflict"]) << "\n";
      out << "  1 - k_n               " << num(q["agreement"]) << "\n";
      out << "  dominance violation   " << num(q["max_dominance_violation"]) << " (tolerance "
          << num(q["dominance_tolerance"]) << ")\n";
      out << "  proportionality       " << num(q["proportionality_spread"]) << "\n";
      out << "  combined focals       " << q["focal_count"].get<std::size_t>() << "\n";
    }
  }
  return out.str();
}

std::string curve_csv(const SampledCurve& curve) {
  std::string out = "x,poss\n";
  out.reserve(curve.size() * 40);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += format_double(curve.abscissa(i));
    out += ',';
    out += format_double(curve[i]);
    out += '\n';
  }
  return out;
}

int run_fuse(const Scenario& scenario, const FuseOptions& options, std::ostream& out,
             std::ostream& err) {
  std::vector<PossFn> inputs;
  try {
    inputs = build_sources(scenario);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  std::optional<FusionReport> report;
  try {
    report = chain_combine(inputs);
  } catch (const TotalConflict& e) {
    err << "error: " << e.what();
    if (e.prefix_length() > 0) {
      err << " (";
      for (std::size_t i = 0; i < e.prefix_length(); ++i) {
        err << (i ? ", " : "") << scenario.sources[i].label;
      }
      err << ")";
    }
    err << "\n";
    return kExitTotalConflict;
  }

  std::optional<OracleSummary> oracle;
  std::string oracle_note;
  if (options.oracle_n) {
    if (*options.oracle_n == 0) {
      err << "error: --oracle needs N >= 1\n";
      return kExitMalformed;
    }
    try {
      oracle = run_oracle(inputs, *report, *options.oracle_n);
    } catch (const UnsupportedShape& e) {
      oracle_note = e.what();
    } catch (const NonConsonant& e) {
      oracle_note = e.what();
    } catch (const TotalConflict& e) {
      oracle_note = e.what();
    }
  }

  const json doc = report_json(scenario, inputs, *report, oracle, oracle_note);
  try {
    std::filesystem::create_directories(options.out_dir);
    write_file(options.out_dir / "report.json", doc.dump(2) + "\n");
    write_file(options.out_dir / "report.txt", report_text(doc));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const std::string name =
          "input_" + std::to_string(i + 1) + "_" + file_stem(scenario.sources[i].label) + ".csv";
      write_file(options.out_dir / name, curve_csv(inputs[i].curve()));
    }
    write_file(options.out_dir / "fused.csv", curve_csv(report->fused.curve()));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  out << report_text(doc);

  if (!report->agreement_a) {
    err << "warning: agreement not computed: an input (or a running product) has GENERAL shape\n";
    if (options.strict) return kExitUnsupportedShape;
  }
  return kExitOk;
}

int run_oracle_check(const Scenario& scenario, std::size_t n, double tolerance, std::ostream& out,
                     std::ostream& err) {
  if (n == 0) {
    err << "error: --n must be >= 1\n";
    return kExitMalformed;
  }
  if (!std::isfinite(tolerance) || tolerance < 0.0) {
    err << "error: --tol must be a nonnegative number\n";
    return kExitMalformed;
  }
  if (scenario.sources.size() != 2) {
    err << "error: oracle-check needs exactly two sources, got " << scenario.sources.size()
        << "\n";
    return kExitMalformed;
  }
  std::vector<PossFn> inputs;
  try {
    inputs = build_sources(scenario);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  double a = 0.0;
  OracleSummary oracle;
  try {
    const FusionReport report = chain_combine(inputs);
    a = agreement(inputs[0], inputs[1]);
    oracle = run_oracle(inputs, report, n);
  } catch (const TotalConflict& e) {
    err << "error: " << e.what() << "\n";
    return kExitTotalConflict;
  } catch (const UnsupportedShape& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupportedShape;
  } catch (const NonConsonant& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupportedShape;
  }

  const double oracle_a = 1.0 - oracle.conflict;
  const double gap = std::abs(a - oracle_a);
  const double dominance_tol = 2.0 / static_cast<double>(n) + 1e-4;
  out << "agreement (continuous)   " << fixed(a, 9) << "\n";
  out << "1 - k_n (oracle, n=" << n << ")  " << fixed(oracle_a, 9) << "\n";
  out << "|difference|             " << fixed(gap, 9) << " (tolerance " << tolerance << ")\n";
  out << "dominance violation      " << fixed(oracle.max_dominance_violation, 9)
      << " (tolerance " << fixed(dominance_tol, 9) << ")\n";

  int code = kExitOk;
  if (gap > tolerance) {
    err << "breach: agreement differs from the oracle by " << gap << "\n";
    code = kExitToleranceBreach;
  }
  if (oracle.max_dominance_violation > dominance_tol) {
    err << "breach: oracle singleton plausibility exceeds the fused contour by "
        << oracle.max_dominance_violation << " at x = " << oracle.worst_x << "\n";
    code = kExitToleranceBreach;
  }
  return code;
}

}  // namespace possfuse::cli
