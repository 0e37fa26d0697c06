#include "possfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "possfuse/consonant.hpp"
#include "possfuse/error.hpp"

namespace possfuse {

namespace {

constexpr double kConflictFloor = 1e-12;
constexpr double kTieTolerance = 1e-9;
constexpr double kFormGap = 1e-4;

void require_same_grid(const PossFn& a, const PossFn& b) {
  if (!a.curve().same_grid(b.curve())) {
    throw ArgumentError("possibility functions must share frame and grid size");
  }
}

double max_of_product(const SampledCurve& a, const SampledCurve& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, a[i] * b[i]);
  return best;
}

bool tied_maximum(const SampledCurve& fused) {
  const auto v = fused.values();
  std::size_t first = v.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= 1.0 - kTieTolerance) {
      first = std::min(first, i);
      last = i;
    }
  }
  return first < v.size() && last - first > 1;
}

// Two-focal sum for a pair of simple support witnesses.
double simple_pair_agreement(const PossFn& w1, const PossFn& w2) {
  const auto& s1 = *w1.simple_support();
  const auto& s2 = *w2.simple_support();
  const double pl2 = s1.interval.intersects(s2.interval) ? 1.0 : s2.residual;
  return 1.0 - (1.0 - s1.residual) * (1.0 - pl2);
}

std::optional<double> agreement_if_defined(const PossFn& p1, const PossFn& p2) {
  try {
    return agreement(p1, p2);
  } catch (const UnsupportedShape&) {
    return std::nullopt;
  }
}

}  // namespace

double agreement_vs_simple_support(const PossFn& pr, const PossFn& witness) {
  if (pr.shape() != Shape::Unimodal) {
    throw ArgumentError("agreement_vs_simple_support needs a UNIMODAL first operand");
  }
  if (witness.shape() != Shape::SimpleSupport) {
    throw ArgumentError("agreement_vs_simple_support needs a SIMPLE_SUPPORT witness");
  }
  require_same_grid(pr, witness);
  const auto& step = *witness.simple_support();
  const double pl = plausibility(ConsonantView(pr), step.interval);
  // Same value as (1 - c) pl + c, written so pl == 1 gives exactly 1.
  return 1.0 - (1.0 - step.residual) * (1.0 - pl);
}

double agreement(const PossFn& p1, const PossFn& p2) {
  require_same_grid(p1, p2);
  if (p1.is_vacuous() || p2.is_vacuous()) return 1.0;
  if (p1.shape() == Shape::General || p2.shape() == Shape::General) {
    throw UnsupportedShape("agreement is defined only for UNIMODAL and SIMPLE_SUPPORT inputs");
  }
  const bool s1 = p1.shape() == Shape::SimpleSupport;
  const bool s2 = p2.shape() == Shape::SimpleSupport;
  if (s1 && s2) return simple_pair_agreement(p1, p2);
  if (s1) return agreement_vs_simple_support(p2, p1);
  if (s2) return agreement_vs_simple_support(p1, p2);

  const PossFn& left = p1.mode_x() <= p2.mode_x() ? p1 : p2;
  const PossFn& right = p1.mode_x() <= p2.mode_x() ? p2 : p1;
  const double x1 = left.mode_x();
  const double x2 = right.mode_x();
  const double forward =
      right(x1) + integrate_stieltjes(left.curve(), right.curve(), x1, x2);
  const double mirrored =
      left(x2) - integrate_stieltjes(right.curve(), left.curve(), x1, x2);
  if (std::abs(forward - mirrored) > kFormGap) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "agreement integral forms disagree (" << forward << " vs " << mirrored
        << "); refine the grid";
    throw NumericalError(msg.str());
  }
  return std::clamp(0.5 * (forward + mirrored), 0.0, 1.0);
}

// Canonical leaf product, normalized. See chain_combine.
static PossFn fused_product(std::span<const PossFn> inputs) {
  std::vector<const SampledCurve*> leaves;
  for (const PossFn& p : inputs) {
    for (const SampledCurve& f : p.factors()) leaves.push_back(&f);
  }
  std::stable_sort(leaves.begin(), leaves.end(), [](const SampledCurve* a, const SampledCurve* b) {
    return std::lexicographical_compare(a->values().begin(), a->values().end(),
                                        b->values().begin(), b->values().end());
  });
  const std::size_t size = inputs.front().curve().size();
  std::vector<double> product(size, 1.0);
  for (const SampledCurve* leaf : leaves) {
    for (std::size_t i = 0; i < size; ++i) product[i] *= (*leaf)[i];
  }
  const double top = *std::max_element(product.begin(), product.end());
  if (top <= kConflictFloor) {
    throw TotalConflict("total conflict: the product vanishes everywhere on the frame",
                        inputs.size());
  }
  for (double& v : product) v /= top;

  PossFn::FactorList factors;
  factors.reserve(leaves.size());
  for (const SampledCurve* leaf : leaves) factors.push_back(*leaf);
  return PossFn::from_normalized(SampledCurve(inputs.front().frame(), std::move(product)),
                                 std::move(factors));
}

FusionReport chain_combine(std::span<const PossFn> inputs) {
  if (inputs.empty()) throw ArgumentError("chain_combine needs at least one input");
  for (const PossFn& p : inputs) require_same_grid(inputs.front(), p);
  const std::size_t size = inputs.front().curve().size();

  // Raw product of the inputs as given: its maximum is the normalizer, and
  // the first prefix where it vanishes names the conflict.
  std::vector<double> raw(inputs.front().curve().values().begin(),
                          inputs.front().curve().values().end());
  double norm = *std::max_element(raw.begin(), raw.end());
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    norm = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      raw[i] *= inputs[k].curve()[i];
      norm = std::max(norm, raw[i]);
    }
    if (norm <= kConflictFloor) {
      std::ostringstream msg;
      msg << "total conflict: the product of the first " << k + 1
          << " inputs vanishes everywhere on the frame";
      throw TotalConflict(msg.str(), k + 1);
    }
  }

  FusionReport report{fused_product(inputs), norm, std::nullopt, std::nullopt, 0.0, false,
                      std::nullopt, {}};

  for (std::size_t k = 0; k + 1 < inputs.size(); ++k) {
    report.pairs.push_back({k, max_of_product(inputs[k].curve(), inputs[k + 1].curve()),
                            agreement_if_defined(inputs[k], inputs[k + 1])});
  }

  // Sequential fold for the overall agreement.
  std::optional<double> overall = 1.0;
  if (inputs.size() == 2) {
    overall = report.pairs.front().agreement;
  } else if (inputs.size() > 2) {
    PossFn running = inputs.front();
    for (std::size_t k = 1; k < inputs.size() && overall; ++k) {
      const auto step = agreement_if_defined(running, inputs[k]);
      overall = step ? std::optional<double>(*overall * *step) : std::nullopt;
      if (k + 1 < inputs.size()) running = fused_product(inputs.first(k + 1));
    }
  }
  report.agreement_a = overall;
  if (overall) {
    report.contradiction_k = 1.0 - *overall;
    report.support_against_mle = 1.0 - norm / *overall;
  }

  report.mle_x = argmax(report.fused.curve()).x;
  report.mle_tied = tied_maximum(report.fused.curve());
  return report;
}

FusionReport combine(const PossFn& p1, const PossFn& p2) {
  const PossFn pair[] = {p1, p2};
  return chain_combine(pair);
}

}  // namespace possfuse
