#include "possfuse/consonant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "possfuse/error.hpp"

namespace possfuse {

ConsonantView::ConsonantView(PossFn poss) : poss_(std::move(poss)) {
  if (poss_.shape() == Shape::General && !poss_.is_vacuous()) {
    throw UnsupportedShape("consonant view needs a UNIMODAL or SIMPLE_SUPPORT possibility function");
  }
}

LevelMass mass_density_alpha(const ConsonantView& view, double alpha) {
  return {alpha_cut(view.poss(), alpha), 1.0};
}

namespace {

void require_query(const PossFn& poss, const Interval& q) {
  if (!std::isfinite(q.lo) || !std::isfinite(q.hi) || q.lo > q.hi) {
    throw ArgumentError("query interval needs lo <= hi");
  }
  if (!q.within(poss.frame())) {
    std::ostringstream msg;
    msg << "query [" << q.lo << ", " << q.hi << "] lies outside the frame";
    throw DomainError(msg.str());
  }
}

// Exact maximum of the piecewise-linear interpolant over [lo, hi]: attained
// at an end or at an interior sample.
double interpolant_max(const SampledCurve& c, double lo, double hi) {
  double best = std::max(eval(c, lo), eval(c, hi));
  const double step = c.step();
  auto i = static_cast<std::size_t>(std::max(0.0, std::ceil((lo - c.frame().lo()) / step)));
  for (; i < c.size() && c.abscissa(i) < hi; ++i) {
    if (c.abscissa(i) > lo) best = std::max(best, c[i]);
  }
  return best;
}

// Matches the endpoint rounding FiniteMass uses when merging focals.
bool same_focal(const Interval& a, const Interval& b) {
  auto q = [](double x) { return std::round(x * 1e12); };
  return q(a.lo) == q(b.lo) && q(a.hi) == q(b.hi);
}

}  // namespace

double plausibility(const ConsonantView& view, const Interval& query) {
  const PossFn& poss = view.poss();
  require_query(poss, query);
  if (const auto& step = poss.simple_support()) {
    return step->interval.intersects(query) ? 1.0 : step->residual;
  }
  return interpolant_max(poss.curve(), query.lo, query.hi);
}

double belief(const ConsonantView& view, const Interval& query) {
  const PossFn& poss = view.poss();
  require_query(poss, query);
  const Frame& f = poss.frame();
  const bool left = query.lo > f.lo();
  const bool right = query.hi < f.hi();
  if (!left && !right) return 1.0;

  if (const auto& step = poss.simple_support()) {
    const bool hits = (left && step->interval.lo < query.lo) ||
                      (right && step->interval.hi > query.hi);
    return 1.0 - (hits ? 1.0 : step->residual);
  }
  // The interpolant is continuous, so the supremum over the half-open
  // complement pieces equals the maximum over their closures.
  double outside = 0.0;
  if (left) outside = std::max(outside, interpolant_max(poss.curve(), f.lo(), query.lo));
  if (right) outside = std::max(outside, interpolant_max(poss.curve(), query.hi, f.hi()));
  return 1.0 - outside;
}

FiniteMass discretize(const ConsonantView& view, std::size_t n) {
  if (n == 0) throw ArgumentError("discretization needs at least one level");
  const double dn = static_cast<double>(n);

  // Cuts at increasing alpha are nested, so equal cuts are consecutive.
  struct Run {
    Interval cut;
    std::size_t count;
  };
  std::vector<Run> runs;
  for (std::size_t i = 1; i <= n; ++i) {
    const double alpha = (static_cast<double>(i) - 0.5) / dn;
    const Interval cut = alpha_cut(view.poss(), alpha);
    if (!runs.empty() && same_focal(runs.back().cut, cut)) {
      ++runs.back().count;
    } else {
      runs.push_back({cut, 1});
    }
  }

  std::vector<Focal> focals;
  focals.reserve(runs.size());
  double assigned = 0.0;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const double mass = static_cast<double>(runs[r].count) / dn;
    focals.push_back({runs[r].cut, mass});
    assigned += mass;
  }
  // The last focal takes the remainder so the left-to-right total is 1.
  focals.push_back({runs.back().cut, 1.0 - assigned});
  return FiniteMass(view.poss().frame(), std::move(focals));
}

FiniteMass simple_support_mass(const PossFn& witness) {
  const auto& step = witness.simple_support();
  if (!step) throw ArgumentError("simple support mass needs a SIMPLE_SUPPORT contour");
  if (step->residual == 0.0) return FiniteMass(witness.frame(), {{step->interval, 1.0}});
  return FiniteMass(witness.frame(), {{step->interval, 1.0 - step->residual},
                                      {as_interval(witness.frame()), step->residual}});
}

}  // namespace possfuse
