#pragma once

// The consonant belief structure whose contour is a possibility function.
// Mass is spread uniformly over the possibility level alpha in (0, 1], the
// focal element at level alpha being the alpha-cut. Under the change of
// variable alpha = poss(l) these are the nested intervals [l, u(l)].

#include <cstddef>

#include "possfuse/dempster.hpp"
#include "possfuse/possibility.hpp"

namespace possfuse {

class ConsonantView {
public:
  // Accepts UNIMODAL, SIMPLE_SUPPORT and vacuous functions; anything else
  // throws UnsupportedShape.
  explicit ConsonantView(PossFn poss);

  const PossFn& poss() const noexcept { return poss_; }

private:
  PossFn poss_;
};

struct LevelMass {
  Interval interval;
  double density;  // per unit alpha
};

LevelMass mass_density_alpha(const ConsonantView& view, double alpha);

// Maximum of the contour over the query.
double plausibility(const ConsonantView& view, const Interval& query);

// 1 - (maximum of the contour outside the query).
double belief(const ConsonantView& view, const Interval& query);

// n focal alpha-cuts at midpoint levels (i - 1/2)/n, mass 1/n each, identical
// cuts merged. Masses are nonincreasing in nesting depth and sum to exactly 1
// under FiniteMass::total_mass().
FiniteMass discretize(const ConsonantView& view, std::size_t n);

// The two-focal mass {interval: 1 - residual, frame: residual} behind a
// SIMPLE_SUPPORT contour (one focal when residual is 0).
FiniteMass simple_support_mass(const PossFn& witness);

}  // namespace possfuse
