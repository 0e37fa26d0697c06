#pragma once

// Exact Dempster's rule over finite mass functions with closed-interval
// focal elements. This is the ground truth the continuous machinery in
// fusion.hpp is checked against.

#include <cstddef>
#include <span>
#include <vector>

#include "possfuse/numerics.hpp"

namespace possfuse {

struct Focal {
  Interval interval;
  double mass;
};

// Mass function with interval focal elements. Focals whose endpoints agree
// after rounding to 1e-12 are merged on construction; the first occurrence's
// endpoints are kept and the stored order is first-occurrence order.
class FiniteMass {
public:
  FiniteMass(Frame frame, std::vector<Focal> focals);

  static FiniteMass vacuous(const Frame& frame);

  const Frame& frame() const noexcept { return frame_; }
  std::span<const Focal> focals() const noexcept { return focals_; }
  std::size_t size() const noexcept { return focals_.size(); }

  // Plain left-to-right sum of the stored masses.
  double total_mass() const noexcept;

  // Total mass of focals intersecting the query (shared endpoints count).
  double plausibility(const Interval& query) const noexcept;

private:
  Frame frame_;
  std::vector<Focal> focals_;
};

struct CombineResult {
  FiniteMass combined;
  double conflict;          // k
  std::size_t pairs_examined;  // |m1| * |m2|
};

// All pairwise intersections; empty ones accumulate into k, the rest are
// renormalized by 1/(1 - k) and merged. O(|m1| |m2|) time and memory.
// Throws TotalConflict when k >= 1 - 1e-12.
CombineResult dempster_combine(const FiniteMass& m1, const FiniteMass& m2);

// Sum over F of m2(F) pl1(F), checked against the mirrored sum m1(F) pl2(F)
// to 1e-9 (NumericalError otherwise). Equals 1 - k.
double discrete_agreement(const FiniteMass& m1, const FiniteMass& m2);

// Total mass of focals containing x. Throws DomainError outside the frame.
double singleton_plausibility(const FiniteMass& m, double x);

// singleton_plausibility at every x, in O((|m| + |xs|) log |m|).
std::vector<double> singleton_plausibility_profile(const FiniteMass& m,
                                                   std::span<const double> xs);

}  // namespace possfuse
