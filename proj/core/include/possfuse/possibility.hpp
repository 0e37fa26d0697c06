#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "possfuse/numerics.hpp"

namespace possfuse {

enum class Shape { Unimodal, SimpleSupport, General };

const char* to_string(Shape shape) noexcept;

// Normalized values below this are treated as zero, which gives Gaussian-like
// likelihoods a bounded support.
inline constexpr double kSupportEpsilon = 1e-6;

// Contour of a simple support function: 1 on `interval`, `residual` elsewhere.
struct SimpleSupportParams {
  Interval interval;
  double residual;
};

// Nonnegative likelihood samples theta -> p(f | theta) for a fixed observation.
class LikelihoodCurve {
public:
  explicit LikelihoodCurve(SampledCurve curve);

  const Frame& frame() const noexcept { return curve_.frame(); }
  const SampledCurve& curve() const noexcept { return curve_; }

private:
  SampledCurve curve_;
};

// Normalized possibility function over a frame. Immutable.
//
// A PossFn produced by the multiplicative rule remembers the leaf curves it
// was multiplied from, so re-combining it gives the same samples as
// multiplying all leaves at once (see fusion.hpp).
class PossFn {
public:
  using FactorList = std::vector<SampledCurve>;

  const Frame& frame() const noexcept { return curve_.frame(); }
  const SampledCurve& curve() const noexcept { return curve_; }
  Shape shape() const noexcept { return shape_; }
  double mode_x() const noexcept { return mode_x_; }
  const Interval& support() const noexcept { return support_; }
  const std::optional<SimpleSupportParams>& simple_support() const noexcept { return step_; }

  // Contour value. Exact step for SIMPLE_SUPPORT, grid interpolation
  // otherwise. Throws DomainError outside the frame.
  double operator()(double x) const;

  // Every sample equals 1: all mass on the frame.
  bool is_vacuous() const noexcept;

  // Leaf curves whose pointwise product (normalized) is this function. A leaf
  // lists only its own curve.
  const FactorList& factors() const noexcept { return *factors_; }

  // Wraps an already normalized curve, classifying its shape on the grid.
  // Used by the combination rule; `factors` may be empty for a leaf.
  static PossFn from_normalized(SampledCurve curve, FactorList factors = {});

private:
  PossFn(SampledCurve curve, Shape shape, double mode_x, Interval support,
         std::optional<SimpleSupportParams> step, FactorList factors);

  friend PossFn make_triangular(const Frame&, double, double, std::size_t);
  friend PossFn make_cosine_taper(const Frame&, double, double, std::size_t);
  friend PossFn make_simple_support(const Frame&, const Interval&, double, std::size_t);

  SampledCurve curve_;
  Shape shape_;
  double mode_x_;
  Interval support_;
  std::optional<SimpleSupportParams> step_;
  std::shared_ptr<const FactorList> factors_;
};

// Grid test for shape: monotone flanks around the first maximum (1e-9 slack)
// and a peak no wider than two samples gives UNIMODAL, else GENERAL.
Shape classify_shape(const SampledCurve& curve);

// Divide by the maximum, clamp values below kSupportEpsilon to zero.
// Throws DegenerateEvidence when every sample is zero.
PossFn from_likelihood(const LikelihoodCurve& likelihood);

// Gaussian density with the given mean and standard deviation, sampled on
// the frame (truncated there).
LikelihoodCurve make_gaussian_likelihood(const Frame& frame, double mean, double sd,
                                         std::size_t samples = kDefaultGridSize);

// Linear interpolation through (x, value) points with strictly increasing x;
// zero outside [first x, last x].
LikelihoodCurve make_piecewise_linear_likelihood(const Frame& frame,
                                                 const std::vector<std::pair<double, double>>& points,
                                                 std::size_t samples = kDefaultGridSize);

// max(0, 1 - |x - peak| / half_width). When the peak falls between samples
// the samples are rescaled so the largest is exactly 1.
PossFn make_triangular(const Frame& frame, double peak, double half_width,
                       std::size_t samples = kDefaultGridSize);

// (1 + cos(pi (x - peak) / half_width)) / 2 on the support, 0 outside.
PossFn make_cosine_taper(const Frame& frame, double peak, double half_width,
                         std::size_t samples = kDefaultGridSize);

// 1 on the interval, `residual` elsewhere. If no sample lands inside a very
// narrow interval, the sample nearest its midpoint is set to 1.
PossFn make_simple_support(const Frame& frame, const Interval& interval, double residual,
                           std::size_t samples = kDefaultGridSize);

// u(l) >= mode_x with poss(u(l)) == poss(l). UNIMODAL only, l in
// [support.lo, mode_x]. If the right flank never descends to poss(l) the
// frame edge is returned.
double companion(const PossFn& poss, double l);

// {x : poss(x) >= alpha} for alpha in (0, 1]. Throws NonConsonant when the
// superlevel set is not a single interval.
Interval alpha_cut(const PossFn& poss, double alpha);

}  // namespace possfuse
