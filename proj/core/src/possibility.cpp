#include "possfuse/possibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "possfuse/error.hpp"

namespace possfuse {

const char* to_string(Shape shape) noexcept {
  switch (shape) {
    case Shape::Unimodal: return "UNIMODAL";
    case Shape::SimpleSupport: return "SIMPLE_SUPPORT";
    case Shape::General: return "GENERAL";
  }
  return "?";
}

LikelihoodCurve::LikelihoodCurve(SampledCurve curve) : curve_(std::move(curve)) {
  bool positive = false;
  for (double v : curve_.values()) {
    if (v < 0.0) throw ArgumentError("likelihood values must be nonnegative");
    positive = positive || v > 0.0;
  }
  if (!positive) throw DegenerateEvidence("likelihood is zero everywhere on the frame");
}

PossFn::PossFn(SampledCurve curve, Shape shape, double mode_x, Interval support,
               std::optional<SimpleSupportParams> step, FactorList factors)
    : curve_(std::move(curve)),
      shape_(shape),
      mode_x_(mode_x),
      support_(support),
      step_(step) {
  if (factors.empty()) factors.push_back(curve_);
  factors_ = std::make_shared<const FactorList>(std::move(factors));
}

double PossFn::operator()(double x) const {
  if (step_) {
    if (!frame().contains(x)) {
      std::ostringstream msg;
      msg << "evaluation point " << x << " lies outside frame";
      throw DomainError(msg.str());
    }
    return step_->interval.contains(x) ? 1.0 : step_->residual;
  }
  return eval(curve_, x);
}

bool PossFn::is_vacuous() const noexcept {
  const auto v = curve_.values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 1.0; });
}

namespace {

constexpr double kMonotoneSlack = 1e-9;

// Smallest interval outside which the interpolated curve vanishes.
Interval grid_support(const SampledCurve& c) {
  const auto v = c.values();
  std::size_t first = 0;
  while (first < v.size() && v[first] == 0.0) ++first;
  if (first == v.size()) return {c.frame().lo(), c.frame().lo()};
  std::size_t last = v.size() - 1;
  while (v[last] == 0.0) --last;
  const std::size_t lo = first == 0 ? 0 : first - 1;
  const std::size_t hi = std::min(last + 1, v.size() - 1);
  return {c.abscissa(lo), c.abscissa(hi)};
}

void require_family_params(const Frame& frame, double peak, double half_width) {
  if (!std::isfinite(peak) || !std::isfinite(half_width) || !(half_width > 0.0)) {
    throw ArgumentError("half_width must be finite and positive");
  }
  if (peak - half_width < frame.lo() || peak + half_width > frame.hi()) {
    std::ostringstream msg;
    msg << "support [" << peak - half_width << ", " << peak + half_width
        << "] exceeds frame [" << frame.lo() << ", " << frame.hi() << "]";
    throw ArgumentError(msg.str());
  }
}

// Analytic families whose peak falls between grid points: lift the highest
// sample to 1 and leave the rest of the closed form untouched.
SampledCurve with_unit_peak(const SampledCurve& raw) {
  const auto v = raw.values();
  std::vector<double> out(v.begin(), v.end());
  *std::max_element(out.begin(), out.end()) = 1.0;
  return SampledCurve(raw.frame(), std::move(out));
}

}  // namespace

Shape classify_shape(const SampledCurve& curve) {
  const auto v = curve.values();
  const std::size_t n = v.size();
  const auto peak = static_cast<std::size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.end())));
  const double top = v[peak];

  // Left flank: v[i] <= min(v[i+1..peak]) + slack.
  double running_min = top;
  for (std::size_t i = peak; i-- > 0;) {
    if (v[i] > running_min + kMonotoneSlack) return Shape::General;
    running_min = std::min(running_min, v[i]);
  }
  // Right flank: v[j] <= min(v[peak..j-1]) + slack.
  running_min = top;
  for (std::size_t j = peak + 1; j < n; ++j) {
    if (v[j] > running_min + kMonotoneSlack) return Shape::General;
    running_min = std::min(running_min, v[j]);
  }
  // A flat top means no single most plausible state.
  std::size_t at_top = 0;
  for (double x : v) {
    if (x >= top - kMonotoneSlack) ++at_top;
  }
  return at_top <= 2 ? Shape::Unimodal : Shape::General;
}

PossFn PossFn::from_normalized(SampledCurve curve, FactorList factors) {
  const Shape shape = classify_shape(curve);
  const double mode = argmax(curve).x;
  Interval support = grid_support(curve);
  return PossFn(std::move(curve), shape, mode, support, std::nullopt, std::move(factors));
}

PossFn from_likelihood(const LikelihoodCurve& likelihood) {
  const SampledCurve& raw = likelihood.curve();
  const auto v = raw.values();
  const double top = *std::max_element(v.begin(), v.end());
  if (!(top > 0.0)) throw DegenerateEvidence("likelihood is zero everywhere on the frame");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double p = v[i] / top;
    out[i] = p < kSupportEpsilon ? 0.0 : p;
  }
  return PossFn::from_normalized(SampledCurve(raw.frame(), std::move(out)));
}

LikelihoodCurve make_gaussian_likelihood(const Frame& frame, double mean, double sd,
                                         std::size_t samples) {
  if (!std::isfinite(mean) || !frame.contains(mean)) {
    throw ArgumentError("gaussian mean must lie inside the frame");
  }
  if (!std::isfinite(sd) || !(sd > 0.0)) throw ArgumentError("gaussian sd must be positive");
  const double scale = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi));
  return LikelihoodCurve(SampledCurve::sample(frame, samples, [&](double x) {
    const double z = (x - mean) / sd;
    return scale * std::exp(-0.5 * z * z);
  }));
}

LikelihoodCurve make_piecewise_linear_likelihood(
    const Frame& frame, const std::vector<std::pair<double, double>>& points,
    std::size_t samples) {
  if (points.size() < 2) throw ArgumentError("piecewise-linear likelihood needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!std::isfinite(x) || !frame.contains(x)) {
      throw ArgumentError("piecewise-linear abscissae must lie inside the frame");
    }
    if (!std::isfinite(y) || y < 0.0) {
      throw ArgumentError("piecewise-linear values must be finite and nonnegative");
    }
    if (i > 0 && !(x > points[i - 1].first)) {
      throw ArgumentError("piecewise-linear abscissae must be strictly increasing");
    }
  }
  return LikelihoodCurve(SampledCurve::sample(frame, samples, [&](double x) {
    if (x < points.front().first || x > points.back().first) return 0.0;
    auto upper = std::upper_bound(points.begin(), points.end(), x,
                                  [](double v, const auto& p) { return v < p.first; });
    if (upper == points.end()) return points.back().second;
    const auto lower = std::prev(upper);
    const double t = (x - lower->first) / (upper->first - lower->first);
    return lower->second + t * (upper->second - lower->second);
  }));
}

PossFn make_triangular(const Frame& frame, double peak, double half_width, std::size_t samples) {
  require_family_params(frame, peak, half_width);
  auto raw = SampledCurve::sample(frame, samples, [&](double x) {
    return std::max(0.0, 1.0 - std::abs(x - peak) / half_width);
  });
  auto curve = with_unit_peak(raw);
  const double mode = argmax(curve).x;
  return PossFn(std::move(curve), Shape::Unimodal, mode,
                {peak - half_width, peak + half_width}, std::nullopt, {});
}

PossFn make_cosine_taper(const Frame& frame, double peak, double half_width, std::size_t samples) {
  require_family_params(frame, peak, half_width);
  auto raw = SampledCurve::sample(frame, samples, [&](double x) {
    const double d = std::abs(x - peak);
    if (d >= half_width) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * d / half_width));
  });
  auto curve = with_unit_peak(raw);
  const double mode = argmax(curve).x;
  return PossFn(std::move(curve), Shape::Unimodal, mode,
                {peak - half_width, peak + half_width}, std::nullopt, {});
}

PossFn make_simple_support(const Frame& frame, const Interval& interval, double residual,
                           std::size_t samples) {
  if (!std::isfinite(residual) || residual < 0.0 || residual >= 1.0) {
    throw ArgumentError("simple support residual must lie in [0, 1)");
  }
  if (!(interval.lo <= interval.hi) || !interval.within(frame)) {
    throw ArgumentError("simple support interval must lie inside the frame");
  }
  auto curve = SampledCurve::sample(frame, samples, [&](double x) {
    return interval.contains(x) ? 1.0 : residual;
  });
  const auto v = curve.values();
  if (std::none_of(v.begin(), v.end(), [](double x) { return x == 1.0; })) {
    const double mid = 0.5 * (interval.lo + interval.hi);
    std::vector<double> patched(v.begin(), v.end());
    const auto i = static_cast<std::size_t>(std::lround((mid - frame.lo()) / curve.step()));
    patched[std::min(i, patched.size() - 1)] = 1.0;
    curve = SampledCurve(frame, std::move(patched));
  }
  const double mode = argmax(curve).x;
  const Interval support = residual > 0.0 ? as_interval(frame) : interval;
  return PossFn(std::move(curve), Shape::SimpleSupport, mode, support,
                SimpleSupportParams{interval, residual}, {});
}

double companion(const PossFn& poss, double l) {
  if (poss.shape() != Shape::Unimodal) {
    throw ArgumentError("companion function needs a UNIMODAL possibility function");
  }
  if (!(l >= poss.support().lo && l <= poss.mode_x())) {
    std::ostringstream msg;
    msg << "companion argument " << l << " must lie in [" << poss.support().lo << ", "
        << poss.mode_x() << "]";
    throw ArgumentError(msg.str());
  }
  if (l == poss.mode_x()) return l;
  const double level = poss(l);
  double best = poss.frame().hi();
  bool found = false;
  for (double x : level_crossings(poss.curve(), level)) {
    if (x >= poss.mode_x()) {
      best = found ? std::max(best, x) : x;
      found = true;
    }
  }
  return best;
}

Interval alpha_cut(const PossFn& poss, double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 1.0) {
    throw ArgumentError("alpha must lie in (0, 1]");
  }
  if (const auto& step = poss.simple_support()) {
    return alpha > step->residual ? step->interval : as_interval(poss.frame());
  }

  // Superlevel set of the piecewise-linear interpolant, cell by cell.
  const SampledCurve& c = poss.curve();
  std::vector<Interval> pieces;
  auto add = [&pieces](double lo, double hi) {
    if (!pieces.empty() && lo <= pieces.back().hi) {
      pieces.back().hi = std::max(pieces.back().hi, hi);
    } else {
      pieces.push_back({lo, hi});
    }
  };
  auto root = [&c, alpha](std::size_t i) {
    const double a = c[i];
    const double b = c[i + 1];
    const double t = (alpha - a) / (b - a);
    return c.abscissa(i) + t * (c.abscissa(i + 1) - c.abscissa(i));
  };
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const bool left_in = c[i] >= alpha;
    const bool right_in = c[i + 1] >= alpha;
    if (left_in && right_in) {
      add(c.abscissa(i), c.abscissa(i + 1));
    } else if (left_in) {
      add(c.abscissa(i), root(i));
    } else if (right_in) {
      add(root(i), c.abscissa(i + 1));
    }
  }
  if (pieces.empty()) {
    throw NumericalError("alpha-cut is empty; possibility function is not normalized");
  }
  if (pieces.size() > 1) {
    std::ostringstream msg;
    msg << "alpha-cut at level " << alpha << " splits into " << pieces.size()
        << " intervals; the possibility function is not consonant there";
    throw NonConsonant(msg.str());
  }
  return pieces.front();
}

}  // namespace possfuse
