#pragma once

// Grid-based function representation shared by every other module:
// uniform sampling over a closed frame, piecewise-linear evaluation,
// Riemann-Stieltjes sums, extremum search and level-crossing roots.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace possfuse {

inline constexpr std::size_t kDefaultGridSize = 4097;
inline constexpr std::size_t kMinGridSize = 33;

// Closed real interval [lo, hi] holding every state under consideration.
class Frame {
public:
  Frame(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

  friend bool operator==(const Frame&, const Frame&) = default;

private:
  double lo_;
  double hi_;
};

// Closed interval; lo == hi is a singleton.
struct Interval {
  double lo;
  double hi;

  static Interval checked(double lo, double hi);

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool intersects(const Interval& o) const noexcept { return lo <= o.hi && o.lo <= hi; }
  bool within(const Frame& f) const noexcept { return lo >= f.lo() && hi <= f.hi(); }
  bool within(const Interval& o) const noexcept { return lo >= o.lo && hi <= o.hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval as_interval(const Frame& f) noexcept { return {f.lo(), f.hi()}; }

// i-th of `size` uniform abscissae over the frame; the last one is hi exactly.
double grid_abscissa(const Frame& frame, std::size_t size, std::size_t i) noexcept;

// Samples of a function at M uniform abscissae lo + i*(hi-lo)/(M-1).
class SampledCurve {
public:
  SampledCurve(Frame frame, std::vector<double> values);

  template <typename Fn>
  static SampledCurve sample(const Frame& frame, std::size_t size, Fn&& fn) {
    std::vector<double> values(size);
    for (std::size_t i = 0; i < size; ++i) values[i] = fn(grid_abscissa(frame, size, i));
    return SampledCurve(frame, std::move(values));
  }

  const Frame& frame() const noexcept { return frame_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double step() const noexcept { return frame_.width() / static_cast<double>(values_.size() - 1); }
  double abscissa(std::size_t i) const noexcept { return grid_abscissa(frame_, size(), i); }

  bool same_grid(const SampledCurve& other) const noexcept {
    return frame_ == other.frame_ && size() == other.size();
  }

private:
  Frame frame_;
  std::vector<double> values_;
};

struct Extremum {
  double x;
  double value;
};

// Linear interpolation; exact at sample abscissae. Throws DomainError
// outside the frame.
double eval(const SampledCurve& curve, double x);

// Sum of f(mid_i) * (g(x_{i+1}) - g(x_i)) over the grid cells of [a, b],
// the end cells clipped at a and b. Increment-based, so a step in g
// contributes its full jump.
double integrate_stieltjes(const SampledCurve& integrand, const SampledCurve& integrator,
                           double a, double b);

// Golden-section search for the maximum of a unimodal fn on [lo, hi].
Extremum golden_section_maximize(const std::function<double(double)>& fn, double lo, double hi,
                                 double tol = 1e-12);

// Maximal sample (smallest x on ties), refined by golden-section search on
// the bracketing cells. The refinement is kept only when it strictly
// improves on the sample.
Extremum argmax(const SampledCurve& curve);

// Abscissae where the interpolated curve passes through `level`, sorted.
// A run of samples sitting exactly on the level yields its entry and exit;
// run ends that coincide with the frame edge are not crossings.
std::vector<double> level_crossings(const SampledCurve& curve, double level);

}  // namespace possfuse
