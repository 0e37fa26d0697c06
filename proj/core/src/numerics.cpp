#include "possfuse/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "possfuse/error.hpp"

namespace possfuse {

Frame::Frame(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream msg;
    msg << "frame requires finite lo < hi, got [" << lo << ", " << hi << "]";
    throw ArgumentError(msg.str());
  }
}

Interval Interval::checked(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    std::ostringstream msg;
    msg << "interval requires finite lo <= hi, got [" << lo << ", " << hi << "]";
    throw ArgumentError(msg.str());
  }
  return {lo, hi};
}

double grid_abscissa(const Frame& frame, std::size_t size, std::size_t i) noexcept {
  if (i + 1 >= size) return frame.hi();
  const double step = frame.width() / static_cast<double>(size - 1);
  return frame.lo() + static_cast<double>(i) * step;
}

SampledCurve::SampledCurve(Frame frame, std::vector<double> values)
    : frame_(frame), values_(std::move(values)) {
  if (values_.size() < kMinGridSize) {
    std::ostringstream msg;
    msg << "sampled curve needs at least " << kMinGridSize << " samples, got " << values_.size();
    throw ArgumentError(msg.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("sampled curve contains a non-finite value");
  }
}

namespace {

// Index i of the cell [x_i, x_{i+1}] holding x; x must be inside the frame.
std::size_t cell_of(const SampledCurve& c, double x) {
  const double t = (x - c.frame().lo()) / c.step();
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor(t)));
  i = std::min(i, c.size() - 2);
  if (i > 0 && c.abscissa(i) > x) --i;
  if (i + 2 < c.size() && c.abscissa(i + 1) < x) ++i;
  return i;
}

double interpolate_in_cell(const SampledCurve& c, std::size_t i, double x) {
  const double x0 = c.abscissa(i);
  const double x1 = c.abscissa(i + 1);
  if (x == x0) return c[i];
  if (x == x1) return c[i + 1];
  const double frac = std::clamp((x - x0) / (x1 - x0), 0.0, 1.0);
  return c[i] + frac * (c[i + 1] - c[i]);
}

void require_inside(const Frame& f, double x, const char* what) {
  if (!std::isfinite(x) || !f.contains(x)) {
    std::ostringstream msg;
    msg << what << " " << x << " lies outside frame [" << f.lo() << ", " << f.hi() << "]";
    throw DomainError(msg.str());
  }
}

}  // namespace

double eval(const SampledCurve& curve, double x) {
  require_inside(curve.frame(), x, "evaluation point");
  return interpolate_in_cell(curve, cell_of(curve, x), x);
}

double integrate_stieltjes(const SampledCurve& integrand, const SampledCurve& integrator,
                           double a, double b) {
  if (!integrand.same_grid(integrator)) {
    throw ArgumentError("stieltjes integral needs integrand and integrator on the same grid");
  }
  require_inside(integrand.frame(), a, "lower limit");
  require_inside(integrand.frame(), b, "upper limit");
  if (a > b) throw ArgumentError("stieltjes integral needs a <= b");
  if (a == b) return 0.0;

  // First grid node strictly right of a.
  std::size_t i = cell_of(integrand, a) + 1;
  while (i < integrand.size() && integrand.abscissa(i) <= a) ++i;

  double total = 0.0;
  double left = a;
  double g_left = eval(integrator, a);
  while (left < b) {
    double right = b;
    double g_right;
    if (i < integrand.size() && integrand.abscissa(i) < b) {
      right = integrand.abscissa(i);
      g_right = integrator[i];
      ++i;
    } else {
      g_right = eval(integrator, b);
    }
    total += eval(integrand, 0.5 * (left + right)) * (g_right - g_left);
    left = right;
    g_left = g_right;
  }
  return total;
}

Extremum golden_section_maximize(const std::function<double(double)>& fn, double lo, double hi,
                                 double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, fn(x)};
}

Extremum argmax(const SampledCurve& curve) {
  const auto values = curve.values();
  const auto best = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
  Extremum sample{curve.abscissa(best), values[best]};

  const std::size_t lo = best == 0 ? 0 : best - 1;
  const std::size_t hi = std::min(best + 1, curve.size() - 1);
  const Extremum refined = golden_section_maximize(
      [&curve](double x) { return eval(curve, x); }, curve.abscissa(lo), curve.abscissa(hi));
  if (refined.value > sample.value) return refined;
  return sample;
}

std::vector<double> level_crossings(const SampledCurve& curve, double level) {
  if (!std::isfinite(level) || level < 0.0) {
    throw ArgumentError("level crossings need a finite, non-negative level");
  }
  constexpr double kOnLevel = 1e-12;
  enum class Side { Below, On, Above };
  const std::size_t n = curve.size();
  auto side = [&](std::size_t i) {
    const double d = curve[i] - level;
    if (d > kOnLevel) return Side::Above;
    if (d < -kOnLevel) return Side::Below;
    return Side::On;
  };

  std::vector<double> out;
  auto push = [&out](double x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };

  std::size_t i = 0;
  while (i < n) {
    const Side s = side(i);
    if (s == Side::On) {
      std::size_t end = i;
      while (end + 1 < n && side(end + 1) == Side::On) ++end;
      if (i > 0) push(curve.abscissa(i));
      if (end + 1 < n) push(curve.abscissa(end));
      i = end + 1;
      continue;
    }
    if (i + 1 < n) {
      const Side next = side(i + 1);
      if (next != Side::On && next != s) {
        // Strict sign change inside the cell: bisect the interpolant.
        double a = curve.abscissa(i);
        double b = curve.abscissa(i + 1);
        const bool rising = s == Side::Below;
        double mid = 0.5 * (a + b);
        for (int iter = 0; iter < 200; ++iter) {
          mid = 0.5 * (a + b);
          const double d = interpolate_in_cell(curve, i, mid) - level;
          if (std::abs(d) <= kOnLevel || b - a <= 0.0) break;
          if ((d < 0.0) == rising) {
            a = mid;
          } else {
            b = mid;
          }
          if (mid == a && mid == b) break;
        }
        push(mid);
      }
    }
    ++i;
  }
  return out;
}

}  // namespace possfuse
