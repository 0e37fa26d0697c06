#include "possfuse/dempster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "possfuse/error.hpp"

namespace possfuse {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kEndpointQuantum = 1e12;

// Neumaier-compensated running sum; deterministic for a fixed input order.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double quantize(double x) noexcept { return std::round(x * kEndpointQuantum) / kEndpointQuantum; }

std::vector<Focal> merge_focals(std::vector<Focal> raw) {
  struct Keyed {
    double lo;
    double hi;
    std::size_t index;
  };
  std::vector<Keyed> keys(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    keys[i] = {quantize(raw[i].interval.lo), quantize(raw[i].interval.hi), i};
  }
  std::sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.index < b.index;
  });

  // Groups in first-occurrence order; masses added in original order.
  struct Group {
    std::size_t first;
    CompensatedSum mass;
  };
  std::vector<Group> groups;
  for (std::size_t k = 0; k < keys.size();) {
    std::size_t end = k;
    Group g{keys[k].index, {}};
    while (end < keys.size() && keys[end].lo == keys[k].lo && keys[end].hi == keys[k].hi) {
      g.mass.add(raw[keys[end].index].mass);
      ++end;
    }
    groups.push_back(g);
    k = end;
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.first < b.first; });

  std::vector<Focal> out;
  out.reserve(groups.size());
  for (const Group& g : groups) out.push_back({raw[g.first].interval, g.mass.value()});
  return out;
}

}  // namespace

FiniteMass::FiniteMass(Frame frame, std::vector<Focal> focals) : frame_(frame) {
  if (focals.empty()) throw ArgumentError("mass function needs at least one focal element");
  CompensatedSum total;
  for (const Focal& f : focals) {
    if (!(f.interval.lo <= f.interval.hi) || !f.interval.within(frame_)) {
      std::ostringstream msg;
      msg << "focal [" << f.interval.lo << ", " << f.interval.hi << "] is not inside the frame";
      throw ArgumentError(msg.str());
    }
    if (!std::isfinite(f.mass) || !(f.mass > 0.0) || f.mass > 1.0 + kMassTolerance) {
      throw ArgumentError("focal masses must lie in (0, 1]");
    }
    total.add(f.mass);
  }
  if (std::abs(total.value() - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << total.value() << ", expected 1";
    throw ArgumentError(msg.str());
  }
  focals_ = merge_focals(std::move(focals));
}

FiniteMass FiniteMass::vacuous(const Frame& frame) {
  return FiniteMass(frame, {{as_interval(frame), 1.0}});
}

double FiniteMass::total_mass() const noexcept {
  double total = 0.0;
  for (const Focal& f : focals_) total += f.mass;
  return total;
}

double FiniteMass::plausibility(const Interval& query) const noexcept {
  CompensatedSum pl;
  for (const Focal& f : focals_) {
    if (f.interval.intersects(query)) pl.add(f.mass);
  }
  return pl.value();
}

CombineResult dempster_combine(const FiniteMass& m1, const FiniteMass& m2) {
  if (!(m1.frame() == m2.frame())) {
    throw ArgumentError("dempster combination needs both mass functions on the same frame");
  }
  CompensatedSum conflict;
  CompensatedSum agreement;
  std::vector<Focal> products;
  products.reserve(m1.size() * m2.size());
  for (const Focal& f : m1.focals()) {
    for (const Focal& g : m2.focals()) {
      const double mass = f.mass * g.mass;
      const double lo = std::max(f.interval.lo, g.interval.lo);
      const double hi = std::min(f.interval.hi, g.interval.hi);
      if (lo > hi) {
        conflict.add(mass);
      } else {
        agreement.add(mass);
        products.push_back({{lo, hi}, mass});
      }
    }
  }
  const double k = conflict.value();
  if (k >= 1.0 - kMassTolerance || products.empty()) {
    std::ostringstream msg;
    msg << "total conflict: contradiction factor k = " << k;
    throw TotalConflict(msg.str());
  }
  // Normalizing by the nonempty mass (== 1 - k) keeps the result summing to 1
  // to a few ulps.
  const double a = agreement.value();
  for (Focal& p : products) p.mass /= a;
  return {FiniteMass(m1.frame(), std::move(products)), k, m1.size() * m2.size()};
}

double discrete_agreement(const FiniteMass& m1, const FiniteMass& m2) {
  if (!(m1.frame() == m2.frame())) {
    throw ArgumentError("agreement needs both mass functions on the same frame");
  }
  CompensatedSum forward;
  for (const Focal& g : m2.focals()) forward.add(g.mass * m1.plausibility(g.interval));
  CompensatedSum mirrored;
  for (const Focal& f : m1.focals()) mirrored.add(f.mass * m2.plausibility(f.interval));
  const double a = forward.value();
  if (std::abs(a - mirrored.value()) > 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "agreement sums disagree: " << a << " vs " << mirrored.value();
    throw NumericalError(msg.str());
  }
  return a;
}

double singleton_plausibility(const FiniteMass& m, double x) {
  if (!std::isfinite(x) || !m.frame().contains(x)) {
    std::ostringstream msg;
    msg << "point " << x << " lies outside the frame";
    throw DomainError(msg.str());
  }
  CompensatedSum pl;
  for (const Focal& f : m.focals()) {
    if (f.interval.contains(x)) pl.add(f.mass);
  }
  return pl.value();
}

std::vector<double> singleton_plausibility_profile(const FiniteMass& m,
                                                   std::span<const double> xs) {
  // pl(x) = mass(lo <= x) - mass(hi < x), each from a sorted prefix sum.
  const auto focals = m.focals();
  std::vector<std::pair<double, double>> by_lo;
  std::vector<std::pair<double, double>> by_hi;
  by_lo.reserve(focals.size());
  by_hi.reserve(focals.size());
  for (const Focal& f : focals) {
    by_lo.emplace_back(f.interval.lo, f.mass);
    by_hi.emplace_back(f.interval.hi, f.mass);
  }
  std::sort(by_lo.begin(), by_lo.end());
  std::sort(by_hi.begin(), by_hi.end());
  std::vector<double> prefix_lo(focals.size() + 1, 0.0);
  std::vector<double> prefix_hi(focals.size() + 1, 0.0);
  CompensatedSum acc_lo;
  CompensatedSum acc_hi;
  for (std::size_t i = 0; i < focals.size(); ++i) {
    acc_lo.add(by_lo[i].second);
    acc_hi.add(by_hi[i].second);
    prefix_lo[i + 1] = acc_lo.value();
    prefix_hi[i + 1] = acc_hi.value();
  }

  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!std::isfinite(x) || !m.frame().contains(x)) {
      std::ostringstream msg;
      msg << "point " << x << " lies outside the frame";
      throw DomainError(msg.str());
    }
    const auto started = std::upper_bound(by_lo.begin(), by_lo.end(), x,
                                          [](double v, const auto& p) { return v < p.first; });
    const auto ended = std::lower_bound(by_hi.begin(), by_hi.end(), x,
                                        [](const auto& p, double v) { return p.first < v; });
    const double pl = prefix_lo[static_cast<std::size_t>(started - by_lo.begin())] -
                      prefix_hi[static_cast<std::size_t>(ended - by_hi.begin())];
    out.push_back(std::max(0.0, pl));
  }
  return out;
}

}  // namespace possfuse
