#pragma once

// Seeded random inputs shared by the property tests and the acceptance suite.

#include <cstddef>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "possfuse/dempster.hpp"
#include "possfuse/possibility.hpp"

namespace gen {

inline possfuse::PossFn build(const oracle::Analytic& a, std::size_t grid = possfuse::kDefaultGridSize) {
  const possfuse::Frame frame(a.frame_lo, a.frame_hi);
  switch (a.family) {
    case oracle::Family::Triangular:
      return possfuse::make_triangular(frame, a.center, a.width, grid);
    case oracle::Family::CosineTaper:
      return possfuse::make_cosine_taper(frame, a.center, a.width, grid);
    case oracle::Family::Gaussian:
      return possfuse::from_likelihood(
          possfuse::make_gaussian_likelihood(frame, a.center, a.width, grid));
  }
  throw std::logic_error("unknown family");
}

// Random member of `family` on [0, 20]. Triangular and cosine supports fit in
// the frame; Gaussians may be truncated by it.
// Centers snap to the default grid (step 20/4096) so the sampled peak is 1.
inline oracle::Analytic random_family(std::mt19937_64& rng, oracle::Family family) {
  std::uniform_real_distribution<double> width(1.5, 5.0);
  const double w = width(rng);
  const double reach = family == oracle::Family::Gaussian ? 2.0 * w : w;
  std::uniform_real_distribution<double> center(reach, 20.0 - reach);
  const double step = 20.0 / 4096.0;
  const double c = std::round(center(rng) / step) * step;
  return {family, c, w, 0.0, 20.0};
}

inline oracle::Family random_kind(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  return static_cast<oracle::Family>(pick(rng));
}

struct Pair {
  oracle::Analytic first;
  oracle::Analytic second;
};

// Two random unimodal contours whose modes are at most `max_separation`
// times the narrower width apart.
inline Pair random_pair(std::mt19937_64& rng, double max_separation) {
  for (;;) {
    Pair p{random_family(rng, random_kind(rng)), random_family(rng, random_kind(rng))};
    const double narrow = std::min(p.first.width, p.second.width);
    if (std::abs(p.first.center - p.second.center) <= max_separation * narrow) return p;
  }
}

// Random finite mass on [0, 10] with 1..8 interval focals.
inline possfuse::FiniteMass random_mass(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = count(rng);
  std::vector<possfuse::Focal> focals;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    double a = 10.0 * unit(rng);
    double b = 10.0 * unit(rng);
    if (a > b) std::swap(a, b);
    const double w = 0.05 + unit(rng);
    weights.push_back(w);
    total += w;
    focals.push_back({{a, b}, 0.0});
  }
  double assigned = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    focals[i].mass = weights[i] / total;
    assigned += focals[i].mass;
  }
  focals.back().mass = 1.0 - assigned;
  return possfuse::FiniteMass(possfuse::Frame(0.0, 10.0), std::move(focals));
}

}  // namespace gen
