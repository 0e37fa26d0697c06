#pragma once

// Multiplicative combination of possibility functions and the agreement
// (1 - Dempster's contradiction factor) computed directly from contours.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "possfuse/possibility.hpp"

namespace possfuse {

// Agreement and normalizer between inputs i and i + 1 of a chain.
struct PairSummary {
  std::size_t first;
  double norm;
  std::optional<double> agreement;
};

// Agreement-derived fields are empty when an input has GENERAL shape: the
// agreement formula needs nested focal elements.
struct FusionReport {
  PossFn fused;
  double norm;                                 // max of the raw product
  std::optional<double> agreement_a;
  std::optional<double> contradiction_k;       // 1 - agreement_a
  double mle_x;                                // argmax of fused, smallest x on ties
  bool mle_tied;                               // max also reached more than a grid step away
  std::optional<double> support_against_mle;   // 1 - norm / agreement_a
  std::vector<PairSummary> pairs;
};

// Pointwise product normalized by its maximum. Throws TotalConflict when
// the product vanishes (max <= 1e-12) and ArgumentError on grid mismatch.
FusionReport combine(const PossFn& p1, const PossFn& p2);

// Product of any number of inputs. Leaf factors of every input are
// multiplied in a canonical order and normalized once, so the fused samples
// do not depend on input order or on how earlier results were grouped.
// The overall agreement is the product of the step agreements of the
// sequential fold (1 - k accumulates multiplicatively under Dempster's rule).
FusionReport chain_combine(std::span<const PossFn> inputs);

// a = p2(x1) + integral_{x1}^{x2} p1 d(p2) with x1 <= x2 the modes, checked
// against the mirrored form to 1e-4 (NumericalError otherwise); returns the
// mean. SIMPLE_SUPPORT operands go through the exact two-focal sum; a
// vacuous operand gives 1. GENERAL operands throw UnsupportedShape.
double agreement(const PossFn& p1, const PossFn& p2);

// (1 - residual) * pl_r(interval) + residual for a UNIMODAL contour against
// a SIMPLE_SUPPORT witness.
double agreement_vs_simple_support(const PossFn& pr, const PossFn& witness);

}  // namespace possfuse
