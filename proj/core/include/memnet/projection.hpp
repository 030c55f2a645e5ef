#pragma once

#include <cstdint>

#include "memnet/dataset.hpp"
#include "memnet/separateness.hpp"

namespace memnet {

// A rational direction u together with the exact pairwise gap spread of
// the projected points (all comparisons cross-multiplied, no floats).
struct Direction {
  std::vector<Rational> u;
  Rational min_gap_sq;  // min over pairs of (u . (x_i - x_j))^2
  Rational max_gap_sq;
  std::size_t attempts = 0;
};

// Samples random unit directions (seeded, Gaussian components rounded to
// rationals) until the projected gap spread satisfies
//   max|gap| / min|gap| < N^2 * Delta * sqrt(pi d_x / 8)
// with the irrational factor replaced by a rational upper bound, and no
// projected gap is zero.  Throws DirectionSearchError after max_attempts.
Direction find_direction(const Dataset& ds, std::uint64_t seed,
                         std::size_t max_attempts = 1000);

// One-dimensional bound K = ceil(N^2 * Delta * sqrt(pi d_x / 8)) + 1,
// computed with the same rational upper bound on pi.
Int scalar_bound(std::size_t n, const Rational& delta_sq, std::size_t d_x);

// Affinely rescales the projections so the smallest value is 0 and the
// smallest pairwise gap is exactly 1; integer parts are then distinct
// and lie in [0, K).
ScalarizedDataset scalarize(const Dataset& ds, const Direction& dir);

}  // namespace memnet
