#pragma once

#include <cstddef>

#include "memnet/dataset.hpp"
#include "memnet/rational.hpp"

namespace memnet {

// Exact pairwise-distance spread of a point set, in squared form to
// avoid square roots: ratio_sq = max dist^2 / min dist^2.  A set is
// Delta-separated iff ratio_sq < Delta^2 (strict).
struct Separateness {
  Rational min_sq;
  Rational max_sq;
  Rational ratio_sq;   // 1 for a single point, by convention
  double log2_delta;   // 0.5 * log2(ratio_sq), for reporting
};

// Throws DuplicateInputError if two points coincide.
Separateness measure(const std::vector<std::vector<Rational>>& points);

// Upper bound on log2(Delta) for images on an integer intensity grid:
// a x b pixels, `channels` channels, `levels` intensity levels.
// log2((levels-1) * sqrt(channels * a * b)).
double image_bound(std::size_t a, std::size_t b, std::size_t channels,
                   std::size_t levels);

// Monte-Carlo check of the Gaussian separateness bound
// (N/sqrt(delta))^(2/d_x) * sqrt(3e + (5e/d_x) * ln(N/sqrt(delta))).
struct GaussianCheck {
  double bound = 0;
  double success_rate = 0;
  std::size_t trials = 0;
};
GaussianCheck gaussian_check(std::size_t n, std::size_t d_x, double delta,
                             std::size_t trials, std::uint64_t seed);

}  // namespace memnet
