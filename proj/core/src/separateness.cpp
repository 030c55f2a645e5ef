#include "memnet/separateness.hpp"

#include <cmath>
#include <random>

#include "memnet/errors.hpp"

namespace memnet {

Separateness measure(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) throw InvalidArgumentError("measure: empty point set");
  Separateness s;
  if (points.size() == 1) {
    s.min_sq = s.max_sq = s.ratio_sq = Rational(1);
    s.log2_delta = 0.0;
    return s;
  }
  bool first = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != points[0].size()) throw InputShapeError("measure: dim mismatch");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational d2(0);
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        Rational diff = points[i][k] - points[j][k];
        d2 += diff * diff;
      }
      if (d2 == 0) throw DuplicateInputError("measure: coincident points");
      if (first || d2 < s.min_sq) s.min_sq = d2;
      if (first || d2 > s.max_sq) s.max_sq = d2;
      first = false;
    }
  }
  s.ratio_sq = s.max_sq / s.min_sq;
  s.log2_delta = 0.5 * log2_double(s.ratio_sq);
  return s;
}

double image_bound(std::size_t a, std::size_t b, std::size_t channels,
                   std::size_t levels) {
  if (a == 0 || b == 0 || channels == 0 || levels < 2) {
    throw InvalidArgumentError("image_bound: degenerate image shape");
  }
  return std::log2(static_cast<double>(levels - 1)) +
         0.5 * std::log2(static_cast<double>(channels * a * b));
}

GaussianCheck gaussian_check(std::size_t n, std::size_t d_x, double delta,
                             std::size_t trials, std::uint64_t seed) {
  if (n < 2 || d_x == 0) throw InvalidArgumentError("gaussian_check: need n >= 2, d_x >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgumentError("gaussian_check: delta in (0,1)");
  if (trials == 0) throw InvalidArgumentError("gaussian_check: trials must be positive");

  GaussianCheck gc;
  gc.trials = trials;
  const double q = static_cast<double>(n) / std::sqrt(delta);
  const double e = std::exp(1.0);
  gc.bound = std::pow(q, 2.0 / static_cast<double>(d_x)) *
             std::sqrt(3.0 * e + (5.0 * e / static_cast<double>(d_x)) * std::log(q));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t ok = 0;
  std::vector<std::vector<double>> pts(n, std::vector<double>(d_x));
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& p : pts)
      for (auto& c : p) c = gauss(rng);
    double min_sq = 0, max_sq = 0;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double d2 = 0;
        for (std::size_t k = 0; k < d_x; ++k) {
          double diff = pts[i][k] - pts[j][k];
          d2 += diff * diff;
        }
        if (first || d2 < min_sq) min_sq = d2;
        if (first || d2 > max_sq) max_sq = d2;
        first = false;
      }
    }
    if (min_sq > 0 && max_sq <= gc.bound * gc.bound * min_sq) ++ok;
  }
  gc.success_rate = static_cast<double>(ok) / static_cast<double>(trials);
  return gc;
}

}  // namespace memnet
