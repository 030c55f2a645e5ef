#include "memnet/projection.hpp"

#include <random>

#include "memnet/errors.hpp"

namespace memnet {

// Projected pairwise gaps must satisfy max^2 < thr_sq * min^2 where
// thr = N^2 * Delta * sqrt(pi d_x / 8); squared and with pi replaced by
// its rational upper bound this is exact arithmetic throughout.
static Rational threshold_sq(std::size_t n, const Rational& delta_sq, std::size_t d_x) {
  Rational n2(static_cast<unsigned long>(n));
  n2 = n2 * n2;
  return n2 * n2 * delta_sq * pi_upper() * Rational(static_cast<unsigned long>(d_x)) / 8;
}

Int scalar_bound(std::size_t n, const Rational& delta_sq, std::size_t d_x) {
  return isqrt_ceil(threshold_sq(n, delta_sq, d_x)) + 1;
}

Direction find_direction(const Dataset& ds, std::uint64_t seed,
                         std::size_t max_attempts) {
  validate(ds);
  const std::size_t n = ds.size();
  const std::size_t d = ds.d_x;
  Separateness sep = measure(ds.points);
  const Rational thr_sq = threshold_sq(n, sep.ratio_sq, d);

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Direction dir;
    dir.attempts = attempt + 1;
    dir.u.resize(d);
    if (d == 1) {
      dir.u[0] = Rational(1);
    } else {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (attempt + 1));
      std::normal_distribution<double> gauss(0.0, 1.0);
      double norm_sq = 0;
      std::vector<double> raw(d);
      for (auto& c : raw) {
        c = gauss(rng);
        norm_sq += c * c;
      }
      if (norm_sq == 0) continue;
      double norm = std::sqrt(norm_sq);
      // Rationalize at 32 fractional bits; only the direction matters.
      bool zero = true;
      for (std::size_t k = 0; k < d; ++k) {
        long scaled = std::lround(raw[k] / norm * 4294967296.0);
        dir.u[k] = Rational(Int(scaled), Int(4294967296L));
        dir.u[k].canonicalize();
        if (scaled != 0) zero = false;
      }
      if (zero) continue;
    }

    bool ok = true, first = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        Rational p(0);
        for (std::size_t k = 0; k < d; ++k) {
          p += dir.u[k] * (ds.points[i][k] - ds.points[j][k]);
        }
        if (p == 0) {
          ok = false;
          break;
        }
        Rational p2 = p * p;
        if (first || p2 < dir.min_gap_sq) dir.min_gap_sq = p2;
        if (first || p2 > dir.max_gap_sq) dir.max_gap_sq = p2;
        first = false;
      }
    }
    if (n == 1) {
      dir.min_gap_sq = dir.max_gap_sq = Rational(1);
      return dir;
    }
    if (ok && dir.max_gap_sq < thr_sq * dir.min_gap_sq) return dir;
  }
  throw DirectionSearchError("no acceptable projection direction found");
}

ScalarizedDataset scalarize(const Dataset& ds, const Direction& dir) {
  validate(ds);
  if (dir.u.size() != ds.d_x) throw InputShapeError("scalarize: direction dim mismatch");
  const std::size_t n = ds.size();
  std::vector<Rational> proj(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ds.d_x; ++k) proj[i] += dir.u[k] * ds.points[i][k];
  }
  Rational mn = proj[0];
  for (const auto& p : proj)
    if (p < mn) mn = p;
  Rational min_gap(1);
  if (n >= 2) {
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational g = abs(proj[i] - proj[j]);
        if (g == 0) throw DuplicateInputError("scalarize: coincident projections");
        if (first || g < min_gap) min_gap = g;
        first = false;
      }
    }
  }

  ScalarizedDataset sd;
  sd.labels = ds.labels;
  sd.num_classes = ds.num_classes;
  sd.values.reserve(n);
  for (const auto& p : proj) sd.values.push_back((p - mn) / min_gap);
  for (std::size_t k = 0; k < ds.d_x; ++k) sd.direction.push_back(dir.u[k] / min_gap);
  sd.shift = -mn / min_gap;

  Separateness sep = measure(ds.points);
  sd.bound = scalar_bound(n, sep.ratio_sq, ds.d_x);
  // The acceptance test above guarantees max value < K; keep a guard.
  for (const auto& v : sd.values) {
    if (floor_int(v) >= sd.bound) sd.bound = floor_int(v) + 1;
  }
  return sd;
}

}  // namespace memnet
