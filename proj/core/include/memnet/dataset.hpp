#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "memnet/rational.hpp"

namespace memnet {

// Labeled classification data: N distinct points in Q^d_x, labels in [C].
struct Dataset {
  std::size_t d_x = 0;
  std::size_t num_classes = 0;
  std::vector<std::vector<Rational>> points;
  std::vector<std::int64_t> labels;

  std::size_t size() const { return points.size(); }
};

// Validates shape, label range and (pairwise) distinctness.
void validate(const Dataset& ds);

// One-dimensional image of a dataset after projection/compression.
// Values are >= 0 with distinct integer parts below `bound`.
struct ScalarizedDataset {
  std::vector<Rational> values;
  std::vector<std::int64_t> labels;
  std::size_t num_classes = 0;
  Int bound;  // K: all values lie in [0, K)

  // Affine form of the original projection (empty after compression).
  std::vector<Rational> direction;
  Rational shift;

  std::size_t size() const { return values.size(); }
};

std::vector<std::int64_t> floors(const ScalarizedDataset& sd);

// Parses CSV rows "x1,...,xd,label" with exact decimal coordinates and
// integer labels.  Throws InvalidArgumentError (with the 1-based row
// number) on malformed rows, DuplicateInputError on repeated points.
Dataset read_csv(std::istream& in, std::size_t num_classes);

// Wraps a regression target column into classes: C = ceil(1/eps) classes,
// class c decodes to c*eps.  Returns the dataset plus the decode step.
struct RegressionWrap {
  Dataset data;
  Rational step;  // eps actually used for decoding
};
RegressionWrap regression_wrap(const std::vector<std::vector<Rational>>& points,
                               const std::vector<Rational>& targets,
                               const Rational& eps);

}  // namespace memnet
