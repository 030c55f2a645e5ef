#pragma once

#include <cstdint>
#include <optional>

#include "memnet/dataset.hpp"
#include "memnet/network.hpp"

namespace memnet {

// One range-compression step: a scalar-to-scalar fragment (last layer
// all-Id, output dim 1) plus the exact values after the step.
struct CompressStep {
  Network fragment;               // identity fragment if no-op
  ScalarizedDataset out;
  Int t;                          // new bound T (== old bound for no-op)
  std::vector<Int> offsets;       // chosen collision-free shifts b_i
  bool identity = false;
};

// Modular-shift halving (one hidden layer of width <= d).  Splits [T, K)
// into chunks of length T = max(ceil(K / floor((d+1)/2)), floor(N^2/4+1))
// and folds chunk i by x -> (x + b_i) mod T, with the smallest offsets
// b_i (searched in increasing order) that keep integer parts distinct.
// Returns an identity step when K <= T.
CompressStep halve_step(const ScalarizedDataset& sd, std::size_t d);

// Block squeezing toward T = min(K, max(N * ceil(N/C), ceil(K/2))).
// [T, K) is cut at breakpoints T = M_1 < ... < M_{C+1} = K, each block
// holding at most ceil(N/C) occupied integer parts, and block i folds by
// x -> (x + b_i) mod T.  The fragment spans `layer_widths` hidden layers
// with two pass-through neurons per layer (the last layer may drop the
// input pass), so it needs sum(layer_widths[l] - 2) >= 2C - 1.
// An empty `layer_widths` means budget mode: one wide hidden layer plus
// a width-1 bypass layer.
CompressStep squeeze_step(const ScalarizedDataset& sd, std::size_t c_param,
                          const std::vector<std::size_t>& layer_widths = {});

enum class CompressMode { Budget, Width3 };

struct CompressResult {
  Network fragment;  // concatenation of all steps (identity if none)
  ScalarizedDataset out;
  std::size_t halve_rounds = 0;
  std::size_t squeeze_rounds = 0;
};

// Halves (width 3) until the bound is at most floor(N^2/4 + 1), then
// squeezes with C = ceil(4 N^2 / K) per round until bound <= target.
// Budget mode emits wide squeeze layers; Width3 mode emits width-3
// chains.  Throws InvalidTargetError if target < N.
CompressResult compress_chain(const ScalarizedDataset& sd, const Int& target,
                              CompressMode mode);

}  // namespace memnet
