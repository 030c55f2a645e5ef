#pragma once

#include <cstdint>

#include "memnet/dataset.hpp"
#include "memnet/network.hpp"

namespace memnet {

// Packs per-bucket labels into one rational parameter
//   w = sum_{a=0}^{A-1} y_a * 2^{-(a+1)D},
// i.e. D bits per bucket, bucket 0 in the most significant position.
// Labels must satisfy 0 <= y_a < 2^D.
Rational encode_labels(const std::vector<std::int64_t>& labels, std::size_t d_bits);

// Single-hidden-layer parameter extraction:
//   x -> (w_{floor(x/B)}, x mod B)  for x in [0, A*B).
// One hidden layer of A+2 neurons, stored densely (exactly 4A + 10
// parameters).  `w` holds the A bucket parameters.
Network param_extract(const std::vector<Rational>& w, std::int64_t bucket_len);

// Multi-layer form: layer l hosts widths[l] - 2 threshold neurons plus
// two pass-through neurons; requires sum(widths[l] - 2) >= A - 1.
Network param_extract_layers(const std::vector<Rational>& w, std::int64_t bucket_len,
                             const std::vector<std::size_t>& widths);

// Window-gadget bit extraction.  Input (x, w) with x in [0, B) and
// w = sum_{j=1}^{BD} u_j 2^{-j}; output is the integer
// sum_{i=1}^{D} u_{floor(x)D+i} 2^{D-i}.  Gadget l decodes R bits at a
// time through hidden layers of widths 2^R+R+1 and R+2; depth is
// exactly 2*ceil(BD/R).  Correct for inputs whose fractional part is at
// most `frac_cap` (default 1/2; bucket membership is tested against x
// itself with a margin derived from this cap).
Network bit_extract(std::int64_t b, std::int64_t d, std::int64_t r,
                    const Rational& frac_cap = Rational(1, 2));

// Width-3 bit extraction: (2D+1)B hidden layers, width exactly 3, total
// on [0, B).  Same input/output contract as bit_extract.
Network bit_extract_width3(std::int64_t b, std::int64_t d);

// param_extract + bit_extract assembled as in the sublinear counting
// argument: scalar input, hidden depth exactly 2*ceil(BD/R) + 2, and
// exactly 4A + ((2R+5)2^R + 2R^2 + 8R + 7)*ceil(BD/R) - R*2^R - R^2 + 3
// stored parameters.
Network learning_block(const std::vector<Rational>& w, std::int64_t bucket_len,
                       std::int64_t d, std::int64_t r,
                       const Rational& frac_cap = Rational(1, 2));

enum class MemorizeMode { Gadget, Width3 };

struct MemorizeResult {
  Network segment;  // scalar input in [0, K), integer label output
  std::int64_t a = 0, b = 0, d = 0, r = 0;
};

// Builds the label-lookup segment for a compressed dataset with bound K:
// buckets A = ceil(K^p), B = ceil(K/A) in Gadget mode (R, D derived from
// p and the class count); in Width3 mode B = ceil(N^(2/3)), A = ceil(K/B)
// with the width-3 extraction.  Classes C = 1 yields a constant segment.
MemorizeResult memorize_block(const ScalarizedDataset& sd, double p,
                              MemorizeMode mode);

}  // namespace memnet
