#pragma once

#include <string>

#include "memnet/network.hpp"

namespace memnet {

// JSON wire format (deterministic: weights sorted by (row, col),
// rationals as canonical "num/den" strings):
//
// { "input_dim": d,
//   "layers": [ { "in_dim": ..., "out_dim": ...,
//                 "weights": [[r, c, "num/den"], ...],
//                 "biases": ["num/den", ...],
//                 "activations": ["step" | "id" | "sigma:tanh" | ...] } ],
//   "meta": { ... } }
std::string to_json(const Network& n, const std::string& meta_json = "{}");

// Inverse of to_json; validates the result.  Throws InvalidArgumentError
// on malformed documents.
Network network_from_json(const std::string& text);

// The "meta" object of a serialized network, as a JSON string.
std::string meta_from_json(const std::string& text);

}  // namespace memnet
