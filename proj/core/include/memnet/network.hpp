#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "memnet/rational.hpp"

namespace memnet {

// Activation applied to one neuron.  The exact model uses only Step and
// Id; smoothed networks replace neurons by Sigma (whose kind is stored on
// the network, not per neuron).
enum class Act { Step, Id, Sigma };

enum class SigmaKind { Logistic, Tanh, HardTanh };

std::string act_name(Act a);
std::string sigma_name(SigmaKind k);

// One weight entry of a sparse affine map.  Parameter counting is
// representation based: every stored entry counts, zero or not.
struct WeightEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;
};

// Affine map + per-output activation.  |biases| == |acts| == out_dim.
struct Layer {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<WeightEntry> weights;  // sorted by (row, col), unique
  std::vector<Rational> biases;
  std::vector<Act> acts;
};

// A feedforward network (or fragment).  The last layer is the output
// affine map and must be all-Id; fragments may have out_dim > 1.
struct Network {
  std::size_t input_dim = 0;
  std::vector<Layer> layers;
  SigmaKind sigma_kind = SigmaKind::Logistic;  // meaningful iff any Sigma neuron

  std::size_t output_dim() const { return layers.empty() ? input_dim : layers.back().out_dim; }
};

struct NetworkStats {
  std::size_t hidden_layers = 0;
  std::size_t width = 0;        // max hidden out_dim (0 if no hidden layer)
  std::size_t param_count = 0;  // stored weights + all biases
};

// --- construction helpers -------------------------------------------------

// Sets an entry, replacing any previous (row, col) value.
void set_weight(Layer& l, std::size_t row, std::size_t col, const Rational& v);

// Fresh layer with given dims, zero biases, all-Id activations, no weights.
Layer make_layer(std::size_t in_dim, std::size_t out_dim);

// Stores every (row, col) entry, zeros included (dense counting).
void densify(Layer& l);

// The identity fragment on `dim` values: a single all-Id affine layer.
Network identity_network(std::size_t dim);

// Sequential composition: feeds `a`'s outputs into `b`.  The output
// affine of `a` (all-Id) is folded into the first layer of `b`, so the
// hidden-layer count of the result is the sum of the two.
Network concat(const Network& a, const Network& b);

// Validates structural invariants; throws InputShapeError on violation.
void validate(const Network& n);

// --- evaluation -----------------------------------------------------------

// Exact forward pass.  Step(v) = 1 iff v >= 0.  HardTanh sigma neurons
// evaluate exactly (piecewise rational); other Sigma kinds are rejected
// here (see sigmoid.hpp for their high-precision evaluator).
std::vector<Rational> evaluate_exact(const Network& n, const std::vector<Rational>& x);

// Plain double-precision forward pass (all sigma kinds supported).
std::vector<double> evaluate_float(const Network& n, const std::vector<double>& x);

NetworkStats stats(const Network& n);

}  // namespace memnet
