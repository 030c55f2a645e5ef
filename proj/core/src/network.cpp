#include "memnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "memnet/errors.hpp"

namespace memnet {

std::string act_name(Act a) {
  switch (a) {
    case Act::Step: return "step";
    case Act::Id: return "id";
    case Act::Sigma: return "sigma";
  }
  return "?";
}

std::string sigma_name(SigmaKind k) {
  switch (k) {
    case SigmaKind::Logistic: return "logistic";
    case SigmaKind::Tanh: return "tanh";
    case SigmaKind::HardTanh: return "hard_tanh";
  }
  return "?";
}

void set_weight(Layer& l, std::size_t row, std::size_t col, const Rational& v) {
  auto key_less = [](const WeightEntry& e, std::pair<std::size_t, std::size_t> k) {
    return std::pair(e.row, e.col) < k;
  };
  auto it = std::lower_bound(l.weights.begin(), l.weights.end(),
                             std::pair(row, col), key_less);
  if (it != l.weights.end() && it->row == row && it->col == col) {
    it->value = v;
  } else {
    l.weights.insert(it, WeightEntry{row, col, v});
  }
}

Layer make_layer(std::size_t in_dim, std::size_t out_dim) {
  Layer l;
  l.in_dim = in_dim;
  l.out_dim = out_dim;
  l.biases.assign(out_dim, Rational(0));
  l.acts.assign(out_dim, Act::Id);
  return l;
}

void densify(Layer& l) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> m;
  for (auto& e : l.weights) m[{e.row, e.col}] = e.value;
  l.weights.clear();
  l.weights.reserve(l.out_dim * l.in_dim);
  for (std::size_t r = 0; r < l.out_dim; ++r) {
    for (std::size_t c = 0; c < l.in_dim; ++c) {
      auto it = m.find({r, c});
      l.weights.push_back({r, c, it == m.end() ? Rational(0) : it->second});
    }
  }
}

Network identity_network(std::size_t dim) {
  Network n;
  n.input_dim = dim;
  Layer l = make_layer(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) set_weight(l, i, i, Rational(1));
  n.layers.push_back(std::move(l));
  return n;
}

void validate(const Network& n) {
  std::size_t d = n.input_dim;
  if (n.layers.empty()) throw InputShapeError("network has no layers");
  for (const auto& l : n.layers) {
    if (l.in_dim != d) throw InputShapeError("layer in_dim mismatch");
    if (l.biases.size() != l.out_dim || l.acts.size() != l.out_dim) {
      throw InputShapeError("bias/activation vector size mismatch");
    }
    for (const auto& e : l.weights) {
      if (e.row >= l.out_dim || e.col >= l.in_dim) {
        throw InputShapeError("weight entry out of range");
      }
    }
    for (std::size_t i = 1; i < l.weights.size(); ++i) {
      auto a = std::pair(l.weights[i - 1].row, l.weights[i - 1].col);
      auto b = std::pair(l.weights[i].row, l.weights[i].col);
      if (!(a < b)) throw InputShapeError("weight entries not sorted/unique");
    }
    d = l.out_dim;
  }
  for (Act a : n.layers.back().acts) {
    if (a != Act::Id) throw InputShapeError("output layer must be all-Id");
  }
}

// Folds affine `first` (all-Id) into `second`: result(x) = second(first(x)).
static Layer fold_affine(const Layer& first, const Layer& second) {
  Layer out = make_layer(first.in_dim, second.out_dim);
  out.acts = second.acts;
  std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
  // bias: second.bias + W2 * first.bias
  out.biases = second.biases;
  for (const auto& e2 : second.weights) {
    out.biases[e2.row] += e2.value * first.biases[e2.col];
  }
  // group first's entries by row for the product
  std::vector<std::vector<const WeightEntry*>> by_row(first.out_dim);
  for (const auto& e1 : first.weights) by_row[e1.row].push_back(&e1);
  for (const auto& e2 : second.weights) {
    for (const WeightEntry* e1 : by_row[e2.col]) {
      acc[{e2.row, e1->col}] += e2.value * e1->value;
    }
  }
  for (auto& [k, v] : acc) out.weights.push_back({k.first, k.second, v});
  return out;
}

Network concat(const Network& a, const Network& b) {
  if (a.output_dim() != b.input_dim) throw InputShapeError("concat: dim mismatch");
  Network r;
  r.input_dim = a.input_dim;
  r.sigma_kind = a.sigma_kind;
  r.layers.assign(a.layers.begin(), a.layers.end() - 1);
  r.layers.push_back(fold_affine(a.layers.back(), b.layers.front()));
  r.layers.insert(r.layers.end(), b.layers.begin() + 1, b.layers.end());
  return r;
}

static Rational hard_tanh_exact(const Rational& v) {
  if (v > 1) return Rational(1);
  if (v < -1) return Rational(-1);
  return v;
}

std::vector<Rational> evaluate_exact(const Network& n, const std::vector<Rational>& x) {
  if (x.size() != n.input_dim) throw InputShapeError("evaluate_exact: input dim");
  std::vector<Rational> cur = x, next;
  for (const auto& l : n.layers) {
    next.assign(l.out_dim, Rational(0));
    for (std::size_t i = 0; i < l.out_dim; ++i) next[i] = l.biases[i];
    for (const auto& e : l.weights) {
      if (e.value != 0) next[e.row] += e.value * cur[e.col];
    }
    for (std::size_t i = 0; i < l.out_dim; ++i) {
      switch (l.acts[i]) {
        case Act::Step:
          next[i] = (next[i] >= 0) ? Rational(1) : Rational(0);
          break;
        case Act::Id:
          break;
        case Act::Sigma:
          if (n.sigma_kind != SigmaKind::HardTanh) {
            throw InvalidArgumentError(
                "evaluate_exact: smooth sigma requires the high-precision evaluator");
          }
          next[i] = hard_tanh_exact(next[i]);
          break;
      }
    }
    cur.swap(next);
  }
  return cur;
}

static double sigma_double(SigmaKind k, double v) {
  switch (k) {
    case SigmaKind::Logistic: return 1.0 / (1.0 + std::exp(-v));
    case SigmaKind::Tanh: return std::tanh(v);
    case SigmaKind::HardTanh: return v > 1 ? 1.0 : (v < -1 ? -1.0 : v);
  }
  return 0.0;
}

std::vector<double> evaluate_float(const Network& n, const std::vector<double>& x) {
  if (x.size() != n.input_dim) throw InputShapeError("evaluate_float: input dim");
  std::vector<double> cur = x, next;
  for (const auto& l : n.layers) {
    next.assign(l.out_dim, 0.0);
    for (std::size_t i = 0; i < l.out_dim; ++i) next[i] = l.biases[i].get_d();
    for (const auto& e : l.weights) next[e.row] += e.value.get_d() * cur[e.col];
    for (std::size_t i = 0; i < l.out_dim; ++i) {
      if (l.acts[i] == Act::Step) {
        next[i] = next[i] >= 0 ? 1.0 : 0.0;
      } else if (l.acts[i] == Act::Sigma) {
        next[i] = sigma_double(n.sigma_kind, next[i]);
      }
    }
    cur.swap(next);
  }
  return cur;
}

NetworkStats stats(const Network& n) {
  NetworkStats s;
  if (n.layers.empty()) return s;
  s.hidden_layers = n.layers.size() - 1;
  for (std::size_t i = 0; i + 1 < n.layers.size(); ++i) {
    s.width = std::max(s.width, n.layers[i].out_dim);
  }
  for (const auto& l : n.layers) {
    s.param_count += l.weights.size() + l.biases.size();
  }
  return s;
}

}  // namespace memnet
