#include "memnet/memorizer.hpp"

#include <algorithm>
#include <cmath>

#include "memnet/errors.hpp"

namespace memnet {

namespace {

using std::int64_t;

// Linear form over the neurons of the most recent layer; used to thread
// the virtual (x, w) state through narrow constructions.
struct LinExpr {
  std::vector<std::pair<std::size_t, Rational>> edges;
  Rational bias;
};

void put_row(Layer& l, std::size_t row, const LinExpr& e, Act act,
             const Rational& extra_bias = Rational(0)) {
  for (const auto& [c, v] : e.edges) set_weight(l, row, c, v);
  l.biases[row] = e.bias + extra_bias;
  l.acts[row] = act;
}

}  // namespace

Rational encode_labels(const std::vector<int64_t>& labels, std::size_t d_bits) {
  if (d_bits == 0 || d_bits > 62) throw InvalidArgumentError("encode_labels: bad bit width");
  const int64_t lim = int64_t(1) << d_bits;
  Rational w(0);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    if (labels[a] < 0 || labels[a] >= lim) {
      throw InvalidArgumentError("encode_labels: label needs more bits");
    }
    w += Rational(static_cast<long>(labels[a])) *
         pow2(-static_cast<long>((a + 1) * d_bits));
  }
  return w;
}

Network param_extract(const std::vector<Rational>& w, int64_t bucket_len) {
  const std::size_t a = w.size();
  if (a == 0 || bucket_len <= 0) throw InvalidArgumentError("param_extract: bad shape");
  Network net;
  net.input_dim = 1;
  // hidden: [Id (w accumulator seed), Id x, Step(x - iB) for i = 1..A]
  Layer hidden = make_layer(1, a + 2);
  hidden.acts[0] = Act::Id;
  hidden.acts[1] = Act::Id;
  set_weight(hidden, 1, 0, Rational(1));
  for (std::size_t i = 1; i <= a; ++i) {
    hidden.acts[i + 1] = Act::Step;
    set_weight(hidden, i + 1, 0, Rational(1));
    hidden.biases[i + 1] = Rational(-static_cast<long>(i * bucket_len));
  }
  Layer out = make_layer(a + 2, 2);
  out.biases[0] = w[0];
  set_weight(out, 0, 0, Rational(1));
  for (std::size_t i = 1; i < a; ++i) set_weight(out, 0, i + 1, w[i] - w[i - 1]);
  set_weight(out, 1, 1, Rational(1));
  for (std::size_t i = 1; i <= a; ++i) {
    set_weight(out, 1, i + 1, Rational(-static_cast<long>(bucket_len)));
  }
  densify(hidden);
  densify(out);
  net.layers = {std::move(hidden), std::move(out)};
  validate(net);
  return net;
}

Network param_extract_layers(const std::vector<Rational>& w, int64_t bucket_len,
                             const std::vector<std::size_t>& widths) {
  const std::size_t a = w.size();
  if (a == 0 || bucket_len <= 0) throw InvalidArgumentError("param_extract_layers: bad shape");
  std::size_t slots = 0;
  for (std::size_t d : widths) {
    if (d < 2) throw ArchitectureError("param_extract_layers: width must be >= 2");
    slots += d - 2;
  }
  if (slots + 1 < a) throw ArchitectureError("param_extract_layers: not enough indicator slots");

  Network net;
  net.input_dim = 1;
  LinExpr x_expr{{{0, Rational(1)}}, Rational(0)};
  LinExpr w_expr{{}, Rational(0)};
  std::size_t next = 1;  // next global indicator index (threshold i*B, coef w_i - w_{i-1})
  for (std::size_t l = 0; l < widths.size(); ++l) {
    Layer layer = make_layer(l == 0 ? 1 : widths[l - 1], widths[l]);
    put_row(layer, 0, w_expr, Act::Id, l == 0 ? w[0] : Rational(0));
    put_row(layer, 1, x_expr, Act::Id);
    std::size_t take = std::min(widths[l] - 2, (next <= a - 1) ? (a - next) : 0);
    std::vector<std::size_t> steps;
    std::vector<std::size_t> which;
    std::size_t local = 0;
    for (std::size_t s = 0; s < take; ++s, ++next, ++local) {
      // running-x threshold: local index within this layer's window
      put_row(layer, 2 + s, x_expr, Act::Step,
              Rational(-static_cast<long>((local + 1) * bucket_len)));
      steps.push_back(2 + s);
      which.push_back(next);
    }
    for (std::size_t s = 2 + take; s < widths[l]; ++s) layer.acts[s] = Act::Step;
    net.layers.push_back(std::move(layer));
    w_expr = {{{0, Rational(1)}}, Rational(0)};
    x_expr = {{{1, Rational(1)}}, Rational(0)};
    for (std::size_t s = 0; s < steps.size(); ++s) {
      w_expr.edges.push_back({steps[s], w[which[s]] - w[which[s] - 1]});
      x_expr.edges.push_back({steps[s], Rational(-static_cast<long>(bucket_len))});
    }
  }
  Layer out = make_layer(widths.back(), 2);
  put_row(out, 0, w_expr, Act::Id);
  put_row(out, 1, x_expr, Act::Id);
  net.layers.push_back(std::move(out));
  validate(net);
  return net;
}

Network bit_extract(int64_t b, int64_t d, int64_t r, const Rational& frac_cap) {
  if (b < 1 || d < 1 || r < 1 || r > 20) throw InvalidArgumentError("bit_extract: bad shape");
  if (frac_cap < 0 || frac_cap >= 1) throw InvalidArgumentError("bit_extract: frac_cap in [0,1)");
  const int64_t bits = b * d;
  const int64_t m = (bits + r - 1) / r;
  const int64_t pow_r = int64_t(1) << r;
  const std::size_t w1 = static_cast<std::size_t>(pow_r + r + 1);  // x, v, thresholds, positions
  const std::size_t w2 = static_cast<std::size_t>(r + 2);          // x, v, AND gates
  const Rational mu = (Rational(1) - frac_cap) / 2;

  Network net;
  net.input_dim = 2;
  LinExpr x_expr{{{0, Rational(1)}}, Rational(0)};
  LinExpr v_expr{{{1, Rational(1)}}, Rational(0)};

  for (int64_t g = 1; g <= m; ++g) {
    // first gadget layer: passes, window thresholds, bucket positions
    Layer h1 = make_layer(g == 1 ? 2 : w2, w1);
    put_row(h1, 0, x_expr, Act::Id);
    put_row(h1, 1, v_expr, Act::Id);
    for (int64_t k = 1; k < pow_r; ++k) {
      put_row(h1, static_cast<std::size_t>(1 + k), v_expr, Act::Step,
              -Rational(static_cast<long>(k)) * pow2(-static_cast<long>(g * r)));
    }
    std::vector<int64_t> bucket(r);
    for (int64_t i = 1; i <= r; ++i) {
      int64_t j = (g - 1) * r + i;  // global bit index
      bucket[i - 1] = (j - 1) / d;
      put_row(h1, static_cast<std::size_t>(pow_r + i), x_expr, Act::Step,
              Rational(-static_cast<long>(bucket[i - 1])));
    }
    densify(h1);
    net.layers.push_back(std::move(h1));

    // window bit i as a +-1 combination of the thresholds
    auto bit_combo = [&](int64_t i) {
      LinExpr e;
      for (int64_t k = 1; k < pow_r; ++k) {
        int eta = static_cast<int>((k >> (r - i)) & 1) -
                  static_cast<int>(((k - 1) >> (r - i)) & 1);
        if (eta != 0) e.edges.push_back({static_cast<std::size_t>(1 + k), Rational(eta)});
      }
      return e;
    };

    // second gadget layer: passes + one AND gate per window bit
    Layer h2 = make_layer(w1, w2);
    put_row(h2, 0, LinExpr{{{0, Rational(1)}}, Rational(0)}, Act::Id);
    LinExpr strip{{{1, Rational(1)}}, Rational(0)};
    for (int64_t i = 1; i <= r; ++i) {
      int64_t j = (g - 1) * r + i;
      Rational scale = pow2(-static_cast<long>(j));
      for (const auto& [c, v] : bit_combo(i).edges) {
        strip.edges.push_back({c, -v * scale});
      }
    }
    put_row(h2, 1, strip, Act::Id);
    for (int64_t i = 1; i <= r; ++i) {
      // fires iff window bit i is set, x >= bucket, and x stays below the
      // next bucket with margin mu (tested linearly against x itself)
      LinExpr gate = bit_combo(i);
      gate.edges.push_back({static_cast<std::size_t>(pow_r + i), Rational(1)});
      Rational inv = Rational(1) / Rational(static_cast<long>(2 * b));
      gate.edges.push_back({0, -inv});
      gate.bias = (Rational(static_cast<long>(bucket[i - 1] + 1)) - mu) * inv - 2;
      put_row(h2, static_cast<std::size_t>(1 + i), gate, Act::Step);
    }
    densify(h2);
    net.layers.push_back(std::move(h2));

    // virtual state over h2: x at 0, v = stripped v plus freshly placed bits
    x_expr = {{{0, Rational(1)}}, Rational(0)};
    v_expr = {{{1, Rational(1)}}, Rational(0)};
    for (int64_t i = 1; i <= r; ++i) {
      int64_t j = (g - 1) * r + i;
      long pos = static_cast<long>(m * r + (j - 1) % d + 1);
      v_expr.edges.push_back({static_cast<std::size_t>(1 + i), pow2(-pos)});
    }
  }

  Layer out = make_layer(w2, 1);
  Rational scale = pow2(static_cast<long>(m * r + d));
  LinExpr final_expr;
  final_expr.bias = v_expr.bias * scale;
  for (const auto& [c, v] : v_expr.edges) final_expr.edges.push_back({c, v * scale});
  put_row(out, 0, final_expr, Act::Id);
  net.layers.push_back(std::move(out));
  validate(net);
  return net;
}

Network bit_extract_width3(int64_t b, int64_t d) {
  if (b < 1 || d < 1) throw InvalidArgumentError("bit_extract_width3: bad shape");
  const int64_t bits = b * d;
  Network net;
  net.input_dim = 2;
  LinExpr x_expr{{{0, Rational(1)}}, Rational(0)};
  LinExpr w_expr{{{1, Rational(1)}}, Rational(0)};
  std::size_t in_dim = 2;

  auto push = [&](Layer l) {
    net.layers.push_back(std::move(l));
    in_dim = 3;
  };

  for (int64_t l = 1; l <= bits; ++l) {
    if ((l - 1) % d == 0) {
      // advance to the next bucket; one wrap jump keeps x positive after
      // the target bucket has passed
      Layer h = make_layer(in_dim, 3);
      put_row(h, 0, x_expr, Act::Id);
      put_row(h, 1, w_expr, Act::Id);
      put_row(h, 2, x_expr, Act::Step);
      push(std::move(h));
      x_expr = {{{0, Rational(1)}, {2, Rational(-3 * b)}},
                Rational(static_cast<long>(3 * b - 1))};
      w_expr = {{{1, Rational(1)}}, Rational(0)};
    }
    // strip bit l from w and expose it
    Layer g = make_layer(in_dim, 3);
    put_row(g, 0, x_expr, Act::Id);
    put_row(g, 1, w_expr, Act::Id);
    put_row(g, 2, w_expr, Act::Step, -pow2(-static_cast<long>(l)));
    push(std::move(g));
    x_expr = {{{0, Rational(1)}}, Rational(0)};
    w_expr = {{{1, Rational(1)}, {2, -pow2(-static_cast<long>(l))}}, Rational(0)};

    // deposit the bit iff the current bucket is the target (x in [-1, 0))
    Layer f = make_layer(in_dim, 3);
    put_row(f, 0, x_expr, Act::Id);
    put_row(f, 1, w_expr, Act::Id);
    LinExpr gate = x_expr;
    gate.edges.push_back({2, Rational(-1)});
    gate.bias += 1;  // Step(x - n + 1) == 0 exactly when x - n < -1
    put_row(f, 2, gate, Act::Step);
    push(std::move(f));
    long pos = static_cast<long>(bits + (l - 1) % d + 1);
    x_expr = {{{0, Rational(1)}}, Rational(0)};
    w_expr = {{{1, Rational(1)}, {2, -pow2(-pos)}}, pow2(-pos)};
  }

  Layer out = make_layer(3, 1);
  Rational scale = pow2(static_cast<long>(bits + d));
  LinExpr final_expr;
  final_expr.bias = w_expr.bias * scale;
  for (const auto& [c, v] : w_expr.edges) final_expr.edges.push_back({c, v * scale});
  put_row(out, 0, final_expr, Act::Id);
  net.layers.push_back(std::move(out));
  validate(net);
  return net;
}

Network learning_block(const std::vector<Rational>& w, int64_t bucket_len,
                       int64_t d, int64_t r, const Rational& frac_cap) {
  const std::size_t a = w.size();
  if (a == 0 || bucket_len <= 0) throw InvalidArgumentError("learning_block: bad shape");
  Network net;
  net.input_dim = 1;

  // bucket front: A-1 bucket thresholds plus the x pass, then the
  // width-2 interface (x mod B, w_bucket) feeding the extraction
  Layer front = make_layer(1, a);
  for (std::size_t i = 1; i < a; ++i) {
    front.acts[i - 1] = Act::Step;
    set_weight(front, i - 1, 0, Rational(1));
    front.biases[i - 1] = Rational(-static_cast<long>(i) * static_cast<long>(bucket_len));
  }
  set_weight(front, a - 1, 0, Rational(1));  // Id x in the last slot
  net.layers.push_back(std::move(front));

  Layer pair = make_layer(a, 2);
  set_weight(pair, 0, a - 1, Rational(1));  // x mod B
  for (std::size_t i = 1; i < a; ++i) {
    set_weight(pair, 0, i - 1, Rational(-static_cast<long>(bucket_len)));
  }
  pair.biases[1] = w[0];
  for (std::size_t i = 1; i < a; ++i) {
    set_weight(pair, 1, i - 1, w[i] - w[i - 1]);
  }
  net.layers.push_back(std::move(pair));

  Network bx = bit_extract(bucket_len, d, r, frac_cap);
  net.layers.insert(net.layers.end(), bx.layers.begin(), bx.layers.end());
  validate(net);
  return net;
}

MemorizeResult memorize_block(const ScalarizedDataset& sd, double p,
                              MemorizeMode mode) {
  const int64_t k = to_i64(sd.bound);
  const int64_t n = static_cast<int64_t>(sd.size());
  if (n == 0) throw InvalidArgumentError("memorize_block: empty dataset");
  MemorizeResult res;
  if (sd.num_classes <= 1) {
    res.segment.input_dim = 1;
    res.segment.layers.push_back(make_layer(1, 1));
    return res;
  }
  res.d = std::max<int64_t>(
      1, static_cast<int64_t>(std::ceil(std::log2(static_cast<double>(sd.num_classes)))));

  if (mode == MemorizeMode::Gadget) {
    res.a = std::max<int64_t>(1, static_cast<int64_t>(
        std::ceil(std::pow(static_cast<double>(k), p))));
    res.a = std::min(res.a, k);
    res.b = (k + res.a - 1) / res.a;
    res.r = std::max<int64_t>(1, std::llround(
        1.0 + (p - 0.5) * std::log2(static_cast<double>(std::max<int64_t>(k, 2)))));
    res.r = std::min<int64_t>(res.r, 20);
  } else {
    res.b = std::max<int64_t>(1, static_cast<int64_t>(
        std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0))));
    res.b = std::min(res.b, k);
    res.a = (k + res.b - 1) / res.b;
    res.r = 0;
  }

  // slot labels: bucket floor(x/B), slot floor(x) mod B
  std::vector<std::vector<int64_t>> slot_labels(
      static_cast<std::size_t>(res.a),
      std::vector<int64_t>(static_cast<std::size_t>(res.b), 0));
  const auto fl = floors(sd);
  for (std::size_t i = 0; i < fl.size(); ++i) {
    int64_t bucket = fl[i] / res.b;
    int64_t slot = fl[i] % res.b;
    slot_labels[static_cast<std::size_t>(bucket)][static_cast<std::size_t>(slot)] =
        sd.labels[i];
  }
  std::vector<Rational> w;
  w.reserve(slot_labels.size());
  for (const auto& sl : slot_labels) {
    w.push_back(encode_labels(sl, static_cast<std::size_t>(res.d)));
  }

  // bucket tests compare x against integers with a data-derived margin
  Rational frac_cap(1, 2);
  for (const auto& v : sd.values) {
    Rational f = v - Rational(floor_int(v));
    if (f > frac_cap) frac_cap = f;
  }

  if (mode == MemorizeMode::Gadget) {
    res.segment = learning_block(w, res.b, res.d, res.r, frac_cap);
  } else {
    std::vector<std::size_t> widths;
    if (w.size() >= 2) widths.assign(w.size() - 1, 3);
    else widths.assign(1, 2);
    Network pe = param_extract_layers(w, res.b, widths);
    // swap (w, x) to the (x, w) order the extractor expects
    Network swap;
    swap.input_dim = 2;
    Layer sl = make_layer(2, 2);
    set_weight(sl, 0, 1, Rational(1));
    set_weight(sl, 1, 0, Rational(1));
    swap.layers.push_back(std::move(sl));
    res.segment = concat(concat(pe, swap), bit_extract_width3(res.b, res.d));
  }
  return res;
}

}  // namespace memnet
