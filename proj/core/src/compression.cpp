#include "memnet/compression.hpp"

#include <algorithm>
#include <set>

#include "memnet/errors.hpp"

namespace memnet {

namespace {

using std::int64_t;

int64_t bound_i64(const ScalarizedDataset& sd) { return to_i64(sd.bound); }

// Smallest b in [0, T) such that (f + b) mod T avoids `occupied` for all
// floors f in `block`.
int64_t find_offset(const std::vector<int64_t>& block,
                    const std::set<int64_t>& occupied, int64_t t) {
  for (int64_t b = 0; b < t; ++b) {
    bool ok = true;
    for (int64_t f : block) {
      if (occupied.count((f + b) % t)) {
        ok = false;
        break;
      }
    }
    if (ok) return b;
  }
  throw CompressionInfeasibleError("no collision-free offset exists");
}

ScalarizedDataset strip_affine(const ScalarizedDataset& sd) {
  ScalarizedDataset out;
  out.labels = sd.labels;
  out.num_classes = sd.num_classes;
  out.values = sd.values;
  out.bound = sd.bound;
  return out;
}

CompressStep identity_step(const ScalarizedDataset& sd) {
  CompressStep st;
  st.fragment = identity_network(1);
  st.out = strip_affine(sd);
  st.t = sd.bound;
  st.identity = true;
  return st;
}

// x -> (x + b) mod T for a value with known integer part.
Rational fold_value(const Rational& v, int64_t f, int64_t b, int64_t t) {
  int64_t wraps = (f + b) / t;
  return v + Rational(static_cast<long>(b)) - Rational(static_cast<long>(wraps * t));
}

struct Indicator {
  int64_t threshold;
  Rational coef;
};

// Spreads `ind` indicators of the original input x over hidden layers of
// the given widths; each layer passes (x, acc) through, the last layer
// may drop the x pass to host one extra indicator.  Empty widths =
// budget mode: one wide layer plus a width-1 bypass.
Network emit_indicator_fragment(const std::vector<Indicator>& ind,
                                std::vector<std::size_t> widths) {
  Network frag;
  frag.input_dim = 1;
  if (widths.empty()) {
    widths = {ind.size() + 1, 1};
    // wide layer: [Id x, all steps]; bypass layer folds the combination.
    Layer wide = make_layer(1, ind.size() + 1);
    set_weight(wide, 0, 0, Rational(1));
    for (std::size_t i = 0; i < ind.size(); ++i) {
      wide.acts[i + 1] = Act::Step;
      set_weight(wide, i + 1, 0, Rational(1));
      wide.biases[i + 1] = Rational(-static_cast<long>(ind[i].threshold));
    }
    Layer bypass = make_layer(wide.out_dim, 1);
    set_weight(bypass, 0, 0, Rational(1));
    for (std::size_t i = 0; i < ind.size(); ++i) {
      if (ind[i].coef != 0) set_weight(bypass, 0, i + 1, ind[i].coef);
    }
    Layer out = make_layer(1, 1);
    set_weight(out, 0, 0, Rational(1));
    frag.layers = {std::move(wide), std::move(bypass), std::move(out)};
    validate(frag);
    return frag;
  }

  // Width-constrained mode.  Slot capacity check: the last layer can
  // trade its x pass for one more indicator.
  std::size_t slots = 0;
  for (std::size_t l = 0; l < widths.size(); ++l) {
    if (widths[l] < 2) throw ArchitectureError("squeeze layer width must be >= 2");
    slots += widths[l] - 2;
  }
  slots += 1;  // last layer's x slot
  if (slots < ind.size()) throw ArchitectureError("not enough indicator slots");

  std::size_t next = 0;  // next indicator to place
  std::size_t prev_dim = 1, prev_x = 0, prev_acc = 0;
  bool have_acc = false;
  std::vector<std::size_t> prev_steps;   // neuron index per placed step
  std::vector<std::size_t> prev_which;   // indicator index per placed step
  for (std::size_t l = 0; l < widths.size(); ++l) {
    const bool last = (l + 1 == widths.size());
    std::size_t cap = widths[l] - 2 + (last ? 1 : 0);
    std::size_t take = std::min(cap, ind.size() - next);
    const bool keep_x = !(last && take == widths[l] - 1);

    Layer layer = make_layer(prev_dim, widths[l]);
    std::size_t idx = 0;
    std::size_t x_pos = 0, acc_pos = 0;
    if (keep_x) {
      x_pos = idx++;
      set_weight(layer, x_pos, prev_x, Rational(1));
    }
    acc_pos = idx++;
    // acc carries x plus all folded contributions so far
    set_weight(layer, acc_pos, have_acc ? prev_acc : prev_x, Rational(1));
    for (std::size_t s = 0; s < prev_steps.size(); ++s) {
      set_weight(layer, acc_pos, prev_steps[s], ind[prev_which[s]].coef);
    }
    std::vector<std::size_t> steps, which;
    for (std::size_t k = 0; k < take; ++k, ++next) {
      std::size_t pos = idx++;
      layer.acts[pos] = Act::Step;
      set_weight(layer, pos, prev_x, Rational(1));
      layer.biases[pos] = Rational(-static_cast<long>(ind[next].threshold));
      steps.push_back(pos);
      which.push_back(next);
    }
    while (idx < widths[l]) {
      // width padding: constant Step neuron, not connected onward
      layer.acts[idx] = Act::Step;
      ++idx;
    }
    frag.layers.push_back(std::move(layer));
    prev_dim = widths[l];
    prev_x = x_pos;
    prev_acc = acc_pos;
    have_acc = true;
    prev_steps = std::move(steps);
    prev_which = std::move(which);
  }
  Layer out = make_layer(prev_dim, 1);
  set_weight(out, 0, prev_acc, Rational(1));
  for (std::size_t s = 0; s < prev_steps.size(); ++s) {
    set_weight(out, 0, prev_steps[s], ind[prev_which[s]].coef);
  }
  frag.layers.push_back(std::move(out));
  validate(frag);
  return frag;
}

}  // namespace

CompressStep halve_step(const ScalarizedDataset& sd, std::size_t d) {
  if (d < 3) throw ArchitectureError("halve_step: width must be >= 3");
  const int64_t n = static_cast<int64_t>(sd.size());
  const int64_t k = bound_i64(sd);
  const int64_t pieces = static_cast<int64_t>((d + 1) / 2);
  const int64_t floor_cap = n * n / 4 + 1;
  const int64_t t = std::max((k + pieces - 1) / pieces, floor_cap);
  if (k <= t) return identity_step(sd);

  const auto fl = floors(sd);
  const int64_t num_chunks = (k + t - 1) / t - 1;

  std::set<int64_t> occupied;
  std::vector<std::vector<std::size_t>> chunk_points(num_chunks + 1);
  for (std::size_t i = 0; i < fl.size(); ++i) {
    int64_t c = fl[i] / t;
    chunk_points[c].push_back(i);
    if (c == 0) occupied.insert(fl[i]);
  }

  CompressStep st;
  st.t = t;
  st.out = strip_affine(sd);
  st.out.bound = t;
  std::vector<Indicator> ind;
  for (int64_t c = 1; c <= num_chunks; ++c) {
    std::vector<int64_t> block;
    for (std::size_t i : chunk_points[c]) block.push_back(fl[i]);
    int64_t b = find_offset(block, occupied, t);
    st.offsets.push_back(Int(static_cast<long>(b)));
    for (std::size_t i : chunk_points[c]) {
      occupied.insert((fl[i] + b) % t);
      st.out.values[i] = fold_value(sd.values[i], fl[i], b, t);
    }
    // x -> x + b_c - cT - T*[x + b_c >= (c+1)T] on chunk c; telescoped
    // lower coefficient is b_c - b_{c-1} (minus T once, at c = 1).
    int64_t prev_b = (c == 1) ? 0 : to_i64(st.offsets[c - 2]);
    Rational lower_coef(static_cast<long>(b - prev_b - (c == 1 ? t : 0)));
    ind.push_back({c * t, lower_coef});
    ind.push_back({(c + 1) * t - b, Rational(-static_cast<long>(t))});
  }
  // one-hidden-layer form: [Id x, steps...] + output combination
  {
    Network frag;
    frag.input_dim = 1;
    Layer hidden = make_layer(1, 1 + ind.size());
    set_weight(hidden, 0, 0, Rational(1));
    for (std::size_t i = 0; i < ind.size(); ++i) {
      hidden.acts[i + 1] = Act::Step;
      set_weight(hidden, i + 1, 0, Rational(1));
      hidden.biases[i + 1] = Rational(-static_cast<long>(ind[i].threshold));
    }
    Layer out = make_layer(hidden.out_dim, 1);
    set_weight(out, 0, 0, Rational(1));
    for (std::size_t i = 0; i < ind.size(); ++i) {
      if (ind[i].coef != 0) set_weight(out, 0, i + 1, ind[i].coef);
    }
    frag.layers = {std::move(hidden), std::move(out)};
    validate(frag);
    st.fragment = std::move(frag);
  }
  return st;
}

CompressStep squeeze_step(const ScalarizedDataset& sd, std::size_t c_param,
                          const std::vector<std::size_t>& layer_widths) {
  if (c_param == 0) throw InvalidArgumentError("squeeze_step: C must be >= 1");
  const int64_t n = static_cast<int64_t>(sd.size());
  const int64_t k = bound_i64(sd);
  const int64_t c_req = static_cast<int64_t>(c_param);
  const int64_t cap = (n + c_req - 1) / c_req;
  const int64_t t = std::min(k, std::max(n * cap, (k + 1) / 2));
  if (t >= k) return identity_step(sd);

  // breakpoints T = M_1 < ... < M_{C'+1} = K, at most `cap` occupied
  // integer parts per block; degenerate narrow tails use fewer blocks.
  const int64_t c_eff = std::min(c_req, k - t);
  auto fl = floors(sd);
  std::vector<int64_t> upper;
  std::set<int64_t> occupied;
  for (int64_t f : fl) {
    if (f < t) occupied.insert(f);
    else upper.push_back(f);
  }
  std::sort(upper.begin(), upper.end());

  std::vector<int64_t> m(c_eff + 1);
  m[0] = t;
  {
    std::size_t used = 0;
    for (int64_t i = 1; i <= c_eff; ++i) {
      if (i == c_eff) {
        m[i] = k;
        break;
      }
      int64_t avail_end = k - (c_eff - i);
      std::size_t in_range = 0;
      while (used + in_range < upper.size() &&
             upper[used + in_range] < avail_end) {
        ++in_range;
      }
      int64_t cut;
      if (in_range > static_cast<std::size_t>(cap)) {
        cut = upper[used + cap];  // block keeps exactly `cap` floors
      } else {
        cut = avail_end;
      }
      cut = std::max(cut, m[i - 1] + 1);
      m[i] = std::min(cut, avail_end);
      while (used < upper.size() && upper[used] < m[i]) ++used;
    }
    m[c_eff] = k;
  }

  CompressStep st;
  st.t = t;
  st.out = strip_affine(sd);
  st.out.bound = t;
  std::vector<Indicator> ind;
  std::size_t used = 0;
  std::vector<int64_t> bs;
  for (int64_t i = 1; i <= c_eff; ++i) {
    std::vector<int64_t> block;
    while (used < upper.size() && upper[used] < m[i]) block.push_back(upper[used++]);
    if (block.size() > static_cast<std::size_t>(cap) && i < c_eff) {
      throw CompressionInfeasibleError("breakpoint assignment overflow");
    }
    int64_t b = find_offset(block, occupied, t);
    bs.push_back(b);
    st.offsets.push_back(Int(static_cast<long>(b)));
    for (std::size_t pi = 0; pi < fl.size(); ++pi) {
      if (fl[pi] >= m[i - 1] && fl[pi] < m[i]) {
        occupied.insert((fl[pi] + b) % t);
        st.out.values[pi] = fold_value(sd.values[pi], fl[pi], b, t);
      }
    }
    // lower indicator at M_i (coefficient telescoped, -2T absorbed at
    // i = 1); upper indicator at 2T - b_i clamped into [M_i, M_{i+1}]
    // so folds of other blocks can't trip it.
    int64_t prev_b = (i == 1) ? 0 : bs[i - 2];
    Rational lower_coef(static_cast<long>(b - prev_b + (i == 1 ? -t : t)));
    ind.push_back({m[i - 1], lower_coef});
    int64_t u = std::clamp(2 * t - b, m[i - 1], m[i]);
    ind.push_back({u, Rational(-static_cast<long>(t))});
  }
  st.fragment = emit_indicator_fragment(ind, layer_widths);
  return st;
}

CompressResult compress_chain(const ScalarizedDataset& sd, const Int& target,
                              CompressMode mode) {
  const int64_t n = static_cast<int64_t>(sd.size());
  const int64_t tgt = to_i64(target);
  if (tgt < n) throw InvalidTargetError("compression target below N");

  CompressResult res;
  res.fragment = identity_network(1);
  res.out = strip_affine(sd);
  const int64_t floor_cap = n * n / 4 + 1;

  while (bound_i64(res.out) > floor_cap && bound_i64(res.out) > tgt) {
    CompressStep st = halve_step(res.out, 3);
    if (st.identity) break;
    res.fragment = concat(res.fragment, st.fragment);
    res.out = std::move(st.out);
    ++res.halve_rounds;
  }
  while (bound_i64(res.out) > tgt) {
    int64_t k = bound_i64(res.out);
    int64_t c = (4 * n * n + k - 1) / k;
    std::vector<std::size_t> widths;
    if (mode == CompressMode::Width3) {
      // one useful indicator per width-3 layer; the last layer hosts two
      int64_t cap = (n + c - 1) / c;
      int64_t t = std::min(k, std::max(n * cap, (k + 1) / 2));
      int64_t c_eff = std::max<int64_t>(std::min(c, k - t), 1);
      widths.assign(static_cast<std::size_t>(std::max<int64_t>(2 * c_eff - 1, 1)), 3);
    }
    CompressStep st = squeeze_step(res.out, static_cast<std::size_t>(c), widths);
    if (st.identity) {
      throw CompressionInfeasibleError("squeeze made no progress toward target");
    }
    res.fragment = concat(res.fragment, st.fragment);
    res.out = std::move(st.out);
    ++res.squeeze_rounds;
    if (res.squeeze_rounds > 200) {
      throw CompressionInfeasibleError("squeeze did not converge");
    }
  }
  return res;
}

}  // namespace memnet
