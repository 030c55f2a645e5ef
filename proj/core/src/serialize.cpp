#include "memnet/serialize.hpp"

#include <json.hpp>

#include "memnet/errors.hpp"

namespace memnet {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

static std::string act_tag(const Network& n, Act a) {
  if (a == Act::Sigma) return "sigma:" + sigma_name(n.sigma_kind);
  return act_name(a);
}

std::string to_json(const Network& n, const std::string& meta_json) {
  validate(n);
  ordered doc;
  doc["input_dim"] = n.input_dim;
  doc["layers"] = ordered::array();
  for (const auto& l : n.layers) {
    ordered jl;
    jl["in_dim"] = l.in_dim;
    jl["out_dim"] = l.out_dim;
    jl["weights"] = ordered::array();
    for (const auto& e : l.weights) {
      jl["weights"].push_back({e.row, e.col, to_ratio_string(e.value)});
    }
    jl["biases"] = ordered::array();
    for (const auto& b : l.biases) jl["biases"].push_back(to_ratio_string(b));
    jl["activations"] = ordered::array();
    for (Act a : l.acts) jl["activations"].push_back(act_tag(n, a));
    doc["layers"].push_back(std::move(jl));
  }
  doc["meta"] = ordered::parse(meta_json);
  return doc.dump();
}

Network network_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("bad JSON: ") + e.what());
  }
  Network n;
  try {
    n.input_dim = doc.at("input_dim").get<std::size_t>();
    bool sigma_seen = false;
    for (const auto& jl : doc.at("layers")) {
      Layer l = make_layer(jl.at("in_dim").get<std::size_t>(),
                           jl.at("out_dim").get<std::size_t>());
      for (const auto& je : jl.at("weights")) {
        set_weight(l, je.at(0).get<std::size_t>(), je.at(1).get<std::size_t>(),
                   parse_ratio(je.at(2).get<std::string>()));
      }
      const auto& jb = jl.at("biases");
      const auto& ja = jl.at("activations");
      if (jb.size() != l.out_dim || ja.size() != l.out_dim) {
        throw InvalidArgumentError("bias/activation arity mismatch");
      }
      for (std::size_t i = 0; i < l.out_dim; ++i) {
        l.biases[i] = parse_ratio(jb[i].get<std::string>());
        std::string tag = ja[i].get<std::string>();
        if (tag == "step") {
          l.acts[i] = Act::Step;
        } else if (tag == "id") {
          l.acts[i] = Act::Id;
        } else if (tag.rfind("sigma:", 0) == 0) {
          l.acts[i] = Act::Sigma;
          std::string kind = tag.substr(6);
          SigmaKind k;
          if (kind == "logistic") k = SigmaKind::Logistic;
          else if (kind == "tanh") k = SigmaKind::Tanh;
          else if (kind == "hard_tanh") k = SigmaKind::HardTanh;
          else throw InvalidArgumentError("unknown sigma kind: " + kind);
          if (sigma_seen && k != n.sigma_kind) {
            throw InvalidArgumentError("mixed sigma kinds in one network");
          }
          n.sigma_kind = k;
          sigma_seen = true;
        } else {
          throw InvalidArgumentError("unknown activation: " + tag);
        }
      }
      n.layers.push_back(std::move(l));
    }
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("bad network document: ") + e.what());
  }
  validate(n);
  return n;
}

std::string meta_from_json(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (doc.contains("meta")) return doc["meta"].dump();
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("bad JSON: ") + e.what());
  }
  return "{}";
}

}  // namespace memnet
