#include "core/circuit.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "core/error.hpp"
#include "core/evaluator.hpp"

namespace majcirc {

namespace {

std::string gate_name(std::uint32_t layer, std::uint32_t id) {
  return "g" + std::to_string(layer) + ":" + std::to_string(id);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::structure, "integer overflow in weight sum");
  return r;
}

std::int64_t weighted_sum(const ThresholdGate& gate, std::span<const std::uint8_t> values) {
  std::int64_t sum = 0;
  for (const auto& in : gate.inputs) {
    if (in.ref.id < 1 || in.ref.id > values.size())
      throw Error(ErrorKind::structure, "gate input reference " + std::to_string(in.ref.id) + " is not resolvable");
    if (values[in.ref.id - 1]) sum = checked_add(sum, in.weight);
  }
  return sum;
}

}  // namespace

std::int64_t ThresholdGate::fan_in() const {
  std::int64_t total = 0;
  for (const auto& in : inputs) total = checked_add(total, in.weight);
  return total;
}

ThresholdGate standard_gate(std::vector<WeightedInput> inputs) {
  ThresholdGate g{std::move(inputs), 0};
  g.theta = standard_threshold(g.fan_in());
  return g;
}

StandardMajoritySpec classify(const ThresholdGate& gate) { return {gate, is_standard_majority(gate)}; }

std::int64_t gate_diff(const ThresholdGate& gate, std::span<const std::uint8_t> values) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(weighted_sum(gate, values), gate.theta, &r))
    throw Error(ErrorKind::structure, "integer overflow in gate difference");
  return r;
}

bool eval_gate(const ThresholdGate& gate, std::span<const std::uint8_t> values) {
  return weighted_sum(gate, values) >= gate.theta;
}

LayeredCircuit::LayeredCircuit(std::uint32_t n, std::int64_t k, std::vector<std::vector<ThresholdGate>> layers,
                               GateId top)
    : n_(n), k_(k), layers_(std::move(layers)), top_(top) {
  if (n_ < 1) throw Error(ErrorKind::structure, "circuit needs at least one input");
  if (k_ < 1) throw Error(ErrorKind::structure, "fan-in bound k must be positive");
  if (layers_.empty() || layers_.size() > kMaxDepth)
    throw Error(ErrorKind::structure, "depth must be between 1 and 3, got " + std::to_string(layers_.size()));

  std::size_t below = n_;
  for (std::uint32_t l = 1; l <= layers_.size(); ++l) {
    const auto& gates = layers_[l - 1];
    if (gates.empty()) throw Error(ErrorKind::structure, "layer " + std::to_string(l) + " has no gates");
    for (std::uint32_t id = 1; id <= gates.size(); ++id) {
      const ThresholdGate& g = gates[id - 1];
      std::set<Ref> refs;
      for (const auto& in : g.inputs) {
        if (in.weight < 1)
          throw Error(ErrorKind::structure, gate_name(l, id) + ": weights must be positive (the model is monotone)");
        if (in.ref.layer != l - 1)
          throw Error(ErrorKind::structure, gate_name(l, id) + ": inputs must come from the layer directly below");
        if (in.ref.id < 1 || in.ref.id > below)
          throw Error(ErrorKind::structure, gate_name(l, id) + ": dangling reference");
        if (!refs.insert(in.ref).second)
          throw Error(ErrorKind::structure, gate_name(l, id) + ": duplicated input reference");
      }
      if (g.fan_in() > k_)
        throw Error(ErrorKind::structure, gate_name(l, id) + ": fan-in " + std::to_string(g.fan_in()) +
                                              " exceeds k = " + std::to_string(k_));
    }
    below = gates.size();
  }
  if (top_.layer != layers_.size() || top_.id < 1 || top_.id > layers_.back().size())
    throw Error(ErrorKind::structure, "top gate must exist in the last layer");

  evaluator_ = std::make_shared<const Evaluator>(*this);
}

std::size_t LayeredCircuit::gate_count() const noexcept {
  std::size_t count = 0;
  for (const auto& l : layers_) count += l.size();
  return count;
}

bool eval_circuit(const LayeredCircuit& c, const Assignment& a) {
  if (a.n() != c.n())
    throw Error(ErrorKind::invalid_argument,
                "assignment has " + std::to_string(a.n()) + " bits, circuit expects " + std::to_string(c.n()));
  auto scratch = c.evaluator().make_scratch();
  return c.evaluator().eval(a.words(), scratch);
}

std::vector<std::vector<std::uint8_t>> eval_layers(const LayeredCircuit& c, const Assignment& a) {
  if (a.n() != c.n()) throw Error(ErrorKind::invalid_argument, "assignment length does not match circuit");
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> values = a.to_bits();
  for (const auto& gates : c.layers()) {
    std::vector<std::uint8_t> next(gates.size());
    for (std::size_t g = 0; g < gates.size(); ++g) next[g] = eval_gate(gates[g], values) ? 1 : 0;
    out.push_back(next);
    values = std::move(next);
  }
  return out;
}

CircuitInfo inspect(const LayeredCircuit& c) {
  CircuitInfo info;
  info.n = c.n();
  info.declared_k = c.k();
  info.depth = c.depth();
  info.gate_count = c.gate_count();
  info.all_standard = true;
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      info.max_fan_in = std::max(info.max_fan_in, g.fan_in());
      for (const auto& in : g.inputs) info.max_weight = std::max(info.max_weight, in.weight);
      info.all_standard = info.all_standard && is_standard_majority(g);
    }
  }
  return info;
}

}  // namespace majcirc
