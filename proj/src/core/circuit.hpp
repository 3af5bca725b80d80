#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/assignment.hpp"

namespace majcirc {

/// Identifies a gate by its layer (1-based) and its 1-based position in that layer.
struct GateId {
  std::uint32_t layer = 0;
  std::uint32_t id = 0;

  friend bool operator==(GateId, GateId) = default;
  friend auto operator<=>(GateId, GateId) = default;
};

/// Reference to a gate input: a variable x_id (layer 0) or gate g<layer>:<id>.
struct Ref {
  std::uint32_t layer = 0;
  std::uint32_t id = 0;

  static constexpr Ref var(std::uint32_t i) noexcept { return {0, i}; }
  static constexpr Ref gate(GateId g) noexcept { return {g.layer, g.id}; }
  static constexpr Ref gate(std::uint32_t layer, std::uint32_t id) noexcept { return {layer, id}; }

  bool is_variable() const noexcept { return layer == 0; }

  friend bool operator==(Ref, Ref) = default;
  friend auto operator<=>(Ref, Ref) = default;
};

struct WeightedInput {
  Ref ref;
  std::int64_t weight = 1;

  friend bool operator==(const WeightedInput&, const WeightedInput&) = default;
};

/// [sum weight_i * in_i >= theta] with positive integer weights.
struct ThresholdGate {
  std::vector<WeightedInput> inputs;
  std::int64_t theta = 0;

  /// Sum of weights (the gate's fan-in in the weighted model).
  std::int64_t fan_in() const;

  friend bool operator==(const ThresholdGate&, const ThresholdGate&) = default;
};

/// Standard majority over the given inputs: theta = ceil(fan-in / 2).
ThresholdGate standard_gate(std::vector<WeightedInput> inputs);

/// Least integer >= fan_in / 2.
inline constexpr std::int64_t standard_threshold(std::int64_t fan_in) noexcept {
  return fan_in >= 0 ? (fan_in + 1) / 2 : -((-fan_in) / 2);
}

struct StandardMajoritySpec {
  ThresholdGate gate;
  bool is_standard = false;
};

StandardMajoritySpec classify(const ThresholdGate& gate);
inline bool is_standard_majority(const ThresholdGate& g) { return g.theta == standard_threshold(g.fan_in()); }

/// Index space of the values feeding a gate: values[id - 1] is the input
/// with that id in the layer below.
std::int64_t gate_diff(const ThresholdGate& gate, std::span<const std::uint8_t> values);
bool eval_gate(const ThresholdGate& gate, std::span<const std::uint8_t> values);

class Evaluator;

/// Layered DAG of threshold gates, depth 1..3, every gate's fan-in bounded by k.
/// Immutable; construction validates every structural invariant.
class LayeredCircuit {
 public:
  static constexpr std::uint32_t kMaxDepth = 3;

  LayeredCircuit(std::uint32_t n, std::int64_t k, std::vector<std::vector<ThresholdGate>> layers, GateId top);

  std::uint32_t n() const noexcept { return n_; }
  std::int64_t k() const noexcept { return k_; }
  std::uint32_t depth() const noexcept { return static_cast<std::uint32_t>(layers_.size()); }
  GateId top() const noexcept { return top_; }
  const std::vector<std::vector<ThresholdGate>>& layers() const noexcept { return layers_; }
  const std::vector<ThresholdGate>& layer(std::uint32_t l) const { return layers_.at(l - 1); }
  const ThresholdGate& gate(GateId g) const { return layers_.at(g.layer - 1).at(g.id - 1); }
  const ThresholdGate& top_gate() const { return gate(top_); }
  std::size_t gate_count() const noexcept;

  const Evaluator& evaluator() const noexcept { return *evaluator_; }

  friend bool operator==(const LayeredCircuit& a, const LayeredCircuit& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.layers_ == b.layers_ && a.top_ == b.top_;
  }

 private:
  std::uint32_t n_;
  std::int64_t k_;
  std::vector<std::vector<ThresholdGate>> layers_;
  GateId top_;
  std::shared_ptr<const Evaluator> evaluator_;
};

bool eval_circuit(const LayeredCircuit& c, const Assignment& a);

/// Outputs of every layer on `a`: result[l-1][id-1] is gate g<l>:<id>.
std::vector<std::vector<std::uint8_t>> eval_layers(const LayeredCircuit& c, const Assignment& a);

struct CircuitInfo {
  std::uint32_t n = 0;
  std::int64_t declared_k = 0;
  std::int64_t max_fan_in = 0;   // the k actually used
  std::uint32_t depth = 0;
  std::size_t gate_count = 0;
  std::int64_t max_weight = 0;   // W: largest single input weight
  bool all_standard = false;
};

CircuitInfo inspect(const LayeredCircuit& c);

std::string serialize(const LayeredCircuit& c);
LayeredCircuit parse(std::string_view text);

}  // namespace majcirc
