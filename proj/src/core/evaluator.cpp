#include "core/evaluator.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace majcirc {

namespace {

using Signature = std::vector<std::pair<std::uint32_t, std::int64_t>>;

Signature signature_of(const ThresholdGate& g) {
  Signature s;
  s.reserve(g.inputs.size());
  for (const auto& in : g.inputs) s.emplace_back(in.ref.id - 1, in.weight);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

Evaluator::Evaluator(const LayeredCircuit& c) : n_(c.n()), top_index_(c.top().id - 1) {
  std::uint32_t width = c.n();
  for (const auto& gates : c.layers()) {
    CompiledLayer layer;
    layer.width_in = width;
    std::map<Signature, std::uint32_t> seen;
    for (const auto& g : gates) {
      Signature sig = signature_of(g);
      auto [it, inserted] = seen.try_emplace(sig, static_cast<std::uint32_t>(layer.groups.size()));
      if (inserted) {
        SumGroup group;
        std::map<std::int64_t, std::vector<std::uint32_t>> by_weight;
        for (auto [pos, w] : sig) by_weight[w].push_back(pos);
        std::size_t dense_cost = 0;
        std::vector<Term> terms;
        for (auto& [w, positions] : by_weight) {
          const std::uint32_t lo = positions.front() >> 6;
          const std::uint32_t hi = positions.back() >> 6;
          Term t{w, lo, std::vector<std::uint64_t>(hi - lo + 1, 0)};
          for (auto p : positions) t.mask[(p >> 6) - lo] |= std::uint64_t{1} << (p & 63);
          dense_cost += t.mask.size();
          terms.push_back(std::move(t));
        }
        if (dense_cost <= sig.size()) {
          group.dense = true;
          group.terms = std::move(terms);
        } else {
          for (auto [pos, w] : sig) {
            group.positions.push_back(pos);
            group.weights.push_back(w);
          }
        }
        layer.groups.push_back(std::move(group));
      }
      layer.gates.push_back({it->second, g.theta});
    }
    width = static_cast<std::uint32_t>(gates.size());
    layers_.push_back(std::move(layer));
  }
}

Evaluator::Scratch Evaluator::make_scratch() const {
  Scratch s;
  std::size_t max_groups = 0;
  for (const auto& l : layers_) {
    s.layer_words.emplace_back(words_for(static_cast<std::uint32_t>(l.gates.size())), 0);
    max_groups = std::max(max_groups, l.groups.size());
  }
  s.sums.resize(max_groups);
  return s;
}

bool Evaluator::eval(std::span<const std::uint64_t> input, Scratch& scratch) const {
  std::span<const std::uint64_t> values = input;
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    const CompiledLayer& layer = layers_[li];
    for (std::size_t gi = 0; gi < layer.groups.size(); ++gi) {
      const SumGroup& group = layer.groups[gi];
      std::int64_t sum = 0;
      if (group.dense) {
        for (const Term& t : group.terms) {
          std::int64_t count = 0;
          for (std::size_t w = 0; w < t.mask.size(); ++w) count += std::popcount(values[t.first_word + w] & t.mask[w]);
          sum += t.weight * count;
        }
      } else {
        for (std::size_t i = 0; i < group.positions.size(); ++i) {
          const std::uint32_t p = group.positions[i];
          if ((values[p >> 6] >> (p & 63)) & 1U) sum += group.weights[i];
        }
      }
      scratch.sums[gi] = sum;
    }
    auto& out = scratch.layer_words[li];
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t g = 0; g < layer.gates.size(); ++g) {
      if (scratch.sums[layer.gates[g].group] >= layer.gates[g].theta) out[g >> 6] |= std::uint64_t{1} << (g & 63);
    }
    values = out;
  }
  return (values[top_index_ >> 6] >> (top_index_ & 63)) & 1U;
}

}  // namespace majcirc
