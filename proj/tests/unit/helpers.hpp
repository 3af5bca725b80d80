#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "core/assignment.hpp"
#include "core/circuit.hpp"

namespace testing {

/// Random layered circuit with positive weights and fan-in <= k.
inline majcirc::LayeredCircuit random_circuit(std::mt19937_64& rng, std::uint32_t n, std::int64_t k, std::uint32_t depth) {
  std::vector<std::vector<majcirc::ThresholdGate>> layers;
  std::uint32_t below = n;
  for (std::uint32_t l = 1; l <= depth; ++l) {
    const std::uint32_t count = l == depth ? 1 : 1 + static_cast<std::uint32_t>(rng() % 5);
    std::vector<majcirc::ThresholdGate> gates;
    for (std::uint32_t g = 0; g < count; ++g) {
      majcirc::ThresholdGate gate;
      std::vector<std::uint32_t> ids(below);
      for (std::uint32_t i = 0; i < below; ++i) ids[i] = i + 1;
      std::shuffle(ids.begin(), ids.end(), rng);
      std::int64_t budget = k;
      const std::uint32_t want = 1 + static_cast<std::uint32_t>(rng() % std::min<std::uint64_t>(below, k));
      for (std::uint32_t j = 0; j < want && budget > 0; ++j) {
        const std::int64_t w = 1 + static_cast<std::int64_t>(rng() % std::min<std::int64_t>(budget, 3));
        budget -= w;
        gate.inputs.push_back({l == 1 ? majcirc::Ref::var(ids[j]) : majcirc::Ref::gate(l - 1, ids[j]), w});
      }
      std::int64_t total = 0;
      for (const auto& in : gate.inputs) total += in.weight;
      gate.theta = static_cast<std::int64_t>(rng() % (total + 2));
      gates.push_back(std::move(gate));
    }
    below = count;
    layers.push_back(std::move(gates));
  }
  return majcirc::LayeredCircuit(n, k, std::move(layers), {depth, 1});
}

/// Gate-by-gate evaluation straight from the definition.
inline bool naive_eval(const majcirc::LayeredCircuit& c, std::uint64_t x) {
  std::vector<std::vector<int>> values;
  for (std::uint32_t l = 1; l <= c.depth(); ++l) {
    std::vector<int> out;
    for (const auto& g : c.layer(l)) {
      std::int64_t sum = 0;
      for (const auto& in : g.inputs) {
        const int v = in.ref.is_variable() ? static_cast<int>((x >> (in.ref.id - 1)) & 1U) : values[in.ref.layer - 1][in.ref.id - 1];
        sum += v * in.weight;
      }
      out.push_back(sum >= g.theta ? 1 : 0);
    }
    values.push_back(std::move(out));
  }
  return values[c.top().layer - 1][c.top().id - 1] != 0;
}

inline majcirc::Assignment from_mask(std::uint32_t n, std::uint64_t x) {
  std::vector<std::uint8_t> bits(n);
  for (std::uint32_t i = 0; i < n; ++i) bits[i] = (x >> i) & 1U;
  return majcirc::Assignment::from_bits(bits);
}

inline bool maj(std::uint64_t x, std::uint32_t n) { return 2 * static_cast<std::uint32_t>(std::popcount(x)) >= n; }

}  // namespace testing
