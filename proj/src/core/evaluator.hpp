#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/circuit.hpp"

namespace majcirc {

/// Compiled form of a LayeredCircuit for repeated evaluation.
///
/// Layer values are kept as packed bit words. Gates sharing an identical
/// weighted input list share one weighted sum (the block and depth-3
/// constructions emit many thresholds over the same block). A sum is computed
/// either from a sparse index list or, when cheaper, as
/// sum_w w * popcount(values & mask_w) over a trimmed word range.
class Evaluator {
 public:
  struct Scratch {
    std::vector<std::vector<std::uint64_t>> layer_words;
    std::vector<std::int64_t> sums;
  };

  explicit Evaluator(const LayeredCircuit& c);

  Scratch make_scratch() const;

  /// Evaluates the top gate; `input` is the packed assignment (see Assignment::words).
  bool eval(std::span<const std::uint64_t> input, Scratch& scratch) const;

  /// Packed outputs of layer l (1-based) after the last eval on this scratch.
  std::span<const std::uint64_t> layer_output(const Scratch& scratch, std::uint32_t l) const {
    return scratch.layer_words[l - 1];
  }

  std::uint32_t n() const noexcept { return n_; }

 private:
  struct Term {
    std::int64_t weight;
    std::uint32_t first_word;
    std::vector<std::uint64_t> mask;
  };
  struct SumGroup {
    bool dense = false;
    std::vector<Term> terms;                  // dense form
    std::vector<std::uint32_t> positions;     // sparse form
    std::vector<std::int64_t> weights;
  };
  struct CompiledGate {
    std::uint32_t group;
    std::int64_t theta;
  };
  struct CompiledLayer {
    std::uint32_t width_in = 0;
    std::vector<SumGroup> groups;
    std::vector<CompiledGate> gates;
  };

  std::uint32_t n_;
  std::uint32_t top_index_;
  std::vector<CompiledLayer> layers_;
};

}  // namespace majcirc
