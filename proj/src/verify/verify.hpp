#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/assignment.hpp"
#include "core/circuit.hpp"

namespace majcirc::verify {

enum class Mode { exhaustive, layer, sample };

/// Error counts of a circuit against MAJ_n, stratified by input weight.
/// Partial reports over disjoint input sets merge with merge(); the merge is
/// associative and commutative.
struct VerificationReport {
  Mode mode = Mode::exhaustive;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> layers;   // weights checked (layer mode, layered sampling)
  std::uint64_t sample_count = 0;      // requested samples (per layer when layered)
  std::uint64_t seed = 0;
  std::uint64_t total_checked = 0;
  std::uint64_t errors = 0;
  std::map<std::uint32_t, std::uint64_t> checked_by_weight;
  std::map<std::uint32_t, std::uint64_t> errors_by_weight;
  std::optional<double> ci_halfwidth;
  std::optional<double> delta;

  void record(std::uint32_t weight, bool error);
  void merge(const VerificationReport& other);

  /// 1 - errors / total_checked, reduced; {1, 1} when nothing was checked.
  std::pair<std::uint64_t, std::uint64_t> agreement() const;
  double agreement_value() const;
  double error_fraction(std::uint32_t weight) const;

  /// Stable-key-order structured text.
  std::string to_json() const;
  /// weight,checked,errors
  std::string to_csv() const;
};

struct VerifyOptions {
  unsigned workers = 1;
  std::uint32_t exhaustive_bit_cap = 30;
  std::uint64_t layer_cap = 100'000'000;
  double delta = 0.01;
};

/// Chunk size of the exhaustive enumeration (ascending integer order, x_1 most significant).
inline constexpr std::uint64_t kExhaustiveChunk = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kSampleChunk = std::uint64_t{1} << 12;

VerificationReport verify_all(const LayeredCircuit& c, const VerifyOptions& opts = {});

/// Deterministic stream of all weight-w assignments of length n in
/// lexicographic order of the bit vector (x_1 first).
class LayerEnumerator {
 public:
  LayerEnumerator(std::uint32_t n, std::uint32_t w);

  /// Starts at the given lexicographic rank instead of 0.
  LayerEnumerator(std::uint32_t n, std::uint32_t w, std::uint64_t start_rank);

  bool done() const noexcept { return done_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  Assignment current() const { return Assignment::from_bits(bits_); }
  void advance();

 private:
  std::vector<std::uint8_t> bits_;
  bool done_ = false;
};

std::vector<Assignment> enumerate_layer(std::uint32_t n, std::uint32_t w);

/// C(n, w) if it fits in 64 bits.
std::optional<std::uint64_t> binomial_u64(std::uint32_t n, std::uint32_t w);

/// Uniform weight-w assignment; colex unranking when C(n, w) fits in 63 bits,
/// otherwise a partial Fisher-Yates shuffle. Both consume only `rng`.
class LayerSampler {
 public:
  LayerSampler(std::uint32_t n, std::uint32_t w);

  Assignment sample(std::uint64_t stream_key) const;

 private:
  std::uint32_t n_;
  std::uint32_t w_;
  std::optional<std::uint64_t> count_;
  std::vector<std::vector<std::uint64_t>> pascal_;   // pascal_[j][c] = C(c, j)
};

/// Colex unranking: the subset {c_1 < ... < c_w} of {0..n-1} with rank sum C(c_j, j).
std::vector<std::uint32_t> colex_unrank(std::uint32_t n, std::uint32_t w, std::uint64_t rank);

struct MinMaxMode {
  bool exact = true;
  std::uint64_t count = 0;   // samples per layer when !exact
  std::uint64_t seed = 0;
};

VerificationReport verify_minmax(const LayeredCircuit& c, const MinMaxMode& mode, const VerifyOptions& opts = {});

/// Uniform i.i.d. assignments; ci_halfwidth = sqrt(ln(2/delta) / (2 samples)).
VerificationReport estimate_agreement(const LayeredCircuit& c, std::uint64_t samples, std::uint64_t seed,
                                      const VerifyOptions& opts = {});

/// Uniform assignment of length n from one counter stream.
Assignment uniform_assignment(std::uint32_t n, std::uint64_t stream_key);

std::string_view mode_name(Mode m);

}  // namespace majcirc::verify
