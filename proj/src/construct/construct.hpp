#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "core/circuit.hpp"

namespace majcirc::construct {

/// Random-subset circuit: k bottom majorities over random k-subsets, majority on top.
/// alpha/beta/gamma are the existence-proof constants, carried only for reporting.
struct CorrelationParams {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
};

struct BlockParams {
  std::uint32_t n = 0;
  std::uint32_t p = 0;         // block size, must divide n
  std::uint32_t window_t = 0;  // number of middle thresholds kept per block
};

/// Second-layer thresholds per strided block: `upper` keeps the 2b values
/// p/2-b+1 .. p/2+b, `inclusive` the 2b+1 values p/2-b .. p/2+b.
enum class Depth3Window { upper, inclusive };

struct Depth3Params {
  std::uint32_t b = 0;
  Depth3Window window = Depth3Window::upper;

  std::uint32_t n() const noexcept { return 2 * b * b * b; }
  std::uint32_t p() const noexcept { return 2 * b * b; }
};

/// k / sqrt(n), the beta of the random-subset argument.
double correlation_beta(const CorrelationParams& params);

LayeredCircuit build_correlation(const CorrelationParams& params);

/// Inclusive threshold range [lo, hi] kept per block of size p for window t:
/// the t integers closest to (p + 1) / 2, clamped to [1, p].
std::pair<std::uint32_t, std::uint32_t> block_window(std::uint32_t p, std::uint32_t window_t);

LayeredCircuit build_block_circuit(const BlockParams& params);

/// p = divisor of n closest to n^(2/3) (ties to the smaller one);
/// window_t = ceil(alpha * sqrt(p ln p)) clamped to p.
BlockParams default_block_params(std::uint32_t n, double alpha = 3.0);

/// Smallest m >= n with p | m and m - n even. Appending (m - n) / 2 pairs of
/// constant inputs (0, 1) preserves majority, see pad_assignment.
std::uint32_t padded_size(std::uint32_t n, std::uint32_t p);

/// Extends `a` to `m` bits with alternating 0, 1 constants.
Assignment pad_assignment(const Assignment& a, std::uint32_t m);

/// Range [lo, hi] of second-layer thresholds in the depth-3 circuit.
std::pair<std::uint32_t, std::uint32_t> depth3_window(std::uint32_t b, Depth3Window window = Depth3Window::upper);

LayeredCircuit build_depth3(const Depth3Params& params);

/// Positions (0-based indices into the layer-1 output vector) of strided block Y_i, i in [1, b].
std::vector<std::uint32_t> depth3_strided_block(std::uint32_t b, std::uint32_t i);

enum class PublishedTag { intro7, n7, n9, n11 };

std::optional<PublishedTag> published_tag(std::string_view name);
std::string_view published_name(PublishedTag tag);

/// Bottom-gate variable rows (1-based, repeats allowed) of a published circuit.
const std::vector<std::vector<std::uint32_t>>& published_rows(PublishedTag tag);

LayeredCircuit published_circuit(PublishedTag tag);

/// Depth-2 circuit of standard majorities on the given multiset rows, with the
/// top a standard majority over all rows. Every row must have the same length k.
LayeredCircuit circuit_from_rows(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& rows);

/// Depth-2 circuit over odd n with n-2 bottom gates, gate e reading every
/// variable except the two in omitted[e]; all gates standard majorities.
LayeredCircuit circuit_from_omissions(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& omitted);

/// n-2 uniformly random distinct pairs-with-repetition (a random edge multiset).
std::vector<std::pair<std::uint32_t, std::uint32_t>> random_omissions(std::uint32_t n, std::uint64_t seed);

}  // namespace majcirc::construct
