#include "construct/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace majcirc::construct {

namespace {

std::vector<WeightedInput> unit_inputs(std::uint32_t layer_below, std::uint32_t first, std::uint32_t count) {
  std::vector<WeightedInput> in;
  in.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) in.push_back({Ref{layer_below, first + i}, 1});
  return in;
}

std::vector<WeightedInput> unit_inputs(std::uint32_t layer_below, const std::vector<std::uint32_t>& ids) {
  std::vector<WeightedInput> in;
  in.reserve(ids.size());
  for (auto id : ids) in.push_back({Ref{layer_below, id}, 1});
  return in;
}

ThresholdGate top_majority(std::uint32_t below_layer, std::uint32_t count) {
  return standard_gate(unit_inputs(below_layer, 1, count));
}

}  // namespace

double correlation_beta(const CorrelationParams& params) {
  return params.n == 0 ? 0.0 : params.k / std::sqrt(static_cast<double>(params.n));
}

LayeredCircuit build_correlation(const CorrelationParams& params) {
  if (params.k < 1) throw Error(ErrorKind::invalid_argument, "correlation circuit: k must be at least 1");
  if (params.k > params.n)
    throw Error(ErrorKind::invalid_argument, "correlation circuit: k = " + std::to_string(params.k) +
                                                 " exceeds n = " + std::to_string(params.n));
  std::vector<ThresholdGate> bottom;
  bottom.reserve(params.k);
  std::vector<std::uint32_t> pool(params.n);
  for (std::uint32_t g = 0; g < params.k; ++g) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    std::iota(pool.begin(), pool.end(), 1U);
    CounterRng rng(derive_seed(params.seed, "correlation.subset", g));
    for (std::uint32_t i = 0; i < params.k; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.below(params.n - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint32_t> subset(pool.begin(), pool.begin() + params.k);
    std::sort(subset.begin(), subset.end());
    bottom.push_back(standard_gate(unit_inputs(0, subset)));
  }
  std::vector<std::vector<ThresholdGate>> layers{std::move(bottom), {top_majority(1, params.k)}};
  return LayeredCircuit(params.n, params.k, std::move(layers), GateId{2, 1});
}

std::pair<std::uint32_t, std::uint32_t> block_window(std::uint32_t p, std::uint32_t window_t) {
  // Real interval [(p+1-t)/2, (p+1+t)/2]; lo + hi = p + 1 keeps the top
  // majority balanced when every block weight lies in [lo-1, hi].
  const std::int64_t lo = (static_cast<std::int64_t>(p) + 1 - window_t + 1) / 2;  // ceil((p+1-t)/2), p+1-t >= 1
  const std::int64_t hi = (static_cast<std::int64_t>(p) + 1 + window_t) / 2;
  return {static_cast<std::uint32_t>(std::max<std::int64_t>(lo, 1)),
          static_cast<std::uint32_t>(std::min<std::int64_t>(hi, p))};
}

LayeredCircuit build_block_circuit(const BlockParams& params) {
  const auto [n, p, t] = params;
  if (p < 1 || n < 1 || n % p != 0)
    throw Error(ErrorKind::invalid_argument,
                "block circuit: block size p = " + std::to_string(p) + " must divide n = " + std::to_string(n));
  if (t > p) throw Error(ErrorKind::invalid_argument, "block circuit: window_t must not exceed p");
  const auto [lo, hi] = block_window(p, t);
  if (lo > hi) throw Error(ErrorKind::invalid_argument, "block circuit: window_t = 0 leaves no thresholds for even p");

  const std::uint32_t blocks = n / p;
  std::vector<ThresholdGate> bottom;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    for (std::uint32_t m = lo; m <= hi; ++m) bottom.push_back({unit_inputs(0, b * p + 1, p), m});
  }
  const auto bottom_count = static_cast<std::uint32_t>(bottom.size());
  const std::int64_t k = std::max<std::int64_t>(p, bottom_count);
  std::vector<std::vector<ThresholdGate>> layers{std::move(bottom), {top_majority(1, bottom_count)}};
  return LayeredCircuit(n, k, std::move(layers), GateId{2, 1});
}

BlockParams default_block_params(std::uint32_t n, double alpha) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "default_block_params: n must be positive");
  const double target = std::cbrt(static_cast<double>(n) * n);
  std::uint32_t best = 1;
  double best_dist = std::abs(1.0 - target);
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const double dist = std::abs(static_cast<double>(d) - target);
    if (dist < best_dist - 1e-9) {
      best = d;
      best_dist = dist;
    }
  }
  const double raw = alpha * std::sqrt(best * std::log(static_cast<double>(best)));
  // Guard against ceil(113.0000000001)-style noise on exact products.
  auto t = static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
  t = std::min<std::uint64_t>(t, best);
  return {n, best, static_cast<std::uint32_t>(t)};
}

std::uint32_t padded_size(std::uint32_t n, std::uint32_t p) {
  if (p < 1) throw Error(ErrorKind::invalid_argument, "padded_size: p must be positive");
  for (std::uint64_t m = n; m <= static_cast<std::uint64_t>(n) + 2ULL * p; m += 2) {
    if (m % p == 0) return static_cast<std::uint32_t>(m);
  }
  throw Error(ErrorKind::invalid_argument, "cannot pad odd n to a multiple of even p with 0/1 pairs");
}

Assignment pad_assignment(const Assignment& a, std::uint32_t m) {
  if (m < a.n() || (m - a.n()) % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "pad_assignment: padding must add an even number of bits");
  auto bits = a.to_bits();
  for (std::uint32_t i = a.n(); i < m; ++i) bits.push_back(static_cast<std::uint8_t>((i - a.n()) % 2));
  return Assignment::from_bits(bits);
}

std::pair<std::uint32_t, std::uint32_t> depth3_window(std::uint32_t b, Depth3Window window) {
  const std::uint32_t half = b * b;  // p / 2
  // Maxterms light b^2 + b - 1 gates of the inclusive window, which reaches the
  // top threshold b^2 + ceil(b/2) once b >= 2.
  return {window == Depth3Window::inclusive ? half - b : half - b + 1, half + b};
}

LayeredCircuit build_depth3(const Depth3Params& params) {
  const std::uint32_t b = params.b;
  if (b < 1) throw Error(ErrorKind::invalid_argument, "depth-3 circuit: b must be at least 1");
  if (b > 1000) throw Error(ErrorKind::invalid_argument, "depth-3 circuit: b too large");
  const std::uint32_t n = params.n();
  const std::uint32_t p = params.p();

  // Layer 1: every block sorted in decreasing order, output i*p + m is [w(X_i) >= m].
  std::vector<ThresholdGate> first;
  first.reserve(n);
  for (std::uint32_t i = 0; i < b; ++i)
    for (std::uint32_t m = 1; m <= p; ++m) first.push_back({unit_inputs(0, i * p + 1, p), m});

  // Layer 2: strided blocks Y_i of the sorted vector, middle thresholds only.
  const auto [lo, hi] = depth3_window(b, params.window);
  std::vector<ThresholdGate> second;
  for (std::uint32_t i = 1; i <= b; ++i) {
    std::vector<std::uint32_t> ids;
    for (auto pos : depth3_strided_block(b, i)) ids.push_back(pos + 1);
    for (std::uint32_t m = lo; m <= hi; ++m) second.push_back({unit_inputs(1, ids), m});
  }
  const auto second_count = static_cast<std::uint32_t>(second.size());
  const std::int64_t k = std::max<std::int64_t>(p, second_count);
  std::vector<std::vector<ThresholdGate>> layers{std::move(first), std::move(second), {top_majority(2, second_count)}};
  return LayeredCircuit(n, k, std::move(layers), GateId{3, 1});
}

std::vector<std::uint32_t> depth3_strided_block(std::uint32_t b, std::uint32_t i) {
  if (i < 1 || i > b) throw Error(ErrorKind::invalid_argument, "strided block index out of range");
  const std::uint32_t p = 2 * b * b;
  std::vector<std::uint32_t> pos;
  pos.reserve(p);
  for (std::uint32_t l = 0; l < p; ++l) pos.push_back(i - 1 + l * b);
  return pos;
}

LayeredCircuit circuit_from_rows(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::invalid_argument, "circuit_from_rows: no rows");
  const std::size_t k = rows.front().size();
  std::vector<ThresholdGate> bottom;
  for (const auto& row : rows) {
    if (row.size() != k) throw Error(ErrorKind::invalid_argument, "circuit_from_rows: rows differ in length");
    std::vector<std::uint32_t> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    std::vector<WeightedInput> inputs;
    for (auto v : sorted) {
      if (v < 1 || v > n) throw Error(ErrorKind::invalid_argument, "circuit_from_rows: variable out of range");
      if (!inputs.empty() && inputs.back().ref.id == v)
        ++inputs.back().weight;
      else
        inputs.push_back({Ref::var(v), 1});
    }
    bottom.push_back(standard_gate(std::move(inputs)));
  }
  const auto count = static_cast<std::uint32_t>(bottom.size());
  const std::int64_t fan_in = std::max<std::int64_t>(static_cast<std::int64_t>(k), count);
  std::vector<std::vector<ThresholdGate>> layers{std::move(bottom), {top_majority(1, count)}};
  return LayeredCircuit(n, fan_in, std::move(layers), GateId{2, 1});
}

LayeredCircuit circuit_from_omissions(std::uint32_t n,
                                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& omitted) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorKind::invalid_argument, "omission circuit: n must be odd and >= 3");
  if (omitted.size() != n - 2) throw Error(ErrorKind::invalid_argument, "omission circuit: need exactly n-2 pairs");
  std::vector<std::vector<std::uint32_t>> rows;
  for (auto [a, b] : omitted) {
    if (a == b || a < 1 || b < 1 || a > n || b > n)
      throw Error(ErrorKind::invalid_argument, "omission circuit: pairs must be two distinct variables");
    std::vector<std::uint32_t> row;
    for (std::uint32_t v = 1; v <= n; ++v)
      if (v != a && v != b) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return circuit_from_rows(n, rows);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> random_omissions(std::uint32_t n, std::uint64_t seed) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "random_omissions: n must be at least 3");
  CounterRng rng(derive_seed(seed, "omissions"));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t e = 0; e + 2 < n; ++e) {
    auto a = static_cast<std::uint32_t>(rng.below(n)) + 1;
    auto b = static_cast<std::uint32_t>(rng.below(n - 1)) + 1;
    if (b >= a) ++b;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return edges;
}

}  // namespace majcirc::construct
