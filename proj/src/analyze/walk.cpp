#include <algorithm>
#include <string>

#include "analyze/analyze.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "verify/verify.hpp"

namespace majcirc::analyze {

namespace {

[[noreturn]] void precondition(const std::string& what) { throw Error(ErrorKind::precondition, "walk: " + what); }

std::int64_t diff_on(const ThresholdGate& g, const Assignment& a) {
  std::int64_t sum = 0;
  for (const auto& in : g.inputs)
    if (a[in.ref.id - 1]) sum += in.weight;
  return sum - g.theta;
}

bool reads(const ThresholdGate& g, VariableId x) {
  return std::any_of(g.inputs.begin(), g.inputs.end(), [x](const WeightedInput& in) { return in.ref.id == x.index; });
}

}  // namespace

std::string_view walk_stop_name(WalkStop s) {
  switch (s) {
    case WalkStop::exhausted_s: return "exhausted_s";
    case WalkStop::no_negative_gate: return "no_negative_gate";
    case WalkStop::empty_candidates: return "empty_candidates";
  }
  return "unknown";
}

std::vector<std::uint32_t> gates_reading(const LayeredCircuit& c, VariableId x) {
  std::vector<std::uint32_t> out;
  const auto& bottom = c.layer(1);
  for (std::uint32_t g = 0; g < bottom.size(); ++g)
    if (reads(bottom[g], x)) out.push_back(g + 1);
  return out;
}

std::vector<std::int64_t> g_star_diffs(const LayeredCircuit& c, const WalkConfig& cfg, const Assignment& a) {
  std::vector<std::int64_t> out;
  for (auto g : cfg.g_star) out.push_back(diff_on(c.layer(1).at(g - 1), a));
  return out;
}

WalkTrace walk(const LayeredCircuit& c, const Assignment& a, const WalkConfig& cfg) {
  const std::uint32_t n = c.n();
  if (a.n() != n) precondition("assignment length differs from n");
  if (cfg.s < 1) precondition("s must be at least 1");
  if (cfg.d < 1) precondition("d must be at least 1");
  if (cfg.x_star.index < 1 || cfg.x_star.index > n) precondition("x_star out of range");
  if (static_cast<std::int64_t>(a.weight()) - static_cast<std::int64_t>(minterm_weight(n)) != -1)
    precondition("diff(MAJ_n, A) must be -1");
  if (a.at(cfg.x_star)) precondition("A(x_star) must be 0");
  const auto& bottom = c.layer(1);
  for (auto g : cfg.g_star) {
    if (g < 1 || g > bottom.size()) precondition("gate id " + std::to_string(g) + " out of range");
    if (!reads(bottom[g - 1], cfg.x_star)) precondition("gate " + std::to_string(g) + " does not read x_star");
  }

  WalkTrace trace{a, {}, WalkStop::exhausted_s, a};
  Assignment cur = a;
  for (std::uint32_t i = 1; i <= cfg.s; ++i) {
    std::vector<std::uint32_t> qualifying;
    for (auto g : cfg.g_star) {
      const auto d = diff_on(bottom[g - 1], cur);
      if (d >= -cfg.d && d <= -1) qualifying.push_back(g);
    }
    if (qualifying.empty()) {
      trace.stop = WalkStop::no_negative_gate;
      break;
    }
    std::uint32_t chosen = qualifying.front();
    if (cfg.random_gate) {
      CounterRng rng(derive_seed(cfg.seed, "walk.gate", i));
      chosen = qualifying[rng.below(qualifying.size())];
    }
    std::vector<std::uint32_t> ones;
    for (const auto& in : bottom[chosen - 1].inputs)
      if (cur[in.ref.id - 1]) ones.push_back(in.ref.id);
    std::sort(ones.begin(), ones.end());
    if (ones.empty()) {
      trace.stop = WalkStop::empty_candidates;
      break;
    }
    CounterRng rng(derive_seed(cfg.seed, "walk.flip", i));
    const VariableId y{ones[rng.below(ones.size())]};
    cur = flip(cur, y);
    trace.steps.push_back({chosen, static_cast<std::uint32_t>(ones.size()), y, g_star_diffs(c, cfg, cur)});
  }
  trace.final_assignment = cur;
  return trace;
}

Assignment random_walk_start(std::uint32_t n, VariableId x_star, std::uint64_t seed) {
  if (n < 2 || x_star.index < 1 || x_star.index > n) throw Error(ErrorKind::invalid_argument, "walk start: bad n or x_star");
  const auto rest = verify::LayerSampler(n - 1, minterm_weight(n) - 1).sample(derive_seed(seed, "walk.start"));
  std::vector<std::uint8_t> bits;
  for (std::uint32_t i = 0, j = 0; i < n; ++i) bits.push_back(i + 1 == x_star.index ? 0 : rest[j++]);
  return Assignment::from_bits(bits);
}

}  // namespace majcirc::analyze
