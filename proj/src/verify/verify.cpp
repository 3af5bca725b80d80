#include "verify/verify.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/evaluator.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace majcirc::verify {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::exhaustive: return "exhaustive";
    case Mode::layer: return "layer";
    case Mode::sample: return "sample";
  }
  return "unknown";
}

void VerificationReport::record(std::uint32_t weight, bool error) {
  ++total_checked;
  ++checked_by_weight[weight];
  if (error) {
    ++errors;
    ++errors_by_weight[weight];
  }
}

void VerificationReport::merge(const VerificationReport& other) {
  total_checked += other.total_checked;
  errors += other.errors;
  for (auto [w, c] : other.checked_by_weight) checked_by_weight[w] += c;
  for (auto [w, c] : other.errors_by_weight) errors_by_weight[w] += c;
}

std::pair<std::uint64_t, std::uint64_t> VerificationReport::agreement() const {
  if (total_checked == 0) return {1, 1};
  const std::uint64_t good = total_checked - errors;
  const std::uint64_t g = std::gcd(good, total_checked);
  return {good / g, total_checked / g};
}

double VerificationReport::agreement_value() const {
  return total_checked == 0 ? 1.0 : 1.0 - static_cast<double>(errors) / static_cast<double>(total_checked);
}

double VerificationReport::error_fraction(std::uint32_t weight) const {
  auto it = checked_by_weight.find(weight);
  if (it == checked_by_weight.end() || it->second == 0) return 0.0;
  auto e = errors_by_weight.find(weight);
  return e == errors_by_weight.end() ? 0.0 : static_cast<double>(e->second) / static_cast<double>(it->second);
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(mode);
  j["n"] = n;
  if (mode == Mode::layer || !layers.empty()) j["layers"] = layers;
  if (mode == Mode::sample) {
    j["samples"] = sample_count;
    j["seed"] = seed;
  }
  j["total_checked"] = total_checked;
  j["errors"] = errors;
  const auto [num, den] = agreement();
  j["agreement"] = std::to_string(num) + "/" + std::to_string(den);
  j["agreement_value"] = agreement_value();
  if (delta) j["delta"] = *delta;
  if (ci_halfwidth) j["ci_halfwidth"] = *ci_halfwidth;
  nlohmann::ordered_json checked = nlohmann::ordered_json::object();
  for (auto [w, c] : checked_by_weight) checked[std::to_string(w)] = c;
  nlohmann::ordered_json errs = nlohmann::ordered_json::object();
  for (auto [w, c] : errors_by_weight) errs[std::to_string(w)] = c;
  j["checked_by_weight"] = checked;
  j["errors_by_weight"] = errs;
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
  std::ostringstream out;
  out << "weight,checked,errors\n";
  for (auto [w, c] : checked_by_weight) {
    auto e = errors_by_weight.find(w);
    out << w << "," << c << "," << (e == errors_by_weight.end() ? 0 : e->second) << "\n";
  }
  return out.str();
}

namespace {

template <class ChunkFn>
VerificationReport run_chunks(std::size_t chunks, unsigned workers, ChunkFn&& fn) {
  std::vector<VerificationReport> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t i) { partial[i] = fn(i); });
  VerificationReport total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace

VerificationReport verify_all(const LayeredCircuit& c, const VerifyOptions& opts) {
  const std::uint32_t n = c.n();
  if (n > opts.exhaustive_bit_cap || n > 62)
    throw Error(ErrorKind::cap_exceeded, "exhaustive verification of n = " + std::to_string(n) +
                                             " exceeds the cap of " + std::to_string(opts.exhaustive_bit_cap) +
                                             " bits; use the minmax (layer or sample) or agreement modes");
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunk = std::min(total, kExhaustiveChunk);
  const std::size_t chunks = static_cast<std::size_t>(total / chunk);
  const Evaluator& ev = c.evaluator();

  VerificationReport report = run_chunks(chunks, opts.workers, [&](std::size_t ci) {
    VerificationReport part;
    auto scratch = ev.make_scratch();
    std::uint64_t word[1];
    const std::uint64_t begin = ci * chunk;
    for (std::uint64_t x = begin; x < begin + chunk; ++x) {
      // x_1 is the most significant bit of x; packed position i-1 holds x_i.
      std::uint64_t packed = 0;
      for (std::uint32_t i = 0; i < n; ++i) packed |= ((x >> (n - 1 - i)) & 1U) << i;
      word[0] = packed;
      const auto w = static_cast<std::uint32_t>(std::popcount(x));
      part.record(w, ev.eval(word, scratch) != majority(w, n));
    }
    return part;
  });
  report.mode = Mode::exhaustive;
  report.n = n;
  return report;
}

std::optional<std::uint64_t> binomial_u64(std::uint32_t n, std::uint32_t w) {
  if (w > n) return 0;
  w = std::min(w, n - w);
  unsigned __int128 r = 1;
  for (std::uint32_t i = 0; i < w; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

std::uint64_t binomial_saturating(std::uint32_t n, std::uint32_t w) {
  auto b = binomial_u64(n, w);
  return b ? *b : std::numeric_limits<std::uint64_t>::max();
}

std::vector<std::vector<std::uint64_t>> pascal_table(std::uint32_t n, std::uint32_t w) {
  std::vector<std::vector<std::uint64_t>> t(w + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::uint32_t c = 0; c <= n; ++c) t[0][c] = 1;
  for (std::uint32_t j = 1; j <= w; ++j)
    for (std::uint32_t c = 1; c <= n; ++c) {
      const std::uint64_t a = t[j][c - 1], b = t[j - 1][c - 1];
      t[j][c] = (a > std::numeric_limits<std::uint64_t>::max() - b) ? std::numeric_limits<std::uint64_t>::max() : a + b;
    }
  return t;
}

std::vector<std::uint32_t> colex_unrank_table(const std::vector<std::vector<std::uint64_t>>& pascal, std::uint32_t n,
                                              std::uint32_t w, std::uint64_t rank) {
  std::vector<std::uint32_t> out(w);
  std::uint32_t hi = n;  // exclusive upper bound for the next element
  for (std::uint32_t j = w; j >= 1; --j) {
    std::uint32_t c = hi - 1;
    while (pascal[j][c] > rank) --c;
    out[j - 1] = c;
    rank -= pascal[j][c];
    hi = c;
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> colex_unrank(std::uint32_t n, std::uint32_t w, std::uint64_t rank) {
  if (w > n) throw Error(ErrorKind::invalid_argument, "colex_unrank: w > n");
  auto count = binomial_u64(n, w);
  if (!count || rank >= *count) throw Error(ErrorKind::invalid_argument, "colex_unrank: rank out of range");
  return colex_unrank_table(pascal_table(n, w), n, w, rank);
}

LayerEnumerator::LayerEnumerator(std::uint32_t n, std::uint32_t w) : LayerEnumerator(n, w, 0) {}

LayerEnumerator::LayerEnumerator(std::uint32_t n, std::uint32_t w, std::uint64_t start_rank) {
  if (w > n) throw Error(ErrorKind::invalid_argument, "layer weight exceeds n");
  if (start_rank >= binomial_saturating(n, w)) {
    done_ = true;
    return;
  }
  // Lexicographic unranking: at each position count the completions with a 0 there.
  bits_.assign(n, 0);
  std::uint32_t ones = w;
  std::uint64_t rank = start_rank;
  for (std::uint32_t i = 0; i < n && ones > 0; ++i) {
    const std::uint64_t with_zero = binomial_saturating(n - i - 1, ones);
    if (rank < with_zero) continue;
    rank -= with_zero;
    bits_[i] = 1;
    --ones;
  }
}

void LayerEnumerator::advance() {
  if (!done_ && !std::next_permutation(bits_.begin(), bits_.end())) done_ = true;
}

std::vector<Assignment> enumerate_layer(std::uint32_t n, std::uint32_t w) {
  std::vector<Assignment> out;
  for (LayerEnumerator it(n, w); !it.done(); it.advance()) out.push_back(it.current());
  return out;
}

LayerSampler::LayerSampler(std::uint32_t n, std::uint32_t w) : n_(n), w_(w) {
  if (w > n) throw Error(ErrorKind::invalid_argument, "layer weight exceeds n");
  auto count = binomial_u64(n, w);
  if (count && *count < (std::uint64_t{1} << 63) && static_cast<std::uint64_t>(n + 1) * (w + 1) <= (1U << 22)) {
    count_ = count;
    pascal_ = pascal_table(n, w);
  }
}

Assignment LayerSampler::sample(std::uint64_t stream_key) const {
  CounterRng rng(stream_key);
  std::vector<std::uint64_t> words(words_for(n_), 0);
  if (count_) {
    for (auto pos : colex_unrank_table(pascal_, n_, w_, rng.below(*count_)))
      words[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    return Assignment::from_words(n_, std::move(words));
  }
  // Choose the smaller side, then complement if needed.
  const bool pick_ones = w_ <= n_ - w_;
  const std::uint32_t picks = pick_ones ? w_ : n_ - w_;
  std::vector<std::uint32_t> pool(n_);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::uint32_t i = 0; i < picks; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(n_ - i));
    std::swap(pool[i], pool[j]);
    words[pool[i] >> 6] |= std::uint64_t{1} << (pool[i] & 63);
  }
  if (!pick_ones) {
    for (auto& word : words) word = ~word;
    if (n_ % 64) words.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  return Assignment::from_words(n_, std::move(words));
}

VerificationReport verify_minmax(const LayeredCircuit& c, const MinMaxMode& mode, const VerifyOptions& opts) {
  const std::uint32_t n = c.n();
  const std::uint32_t hi = minterm_weight(n);
  std::vector<std::uint32_t> weights;
  if (hi >= 1) weights.push_back(hi - 1);
  weights.push_back(hi);
  const Evaluator& ev = c.evaluator();

  VerificationReport report;
  if (mode.exact) {
    const std::uint64_t count = binomial_saturating(n, hi);
    if (count > opts.layer_cap)
      throw Error(ErrorKind::cap_exceeded, "exact minterm/maxterm check needs C(" + std::to_string(n) + "," +
                                               std::to_string(hi) + ") assignments, over the cap of " +
                                               std::to_string(opts.layer_cap) + "; use sampling");
    for (auto w : weights) {
      const std::uint64_t layer_size = binomial_saturating(n, w);
      const std::size_t chunks = static_cast<std::size_t>((layer_size + kExhaustiveChunk - 1) / kExhaustiveChunk);
      report.merge(run_chunks(chunks, opts.workers, [&](std::size_t ci) {
        VerificationReport part;
        auto scratch = ev.make_scratch();
        LayerEnumerator it(n, w, ci * kExhaustiveChunk);
        for (std::uint64_t i = 0; i < kExhaustiveChunk && !it.done(); ++i, it.advance()) {
          const Assignment a = Assignment::from_bits(it.bits());
          part.record(w, ev.eval(a.words(), scratch) != majority(w, n));
        }
        return part;
      }));
    }
    report.mode = Mode::layer;
  } else {
    if (mode.count == 0) throw Error(ErrorKind::invalid_argument, "sample count must be positive");
    for (auto w : weights) {
      const LayerSampler sampler(n, w);
      const std::uint64_t layer_key = derive_seed(mode.seed, "minmax.layer", w);
      const std::size_t chunks = static_cast<std::size_t>((mode.count + kSampleChunk - 1) / kSampleChunk);
      report.merge(run_chunks(chunks, opts.workers, [&](std::size_t ci) {
        VerificationReport part;
        auto scratch = ev.make_scratch();
        const std::uint64_t begin = ci * kSampleChunk;
        const std::uint64_t end = std::min(mode.count, begin + kSampleChunk);
        for (std::uint64_t s = begin; s < end; ++s) {
          const Assignment a = sampler.sample(splitmix64(layer_key + s));
          part.record(w, ev.eval(a.words(), scratch) != majority(w, n));
        }
        return part;
      }));
    }
    report.mode = Mode::sample;
    report.sample_count = mode.count;
    report.seed = mode.seed;
  }
  report.n = n;
  report.layers = weights;
  return report;
}

Assignment uniform_assignment(std::uint32_t n, std::uint64_t stream_key) {
  CounterRng rng(stream_key);
  std::vector<std::uint64_t> words(words_for(n));
  for (auto& w : words) w = rng();
  if (n % 64) words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return Assignment::from_words(n, std::move(words));
}

VerificationReport estimate_agreement(const LayeredCircuit& c, std::uint64_t samples, std::uint64_t seed,
                                      const VerifyOptions& opts) {
  if (samples == 0) throw Error(ErrorKind::invalid_argument, "estimate_agreement: samples must be positive");
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) throw Error(ErrorKind::invalid_argument, "delta must lie in (0, 1)");
  const std::uint32_t n = c.n();
  const Evaluator& ev = c.evaluator();
  const std::uint64_t key = derive_seed(seed, "agreement.uniform");
  const std::size_t chunks = static_cast<std::size_t>((samples + kSampleChunk - 1) / kSampleChunk);
  VerificationReport report = run_chunks(chunks, opts.workers, [&](std::size_t ci) {
    VerificationReport part;
    auto scratch = ev.make_scratch();
    const std::uint64_t begin = ci * kSampleChunk;
    const std::uint64_t end = std::min(samples, begin + kSampleChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const Assignment a = uniform_assignment(n, splitmix64(key + s));
      part.record(a.weight(), ev.eval(a.words(), scratch) != majority(a.weight(), n));
    }
    return part;
  });
  report.mode = Mode::sample;
  report.n = n;
  report.sample_count = samples;
  report.seed = seed;
  report.delta = opts.delta;
  report.ci_halfwidth = std::sqrt(std::log(2.0 / opts.delta) / (2.0 * static_cast<double>(samples)));
  return report;
}

}  // namespace majcirc::verify
