#include <cmath>
#include <map>
#include <numeric>

#include "construct/construct.hpp"
#include "core/error.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace majcirc;
using namespace majcirc::construct;

namespace {

using Rows = std::vector<std::vector<std::uint32_t>>;

// Listings transcribed from the published tables.
const Rows kIntro7{{1, 2, 3, 4, 5}, {1, 2, 5, 6, 7}, {1, 3, 4, 6, 6}, {2, 3, 3, 5, 6}, {2, 4, 5, 7, 7}};
const Rows kN7{{1, 2, 3, 4, 5}, {1, 2, 3, 6, 7}, {1, 4, 5, 6, 7}, {2, 2, 4, 5, 6}, {3, 4, 5, 7, 7}};
const Rows kN9{{1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 8, 9}, {1, 2, 3, 6, 7, 8, 9}, {1, 4, 5, 6, 7, 8, 9},
               {1, 3, 5, 5, 7, 9, 9}, {1, 2, 4, 6, 6, 8, 8}, {2, 3, 4, 5, 6, 7, 8}};
const Rows kN11{{1, 2, 3, 4, 5, 6, 7, 8, 9},    {1, 2, 3, 4, 5, 6, 7, 10, 11}, {1, 2, 3, 4, 5, 8, 9, 10, 11},
                {1, 2, 3, 6, 7, 8, 9, 10, 11},  {1, 4, 5, 6, 7, 8, 9, 10, 11}, {1, 2, 2, 4, 6, 6, 8, 10, 10},
                {2, 4, 4, 5, 6, 7, 8, 10, 11},  {3, 3, 5, 5, 7, 7, 8, 9, 11},  {3, 3, 6, 8, 9, 9, 9, 10, 10}};

/// Row multiset of a bottom gate, expanded by weight and sorted.
std::vector<std::uint32_t> expand(const ThresholdGate& g) {
  std::vector<std::uint32_t> out;
  for (const auto& in : g.inputs)
    for (std::int64_t w = 0; w < in.weight; ++w) out.push_back(in.ref.id);
  std::sort(out.begin(), out.end());
  return out;
}

bool all_inputs_majority(const LayeredCircuit& c) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.n()); ++x)
    if (testing::naive_eval(c, x) != testing::maj(x, c.n())) return false;
  return true;
}

void check_layering(const LayeredCircuit& c) {
  for (std::uint32_t l = 1; l <= c.depth(); ++l)
    for (const auto& g : c.layer(l)) {
      REQUIRE(g.fan_in() <= c.k());
      for (const auto& in : g.inputs) {
        REQUIRE(in.weight >= 1);
        REQUIRE(in.ref.layer + 1 == l);
      }
    }
}

}  // namespace

TEST_CASE("published circuits match the listings and compute majority") {
  const std::vector<std::pair<PublishedTag, const Rows*>> cases{
      {PublishedTag::intro7, &kIntro7}, {PublishedTag::n7, &kN7}, {PublishedTag::n9, &kN9}, {PublishedTag::n11, &kN11}};
  for (const auto& [tag, rows] : cases) {
    const auto c = published_circuit(tag);
    CAPTURE(published_name(tag));
    REQUIRE(c.depth() == 2);
    const auto k = rows->front().size();
    CHECK(c.k() == static_cast<std::int64_t>(k));
    REQUIRE(c.layer(1).size() == rows->size());
    for (std::size_t i = 0; i < rows->size(); ++i) {
      CHECK(expand(c.layer(1)[i]) == (*rows)[i]);
      CHECK(c.layer(1)[i].theta == static_cast<std::int64_t>((k + 1) / 2));
    }
    CHECK(c.top_gate().theta == static_cast<std::int64_t>((rows->size() + 1) / 2));
    CHECK(all_inputs_majority(c));
    check_layering(c);
  }
}

TEST_CASE("every n-2 listing has a gate with a repeated variable") {
  for (const Rows* rows : {&kN7, &kN9, &kN11}) {
    bool repeated = false;
    for (const auto& r : *rows) repeated = repeated || std::adjacent_find(r.begin(), r.end()) != r.end();
    CHECK(repeated);
    for (const auto& r : *rows) CHECK(r.size() == rows->size());
  }
}

TEST_CASE("published tags parse by name") {
  CHECK(published_tag("n9") == PublishedTag::n9);
  CHECK(published_tag("intro7") == PublishedTag::intro7);
  CHECK_FALSE(published_tag("n13").has_value());
}

TEST_CASE("correlation circuit shape") {
  const auto c = build_correlation({101, 21, 9});
  CHECK(c.n() == 101);
  CHECK(c.k() == 21);
  CHECK(c.layer(1).size() == 21);
  for (const auto& g : c.layer(1)) {
    auto row = expand(g);
    CHECK(row.size() == 21);
    CHECK(std::adjacent_find(row.begin(), row.end()) == row.end());
    CHECK(g.theta == 11);
  }
  CHECK(c.top_gate().theta == 11);
  check_layering(c);
  CHECK(build_correlation({101, 21, 9}) == c);
  CHECK_FALSE(build_correlation({101, 21, 10}) == c);
  CHECK(correlation_beta({100, 30, 0}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(build_correlation({10, 11, 0}), Error);
  CHECK_THROWS_AS(build_correlation({10, 0, 0}), Error);
}

TEST_CASE("block circuit with the full window is exactly majority") {
  for (std::uint32_t n = 1; n <= 16; ++n)
    for (std::uint32_t p = 1; p <= n; ++p) {
      if (n % p != 0) continue;
      CAPTURE(n);
      CAPTURE(p);
      const auto c = build_block_circuit({n, p, p});
      check_layering(c);
      CHECK(all_inputs_majority(c));
    }
}

TEST_CASE("block window keeps the t thresholds nearest the block midpoint") {
  const auto [lo, hi] = block_window(256, 114);
  CHECK(hi - lo + 1 == 114);
  // Midpoint (p+1)/2 = 128.5 sits in the middle of the kept range.
  CHECK(std::abs((lo + hi) / 2.0 - 128.5) <= 0.5);
  const auto [a, b] = block_window(8, 8);
  CHECK(a == 1);
  CHECK(b == 8);
  const auto [c0, c1] = block_window(8, 0);
  CHECK(c1 + 1 == c0);
}

TEST_CASE("default block parameters") {
  const auto p = default_block_params(4096);
  CHECK(p.p == 256);
  // ceil(3 sqrt(256 ln 256)) computed independently.
  CHECK(p.window_t == static_cast<std::uint32_t>(std::ceil(3.0 * std::sqrt(256.0 * std::log(256.0)))));
  CHECK(p.window_t == 114);
  CHECK(default_block_params(8).p == 4);
  CHECK(default_block_params(8).window_t <= 4);
  CHECK(default_block_params(27).p == 9);
  CHECK(default_block_params(1000).p == 100);
}

TEST_CASE("padding keeps majority") {
  CHECK(padded_size(10, 4) == 12);
  CHECK(padded_size(12, 4) == 12);
  const auto a = Assignment::from_string("1100110001");
  const auto padded = pad_assignment(a, 12);
  CHECK(padded.n() == 12);
  CHECK(padded.weight() == a.weight() + 1);
  for (std::uint64_t x = 0; x < 1024; ++x) {
    const auto b = pad_assignment(testing::from_mask(10, x), 14);
    CHECK(majority(b.weight(), 14) == testing::maj(x, 10));
  }
}

TEST_CASE("depth-3 circuit structure") {
  const auto c = build_depth3({2});
  CHECK(c.n() == 16);
  CHECK(c.depth() == 3);
  CHECK(c.layer(1).size() == 16);
  for (const auto& g : c.layer(1)) CHECK(g.fan_in() == 8);
  // Upper window p/2-b+1 .. p/2+b: 2b gates per block.
  CHECK(c.layer(2).size() == 8);
  CHECK(c.top_gate().fan_in() == 8);
  CHECK(c.k() == 8);
  CHECK(depth3_window(2) == std::pair<std::uint32_t, std::uint32_t>{3, 6});
  CHECK(depth3_window(3) == std::pair<std::uint32_t, std::uint32_t>{7, 12});
  check_layering(c);
  CHECK(all_inputs_majority(c));

  const auto tiny = build_depth3({1});
  CHECK(tiny.n() == 2);
  CHECK(all_inputs_majority(tiny));
}

TEST_CASE("depth-3 inclusive window") {
  const auto c = build_depth3({2, Depth3Window::inclusive});
  CHECK(depth3_window(2, Depth3Window::inclusive) == std::pair<std::uint32_t, std::uint32_t>{2, 6});
  CHECK(depth3_window(3, Depth3Window::inclusive) == std::pair<std::uint32_t, std::uint32_t>{6, 12});
  CHECK(c.layer(2).size() == 10);
  CHECK(c.top_gate().fan_in() == 10);
  CHECK(c.k() == std::max<std::int64_t>(8, 2 * 5));
  check_layering(c);
  // Exactly the maxterms (weight 7) are misclassified.
  std::uint64_t wrong = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << 16); ++x)
    if (testing::naive_eval(c, x) != testing::maj(x, 16)) {
      CHECK(std::popcount(x) == 7);
      ++wrong;
    }
  CHECK(wrong == 11440);
  CHECK(all_inputs_majority(build_depth3({1, Depth3Window::inclusive})));
}

TEST_CASE("depth-3 inclusive window fails on maxterms at b = 3") {
  // Count of lit layer-2 gates on a weight n/2 - 1 input is b^2 + b - 1, which
  // meets the top threshold b^2 + ceil(b/2) for b >= 2.
  const auto c = build_depth3({3, Depth3Window::inclusive});
  const std::uint32_t n = 54;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> bits(n, 0);
    std::fill(bits.begin(), bits.begin() + 26, 1);
    std::shuffle(bits.begin(), bits.end(), rng);
    CHECK(eval_circuit(c, Assignment::from_bits(bits)));   // should be 0
    bits[std::find(bits.begin(), bits.end(), 0) - bits.begin()] = 1;
    CHECK(eval_circuit(c, Assignment::from_bits(bits)));
  }
  const auto fixed = build_depth3({3});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> bits(n, 0);
    std::fill(bits.begin(), bits.begin() + 26, 1);
    std::shuffle(bits.begin(), bits.end(), rng);
    CHECK_FALSE(eval_circuit(fixed, Assignment::from_bits(bits)));
    bits[std::find(bits.begin(), bits.end(), 0) - bits.begin()] = 1;
    CHECK(eval_circuit(fixed, Assignment::from_bits(bits)));
  }
}

TEST_CASE("strided blocks partition the layer-1 outputs") {
  for (std::uint32_t b = 1; b <= 4; ++b) {
    std::vector<int> hits(2 * b * b * b, 0);
    for (std::uint32_t i = 1; i <= b; ++i) {
      const auto block = depth3_strided_block(b, i);
      CHECK(block.size() == 2 * b * b);
      for (std::size_t j = 0; j < block.size(); ++j) {
        CHECK(block[j] == (i - 1) + j * b);
        hits[block[j]] += 1;
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("omission circuits read all but two variables per gate") {
  const auto pairs = random_omissions(9, 3);
  CHECK(pairs.size() == 7);
  const auto c = circuit_from_omissions(9, pairs);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const auto row = expand(c.layer(1)[e]);
    CHECK(row.size() == 7);
    CHECK(std::find(row.begin(), row.end(), pairs[e].first) == row.end());
    CHECK(std::find(row.begin(), row.end(), pairs[e].second) == row.end());
  }
  CHECK(random_omissions(9, 3) == pairs);
}

TEST_CASE("circuit_from_rows builds standard majorities") {
  const auto c = circuit_from_rows(7, kN7);
  CHECK(c == published_circuit(PublishedTag::n7));
  CHECK_THROWS_AS(circuit_from_rows(7, Rows{{1, 2, 3}, {1, 2}}), Error);
  CHECK_THROWS_AS(circuit_from_rows(3, Rows{{1, 2, 4}}), Error);
}
