#include <set>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace majcirc;

TEST_CASE("assignment packing and weight") {
  const auto a = Assignment::from_string("1011000001");
  CHECK(a.n() == 10);
  CHECK(a.weight() == 4);
  CHECK(a.at({1}));
  CHECK_FALSE(a.at({2}));
  CHECK(a.at({10}));
  CHECK(a.to_string() == "1011000001");
  const auto b = flip(a, {2});
  CHECK(b.weight() == 5);
  CHECK(flip(b, {2}) == a);
  const std::vector<std::uint32_t> pos{0, 1, 2};
  CHECK(a.weight_on(pos) == 2);
  CHECK_THROWS(Assignment::from_string("10x"));
  CHECK(Assignment::ones(70).weight() == 70);
  CHECK(Assignment::zeros(70).weight() == 0);
}

TEST_CASE("majority boundary follows ceil(n/2)") {
  CHECK(majority(2, 3));
  CHECK_FALSE(majority(1, 3));
  CHECK(majority(2, 4));
  CHECK_FALSE(majority(1, 4));
  CHECK(minterm_weight(7) == 4);
  CHECK(minterm_weight(8) == 4);
}

TEST_CASE("standard threshold is the least integer >= fan-in / 2") {
  for (std::int64_t f = 1; f <= 40; ++f) {
    std::int64_t t = 0;
    while (2 * t < f) ++t;
    CHECK(standard_threshold(f) == t);
  }
}

TEST_CASE("packed evaluator agrees with gate-by-gate evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 10);
    const std::uint32_t depth = 1 + static_cast<std::uint32_t>(rng() % 3);
    const auto c = testing::random_circuit(rng, n, 1 + static_cast<std::int64_t>(rng() % 7), depth);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      REQUIRE(eval_circuit(c, testing::from_mask(n, x)) == testing::naive_eval(c, x));
  }
}

TEST_CASE("evaluator handles inputs wider than one word") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = testing::random_circuit(rng, 150, 9, 2);
    for (int s = 0; s < 50; ++s) {
      std::vector<std::uint8_t> bits(150);
      for (auto& b : bits) b = rng() & 1U;
      const auto a = Assignment::from_bits(bits);
      // Independent evaluation over the bit vector.
      std::vector<int> bottom;
      for (const auto& g : c.layer(1)) {
        std::int64_t s2 = 0;
        for (const auto& in : g.inputs) s2 += bits[in.ref.id - 1] * in.weight;
        bottom.push_back(s2 >= g.theta);
      }
      std::int64_t top = 0;
      for (const auto& in : c.top_gate().inputs) top += bottom[in.ref.id - 1] * in.weight;
      REQUIRE(eval_circuit(c, a) == (top >= c.top_gate().theta));
    }
  }
}

TEST_CASE("circuits are monotone") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t n = 12;
    const auto c = testing::random_circuit(rng, n, 6, 1 + trial % 3);
    for (int s = 0; s < 200; ++s) {
      const std::uint64_t lo = rng() & 0xFFF;
      const std::uint64_t hi = lo | (rng() & 0xFFF);
      REQUIRE(testing::naive_eval(c, lo) <= testing::naive_eval(c, hi));
      REQUIRE(eval_circuit(c, testing::from_mask(n, lo)) <= eval_circuit(c, testing::from_mask(n, hi)));
    }
  }
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_circuit(rng, 1 + rng() % 20, 1 + rng() % 9, 1 + trial % 3);
    const auto text = serialize(c);
    const auto back = parse(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("parser accepts comments and blank lines") {
  const char* text =
      "# a tiny circuit\n"
      "majcirc 1\n"
      "\n"
      "n 3 k 3 depth 1\n"
      "gate 1:1 theta 2 : x1*1 x2*1 x3*1   # majority\n"
      "top g1:1\n";
  const auto c = parse(text);
  CHECK(c.n() == 3);
  CHECK(eval_circuit(c, Assignment::from_string("110")));
  CHECK_FALSE(eval_circuit(c, Assignment::from_string("100")));
}

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse errors report the offending line") {
  const std::string head = "majcirc 1\nn 3 k 3 depth 2\n";
  CHECK(parse_error_line("majcirc 2\n") == 1);
  CHECK(parse_error_line("majcirc 1\nn 3 k 3\n") == 2);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1 x4*1\ngate 2:1 theta 1 : g1:1*1\ntop g2:1\n") == 3);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*2 x2*2\ngate 2:1 theta 1 : g1:1*1\ntop g2:1\n") == 3);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*0\ngate 2:1 theta 1 : g1:1*1\ntop g2:1\n") == 3);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1 x2*1\ngate 2:1 theta 1 : g1:2*1\ntop g2:1\n") == 4);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1\ngate 2:1 theta 1 : x1*1\ntop g2:1\n") == 4);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1\ngate 2:1 theta 1 : g1:1*1\n") == 4);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1 x1*1\ngate 2:1 theta 1 : g1:1*1\ntop g2:1\n") == 3);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1\ngate 2:1 theta 1 : g1:1*1\ntop g1:1\n") == 5);
  CHECK(parse_error_line(head + "gate 1:1 theta 2 : x1*1\ngate 1:1 theta 1 : x2*1\ngate 2:1 theta 1 : g1:1*1\ntop g2:1\n") == 4);
  CHECK_THROWS_AS(parse(""), Error);
}

TEST_CASE("constructor rejects malformed layering") {
  using L = std::vector<std::vector<ThresholdGate>>;
  const ThresholdGate ok{{{Ref::var(1), 1}}, 1};
  CHECK_THROWS_AS(LayeredCircuit(2, 3, L{}, {1, 1}), Error);
  CHECK_THROWS_AS(LayeredCircuit(2, 3, L{{ThresholdGate{{{Ref::var(1), -1}}, 1}}}, {1, 1}), Error);
  CHECK_THROWS_AS(LayeredCircuit(2, 1, L{{ThresholdGate{{{Ref::var(1), 2}}, 1}}}, {1, 1}), Error);
  CHECK_THROWS_AS(LayeredCircuit(2, 3, L{{ok}, {ThresholdGate{{{Ref::var(1), 1}}, 1}}}, {2, 1}), Error);
  CHECK_NOTHROW(LayeredCircuit(2, 3, L{{ok}}, {1, 1}));
}

TEST_CASE("inspect reports fan-in, weights and standardness") {
  const auto c = parse(
      "majcirc 1\nn 4 k 5 depth 2\n"
      "gate 1:1 theta 2 : x1*2 x2*1\n"
      "gate 1:2 theta 2 : x3*1 x4*1 x1*1\n"
      "gate 2:1 theta 1 : g1:1*1 g1:2*1\n"
      "top g2:1\n");
  const auto info = inspect(c);
  CHECK(info.n == 4);
  CHECK(info.declared_k == 5);
  CHECK(info.max_fan_in == 3);
  CHECK(info.depth == 2);
  CHECK(info.gate_count == 3);
  CHECK(info.max_weight == 2);
  CHECK(info.all_standard);
}

TEST_CASE("gate diff is weighted sum minus threshold") {
  const ThresholdGate g{{{Ref::var(1), 2}, {Ref::var(3), 1}}, 2};
  const std::vector<std::uint8_t> v{1, 0, 1, 0};   // x1 = 1, x3 = 1
  CHECK(gate_diff(g, v) == 1);
  CHECK(eval_gate(g, v));
  const std::vector<std::uint8_t> u{0, 0, 1, 0};
  CHECK(gate_diff(g, u) == -1);
  CHECK_FALSE(eval_gate(g, u));
  const std::vector<std::uint8_t> w{1, 0, 0, 0};
  CHECK(gate_diff(g, w) == 0);
  CHECK(eval_gate(g, w));
}

TEST_CASE("counter rng is a pure function of key and position") {
  CounterRng a(derive_seed(7, "x", 3));
  CounterRng b(derive_seed(7, "x", 3));
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(derive_seed(7, "x", 3) != derive_seed(7, "x", 4));
  CHECK(derive_seed(7, "x", 3) != derive_seed(7, "y", 3));
  CHECK(derive_seed(7, "x", 3) != derive_seed(8, "x", 3));
  // below() stays in range and hits every value.
  CounterRng r(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.below(13);
    REQUIRE(v < 13);
    seen.insert(v);
  }
  CHECK(seen.size() == 13);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (unsigned workers : {1u, 2u, 8u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(100, workers, [](std::size_t i) {
                      if (i == 42) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }
}
