#include <cmath>
#include <map>
#include <set>

#include "construct/construct.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "verify/verify.hpp"

using namespace majcirc;
using namespace majcirc::verify;

namespace {

std::uint64_t choose(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("verify_all counts errors per weight like a direct scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 12);
    const auto c = testing::random_circuit(rng, n, 5, 2);
    std::map<std::uint32_t, std::uint64_t> errors;
    std::uint64_t total_errors = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      if (testing::naive_eval(c, x) != testing::maj(x, n)) {
        ++errors[std::popcount(x)];
        ++total_errors;
      }
    for (unsigned workers : {1u, 3u}) {
      VerifyOptions o;
      o.workers = workers;
      const auto r = verify_all(c, o);
      CHECK(r.total_checked == (std::uint64_t{1} << n));
      CHECK(r.errors == total_errors);
      for (const auto& [w, e] : errors) CHECK(r.errors_by_weight.at(w) == e);
    }
  }
}

TEST_CASE("verify_all refuses inputs above the bit cap") {
  const auto c = construct::build_correlation({40, 5, 1});
  VerifyOptions o;
  o.exhaustive_bit_cap = 30;
  CHECK_THROWS_AS(verify_all(c, o), Error);
}

TEST_CASE("layer enumerator lists every weight-w vector once in lexicographic order") {
  for (std::uint32_t n = 1; n <= 10; ++n)
    for (std::uint32_t w = 0; w <= n; ++w) {
      const auto all = enumerate_layer(n, w);
      CHECK(all.size() == choose(n, w));
      std::set<std::string> seen;
      std::string prev;
      for (const auto& a : all) {
        CHECK(a.weight() == w);
        const auto s = a.to_string();
        CHECK(seen.insert(s).second);
        if (!prev.empty()) CHECK(prev < s);
        prev = s;
      }
    }
}

TEST_CASE("layer enumerator can start at a rank") {
  const auto all = enumerate_layer(9, 4);
  for (std::uint64_t r : {0ULL, 1ULL, 17ULL, 125ULL}) {
    LayerEnumerator e(9, 4, r);
    REQUIRE_FALSE(e.done());
    CHECK(e.current() == all[r]);
  }
}

TEST_CASE("binomial_u64 and colex unranking") {
  CHECK(binomial_u64(10, 3) == 120u);
  CHECK(binomial_u64(64, 32) == 1832624140942590534ULL);
  CHECK_FALSE(binomial_u64(200, 100).has_value());
  for (std::uint32_t n = 1; n <= 9; ++n)
    for (std::uint32_t w = 0; w <= n; ++w) {
      std::set<std::vector<std::uint32_t>> seen;
      for (std::uint64_t r = 0; r < choose(n, w); ++r) {
        const auto s = colex_unrank(n, w, r);
        REQUIRE(s.size() == w);
        std::uint64_t rank = 0;
        for (std::uint32_t j = 0; j < w; ++j) {
          REQUIRE(s[j] < n);
          if (j > 0) REQUIRE(s[j - 1] < s[j]);
          rank += choose(s[j], j + 1);
        }
        CHECK(rank == r);
        seen.insert(s);
      }
      CHECK(seen.size() == choose(n, w));
    }
}

TEST_CASE("layer sampler is uniform on a small layer") {
  const LayerSampler s(6, 3);
  std::map<std::string, int> counts;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const auto a = s.sample(derive_seed(3, "t", i));
    REQUIRE(a.weight() == 3);
    ++counts[a.to_string()];
  }
  CHECK(counts.size() == 20);
  // Chi-square with 19 degrees of freedom; 43.8 is the 0.999 quantile.
  double chi = 0;
  const double expected = draws / 20.0;
  for (const auto& [k, v] : counts) chi += (v - expected) * (v - expected) / expected;
  CHECK(chi < 43.8);
}

TEST_CASE("layer sampler falls back to shuffling on huge layers") {
  const LayerSampler s(400, 200);
  std::set<std::string> seen;
  for (int i = 0; i < 50; ++i) {
    const auto a = s.sample(derive_seed(1, "big", i));
    CHECK(a.weight() == 200);
    seen.insert(a.to_string());
  }
  CHECK(seen.size() == 50);
}

TEST_CASE("exact minmax checks exactly the two middle layers") {
  const auto c = construct::published_circuit(construct::PublishedTag::n9);
  const auto r = verify_minmax(c, {true, 0, 0});
  CHECK(r.total_checked == choose(9, 5) + choose(9, 4));
  CHECK(r.errors == 0);
  CHECK(r.layers == std::vector<std::uint32_t>{4, 5});
  // An even n: minterm weight n/2, maxterm weight n/2 - 1.
  const auto d = construct::build_depth3({2});
  const auto rd = verify_minmax(d, {true, 0, 0});
  CHECK(rd.total_checked == choose(16, 8) + choose(16, 7));
  CHECK(rd.errors == 0);
}

TEST_CASE("minmax errors imply all-input errors and vice versa for monotone circuits") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t n = 3 + static_cast<std::uint32_t>(rng() % 8);
    const auto c = testing::random_circuit(rng, n, 6, 2);
    const bool all_ok = verify_all(c).errors == 0;
    const bool mm_ok = verify_minmax(c, {true, 0, 0}).errors == 0;
    CHECK(all_ok == mm_ok);
  }
}

TEST_CASE("sampled modes are reproducible and worker-independent") {
  const auto c = construct::build_correlation({61, 9, 2});
  VerifyOptions one, many;
  many.workers = 5;
  const auto a = estimate_agreement(c, 20000, 9, one);
  const auto b = estimate_agreement(c, 20000, 9, many);
  CHECK(a.to_json() == b.to_json());
  const auto d = estimate_agreement(c, 20000, 10, one);
  CHECK(a.to_json() != d.to_json());
  const auto m1 = verify_minmax(c, {false, 5000, 4}, one);
  const auto m2 = verify_minmax(c, {false, 5000, 4}, many);
  CHECK(m1.to_json() == m2.to_json());
  CHECK(m1.total_checked == 10000);
}

TEST_CASE("agreement estimate carries the Hoeffding half-width") {
  const auto c = construct::build_correlation({31, 7, 2});
  VerifyOptions o;
  o.delta = 0.05;
  const auto r = estimate_agreement(c, 1000, 1, o);
  REQUIRE(r.ci_halfwidth.has_value());
  CHECK(*r.ci_halfwidth == doctest::Approx(std::sqrt(std::log(2.0 / 0.05) / 2000.0)));
  CHECK(r.total_checked == 1000);
}

TEST_CASE("uniform assignments have binomial weight") {
  double mean = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) mean += uniform_assignment(100, derive_seed(4, "u", i)).weight();
  mean /= draws;
  // Standard error of the mean is 5 / sqrt(20000) ~ 0.035.
  CHECK(std::abs(mean - 50.0) < 0.2);
}

TEST_CASE("report merge is associative and commutative") {
  VerificationReport a, b, c;
  a.record(3, true);
  a.record(4, false);
  b.record(3, false);
  b.record(5, true);
  c.record(4, true);
  auto ab_c = a;
  ab_c.merge(b);
  ab_c.merge(c);
  auto bc = b;
  bc.merge(c);
  auto a_bc = a;
  a_bc.merge(bc);
  auto cba = c;
  cba.merge(b);
  cba.merge(a);
  CHECK(ab_c.to_csv() == a_bc.to_csv());
  CHECK(ab_c.to_csv() == cba.to_csv());
  CHECK(ab_c.errors == 3);
  CHECK(ab_c.total_checked == 5);
  const auto [num, den] = ab_c.agreement();
  CHECK(num == 2);
  CHECK(den == 5);
  CHECK(ab_c.error_fraction(3) == doctest::Approx(0.5));
}

TEST_CASE("json report has stable keys") {
  const auto r = verify_all(construct::published_circuit(construct::PublishedTag::n7));
  const auto j = r.to_json();
  CHECK(j.find("\"mode\": \"exhaustive\"") != std::string::npos);
  CHECK(j.find("\"errors\": 0") != std::string::npos);
  CHECK(j.find("\"total_checked\": 128") != std::string::npos);
  CHECK(mode_name(Mode::layer) == "layer");
}
