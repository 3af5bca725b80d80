#include <functional>
#include <sstream>

#include "construct/construct.hpp"
#include "core/error.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "search/search.hpp"

using namespace majcirc;
using namespace majcirc::search;

namespace {

using Row = std::vector<std::uint32_t>;

/// All sorted rows of length k over [n] with each value used at most m times.
std::vector<Row> all_rows(std::uint32_t n, std::uint32_t k, std::uint32_t m) {
  std::vector<Row> out;
  Row cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = from; v <= n; ++v) {
      const auto used = static_cast<std::uint32_t>(std::count(cur.begin(), cur.end(), v));
      if (used >= m) continue;
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

bool rows_compute_majority(std::uint32_t n, const std::vector<Row>& rows) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::uint32_t ones = 0;
    for (const auto& r : rows) {
      std::uint32_t s = 0;
      for (auto v : r) s += (x >> (v - 1)) & 1U;
      ones += 2 * s >= r.size();
    }
    if ((2 * ones >= rows.size()) != testing::maj(x, n)) return false;
  }
  return true;
}

/// Existence of a k-gate, fan-in-k standard circuit, by direct enumeration.
bool brute_exists(std::uint32_t n, std::uint32_t k, std::uint32_t m) {
  const auto rows = all_rows(n, k, m);
  std::vector<Row> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) return rows_compute_majority(n, pick);
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick.push_back(rows[i]);
      if (rec(i)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

/// Satisfiability by trying every assignment (tiny instances only).
bool brute_sat(const CnfInstance& inst) {
  REQUIRE(inst.num_vars <= 24);
  Model m;
  m.value.assign(inst.num_vars + 1, 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.num_vars); ++x) {
    for (std::uint32_t v = 1; v <= inst.num_vars; ++v) m.value[v] = (x >> (v - 1)) & 1U;
    if (check_model(inst, m)) return true;
  }
  return false;
}

SearchSpaceSpec spec_of(std::uint32_t n, std::uint32_t k, std::uint32_t m = 2) {
  SearchSpaceSpec s;
  s.n = n;
  s.k = k;
  s.multiplicity_max = m;
  return s;
}

std::string model_text(const Model& m) {
  std::ostringstream os;
  os << "s SATISFIABLE\nv";
  for (std::size_t v = 1; v < m.value.size(); ++v) os << ' ' << (m[v] ? "" : "-") << v;
  os << " 0\n";
  return os.str();
}

}  // namespace

TEST_CASE("exhaustive search agrees with brute-force enumeration on tiny spaces") {
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (std::uint32_t k = 1; k <= 4; ++k)
      for (std::uint32_t m = 1; m <= 2; ++m) {
        if (k > n * m) {
          CHECK_THROWS_AS(exhaustive_search(spec_of(n, k, m)), Error);
          continue;
        }
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(m);
        const bool expected = brute_exists(n, k, m);
        for (unsigned workers : {1u, 4u}) {
          const auto found = exhaustive_search(spec_of(n, k, m), {workers, 1e9});
          CHECK(found.has_value() == expected);
          if (found) {
            CHECK(found->n() == n);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
              REQUIRE(testing::naive_eval(*found, x) == testing::maj(x, n));
          }
        }
      }
}

TEST_CASE("exhaustive search result does not depend on worker count") {
  const auto a = exhaustive_search(spec_of(5, 5), {1, 1e9});
  const auto b = exhaustive_search(spec_of(5, 5), {8, 1e9});
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(*a == *b);
}

TEST_CASE("exhaustive search refuses oversized spaces") {
  CHECK(exhaustive_space_estimate(spec_of(9, 7)) > 1e9);
  CHECK_THROWS_AS(exhaustive_search(spec_of(9, 7)), Error);
}

TEST_CASE("tiny encodings are satisfiable exactly when a circuit exists") {
  for (std::uint32_t n = 1; n <= 3; ++n)
    for (std::uint32_t k = 1; k <= 3; ++k) {
      if (k > n) continue;
      auto s = spec_of(n, k, 1);
      const auto inst = encode(s);
      if (inst.num_vars > 24) continue;
      CAPTURE(n);
      CAPTURE(k);
      CHECK(brute_sat(inst) == brute_exists(n, k, 1));
    }
}

TEST_CASE("published circuits are models of their encodings") {
  for (auto tag : {construct::PublishedTag::n7, construct::PublishedTag::n9}) {
    const auto c = construct::published_circuit(tag);
    auto s = spec_of(c.n(), static_cast<std::uint32_t>(c.k()));
    const auto inst = encode(s);
    const auto model = model_from_circuit(inst, c);
    CHECK(check_model(inst, model));
    const auto back = decode(inst, model);
    // Same bottom multiset of gates, possibly reordered.
    auto rows_of = [](const LayeredCircuit& x) {
      std::vector<std::string> out;
      for (const auto& g : x.layer(1)) {
        ThresholdGate copy = g;
        std::sort(copy.inputs.begin(), copy.inputs.end(),
                  [](const WeightedInput& a, const WeightedInput& b) { return a.ref < b.ref; });
        std::ostringstream os;
        for (const auto& in : copy.inputs) os << in.ref.id << '*' << in.weight << ' ';
        out.push_back(os.str());
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    CHECK(rows_of(back) == rows_of(c));
  }
}

TEST_CASE("symmetry breaking and free thresholds keep published models") {
  const auto c = construct::published_circuit(construct::PublishedTag::n7);
  auto s = spec_of(7, 5);
  s.standard_thresholds = false;
  s.constraint_set = ConstraintSet::all_inputs;
  const auto inst = encode(s);
  CHECK(check_model(inst, model_from_circuit(inst, c)));
  s.symmetry_breaking = false;
  const auto inst2 = encode(s);
  CHECK(check_model(inst2, model_from_circuit(inst2, c)));
  CHECK(inst2.num_clauses < inst.num_clauses);
}

TEST_CASE("models of a wrong circuit violate the encoding") {
  // Swap one variable of the published n7 circuit; the result is not majority.
  const auto rows = construct::published_rows(construct::PublishedTag::n7);
  auto broken = rows;
  broken[0] = {1, 2, 3, 4, 4};
  const auto c = construct::circuit_from_rows(7, broken);
  const auto inst = encode(spec_of(7, 5));
  const auto model = model_from_circuit(inst, c);
  CHECK_FALSE(check_model(inst, model));
}

TEST_CASE("clause estimate bounds the actual count") {
  for (std::uint32_t n : {3u, 5u, 7u})
    for (std::uint32_t k : {3u, 5u}) {
      const auto s = spec_of(n, k);
      CHECK(encode(s).num_clauses <= estimate_clauses(s));
    }
  EncodeOptions tight;
  tight.clause_cap = 100;
  CHECK_THROWS_AS(encode(spec_of(7, 5), tight), Error);
}

TEST_CASE("dimacs header and clause terminators") {
  const auto inst = encode(spec_of(3, 3));
  const auto text = to_dimacs(inst);
  std::istringstream is(text);
  std::string line;
  std::uint64_t clauses = 0;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream h(line);
      std::string p, cnf;
      std::uint64_t v = 0, c = 0;
      h >> p >> cnf >> v >> c;
      CHECK(cnf == "cnf");
      CHECK(v == inst.num_vars);
      CHECK(c == inst.num_clauses);
      header = true;
      continue;
    }
    CHECK(line.size() >= 1);
    CHECK(line.substr(line.size() - 2) == " 0");
    ++clauses;
  }
  CHECK(header);
  CHECK(clauses == inst.num_clauses);
}

TEST_CASE("varmap round trip rebuilds the same instance") {
  auto s = spec_of(5, 5);
  s.standard_thresholds = false;
  const auto inst = encode(s);
  const auto text = varmap_text(inst);
  CHECK(text.rfind("# majcirc varmap 1", 0) == 0);
  const auto back = instance_from_varmap(text);
  CHECK(back.spec == inst.spec);
  CHECK(back.num_vars == inst.num_vars);
  CHECK(back.literals == inst.literals);
  CHECK_THROWS_AS(instance_from_varmap("# majcirc varmap 1\nspec n 5\n"), Error);
  std::string tampered = text;
  const auto pos = tampered.find("\nv ");
  tampered.replace(pos + 3, 1, "9");
  CHECK_THROWS_AS(instance_from_varmap(tampered), Error);
}

TEST_CASE("solver output parsing") {
  const auto m = parse_model("c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n", 5);
  CHECK(m[1]);
  CHECK_FALSE(m[2]);
  CHECK(m[3]);
  CHECK(m.assigned(4));
  CHECK_FALSE(m[4]);
  CHECK_FALSE(m.assigned(5));
  const auto bare = parse_model("1 -2 3 0", 3);
  CHECK(bare[3]);
  CHECK_THROWS_AS(parse_model("s UNSATISFIABLE\n", 3), Error);
  try {
    parse_model("UNSAT\n", 3);
    FAIL("expected unsatisfiable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsatisfiable);
  }
  CHECK_THROWS_AS(parse_model("v 1 x 0\n", 3), Error);
  CHECK_THROWS_AS(parse_model("v 7 0\n", 3), Error);
}

TEST_CASE("decode rejects inconsistent models") {
  const auto c = construct::published_circuit(construct::PublishedTag::n7);
  const auto inst = encode(spec_of(7, 5));
  auto model = model_from_circuit(inst, c);
  CHECK(decode(inst, parse_model(model_text(model), inst.num_vars)) .n() == 7);
  // Level 2 set without level 1 breaks the thermometer code.
  const auto lvl1 = inst.selector(1, 7, 1);
  const auto lvl2 = inst.selector(1, 7, 2);
  model.value[lvl1] = 0;
  model.value[lvl2] = 1;
  try {
    decode(inst, model);
    FAIL("expected a decode failure");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::inconsistent_model || e.kind() == ErrorKind::encoder_bug));
  }
  Model partial;
  partial.value.assign(inst.num_vars + 1, -1);
  CHECK_THROWS_AS(decode(inst, partial), Error);
}

TEST_CASE("omission graph components and p") {
  // Triangle on {1,2,3}, a path 4-5, isolated 6 and 7.
  const OmissionGraph g(7, {{1, 2}, {2, 3}, {1, 3}, {4, 5}});
  const auto& comps = g.components();
  REQUIRE(comps.size() == 4);
  std::int64_t psum = 0;
  std::size_t vertices = 0;
  for (const auto& c : comps) {
    psum += c.p();
    vertices += c.vertices.size();
  }
  CHECK(vertices == 7);
  CHECK(psum == 4 - 7);
  for (std::size_t i = 1; i < comps.size(); ++i) CHECK(comps[i - 1].p() <= comps[i].p());
}

TEST_CASE("fooling input fools random n-2 circuits") {
  for (std::uint32_t n = 5; n <= 15; n += 2)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto c = construct::circuit_from_omissions(n, construct::random_omissions(n, seed));
      const auto res = fooling_details(c);
      REQUIRE(res.assignment.n() == n);
      REQUIRE(res.assignment.weight() == (n + 1) / 2);
      REQUIRE(res.zero_edges + 1 <= (n - 1) / 2);
      std::uint64_t mask = 0;
      for (std::uint32_t i = 0; i < n; ++i)
        if (res.assignment[i]) mask |= std::uint64_t{1} << i;
      REQUIRE_FALSE(testing::naive_eval(c, mask));
    }
}

TEST_CASE("fooling works on multi-edges") {
  const auto c = construct::circuit_from_omissions(7, {{1, 2}, {1, 2}, {1, 2}, {3, 4}, {3, 4}});
  const auto a = fooling_input(c);
  CHECK(a.weight() == 4);
  CHECK_FALSE(eval_circuit(c, a));
}

TEST_CASE("fooling preconditions") {
  using construct::PublishedTag;
  CHECK_THROWS_AS(fooling_input(construct::published_circuit(PublishedTag::n7)), Error);   // repeats a variable
  CHECK_THROWS_AS(fooling_input(construct::build_depth3({2})), Error);
  CHECK_THROWS_AS(fooling_input(construct::build_correlation({8, 6, 1})), Error);
}
