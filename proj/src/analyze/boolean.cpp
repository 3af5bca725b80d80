#include <algorithm>
#include <bit>
#include <functional>
#include <string>

#include "analyze/analyze.hpp"
#include "core/error.hpp"
#include "core/evaluator.hpp"

namespace majcirc::analyze {

namespace {

void check_cap(std::uint32_t n) {
  if (n > kTruthTableCap)
    throw Error(ErrorKind::cap_exceeded, "truth tables are limited to n <= " + std::to_string(kTruthTableCap) +
                                             ", got n = " + std::to_string(n));
}

}  // namespace

TruthTable::TruthTable(std::uint32_t n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
  check_cap(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (words_.size() != (size + 63) / 64) throw Error(ErrorKind::invalid_argument, "truth table: wrong word count");
}

TruthTable TruthTable::from_function(std::uint32_t n, const std::function<bool(std::uint64_t)>& f) {
  check_cap(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> words((size + 63) / 64, 0);
  for (std::uint64_t x = 0; x < size; ++x)
    if (f(x)) words[x >> 6] |= std::uint64_t{1} << (x & 63);
  return TruthTable(n, std::move(words));
}

TruthTable TruthTable::from_circuit(const LayeredCircuit& c) {
  check_cap(c.n());
  const auto& ev = c.evaluator();
  auto scratch = ev.make_scratch();
  std::uint64_t in[1];
  return from_function(c.n(), [&](std::uint64_t x) {
    in[0] = x;
    return ev.eval(in, scratch);
  });
}

TruthTable TruthTable::majority(std::uint32_t n) {
  return from_function(n, [n](std::uint64_t x) { return majcirc::majority(static_cast<std::uint32_t>(std::popcount(x)), n); });
}

TruthTable TruthTable::dictator(std::uint32_t n, std::uint32_t i) {
  if (i < 1 || i > n) throw Error(ErrorKind::invalid_argument, "dictator: index out of range");
  return from_function(n, [i](std::uint64_t x) { return ((x >> (i - 1)) & 1U) != 0; });
}

TruthTable TruthTable::constant(std::uint32_t n, bool value) {
  return from_function(n, [value](std::uint64_t) { return value; });
}

TruthTable TruthTable::of_gate(const ThresholdGate& g, std::uint32_t n) {
  for (const auto& in : g.inputs)
    if (!in.ref.is_variable() || in.ref.id < 1 || in.ref.id > n)
      throw Error(ErrorKind::invalid_argument, "truth table of a gate: inputs must be variables x1..xn");
  return from_function(n, [&g](std::uint64_t x) {
    std::int64_t sum = 0;
    for (const auto& in : g.inputs)
      if ((x >> (in.ref.id - 1)) & 1U) sum += in.weight;
    return sum >= g.theta;
  });
}

std::uint64_t boundary_size(const TruthTable& f) {
  const std::uint32_t n = f.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    const bool fx = f(x);
    for (std::uint32_t i = 0; i < n; ++i)
      if (f(x ^ (std::uint64_t{1} << i)) != fx) ++count;
  }
  return count;
}

Rational influence(const TruthTable& f) {
  return Rational(BigInt(boundary_size(f)), BigInt(1) << f.n());
}

KillCost kill_cost(const ThresholdGate& gate) {
  std::vector<std::int64_t> w;
  for (const auto& in : gate.inputs) {
    if (!in.ref.is_variable()) throw Error(ErrorKind::precondition, "kill_cost: gate must read variables only");
    w.push_back(in.weight);
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  std::int64_t total = 0;
  for (auto x : w) total += x;

  KillCost out;
  // Largest weights first minimise the count in both directions.
  if (gate.theta > 0) {
    std::int64_t max_sum = total;
    std::uint32_t used = 0;
    while (max_sum >= gate.theta) max_sum -= w[used++];
    out.zeros_to_fix0 = used;
  }
  if (gate.theta <= total) {
    std::int64_t min_sum = 0;
    std::uint32_t used = 0;
    while (min_sum < gate.theta) min_sum += w[used++];
    out.ones_to_fix1 = used;
  }
  return out;
}

}  // namespace majcirc::analyze
