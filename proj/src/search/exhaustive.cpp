#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "search/internal.hpp"
#include "search/search.hpp"

namespace majcirc::search {

namespace {

struct Row {
  std::vector<std::uint32_t> mult;   // per variable
  std::int64_t theta;
};

/// Rows in increasing lexicographic order of their sorted variable lists,
/// i.e. decreasing order of the multiplicity vector.
std::vector<Row> candidate_rows(const SearchSpaceSpec& spec) {
  const std::uint32_t n = spec.n, k = spec.k, L = spec.levels();
  std::vector<std::vector<std::uint32_t>> mults;
  std::vector<std::uint32_t> cur(n, 0);
  auto rec = [&](auto&& self, std::uint32_t i, std::uint32_t left) -> void {
    if (i == n) {
      if (left == 0) mults.push_back(cur);
      return;
    }
    for (std::uint32_t c = std::min(L, left) + 1; c-- > 0;) {
      cur[i] = c;
      self(self, i + 1, left - c);
    }
    cur[i] = 0;
  };
  rec(rec, 0, k);
  std::vector<Row> rows;
  for (auto& m : mults) {
    if (spec.standard_thresholds) {
      rows.push_back({m, standard_threshold(k)});
    } else {
      for (std::uint32_t t = 1; t <= k; ++t) rows.push_back({m, t});
    }
  }
  return rows;
}

LayeredCircuit circuit_of(const SearchSpaceSpec& spec, const std::vector<Row>& rows, const std::vector<std::uint32_t>& pick) {
  std::vector<ThresholdGate> bottom;
  for (auto r : pick) {
    ThresholdGate g;
    for (std::uint32_t i = 0; i < spec.n; ++i)
      if (rows[r].mult[i] > 0) g.inputs.push_back({Ref::var(i + 1), rows[r].mult[i]});
    g.theta = rows[r].theta;
    bottom.push_back(std::move(g));
  }
  std::vector<WeightedInput> top;
  for (std::uint32_t g = 1; g <= spec.k; ++g) top.push_back({Ref::gate(1, g), 1});
  std::vector<std::vector<ThresholdGate>> layers{std::move(bottom), {standard_gate(std::move(top))}};
  return LayeredCircuit(spec.n, spec.k, std::move(layers), GateId{2, 1});
}

}  // namespace

std::uint64_t candidate_row_count(const SearchSpaceSpec& spec) {
  spec.validate();
  const std::uint32_t k = spec.k, L = spec.levels();
  // ways[s] = number of multiplicity vectors over the variables so far summing to s.
  std::vector<double> ways(k + 1, 0.0);
  ways[0] = 1.0;
  for (std::uint32_t i = 0; i < spec.n; ++i) {
    std::vector<double> next(k + 1, 0.0);
    for (std::uint32_t s = 0; s <= k; ++s)
      for (std::uint32_t c = 0; c <= L && s + c <= k; ++c) next[s + c] += ways[s];
    ways = std::move(next);
  }
  double rows = ways[k] * (spec.standard_thresholds ? 1.0 : k);
  return rows >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(rows);
}

double exhaustive_space_estimate(const SearchSpaceSpec& spec) {
  const double r = static_cast<double>(candidate_row_count(spec));
  // C(r + k - 1, k)
  double total = 1.0;
  for (std::uint32_t i = 1; i <= spec.k; ++i) total = total * (r + i - 1) / i;
  return total;
}

std::optional<LayeredCircuit> exhaustive_search(const SearchSpaceSpec& spec, const ExhaustiveOptions& opts) {
  const double estimate = exhaustive_space_estimate(spec);
  if (estimate > opts.space_cap)
    throw Error(ErrorKind::cap_exceeded, "exhaustive search space of about " + std::to_string(estimate) +
                                             " row sequences exceeds the cap");
  const auto rows = candidate_rows(spec);
  const auto constraints = detail::constraint_assignments(spec);
  const std::size_t R = rows.size(), M = constraints.size();
  const std::uint32_t k = spec.k;
  const auto top = static_cast<std::uint32_t>(standard_threshold(k));

  // fires[r * M + m]: row r fires on constraint m.
  std::vector<std::uint8_t> fires(R * M);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t m = 0; m < M; ++m) {
      std::int64_t sum = 0;
      for (std::uint32_t i = 0; i < spec.n; ++i)
        if (constraints[m].a[i]) sum += rows[r].mult[i];
      fires[r * M + m] = sum >= rows[r].theta ? 1 : 0;
    }
  }

  std::atomic<std::size_t> best{R};
  std::vector<std::vector<std::uint32_t>> found(R);

  parallel_for(R, opts.workers, [&](std::size_t first) {
    if (best.load() < first) return;
    std::vector<std::uint32_t> count(M, 0);
    std::vector<std::uint32_t> pick;
    std::uint64_t nodes = 0;
    bool aborted = false;

    auto feasible = [&](std::uint32_t depth) {
      const std::uint32_t remaining = k - depth;
      for (std::size_t m = 0; m < M; ++m) {
        if (constraints[m].expected) {
          if (count[m] + remaining < top) return false;
        } else if (count[m] >= top) {
          return false;
        }
      }
      return true;
    };
    auto apply = [&](std::size_t r, int sign) {
      const auto* f = &fires[r * M];
      for (std::size_t m = 0; m < M; ++m) count[m] += sign * f[m];
    };

    auto dfs = [&](auto&& self, std::size_t min_row) -> bool {
      if (pick.size() == k) return true;
      if ((++nodes & 0xfff) == 0 && best.load(std::memory_order_relaxed) < first) {
        aborted = true;
        return false;
      }
      for (std::size_t r = min_row; r < R && !aborted; ++r) {
        apply(r, 1);
        pick.push_back(static_cast<std::uint32_t>(r));
        if (feasible(static_cast<std::uint32_t>(pick.size())) && self(self, r)) return true;
        pick.pop_back();
        apply(r, -1);
      }
      return false;
    };

    apply(first, 1);
    pick.push_back(static_cast<std::uint32_t>(first));
    if (feasible(1) && dfs(dfs, first)) {
      found[first] = pick;
      std::size_t cur = best.load();
      while (first < cur && !best.compare_exchange_weak(cur, first)) {
      }
    }
  });

  const std::size_t winner = best.load();
  if (winner == R) return std::nullopt;
  auto circuit = circuit_of(spec, rows, found[winner]);
  if (detail::count_errors(circuit) != 0)
    throw Error(ErrorKind::encoder_bug, "exhaustive search produced a circuit that fails verification");
  return circuit;
}

}  // namespace majcirc::search
