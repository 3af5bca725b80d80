#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "search/internal.hpp"
#include "search/search.hpp"
#include "verify/verify.hpp"

namespace majcirc::search {

namespace {

constexpr int kTrue = std::numeric_limits<int>::max();
constexpr int kFalse = -kTrue;

int var_of(int lit) { return lit < 0 ? -lit : lit; }

/// Clause emitter with constant folding. Literals kTrue/kFalse never reach
/// the output; definitions that fold to a constant or a single literal
/// allocate no variable.
class Builder {
 public:
  explicit Builder(CnfInstance& inst) : inst_(inst) {}

  int fresh() { return static_cast<int>(++inst_.num_vars); }

  void clause(std::vector<int> lits) {
    std::vector<int> out;
    for (int l : lits) {
      if (l == kTrue) return;
      if (l == kFalse) continue;
      out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[i] == -out[j]) return;
    if (out.empty()) {
      // Unsatisfiable constraint: t and -t.
      const int t = true_lit();
      out.push_back(-t);
    }
    emit(out);
  }

  int define(std::vector<std::vector<int>> terms) {
    std::vector<std::vector<int>> kept;
    for (auto& term : terms) {
      std::vector<int> t;
      bool dead = false;
      for (int l : term) {
        if (l == kTrue) continue;
        if (l == kFalse) {
          dead = true;
          break;
        }
        t.push_back(l);
      }
      if (dead) continue;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      bool contradiction = false;
      for (std::size_t i = 0; i + 1 < t.size() && !contradiction; ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
          if (t[i] == -t[j]) contradiction = true;
      if (contradiction) continue;
      if (t.empty()) return kTrue;
      kept.push_back(std::move(t));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return kFalse;
    if (kept.size() == 1 && kept.front().size() == 1) return kept.front().front();

    const int v = fresh();
    for (const auto& t : kept) {
      std::vector<int> c{v};
      for (int l : t) c.push_back(-l);
      clause(std::move(c));
    }
    // v -> OR of terms, distributed into clauses.
    std::vector<int> pick(kept.size(), 0);
    for (;;) {
      std::vector<int> c{-v};
      for (std::size_t i = 0; i < kept.size(); ++i) c.push_back(kept[i][pick[i]]);
      clause(std::move(c));
      std::size_t i = 0;
      while (i < kept.size() && ++pick[i] == static_cast<int>(kept[i].size())) pick[i++] = 0;
      if (i == kept.size()) break;
    }
    inst_.definitions.push_back({static_cast<std::uint32_t>(v), std::move(kept)});
    return v;
  }

  /// out[j] <-> (number of true inputs >= j) for j in [0, cap].
  std::vector<int> counter(const std::vector<int>& inputs, std::uint32_t cap) {
    std::vector<int> prev(cap + 1, kFalse);
    prev[0] = kTrue;
    for (int x : inputs) {
      std::vector<int> cur(cap + 1, kFalse);
      cur[0] = kTrue;
      for (std::uint32_t j = 1; j <= cap; ++j) cur[j] = define({{prev[j]}, {x, prev[j - 1]}});
      prev = std::move(cur);
    }
    return prev;
  }

 private:
  int true_lit() {
    if (!inst_.true_var) {
      inst_.true_var = static_cast<std::uint32_t>(fresh());
      emit({static_cast<int>(*inst_.true_var)});
    }
    return static_cast<int>(*inst_.true_var);
  }

  void emit(const std::vector<int>& c) {
    inst_.literals.insert(inst_.literals.end(), c.begin(), c.end());
    inst_.literals.push_back(0);
    ++inst_.num_clauses;
  }

  CnfInstance& inst_;
};

double binom_d(std::uint32_t n, std::uint32_t w) {
  if (w > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0));
}

}  // namespace

std::vector<detail::Constraint> detail::constraint_assignments(const SearchSpaceSpec& spec) {
  std::vector<Constraint> out;
  const std::uint32_t n = spec.n;
  if (spec.constraint_set == ConstraintSet::all_inputs) {
    if (n > 20) throw Error(ErrorKind::cap_exceeded, "all-inputs constraints need n <= 20; use minmax");
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      std::vector<std::uint8_t> bits(n);
      for (std::uint32_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((x >> (n - 1 - i)) & 1U);
      auto a = Assignment::from_bits(bits);
      const bool maj = majority(a.weight(), n);
      out.push_back({std::move(a), maj});
    }
    return out;
  }
  const std::uint32_t w = minterm_weight(n);
  for (auto& a : verify::enumerate_layer(n, w)) out.push_back({std::move(a), true});
  for (auto& a : verify::enumerate_layer(n, w - 1)) out.push_back({std::move(a), false});
  return out;
}

std::uint64_t detail::count_errors(const LayeredCircuit& c) {
  return (c.n() <= 22 ? verify::verify_all(c) : verify::verify_minmax(c, verify::MinMaxMode{})).errors;
}

void SearchSpaceSpec::validate() const {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "search space: n must be positive");
  if (k < 1) throw Error(ErrorKind::invalid_argument, "search space: k must be positive");
  if (multiplicity_max < 1) throw Error(ErrorKind::invalid_argument, "search space: multiplicity_max must be >= 1");
  if (distinct_only && multiplicity_max != 1)
    throw Error(ErrorKind::invalid_argument, "search space: distinct_only requires multiplicity_max = 1");
  if (static_cast<std::uint64_t>(n) * levels() < k)
    throw Error(ErrorKind::invalid_argument, "search space: no gate of fan-in k fits n variables at this multiplicity");
}

std::uint32_t CnfInstance::selector(std::uint32_t gate, std::uint32_t x, std::uint32_t level) const {
  const std::uint32_t L = spec.levels();
  if (gate < 1 || gate > spec.k || x < 1 || x > spec.n || level < 1 || level > L)
    throw Error(ErrorKind::invalid_argument, "selector index out of range");
  return selectors.at(((gate - 1) * spec.n + (x - 1)) * L + (level - 1)).var;
}

std::uint32_t CnfInstance::threshold(std::uint32_t gate, std::int64_t theta) const {
  if (spec.standard_thresholds || gate < 1 || gate > spec.k || theta < 1 || theta > spec.k)
    throw Error(ErrorKind::invalid_argument, "threshold variable out of range");
  return thresholds.at((gate - 1) * spec.k + static_cast<std::uint32_t>(theta - 1)).var;
}

std::uint64_t estimate_clauses(const SearchSpaceSpec& spec) {
  const double L = spec.levels();
  const double k = spec.k;
  const double theta = spec.standard_thresholds ? std::ceil(k / 2) : k;
  const double top = std::ceil(k / 2);
  double total = k * (spec.n * L * (k + 1) * 4.0 + spec.n * L);
  if (spec.symmetry_breaking) total += (k - 1) * spec.n * L * 8.0;
  auto per_assignment = [&](double ones) {
    double c = k * ones * L * theta * 4.0 + k * top * 4.0;
    if (!spec.standard_thresholds) c += k * (3.0 * k + 1);
    return c;
  };
  if (spec.constraint_set == ConstraintSet::all_inputs) {
    for (std::uint32_t w = 0; w <= spec.n; ++w) total += binom_d(spec.n, w) * per_assignment(w);
  } else {
    const std::uint32_t w = minterm_weight(spec.n);
    total += binom_d(spec.n, w) * per_assignment(w) + binom_d(spec.n, w - 1) * per_assignment(w - 1);
  }
  if (!(total < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

CnfInstance encode(const SearchSpaceSpec& spec, const EncodeOptions& opts) {
  spec.validate();
  const auto estimate = estimate_clauses(spec);
  if (estimate > opts.clause_cap)
    throw Error(ErrorKind::cap_exceeded, "search space too large: about " + std::to_string(estimate) +
                                             " clauses, cap " + std::to_string(opts.clause_cap));

  CnfInstance inst;
  inst.spec = spec;
  Builder b(inst);
  const std::uint32_t n = spec.n, k = spec.k, L = spec.levels();

  for (std::uint32_t g = 1; g <= k; ++g)
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j <= L; ++j) inst.selectors.push_back({static_cast<std::uint32_t>(b.fresh()), g, i, j});
  if (!spec.standard_thresholds) {
    for (std::uint32_t g = 1; g <= k; ++g)
      for (std::uint32_t t = 1; t <= k; ++t) inst.thresholds.push_back({static_cast<std::uint32_t>(b.fresh()), g, t});
  }
  auto sel = [&](std::uint32_t g, std::uint32_t i, std::uint32_t j) {
    return static_cast<int>(inst.selectors[((g - 1) * n + (i - 1)) * L + (j - 1)].var);
  };
  auto thr = [&](std::uint32_t g, std::uint32_t t) {
    return static_cast<int>(inst.thresholds[(g - 1) * k + (t - 1)].var);
  };

  for (std::uint32_t g = 1; g <= k; ++g) {
    std::vector<int> row;
    for (std::uint32_t i = 1; i <= n; ++i) {
      for (std::uint32_t j = 1; j <= L; ++j) {
        row.push_back(sel(g, i, j));
        if (j > 1) b.clause({-sel(g, i, j), sel(g, i, j - 1)});
      }
    }
    const auto count = b.counter(row, k + 1);
    b.clause({count[k]});
    b.clause({-count[k + 1]});

    if (!spec.standard_thresholds) {
      std::vector<int> one;
      for (std::uint32_t t = 1; t <= k; ++t) one.push_back(thr(g, t));
      b.clause(one);
      for (std::uint32_t s = 1; s <= k; ++s)
        for (std::uint32_t t = s + 1; t <= k; ++t) b.clause({-thr(g, s), -thr(g, t)});
    }
  }

  if (spec.symmetry_breaking) {
    // Consecutive rows as bit strings (x_1 level 1, x_1 level 2, ...) are
    // non-increasing, i.e. the sorted variable lists are non-decreasing.
    for (std::uint32_t g = 1; g < k; ++g) {
      int eq = kTrue;
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = 1; j <= L; ++j) {
          const int x = sel(g, i, j), y = sel(g + 1, i, j);
          b.clause({-eq, x, -y});
          if (i == n && j == L) break;
          eq = b.define({{eq, x, y}, {eq, -x, -y}});
        }
      }
    }
  }

  const std::uint32_t top_theta = static_cast<std::uint32_t>(standard_threshold(k));
  const std::uint32_t std_theta = top_theta;
  for (const auto& [a, expected] : detail::constraint_assignments(spec)) {
    std::vector<int> outputs;
    outputs.reserve(k);
    for (std::uint32_t g = 1; g <= k; ++g) {
      std::vector<int> in;
      for (std::uint32_t i = 1; i <= n; ++i)
        if (a[i - 1])
          for (std::uint32_t j = 1; j <= L; ++j) in.push_back(sel(g, i, j));
      if (spec.standard_thresholds) {
        outputs.push_back(b.counter(in, std_theta)[std_theta]);
      } else {
        const auto count = b.counter(in, k);
        std::vector<std::vector<int>> fire;
        for (std::uint32_t t = 1; t <= k; ++t) fire.push_back({b.define({{thr(g, t), count[t]}})});
        outputs.push_back(b.define(std::move(fire)));
      }
    }
    const int top = b.counter(outputs, top_theta)[top_theta];
    b.clause({expected ? top : -top});
  }
  return inst;
}

bool check_model(const CnfInstance& inst, const Model& model) {
  bool satisfied = false;
  for (int l : inst.literals) {
    if (l == 0) {
      if (!satisfied) return false;
      satisfied = false;
      continue;
    }
    const auto v = static_cast<std::uint32_t>(var_of(l));
    if (model.assigned(v) && model[v] == (l > 0)) satisfied = true;
  }
  return true;
}

Model model_from_circuit(const CnfInstance& inst, const LayeredCircuit& c) {
  const auto& spec = inst.spec;
  const std::uint32_t n = spec.n, k = spec.k, L = spec.levels();
  auto reject = [](const std::string& why) { throw Error(ErrorKind::invalid_argument, "circuit outside the search space: " + why); };
  if (c.n() != n) reject("n differs");
  if (c.depth() != 2) reject("depth must be 2");
  if (c.layer(1).size() != k) reject("needs exactly k bottom gates");
  const auto& top = c.top_gate();
  if (top.inputs.size() != k || top.theta != standard_threshold(k)) reject("top must be a standard majority of all bottom gates");
  for (const auto& in : top.inputs)
    if (in.weight != 1) reject("top weights must be 1");

  struct Row {
    std::vector<std::uint32_t> mult;
    std::int64_t theta;
  };
  std::vector<Row> rows;
  for (const auto& g : c.layer(1)) {
    if (g.fan_in() != k) reject("bottom fan-in must be exactly k");
    Row r{std::vector<std::uint32_t>(n, 0), g.theta};
    for (const auto& in : g.inputs) {
      if (in.weight > L) reject("multiplicity above bound");
      r.mult[in.ref.id - 1] = static_cast<std::uint32_t>(in.weight);
    }
    if (spec.standard_thresholds ? g.theta != standard_threshold(k) : (g.theta < 1 || g.theta > k))
      reject("threshold not allowed");
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.mult != b.mult ? a.mult > b.mult : a.theta < b.theta;
  });

  Model m;
  m.value.assign(inst.num_vars + 1, -1);
  if (inst.true_var) m.value[*inst.true_var] = 1;
  for (const auto& s : inst.selectors) m.value[s.var] = rows[s.gate - 1].mult[s.x - 1] >= s.level ? 1 : 0;
  for (const auto& t : inst.thresholds) m.value[t.var] = rows[t.gate - 1].theta == t.theta ? 1 : 0;
  for (const auto& d : inst.definitions) {
    bool v = false;
    for (const auto& term : d.terms) {
      bool all = true;
      for (int l : term) {
        const auto x = static_cast<std::uint32_t>(var_of(l));
        if (m.value[x] < 0) throw Error(ErrorKind::encoder_bug, "definition uses an unassigned variable");
        if ((m.value[x] == 1) != (l > 0)) {
          all = false;
          break;
        }
      }
      if (all) {
        v = true;
        break;
      }
    }
    m.value[d.var] = v ? 1 : 0;
  }
  return m;
}

LayeredCircuit decode(const CnfInstance& inst, const Model& model) {
  const auto& spec = inst.spec;
  const std::uint32_t n = spec.n, k = spec.k, L = spec.levels();

  bool complete = true;
  for (std::uint32_t v = 1; v <= inst.num_vars; ++v)
    if (!model.assigned(v)) complete = false;
  if (complete && !check_model(inst, model))
    throw Error(ErrorKind::inconsistent_model, "model violates the instance clauses");

  std::vector<ThresholdGate> bottom;
  for (std::uint32_t g = 1; g <= k; ++g) {
    ThresholdGate gate;
    for (std::uint32_t i = 1; i <= n; ++i) {
      std::uint32_t mult = 0;
      for (std::uint32_t j = 1; j <= L; ++j) {
        const auto v = inst.selector(g, i, j);
        if (!model.assigned(v))
          throw Error(ErrorKind::inconsistent_model, "model leaves selector " + std::to_string(v) + " unassigned");
        if (model[v]) {
          if (mult != j - 1)
            throw Error(ErrorKind::inconsistent_model, "selector levels of gate " + std::to_string(g) + " variable " +
                                                           std::to_string(i) + " are not a prefix");
          mult = j;
        }
      }
      if (mult > 0) gate.inputs.push_back({Ref::var(i), mult});
    }
    if (gate.fan_in() != k)
      throw Error(ErrorKind::inconsistent_model, "gate " + std::to_string(g) + " has fan-in " +
                                                     std::to_string(gate.fan_in()) + ", expected " + std::to_string(k));
    if (spec.standard_thresholds) {
      gate.theta = standard_threshold(k);
    } else {
      std::int64_t chosen = 0;
      for (std::uint32_t t = 1; t <= k; ++t) {
        const auto v = inst.threshold(g, t);
        if (!model.assigned(v))
          throw Error(ErrorKind::inconsistent_model, "model leaves threshold variable " + std::to_string(v) + " unassigned");
        if (model[v]) {
          if (chosen != 0) throw Error(ErrorKind::inconsistent_model, "gate " + std::to_string(g) + " has two thresholds");
          chosen = t;
        }
      }
      if (chosen == 0) throw Error(ErrorKind::inconsistent_model, "gate " + std::to_string(g) + " has no threshold");
      gate.theta = chosen;
    }
    bottom.push_back(std::move(gate));
  }
  std::vector<WeightedInput> top_in;
  for (std::uint32_t g = 1; g <= k; ++g) top_in.push_back({Ref::gate(1, g), 1});
  std::vector<std::vector<ThresholdGate>> layers{std::move(bottom), {standard_gate(std::move(top_in))}};
  LayeredCircuit circuit(n, k, std::move(layers), GateId{2, 1});

  const auto errors = detail::count_errors(circuit);
  if (errors != 0) {
    const std::string what = "decoded circuit disagrees with MAJ_" + std::to_string(n) + " on " +
                             std::to_string(errors) + " inputs";
    throw Error(complete ? ErrorKind::encoder_bug : ErrorKind::inconsistent_model, what);
  }
  return circuit;
}

}  // namespace majcirc::search
