#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/assignment.hpp"
#include "core/circuit.hpp"

namespace majcirc::search {

enum class ConstraintSet { minmax, all_inputs };

/// Space of depth-2 circuits with k bottom gates, each of fan-in exactly k,
/// under a standard majority of the k bottom outputs.
struct SearchSpaceSpec {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t multiplicity_max = 2;
  bool standard_thresholds = true;
  bool distinct_only = false;
  bool symmetry_breaking = true;
  ConstraintSet constraint_set = ConstraintSet::minmax;

  /// Effective per-variable multiplicity bound (1 when distinct_only).
  std::uint32_t levels() const noexcept { return distinct_only ? 1 : multiplicity_max; }
  void validate() const;

  friend bool operator==(const SearchSpaceSpec&, const SearchSpaceSpec&) = default;
};

/// sel(g, i, j): gate g reads x_i with multiplicity at least j.
struct SelectorVar {
  std::uint32_t var = 0;
  std::uint32_t gate = 0;
  std::uint32_t x = 0;
  std::uint32_t level = 0;
};

/// thr(g, theta): gate g has threshold theta (free-threshold spaces only).
struct ThresholdVar {
  std::uint32_t var = 0;
  std::uint32_t gate = 0;
  std::int64_t theta = 0;
};

/// var <-> OR over terms of AND over literals. Terms reference only
/// selector, threshold, or earlier auxiliary variables.
struct AuxDefinition {
  std::uint32_t var = 0;
  std::vector<std::vector<int>> terms;
};

struct CnfInstance {
  SearchSpaceSpec spec;
  std::uint32_t num_vars = 0;
  std::uint64_t num_clauses = 0;
  std::vector<int> literals;   // clauses, each terminated by 0
  std::vector<SelectorVar> selectors;
  std::vector<ThresholdVar> thresholds;
  std::vector<AuxDefinition> definitions;
  std::optional<std::uint32_t> true_var;   // unit-forced constant, when one was needed

  std::uint32_t selector(std::uint32_t gate, std::uint32_t x, std::uint32_t level) const;
  std::uint32_t threshold(std::uint32_t gate, std::int64_t theta) const;
};

struct EncodeOptions {
  std::uint64_t clause_cap = 50'000'000;
};

/// Estimated clause count of encode(spec); used for the cap check.
std::uint64_t estimate_clauses(const SearchSpaceSpec& spec);

CnfInstance encode(const SearchSpaceSpec& spec, const EncodeOptions& opts = {});

/// Per-variable values: -1 unassigned, 0 false, 1 true; index 0 unused.
struct Model {
  std::vector<std::int8_t> value;

  bool assigned(std::uint32_t v) const { return v < value.size() && value[v] >= 0; }
  bool operator[](std::uint32_t v) const { return value.at(v) == 1; }
};

/// True iff every clause holds under `model` (unassigned literals are false).
bool check_model(const CnfInstance& inst, const Model& model);

/// Complete model encoding `c`. Gates are reordered to satisfy symmetry
/// breaking. Throws invalid_argument when `c` lies outside the space.
Model model_from_circuit(const CnfInstance& inst, const LayeredCircuit& c);

std::string to_dimacs(const CnfInstance& inst);

/// Sidecar text: spec header plus `v <id> g <g> x <i> j <j>` and
/// `t <id> g <g> theta <theta>` lines.
std::string varmap_text(const CnfInstance& inst);

/// Rebuilds the instance from a varmap by re-encoding its spec; the listed
/// variables must match the fresh encoding.
CnfInstance instance_from_varmap(std::string_view text, const EncodeOptions& opts = {});

/// Accepts `s`/`v`/`c` solver output or bare literals. An UNSAT marker throws
/// Error(unsatisfiable).
Model parse_model(std::string_view text, std::uint32_t num_vars);

/// Circuit read off the selectors; verified against MAJ_n before returning.
/// Inconsistent selector values throw inconsistent_model; a circuit failing
/// verification throws encoder_bug.
LayeredCircuit decode(const CnfInstance& inst, const Model& model);

enum class SolveStatus { sat, unsat, unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::unknown;
  Model model;
  std::string output;
};

/// $MAJCIRC_SAT_SOLVER if set, else the solver found at build time, else "".
std::string default_solver_command();

/// Writes DIMACS to a temporary file and runs `command`, substituting `{cnf}`
/// with the path or appending it. The model is read from standard output.
SolveResult run_solver(const CnfInstance& inst, const std::string& command);

struct ExhaustiveOptions {
  unsigned workers = 1;
  double space_cap = 1e9;
};

/// Number of candidate bottom-gate rows (multisets, times thresholds when free).
std::uint64_t candidate_row_count(const SearchSpaceSpec& spec);

/// Number of non-decreasing row sequences of length k.
double exhaustive_space_estimate(const SearchSpaceSpec& spec);

/// Backtracking over non-decreasing row sequences with min/maxterm pruning.
/// Returns the first verified circuit in row order, or nullopt.
std::optional<LayeredCircuit> exhaustive_search(const SearchSpaceSpec& spec, const ExhaustiveOptions& opts = {});

/// One edge per bottom gate joining the two variables it omits.
class OmissionGraph {
 public:
  struct Component {
    std::vector<std::uint32_t> vertices;   // ascending
    std::vector<std::uint32_t> edges;      // indices into edges()
    std::int64_t p() const noexcept {
      return static_cast<std::int64_t>(edges.size()) - static_cast<std::int64_t>(vertices.size());
    }
  };

  OmissionGraph(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  /// Checks the fooling preconditions and reads the omitted pairs.
  static OmissionGraph from_circuit(const LayeredCircuit& c);

  std::uint32_t n() const noexcept { return n_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const noexcept { return edges_; }
  /// Ordered by p, then vertex count, then lowest vertex.
  const std::vector<Component>& components() const noexcept { return components_; }

 private:
  std::uint32_t n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<Component> components_;
};

struct FoolingResult {
  Assignment assignment;
  std::vector<std::uint32_t> zero_vertices;   // ascending
  std::uint32_t zero_edges = 0;               // edges with a 0-valued endpoint
};

FoolingResult fooling_details(const LayeredCircuit& c);
Assignment fooling_input(const LayeredCircuit& c);

}  // namespace majcirc::search
