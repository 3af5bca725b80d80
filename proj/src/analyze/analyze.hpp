#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/assignment.hpp"
#include "core/circuit.hpp"

namespace majcirc::analyze {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact C(n, k); 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Nearest double to an exact rational of any size.
double to_double(const Rational& r);

/// "num/den" (or "num" for integers).
std::string to_string(const Rational& r);

/// Draw t_draws of m items without replacement; kk of the m are marked.
struct HypergeomParams {
  std::uint32_t m = 0;
  std::uint32_t kk = 0;
  std::uint32_t t_draws = 0;

  void validate() const;
};

/// Pr[|T intersect S'| = l]; 0 outside the support.
Rational hypergeom_pmf(const HypergeomParams& p, std::uint32_t l);

struct TailCheck {
  Rational tail;    // Pr[|T intersect S'| >= l]
  Rational bound;   // (t kk / m)^l
  bool holds = false;
};

TailCheck hypergeom_tail_check(const HypergeomParams& p, std::uint32_t l);

struct TailSweep {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;               // largest tail / bound seen
  HypergeomParams worst{};
  std::uint32_t worst_l = 0;
  std::vector<std::string> violation_rows;   // m,kk,t,l
};

/// Every (m <= m_max, kk <= m/2, m/4 < t < 3m/4, 0 <= l <= kk).
TailSweep hypergeom_sweep(std::uint32_t m_max = 60, unsigned workers = 1);

struct ScalingRow {
  std::uint32_t kk = 0;
  std::uint32_t m = 0;
  std::uint32_t t_draws = 0;
  std::uint32_t argmax_l = 0;
  Rational max_pmf;
  double normalized = 0.0;   // max_pmf * sqrt(kk)
};

/// m = m_factor * kk, t = round(c * m).
std::vector<ScalingRow> pmf_scaling_probe(const std::vector<std::uint32_t>& k_grid, double c, std::uint32_t m_factor = 4,
                                          unsigned workers = 1);

/// Pr[T intersect S' is a member of `family`]. Members are subsets of the
/// marked set {1..kk}; the family must be an antichain.
Rational antichain_prob(const HypergeomParams& p, const std::vector<std::vector<std::uint32_t>>& family);

struct BinomialMidRow {
  std::uint32_t n = 0;
  std::uint32_t offset_index = 0;   // floor(n/2 + c sqrt(n ln n) / 2)
  Rational center;                  // C(n, floor(n/2)) / 2^n
  Rational offset;                  // C(n, offset_index) / 2^n
  double center_normalized = 0.0;   // center * n^(1/2)
  double offset_normalized = 0.0;   // offset * n^(1/2 + c^2/2)
};

std::vector<BinomialMidRow> binomial_mid_check(const std::vector<std::uint32_t>& n_grid, double c);

inline constexpr std::uint32_t kTruthTableCap = 22;

/// f(x) for every x in [0, 2^n); bit i-1 of x is x_i.
class TruthTable {
 public:
  TruthTable(std::uint32_t n, std::vector<std::uint64_t> words);

  static TruthTable from_function(std::uint32_t n, const std::function<bool(std::uint64_t)>& f);
  static TruthTable from_circuit(const LayeredCircuit& c);
  static TruthTable majority(std::uint32_t n);
  static TruthTable dictator(std::uint32_t n, std::uint32_t i);
  static TruthTable constant(std::uint32_t n, bool value);
  static TruthTable of_gate(const ThresholdGate& g, std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }
  bool operator()(std::uint64_t x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1U; }

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> words_;
};

/// |{(A, i) : f(A) != f(A^i)}|.
std::uint64_t boundary_size(const TruthTable& f);

/// 2^-n * sum_A |{i : f(A) != f(A^i)}|.
Rational influence(const TruthTable& f);

struct KillCost {
  std::optional<std::uint32_t> zeros_to_fix0;   // nullopt = impossible
  std::optional<std::uint32_t> ones_to_fix1;
};

/// Fewest variables to set to 0 forcing the gate to 0, and to 1 forcing it to 1.
KillCost kill_cost(const ThresholdGate& gate);

enum class WalkStop { exhausted_s, no_negative_gate, empty_candidates };

std::string_view walk_stop_name(WalkStop s);

struct WalkConfig {
  std::uint32_t s = 1;
  std::int64_t d = 1;
  VariableId x_star{};
  std::vector<std::uint32_t> g_star;   // bottom-gate ids (1-based), each reading x_star
  std::uint64_t seed = 0;
  bool random_gate = false;            // uniform qualifying gate instead of lowest id
};

struct WalkStep {
  std::uint32_t gate = 0;           // G_i
  std::uint32_t candidates = 0;     // |X_i|
  VariableId flipped{};             // y_i
  std::vector<std::int64_t> diffs;  // diff of each g_star gate after the flip, in g_star order
};

struct WalkTrace {
  Assignment start;
  std::vector<WalkStep> steps;
  WalkStop stop = WalkStop::exhausted_s;
  Assignment final_assignment;
};

/// All g_star gates with their diff on `a`, in g_star order.
std::vector<std::int64_t> g_star_diffs(const LayeredCircuit& c, const WalkConfig& cfg, const Assignment& a);

WalkTrace walk(const LayeredCircuit& c, const Assignment& a, const WalkConfig& cfg);

/// Uniform weight-(ceil(n/2) - 1) assignment with x_star = 0, from `seed`.
Assignment random_walk_start(std::uint32_t n, VariableId x_star, std::uint64_t seed);

/// Bottom gates reading x.
std::vector<std::uint32_t> gates_reading(const LayeredCircuit& c, VariableId x);

}  // namespace majcirc::analyze
