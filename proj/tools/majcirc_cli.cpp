// majcirc command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "majcirc/majcirc.h"

namespace {

enum Exit : int { kOk = 0, kFound = 1, kUsage = 2, kUnsat = 3 };

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(mc_status s) {
  switch (s) {
    case MC_OK: return kOk;
    case MC_ERR_UNSATISFIABLE:
    case MC_ERR_NOT_FOUND: return kUnsat;
    case MC_ERR_ENCODER_BUG: return kFound;
    default: return kUsage;
  }
}

void check(mc_status s) {
  if (s != MC_OK) throw Failure{exit_code_for(s), std::string(mc_status_name(s)) + ": " + mc_last_error()};
}

struct CircuitDeleter {
  void operator()(mc_circuit* c) const { mc_circuit_free(c); }
};
struct ReportDeleter {
  void operator()(mc_report* r) const { mc_report_free(r); }
};
struct InstanceDeleter {
  void operator()(mc_instance* i) const { mc_instance_free(i); }
};
using Circuit = std::unique_ptr<mc_circuit, CircuitDeleter>;
using Report = std::unique_ptr<mc_report, ReportDeleter>;
using Instance = std::unique_ptr<mc_instance, InstanceDeleter>;

/// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  mc_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure{kUsage, "cannot read " + path};
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Failure{kUsage, "cannot write " + path};
}

Circuit load_circuit(const std::string& path) {
  mc_circuit* c = nullptr;
  const auto text = read_file(path);
  const auto s = mc_circuit_parse(text.c_str(), &c);
  if (s != MC_OK) throw Failure{kUsage, path + ": " + mc_last_error()};
  return Circuit(c);
}

mc_circuit_info info_of(const mc_circuit* c) {
  mc_circuit_info i{};
  check(mc_circuit_info_get(c, &i));
  return i;
}

std::vector<std::uint32_t> parse_grid(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoul(item, &pos);
      if (pos != item.size() || v == 0 || v > 1u << 30) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad grid entry '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{kUsage, "empty grid"};
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("MAJCIRC_WORKERS"); env && *env) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Global {
  std::uint64_t seed = 0;
  unsigned workers = default_workers();
  std::string format = "text";
};

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::string tag;
  std::uint32_t n = 0, k = 0, p = 0, b = 0;
  std::optional<std::uint32_t> window_t;
  double alpha = 3.0;
  bool inclusive_window = false;
  std::string out;
};

int run_construct(const Global& g, const ConstructArgs& a, CLI::App* cmd) {
  mc_circuit* raw = nullptr;
  if (a.kind == "published") {
    if (a.tag.empty()) throw Failure{kUsage, "construct published needs a tag (intro7, n7, n9, n11)"};
    check(mc_build_published(a.tag.c_str(), &raw));
  } else if (a.kind == "correlation") {
    if (a.n == 0 || a.k == 0) throw Failure{kUsage, "construct correlation needs --n and --k"};
    check(mc_build_correlation(a.n, a.k, g.seed, &raw));
  } else if (a.kind == "block") {
    if (a.n == 0) throw Failure{kUsage, "construct block needs --n"};
    std::uint32_t p = 0, t = 0;
    check(mc_default_block_params(a.n, a.alpha, &p, &t));
    if (a.p != 0 && a.p != p) {
      p = a.p;
      const double raw_t = a.alpha * std::sqrt(p * std::log(static_cast<double>(p)));
      t = std::min<std::uint32_t>(p, static_cast<std::uint32_t>(std::ceil(raw_t - 1e-9)));
    }
    if (a.window_t) t = *a.window_t;
    check(mc_build_block(a.n, p, t, &raw));
  } else if (a.kind == "depth3") {
    if (a.b == 0) throw Failure{kUsage, "construct depth3 needs --b"};
    check(mc_build_depth3(a.b, a.inclusive_window ? 1 : 0, &raw));
  } else if (a.kind == "omission") {
    if (a.n == 0) throw Failure{kUsage, "construct omission needs --n"};
    check(mc_build_omission(a.n, g.seed, &raw));
  } else {
    throw Failure{kUsage, "unknown construct kind '" + a.kind + "'\n" + cmd->help()};
  }
  Circuit c(raw);
  const auto text = take([&] {
    char* s = nullptr;
    check(mc_circuit_serialize(c.get(), &s));
    return s;
  }());
  const auto i = info_of(c.get());
  std::ostringstream summary;
  summary << "n " << i.n << " k " << i.declared_k << " depth " << i.depth << " gates " << i.gate_count << "\n";
  if (a.out.empty()) {
    std::cout << text;
    std::cerr << summary.str();
  } else {
    write_file(a.out, text);
    std::cout << summary.str();
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  bool all = false;
  std::string minmax;
  std::uint64_t sample = 0;
  std::uint32_t bit_cap = 30;
  std::uint64_t layer_cap = 100'000'000;
  double delta = 0.01;
  bool csv = false;
};

int run_verify(const Global& g, const VerifyArgs& a) {
  auto c = load_circuit(a.file);
  mc_verify_options o;
  mc_verify_options_default(&o);
  o.workers = g.workers;
  o.exhaustive_bit_cap = a.bit_cap;
  o.layer_cap = a.layer_cap;
  o.delta = a.delta;

  const int modes = (a.all ? 1 : 0) + (a.minmax.empty() ? 0 : 1) + (a.sample > 0 ? 1 : 0);
  if (modes != 1) throw Failure{kUsage, "choose exactly one of --all, --minmax, --sample"};
  mc_report* raw = nullptr;
  if (a.all) {
    check(mc_verify_all(c.get(), &o, &raw));
  } else if (!a.minmax.empty()) {
    if (a.minmax == "exact") {
      check(mc_verify_minmax(c.get(), 1, 0, g.seed, &o, &raw));
    } else {
      std::uint64_t count = 0;
      try {
        std::size_t pos = 0;
        count = std::stoull(a.minmax, &pos);
        if (pos != a.minmax.size() || count == 0) throw std::invalid_argument(a.minmax);
      } catch (const std::exception&) {
        throw Failure{kUsage, "--minmax takes 'exact' or a positive sample count"};
      }
      check(mc_verify_minmax(c.get(), 0, count, g.seed, &o, &raw));
    }
  } else {
    check(mc_estimate_agreement(c.get(), a.sample, g.seed, &o, &raw));
  }
  Report r(raw);
  char* s = nullptr;
  if (a.csv)
    check(mc_report_csv(r.get(), &s));
  else if (g.format == "json")
    check(mc_report_json(r.get(), &s));
  if (s) {
    std::cout << take(s);
  } else {
    std::cout << "checked " << mc_report_total(r.get()) << " errors " << mc_report_errors(r.get()) << " agreement "
              << mc_report_agreement(r.get()) << "\n";
  }
  return mc_report_errors(r.get()) == 0 ? kOk : kFound;
}

// ---- search / decode / fool ----------------------------------------------------

struct SearchArgs {
  std::uint32_t n = 0, k = 0, mult = 2;
  bool free_thresholds = false, distinct = false, no_symmetry = false, all_inputs = false;
  std::uint64_t clause_cap = 0;
  double space_cap = 0;
  std::string out;
  bool solve = false, exhaustive = false;
  std::string solver;
};

void print_circuit_result(const Global& g, mc_circuit* c, const std::string& path) {
  char* s = nullptr;
  check(mc_circuit_serialize(c, &s));
  const auto text = take(s);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  write_file(path, text);
  const auto i = info_of(c);
  if (g.format == "json")
    std::cout << "{\n  \"circuit\": \"" << path << "\",\n  \"n\": " << i.n << ",\n  \"k\": " << i.declared_k
              << ",\n  \"verified\": true\n}\n";
  else
    std::cout << "circuit " << path << " n " << i.n << " k " << i.declared_k << " verified\n";
}

int run_search(const Global& g, const SearchArgs& a) {
  mc_search_spec spec;
  mc_search_spec_default(&spec);
  spec.n = a.n;
  spec.k = a.k;
  spec.multiplicity_max = a.distinct ? 1 : a.mult;
  spec.standard_thresholds = a.free_thresholds ? 0 : 1;
  spec.distinct_only = a.distinct ? 1 : 0;
  spec.symmetry_breaking = a.no_symmetry ? 0 : 1;
  spec.all_inputs = a.all_inputs ? 1 : 0;

  if (a.exhaustive) {
    mc_circuit* raw = nullptr;
    const auto s = mc_exhaustive_search(&spec, g.workers, a.space_cap, &raw);
    if (s == MC_ERR_NOT_FOUND) {
      std::cout << "exhausted: no circuit in the space\n";
      return kUnsat;
    }
    check(s);
    Circuit c(raw);
    print_circuit_result(g, c.get(), a.out.empty() ? "" : a.out + ".circ");
    return kOk;
  }

  mc_instance* raw = nullptr;
  check(mc_encode(&spec, a.clause_cap, &raw));
  Instance inst(raw);
  std::uint32_t vars = 0;
  std::uint64_t clauses = 0;
  check(mc_instance_size(inst.get(), &vars, &clauses));
  const std::string prefix = a.out.empty() ? "majcirc_n" + std::to_string(a.n) + "_k" + std::to_string(a.k) : a.out;
  char* s = nullptr;
  check(mc_instance_dimacs(inst.get(), &s));
  write_file(prefix + ".cnf", take(s));
  check(mc_instance_varmap(inst.get(), &s));
  write_file(prefix + ".varmap", take(s));
  std::cout << "cnf " << prefix << ".cnf vars " << vars << " clauses " << clauses << "\n";
  std::cout << "varmap " << prefix << ".varmap\n";
  if (!a.solve) return kOk;

  mc_circuit* found = nullptr;
  const auto st = mc_solve(inst.get(), a.solver.c_str(), &found);
  if (st == MC_ERR_UNSATISFIABLE) {
    std::cout << "unsatisfiable\n";
    return kUnsat;
  }
  check(st);
  Circuit c(found);
  print_circuit_result(g, c.get(), prefix + ".circ");
  return kOk;
}

struct DecodeArgs {
  std::string varmap, model, out;
  std::uint64_t clause_cap = 0;
};

int run_decode(const Global& g, const DecodeArgs& a) {
  const auto vm = read_file(a.varmap);
  mc_instance* raw = nullptr;
  check(mc_instance_from_varmap(vm.c_str(), a.clause_cap, &raw));
  Instance inst(raw);
  const auto model = read_file(a.model);
  mc_circuit* c = nullptr;
  const auto s = mc_decode(inst.get(), model.c_str(), &c);
  if (s == MC_ERR_UNSATISFIABLE) {
    std::cout << "unsatisfiable\n";
    return kUnsat;
  }
  check(s);
  Circuit circuit(c);
  print_circuit_result(g, circuit.get(), a.out);
  return kOk;
}

int run_fool(const Global& g, const std::string& file) {
  auto c = load_circuit(file);
  char* s = nullptr;
  check(mc_fooling_input(c.get(), &s));
  const auto bits = take(s);
  int out = 0;
  check(mc_circuit_eval(c.get(), bits.c_str(), &out));
  std::size_t weight = 0;
  for (char ch : bits) weight += ch == '1';
  if (g.format == "json")
    std::cout << "{\n  \"assignment\": \"" << bits << "\",\n  \"weight\": " << weight << ",\n  \"circuit_output\": " << out
              << ",\n  \"majority\": 1\n}\n";
  else
    std::cout << bits << "\nweight " << weight << " circuit " << out << " majority 1\n";
  return kOk;
}

// ---- analyze -------------------------------------------------------------------

struct AnalyzeArgs {
  bool sweep = false, scaling = false, random_gate = false;
  std::uint32_t m_max = 60, m = 0, kk = 0, t = 0, n = 0, l = 0, s = 5, x = 1;
  std::optional<std::uint32_t> l_value;
  std::int64_t d = 1;
  std::string grid, circuit, gates, assignment;
  double c = 0.5;
};

int run_hypergeom(const Global& g, const AnalyzeArgs& a) {
  char* s = nullptr;
  if (a.sweep) {
    std::uint64_t violations = 0;
    check(mc_hypergeom_sweep_csv(a.m_max, g.workers, &violations, &s));
    std::cout << take(s);
    return violations == 0 ? kOk : kFound;
  }
  if (a.scaling) {
    const auto grid = parse_grid(a.grid.empty() ? "16,64,256,1024,4096" : a.grid);
    check(mc_scaling_probe_csv(grid.data(), grid.size(), a.c, g.workers, &s));
    std::cout << take(s);
    return kOk;
  }
  if (a.m == 0) throw Failure{kUsage, "analyze hypergeom needs --sweep, --scaling, or --m/--kk/--t"};
  if (a.l_value) {
    check(mc_hypergeom_pmf(a.m, a.kk, a.t, *a.l_value, &s));
    std::cout << "m,kk,t,l,pmf\n" << a.m << "," << a.kk << "," << a.t << "," << *a.l_value << "," << take(s) << "\n";
    return kOk;
  }
  check(mc_hypergeom_tail_csv(a.m, a.kk, a.t, &s));
  std::cout << take(s);
  return kOk;
}

int run_binomial(const AnalyzeArgs& a) {
  const auto grid = parse_grid(a.grid.empty() ? "32,64,128,256,512" : a.grid);
  char* s = nullptr;
  check(mc_binomial_mid_csv(grid.data(), grid.size(), a.c, &s));
  std::cout << take(s);
  return kOk;
}

int run_boundary(const AnalyzeArgs& a, bool influence) {
  const char* what = influence ? "influence" : "boundary";
  if (!a.circuit.empty()) {
    auto c = load_circuit(a.circuit);
    if (influence) {
      char* s = nullptr;
      check(mc_influence_circuit(c.get(), &s));
      std::cout << "circuit," << what << "\n" << a.circuit << "," << take(s) << "\n";
    } else {
      std::uint64_t b = 0;
      check(mc_boundary_circuit(c.get(), &b));
      std::cout << "circuit," << what << "\n" << a.circuit << "," << b << "\n";
    }
    return kOk;
  }
  const std::uint32_t n = influence ? (a.l_value ? *a.l_value : a.n) : a.n;
  if (n == 0) throw Failure{kUsage, influence ? "analyze influence needs --l or --circuit" : "analyze boundary needs --n or --circuit"};
  if (influence) {
    char* s = nullptr;
    check(mc_influence_majority(n, &s));
    std::cout << "l,influence\n" << n << "," << take(s) << "\n";
  } else {
    std::uint64_t b = 0;
    check(mc_boundary_majority(n, &b));
    std::cout << "n,boundary\n" << n << "," << b << "\n";
  }
  return kOk;
}

int run_killcost(const AnalyzeArgs& a) {
  if (a.circuit.empty()) throw Failure{kUsage, "analyze killcost needs --circuit"};
  auto c = load_circuit(a.circuit);
  mc_circuit_info i = info_of(c.get());
  (void)i;
  std::cout << "gate,zeros_to_fix0,ones_to_fix1\n";
  for (std::uint32_t gid = 1;; ++gid) {
    std::int64_t z = 0, o = 0;
    if (mc_kill_cost(c.get(), gid, &z, &o) != MC_OK) break;
    std::cout << gid << "," << (z < 0 ? std::string("inf") : std::to_string(z)) << ","
              << (o < 0 ? std::string("inf") : std::to_string(o)) << "\n";
  }
  return kOk;
}

int run_walk(const Global& g, const AnalyzeArgs& a) {
  if (a.circuit.empty()) throw Failure{kUsage, "analyze walk needs --circuit"};
  auto c = load_circuit(a.circuit);
  std::vector<std::uint32_t> gates;
  if (!a.gates.empty()) gates = parse_grid(a.gates);
  mc_walk_config cfg{a.s, a.d, a.x, gates.empty() ? nullptr : gates.data(), gates.size(), g.seed, a.random_gate ? 1 : 0};
  char* s = nullptr;
  check(mc_walk_csv(c.get(), a.assignment.empty() ? nullptr : a.assignment.c_str(), &cfg, &s));
  std::cout << take(s);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"majcirc: majority-of-majorities circuits"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Run seed");
  app.add_option("--workers", g.workers, "Worker threads (default $MAJCIRC_WORKERS or 1)")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a circuit");
  construct->add_option("kind", ca.kind, "correlation | block | depth3 | published | omission")->required();
  construct->add_option("tag", ca.tag, "Published circuit tag");
  construct->add_option("--n", ca.n, "Input count");
  construct->add_option("--k", ca.k, "Subset size and count (correlation)");
  construct->add_option("--p", ca.p, "Block size (block)");
  construct->add_option("--window-t", ca.window_t, "Thresholds kept per block (block)");
  construct->add_option("--alpha", ca.alpha, "Window constant for default block parameters");
  construct->add_option("--b", ca.b, "Depth-3 parameter: n = 2b^3");
  construct->add_flag("--inclusive-window", ca.inclusive_window, "Depth-3 layer-2 thresholds p/2-b .. p/2+b");
  construct->add_option("-o,--out", ca.out, "Output file (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a circuit against majority");
  verify->add_option("file", va.file, "Circuit file")->required();
  verify->add_flag("--all", va.all, "Every input");
  verify->add_option("--minmax", va.minmax, "'exact' or samples per layer");
  verify->add_option("--sample", va.sample, "Uniform samples for an agreement estimate");
  verify->add_option("--bit-cap", va.bit_cap, "Largest n for --all");
  verify->add_option("--layer-cap", va.layer_cap, "Largest layer size for exact minmax");
  verify->add_option("--delta", va.delta, "Confidence parameter")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  verify->add_flag("--csv", va.csv, "Errors by weight as CSV");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Encode, solve, or enumerate a circuit space");
  search->add_option("--n", sa.n, "Input count")->required();
  search->add_option("--k", sa.k, "Fan-in and bottom gate count")->required();
  search->add_option("--mult", sa.mult, "Largest multiplicity of a variable in a gate");
  search->add_flag("--free-thresholds", sa.free_thresholds, "Let bottom thresholds vary");
  search->add_flag("--distinct", sa.distinct, "Distinct variables per gate");
  search->add_flag("--no-symmetry", sa.no_symmetry, "Disable row ordering constraints");
  search->add_flag("--all-inputs", sa.all_inputs, "Constrain every input, not only min/maxterms");
  search->add_option("--clause-cap", sa.clause_cap, "Refuse encodings estimated above this many clauses");
  search->add_option("--space-cap", sa.space_cap, "Refuse exhaustive spaces above this size");
  search->add_option("-o,--out", sa.out, "Output prefix");
  search->add_flag("--solve", sa.solve, "Run the SAT solver and decode");
  search->add_option("--solver", sa.solver, "Solver command ({cnf} is replaced by the CNF path)");
  search->add_flag("--exhaustive", sa.exhaustive, "Backtracking search instead of SAT");

  DecodeArgs da;
  auto* decode = app.add_subcommand("decode", "Turn a solver model into a verified circuit");
  decode->add_option("--varmap", da.varmap, "Varmap sidecar")->required();
  decode->add_option("--model", da.model, "Solver output or literal list")->required();
  decode->add_option("-o,--out", da.out, "Output circuit file (default stdout)");
  decode->add_option("--clause-cap", da.clause_cap, "Encoding clause cap");

  std::string fool_file;
  auto* fool = app.add_subcommand("fool", "Minterm on which an n-2 circuit outputs 0");
  fool->add_option("file", fool_file, "Circuit file")->required();

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Combinatorial checks");
  analyze->require_subcommand(1);
  auto* hyper = analyze->add_subcommand("hypergeom", "Hypergeometric pmf and tail bound");
  hyper->add_flag("--sweep", aa.sweep, "Tail bound over the whole grid");
  hyper->add_option("--m-max", aa.m_max, "Largest population in the sweep");
  hyper->add_flag("--scaling", aa.scaling, "Normalized pmf maxima at m = 4kk, t = c m");
  hyper->add_option("--grid", aa.grid, "Comma-separated kk values");
  hyper->add_option("--c", aa.c, "Draw fraction")->check(CLI::Range(1e-9, 1.0 - 1e-9));
  hyper->add_option("--m", aa.m, "Population");
  hyper->add_option("--kk", aa.kk, "Marked items");
  hyper->add_option("--t", aa.t, "Draws");
  hyper->add_option("--l", aa.l_value, "Single pmf point");
  auto* binom = analyze->add_subcommand("binomial", "Normalized central and offset binomials");
  binom->add_option("--grid", aa.grid, "Comma-separated n values");
  binom->add_option("--c", aa.c, "Offset constant")->check(CLI::Range(1e-9, 1.0 - 1e-9));
  auto* boundary = analyze->add_subcommand("boundary", "Boundary size by brute force");
  boundary->add_option("--n", aa.n, "Majority on n bits");
  boundary->add_option("--circuit", aa.circuit, "Circuit file");
  auto* influence = analyze->add_subcommand("influence", "Influence by brute force");
  influence->add_option("--l", aa.l_value, "Majority on l bits");
  influence->add_option("--circuit", aa.circuit, "Circuit file");
  auto* kill = analyze->add_subcommand("killcost", "Fix-to-0 and fix-to-1 costs of bottom gates");
  kill->add_option("--circuit", aa.circuit, "Circuit file");
  auto* walk = analyze->add_subcommand("walk", "Run the walk process");
  walk->add_option("--circuit", aa.circuit, "Circuit file");
  walk->add_option("--s", aa.s, "Maximum steps")->check(CLI::PositiveNumber);
  walk->add_option("--d", aa.d, "Diff window")->check(CLI::PositiveNumber);
  walk->add_option("--x", aa.x, "Index of x*");
  walk->add_option("--gates", aa.gates, "Comma-separated bottom gate ids (default: all reading x*)");
  walk->add_option("--assignment", aa.assignment, "Start assignment as 0/1 string");
  walk->add_flag("--random-gate", aa.random_gate, "Pick a uniform qualifying gate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return run_construct(g, ca, construct);
    if (*verify) return run_verify(g, va);
    if (*search) return run_search(g, sa);
    if (*decode) return run_decode(g, da);
    if (*fool) return run_fool(g, fool_file);
    if (*hyper) return run_hypergeom(g, aa);
    if (*binom) return run_binomial(aa);
    if (*boundary) return run_boundary(aa, false);
    if (*influence) return run_boundary(aa, true);
    if (*kill) return run_killcost(aa);
    if (*walk) return run_walk(g, aa);
  } catch (const Failure& f) {
    std::cerr << "majcirc: " << f.message << "\n";
    return f.code;
  }
  return kUsage;
}
