#include "majcirc/majcirc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "analyze/analyze.hpp"
#include "construct/construct.hpp"
#include "core/error.hpp"
#include "search/search.hpp"
#include "verify/verify.hpp"

struct mc_circuit {
  majcirc::LayeredCircuit circuit;
};

struct mc_report {
  majcirc::verify::VerificationReport report;
};

struct mc_instance {
  majcirc::search::CnfInstance instance;
};

namespace {

using namespace majcirc;

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

mc_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return MC_ERR_INVALID_ARGUMENT;
    case ErrorKind::parse: return MC_ERR_PARSE;
    case ErrorKind::structure: return MC_ERR_STRUCTURE;
    case ErrorKind::cap_exceeded: return MC_ERR_CAP_EXCEEDED;
    case ErrorKind::precondition: return MC_ERR_PRECONDITION;
    case ErrorKind::inconsistent_model: return MC_ERR_INCONSISTENT_MODEL;
    case ErrorKind::encoder_bug: return MC_ERR_ENCODER_BUG;
    case ErrorKind::unsatisfiable: return MC_ERR_UNSATISFIABLE;
    case ErrorKind::io: return MC_ERR_IO;
  }
  return MC_ERR_INTERNAL;
}

mc_status fail(mc_status s, const std::string& what) {
  g_error = what;
  return s;
}

/// Runs fn, mapping exceptions to status codes and the thread's error text.
template <class Fn>
mc_status guard(Fn&& fn) {
  g_error.clear();
  g_error_line = 0;
  try {
    return fn();
  } catch (const ParseError& e) {
    g_error_line = e.line();
    return fail(MC_ERR_PARSE, e.what());
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MC_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define MC_REQUIRE(cond)                                                     \
  do {                                                                       \
    if (!(cond)) return fail(MC_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

mc_status put(mc_circuit** out, LayeredCircuit c) {
  *out = new mc_circuit{std::move(c)};
  return MC_OK;
}

verify::VerifyOptions options(const mc_verify_options* o) {
  verify::VerifyOptions v;
  if (o) {
    v.workers = o->workers == 0 ? 1 : o->workers;
    v.exhaustive_bit_cap = o->exhaustive_bit_cap;
    v.layer_cap = o->layer_cap;
    v.delta = o->delta;
  }
  if (!(v.delta > 0.0 && v.delta < 1.0)) throw Error(ErrorKind::invalid_argument, "delta must lie in (0, 1)");
  return v;
}

search::SearchSpaceSpec spec_of(const mc_search_spec* s) {
  search::SearchSpaceSpec out;
  out.n = s->n;
  out.k = s->k;
  out.multiplicity_max = s->multiplicity_max;
  out.standard_thresholds = s->standard_thresholds != 0;
  out.distinct_only = s->distinct_only != 0;
  out.symmetry_breaking = s->symmetry_breaking != 0;
  out.constraint_set = s->all_inputs ? search::ConstraintSet::all_inputs : search::ConstraintSet::minmax;
  return out;
}

search::EncodeOptions encode_options(std::uint64_t cap) {
  search::EncodeOptions o;
  if (cap != 0) o.clause_cap = cap;
  return o;
}

Assignment parse_bits(const char* bits, std::uint32_t n) {
  auto a = Assignment::from_string(bits);
  if (a.n() != n)
    throw Error(ErrorKind::invalid_argument,
                "assignment has " + std::to_string(a.n()) + " bits, circuit has n = " + std::to_string(n));
  return a;
}

std::string grid_csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + "\n";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

extern "C" {

const char* mc_version(void) { return "0.1.0"; }

const char* mc_status_name(mc_status s) {
  switch (s) {
    case MC_OK: return "ok";
    case MC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MC_ERR_PARSE: return "parse";
    case MC_ERR_STRUCTURE: return "structure";
    case MC_ERR_CAP_EXCEEDED: return "cap_exceeded";
    case MC_ERR_PRECONDITION: return "precondition";
    case MC_ERR_INCONSISTENT_MODEL: return "inconsistent_model";
    case MC_ERR_ENCODER_BUG: return "encoder_bug";
    case MC_ERR_UNSATISFIABLE: return "unsatisfiable";
    case MC_ERR_IO: return "io";
    case MC_ERR_NOT_FOUND: return "not_found";
    case MC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mc_last_error(void) { return g_error.c_str(); }
size_t mc_last_error_line(void) { return g_error_line; }
void mc_string_free(char* s) { std::free(s); }

/* circuits */

mc_status mc_circuit_parse(const char* text, mc_circuit** out) {
  MC_REQUIRE(text && out);
  return guard([&] { return put(out, parse(text)); });
}

mc_status mc_circuit_serialize(const mc_circuit* c, char** out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = dup(serialize(c->circuit));
    return MC_OK;
  });
}

mc_status mc_circuit_info_get(const mc_circuit* c, mc_circuit_info* out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    const auto i = inspect(c->circuit);
    *out = {i.n, i.declared_k, i.max_fan_in, i.depth, i.gate_count, i.max_weight, i.all_standard ? 1 : 0};
    return MC_OK;
  });
}

mc_status mc_circuit_eval(const mc_circuit* c, const char* bits, int* out) {
  MC_REQUIRE(c && bits && out);
  return guard([&] {
    *out = eval_circuit(c->circuit, parse_bits(bits, c->circuit.n())) ? 1 : 0;
    return MC_OK;
  });
}

int mc_circuit_equal(const mc_circuit* a, const mc_circuit* b) { return a && b && a->circuit == b->circuit ? 1 : 0; }

void mc_circuit_free(mc_circuit* c) { delete c; }

/* builders */

mc_status mc_build_published(const char* tag, mc_circuit** out) {
  MC_REQUIRE(tag && out);
  return guard([&] {
    const auto t = construct::published_tag(tag);
    if (!t) return fail(MC_ERR_INVALID_ARGUMENT, std::string("unknown published circuit '") + tag + "'");
    return put(out, construct::published_circuit(*t));
  });
}

mc_status mc_build_correlation(uint32_t n, uint32_t k, uint64_t seed, mc_circuit** out) {
  MC_REQUIRE(out);
  return guard([&] { return put(out, construct::build_correlation({n, k, seed, {}, {}, {}})); });
}

mc_status mc_build_block(uint32_t n, uint32_t p, uint32_t window_t, mc_circuit** out) {
  MC_REQUIRE(out);
  return guard([&] { return put(out, construct::build_block_circuit({n, p, window_t})); });
}

mc_status mc_default_block_params(uint32_t n, double alpha, uint32_t* p, uint32_t* window_t) {
  MC_REQUIRE(p && window_t);
  return guard([&] {
    const auto bp = construct::default_block_params(n, alpha);
    *p = bp.p;
    *window_t = bp.window_t;
    return MC_OK;
  });
}

mc_status mc_build_depth3(uint32_t b, int inclusive_window, mc_circuit** out) {
  MC_REQUIRE(out);
  return guard([&] { return put(out, construct::build_depth3(
        {b, inclusive_window ? construct::Depth3Window::inclusive : construct::Depth3Window::upper})); });
}

mc_status mc_build_omission(uint32_t n, uint64_t seed, mc_circuit** out) {
  MC_REQUIRE(out);
  return guard([&] {
    if (n < 3) return fail(MC_ERR_INVALID_ARGUMENT, "omission circuit: n must be odd and >= 3");
    return put(out, construct::circuit_from_omissions(n, construct::random_omissions(n, seed)));
  });
}

/* verification */

void mc_verify_options_default(mc_verify_options* o) {
  if (!o) return;
  const verify::VerifyOptions d;
  *o = {d.workers, d.exhaustive_bit_cap, d.layer_cap, d.delta};
}

mc_status mc_verify_all(const mc_circuit* c, const mc_verify_options* opts, mc_report** out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = new mc_report{verify::verify_all(c->circuit, options(opts))};
    return MC_OK;
  });
}

mc_status mc_verify_minmax(const mc_circuit* c, int exact, uint64_t count, uint64_t seed, const mc_verify_options* opts,
                           mc_report** out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = new mc_report{verify::verify_minmax(c->circuit, {exact != 0, count, seed}, options(opts))};
    return MC_OK;
  });
}

mc_status mc_estimate_agreement(const mc_circuit* c, uint64_t samples, uint64_t seed, const mc_verify_options* opts,
                                mc_report** out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = new mc_report{verify::estimate_agreement(c->circuit, samples, seed, options(opts))};
    return MC_OK;
  });
}

uint64_t mc_report_total(const mc_report* r) { return r ? r->report.total_checked : 0; }
uint64_t mc_report_errors(const mc_report* r) { return r ? r->report.errors : 0; }
double mc_report_agreement(const mc_report* r) { return r ? r->report.agreement_value() : 0.0; }

mc_status mc_report_json(const mc_report* r, char** out) {
  MC_REQUIRE(r && out);
  return guard([&] {
    *out = dup(r->report.to_json());
    return MC_OK;
  });
}

mc_status mc_report_csv(const mc_report* r, char** out) {
  MC_REQUIRE(r && out);
  return guard([&] {
    *out = dup(r->report.to_csv());
    return MC_OK;
  });
}

void mc_report_free(mc_report* r) { delete r; }

/* search */

void mc_search_spec_default(mc_search_spec* s) {
  if (!s) return;
  const search::SearchSpaceSpec d;
  *s = {d.n, d.k, d.multiplicity_max, d.standard_thresholds ? 1 : 0, d.distinct_only ? 1 : 0,
        d.symmetry_breaking ? 1 : 0, d.constraint_set == search::ConstraintSet::all_inputs ? 1 : 0};
}

mc_status mc_encode(const mc_search_spec* spec, uint64_t clause_cap, mc_instance** out) {
  MC_REQUIRE(spec && out);
  return guard([&] {
    *out = new mc_instance{search::encode(spec_of(spec), encode_options(clause_cap))};
    return MC_OK;
  });
}

mc_status mc_instance_from_varmap(const char* text, uint64_t clause_cap, mc_instance** out) {
  MC_REQUIRE(text && out);
  return guard([&] {
    *out = new mc_instance{search::instance_from_varmap(text, encode_options(clause_cap))};
    return MC_OK;
  });
}

mc_status mc_instance_size(const mc_instance* inst, uint32_t* vars, uint64_t* clauses) {
  MC_REQUIRE(inst);
  if (vars) *vars = inst->instance.num_vars;
  if (clauses) *clauses = inst->instance.num_clauses;
  return MC_OK;
}

mc_status mc_instance_dimacs(const mc_instance* inst, char** out) {
  MC_REQUIRE(inst && out);
  return guard([&] {
    *out = dup(search::to_dimacs(inst->instance));
    return MC_OK;
  });
}

mc_status mc_instance_varmap(const mc_instance* inst, char** out) {
  MC_REQUIRE(inst && out);
  return guard([&] {
    *out = dup(search::varmap_text(inst->instance));
    return MC_OK;
  });
}

mc_status mc_decode(const mc_instance* inst, const char* model_text, mc_circuit** out) {
  MC_REQUIRE(inst && model_text && out);
  return guard([&] {
    const auto model = search::parse_model(model_text, inst->instance.num_vars);
    return put(out, search::decode(inst->instance, model));
  });
}

mc_status mc_solve(const mc_instance* inst, const char* solver, mc_circuit** out) {
  MC_REQUIRE(inst && out);
  return guard([&] {
    const std::string cmd = (solver && *solver) ? solver : search::default_solver_command();
    auto result = search::run_solver(inst->instance, cmd);
    if (result.status == search::SolveStatus::unsat) return fail(MC_ERR_UNSATISFIABLE, "solver reported UNSATISFIABLE");
    if (result.status != search::SolveStatus::sat)
      return fail(MC_ERR_IO, "solver produced no answer: " + cmd);
    return put(out, search::decode(inst->instance, result.model));
  });
}

mc_status mc_default_solver(char** out) {
  MC_REQUIRE(out);
  return guard([&] {
    *out = dup(search::default_solver_command());
    return MC_OK;
  });
}

void mc_instance_free(mc_instance* inst) { delete inst; }

mc_status mc_exhaustive_search(const mc_search_spec* spec, unsigned workers, double space_cap, mc_circuit** out) {
  MC_REQUIRE(spec && out);
  return guard([&] {
    search::ExhaustiveOptions o;
    o.workers = workers == 0 ? 1 : workers;
    if (space_cap > 0) o.space_cap = space_cap;
    auto found = search::exhaustive_search(spec_of(spec), o);
    if (!found) return fail(MC_ERR_NOT_FOUND, "search space exhausted without a circuit");
    return put(out, std::move(*found));
  });
}

mc_status mc_fooling_input(const mc_circuit* c, char** bits) {
  MC_REQUIRE(c && bits);
  return guard([&] {
    *bits = dup(search::fooling_input(c->circuit).to_string());
    return MC_OK;
  });
}

/* analysis */

mc_status mc_hypergeom_pmf(uint32_t m, uint32_t kk, uint32_t t, uint32_t l, char** out) {
  MC_REQUIRE(out);
  return guard([&] {
    *out = dup(analyze::to_string(analyze::hypergeom_pmf({m, kk, t}, l)));
    return MC_OK;
  });
}

mc_status mc_hypergeom_tail_csv(uint32_t m, uint32_t kk, uint32_t t, char** out) {
  MC_REQUIRE(out);
  return guard([&] {
    std::string csv = "m,kk,t,l,tail,bound,holds\n";
    for (std::uint32_t l = 0; l <= kk; ++l) {
      const auto r = analyze::hypergeom_tail_check({m, kk, t}, l);
      csv += grid_csv_row({std::to_string(m), std::to_string(kk), std::to_string(t), std::to_string(l),
                           analyze::to_string(r.tail), analyze::to_string(r.bound), r.holds ? "1" : "0"});
    }
    *out = dup(csv);
    return MC_OK;
  });
}

mc_status mc_hypergeom_sweep_csv(uint32_t m_max, unsigned workers, uint64_t* violations, char** out) {
  MC_REQUIRE(out);
  return guard([&] {
    const auto s = analyze::hypergeom_sweep(m_max, workers == 0 ? 1 : workers);
    std::string csv = "m_max,checked,violations,max_ratio,worst_m,worst_kk,worst_t,worst_l\n";
    csv += grid_csv_row({std::to_string(m_max), std::to_string(s.checked), std::to_string(s.violations),
                         fmt(s.max_ratio), std::to_string(s.worst.m), std::to_string(s.worst.kk),
                         std::to_string(s.worst.t_draws), std::to_string(s.worst_l)});
    for (const auto& v : s.violation_rows) csv += "# violation " + v + "\n";
    if (violations) *violations = s.violations;
    *out = dup(csv);
    return MC_OK;
  });
}

mc_status mc_scaling_probe_csv(const uint32_t* k_grid, size_t len, double c, unsigned workers, char** out) {
  MC_REQUIRE(k_grid && out);
  return guard([&] {
    const auto rows = analyze::pmf_scaling_probe({k_grid, k_grid + len}, c, 4, workers == 0 ? 1 : workers);
    std::string csv = "kk,m,t,argmax_l,max_pmf,normalized\n";
    for (const auto& r : rows)
      csv += grid_csv_row({std::to_string(r.kk), std::to_string(r.m), std::to_string(r.t_draws),
                           std::to_string(r.argmax_l), fmt(analyze::to_double(r.max_pmf)), fmt(r.normalized)});
    *out = dup(csv);
    return MC_OK;
  });
}

mc_status mc_binomial_mid_csv(const uint32_t* n_grid, size_t len, double c, char** out) {
  MC_REQUIRE(n_grid && out);
  return guard([&] {
    const auto rows = analyze::binomial_mid_check({n_grid, n_grid + len}, c);
    std::string csv = "n,offset_index,center_normalized,offset_normalized\n";
    for (const auto& r : rows)
      csv += grid_csv_row({std::to_string(r.n), std::to_string(r.offset_index), fmt(r.center_normalized),
                           fmt(r.offset_normalized)});
    *out = dup(csv);
    return MC_OK;
  });
}

mc_status mc_boundary_majority(uint32_t n, uint64_t* out) {
  MC_REQUIRE(out);
  return guard([&] {
    *out = analyze::boundary_size(analyze::TruthTable::majority(n));
    return MC_OK;
  });
}

mc_status mc_boundary_circuit(const mc_circuit* c, uint64_t* out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = analyze::boundary_size(analyze::TruthTable::from_circuit(c->circuit));
    return MC_OK;
  });
}

mc_status mc_influence_majority(uint32_t l, char** out) {
  MC_REQUIRE(out);
  return guard([&] {
    *out = dup(analyze::to_string(analyze::influence(analyze::TruthTable::majority(l))));
    return MC_OK;
  });
}

mc_status mc_influence_circuit(const mc_circuit* c, char** out) {
  MC_REQUIRE(c && out);
  return guard([&] {
    *out = dup(analyze::to_string(analyze::influence(analyze::TruthTable::from_circuit(c->circuit))));
    return MC_OK;
  });
}

mc_status mc_kill_cost(const mc_circuit* c, uint32_t gate_id, int64_t* zeros_to_fix0, int64_t* ones_to_fix1) {
  MC_REQUIRE(c && zeros_to_fix0 && ones_to_fix1);
  return guard([&] {
    const auto& bottom = c->circuit.layer(1);
    if (gate_id < 1 || gate_id > bottom.size()) return fail(MC_ERR_INVALID_ARGUMENT, "gate id out of range");
    const auto k = analyze::kill_cost(bottom[gate_id - 1]);
    *zeros_to_fix0 = k.zeros_to_fix0 ? static_cast<int64_t>(*k.zeros_to_fix0) : -1;
    *ones_to_fix1 = k.ones_to_fix1 ? static_cast<int64_t>(*k.ones_to_fix1) : -1;
    return MC_OK;
  });
}

mc_status mc_walk_csv(const mc_circuit* c, const char* bits, const mc_walk_config* cfg, char** out) {
  MC_REQUIRE(c && cfg && out);
  return guard([&] {
    const auto& circuit = c->circuit;
    analyze::WalkConfig w;
    w.s = cfg->s;
    w.d = cfg->d;
    w.x_star = VariableId{cfg->x_star};
    w.seed = cfg->seed;
    w.random_gate = cfg->random_gate != 0;
    if (cfg->g_star && cfg->g_star_len > 0)
      w.g_star.assign(cfg->g_star, cfg->g_star + cfg->g_star_len);
    else if (w.x_star.index >= 1 && w.x_star.index <= circuit.n())
      w.g_star = analyze::gates_reading(circuit, w.x_star);
    const auto start = bits ? parse_bits(bits, circuit.n()) : analyze::random_walk_start(circuit.n(), w.x_star, w.seed);
    const auto trace = analyze::walk(circuit, start, w);

    std::string csv = "step,gate,candidates,flipped,weight";
    for (auto g : w.g_star) csv += ",diff_g" + std::to_string(g);
    csv += "\n0,,,," + std::to_string(start.weight());
    for (auto d : analyze::g_star_diffs(circuit, w, start)) csv += "," + std::to_string(d);
    csv += "\n";
    std::uint32_t weight = start.weight();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& s = trace.steps[i];
      csv += std::to_string(i + 1) + "," + std::to_string(s.gate) + "," + std::to_string(s.candidates) + ",x" +
             std::to_string(s.flipped.index) + "," + std::to_string(--weight);
      for (auto d : s.diffs) csv += "," + std::to_string(d);
      csv += "\n";
    }
    csv += "# start " + start.to_string() + "\n";
    csv += "# stop_reason " + std::string(analyze::walk_stop_name(trace.stop)) + "\n";
    *out = dup(csv);
    return MC_OK;
  });
}

}  // extern "C"
