/* C interface to the majcirc library.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every fallible call returns an mc_status; on failure mc_last_error() holds
 * a message for the calling thread. Strings returned through char** are
 * heap-allocated and released with mc_string_free.
 */
#ifndef MAJCIRC_MAJCIRC_H
#define MAJCIRC_MAJCIRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MC_API __declspec(dllexport)
#else
#define MC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mc_status {
  MC_OK = 0,
  MC_ERR_INVALID_ARGUMENT = 1,
  MC_ERR_PARSE = 2,
  MC_ERR_STRUCTURE = 3,
  MC_ERR_CAP_EXCEEDED = 4,
  MC_ERR_PRECONDITION = 5,
  MC_ERR_INCONSISTENT_MODEL = 6,
  MC_ERR_ENCODER_BUG = 7,
  MC_ERR_UNSATISFIABLE = 8,
  MC_ERR_IO = 9,
  MC_ERR_NOT_FOUND = 10,
  MC_ERR_INTERNAL = 99
} mc_status;

typedef struct mc_circuit mc_circuit;
typedef struct mc_report mc_report;
typedef struct mc_instance mc_instance;

MC_API const char* mc_version(void);
MC_API const char* mc_status_name(mc_status status);

/* Message of the last failed call on this thread ("" if none). */
MC_API const char* mc_last_error(void);
/* Line number of the last parse error on this thread (0 if not line-bound). */
MC_API size_t mc_last_error_line(void);

MC_API void mc_string_free(char* s);

/* ---- circuits ---------------------------------------------------------- */

typedef struct mc_circuit_info {
  uint32_t n;
  int64_t declared_k;
  int64_t max_fan_in;
  uint32_t depth;
  uint64_t gate_count;
  int64_t max_weight;
  int all_standard;
} mc_circuit_info;

MC_API mc_status mc_circuit_parse(const char* text, mc_circuit** out);
MC_API mc_status mc_circuit_serialize(const mc_circuit* c, char** out);
MC_API mc_status mc_circuit_info_get(const mc_circuit* c, mc_circuit_info* out);
/* bits: n characters '0'/'1', x1 first. */
MC_API mc_status mc_circuit_eval(const mc_circuit* c, const char* bits, int* out);
MC_API int mc_circuit_equal(const mc_circuit* a, const mc_circuit* b);
MC_API void mc_circuit_free(mc_circuit* c);

/* ---- builders ---------------------------------------------------------- */

/* tag: "intro7", "n7", "n9" or "n11". */
MC_API mc_status mc_build_published(const char* tag, mc_circuit** out);
MC_API mc_status mc_build_correlation(uint32_t n, uint32_t k, uint64_t seed, mc_circuit** out);
MC_API mc_status mc_build_block(uint32_t n, uint32_t p, uint32_t window_t, mc_circuit** out);
MC_API mc_status mc_default_block_params(uint32_t n, double alpha, uint32_t* p, uint32_t* window_t);
/* inclusive_window != 0: layer-2 thresholds p/2-b .. p/2+b; otherwise p/2-b+1 .. p/2+b. */
MC_API mc_status mc_build_depth3(uint32_t b, int inclusive_window, mc_circuit** out);
/* Odd n: n-2 standard majorities, gate e omitting a random pair. */
MC_API mc_status mc_build_omission(uint32_t n, uint64_t seed, mc_circuit** out);

/* ---- verification ------------------------------------------------------ */

typedef struct mc_verify_options {
  unsigned workers;
  uint32_t exhaustive_bit_cap;
  uint64_t layer_cap;
  double delta;
} mc_verify_options;

MC_API void mc_verify_options_default(mc_verify_options* opts);

/* opts may be NULL for defaults. */
MC_API mc_status mc_verify_all(const mc_circuit* c, const mc_verify_options* opts, mc_report** out);
/* exact != 0: every minterm and maxterm; otherwise `count` samples per layer. */
MC_API mc_status mc_verify_minmax(const mc_circuit* c, int exact, uint64_t count, uint64_t seed,
                                  const mc_verify_options* opts, mc_report** out);
MC_API mc_status mc_estimate_agreement(const mc_circuit* c, uint64_t samples, uint64_t seed,
                                       const mc_verify_options* opts, mc_report** out);

MC_API uint64_t mc_report_total(const mc_report* r);
MC_API uint64_t mc_report_errors(const mc_report* r);
MC_API double mc_report_agreement(const mc_report* r);
MC_API mc_status mc_report_json(const mc_report* r, char** out);
MC_API mc_status mc_report_csv(const mc_report* r, char** out);
MC_API void mc_report_free(mc_report* r);

/* ---- search ------------------------------------------------------------ */

typedef struct mc_search_spec {
  uint32_t n;
  uint32_t k;
  uint32_t multiplicity_max;
  int standard_thresholds;
  int distinct_only;
  int symmetry_breaking;
  int all_inputs; /* 0: minterms and maxterms only */
} mc_search_spec;

MC_API void mc_search_spec_default(mc_search_spec* spec);

/* clause_cap 0 selects the default cap. */
MC_API mc_status mc_encode(const mc_search_spec* spec, uint64_t clause_cap, mc_instance** out);
MC_API mc_status mc_instance_from_varmap(const char* text, uint64_t clause_cap, mc_instance** out);
MC_API mc_status mc_instance_size(const mc_instance* inst, uint32_t* vars, uint64_t* clauses);
MC_API mc_status mc_instance_dimacs(const mc_instance* inst, char** out);
MC_API mc_status mc_instance_varmap(const mc_instance* inst, char** out);
/* Solver output or bare literals; an UNSAT marker yields MC_ERR_UNSATISFIABLE. */
MC_API mc_status mc_decode(const mc_instance* inst, const char* model_text, mc_circuit** out);
/* solver NULL or "" selects mc_default_solver. */
MC_API mc_status mc_solve(const mc_instance* inst, const char* solver, mc_circuit** out);
MC_API mc_status mc_default_solver(char** out);
MC_API void mc_instance_free(mc_instance* inst);

/* MC_ERR_NOT_FOUND when the space holds no circuit. space_cap 0 = default. */
MC_API mc_status mc_exhaustive_search(const mc_search_spec* spec, unsigned workers, double space_cap, mc_circuit** out);
MC_API mc_status mc_fooling_input(const mc_circuit* c, char** bits);

/* ---- analysis ---------------------------------------------------------- */

/* Exact rationals are returned as "num/den" strings. */
MC_API mc_status mc_hypergeom_pmf(uint32_t m, uint32_t kk, uint32_t t, uint32_t l, char** out);
/* CSV m,kk,t,l,tail,bound,holds for l = 0..kk. */
MC_API mc_status mc_hypergeom_tail_csv(uint32_t m, uint32_t kk, uint32_t t, char** out);
/* CSV summary of the full sweep; violations receives the violation count. */
MC_API mc_status mc_hypergeom_sweep_csv(uint32_t m_max, unsigned workers, uint64_t* violations, char** out);
MC_API mc_status mc_scaling_probe_csv(const uint32_t* k_grid, size_t len, double c, unsigned workers, char** out);
MC_API mc_status mc_binomial_mid_csv(const uint32_t* n_grid, size_t len, double c, char** out);

MC_API mc_status mc_boundary_majority(uint32_t n, uint64_t* out);
MC_API mc_status mc_boundary_circuit(const mc_circuit* c, uint64_t* out);
MC_API mc_status mc_influence_majority(uint32_t l, char** out);
MC_API mc_status mc_influence_circuit(const mc_circuit* c, char** out);

/* -1 means impossible. gate_id indexes the bottom layer (1-based). */
MC_API mc_status mc_kill_cost(const mc_circuit* c, uint32_t gate_id, int64_t* zeros_to_fix0, int64_t* ones_to_fix1);

typedef struct mc_walk_config {
  uint32_t s;
  int64_t d;
  uint32_t x_star;
  const uint32_t* g_star; /* NULL: every bottom gate reading x_star */
  size_t g_star_len;
  uint64_t seed;
  int random_gate;
} mc_walk_config;

/* bits NULL: a seeded weight ceil(n/2)-1 start with x_star = 0.
 * CSV step,gate,candidates,flipped,weight,<diff per g_star gate>, then
 * a "# stop_reason <name>" line. */
MC_API mc_status mc_walk_csv(const mc_circuit* c, const char* bits, const mc_walk_config* cfg, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MAJCIRC_MAJCIRC_H */
