/* C interface to the hierarchical Choquet SMAA library. */
#ifndef CSMAA_H
#define CSMAA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_IO = 1,
  CS_ERR_PARSE = 2,
  CS_ERR_INVALID_ARGUMENT = 3,
  CS_ERR_INFEASIBLE = 4,
  CS_ERR_NUMERIC = 5,
  CS_ERR_INTERNAL = 6
} cs_status;

typedef struct cs_hierarchy cs_hierarchy;
typedef struct cs_table cs_table;
typedef struct cs_constraints cs_constraints;
typedef struct cs_samples cs_samples;

/* Receives one line of report text (no trailing newline). */
typedef void (*cs_line_callback)(const char* line, void* user);

/* Message of the last failed call on this thread; empty if none. */
CS_API const char* cs_last_error(void);
CS_API const char* cs_version(void);
CS_API const char* cs_status_name(cs_status s);

/* Hierarchy */
CS_API cs_status cs_hierarchy_load(const char* path, cs_hierarchy** out);
CS_API void cs_hierarchy_free(cs_hierarchy* h);
CS_API size_t cs_hierarchy_leaf_count(const cs_hierarchy* h);
CS_API size_t cs_hierarchy_levels(const cs_hierarchy* h);
CS_API size_t cs_mobius_dimension(const cs_hierarchy* h);
/* Node index of "root" or a node label. */
CS_API cs_status cs_hierarchy_resolve(const cs_hierarchy* h, const char* name, size_t* out);

/* Performance tables */
CS_API cs_status cs_table_load(const cs_hierarchy* h, const char* path, cs_table** out);
CS_API cs_status cs_table_normalize(const cs_table* raw, const cs_hierarchy* h, cs_table** out);
CS_API void cs_table_free(cs_table* t);
CS_API size_t cs_table_rows(const cs_table* t);
CS_API size_t cs_table_columns(const cs_table* t);
CS_API const char* cs_table_alternative(const cs_table* t, size_t row);
CS_API cs_status cs_table_value(const cs_table* t, size_t row, size_t column, double* out);

/* Choquet integral of one alternative on a node; mobius has
   cs_mobius_dimension(h) coefficients in canonical order. */
CS_API cs_status cs_choquet(const cs_hierarchy* h, const cs_table* normalized, size_t row,
                            size_t node, const double* mobius, size_t dim, double* out);

/* Constraint systems */
CS_API cs_status cs_constraints_base(const cs_hierarchy* h, cs_constraints** out);
CS_API cs_status cs_constraints_add_profile(cs_constraints* c, const cs_hierarchy* h,
                                            const cs_table* normalized, const char* prefs_path);
CS_API void cs_constraints_free(cs_constraints* c);
CS_API size_t cs_constraints_rows(const cs_constraints* c);
/* eps* of the system and whether it reaches the compatibility threshold. */
CS_API cs_status cs_solve(const cs_constraints* c, double* epsilon_star, int* compatible);
/* One line per statement id of an irreducible conflicting subset. */
CS_API cs_status cs_diagnose(const cs_constraints* c, cs_line_callback cb, void* user);

/* Sampling; burn_in and thinning count sweeps of the walk. */
CS_API cs_status cs_sample(const cs_constraints* c, size_t n, uint64_t seed, size_t burn_in,
                           size_t thinning, size_t chains, cs_samples** out);
CS_API void cs_samples_free(cs_samples* s);
CS_API size_t cs_samples_count(const cs_samples* s);
CS_API size_t cs_samples_dimension(const cs_samples* s);
CS_API cs_status cs_samples_get(const cs_samples* s, size_t index, double* out, size_t dim);

/* Pipeline */
typedef struct cs_run_options {
  const char* hierarchy_path;
  const char* data_path;
  const char* const* prefs_paths;
  size_t prefs_count;
  size_t samples;
  uint64_t seed;
  size_t burn_in;
  size_t thinning;
  size_t chains;
  const char* out_dir;
  const char* const* nodes; /* NULL or empty: root and its children */
  size_t nodes_count;
  int emit_samples;
  int emit_lp;
  size_t threads; /* 0: CHOQUET_SMAA_THREADS or hardware concurrency */
} cs_run_options;

CS_API void cs_run_options_init(cs_run_options* opts);
CS_API cs_status cs_run(const cs_run_options* opts, cs_line_callback cb, void* user);
/* Recomputes the normalized table from raw data and compares it with a golden
   table; *passed is 1 when every cell is within tolerance. */
CS_API cs_status cs_verify(const char* hierarchy_path, const char* raw_path,
                           const char* golden_path, double tolerance, cs_line_callback cb,
                           void* user, int* passed);

#ifdef __cplusplus
}
#endif

#endif
