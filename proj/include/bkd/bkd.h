#ifndef BKD_H
#define BKD_H

/* C interface to the D_2p module, cohomology and class-number-relation
 * library. Objects are opaque handles; every call returns a bkd_status and
 * leaves a message for bkd_last_error() on failure. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * bkd_string_free. Out-parameters are set to NULL when a call fails. */

#include <stdint.h>

#if defined(_WIN32)
#if defined(BKD_BUILDING_LIBRARY)
#define BKD_API __declspec(dllexport)
#else
#define BKD_API __declspec(dllimport)
#endif
#else
#define BKD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BKD_OK = 0,
  BKD_CHECK_FAILED = 1,
  BKD_INPUT_ERROR = 2,
  BKD_INCONCLUSIVE = 3,
  BKD_INTERNAL_ERROR = 4
} bkd_status;

typedef enum { BKD_FORMAT_TEXT = 0, BKD_FORMAT_JSON = 1 } bkd_format;

typedef struct bkd_module bkd_module;
typedef struct bkd_lattice bkd_lattice;
typedef struct bkd_bundle bkd_bundle;

/* Message of the last failed call on this thread ("" if none). */
BKD_API const char* bkd_last_error(void);
BKD_API const char* bkd_version(void);
BKD_API void bkd_string_free(char* s);

/* Modules M = Z^n / R with tau and sigma acting by matrices. */
BKD_API bkd_status bkd_module_from_json(const char* json, bkd_module** out);
/* generator_json: {"p", "ring", "rank_bound", "torsion_bound", "constraints"}. */
BKD_API bkd_status bkd_module_random(const char* generator_json, uint64_t seed, bkd_module** out);
BKD_API bkd_status bkd_module_to_json(const bkd_module* m, char** out);
BKD_API void bkd_module_free(bkd_module* m);

/* Groups come back as {"group", "free_rank", "torsion", "order"}; order is
 * "inf" for infinite groups. subgroup_json is {"type", "j"}. */
BKD_API bkd_status bkd_module_tate_dihedral(const bkd_module* m, long j, char** out);
BKD_API bkd_status bkd_module_tate_cyclic(const bkd_module* m, const char* subgroup_json, long j, char** out);
/* Cochain computation of H^j(H, M), 0 <= j <= 3. */
BKD_API bkd_status bkd_module_cohomology_oracle(const bkd_module* m, const char* subgroup_json, int j, char** out);

/* Lattices with an invariant positive definite pairing. */
BKD_API bkd_status bkd_lattice_from_json(const char* json, bkd_lattice** out);
BKD_API void bkd_lattice_free(bkd_lattice* l);
/* Writes the exact regulator constant as "a/b". */
BKD_API bkd_status bkd_lattice_regulator_constant(const bkd_lattice* l, char** out);
/* BKD_OK when the identity holds, BKD_CHECK_FAILED when it does not. */
BKD_API bkd_status bkd_lattice_index_check(const bkd_lattice* l, char** report_json);

/* Field invariant bundles for the class number relation check. */
BKD_API bkd_status bkd_bundle_from_json(const char* json, bkd_bundle** out);
BKD_API bkd_status bkd_bundle_to_json(const bkd_bundle* b, char** out);
BKD_API void bkd_bundle_free(bkd_bundle* b);
/* tolerance is a decimal string; NULL means 1e-6. Returns BKD_OK,
 * BKD_CHECK_FAILED or BKD_INCONCLUSIVE with the report in report_json. */
BKD_API bkd_status bkd_bundle_check(const bkd_bundle* b, const char* tolerance, char** report_json);

/* Command entry points used by the command-line tool. Each writes the
 * formatted output to *out (possibly empty) and returns the exit status. */

/* options_json: {"p": [3], "trials", "seed", "lemmas": [...], "threads",
 * "witness_dir", "explore_hypotheses"}; all keys optional. */
BKD_API bkd_status bkd_run_verify_lemmas(const char* options_json, bkd_format fmt, char** out);
BKD_API bkd_status bkd_run_regconst(const char* lattice_json, bkd_format fmt, char** out);
BKD_API bkd_status bkd_run_bk_check(const char* bundle_json, const char* tolerance, bkd_format fmt, char** out);
/* relation: four coefficients for (trivial, reflection, rotation, whole group). */
BKD_API bkd_status bkd_run_splitting(const char* places_json, int p, long m, const long relation[4], bkd_format fmt,
                                     char** out);
BKD_API bkd_status bkd_run_wnum(const char* ell, const char* kappa, long precision, long m, bkd_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif
