/* Exercises the C interface from plain C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bkd/bkd.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

static char* slurp(const char* name) {
  char path[1024];
  snprintf(path, sizeof path, "%s/%s", BKD_DATA_DIR, name);
  FILE* f = fopen(path, "rb");
  if (!f) {
    fprintf(stderr, "cannot open %s\n", path);
    exit(1);
  }
  fseek(f, 0, SEEK_END);
  long n = ftell(f);
  fseek(f, 0, SEEK_SET);
  char* s = malloc((size_t)n + 1);
  size_t got = fread(s, 1, (size_t)n, f);
  s[got] = 0;
  fclose(f);
  return s;
}

static const char* kTrivialZ3 =
    "{\"p\": 3, \"ring\": \"Z\", \"n\": 1, \"relations\": [[3]], \"T\": [[1]], \"S\": [[1]]}";

static void modules(void) {
  bkd_module* m = NULL;
  char* out = NULL;
  EXPECT(bkd_module_from_json(kTrivialZ3, &m) == BKD_OK);
  EXPECT(bkd_module_tate_dihedral(m, 0, &out) == BKD_OK);
  EXPECT(strstr(out, "\"order\":\"3\"") != NULL);
  bkd_string_free(out);
  EXPECT(bkd_module_tate_cyclic(m, "{\"type\": \"ROTATION\"}", 1, &out) == BKD_OK);
  EXPECT(strstr(out, "\"order\":\"3\"") != NULL);
  bkd_string_free(out);
  EXPECT(bkd_module_tate_cyclic(m, "{\"type\": \"FULL\"}", 1, &out) == BKD_INPUT_ERROR);
  EXPECT(strlen(bkd_last_error()) > 0);
  EXPECT(bkd_module_cohomology_oracle(m, "{\"type\": \"REFLECTION\", \"j\": 0}", 2, &out) == BKD_OK);
  EXPECT(strstr(out, "\"order\":\"3\"") == NULL);
  bkd_string_free(out);
  EXPECT(bkd_module_to_json(m, &out) == BKD_OK);
  bkd_module* again = NULL;
  EXPECT(bkd_module_from_json(out, &again) == BKD_OK);
  bkd_string_free(out);
  bkd_module_free(again);
  bkd_module_free(m);

  EXPECT(bkd_module_random("{\"p\": 5, \"constraints\": [\"FINITE\"]}", 7, &m) == BKD_OK);
  bkd_module_free(m);

  m = NULL;
  EXPECT(bkd_module_from_json("{\"p\": 4}", &m) == BKD_INPUT_ERROR);
  EXPECT(m == NULL);
  EXPECT(bkd_module_from_json("not json", &m) == BKD_INPUT_ERROR);
  EXPECT(bkd_module_from_json(NULL, &m) == BKD_INPUT_ERROR);
}

static void lattices(void) {
  char* text = slurp("lattice_sign_p3.json");
  bkd_lattice* l = NULL;
  char* out = NULL;
  EXPECT(bkd_lattice_from_json(text, &l) == BKD_OK);
  EXPECT(bkd_lattice_regulator_constant(l, &out) == BKD_OK);
  EXPECT(strcmp(out, "3") == 0);
  bkd_string_free(out);
  EXPECT(bkd_lattice_index_check(l, &out) == BKD_OK);
  EXPECT(strstr(out, "\"holds\":true") != NULL);
  bkd_string_free(out);
  bkd_lattice_free(l);
  free(text);

  text = slurp("lattice_nonsymmetric_p3.json");
  EXPECT(bkd_lattice_from_json(text, &l) == BKD_INPUT_ERROR);
  EXPECT(strstr(bkd_last_error(), "symmetric") != NULL);
  free(text);
}

static void bundles(void) {
  char* text = slurp("bundle_s3.json");
  bkd_bundle* b = NULL;
  char* out = NULL;
  EXPECT(bkd_bundle_from_json(text, &b) == BKD_OK);
  EXPECT(bkd_bundle_check(b, NULL, &out) == BKD_OK);
  bkd_string_free(out);
  EXPECT(bkd_bundle_check(b, "-1", &out) == BKD_INPUT_ERROR);
  EXPECT(bkd_bundle_to_json(b, &out) == BKD_OK);
  bkd_bundle* again = NULL;
  EXPECT(bkd_bundle_from_json(out, &again) == BKD_OK);
  bkd_string_free(out);
  bkd_bundle_free(again);
  bkd_bundle_free(b);
  free(text);

  text = slurp("bundle_hL_mismatch_ell7.json");
  EXPECT(bkd_bundle_from_json(text, &b) == BKD_OK);
  EXPECT(bkd_bundle_check(b, "1e-6", &out) == BKD_CHECK_FAILED);
  bkd_string_free(out);
  bkd_bundle_free(b);
  free(text);
}

static void commands(void) {
  char* out = NULL;
  EXPECT(bkd_run_verify_lemmas("{\"p\": [3], \"trials\": 2, \"seed\": 1, \"lemmas\": [\"index\"]}", BKD_FORMAT_JSON,
                               &out) == BKD_OK);
  EXPECT(strstr(out, "\"lemma\":\"index\"") != NULL);
  bkd_string_free(out);
  EXPECT(bkd_run_verify_lemmas("{\"p\": [4]}", BKD_FORMAT_JSON, &out) == BKD_INPUT_ERROR);
  bkd_string_free(out);

  char* places = slurp("places_worked_p3.json");
  long rel[4] = {1, -2, -1, 2};
  EXPECT(bkd_run_splitting(places, 3, 2, rel, BKD_FORMAT_TEXT, &out) == BKD_OK);
  bkd_string_free(out);
  free(places);

  EXPECT(bkd_run_wnum("3", "4", 10, 2, BKD_FORMAT_TEXT, &out) == BKD_OK);
  EXPECT(strcmp(out, "w_3 = 3\n") == 0);
  bkd_string_free(out);
}

int main(void) {
  EXPECT(strlen(bkd_version()) > 0);
  modules();
  lattices();
  bundles();
  commands();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
