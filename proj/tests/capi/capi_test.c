/* Exercises the C API the way a foreign caller would. */
#include <stdio.h>
#include <string.h>

#include "holoforge.h"

static int failures = 0;

#define EXPECT(cond)                                           \
  do {                                                         \
    if (!(cond)) {                                             \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

static void count_progress(const char* msg, void* user) {
  (void)msg;
  ++*(int*)user;
}

int main(void) {
  hf_presentation* p = NULL;
  EXPECT(hf_presentation_parse("gens: a b; rels: a^3, b^2, (a*b)^2", &p) == HF_OK);
  size_t gens = 0;
  uint64_t order = 0;
  EXPECT(hf_presentation_generator_count(p, &gens) == HF_OK && gens == 2);
  EXPECT(hf_presentation_order(p, &order) == HF_OK && order == 6);
  hf_presentation_free(p);

  p = NULL;
  EXPECT(hf_presentation_parse("gens: a; rels: a^2, b", &p) == HF_ERR_UNDECLARED_GENERATOR);
  EXPECT(p == NULL);
  EXPECT(strlen(hf_last_error()) > 0);
  EXPECT(hf_presentation_order(NULL, &order) == HF_ERR_INVALID_ARGUMENT);

  uint64_t g = 0, a = 0, h = 0;
  EXPECT(hf_abelian_orders("C(9)xC(3)", &g, &a, &h) == HF_OK);
  EXPECT(g == 27 && a == 108 && h == 2916);
  EXPECT(hf_abelian_orders("C(12)", &g, &a, &h) == HF_OK);
  EXPECT(g == 12 && a == 4 && h == 48);

  hf_group* grp = NULL;
  EXPECT(hf_holomorph("C(8)xC(2)", &grp) == HF_OK);
  EXPECT(hf_group_order(grp, &order) == HF_OK && order == 256);
  size_t degree = 0;
  EXPECT(hf_group_degree(grp, &degree) == HF_OK && degree == 16);
  char* s = NULL;
  EXPECT(hf_group_generators_json(grp, &s) == HF_OK && s[0] == '[');
  hf_string_free(s);
  hf_group_free(grp);

  uint64_t old = hf_coset_budget();
  EXPECT(hf_set_coset_budget(12345) == HF_OK && hf_coset_budget() == 12345);
  EXPECT(hf_set_coset_budget(old) == HF_OK);

  hf_report* r = NULL;
  hf_verdict v;
  EXPECT(hf_claim_run("eq1", "{\"factors\":[4,3]}", 0, NULL, NULL, &r) == HF_OK);
  EXPECT(hf_report_verdict(r, &v) == HF_OK && v == HF_VERDICT_PASS);
  EXPECT(hf_report_json(r, &s) == HF_OK && strstr(s, "\"hol_product\":48") != NULL);
  hf_string_free(s);
  hf_report_free(r);

  int lines = 0;
  EXPECT(hf_claim_run("s11", "{\"n\":1,\"p\":5}", 0, count_progress, &lines, &r) == HF_OK);
  EXPECT(hf_report_verdict(r, &v) == HF_OK && v == HF_VERDICT_PASS);
  hf_report_free(r);

  EXPECT(hf_claim_run("s2s3", "{\"n\":2}", 0, NULL, NULL, &r) == HF_OK);
  EXPECT(hf_report_verdict(r, &v) == HF_OK && v == HF_VERDICT_INCONCLUSIVE);
  EXPECT(hf_report_text(r, &s) == HF_OK && strstr(s, "inconclusive") != NULL);
  hf_string_free(s);
  hf_report_free(r);

  EXPECT(hf_claim_run("s99", NULL, 0, NULL, NULL, &r) == HF_ERR_UNKNOWN_CLAIM);
  EXPECT(hf_claim_run("eq1", "[1]", 0, NULL, NULL, &r) == HF_ERR_INVALID_ARGUMENT);

  EXPECT(hf_claim_ids_json(&s) == HF_OK && strstr(s, "\"s9\"") != NULL);
  hf_string_free(s);
  EXPECT(hf_suite_json(1, &s) == HF_OK && strstr(s, "\"long\":true") != NULL);
  hf_string_free(s);

  printf("%s (%d failures)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
