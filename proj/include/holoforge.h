#ifndef HOLOFORGE_H
#define HOLOFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HOLOFORGE_BUILDING_LIBRARY)
#    define HF_API __declspec(dllexport)
#  else
#    define HF_API __declspec(dllimport)
#  endif
#else
#  define HF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the library's error codes; 0 is success. */
typedef enum hf_status {
  HF_OK = 0,
  HF_ERR_INVALID_ARGUMENT = 1,
  HF_ERR_DEGREE_MISMATCH = 2,
  HF_ERR_THRESHOLD_EXCEEDED = 3,
  HF_ERR_BUDGET_EXHAUSTED = 4,
  HF_ERR_PARSE = 5,
  HF_ERR_UNDECLARED_GENERATOR = 6,
  HF_ERR_NOT_SUBGROUP = 7,
  HF_ERR_NOT_NORMAL = 8,
  HF_ERR_OUT_OF_RANGE = 9,
  HF_ERR_UNKNOWN_CLAIM = 10,
  HF_ERR_INTERNAL = 11
} hf_status;

/* Claim verdicts, numbered like the command-line exit codes. */
typedef enum hf_verdict {
  HF_VERDICT_PASS = 0,
  HF_VERDICT_FAIL = 1,
  HF_VERDICT_INCONCLUSIVE = 3
} hf_verdict;

typedef struct hf_presentation hf_presentation;
typedef struct hf_group hf_group;
typedef struct hf_report hf_report;

typedef void (*hf_progress_fn)(const char* message, void* user);

HF_API const char* hf_version(void);
HF_API const char* hf_status_name(hf_status status);
/* Message of the last failed call on this thread; empty when none. */
HF_API const char* hf_last_error(void);
/* Frees strings returned through char** out parameters. */
HF_API void hf_string_free(char* s);

/* Process-wide live-coset budget; 0 leaves it unchanged. */
HF_API hf_status hf_set_coset_budget(uint64_t budget);
HF_API uint64_t hf_coset_budget(void);

HF_API hf_status hf_presentation_parse(const char* text, hf_presentation** out);
HF_API void hf_presentation_free(hf_presentation* p);
HF_API hf_status hf_presentation_generator_count(const hf_presentation* p, size_t* out);
HF_API hf_status hf_presentation_relator_count(const hf_presentation* p, size_t* out);
/* Coset enumeration over the trivial subgroup. */
HF_API hf_status hf_presentation_order(const hf_presentation* p, uint64_t* out);

/* Group specs such as "C(8)xC(2)" or "C(12)". */
HF_API hf_status hf_abelian_orders(const char* spec, uint64_t* order, uint64_t* aut_order,
                                   uint64_t* hol_order);
HF_API hf_status hf_holomorph(const char* spec, hf_group** out);
HF_API hf_status hf_automorphism_group(const char* spec, hf_group** out);
HF_API void hf_group_free(hf_group* g);
HF_API hf_status hf_group_order(const hf_group* g, uint64_t* out);
HF_API hf_status hf_group_degree(const hf_group* g, size_t* out);
/* JSON array of generators in cycle notation. */
HF_API hf_status hf_group_generators_json(const hf_group* g, char** out);

/* JSON array of claim ids. */
HF_API hf_status hf_claim_ids_json(char** out);
/* args_json: object with optional integer keys p, n, m, rank and an array
   "factors"; NULL or "" selects the claim's default instance. */
HF_API hf_status hf_claim_run(const char* id, const char* args_json, int allow_long,
                              hf_progress_fn progress, void* user, hf_report** out);
/* JSON array of {id, args, long} for the default suite. */
HF_API hf_status hf_suite_json(int include_long, char** out);
HF_API void hf_report_free(hf_report* r);
HF_API hf_status hf_report_verdict(const hf_report* r, hf_verdict* out);
HF_API hf_status hf_report_json(const hf_report* r, char** out);
HF_API hf_status hf_report_text(const hf_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif
