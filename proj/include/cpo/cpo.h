#ifndef CPO_CPO_H
#define CPO_CPO_H

#include <stddef.h>

#if defined(_WIN32)
#define CPO_API __declspec(dllexport)
#else
#define CPO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpo_status {
    CPO_OK = 0,
    CPO_INVALID_ARGUMENT = 1,
    CPO_PARSE_ERROR = 2,
    CPO_VALIDATION_ERROR = 3,
    CPO_IO_ERROR = 4,
    CPO_SPACE_TOO_LARGE = 5,
    CPO_BUDGET_EXHAUSTED = 6,
    CPO_INTERNAL_ERROR = 7
} cpo_status;

/* Overall verdicts of a report. */
enum { CPO_TERMINATING = 0, CPO_NOT_PROVED = 1, CPO_INVALID_PROBLEM = 2 };

/* Rule verdicts. */
enum { CPO_RULE_ORIENTED = 0, CPO_RULE_FAILED = 1, CPO_RULE_UNKNOWN = 2 };

/* Search outcomes. */
enum { CPO_SEARCH_FOUND = 0, CPO_SEARCH_NONE = 1 };

typedef struct cpo_problem cpo_problem;
typedef struct cpo_config cpo_config;
typedef struct cpo_report cpo_report;
typedef struct cpo_search_result cpo_search_result;

/* Message of the last failed call on this thread; never NULL. */
CPO_API const char* cpo_last_error(void);
/* Source line and column of the last parse error, 0 when unknown. */
CPO_API int cpo_last_error_line(void);
CPO_API int cpo_last_error_column(void);

/* Strings returned through char** out parameters are released with this. */
CPO_API void cpo_string_free(char* s);

CPO_API cpo_status cpo_problem_parse(const char* text, cpo_problem** out);
CPO_API cpo_status cpo_problem_load(const char* path, cpo_problem** out);
CPO_API void cpo_problem_free(cpo_problem* p);
CPO_API size_t cpo_problem_rule_count(const cpo_problem* p);
CPO_API cpo_status cpo_problem_print(const cpo_problem* p, char** out);

CPO_API cpo_config* cpo_config_new(void);
CPO_API void cpo_config_free(cpo_config* c);
/* "core", "accessible" or "full" (the default). */
CPO_API cpo_status cpo_config_set_mode(cpo_config* c, const char* mode);
/* A relaxation flag name such as "FbSub-addX". Test use only. */
CPO_API cpo_status cpo_config_add_relax(cpo_config* c, const char* flag);
/* Negative disables the cap (the default). */
CPO_API cpo_status cpo_config_set_max_depth(cpo_config* c, int depth);
/* Whether reports keep derivations (default 1). */
CPO_API cpo_status cpo_config_set_trace(cpo_config* c, int trace);
/* Whether search reuses cached rule outcomes (default 1). */
CPO_API cpo_status cpo_config_set_prune(cpo_config* c, int prune);

/* Validates, then orients every rule. `config` may be NULL. A report is
   produced even when validation fails. */
CPO_API cpo_status cpo_check(const cpo_problem* p, const cpo_config* config, cpo_report** out);
CPO_API void cpo_report_free(cpo_report* r);
CPO_API int cpo_report_verdict(const cpo_report* r);
CPO_API size_t cpo_report_rule_count(const cpo_report* r);
CPO_API int cpo_report_rule_verdict(const cpo_report* r, size_t index);
/* Fraction of engine calls answered from the memo table. */
CPO_API double cpo_report_memo_hit_rate(const cpo_report* r);
CPO_API double cpo_report_seconds(const cpo_report* r);
CPO_API cpo_status cpo_report_json(const cpo_report* r, const char* name, char** out);
CPO_API cpo_status cpo_report_text(const cpo_report* r, const char* name, int trace, char** out);

/* Diagnostics only. `*valid` receives 1 when there are no errors. */
CPO_API cpo_status cpo_validate(const cpo_problem* p, const char* name, int json, int* valid, char** out);
/* Small-symbol eligibility of every symbol. */
CPO_API cpo_status cpo_classify(const cpo_problem* p, const char* name, int json, char** out);

/* Search for a precedence, statuses and size classes. budget_seconds <= 0
   means unlimited. Returns CPO_SPACE_TOO_LARGE or CPO_BUDGET_EXHAUSTED
   without a result in those cases. */
CPO_API cpo_status cpo_search(const cpo_problem* p, const cpo_config* config, int max_free, double budget_seconds,
                              cpo_search_result** out);
CPO_API void cpo_search_result_free(cpo_search_result* r);
CPO_API int cpo_search_outcome(const cpo_search_result* r);
CPO_API unsigned long long cpo_search_candidates(const cpo_search_result* r);
/* Human-readable witness, or the reason no witness exists. */
CPO_API cpo_status cpo_search_text(const cpo_search_result* r, char** out);
/* The input problem with the witness applied, as problem-file text. */
CPO_API cpo_status cpo_search_problem(const cpo_search_result* r, char** out);

#ifdef __cplusplus
}
#endif

#endif
