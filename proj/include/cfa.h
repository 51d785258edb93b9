#ifndef CFA_H
#define CFA_H

/* C interface to the automata core.  All functions return CFA_OK (0) or a
 * nonzero status code; cfa_last_error() describes the most recent failure on
 * the calling thread.  Numeric results are returned as decimal (or exact
 * rational "p/q") strings; release them with cfa_string_free. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum cfa_status {
    CFA_OK = 0,
    CFA_MALFORMED_CODE,
    CFA_RANGE_ERROR,
    CFA_LENGTH_ERROR,
    CFA_PARSE_ERROR,
    CFA_INVARIANT_VIOLATION,
    CFA_ALPHABET_ERROR,
    CFA_ALPHABET_MISMATCH,
    CFA_CAP_EXCEEDED,
    CFA_STACK_ERROR,
    CFA_OUTPUT_ALPHABET_ERROR,
    CFA_HOMOMORPHISM_ERROR,
    CFA_NORMAL_FORM_ERROR,
    CFA_NOT_IN_SPAN,
    CFA_SCALE_ERROR,
    CFA_DIVISION_BY_ZERO,
    CFA_UNKNOWN_FAMILY,
    CFA_NO_MACHINE,
    CFA_UNKNOWN_SUITE,
    CFA_IO_ERROR,
    CFA_INTERNAL_ERROR
};

typedef struct cfa_machine cfa_machine;

const char* cfa_last_error(void);
void cfa_string_free(char* s);

/* machines: line-oriented interchange format */
int cfa_machine_parse(const char* text, cfa_machine** out);
int cfa_machine_read_file(const char* path, cfa_machine** out);
int cfa_machine_write_file(const cfa_machine* m, const char* path);
int cfa_machine_serialize(const cfa_machine* m, char** text);
const char* cfa_machine_kind(const cfa_machine* m);
int cfa_machine_state_complexity(const cfa_machine* m, char** out);
void cfa_machine_free(cfa_machine* m);

/* semantics */
int cfa_count_paths(const cfa_machine* m, const char* input, char** accepting, char** rejecting, char** improper);
int cfa_gap_value(const cfa_machine* m, const char* input, char** gap);
int cfa_pfa_probabilities(const cfa_machine* m, const char* input, char** accept, char** reject, char** other);
int cfa_transduce(const cfa_machine* m, const char* input, char** output);
int cfa_dpda_run(const cfa_machine* m, const char* input, char** verdict, uint64_t* steps, int* turns);
int cfa_stack_state_complexity(const cfa_machine* m, char** out);

/* constructions; b is ignored (may be NULL) for the unary ops.
 * op: complete | bnf | flip | split | sum | sync | square | meet |
 *     complement | gapdiff | gapsum | gapprod | counter | gapcounter | pfa */
int cfa_construct(const char* op, const cfa_machine* a, const cfa_machine* b, cfa_machine** out);
/* op: homimage | hominverse; mapping: comma-separated "letter=image" pairs */
int cfa_construct_hom(const char* op, const cfa_machine* m, const char* mapping, cfa_machine** out);

/* families */
int cfa_family_names(char** csv);
int cfa_family_classify(const char* name, int n, const char* input, char** verdict);
int cfa_family_enumerate(const char* name, int n, int max_len, char** lines);
int cfa_family_machine(const char* name, int n, cfa_machine** out);

/* analysis */
int cfa_analyze_span(const cfa_machine* pfa, const char* prefix_lines, char** span_lines);
int cfa_analyze_cequal_extension(const cfa_machine* pfa, const char* family, int n, int m, int l, const char* z,
                                 char** report, int* violations);
int cfa_analyze_sign_pattern(const char* family, int n, const char* prefix_lines, const char* y, char** pattern);
int cfa_funop(const char* op, const char* a, const char* b, char** result);

/* verification harness */
int cfa_check_class_condition(const char* condition, const cfa_machine* m, const char* family, int n, int max_len,
                              char** report, int* all_pass);
int cfa_run_suite(const char* suite, uint64_t seed, const char* scale, int negative_control, char** report,
                  int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* CFA_H */
