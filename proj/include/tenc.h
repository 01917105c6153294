/*
 * tenc — translator of bit-level algorithm descriptions to CNF, with an
 * instance layer for inversion/collision problems and an embedded SAT core.
 *
 * C API over the shared library: opaque handles, integer status codes.
 * All functions return TENC_OK (0) on success; on failure they return a
 * nonzero status and leave a message readable via tenc_last_error() (the
 * message is thread-local and valid until the next failing call on the
 * same thread). Strings returned through char** out-parameters are heap
 * allocated and must be released with tenc_string_free().
 */

#ifndef TENC_H
#define TENC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tenc_status {
    TENC_OK = 0,
    TENC_ERR_DIAGNOSTICS = 1,   /* lex/parse/resolve/translate errors */
    TENC_ERR_IO = 2,            /* file not readable/writable, bad format */
    TENC_ERR_ARG = 3,           /* invalid argument / length mismatch */
    TENC_ERR_STATE = 4,         /* operation not valid for this handle */
    TENC_ERR_SOLVER = 5,        /* external solver failure */
    TENC_ERR_INTERNAL = 6
} tenc_status;

typedef enum tenc_verdict {
    TENC_SAT = 0,
    TENC_UNSAT = 1,
    TENC_UNKNOWN = 2
} tenc_verdict;

typedef struct tenc_program tenc_program;     /* parsed + resolved .alg program */
typedef struct tenc_template tenc_template;   /* template CNF */
typedef struct tenc_instance tenc_instance;   /* bound instance */
typedef struct tenc_result tenc_result;       /* solver result */
typedef struct tenc_family tenc_family;       /* guessed-bits instance family */

const char* tenc_version(void);
const char* tenc_last_error(void);
void tenc_string_free(char* s);

/* ---- programs ---- */

tenc_status tenc_program_load(const char* path, tenc_program** out);
tenc_status tenc_program_from_string(const char* text, const char* origin,
                                     tenc_program** out);
void tenc_program_free(tenc_program* p);

/* diagnostics of the last failed load, owned by the library (thread-local) */
uint32_t tenc_program_num_inputs(const tenc_program* p);
uint32_t tenc_program_num_outputs(const tenc_program* p);

/* concrete reference interpretation; in/out are 0/1 bytes, declaration order */
tenc_status tenc_program_interpret(const tenc_program* p, const uint8_t* in, size_t n,
                                   uint8_t* out, size_t m);

/* ---- encoding ---- */

typedef struct tenc_encode_options {
    int fuse;             /* collapse single-use cones into table constraints */
    int fuse_max_arity;   /* 2..12, default 8 */
    int xor_max_direct;   /* k-ary XOR encoded directly up to this arity, default 4 */
    int ite_redundant;    /* emit the two optional redundant ITE clauses */
    uint64_t var_cap;     /* hard variable budget */
} tenc_encode_options;

void tenc_encode_options_init(tenc_encode_options* o);

tenc_status tenc_program_encode(const tenc_program* p, const tenc_encode_options* o,
                                tenc_template** out);
/* ASCII AIGER ("aag"); requires an assert-free program */
tenc_status tenc_program_aiger(const tenc_program* p, char** out_text);

/* ---- templates ---- */

tenc_status tenc_template_load(const char* path, tenc_template** out);
tenc_status tenc_template_save(const tenc_template* t, const char* path);
tenc_status tenc_template_dimacs(const tenc_template* t, char** out_text);
void tenc_template_free(tenc_template* t);

uint32_t tenc_template_num_vars(const tenc_template* t);
uint64_t tenc_template_num_clauses(const tenc_template* t);
uint64_t tenc_template_num_literals(const tenc_template* t);
uint32_t tenc_template_num_inputs(const tenc_template* t);
uint32_t tenc_template_num_outputs(const tenc_template* t);
uint32_t tenc_template_input_var(const tenc_template* t, uint32_t i);
uint32_t tenc_template_output_var(const tenc_template* t, uint32_t i);

uint32_t tenc_template_num_core_records(const tenc_template* t);
const char* tenc_template_core_label(const tenc_template* t, uint32_t i);
/* entries as a space-separated string ("3 -7 0 -0 12") */
tenc_status tenc_template_core_entries(const tenc_template* t, uint32_t i, char** out);

/* ---- instances ---- */

tenc_status tenc_instance_bind_input(const tenc_template* t, const uint8_t* bits,
                                     size_t n, tenc_instance** out);
tenc_status tenc_instance_bind_output(const tenc_template* t, const uint8_t* bits,
                                      size_t m, tenc_instance** out);
tenc_status tenc_instance_collision(const tenc_template* t, tenc_instance** out);
/* the bare template clause set with no bindings (base for switching work) */
tenc_status tenc_instance_from_template(const tenc_template* t, tenc_instance** out);
/* strict=1 requires the t-encoding header (instance files); strict=0 accepts
 * plain DIMACS for raw solving */
tenc_status tenc_instance_load(const char* path, int strict, tenc_instance** out);
tenc_status tenc_instance_save(const tenc_instance* i, const char* path);
tenc_status tenc_instance_dimacs(const tenc_instance* i, char** out_text);
void tenc_instance_free(tenc_instance* i);

uint32_t tenc_instance_num_vars(const tenc_instance* i);
/* input groups: 1 normally, 2 for collision instances */
uint32_t tenc_instance_num_input_groups(const tenc_instance* i);
uint32_t tenc_instance_num_inputs(const tenc_instance* i);
uint32_t tenc_instance_num_outputs(const tenc_instance* i);
uint32_t tenc_instance_input_var(const tenc_instance* i, uint32_t group, uint32_t k);
uint32_t tenc_instance_output_var(const tenc_instance* i, uint32_t k);

/* extra unit clauses (guessed bits etc.); lits are signed variables */
tenc_status tenc_instance_add_units(tenc_instance* i, const int32_t* lits, size_t n);
/* one switching constraint: clauses flattened as 0-terminated literal runs */
tenc_status tenc_instance_add_switch(tenc_instance* i, const int32_t* lits, size_t n,
                                     const char* label, uint32_t* out_var);
/* state: 1 activated (unit u), 0 deactivated (unit ¬u), -1 free */
tenc_status tenc_instance_set_switch(tenc_instance* i, uint32_t var, int state);

/* unit propagation to fixpoint. values: array of num_vars+1 int8 slots,
 * filled with -1/0/1; conflict_out receives 1 on conflict else 0 */
tenc_status tenc_instance_propagate(const tenc_instance* i, int8_t* values,
                                    int* conflict_out);
/* μ measure: #targets assigned by UP (0 and conflict_out=1 on conflict);
 * targets NULL/0 means the instance's input variables */
tenc_status tenc_instance_measure_mu(const tenc_instance* i, const uint32_t* targets,
                                     size_t ntargets, uint32_t* count_out,
                                     int* conflict_out);

/* ---- solving ---- */

typedef struct tenc_solve_options {
    int use_external;           /* 0: embedded DPLL, 1: external command */
    const char* external_cmd;   /* solver invoked as "<cmd> <file.cnf>" */
    uint64_t max_conflicts;     /* embedded budget; 0 = unlimited */
    double max_seconds;         /* embedded budget; 0 = unlimited */
    int vsids;                  /* 1: activity branching; 0: fixed order */
} tenc_solve_options;

void tenc_solve_options_init(tenc_solve_options* o);

tenc_status tenc_instance_solve(const tenc_instance* i, const tenc_solve_options* o,
                                tenc_result** out);
void tenc_result_free(tenc_result* r);

tenc_verdict tenc_result_verdict(const tenc_result* r);
/* -1 unassigned/unknown verdict, else 0/1 */
int tenc_result_value(const tenc_result* r, uint32_t var);
uint64_t tenc_result_conflicts(const tenc_result* r);
uint64_t tenc_result_decisions(const tenc_result* r);
uint64_t tenc_result_propagations(const tenc_result* r);
double tenc_result_seconds(const tenc_result* r);

/* model enumeration over a projection (NULL/0: all variables); models are
 * packed row-major as 0/1 bytes, nproj per row */
tenc_status tenc_instance_enumerate(const tenc_instance* i, const uint32_t* proj,
                                    size_t nproj, uint64_t cap, uint8_t** rows_out,
                                    uint64_t* nrows_out, int* truncated_out);

/* ---- guessed-bits families ---- */

tenc_status tenc_family_new(const tenc_template* t, const uint8_t* y, size_t m,
                            const uint32_t* guess_vars, size_t nguess, int exhaustive,
                            uint64_t sample_count, uint64_t seed, tenc_family** out);
uint64_t tenc_family_size(const tenc_family* f);
tenc_status tenc_family_member(const tenc_family* f, uint64_t index,
                               tenc_instance** out);
void tenc_family_free(tenc_family* f);

/* ---- guess-and-determine runtime estimation ---- */

typedef struct tenc_estimate_options {
    uint32_t samples;
    uint64_t seed;
    uint64_t budget_conflicts;
    double budget_seconds;
    int use_external;
    const char* external_cmd;
} tenc_estimate_options;

void tenc_estimate_options_init(tenc_estimate_options* o);

typedef struct tenc_gd_report {
    uint32_t samples;
    uint32_t solved;
    double rho;                  /* solved fraction within budget */
    double epsilon;              /* 1/(2N) floor used in the estimate */
    double mean_conflicts;       /* over solved samples */
    double est_total_conflicts;  /* 2^|B| * mean / max(rho, eps) */
    double mean_seconds;         /* advisory; not reproducible */
    double est_total_seconds;
    uint64_t seed;
    uint32_t guess_bits;
    uint64_t budget_conflicts;
} tenc_gd_report;

tenc_status tenc_template_estimate(const tenc_template* t, const uint32_t* guess_vars,
                                   size_t nguess, const tenc_estimate_options* o,
                                   tenc_gd_report* out);

#ifdef __cplusplus
}
#endif

#endif /* TENC_H */
