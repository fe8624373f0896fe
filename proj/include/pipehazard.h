#ifndef PIPEHAZARD_H
#define PIPEHAZARD_H

/* C interface to the pipehazard analysis library.
 *
 * Handles are opaque; every function returns a phz_status. Output strings
 * are heap-allocated, NUL-terminated, and owned by the caller: release them
 * with phz_string_free. On failure, output parameters are left null unless
 * stated otherwise.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PHZ_API __declspec(dllexport)
#elif defined(__GNUC__)
#define PHZ_API __attribute__((visibility("default")))
#else
#define PHZ_API
#endif

typedef struct phz_isa phz_isa;
typedef struct phz_records phz_records;

/* Values line up with the CLI exit codes. */
typedef enum phz_status {
  PHZ_OK = 0,
  PHZ_ERROR = 1,        /* invalid input data (parse/validation errors) */
  PHZ_BAD_ARGUMENT = 2, /* null pointers, unknown names, bad enum strings */
  PHZ_MISMATCH = 3      /* verification found rule-engine/oracle differences */
} phz_status;

/* Hazard type selectors, combinable. */
#define PHZ_TYPE_RAW 1u
#define PHZ_TYPE_WAR 2u
#define PHZ_TYPE_WAW 4u
#define PHZ_TYPE_ALL 7u

PHZ_API const char* phz_version(void);
PHZ_API void phz_string_free(char* text);

/* Parses an instruction-set description. *out_diagnostics (optional) always
 * receives the diagnostic listing, one "severity:line:message" per line,
 * empty string when clean. Returns PHZ_ERROR and leaves *out_isa null when
 * the text has errors; warnings alone still succeed. */
PHZ_API phz_status phz_isa_parse(const char* text, phz_isa** out_isa,
                                 char** out_diagnostics);
PHZ_API void phz_isa_free(phz_isa* isa);
PHZ_API int phz_isa_instruction_count(const phz_isa* isa);

/* Normalized round-trip form of the set. */
PHZ_API phz_status phz_isa_render(const phz_isa* isa, char** out_text);

/* Equivalence-class listing; level is "full", "raw", or "write". */
PHZ_API phz_status phz_reduce_listing(const phz_isa* isa, const char* level,
                                      char** out_text);

/* Hazard enumeration over PHZ_TYPE_* mask. use_reduction toggles the
 * equivalence-class fast path; the records are identical either way. */
PHZ_API phz_status phz_enumerate(const phz_isa* isa, unsigned types,
                                 int use_reduction, phz_records** out_records);
PHZ_API void phz_records_free(phz_records* records);
PHZ_API int phz_records_count(const phz_records* records);
PHZ_API phz_status phz_records_csv(const phz_records* records, char** out_text);

/* Full report: format "table" renders per-type hazard/forward tables over
 * the complete case matrix; "csv" renders the record rows. older/newer
 * (optional) restrict to one ordered opcode pair. */
PHZ_API phz_status phz_hazards_report(const phz_isa* isa, unsigned types,
                                      const char* older, const char* newer,
                                      int no_reduce, const char* format,
                                      char** out_text);

/* Stage-grid diagram for one binding. type is "raw", "war", or "waw";
 * newer_operands_csv is a comma-separated operand list sharing the grid.
 * Unknown opcodes or operands yield PHZ_BAD_ARGUMENT. */
PHZ_API phz_status phz_diagram(const phz_isa* isa, const char* type,
                               const char* older, const char* newer,
                               const char* older_operand,
                               const char* newer_operands_csv, char** out_text);

/* Rule engine vs cycle-accurate oracle. Returns PHZ_MISMATCH when any
 * difference is found; *out_report always receives the report. */
PHZ_API phz_status phz_verify_isa(const phz_isa* isa, unsigned types,
                                  char** out_report);
PHZ_API phz_status phz_verify_fuzz(int samples, unsigned long long seed,
                                   int max_depth, int max_ops, unsigned types,
                                   char** out_report);

#ifdef __cplusplus
}
#endif

#endif
