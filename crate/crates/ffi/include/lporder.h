#ifndef LPORDER_H
#define LPORDER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum lpo_mode {
  LPO_RATIONAL = 0,
  LPO_FLOAT = 1,
} lpo_mode;

typedef enum lpo_status {
  LPO_OK = 0,
  // The call succeeded and found a violation (failed report, order
  // that does not hold, chain that does not verify).
  LPO_VIOLATION = 1,
  LPO_NULL_ARGUMENT = 2,
  LPO_INVALID_UTF8 = 3,
  LPO_PARSE_ERROR = 4,
  LPO_CONFIG_ERROR = 5,
  // A mathematical precondition failed (not real-rooted, wrong mode, ...).
  LPO_DOMAIN_ERROR = 6,
  LPO_PANIC = 7,
} lpo_status;

// Opaque run configuration.
typedef struct lpo_config lpo_config;

// Opaque suite or hunt report.
typedef struct lpo_report lpo_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *lpo_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
void lpo_string_free(char *s);

// Library version as a static string.
const char *lpo_version(void);

// New configuration for `suite` (a suite name, or `pb1`/`pb2`/`pb3`)
// with default trials, seed 0 and rational mode. Null on bad input.
struct lpo_config *lpo_config_new(const char *suite);

// Configuration parsed from the JSON config-file schema.
enum lpo_status lpo_config_from_json(const char *config, struct lpo_config **out);

void lpo_config_free(struct lpo_config *config);

enum lpo_status lpo_config_set_trials(struct lpo_config *config, size_t trials);

enum lpo_status lpo_config_set_seed(struct lpo_config *config, uint64_t seed);

enum lpo_status lpo_config_set_mode(struct lpo_config *config, enum lpo_mode mode);

// Relative tolerance; zero, negative or non-finite restores the default.
enum lpo_status lpo_config_set_tol(struct lpo_config *config, double tol);

enum lpo_status lpo_config_set_degrees(struct lpo_config *config, size_t min, size_t max);

// Hunt family; null clears it.
enum lpo_status lpo_config_set_family(struct lpo_config *config, const char *family);

// Runs the configured verification suite. `LPO_VIOLATION` means the report
// was produced and records failures.
enum lpo_status lpo_run_suite(const struct lpo_config *config, struct lpo_report **out);

// Runs the counterexample hunt named by the configuration's suite field.
enum lpo_status lpo_hunt(const struct lpo_config *config, struct lpo_report **out);

void lpo_report_free(struct lpo_report *report);

// 1 when the report has no failures, 0 otherwise or for null.
int32_t lpo_report_passed(const struct lpo_report *report);

size_t lpo_report_failure_count(const struct lpo_report *report);

size_t lpo_report_trials(const struct lpo_report *report);

// The report as JSON lines, the same text the CLI prints.
enum lpo_status lpo_report_json_lines(const struct lpo_report *report, char **out);

// Majorization certificate for `Z(q) ≺ Z(p)`. A non-positive `tol` uses the
// default. Returns `LPO_VIOLATION` with the certificate when it fails.
enum lpo_status lpo_majorize_check(const char *q, const char *p, double tol, char **out);

// Doubly stochastic witness (rational inputs only).
enum lpo_status lpo_majorize_witness(const char *q, const char *p, char **out);

// Simple nondegenerate contraction chain from `p` to `q`. `eps` may be
// null; otherwise both are perturbed to strict polynomials first.
enum lpo_status lpo_chain_decompose(const char *p, const char *q, const char *eps, char **out);

// Replays a chain; `LPO_VIOLATION` when any step check fails.
enum lpo_status lpo_chain_verify(const char *chain, char **out);

// `φ(D)[P]`, optionally normalized to a monic image.
enum lpo_status lpo_op_apply(const char *phi, const char *poly, bool normalized, char **out);

// `φ(D)[xⁿ]`.
enum lpo_status lpo_op_appell(const char *phi,
                              size_t n,
                              bool normalized,
                              enum lpo_mode mode,
                              char **out);

// `(1 - λD) e^{λD} P`; `lambda` is a number string such as `"-3/2"`.
enum lpo_status lpo_op_shift_pencil(const char *poly, const char *lambda, char **out);

// CSV of pencil roots and partial sums on `points` values of λ in
// `[-half_width, half_width]`.
enum lpo_status lpo_pencil_scan_csv(const char *poly, double half_width, size_t points, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LPORDER_H */
