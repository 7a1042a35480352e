#ifndef KOSZULAB_H
#define KOSZULAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  KL_STATUS_OK = 0,
  KL_STATUS_NULL_POINTER = 1,
  KL_STATUS_INVALID_UTF8 = 2,
  KL_STATUS_PARSE = 3,
  KL_STATUS_INVALID_INPUT = 4,
  KL_STATUS_INTERNAL = 5,
  KL_STATUS_PANIC = 6,
} KlStatus;

/**
 * The outcome of a run.
 */
typedef struct KlReport KlReport;

/**
 * A scenario ready to run.
 */
typedef struct KlScenario KlScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread (empty if none). The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *kl_last_error(void);

/**
 * Library version as a static string.
 */
const char *kl_version(void);

/**
 * Parses scenario JSON into a new handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
KlStatus kl_scenario_from_json(const char *json, KlScenario **out);

/**
 * Creates a handle for a built-in scenario.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
KlStatus kl_scenario_builtin(const char *name, KlScenario **out);

/**
 * Overrides the degree bound.
 *
 * # Safety
 * `scenario` must be a live handle.
 */
KlStatus kl_scenario_set_degree_bound(KlScenario *scenario, int64_t degree_bound);

/**
 * Overrides the seed.
 *
 * # Safety
 * `scenario` must be a live handle.
 */
KlStatus kl_scenario_set_seed(KlScenario *scenario, uint64_t seed);

/**
 * Restricts the checks to a comma-separated list of names (empty for
 * none).
 *
 * # Safety
 * `scenario` must be a live handle and `checks` a valid NUL-terminated
 * string.
 */
KlStatus kl_scenario_set_checks(KlScenario *scenario, const char *checks);

/**
 * Releases a scenario handle. Null is ignored.
 *
 * # Safety
 * `scenario` must be null or a handle not yet freed.
 */
void kl_scenario_free(KlScenario *scenario);

/**
 * Runs the scenario. A refused scenario (grade hypothesis not met) still
 * yields a report, whose status is 2.
 *
 * # Safety
 * `scenario` must be a live handle and `out` a valid pointer.
 */
KlStatus kl_run(const KlScenario *scenario, KlReport **out);

/**
 * Run status: 0 all checks passed, 1 some check failed, 2 refused, -1 for
 * a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
int32_t kl_report_status(const KlReport *report);

/**
 * The report as canonical JSON; release with [`kl_string_free`]. Null for
 * a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *kl_report_json(const KlReport *report);

/**
 * The report as a text table; release with [`kl_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *kl_report_text(const KlReport *report);

/**
 * Releases a report handle. Null is ignored.
 *
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void kl_report_free(KlReport *report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void kl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOSZULAB_H */
