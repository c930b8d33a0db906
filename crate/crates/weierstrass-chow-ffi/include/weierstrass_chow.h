#ifndef WEIERSTRASS_CHOW_H
#define WEIERSTRASS_CHOW_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirrored by the CLI exit statuses: 0 success, 1 failed
 * mathematical check, 2 invalid input.
 */
typedef enum {
  WCHOW_OK = 0,
  WCHOW_CHECK_FAILED = 1,
  WCHOW_INVALID_INPUT = 2,
  WCHOW_NULL_POINTER = 3,
  WCHOW_INTERNAL_ERROR = 4,
} WchowStatus;

/**
 * Opaque verification-suite report.
 */
typedef struct WchowReport WchowReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Computes the presentation of one catalog instance and returns it as a
 * JSON string through `out`.
 *
 * # Safety
 * `family` must be a valid NUL-terminated string and `out` a valid
 * pointer; the result must be released with `wchow_string_free`.
 */
WchowStatus wchow_present_json(const char *family, int64_t g, uint32_t n, char **out);

/**
 * Computes the Picard group of one catalog instance and returns it as a
 * JSON string through `out`.
 *
 * # Safety
 * As for `wchow_present_json`.
 */
WchowStatus wchow_picard_json(const char *family, int64_t g, uint32_t n, char **out);

/**
 * Runs the verification suite over `[g_min, g_max]` and hands back an
 * opaque report. Returns `WchowCheckFailed` (with a valid report, so the
 * failures can be inspected) when any check fails.
 *
 * # Safety
 * `out` must be a valid pointer; the report must be released with
 * `wchow_report_free`.
 */
WchowStatus wchow_verify_new(int64_t g_min, int64_t g_max, WchowReport **out);

/**
 * Number of check entries in the report; 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from `wchow_verify_new`.
 */
uintptr_t wchow_report_len(const WchowReport *report);

/**
 * Whether every check in the report passed; false for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from `wchow_verify_new`.
 */
bool wchow_report_all_pass(const WchowReport *report);

/**
 * Serializes the report as JSON lines, one check per line.
 *
 * # Safety
 * `report` must be a handle from `wchow_verify_new` and `out` a valid
 * pointer; the result must be released with `wchow_string_free`.
 */
WchowStatus wchow_report_json_lines(const WchowReport *report, char **out);

/**
 * Releases a report handle. Null is a no-op.
 *
 * # Safety
 * `report` must be null or a handle from `wchow_verify_new`, released at
 * most once.
 */
void wchow_report_free(WchowReport *report);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, released at most
 * once.
 */
void wchow_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIERSTRASS_CHOW_H */
