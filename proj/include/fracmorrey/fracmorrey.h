#ifndef FRACMORREY_H
#define FRACMORREY_H

/* C interface to the fracmorrey library.
 *
 * Every computation takes a command name and a JSON request and produces an
 * opaque result handle holding the JSON report. Failures return a nonzero
 * status and leave a message in fm_last_error() (per thread).
 *
 * Commands and their request keys:
 *   maximal, riesz   function, alpha, dimension, half_width, cells, [x], [method]
 *   norm             kind (lp | weak_lorentz | morrey | central_morrey | classical_morrey),
 *                    function, [weight], p, [q], [lambda], [omega], [region], grid keys
 *   weight-class     class (ap | a1 | ainf | doubling | rd), weight, [p], [beta],
 *                    [dimension], [levels], [seed], grid keys for a1
 *   condition        id (gm | cor52 | thm61 | thm64 | thm51), omega, weight, p, alpha,
 *                    dimension, u, beta, u0, u1, u2, v1, v2, centers, grid
 *   oracle           u0, u1, u2, v1, v2, shells, mesh, max_shells, first_shell, shell_ratio
 *   verify           experiment and/or config (config file text)
 */

#if defined(FM_BUILDING) && defined(__GNUC__)
#define FM_API __attribute__((visibility("default")))
#else
#define FM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fm_status {
  FM_OK = 0,
  FM_ERR_VALIDATION = 1,
  FM_ERR_COMPUTATION = 2,
  FM_ERR_INTERNAL = 3,
  FM_ERR_ARGUMENT = 4
} fm_status;

typedef struct fm_result fm_result;

FM_API const char* fm_version(void);
/* Message of the last failure on this thread ("" when none). */
FM_API const char* fm_last_error(void);

FM_API fm_status fm_run(const char* command, const char* request_json, fm_result** out);

/* Report text; the pointer stays valid until fm_result_free. */
FM_API const char* fm_result_json(const fm_result* r);
FM_API const char* fm_result_csv(const fm_result* r);
/* 1 when the report's headline value is finite (or every experiment passed). */
FM_API int fm_result_finite(const fm_result* r);
/* Headline value; +inf when flagged infinite, NaN when there is none. */
FM_API double fm_result_value(const fm_result* r);
FM_API fm_status fm_result_write(const fm_result* r, const char* format, const char* path);
FM_API void fm_result_free(fm_result* r);

/* Canonical text of a function or weight descriptor; free with fm_string_free. */
FM_API fm_status fm_canonical_function(const char* text, char** out);
FM_API fm_status fm_canonical_weight(const char* text, char** out);
/* Re-render a JSON report as json or csv. */
FM_API fm_status fm_render(const char* report_json, const char* format, char** out);
FM_API void fm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
