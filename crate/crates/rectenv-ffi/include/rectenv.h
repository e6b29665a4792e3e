/* C ABI for the rectenv envelope engine.
 *
 * Maintained by hand; must stay in sync with crates/rectenv-ffi/src/lib.rs.
 *
 * Memory: every char* written through an out parameter is allocated by the
 * library and must be released with rectenv_string_free(). Handles from
 * rectenv_build() must be released with rectenv_envelope_free().
 *
 * Errors: fallible calls return a RECTENV_* status; on failure,
 * rectenv_last_error() returns a thread-local message valid until the next
 * failing call on the same thread.
 */

#ifndef RECTENV_H
#define RECTENV_H

#include <stdbool.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RECTENV_OK 0
/* A suite ran to completion but at least one certificate failed. */
#define RECTENV_CERT_FAILED 1
#define RECTENV_ERR_NULL_ARGUMENT 2
#define RECTENV_ERR_INVALID_ARGUMENT 3
#define RECTENV_ERR_BUILD 4
#define RECTENV_ERR_PARSE 5
#define RECTENV_ERR_PANIC 6

/* Opaque envelope handle. */
typedef struct RectenvEnvelope RectenvEnvelope;

/* Message for the most recent failure on this thread, or NULL. */
const char *rectenv_last_error(void);

/* Builds the envelope of the p x q triple system (pass max_degree = 8 for
 * the default completion bound). allow_unproven admits p == q or
 * one-row/one-column shapes without the certified-theorem guarantees. */
int32_t rectenv_build(uint32_t p, uint32_t q, uint32_t max_degree,
                      bool allow_unproven, RectenvEnvelope **out);

void rectenv_envelope_free(RectenvEnvelope *env);

/* Certified linear dimension ((p+q)^2 for theorem shapes); -1 on NULL. */
int64_t rectenv_dimension(const RectenvEnvelope *env);

/* Number of rules in the completed rewriting system; -1 on NULL. */
int64_t rectenv_rule_count(const RectenvEnvelope *env);

/* Normal form of a polynomial in the canonical text format, for example
 * "1 * G[1,1] G[1,1] G[1,1]". */
int32_t rectenv_normal_form(const RectenvEnvelope *env, const char *poly,
                            char **out);

/* Normal-word basis, one word per line. */
int32_t rectenv_basis(const RectenvEnvelope *env, char **out);

/* Runs a certificate suite ("all", "lemma", "corollary", "units", "center",
 * "iso", "props"); writes one JSON object per line, summary last. Returns
 * RECTENV_OK when everything passed, RECTENV_CERT_FAILED when the report
 * contains failures. */
int32_t rectenv_verify_json(const RectenvEnvelope *env, const char *suite,
                            uint64_t seed, char **out_json);

void rectenv_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* RECTENV_H */
