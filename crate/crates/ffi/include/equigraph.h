#ifndef EQUIGRAPH_H
#define EQUIGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EgStatus {
  EG_STATUS_OK = 0,
  EG_STATUS_NULL_POINTER = 1,
  EG_STATUS_INVALID_UTF8 = 2,
  EG_STATUS_INVALID_PARAMETER = 3,
  EG_STATUS_INFEASIBLE = 4,
  EG_STATUS_UNCERTIFIABLE_BRANCH = 5,
  EG_STATUS_CONVERGENCE_FAILURE = 6,
  EG_STATUS_PARSE = 7,
  EG_STATUS_ROUTE_DISAGREEMENT = 8,
  EG_STATUS_INVALID_PROFILE = 9,
  EG_STATUS_NON_SYMMETRIC_CONNECTION = 10,
  EG_STATUS_NOT_SEMIPRIMITIVE = 11,
  EG_STATUS_UNSUPPORTED_FACTOR = 12,
  EG_STATUS_OUTPUT = 13,
  EG_STATUS_OUT_OF_RANGE = 14,
  EG_STATUS_PANIC = 15,
} EgStatus;

/**
 * A simple undirected graph.
 */
typedef struct EgGraph EgGraph;

/**
 * A spectrum: eigenvalues with multiplicities, exact or with a radius.
 */
typedef struct EgSpectrum EgSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *eg_last_error(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void eg_string_free(char *s);

/**
 * Parses the text format: `n loops` header, then one `u v` edge per line.
 *
 * # Safety
 * `text` is a NUL-terminated string; `graph` is writable.
 */
enum EgStatus eg_graph_parse(const char *text, struct EgGraph **graph);

/**
 * Builds a named family; `args_json` holds its parameters, for example
 * `{"t": 5}` for `crown` or `{"shifts": [5, -5], "repeats": 7}` for `lcf`.
 * A null `args_json` means no parameters.
 *
 * # Safety
 * `name` is a NUL-terminated string, `args_json` is null or one; `graph`
 * is writable.
 */
enum EgStatus eg_graph_family(const char *name, const char *args_json, struct EgGraph **graph);

/**
 * # Safety
 * `graph` is null or a live handle from this library.
 */
void eg_graph_free(struct EgGraph *graph);

/**
 * Vertex count, 0 for a null handle.
 *
 * # Safety
 * `graph` is null or a live handle.
 */
size_t eg_graph_order(const struct EgGraph *graph);

/**
 * Numeric spectrum; integer eigenvalues are certified exact.
 *
 * # Safety
 * `graph` is a live handle; `spectrum` is writable.
 */
enum EgStatus eg_graph_spectrum(const struct EgGraph *graph, struct EgSpectrum **spectrum);

/**
 * Exact spectrum of a strongly regular parameter tuple.
 *
 * # Safety
 * `spectrum` is writable.
 */
enum EgStatus eg_srg_spectrum(uint64_t n,
                              uint64_t k,
                              uint64_t e,
                              uint64_t d,
                              struct EgSpectrum **spectrum);

/**
 * Exact spectrum of the unitary Cayley graph of a ring given by its
 * profile `q1:m1,q2:m2,...`.
 *
 * # Safety
 * `profile` is a NUL-terminated string; `spectrum` is writable.
 */
enum EgStatus eg_ring_spectrum(const char *profile, struct EgSpectrum **spectrum);

/**
 * Parses the text form `{[3], [1]^5, [-2]^4}` (braces and brackets
 * optional); values may be surds such as `-1/2 + 1/2*sqrt(5)`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `spectrum` is writable.
 */
enum EgStatus eg_spectrum_parse(const char *text, struct EgSpectrum **spectrum);

/**
 * # Safety
 * `spectrum` is null or a live handle.
 */
void eg_spectrum_free(struct EgSpectrum *spectrum);

/**
 * Number of distinct entries, 0 for a null handle.
 *
 * # Safety
 * `spectrum` is null or a live handle.
 */
size_t eg_spectrum_len(const struct EgSpectrum *spectrum);

/**
 * Entry `index` in descending order: its value (midpoint for approximate
 * entries), radius (0 when exact) and multiplicity.
 *
 * # Safety
 * `spectrum` is a live handle; the out-pointers are writable.
 */
enum EgStatus eg_spectrum_entry(const struct EgSpectrum *spectrum,
                                size_t index,
                                double *value,
                                double *radius,
                                uint64_t *multiplicity);

/**
 * Text form of the spectrum, freed with [`eg_string_free`].
 *
 * # Safety
 * `spectrum` is a live handle; `text` is writable.
 */
enum EgStatus eg_spectrum_to_string(const struct EgSpectrum *spectrum, char **text);

/**
 * Energy as a midpoint and radius, plus its exact form when available
 * (`exact` receives null otherwise; free it with [`eg_string_free`]).
 * `exact` may itself be null if the caller does not want the string.
 *
 * # Safety
 * `spectrum` is a live handle; `value` and `radius` are writable.
 */
enum EgStatus eg_spectrum_energy(const struct EgSpectrum *spectrum,
                                 double *value,
                                 double *radius,
                                 char **exact);

/**
 * Whether a `k`-regular graph with this spectrum has the energy of its
 * complement; `loops` selects complements taken with loops.
 *
 * # Safety
 * `spectrum` is a live handle; `equal` is writable.
 */
enum EgStatus eg_check_equienergetic(const struct EgSpectrum *spectrum,
                                     int64_t k,
                                     bool loops,
                                     bool *equal);

/**
 * Equienergy of an srg tuple and its complement tuple.
 *
 * # Safety
 * `equal` is writable.
 */
enum EgStatus eg_srg_check(uint64_t n, uint64_t k, uint64_t e, uint64_t d, bool *equal);

/**
 * Class of an srg tuple: `none`, `Conference(d)`, `CaseB(h=..,l=..)` or
 * `CaseC(h=..,l=..)`; freed with [`eg_string_free`].
 *
 * # Safety
 * `class` is writable.
 */
enum EgStatus eg_srg_classify(uint64_t n, uint64_t k, uint64_t e, uint64_t d, char **class_);

/**
 * Equienergy of a ring's unitary Cayley graph and its complement.
 *
 * # Safety
 * `profile` is a NUL-terminated string; `equal` is writable.
 */
enum EgStatus eg_ring_check(const char *profile, bool *equal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUIGRAPH_H */
