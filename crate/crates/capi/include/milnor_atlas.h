/* C interface of the milnor-atlas singularity analysis library. */

#ifndef MILNOR_ATLAS_H
#define MILNOR_ATLAS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * ABI result code. Mirrors the CLI exit codes: 1 is a negative analysis
 * verdict on well-formed input, 2 unusable input, 3 a numerical failure.
 */
typedef enum MilnorStatus {
  MilnorStatus_Ok = 0,
  MilnorStatus_VerdictFail = 1,
  MilnorStatus_InvalidInput = 2,
  MilnorStatus_NumericalError = 3,
  MilnorStatus_NullPointer = 4,
  MilnorStatus_Panic = 5,
} MilnorStatus;

/**
 * Opaque handle over a validated, parsed map, for repeated point queries
 * without re-parsing.
 */
typedef struct MilnorMap MilnorMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * ABI revision of this header; bumped on any breaking change.
 */
uint32_t milnor_abi_version(void);

/**
 * Message describing the most recent failure on the calling thread. The
 * pointer stays valid until the next library call from the same thread; do
 * not free it.
 */
const char *milnor_last_error(void);

/**
 * Release a string returned through an `out_json` parameter.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library (or null).
 */
void milnor_string_free(char *s);

/**
 * Weight systems for `n_polys` polynomial expressions plus, for two or
 * more, the common-weight certificate. Writes a JSON document to
 * `*out_json`; returns `VerdictFail` when some polynomial has no weight
 * system or the tuple has no common certificate (the document still
 * explains why).
 *
 * # Safety
 * `polys` must point to `n_polys` valid NUL-terminated strings and
 * `out_json` must be a valid destination pointer.
 */
enum MilnorStatus milnor_weights_json(const char *const *polys, uintptr_t n_polys, char **out_json);

/**
 * Singularity test at one sphere point, given as comma-separated complex
 * literals ("0.7071+0i,0.7071+0i"). Returns `VerdictFail` when the point is
 * regular; the JSON report is written either way.
 *
 * # Safety
 * `polys` must point to `n_polys` valid NUL-terminated strings; `point`
 * must be a valid NUL-terminated string; `out_json` must be valid.
 */
enum MilnorStatus milnor_singular_point_json(const char *const *polys,
                                             uintptr_t n_polys,
                                             const char *point,
                                             double epsilon,
                                             char **out_json);

/**
 * Enumerate the singular circles of a two-variable homogeneous pair.
 *
 * # Safety
 * `f`, `g` and `out_json` must be valid pointers.
 */
enum MilnorStatus milnor_circles_json(const char *f,
                                      const char *g,
                                      double epsilon,
                                      char **out_json);

/**
 * Multistart search for singular points on the sphere of radius `epsilon`.
 *
 * # Safety
 * `polys` must point to `n_polys` valid NUL-terminated strings and
 * `out_json` must be valid.
 */
enum MilnorStatus milnor_scan_json(const char *const *polys,
                                   uintptr_t n_polys,
                                   double epsilon,
                                   uint64_t seed,
                                   uintptr_t restarts,
                                   uintptr_t iterations,
                                   char **out_json);

/**
 * Fold classification of the pair (f, g) at a singular sphere point.
 * Returns `VerdictFail` when the point is singular but not a fold.
 *
 * # Safety
 * `f`, `g`, `point` and `out_json` must be valid pointers.
 */
enum MilnorStatus milnor_fold_json(const char *f,
                                   const char *g,
                                   const char *point,
                                   double epsilon,
                                   char **out_json);

/**
 * Run a named verification suite ("prop33" … "prop53") with default
 * parameters and the given seed. Returns `VerdictFail` when any assertion
 * fails; the JSON report lists each assertion either way.
 *
 * # Safety
 * `suite` and `out_json` must be valid pointers.
 */
enum MilnorStatus milnor_verify_json(const char *suite, uint64_t seed, char **out_json);

/**
 * Build a map handle from polynomial expressions and a sphere radius.
 * On success `*out` owns the handle; release it with [`milnor_map_free`].
 *
 * # Safety
 * `polys` must point to `n_polys` valid NUL-terminated strings and `out`
 * must be a valid destination pointer.
 */
enum MilnorStatus milnor_map_new(const char *const *polys,
                                 uintptr_t n_polys,
                                 double epsilon,
                                 struct MilnorMap **out);

/**
 * Release a map handle. Null is ignored.
 *
 * # Safety
 * `map` must be a handle from [`milnor_map_new`] not yet freed (or null).
 */
void milnor_map_free(struct MilnorMap *map);

/**
 * Number of complex variables of the map behind the handle.
 *
 * # Safety
 * `map` must be a live handle from [`milnor_map_new`].
 */
uintptr_t milnor_map_n_vars(const struct MilnorMap *map);

/**
 * Dependence margin at a sphere point given as `n_complex` interleaved
 * (re, im) coordinate pairs; the point is re-projected onto the sphere
 * when its norm deviates by less than a relative 1e-6.
 *
 * # Safety
 * `map` must be a live handle; `coords` must point to `2 * n_complex`
 * doubles; `out_margin` must be valid.
 */
enum MilnorStatus milnor_map_dependence_margin(const struct MilnorMap *map,
                                               const double *coords,
                                               uintptr_t n_complex,
                                               double *out_margin);

/**
 * Singularity verdict at a sphere point given as interleaved (re, im)
 * pairs. `*out_singular` is 1 when the point is singular, else 0; the
 * margin is always written. The status is `Ok` for both verdicts.
 *
 * # Safety
 * `map` must be a live handle; `coords` must point to `2 * n_complex`
 * doubles; `out_singular` and `out_margin` must be valid.
 */
enum MilnorStatus milnor_map_is_singular(const struct MilnorMap *map,
                                         const double *coords,
                                         uintptr_t n_complex,
                                         int32_t *out_singular,
                                         double *out_margin);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MILNOR_ATLAS_H */
