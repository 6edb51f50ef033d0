#ifndef KGROTH_H
#define KGROTH_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KgStatus {
  KG_STATUS_OK = 0,
  KG_STATUS_NULL_POINTER = 1,
  KG_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A series did not stabilize under truncation.
   */
  KG_STATUS_UNSTABLE = 3,
  /**
   * A verification suite found failing cases.
   */
  KG_STATUS_VERIFY_FAILED = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  KG_STATUS_INTERNAL = 5,
} KgStatus;

typedef enum KgVariant {
  /**
   * G_{λ/μ}
   */
  KG_VARIANT_G = 0,
  /**
   * G_{λ⫽μ}
   */
  KG_VARIANT_GDS = 1,
  /**
   * g_{λ/μ}
   */
  KG_VARIANT_DUAL = 2,
} KgVariant;

/**
 * An integer partition.
 */
typedef struct KgPartition KgPartition;

/**
 * An exact polynomial, or a series truncated in (α,β)-degree.
 */
typedef struct KgPoly KgPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread (empty after success).
 * The pointer stays valid until the next call on this thread.
 */
const char *kg_last_error(void);

/**
 * Parses `"3,1"` (empty string for the empty partition).
 *
 * # Safety
 * `s` must be a nul-terminated string and `out` a valid pointer.
 */
enum KgStatus kg_partition_parse(const char *s, struct KgPartition **out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void kg_partition_free(struct KgPartition *p);

/**
 * Number of cells; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uintptr_t kg_partition_size(const struct KgPartition *p);

/**
 * Evaluates the Jacobi-Trudi determinant of `variant` for `outer/inner` in
 * `nvars` variables. `cutoff` is the starting (α,β)-degree cutoff for the
 * G variants and is raised until the result is stable.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum KgStatus kg_grothendieck(enum KgVariant variant,
                              const struct KgPartition *outer,
                              const struct KgPartition *inner,
                              uintptr_t nvars,
                              uint32_t cutoff,
                              struct KgPoly **out);

/**
 * Expansion coefficient `kind` ("I", "Itilde", "E", "Etilde", "D",
 * "Dtilde", "b", "B") with subscript `lower` and superscript `upper`.
 *
 * # Safety
 * Handles and strings must be valid and `out` non-null.
 */
enum KgStatus kg_coefficient(const char *kind,
                             const struct KgPartition *lower,
                             const struct KgPartition *upper,
                             struct KgPoly **out);

/**
 * Canonical text form, e.g. `"a2 + b1"`; null for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *kg_poly_render(const struct KgPoly *p, bool unicode);

/**
 * JSON term list; null for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
char *kg_poly_to_json(const struct KgPoly *p);

/**
 * Whether the value is exact rather than a truncated series.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
bool kg_poly_is_exact(const struct KgPoly *p);

/**
 * The (α,β)-degree through which a series is known; 0 when exact.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uint32_t kg_poly_cutoff(const struct KgPoly *p);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void kg_poly_free(struct KgPoly *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void kg_string_free(char *s);

/**
 * Runs a verification suite ("duality", "forms", "branching", "cauchy",
 * "pieri", "fock-oracle", "omega", "corners", "integral", "flagged") over
 * the `rows x cols` box. Writes the case and failure counts and returns
 * `VerifyFailed` when any case fails.
 *
 * # Safety
 * `suite` must be a nul-terminated string; `cases` and `failures` valid.
 */
enum KgStatus kg_verify(const char *suite,
                        uintptr_t rows,
                        uintptr_t cols,
                        uintptr_t nvars,
                        uint32_t degree,
                        uint64_t seed,
                        uintptr_t *cases,
                        uintptr_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KGROTH_H */
