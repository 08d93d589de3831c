#ifndef MICZ_H
#define MICZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum MiczStatus {
  MICZ_STATUS_OK = 0,
  /**
   * An argument is unusable before any physics is attempted (e.g. a zero denominator).
   */
  MICZ_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Invalid quantum numbers or parameters.
   */
  MICZ_STATUS_VALIDATION = 2,
  /**
   * A numerical procedure failed.
   */
  MICZ_STATUS_NUMERICAL = 3,
  /**
   * An identity that holds by construction was violated, or a panic was caught.
   */
  MICZ_STATUS_INTERNAL = 4,
  /**
   * The output buffer is shorter than required.
   */
  MICZ_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * A required pointer was null.
   */
  MICZ_STATUS_NULL_POINTER = 6,
} MiczStatus;

/**
 * A validated sector `(n, Q, L, J, Z)`.
 */
typedef struct MiczSector MiczSector;

/**
 * Eigenvalues and eigenvectors of the spheroidal matrix at one focal distance.
 */
typedef struct MiczSpectrum MiczSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a sector with charge `z_num / z_den`.
 *
 * # Safety
 *
 * `out` must be null or valid for writing a pointer. On success `*out`
 * owns a handle that must be released with [`micz_sector_free`].
 */
enum MiczStatus micz_sector_new(int64_t n,
                                int64_t q,
                                int64_t l,
                                int64_t j,
                                int64_t z_num,
                                int64_t z_den,
                                struct MiczSector **out);

/**
 * Releases a sector. Null is ignored.
 *
 * # Safety
 *
 * `sector` must be null or a handle from [`micz_sector_new`] not yet freed.
 */
void micz_sector_free(struct MiczSector *sector);

/**
 * Writes `N`, the number of states in the sector.
 *
 * # Safety
 *
 * `sector` must be a live handle or null; `out` must be null or writable.
 */
enum MiczStatus micz_sector_dim(const struct MiczSector *sector, size_t *out);

/**
 * Writes the energy `E = −Z²/(2(n + 4 + Q/2)²)`.
 *
 * # Safety
 *
 * `sector` must be a live handle or null; `out` must be null or writable.
 */
enum MiczStatus micz_sector_energy(const struct MiczSector *sector, double *out);

/**
 * Writes W (rows λ, columns `n_p`, row-major) into `out[0 .. dim*dim]`.
 * Entries are the correctly rounded values of the exact coefficients.
 *
 * # Safety
 *
 * `sector` must be a live handle or null; `out` must be null or valid for
 * writing `len` doubles.
 */
enum MiczStatus micz_w_matrix(const struct MiczSector *sector, double *out, size_t len);

/**
 * Writes the ninth integral of motion in the spherical basis, row-major.
 *
 * # Safety
 *
 * As for [`micz_w_matrix`].
 */
enum MiczStatus micz_m9_matrix(const struct MiczSector *sector, double *out, size_t len);

/**
 * Solves the spheroidal eigenproblem at focal distance `a ≥ 0`.
 *
 * # Safety
 *
 * `sector` must be a live handle or null; `out` must be null or valid for
 * writing a pointer. Release the result with [`micz_spectrum_free`].
 */
enum MiczStatus micz_spectrum_new(const struct MiczSector *sector,
                                  double a,
                                  struct MiczSpectrum **out);

/**
 * Releases a spectrum. Null is ignored.
 *
 * # Safety
 *
 * `spectrum` must be null or a handle from [`micz_spectrum_new`] not yet freed.
 */
void micz_spectrum_free(struct MiczSpectrum *spectrum);

/**
 * # Safety
 *
 * `spectrum` must be a live handle or null; `out` must be null or writable.
 */
enum MiczStatus micz_spectrum_dim(const struct MiczSpectrum *spectrum, size_t *out);

/**
 * Writes the separation constants `K_{n_k}`, ascending.
 *
 * # Safety
 *
 * `spectrum` must be a live handle or null; `out` must be null or valid for
 * writing `len` doubles.
 */
enum MiczStatus micz_spectrum_eigenvalues(const struct MiczSpectrum *spectrum,
                                          double *out,
                                          size_t len);

/**
 * Writes T row-major: `out[i*dim + k]` is the coefficient of spherical state
 * `i` (λ ascending) in spheroidal state `k`.
 *
 * # Safety
 *
 * As for [`micz_spectrum_eigenvalues`].
 */
enum MiczStatus micz_spectrum_vectors(const struct MiczSpectrum *spectrum, double *out, size_t len);

/**
 * Copies the calling thread's last error message, NUL-terminated, into
 * `buf`. An empty string means no error has been recorded. Returns
 * `BUFFER_TOO_SMALL` (writing nothing) when `len` cannot hold the message.
 *
 * # Safety
 *
 * `buf` must be null or valid for writing `len` bytes.
 */
enum MiczStatus micz_last_error_message(char *buf, size_t len);

/**
 * A static, NUL-terminated name for a status code.
 */
const char *micz_status_name(enum MiczStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MICZ_H */
