#ifndef DISK_HARMONICS_H
#define DISK_HARMONICS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum DhStatus {
  DH_STATUS_OK = 0,
  /**
   * Bad argument, shape or configuration.
   */
  DH_STATUS_INVALID = 1,
  /**
   * A numerical guard tripped (near-singular weight, failed root scan,
   * consistency check).
   */
  DH_STATUS_NUMERICAL = 2,
  /**
   * File or parse failure.
   */
  DH_STATUS_IO = 3,
  /**
   * A required pointer was null.
   */
  DH_STATUS_NULL_POINTER = 4,
  /**
   * The caller's buffer is shorter than required.
   */
  DH_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * The library panicked; treat as a bug.
   */
  DH_STATUS_PANIC = 6,
} DhStatus;

/**
 * Opaque basis handle.
 */
typedef struct DhBasis DhBasis;

/**
 * Opaque coefficient matrix handle.
 */
typedef struct DhCoefficients DhCoefficients;

/**
 * Opaque sampled function handle.
 */
typedef struct DhDiskFunction DhDiskFunction;

/**
 * Boundary condition selector: 0 for zero value, 1 for zero derivative.
 */
typedef uint32_t DhBoundary;

#define DH_BC_ZERO 0

#define DH_BC_DERIVATIVE 1

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `dh_*` call on this thread.
 */
const char *dh_last_error(void);

/**
 * `J_m(x)`.
 *
 * # Safety
 * `out` must be valid for one `double` write.
 */
enum DhStatus dh_bessel_j(int32_t m, double x, double *out);

/**
 * First `count` zeros of `J_m` or `J_m'` into `out[0..count]`.
 *
 * # Safety
 * `out` must be valid for `count` `double` writes.
 */
enum DhStatus dh_find_zeros(int32_t m, size_t count, DhBoundary bc, double *out);

/**
 * Builds the basis for radius `a`, `|m| <= max_angular`,
 * `n <= max_radial` and lattice cutoff `cutoff`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum DhStatus dh_basis_new(double radius,
                           DhBoundary bc,
                           uint32_t max_angular,
                           uint32_t max_radial,
                           uint32_t cutoff,
                           struct DhBasis **out);

/**
 * # Safety
 * `basis` must be null or a handle from [`dh_basis_new`] not yet freed.
 */
void dh_basis_free(struct DhBasis *basis);

/**
 * Wraps `grid * grid` cell-centred samples over `[-radius, radius]^2`,
 * zeroing them outside `support`. `imag` may be null for real data.
 *
 * # Safety
 * `real` (and `imag` when non-null) must be valid for `grid * grid` reads.
 */
enum DhStatus dh_disk_function_new(double radius,
                                   double support,
                                   size_t grid,
                                   const double *real,
                                   const double *imag,
                                   struct DhDiskFunction **out);

/**
 * # Safety
 * `f` must be null or a handle from this library not yet freed.
 */
void dh_disk_function_free(struct DhDiskFunction *f);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void dh_coefficients_free(struct DhCoefficients *c);

/**
 * Coefficients by direct quadrature on the disk.
 *
 * # Safety
 * Handles must be live; `out` must be valid for one pointer write.
 */
enum DhStatus dh_analyze_direct(const struct DhBasis *basis,
                                const struct DhDiskFunction *f,
                                struct DhCoefficients **out);

/**
 * Coefficients from the square-window Fourier table at the basis cutoff.
 *
 * # Safety
 * Handles must be live; `out` must be valid for one pointer write.
 */
enum DhStatus dh_analyze_spectral(const struct DhBasis *basis,
                                  const struct DhDiskFunction *f,
                                  struct DhCoefficients **out);

/**
 * Number of stored coefficients, `N * (2M + 1)`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for one write.
 */
enum DhStatus dh_coefficients_len(const struct DhCoefficients *c, size_t *out);

/**
 * `C_{n,m}` split into real and imaginary parts.
 *
 * # Safety
 * `c` must be a live handle; `re` and `im` must be valid for one write.
 */
enum DhStatus dh_coefficients_get(const struct DhCoefficients *c,
                                  uint32_t n,
                                  int32_t m,
                                  double *re,
                                  double *im);

/**
 * Coefficients of the function rotated by `alpha` radians.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for one pointer write.
 */
enum DhStatus dh_rotate(const struct DhCoefficients *c, double alpha, struct DhCoefficients **out);

/**
 * Evaluates the expansion at polar point `(r, theta)`.
 *
 * # Safety
 * Handles must be live; `re` and `im` must be valid for one write.
 */
enum DhStatus dh_synthesize(const struct DhBasis *basis,
                            const struct DhCoefficients *c,
                            double r,
                            double theta,
                            double *re,
                            double *im);

/**
 * Writes `|C_{n,m}|` in storage order (`n` outer, `m` ascending).
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for `len` writes.
 */
enum DhStatus dh_descriptors(const struct DhCoefficients *c, double *out, size_t len);

/**
 * Coefficients of `f1 * f2` through the spectral convolution path. Both
 * inputs must be supported in half the basis radius.
 *
 * # Safety
 * Handles must be live; `out` must be valid for one pointer write.
 */
enum DhStatus dh_convolve_spectral(const struct DhBasis *basis,
                                   const struct DhDiskFunction *f1,
                                   const struct DhDiskFunction *f2,
                                   struct DhCoefficients **out);

/**
 * Squared L2 norm of `f` through the Plancherel identity.
 *
 * # Safety
 * Handles must be live; `out` must be valid for one write.
 */
enum DhStatus dh_plancherel(const struct DhBasis *basis,
                            const struct DhDiskFunction *f,
                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISK_HARMONICS_H */
