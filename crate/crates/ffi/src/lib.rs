//! C ABI over `disk_harmonics`.
//!
//! Objects cross the boundary as opaque handles created by `dh_*_new` or
//! returned through out-parameters, and released with the matching
//! `dh_*_free`. Every entry point returns a [`DhStatus`]; on failure the
//! message is available from [`dh_last_error`] on the same thread.
//!
//! Grids are row-major with the row index along `y`, `grid * grid` samples.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use disk_harmonics::convolution;
use disk_harmonics::sampling::{self, DiskFunction};
use disk_harmonics::spectra::{self, CoefficientMatrix};
use disk_harmonics::{bessel, Basis, BasisSpec, BoundaryCondition, Error};
use num_complex::Complex64;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    /// Bad argument, shape or configuration.
    Invalid = 1,
    /// A numerical guard tripped (near-singular weight, failed root scan,
    /// consistency check).
    Numerical = 2,
    /// File or parse failure.
    Io = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// The caller's buffer is shorter than required.
    BufferTooSmall = 5,
    /// The library panicked; treat as a bug.
    Panic = 6,
}

/// Boundary condition selector: 0 for zero value, 1 for zero derivative.
pub type DhBoundary = u32;

pub const DH_BC_ZERO: DhBoundary = 0;
pub const DH_BC_DERIVATIVE: DhBoundary = 1;

/// Opaque basis handle.
pub struct DhBasis(Basis);

/// Opaque sampled function handle.
pub struct DhDiskFunction(DiskFunction);

/// Opaque coefficient matrix handle.
pub struct DhCoefficients(CoefficientMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> DhStatus {
    if err.is_numerical_guard() {
        return DhStatus::Numerical;
    }
    match err {
        Error::Io { .. } | Error::Parse { .. } => DhStatus::Io,
        _ => DhStatus::Invalid,
    }
}

struct Fail(DhStatus, String);

impl From<Error> for Fail {
    fn from(err: Error) -> Self {
        Fail(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DhStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> DhStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            DhStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            DhStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    write(out, Box::into_raw(Box::new(value)), "out")
}

fn condition(bc: DhBoundary) -> Result<BoundaryCondition, Fail> {
    match bc {
        DH_BC_ZERO => Ok(BoundaryCondition::ZeroValue),
        DH_BC_DERIVATIVE => Ok(BoundaryCondition::Derivative),
        other => Err(Fail(DhStatus::Invalid, format!("unknown boundary condition {other}"))),
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `dh_*` call on this thread.
#[no_mangle]
pub extern "C" fn dh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `J_m(x)`.
///
/// # Safety
/// `out` must be valid for one `double` write.
#[no_mangle]
pub unsafe extern "C" fn dh_bessel_j(m: i32, x: f64, out: *mut f64) -> DhStatus {
    guard(|| write(out, bessel::eval_j(m, x)?, "out"))
}

/// First `count` zeros of `J_m` or `J_m'` into `out[0..count]`.
///
/// # Safety
/// `out` must be valid for `count` `double` writes.
#[no_mangle]
pub unsafe extern "C" fn dh_find_zeros(
    m: i32,
    count: usize,
    bc: DhBoundary,
    out: *mut f64,
) -> DhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = bessel::find_zeros(m, count, condition(bc)?)?;
        ptr::copy_nonoverlapping(table.zeros().as_ptr(), out, count);
        Ok(())
    })
}

/// Builds the basis for radius `a`, `|m| <= max_angular`,
/// `n <= max_radial` and lattice cutoff `cutoff`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn dh_basis_new(
    radius: f64,
    bc: DhBoundary,
    max_angular: u32,
    max_radial: u32,
    cutoff: u32,
    out: *mut *mut DhBasis,
) -> DhStatus {
    guard(|| {
        let spec = BasisSpec::new(radius, condition(bc)?, max_angular, max_radial, cutoff)?;
        write_handle(out, DhBasis(Basis::new(spec)?))
    })
}

/// # Safety
/// `basis` must be null or a handle from [`dh_basis_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_basis_free(basis: *mut DhBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Wraps `grid * grid` cell-centred samples over `[-radius, radius]^2`,
/// zeroing them outside `support`. `imag` may be null for real data.
///
/// # Safety
/// `real` (and `imag` when non-null) must be valid for `grid * grid` reads.
#[no_mangle]
pub unsafe extern "C" fn dh_disk_function_new(
    radius: f64,
    support: f64,
    grid: usize,
    real: *const f64,
    imag: *const f64,
    out: *mut *mut DhDiskFunction,
) -> DhStatus {
    guard(|| {
        if real.is_null() {
            return Err(null("real"));
        }
        let len = grid
            .checked_mul(grid)
            .ok_or_else(|| Fail(DhStatus::Invalid, format!("grid {grid} is too large")))?;
        let re = std::slice::from_raw_parts(real, len);
        let values: Vec<Complex64> = if imag.is_null() {
            re.iter().map(|&x| Complex64::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(imag, len);
            re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect()
        };
        let f = DiskFunction::from_samples(radius, support, grid, grid, values)?;
        write_handle(out, DhDiskFunction(f))
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_disk_function_free(f: *mut DhDiskFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_coefficients_free(c: *mut DhCoefficients) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Coefficients by direct quadrature on the disk.
///
/// # Safety
/// Handles must be live; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn dh_analyze_direct(
    basis: *const DhBasis,
    f: *const DhDiskFunction,
    out: *mut *mut DhCoefficients,
) -> DhStatus {
    guard(|| {
        let basis = &deref(basis, "basis")?.0;
        let f = &deref(f, "f")?.0;
        write_handle(out, DhCoefficients(spectra::analyze_direct(f, basis)?))
    })
}

/// Coefficients from the square-window Fourier table at the basis cutoff.
///
/// # Safety
/// Handles must be live; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn dh_analyze_spectral(
    basis: *const DhBasis,
    f: *const DhDiskFunction,
    out: *mut *mut DhCoefficients,
) -> DhStatus {
    guard(|| {
        let basis = &deref(basis, "basis")?.0;
        let f = &deref(f, "f")?.0;
        let table = sampling::square_fourier_coeff(f, basis.spec().cutoff)?;
        write_handle(out, DhCoefficients(spectra::analyze_spectral(&table, basis)?))
    })
}

/// Number of stored coefficients, `N * (2M + 1)`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn dh_coefficients_len(c: *const DhCoefficients, out: *mut usize) -> DhStatus {
    guard(|| write(out, deref(c, "c")?.0.entries().len(), "out"))
}

/// `C_{n,m}` split into real and imaginary parts.
///
/// # Safety
/// `c` must be a live handle; `re` and `im` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn dh_coefficients_get(
    c: *const DhCoefficients,
    n: u32,
    m: i32,
    re: *mut f64,
    im: *mut f64,
) -> DhStatus {
    guard(|| {
        let c = &deref(c, "c")?.0;
        if !c.spec().contains(n, m) {
            return Err(Fail(DhStatus::Invalid, format!("(n={n}, m={m}) is outside the basis")));
        }
        let v = c.get(n, m);
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// Coefficients of the function rotated by `alpha` radians.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn dh_rotate(
    c: *const DhCoefficients,
    alpha: f64,
    out: *mut *mut DhCoefficients,
) -> DhStatus {
    guard(|| {
        let c = &deref(c, "c")?.0;
        write_handle(out, DhCoefficients(spectra::rotate_coefficients(c, alpha)))
    })
}

/// Evaluates the expansion at polar point `(r, theta)`.
///
/// # Safety
/// Handles must be live; `re` and `im` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn dh_synthesize(
    basis: *const DhBasis,
    c: *const DhCoefficients,
    r: f64,
    theta: f64,
    re: *mut f64,
    im: *mut f64,
) -> DhStatus {
    guard(|| {
        let basis = &deref(basis, "basis")?.0;
        let c = &deref(c, "c")?.0;
        let v = spectra::synthesize(c, basis, r, theta)?;
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// Writes `|C_{n,m}|` in storage order (`n` outer, `m` ascending).
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn dh_descriptors(
    c: *const DhCoefficients,
    out: *mut f64,
    len: usize,
) -> DhStatus {
    guard(|| {
        let d = convolution::rotation_descriptors(&deref(c, "c")?.0);
        if out.is_null() {
            return Err(null("out"));
        }
        if len < d.len() {
            return Err(Fail(
                DhStatus::BufferTooSmall,
                format!("need {} entries, got {len}", d.len()),
            ));
        }
        ptr::copy_nonoverlapping(d.as_ptr(), out, d.len());
        Ok(())
    })
}

/// Coefficients of `f1 * f2` through the spectral convolution path. Both
/// inputs must be supported in half the basis radius.
///
/// # Safety
/// Handles must be live; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn dh_convolve_spectral(
    basis: *const DhBasis,
    f1: *const DhDiskFunction,
    f2: *const DhDiskFunction,
    out: *mut *mut DhCoefficients,
) -> DhStatus {
    guard(|| {
        let basis = &deref(basis, "basis")?.0;
        let f1 = &deref(f1, "f1")?.0;
        let f2 = &deref(f2, "f2")?.0;
        let result = convolution::convolve(f1, f2, basis, convolution::Method::Spectral)?;
        write_handle(out, DhCoefficients(result.coefficients))
    })
}

/// Squared L2 norm of `f` through the Plancherel identity.
///
/// # Safety
/// Handles must be live; `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn dh_plancherel(
    basis: *const DhBasis,
    f: *const DhDiskFunction,
    out: *mut f64,
) -> DhStatus {
    guard(|| {
        let basis = &deref(basis, "basis")?.0;
        let f = &deref(f, "f")?.0;
        write(out, convolution::plancherel_spectral(f, basis)?, "out")
    })
}
