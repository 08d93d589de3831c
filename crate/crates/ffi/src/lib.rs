//! C interface to `micz-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by `*_free`. Every fallible function returns a [`MiczStatus`];
//! results are written through out-pointers. After a failure,
//! [`micz_last_error_message`] describes it. The last error is kept per
//! thread.
//!
//! Matrices are written row-major into caller-provided `double` buffers of
//! length at least `dim * dim`; rows are indexed by λ ascending.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use micz_core::spheroidal::separation_constants;
use micz_core::{coeffs, interbasis, ErrorCategory, MiczError, Sector, SpheroidalSpectrum};
use num_rational::BigRational;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiczStatus {
    Ok = 0,
    /// An argument is unusable before any physics is attempted (e.g. a zero denominator).
    InvalidArgument = 1,
    /// Invalid quantum numbers or parameters.
    Validation = 2,
    /// A numerical procedure failed.
    Numerical = 3,
    /// An identity that holds by construction was violated, or a panic was caught.
    Internal = 4,
    /// The output buffer is shorter than required.
    BufferTooSmall = 5,
    /// A required pointer was null.
    NullPointer = 6,
}

/// A validated sector `(n, Q, L, J, Z)`.
pub struct MiczSector {
    inner: Sector,
}

/// Eigenvalues and eigenvectors of the spheroidal matrix at one focal distance.
pub struct MiczSpectrum {
    inner: SpheroidalSpectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: MiczStatus, msg: impl Into<String>) -> MiczStatus {
    set_error(msg.into());
    status
}

fn from_error(e: MiczError) -> MiczStatus {
    let status = match e.category() {
        ErrorCategory::Validation => MiczStatus::Validation,
        ErrorCategory::Numerical => MiczStatus::Numerical,
        ErrorCategory::Internal => MiczStatus::Internal,
    };
    fail(status, format!("{}: {e}", e.name()))
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), MiczStatus>) -> MiczStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MiczStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(MiczStatus::Internal, "panic inside micz"),
    }
}

fn lift<T>(r: micz_core::Result<T>) -> Result<T, MiczStatus> {
    r.map_err(from_error)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, MiczStatus> {
    // SAFETY: the caller promises p is null or a live handle from this library
    unsafe { p.as_ref() }.ok_or_else(|| fail(MiczStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), MiczStatus> {
    if out.is_null() {
        return Err(fail(MiczStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: out is non-null and the caller promises it is writable
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_slice(out: *mut f64, len: usize, values: &[f64]) -> Result<(), MiczStatus> {
    if out.is_null() {
        return Err(fail(MiczStatus::NullPointer, "output buffer is null"));
    }
    if len < values.len() {
        return Err(fail(MiczStatus::BufferTooSmall, format!("buffer holds {len} values, {} needed", values.len())));
    }
    // SAFETY: out is non-null and valid for len ≥ values.len() doubles
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    Ok(())
}

/// Creates a sector with charge `z_num / z_den`.
///
/// # Safety
///
/// `out` must be null or valid for writing a pointer. On success `*out`
/// owns a handle that must be released with [`micz_sector_free`].
#[no_mangle]
pub unsafe extern "C" fn micz_sector_new(
    n: i64,
    q: i64,
    l: i64,
    j: i64,
    z_num: i64,
    z_den: i64,
    out: *mut *mut MiczSector,
) -> MiczStatus {
    guard(|| {
        if z_den == 0 {
            return Err(fail(MiczStatus::InvalidArgument, "charge denominator is zero"));
        }
        let z = BigRational::new(z_num.into(), z_den.into());
        let s = lift(micz_core::sector::validate_sector(n, q, l, j, z))?;
        let handle = Box::into_raw(Box::new(MiczSector { inner: s }));
        // SAFETY: forwarded from the caller's contract on out
        unsafe { write(out, handle, "out") }.inspect_err(|_| {
            // SAFETY: handle came from Box::into_raw just above
            drop(unsafe { Box::from_raw(handle) });
        })
    })
}

/// Releases a sector. Null is ignored.
///
/// # Safety
///
/// `sector` must be null or a handle from [`micz_sector_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn micz_sector_free(sector: *mut MiczSector) {
    if !sector.is_null() {
        // SAFETY: the caller guarantees the handle is live and owned
        drop(unsafe { Box::from_raw(sector) });
    }
}

/// Writes `N`, the number of states in the sector.
///
/// # Safety
///
/// `sector` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn micz_sector_dim(sector: *const MiczSector, out: *mut usize) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { deref(sector, "sector") }?;
        unsafe { write(out, s.inner.dim(), "out") }
    })
}

/// Writes the energy `E = −Z²/(2(n + 4 + Q/2)²)`.
///
/// # Safety
///
/// `sector` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn micz_sector_energy(sector: *const MiczSector, out: *mut f64) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { deref(sector, "sector") }?;
        unsafe { write(out, s.inner.energy_f64(), "out") }
    })
}

/// Writes W (rows λ, columns `n_p`, row-major) into `out[0 .. dim*dim]`.
/// Entries are the correctly rounded values of the exact coefficients.
///
/// # Safety
///
/// `sector` must be a live handle or null; `out` must be null or valid for
/// writing `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn micz_w_matrix(sector: *const MiczSector, out: *mut f64, len: usize) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { deref(sector, "sector") }?;
        let w = lift(interbasis::w_matrix(&s.inner))?;
        let flat: Vec<f64> = w.entries.iter().flatten().map(|x| x.to_f64()).collect();
        unsafe { write_slice(out, len, &flat) }
    })
}

/// Writes the ninth integral of motion in the spherical basis, row-major.
///
/// # Safety
///
/// As for [`micz_w_matrix`].
#[no_mangle]
pub unsafe extern "C" fn micz_m9_matrix(sector: *const MiczSector, out: *mut f64, len: usize) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { deref(sector, "sector") }?;
        let m = lift(coeffs::m9_spherical_matrix(&s.inner))?;
        let flat: Vec<f64> = m.to_dense().iter().flatten().map(|x| x.to_f64()).collect();
        unsafe { write_slice(out, len, &flat) }
    })
}

/// Solves the spheroidal eigenproblem at focal distance `a ≥ 0`.
///
/// # Safety
///
/// `sector` must be a live handle or null; `out` must be null or valid for
/// writing a pointer. Release the result with [`micz_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn micz_spectrum_new(
    sector: *const MiczSector,
    a: f64,
    out: *mut *mut MiczSpectrum,
) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let s = unsafe { deref(sector, "sector") }?;
        let sp = lift(separation_constants(&s.inner, a))?;
        let handle = Box::into_raw(Box::new(MiczSpectrum { inner: sp }));
        unsafe { write(out, handle, "out") }.inspect_err(|_| {
            // SAFETY: handle came from Box::into_raw just above
            drop(unsafe { Box::from_raw(handle) });
        })
    })
}

/// Releases a spectrum. Null is ignored.
///
/// # Safety
///
/// `spectrum` must be null or a handle from [`micz_spectrum_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn micz_spectrum_free(spectrum: *mut MiczSpectrum) {
    if !spectrum.is_null() {
        // SAFETY: the caller guarantees the handle is live and owned
        drop(unsafe { Box::from_raw(spectrum) });
    }
}

/// # Safety
///
/// `spectrum` must be a live handle or null; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn micz_spectrum_dim(spectrum: *const MiczSpectrum, out: *mut usize) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let sp = unsafe { deref(spectrum, "spectrum") }?;
        unsafe { write(out, sp.inner.dim(), "out") }
    })
}

/// Writes the separation constants `K_{n_k}`, ascending.
///
/// # Safety
///
/// `spectrum` must be a live handle or null; `out` must be null or valid for
/// writing `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn micz_spectrum_eigenvalues(
    spectrum: *const MiczSpectrum,
    out: *mut f64,
    len: usize,
) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let sp = unsafe { deref(spectrum, "spectrum") }?;
        unsafe { write_slice(out, len, &sp.inner.k) }
    })
}

/// Writes T row-major: `out[i*dim + k]` is the coefficient of spherical state
/// `i` (λ ascending) in spheroidal state `k`.
///
/// # Safety
///
/// As for [`micz_spectrum_eigenvalues`].
#[no_mangle]
pub unsafe extern "C" fn micz_spectrum_vectors(spectrum: *const MiczSpectrum, out: *mut f64, len: usize) -> MiczStatus {
    guard(|| {
        // SAFETY: forwarded caller contract
        let sp = unsafe { deref(spectrum, "spectrum") }?;
        let t = &sp.inner.t;
        let flat: Vec<f64> = (0..t.nrows()).flat_map(|i| (0..t.ncols()).map(move |k| t[(i, k)])).collect();
        unsafe { write_slice(out, len, &flat) }
    })
}

/// Copies the calling thread's last error message, NUL-terminated, into
/// `buf`. An empty string means no error has been recorded. Returns
/// `BUFFER_TOO_SMALL` (writing nothing) when `len` cannot hold the message.
///
/// # Safety
///
/// `buf` must be null or valid for writing `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn micz_last_error_message(buf: *mut c_char, len: usize) -> MiczStatus {
    if buf.is_null() {
        return MiczStatus::NullPointer;
    }
    let msg = LAST_ERROR.with(|e| e.borrow().clone()).unwrap_or_default();
    let bytes = msg.as_bytes();
    if bytes.len() + 1 > len {
        return MiczStatus::BufferTooSmall;
    }
    // SAFETY: buf is valid for len > bytes.len() bytes
    unsafe {
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        *buf.add(bytes.len()) = 0;
    }
    MiczStatus::Ok
}

/// A static, NUL-terminated name for a status code.
#[no_mangle]
pub extern "C" fn micz_status_name(status: MiczStatus) -> *const c_char {
    let name: &'static CStr = match status {
        MiczStatus::Ok => c"Ok",
        MiczStatus::InvalidArgument => c"InvalidArgument",
        MiczStatus::Validation => c"Validation",
        MiczStatus::Numerical => c"Numerical",
        MiczStatus::Internal => c"Internal",
        MiczStatus::BufferTooSmall => c"BufferTooSmall",
        MiczStatus::NullPointer => c"NullPointer",
    };
    name.as_ptr()
}
