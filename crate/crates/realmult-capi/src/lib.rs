//! C ABI for the realmult library.
//!
//! Quadratic irrationals travel as opaque `RmTheta` handles; every other
//! result crosses the boundary as a decimal string or as the same JSON the
//! CLI emits (all integers as decimal strings, so arbitrary precision
//! survives). Every function returns an [`RmStatus`] code; out-parameters
//! are written only on `Ok`. Strings returned through `char**` are owned by
//! the caller and must be released with [`rm_string_free`].

use std::ffi::{c_char, CString};
use std::str::FromStr;

use realmult::report::{
    cf_report, equiv_report, kgroups_report, morita_report, pell_report, unit_report,
};
use realmult::{Error, Mat2, QuadraticIrrational, RMBimoduleData};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The coefficients do not define a real quadratic irrational.
    NotIrrational = 2,
    /// A matrix argument is not in GL(2,Z).
    NotUnimodular = 3,
    /// The integer is not a valid discriminant.
    InvalidDiscriminant = 4,
    /// The trivial unit (power 0) was requested where it is excluded.
    TrivialUnit = 5,
    /// Discriminants of the arguments do not match.
    MismatchedOrders = 6,
    /// Any other invalid input.
    InvalidInput = 7,
}

fn status_of(err: &Error) -> RmStatus {
    match err {
        Error::ZeroLeadingCoefficient | Error::NotIrrational { .. } => RmStatus::NotIrrational,
        Error::NotUnimodular { .. } => RmStatus::NotUnimodular,
        Error::InvalidDiscriminant { .. } => RmStatus::InvalidDiscriminant,
        Error::TrivialUnit => RmStatus::TrivialUnit,
        Error::MixedDiscriminants { .. } | Error::DiscriminantMismatch { .. } => {
            RmStatus::MismatchedOrders
        }
        Error::NonPositiveUnit | Error::ThetaNotNormalized | Error::ParseInput(_) => {
            RmStatus::InvalidInput
        }
    }
}

/// Opaque quadratic irrational theta with k theta^2 + l theta + m = 0.
pub struct RmTheta {
    inner: QuadraticIrrational,
}

/// Writes an owned C string into `out`.
fn set_string(out: *mut *mut c_char, text: String) -> RmStatus {
    match CString::new(text) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            RmStatus::Ok
        }
        Err(_) => RmStatus::InvalidInput,
    }
}

fn set_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> RmStatus {
    match serde_json::to_string(value) {
        Ok(text) => set_string(out, text),
        Err(_) => RmStatus::InvalidInput,
    }
}

/// Reads a row-major length-4 matrix argument.
unsafe fn read_matrix(g: *const i64) -> Option<Mat2> {
    if g.is_null() {
        return None;
    }
    let entries = std::slice::from_raw_parts(g, 4);
    Some(Mat2::new(entries[0], entries[1], entries[2], entries[3]))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through a `char**`
/// out-parameter of this library, not yet freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a theta handle from the coefficients of
/// k theta^2 + l theta + m = 0.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_theta_new(k: i64, l: i64, m: i64, out: *mut *mut RmTheta) -> RmStatus {
    if out.is_null() {
        return RmStatus::NullPointer;
    }
    match QuadraticIrrational::new(k, l, m) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(RmTheta { inner }));
            RmStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Releases a theta handle.
///
/// # Safety
/// `theta` must come from [`rm_theta_new`] and not be freed twice; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rm_theta_free(theta: *mut RmTheta) {
    if !theta.is_null() {
        drop(Box::from_raw(theta));
    }
}

/// The discriminant of theta as a decimal string.
///
/// # Safety
/// `theta` must be a live handle; `out` must point to writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_theta_discriminant(
    theta: *const RmTheta,
    out: *mut *mut c_char,
) -> RmStatus {
    if theta.is_null() || out.is_null() {
        return RmStatus::NullPointer;
    }
    set_string(out, (*theta).inner.discriminant().to_string())
}

/// The continued fraction of theta as JSON
/// `{"theta": ..., "preperiod": [...], "period": [...]}`.
///
/// # Safety
/// `theta` must be a live handle; `out` must point to writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_theta_continued_fraction_json(
    theta: *const RmTheta,
    out: *mut *mut c_char,
) -> RmStatus {
    if theta.is_null() || out.is_null() {
        return RmStatus::NullPointer;
    }
    set_json(out, &cf_report(&(*theta).inner))
}

/// GL(2,Z) equivalence of two thetas. `out_equivalent` receives 0 or 1;
/// `out_json`, when non-null, receives the full report with the witness.
///
/// # Safety
/// `first` and `second` must be live handles; `out_equivalent` must be
/// writable; `out_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn rm_theta_equivalent(
    first: *const RmTheta,
    second: *const RmTheta,
    out_equivalent: *mut i32,
    out_json: *mut *mut c_char,
) -> RmStatus {
    if first.is_null() || second.is_null() || out_equivalent.is_null() {
        return RmStatus::NullPointer;
    }
    let report = equiv_report(&(*first).inner, &(*second).inner);
    *out_equivalent = i32::from(report.equivalent);
    if out_json.is_null() {
        RmStatus::Ok
    } else {
        set_json(out_json, &report)
    }
}

/// Fundamental unit of discriminant d: t and u as decimal strings plus the
/// norm (+1 or -1).
///
/// # Safety
/// `out_t`, `out_u` and `out_norm` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_fundamental_unit(
    d: i64,
    out_t: *mut *mut c_char,
    out_u: *mut *mut c_char,
    out_norm: *mut i32,
) -> RmStatus {
    if out_t.is_null() || out_u.is_null() || out_norm.is_null() {
        return RmStatus::NullPointer;
    }
    match realmult::fundamental_unit(&d.into()) {
        Ok(unit) => {
            let status = set_string(out_t, unit.t().to_string());
            if status != RmStatus::Ok {
                return status;
            }
            let status = set_string(out_u, unit.u().to_string());
            if status != RmStatus::Ok {
                rm_string_free(*out_t);
                return status;
            }
            *out_norm = unit.norm();
            RmStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Pell report for discriminant d as JSON: the fundamental unit and all
/// solutions with u <= bound.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_pell_json(d: i64, bound: u64, out: *mut *mut c_char) -> RmStatus {
    if out.is_null() {
        return RmStatus::NullPointer;
    }
    match pell_report(&d.into(), bound) {
        Ok(report) => set_json(out, &report),
        Err(err) => status_of(&err),
    }
}

/// Unit power report as JSON: epsilon_0^power over the principal theta of
/// discriminant d, with trace coordinates.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_unit_json(d: i64, power: i64, out: *mut *mut c_char) -> RmStatus {
    if out.is_null() {
        return RmStatus::NullPointer;
    }
    match unit_report(&d.into(), power, None) {
        Ok(report) => set_json(out, &report),
        Err(err) => status_of(&err),
    }
}

/// K-groups of the Cuntz-Pimsner algebra of (theta, epsilon_0^power, g).
/// `g` is row-major length 4 and must be unimodular; the JSON schema is the
/// CLI's `kgroups --json`.
///
/// # Safety
/// `theta` must be a live handle; `g` must point to 4 readable ints or be
/// null for the identity; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rm_kgroups_json(
    theta: *const RmTheta,
    power: i64,
    g: *const i64,
    out: *mut *mut c_char,
) -> RmStatus {
    if theta.is_null() || out.is_null() {
        return RmStatus::NullPointer;
    }
    let g = if g.is_null() {
        Mat2::identity()
    } else {
        match read_matrix(g) {
            Some(matrix) => matrix,
            None => return RmStatus::NullPointer,
        }
    };
    match kgroups_report(&(*theta).inner, power, g) {
        Ok(report) => set_json(out, &report),
        Err(err) => status_of(&err),
    }
}

/// Morita comparison of two algebras given by handles, unit powers and
/// optional g matrices (null = identity). `out_equivalent` receives 0 or 1;
/// `out_json`, when non-null, receives both K-group records.
///
/// # Safety
/// Handles must be live; matrix pointers must be null or point to 4
/// readable ints; `out_equivalent` must be writable; `out_json` may be
/// null.
#[no_mangle]
pub unsafe extern "C" fn rm_morita_equivalent(
    first: *const RmTheta,
    n1: i64,
    g1: *const i64,
    second: *const RmTheta,
    n2: i64,
    g2: *const i64,
    out_equivalent: *mut i32,
    out_json: *mut *mut c_char,
) -> RmStatus {
    if first.is_null() || second.is_null() || out_equivalent.is_null() {
        return RmStatus::NullPointer;
    }
    let g1 = if g1.is_null() {
        Mat2::identity()
    } else {
        match read_matrix(g1) {
            Some(matrix) => matrix,
            None => return RmStatus::NullPointer,
        }
    };
    let g2 = if g2.is_null() {
        Mat2::identity()
    } else {
        match read_matrix(g2) {
            Some(matrix) => matrix,
            None => return RmStatus::NullPointer,
        }
    };
    let build = |theta: &QuadraticIrrational, n: i64, g: Mat2| RMBimoduleData::new(theta, n, g);
    let d1 = match build(&(*first).inner, n1, g1) {
        Ok(data) => data,
        Err(err) => return status_of(&err),
    };
    let d2 = match build(&(*second).inner, n2, g2) {
        Ok(data) => data,
        Err(err) => return status_of(&err),
    };
    let report = morita_report(&d1, &d2);
    *out_equivalent = i32::from(report.equivalent);
    if out_json.is_null() {
        RmStatus::Ok
    } else {
        set_json(out_json, &report)
    }
}

/// Parses a GL(2,Z) matrix from the CLI's "a,b;c,d" syntax and writes the
/// four entries row-major; a convenience for binders.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must point to 4
/// writable i64 slots.
#[no_mangle]
pub unsafe extern "C" fn rm_parse_matrix(text: *const c_char, out: *mut i64) -> RmStatus {
    if text.is_null() || out.is_null() {
        return RmStatus::NullPointer;
    }
    let text = match std::ffi::CStr::from_ptr(text).to_str() {
        Ok(text) => text,
        Err(_) => return RmStatus::InvalidInput,
    };
    let matrix = match Mat2::from_str(text) {
        Ok(matrix) => matrix,
        Err(err) => return status_of(&err),
    };
    use num_traits::ToPrimitive;
    let slots = std::slice::from_raw_parts_mut(out, 4);
    for (slot, entry) in slots
        .iter_mut()
        .zip([&matrix.a, &matrix.b, &matrix.c, &matrix.d])
    {
        match entry.to_i64() {
            Some(value) => *slot = value,
            None => return RmStatus::InvalidInput,
        }
    }
    RmStatus::Ok
}
