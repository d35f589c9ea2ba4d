//! C interface to the g2lab core.
//!
//! Models and frames are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`G2labStatus`]; on failure a
//! message is available from [`g2lab_last_error`] on the same thread.
//! Vectors are passed as `double` arrays of length `4m`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use g2lab::scenario::RunRequest;
use g2lab::report::{emit_report, Format};
use g2lab::{AmbientModel, Error, JacobiRoute, PointFrame, Vector, Verdict};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2labStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotUnit = 4,
    NotTangent = 5,
    ConstructionFailed = 6,
    Serialization = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2labJacobiRoute {
    Closed = 0,
    Direct = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2labVerdict {
    Consistent = 0,
    DeviationFound = 1,
}

/// Opaque ambient model handle.
pub struct G2labModel {
    inner: Arc<AmbientModel>,
}

/// Opaque hypersurface frame handle.
pub struct G2labFrame {
    inner: PointFrame,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> G2labStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::InvalidDimension(_) => G2labStatus::DimensionMismatch,
        Error::NotUnit { .. } | Error::ZeroNormal => G2labStatus::NotUnit,
        Error::NotTangent { .. } => G2labStatus::NotTangent,
        Error::SlotSearch { .. } | Error::EigenspaceDimension { .. } => G2labStatus::ConstructionFailed,
        Error::Serialization(_) | Error::Io { .. } => G2labStatus::Serialization,
        _ => G2labStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> G2labStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn guarded(f: impl FnOnce() -> G2labStatus) -> G2labStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            G2labStatus::Panic
        }
    }
}

unsafe fn read_vec(ptr: *const f64, len: usize, dim: usize) -> Result<Vector, G2labStatus> {
    if ptr.is_null() {
        set_error("null vector pointer");
        return Err(G2labStatus::NullPointer);
    }
    if len != dim {
        return Err(fail(Error::DimensionMismatch { expected: dim, actual: len }));
    }
    Ok(Vector::from_column_slice(std::slice::from_raw_parts(ptr, len)))
}

unsafe fn write_vec(v: &Vector, out: *mut f64) -> G2labStatus {
    if out.is_null() {
        set_error("null output pointer");
        return G2labStatus::NullPointer;
    }
    std::slice::from_raw_parts_mut(out, v.len()).copy_from_slice(v.as_slice());
    G2labStatus::Ok
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! deref_or_null {
    ($p:expr, $what:literal) => {
        match $p.as_ref() {
            Some(v) => v,
            None => {
                set_error(concat!("null ", $what));
                return G2labStatus::NullPointer;
            }
        }
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next g2lab call on the same thread.
#[no_mangle]
pub extern "C" fn g2lab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the model of quaternionic dimension `m` (real dimension `4m`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn g2lab_model_new(m: usize, out: *mut *mut G2labModel) -> G2labStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output handle");
            return G2labStatus::NullPointer;
        }
        match g2lab::build_ambient(m) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(G2labModel { inner: Arc::new(model) }));
                G2labStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `model` must come from `g2lab_model_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn g2lab_model_free(model: *mut G2labModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Real dimension `4m`, or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2lab_model_dim(model: *const G2labModel) -> usize {
    model.as_ref().map_or(0, |m| m.inner.dim)
}

/// Ambient curvature `R(X,Y)Z` into `out` (length `len`).
///
/// # Safety
/// All pointers must reference `len` doubles; `model` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2lab_curvature(
    model: *const G2labModel,
    x: *const f64,
    y: *const f64,
    z: *const f64,
    len: usize,
    out: *mut f64,
) -> G2labStatus {
    guarded(|| {
        let model = deref_or_null!(model, "model");
        let dim = model.inner.dim;
        let (x, y, z) = (
            try_status!(read_vec(x, len, dim)),
            try_status!(read_vec(y, len, dim)),
            try_status!(read_vec(z, len, dim)),
        );
        match g2lab::curvature_ambient(&model.inner, &x, &y, &z) {
            Ok(v) => write_vec(&v, out),
            Err(e) => fail(e),
        }
    })
}

/// Sectional curvature of the plane spanned by an orthonormal pair.
///
/// # Safety
/// `x`, `y` must reference `len` doubles; `out` one double.
#[no_mangle]
pub unsafe extern "C" fn g2lab_sectional(
    model: *const G2labModel,
    x: *const f64,
    y: *const f64,
    len: usize,
    out: *mut f64,
) -> G2labStatus {
    guarded(|| {
        let model = deref_or_null!(model, "model");
        let dim = model.inner.dim;
        let (x, y) = (try_status!(read_vec(x, len, dim)), try_status!(read_vec(y, len, dim)));
        if out.is_null() {
            set_error("null output pointer");
            return G2labStatus::NullPointer;
        }
        match g2lab::sectional_curvature(&model.inner, &x, &y) {
            Ok(k) => {
                *out = k;
                G2labStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Induced structure at the unit normal `n`. The frame keeps the model alive.
///
/// # Safety
/// `n` must reference `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2lab_frame_new(
    model: *const G2labModel,
    n: *const f64,
    len: usize,
    out: *mut *mut G2labFrame,
) -> G2labStatus {
    guarded(|| {
        let model = deref_or_null!(model, "model");
        let n = try_status!(read_vec(n, len, model.inner.dim));
        if out.is_null() {
            set_error("null output handle");
            return G2labStatus::NullPointer;
        }
        match g2lab::build_frame(&model.inner, &n) {
            Ok(frame) => {
                *out = Box::into_raw(Box::new(G2labFrame { inner: frame }));
                G2labStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `frame` must come from `g2lab_frame_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn g2lab_frame_free(frame: *mut G2labFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Reeb vector `xi = -JN` into `out` (model dimension).
///
/// # Safety
/// `out` must reference `4m` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2lab_frame_reeb(frame: *const G2labFrame, out: *mut f64) -> G2labStatus {
    guarded(|| {
        let frame = deref_or_null!(frame, "frame");
        write_vec(&frame.inner.xi, out)
    })
}

/// Normal Jacobi operator `R(X,N)N` on a tangent vector.
///
/// # Safety
/// `x` must reference `len` doubles, `out` `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn g2lab_normal_jacobi(
    frame: *const G2labFrame,
    x: *const f64,
    len: usize,
    route: G2labJacobiRoute,
    out: *mut f64,
) -> G2labStatus {
    guarded(|| {
        let frame = deref_or_null!(frame, "frame");
        let x = try_status!(read_vec(x, len, frame.inner.dim()));
        let route = match route {
            G2labJacobiRoute::Closed => JacobiRoute::Closed,
            G2labJacobiRoute::Direct => JacobiRoute::Direct,
        };
        match g2lab::ambient_curvature::normal_jacobi(&frame.inner, &x, route) {
            Ok(v) => write_vec(&v, out),
            Err(e) => fail(e),
        }
    })
}

/// Splits `xi = eta(U) U + sum eta(xi_nu) xi_nu`. Writes `eta(U)` and the
/// three `eta(xi_nu)`; `eta_u` is 0 when `xi` lies in Dperp.
///
/// # Safety
/// `eta_u` must reference one writable double and `eta_xi` three.
#[no_mangle]
pub unsafe extern "C" fn g2lab_reeb_decompose(frame: *const G2labFrame, eta_u: *mut f64, eta_xi: *mut f64) -> G2labStatus {
    guarded(|| {
        let frame = deref_or_null!(frame, "frame");
        if eta_u.is_null() || eta_xi.is_null() {
            set_error("null output pointer");
            return G2labStatus::NullPointer;
        }
        let d = g2lab::reeb_decompose(&frame.inner);
        *eta_u = d.eta_u;
        std::slice::from_raw_parts_mut(eta_xi, 3).copy_from_slice(&d.eta_xi);
        G2labStatus::Ok
    })
}

/// Runs a scenario described by a JSON request such as
/// `{"scenario": "type-a", "m": 3, "r": 0.3, "seed": 42}` and returns the JSON
/// report in `out_json` (release with `g2lab_string_free`). `verdict` may be NULL.
///
/// # Safety
/// `request_json` must be a NUL-terminated string; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn g2lab_run_scenario(
    request_json: *const c_char,
    out_json: *mut *mut c_char,
    verdict: *mut G2labVerdict,
) -> G2labStatus {
    guarded(|| {
        if request_json.is_null() || out_json.is_null() {
            set_error("null request or output pointer");
            return G2labStatus::NullPointer;
        }
        let text = match CStr::from_ptr(request_json).to_str() {
            Ok(t) => t,
            Err(e) => {
                set_error(format!("request is not UTF-8: {e}"));
                return G2labStatus::InvalidArgument;
            }
        };
        let request: RunRequest = match serde_json::from_str(text) {
            Ok(r) => r,
            Err(e) => {
                set_error(format!("invalid request: {e}"));
                return G2labStatus::InvalidArgument;
            }
        };
        let report = match request.run() {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let bytes = match emit_report(&report, Format::Json) {
            Ok(b) => b,
            Err(e) => return fail(e),
        };
        let s = match CString::new(bytes) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return G2labStatus::Serialization;
            }
        };
        if !verdict.is_null() {
            *verdict = match report.verdict {
                Verdict::ConsistentWithPaper => G2labVerdict::Consistent,
                Verdict::DeviationFound => G2labVerdict::DeviationFound,
            };
        }
        *out_json = s.into_raw();
        G2labStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn g2lab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// ABI version of this interface.
#[no_mangle]
pub extern "C" fn g2lab_abi_version() -> c_int {
    1
}
