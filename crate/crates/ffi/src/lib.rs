//! C interface. Objects cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free`; strings returned through
//! out-parameters are released with `mga_string_free`.
//!
//! Every fallible call returns an `MgaStatus`. On failure the message is kept
//! per thread and can be read with `mga_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mgalpha::descent::{coarse_coefficient, floor_identity_sweep, RamifiedBoundary};
use mgalpha::divisor::{log_canonical_divisor, DivisorClass, Genus, Model};
use mgalpha::fcurves::{gkm_nef_check, NefVerdict};
use mgalpha::graph::{
    arithmetic_genus, is_pseudostable, is_stable, t_equivalent, t_transform, CurveGraph,
};
use mgalpha::linear_series::{h0_twisted, rank_kn};
use mgalpha::phase::{critical_alphas, pair_with_ray};
use mgalpha::{rational, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    OutOfRange = 4,
    InvalidGraph = 5,
    Precondition = 6,
    Regime = 7,
    Parse = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgaModel {
    MgStack = 0,
    PsPullback = 1,
    CoarseDagger = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MgaNef {
    Nef = 0,
    NotNef = 1,
    Inapplicable = 2,
}

/// Opaque divisor class `aλ − Σ b_i δ_i`.
pub struct MgaDivisorClass(DivisorClass);

/// Opaque dual graph.
pub struct MgaCurveGraph(CurveGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MgaStatus {
    match e {
        Error::GenusTooSmall(_)
        | Error::AlphaOutOfRange(_)
        | Error::CurveOutOfRange { .. }
        | Error::BoundsExceeded(_) => MgaStatus::OutOfRange,
        Error::InvalidGraph(_) | Error::Disconnected | Error::TooManyVertices(_) => {
            MgaStatus::InvalidGraph
        }
        Error::Precondition(_) | Error::GenusMismatch(..) | Error::MarkedTail(_) => {
            MgaStatus::Precondition
        }
        Error::Regime { .. } | Error::NegativeDegree(_) => MgaStatus::Regime,
        Error::ParseRational(_) | Error::Json(_) => MgaStatus::Parse,
        Error::OverlappingTails(..) | Error::Io(_) => MgaStatus::Internal,
        Error::InvalidArgument(_) => MgaStatus::InvalidArgument,
    }
}

struct Fail(MgaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MgaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MgaStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MgaStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(MgaStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MgaStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(MgaStatus::NullPointer, format!("{name} is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(MgaStatus::NullPointer, format!("{name} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

fn model(m: MgaModel) -> Model {
    match m {
        MgaModel::MgStack => Model::MgStack,
        MgaModel::PsPullback => Model::PsPullback,
        MgaModel::CoarseDagger => Model::CoarseDagger,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mga_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mga_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `K + αδ` in the chosen model; `alpha` is a "p/q" string.
///
/// # Safety
/// `alpha` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_log_canonical(
    genus: u32,
    alpha: *const c_char,
    m: MgaModel,
    out: *mut *mut MgaDivisorClass,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let a = rational::parse(str_arg(alpha, "alpha")?)?;
        let d = log_canonical_divisor(Genus::new(genus)?, &a, model(m))?;
        *out = Box::into_raw(Box::new(MgaDivisorClass(d)));
        Ok(())
    })
}

/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_from_json(
    json: *const c_char,
    out: *mut *mut MgaDivisorClass,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let d = DivisorClass::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(MgaDivisorClass(d)));
        Ok(())
    })
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_to_json(
    d: *const MgaDivisorClass,
    out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = c_string(handle(d, "d")?.0.to_json());
        Ok(())
    })
}

/// Pairing with the elliptic-tail ray, as a "p/q" string.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_pair_with_ray(
    d: *const MgaDivisorClass,
    out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = c_string(rational::format(&pair_with_ray(&handle(d, "d")?.0)));
        Ok(())
    })
}

/// F-curve nefness check. `json_out` may be NULL; otherwise it receives the
/// full verdict as JSON.
///
/// # Safety
/// `d` must be a live handle, `verdict` a valid pointer, `json_out` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_nef_check(
    d: *const MgaDivisorClass,
    verdict: *mut MgaNef,
    json_out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let verdict = out_arg(verdict, "verdict")?;
        let v = gkm_nef_check(&handle(d, "d")?.0);
        *verdict = match v {
            NefVerdict::Nef { .. } => MgaNef::Nef,
            NefVerdict::NotNef { .. } => MgaNef::NotNef,
            NefVerdict::Inapplicable { .. } => MgaNef::Inapplicable,
        };
        if let Some(out) = json_out.as_mut() {
            *out = c_string(serde_json_string(&v)?);
        }
        Ok(())
    })
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail::from(Error::from(e)))
}

/// # Safety
/// `d` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mga_divisor_free(d: *mut MgaDivisorClass) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Phase report (walls and contracted strata) as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_phase_report(
    genus: u32,
    m: MgaModel,
    out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let report = critical_alphas(Genus::new(genus)?, model(m))?;
        *out = c_string(serde_json_string(&report)?);
        Ok(())
    })
}

/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_from_json(
    json: *const c_char,
    out: *mut *mut MgaCurveGraph,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let g = CurveGraph::from_json(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(MgaCurveGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_to_json(
    g: *const MgaCurveGraph,
    out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = c_string(handle(g, "g")?.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_genus(g: *const MgaCurveGraph, out: *mut u32) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = arithmetic_genus(&handle(g, "g")?.0)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_is_stable(g: *const MgaCurveGraph, out: *mut bool) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = is_stable(&handle(g, "g")?.0).holds;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_is_pseudostable(
    g: *const MgaCurveGraph,
    out: *mut bool,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = is_pseudostable(&handle(g, "g")?.0).holds;
        Ok(())
    })
}

/// Replace every elliptic tail by a cusp; the result is a new handle.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_t_transform(
    g: *const MgaCurveGraph,
    out: *mut *mut MgaCurveGraph,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let t = t_transform(&handle(g, "g")?.0)?;
        *out = Box::into_raw(Box::new(MgaCurveGraph(t)));
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_t_equivalent(
    a: *const MgaCurveGraph,
    b: *const MgaCurveGraph,
    out: *mut bool,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = t_equivalent(&handle(a, "a")?.0, &handle(b, "b")?.0)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mga_graph_free(g: *mut MgaCurveGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_rank_kn(genus: u32, n: u32, out: *mut u64) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = rank_kn(Genus::new(genus)?, n)?;
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_h0_twisted(
    g_d: u32,
    r: u32,
    n: u32,
    a: u32,
    out: *mut u64,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = h0_twisted(g_d, r, n, a)?;
        Ok(())
    })
}

/// `(e − 1 + a)/e` as a "p/q" string.
///
/// # Safety
/// `a` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mga_coarse_coefficient(
    e: u64,
    a: *const c_char,
    out: *mut *mut c_char,
) -> MgaStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let a = rational::parse(str_arg(a, "a")?)?;
        *out = c_string(rational::format(&coarse_coefficient(
            &RamifiedBoundary::new(e, a)?,
        )));
        Ok(())
    })
}

/// Runs the floor-identity sweep; `failures` receives the number of failing cases.
///
/// # Safety
/// `cases` and `failures` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mga_floor_sweep(
    m_max: u64,
    e_max: u64,
    q_max: u64,
    cases: *mut u64,
    failures: *mut u64,
) -> MgaStatus {
    guard(|| {
        let cases = out_arg(cases, "cases")?;
        let failures = out_arg(failures, "failures")?;
        let s = floor_identity_sweep(m_max, e_max, q_max);
        *cases = s.cases;
        *failures = s.failures.len() as u64;
        Ok(())
    })
}
