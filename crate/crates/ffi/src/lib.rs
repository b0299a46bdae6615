//! C ABI over `qgl2-core`.
//!
//! Objects are opaque handles created by `qgl2_*` constructors and released
//! with the matching `*_free`. Every fallible call returns a [`Qgl2Status`];
//! on failure a message is available from [`qgl2_last_error`] on the same
//! thread. Strings handed out by the library are NUL-terminated UTF-8 and must
//! be released with [`qgl2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qgl2_core::classify::{classify, CaseTag, Classification, PlaneParams};
use qgl2_core::field::{Rational, Scalar};
use qgl2_core::matrixalg::{check_similarity, manin_relations, ManinRelationSet};
use qgl2_core::plane::{dj_plane, input_plane, jordanian_plane, Plane};
use qgl2_core::report::Report;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qgl2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    OutOfRange = 5,
    /// The requested value does not exist for this outcome (e.g. `p` of a
    /// Jordanian classification).
    NotAvailable = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qgl2Case {
    DrinfeldJimbo = 0,
    Jordanian = 1,
    Classical = 2,
    Degenerate = 3,
}

impl From<CaseTag> for Qgl2Case {
    fn from(tag: CaseTag) -> Self {
        match tag {
            CaseTag::DrinfeldJimbo => Qgl2Case::DrinfeldJimbo,
            CaseTag::Jordanian => Qgl2Case::Jordanian,
            CaseTag::Classical => Qgl2Case::Classical,
            CaseTag::Degenerate => Qgl2Case::Degenerate,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qgl2Parameter {
    Q = 0,
    P = 1,
    H = 2,
    HPrime = 3,
    PReciprocal = 4,
    Discriminant = 5,
}

/// Result of classifying one `(h0, r0, p0)` triple.
pub struct Qgl2Classification {
    inner: Classification,
}

pub struct Qgl2Plane {
    inner: Plane,
}

pub struct Qgl2RelationSet {
    inner: ManinRelationSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

type FfiResult<T> = Result<T, (Qgl2Status, String)>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> Qgl2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Qgl2Status::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Qgl2Status::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> FfiResult<&'a str> {
    if ptr.is_null() {
        return Err((Qgl2Status::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| (Qgl2Status::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn read_rational(ptr: *const c_char, name: &str) -> FfiResult<Rational> {
    let text = read_str(ptr, name)?;
    text.parse().map_err(|e| (Qgl2Status::ParseError, format!("`{name}`: {e}")))
}

unsafe fn handle<'a, T>(ptr: *const T, name: &str) -> FfiResult<&'a T> {
    ptr.as_ref().ok_or_else(|| (Qgl2Status::NullPointer, format!("`{name}` is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err((Qgl2Status::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior NUL").into_raw()
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the most recent failed call on this thread. Owned by the
/// library; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qgl2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qgl2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Classifies the plane `xi^2 = h0 xi eta, eta^2 = r0 xi eta, eta xi = -p0 xi eta`.
/// Parameters use the rational syntax `[-]digits[/digits]`.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out` must
/// be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classify(
    h0: *const c_char,
    r0: *const c_char,
    p0: *const c_char,
    out: *mut *mut Qgl2Classification,
) -> Qgl2Status {
    guard(|| {
        let params = PlaneParams::new(read_rational(h0, "h0")?, read_rational(r0, "r0")?, read_rational(p0, "p0")?);
        let c = classify(&params);
        write_out(out, boxed(Qgl2Classification { inner: c }))
    })
}

/// # Safety
/// `c` must be null or a handle from [`qgl2_classify`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_free(c: *mut Qgl2Classification) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_case(c: *const Qgl2Classification, out: *mut Qgl2Case) -> Qgl2Status {
    guard(|| write_out(out, handle(c, "classification")?.inner.case_tag.into()))
}

/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_verified(c: *const Qgl2Classification, out: *mut bool) -> Qgl2Status {
    guard(|| write_out(out, handle(c, "classification")?.inner.verified))
}

/// Writes a newly allocated string with the requested value, or returns
/// `NotAvailable` when the outcome has no such parameter.
///
/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_parameter(
    c: *const Qgl2Classification,
    which: Qgl2Parameter,
    out: *mut *mut c_char,
) -> Qgl2Status {
    guard(|| {
        let c = &handle(c, "classification")?.inner;
        let value: Option<Scalar> = match (which, c.case_tag) {
            (Qgl2Parameter::Discriminant, _) => Some(c.discriminant.clone()),
            (_, CaseTag::Degenerate) => None,
            (Qgl2Parameter::Q, CaseTag::DrinfeldJimbo | CaseTag::Classical) => Some(c.q.clone()),
            (Qgl2Parameter::P, CaseTag::DrinfeldJimbo | CaseTag::Classical) => c.p.clone(),
            (Qgl2Parameter::H, CaseTag::Jordanian | CaseTag::Classical) => Some(c.h.clone()),
            (Qgl2Parameter::HPrime, CaseTag::Jordanian | CaseTag::Classical) => c.h_prime.clone(),
            (Qgl2Parameter::PReciprocal, _) => c.reciprocal_p(),
            _ => None,
        };
        let value =
            value.ok_or_else(|| (Qgl2Status::NotAvailable, format!("{which:?} not defined for {}", c.case_tag)))?;
        write_out(out, into_c_string(value.to_string()))
    })
}

/// Entry `(row, col)` of the change of generators, rows giving the new
/// differentials in terms of `xi, eta`.
///
/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_transform_entry(
    c: *const Qgl2Classification,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> Qgl2Status {
    guard(|| {
        let c = &handle(c, "classification")?.inner;
        if row > 1 || col > 1 {
            return Err((Qgl2Status::OutOfRange, format!("entry ({row}, {col}) outside 2x2")));
        }
        let s = c.transform.as_ref().ok_or_else(|| (Qgl2Status::NotAvailable, "no transformation".to_string()))?;
        write_out(out, into_c_string(s.entry(row, col).to_string()))
    })
}

/// Runs the quantum-matrix similarity check for the classification.
///
/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_check_similarity(
    c: *const Qgl2Classification,
    out: *mut bool,
) -> Qgl2Status {
    guard(|| {
        let c = &handle(c, "classification")?.inner;
        let (Some(s), Some(target)) = (&c.transform, c.canonical_plane()) else {
            return Err((Qgl2Status::NotAvailable, "degenerate outcome has no transformation".into()));
        };
        write_out(out, check_similarity(&c.params.plane(), &target, s).holds)
    })
}

/// The JSON report produced by `qgl2 classify --json`.
///
/// # Safety
/// `c` must be a live classification handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_classification_report_json(
    c: *const Qgl2Classification,
    with_similarity: bool,
    out: *mut *mut c_char,
) -> Qgl2Status {
    guard(|| {
        let c = &handle(c, "classification")?.inner;
        let similarity = match (&c.transform, c.canonical_plane()) {
            (Some(s), Some(target)) if with_similarity => Some(check_similarity(&c.params.plane(), &target, s)),
            _ => None,
        };
        write_out(out, into_c_string(Report::new(c, similarity.as_ref()).to_json()))
    })
}

/// Drinfeld-Jimbo plane for `GL_{q,p}(2)`; `q` must be non-zero.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_plane_drinfeld_jimbo(
    q: *const c_char,
    p: *const c_char,
    out: *mut *mut Qgl2Plane,
) -> Qgl2Status {
    guard(|| {
        let q = Scalar::rational(read_rational(q, "q")?);
        let p = Scalar::rational(read_rational(p, "p")?);
        let plane = dj_plane(q, p).map_err(|e| (Qgl2Status::InvalidArgument, e.to_string()))?;
        write_out(out, boxed(Qgl2Plane { inner: plane }))
    })
}

/// Jordanian plane for `GL_{h,h'}(2)`.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_plane_jordanian(
    h: *const c_char,
    h_prime: *const c_char,
    out: *mut *mut Qgl2Plane,
) -> Qgl2Status {
    guard(|| {
        let h = Scalar::rational(read_rational(h, "h")?);
        let h_prime = Scalar::rational(read_rational(h_prime, "h_prime")?);
        write_out(out, boxed(Qgl2Plane { inner: jordanian_plane(h, h_prime) }))
    })
}

/// Input plane with commutative coordinates and parameters `(h0, r0, p0)`.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_plane_input(
    h0: *const c_char,
    r0: *const c_char,
    p0: *const c_char,
    out: *mut *mut Qgl2Plane,
) -> Qgl2Status {
    guard(|| {
        let h0 = Scalar::rational(read_rational(h0, "h0")?);
        let r0 = Scalar::rational(read_rational(r0, "r0")?);
        let p0 = Scalar::rational(read_rational(p0, "p0")?);
        write_out(out, boxed(Qgl2Plane { inner: input_plane(h0, r0, p0) }))
    })
}

/// `plane(alpha=..., beta=..., A=..., B=..., C=...)`.
///
/// # Safety
/// `plane` must be a live plane handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_plane_to_string(plane: *const Qgl2Plane, out: *mut *mut c_char) -> Qgl2Status {
    guard(|| write_out(out, into_c_string(handle(plane, "plane")?.inner.to_string())))
}

/// # Safety
/// `plane` must be null or a handle from a `qgl2_plane_*` constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qgl2_plane_free(plane: *mut Qgl2Plane) {
    if !plane.is_null() {
        drop(Box::from_raw(plane));
    }
}

/// Canonical basis of the degree-2 quantum-matrix relations of `plane`.
///
/// # Safety
/// `plane` must be a live plane handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_manin_relations(plane: *const Qgl2Plane, out: *mut *mut Qgl2RelationSet) -> Qgl2Status {
    guard(|| {
        let set = manin_relations(&handle(plane, "plane")?.inner);
        write_out(out, boxed(Qgl2RelationSet { inner: set }))
    })
}

/// Number of relations; 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live relation-set handle.
#[no_mangle]
pub unsafe extern "C" fn qgl2_relation_set_len(set: *const Qgl2RelationSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.dim())
}

/// Relation `index` rendered as a signed sum of words, e.g. `ab - ba`.
///
/// # Safety
/// `set` must be a live relation-set handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qgl2_relation_set_get(
    set: *const Qgl2RelationSet,
    index: usize,
    out: *mut *mut c_char,
) -> Qgl2Status {
    guard(|| {
        let set = &handle(set, "relation set")?.inner;
        let relation = set
            .relations()
            .get(index)
            .ok_or_else(|| (Qgl2Status::OutOfRange, format!("index {index} >= {}", set.dim())))?;
        write_out(out, into_c_string(relation.to_string()))
    })
}

/// # Safety
/// `set` must be null or a handle from [`qgl2_manin_relations`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qgl2_relation_set_free(set: *mut Qgl2RelationSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}
