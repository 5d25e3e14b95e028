//! C ABI for ctxsem.
//!
//! Objects are opaque handles created by `*_new`/`*_parse`/`*_load`
//! functions and released with the matching `*_free`. Every fallible
//! function returns a `CtxsemStatus` and writes results through out
//! pointers; on failure `ctxsem_last_error` describes the error for the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use ctxsem::algebras::{parse_word_table, ContextTheory};
use ctxsem::docproj::DocumentIndex;
use ctxsem::lattice::{self, Norm};
use ctxsem::lda::{self, LdaModel, McConfig};
use ctxsem::pregroup::ComplexType;
use ctxsem::{Error, SparseVec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtxsemStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    InputError = 4,
    UnknownWord = 5,
    ZeroAntecedent = 6,
    NotPositive = 7,
    ModelError = 8,
    Panic = 9,
}

pub const CTXSEM_NORM_L1: u32 = 1;
pub const CTXSEM_NORM_L2: u32 = 2;
pub const CTXSEM_NORM_INF: u32 = 0;

pub const CTXSEM_PRODUCT_POINTWISE: u32 = 0;
pub const CTXSEM_PRODUCT_ADDITIVE: u32 = 1;
pub const CTXSEM_PRODUCT_TENSOR: u32 = 2;

pub struct CtxsemVector(SparseVec);
pub struct CtxsemTheory(ContextTheory);
pub struct CtxsemDocIndex(DocumentIndex);
pub struct CtxsemLdaModel(LdaModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CtxsemStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnknownWord(_) => CtxsemStatus::UnknownWord,
            Error::ZeroAntecedent => CtxsemStatus::ZeroAntecedent,
            Error::NotPositive { .. } => CtxsemStatus::NotPositive,
            ref e if e.is_input_error() => CtxsemStatus::InputError,
            _ => CtxsemStatus::ModelError,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CtxsemStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CtxsemStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CtxsemStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(CtxsemStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or_else(|| null(name))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure(CtxsemStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    unsafe { put(out, Box::into_raw(Box::new(value)), "out") }
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

fn words(s: &str) -> Vec<String> {
    ctxsem::tokenize(s, false)
}

/// Error message from the most recent call on this thread, or null if that
/// call succeeded. Valid until the next ctxsem call on the same thread.
#[no_mangle]
pub extern "C" fn ctxsem_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Vector with coordinate `i` on axis `i`.
///
/// # Safety
/// `coords` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_from_axes(
    coords: *const f64,
    len: usize,
    out: *mut *mut CtxsemVector,
) -> CtxsemStatus {
    guard(|| {
        let c = if len == 0 {
            &[][..]
        } else if coords.is_null() {
            return Err(null("coords"));
        } else {
            unsafe { std::slice::from_raw_parts(coords, len) }
        };
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Failure(
                CtxsemStatus::InvalidArgument,
                "coordinates must be finite".into(),
            ));
        }
        unsafe { put_handle(out, CtxsemVector(SparseVec::from_axes(c))) }
    })
}

/// Parses the inline syntax, e.g. `axis:0=1,axis:2=0.5`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_parse(
    s: *const c_char,
    out: *mut *mut CtxsemVector,
) -> CtxsemStatus {
    guard(|| {
        let v = lattice::parse_inline(unsafe { text(s, "s") }?, 1)?;
        unsafe { put_handle(out, CtxsemVector(v)) }
    })
}

/// Inline rendering of `v`; free with `ctxsem_string_free`.
///
/// # Safety
/// `v` must be a live vector handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_to_string(
    v: *const CtxsemVector,
    out: *mut *mut c_char,
) -> CtxsemStatus {
    guard(|| {
        let v = unsafe { borrow(v, "v") }?;
        let s = CString::new(lattice::format_inline(&v.0)).unwrap_or_default();
        unsafe { put(out, s.into_raw(), "out") }
    })
}

/// # Safety
/// `v` must be null or a vector handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_free(v: *mut CtxsemVector) {
    unsafe { free(v) }
}

/// # Safety
/// `v` must be a live vector handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_coefficient(
    v: *const CtxsemVector,
    axis: u64,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let v = unsafe { borrow(v, "v") }?;
        unsafe { put(out, v.0.get(&ctxsem::BasisKey::Axis(axis)), "out") }
    })
}

unsafe fn binary(
    u: *const CtxsemVector,
    v: *const CtxsemVector,
    out: *mut *mut CtxsemVector,
    op: fn(&SparseVec, &SparseVec) -> SparseVec,
) -> CtxsemStatus {
    guard(|| {
        let (u, v) = unsafe { (borrow(u, "u")?, borrow(v, "v")?) };
        unsafe { put_handle(out, CtxsemVector(op(&u.0, &v.0))) }
    })
}

/// Coordinatewise minimum.
///
/// # Safety
/// `u` and `v` must be live vector handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_meet(
    u: *const CtxsemVector,
    v: *const CtxsemVector,
    out: *mut *mut CtxsemVector,
) -> CtxsemStatus {
    unsafe { binary(u, v, out, lattice::meet) }
}

/// Coordinatewise maximum.
///
/// # Safety
/// `u` and `v` must be live vector handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_join(
    u: *const CtxsemVector,
    v: *const CtxsemVector,
    out: *mut *mut CtxsemVector,
) -> CtxsemStatus {
    unsafe { binary(u, v, out, lattice::join) }
}

/// `kind` is one of the `CTXSEM_NORM_*` constants.
///
/// # Safety
/// `v` must be a live vector handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_norm(
    v: *const CtxsemVector,
    kind: u32,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let v = unsafe { borrow(v, "v") }?;
        let p = match kind {
            CTXSEM_NORM_L1 => Norm::L1,
            CTXSEM_NORM_L2 => Norm::L2,
            CTXSEM_NORM_INF => Norm::Inf,
            k => {
                return Err(Failure(
                    CtxsemStatus::InvalidArgument,
                    format!("unknown norm {k}"),
                ))
            }
        };
        unsafe { put(out, lattice::norm(&v.0, p), "out") }
    })
}

/// `‖u ∧ v‖₁ / ‖u‖₁` for positive `u` and `v`.
///
/// # Safety
/// `u` and `v` must be live vector handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_vector_entailment(
    u: *const CtxsemVector,
    v: *const CtxsemVector,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let (u, v) = unsafe { (borrow(u, "u")?, borrow(v, "v")?) };
        let d = lattice::degree_of_entailment(&u.0, &v.0)?;
        unsafe { put(out, d, "out") }
    })
}

/// Theory over a word table (`word<TAB>c0<TAB>c1..` lines). `product` is one
/// of the `CTXSEM_PRODUCT_*` constants.
///
/// # Safety
/// `table` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_theory_from_table(
    table: *const c_char,
    product: u32,
    out: *mut *mut CtxsemTheory,
) -> CtxsemStatus {
    guard(|| {
        let t = parse_word_table(unsafe { text(table, "table") }?)?;
        let theory = match product {
            CTXSEM_PRODUCT_POINTWISE => ContextTheory::pointwise(t)?,
            CTXSEM_PRODUCT_ADDITIVE => ContextTheory::additive(t)?,
            CTXSEM_PRODUCT_TENSOR => ContextTheory::tensor(t)?,
            k => {
                return Err(Failure(
                    CtxsemStatus::InvalidArgument,
                    format!("unknown product {k}"),
                ))
            }
        };
        unsafe { put_handle(out, CtxsemTheory(theory)) }
    })
}

/// Degree to which the whitespace-separated string `x` entails `y`.
///
/// # Safety
/// `theory` must be a live handle; `x` and `y` NUL-terminated strings;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_theory_entail(
    theory: *const CtxsemTheory,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let t = unsafe { borrow(theory, "theory") }?;
        let (x, y) = unsafe { (words(text(x, "x")?), words(text(y, "y")?)) };
        let d = t.0.string_entailment(&x, &y)?;
        unsafe { put(out, d, "out") }
    })
}

/// # Safety
/// `t` must be null or a theory handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_theory_free(t: *mut CtxsemTheory) {
    unsafe { free(t) }
}

/// Index over a corpus with one document per line.
///
/// # Safety
/// `corpus` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_docindex_new(
    corpus: *const c_char,
    out: *mut *mut CtxsemDocIndex,
) -> CtxsemStatus {
    guard(|| {
        let docs = ctxsem::context::parse_corpus(unsafe { text(corpus, "corpus") }?, false);
        let idx = DocumentIndex::from_corpus(&docs)?;
        unsafe { put_handle(out, CtxsemDocIndex(idx)) }
    })
}

/// Fraction of documents containing every word of `x` that also contain
/// every word of `y`.
///
/// # Safety
/// `index` must be a live handle; `x` and `y` NUL-terminated strings;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_docindex_entail(
    index: *const CtxsemDocIndex,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let idx = unsafe { borrow(index, "index") }?;
        let (x, y) = unsafe { (words(text(x, "x")?), words(text(y, "y")?)) };
        let d = idx.0.entail(&x, &y)?;
        unsafe { put(out, d, "out") }
    })
}

/// # Safety
/// `index` must be null or an index handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_docindex_free(index: *mut CtxsemDocIndex) {
    unsafe { free(index) }
}

/// Loads a model file written by `ctxsem lda-train`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_lda_load(
    path: *const c_char,
    out: *mut *mut CtxsemLdaModel,
) -> CtxsemStatus {
    guard(|| {
        let p = Path::new(unsafe { text(path, "path") }?);
        let s = std::fs::read_to_string(p)
            .map_err(|e| Failure(CtxsemStatus::InputError, format!("{}: {e}", p.display())))?;
        unsafe { put_handle(out, CtxsemLdaModel(LdaModel::parse_tsv(&s)?)) }
    })
}

/// Parses model text in the `lda-train` file format.
///
/// # Safety
/// `model` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_lda_parse(
    model: *const c_char,
    out: *mut *mut CtxsemLdaModel,
) -> CtxsemStatus {
    guard(|| {
        let m = LdaModel::parse_tsv(unsafe { text(model, "model") }?)?;
        unsafe { put_handle(out, CtxsemLdaModel(m)) }
    })
}

/// Monte Carlo estimate of the probability that a document of
/// `doc_length` words contains every word of `words`, from `samples`
/// topic draws.
///
/// # Safety
/// `model` must be a live handle; `words` a NUL-terminated string;
/// `estimate` writable; `std_error` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_lda_phi(
    model: *const CtxsemLdaModel,
    words_: *const c_char,
    doc_length: u64,
    samples: usize,
    seed: u64,
    estimate: *mut f64,
    std_error: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let m = unsafe { borrow(model, "model") }?;
        let w = words(unsafe { text(words_, "words") }?);
        let cfg = McConfig {
            samples,
            doc_length,
            seed,
        };
        let e = lda::phi_projection(&m.0, &w, &cfg)?;
        unsafe { put(estimate, e.estimate, "estimate") }?;
        if !std_error.is_null() {
            unsafe { std_error.write(e.std_error) };
        }
        Ok(())
    })
}

/// # Safety
/// `model` must be a live handle; `x` and `y` NUL-terminated strings;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_lda_entail(
    model: *const CtxsemLdaModel,
    x: *const c_char,
    y: *const c_char,
    doc_length: u64,
    samples: usize,
    seed: u64,
    out: *mut f64,
) -> CtxsemStatus {
    guard(|| {
        let m = unsafe { borrow(model, "model") }?;
        let (x, y) = unsafe { (words(text(x, "x")?), words(text(y, "y")?)) };
        let cfg = McConfig {
            samples,
            doc_length,
            seed,
        };
        let d = lda::entail_lda(&m.0, &x, &y, &cfg)?;
        unsafe { put(out, d, "out") }
    })
}

/// # Safety
/// `model` must be null or a model handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_lda_free(model: *mut CtxsemLdaModel) {
    unsafe { free(model) }
}

/// Sets `*out` to 1 if `ty` reduces to `target`, else 0. Types use the
/// syntax `pi pi^r s o^l o`.
///
/// # Safety
/// `ty` and `target` must be NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ctxsem_pregroup_reduces(
    ty: *const c_char,
    target: *const c_char,
    out: *mut c_int,
) -> CtxsemStatus {
    guard(|| {
        let parse = |s: &str| {
            s.parse::<ComplexType>()
                .map_err(|e| Failure(CtxsemStatus::InputError, e.to_string()))
        };
        let t = parse(unsafe { text(ty, "ty") }?)?;
        let target = parse(unsafe { text(target, "target") }?)?;
        unsafe { put(out, c_int::from(t.reduces_to(&target).is_some()), "out") }
    })
}
