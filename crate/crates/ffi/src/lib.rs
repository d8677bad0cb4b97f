//! C ABI for `lambda-dcs`.
//!
//! Knowledge bases live behind an opaque [`DcsKb`] handle. Every call
//! returns a [`DcsStatus`]; on failure the message is available from
//! [`dcs_last_error`] on the same thread. Strings handed out by the library
//! are NUL-terminated UTF-8 and must be released with [`dcs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use lambda_dcs::cli::{load_kb, render_json};
use lambda_dcs::oracle::check_many;
use lambda_dcs::{
    compile_sparql, convert, eval_unary, parse, parse_with_kb, to_lc_unary, DcsError, Env, KnowledgeBase,
};

/// A loaded knowledge base.
pub struct DcsKb {
    kb: KnowledgeBase,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    KbError = 3,
    ParseError = 4,
    ResolveError = 5,
    EvalError = 6,
    Unsupported = 7,
    Mismatch = 8,
    Panic = 9,
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

type Failure = (DcsStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DcsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DcsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((DcsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (DcsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn kb_ref<'a>(kb: *const DcsKb) -> Result<&'a KnowledgeBase, Failure> {
    kb.as_ref().map(|h| &h.kb).ok_or((DcsStatus::NullArgument, "kb is null".to_string()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((DcsStatus::NullArgument, "output pointer is null".to_string()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| (DcsStatus::Panic, "result contains NUL".to_string()))?;
    if out.is_null() {
        return Err((DcsStatus::NullArgument, "output pointer is null".to_string()));
    }
    out.write(s.into_raw());
    Ok(())
}

fn dcs_failure(e: DcsError) -> Failure {
    let status = match e {
        DcsError::Parse(_) => DcsStatus::ParseError,
        DcsError::Resolve(_) => DcsStatus::ResolveError,
    };
    (status, e.to_string())
}

fn boxed(kb: KnowledgeBase) -> *mut DcsKb {
    Box::into_raw(Box::new(DcsKb { kb }))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dcs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Loads a tab-separated triples file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_kb_load_file(path: *const c_char, out: *mut *mut DcsKb) -> DcsStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let kb = load_kb(Some(Path::new(path))).map_err(|m| (DcsStatus::KbError, m))?;
        write_out(out, boxed(kb))
    })
}

/// Parses triples from an in-memory TSV string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_kb_load_str(text: *const c_char, out: *mut *mut DcsKb) -> DcsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let kb = KnowledgeBase::parse(text).map_err(|e| (DcsStatus::KbError, e.to_string()))?;
        write_out(out, boxed(kb))
    })
}

/// The bundled demo knowledge base.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_kb_demo(out: *mut *mut DcsKb) -> DcsStatus {
    guard(|| write_out(out, boxed(KnowledgeBase::demo())))
}

/// Number of distinct triples, or 0 for a null handle.
///
/// # Safety
/// `kb` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dcs_kb_len(kb: *const DcsKb) -> usize {
    kb.as_ref().map_or(0, |h| h.kb.len())
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `kb` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dcs_kb_free(kb: *mut DcsKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Evaluates `query` and writes its denotation as a JSON array.
///
/// # Safety
/// `kb` must be a live handle, `query` a NUL-terminated string and
/// `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_eval(
    kb: *const DcsKb,
    query: *const c_char,
    strict: bool,
    out_json: *mut *mut c_char,
) -> DcsStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let query = read_str(query, "query")?;
        let u = parse_with_kb(query, kb, strict).map_err(dcs_failure)?;
        let set = eval_unary(&u, kb, &Env::new()).map_err(|e| (DcsStatus::EvalError, e.to_string()))?;
        write_string(out_json, render_json(&set))
    })
}

/// Translates `query` to lambda calculus, simplified unless `raw`.
///
/// # Safety
/// `query` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_to_lc(query: *const c_char, raw: bool, out: *mut *mut c_char) -> DcsStatus {
    guard(|| {
        let u = parse(read_str(query, "query")?).map_err(dcs_failure)?;
        let t = if raw { to_lc_unary(&u) } else { convert(&u) };
        write_string(out, t.to_string())
    })
}

/// Compiles `query` to SPARQL; `prefix` may be null.
///
/// # Safety
/// `query` must be a NUL-terminated string, `prefix` null or a
/// NUL-terminated string, and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dcs_to_sparql(
    query: *const c_char,
    prefix: *const c_char,
    out: *mut *mut c_char,
) -> DcsStatus {
    guard(|| {
        let u = parse(read_str(query, "query")?).map_err(dcs_failure)?;
        let prefix = if prefix.is_null() { None } else { Some(read_str(prefix, "prefix")?) };
        let q = compile_sparql(&u, prefix).map_err(|e| (DcsStatus::Unsupported, e.to_string()))?;
        write_string(out, q)
    })
}

/// Runs the random equivalence check and writes the number of
/// disagreements; returns `Mismatch` when there is at least one.
///
/// # Safety
/// `kb` must be a live handle and `out_mismatches` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dcs_check(
    kb: *const DcsKb,
    trials: u64,
    depth: u32,
    seed: u64,
    out_mismatches: *mut u64,
) -> DcsStatus {
    guard(|| {
        let kb = kb_ref(kb)?;
        let found = check_many(kb, trials, depth as usize, seed);
        if !out_mismatches.is_null() {
            out_mismatches.write(found.len() as u64);
        }
        match found.first() {
            None => Ok(()),
            Some(m) => {
                Err((DcsStatus::Mismatch, format!("{} of {trials} trials disagree; first:\n{}", found.len(), m.report)))
            }
        }
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dcs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
