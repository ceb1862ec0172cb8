//! C interface. Digraphs and covers are opaque heap handles; every fallible
//! call returns a `TcStatus` and leaves a message for `tc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tempocover::cli::{solve, Method, Problem};
use tempocover::connectivity::max_temporal_antichain;
use tempocover::io::{parse_instance, write_cover};
use tempocover::oracle::OracleConfig;
use tempocover::{Error, GraphClass, PathCover, TemporalDigraph};

/// Opaque temporal digraph.
pub struct TcDigraph(TemporalDigraph);

/// Opaque path cover.
pub struct TcCover(PathCover);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Class = 3,
    Resource = 4,
    Domain = 5,
    OutOfRange = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcProblem {
    Tpc = 0,
    Tdpc = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcMethod {
    Auto = 0,
    Tree = 1,
    Dp = 2,
    Oracle = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcClass {
    General = 0,
    Dag = 1,
    OrientedTree = 2,
    RootedDirectedTree = 3,
    OrientedLine = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: Error) -> TcStatus {
    let status = match &e {
        Error::Parse { .. } | Error::Malformed(_) | Error::Json(_) => TcStatus::Parse,
        Error::Class { .. } => TcStatus::Class,
        Error::Resource(_) => TcStatus::Resource,
        Error::Domain(_) | Error::Io(_) => TcStatus::Domain,
    };
    set_error(e.to_string());
    status
}

fn null_arg(name: &str) -> TcStatus {
    set_error(format!("{name} is null"));
    TcStatus::NullArgument
}

/// Message describing the last failure on this thread. Valid until the next
/// call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a digraph on `n` vertices from `count` parallel arrays entries
/// `(tails[i], heads[i], labels[i])`. Repeated `(tail, head)` pairs merge
/// their labels.
///
/// # Safety
/// The three arrays must each hold `count` readable elements (they may be
/// null when `count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_digraph_from_arcs(
    n: usize,
    tails: *const usize,
    heads: *const usize,
    labels: *const u32,
    count: usize,
    out: *mut *mut TcDigraph,
) -> TcStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if count > 0 && (tails.is_null() || heads.is_null() || labels.is_null()) {
        return null_arg("arc arrays");
    }
    let (tails, heads, labels) = if count == 0 {
        (&[][..], &[][..], &[][..])
    } else {
        (
            std::slice::from_raw_parts(tails, count),
            std::slice::from_raw_parts(heads, count),
            std::slice::from_raw_parts(labels, count),
        )
    };
    let arcs = (0..count).map(|i| (tails[i], heads[i], vec![labels[i]]));
    match TemporalDigraph::from_arcs(n, arcs) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(TcDigraph(d)));
            TcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Parses `.tg` text or the JSON form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_digraph_parse(text: *const c_char, out: *mut *mut TcDigraph) -> TcStatus {
    if text.is_null() {
        return null_arg("text");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(e) => {
            set_error(format!("input is not UTF-8: {e}"));
            return TcStatus::Parse;
        }
    };
    match parse_instance(text) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(TcDigraph(d)));
            TcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `d` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tc_digraph_free(d: *mut TcDigraph) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `d` must be null or a live digraph handle.
#[no_mangle]
pub unsafe extern "C" fn tc_digraph_vertex_count(d: *const TcDigraph) -> usize {
    d.as_ref().map_or(0, |d| d.0.n())
}

/// # Safety
/// `d` must be a live digraph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_digraph_class(d: *const TcDigraph, out: *mut TcClass) -> TcStatus {
    let Some(d) = d.as_ref() else { return null_arg("digraph") };
    if out.is_null() {
        return null_arg("out");
    }
    *out = match d.0.classify() {
        GraphClass::General => TcClass::General,
        GraphClass::Dag => TcClass::Dag,
        GraphClass::OrientedTree => TcClass::OrientedTree,
        GraphClass::RootedDirectedTree => TcClass::RootedDirectedTree,
        GraphClass::OrientedLine => TcClass::OrientedLine,
    };
    TcStatus::Ok
}

/// Size of a maximum temporal antichain.
///
/// # Safety
/// `d` must be a live digraph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_antichain_size(d: *const TcDigraph, out: *mut usize) -> TcStatus {
    let Some(d) = d.as_ref() else { return null_arg("digraph") };
    if out.is_null() {
        return null_arg("out");
    }
    match max_temporal_antichain(&d.0) {
        Ok(a) => {
            *out = a.len();
            TcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Minimum cover. The oracle bound follows `TEMPOCOVER_ORACLE_MAX_N`.
///
/// # Safety
/// `d` must be a live digraph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_solve(
    d: *const TcDigraph,
    problem: TcProblem,
    method: TcMethod,
    out: *mut *mut TcCover,
) -> TcStatus {
    let Some(d) = d.as_ref() else { return null_arg("digraph") };
    if out.is_null() {
        return null_arg("out");
    }
    let problem = match problem {
        TcProblem::Tpc => Problem::Tpc,
        TcProblem::Tdpc => Problem::Tdpc,
    };
    let method = match method {
        TcMethod::Auto => Method::Auto,
        TcMethod::Tree => Method::Tree,
        TcMethod::Dp => Method::Dp,
        TcMethod::Oracle => Method::Oracle,
    };
    match solve(&d.0, problem, method, &OracleConfig::from_env()) {
        Ok((_, cover)) => {
            *out = Box::into_raw(Box::new(TcCover(cover)));
            TcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `c` must come from `tc_solve` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tc_cover_free(c: *mut TcCover) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of paths, or 0 for null.
///
/// # Safety
/// `c` must be null or a live cover handle.
#[no_mangle]
pub unsafe extern "C" fn tc_cover_len(c: *const TcCover) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Copies the vertices of path `index` into `buf` (capacity `cap`) and
/// stores the vertex count in `len`. When `cap` is too small nothing is
/// copied, `len` still receives the count and `OUT_OF_RANGE` is returned.
///
/// # Safety
/// `c` must be a live cover handle, `buf` must hold `cap` writable elements
/// (may be null when `cap` is 0) and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_cover_path(
    c: *const TcCover,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> TcStatus {
    let Some(c) = c.as_ref() else { return null_arg("cover") };
    if len.is_null() {
        return null_arg("len");
    }
    let Some(path) = c.0.paths.get(index) else {
        set_error(format!("path {index} out of range, cover has {}", c.0.len()));
        return TcStatus::OutOfRange;
    };
    let vs = path.vertices();
    *len = vs.len();
    if cap < vs.len() {
        set_error(format!("buffer holds {cap} vertices, path has {}", vs.len()));
        return TcStatus::OutOfRange;
    }
    if buf.is_null() {
        return null_arg("buf");
    }
    ptr::copy_nonoverlapping(vs.as_ptr(), buf, vs.len());
    TcStatus::Ok
}

/// Cover as JSON; release with `tc_string_free`. Null on a null handle.
///
/// # Safety
/// `c` must be null or a live cover handle.
#[no_mangle]
pub unsafe extern "C" fn tc_cover_to_json(c: *const TcCover) -> *mut c_char {
    let Some(c) = c.as_ref() else {
        set_error("cover is null");
        return ptr::null_mut();
    };
    CString::new(write_cover(&c.0)).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from `tc_cover_to_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
