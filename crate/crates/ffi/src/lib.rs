//! C ABI over `indecomp`.
//!
//! Graphs cross the boundary as opaque [`IndecGraph`] handles. Every fallible
//! call returns an [`IndecStatus`]; on failure a description is kept per
//! thread and read with [`indec_last_error`]. Vertex ids are 0-based.
//! Strings handed out by the library are released with [`indec_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use indecomp::families::{classify_2covered, ClassId};
use indecomp::format::{parse_graph_text, sniff, to_edge_list, to_graph6};
use indecomp::indec::indecomposability_graph;
use indecomp::modular::is_indecomposable;
use indecomp::verify::{run_statement, ModeKind, Params};
use indecomp::{Error, Graph};

/// Opaque graph handle.
pub struct IndecGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    VertexOutOfRange = 4,
    LoopEdge = 5,
    SizeOutOfRange = 6,
    NotIndecomposable = 7,
    InvalidArgument = 8,
    UnknownStatement = 9,
    EnvelopeExceeded = 10,
    Anomaly = 11,
    Panic = 12,
}

/// Class of a 2-covered graph; `None` when the graph is not 2-covered.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndecClass {
    None = 0,
    P = 1,
    Q = 2,
    PMinus1 = 3,
    QMinus1 = 4,
    PMinus3 = 5,
    QMinus3 = 6,
    PMinus5 = 7,
    QMinus5 = 8,
}

impl From<ClassId> for IndecClass {
    fn from(c: ClassId) -> Self {
        match c {
            ClassId::P => IndecClass::P,
            ClassId::Q => IndecClass::Q,
            ClassId::PMinus1 => IndecClass::PMinus1,
            ClassId::QMinus1 => IndecClass::QMinus1,
            ClassId::PMinus3 => IndecClass::PMinus3,
            ClassId::QMinus3 => IndecClass::QMinus3,
            ClassId::PMinus5 => IndecClass::PMinus5,
            ClassId::QMinus5 => IndecClass::QMinus5,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndecClassification {
    pub two_covered: bool,
    /// Whether the complement, not the graph, is the class member.
    pub complemented: bool,
    /// Covering pair; `SIZE_MAX` when absent.
    pub cover_a: usize,
    pub cover_b: usize,
    pub class_id: IndecClass,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndecMode {
    Default = 0,
    Exhaustive = 1,
    Sampled = 2,
}

/// Overrides for [`indec_verify`]. Zero in `n`, `count` or `jobs` keeps the
/// statement default; `seed` applies only when `has_seed` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IndecVerifyOptions {
    pub n: usize,
    pub mode: IndecMode,
    pub has_seed: bool,
    pub seed: u64,
    pub count: u64,
    pub jobs: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> IndecStatus {
    match e {
        Error::MalformedPayload { .. } => IndecStatus::MalformedInput,
        Error::VertexOutOfRange { .. } => IndecStatus::VertexOutOfRange,
        Error::LoopEdge(_) => IndecStatus::LoopEdge,
        Error::SizeCapExceeded { .. }
        | Error::SizeTooSmall { .. }
        | Error::SizeOdd(_)
        | Error::SizeBelowClassMinimum { .. }
        | Error::SizeBelowTheoremBound { .. } => IndecStatus::SizeOutOfRange,
        Error::NotIndecomposable | Error::BaseNotIndecomposable => IndecStatus::NotIndecomposable,
        Error::UnknownStatement(_) => IndecStatus::UnknownStatement,
        Error::EnvelopeExceeded { .. } => IndecStatus::EnvelopeExceeded,
        Error::Anomaly(_) => IndecStatus::Anomaly,
        _ => IndecStatus::InvalidArgument,
    }
}

struct Fail(IndecStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(IndecStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, recording the error message and mapping panics to `Panic`.
fn guarded(f: impl FnOnce() -> Result<(), Fail>) -> IndecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            IndecStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            IndecStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const IndecGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, Fail> {
    out.as_mut().ok_or_else(null)
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(IndecStatus::InvalidUtf8, e.to_string()))
}

fn boxed(g: Graph) -> *mut IndecGraph {
    Box::into_raw(Box::new(IndecGraph { inner: g }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no nul bytes").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on this thread.
#[no_mangle]
pub extern "C" fn indec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn indec_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut IndecGraph,
) -> IndecStatus {
    guarded(|| {
        let out = out_ref(out)?;
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        *out = boxed(g);
        Ok(())
    })
}

/// Parses graph6 or a 1-based edge list; the format is sniffed.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indec_graph_parse(text: *const c_char, out: *mut *mut IndecGraph) -> IndecStatus {
    guarded(|| {
        let out = out_ref(out)?;
        let bytes = str_arg(text)?.as_bytes();
        *out = boxed(parse_graph_text(sniff(bytes), bytes)?);
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn indec_graph_free(g: *mut IndecGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn indec_graph_vertex_count(g: *const IndecGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indec_graph_has_edge(
    g: *const IndecGraph,
    u: usize,
    v: usize,
    out: *mut bool,
) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        let out = out_ref(out)?;
        for w in [u, v] {
            if w >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: w, n: g.n() }.into());
            }
        }
        *out = u != v && g.has_edge(u, v);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indec_is_indecomposable(g: *const IndecGraph, out: *mut bool) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        *out_ref(out)? = is_indecomposable(g);
        Ok(())
    })
}

/// Stores a new handle holding I(G); fails with `NotIndecomposable` when `g`
/// is decomposable.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indec_indecomposability_graph(
    g: *const IndecGraph,
    out: *mut *mut IndecGraph,
) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        let out = out_ref(out)?;
        *out = boxed(indecomposability_graph(g)?);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn indec_classify(g: *const IndecGraph, out: *mut IndecClassification) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        let out = out_ref(out)?;
        let r = classify_2covered(g)?;
        let (a, b) = r.cover_pair.unwrap_or((usize::MAX, usize::MAX));
        *out = IndecClassification {
            two_covered: r.two_covered,
            complemented: r.complemented,
            cover_a: a,
            cover_b: b,
            class_id: r.class.map_or(IndecClass::None, IndecClass::from),
        };
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable. Free the result with
/// [`indec_string_free`].
#[no_mangle]
pub unsafe extern "C" fn indec_graph_to_graph6(g: *const IndecGraph, out: *mut *mut c_char) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        *out_ref(out)? = c_string(to_graph6(g));
        Ok(())
    })
}

/// 1-based edge list with an `n m` header line.
///
/// # Safety
/// `g` must be a live handle and `out` writable. Free the result with
/// [`indec_string_free`].
#[no_mangle]
pub unsafe extern "C" fn indec_graph_to_edge_list(g: *const IndecGraph, out: *mut *mut c_char) -> IndecStatus {
    guarded(|| {
        let g = graph_ref(g)?;
        *out_ref(out)? = c_string(to_edge_list(g));
        Ok(())
    })
}

/// Runs a statement check and stores its report as JSON. A report with
/// mismatches still returns `Ok`; read its `pass` field.
///
/// # Safety
/// `statement` must be a nul-terminated string, `options` null or readable,
/// and `out_json` writable. Free the result with [`indec_string_free`].
#[no_mangle]
pub unsafe extern "C" fn indec_verify(
    statement: *const c_char,
    options: *const IndecVerifyOptions,
    out_json: *mut *mut c_char,
) -> IndecStatus {
    guarded(|| {
        let id = str_arg(statement)?;
        let out = out_ref(out_json)?;
        let params = match options.as_ref() {
            None => Params::default(),
            Some(o) => Params {
                n: (o.n > 0).then_some(o.n),
                mode: match o.mode {
                    IndecMode::Default => None,
                    IndecMode::Exhaustive => Some(ModeKind::Exhaustive),
                    IndecMode::Sampled => Some(ModeKind::Sampled),
                },
                seed: o.has_seed.then_some(o.seed),
                count: (o.count > 0).then_some(o.count),
                jobs: (o.jobs > 0).then_some(o.jobs),
            },
        };
        let report = run_statement(id, &params)?;
        let json = serde_json::to_string(&report).map_err(|e| Fail(IndecStatus::Anomaly, e.to_string()))?;
        *out = c_string(json);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn indec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
