//! C ABI for the in-place graph traversal library.
//!
//! Graphs are held behind an opaque `IpgGraph` handle.  All functions
//! return an [`IpgStatus`]; on failure a textual description is available
//! through [`ipg_last_error`].  Traversal results are delivered through
//! caller-supplied callbacks with a user data pointer.
//!
//! The C header is generated into `include/ipg.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use ipg::graph::{self, EdgeList};
use ipg::oracle::{Event, Start};
use ipg::{bfs, dfs, io, Error, Mode, WordArray};

/// Result of every API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    IoError = 3,
    CorruptInput = 4,
    RestoreViolation = 5,
    StrictDomain = 6,
    Internal = 7,
}

/// DFS callback event kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpgDfsEvent {
    Previsit = 0,
    Postvisit = 1,
    Preexplore = 2,
    Postexplore = 3,
}

/// Traversal mode; `Strict` requires out-degree >= 2 everywhere.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpgMode {
    Banded = 0,
    Strict = 1,
}

/// Opaque graph handle.
pub struct IpgGraph {
    a: WordArray,
    directed: bool,
}

pub type IpgDfsCallback =
    Option<extern "C" fn(user: *mut c_void, kind: IpgDfsEvent, u: u64, v: u64)>;
pub type IpgBfsCallback =
    Option<extern "C" fn(user: *mut c_void, vertex: u64, distance: u64, root: u64)>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IpgStatus {
    match e {
        Error::Io(_) => IpgStatus::IoError,
        Error::Corruption { .. } | Error::Format { .. } | Error::Representation(_) => {
            IpgStatus::CorruptInput
        }
        Error::RestoreViolation => IpgStatus::RestoreViolation,
        Error::StrictDomain(_) => IpgStatus::StrictDomain,
        Error::Bounds { .. } | Error::Overflow { .. } | Error::Budget { .. } => {
            IpgStatus::Internal
        }
        _ => IpgStatus::InvalidArgument,
    }
}

fn fail(e: &Error) -> IpgStatus {
    set_error(&e.to_string());
    status_of(e)
}

fn guarded(f: impl FnOnce() -> IpgStatus) -> IpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            IpgStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread.  The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ipg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a graph from an edge array of `2 * edge_count` vertex numbers
/// (1-based, (u, v) pairs).  On success `*out` owns the handle.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable u64 values and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_from_edges(
    n: u64,
    directed: bool,
    edges: *const u64,
    edge_count: usize,
    out: *mut *mut IpgGraph,
) -> IpgStatus {
    if out.is_null() || (edges.is_null() && edge_count > 0) {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let pairs = if edge_count == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
                .chunks_exact(2)
                .map(|c| (c[0], c[1]))
                .collect()
        };
        let e = match EdgeList::new(n, directed, pairs) {
            Ok(e) => e,
            Err(err) => return fail(&err),
        };
        let w = ipg::layout::Layout { n: e.n, l: e.adjacency_len() }.min_width();
        match graph::build(&e, w) {
            Ok(a) => {
                *out = Box::into_raw(Box::new(IpgGraph { a, directed }));
                IpgStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Load a graph from a file in either the binary or text format.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_load(
    path: *const c_char,
    out: *mut *mut IpgGraph,
) -> IpgStatus {
    if path.is_null() || out.is_null() {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let path = match CStr::from_ptr(path).to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("path is not valid UTF-8");
                return IpgStatus::InvalidArgument;
            }
        };
        match io::load(Path::new(path)) {
            Ok((a, directed)) => {
                *out = Box::into_raw(Box::new(IpgGraph { a, directed }));
                IpgStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Write the graph in the binary format.
///
/// # Safety
/// `g` must be a live handle and `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_save(g: *const IpgGraph, path: *const c_char) -> IpgStatus {
    if g.is_null() || path.is_null() {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let g = &*g;
        let path = match CStr::from_ptr(path).to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("path is not valid UTF-8");
                return IpgStatus::InvalidArgument;
            }
        };
        match io::save(Path::new(path), &g.a, g.directed) {
            Ok(()) => IpgStatus::Ok,
            Err(err) => fail(&err),
        }
    })
}

/// Release a handle.  Passing NULL is allowed.
///
/// # Safety
/// `g` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_free(g: *mut IpgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_vertex_count(g: *const IpgGraph) -> u64 {
    if g.is_null() {
        return 0;
    }
    (*g).a.peek(0).unwrap_or(0)
}

/// True if the graph was built or loaded as directed.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_is_directed(g: *const IpgGraph) -> bool {
    !g.is_null() && (*g).directed
}

/// Check structural well-formedness of the underlying array.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ipg_graph_validate(g: *const IpgGraph) -> IpgStatus {
    if g.is_null() {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let report = graph::validate_sorted_standard(&(*g).a);
        if report.pass() {
            IpgStatus::Ok
        } else {
            set_error(&report.violations.join("; "));
            IpgStatus::CorruptInput
        }
    })
}

fn start_of(v: u64) -> Start {
    if v == 0 {
        Start::All
    } else {
        Start::Vertex(v)
    }
}

/// Run DFS.  `start` 0 traverses every component in ascending root order.
/// Events arrive on `cb`: Previsit/Postvisit carry the vertex in `u`
/// (`v` is 0); with `edge_events`, Preexplore/Postexplore carry (u, v).
/// The input array is restored before returning.
///
/// # Safety
/// `g` must be a live handle; `cb` (if non-NULL) must be safe to call with
/// `user`.
#[no_mangle]
pub unsafe extern "C" fn ipg_dfs(
    g: *mut IpgGraph,
    mode: IpgMode,
    start: u64,
    edge_events: bool,
    cb: IpgDfsCallback,
    user: *mut c_void,
) -> IpgStatus {
    if g.is_null() {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let g = &mut *g;
        let mode = match mode {
            IpgMode::Banded => Mode::Banded,
            IpgMode::Strict => Mode::Strict,
        };
        let mut sink = |ev: Event| {
            if let Some(cb) = cb {
                match ev {
                    Event::Pre(v) => cb(user, IpgDfsEvent::Previsit, v, 0),
                    Event::Post(v) => cb(user, IpgDfsEvent::Postvisit, v, 0),
                    Event::PreExplore(u, v) => cb(user, IpgDfsEvent::Preexplore, u, v),
                    Event::PostExplore(u, v) => cb(user, IpgDfsEvent::Postexplore, u, v),
                }
            }
        };
        match dfs::dfs_streaming(&mut g.a, mode, start_of(start), edge_events, &mut sink) {
            Ok(_) => IpgStatus::Ok,
            Err(err) => fail(&err),
        }
    })
}

/// Run BFS.  `start` 0 traverses every component.  `cb` receives
/// (vertex, distance, component root) with exact distances, ascending
/// within each round.  The input array is restored before returning.
///
/// # Safety
/// `g` must be a live handle; `cb` (if non-NULL) must be safe to call with
/// `user`.
#[no_mangle]
pub unsafe extern "C" fn ipg_bfs(
    g: *mut IpgGraph,
    start: u64,
    cb: IpgBfsCallback,
    user: *mut c_void,
) -> IpgStatus {
    if g.is_null() {
        set_error("null argument");
        return IpgStatus::NullArgument;
    }
    guarded(|| {
        let g = &mut *g;
        let mut sink = |v: u64, d: u64, r: u64| {
            if let Some(cb) = cb {
                cb(user, v, d, r);
            }
        };
        match bfs::bfs_streaming(&mut g.a, start_of(start), &mut sink) {
            Ok(_) => IpgStatus::Ok,
            Err(err) => fail(&err),
        }
    })
}

#[allow(unused)]
fn assert_ptr_default_is_null() {
    let _: *mut IpgGraph = ptr::null_mut();
}

#[cfg(test)]
mod tests {
    use super::*;

    extern "C" fn collect_dfs(user: *mut c_void, kind: IpgDfsEvent, u: u64, v: u64) {
        let out = unsafe { &mut *(user as *mut Vec<(IpgDfsEvent, u64, u64)>) };
        out.push((kind, u, v));
    }

    extern "C" fn collect_bfs(user: *mut c_void, v: u64, d: u64, r: u64) {
        let out = unsafe { &mut *(user as *mut Vec<(u64, u64, u64)>) };
        out.push((v, d, r));
    }

    #[test]
    fn edges_dfs_bfs_roundtrip() {
        let edges: Vec<u64> = vec![1, 2, 1, 5, 2, 3, 2, 4, 3, 4, 4, 5];
        let mut g: *mut IpgGraph = std::ptr::null_mut();
        let st = unsafe { ipg_graph_from_edges(5, false, edges.as_ptr(), 6, &mut g) };
        assert_eq!(st, IpgStatus::Ok);
        assert_eq!(unsafe { ipg_graph_vertex_count(g) }, 5);
        assert_eq!(unsafe { ipg_graph_validate(g) }, IpgStatus::Ok);

        let mut ev: Vec<(IpgDfsEvent, u64, u64)> = Vec::new();
        let st = unsafe {
            ipg_dfs(g, IpgMode::Banded, 1, false, Some(collect_dfs), &mut ev as *mut _ as *mut c_void)
        };
        assert_eq!(st, IpgStatus::Ok);
        let pre: Vec<u64> = ev.iter().filter(|e| e.0 == IpgDfsEvent::Previsit).map(|e| e.1).collect();
        assert_eq!(pre, vec![1, 2, 3, 4, 5]);

        let mut out: Vec<(u64, u64, u64)> = Vec::new();
        let st = unsafe { ipg_bfs(g, 1, Some(collect_bfs), &mut out as *mut _ as *mut c_void) };
        assert_eq!(st, IpgStatus::Ok);
        assert_eq!(out, vec![(1, 0, 1), (2, 1, 1), (5, 1, 1), (3, 2, 1), (4, 2, 1)]);

        unsafe { ipg_graph_free(g) };

        // strict mode refuses a graph with a degree-1 vertex and reports why
        let path_edges: Vec<u64> = vec![1, 2, 2, 3];
        let mut p: *mut IpgGraph = std::ptr::null_mut();
        let st = unsafe { ipg_graph_from_edges(3, false, path_edges.as_ptr(), 2, &mut p) };
        assert_eq!(st, IpgStatus::Ok);
        let st = unsafe { ipg_dfs(p, IpgMode::Strict, 0, false, None, std::ptr::null_mut()) };
        assert_eq!(st, IpgStatus::StrictDomain);
        let msg = unsafe { CStr::from_ptr(ipg_last_error()) };
        assert!(msg.to_str().unwrap().contains("out-degree"));
        unsafe { ipg_graph_free(p) };
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.ipg");
        let cpath = CString::new(path.to_str().unwrap()).unwrap();
        let edges: Vec<u64> = vec![1, 2, 2, 3];
        let mut g: *mut IpgGraph = std::ptr::null_mut();
        unsafe {
            assert_eq!(ipg_graph_from_edges(3, true, edges.as_ptr(), 2, &mut g), IpgStatus::Ok);
            assert_eq!(ipg_graph_save(g, cpath.as_ptr()), IpgStatus::Ok);
            let mut h: *mut IpgGraph = std::ptr::null_mut();
            assert_eq!(ipg_graph_load(cpath.as_ptr(), &mut h), IpgStatus::Ok);
            assert_eq!(ipg_graph_vertex_count(h), 3);
            assert!(ipg_graph_is_directed(h));
            ipg_graph_free(h);
            ipg_graph_free(g);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            assert_eq!(
                ipg_graph_load(std::ptr::null(), std::ptr::null_mut()),
                IpgStatus::NullArgument
            );
            assert_eq!(
                ipg_dfs(std::ptr::null_mut(), IpgMode::Banded, 0, false, None, std::ptr::null_mut()),
                IpgStatus::NullArgument
            );
            ipg_graph_free(std::ptr::null_mut());
        }
    }
}
