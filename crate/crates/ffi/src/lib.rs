//! C ABI over the `modcolor` solvers.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free`. Every fallible call returns an [`McStatus`]; on
//! failure [`mc_last_error`] describes the problem. Colors are 1-based and
//! vertices 0-based. Color lists are bitmasks: bit `c - 1` set means color
//! `c` is allowed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use modcolor::graph::{is_member, ClassTag, Graph, VertexSet};
use modcolor::nocert::{build_certificate_set, solve_nocert, NoCertificateSet};
use modcolor::oracle::{brute_force_list_color, chromatic_number_ie, ColorSet, Coloring, ListAssignment};
use modcolor::stats::BranchStats;
use modcolor::treedepth::{exact_treedepth, mark_no_certificate, TreedepthDecomposition};
use modcolor::vc::solve_vc;
use modcolor::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
    Parse = 4,
    Io = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McClass {
    Independent = 0,
    Forest = 1,
    LinearForest = 2,
    Path = 3,
    Split = 4,
    UnionSplit = 5,
    Cograph = 6,
}

impl From<McClass> for ClassTag {
    fn from(c: McClass) -> Self {
        ClassTag::ALL[c as usize]
    }
}

/// Search counters of the branching solvers.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct McStats {
    pub nodes_expanded: u64,
    pub subsets_enumerated: u64,
    pub depth: u64,
}

impl From<BranchStats> for McStats {
    fn from(s: BranchStats) -> Self {
        McStats {
            nodes_expanded: s.nodes_expanded,
            subsets_enumerated: s.subsets_enumerated,
            depth: s.depth,
        }
    }
}

pub struct McGraph(Graph);
pub struct McLists(ListAssignment);
pub struct McCertSet(NoCertificateSet);

struct Failure(McStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidInput(_) => McStatus::InvalidInput,
            Error::ResourceLimit(_) => McStatus::ResourceLimit,
            Error::Parse { .. } => McStatus::Parse,
            Error::Io { .. } => McStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> Outcome) -> McStatus {
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure(McStatus::Panic, format!("panic: {msg}")))
    });
    match result {
        Ok(()) => {
            set_last_error("");
            McStatus::Ok
        }
        Err(Failure(status, msg)) => {
            set_last_error(&msg);
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(McStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn put<T>(p: *mut T, value: T, what: &str) -> Outcome {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Outcome {
    put(out, Box::into_raw(Box::new(value)), "out")
}

/// Writes a coloring into `colors` (room for `n` entries) unless it is null.
unsafe fn put_coloring(colors: *mut u32, coloring: Option<&Coloring>) {
    if let (false, Some(c)) = (colors.is_null(), coloring) {
        std::ptr::copy_nonoverlapping(c.colors().as_ptr(), colors, c.len());
    }
}

fn vertex_set(n: usize, vertices: &[usize]) -> Result<VertexSet, Failure> {
    Ok(VertexSet::from_vertices(n, vertices.iter().copied())?)
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn mc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
///
/// # Safety
/// `edges` points to `2 * m` readable values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_new(n: usize, edges: *const usize, m: usize, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let ends = slice(edges, 2 * m, "edges")?;
        let g = Graph::from_edges(n, ends.chunks_exact(2).map(|e| (e[0], e[1])))?;
        put_handle(out, McGraph(g))
    })
}

/// Reads a graph file (`p edge n m` / `e u v`, 1-based).
///
/// # Safety
/// `path` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_load(path: *const c_char, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let path = CStr::from_ptr(deref(path, "path")?)
            .to_str()
            .map_err(|_| Failure(McStatus::InvalidInput, "path is not UTF-8".into()))?;
        let g = modcolor::io::load_graph(Path::new(path))?;
        put_handle(out, McGraph(g))
    })
}

/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_vertex_count(g: *const McGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_edge_count(g: *const McGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_free(g: *mut McGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Lists over the palette `1..=q`, one bitmask per vertex.
///
/// # Safety
/// `masks` points to `n` readable values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_lists_new(q: u32, masks: *const u64, n: usize, out: *mut *mut McLists) -> McStatus {
    guard(|| {
        let lists = slice(masks, n, "masks")?.iter().map(|&m| ColorSet(m)).collect();
        put_handle(out, McLists(ListAssignment::new(q, lists)?))
    })
}

/// Every vertex may take every color of `1..=q`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_lists_full(n: usize, q: u32, out: *mut *mut McLists) -> McStatus {
    guard(|| put_handle(out, McLists(ListAssignment::full(n, q))))
}

/// # Safety
/// `l` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_lists_free(l: *mut McLists) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Exact list coloring. `colors` may be null; otherwise it has room for one
/// color per vertex and receives a coloring when one exists.
///
/// # Safety
/// Handles are live; `colorable` is writable; `colors` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_brute_force(
    g: *const McGraph,
    lists: *const McLists,
    colorable: *mut bool,
    colors: *mut u32,
) -> McStatus {
    guard(|| {
        let c = brute_force_list_color(&deref(g, "graph")?.0, &deref(lists, "lists")?.0)?;
        put(colorable, c.is_some(), "colorable")?;
        put_coloring(colors, c.as_ref());
        Ok(())
    })
}

/// # Safety
/// `g` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_chromatic_number(g: *const McGraph, out: *mut usize) -> McStatus {
    guard(|| {
        let chi = chromatic_number_ie(&deref(g, "graph")?.0)?;
        put(out, chi, "out")
    })
}

/// # Safety
/// `g` is live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_is_member(g: *const McGraph, class: McClass, out: *mut bool) -> McStatus {
    guard(|| put(out, is_member(&deref(g, "graph")?.0, class.into()), "out"))
}

/// Plain `q`-coloring given a vertex cover of `k` vertices.
///
/// # Safety
/// `g` is live; `cover` points to `k` values; `colorable` is writable;
/// `colors` and `stats` are null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_solve_vc(
    g: *const McGraph,
    cover: *const usize,
    k: usize,
    q: u32,
    colorable: *mut bool,
    colors: *mut u32,
    stats: *mut McStats,
) -> McStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let cover = vertex_set(g.vertex_count(), slice(cover, k, "cover")?)?;
        let out = solve_vc(g, &cover, q)?;
        put(colorable, out.colorable, "colorable")?;
        put_coloring(colors, out.coloring.as_ref());
        if !stats.is_null() {
            stats.write(out.stats.into());
        }
        Ok(())
    })
}

/// Enumerates the No-certificates with at most `g` vertices in `class`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mc_certset_build(
    class: McClass,
    q: u32,
    g: usize,
    minimal: bool,
    out: *mut *mut McCertSet,
) -> McStatus {
    guard(|| put_handle(out, McCertSet(build_certificate_set(class.into(), q, g, minimal)?)))
}

/// # Safety
/// `set` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_certset_len(set: *const McCertSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `set` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_certset_free(set: *mut McCertSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// List coloring given a modulator of `k` vertices whose removal leaves the
/// certificate set's class.
///
/// # Safety
/// Handles are live; `modulator` points to `k` values; `colorable` is
/// writable; `colors` and `stats` are null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_solve_nocert(
    g: *const McGraph,
    lists: *const McLists,
    modulator: *const usize,
    k: usize,
    set: *const McCertSet,
    colorable: *mut bool,
    colors: *mut u32,
    stats: *mut McStats,
) -> McStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let x = vertex_set(g.vertex_count(), slice(modulator, k, "modulator")?)?;
        let out = solve_nocert(g, &deref(lists, "lists")?.0, &x, &deref(set, "certificate set")?.0)?;
        put(colorable, out.colorable, "colorable")?;
        put_coloring(colors, out.coloring.as_ref());
        if !stats.is_null() {
            stats.write(out.stats.into());
        }
        Ok(())
    })
}

/// Exact treedepth. `parents` may be null; otherwise it has room for one
/// entry per vertex and receives an optimal decomposition, `-1` marking
/// roots.
///
/// # Safety
/// `g` is live; `depth` is writable; `parents` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_treedepth_exact(g: *const McGraph, depth: *mut usize, parents: *mut i64) -> McStatus {
    guard(|| {
        let (td, dec) = exact_treedepth(&deref(g, "graph")?.0)?;
        put(depth, td, "depth")?;
        if !parents.is_null() {
            for (v, p) in dec.parents().iter().enumerate() {
                parents.add(v).write(p.map_or(-1, |p| p as i64));
            }
        }
        Ok(())
    })
}

/// Marks a small uncolorable subinstance of a No-instance, given a
/// treedepth decomposition as a parent array (`-1` for roots). `marked`
/// has room for one entry per vertex; the first `*marked_len` entries are
/// the marked vertices in increasing order.
///
/// # Safety
/// Handles are live; `parents` points to one value per vertex; `marked`
/// and `marked_len` are writable.
#[no_mangle]
pub unsafe extern "C" fn mc_mark_no_certificate(
    g: *const McGraph,
    lists: *const McLists,
    parents: *const i64,
    marked: *mut usize,
    marked_len: *mut usize,
) -> McStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let parents = slice(parents, g.vertex_count(), "parents")?
            .iter()
            .map(|&p| usize::try_from(p).ok())
            .collect();
        let dec = TreedepthDecomposition::new(parents)?;
        let m = mark_no_certificate(g, &deref(lists, "lists")?.0, &dec)?.to_vec();
        if marked.is_null() && !m.is_empty() {
            return Err(null("marked"));
        }
        put(marked_len, m.len(), "marked_len")?;
        if !m.is_empty() {
            std::ptr::copy_nonoverlapping(m.as_ptr(), marked, m.len());
        }
        Ok(())
    })
}
