//! C ABI over the hopdomlab library.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an [`HdlStatus`];
//! the message of the last failure on the calling thread is available from
//! [`hdl_last_error`]. Output arrays and strings go into caller buffers: the
//! call always stores the required length and returns
//! `HDL_STATUS_BUFFER_TOO_SMALL` when the buffer is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use hopdomlab::geometry::{disks_to_csv, embed_orthogonal_scaled, reduce_unit_disk};
use hopdomlab::reduction::{parse_kind, Family, Reduction};
use hopdomlab::solver::{is_valid, solve_with, CancelToken, Problem, SolveOptions, SolveResult};
use hopdomlab::{parse_graph, serialize_graph, Error, Graph, VertexSet};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdlStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    InvalidInput = 3,
    Infeasible = 4,
    Precondition = 5,
    Realization = 6,
    Extraction = 7,
    Embedding = 8,
    Placement = 9,
    Cancelled = 10,
    BufferTooSmall = 11,
    Internal = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdlProblem {
    VertexCover = 0,
    HopDom = 1,
    TwoStepDom = 2,
}

impl From<HdlProblem> for Problem {
    fn from(p: HdlProblem) -> Self {
        match p {
            HdlProblem::VertexCover => Problem::VertexCover,
            HdlProblem::HopDom => Problem::HopDom,
            HdlProblem::TwoStepDom => Problem::TwoStepDom,
        }
    }
}

/// A simple undirected graph.
pub struct HdlGraph {
    inner: Graph,
}

/// Result of a solve; may be infeasible.
pub struct HdlSolution {
    inner: SolveResult,
}

/// A source graph, its reduced graph and the gadget registry.
pub struct HdlReduction {
    inner: Reduction,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(e: Error) -> HdlStatus {
    let status = match &e {
        Error::Parse { .. } => HdlStatus::Parse,
        Error::Input(_) | Error::Dispatch(_) => HdlStatus::InvalidInput,
        Error::Precondition(_) => HdlStatus::Precondition,
        Error::Realization(_) => HdlStatus::Realization,
        Error::Extraction(_) => HdlStatus::Extraction,
        Error::Embedding(_) => HdlStatus::Embedding,
        Error::Placement(_) => HdlStatus::Placement,
        Error::Cancelled => HdlStatus::Cancelled,
    };
    set_error(e.to_string());
    status
}

fn null(what: &str) -> HdlStatus {
    set_error(format!("{what} is null"));
    HdlStatus::NullArgument
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> HdlStatus) -> HdlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            HdlStatus::Internal
        }
    }
}

unsafe fn ids<'a>(p: *const usize, len: usize) -> Option<&'a [usize]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn write_ids(src: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> HdlStatus {
    if len.is_null() {
        return null("len");
    }
    *len = src.len();
    if cap < src.len() {
        set_error(format!("buffer holds {cap} ids, {} needed", src.len()));
        return HdlStatus::BufferTooSmall;
    }
    if !src.is_empty() {
        if buf.is_null() {
            return null("buf");
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    HdlStatus::Ok
}

/// Copies `s` plus a terminating NUL; `needed` counts the NUL.
unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> HdlStatus {
    if needed.is_null() {
        return null("needed");
    }
    *needed = s.len() + 1;
    if cap < s.len() + 1 {
        set_error(format!("buffer holds {cap} bytes, {} needed", s.len() + 1));
        return HdlStatus::BufferTooSmall;
    }
    if buf.is_null() {
        return null("buf");
    }
    ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, s.len());
    *buf.add(s.len()) = 0;
    HdlStatus::Ok
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HdlStatus> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("text is not UTF-8");
        HdlStatus::InvalidInput
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hdl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failure on this thread.
///
/// # Safety
/// `buf` must hold `cap` bytes; `needed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> HdlStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(&msg, buf, cap, needed)
}

/// Parses the edge-list format (`n m` header, then `u v` lines).
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_parse(text_in: *const c_char, out: *mut *mut HdlGraph) -> HdlStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let t = match text(text_in) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph(t) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(HdlGraph { inner: g }));
                HdlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Graph on `n` vertices from `m` pairs stored as `edges[2k], edges[2k+1]`.
///
/// # Safety
/// `edges` must hold `2 * m` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut HdlGraph,
) -> HdlStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        let Some(flat) = ids(edges, 2 * m) else { return null("edges") };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
        match Graph::from_edges(n, &pairs) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(HdlGraph { inner: g }));
                HdlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_free(g: *mut HdlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_vertex_count(g: *const HdlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_edge_count(g: *const HdlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.m())
}

/// Edge-list text of `g`.
///
/// # Safety
/// `g` live; `buf` holds `cap` bytes; `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_graph_serialize(
    g: *const HdlGraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HdlStatus {
    guard(|| match g.as_ref() {
        Some(g) => write_str(&serialize_graph(&g.inner), buf, cap, needed),
        None => null("graph"),
    })
}

/// Whether the `len` ids at `set` form a valid solution of `problem`.
///
/// # Safety
/// `g` live; `set` holds `len` ids; `valid` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_check(
    g: *const HdlGraph,
    problem: HdlProblem,
    set: *const usize,
    len: usize,
    valid: *mut bool,
) -> HdlStatus {
    guard(|| {
        let (Some(g), Some(s)) = (g.as_ref(), ids(set, len)) else { return null("graph or set") };
        if valid.is_null() {
            return null("valid");
        }
        let s = VertexSet::from_ids(s.iter().copied());
        if let Err(e) = s.check_range(g.inner.n()) {
            return fail(e);
        }
        *valid = is_valid(&g.inner, problem.into(), &s);
        HdlStatus::Ok
    })
}

/// Exact minimum solution. An infeasible instance still returns `Ok` and a
/// handle whose optimum query reports `HDL_STATUS_INFEASIBLE`.
/// `timeout_ms == 0` means no limit.
///
/// # Safety
/// `g` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_solve(
    g: *const HdlGraph,
    problem: HdlProblem,
    deterministic: bool,
    timeout_ms: u64,
    out: *mut *mut HdlSolution,
) -> HdlStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        let opts = SolveOptions {
            deterministic,
            cancel: (timeout_ms > 0).then(|| CancelToken::with_timeout(Duration::from_millis(timeout_ms))),
            ..Default::default()
        };
        match solve_with(&g.inner, problem.into(), &opts) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(HdlSolution { inner: r }));
                HdlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` live; `optimum` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_solution_optimum(s: *const HdlSolution, optimum: *mut usize) -> HdlStatus {
    let (Some(s), false) = (s.as_ref(), optimum.is_null()) else { return null("solution or optimum") };
    match s.inner.optimum {
        Some(k) => {
            *optimum = k;
            HdlStatus::Ok
        }
        None => {
            set_error("instance is infeasible");
            HdlStatus::Infeasible
        }
    }
}

/// # Safety
/// `s` live; `buf` holds `cap` ids; `len` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_solution_witness(
    s: *const HdlSolution,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> HdlStatus {
    let Some(s) = s.as_ref() else { return null("solution") };
    match &s.inner.witness {
        Some(w) => write_ids(w.as_slice(), buf, cap, len),
        None => {
            set_error("instance is infeasible");
            HdlStatus::Infeasible
        }
    }
}

/// # Safety
/// `s` live or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hdl_solution_nodes(s: *const HdlSolution) -> u64 {
    s.as_ref().map_or(0, |s| s.inner.nodes_explored)
}

/// # Safety
/// `s` from this library or null.
#[no_mangle]
pub unsafe extern "C" fn hdl_solution_free(s: *mut HdlSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Reduction of `g` by kind name (`hd-3reg`, `2sd-dreg`, `hd-ud`, ...).
/// `d` is used by the d-regular kinds; `scale` by the unit-disk kinds,
/// which embed `g` first.
///
/// # Safety
/// `g` live; `kind` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduce(
    g: *const HdlGraph,
    kind: *const c_char,
    d: usize,
    scale: u32,
    out: *mut *mut HdlReduction,
) -> HdlStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        let k = match text(kind) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = parse_kind(k, (d > 0).then_some(d)).and_then(|k| {
            if k.family() == Family::UnitDisk {
                let e = embed_orthogonal_scaled(&g.inner, scale)?;
                reduce_unit_disk(k.problem(), &e)?.reduction()
            } else {
                hopdomlab::reduce(k, &g.inner)
            }
        });
        match built {
            Ok(r) => {
                *out = Box::into_raw(Box::new(HdlReduction { inner: r }));
                HdlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` live or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_offset(r: *const HdlReduction) -> usize {
    r.as_ref().map_or(0, |r| r.inner.offset)
}

/// A new graph handle holding a copy of the reduced graph.
///
/// # Safety
/// `r` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_output(r: *const HdlReduction, out: *mut *mut HdlGraph) -> HdlStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else { return null("reduction or out") };
    *out = Box::into_raw(Box::new(HdlGraph { inner: r.inner.output.clone() }));
    HdlStatus::Ok
}

/// Role label of output vertex `v`.
///
/// # Safety
/// `r` live; `buf` holds `cap` bytes; `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_role(
    r: *const HdlReduction,
    v: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HdlStatus {
    let Some(r) = r.as_ref() else { return null("reduction") };
    match r.inner.roles.get(v) {
        Some(role) => write_str(role, buf, cap, needed),
        None => fail(Error::Input(format!("vertex {v} out of range"))),
    }
}

/// Forward certificate of a vertex cover of the source.
///
/// # Safety
/// `r` live; `vc` holds `vc_len` ids; `buf` holds `cap` ids; `len` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_certificate(
    r: *const HdlReduction,
    vc: *const usize,
    vc_len: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> HdlStatus {
    guard(|| {
        let (Some(r), Some(vc)) = (r.as_ref(), ids(vc, vc_len)) else { return null("reduction or vc") };
        match r.inner.forward_certificate(&VertexSet::from_ids(vc.iter().copied())) {
            Ok(c) => write_ids(c.as_slice(), buf, cap, len),
            Err(e) => fail(e),
        }
    })
}

/// Vertex cover of the source extracted from a solution of the output.
///
/// # Safety
/// `r` live; `sol` holds `sol_len` ids; `buf` holds `cap` ids; `len` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_extract(
    r: *const HdlReduction,
    sol: *const usize,
    sol_len: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> HdlStatus {
    guard(|| {
        let (Some(r), Some(sol)) = (r.as_ref(), ids(sol, sol_len)) else { return null("reduction or sol") };
        let s = VertexSet::from_ids(sol.iter().copied());
        if let Err(e) = s.check_range(r.inner.output.n()) {
            return fail(e);
        }
        match r.inner.extract_vertex_cover(&s) {
            Ok(c) => write_ids(c.as_slice(), buf, cap, len),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `r` from this library or null.
#[no_mangle]
pub unsafe extern "C" fn hdl_reduction_free(r: *mut HdlReduction) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// CSV layout (`id,role,cx_num,cx_den,cy_num,cy_den`) of the unit-disk
/// reduction of `g` for `problem` (hd or 2sd).
///
/// # Safety
/// `g` live; `buf` holds `cap` bytes; `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn hdl_layout_csv(
    g: *const HdlGraph,
    problem: HdlProblem,
    scale: u32,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HdlStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        let built = embed_orthogonal_scaled(&g.inner, scale).and_then(|e| reduce_unit_disk(problem.into(), &e));
        match built {
            Ok(l) => write_str(&disks_to_csv(&l.disks), buf, cap, needed),
            Err(e) => fail(e),
        }
    })
}
