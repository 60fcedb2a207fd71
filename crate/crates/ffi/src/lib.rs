//! C ABI over `cops-core`.
//!
//! Graphs and solutions are opaque handles owned by the caller and released
//! with the matching `_free`. Every fallible call returns a `CopsStatus`;
//! the message of the last failure on the calling thread is available from
//! `cops_last_error`. Strings returned through `out` parameters are
//! NUL-terminated UTF-8 owned by the caller (`cops_string_free`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cops_core::bounds::{bound_params, check_induction_chain, DPoint};
use cops_core::engine::{GreedyFarRobber, RandomRobber, RobberStrategy};
use cops_core::interval::{Interval, DEFAULT_PREC};
use cops_core::meyniel::{run_meyniel, ExpanderSpec, MeynielConfig};
use cops_core::solver::{cop_number, solve, Solution, SolverConfig};
use cops_core::{Error, Graph};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    ResourceLimit = 4,
    /// A strategy or I/O fault, or a caught panic.
    Fault = 5,
    /// A string argument was not UTF-8.
    Utf8 = 6,
    /// The caller's buffer is too small; the required length was written.
    BufferTooSmall = 7,
}

/// Opaque graph handle.
pub struct CopsGraph(Graph);

/// Opaque solved game for a fixed number of cops.
pub struct CopsSolution(Solution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> CopsStatus {
    match e {
        Error::Parse { .. } => CopsStatus::Parse,
        Error::ResourceLimit(_) => CopsStatus::ResourceLimit,
        Error::InvalidArgument(_) | Error::InvalidGraph(_) | Error::NoPath { .. } => {
            CopsStatus::InvalidArgument
        }
        Error::StrategyFault { .. } | Error::Io(_) => CopsStatus::Fault,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guarded(f: impl FnOnce() -> Result<(), (CopsStatus, String)>) -> CopsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CopsStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CopsStatus::Fault
        }
    }
}

fn core(e: Error) -> (CopsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (CopsStatus, String) {
    (CopsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, (CopsStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    // SAFETY: caller passes a NUL-terminated string
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| (CopsStatus::Utf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CopsStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|e| (CopsStatus::Fault, e.to_string()))?;
    // SAFETY: out checked non-null
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cops_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses edge-list text (`n m` header, then `u v` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_parse(
    text: *const c_char,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    guarded(|| {
        let t = unsafe { str_arg(text) }?;
        if out.is_null() {
            return Err(null());
        }
        let g = Graph::parse_edge_list(t).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(CopsGraph(g))) };
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` values (or be null when `m == 0`).
#[no_mangle]
pub unsafe extern "C" fn cops_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut CopsGraph,
) -> CopsStatus {
    guarded(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return Err(null());
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            unsafe { std::slice::from_raw_parts(edges, 2 * m) }
        };
        let pairs: Vec<_> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edges(n, &pairs).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(CopsGraph(g))) };
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_free(g: *mut CopsGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_vertex_count(g: *const CopsGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.vertex_count())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_edge_count(g: *const CopsGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.edge_count())
}

/// Canonical edge-list text of `g`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_graph_to_edge_list(
    g: *const CopsGraph,
    out: *mut *mut c_char,
) -> CopsStatus {
    guarded(|| {
        let g = unsafe { g.as_ref() }.ok_or_else(null)?;
        unsafe { write_string(out, g.0.to_edge_list()) }
    })
}

/// Solves the game with `k` cops, refusing state spaces above `max_states`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_solve(
    g: *const CopsGraph,
    k: usize,
    max_states: u64,
    out: *mut *mut CopsSolution,
) -> CopsStatus {
    guarded(|| {
        let g = unsafe { g.as_ref() }.ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let s = solve(&g.0, k, &SolverConfig { max_states }).map_err(core)?;
        unsafe { *out = Box::into_raw(Box::new(CopsSolution(s))) };
        Ok(())
    })
}

/// # Safety
/// `s` must come from `cops_solve` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cops_solution_free(s: *mut CopsSolution) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// 1 if the cops win, 0 if the robber escapes or `s` is null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cops_solution_cops_win(s: *const CopsSolution) -> i32 {
    unsafe { s.as_ref() }.is_some_and(|s| s.0.cops_win()) as i32
}

/// Copies the winning placement into `buf` (capacity `len`) and its length
/// into `written`. Writes 0 entries when the robber wins.
///
/// # Safety
/// `buf` must hold `len` values; `s` and `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cops_solution_placement(
    s: *const CopsSolution,
    buf: *mut usize,
    len: usize,
    written: *mut usize,
) -> CopsStatus {
    guarded(|| {
        let s = unsafe { s.as_ref() }.ok_or_else(null)?;
        if written.is_null() {
            return Err(null());
        }
        let p = s.0.placement.as_deref().unwrap_or(&[]);
        unsafe { *written = p.len() };
        if p.len() > len {
            return Err((
                CopsStatus::BufferTooSmall,
                format!("placement needs {} slots", p.len()),
            ));
        }
        if !p.is_empty() {
            if buf.is_null() {
                return Err(null());
            }
            unsafe { ptr::copy_nonoverlapping(p.as_ptr(), buf, p.len()) };
        }
        Ok(())
    })
}

/// Smallest `k <= kmax` for which `k` cops win, written to `out`; 0 when
/// even `kmax` cops lose.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_cop_number(
    g: *const CopsGraph,
    kmax: usize,
    max_states: u64,
    out: *mut usize,
) -> CopsStatus {
    guarded(|| {
        let g = unsafe { g.as_ref() }.ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let c = cop_number(&g.0, kmax, &SolverConfig { max_states }).map_err(core)?;
        unsafe { *out = c.unwrap_or(0) };
        Ok(())
    })
}

/// Bound parameters and the induction chain at `L = log2 n` (a decimal
/// string such as `"1024"` or `"1e6"`) with the path length at the
/// diameter threshold, as JSON.
///
/// # Safety
/// `l` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_bound_json(l: *const c_char, out: *mut *mut c_char) -> CopsStatus {
    guarded(|| {
        let l = unsafe { str_arg(l) }?;
        let li = Interval::parse(l, DEFAULT_PREC).map_err(core)?;
        let params = bound_params(&li).map_err(core)?;
        let chain = check_induction_chain(&li, &DPoint::AtThreshold).map_err(core)?;
        let v = serde_json::json!({"schema": "cops-bound/1", "params": params.report(), "chain": chain});
        unsafe { write_string(out, serde_json::to_string(&v).unwrap()) }
    })
}

/// Plays the recursive strategy with diameter threshold `threshold` against
/// a greedy (`robber == 0`) or seeded random (`robber == 1`) robber and
/// returns the transcript with cop accounting as JSON.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cops_meyniel_json(
    g: *const CopsGraph,
    threshold: usize,
    robber: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> CopsStatus {
    guarded(|| {
        let g = unsafe { g.as_ref() }.ok_or_else(null)?;
        let mut r: Box<dyn RobberStrategy> = match robber {
            0 => Box::new(GreedyFarRobber::new()),
            1 => Box::new(RandomRobber::new(seed)),
            x => {
                return Err((
                    CopsStatus::InvalidArgument,
                    format!("unknown robber kind {x}"),
                ))
            }
        };
        let cfg = MeynielConfig {
            threshold,
            expander: ExpanderSpec::default(),
            seed,
        };
        let run = run_meyniel(&g.0, &cfg, r.as_mut(), None).map_err(core)?;
        let v = serde_json::json!({
            "transcript": run.transcript,
            "team": run.team,
            "guards": run.guards,
            "family_cops": run.family_cops,
            "cops_used": run.cops_used,
            "failure": run.failure,
        });
        unsafe { write_string(out, serde_json::to_string(&v).unwrap()) }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cops_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
