//! C bindings for diagram parsing, invariants, cut systems and coverings.
//!
//! Every fallible entry point returns a [`VkStatus`] and writes its outputs
//! only on `VK_OK`. Panics are caught at the boundary and reported as
//! `VK_INTERNAL`. The generated header lives in `include/vknots.h`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use vknots::codes::{cuts_from_json, emit_gauss_code, parse_gauss_code, JsonError};
use vknots::cover::{double_cover, lk_n};
use vknots::cutfind::find_small_cut_system;
use vknots::cutpath::{find_move_path, PathError};
use vknots::cuts::{is_cut_system, is_normal, CutSystem};
use vknots::diagram::GaussDiagram;
use vknots::invariants::{f_polynomial, odd_writhe, writhe, DEFAULT_STATE_LIMIT};
use vknots::pd::{canonical_cut_system, parse_pd, trace_pd, PdCode};

/// Result of every fallible call.
pub type VkStatus = i32;

/// Success.
pub const VK_OK: VkStatus = 0;
/// A required pointer argument was null.
pub const VK_NULL_ARG: VkStatus = 1;
/// The input text could not be parsed.
pub const VK_PARSE: VkStatus = 2;
/// The arguments are well formed but inconsistent: cut points outside the
/// diagram, an operation that needs a knot applied to a link, and so on.
pub const VK_INVALID: VkStatus = 3;
/// Nothing satisfies the request within the given bounds.
pub const VK_NOT_FOUND: VkStatus = 4;
/// A state bound was exceeded before the computation finished.
pub const VK_LIMIT: VkStatus = 5;
/// An unexpected failure inside the library.
pub const VK_INTERNAL: VkStatus = 6;

/// An oriented virtual link diagram.
pub struct VkDiagram(GaussDiagram);

/// A multiset of cut points, addressed by circle and gap.
pub struct VkCuts(CutSystem);

/// A parsed planar-diagram code.
pub struct VkPd(PdCode);

fn run(f: impl FnOnce() -> Result<VkStatus, VkStatus>) -> VkStatus {
    catch_unwind(AssertUnwindSafe(f))
        .map(|r| r.unwrap_or_else(|e| e))
        .unwrap_or(VK_INTERNAL)
}

unsafe fn text_arg<'a>(p: *const c_char) -> Result<&'a str, VkStatus> {
    if p.is_null() {
        return Err(VK_NULL_ARG);
    }
    CStr::from_ptr(p).to_str().map_err(|_| VK_PARSE)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, VkStatus> {
    p.as_ref().ok_or(VK_NULL_ARG)
}

unsafe fn give<T>(out: *mut *mut T, value: T) -> Result<VkStatus, VkStatus> {
    if out.is_null() {
        return Err(VK_NULL_ARG);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(VK_OK)
}

unsafe fn give_str(out: *mut *mut c_char, s: String) -> Result<VkStatus, VkStatus> {
    if out.is_null() {
        return Err(VK_NULL_ARG);
    }
    *out = CString::new(s).map_err(|_| VK_INTERNAL)?.into_raw();
    Ok(VK_OK)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<VkStatus, VkStatus> {
    if out.is_null() {
        return Err(VK_NULL_ARG);
    }
    *out = value;
    Ok(VK_OK)
}

fn json_status(e: JsonError) -> VkStatus {
    match e {
        JsonError::Syntax(_) => VK_PARSE,
        JsonError::Content(_) => VK_INVALID,
    }
}

/// A static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn vk_status_describe(status: VkStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        VK_OK => b"ok\0",
        VK_NULL_ARG => b"null argument\0",
        VK_PARSE => b"parse error\0",
        VK_INVALID => b"invalid for this diagram\0",
        VK_NOT_FOUND => b"not found within the given bounds\0",
        VK_LIMIT => b"state limit exceeded\0",
        VK_INTERNAL => b"internal error\0",
        _ => b"unrecognized status\0",
    };
    text.as_ptr().cast()
}

/// Parses a Gauss code such as `"O1+O2+U1+U2+"`, with `|` separating circles.
#[no_mangle]
pub extern "C" fn vk_gauss_parse(text: *const c_char, out: *mut *mut VkDiagram) -> VkStatus {
    run(|| {
        let code = unsafe { text_arg(text) }?;
        let g = parse_gauss_code(code).map_err(|_| VK_PARSE)?;
        unsafe { give(out, VkDiagram(g)) }
    })
}

/// The canonical Gauss code of a diagram.
#[no_mangle]
pub extern "C" fn vk_diagram_code(d: *const VkDiagram, out: *mut *mut c_char) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        unsafe { give_str(out, emit_gauss_code(&d.0)) }
    })
}

#[no_mangle]
pub extern "C" fn vk_diagram_circle_count(d: *const VkDiagram, out: *mut usize) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        unsafe { put(out, d.0.circle_count()) }
    })
}

#[no_mangle]
pub extern "C" fn vk_diagram_chord_count(d: *const VkDiagram, out: *mut usize) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        unsafe { put(out, d.0.chord_count()) }
    })
}

/// The sum of crossing signs.
#[no_mangle]
pub extern "C" fn vk_diagram_writhe(d: *const VkDiagram, out: *mut i64) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        unsafe { put(out, writhe(&d.0)) }
    })
}

/// Whether every chord is even, i.e. the diagram is checkerboard colorable.
#[no_mangle]
pub extern "C" fn vk_diagram_is_normal(d: *const VkDiagram, out: *mut bool) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        unsafe { put(out, is_normal(&d.0)) }
    })
}

/// The sum of signs over odd chords. `VK_INVALID` unless the diagram is a
/// knot (a single circle).
#[no_mangle]
pub extern "C" fn vk_diagram_odd_writhe(d: *const VkDiagram, out: *mut i64) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let w = odd_writhe(&d.0).ok_or(VK_INVALID)?;
        unsafe { put(out, w) }
    })
}

/// The normalized bracket polynomial as JSON pairs `[[exponent, coefficient],
/// ...]` in descending exponent order. The state sum expands `2^chords`
/// states; diagrams with more than `limit` chords return `VK_LIMIT`. A
/// `limit` of 0 selects the default bound.
#[no_mangle]
pub extern "C" fn vk_diagram_f_json(
    d: *const VkDiagram,
    limit: usize,
    out: *mut *mut c_char,
) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let limit = if limit == 0 { DEFAULT_STATE_LIMIT } else { limit };
        let f = f_polynomial(&d.0, limit).map_err(|_| VK_LIMIT)?;
        let json = serde_json::to_string(&f).map_err(|_| VK_INTERNAL)?;
        unsafe { give_str(out, json) }
    })
}

#[no_mangle]
pub extern "C" fn vk_diagram_free(d: *mut VkDiagram) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Parses a planar-diagram code: records `X+(a,b,c,d)`, `X-(a,b,c,d)` and
/// `V(a,b,c,d)` separated by whitespace or commas.
#[no_mangle]
pub extern "C" fn vk_pd_parse(text: *const c_char, out: *mut *mut VkPd) -> VkStatus {
    run(|| {
        let code = unsafe { text_arg(text) }?;
        let pd = parse_pd(code).map_err(|_| VK_PARSE)?;
        unsafe { give(out, VkPd(pd)) }
    })
}

/// Traces a planar-diagram code into a diagram. `VK_INVALID` when the edges
/// do not close up into circles.
#[no_mangle]
pub extern "C" fn vk_pd_diagram(pd: *const VkPd, out: *mut *mut VkDiagram) -> VkStatus {
    run(|| {
        let pd = unsafe { handle(pd) }?;
        let traced = trace_pd(&pd.0).map_err(|_| VK_INVALID)?;
        unsafe { give(out, VkDiagram(traced.diagram)) }
    })
}

/// Traces a planar-diagram code and places one cut point on each side of
/// every virtual record. Writes the traced diagram and the cut system
/// together, since the cut positions refer to that diagram's gap labeling.
#[no_mangle]
pub extern "C" fn vk_pd_canonical_cuts(
    pd: *const VkPd,
    out_diagram: *mut *mut VkDiagram,
    out_cuts: *mut *mut VkCuts,
) -> VkStatus {
    run(|| {
        let pd = unsafe { handle(pd) }?;
        if out_diagram.is_null() || out_cuts.is_null() {
            return Err(VK_NULL_ARG);
        }
        let (traced, cuts) = canonical_cut_system(&pd.0).map_err(|_| VK_INVALID)?;
        unsafe { give(out_diagram, VkDiagram(traced.diagram)) }?;
        unsafe { give(out_cuts, VkCuts(cuts)) }
    })
}

#[no_mangle]
pub extern "C" fn vk_pd_free(pd: *mut VkPd) {
    if !pd.is_null() {
        drop(unsafe { Box::from_raw(pd) });
    }
}

/// Parses a cut system given as JSON triples `[[circle, gap, count], ...]`
/// against the diagram whose circles and gaps the triples refer to.
#[no_mangle]
pub extern "C" fn vk_cuts_parse(
    json: *const c_char,
    d: *const VkDiagram,
    out: *mut *mut VkCuts,
) -> VkStatus {
    run(|| {
        let json = unsafe { text_arg(json) }?;
        let d = unsafe { handle(d) }?;
        let cuts = cuts_from_json(json, &d.0).map_err(json_status)?;
        unsafe { give(out, VkCuts(cuts)) }
    })
}

/// Serializes a cut system as JSON triples `[[circle, gap, count], ...]`.
#[no_mangle]
pub extern "C" fn vk_cuts_json(c: *const VkCuts, out: *mut *mut c_char) -> VkStatus {
    run(|| {
        let c = unsafe { handle(c) }?;
        let json = serde_json::to_string(&c.0).map_err(|_| VK_INTERNAL)?;
        unsafe { give_str(out, json) }
    })
}

/// The total number of cut points.
#[no_mangle]
pub extern "C" fn vk_cuts_total(c: *const VkCuts, out: *mut u32) -> VkStatus {
    run(|| {
        let c = unsafe { handle(c) }?;
        unsafe { put(out, c.0.total()) }
    })
}

/// Searches for a smallest cut system of the diagram. `VK_NOT_FOUND` when the
/// bounded search exhausts its budget.
#[no_mangle]
pub extern "C" fn vk_cuts_find_small(d: *const VkDiagram, out: *mut *mut VkCuts) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let cuts = find_small_cut_system(&d.0).ok_or(VK_NOT_FOUND)?;
        unsafe { give(out, VkCuts(cuts)) }
    })
}

/// Whether the cut points alternate the induced orientation coherently, i.e.
/// form a valid cut system for the diagram.
#[no_mangle]
pub extern "C" fn vk_cuts_check(
    d: *const VkDiagram,
    c: *const VkCuts,
    out: *mut bool,
) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let c = unsafe { handle(c) }?;
        unsafe { put(out, is_cut_system(&d.0, &c.0)) }
    })
}

#[no_mangle]
pub extern "C" fn vk_cuts_free(c: *mut VkCuts) {
    if !c.is_null() {
        drop(unsafe { Box::from_raw(c) });
    }
}

/// The double covering determined by a cut system. The cover of a diagram
/// with a valid cut system is always normal. `VK_INVALID` when the cut
/// system is not valid for the diagram.
#[no_mangle]
pub extern "C" fn vk_double_cover(
    d: *const VkDiagram,
    c: *const VkCuts,
    out: *mut *mut VkDiagram,
) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let c = unsafe { handle(c) }?;
        let cover = double_cover(&d.0, &c.0).map_err(|_| VK_INVALID)?;
        unsafe { give(out, VkDiagram(cover.diagram)) }
    })
}

/// The linking number of the two lifted circles in the double cover of a
/// knot. `VK_INVALID` for links or invalid cut systems.
#[no_mangle]
pub extern "C" fn vk_lk_n(d: *const VkDiagram, c: *const VkCuts, out: *mut i64) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let c = unsafe { handle(c) }?;
        let lk = lk_n(&d.0, &c.0).map_err(|_| VK_INVALID)?;
        unsafe { put(out, lk) }
    })
}

/// Searches for a sequence of cut moves from one cut system to another,
/// exploring at most `max_depth` moves while every intermediate system keeps
/// at most `cap` cut points in any single gap. On success writes the moves
/// as a JSON array. `VK_INVALID` when either endpoint is not a valid cut
/// system; `VK_NOT_FOUND` when no path exists within the bounds.
#[no_mangle]
pub extern "C" fn vk_cut_path_json(
    d: *const VkDiagram,
    from: *const VkCuts,
    to: *const VkCuts,
    max_depth: u32,
    cap: u32,
    out: *mut *mut c_char,
) -> VkStatus {
    run(|| {
        let d = unsafe { handle(d) }?;
        let from = unsafe { handle(from) }?;
        let to = unsafe { handle(to) }?;
        let path = find_move_path(&d.0, &from.0, &to.0, max_depth, cap).map_err(|e| match e {
            PathError::FromInvalid | PathError::ToInvalid => VK_INVALID,
            PathError::NotFound => VK_NOT_FOUND,
        })?;
        let json = serde_json::to_string(&path).map_err(|_| VK_INTERNAL)?;
        unsafe { give_str(out, json) }
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub extern "C" fn vk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_descriptions_are_distinct_static_strings() {
        let texts: Vec<String> = (0..=7)
            .map(|s| {
                let p = vk_status_describe(s);
                assert!(!p.is_null());
                unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
            })
            .collect();
        for (i, a) in texts.iter().enumerate() {
            for b in &texts[i + 1..] {
                assert_ne!(a, b);
            }
        }
        assert_eq!(texts[0], "ok");
        assert_eq!(texts[7], "unrecognized status");
    }
}
