//! C ABI over the ovdiam library. Instances and reduction graphs travel as
//! opaque handles, every call returns an [`OvdStatus`], and outputs land in
//! caller-provided pointers. Strings returned through `char**` are owned by
//! the library and must be released with [`ovd_string_free`]; handles with
//! their matching `*_free` function. The generated header is
//! `include/ovdiam.h`.

use std::ffi::{c_char, CStr, CString};

use ovdiam::certify::{gap_verdict, GapVerdict};
use ovdiam::graph::{exact_diameter, two_approx_estimate, write_graph};
use ovdiam::ov::{
    find_orthogonal_tuple, gen_instance, parse_instance, write_instance, GenError, GenMode,
    GenParams, OvInstance,
};
use ovdiam::reduction::{build_reduction, write_labels, ReductionError, ReductionGraph};

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OvdStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input text was not valid UTF-8.
    Utf8 = 2,
    /// Input text did not parse as an instance.
    Parse = 3,
    /// Generation parameters out of range.
    InvalidParams = 4,
    /// Generation failed to certify an instance within its attempt budget.
    BudgetExhausted = 5,
    /// The instance admits an orthogonal triple, so no reduction exists.
    OrthogonalTriple = 6,
    /// The reduction would exceed library limits.
    TooLarge = 7,
    /// A numeric argument was out of range.
    OutOfRange = 8,
    /// A verification step rejected the build.
    VerifyFailed = 9,
}

/// Opaque set of 0/1 vectors.
pub struct OvdInstance {
    inner: OvInstance,
}

/// Opaque reduction graph built from an instance.
pub struct OvdReduction {
    inner: ReductionGraph,
}

/// Size accounting of a reduction, mirroring its internal report.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct OvdSizes {
    pub n: usize,
    pub ell: usize,
    pub vertices: usize,
    pub arcs: usize,
    pub hub_arcs: usize,
    pub regular_arcs: usize,
    pub index_switching_arcs: usize,
    pub skew_arcs: usize,
    pub abc: usize,
    pub ab: usize,
    pub adx: usize,
    pub ady: usize,
    pub dc: usize,
    pub dcb: usize,
}

/// Distance value standing for "unreachable".
pub const OVD_INFINITY: u64 = u64::MAX;

fn string_out(text: String, out: *mut *mut c_char) -> OvdStatus {
    // instance/graph/label text never contains interior NUL bytes
    let c = CString::new(text).expect("no interior NUL");
    unsafe { *out = c.into_raw() };
    OvdStatus::Ok
}

/// Parses the textual instance format ("N L" header, one 0/1 row per line).
///
/// # Safety
/// `text` must point to a NUL-terminated byte string; `out` must be a valid
/// pointer. On `Ok`, `*out` owns a new handle for [`ovd_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn ovd_instance_parse(
    text: *const c_char,
    out: *mut *mut OvdInstance,
) -> OvdStatus {
    if text.is_null() || out.is_null() {
        return OvdStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return OvdStatus::Utf8;
    };
    match parse_instance(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OvdInstance { inner }));
            OvdStatus::Ok
        }
        Err(_) => OvdStatus::Parse,
    }
}

/// Generates a certified random instance. `mode` 0 keeps the instance free
/// of orthogonal triples (hence quadruples); `mode` 1 additionally plants an
/// orthogonal quadruple, whose indices can be recovered with
/// [`ovd_find_orthogonal_tuple`].
///
/// # Safety
/// `out` must be a valid pointer. On `Ok`, `*out` owns a new handle for
/// [`ovd_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn ovd_instance_generate(
    n: usize,
    ell: usize,
    mode: u32,
    density: f64,
    seed: u64,
    out: *mut *mut OvdInstance,
) -> OvdStatus {
    if out.is_null() {
        return OvdStatus::NullArgument;
    }
    let mode = match mode {
        0 => GenMode::NoQuadruple,
        1 => GenMode::PlantedQuadruple,
        _ => return OvdStatus::InvalidParams,
    };
    let params = GenParams { n, ell, mode, density, seed };
    match gen_instance(&params) {
        Ok((inner, _)) => {
            *out = Box::into_raw(Box::new(OvdInstance { inner }));
            OvdStatus::Ok
        }
        Err(GenError::InvalidParams(_)) => OvdStatus::InvalidParams,
        Err(GenError::BudgetExhausted { .. }) => OvdStatus::BudgetExhausted,
    }
}

/// Reports the vector count and vector length of an instance.
///
/// # Safety
/// All pointers must be valid; `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn ovd_instance_counts(
    inst: *const OvdInstance,
    n: *mut usize,
    ell: *mut usize,
) -> OvdStatus {
    if inst.is_null() || n.is_null() || ell.is_null() {
        return OvdStatus::NullArgument;
    }
    *n = (*inst).inner.n();
    *ell = (*inst).inner.ell();
    OvdStatus::Ok
}

/// Serializes an instance back to its textual format.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be a valid pointer. On
/// `Ok`, `*out` owns a NUL-terminated string for [`ovd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ovd_instance_write(
    inst: *const OvdInstance,
    out: *mut *mut c_char,
) -> OvdStatus {
    if inst.is_null() || out.is_null() {
        return OvdStatus::NullArgument;
    }
    string_out(write_instance(&(*inst).inner), out)
}

/// Searches for the lexicographically first orthogonal k-tuple
/// (non-decreasing indices, k between 2 and 4). On `Ok`, `*found` says
/// whether one exists, and if so `indices[0..k]` holds it.
///
/// # Safety
/// `inst` must be a live instance handle; `indices` must point to at least
/// `k` writable elements; `found` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ovd_find_orthogonal_tuple(
    inst: *const OvdInstance,
    k: usize,
    indices: *mut usize,
    found: *mut bool,
) -> OvdStatus {
    if inst.is_null() || indices.is_null() || found.is_null() {
        return OvdStatus::NullArgument;
    }
    if !(2..=4).contains(&k) {
        return OvdStatus::OutOfRange;
    }
    match find_orthogonal_tuple(&(*inst).inner, k) {
        Some(witness) => {
            for (slot, &index) in witness.indices.iter().enumerate() {
                *indices.add(slot) = index;
            }
            *found = true;
        }
        None => *found = false,
    }
    OvdStatus::Ok
}

/// Builds the reduction graph of a triple-free instance.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be a valid pointer. On
/// `Ok`, `*out` owns a new handle for [`ovd_reduction_free`].
#[no_mangle]
pub unsafe extern "C" fn ovd_reduce(
    inst: *const OvdInstance,
    out: *mut *mut OvdReduction,
) -> OvdStatus {
    if inst.is_null() || out.is_null() {
        return OvdStatus::NullArgument;
    }
    match build_reduction(&(*inst).inner) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OvdReduction { inner }));
            OvdStatus::Ok
        }
        Err(ReductionError::OrthogonalTriple(_)) => OvdStatus::OrthogonalTriple,
        Err(ReductionError::TooLarge { .. }) => OvdStatus::TooLarge,
        Err(ReductionError::BoundViolated { .. }) => OvdStatus::VerifyFailed,
    }
}

/// Copies the size accounting of a reduction into `sizes`.
///
/// # Safety
/// `reduction` must be a live reduction handle; `sizes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ovd_reduction_sizes(
    reduction: *const OvdReduction,
    sizes: *mut OvdSizes,
) -> OvdStatus {
    if reduction.is_null() || sizes.is_null() {
        return OvdStatus::NullArgument;
    }
    let report = (*reduction).inner.sizes();
    *sizes = OvdSizes {
        n: report.n,
        ell: report.ell,
        vertices: report.vertices,
        arcs: report.arcs,
        hub_arcs: report.hub_arcs,
        regular_arcs: report.regular_arcs,
        index_switching_arcs: report.index_switching_arcs,
        skew_arcs: report.skew_arcs,
        abc: report.abc,
        ab: report.ab,
        adx: report.adx,
        ady: report.ady,
        dc: report.dc,
        dcb: report.dcb,
    };
    OvdStatus::Ok
}

/// Serializes the reduction graph in DIMACS shortest-path format.
///
/// # Safety
/// `reduction` must be a live reduction handle; `out` must be valid. On
/// `Ok`, `*out` owns a NUL-terminated string for [`ovd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ovd_reduction_write_graph(
    reduction: *const OvdReduction,
    out: *mut *mut c_char,
) -> OvdStatus {
    if reduction.is_null() || out.is_null() {
        return OvdStatus::NullArgument;
    }
    string_out(write_graph((*reduction).inner.graph()), out)
}

/// Serializes one "<id>\t<label>" line per vertex.
///
/// # Safety
/// Same contract as [`ovd_reduction_write_graph`].
#[no_mangle]
pub unsafe extern "C" fn ovd_reduction_write_labels(
    reduction: *const OvdReduction,
    out: *mut *mut c_char,
) -> OvdStatus {
    if reduction.is_null() || out.is_null() {
        return OvdStatus::NullArgument;
    }
    string_out(write_labels(&(*reduction).inner), out)
}

/// Exact diameter over all ordered pairs; `OVD_INFINITY` when some pair is
/// unreachable. `source`/`target` receive the 0-based argmax pair.
///
/// # Safety
/// `reduction` must be a live reduction handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ovd_exact_diameter(
    reduction: *const OvdReduction,
    value: *mut u64,
    source: *mut u32,
    target: *mut u32,
) -> OvdStatus {
    if reduction.is_null() || value.is_null() || source.is_null() || target.is_null() {
        return OvdStatus::NullArgument;
    }
    let result = exact_diameter((*reduction).inner.graph());
    *value = result.value;
    *source = result.argmax.0;
    *target = result.argmax.1;
    OvdStatus::Ok
}

/// 2-approximation of the diameter from one pivot vertex (0-based); pass a
/// negative pivot for the default. The estimate `e` satisfies
/// `e <= diameter <= 2e` on strongly connected graphs.
///
/// # Safety
/// `reduction` must be a live reduction handle; `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ovd_two_approx(
    reduction: *const OvdReduction,
    pivot: i64,
    value: *mut u64,
) -> OvdStatus {
    if reduction.is_null() || value.is_null() {
        return OvdStatus::NullArgument;
    }
    let g = (*reduction).inner.graph();
    let pivot = if pivot < 0 {
        None
    } else if (pivot as u64) < g.n() as u64 {
        Some(pivot as u32)
    } else {
        return OvdStatus::OutOfRange;
    };
    *value = two_approx_estimate(g, pivot);
    OvdStatus::Ok
}

/// Builds the reduction, measures the exact diameter, and cross-checks the
/// 4-vs-7 dichotomy. On `Ok`, `verdict` is 0 when the diameter is 4 (no
/// orthogonal quadruple) and 1 when it is at least 7 (quadruple present).
///
/// # Safety
/// `inst` must be a live instance handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ovd_gap_verdict(
    inst: *const OvdInstance,
    verdict: *mut u32,
    diameter: *mut u64,
) -> OvdStatus {
    if inst.is_null() || verdict.is_null() || diameter.is_null() {
        return OvdStatus::NullArgument;
    }
    match gap_verdict(&(*inst).inner) {
        Ok(report) => {
            *verdict = match report.verdict {
                GapVerdict::Diam4 => 0,
                GapVerdict::DiamGe7 => 1,
            };
            *diameter = report.diameter;
            OvdStatus::Ok
        }
        Err(err) => match err {
            ovdiam::certify::CertifyError::Construction(ReductionError::OrthogonalTriple(_)) => {
                OvdStatus::OrthogonalTriple
            }
            ovdiam::certify::CertifyError::Construction(ReductionError::TooLarge { .. }) => {
                OvdStatus::TooLarge
            }
            _ => OvdStatus::VerifyFailed,
        },
    }
}

/// Releases an instance handle. Null is a no-op.
///
/// # Safety
/// `inst` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ovd_instance_free(inst: *mut OvdInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Releases a reduction handle. Null is a no-op.
///
/// # Safety
/// `reduction` must be null or a handle returned by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ovd_reduction_free(reduction: *mut OvdReduction) {
    if !reduction.is_null() {
        drop(Box::from_raw(reduction));
    }
}

/// Releases a string returned through a `char**` output. Null is a no-op.
///
/// # Safety
/// `text` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ovd_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Static description of a status code; never null.
#[no_mangle]
pub extern "C" fn ovd_status_message(status: OvdStatus) -> *const c_char {
    let message: &'static CStr = match status {
        OvdStatus::Ok => c"ok",
        OvdStatus::NullArgument => c"a required pointer argument was null",
        OvdStatus::Utf8 => c"input text was not valid UTF-8",
        OvdStatus::Parse => c"input text did not parse as an instance",
        OvdStatus::InvalidParams => c"generation parameters out of range",
        OvdStatus::BudgetExhausted => c"generation attempt budget exhausted",
        OvdStatus::OrthogonalTriple => c"instance admits an orthogonal triple",
        OvdStatus::TooLarge => c"reduction would exceed library limits",
        OvdStatus::OutOfRange => c"numeric argument out of range",
        OvdStatus::VerifyFailed => c"a verification step rejected the build",
    };
    message.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn parse(text: &str) -> *mut OvdInstance {
        let c = CString::new(text).unwrap();
        let mut handle = ptr::null_mut();
        assert_eq!(ovd_instance_parse(c.as_ptr(), &mut handle), OvdStatus::Ok);
        handle
    }

    unsafe fn take_string(text: *mut c_char) -> String {
        let s = CStr::from_ptr(text).to_str().unwrap().to_string();
        ovd_string_free(text);
        s
    }

    #[test]
    fn parse_counts_write_roundtrip() {
        unsafe {
            let inst = parse("2 3\n101\n110\n");
            let (mut n, mut ell) = (0usize, 0usize);
            assert_eq!(ovd_instance_counts(inst, &mut n, &mut ell), OvdStatus::Ok);
            assert_eq!((n, ell), (2, 3));
            let mut text = ptr::null_mut();
            assert_eq!(ovd_instance_write(inst, &mut text), OvdStatus::Ok);
            assert_eq!(take_string(text), "2 3\n101\n110\n");
            ovd_instance_free(inst);
        }
    }

    #[test]
    fn parse_rejects_malformed_text() {
        unsafe {
            let c = CString::new("2 3\n101\n").unwrap();
            let mut handle = ptr::null_mut();
            assert_eq!(ovd_instance_parse(c.as_ptr(), &mut handle), OvdStatus::Parse);
            assert_eq!(
                ovd_instance_parse(ptr::null(), &mut handle),
                OvdStatus::NullArgument
            );
        }
    }

    #[test]
    fn minimal_reduction_roundtrip() {
        unsafe {
            let inst = parse("1 1\n1\n");
            let mut reduction = ptr::null_mut();
            assert_eq!(ovd_reduce(inst, &mut reduction), OvdStatus::Ok);
            let mut sizes = OvdSizes::default();
            assert_eq!(ovd_reduction_sizes(reduction, &mut sizes), OvdStatus::Ok);
            assert_eq!((sizes.vertices, sizes.arcs), (8, 32));
            assert_eq!(sizes.hub_arcs, 22);

            let mut text = ptr::null_mut();
            assert_eq!(ovd_reduction_write_graph(reduction, &mut text), OvdStatus::Ok);
            assert!(take_string(text).starts_with("p sp 8 32\n"));
            assert_eq!(ovd_reduction_write_labels(reduction, &mut text), OvdStatus::Ok);
            assert_eq!(take_string(text).lines().count(), 8);

            let (mut value, mut s, mut t) = (0u64, 0u32, 0u32);
            assert_eq!(
                ovd_exact_diameter(reduction, &mut value, &mut s, &mut t),
                OvdStatus::Ok
            );
            assert_eq!(value, 4);
            assert!(s < 8 && t < 8);

            let mut estimate = 0u64;
            assert_eq!(ovd_two_approx(reduction, -1, &mut estimate), OvdStatus::Ok);
            assert!(estimate <= 4 && 4 <= 2 * estimate);
            assert_eq!(ovd_two_approx(reduction, 99, &mut estimate), OvdStatus::OutOfRange);

            ovd_reduction_free(reduction);
            ovd_instance_free(inst);
        }
    }

    #[test]
    fn triple_instances_are_rejected_with_a_status() {
        unsafe {
            let inst = parse("2 2\n10\n01\n");
            let mut reduction = ptr::null_mut();
            assert_eq!(ovd_reduce(inst, &mut reduction), OvdStatus::OrthogonalTriple);
            let (mut verdict, mut diameter) = (9u32, 0u64);
            assert_eq!(
                ovd_gap_verdict(inst, &mut verdict, &mut diameter),
                OvdStatus::OrthogonalTriple
            );
            ovd_instance_free(inst);
        }
    }

    #[test]
    fn generated_planted_instance_reports_the_gap() {
        unsafe {
            let mut inst = ptr::null_mut();
            assert_eq!(
                ovd_instance_generate(4, 5, 1, 0.9, 8, &mut inst),
                OvdStatus::Ok
            );
            let mut indices = [0usize; 4];
            let mut found = false;
            assert_eq!(
                ovd_find_orthogonal_tuple(inst, 4, indices.as_mut_ptr(), &mut found),
                OvdStatus::Ok
            );
            assert!(found);
            let (mut verdict, mut diameter) = (9u32, 0u64);
            assert_eq!(ovd_gap_verdict(inst, &mut verdict, &mut diameter), OvdStatus::Ok);
            assert_eq!(verdict, 1);
            assert!((7..=8).contains(&diameter));

            assert_eq!(
                ovd_instance_generate(4, 5, 7, 0.9, 8, &mut inst),
                OvdStatus::InvalidParams
            );
            ovd_instance_free(inst);
        }
    }

    #[test]
    fn no_quadruple_instance_has_verdict_zero() {
        unsafe {
            let mut inst = ptr::null_mut();
            assert_eq!(
                ovd_instance_generate(3, 4, 0, 0.85, 2, &mut inst),
                OvdStatus::Ok
            );
            let mut found = true;
            let mut indices = [0usize; 4];
            assert_eq!(
                ovd_find_orthogonal_tuple(inst, 4, indices.as_mut_ptr(), &mut found),
                OvdStatus::Ok
            );
            assert!(!found);
            assert_eq!(
                ovd_find_orthogonal_tuple(inst, 9, indices.as_mut_ptr(), &mut found),
                OvdStatus::OutOfRange
            );
            let (mut verdict, mut diameter) = (9u32, 0u64);
            assert_eq!(ovd_gap_verdict(inst, &mut verdict, &mut diameter), OvdStatus::Ok);
            assert_eq!((verdict, diameter), (0, 4));
            ovd_instance_free(inst);
        }
    }

    #[test]
    fn every_status_has_a_message() {
        for status in [
            OvdStatus::Ok,
            OvdStatus::NullArgument,
            OvdStatus::Utf8,
            OvdStatus::Parse,
            OvdStatus::InvalidParams,
            OvdStatus::BudgetExhausted,
            OvdStatus::OrthogonalTriple,
            OvdStatus::TooLarge,
            OvdStatus::OutOfRange,
            OvdStatus::VerifyFailed,
        ] {
            let message = ovd_status_message(status);
            assert!(!message.is_null());
            assert!(!unsafe { CStr::from_ptr(message) }.to_str().unwrap().is_empty());
        }
    }

    #[test]
    fn frees_accept_null() {
        unsafe {
            ovd_instance_free(ptr::null_mut());
            ovd_reduction_free(ptr::null_mut());
            ovd_string_free(ptr::null_mut());
        }
    }
}
