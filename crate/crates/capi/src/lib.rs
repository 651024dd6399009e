//! C ABI for the milnor-atlas library.
//!
//! Two usage styles are exposed:
//!
//! - One-shot analysis functions (`milnor_weights_json`, …) that take
//!   polynomial expressions as NUL-terminated strings and return the same
//!   deterministic JSON documents the CLI emits. The returned string is
//!   owned by the caller and must be released with [`milnor_string_free`].
//! - An opaque [`MilnorMap`] handle for repeated point queries against one
//!   map without re-parsing.
//!
//! Every function returns a [`MilnorStatus`]; on any non-`Ok` status a
//! human-readable message is available from [`milnor_last_error`] until the
//! next call from the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use milnor_atlas::error::Error;
use milnor_atlas::report::{
    certificate_value, circle_family_value, float_value, fold_value, singularity_value,
    weight_solution_value, ReportDocument,
};
use milnor_atlas::singular::{MapSpec, SpherePoint, Tolerances};
use milnor_atlas::suites::{run_suite, SuiteOptions};
use serde_json::{json, Value};

/// ABI result code. Mirrors the CLI exit codes: 1 is a negative analysis
/// verdict on well-formed input, 2 unusable input, 3 a numerical failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorStatus {
    Ok = 0,
    VerdictFail = 1,
    InvalidInput = 2,
    NumericalError = 3,
    NullPointer = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> MilnorStatus {
    match err.exit_code() {
        1 => MilnorStatus::VerdictFail,
        2 => MilnorStatus::InvalidInput,
        _ => MilnorStatus::NumericalError,
    }
}

/// ABI revision of this header; bumped on any breaking change.
#[no_mangle]
pub extern "C" fn milnor_abi_version() -> u32 {
    1
}

/// Message describing the most recent failure on the calling thread. The
/// pointer stays valid until the next library call from the same thread; do
/// not free it.
#[no_mangle]
pub extern "C" fn milnor_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned through an `out_json` parameter.
///
/// # Safety
/// `s` must be a pointer previously returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn milnor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// input marshalling
// ---------------------------------------------------------------------------

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MilnorStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MilnorStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        MilnorStatus::InvalidInput
    })
}

unsafe fn read_str_array<'a>(
    ptrs: *const *const c_char,
    len: usize,
) -> Result<Vec<&'a str>, MilnorStatus> {
    if ptrs.is_null() {
        set_error("null string-array argument");
        return Err(MilnorStatus::NullPointer);
    }
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(read_str(*ptrs.add(k))?);
    }
    Ok(out)
}

fn parse_components(texts: &[&str]) -> Result<Vec<milnor_atlas::Polynomial>, Error> {
    let parsed: Vec<milnor_atlas::Polynomial> = texts
        .iter()
        .map(|t| milnor_atlas::parse_polynomial(t))
        .collect::<Result<_, _>>()?;
    let n = parsed.iter().map(|p| p.n_vars()).max().unwrap_or(1);
    parsed.iter().map(|p| p.embed(n)).collect()
}

fn write_out(out_json: *mut *mut c_char, text: String) -> MilnorStatus {
    let Ok(cstring) = CString::new(text) else {
        set_error("report contains an interior NUL byte");
        return MilnorStatus::NumericalError;
    };
    unsafe { *out_json = cstring.into_raw() };
    MilnorStatus::Ok
}

/// Run `body` with panic containment; a panic is reported as
/// [`MilnorStatus::Panic`] instead of unwinding across the FFI boundary.
fn guarded(body: impl FnOnce() -> MilnorStatus) -> MilnorStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in library call".to_string());
            set_error(&msg);
            MilnorStatus::Panic
        }
    }
}

// ---------------------------------------------------------------------------
// one-shot JSON analyses
// ---------------------------------------------------------------------------

/// Weight systems for `n_polys` polynomial expressions plus, for two or
/// more, the common-weight certificate. Writes a JSON document to
/// `*out_json`; returns `VerdictFail` when some polynomial has no weight
/// system or the tuple has no common certificate (the document still
/// explains why).
///
/// # Safety
/// `polys` must point to `n_polys` valid NUL-terminated strings and
/// `out_json` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_weights_json(
    polys: *const *const c_char,
    n_polys: usize,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let texts = match read_str_array(polys, n_polys) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        if texts.is_empty() {
            set_error("at least one polynomial is required");
            return MilnorStatus::InvalidInput;
        }
        let parsed = match parse_components(&texts) {
            Ok(p) => p,
            Err(err) => {
                set_error(&err.to_string());
                return status_of(&err);
            }
        };
        let mut doc = ReportDocument::new("weights", json!({ "polynomials": texts }));
        let mut all_ok = true;
        let mut solutions = Vec::new();
        for poly in &parsed {
            match milnor_atlas::weight_space(poly) {
                Ok(sol) => solutions.push(weight_solution_value(&sol)),
                Err(err) => {
                    all_ok = false;
                    solutions.push(json!({ "feasible": false, "error": err.to_string() }));
                }
            }
        }
        doc.insert("weight_solutions", Value::Array(solutions));
        if parsed.len() >= 2 {
            match milnor_atlas::common_weights_multi(&parsed) {
                Ok(Some(cert)) => doc.insert("certificate", certificate_value(&cert)),
                Ok(None) => {
                    all_ok = false;
                    doc.insert("certificate", Value::Null);
                }
                Err(err) => {
                    all_ok = false;
                    set_error(&err.to_string());
                    doc.insert("certificate", Value::Null);
                }
            }
        }
        let status = write_out(out_json, doc.to_json());
        if status == MilnorStatus::Ok && !all_ok {
            set_error("no weight system or no common certificate; see the report");
            return MilnorStatus::VerdictFail;
        }
        status
    })
}

/// Singularity test at one sphere point, given as comma-separated complex
/// literals ("0.7071+0i,0.7071+0i"). Returns `VerdictFail` when the point is
/// regular; the JSON report is written either way.
///
/// # Safety
/// `polys` must point to `n_polys` valid NUL-terminated strings; `point`
/// must be a valid NUL-terminated string; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn milnor_singular_point_json(
    polys: *const *const c_char,
    n_polys: usize,
    point: *const c_char,
    epsilon: f64,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let texts = match read_str_array(polys, n_polys) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let point_text = match read_str(point) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        let run = || -> Result<(ReportDocument, bool), Error> {
            let parsed = parse_components(&texts)?;
            let spec = MapSpec::new(parsed.clone(), epsilon)?;
            let coords = milnor_atlas::parse_point(point_text)?;
            if coords.len() != spec.n_vars() {
                return Err(Error::DimensionMismatch {
                    expected: spec.n_vars(),
                    got: coords.len(),
                });
            }
            let p = SpherePoint::project(coords, epsilon)?;
            let tol = Tolerances::default();
            let report = if parsed.len() == 2 {
                match milnor_atlas::common_weights_multi(&parsed) {
                    Ok(Some(cert)) => milnor_atlas::is_singular_algebraic(
                        &parsed[0], &parsed[1], &cert, &p, &tol,
                    )?,
                    _ => milnor_atlas::is_singular_numeric(&spec, &p, &tol)?,
                }
            } else {
                milnor_atlas::is_singular_numeric(&spec, &p, &tol)?
            };
            let mut doc = ReportDocument::new(
                "singular",
                json!({
                    "polynomials": texts,
                    "epsilon": float_value(epsilon),
                    "point": point_text,
                }),
            );
            let singular = report.numeric_singular;
            doc.insert("singularity", singularity_value(&report));
            Ok((doc, singular))
        };
        match run() {
            Ok((doc, singular)) => {
                let status = write_out(out_json, doc.to_json());
                if status == MilnorStatus::Ok && !singular {
                    set_error("the point is regular");
                    return MilnorStatus::VerdictFail;
                }
                status
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Enumerate the singular circles of a two-variable homogeneous pair.
///
/// # Safety
/// `f`, `g` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn milnor_circles_json(
    f: *const c_char,
    g: *const c_char,
    epsilon: f64,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let (f_text, g_text) = match (read_str(f), read_str(g)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    guarded(move || {
        let run = || -> Result<ReportDocument, Error> {
            let parsed = parse_components(&[f_text, g_text])?;
            let family = milnor_atlas::homogeneous_2var_circles(&parsed[0], &parsed[1], epsilon)?;
            let mut doc = ReportDocument::new(
                "singular",
                json!({
                    "polynomials": [f_text, g_text],
                    "epsilon": float_value(epsilon),
                    "mode": "circles",
                }),
            );
            doc.insert("circles", circle_family_value(&family));
            Ok(doc)
        };
        match run() {
            Ok(doc) => write_out(out_json, doc.to_json()),
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Multistart search for singular points on the sphere of radius `epsilon`.
///
/// # Safety
/// `polys` must point to `n_polys` valid NUL-terminated strings and
/// `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn milnor_scan_json(
    polys: *const *const c_char,
    n_polys: usize,
    epsilon: f64,
    seed: u64,
    restarts: usize,
    iterations: usize,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let texts = match read_str_array(polys, n_polys) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        let run = || -> Result<ReportDocument, Error> {
            if restarts == 0 || iterations == 0 {
                return Err(Error::InvalidInput(
                    "restarts and iterations must be at least 1".into(),
                ));
            }
            let parsed = parse_components(&texts)?;
            let spec = MapSpec::new(parsed, epsilon)?;
            let tol = Tolerances::default();
            let hits = milnor_atlas::sphere_search(&spec, restarts, iterations, seed, &tol);
            let singular_count = hits.iter().filter(|r| r.numeric_singular).count();
            let mut doc = ReportDocument::new(
                "singular",
                json!({
                    "polynomials": texts,
                    "epsilon": float_value(epsilon),
                    "seed": seed,
                    "restarts": restarts,
                    "iterations": iterations,
                    "mode": "scan",
                }),
            );
            doc.insert(
                "scan",
                json!({
                    "singular_count": singular_count,
                    "reports": hits.iter().map(singularity_value).collect::<Vec<_>>(),
                }),
            );
            Ok(doc)
        };
        match run() {
            Ok(doc) => write_out(out_json, doc.to_json()),
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Fold classification of the pair (f, g) at a singular sphere point.
/// Returns `VerdictFail` when the point is singular but not a fold.
///
/// # Safety
/// `f`, `g`, `point` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn milnor_fold_json(
    f: *const c_char,
    g: *const c_char,
    point: *const c_char,
    epsilon: f64,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let (f_text, g_text) = match (read_str(f), read_str(g)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let point_text = match read_str(point) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        let run = || -> Result<(ReportDocument, bool), Error> {
            let parsed = parse_components(&[f_text, g_text])?;
            let cert = milnor_atlas::common_weights_multi(&parsed)?
                .ok_or(Error::CertificateRequired)?;
            let coords = milnor_atlas::parse_point(point_text)?;
            if coords.len() != parsed[0].n_vars() {
                return Err(Error::DimensionMismatch {
                    expected: parsed[0].n_vars(),
                    got: coords.len(),
                });
            }
            let p = SpherePoint::project(coords, epsilon)?;
            let tol = Tolerances::default();
            let report = milnor_atlas::fold_test(&parsed[0], &parsed[1], &cert, &p, &tol)?;
            let mut doc = ReportDocument::new(
                "fold",
                json!({
                    "polynomials": [f_text, g_text],
                    "epsilon": float_value(epsilon),
                    "point": point_text,
                }),
            );
            let is_fold = report.is_fold;
            doc.insert("fold", fold_value(&report));
            Ok((doc, is_fold))
        };
        match run() {
            Ok((doc, is_fold)) => {
                let status = write_out(out_json, doc.to_json());
                if status == MilnorStatus::Ok && !is_fold {
                    set_error("the singular point is not a fold");
                    return MilnorStatus::VerdictFail;
                }
                status
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Run a named verification suite ("prop33" … "prop53") with default
/// parameters and the given seed. Returns `VerdictFail` when any assertion
/// fails; the JSON report lists each assertion either way.
///
/// # Safety
/// `suite` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn milnor_verify_json(
    suite: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> MilnorStatus {
    if out_json.is_null() {
        set_error("null out_json");
        return MilnorStatus::NullPointer;
    }
    let suite_name = match read_str(suite) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        let opts = SuiteOptions {
            seed,
            ..SuiteOptions::default()
        };
        match run_suite(suite_name, &opts) {
            Ok(report) => {
                let mut doc = ReportDocument::new(
                    "verify",
                    json!({ "suite": suite_name, "seed": seed }),
                );
                doc.insert(
                    "verify",
                    json!({
                        "suite": report.suite,
                        "passed": report.passed(),
                        "assertions": report
                            .assertions
                            .iter()
                            .map(|a| {
                                json!({
                                    "name": a.name,
                                    "passed": a.passed,
                                    "detail": a.detail,
                                })
                            })
                            .collect::<Vec<_>>(),
                    }),
                );
                let passed = report.passed();
                let status = write_out(out_json, doc.to_json());
                if status == MilnorStatus::Ok && !passed {
                    set_error("one or more suite assertions failed");
                    return MilnorStatus::VerdictFail;
                }
                status
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

// ---------------------------------------------------------------------------
// opaque map handle
// ---------------------------------------------------------------------------

/// Opaque handle over a validated, parsed map, for repeated point queries
/// without re-parsing.
pub struct MilnorMap {
    spec: MapSpec,
    tolerances: Tolerances,
}

/// Build a map handle from polynomial expressions and a sphere radius.
/// On success `*out` owns the handle; release it with [`milnor_map_free`].
///
/// # Safety
/// `polys` must point to `n_polys` valid NUL-terminated strings and `out`
/// must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn milnor_map_new(
    polys: *const *const c_char,
    n_polys: usize,
    epsilon: f64,
    out: *mut *mut MilnorMap,
) -> MilnorStatus {
    if out.is_null() {
        set_error("null out");
        return MilnorStatus::NullPointer;
    }
    let texts = match read_str_array(polys, n_polys) {
        Ok(t) => t,
        Err(status) => return status,
    };
    guarded(move || {
        let run = || -> Result<MilnorMap, Error> {
            let parsed = parse_components(&texts)?;
            Ok(MilnorMap {
                spec: MapSpec::new(parsed, epsilon)?,
                tolerances: Tolerances::default(),
            })
        };
        match run() {
            Ok(map) => {
                *out = Box::into_raw(Box::new(map));
                MilnorStatus::Ok
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Release a map handle. Null is ignored.
///
/// # Safety
/// `map` must be a handle from [`milnor_map_new`] not yet freed (or null).
#[no_mangle]
pub unsafe extern "C" fn milnor_map_free(map: *mut MilnorMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Number of complex variables of the map behind the handle.
///
/// # Safety
/// `map` must be a live handle from [`milnor_map_new`].
#[no_mangle]
pub unsafe extern "C" fn milnor_map_n_vars(map: *const MilnorMap) -> usize {
    if map.is_null() {
        return 0;
    }
    (*map).spec.n_vars()
}

/// Dependence margin at a sphere point given as `n_complex` interleaved
/// (re, im) coordinate pairs; the point is re-projected onto the sphere
/// when its norm deviates by less than a relative 1e-6.
///
/// # Safety
/// `map` must be a live handle; `coords` must point to `2 * n_complex`
/// doubles; `out_margin` must be valid.
#[no_mangle]
pub unsafe extern "C" fn milnor_map_dependence_margin(
    map: *const MilnorMap,
    coords: *const f64,
    n_complex: usize,
    out_margin: *mut f64,
) -> MilnorStatus {
    if map.is_null() || coords.is_null() || out_margin.is_null() {
        set_error("null argument");
        return MilnorStatus::NullPointer;
    }
    let handle = &*map;
    let raw = std::slice::from_raw_parts(coords, 2 * n_complex);
    guarded(move || {
        let run = || -> Result<f64, Error> {
            if n_complex != handle.spec.n_vars() {
                return Err(Error::DimensionMismatch {
                    expected: handle.spec.n_vars(),
                    got: n_complex,
                });
            }
            let point: Vec<_> = raw
                .chunks_exact(2)
                .map(|c| num_complex_from(c[0], c[1]))
                .collect();
            let p = SpherePoint::project(point, handle.spec.epsilon())?;
            milnor_atlas::dependence_margin(&handle.spec, p.coords())
        };
        match run() {
            Ok(margin) => {
                *out_margin = margin;
                MilnorStatus::Ok
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

/// Singularity verdict at a sphere point given as interleaved (re, im)
/// pairs. `*out_singular` is 1 when the point is singular, else 0; the
/// margin is always written. The status is `Ok` for both verdicts.
///
/// # Safety
/// `map` must be a live handle; `coords` must point to `2 * n_complex`
/// doubles; `out_singular` and `out_margin` must be valid.
#[no_mangle]
pub unsafe extern "C" fn milnor_map_is_singular(
    map: *const MilnorMap,
    coords: *const f64,
    n_complex: usize,
    out_singular: *mut i32,
    out_margin: *mut f64,
) -> MilnorStatus {
    if map.is_null() || coords.is_null() || out_singular.is_null() || out_margin.is_null() {
        set_error("null argument");
        return MilnorStatus::NullPointer;
    }
    let handle = &*map;
    let raw = std::slice::from_raw_parts(coords, 2 * n_complex);
    guarded(move || {
        let run = || -> Result<(bool, f64), Error> {
            if n_complex != handle.spec.n_vars() {
                return Err(Error::DimensionMismatch {
                    expected: handle.spec.n_vars(),
                    got: n_complex,
                });
            }
            let point: Vec<_> = raw
                .chunks_exact(2)
                .map(|c| num_complex_from(c[0], c[1]))
                .collect();
            let p = SpherePoint::project(point, handle.spec.epsilon())?;
            let report =
                milnor_atlas::is_singular_numeric(&handle.spec, &p, &handle.tolerances)?;
            Ok((report.numeric_singular, report.numeric_margin))
        };
        match run() {
            Ok((singular, margin)) => {
                *out_singular = i32::from(singular);
                *out_margin = margin;
                MilnorStatus::Ok
            }
            Err(err) => {
                set_error(&err.to_string());
                status_of(&err)
            }
        }
    })
}

fn num_complex_from(re: f64, im: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(re, im)
}
