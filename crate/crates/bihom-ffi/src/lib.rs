//! C ABI over the bihom toolkit.
//!
//! Algebras travel as opaque `BihomAlgebra` handles created from (and
//! serialized back to) the JSON file format; reports come back as JSON
//! strings. Every fallible call returns a [`BihomStatus`] matching the
//! CLI exit-code contract: 0 success, 1 an identity suite failed, 2
//! usage/parse/validation error. On status 2 a description is available
//! from [`bihom_last_error_message`].
//!
//! All returned strings are heap-allocated and must be released with
//! [`bihom_string_free`]; handles with [`bihom_algebra_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;
use serde::Deserialize;

use bihom::error::Error;
use bihom::format::AlgebraFile;
use bihom::identities::Suite;
use bihom::linalg::LinearMap;
use bihom::rational::Rat;
use bihom::report::render_json;
use bihom::run::{
    run_check, run_construct, run_gen, ConstructKind, ConstructParams, ElementSpec, GenFamily,
    GenParams,
};

/// An algebra bundle behind an opaque pointer.
pub struct BihomAlgebra {
    file: AlgebraFile,
}

/// Result of a fallible call; mirrors the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum BihomStatus {
    /// The call succeeded (for checks: the suite passed).
    Ok = 0,
    /// The requested suite ran and failed (the report is still written).
    CheckFailed = 1,
    /// Usage, parse, or validation error; see `bihom_last_error_message`.
    Error = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) -> BihomStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    BihomStatus::Error
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn to_c_string(s: String) -> *mut c_char {
    // Interior NULs cannot occur in JSON produced by this crate.
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Error> {
    if ptr.is_null() {
        return Err(Error::Parse(format!("{what} must not be NULL")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Error::Parse(format!("{what} is not valid UTF-8")))
}

/// Returns the message of the most recent status-2 failure on this
/// thread, or NULL if none. The caller owns the string and must free it
/// with `bihom_string_free`.
#[no_mangle]
pub extern "C" fn bihom_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(msg) => to_c_string(msg.clone()),
        None => ptr::null_mut(),
    })
}

/// Frees a string returned by this library. NULL is accepted.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a function of
/// this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bihom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees an algebra handle. NULL is accepted.
///
/// # Safety
/// `alg` must be NULL or a handle previously returned by this library
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bihom_algebra_free(alg: *mut BihomAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Parses an algebra file from JSON text and validates its syntax. On
/// success writes a fresh handle to `out` and returns OK.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bihom_algebra_from_json(
    json: *const c_char,
    out: *mut *mut BihomAlgebra,
) -> BihomStatus {
    clear_error();
    if out.is_null() {
        return set_error("out must not be NULL".into());
    }
    let text = match read_str(json, "json") {
        Ok(t) => t,
        Err(e) => return set_error(e.to_string()),
    };
    let file = match AlgebraFile::from_json(text).and_then(|f| f.decode().map(|_| f)) {
        Ok(f) => f,
        Err(e) => return set_error(e.to_string()),
    };
    *out = Box::into_raw(Box::new(BihomAlgebra { file }));
    BihomStatus::Ok
}

/// Serializes a handle back to deterministic JSON. Returns NULL on a NULL
/// handle. The caller frees the string.
///
/// # Safety
/// `alg` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bihom_algebra_to_json(alg: *const BihomAlgebra) -> *mut c_char {
    match alg.as_ref() {
        Some(a) => to_c_string(a.file.to_json()),
        None => ptr::null_mut(),
    }
}

/// Carrier dimension of the algebra behind the handle; 0 for NULL.
///
/// # Safety
/// `alg` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn bihom_algebra_dim(alg: *const BihomAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.file.dim)
}

/// Builds a generator-family instance. `family` is `truncated-poly`,
/// `nilpotent` or `zero`; `size` is the family's carrier parameter;
/// `a` and `b` are canonical rational scalings (NULL means `1`).
///
/// # Safety
/// `family` must be a NUL-terminated string; `a`/`b` NULL or such
/// strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bihom_gen(
    family: *const c_char,
    size: usize,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut BihomAlgebra,
) -> BihomStatus {
    clear_error();
    if out.is_null() {
        return set_error("out must not be NULL".into());
    }
    let inner = || -> Result<AlgebraFile, Error> {
        let family = GenFamily::parse(read_str(family, "family")?)?;
        let parse_scale = |ptr: *const c_char, what: &str| -> Result<Rat, Error> {
            if ptr.is_null() {
                Ok(Rat::one())
            } else {
                Rat::parse_canonical(read_str(ptr, what)?)
            }
        };
        let params = GenParams {
            n: Some(size),
            m: Some(size),
            a_scale: parse_scale(a, "a")?,
            b_scale: parse_scale(b, "b")?,
        };
        run_gen(family, &params)
    };
    match inner() {
        Ok(file) => {
            *out = Box::into_raw(Box::new(BihomAlgebra { file }));
            BihomStatus::Ok
        }
        Err(e) => set_error(e.to_string()),
    }
}

/// Runs a named identity suite against the handle. Returns OK when the
/// suite passes and CHECK_FAILED when it ran and failed (in both cases
/// the JSON report is written to `report_json`), and ERROR for unknown or
/// inapplicable suites and invalid bundles. `max_witnesses` of 0 means
/// the default cap of 16.
///
/// # Safety
/// `alg` must be a live handle, `suite` a NUL-terminated string,
/// `report_json` NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bihom_check(
    alg: *const BihomAlgebra,
    suite: *const c_char,
    max_witnesses: usize,
    report_json: *mut *mut c_char,
) -> BihomStatus {
    clear_error();
    let algebra = match alg.as_ref() {
        Some(a) => a,
        None => return set_error("alg must not be NULL".into()),
    };
    let suite = match read_str(suite, "suite").and_then(Suite::parse) {
        Ok(s) => s,
        Err(e) => return set_error(e.to_string()),
    };
    let cap = if max_witnesses == 0 { bihom::DEFAULT_WITNESS_CAP } else { max_witnesses };
    match run_check(&algebra.file, suite, cap) {
        Ok(report) => {
            if !report_json.is_null() {
                *report_json = to_c_string(render_json(&report));
            }
            if report.passed() {
                BihomStatus::Ok
            } else {
                BihomStatus::CheckFailed
            }
        }
        Err(e) => set_error(e.to_string()),
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FfiConstructParams {
    element: Option<String>,
    element_b: Option<String>,
    n: Option<u32>,
    ta: Option<Vec<Vec<String>>>,
    tb: Option<Vec<Vec<String>>>,
    #[serde(default)]
    verify: bool,
}

fn parse_ffi_matrix(rows: &[Vec<String>], what: &str) -> Result<LinearMap, Error> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| Rat::parse_canonical(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    LinearMap::from_rows(parsed)
}

/// Applies a construction. `kind` is one of the construct kind names
/// (`yau-twist`, `twist-power`, `tensor`, `perturb-mu`, `perturb-thm1`,
/// `perturb-thm2`, `perturb-double`, `derivation-bhnp`,
/// `derivation-perturbed`, `bracket`); `second` is required only for
/// `tensor`. `params_json` is NULL or a JSON object with optional keys
/// `element`, `element_b` (rational lists like "1,0" or "auto"), `n`
/// (twist power), `ta`/`tb` (row-major matrices of rational strings) and
/// `verify` (re-run the promised suite on the output). Returns
/// CHECK_FAILED when `verify` is set and the promised suite fails.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `first` a live handle;
/// `second` NULL or a live handle; `params_json` NULL or a
/// NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bihom_construct(
    kind: *const c_char,
    first: *const BihomAlgebra,
    second: *const BihomAlgebra,
    params_json: *const c_char,
    out: *mut *mut BihomAlgebra,
) -> BihomStatus {
    clear_error();
    if out.is_null() {
        return set_error("out must not be NULL".into());
    }
    let first = match first.as_ref() {
        Some(a) => a,
        None => return set_error("first must not be NULL".into()),
    };
    let mut verify = false;
    let mut inner = || -> Result<AlgebraFile, Error> {
        let kind = ConstructKind::parse(read_str(kind, "kind")?)?;
        let ffi_params: FfiConstructParams = match params_json.is_null() {
            true => FfiConstructParams::default(),
            false => serde_json::from_str(read_str(params_json, "params_json")?)
                .map_err(|e| Error::Parse(format!("params_json: {e}")))?,
        };
        verify = ffi_params.verify;
        let params = ConstructParams {
            element: ffi_params.element.as_deref().map(ElementSpec::parse).transpose()?,
            element_b: ffi_params.element_b.as_deref().map(ElementSpec::parse).transpose()?,
            power: ffi_params.n,
            twist_alpha: ffi_params
                .ta
                .as_deref()
                .map(|m| parse_ffi_matrix(m, "ta"))
                .transpose()?,
            twist_beta: ffi_params
                .tb
                .as_deref()
                .map(|m| parse_ffi_matrix(m, "tb"))
                .transpose()?,
        };
        let mut inputs = vec![first.file.clone()];
        if let Some(second) = second.as_ref() {
            inputs.push(second.file.clone());
        }
        run_construct(kind, &inputs, &params, ffi_params.verify)
    };
    match inner() {
        Ok(file) => {
            *out = Box::into_raw(Box::new(BihomAlgebra { file }));
            BihomStatus::Ok
        }
        // With verify set, a violated promise is an identity failure, not
        // a usage error.
        Err(Error::InvariantViolation(msg)) if verify => {
            set_error(msg);
            BihomStatus::CheckFailed
        }
        Err(e) => set_error(e.to_string()),
    }
}
