//! C ABI over `equigraph`.
//!
//! Every fallible call returns an [`EgStatus`]; on failure the message is
//! available from [`eg_last_error`] until the next call on the same thread.
//! Handles are opaque and released with their `_free` function. Strings
//! returned through out-parameters are released with [`eg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use equigraph::graphs::{certified_spectrum, gen_named, parse_graph, Family, FamilyArgs, Graph};
use equigraph::rings::{equien_check, unitary_spectrum, RingProfile};
use equigraph::spectra::{check_equienergetic, energy, Spectrum};
use equigraph::srg::{classify, equien_condition, srg_spectrum, SrgParams};
use equigraph::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParameter = 3,
    Infeasible = 4,
    UncertifiableBranch = 5,
    ConvergenceFailure = 6,
    Parse = 7,
    RouteDisagreement = 8,
    InvalidProfile = 9,
    NonSymmetricConnection = 10,
    NotSemiprimitive = 11,
    UnsupportedFactor = 12,
    Output = 13,
    OutOfRange = 14,
    Panic = 15,
}

impl From<&Error> for EgStatus {
    fn from(e: &Error) -> EgStatus {
        match e {
            Error::InvalidParameter(_) => EgStatus::InvalidParameter,
            Error::Infeasible(_) => EgStatus::Infeasible,
            Error::UncertifiableBranch { .. } => EgStatus::UncertifiableBranch,
            Error::ConvergenceFailure { .. } => EgStatus::ConvergenceFailure,
            Error::Parse { .. } => EgStatus::Parse,
            Error::RouteDisagreement(_) => EgStatus::RouteDisagreement,
            Error::InvalidProfile(_) => EgStatus::InvalidProfile,
            Error::NonSymmetricConnection => EgStatus::NonSymmetricConnection,
            Error::NotSemiprimitive(_) => EgStatus::NotSemiprimitive,
            Error::UnsupportedFactor(_) => EgStatus::UnsupportedFactor,
            Error::Output { .. } => EgStatus::Output,
        }
    }
}

/// A simple undirected graph.
pub struct EgGraph(Graph);

/// A spectrum: eigenvalues with multiplicities, exact or with a radius.
pub struct EgSpectrum(Spectrum);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(EgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure((&e).into(), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EgStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(EgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(EgStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(EgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(EgStatus::NullPointer, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn eg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text format: `n loops` header, then one `u v` edge per line.
///
/// # Safety
/// `text` is a NUL-terminated string; `graph` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_parse(text: *const c_char, graph: *mut *mut EgGraph) -> EgStatus {
    guard(|| {
        let slot = out(graph, "graph")?;
        let g = parse_graph(c_str(text, "text")?)?;
        *slot = Box::into_raw(Box::new(EgGraph(g)));
        Ok(())
    })
}

/// Builds a named family; `args_json` holds its parameters, for example
/// `{"t": 5}` for `crown` or `{"shifts": [5, -5], "repeats": 7}` for `lcf`.
/// A null `args_json` means no parameters.
///
/// # Safety
/// `name` is a NUL-terminated string, `args_json` is null or one; `graph`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_family(
    name: *const c_char,
    args_json: *const c_char,
    graph: *mut *mut EgGraph,
) -> EgStatus {
    guard(|| {
        let slot = out(graph, "graph")?;
        let name = c_str(name, "name")?;
        let args: FamilyArgs = if args_json.is_null() {
            FamilyArgs::default()
        } else {
            serde_json::from_str(c_str(args_json, "args_json")?)
                .map_err(|e| Failure(EgStatus::Parse, format!("args_json: {e}")))?
        };
        let g = gen_named(&Family::from_args(name, &args)?)?;
        *slot = Box::into_raw(Box::new(EgGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_free(graph: *mut EgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, 0 for a null handle.
///
/// # Safety
/// `graph` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_order(graph: *const EgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Numeric spectrum; integer eigenvalues are certified exact.
///
/// # Safety
/// `graph` is a live handle; `spectrum` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_spectrum(
    graph: *const EgGraph,
    spectrum: *mut *mut EgSpectrum,
) -> EgStatus {
    guard(|| {
        let slot = out(spectrum, "spectrum")?;
        let s = certified_spectrum(&borrow(graph, "graph")?.0)?;
        *slot = Box::into_raw(Box::new(EgSpectrum(s)));
        Ok(())
    })
}

/// Exact spectrum of a strongly regular parameter tuple.
///
/// # Safety
/// `spectrum` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_srg_spectrum(
    n: u64,
    k: u64,
    e: u64,
    d: u64,
    spectrum: *mut *mut EgSpectrum,
) -> EgStatus {
    guard(|| {
        let slot = out(spectrum, "spectrum")?;
        let s = srg_spectrum(&SrgParams::new(n, k, e, d))?;
        *slot = Box::into_raw(Box::new(EgSpectrum(s)));
        Ok(())
    })
}

/// Exact spectrum of the unitary Cayley graph of a ring given by its
/// profile `q1:m1,q2:m2,...`.
///
/// # Safety
/// `profile` is a NUL-terminated string; `spectrum` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_ring_spectrum(
    profile: *const c_char,
    spectrum: *mut *mut EgSpectrum,
) -> EgStatus {
    guard(|| {
        let slot = out(spectrum, "spectrum")?;
        let p: RingProfile = c_str(profile, "profile")?.parse()?;
        *slot = Box::into_raw(Box::new(EgSpectrum(unitary_spectrum(&p))));
        Ok(())
    })
}

/// Parses the text form `{[3], [1]^5, [-2]^4}` (braces and brackets
/// optional); values may be surds such as `-1/2 + 1/2*sqrt(5)`.
///
/// # Safety
/// `text` is a NUL-terminated string; `spectrum` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_parse(
    text: *const c_char,
    spectrum: *mut *mut EgSpectrum,
) -> EgStatus {
    guard(|| {
        let slot = out(spectrum, "spectrum")?;
        let s: Spectrum = c_str(text, "text")?.parse()?;
        *slot = Box::into_raw(Box::new(EgSpectrum(s)));
        Ok(())
    })
}

/// # Safety
/// `spectrum` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_free(spectrum: *mut EgSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Number of distinct entries, 0 for a null handle.
///
/// # Safety
/// `spectrum` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_len(spectrum: *const EgSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.entries().len())
}

/// Entry `index` in descending order: its value (midpoint for approximate
/// entries), radius (0 when exact) and multiplicity.
///
/// # Safety
/// `spectrum` is a live handle; the out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_entry(
    spectrum: *const EgSpectrum,
    index: usize,
    value: *mut f64,
    radius: *mut f64,
    multiplicity: *mut u64,
) -> EgStatus {
    guard(|| {
        let s = &borrow(spectrum, "spectrum")?.0;
        let (v, r, m) = (
            out(value, "value")?,
            out(radius, "radius")?,
            out(multiplicity, "multiplicity")?,
        );
        let (e, mult) = s.entries().get(index).ok_or_else(|| {
            Failure(
                EgStatus::OutOfRange,
                format!("entry {index} of {}", s.entries().len()),
            )
        })?;
        *v = e.to_f64();
        *r = e.radius();
        *m = *mult;
        Ok(())
    })
}

/// Text form of the spectrum, freed with [`eg_string_free`].
///
/// # Safety
/// `spectrum` is a live handle; `text` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_to_string(
    spectrum: *const EgSpectrum,
    text: *mut *mut c_char,
) -> EgStatus {
    guard(|| {
        let slot = out(text, "text")?;
        *slot = c_string(borrow(spectrum, "spectrum")?.0.to_string());
        Ok(())
    })
}

/// Energy as a midpoint and radius, plus its exact form when available
/// (`exact` receives null otherwise; free it with [`eg_string_free`]).
/// `exact` may itself be null if the caller does not want the string.
///
/// # Safety
/// `spectrum` is a live handle; `value` and `radius` are writable.
#[no_mangle]
pub unsafe extern "C" fn eg_spectrum_energy(
    spectrum: *const EgSpectrum,
    value: *mut f64,
    radius: *mut f64,
    exact: *mut *mut c_char,
) -> EgStatus {
    guard(|| {
        let q = energy(&borrow(spectrum, "spectrum")?.0);
        *out(value, "value")? = q.to_f64();
        *out(radius, "radius")? = q.radius;
        if let Some(slot) = exact.as_mut() {
            *slot = if q.is_exact() {
                c_string(q.exact.to_string())
            } else {
                ptr::null_mut()
            };
        }
        Ok(())
    })
}

/// Whether a `k`-regular graph with this spectrum has the energy of its
/// complement; `loops` selects complements taken with loops.
///
/// # Safety
/// `spectrum` is a live handle; `equal` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_check_equienergetic(
    spectrum: *const EgSpectrum,
    k: i64,
    loops: bool,
    equal: *mut bool,
) -> EgStatus {
    guard(|| {
        let r = check_equienergetic(&borrow(spectrum, "spectrum")?.0, k, loops)?;
        *out(equal, "equal")? = r.equal;
        Ok(())
    })
}

/// Equienergy of an srg tuple and its complement tuple.
///
/// # Safety
/// `equal` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_srg_check(
    n: u64,
    k: u64,
    e: u64,
    d: u64,
    equal: *mut bool,
) -> EgStatus {
    guard(|| {
        let slot = out(equal, "equal")?;
        *slot = equien_condition(&SrgParams::new(n, k, e, d))?;
        Ok(())
    })
}

/// Class of an srg tuple: `none`, `Conference(d)`, `CaseB(h=..,l=..)` or
/// `CaseC(h=..,l=..)`; freed with [`eg_string_free`].
///
/// # Safety
/// `class` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_srg_classify(
    n: u64,
    k: u64,
    e: u64,
    d: u64,
    class: *mut *mut c_char,
) -> EgStatus {
    guard(|| {
        let slot = out(class, "class")?;
        *slot = c_string(classify(&SrgParams::new(n, k, e, d))?.to_string());
        Ok(())
    })
}

/// Equienergy of a ring's unitary Cayley graph and its complement.
///
/// # Safety
/// `profile` is a NUL-terminated string; `equal` is writable.
#[no_mangle]
pub unsafe extern "C" fn eg_ring_check(profile: *const c_char, equal: *mut bool) -> EgStatus {
    guard(|| {
        let slot = out(equal, "equal")?;
        let p: RingProfile = c_str(profile, "profile")?.parse()?;
        *slot = equien_check(&p)?.equal;
        Ok(())
    })
}
