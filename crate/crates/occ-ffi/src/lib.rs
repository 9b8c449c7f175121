//! C ABI for the emotion engine: opaque engine handle, status codes,
//! JSON-in/JSON-out calls. The header is generated into `include/occ.h` by
//! the build script.
//!
//! Conventions:
//! - every function returns an [`OccStatus`]; outputs go through out-params
//! - strings are NUL-terminated UTF-8; returned strings are owned by the
//!   caller and must be released with `occ_string_free`
//! - on failure, `occ_last_error` returns a thread-local message valid
//!   until the next FFI call on the same thread

use libc::c_char;
use occ_core::{
    categorize, emit_trace, load_kb, parse_scenario, quantify, run_scenario, EngineParams,
    ExpressionMode, ExpressionProfile, History, KnowledgeBase, ParamsOverride, Stimulus,
    TraceFormat,
};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was null or not valid UTF-8.
    InvalidArgument = 1,
    /// Input failed validation (KB, scenario, stimulus or params).
    ValidationError = 2,
    /// The replay itself failed (e.g. double prospect resolution).
    RuntimeError = 3,
}

/// Opaque engine handle: an immutable knowledge base plus parameters.
pub struct OccEngine {
    kb: KnowledgeBase,
    params: EngineParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: OccStatus, message: &str) -> OccStatus {
    set_error(message);
    status
}

/// # Safety
/// `ptr` must be null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, OccStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(OccStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        OccStatus::InvalidArgument
    })
}

fn give_string(out: *mut *mut c_char, value: String) -> OccStatus {
    let sanitized = value.replace('\0', " ");
    let c = CString::new(sanitized).unwrap_or_default();
    unsafe {
        *out = c.into_raw();
    }
    OccStatus::Ok
}

/// Message for the most recent failure on this thread. Borrowed pointer;
/// valid until the next FFI call from the same thread. Never null.
#[no_mangle]
pub extern "C" fn occ_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by an `occ_*` call,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn occ_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create an engine from a KB document and an optional params-override
/// document (pass null for defaults). On success `*out_engine` owns the
/// engine; release with `occ_engine_free`.
///
/// # Safety
/// `kb_json` must be a NUL-terminated string; `params_json` null or the
/// same; `out_engine` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn occ_engine_new(
    kb_json: *const c_char,
    params_json: *const c_char,
    out_engine: *mut *mut OccEngine,
) -> OccStatus {
    if out_engine.is_null() {
        return fail(OccStatus::InvalidArgument, "null out_engine");
    }
    *out_engine = ptr::null_mut();
    let kb_doc = match read_str(kb_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let kb = match load_kb(kb_doc) {
        Ok(kb) => kb,
        Err(e) => return fail(OccStatus::ValidationError, &e.to_string()),
    };
    let params = if params_json.is_null() {
        EngineParams::default()
    } else {
        let doc = match read_str(params_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let overrides: ParamsOverride = match serde_json_from(doc) {
            Ok(o) => o,
            Err(e) => return fail(OccStatus::ValidationError, &e),
        };
        match overrides.apply(&EngineParams::default()) {
            Ok(p) => p,
            Err(e) => return fail(OccStatus::ValidationError, &e.to_string()),
        }
    };
    *out_engine = Box::into_raw(Box::new(OccEngine { kb, params }));
    OccStatus::Ok
}

fn serde_json_from<T: serde::de::DeserializeOwned>(doc: &str) -> Result<T, String> {
    serde_json::from_str(doc).map_err(|e| e.to_string())
}

/// Destroy an engine.
///
/// # Safety
/// `engine` must be null or a pointer from `occ_engine_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn occ_engine_free(engine: *mut OccEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// # Safety
/// `engine` must be a live pointer from `occ_engine_new`.
unsafe fn engine_ref<'a>(engine: *const OccEngine) -> Result<&'a OccEngine, OccStatus> {
    if engine.is_null() {
        set_error("null engine");
        return Err(OccStatus::InvalidArgument);
    }
    Ok(&*engine)
}

/// Replay a scenario document and return the trace as an owned string.
/// `profile` is one of "full22", "ortony", "ekman6"; `mode` is "dominant"
/// or "blend"; `format` is "jsonl" or "csv".
///
/// # Safety
/// `engine` must be live; string arguments NUL-terminated; `out_trace`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn occ_engine_run_scenario(
    engine: *const OccEngine,
    scenario_json: *const c_char,
    profile: *const c_char,
    mode: *const c_char,
    format: *const c_char,
    out_trace: *mut *mut c_char,
) -> OccStatus {
    if out_trace.is_null() {
        return fail(OccStatus::InvalidArgument, "null out_trace");
    }
    *out_trace = ptr::null_mut();
    let engine = match engine_ref(engine) {
        Ok(e) => e,
        Err(status) => return status,
    };
    let (scenario_doc, profile, mode, format) = match (
        read_str(scenario_json),
        read_str(profile),
        read_str(mode),
        read_str(format),
    ) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
        _ => return OccStatus::InvalidArgument,
    };
    let scenario = match parse_scenario(scenario_doc) {
        Ok(s) => s,
        Err(e) => return fail(OccStatus::ValidationError, &e.to_string()),
    };
    let Some(profile) = ExpressionProfile::parse(profile) else {
        return fail(OccStatus::ValidationError, "unknown profile");
    };
    let mode = match mode {
        "dominant" => ExpressionMode::Dominant,
        "blend" => ExpressionMode::Blend,
        _ => return fail(OccStatus::ValidationError, "unknown mode"),
    };
    let Some(format) = TraceFormat::parse(format) else {
        return fail(OccStatus::ValidationError, "unknown format");
    };
    match run_scenario(&engine.kb, &scenario, profile, mode, &engine.params) {
        Ok(trace) => give_string(out_trace, emit_trace(&trace, format)),
        Err(e) => fail(OccStatus::RuntimeError, &e.to_string()),
    }
}

/// One-shot appraisal of a stimulus document against an empty history at
/// t=0. Returns the fired signals as JSON lines (possibly empty).
///
/// # Safety
/// `engine` must be live; `stimulus_json` NUL-terminated; `out_signals`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn occ_engine_appraise(
    engine: *const OccEngine,
    stimulus_json: *const c_char,
    out_signals: *mut *mut c_char,
) -> OccStatus {
    if out_signals.is_null() {
        return fail(OccStatus::InvalidArgument, "null out_signals");
    }
    *out_signals = ptr::null_mut();
    let engine = match engine_ref(engine) {
        Ok(e) => e,
        Err(status) => return status,
    };
    let doc = match read_str(stimulus_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let stimulus: Stimulus = match serde_json_from(doc) {
        Ok(s) => s,
        Err(e) => return fail(OccStatus::ValidationError, &e),
    };
    if let Err(e) = stimulus.validate() {
        return fail(OccStatus::ValidationError, &e.to_string());
    }
    let history = History::new();
    let fires = match categorize(&stimulus, &engine.kb, &history, &engine.params) {
        Ok(f) => f,
        Err(e) => return fail(OccStatus::ValidationError, &e.to_string()),
    };
    let signals = quantify(&fires, &stimulus, &engine.kb, &history, 0, &engine.params);
    let mut out = String::new();
    for signal in &signals {
        out.push_str(&serde_json::to_string(signal).expect("signal serializes"));
        out.push('\n');
    }
    give_string(out_signals, out)
}
