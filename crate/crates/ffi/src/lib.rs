//! C ABI over [`tiltkit::Session`].
//!
//! Sessions are opaque handles. Every call returns a [`TiltkitStatus`];
//! strings handed out by the library are released with
//! [`tiltkit_string_free`]. The message of the last failure on the calling
//! thread is available from [`tiltkit_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tiltkit::battery;
use tiltkit::session::{RunOptions, Session, Status};

/// Result codes. Values match the exit codes of the `tiltkit` binary where
/// they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TiltkitStatus {
    Ok = 0,
    ComputationError = 1,
    ParseError = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    Panic = 5,
}

/// Opaque session handle.
pub struct TiltkitSession {
    session: Session,
    options: RunOptions,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> TiltkitStatus) -> TiltkitStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside tiltkit");
            TiltkitStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TiltkitStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(TiltkitStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        TiltkitStatus::InvalidUtf8
    })
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> TiltkitStatus {
    if out.is_null() {
        set_error("null output pointer");
        return TiltkitStatus::NullArgument;
    }
    *out = CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw();
    TiltkitStatus::Ok
}

/// Parses a session from DSL text. On success `*out` receives a handle to
/// be released with [`tiltkit_session_free`].
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_session_new(text: *const c_char, out: *mut *mut TiltkitSession) -> TiltkitStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return TiltkitStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Session::parse(text) {
            Ok(session) => {
                *out = Box::into_raw(Box::new(TiltkitSession { session, options: RunOptions::default() }));
                TiltkitStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                TiltkitStatus::ParseError
            }
        }
    })
}

/// # Safety
/// `session` must come from [`tiltkit_session_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_session_free(session: *mut TiltkitSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Sets the loop bounds used by [`tiltkit_session_run`].
///
/// # Safety
/// `session` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_session_set_options(
    session: *mut TiltkitSession,
    max_degree: i64,
    tower_depth: usize,
    resolution_length: usize,
) -> TiltkitStatus {
    guard(|| {
        let Some(s) = session.as_mut() else {
            set_error("null session");
            return TiltkitStatus::NullArgument;
        };
        s.options = RunOptions { max_degree, tower_depth, resolution_length };
        TiltkitStatus::Ok
    })
}

/// Runs every command of the session and writes the JSON array of results
/// to `*out_json`. Returns `ComputationError` if any command failed; the
/// JSON is written in that case too.
///
/// # Safety
/// `session` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_session_run(session: *const TiltkitSession, out_json: *mut *mut c_char) -> TiltkitStatus {
    guard(|| {
        let Some(s) = session.as_ref() else {
            set_error("null session");
            return TiltkitStatus::NullArgument;
        };
        let results = s.session.run_all(&s.options);
        let failed = results.iter().find(|r| r.status == Status::Error);
        let json = serde_json::to_string(&results).expect("serializable");
        let st = write_out(out_json, json);
        match (st, failed) {
            (TiltkitStatus::Ok, Some(r)) => {
                set_error(format!("{}: {}", r.command, r.message.clone().unwrap_or_default()));
                TiltkitStatus::ComputationError
            }
            (st, _) => st,
        }
    })
}

/// Writes the canonical DSL text of the session to `*out`.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_session_serialize(session: *const TiltkitSession, out: *mut *mut c_char) -> TiltkitStatus {
    guard(|| {
        let Some(s) = session.as_ref() else {
            set_error("null session");
            return TiltkitStatus::NullArgument;
        };
        write_out(out, s.session.serialize())
    })
}

/// Runs the acceptance battery and writes its JSON report to `*out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_battery(seed: u64, out: *mut *mut c_char) -> TiltkitStatus {
    guard(|| {
        let report = battery::run_battery(seed);
        let st = write_out(out, report.to_json());
        if st == TiltkitStatus::Ok && !report.passed {
            set_error("battery reported failures");
            return TiltkitStatus::ComputationError;
        }
        st
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn tiltkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tiltkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map(|c| c.as_ptr()).unwrap_or(ptr::null()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn tiltkit_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take(p: *mut c_char) -> String {
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { tiltkit_string_free(p) };
        s
    }

    fn last_error() -> String {
        let p = tiltkit_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
    }

    #[test]
    fn session_lifecycle() {
        let text = CString::new("ring R = QQ[x,y];\nideal I = (x,y) in R;\ngrade I R;\n").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { tiltkit_session_new(text.as_ptr(), &mut s) }, TiltkitStatus::Ok);
        assert!(tiltkit_last_error().is_null());
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { tiltkit_session_run(s, &mut out) }, TiltkitStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(json[0]["payload"]["grade"], 2);
        assert_eq!(unsafe { tiltkit_session_serialize(s, &mut out) }, TiltkitStatus::Ok);
        assert!(take(out).starts_with("ring R = QQ[x,y] order degrevlex;"));
        assert_eq!(unsafe { tiltkit_session_set_options(s, 4, 3, 6) }, TiltkitStatus::Ok);
        unsafe { tiltkit_session_free(s) };
    }

    #[test]
    fn error_codes() {
        let bad = CString::new("ring R = QQ[x,y];\nideal I = (x,,y) in R;").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { tiltkit_session_new(bad.as_ptr(), &mut s) }, TiltkitStatus::ParseError);
        assert!(s.is_null());
        assert!(last_error().starts_with("2:14:"));
        assert_eq!(unsafe { tiltkit_session_new(ptr::null(), &mut s) }, TiltkitStatus::NullArgument);

        let text = CString::new("ring R = QQ[x];\nideal I = (x) in R;\next I R 9;").unwrap();
        assert_eq!(unsafe { tiltkit_session_new(text.as_ptr(), &mut s) }, TiltkitStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { tiltkit_session_run(s, &mut out) }, TiltkitStatus::ComputationError);
        let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(json[0]["code"], "resolution-too-short");
        assert!(last_error().contains("ext I R 9"));
        unsafe { tiltkit_session_free(s) };
    }

    #[test]
    fn header_is_generated() {
        let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tiltkit.h")).unwrap();
        for name in ["tiltkit_session_new", "tiltkit_session_run", "tiltkit_string_free", "tiltkit_last_error", "TILTKIT_STATUS_PARSE_ERROR"] {
            assert!(h.contains(name), "{name} missing from header");
        }
        assert!(h.contains("typedef struct TiltkitSession TiltkitSession;"));
    }
}
