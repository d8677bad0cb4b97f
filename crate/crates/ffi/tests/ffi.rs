use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lambda_dcs_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dcs_string_free(s) };
    out
}

fn last_error() -> String {
    let p = dcs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn eval_through_a_handle() {
    let tsv = c("Alice\tPlaceOfBirth\tSeattle\nBob\tPlaceOfBirth\tPortland\nBob\tAge\t40\n");
    let mut kb = ptr::null_mut();
    assert_eq!(unsafe { dcs_kb_load_str(tsv.as_ptr(), &mut kb) }, DcsStatus::Ok);
    assert_eq!(unsafe { dcs_kb_len(kb) }, 3);

    let mut out = ptr::null_mut();
    let q = c("PlaceOfBirth.Seattle | R[Age].Bob");
    assert_eq!(unsafe { dcs_eval(kb, q.as_ptr(), false, &mut out) }, DcsStatus::Ok);
    assert_eq!(take(out), r#"["Alice",40]"#);

    let q = c("Nope.Seattle");
    assert_eq!(unsafe { dcs_eval(kb, q.as_ptr(), true, &mut out) }, DcsStatus::ResolveError);
    assert!(last_error().contains("Nope"));

    let q = c("argmax(PlaceOfBirth.Seattle | Bob, PlaceOfBirth)");
    assert_eq!(unsafe { dcs_eval(kb, q.as_ptr(), false, &mut out) }, DcsStatus::EvalError);
    unsafe { dcs_kb_free(kb) };
}

#[test]
fn load_errors() {
    let mut kb = ptr::null_mut();
    let bad = c("only two\tfields\n");
    assert_eq!(unsafe { dcs_kb_load_str(bad.as_ptr(), &mut kb) }, DcsStatus::KbError);
    assert!(last_error().contains("line 1"));
    let missing = c("/nonexistent/kb.tsv");
    assert_eq!(unsafe { dcs_kb_load_file(missing.as_ptr(), &mut kb) }, DcsStatus::KbError);
    assert!(kb.is_null());
    let path = c(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/demo.tsv"));
    assert_eq!(unsafe { dcs_kb_load_file(path.as_ptr(), &mut kb) }, DcsStatus::Ok);
    assert!(unsafe { dcs_kb_len(kb) } > 0);
    unsafe { dcs_kb_free(kb) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dcs_eval(ptr::null(), c("a").as_ptr(), false, &mut out) }, DcsStatus::NullArgument);
    assert_eq!(unsafe { dcs_to_lc(ptr::null(), false, &mut out) }, DcsStatus::NullArgument);
    assert_eq!(unsafe { dcs_to_lc(c("a").as_ptr(), false, ptr::null_mut()) }, DcsStatus::NullArgument);
    let bytes = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { dcs_to_lc(bytes.as_ptr(), false, &mut out) }, DcsStatus::InvalidUtf8);
    unsafe {
        dcs_kb_free(ptr::null_mut());
        dcs_string_free(ptr::null_mut());
    }
}

#[test]
fn conversion_and_compilation() {
    let mut out = ptr::null_mut();
    let q = c("PlaceOfBirth.Seattle");
    assert_eq!(unsafe { dcs_to_lc(q.as_ptr(), true, &mut out) }, DcsStatus::Ok);
    assert_eq!(take(out), "lambda x . exists y . PlaceOfBirth(x,y) & [y = Seattle]");
    let prefix = c("http://ex.org/");
    assert_eq!(unsafe { dcs_to_sparql(q.as_ptr(), prefix.as_ptr(), &mut out) }, DcsStatus::Ok);
    assert!(take(out).starts_with("PREFIX : <http://ex.org/>\nSELECT DISTINCT ?x WHERE {\n"));
    let q = c("(mu x . Children.Influenced.x)");
    assert_eq!(unsafe { dcs_to_sparql(q.as_ptr(), ptr::null(), &mut out) }, DcsStatus::Unsupported);
    assert!(last_error().contains("mu"));
    let q = c("Seattle");
    assert_eq!(unsafe { dcs_to_lc(q.as_ptr(), false, &mut out) }, DcsStatus::Ok);
    assert!(dcs_last_error().is_null());
    take(out);
}

#[test]
fn check_reports_mismatch_count() {
    let mut kb = ptr::null_mut();
    assert_eq!(unsafe { dcs_kb_demo(&mut kb) }, DcsStatus::Ok);
    let mut n = 7;
    assert_eq!(unsafe { dcs_check(kb, 100, 3, 42, &mut n) }, DcsStatus::Ok);
    assert_eq!(n, 0);
    unsafe { dcs_kb_free(kb) };
}

/// Builds the C smoke program against the generated header and the static
/// library; skipped when no C compiler is installed.
#[test]
fn c_program_links_against_the_static_library() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("liblambda_dcs_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = profile_dir.join(format!("ffi-smoke-{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in [std::env::var("CC").unwrap_or_default().as_str(), "cc", "gcc", "clang"] {
        if !cc.is_empty() && Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
