use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use biserial_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn make(p: u32, spec: &str) -> *mut BsRep {
    let mut out = ptr::null_mut();
    let st = unsafe { bs_rep_from_spec(p, cs(spec).as_ptr(), &mut out) };
    assert_eq!(st, BsStatus::Ok, "{spec}");
    out
}

fn last_error() -> String {
    let p = bs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn dims_and_hom() {
    let s = make(7, "str: be al- la");
    let (mut dim, mut dims) = (0usize, [0usize; 3]);
    unsafe {
        assert_eq!(bs_rep_dims(s, &mut dim, dims.as_mut_ptr()), BsStatus::Ok);
        assert_eq!(dim, 4);
        assert_eq!(dims.iter().sum::<usize>(), 4);
        let mut n = 0usize;
        assert_eq!(bs_hom_dim(s, s, true, &mut n), BsStatus::Ok);
        assert_eq!(n, 1);
        bs_rep_free(s);
    }
}

#[test]
fn simple_module_classification() {
    let s = make(7, "1_0");
    let mut out: *mut c_char = ptr::null_mut();
    unsafe {
        assert_eq!(bs_classify_json(s, 6, &mut out), BsStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        bs_string_free(out);
        bs_rep_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["tag"], "k_mod_t2");
        assert_eq!(v["tangent_dim"], 1);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(bs_rep_from_spec(9, cs("1_0").as_ptr(), &mut out), BsStatus::InvalidPrime);
        assert!(last_error().contains('9'));
        assert_eq!(bs_rep_from_spec(7, cs("band:p:mu=7").as_ptr(), &mut out), BsStatus::InvalidParameter);
        assert_eq!(bs_rep_from_spec(7, cs("str: al qq").as_ptr(), &mut out), BsStatus::Parse);
        assert!(last_error().contains("qq"));
        assert_eq!(bs_rep_from_spec(7, ptr::null(), &mut out), BsStatus::NullPointer);
        assert!(out.is_null());
        let a = make(7, "1_0");
        let b = make(11, "1_0");
        let mut flag = false;
        assert_eq!(bs_is_isomorphic(a, b, &mut flag), BsStatus::FieldMismatch);
        assert_eq!(bs_hom_dim(a, ptr::null(), false, ptr::null_mut()), BsStatus::NullPointer);
        bs_rep_free(a);
        bs_rep_free(b);
        bs_rep_free(ptr::null_mut());
    }
}

#[test]
fn header_exports_and_c_smoke_test_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/biserial.h")).unwrap();
    for sym in ["bs_rep_from_spec", "bs_rep_free", "bs_classify_json", "bs_last_error", "BS_STATUS_PARSE"] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbiserial_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success(), "C smoke test failed to build");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
