//! Exercises the C ABI from Rust through raw pointers, as a C caller would.

use std::ffi::CStr;
use std::ptr;

use qcert_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { qcert_string_free(p) };
    s
}

#[test]
fn pinned_matrix_round_trip() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qcert_matrix_build(4, QCERT_FAMILY_D, 8, 2, &mut m) }, QcertStatus::Ok);
    assert_eq!(unsafe { qcert_matrix_dim(m) }, 1);
    let json: serde_json::Value = serde_json::from_str(&take_string(unsafe { qcert_matrix_json(m) })).unwrap();
    assert_eq!(json["entries"][0][0], "320000000000");
    let mut c = QcertClassification::Indefinite;
    assert_eq!(unsafe { qcert_matrix_classify(m, &mut c) }, QcertStatus::Ok);
    assert_eq!(c, QcertClassification::PositiveDefinite);
    unsafe { qcert_matrix_free(m) };
}

#[test]
fn failure_dimension_classifies_indefinite() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qcert_matrix_build(6, QCERT_FAMILY_D, 27, 2, &mut m) }, QcertStatus::Ok);
    let mut c = QcertClassification::PositiveDefinite;
    assert_eq!(unsafe { qcert_matrix_classify(m, &mut c) }, QcertStatus::Ok);
    assert_eq!(c, QcertClassification::Indefinite);
    unsafe { qcert_matrix_free(m) };
}

#[test]
fn errors_map_to_codes_with_messages() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qcert_matrix_build(4, 7, 8, 2, &mut m) }, QcertStatus::InvalidArgument);
    assert_eq!(unsafe { qcert_matrix_build(5, QCERT_FAMILY_D, 8, 2, &mut m) }, QcertStatus::InvalidArgument);
    assert_eq!(unsafe { qcert_matrix_build(4, QCERT_FAMILY_H, 10, 2, &mut m) }, QcertStatus::Domain);
    assert!(m.is_null());
    let msg = unsafe { CStr::from_ptr(qcert_last_error()) }.to_string_lossy().into_owned();
    assert!(msg.contains("no admissible block"), "{msg}");
    assert_eq!(unsafe { qcert_matrix_build(4, QCERT_FAMILY_D, 8, 2, ptr::null_mut()) }, QcertStatus::InvalidArgument);
    let mut c = QcertClassification::Indefinite;
    assert_eq!(unsafe { qcert_matrix_classify(ptr::null(), &mut c) }, QcertStatus::NullPointer);
    assert_eq!(unsafe { qcert_matrix_dim(ptr::null()) }, 0);
    unsafe { qcert_matrix_free(ptr::null_mut()) };
    unsafe { qcert_string_free(ptr::null_mut()) };
}

#[test]
fn gamma_json_matches_pinned_solution() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qcert_linsys_gamma_json(4, 10, 2, 0, &mut s) }, QcertStatus::Ok);
    assert_eq!(take_string(s), r#"["-1/8","-1/16","-1/36"]"#);
    assert_eq!(unsafe { qcert_linsys_gamma_json(3, 10, 2, 0, &mut s) }, QcertStatus::Domain);
}

#[test]
fn criterion_reports_through_handles() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qcert_run_criterion(3, &mut r) }, QcertStatus::Ok);
    assert_eq!(unsafe { qcert_reports_len(r) }, 1);
    assert_eq!(unsafe { qcert_reports_failed(r) }, 0);
    let lines = take_string(unsafe { qcert_reports_json_lines(r) });
    assert!(lines.contains("q4.pinned_entry"));
    unsafe { qcert_reports_free(r) };
    assert_eq!(unsafe { qcert_run_criterion(9, &mut r) }, QcertStatus::InvalidArgument);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qcert.h")).unwrap();
    for sym in ["qcert_matrix_build", "qcert_matrix_free", "qcert_run_criterion", "QCERT_STATUS_DOMAIN", "typedef struct QcertMatrix QcertMatrix"] {
        assert!(header.contains(sym), "missing {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = std::process::Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    let dir = std::env::temp_dir().join(format!("qcert-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"qcert.h\"\nint main(void) { QcertMatrix *m = 0; QcertStatus s = qcert_matrix_build(4, QCERT_FAMILY_D, 8, 2, &m); qcert_matrix_free(m); return s == QCERT_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let out = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let _ = std::fs::remove_dir_all(dir);
}
