use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use micz_ffi::*;

fn sector(n: i64, q: i64, l: i64, j: i64) -> *mut MiczSector {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { micz_sector_new(n, q, l, j, 1, 1, &mut s) }, MiczStatus::Ok);
    s
}

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    assert_eq!(unsafe { micz_last_error_message(buf.as_mut_ptr(), buf.len()) }, MiczStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn sector_lifecycle() {
    let s = sector(1, 0, 0, 0);
    let mut dim = 0usize;
    let mut e = 0.0f64;
    unsafe {
        assert_eq!(micz_sector_dim(s, &mut dim), MiczStatus::Ok);
        assert_eq!(micz_sector_energy(s, &mut e), MiczStatus::Ok);
        micz_sector_free(s);
        micz_sector_free(ptr::null_mut());
    }
    assert_eq!(dim, 2);
    assert_eq!(e, -0.02);
}

#[test]
fn invalid_sector_reports_validation() {
    let mut s = ptr::null_mut();
    let status = unsafe { micz_sector_new(0, 0, 1, 0, 1, 1, &mut s) };
    assert_eq!(status, MiczStatus::Validation);
    assert!(s.is_null());
    assert!(last_error().starts_with("ParityMismatch"));
    assert_eq!(unsafe { micz_sector_new(1, 0, 0, 0, 1, 0, &mut s) }, MiczStatus::InvalidArgument);
    assert_eq!(unsafe { micz_sector_new(1, 0, 0, 0, 1, 1, ptr::null_mut()) }, MiczStatus::NullPointer);
}

#[test]
fn matrices_into_buffers() {
    let s = sector(1, 0, 0, 0);
    let mut w = [0.0f64; 4];
    let mut small = [0.0f64; 3];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    unsafe {
        assert_eq!(micz_w_matrix(s, w.as_mut_ptr(), w.len()), MiczStatus::Ok);
        assert_eq!(micz_w_matrix(s, small.as_mut_ptr(), small.len()), MiczStatus::BufferTooSmall);
        assert_eq!(micz_w_matrix(ptr::null(), w.as_mut_ptr(), 4), MiczStatus::NullPointer);
    }
    assert_eq!(w, [h, h, h, -h]);
    let mut m9 = [0.0f64; 4];
    unsafe {
        assert_eq!(micz_m9_matrix(s, m9.as_mut_ptr(), 4), MiczStatus::Ok);
        micz_sector_free(s);
    }
    // trace equals the sum of the parabolic eigenvalues 1 and −1
    assert_eq!(m9[0] + m9[3], 0.0);
    assert_eq!(m9[1], m9[2]);
}

#[test]
fn spectrum_two_state() {
    let s = sector(1, 0, 0, 0);
    let mut sp = ptr::null_mut();
    let mut k = [0.0f64; 2];
    let mut t = [0.0f64; 4];
    let mut dim = 0usize;
    unsafe {
        assert_eq!(micz_spectrum_new(s, 5.0, &mut sp), MiczStatus::Ok);
        assert_eq!(micz_spectrum_dim(sp, &mut dim), MiczStatus::Ok);
        assert_eq!(micz_spectrum_eigenvalues(sp, k.as_mut_ptr(), 2), MiczStatus::Ok);
        assert_eq!(micz_spectrum_vectors(sp, t.as_mut_ptr(), 4), MiczStatus::Ok);
        micz_spectrum_free(sp);
        assert_eq!(micz_spectrum_new(s, -1.0, &mut sp), MiczStatus::Validation);
        micz_sector_free(s);
    }
    let r = 17f64.sqrt();
    assert_eq!(dim, 2);
    assert!((k[0] + 4.0 + r).abs() < 1e-12 && (k[1] + 4.0 - r).abs() < 1e-12);
    // columns are unit vectors with a positive first entry
    assert!((t[0] * t[0] + t[2] * t[2] - 1.0).abs() < 1e-14);
    assert!(t[0] > 0.0 && t[1] > 0.0);
}

#[test]
fn error_message_buffer_rules() {
    let mut s = ptr::null_mut();
    unsafe { micz_sector_new(-1, 0, 0, 0, 1, 1, &mut s) };
    let mut tiny = [0 as std::ffi::c_char; 4];
    assert_eq!(unsafe { micz_last_error_message(tiny.as_mut_ptr(), 4) }, MiczStatus::BufferTooSmall);
    assert!(last_error().starts_with("NegativeQuantumNumber"));
    let name = unsafe { CStr::from_ptr(micz_status_name(MiczStatus::BufferTooSmall)) };
    assert_eq!(name.to_str().unwrap(), "BufferTooSmall");
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("micz.h")
}

#[test]
fn header_declares_the_interface() {
    let text = std::fs::read_to_string(header()).expect("build.rs writes the header");
    for name in [
        "typedef struct MiczSector MiczSector;",
        "typedef struct MiczSpectrum MiczSpectrum;",
        "MICZ_STATUS_BUFFER_TOO_SMALL = 5",
        "micz_sector_new(",
        "micz_sector_free(",
        "micz_w_matrix(",
        "micz_m9_matrix(",
        "micz_spectrum_new(",
        "micz_spectrum_vectors(",
        "micz_last_error_message(",
        "micz_status_name(",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a small C program against the header and static
/// library, when a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libmicz_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("micz-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "micz.h"
int main(void) {
    MiczSector *s = NULL;
    if (micz_sector_new(1, 0, 0, 0, 1, 1, &s) != MICZ_STATUS_OK) return 1;
    double w[4];
    if (micz_w_matrix(s, w, 4) != MICZ_STATUS_OK) return 2;
    MiczSpectrum *sp = NULL;
    if (micz_spectrum_new(s, 5.0, &sp) != MICZ_STATUS_OK) return 3;
    double k[2];
    micz_spectrum_eigenvalues(sp, k, 2);
    printf("%.12f %.12f %.12f\n", w[0], k[0], k[1]);
    micz_spectrum_free(sp);
    micz_sector_free(s);
    MiczSector *bad = NULL;
    MiczStatus st = micz_sector_new(0, 0, 1, 0, 1, 1, &bad);
    char msg[128];
    micz_last_error_message(msg, sizeof msg);
    printf("%s %s\n", micz_status_name(st), msg);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("0.707106781187 -8.123105625618 0.123105625618"));
    assert!(lines.next().unwrap().starts_with("Validation ParityMismatch"));
    std::fs::remove_dir_all(&dir).ok();
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
