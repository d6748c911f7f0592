use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use equigraph_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(eg_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { eg_string_free(p) };
    s
}

#[test]
fn crown_through_handles() {
    let name = CString::new("crown").unwrap();
    let args = CString::new(r#"{"t": 5}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { eg_graph_family(name.as_ptr(), args.as_ptr(), &mut g) },
        EgStatus::Ok
    );
    assert_eq!(unsafe { eg_graph_order(g) }, 10);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { eg_graph_spectrum(g, &mut s) }, EgStatus::Ok);
    let (mut v, mut r, mut exact) = (0.0, 0.0, ptr::null_mut());
    assert_eq!(
        unsafe { eg_spectrum_energy(s, &mut v, &mut r, &mut exact) },
        EgStatus::Ok
    );
    assert_eq!((v, r), (16.0, 0.0));
    assert_eq!(take_string(exact), "16");
    let mut equal = false;
    assert_eq!(
        unsafe { eg_check_equienergetic(s, 4, false, &mut equal) },
        EgStatus::Ok
    );
    assert!(equal);
    unsafe {
        eg_spectrum_free(s);
        eg_graph_free(g);
    }
}

#[test]
fn spectrum_entries() {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { eg_srg_spectrum(10, 3, 0, 1, &mut s) },
        EgStatus::Ok
    );
    assert_eq!(unsafe { eg_spectrum_len(s) }, 3);
    let (mut v, mut r, mut m) = (0.0, 0.0, 0u64);
    assert_eq!(
        unsafe { eg_spectrum_entry(s, 2, &mut v, &mut r, &mut m) },
        EgStatus::Ok
    );
    assert_eq!((v, r, m), (-2.0, 0.0, 4));
    assert_eq!(
        unsafe { eg_spectrum_entry(s, 3, &mut v, &mut r, &mut m) },
        EgStatus::OutOfRange
    );
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { eg_spectrum_to_string(s, &mut text) }, EgStatus::Ok);
    assert_eq!(take_string(text), "{[3], [1]^5, [-2]^4}");
    unsafe { eg_spectrum_free(s) };
}

#[test]
fn srg_and_ring_verdicts() {
    let mut class = ptr::null_mut();
    assert_eq!(
        unsafe { eg_srg_classify(25, 12, 5, 6, &mut class) },
        EgStatus::Ok
    );
    assert_eq!(take_string(class), "Conference(6)");
    let mut equal = false;
    assert_eq!(
        unsafe { eg_srg_check(16, 6, 2, 2, &mut equal) },
        EgStatus::Ok
    );
    assert!(equal);
    let ring = CString::new("4:1,4:1,4:1").unwrap();
    assert_eq!(
        unsafe { eg_ring_check(ring.as_ptr(), &mut equal) },
        EgStatus::Ok
    );
    assert!(equal);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { eg_ring_spectrum(ring.as_ptr(), &mut s) },
        EgStatus::Ok
    );
    let (mut v, mut r) = (0.0, 0.0);
    assert_eq!(
        unsafe { eg_spectrum_energy(s, &mut v, &mut r, ptr::null_mut()) },
        EgStatus::Ok
    );
    assert_eq!(v, 216.0);
    unsafe { eg_spectrum_free(s) };
}

#[test]
fn errors_set_status_and_message() {
    let mut g = ptr::null_mut();
    let bad = CString::new("3 0\n0 1\n1 9\n").unwrap();
    assert_eq!(
        unsafe { eg_graph_parse(bad.as_ptr(), &mut g) },
        EgStatus::Parse
    );
    assert!(last_error().contains("line 3"), "{}", last_error());
    assert!(g.is_null());

    assert_eq!(
        unsafe { eg_graph_parse(ptr::null(), &mut g) },
        EgStatus::NullPointer
    );
    let mut equal = false;
    assert_eq!(
        unsafe { eg_srg_check(7, 3, 1, 1, &mut equal) },
        EgStatus::Infeasible
    );
    let ring = CString::new("6:1").unwrap();
    assert_eq!(
        unsafe { eg_ring_check(ring.as_ptr(), &mut equal) },
        EgStatus::InvalidProfile
    );
    let name = CString::new("nonesuch").unwrap();
    assert_eq!(
        unsafe { eg_graph_family(name.as_ptr(), ptr::null(), &mut g) },
        EgStatus::InvalidParameter
    );

    let ok = CString::new("2 0\n0 1\n").unwrap();
    assert_eq!(unsafe { eg_graph_parse(ok.as_ptr(), &mut g) }, EgStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { eg_graph_free(g) };
    unsafe { eg_graph_free(ptr::null_mut()) };
}

#[test]
fn parsed_spectrum_round_trip() {
    let text = CString::new("{2, (-1/2 + 1/2*sqrt(5))^2}").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { eg_spectrum_parse(text.as_ptr(), &mut s) },
        EgStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { eg_spectrum_to_string(s, &mut out) }, EgStatus::Ok);
    assert_eq!(take_string(out), "{[2], [-1/2 + 1/2*sqrt(5)]^2}");
    unsafe { eg_spectrum_free(s) };
}

#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("equigraph.h").exists());
    let exe = std::env::current_exe().unwrap();
    // .../target/<profile>/deps/ffi-<hash>
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libequigraph_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = std::env::temp_dir().join(format!("equigraph-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "equigraph.h"

int main(void) {
    EgSpectrum *s = NULL;
    if (eg_ring_spectrum("3:1,5:1,5:1", &s) != EG_STATUS_OK) return 10;
    char *text = NULL;
    eg_spectrum_to_string(s, &text);
    printf("%s\n", text);
    eg_string_free(text);
    bool equal = false;
    if (eg_check_equienergetic(s, 32, false, &equal) != EG_STATUS_OK) return 11;
    eg_spectrum_free(s);
    if (eg_srg_check(7, 3, 1, 1, &equal) != EG_STATUS_INFEASIBLE) return 12;
    printf("%s\n%d\n", eg_last_error(), equal);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("{[32], "), "{text}");
    assert!(lines[1].starts_with("infeasible parameters"), "{text}");
    assert_eq!(lines[2], "1");
}
