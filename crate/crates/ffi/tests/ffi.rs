use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cubicgauss_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cg_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn schema_version_is_one() {
    let v = unsafe { CStr::from_ptr(cg_schema_version()) };
    assert_eq!(v.to_str().unwrap(), "1");
}

#[test]
fn parse_print_free() {
    let mut p = ptr::null_mut();
    let st = unsafe { cg_polynomial_parse(c("y*x + x^2").as_ptr(), c("x,y,z").as_ptr(), ptr::null(), &mut p) };
    assert_eq!(st, CgStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cg_polynomial_to_string(p, &mut s) }, CgStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "x^2 + x*y");
    unsafe {
        cg_string_free(s);
        cg_polynomial_free(p);
    }
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    let st = unsafe { cg_polynomial_parse(c("x +* y").as_ptr(), c("x,y").as_ptr(), ptr::null(), &mut p) };
    assert_eq!(st, CgStatus::Parse);
    assert!(last_error().contains("parse error"), "{}", last_error());
    let st = unsafe { cg_polynomial_parse(c("x").as_ptr(), c("x").as_ptr(), c("p=15").as_ptr(), &mut p) };
    assert_eq!(st, CgStatus::Field);
    let st = unsafe { cg_polynomial_parse(ptr::null(), ptr::null(), ptr::null(), &mut p) };
    assert_eq!(st, CgStatus::NullPointer);
    let bad = [0x66u8, 0xff, 0];
    let st = unsafe { cg_polynomial_parse(bad.as_ptr() as *const _, ptr::null(), ptr::null(), &mut p) };
    assert_eq!(st, CgStatus::Utf8);
    let mut json = ptr::null_mut();
    let st = unsafe { cg_run_suite(c("nope").as_ptr(), ptr::null(), 0, 0, &mut json, ptr::null_mut()) };
    assert_eq!(st, CgStatus::InvalidArgument);
    assert!(json.is_null());
}

#[test]
fn jacobian_ring_of_fermat_cubic() {
    let mut p = ptr::null_mut();
    let text = c("x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
    assert_eq!(unsafe { cg_polynomial_parse(text.as_ptr(), ptr::null(), ptr::null(), &mut p) }, CgStatus::Ok);
    let mut ring = ptr::null_mut();
    assert_eq!(unsafe { cg_jacobian_ring_new(p, &mut ring) }, CgStatus::Ok);
    let mut len = 0usize;
    let mut small = [0usize; 2];
    assert_eq!(unsafe { cg_jacobian_ring_dims(ring, small.as_mut_ptr(), 2, &mut len) }, CgStatus::InvalidArgument);
    assert_eq!(len, 6);
    let mut dims = [0usize; 8];
    assert_eq!(unsafe { cg_jacobian_ring_dims(ring, dims.as_mut_ptr(), 8, &mut len) }, CgStatus::Ok);
    assert_eq!(&dims[..len], &[1, 5, 10, 10, 5, 1]);
    unsafe {
        cg_jacobian_ring_free(ring);
        cg_polynomial_free(p);
    }
}

#[test]
fn singular_form_and_computation_errors() {
    let mut p = ptr::null_mut();
    unsafe { cg_polynomial_parse(c("x^3").as_ptr(), c("x,y,z").as_ptr(), ptr::null(), &mut p) };
    let mut ring = ptr::null_mut();
    assert_eq!(unsafe { cg_jacobian_ring_new(p, &mut ring) }, CgStatus::Ok);
    let mut smooth = true;
    assert_eq!(unsafe { cg_jacobian_ring_is_smooth(ring, &mut smooth) }, CgStatus::Ok);
    assert!(!smooth);
    unsafe {
        cg_jacobian_ring_free(ring);
        cg_polynomial_free(p);
    }
    // The Fermat cubic does not contain the line x1 = x2 = x4 = 0.
    let mut f = ptr::null_mut();
    let text = c("x0^3 + x1^3 + x2^3 + x3^3 + x4^3");
    unsafe { cg_polynomial_parse(text.as_ptr(), ptr::null(), ptr::null(), &mut f) };
    let (mut q, mut conic) = (ptr::null_mut(), ptr::null_mut());
    let st = unsafe { cg_discriminant(f, &mut q, &mut conic) };
    assert_ne!(st, CgStatus::Ok);
    assert!(q.is_null() && conic.is_null());
    assert!(!last_error().is_empty());
    unsafe { cg_polynomial_free(f) };
}

#[test]
fn discriminant_of_klein_minus_one() {
    let cubic = c("x0^2*x1 + x0*x4^2 + x1^2*x2 - x1^2*x3 + x2^2*x3 - x2*x3^2 + x3^2*x4");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { cg_polynomial_parse(cubic.as_ptr(), ptr::null(), ptr::null(), &mut p) }, CgStatus::Ok);
    let (mut q, mut conic) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { cg_discriminant(p, &mut q, &mut conic) }, CgStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe { cg_polynomial_to_string(conic, &mut s) };
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    assert!(text == "-x*y + x*z" || text == "x*y - x*z", "{text}");
    unsafe {
        cg_string_free(s);
        cg_polynomial_free(q);
        cg_polynomial_free(conic);
        cg_polynomial_free(p);
    }
}

#[test]
fn run_suite_returns_json() {
    let mut json = ptr::null_mut();
    let mut passed = false;
    let st = unsafe { cg_run_suite(c("euler").as_ptr(), c("p=1000003").as_ptr(), 3, 2, &mut json, &mut passed) };
    assert_eq!(st, CgStatus::Ok, "{}", last_error());
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["suite"], "euler");
    assert_eq!(v["field"], "p=1000003");
    assert!(passed);
    unsafe { cg_string_free(json) };
}

#[test]
fn header_declares_every_export_and_compiles() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/cubicgauss.h")).unwrap();
    for f in [
        "cg_schema_version",
        "cg_last_error_message",
        "cg_string_free",
        "cg_polynomial_parse",
        "cg_polynomial_to_string",
        "cg_polynomial_free",
        "cg_jacobian_ring_new",
        "cg_jacobian_ring_dims",
        "cg_jacobian_ring_free",
        "cg_jacobian_ring_is_smooth",
        "cg_discriminant",
        "cg_run_suite",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    // Syntax-check the header with a C compiler when one is installed.
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(dir.join("include/cubicgauss.h"))
        .output()
    else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
