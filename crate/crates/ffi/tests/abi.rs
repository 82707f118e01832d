use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cherednik_lab_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(cl_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn fiber(kappa: &str, mu: &str, lambda: &str) -> *mut ClFiber {
    let mut f = ptr::null_mut();
    let s = cl_fiber_new(cs(kappa).as_ptr(), cs(mu).as_ptr(), cs(lambda).as_ptr(), &mut f);
    assert_eq!(s, ClStatus::Ok, "{}", last_error());
    f
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    cl_string_free(p);
    s
}

#[test]
fn chain_entries_match_the_closed_form() {
    unsafe {
        let f = fiber("5/2", "0,1/3", "1,4/3");
        let mut c = ptr::null_mut();
        assert_eq!(cl_chain_build(f, cs("t1").as_ptr(), 0, 0, 0, &mut c), ClStatus::Ok);
        let (mut r, mut k) = (0usize, 0usize);
        assert_eq!(cl_chain_shape(c, &mut r, &mut k), ClStatus::Ok);
        assert_eq!((r, k), (2, 2));
        let mut got = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut e = ptr::null_mut();
                assert_eq!(cl_chain_entry(c, i, j, &mut e), ClStatus::Ok);
                got.push(take(e));
            }
        }
        assert_eq!(got, ["-3/5", "2/5", "2/5", "-3/5"]);
        cl_chain_free(c);
        cl_fiber_free(f);
    }
}

#[test]
fn json_matches_the_library_serialization() {
    use cherednik_lab::affine_coinvariants::{BoxBasis, FiberWeights};
    use cherednik_lab::affine_weyl::WeylWord;
    use cherednik_lab::scalars::{int, ratio};
    unsafe {
        let f = fiber("5/2", "0,1/3", "0,4/3");
        let mut c = ptr::null_mut();
        assert_eq!(cl_chain_build(f, cs("pi").as_ptr(), 0, 0, 0, &mut c), ClStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(cl_chain_to_json(c, &mut s), ClStatus::Ok);
        let json = take(s);
        let fw = FiberWeights::from_content(ratio(5, 2), vec![int(0), ratio(1, 3)], &[0, 1]).unwrap();
        let b = BoxBasis::for_fiber(&fw, 0, 0, 0);
        let ch = cherednik_lab::zhelobenko::build_intertwiner(&WeylWord::parse(2, "pi").unwrap(), &fw, &b).unwrap();
        assert_eq!(json, serde_json::to_string_pretty(&ch).unwrap() + "\n");
        cl_chain_free(c);
        cl_fiber_free(f);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(cl_fiber_new(ptr::null(), cs("0").as_ptr(), cs("0").as_ptr(), &mut f), ClStatus::NullArgument);
        assert_eq!(cl_fiber_new(cs("5/2").as_ptr(), cs("0,x").as_ptr(), cs("0,1").as_ptr(), &mut f), ClStatus::InvalidInput);
        assert!(!last_error().is_empty());
        let bad = [0xffu8, 0];
        assert_eq!(
            cl_fiber_new(bad.as_ptr() as *const c_char, cs("0").as_ptr(), cs("0").as_ptr(), &mut f),
            ClStatus::InvalidUtf8
        );
        let g = fiber("7/3", "0,1/3", "1,4/3");
        assert_eq!(cl_fiber_is_generic(g), 0);
        let mut c = ptr::null_mut();
        assert_eq!(cl_chain_build(g, cs("t1").as_ptr(), 0, 0, 0, &mut c), ClStatus::NonGeneric);
        assert!(c.is_null());
        cl_fiber_free(g);
        let g = fiber("5/2", "0,1/3", "1,4/3");
        assert_eq!(cl_chain_build(g, cs("t7").as_ptr(), 0, 0, 0, &mut c), ClStatus::OutOfRange);
        assert_eq!(cl_chain_build(g, cs("tau").as_ptr(), 0, 0, 0, &mut c), ClStatus::InvalidInput);
        assert_eq!(cl_chain_build(g, cs("t1").as_ptr(), 0, 1, 0, &mut c), ClStatus::InvalidInput);
        cl_fiber_free(g);
        assert_eq!(cl_fiber_is_generic(ptr::null()), -1);
        cl_fiber_free(ptr::null_mut());
        cl_chain_free(ptr::null_mut());
        cl_string_free(ptr::null_mut());
    }
}

#[test]
fn intertwining_through_the_abi() {
    unsafe {
        let f = fiber("5/2", "0,1/3,5/7", "1,1/3,12/7");
        for l in ["t0", "t1", "t2", "pi", "pi^-1"] {
            let mut passed = -1;
            assert_eq!(cl_verify_intertwining(f, cs(l).as_ptr(), 0, -1, 1, &mut passed), ClStatus::Ok);
            assert_eq!(passed, 1, "{l}: {}", last_error());
        }
        let mut passed = -1;
        assert_eq!(cl_verify_intertwining(f, cs("t3").as_ptr(), 0, 0, 0, &mut passed), ClStatus::OutOfRange);
        cl_fiber_free(f);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cherednik_lab.h")).unwrap();
    for name in [
        "cl_last_error",
        "cl_string_free",
        "cl_fiber_new",
        "cl_fiber_free",
        "cl_fiber_is_generic",
        "cl_fiber_points",
        "cl_chain_build",
        "cl_chain_free",
        "cl_chain_shape",
        "cl_chain_entry",
        "cl_chain_to_json",
        "cl_verify_intertwining",
        "typedef struct ClFiber ClFiber",
        "CL_STATUS_NON_GENERIC = 5",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}
