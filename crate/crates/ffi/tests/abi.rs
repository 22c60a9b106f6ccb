//! Exercises the C ABI from Rust: handle lifecycle, report shapes, status
//! codes, and the error channel.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use alpay_workbench_ffi::*;

unsafe fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_owned();
    aw_string_free(ptr);
    s
}

unsafe fn builtin(name: &str) -> *mut AwAlgebra {
    let cname = CString::new(name).unwrap();
    let mut handle: *mut AwAlgebra = ptr::null_mut();
    assert_eq!(
        aw_algebra_builtin(cname.as_ptr(), &mut handle),
        AwStatus::Ok
    );
    assert!(!handle.is_null());
    handle
}

#[test]
fn validate_passing_and_failing_builtins() {
    unsafe {
        let counter = builtin("COUNTER5");
        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(aw_validate(counter, &mut report), AwStatus::Ok);
        let parsed: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(parsed["passed"], true);
        aw_algebra_free(counter);

        let badloop = builtin("BADLOOP");
        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(aw_validate(badloop, &mut report), AwStatus::CheckFailed);
        let parsed: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(parsed["passed"], false);
        assert!(parsed["violations"]
            .as_array()
            .unwrap()
            .iter()
            .all(|v| v["axiom"] == "axiom 4.1"));
        aw_algebra_free(badloop);
    }
}

#[test]
fn json_round_trip_through_the_abi() {
    unsafe {
        let counter = builtin("COUNTER5");
        let mut doc: *mut c_char = ptr::null_mut();
        assert_eq!(aw_algebra_to_json(counter, &mut doc), AwStatus::Ok);
        let text = take_string(doc);

        let ctext = CString::new(text.clone()).unwrap();
        let mut reloaded: *mut AwAlgebra = ptr::null_mut();
        assert_eq!(
            aw_algebra_from_json(ctext.as_ptr(), &mut reloaded),
            AwStatus::Ok
        );
        let mut doc2: *mut c_char = ptr::null_mut();
        assert_eq!(aw_algebra_to_json(reloaded, &mut doc2), AwStatus::Ok);
        assert_eq!(take_string(doc2), text);
        aw_algebra_free(reloaded);
        aw_algebra_free(counter);
    }
}

#[test]
fn trajectory_and_termination_reports() {
    unsafe {
        let counter = builtin("COUNTER5");
        let from = CString::new("0").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_run_trajectory(counter, from.as_ptr(), 100, &mut out),
            AwStatus::Ok
        );
        let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(parsed["outcome"]["kind"], "fixed-point");
        assert_eq!(parsed["outcome"]["state"], "5");
        assert_eq!(parsed["steps"].as_array().unwrap().len(), 5);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(aw_audit_termination(counter, &mut out), AwStatus::Ok);
        let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(parsed["bound_respected"], true);
        assert_eq!(parsed["max_steps_observed"], 5);
        aw_algebra_free(counter);

        let badloop = builtin("BADLOOP");
        let from = CString::new("a").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_run_trajectory(badloop, from.as_ptr(), 100, &mut out),
            AwStatus::CheckFailed
        );
        let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(parsed["outcome"]["kind"], "cycle");
        assert_eq!(parsed["outcome"]["states"], serde_json::json!(["a", "b"]));
        aw_algebra_free(badloop);
    }
}

#[test]
fn homology_and_model_check_reports() {
    unsafe {
        let diamond = builtin("DIAMOND");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(aw_homology(diamond, 0, 1, &mut out), AwStatus::Ok);
        let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(parsed["b0"], 1);
        assert_eq!(parsed["b1"], 1);
        assert_eq!(parsed["oracle"]["directed_acyclic"], true);
        aw_algebra_free(diamond);

        let counter = builtin("COUNTER5");
        let formula = CString::new("AF[phi] fixed").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_model_check(counter, formula.as_ptr(), &mut out),
            AwStatus::Ok
        );
        let parsed: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(parsed["all_states"], true);

        let bad = CString::new("AF[phi] fixxed").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_model_check(counter, bad.as_ptr(), &mut out),
            AwStatus::ParseError
        );
        let message = CStr::from_ptr(aw_last_error()).to_str().unwrap();
        assert!(message.contains("unknown atom"), "{message}");

        // Parses fine but cannot be evaluated against an integer order.
        let mismatched = CString::new("psi >= 1/2").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_model_check(counter, mismatched.as_ptr(), &mut out),
            AwStatus::EvalError
        );
        aw_algebra_free(counter);
    }
}

#[test]
fn invalid_arguments_are_reported() {
    unsafe {
        let mut handle: *mut AwAlgebra = ptr::null_mut();
        assert_eq!(
            aw_algebra_builtin(ptr::null(), &mut handle),
            AwStatus::InvalidArgument
        );
        let nonsense = CString::new("NOPE").unwrap();
        assert_eq!(
            aw_algebra_builtin(nonsense.as_ptr(), &mut handle),
            AwStatus::InvalidArgument
        );
        let garbage = CString::new("{").unwrap();
        assert_eq!(
            aw_algebra_from_json(garbage.as_ptr(), &mut handle),
            AwStatus::ParseError
        );
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            aw_validate(ptr::null(), &mut out),
            AwStatus::InvalidArgument
        );
        aw_string_free(ptr::null_mut());
        aw_algebra_free(ptr::null_mut());
    }
}
