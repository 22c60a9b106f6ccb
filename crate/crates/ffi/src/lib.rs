//! C ABI for the workbench engine.
//!
//! The surface is deliberately narrow: algebras are opaque handles created
//! from JSON spec documents (or the built-in catalogue), every query
//! returns a status code plus a UTF-8 JSON report string, and strings
//! allocated here must be released with [`aw_string_free`]. The last error
//! message per thread is available through [`aw_last_error`].
//!
//! Status codes: `Ok` means the operation ran and, for audits, the check
//! passed; `CheckFailed` means the operation ran and the check did not
//! pass (a report is still written); the remaining codes mean the
//! operation could not run at all.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int, c_uint};

use serde_json::json;

use alpay_workbench::algebra::{Axiom, AxiomReport, FiniteAlpayAlgebra, StateIx};
use alpay_workbench::dynamics::{self, FixpointOutcome, TrajectoryEnd};
use alpay_workbench::homology::{
    build_complex, graph_oracle, homology_report, EdgePolicy, EdgeSelection, SelfLoopPolicy,
};
use alpay_workbench::logic::{model_check, named_set_env, parse_formula};
use alpay_workbench::workbench::{builtins, load_spec, save_spec};

/// Opaque handle to a loaded algebra.
pub struct AwAlgebra {
    inner: FiniteAlpayAlgebra,
}

/// Result of every ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AwStatus {
    /// The operation ran; any check it performed passed.
    Ok = 0,
    /// Null pointer, invalid UTF-8, unknown name, or bad argument.
    InvalidArgument = 1,
    /// The input document or formula did not parse or resolve.
    ParseError = 2,
    /// The operation ran and the audited property does not hold.
    CheckFailed = 3,
    /// The formula could not be evaluated against this algebra.
    EvalError = 4,
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

fn fail(status: AwStatus, message: &str) -> AwStatus {
    set_error(message);
    status
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, AwStatus> {
    if ptr.is_null() {
        return Err(fail(AwStatus::InvalidArgument, &format!("{what} is null")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        fail(
            AwStatus::InvalidArgument,
            &format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn emit(out: *mut *mut c_char, value: serde_json::Value) -> Result<(), AwStatus> {
    if out.is_null() {
        return Err(fail(AwStatus::InvalidArgument, "output pointer is null"));
    }
    let text = value.to_string();
    let cstring = CString::new(text)
        .map_err(|_| fail(AwStatus::InvalidArgument, "report contains a NUL byte"))?;
    *out = cstring.into_raw();
    Ok(())
}

unsafe fn algebra_arg<'a>(ptr: *const AwAlgebra) -> Result<&'a FiniteAlpayAlgebra, AwStatus> {
    if ptr.is_null() {
        return Err(fail(AwStatus::InvalidArgument, "algebra handle is null"));
    }
    Ok(&(*ptr).inner)
}

/// Parses a JSON spec document into a fresh handle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_algebra_from_json(
    json: *const c_char,
    out: *mut *mut AwAlgebra,
) -> AwStatus {
    let text = match str_arg(json, "spec document") {
        Ok(t) => t,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(AwStatus::InvalidArgument, "output pointer is null");
    }
    match load_spec(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(AwAlgebra { inner }));
            AwStatus::Ok
        }
        Err(e) => fail(AwStatus::ParseError, &e.to_string()),
    }
}

/// Loads a built-in algebra (COUNTER5, CYCLE3, DIAMOND, SELFLOOP, BADLOOP,
/// TWOPEAKS) into a fresh handle.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_algebra_builtin(
    name: *const c_char,
    out: *mut *mut AwAlgebra,
) -> AwStatus {
    let name = match str_arg(name, "builtin name") {
        Ok(t) => t,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(AwStatus::InvalidArgument, "output pointer is null");
    }
    match builtins::algebra(name) {
        Some(inner) => {
            *out = Box::into_raw(Box::new(AwAlgebra { inner }));
            AwStatus::Ok
        }
        None => fail(
            AwStatus::InvalidArgument,
            &format!("unknown builtin `{name}`"),
        ),
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn aw_algebra_free(alg: *mut AwAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Serializes the algebra to its canonical JSON document.
///
/// # Safety
/// `alg` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_algebra_to_json(
    alg: *const AwAlgebra,
    out: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(AwStatus::InvalidArgument, "output pointer is null");
    }
    let text = save_spec(alg);
    match CString::new(text) {
        Ok(cstring) => {
            *out = cstring.into_raw();
            AwStatus::Ok
        }
        Err(_) => fail(AwStatus::InvalidArgument, "document contains a NUL byte"),
    }
}

fn axiom_report_json(report: &AxiomReport) -> serde_json::Value {
    json!({
        "passed": report.passed(),
        "axioms": Axiom::ALL.iter().map(|a| {
            json!({ "axiom": a.code(), "title": a.title(), "passed": report.verdict(*a) })
        }).collect::<Vec<_>>(),
        "violations": report.violations().iter().map(|v| {
            json!({ "axiom": v.axiom.code(), "subject": v.subject, "detail": v.detail })
        }).collect::<Vec<_>>(),
    })
}

/// Runs the exhaustive axiom audit. `Ok` = all axioms hold, `CheckFailed`
/// = some axiom is violated; the JSON report is written either way.
///
/// # Safety
/// `alg` must be a live handle; `report_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_validate(
    alg: *const AwAlgebra,
    report_json: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    let report = alg.validate();
    if let Err(status) = emit(report_json, axiom_report_json(&report)) {
        return status;
    }
    if report.passed() {
        AwStatus::Ok
    } else {
        AwStatus::CheckFailed
    }
}

/// Iterates the update rule from `from` (or the spec's initial state when
/// `from` is null). `Ok` = a fixed point was reached; `CheckFailed` = the
/// run cycled or exhausted the budget.
///
/// # Safety
/// `alg` must be a live handle; `from` null or NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aw_run_trajectory(
    alg: *const AwAlgebra,
    from: *const c_char,
    budget: c_uint,
    out: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    let start = if from.is_null() {
        match alg.initial_state() {
            Some(x) => x,
            None => {
                return fail(
                    AwStatus::InvalidArgument,
                    "no start state and no initial_state",
                )
            }
        }
    } else {
        let name = match str_arg(from, "start state") {
            Ok(t) => t,
            Err(status) => return status,
        };
        match alg.lookup_state(name) {
            Ok(x) => x,
            Err(e) => return fail(AwStatus::InvalidArgument, &e.to_string()),
        }
    };
    let trajectory = match dynamics::run_trajectory(alg, start, budget as usize) {
        Ok(t) => t,
        Err(e) => return fail(AwStatus::InvalidArgument, &e.to_string()),
    };
    let name = |x: StateIx| alg.state_name(x).to_owned();
    let outcome = match &trajectory.outcome {
        TrajectoryEnd::FixedPoint(x) => json!({ "kind": "fixed-point", "state": name(*x) }),
        TrajectoryEnd::CycleDetected { .. } => json!({
            "kind": "cycle",
            "states": trajectory.cycle_witness().unwrap_or_default().iter().map(|&x| name(x)).collect::<Vec<_>>(),
        }),
        TrajectoryEnd::BudgetExhausted => json!({ "kind": "budget-exhausted" }),
    };
    let value = json!({
        "start": name(trajectory.start),
        "steps": trajectory.steps.iter().map(|s| json!({
            "from": name(s.state_before),
            "adjustment": alg.monoid().name(s.adjustment),
            "to": name(s.state_after),
            "psi": alg.eval_order().format(&s.psi_after),
        })).collect::<Vec<_>>(),
        "outcome": outcome,
    });
    if let Err(status) = emit(out, value) {
        return status;
    }
    if matches!(trajectory.outcome, TrajectoryEnd::FixedPoint(_)) {
        AwStatus::Ok
    } else {
        AwStatus::CheckFailed
    }
}

/// Runs the termination audit from every state. `Ok` = every state
/// converges within the strict-increase bound; `CheckFailed` otherwise
/// (including refusal when the axioms fail, reported in the JSON).
///
/// # Safety
/// `alg` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_audit_termination(
    alg: *const AwAlgebra,
    out: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    match dynamics::termination_audit(alg) {
        Err(refusal) => {
            let value = json!({
                "refused": true,
                "axioms": axiom_report_json(&refusal.report),
            });
            if let Err(status) = emit(out, value) {
                return status;
            }
            AwStatus::CheckFailed
        }
        Ok(report) => {
            let ok = report.all_converged() && report.bound_respected;
            let value = json!({
                "refused": false,
                "max_steps_observed": report.max_steps_observed,
                "step_bound": report.step_bound,
                "bound_respected": report.bound_respected,
                "outcomes": report.outcomes.iter().map(|(start, outcome)| {
                    let start = alg.state_name(*start);
                    match outcome {
                        FixpointOutcome::Converged { state, steps } => json!({
                            "start": start, "result": "converged",
                            "state": alg.state_name(*state), "steps": steps,
                        }),
                        FixpointOutcome::Nonterminating { cycle } => json!({
                            "start": start, "result": "nonterminating",
                            "cycle": cycle.iter().map(|&x| alg.state_name(x)).collect::<Vec<_>>(),
                        }),
                        FixpointOutcome::BudgetExhausted { last_state } => json!({
                            "start": start, "result": "budget-exhausted",
                            "state": alg.state_name(*last_state),
                        }),
                    }
                }).collect::<Vec<_>>(),
            });
            if let Err(status) = emit(out, value) {
                return status;
            }
            if ok {
                AwStatus::Ok
            } else {
                AwStatus::CheckFailed
            }
        }
    }
}

/// Betti numbers, torsion, and the graph oracle under an edge policy
/// (two-cells are not exposed over the ABI; use the CLI for those).
///
/// # Safety
/// `alg` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn aw_homology(
    alg: *const AwAlgebra,
    edges_all: c_int,
    drop_self_loops: c_int,
    out: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    let policy = EdgePolicy {
        selection: if edges_all != 0 {
            EdgeSelection::AllAdjustments
        } else {
            EdgeSelection::Generators
        },
        self_loops: if drop_self_loops != 0 {
            SelfLoopPolicy::Drop
        } else {
            SelfLoopPolicy::Keep
        },
    };
    let complex = match build_complex(alg, policy, &[]) {
        Ok(c) => c,
        Err(e) => return fail(AwStatus::InvalidArgument, &e.to_string()),
    };
    let report = homology_report(&complex);
    let oracle = graph_oracle(alg, policy);
    let value = json!({
        "policy": policy.to_string(),
        "vertices": complex.vertices,
        "edges": complex.edges.len(),
        "self_loops": complex.self_loop_count,
        "b0": report.b0,
        "b1": report.b1,
        "h1_torsion": report.h1_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "oracle": {
            "components": oracle.components,
            "cycle_rank": oracle.cycle_rank,
            "directed_acyclic": oracle.directed_acyclic,
        },
    });
    if let Err(status) = emit(out, value) {
        return status;
    }
    AwStatus::Ok
}

/// Model-checks a formula; the report lists the satisfying states. `Ok`
/// regardless of how many states satisfy it — only evaluation failures
/// return an error status.
///
/// # Safety
/// `alg` must be a live handle; `formula` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn aw_model_check(
    alg: *const AwAlgebra,
    formula: *const c_char,
    out: *mut *mut c_char,
) -> AwStatus {
    let alg = match algebra_arg(alg) {
        Ok(a) => a,
        Err(status) => return status,
    };
    let text = match str_arg(formula, "formula") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let parsed = match parse_formula(text) {
        Ok(f) => f,
        Err(e) => return fail(AwStatus::ParseError, &e.to_string()),
    };
    let sat = match model_check(alg, &parsed, &named_set_env(alg)) {
        Ok(s) => s,
        Err(e) => return fail(AwStatus::EvalError, &e.to_string()),
    };
    let members = sat.members();
    let value = json!({
        "formula": parsed.to_string(),
        "state_count": alg.state_count(),
        "satisfying": members.iter().map(|&x| alg.state_name(x)).collect::<Vec<_>>(),
        "all_states": members.len() == alg.state_count(),
    });
    if let Err(status) = emit(out, value) {
        return status;
    }
    AwStatus::Ok
}
