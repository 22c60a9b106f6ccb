//! The internal modal logic.
//!
//! Atomic predicates come from what the algebra itself measures: fixedness
//! (`φ(x) = 0`), Ψ thresholds, state identity, and membership in named
//! subsets. On top sit boolean connectives and CTL-style modal operators,
//! each over one of two accessibility relations: the deterministic update
//! step `x ↦ x + φ(x)`, or one nonzero generator at a time. F/G operators
//! are the usual least/greatest fixpoints computed backward over the finite
//! state space.

pub mod parser;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{FiniteAlpayAlgebra, IdError, StateIx};
use crate::dynamics::{self, AuditRefusal, FixpointOutcome, Trajectory};
use crate::eval::{EvalValue, OrderKind};

pub use parser::{parse_formula, ParseError};

/// Accessibility relation for the modal operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    /// The deterministic successor `x ↦ x + φ(x)` (total, so AX = EX).
    PhiStep,
    /// `x ↦ x + g` for each nonzero declared generator `g`.
    AnyGenerator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::upper_case_acronyms)]
pub enum ModalOp {
    EX,
    AX,
    EF,
    AF,
    EG,
    AG,
}

/// An evaluation literal as written in a formula; coerced against the
/// algebra's evaluation order at checking time, not at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicLiteral {
    Int(i64),
    Ratio(i64, i64),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Fixed,
    PsiTop,
    PsiGeq(LogicLiteral),
    StateIs(String),
    InSet(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Modal(ModalOp, Rel, Box<Formula>),
}

/// A subset of an algebra's states, canonically ordered by declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    bits: Vec<bool>,
}

impl StateSet {
    pub fn empty(states: usize) -> Self {
        StateSet {
            bits: vec![false; states],
        }
    }

    pub fn full(states: usize) -> Self {
        StateSet {
            bits: vec![true; states],
        }
    }

    pub fn from_members(states: usize, members: impl IntoIterator<Item = StateIx>) -> Self {
        let mut set = StateSet::empty(states);
        for x in members {
            set.insert(x);
        }
        set
    }

    pub fn insert(&mut self, x: StateIx) {
        self.bits[x.0] = true;
    }

    pub fn contains(&self, x: StateIx) -> bool {
        self.bits[x.0]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn members(&self) -> Vec<StateIx> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(StateIx(i)))
            .collect()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }

    pub fn intersect(&self, other: &StateSet) -> StateSet {
        StateSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a && b)
                .collect(),
        }
    }

    pub fn complement(&self) -> StateSet {
        StateSet {
            bits: self.bits.iter().map(|&a| !a).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }
}

/// Named-subset environment for `in` atoms.
pub type SetEnv = BTreeMap<String, StateSet>;

/// The environment carried by an algebra's own named sets.
pub fn named_set_env(alg: &FiniteAlpayAlgebra) -> SetEnv {
    alg.named_sets()
        .iter()
        .map(|(name, members)| {
            (
                name.clone(),
                StateSet::from_members(alg.state_count(), members.iter().map(|&i| StateIx(i))),
            )
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("literal `{literal}` is not a value of the algebra's {kind} evaluation order")]
    LiteralMismatch { literal: String, kind: OrderKind },
    #[error("evaluation order declares no top element")]
    NoTop,
    #[error(transparent)]
    UnknownId(#[from] IdError),
    #[error("unknown named set `{0}`")]
    UnknownSet(String),
}

fn coerce_literal(alg: &FiniteAlpayAlgebra, lit: &LogicLiteral) -> Result<EvalValue, LogicError> {
    let order = alg.eval_order();
    let mismatch = || LogicError::LiteralMismatch {
        literal: lit.to_string(),
        kind: order.kind(),
    };
    match (order.kind(), lit) {
        (OrderKind::Integer, LogicLiteral::Int(n)) => Ok(EvalValue::int(*n)),
        (OrderKind::Rational, LogicLiteral::Int(n)) => {
            EvalValue::ratio(*n, 1).map_err(|_| mismatch())
        }
        (OrderKind::Rational, LogicLiteral::Ratio(n, d)) => {
            EvalValue::ratio(*n, *d).map_err(|_| mismatch())
        }
        (OrderKind::Chain, LogicLiteral::Label(name)) => order
            .label_index(name)
            .map(EvalValue::Chain)
            .map_err(|_| mismatch()),
        _ => Err(mismatch()),
    }
}

struct Successors {
    per_state: Vec<Vec<StateIx>>,
}

impl Successors {
    fn of(alg: &FiniteAlpayAlgebra, rel: Rel) -> Successors {
        let zero = alg.monoid().zero();
        let per_state = alg
            .states()
            .map(|x| match rel {
                Rel::PhiStep => vec![alg.apply(x, alg.phi(x))],
                Rel::AnyGenerator => {
                    let mut succ: Vec<StateIx> = alg
                        .monoid()
                        .generators()
                        .filter(|&g| g != zero)
                        .map(|g| alg.apply(x, g))
                        .collect();
                    succ.sort();
                    succ.dedup();
                    succ
                }
            })
            .collect();
        Successors { per_state }
    }

    /// States with some successor in `target`.
    fn pre_exists(&self, target: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.per_state.len());
        for (x, succ) in self.per_state.iter().enumerate() {
            if succ.iter().any(|&y| target.contains(y)) {
                out.insert(StateIx(x));
            }
        }
        out
    }

    /// States all of whose successors are in `target` (vacuously true at a
    /// state with none).
    fn pre_all(&self, target: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.per_state.len());
        for (x, succ) in self.per_state.iter().enumerate() {
            if succ.iter().all(|&y| target.contains(y)) {
                out.insert(StateIx(x));
            }
        }
        out
    }
}

fn least_fixpoint(seed: &StateSet, step: impl Fn(&StateSet) -> StateSet) -> StateSet {
    let mut current = seed.clone();
    loop {
        let next = seed.union(&step(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

fn greatest_fixpoint(bound: &StateSet, step: impl Fn(&StateSet) -> StateSet) -> StateSet {
    let mut current = bound.clone();
    loop {
        let next = bound.intersect(&step(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Explicit-state model checking: the set of states satisfying the formula.
pub fn model_check(
    alg: &FiniteAlpayAlgebra,
    formula: &Formula,
    env: &SetEnv,
) -> Result<StateSet, LogicError> {
    let n = alg.state_count();
    match formula {
        Formula::Fixed => Ok(StateSet::from_members(
            n,
            alg.states().filter(|&x| alg.is_fixed_point(x)),
        )),
        Formula::PsiTop => {
            let top = alg.eval_order().top().ok_or(LogicError::NoTop)?.clone();
            Ok(StateSet::from_members(
                n,
                alg.states().filter(|&x| alg.psi(x) == &top),
            ))
        }
        Formula::PsiGeq(lit) => {
            let threshold = coerce_literal(alg, lit)?;
            Ok(StateSet::from_members(
                n,
                alg.states().filter(|&x| {
                    alg.eval_order()
                        .cmp(alg.psi(x), &threshold)
                        .expect("psi checked at construction, literal coerced")
                        != std::cmp::Ordering::Less
                }),
            ))
        }
        Formula::StateIs(name) => {
            let x = alg.lookup_state(name)?;
            Ok(StateSet::from_members(n, [x]))
        }
        Formula::InSet(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| LogicError::UnknownSet(name.clone())),
        Formula::Not(inner) => Ok(model_check(alg, inner, env)?.complement()),
        Formula::And(l, r) => Ok(model_check(alg, l, env)?.intersect(&model_check(alg, r, env)?)),
        Formula::Or(l, r) => Ok(model_check(alg, l, env)?.union(&model_check(alg, r, env)?)),
        Formula::Implies(l, r) => Ok(model_check(alg, l, env)?
            .complement()
            .union(&model_check(alg, r, env)?)),
        Formula::Modal(op, rel, inner) => {
            let sub = model_check(alg, inner, env)?;
            let succ = Successors::of(alg, *rel);
            Ok(match op {
                ModalOp::EX => succ.pre_exists(&sub),
                ModalOp::AX => succ.pre_all(&sub),
                ModalOp::EF => least_fixpoint(&sub, |z| succ.pre_exists(z)),
                ModalOp::AF => least_fixpoint(&sub, |z| succ.pre_all(z)),
                ModalOp::EG => greatest_fixpoint(&sub, |z| succ.pre_exists(z)),
                ModalOp::AG => greatest_fixpoint(&sub, |z| succ.pre_all(z)),
            })
        }
    }
}

/// Quantified claims over a whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// Every state's trajectory reaches a fixed point.
    AllStatesConverge,
    /// All trajectories reach one and the same fixed point.
    UniqueGlobalAttractor,
    ExistsStateSatisfying(Formula),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClaimError {
    #[error(transparent)]
    Refused(#[from] AuditRefusal),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Verdict with whatever evidence the claim kind calls for: a witness for
/// true existentials, a counterexample state and its trajectory for false
/// universal claims, and the attractor set for convergence claims.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub verdict: bool,
    pub witness_state: Option<StateIx>,
    pub witness_trajectory: Option<Trajectory>,
    pub attractors: Vec<StateIx>,
}

pub fn check_claim(
    alg: &FiniteAlpayAlgebra,
    claim: &Claim,
    env: &SetEnv,
) -> Result<ClaimResult, ClaimError> {
    match claim {
        Claim::AllStatesConverge => {
            let report = dynamics::termination_audit(alg)?;
            Ok(ClaimResult {
                verdict: report.all_converged(),
                witness_state: None,
                witness_trajectory: None,
                attractors: attractors_of(&report),
            })
        }
        Claim::UniqueGlobalAttractor => {
            let report = dynamics::termination_audit(alg)?;
            let attractors = attractors_of(&report);
            let verdict = report.all_converged() && attractors.len() <= 1;
            let mut result = ClaimResult {
                verdict,
                witness_state: None,
                witness_trajectory: None,
                attractors: attractors.clone(),
            };
            if !verdict {
                // Counterexample: the first state not flowing to the first
                // attractor.
                for (start, outcome) in &report.outcomes {
                    if let FixpointOutcome::Converged { state, .. } = outcome {
                        if Some(state) != attractors.first() {
                            result.witness_state = Some(*start);
                            result.witness_trajectory = Some(
                                dynamics::run_trajectory(alg, *start, alg.state_count() + 1)
                                    .expect("positive budget"),
                            );
                            break;
                        }
                    }
                }
            }
            Ok(result)
        }
        Claim::ExistsStateSatisfying(formula) => {
            let sat = model_check(alg, formula, env)?;
            let witness_state = sat.members().first().copied();
            Ok(ClaimResult {
                verdict: witness_state.is_some(),
                witness_state,
                witness_trajectory: None,
                attractors: Vec::new(),
            })
        }
    }
}

fn attractors_of(report: &dynamics::TerminationReport) -> Vec<StateIx> {
    let mut attractors = Vec::new();
    for (_, outcome) in &report.outcomes {
        if let FixpointOutcome::Converged { state, .. } = outcome {
            if !attractors.contains(state) {
                attractors.push(*state);
            }
        }
    }
    attractors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::builtins;

    fn check(alg: &FiniteAlpayAlgebra, text: &str) -> StateSet {
        model_check(alg, &parse_formula(text).unwrap(), &named_set_env(alg)).unwrap()
    }

    #[test]
    fn parses_the_documented_shapes() {
        assert_eq!(
            parse_formula("AF[phi] fixed").unwrap(),
            Formula::Modal(ModalOp::AF, Rel::PhiStep, Box::new(Formula::Fixed))
        );
        assert_eq!(
            parse_formula("EF[any] (psi >= 5)").unwrap(),
            Formula::Modal(
                ModalOp::EF,
                Rel::AnyGenerator,
                Box::new(Formula::PsiGeq(LogicLiteral::Int(5)))
            )
        );
        assert_eq!(
            parse_formula("AG[any] not fixed").unwrap(),
            Formula::Modal(
                ModalOp::AG,
                Rel::AnyGenerator,
                Box::new(Formula::Not(Box::new(Formula::Fixed)))
            )
        );
    }

    #[test]
    fn precedence_is_not_and_or_implies() {
        let f = parse_formula("not fixed and psi_top or fixed -> fixed").unwrap();
        assert_eq!(
            f,
            Formula::Implies(
                Box::new(Formula::Or(
                    Box::new(Formula::And(
                        Box::new(Formula::Not(Box::new(Formula::Fixed))),
                        Box::new(Formula::PsiTop),
                    )),
                    Box::new(Formula::Fixed),
                )),
                Box::new(Formula::Fixed),
            )
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_formula("AF[phi] fixxed").unwrap_err();
        assert_eq!((err.line, err.col), (1, 9));
        let err = parse_formula("psi >= 1/0").unwrap_err();
        assert!(err.message.contains("zero denominator"));
        let err = parse_formula("fixed fixed").unwrap_err();
        assert!(err.message.contains("trailing"));
    }

    #[test]
    fn printing_then_parsing_is_identity_on_examples() {
        for text in [
            "AF[phi] fixed",
            "EF[any] (psi >= 5)",
            "AG[any] not fixed",
            "(fixed or psi_top) and state = 3",
            "in low -> EF[phi] in high",
            "psi >= -3/4 or EG[any] EX[phi] fixed",
        ] {
            let ast = parse_formula(text).unwrap();
            assert_eq!(
                parse_formula(&ast.to_string()).unwrap(),
                ast,
                "{text} -> {ast}"
            );
        }
    }

    #[test]
    fn every_counter_state_eventually_fixes() {
        let alg = builtins::counter5();
        assert_eq!(check(&alg, "AF[phi] fixed").count(), 6);
        assert_eq!(check(&alg, "EF[any] (psi >= 5)").count(), 6);
    }

    #[test]
    fn cycle3_is_all_fixed_and_all_zero() {
        let alg = builtins::cycle3();
        assert_eq!(check(&alg, "AG[any] (psi >= 0)").count(), 3);
        assert_eq!(check(&alg, "EF[any] fixed").count(), 3);
    }

    #[test]
    fn psi_top_equals_the_top_threshold_when_declared() {
        let alg = builtins::counter5();
        assert_eq!(check(&alg, "psi_top"), check(&alg, "psi >= 5"));
        let err = model_check(&builtins::cycle3(), &Formula::PsiTop, &SetEnv::new());
        assert_eq!(err, Err(LogicError::NoTop));
    }

    #[test]
    fn named_sets_resolve_against_the_environment() {
        let alg = builtins::counter5();
        let low = check(&alg, "in low");
        assert_eq!(low.members(), vec![StateIx(0), StateIx(1), StateIx(2)]);
        assert_eq!(check(&alg, "AF[phi] in high").count(), 6);
        let err = model_check(
            &alg,
            &parse_formula("in nowhere").unwrap(),
            &named_set_env(&alg),
        );
        assert_eq!(err, Err(LogicError::UnknownSet("nowhere".into())));
    }

    #[test]
    fn literal_and_identifier_mismatches_error_at_eval_time() {
        let alg = builtins::counter5();
        let f = parse_formula("psi >= 1/2").unwrap();
        assert!(matches!(
            model_check(&alg, &f, &SetEnv::new()),
            Err(LogicError::LiteralMismatch { .. })
        ));
        let f = parse_formula("state = 9").unwrap();
        assert!(matches!(
            model_check(&alg, &f, &SetEnv::new()),
            Err(LogicError::UnknownId(_))
        ));
        assert_eq!(check(&alg, "state = 3").members(), vec![StateIx(3)]);
    }

    #[test]
    fn modal_duality_on_the_builtins() {
        for name in builtins::ALGEBRA_NAMES {
            let alg = builtins::algebra(name).unwrap();
            let env = named_set_env(&alg);
            for text in ["fixed", "psi >= 1", "not fixed"] {
                let f = parse_formula(text).unwrap();
                for rel in [Rel::PhiStep, Rel::AnyGenerator] {
                    let ag = model_check(
                        &alg,
                        &Formula::Modal(ModalOp::AG, rel, Box::new(f.clone())),
                        &env,
                    )
                    .unwrap();
                    let not_ef_not = model_check(
                        &alg,
                        &Formula::Modal(
                            ModalOp::EF,
                            rel,
                            Box::new(Formula::Not(Box::new(f.clone()))),
                        ),
                        &env,
                    )
                    .unwrap()
                    .complement();
                    assert_eq!(ag, not_ef_not, "{name} AG/EF duality on {text}");
                }
            }
        }
    }

    #[test]
    fn deterministic_af_agrees_with_trajectory_enumeration() {
        let alg = builtins::counter5();
        let f = parse_formula("AF[phi] fixed").unwrap();
        let by_fixpoint = model_check(&alg, &f, &SetEnv::new()).unwrap();
        for x in alg.states() {
            let t = dynamics::run_trajectory(&alg, x, alg.state_count() + 1).unwrap();
            let hits = t.visited().into_iter().any(|y| alg.is_fixed_point(y));
            assert_eq!(by_fixpoint.contains(x), hits);
        }
    }

    #[test]
    fn unique_attractor_claims() {
        let env = SetEnv::new();
        let counter = builtins::counter5();
        let result = check_claim(&counter, &Claim::UniqueGlobalAttractor, &env).unwrap();
        assert!(result.verdict);
        assert_eq!(result.attractors, vec![counter.lookup_state("5").unwrap()]);

        let peaks = builtins::twopeaks();
        let result = check_claim(&peaks, &Claim::UniqueGlobalAttractor, &env).unwrap();
        assert!(!result.verdict);
        let names: Vec<&str> = result
            .attractors
            .iter()
            .map(|&x| peaks.state_name(x))
            .collect();
        assert_eq!(names, vec!["a5", "b5"]);
        assert!(result.witness_state.is_some());
        assert!(result.witness_trajectory.is_some());
    }

    #[test]
    fn existential_claims_carry_witnesses() {
        let alg = builtins::cycle3();
        let claim = Claim::ExistsStateSatisfying(parse_formula("fixed").unwrap());
        let result = check_claim(&alg, &claim, &SetEnv::new()).unwrap();
        assert!(result.verdict);
        assert_eq!(result.witness_state, Some(StateIx(0)));
    }

    #[test]
    fn convergence_claims_refuse_axiom_breakers() {
        let err = check_claim(
            &builtins::badloop(),
            &Claim::AllStatesConverge,
            &SetEnv::new(),
        );
        assert!(matches!(err, Err(ClaimError::Refused(_))));
    }
}

#[cfg(test)]
mod prop_tests {
    use proptest::prelude::*;

    use super::*;

    fn arb_name() -> impl Strategy<Value = String> {
        prop_oneof!["[a-z][a-z0-9_]{0,6}", "[0-9]{1,3}",]
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Fixed),
            Just(Formula::PsiTop),
            (-99i64..=99).prop_map(|n| Formula::PsiGeq(LogicLiteral::Int(n))),
            ((-20i64..=20), (1i64..=20))
                .prop_map(|(n, d)| Formula::PsiGeq(LogicLiteral::Ratio(n, d))),
            "[a-z][a-z0-9_]{0,6}".prop_map(|s| Formula::PsiGeq(LogicLiteral::Label(s))),
            arb_name().prop_map(Formula::StateIs),
            arb_name().prop_map(Formula::InSet),
        ];
        leaf.prop_recursive(4, 48, 3, |inner| {
            let rel = prop_oneof![Just(Rel::PhiStep), Just(Rel::AnyGenerator)];
            let op = prop_oneof![
                Just(ModalOp::EX),
                Just(ModalOp::AX),
                Just(ModalOp::EF),
                Just(ModalOp::AF),
                Just(ModalOp::EG),
                Just(ModalOp::AG),
            ];
            prop_oneof![
                inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::Implies(Box::new(a), Box::new(b))),
                (op, rel, inner).prop_map(|(op, rel, f)| Formula::Modal(op, rel, Box::new(f))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// Printing then parsing is the identity on ASTs.
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            let printed = f.to_string();
            let reparsed = parse_formula(&printed)
                .unwrap_or_else(|e| panic!("failed to reparse `{printed}`: {e}"));
            prop_assert_eq!(reparsed, f);
        }
    }
}
