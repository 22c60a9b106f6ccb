//! The iterative dynamics: `x_{n+1} = x_n + φ(x_n)`.
//!
//! For an algebra that passes the axiom audit, every trajectory strictly
//! increases Ψ until it parks at a fixed point, so on a finite carrier the
//! iteration always terminates — in at most (#distinct Ψ values − 1) steps.
//! The termination audit re-derives that bound empirically from every start
//! state. Cycles can only occur for algebras that fail the audit; they are
//! detected exactly, with the repeating segment as witness.

use thiserror::Error;

use crate::algebra::{AdjIx, AxiomReport, FiniteAlpayAlgebra, StateIx};
use crate::eval::EvalValue;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("iteration budget must be at least 1")]
    ZeroBudget,
}

/// Refusal to run an audit whose hypothesis (the axioms) does not hold.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("algebra fails the axiom audit, so the termination guarantee does not apply")]
pub struct AuditRefusal {
    pub report: AxiomReport,
}

/// One application of the update rule.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub state_before: StateIx,
    /// The adjustment φ(state_before).
    pub adjustment: AdjIx,
    pub state_after: StateIx,
    pub psi_after: EvalValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrajectoryEnd {
    FixedPoint(StateIx),
    /// A state was revisited; the index points at its first occurrence in
    /// the visited sequence (start = index 0).
    CycleDetected {
        first_repeat_index: usize,
    },
    BudgetExhausted,
}

/// A recorded run of the iterative sequence from one start state.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start: StateIx,
    pub psi_start: EvalValue,
    pub steps: Vec<StepRecord>,
    pub outcome: TrajectoryEnd,
}

impl Trajectory {
    pub fn final_state(&self) -> StateIx {
        self.steps.last().map_or(self.start, |s| s.state_after)
    }

    /// The visited states: start, then each step's result. A revisited
    /// state appears again at the end.
    pub fn visited(&self) -> Vec<StateIx> {
        let mut v = vec![self.start];
        v.extend(self.steps.iter().map(|s| s.state_after));
        v
    }

    pub fn adjustments(&self) -> impl Iterator<Item = AdjIx> + '_ {
        self.steps.iter().map(|s| s.adjustment)
    }

    /// For a cycle outcome, the repeating segment of states (first
    /// occurrence up to, not including, the revisit).
    pub fn cycle_witness(&self) -> Option<Vec<StateIx>> {
        match self.outcome {
            TrajectoryEnd::CycleDetected { first_repeat_index } => {
                let visited = self.visited();
                Some(visited[first_repeat_index..visited.len() - 1].to_vec())
            }
            _ => None,
        }
    }
}

/// How a fixed-point search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixpointOutcome {
    Converged {
        state: StateIx,
        steps: usize,
    },
    /// The exact repeating segment of states.
    Nonterminating {
        cycle: Vec<StateIx>,
    },
    BudgetExhausted {
        last_state: StateIx,
    },
}

/// Applies the update rule once.
pub fn step(alg: &FiniteAlpayAlgebra, x: StateIx) -> StepRecord {
    let adjustment = alg.phi(x);
    let state_after = alg.apply(x, adjustment);
    StepRecord {
        state_before: x,
        adjustment,
        state_after,
        psi_after: alg.psi(state_after).clone(),
    }
}

/// Iterates the update rule from `x0` until a fixed point, a revisited
/// state, or `budget` steps. The visited set is tracked exactly, so
/// nontermination is witnessed rather than guessed from the budget.
pub fn run_trajectory(
    alg: &FiniteAlpayAlgebra,
    x0: StateIx,
    budget: usize,
) -> Result<Trajectory, DynamicsError> {
    if budget == 0 {
        return Err(DynamicsError::ZeroBudget);
    }
    let mut first_seen = vec![usize::MAX; alg.state_count()];
    first_seen[x0.0] = 0;
    let mut steps = Vec::new();
    let mut current = x0;
    let outcome = loop {
        if alg.is_fixed_point(current) {
            break TrajectoryEnd::FixedPoint(current);
        }
        if steps.len() == budget {
            break TrajectoryEnd::BudgetExhausted;
        }
        let record = step(alg, current);
        current = record.state_after;
        steps.push(record);
        if first_seen[current.0] != usize::MAX {
            break TrajectoryEnd::CycleDetected {
                first_repeat_index: first_seen[current.0],
            };
        }
        first_seen[current.0] = steps.len();
    };
    Ok(Trajectory {
        start: x0,
        psi_start: alg.psi(x0).clone(),
        steps,
        outcome,
    })
}

/// Runs the update rule to completion: the eventual fixed point reached
/// from `x0`, if the iteration converges. Idempotent: from a converged
/// state it converges again in zero steps.
pub fn phi_infinity(
    alg: &FiniteAlpayAlgebra,
    x0: StateIx,
    budget: usize,
) -> Result<FixpointOutcome, DynamicsError> {
    let t = run_trajectory(alg, x0, budget)?;
    Ok(match t.outcome {
        TrajectoryEnd::FixedPoint(state) => FixpointOutcome::Converged {
            state,
            steps: t.steps.len(),
        },
        TrajectoryEnd::CycleDetected { .. } => FixpointOutcome::Nonterminating {
            cycle: t.cycle_witness().expect("cycle outcome"),
        },
        TrajectoryEnd::BudgetExhausted => FixpointOutcome::BudgetExhausted {
            last_state: t.final_state(),
        },
    })
}

/// Per-start-state convergence summary.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminationReport {
    pub outcomes: Vec<(StateIx, FixpointOutcome)>,
    pub max_steps_observed: usize,
    /// #distinct Ψ values − 1: since each step strictly increases Ψ, no
    /// trajectory can be longer.
    pub step_bound: usize,
    pub bound_respected: bool,
}

impl TerminationReport {
    pub fn all_converged(&self) -> bool {
        self.outcomes
            .iter()
            .all(|(_, o)| matches!(o, FixpointOutcome::Converged { .. }))
    }
}

/// Runs the fixed-point search from every state and checks the strict-
/// increase step bound. Refuses algebras that fail the axiom audit: the
/// termination guarantee only follows from the axioms.
pub fn termination_audit(alg: &FiniteAlpayAlgebra) -> Result<TerminationReport, AuditRefusal> {
    let report = alg.validate();
    if !report.passed() {
        return Err(AuditRefusal { report });
    }
    let budget = alg.state_count() + 1;
    let step_bound = alg.distinct_psi_count().saturating_sub(1);
    let mut outcomes = Vec::with_capacity(alg.state_count());
    let mut max_steps_observed = 0;
    let mut bound_respected = true;
    for x in alg.states() {
        let outcome = phi_infinity(alg, x, budget).expect("positive budget");
        if let FixpointOutcome::Converged { steps, .. } = outcome {
            max_steps_observed = max_steps_observed.max(steps);
            if steps > step_bound {
                bound_respected = false;
            }
        } else {
            bound_respected = false;
        }
        outcomes.push((x, outcome));
    }
    Ok(TerminationReport {
        outcomes,
        max_steps_observed,
        step_bound,
        bound_respected,
    })
}

/// The sequence of Ψ values along a trajectory: Ψ(start), then Ψ after each
/// step. Strictly increasing for axiom-passing algebras.
pub fn psi_trace(t: &Trajectory) -> Vec<EvalValue> {
    let mut trace = Vec::with_capacity(t.steps.len() + 1);
    trace.push(t.psi_start.clone());
    trace.extend(t.steps.iter().map(|s| s.psi_after.clone()));
    trace
}
