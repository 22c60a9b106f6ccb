//! Finite Alpay algebras: an explicit state set, a monoid of adjustments
//! acting on it, an update rule φ, and an evaluation Ψ into a totally
//! ordered domain — together with the exhaustive axiom audit.
//!
//! Everything is table-driven over enumerated finite carriers, which makes
//! every law decidable by brute force. Identifier resolution happens once at
//! construction; after that all operations work on dense indices.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::eval::{EvalError, EvalOrder, EvalValue};

/// Index of a state in the algebra's state list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateIx(pub usize);

/// Index of an adjustment in the monoid's element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjIx(pub usize);

/// Structural malformation: the object cannot even be built. Distinct from
/// an axiom failure, which is a property of a well-formed object.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("monoid has no elements")]
    EmptyMonoid,
    #[error("zero index {0} out of range")]
    ZeroOutOfRange(usize),
    #[error("add table must be square over {expected} elements (row {row} has {got} entries)")]
    BadAddTableShape {
        expected: usize,
        row: usize,
        got: usize,
    },
    #[error("add table entry ({row}, {col}) = {value} out of range")]
    AddEntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("action table must cover {states} states x {adjustments} adjustments")]
    BadActionShape { states: usize, adjustments: usize },
    #[error("action entry ({state}, {adjustment}) = {value} out of range")]
    ActionEntryOutOfRange {
        state: usize,
        adjustment: usize,
        value: usize,
    },
    #[error("phi must assign an adjustment to each of {0} states")]
    BadPhiLength(usize),
    #[error("phi({state}) = {value} out of range")]
    PhiOutOfRange { state: usize, value: usize },
    #[error("psi must assign a value to each of {0} states")]
    BadPsiLength(usize),
    #[error("psi({state}): {source}")]
    BadPsiValue { state: String, source: EvalError },
    #[error("psi({state}) = {value} exceeds the declared top")]
    PsiAboveTop { state: String, value: String },
    #[error("top element: {0}")]
    BadTop(EvalError),
    #[error("initial state index {0} out of range")]
    InitialOutOfRange(usize),
    #[error("named set `{name}` contains out-of-range state index {index}")]
    NamedSetOutOfRange { name: String, index: usize },
}

/// Unknown identifier passed to a name-resolving operation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown adjustment `{0}`")]
    UnknownAdjustment(String),
}

/// A finite commutative-by-default monoid of adjustments, given by a full
/// addition table.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustmentMonoid {
    elements: Vec<String>,
    zero: usize,
    table: Vec<Vec<usize>>,
    commutative: bool,
    generators: Vec<usize>,
}

impl AdjustmentMonoid {
    /// Builds a monoid from a full table. Only structure is checked here
    /// (shape, closure-by-range, unique names); the monoid *laws* are the
    /// business of the axiom audit.
    pub fn new(
        elements: Vec<String>,
        zero: usize,
        table: Vec<Vec<usize>>,
        commutative: bool,
        generators: Vec<usize>,
    ) -> Result<Self, StructuralError> {
        let n = elements.len();
        if n == 0 {
            return Err(StructuralError::EmptyMonoid);
        }
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(StructuralError::DuplicateId(name.clone()));
            }
        }
        if zero >= n {
            return Err(StructuralError::ZeroOutOfRange(zero));
        }
        if table.len() != n {
            return Err(StructuralError::BadAddTableShape {
                expected: n,
                row: table.len(),
                got: 0,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(StructuralError::BadAddTableShape {
                    expected: n,
                    row: i,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(StructuralError::AddEntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        for &g in &generators {
            if g >= n {
                return Err(StructuralError::GeneratorOutOfRange(g));
            }
        }
        Ok(AdjustmentMonoid {
            elements,
            zero,
            table,
            commutative,
            generators,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, a: AdjIx) -> &str {
        &self.elements[a.0]
    }

    pub fn zero(&self) -> AdjIx {
        AdjIx(self.zero)
    }

    pub fn commutative(&self) -> bool {
        self.commutative
    }

    pub fn generators(&self) -> impl Iterator<Item = AdjIx> + '_ {
        self.generators.iter().map(|&g| AdjIx(g))
    }

    pub fn add(&self, a: AdjIx, b: AdjIx) -> AdjIx {
        AdjIx(self.table[a.0][b.0])
    }

    pub fn lookup(&self, name: &str) -> Result<AdjIx, IdError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .map(AdjIx)
            .ok_or_else(|| IdError::UnknownAdjustment(name.to_owned()))
    }

    /// The raw addition table, indexed `[a][b]`.
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.clone()
    }

    /// Left fold of the addition table over a sequence; the empty sequence
    /// nets to zero.
    pub fn net(&self, seq: impl IntoIterator<Item = AdjIx>) -> AdjIx {
        seq.into_iter().fold(self.zero(), |acc, a| self.add(acc, a))
    }
}

/// Raw, index-based input to [`FiniteAlpayAlgebra::from_parts`].
#[derive(Debug, Clone)]
pub struct AlgebraParts {
    pub states: Vec<String>,
    pub monoid: AdjustmentMonoid,
    /// `action[state][adjustment]` = resulting state.
    pub action: Vec<Vec<usize>>,
    /// `phi[state]` = adjustment index.
    pub phi: Vec<usize>,
    /// `psi[state]` = evaluation value.
    pub psi: Vec<EvalValue>,
    pub eval_order: EvalOrder,
    pub initial_state: Option<usize>,
    /// Optional named subsets of the state space (logic environment).
    pub named_sets: BTreeMap<String, Vec<usize>>,
}

/// An explicit finite model: states, adjustment monoid, action, φ, Ψ.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAlpayAlgebra {
    states: Vec<String>,
    monoid: AdjustmentMonoid,
    action: Vec<Vec<usize>>,
    phi: Vec<usize>,
    psi: Vec<EvalValue>,
    eval_order: EvalOrder,
    initial_state: Option<usize>,
    named_sets: BTreeMap<String, Vec<usize>>,
}

impl FiniteAlpayAlgebra {
    /// Builds an algebra, checking totality of all tables and compatibility
    /// of every Ψ value with the evaluation order (including the declared
    /// top, if any). Ill-formedness here is reported as a structural error,
    /// never as an axiom failure.
    pub fn from_parts(parts: AlgebraParts) -> Result<Self, StructuralError> {
        let AlgebraParts {
            states,
            monoid,
            action,
            phi,
            psi,
            eval_order,
            initial_state,
            named_sets,
        } = parts;
        let n = states.len();
        let m = monoid.len();
        for (i, name) in states.iter().enumerate() {
            if states[..i].contains(name) {
                return Err(StructuralError::DuplicateId(name.clone()));
            }
        }
        if action.len() != n || action.iter().any(|row| row.len() != m) {
            return Err(StructuralError::BadActionShape {
                states: n,
                adjustments: m,
            });
        }
        for (x, row) in action.iter().enumerate() {
            for (a, &y) in row.iter().enumerate() {
                if y >= n {
                    return Err(StructuralError::ActionEntryOutOfRange {
                        state: x,
                        adjustment: a,
                        value: y,
                    });
                }
            }
        }
        if phi.len() != n {
            return Err(StructuralError::BadPhiLength(n));
        }
        for (x, &a) in phi.iter().enumerate() {
            if a >= m {
                return Err(StructuralError::PhiOutOfRange { state: x, value: a });
            }
        }
        if psi.len() != n {
            return Err(StructuralError::BadPsiLength(n));
        }
        if let Some(top) = eval_order.top() {
            eval_order.contains(top).map_err(StructuralError::BadTop)?;
        }
        for (x, v) in psi.iter().enumerate() {
            eval_order
                .contains(v)
                .map_err(|source| StructuralError::BadPsiValue {
                    state: states[x].clone(),
                    source,
                })?;
            if let Some(top) = eval_order.top() {
                let ord =
                    eval_order
                        .cmp(v, top)
                        .map_err(|source| StructuralError::BadPsiValue {
                            state: states[x].clone(),
                            source,
                        })?;
                if ord == Ordering::Greater {
                    return Err(StructuralError::PsiAboveTop {
                        state: states[x].clone(),
                        value: eval_order.format(v),
                    });
                }
            }
        }
        if let Some(x0) = initial_state {
            if x0 >= n {
                return Err(StructuralError::InitialOutOfRange(x0));
            }
        }
        for (name, members) in &named_sets {
            for &i in members {
                if i >= n {
                    return Err(StructuralError::NamedSetOutOfRange {
                        name: name.clone(),
                        index: i,
                    });
                }
            }
        }
        Ok(FiniteAlpayAlgebra {
            states,
            monoid,
            action,
            phi,
            psi,
            eval_order,
            initial_state,
            named_sets,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateIx> {
        (0..self.states.len()).map(StateIx)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, x: StateIx) -> &str {
        &self.states[x.0]
    }

    pub fn lookup_state(&self, name: &str) -> Result<StateIx, IdError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(StateIx)
            .ok_or_else(|| IdError::UnknownState(name.to_owned()))
    }

    pub fn monoid(&self) -> &AdjustmentMonoid {
        &self.monoid
    }

    pub fn eval_order(&self) -> &EvalOrder {
        &self.eval_order
    }

    pub fn initial_state(&self) -> Option<StateIx> {
        self.initial_state.map(StateIx)
    }

    pub fn named_sets(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.named_sets
    }

    /// Applies an adjustment to a state.
    pub fn apply(&self, x: StateIx, a: AdjIx) -> StateIx {
        StateIx(self.action[x.0][a.0])
    }

    pub fn phi(&self, x: StateIx) -> AdjIx {
        AdjIx(self.phi[x.0])
    }

    pub fn psi(&self, x: StateIx) -> &EvalValue {
        &self.psi[x.0]
    }

    /// A state is a fixed point exactly when its update rule yields zero.
    pub fn is_fixed_point(&self, x: StateIx) -> bool {
        self.phi[x.0] == self.monoid.zero
    }

    pub fn fixed_points(&self) -> Vec<StateIx> {
        self.states().filter(|&x| self.is_fixed_point(x)).collect()
    }

    /// Compares Ψ at two states. Infallible: all Ψ values were checked
    /// against the order at construction.
    pub fn psi_cmp(&self, x: StateIx, y: StateIx) -> Ordering {
        self.eval_order
            .cmp(&self.psi[x.0], &self.psi[y.0])
            .expect("psi values checked at construction")
    }

    /// Number of distinct Ψ values over the whole state space.
    pub fn distinct_psi_count(&self) -> usize {
        let mut order: Vec<StateIx> = self.states().collect();
        order.sort_by(|&a, &b| self.psi_cmp(a, b));
        let mut count = 0;
        for (i, &x) in order.iter().enumerate() {
            if i == 0 || self.psi_cmp(order[i - 1], x) != Ordering::Equal {
                count += 1;
            }
        }
        count
    }

    /// Clones the algebra back into raw parts, e.g. for mutation testing:
    /// tweak a table entry and rebuild via [`FiniteAlpayAlgebra::from_parts`].
    pub fn to_parts(&self) -> AlgebraParts {
        AlgebraParts {
            states: self.states.clone(),
            monoid: self.monoid.clone(),
            action: self.action.clone(),
            phi: self.phi.clone(),
            psi: self.psi.clone(),
            eval_order: self.eval_order.clone(),
            initial_state: self.initial_state,
            named_sets: self.named_sets.clone(),
        }
    }

    /// Runs the full axiom audit. Exhaustive over the finite carriers and
    /// deterministic: identical input yields an identical report, witnesses
    /// in declaration order.
    #[allow(clippy::needless_range_loop)] // parallel-table index math
    pub fn validate(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let m = &self.monoid;
        let names = m.element_names();

        // axiom 1: monoid laws on the add table. Closure holds by
        // construction (entries are in-range indices).
        for a in 0..m.len() {
            for b in 0..m.len() {
                for c in 0..m.len() {
                    let left = m.table[m.table[a][b]][c];
                    let right = m.table[a][m.table[b][c]];
                    if left != right {
                        violations.push(AxiomViolation {
                            axiom: Axiom::MonoidLaws,
                            subject: vec![names[a].clone(), names[b].clone(), names[c].clone()],
                            detail: format!(
                                "({} + {}) + {} = {} but {} + ({} + {}) = {}",
                                names[a],
                                names[b],
                                names[c],
                                names[left],
                                names[a],
                                names[b],
                                names[c],
                                names[right],
                            ),
                        });
                    }
                }
            }
        }
        for a in 0..m.len() {
            if m.table[a][m.zero] != a || m.table[m.zero][a] != a {
                violations.push(AxiomViolation {
                    axiom: Axiom::MonoidLaws,
                    subject: vec![names[a].clone()],
                    detail: format!(
                        "{} + {} = {}, {} + {} = {} (zero must be neutral)",
                        names[a],
                        names[m.zero],
                        names[m.table[a][m.zero]],
                        names[m.zero],
                        names[a],
                        names[m.table[m.zero][a]],
                    ),
                });
            }
        }
        if m.commutative {
            for a in 0..m.len() {
                for b in (a + 1)..m.len() {
                    if m.table[a][b] != m.table[b][a] {
                        violations.push(AxiomViolation {
                            axiom: Axiom::MonoidLaws,
                            subject: vec![names[a].clone(), names[b].clone()],
                            detail: format!(
                                "{} + {} = {} but {} + {} = {}",
                                names[a],
                                names[b],
                                names[m.table[a][b]],
                                names[b],
                                names[a],
                                names[m.table[b][a]],
                            ),
                        });
                    }
                }
            }
        }

        // axiom 2: identity action and compatibility with addition.
        for x in 0..self.states.len() {
            if self.action[x][m.zero] != x {
                violations.push(AxiomViolation {
                    axiom: Axiom::MonoidAction,
                    subject: vec![self.states[x].clone(), names[m.zero].clone()],
                    detail: format!(
                        "{} + {} = {} (zero must fix every state)",
                        self.states[x], names[m.zero], self.states[self.action[x][m.zero]],
                    ),
                });
            }
        }
        for x in 0..self.states.len() {
            for a in 0..m.len() {
                for b in 0..m.len() {
                    let stepped = self.action[self.action[x][a]][b];
                    let summed = self.action[x][m.table[a][b]];
                    if stepped != summed {
                        violations.push(AxiomViolation {
                            axiom: Axiom::MonoidAction,
                            subject: vec![
                                self.states[x].clone(),
                                names[a].clone(),
                                names[b].clone(),
                            ],
                            detail: format!(
                                "({} + {}) + {} = {} but {} + ({} + {}) = {}",
                                self.states[x],
                                names[a],
                                names[b],
                                self.states[stepped],
                                self.states[x],
                                names[a],
                                names[b],
                                self.states[summed],
                            ),
                        });
                    }
                }
            }
        }

        // axiom 4, clause 1: a nonzero update strictly improves Ψ.
        for x in 0..self.states.len() {
            let d = self.phi[x];
            if d != m.zero {
                let y = self.action[x][d];
                if self.psi_cmp(StateIx(y), StateIx(x)) != Ordering::Greater {
                    violations.push(AxiomViolation {
                        axiom: Axiom::StrictProgress,
                        subject: vec![
                            self.states[x].clone(),
                            names[d].clone(),
                            self.states[y].clone(),
                        ],
                        detail: format!(
                            "phi({}) = {} but psi({}) = {} does not exceed psi({}) = {}",
                            self.states[x],
                            names[d],
                            self.states[y],
                            self.eval_order.format(&self.psi[y]),
                            self.states[x],
                            self.eval_order.format(&self.psi[x]),
                        ),
                    });
                }
            }
        }

        // axiom 4, clause 2: a fixed point admits no one-step improvement.
        for x in 0..self.states.len() {
            if self.phi[x] == m.zero {
                for a in 0..m.len() {
                    let y = self.action[x][a];
                    if self.psi_cmp(StateIx(y), StateIx(x)) == Ordering::Greater {
                        violations.push(AxiomViolation {
                            axiom: Axiom::StableIsLocalMax,
                            subject: vec![
                                self.states[x].clone(),
                                names[a].clone(),
                                self.states[y].clone(),
                            ],
                            detail: format!(
                                "phi({}) = 0 but psi({} + {}) = {} exceeds psi({}) = {}",
                                self.states[x],
                                self.states[x],
                                names[a],
                                self.eval_order.format(&self.psi[y]),
                                self.states[x],
                                self.eval_order.format(&self.psi[x]),
                            ),
                        });
                    }
                }
            }
        }

        // axiom 5: every state attaining the maximal Ψ is fixed.
        if !self.states.is_empty() {
            let mut max = StateIx(0);
            for x in self.states() {
                if self.psi_cmp(x, max) == Ordering::Greater {
                    max = x;
                }
            }
            for x in self.states() {
                if self.psi_cmp(x, max) == Ordering::Equal && self.phi[x.0] != m.zero {
                    violations.push(AxiomViolation {
                        axiom: Axiom::OptimumIsFixed,
                        subject: vec![self.states[x.0].clone()],
                        detail: format!(
                            "psi({}) = {} is maximal but phi({}) = {}",
                            self.states[x.0],
                            self.eval_order.format(&self.psi[x.0]),
                            self.states[x.0],
                            names[self.phi[x.0]],
                        ),
                    });
                }
            }
        }

        AxiomReport { violations }
    }
}

/// The five audited laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Axiom 1: associativity, identity, and (when required) commutativity
    /// of the adjustment monoid.
    MonoidLaws,
    /// Axiom 2: zero acts as identity; acting twice equals acting by the sum.
    MonoidAction,
    /// Axiom 4, clause 1: a nonzero update strictly increases Ψ.
    StrictProgress,
    /// Axiom 4, clause 2: at a fixed point no single adjustment increases Ψ.
    StableIsLocalMax,
    /// Axiom 5: states attaining the maximal Ψ have φ = 0.
    OptimumIsFixed,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::MonoidLaws,
        Axiom::MonoidAction,
        Axiom::StrictProgress,
        Axiom::StableIsLocalMax,
        Axiom::OptimumIsFixed,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            Axiom::MonoidLaws => "axiom 1",
            Axiom::MonoidAction => "axiom 2",
            Axiom::StrictProgress => "axiom 4.1",
            Axiom::StableIsLocalMax => "axiom 4.2",
            Axiom::OptimumIsFixed => "axiom 5",
        }
    }

    pub fn title(&self) -> &'static str {
        match self {
            Axiom::MonoidLaws => "adjustment monoid laws",
            Axiom::MonoidAction => "monoid action laws",
            Axiom::StrictProgress => "strict progress",
            Axiom::StableIsLocalMax => "stability is locally maximal",
            Axiom::OptimumIsFixed => "global optimum is fixed",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.code(), self.title())
    }
}

/// A single witnessed law violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The offending tuple, as identifier names.
    pub subject: Vec<String>,
    pub detail: String,
}

/// Outcome of the exhaustive axiom audit. A failing axiom always carries at
/// least one witness; a passing one carries none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self, axiom: Axiom) -> bool {
        !self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn violations(&self) -> &[AxiomViolation] {
        &self.violations
    }

    pub fn violations_for(&self, axiom: Axiom) -> impl Iterator<Item = &AxiomViolation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    /// Axioms that failed, in audit order.
    pub fn failed_axioms(&self) -> Vec<Axiom> {
        Axiom::ALL
            .into_iter()
            .filter(|&a| !self.verdict(a))
            .collect()
    }
}


#[cfg(test)]
mod prop_tests {
    use proptest::prelude::*;

    use super::*;
    use crate::workbench::random::{random_algebra, RandomAlgebraParams};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// net is a monoid homomorphism from sequences under concatenation:
        /// net(s ++ t) = net(s) + net(t), and acting by the net equals
        /// acting step by step.
        #[test]
        fn net_splits_over_concatenation(
            seed in 0u64..500,
            size in 2u32..=5,
            raw in proptest::collection::vec(0usize..64, 0..10),
            split in 0usize..10,
        ) {
            let alg = random_algebra(&RandomAlgebraParams {
                ground_set_size: size,
                family_size: 4,
                seed,
            }).unwrap();
            let m = alg.monoid();
            let seq: Vec<AdjIx> = raw.iter().map(|&r| AdjIx(r % m.len())).collect();
            let split = split.min(seq.len());
            let whole = m.net(seq.iter().copied());
            let parts = m.add(
                m.net(seq[..split].iter().copied()),
                m.net(seq[split..].iter().copied()),
            );
            prop_assert_eq!(whole, parts);

            let start = StateIx(0);
            let stepped = seq.iter().fold(start, |x, &a| alg.apply(x, a));
            prop_assert_eq!(alg.apply(start, whole), stepped);
        }
    }
}
