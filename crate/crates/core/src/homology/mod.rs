//! Homology of the state-transition complex.
//!
//! The transition graph becomes a chain complex C₂ → C₁ → C₀: states are
//! 0-cells, policy-selected transitions are 1-cells with boundary
//! `target − source`, and declared two-cells (commuting squares or raw
//! integer cycle-chains) fill loops. b₀ counts connected pieces of the
//! state space, b₁ counts independent loops modulo the filled ones, and
//! invariant factors > 1 of the filled part are torsion. Everything runs
//! over arbitrary-precision integers via Smith normal form, and a
//! union-find/Euler oracle provides an independent cross-check.

pub mod matrix;
pub mod oracle;
pub mod snf;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AdjIx, FiniteAlpayAlgebra, StateIx};

pub use matrix::IntMatrix;
pub use oracle::{graph_oracle, OracleReport};
pub use snf::{smith_normal_form, KernelBasis, SnfResult, SnfTransforms};

/// Which adjustments produce edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeSelection {
    /// Declared generators only (the default: composite adjustments make
    /// composite edges redundant and inflate b₁).
    Generators,
    /// Every nonzero adjustment, for comparison.
    AllAdjustments,
}

/// What to do with edges `x + a = x` for `a ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SelfLoopPolicy {
    /// Keep them as 1-cells with zero boundary (each adds one to b₁).
    Keep,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgePolicy {
    pub selection: EdgeSelection,
    pub self_loops: SelfLoopPolicy,
}

impl Default for EdgePolicy {
    fn default() -> Self {
        EdgePolicy {
            selection: EdgeSelection::Generators,
            self_loops: SelfLoopPolicy::Keep,
        }
    }
}

impl std::fmt::Display for EdgePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "edges={} self-loops={}",
            match self.selection {
                EdgeSelection::Generators => "generators",
                EdgeSelection::AllAdjustments => "all",
            },
            match self.self_loops {
                SelfLoopPolicy::Keep => "keep",
                SelfLoopPolicy::Drop => "drop",
            }
        )
    }
}

/// A 1-cell: a single-adjustment transition with a nonzero label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: StateIx,
    pub label: AdjIx,
    pub target: StateIx,
}

/// Enumerates the policy's edges in declaration order (states outer,
/// adjustments inner).
pub fn edges(alg: &FiniteAlpayAlgebra, policy: EdgePolicy) -> Vec<Edge> {
    let labels: Vec<AdjIx> = match policy.selection {
        EdgeSelection::Generators => alg.monoid().generators().collect(),
        EdgeSelection::AllAdjustments => (0..alg.monoid().len()).map(AdjIx).collect(),
    };
    let zero = alg.monoid().zero();
    let mut out = Vec::new();
    for x in alg.states() {
        for &a in &labels {
            if a == zero {
                continue;
            }
            let target = alg.apply(x, a);
            if target == x && policy.self_loops == SelfLoopPolicy::Drop {
                continue;
            }
            out.push(Edge {
                source: x,
                label: a,
                target,
            });
        }
    }
    out
}

/// A declared 2-cell, before validation against a concrete complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoCellSpec {
    /// Fills the square `x --a--> · --b--> ·` vs `x --b--> · --a--> ·`;
    /// requires the two composite endpoints to agree.
    Square { base: StateIx, a: AdjIx, b: AdjIx },
    /// A raw integer combination of edges `(coefficient, source, label)`;
    /// its boundary must vanish.
    Chain(Vec<(i64, StateIx, AdjIx)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoCellOrigin {
    DeclaredChain,
    CommutingSquare { base: StateIx, a: AdjIx, b: AdjIx },
}

/// A validated 2-cell: a cycle in C₁, stored as (coefficient, edge column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub boundary: Vec<(BigInt, usize)>,
    pub origin: TwoCellOrigin,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("two-cell references the zero adjustment (edges carry nonzero labels)")]
    ZeroLabel,
    #[error("two-cell references edge ({state}, {adjustment}) which is not in the complex under {policy}")]
    EdgeNotInComplex {
        state: String,
        adjustment: String,
        policy: String,
    },
    #[error("square at `{state}` with `{a}`, `{b}` does not commute")]
    NonCommutingSquare { state: String, a: String, b: String },
    #[error("declared chain is not a cycle (boundary does not vanish)")]
    NotACycle,
    #[error("boundary composition check failed: d1 * d2 != 0")]
    BoundaryCheckFailed,
}

/// The integer chain complex C₂ → C₁ → C₀ of an algebra under an edge
/// policy. Row/column order follows declaration order; `d1 * d2 = 0` is
/// verified at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    pub policy: EdgePolicy,
    pub vertices: usize,
    pub edges: Vec<Edge>,
    pub two_cells: Vec<TwoCell>,
    /// |X| × |E|; each column is `e_target − e_source` (zero for a self-loop).
    pub d1: IntMatrix,
    /// |E| × #two-cells.
    pub d2: IntMatrix,
    pub self_loop_count: usize,
}

impl ChainComplex {
    pub fn edge_column(&self, source: StateIx, label: AdjIx) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.source == source && e.label == label)
    }
}

/// Builds the chain complex, validating every declared two-cell: square
/// endpoints must commute, chains must be cycles, and all referenced edges
/// must exist under the policy.
pub fn build_complex(
    alg: &FiniteAlpayAlgebra,
    policy: EdgePolicy,
    two_cells: &[TwoCellSpec],
) -> Result<ChainComplex, ComplexError> {
    let edge_list = edges(alg, policy);
    let n = alg.state_count();
    let zero = alg.monoid().zero();

    let mut d1 = IntMatrix::zeros(n, edge_list.len());
    for (col, e) in edge_list.iter().enumerate() {
        if e.source != e.target {
            d1.set(e.target.0, col, BigInt::from(1));
            d1.set(e.source.0, col, BigInt::from(-1));
        }
    }

    let column_of = |source: StateIx, label: AdjIx| -> Result<usize, ComplexError> {
        edge_list
            .iter()
            .position(|e| e.source == source && e.label == label)
            .ok_or_else(|| ComplexError::EdgeNotInComplex {
                state: alg.state_name(source).to_owned(),
                adjustment: alg.monoid().name(label).to_owned(),
                policy: policy.to_string(),
            })
    };

    let mut cells = Vec::new();
    for spec in two_cells {
        let (terms, origin) = match spec {
            TwoCellSpec::Square { base, a, b } => {
                let via_a = alg.apply(alg.apply(*base, *a), *b);
                let via_b = alg.apply(alg.apply(*base, *b), *a);
                if via_a != via_b {
                    return Err(ComplexError::NonCommutingSquare {
                        state: alg.state_name(*base).to_owned(),
                        a: alg.monoid().name(*a).to_owned(),
                        b: alg.monoid().name(*b).to_owned(),
                    });
                }
                let terms = vec![
                    (1i64, *base, *a),
                    (1, alg.apply(*base, *a), *b),
                    (-1, *base, *b),
                    (-1, alg.apply(*base, *b), *a),
                ];
                (
                    terms,
                    TwoCellOrigin::CommutingSquare {
                        base: *base,
                        a: *a,
                        b: *b,
                    },
                )
            }
            TwoCellSpec::Chain(terms) => (terms.clone(), TwoCellOrigin::DeclaredChain),
        };

        // Merge coefficients per edge before resolving columns: identical
        // terms with opposite signs (as in a square with a = b) cancel
        // outright and never touch the edge set.
        let mut combined: Vec<(BigInt, StateIx, AdjIx)> = Vec::new();
        for (coeff, source, label) in terms {
            if label == zero {
                return Err(ComplexError::ZeroLabel);
            }
            match combined
                .iter_mut()
                .find(|(_, s, l)| *s == source && *l == label)
            {
                Some((acc, ..)) => *acc += coeff,
                None => combined.push((BigInt::from(coeff), source, label)),
            }
        }
        let mut merged: Vec<(BigInt, usize)> = Vec::new();
        for (coeff, source, label) in combined {
            if coeff.is_zero() {
                continue;
            }
            merged.push((coeff, column_of(source, label)?));
        }
        merged.sort_by_key(|&(_, col)| col);

        // Cycle condition: the boundary of the chain vanishes. Squares
        // satisfy it by the endpoint check; declared chains must be
        // verified.
        let mut boundary = vec![BigInt::zero(); n];
        for (coeff, col) in &merged {
            for (row, acc) in boundary.iter_mut().enumerate() {
                let entry = d1.get(row, *col);
                if !entry.is_zero() {
                    *acc += coeff * entry;
                }
            }
        }
        if boundary.iter().any(|v| !v.is_zero()) {
            return Err(ComplexError::NotACycle);
        }

        cells.push(TwoCell {
            boundary: merged,
            origin,
        });
    }

    let mut d2 = IntMatrix::zeros(edge_list.len(), cells.len());
    for (col, cell) in cells.iter().enumerate() {
        for (coeff, edge_col) in &cell.boundary {
            d2.set(*edge_col, col, coeff.clone());
        }
    }
    if !d1.mul(&d2).is_zero() {
        return Err(ComplexError::BoundaryCheckFailed);
    }

    let self_loop_count = edge_list.iter().filter(|e| e.source == e.target).count();
    Ok(ChainComplex {
        policy,
        vertices: n,
        edges: edge_list,
        two_cells: cells,
        d1,
        d2,
        self_loop_count,
    })
}

/// Betti numbers and H₁ torsion of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub b0: usize,
    pub b1: usize,
    /// Invariant factors > 1 of the filled cycle lattice.
    pub h1_torsion: Vec<BigInt>,
    pub edge_policy: EdgePolicy,
    pub self_loop_count: usize,
}

/// Computes b₀ = |X| − rank d₁ and H₁ = ker d₁ / im d₂: the image is
/// expressed in an integer basis of the kernel and normalized by Smith
/// normal form, giving both the free rank b₁ and the torsion factors.
pub fn homology_report(complex: &ChainComplex) -> HomologyReport {
    if complex.two_cells.is_empty() {
        // No filled cells: H₁ is free on the kernel, no torsion possible.
        let rank_d1 = smith_normal_form(&complex.d1, false).rank;
        return HomologyReport {
            b0: complex.vertices - rank_d1,
            b1: complex.edges.len() - rank_d1,
            h1_torsion: Vec::new(),
            edge_policy: complex.policy,
            self_loop_count: complex.self_loop_count,
        };
    }

    let kernel = KernelBasis::of(&complex.d1);
    let rank_d1 = kernel.rank;
    let cycle_dim = kernel.dim();

    // Every d2 column is a cycle (d1 * d2 = 0 was checked at build), so it
    // has exact coordinates in the kernel basis.
    let mut image = IntMatrix::zeros(cycle_dim, complex.two_cells.len());
    for col in 0..complex.two_cells.len() {
        let coords = kernel
            .coordinates(&complex.d2.column(col))
            .expect("two-cell boundaries are cycles");
        for (row, v) in coords.into_iter().enumerate() {
            image.set(row, col, v);
        }
    }
    let image_snf = smith_normal_form(&image, false);

    HomologyReport {
        b0: complex.vertices - rank_d1,
        b1: cycle_dim - image_snf.rank,
        h1_torsion: image_snf
            .factors
            .into_iter()
            .filter(|f| *f > BigInt::from(1))
            .collect(),
        edge_policy: complex.policy,
        self_loop_count: complex.self_loop_count,
    }
}

/// How a policy's homology relates to directed cycles: the interesting
/// hypothesis is "H₁ trivial iff the transition digraph is acyclic".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleClass {
    Consistent,
    /// b₁ ≠ 0 although no directed cycle exists (undirected cycle space
    /// sees loops the dynamics cannot traverse).
    CounterexampleToOnlyIf,
    /// A directed cycle with b₁ = 0: impossible without two-cells, so this
    /// is a hard red flag.
    CounterexampleToIf,
}

impl std::fmt::Display for CycleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CycleClass::Consistent => "consistent-with-conjecture",
            CycleClass::CounterexampleToOnlyIf => "counterexample-to-only-if",
            CycleClass::CounterexampleToIf => "counterexample-to-if",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub policy: EdgePolicy,
    pub b0: usize,
    pub b1: usize,
    pub components: usize,
    pub directed_acyclic: bool,
    pub classification: CycleClass,
}

/// Per-policy probe of the cycle/homology correspondence, plus a fixed
/// caveat about the two readings of "cycle".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFinding {
    pub rows: Vec<ProbeRow>,
}

impl ProbeFinding {
    /// b₁ here counts integer edge-combinations with orientation reversal
    /// allowed; that is strictly wider than "adjustment sequences whose
    /// monoid sum is zero" (in a monoid without inverses the only zero-sum
    /// sequence may be empty), so the two cycle readings need not agree.
    pub const NOTE: &'static str = "b1 counts integer cycles with orientation reversal; \
        zero-net adjustment sequences are a narrower notion and need not agree";
}

/// Runs the probe over all four edge policies (no two-cells).
pub fn cycle_probe(alg: &FiniteAlpayAlgebra) -> ProbeFinding {
    let mut rows = Vec::new();
    for selection in [EdgeSelection::Generators, EdgeSelection::AllAdjustments] {
        for self_loops in [SelfLoopPolicy::Keep, SelfLoopPolicy::Drop] {
            let policy = EdgePolicy {
                selection,
                self_loops,
            };
            let complex = build_complex(alg, policy, &[]).expect("no two-cells to validate");
            let report = homology_report(&complex);
            let oracle = graph_oracle(alg, policy);
            let classification = match (report.b1 > 0, oracle.directed_acyclic) {
                (true, true) => CycleClass::CounterexampleToOnlyIf,
                (false, false) => CycleClass::CounterexampleToIf,
                _ => CycleClass::Consistent,
            };
            rows.push(ProbeRow {
                policy,
                b0: report.b0,
                b1: report.b1,
                components: oracle.components,
                directed_acyclic: oracle.directed_acyclic,
                classification,
            });
        }
    }
    ProbeFinding { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::builtins;

    const DROP: EdgePolicy = EdgePolicy {
        selection: EdgeSelection::Generators,
        self_loops: SelfLoopPolicy::Drop,
    };

    #[test]
    fn triangle_complex_is_the_standard_incidence_matrix() {
        let alg = builtins::cycle3();
        let complex = build_complex(&alg, EdgePolicy::default(), &[]).unwrap();
        assert_eq!(complex.vertices, 3);
        assert_eq!(complex.edges.len(), 3);
        for (col, e) in complex.edges.iter().enumerate() {
            assert_eq!(complex.d1.get(e.target.0, col), &BigInt::from(1));
            assert_eq!(complex.d1.get(e.source.0, col), &BigInt::from(-1));
        }
        let report = homology_report(&complex);
        assert_eq!((report.b0, report.b1), (1, 1));
        assert!(report.h1_torsion.is_empty());
    }

    #[test]
    fn diamond_square_kills_the_cycle() {
        let alg = builtins::diamond();
        let base = alg.lookup_state("00").unwrap();
        let a = alg.monoid().lookup("a").unwrap();
        let b = alg.monoid().lookup("b").unwrap();

        let open = build_complex(&alg, DROP, &[]).unwrap();
        assert_eq!(open.edges.len(), 4);
        let open_report = homology_report(&open);
        assert_eq!((open_report.b0, open_report.b1), (1, 1));

        let filled = build_complex(&alg, DROP, &[TwoCellSpec::Square { base, a, b }]).unwrap();
        assert_eq!(filled.two_cells.len(), 1);
        let filled_report = homology_report(&filled);
        assert_eq!((filled_report.b0, filled_report.b1), (1, 0));
        assert!(filled_report.h1_torsion.is_empty());
    }

    #[test]
    fn doubled_self_loop_creates_torsion() {
        let alg = builtins::selfloop();
        let p = alg.lookup_state("p").unwrap();
        let e = alg.monoid().lookup("e").unwrap();
        let complex = build_complex(
            &alg,
            EdgePolicy::default(),
            &[TwoCellSpec::Chain(vec![(2, p, e)])],
        )
        .unwrap();
        assert_eq!(complex.edges.len(), 1);
        assert!(complex.d1.is_zero());
        assert_eq!(complex.d2.get(0, 0), &BigInt::from(2));
        let report = homology_report(&complex);
        assert_eq!((report.b0, report.b1), (1, 0));
        assert_eq!(report.h1_torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn counter_self_loop_is_policy_dependent() {
        let alg = builtins::counter5();
        let keep = homology_report(&build_complex(&alg, EdgePolicy::default(), &[]).unwrap());
        assert_eq!((keep.b0, keep.b1, keep.self_loop_count), (1, 1, 1));
        let drop = homology_report(&build_complex(&alg, DROP, &[]).unwrap());
        assert_eq!((drop.b0, drop.b1, drop.self_loop_count), (1, 0, 0));
    }

    #[test]
    fn squares_that_do_not_commute_are_rejected() {
        // In the embedded chain category, f then g lands on 2 while g then
        // f dies to the sink.
        let (alg, _) = crate::category::embed_category(&builtins::poset3()).unwrap();
        let base = alg.lookup_state("0").unwrap();
        let f = alg.monoid().lookup("f").unwrap();
        let g = alg.monoid().lookup("g").unwrap();
        let policy = EdgePolicy {
            selection: EdgeSelection::AllAdjustments,
            self_loops: SelfLoopPolicy::Keep,
        };
        let err =
            build_complex(&alg, policy, &[TwoCellSpec::Square { base, a: f, b: g }]).unwrap_err();
        assert!(matches!(err, ComplexError::NonCommutingSquare { .. }));
    }

    #[test]
    fn chains_must_be_cycles_and_reference_existing_edges() {
        let alg = builtins::counter5();
        let zero = alg.lookup_state("0").unwrap();
        let five = alg.lookup_state("5").unwrap();
        let one = alg.monoid().lookup("1").unwrap();
        let err = build_complex(
            &alg,
            EdgePolicy::default(),
            &[TwoCellSpec::Chain(vec![(1, zero, one)])],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NotACycle);

        // The self-loop at 5 is not an edge under the drop policy.
        let err =
            build_complex(&alg, DROP, &[TwoCellSpec::Chain(vec![(2, five, one)])]).unwrap_err();
        assert!(matches!(err, ComplexError::EdgeNotInComplex { .. }));
    }

    #[test]
    fn degenerate_squares_cancel_to_nothing() {
        let alg = builtins::diamond();
        let base = alg.lookup_state("00").unwrap();
        let a = alg.monoid().lookup("a").unwrap();
        let complex = build_complex(&alg, DROP, &[TwoCellSpec::Square { base, a, b: a }]).unwrap();
        assert!(complex.two_cells[0].boundary.is_empty());
        let report = homology_report(&complex);
        // A zero column fills nothing.
        assert_eq!(report.b1, 1);
    }

    #[test]
    fn homology_is_invariant_under_state_reordering() {
        use crate::algebra::{AdjustmentMonoid, AlgebraParts};
        use crate::eval::{EvalOrder, EvalValue};
        use std::collections::BTreeMap;

        // Diamond with states listed in reverse order.
        let perm = [3usize, 2, 1, 0];
        let names: Vec<String> = perm
            .iter()
            .map(|&i| ["00", "01", "10", "11"][i].to_owned())
            .collect();
        let union = |x: usize, y: usize| x | y;
        let monoid = AdjustmentMonoid::new(
            ["0", "b", "a", "ab"].map(str::to_owned).to_vec(),
            0,
            (0..4usize)
                .map(|x| (0..4).map(|y| union(x, y)).collect())
                .collect(),
            true,
            vec![2, 1],
        )
        .unwrap();
        let inv = |mask: usize| perm.iter().position(|&p| p == mask).unwrap();
        let alg = FiniteAlpayAlgebra::from_parts(AlgebraParts {
            states: names,
            monoid,
            action: perm
                .iter()
                .map(|&x| (0..4).map(|a| inv(union(x, a))).collect())
                .collect(),
            phi: perm.iter().map(|&x| [2usize, 2, 1, 0][x]).collect(),
            psi: perm
                .iter()
                .map(|&x| EvalValue::int(x.count_ones() as i64))
                .collect(),
            eval_order: EvalOrder::integer(),
            initial_state: None,
            named_sets: BTreeMap::new(),
        })
        .unwrap();
        assert!(alg.validate().passed());
        let report = homology_report(&build_complex(&alg, DROP, &[]).unwrap());
        let original = homology_report(&build_complex(&builtins::diamond(), DROP, &[]).unwrap());
        assert_eq!(
            (report.b0, report.b1, report.h1_torsion),
            (original.b0, original.b1, original.h1_torsion)
        );
    }

    #[test]
    fn probe_classifies_the_builtins() {
        let cycle_rows = cycle_probe(&builtins::cycle3()).rows;
        assert!(cycle_rows
            .iter()
            .all(|r| r.classification == CycleClass::Consistent));

        let diamond_rows = cycle_probe(&builtins::diamond()).rows;
        let drop_row = diamond_rows.iter().find(|r| r.policy == DROP).unwrap();
        assert_eq!(drop_row.classification, CycleClass::CounterexampleToOnlyIf);
        assert_eq!((drop_row.b0, drop_row.b1), (1, 1));
        let keep_row = diamond_rows
            .iter()
            .find(|r| r.policy == EdgePolicy::default())
            .unwrap();
        assert_eq!(keep_row.classification, CycleClass::Consistent);

        for name in builtins::ALGEBRA_NAMES {
            let finding = cycle_probe(&builtins::algebra(name).unwrap());
            assert!(
                finding
                    .rows
                    .iter()
                    .all(|r| r.classification != CycleClass::CounterexampleToIf),
                "{name} produced an impossible classification"
            );
        }
    }

    #[test]
    fn oracle_agrees_with_the_complex_on_builtins() {
        for name in builtins::ALGEBRA_NAMES {
            let alg = builtins::algebra(name).unwrap();
            for selection in [EdgeSelection::Generators, EdgeSelection::AllAdjustments] {
                for self_loops in [SelfLoopPolicy::Keep, SelfLoopPolicy::Drop] {
                    let policy = EdgePolicy {
                        selection,
                        self_loops,
                    };
                    let report = homology_report(&build_complex(&alg, policy, &[]).unwrap());
                    let oracle = graph_oracle(&alg, policy);
                    assert_eq!(report.b0, oracle.components, "{name} {policy} b0");
                    assert_eq!(report.b1, oracle.cycle_rank, "{name} {policy} b1");
                }
            }
        }
    }
}

#[cfg(test)]
mod prop_tests {
    use proptest::prelude::*;

    use super::*;
    use crate::algebra::AdjIx;
    use crate::workbench::random::{random_algebra, RandomAlgebraParams};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Filling a commuting square never increases b1 and never changes
        /// b0 or introduces torsion beyond what the filled lattice carries.
        #[test]
        fn square_two_cells_only_shrink_b1(
            seed in 0u64..500,
            size in 2u32..=4,
            base_pick in 0usize..64,
            a_pick in 0usize..8,
            b_pick in 0usize..8,
        ) {
            let alg = random_algebra(&RandomAlgebraParams {
                ground_set_size: size,
                family_size: 4,
                seed,
            }).unwrap();
            let generators: Vec<AdjIx> = alg.monoid().generators().collect();
            let base = crate::algebra::StateIx(base_pick % alg.state_count());
            let a = generators[a_pick % generators.len()];
            let b = generators[b_pick % generators.len()];

            let policy = EdgePolicy::default();
            let open = homology_report(&build_complex(&alg, policy, &[]).unwrap());
            let square = TwoCellSpec::Square { base, a, b };
            let filled = homology_report(
                &build_complex(&alg, policy, &[square]).expect("commutative monoid squares commute"),
            );
            prop_assert_eq!(open.b0, filled.b0);
            prop_assert!(filled.b1 <= open.b1);
        }
    }
}
