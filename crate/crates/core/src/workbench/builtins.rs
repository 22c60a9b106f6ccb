//! The built-in example catalogue.
//!
//! Small, hand-checkable models exercising every corner of the workbench:
//!
//! - `COUNTER5` — saturating counter 0..=5, one generator, Ψ = height.
//! - `CYCLE3` — the cyclic group Z₃ acting on itself; everything is fixed.
//! - `DIAMOND` — the four subsets of {a, b} under union; a commuting square.
//! - `SELFLOOP` — one state with a nontrivial idempotent self-loop.
//! - `BADLOOP` — two states chasing each other below an absorbing top;
//!   fails exactly the strict-progress axiom and cycles forever.
//! - `TWOPEAKS` — two disjoint copies of COUNTER5: converges everywhere but
//!   to two different attractors.
//! - `POSET3` — a small category (the chain 0 → 1 → 2), for embedding.

use std::collections::BTreeMap;

use crate::algebra::{AdjustmentMonoid, AlgebraParts, FiniteAlpayAlgebra};
use crate::category::SmallCategorySpec;
use crate::eval::{EvalOrder, EvalValue};

pub const ALGEBRA_NAMES: [&str; 6] = [
    "COUNTER5", "CYCLE3", "DIAMOND", "SELFLOOP", "BADLOOP", "TWOPEAKS",
];

pub const CATEGORY_NAMES: [&str; 1] = ["POSET3"];

/// Fetches a built-in algebra by name.
pub fn algebra(name: &str) -> Option<FiniteAlpayAlgebra> {
    match name {
        "COUNTER5" => Some(counter5()),
        "CYCLE3" => Some(cycle3()),
        "DIAMOND" => Some(diamond()),
        "SELFLOOP" => Some(selfloop()),
        "BADLOOP" => Some(badloop()),
        "TWOPEAKS" => Some(twopeaks()),
        _ => None,
    }
}

/// Fetches a built-in category spec by name.
pub fn category(name: &str) -> Option<SmallCategorySpec> {
    match name {
        "POSET3" => Some(poset3()),
        _ => None,
    }
}

pub fn counter5() -> FiniteAlpayAlgebra {
    let names: Vec<String> = (0..=5).map(|i: usize| i.to_string()).collect();
    let monoid = AdjustmentMonoid::new(
        names.clone(),
        0,
        (0..=5usize)
            .map(|a| (0..=5).map(|b| (a + b).min(5)).collect())
            .collect(),
        true,
        vec![1],
    )
    .expect("counter monoid");
    let mut named_sets = BTreeMap::new();
    named_sets.insert("low".to_owned(), vec![0, 1, 2]);
    named_sets.insert("high".to_owned(), vec![3, 4, 5]);
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states: names,
        monoid,
        action: (0..=5)
            .map(|x| (0..=5).map(|a| (x + a).min(5)).collect())
            .collect(),
        phi: (0..=5).map(|x| usize::from(x != 5)).collect(),
        psi: (0..=5).map(|x| EvalValue::int(x as i64)).collect(),
        eval_order: EvalOrder::integer()
            .with_top(EvalValue::int(5))
            .expect("top"),
        initial_state: Some(0),
        named_sets,
    })
    .expect("counter5")
}

pub fn cycle3() -> FiniteAlpayAlgebra {
    let names: Vec<String> = (0..3).map(|i: usize| i.to_string()).collect();
    let monoid = AdjustmentMonoid::new(
        names.clone(),
        0,
        (0..3usize)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect(),
        true,
        vec![1],
    )
    .expect("cycle monoid");
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states: names,
        monoid,
        action: (0..3)
            .map(|x| (0..3).map(|a| (x + a) % 3).collect())
            .collect(),
        phi: vec![0; 3],
        psi: vec![EvalValue::int(0); 3],
        eval_order: EvalOrder::integer(),
        initial_state: None,
        named_sets: BTreeMap::new(),
    })
    .expect("cycle3")
}

pub fn diamond() -> FiniteAlpayAlgebra {
    // States and adjustments are the subsets of {a, b}; the action is
    // union. State "10" holds a, "01" holds b. phi climbs 00 → 10 → 11 and
    // 01 → 11.
    let states: Vec<String> = ["00", "01", "10", "11"].map(str::to_owned).to_vec();
    let elements: Vec<String> = ["0", "b", "a", "ab"].map(str::to_owned).to_vec();
    // Bit 0 = b, bit 1 = a, so index == bitmask for both lists.
    let union = |x: usize, y: usize| x | y;
    let monoid = AdjustmentMonoid::new(
        elements,
        0,
        (0..4usize)
            .map(|a| (0..4).map(|b| union(a, b)).collect())
            .collect(),
        true,
        vec![2, 1], // generators a, b
    )
    .expect("diamond monoid");
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states,
        monoid,
        action: (0..4)
            .map(|x| (0..4).map(|a| union(x, a)).collect())
            .collect(),
        phi: vec![2, 2, 1, 0], // 00 -> a, 01 -> a, 10 -> b, 11 fixed
        psi: (0..4usize)
            .map(|x| EvalValue::int(x.count_ones() as i64))
            .collect(),
        eval_order: EvalOrder::integer()
            .with_top(EvalValue::int(2))
            .expect("top"),
        initial_state: Some(0),
        named_sets: BTreeMap::new(),
    })
    .expect("diamond")
}

pub fn selfloop() -> FiniteAlpayAlgebra {
    let monoid = AdjustmentMonoid::new(
        vec!["0".to_owned(), "e".to_owned()],
        0,
        vec![vec![0, 1], vec![1, 1]],
        true,
        vec![1],
    )
    .expect("selfloop monoid");
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states: vec!["p".to_owned()],
        monoid,
        action: vec![vec![0, 0]],
        phi: vec![0],
        psi: vec![EvalValue::int(0)],
        eval_order: EvalOrder::integer(),
        initial_state: Some(0),
        named_sets: BTreeMap::new(),
    })
    .expect("selfloop")
}

pub fn badloop() -> FiniteAlpayAlgebra {
    // a and b swap under g while t absorbs it. psi(t) is maximal and t is
    // fixed, so the only broken law is strict progress at a and b.
    let monoid = AdjustmentMonoid::new(
        vec!["0".to_owned(), "g".to_owned()],
        0,
        vec![vec![0, 1], vec![1, 0]],
        true,
        vec![1],
    )
    .expect("badloop monoid");
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states: vec!["a".to_owned(), "b".to_owned(), "t".to_owned()],
        monoid,
        action: vec![vec![0, 1], vec![1, 0], vec![2, 2]],
        phi: vec![1, 1, 0],
        psi: vec![EvalValue::int(0), EvalValue::int(0), EvalValue::int(1)],
        eval_order: EvalOrder::integer(),
        initial_state: Some(0),
        named_sets: BTreeMap::new(),
    })
    .expect("badloop")
}

pub fn twopeaks() -> FiniteAlpayAlgebra {
    // Two disjoint copies of COUNTER5 driven by the same saturating
    // monoid: every trajectory converges, but a-states reach a5 and
    // b-states reach b5.
    let elements: Vec<String> = (0..=5).map(|i: usize| i.to_string()).collect();
    let monoid = AdjustmentMonoid::new(
        elements,
        0,
        (0..=5usize)
            .map(|a| (0..=5).map(|b| (a + b).min(5)).collect())
            .collect(),
        true,
        vec![1],
    )
    .expect("twopeaks monoid");
    let mut states = Vec::new();
    for copy in ["a", "b"] {
        for i in 0..=5 {
            states.push(format!("{copy}{i}"));
        }
    }
    let mut action = Vec::new();
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    for copy in 0..2 {
        for x in 0..=5usize {
            action.push((0..=5).map(|a| copy * 6 + (x + a).min(5)).collect());
            phi.push(usize::from(x != 5));
            psi.push(EvalValue::int(x as i64));
        }
    }
    FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states,
        monoid,
        action,
        phi,
        psi,
        eval_order: EvalOrder::integer()
            .with_top(EvalValue::int(5))
            .expect("top"),
        initial_state: Some(0),
        named_sets: BTreeMap::new(),
    })
    .expect("twopeaks")
}

pub fn poset3() -> SmallCategorySpec {
    let arrows = [
        ("id0", "0", "0"),
        ("id1", "1", "1"),
        ("id2", "2", "2"),
        ("f", "0", "1"),
        ("g", "1", "2"),
        ("gf", "0", "2"),
    ];
    let compose = [
        ("id0", "id0", "id0"),
        ("id1", "id1", "id1"),
        ("id2", "id2", "id2"),
        ("f", "id0", "f"),
        ("id1", "f", "f"),
        ("g", "id1", "g"),
        ("id2", "g", "g"),
        ("gf", "id0", "gf"),
        ("id2", "gf", "gf"),
        ("g", "f", "gf"),
        ("id2", "id2", "id2"),
    ];
    SmallCategorySpec::new(
        ["0", "1", "2"].map(str::to_owned).to_vec(),
        arrows
            .map(|(n, d, c)| (n.to_owned(), d.to_owned(), c.to_owned()))
            .to_vec(),
        [("0", "id0"), ("1", "id1"), ("2", "id2")]
            .map(|(o, a)| (o.to_owned(), a.to_owned()))
            .into_iter()
            .collect(),
        compose
            .map(|(g, f, h)| (g.to_owned(), f.to_owned(), Some(h.to_owned())))
            .to_vec(),
    )
    .expect("poset3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Axiom;

    #[test]
    fn every_builtin_except_badloop_passes_the_audit() {
        for name in ALGEBRA_NAMES {
            let alg = algebra(name).unwrap();
            let report = alg.validate();
            if name == "BADLOOP" {
                assert!(!report.passed());
            } else {
                assert!(report.passed(), "{name}: {:?}", report.violations());
            }
        }
    }

    #[test]
    fn badloop_fails_exactly_strict_progress() {
        let report = badloop().validate();
        assert_eq!(report.failed_axioms(), vec![Axiom::StrictProgress]);
        let witness = report.violations_for(Axiom::StrictProgress).next().unwrap();
        assert_eq!(witness.subject, vec!["a", "g", "b"]);
    }

    #[test]
    fn cycle3_is_all_fixed_points() {
        let alg = cycle3();
        assert!(alg.states().all(|x| alg.is_fixed_point(x)));
        let two = alg.lookup_state("2").unwrap();
        let a2 = alg.monoid().lookup("2").unwrap();
        assert_eq!(alg.apply(two, a2), alg.lookup_state("1").unwrap());
    }

    #[test]
    fn diamond_climbs_to_the_join() {
        let alg = diamond();
        let report = alg.validate();
        assert!(report.passed(), "{:?}", report.violations());
        assert_eq!(alg.fixed_points(), vec![alg.lookup_state("11").unwrap()]);
    }

    #[test]
    fn unknown_names_yield_none() {
        assert!(algebra("NOPE").is_none());
        assert!(category("NOPE").is_none());
    }
}
