//! Totally ordered evaluation domains.
//!
//! Every algebra measures its states in some totally ordered domain `E`:
//! the integers, the exact rationals, or a finite named chain of labels.
//! All arithmetic is exact — floating point is deliberately unsupported so
//! that strict-inequality checks in the axiom audit are unambiguous.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("value {value} does not belong to a {kind} order")]
    KindMismatch { kind: OrderKind, value: String },
    #[error("chain label index {index} out of range (chain has {len} labels)")]
    LabelOutOfRange { index: usize, len: usize },
    #[error("rational denominator must be nonzero")]
    ZeroDenominator,
    #[error("a named chain needs at least one label")]
    EmptyChain,
    #[error("duplicate chain label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown chain label `{0}`")]
    UnknownLabel(String),
    #[error("top of a named chain must be its last label")]
    ChainTopNotLast,
    #[error("order declares no top element")]
    NoTop,
}

/// The flavor of a totally ordered evaluation domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Integer,
    Rational,
    Chain,
}

impl std::fmt::Display for OrderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderKind::Integer => write!(f, "integer"),
            OrderKind::Rational => write!(f, "exact-rational"),
            OrderKind::Chain => write!(f, "named-chain"),
        }
    }
}

/// One value of an evaluation order.
///
/// Values are only comparable through the [`EvalOrder`] they belong to;
/// there is no global `Ord` on purpose, since comparing values of distinct
/// orders is meaningless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalValue {
    Int(i64),
    Ratio(BigRational),
    /// Index into the chain's label list.
    Chain(usize),
}

impl EvalValue {
    pub fn int(n: i64) -> Self {
        EvalValue::Int(n)
    }

    /// A reduced rational with positive denominator.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self, EvalError> {
        if denom == 0 {
            return Err(EvalError::ZeroDenominator);
        }
        Ok(EvalValue::Ratio(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    fn kind(&self) -> OrderKind {
        match self {
            EvalValue::Int(_) => OrderKind::Integer,
            EvalValue::Ratio(_) => OrderKind::Rational,
            EvalValue::Chain(_) => OrderKind::Chain,
        }
    }
}

/// A totally ordered evaluation domain, possibly with a distinguished
/// maximal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOrder {
    kind: OrderKind,
    labels: Vec<String>,
    top: Option<EvalValue>,
}

impl EvalOrder {
    pub fn integer() -> Self {
        EvalOrder {
            kind: OrderKind::Integer,
            labels: Vec::new(),
            top: None,
        }
    }

    pub fn rational() -> Self {
        EvalOrder {
            kind: OrderKind::Rational,
            labels: Vec::new(),
            top: None,
        }
    }

    /// A finite chain ordered by label position (first label is least).
    pub fn chain(labels: Vec<String>) -> Result<Self, EvalError> {
        if labels.is_empty() {
            return Err(EvalError::EmptyChain);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(EvalError::DuplicateLabel(l.clone()));
            }
        }
        Ok(EvalOrder {
            kind: OrderKind::Chain,
            labels,
            top: None,
        })
    }

    /// Declares a top element. For a named chain the top must be the last
    /// label, so that no chain value exceeds it; for integer and rational
    /// orders the "nothing above top" invariant is enforced wherever values
    /// enter an algebra.
    pub fn with_top(mut self, top: EvalValue) -> Result<Self, EvalError> {
        self.contains(&top)?;
        if self.kind == OrderKind::Chain && top != EvalValue::Chain(self.labels.len() - 1) {
            return Err(EvalError::ChainTopNotLast);
        }
        self.top = Some(top);
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn top(&self) -> Option<&EvalValue> {
        self.top.as_ref()
    }

    pub fn label_index(&self, name: &str) -> Result<usize, EvalError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| EvalError::UnknownLabel(name.to_owned()))
    }

    /// Checks that `v` is a value of this order.
    pub fn contains(&self, v: &EvalValue) -> Result<(), EvalError> {
        if v.kind() != self.kind {
            return Err(EvalError::KindMismatch {
                kind: self.kind,
                value: format!("{v:?}"),
            });
        }
        if let EvalValue::Chain(i) = v {
            if *i >= self.labels.len() {
                return Err(EvalError::LabelOutOfRange {
                    index: *i,
                    len: self.labels.len(),
                });
            }
        }
        Ok(())
    }

    pub fn cmp(&self, a: &EvalValue, b: &EvalValue) -> Result<Ordering, EvalError> {
        self.contains(a)?;
        self.contains(b)?;
        Ok(match (a, b) {
            (EvalValue::Int(x), EvalValue::Int(y)) => x.cmp(y),
            (EvalValue::Ratio(x), EvalValue::Ratio(y)) => x.cmp(y),
            (EvalValue::Chain(x), EvalValue::Chain(y)) => x.cmp(y),
            _ => unreachable!("kind checked above"),
        })
    }

    /// Whether `v` equals the declared top.
    pub fn is_top(&self, v: &EvalValue) -> Result<bool, EvalError> {
        self.contains(v)?;
        match &self.top {
            Some(t) => Ok(t == v),
            None => Err(EvalError::NoTop),
        }
    }

    /// Renders a value, resolving chain indices to their labels.
    pub fn format(&self, v: &EvalValue) -> String {
        match v {
            EvalValue::Int(n) => n.to_string(),
            EvalValue::Ratio(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            EvalValue::Chain(i) => self
                .labels
                .get(*i)
                .cloned()
                .unwrap_or_else(|| format!("<label {i}>")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_order_compares() {
        let ord = EvalOrder::integer();
        assert_eq!(
            ord.cmp(&EvalValue::int(2), &EvalValue::int(5)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn rationals_are_reduced_and_positive_denominator() {
        let a = EvalValue::ratio(2, 4).unwrap();
        let b = EvalValue::ratio(-1, -2).unwrap();
        assert_eq!(a, b);
        let ord = EvalOrder::rational();
        assert_eq!(
            ord.cmp(&a, &EvalValue::ratio(3, 4).unwrap()).unwrap(),
            Ordering::Less
        );
        assert_eq!(EvalValue::ratio(1, 0), Err(EvalError::ZeroDenominator));
    }

    #[test]
    fn kinds_do_not_mix() {
        let ord = EvalOrder::integer();
        assert!(ord
            .cmp(&EvalValue::int(0), &EvalValue::ratio(0, 1).unwrap())
            .is_err());
    }

    #[test]
    fn chain_order_and_top() {
        let ord = EvalOrder::chain(vec!["lo".into(), "hi".into()]).unwrap();
        assert_eq!(
            ord.cmp(&EvalValue::Chain(0), &EvalValue::Chain(1)).unwrap(),
            Ordering::Less
        );
        assert!(ord.contains(&EvalValue::Chain(2)).is_err());

        let with_top = ord.clone().with_top(EvalValue::Chain(1)).unwrap();
        assert!(with_top.is_top(&EvalValue::Chain(1)).unwrap());
        assert!(!with_top.is_top(&EvalValue::Chain(0)).unwrap());
        assert_eq!(
            ord.with_top(EvalValue::Chain(0)),
            Err(EvalError::ChainTopNotLast)
        );
    }

    #[test]
    fn chain_rejects_duplicates_and_empty() {
        assert_eq!(EvalOrder::chain(vec![]), Err(EvalError::EmptyChain));
        assert_eq!(
            EvalOrder::chain(vec!["a".into(), "a".into()]),
            Err(EvalError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn format_resolves_labels() {
        let ord = EvalOrder::chain(vec!["bot".into(), "top".into()]).unwrap();
        assert_eq!(ord.format(&EvalValue::Chain(1)), "top");
        assert_eq!(
            EvalOrder::rational().format(&EvalValue::ratio(6, 8).unwrap()),
            "3/4"
        );
        assert_eq!(
            EvalOrder::rational().format(&EvalValue::ratio(4, 2).unwrap()),
            "2"
        );
    }
}

#[cfg(test)]
mod prop_tests {
    use proptest::prelude::*;

    use super::*;

    fn rational() -> impl Strategy<Value = EvalValue> {
        ((-50i64..=50), (1i64..=50)).prop_map(|(n, d)| EvalValue::ratio(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// The rational order is total: antisymmetric and transitive, with
        /// equality exactly on equal reduced forms.
        #[test]
        fn rational_comparison_is_a_total_order(a in rational(), b in rational(), c in rational()) {
            let ord = EvalOrder::rational();
            let ab = ord.cmp(&a, &b).unwrap();
            let ba = ord.cmp(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab != Ordering::Greater && ord.cmp(&b, &c).unwrap() != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c).unwrap(), Ordering::Greater);
            }
        }
    }
}
