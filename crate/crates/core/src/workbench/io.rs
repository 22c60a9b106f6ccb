//! The JSON spec-document format.
//!
//! One document fully describes an algebra: states, the monoid table,
//! action, phi, psi, the evaluation order, and optional initial state and
//! named sets. Loading enforces totality and identifier resolution (the
//! "ill-formed" class of errors) but deliberately does not run the axiom
//! audit — that is a separate, semantic concern.
//!
//! Serialization is canonical: object keys are sorted, lists keep
//! declaration order, so equal algebras produce byte-identical documents.
//!
//! Evaluation literals: an `integer` order takes JSON integers; an
//! `exact-rational` order takes integers or `"p/q"` strings; a
//! `named-chain` order takes label strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AdjustmentMonoid, AlgebraParts, FiniteAlpayAlgebra, StructuralError};
use crate::category::{Composite, SmallCategorySpec};
use crate::eval::{EvalOrder, EvalValue, OrderKind};
use crate::homology::TwoCellSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("JSON parse error at {line}:{column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown state `{name}` in {context}")]
    UnknownState { name: String, context: String },
    #[error("unknown adjustment `{name}` in {context}")]
    UnknownAdjustment { name: String, context: String },
    #[error("action is missing the entry for ({state}, {adjustment})")]
    MissingActionEntry { state: String, adjustment: String },
    #[error("phi is missing the entry for state {state}")]
    MissingPhi { state: String },
    #[error("psi is missing the entry for state {state}")]
    MissingPsi { state: String },
    #[error("monoid table must be {expected}x{expected}")]
    BadTableShape { expected: usize },
    #[error("unknown eval_order kind `{0}` (expected integer, exact-rational, or named-chain)")]
    BadOrderKind(String),
    #[error("eval_order kind `named-chain` requires labels")]
    MissingLabels,
    #[error("eval_order labels are only meaningful for named-chain")]
    UnexpectedLabels,
    #[error("literal `{text}` is not a value of a {kind} order")]
    BadLiteral { text: String, kind: String },
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("category spec: {0}")]
    Category(#[from] crate::category::CategorySpecError),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        SpecError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    states: Vec<String>,
    monoid: MonoidDoc,
    action: BTreeMap<String, BTreeMap<String, String>>,
    phi: BTreeMap<String, String>,
    psi: BTreeMap<String, LiteralDoc>,
    eval_order: EvalOrderDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    initial_state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    named_sets: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidDoc {
    elements: Vec<String>,
    zero: String,
    table: Vec<Vec<String>>,
    commutative: bool,
    generators: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalOrderDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    top: Option<LiteralDoc>,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum LiteralDoc {
    Int(i64),
    Text(String),
}

impl LiteralDoc {
    fn render(&self) -> String {
        match self {
            LiteralDoc::Int(n) => n.to_string(),
            LiteralDoc::Text(s) => s.clone(),
        }
    }
}

fn parse_literal(doc: &LiteralDoc, order: &EvalOrder) -> Result<EvalValue, SpecError> {
    let bad = || SpecError::BadLiteral {
        text: doc.render(),
        kind: order.kind().to_string(),
    };
    match (order.kind(), doc) {
        (OrderKind::Integer, LiteralDoc::Int(n)) => Ok(EvalValue::int(*n)),
        (OrderKind::Rational, LiteralDoc::Int(n)) => EvalValue::ratio(*n, 1).map_err(|_| bad()),
        (OrderKind::Rational, LiteralDoc::Text(s)) => {
            let (numer, denom) = s.split_once('/').ok_or_else(bad)?;
            let numer: i64 = numer.trim().parse().map_err(|_| bad())?;
            let denom: i64 = denom.trim().parse().map_err(|_| bad())?;
            EvalValue::ratio(numer, denom).map_err(|_| bad())
        }
        (OrderKind::Chain, LiteralDoc::Text(s)) => order
            .label_index(s)
            .map(EvalValue::Chain)
            .map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn render_literal(v: &EvalValue, order: &EvalOrder) -> LiteralDoc {
    match v {
        EvalValue::Int(n) => LiteralDoc::Int(*n),
        EvalValue::Ratio(r) => LiteralDoc::Text(format!("{}/{}", r.numer(), r.denom())),
        EvalValue::Chain(i) => LiteralDoc::Text(order.labels()[*i].clone()),
    }
}

fn parse_order(doc: &EvalOrderDoc) -> Result<EvalOrder, SpecError> {
    let base = match doc.kind.as_str() {
        "integer" => {
            if doc.labels.is_some() {
                return Err(SpecError::UnexpectedLabels);
            }
            EvalOrder::integer()
        }
        "exact-rational" => {
            if doc.labels.is_some() {
                return Err(SpecError::UnexpectedLabels);
            }
            EvalOrder::rational()
        }
        "named-chain" => {
            let labels = doc.labels.clone().ok_or(SpecError::MissingLabels)?;
            EvalOrder::chain(labels).map_err(|e| SpecError::BadLiteral {
                text: format!("{e}"),
                kind: "named-chain".to_owned(),
            })?
        }
        other => return Err(SpecError::BadOrderKind(other.to_owned())),
    };
    match &doc.top {
        None => Ok(base),
        Some(top) => {
            let value = parse_literal(top, &base)?;
            base.with_top(value.clone())
                .map_err(|_| SpecError::BadLiteral {
                    text: top.render(),
                    kind: doc.kind.clone(),
                })
        }
    }
}

/// Loads an algebra from its JSON document, enforcing structural totality.
pub fn load_spec(text: &str) -> Result<FiniteAlpayAlgebra, SpecError> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;

    let eval_order = parse_order(&doc.eval_order)?;

    let element_ix = |name: &str, context: &str| {
        doc.monoid
            .elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| SpecError::UnknownAdjustment {
                name: name.to_owned(),
                context: context.to_owned(),
            })
    };
    let state_ix = |name: &str, context: &str| {
        doc.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| SpecError::UnknownState {
                name: name.to_owned(),
                context: context.to_owned(),
            })
    };

    let n = doc.monoid.elements.len();
    if doc.monoid.table.len() != n || doc.monoid.table.iter().any(|row| row.len() != n) {
        return Err(SpecError::BadTableShape { expected: n });
    }
    let mut table = Vec::with_capacity(n);
    for row in &doc.monoid.table {
        let mut resolved = Vec::with_capacity(n);
        for entry in row {
            resolved.push(element_ix(entry, "monoid table")?);
        }
        table.push(resolved);
    }
    let zero = element_ix(&doc.monoid.zero, "monoid zero")?;
    let generators = doc
        .monoid
        .generators
        .iter()
        .map(|g| element_ix(g, "generators"))
        .collect::<Result<Vec<_>, _>>()?;
    let monoid = AdjustmentMonoid::new(
        doc.monoid.elements.clone(),
        zero,
        table,
        doc.monoid.commutative,
        generators,
    )?;

    for key in doc.action.keys() {
        state_ix(key, "action")?;
    }
    let mut action = Vec::with_capacity(doc.states.len());
    for state in &doc.states {
        let row_doc = doc
            .action
            .get(state)
            .ok_or_else(|| SpecError::MissingActionEntry {
                state: state.clone(),
                adjustment: doc.monoid.elements.first().cloned().unwrap_or_default(),
            })?;
        for key in row_doc.keys() {
            element_ix(key, &format!("action of state {state}"))?;
        }
        let mut row = Vec::with_capacity(n);
        for element in &doc.monoid.elements {
            let target = row_doc
                .get(element)
                .ok_or_else(|| SpecError::MissingActionEntry {
                    state: state.clone(),
                    adjustment: element.clone(),
                })?;
            row.push(state_ix(
                target,
                &format!("action of ({state}, {element})"),
            )?);
        }
        action.push(row);
    }

    for key in doc.phi.keys() {
        state_ix(key, "phi")?;
    }
    let mut phi = Vec::with_capacity(doc.states.len());
    for state in &doc.states {
        let value = doc.phi.get(state).ok_or_else(|| SpecError::MissingPhi {
            state: state.clone(),
        })?;
        phi.push(element_ix(value, &format!("phi of {state}"))?);
    }

    for key in doc.psi.keys() {
        state_ix(key, "psi")?;
    }
    let mut psi = Vec::with_capacity(doc.states.len());
    for state in &doc.states {
        let value = doc.psi.get(state).ok_or_else(|| SpecError::MissingPsi {
            state: state.clone(),
        })?;
        psi.push(parse_literal(value, &eval_order)?);
    }

    let initial_state = match &doc.initial_state {
        None => None,
        Some(name) => Some(state_ix(name, "initial_state")?),
    };
    let mut named_sets = BTreeMap::new();
    if let Some(sets) = &doc.named_sets {
        for (name, members) in sets {
            let resolved = members
                .iter()
                .map(|m| state_ix(m, &format!("named set {name}")))
                .collect::<Result<Vec<_>, _>>()?;
            named_sets.insert(name.clone(), resolved);
        }
    }

    Ok(FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states: doc.states,
        monoid,
        action,
        phi,
        psi,
        eval_order,
        initial_state,
        named_sets,
    })?)
}

/// Serializes an algebra to its canonical document: sorted keys,
/// declaration-order lists. Equal algebras serialize identically.
pub fn save_spec(alg: &FiniteAlpayAlgebra) -> String {
    let m = alg.monoid();
    let order = alg.eval_order();
    let doc = AlgebraDoc {
        states: alg.state_names().to_vec(),
        monoid: MonoidDoc {
            elements: m.element_names().to_vec(),
            zero: m.name(m.zero()).to_owned(),
            table: (0..m.len())
                .map(|a| {
                    (0..m.len())
                        .map(|b| {
                            m.name(m.add(crate::algebra::AdjIx(a), crate::algebra::AdjIx(b)))
                                .to_owned()
                        })
                        .collect()
                })
                .collect(),
            commutative: m.commutative(),
            generators: m.generators().map(|g| m.name(g).to_owned()).collect(),
        },
        action: alg
            .states()
            .map(|x| {
                (
                    alg.state_name(x).to_owned(),
                    (0..m.len())
                        .map(|a| {
                            let a = crate::algebra::AdjIx(a);
                            (
                                m.name(a).to_owned(),
                                alg.state_name(alg.apply(x, a)).to_owned(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
        phi: alg
            .states()
            .map(|x| (alg.state_name(x).to_owned(), m.name(alg.phi(x)).to_owned()))
            .collect(),
        psi: alg
            .states()
            .map(|x| {
                (
                    alg.state_name(x).to_owned(),
                    render_literal(alg.psi(x), order),
                )
            })
            .collect(),
        eval_order: EvalOrderDoc {
            kind: order.kind().to_string(),
            labels: match order.kind() {
                OrderKind::Chain => Some(order.labels().to_vec()),
                _ => None,
            },
            top: order.top().map(|t| render_literal(t, order)),
        },
        initial_state: alg.initial_state().map(|x| alg.state_name(x).to_owned()),
        named_sets: if alg.named_sets().is_empty() {
            None
        } else {
            Some(
                alg.named_sets()
                    .iter()
                    .map(|(name, members)| {
                        (
                            name.clone(),
                            members
                                .iter()
                                .map(|&i| alg.state_name(crate::algebra::StateIx(i)).to_owned())
                                .collect(),
                        )
                    })
                    .collect(),
            )
        },
    };
    let value = serde_json::to_value(&doc).expect("document serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value prints");
    text.push('\n');
    text
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    objects: Vec<String>,
    arrows: Vec<ArrowDoc>,
    identities: BTreeMap<String, String>,
    /// compose[g][f] = h means g∘f = h; null marks a truncated composite.
    compose: BTreeMap<String, BTreeMap<String, Option<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: String,
    dom: String,
    cod: String,
}

/// Loads a small-category spec (validating the category laws).
pub fn load_category_spec(text: &str) -> Result<SmallCategorySpec, SpecError> {
    let doc: CategoryDoc = serde_json::from_str(text)?;
    let mut compose = Vec::new();
    for (g, row) in doc.compose {
        for (f, h) in row {
            compose.push((g.clone(), f, h));
        }
    }
    Ok(SmallCategorySpec::new(
        doc.objects,
        doc.arrows
            .into_iter()
            .map(|a| (a.name, a.dom, a.cod))
            .collect(),
        doc.identities,
        compose,
    )?)
}

/// Canonical document for a category spec.
pub fn save_category_spec(cat: &SmallCategorySpec) -> String {
    let arrow_name = |i: usize| cat.arrows()[i].name.clone();
    let mut compose: BTreeMap<String, BTreeMap<String, Option<String>>> = BTreeMap::new();
    for g in 0..cat.arrows().len() {
        for f in 0..cat.arrows().len() {
            if let Some(entry) = cat.compose(g, f) {
                let h = match entry {
                    Composite::Arrow(h) => Some(arrow_name(h)),
                    Composite::Truncated => None,
                };
                compose
                    .entry(arrow_name(g))
                    .or_default()
                    .insert(arrow_name(f), h);
            }
        }
    }
    let doc = CategoryDoc {
        objects: cat.object_names().to_vec(),
        arrows: cat
            .arrows()
            .iter()
            .map(|a| ArrowDoc {
                name: a.name.clone(),
                dom: cat.object_names()[a.dom].clone(),
                cod: cat.object_names()[a.cod].clone(),
            })
            .collect(),
        identities: (0..cat.object_names().len())
            .map(|o| {
                (
                    cat.object_names()[o].clone(),
                    arrow_name(cat.identity_of(o)),
                )
            })
            .collect(),
        compose,
    };
    let value = serde_json::to_value(&doc).expect("document serializes");
    let mut text = serde_json::to_string_pretty(&value).expect("value prints");
    text.push('\n');
    text
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum TwoCellDoc {
    /// [base state, adjustment a, adjustment b]
    Square([String; 3]),
    /// [[coefficient, source state, adjustment], ...]
    Chain(Vec<(i64, String, String)>),
}

/// Loads a two-cell list and resolves its identifiers against an algebra.
pub fn load_two_cells(text: &str, alg: &FiniteAlpayAlgebra) -> Result<Vec<TwoCellSpec>, SpecError> {
    let docs: Vec<TwoCellDoc> = serde_json::from_str(text)?;
    let state = |name: &str| {
        alg.lookup_state(name).map_err(|_| SpecError::UnknownState {
            name: name.to_owned(),
            context: "two-cells".to_owned(),
        })
    };
    let adj = |name: &str| {
        alg.monoid()
            .lookup(name)
            .map_err(|_| SpecError::UnknownAdjustment {
                name: name.to_owned(),
                context: "two-cells".to_owned(),
            })
    };
    docs.into_iter()
        .map(|doc| match doc {
            TwoCellDoc::Square([base, a, b]) => Ok(TwoCellSpec::Square {
                base: state(&base)?,
                a: adj(&a)?,
                b: adj(&b)?,
            }),
            TwoCellDoc::Chain(terms) => Ok(TwoCellSpec::Chain(
                terms
                    .into_iter()
                    .map(|(coeff, source, label)| Ok((coeff, state(&source)?, adj(&label)?)))
                    .collect::<Result<Vec<_>, SpecError>>()?,
            )),
        })
        .collect()
}
