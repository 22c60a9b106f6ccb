//! A finite-model workbench for Alpay algebras.
//!
//! An Alpay algebra couples a state space `X` with a monoid `A` of
//! adjustments acting on it, an update rule `φ : X → A`, and an evaluation
//! `Ψ : X → E` into a totally ordered domain. This crate represents such
//! algebras as explicit finite tables and makes every structural claim
//! about them checkable by exhaustive computation:
//!
//! - [`algebra`] — the carriers and the axiom audit;
//! - [`dynamics`] — the iterative sequence `x + φ(x)`, fixed-point search,
//!   and the termination audit;
//! - [`category`] — the reachability category, law audits, functor and
//!   naturality checks, and embeddings of small categories;
//! - [`homology`] — the chain complex of the transition graph, Smith normal
//!   form, Betti numbers, torsion, and a graph-theoretic oracle;
//! - [`logic`] — a CTL-style modal logic over the transition relations;
//! - [`workbench`] — JSON (de)serialization, built-in example algebras,
//!   seeded random generation, and DOT export.
//!
//! The `alpay` binary exposes all of it on the command line.

pub mod algebra;
pub mod category;
pub mod dynamics;
pub mod eval;
pub mod homology;
pub mod logic;
pub mod workbench;

pub use algebra::{
    AdjIx, AdjustmentMonoid, AlgebraParts, Axiom, AxiomReport, AxiomViolation, FiniteAlpayAlgebra,
    IdError, StateIx, StructuralError,
};
pub use eval::{EvalError, EvalOrder, EvalValue, OrderKind};
