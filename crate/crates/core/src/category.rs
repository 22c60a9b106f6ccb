//! The reachability category of an algebra.
//!
//! Objects are states; a morphism `x → y` is a *net adjustment* — the
//! monoid sum of some generator sequence that takes `x` to `y`. Composition
//! is monoid addition, the identity at `x` is the zero adjustment, and two
//! sequences with the same net are the same morphism. Identifying morphisms
//! by net keeps hom-sets finite and makes associativity inherited from the
//! monoid; path multiplicity is the homology module's business instead.
//!
//! This module audits the category laws, checks algebra homomorphisms
//! (which induce functors) and natural transformations between them, finds
//! initial/terminal objects, and embeds arbitrary small categories into
//! freshly built algebras.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::algebra::{AdjIx, AdjustmentMonoid, AlgebraParts, FiniteAlpayAlgebra, StateIx};
use crate::dynamics::AuditRefusal;
use crate::eval::{EvalOrder, EvalValue};

/// A morphism of the reachability category, identified by its net adjustment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    pub source: StateIx,
    pub target: StateIx,
    pub net: AdjIx,
}

/// Depth at which hom-set construction is guaranteed stable: BFS nodes are
/// (state, net) pairs, of which there are at most |X|·|A|.
pub fn saturation_depth(alg: &FiniteAlpayAlgebra) -> usize {
    alg.state_count() * alg.monoid().len()
}

/// All hom-sets realized by generator sequences of bounded length,
/// breadth-first over (state, net) pairs.
#[derive(Debug, Clone)]
pub struct CategoryView {
    depth: usize,
    /// (source, net) → (target, minimal realizing sequence length).
    reach: BTreeMap<(StateIx, AdjIx), (StateIx, usize)>,
}

impl CategoryView {
    pub fn build(alg: &FiniteAlpayAlgebra, depth: usize) -> CategoryView {
        let mut reach = BTreeMap::new();
        for x in alg.states() {
            explore(alg, x, depth, &mut |net, target, len| {
                reach.entry((x, net)).or_insert((target, len));
            });
        }
        CategoryView { depth, reach }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Morphisms from `x` to `y`, ordered by net.
    pub fn hom(&self, x: StateIx, y: StateIx) -> Vec<Morphism> {
        self.reach
            .range((x, AdjIx(0))..=(x, AdjIx(usize::MAX)))
            .filter(|&(&(_, _), &(target, _))| target == y)
            .map(|(&(source, net), &(target, _))| Morphism {
                source,
                target,
                net,
            })
            .collect()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = (Morphism, usize)> + '_ {
        self.reach.iter().map(|(&(source, net), &(target, len))| {
            (
                Morphism {
                    source,
                    target,
                    net,
                },
                len,
            )
        })
    }

    fn lookup(&self, source: StateIx, net: AdjIx) -> Option<(StateIx, usize)> {
        self.reach.get(&(source, net)).copied()
    }

    fn outgoing(&self, x: StateIx) -> Vec<(Morphism, usize)> {
        self.reach
            .range((x, AdjIx(0))..=(x, AdjIx(usize::MAX)))
            .map(|(&(source, net), &(target, len))| {
                (
                    Morphism {
                        source,
                        target,
                        net,
                    },
                    len,
                )
            })
            .collect()
    }
}

fn explore(
    alg: &FiniteAlpayAlgebra,
    from: StateIx,
    depth: usize,
    visit: &mut impl FnMut(AdjIx, StateIx, usize),
) {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let zero = alg.monoid().zero();
    seen.insert((from, zero));
    queue.push_back((from, zero, 0usize));
    while let Some((state, net, len)) = queue.pop_front() {
        visit(net, state, len);
        if len == depth {
            continue;
        }
        for g in alg.monoid().generators() {
            let next = (alg.apply(state, g), alg.monoid().add(net, g));
            if seen.insert(next) {
                queue.push_back((next.0, next.1, len + 1));
            }
        }
    }
}

/// The distinct net adjustments realized by generator sequences of length
/// at most `depth` from `x` that land on `y`. Includes the identity
/// (zero, via the empty sequence) when `x = y`.
pub fn hom_set(alg: &FiniteAlpayAlgebra, x: StateIx, y: StateIx, depth: usize) -> Vec<Morphism> {
    let mut out = Vec::new();
    explore(alg, x, depth, &mut |net, target, _| {
        if target == y {
            out.push(Morphism {
                source: x,
                target,
                net,
            });
        }
    });
    out.sort();
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("depth must be at least {required} (got {got})")]
    DepthTooSmall { required: usize, got: usize },
    #[error(transparent)]
    Refused(#[from] AuditRefusal),
}

/// Outcome of the category-law audit over a bounded view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub depth: usize,
    pub morphism_count: usize,
    /// Composing with the zero morphism changes nothing.
    pub identity_ok: bool,
    /// Composition (= net addition) associates, and composite targets agree.
    pub associativity_ok: bool,
    /// The composite of two in-view morphisms is in view (within depth).
    pub closure_ok: bool,
    /// Every in-view morphism has a two-sided inverse in view.
    pub groupoid: bool,
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.identity_ok && self.associativity_ok && self.closure_ok
    }
}

/// Audits identity neutrality, associativity, and composition closure over
/// the category view at the given depth, plus the (informational) groupoid
/// property. Refuses algebras that fail the axiom audit — the category
/// structure is only guaranteed by the monoid action laws.
pub fn category_law_audit(
    alg: &FiniteAlpayAlgebra,
    depth: usize,
) -> Result<LawReport, CategoryError> {
    if depth < 2 {
        return Err(CategoryError::DepthTooSmall {
            required: 2,
            got: depth,
        });
    }
    let axioms = alg.validate();
    if !axioms.passed() {
        return Err(AuditRefusal { report: axioms }.into());
    }

    let view = CategoryView::build(alg, depth);
    let m = alg.monoid();
    let zero = m.zero();
    let mut violations = Vec::new();
    let mut identity_ok = true;
    let mut associativity_ok = true;
    let mut closure_ok = true;
    let mut groupoid = true;

    let morphisms: Vec<(Morphism, usize)> = view.morphisms().collect();
    for &(mor, _) in &morphisms {
        if m.add(zero, mor.net) != mor.net || m.add(mor.net, zero) != mor.net {
            identity_ok = false;
            violations.push(format!(
                "identity: zero does not act neutrally on net `{}`",
                m.name(mor.net)
            ));
        }
    }

    for x in alg.states() {
        for &(m1, len1) in &view.outgoing(x) {
            for &(m2, len2) in &view.outgoing(m1.target) {
                if len1 + len2 > depth {
                    continue;
                }
                let net12 = m.add(m1.net, m2.net);
                match view.lookup(x, net12) {
                    Some((target, _)) if target == m2.target => {}
                    _ => {
                        closure_ok = false;
                        violations.push(format!(
                            "closure: `{}` ; `{}` from `{}` has no composite in view",
                            m.name(m1.net),
                            m.name(m2.net),
                            alg.state_name(x)
                        ));
                    }
                }
                for &(m3, len3) in &view.outgoing(m2.target) {
                    if len1 + len2 + len3 > depth {
                        continue;
                    }
                    let left = m.add(net12, m3.net);
                    let right = m.add(m1.net, m.add(m2.net, m3.net));
                    if left != right || alg.apply(x, left) != m3.target {
                        associativity_ok = false;
                        violations.push(format!(
                            "associativity: nets `{}`, `{}`, `{}` from `{}`",
                            m.name(m1.net),
                            m.name(m2.net),
                            m.name(m3.net),
                            alg.state_name(x)
                        ));
                    }
                }
            }
        }
    }

    for &(mor, _) in &morphisms {
        let has_inverse = view.outgoing(mor.target).iter().any(|&(back, _)| {
            back.target == mor.source
                && m.add(mor.net, back.net) == zero
                && m.add(back.net, mor.net) == zero
        });
        if !has_inverse {
            groupoid = false;
        }
    }

    Ok(LawReport {
        depth,
        morphism_count: morphisms.len(),
        identity_ok,
        associativity_ok,
        closure_ok,
        groupoid,
        violations,
    })
}

/// Initial/terminal candidates under the two readings of "in exactly one
/// way". Net-identity (`strict_*`) takes the hom-set cardinality literally;
/// the reachability reading (`reachable_*`) only asks that the hom-set be
/// nonempty. The two genuinely differ: an absorbing top is reachable from
/// everywhere but usually via several nets, so it is reachable-terminal
/// without being strictly terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremaReport {
    pub depth: usize,
    pub strict_terminal: Vec<StateIx>,
    pub strict_initial: Vec<StateIx>,
    pub reachable_terminal: Vec<StateIx>,
    pub reachable_initial: Vec<StateIx>,
    /// Every object is both strictly initial and strictly terminal (as in a
    /// group action with one orbit): the notions carry no information.
    pub degenerate_all_extremal: bool,
}

/// Enumerates hom-sets at the given depth (which must be at least |X| so
/// that generator-connected pairs are saturated) and classifies extremal
/// objects under both readings.
pub fn extremal_objects(
    alg: &FiniteAlpayAlgebra,
    depth: usize,
) -> Result<ExtremaReport, CategoryError> {
    if depth < alg.state_count() {
        return Err(CategoryError::DepthTooSmall {
            required: alg.state_count(),
            got: depth,
        });
    }
    let view = CategoryView::build(alg, depth);
    let mut counts = vec![vec![0usize; alg.state_count()]; alg.state_count()];
    for (mor, _) in view.morphisms() {
        counts[mor.source.0][mor.target.0] += 1;
    }
    let mut strict_terminal = Vec::new();
    let mut strict_initial = Vec::new();
    let mut reachable_terminal = Vec::new();
    let mut reachable_initial = Vec::new();
    for x in alg.states() {
        if alg.states().all(|y| counts[y.0][x.0] == 1) {
            strict_terminal.push(x);
        }
        if alg.states().all(|y| counts[x.0][y.0] == 1) {
            strict_initial.push(x);
        }
        if alg.states().all(|y| counts[y.0][x.0] >= 1) {
            reachable_terminal.push(x);
        }
        if alg.states().all(|y| counts[x.0][y.0] >= 1) {
            reachable_initial.push(x);
        }
    }
    let n = alg.state_count();
    let degenerate_all_extremal = n > 0 && strict_terminal.len() == n && strict_initial.len() == n;
    Ok(ExtremaReport {
        depth,
        strict_terminal,
        strict_initial,
        reachable_terminal,
        reachable_initial,
        degenerate_all_extremal,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("state map must cover all {expected} source states (got {got})")]
    StateMapLength { expected: usize, got: usize },
    #[error("state map sends state {index} out of range (to {value})")]
    StateMapRange { index: usize, value: usize },
    #[error("adjustment map must cover all {expected} source adjustments (got {got})")]
    AdjMapLength { expected: usize, got: usize },
    #[error("adjustment map sends adjustment {index} out of range (to {value})")]
    AdjMapRange { index: usize, value: usize },
    #[error("component list must cover all {expected} source states (got {got})")]
    ComponentLength { expected: usize, got: usize },
    #[error("component at state {index} out of range (adjustment {value})")]
    ComponentRange { index: usize, value: usize },
}

/// A candidate homomorphism between two algebras: a state map and an
/// adjustment map. Totality and ranges are enforced here; the laws are the
/// audit's business. A passing pair is a functor between the reachability
/// categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismSpec {
    state_map: Vec<usize>,
    adj_map: Vec<usize>,
}

impl HomomorphismSpec {
    pub fn new(
        src: &FiniteAlpayAlgebra,
        dst: &FiniteAlpayAlgebra,
        state_map: Vec<usize>,
        adj_map: Vec<usize>,
    ) -> Result<Self, MapError> {
        if state_map.len() != src.state_count() {
            return Err(MapError::StateMapLength {
                expected: src.state_count(),
                got: state_map.len(),
            });
        }
        for (index, &value) in state_map.iter().enumerate() {
            if value >= dst.state_count() {
                return Err(MapError::StateMapRange { index, value });
            }
        }
        if adj_map.len() != src.monoid().len() {
            return Err(MapError::AdjMapLength {
                expected: src.monoid().len(),
                got: adj_map.len(),
            });
        }
        for (index, &value) in adj_map.iter().enumerate() {
            if value >= dst.monoid().len() {
                return Err(MapError::AdjMapRange { index, value });
            }
        }
        Ok(HomomorphismSpec { state_map, adj_map })
    }

    pub fn identity(alg: &FiniteAlpayAlgebra) -> Self {
        HomomorphismSpec {
            state_map: (0..alg.state_count()).collect(),
            adj_map: (0..alg.monoid().len()).collect(),
        }
    }

    pub fn on_state(&self, x: StateIx) -> StateIx {
        StateIx(self.state_map[x.0])
    }

    pub fn on_adj(&self, a: AdjIx) -> AdjIx {
        AdjIx(self.adj_map[a.0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub zero_preserved: bool,
    pub addition_preserved: bool,
    pub equivariant: bool,
    pub phi_compatible: bool,
    pub violations: Vec<String>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.zero_preserved && self.addition_preserved && self.equivariant && self.phi_compatible
    }
}

/// Exhaustively checks that the pair of maps is an algebra homomorphism:
/// the adjustment map preserves zero and addition, the state map is
/// equivariant for the actions, and the update rules correspond.
pub fn homomorphism_audit(
    src: &FiniteAlpayAlgebra,
    dst: &FiniteAlpayAlgebra,
    h: &HomomorphismSpec,
) -> HomomorphismReport {
    let mut violations = Vec::new();
    let zero_preserved = h.on_adj(src.monoid().zero()) == dst.monoid().zero();
    if !zero_preserved {
        violations.push(format!(
            "zero maps to `{}`",
            dst.monoid().name(h.on_adj(src.monoid().zero()))
        ));
    }
    let mut addition_preserved = true;
    for a in 0..src.monoid().len() {
        for b in 0..src.monoid().len() {
            let (a, b) = (AdjIx(a), AdjIx(b));
            let mapped_sum = h.on_adj(src.monoid().add(a, b));
            let sum_mapped = dst.monoid().add(h.on_adj(a), h.on_adj(b));
            if mapped_sum != sum_mapped {
                addition_preserved = false;
                violations.push(format!(
                    "addition: {} + {} maps to `{}` but images add to `{}`",
                    src.monoid().name(a),
                    src.monoid().name(b),
                    dst.monoid().name(mapped_sum),
                    dst.monoid().name(sum_mapped),
                ));
            }
        }
    }
    let mut equivariant = true;
    for x in src.states() {
        for a in 0..src.monoid().len() {
            let a = AdjIx(a);
            let mapped_step = h.on_state(src.apply(x, a));
            let step_mapped = dst.apply(h.on_state(x), h.on_adj(a));
            if mapped_step != step_mapped {
                equivariant = false;
                violations.push(format!(
                    "action: ({} + {}) maps to `{}` but image steps to `{}`",
                    src.state_name(x),
                    src.monoid().name(a),
                    dst.state_name(mapped_step),
                    dst.state_name(step_mapped),
                ));
            }
        }
    }
    let mut phi_compatible = true;
    for x in src.states() {
        let mapped_phi = h.on_adj(src.phi(x));
        let phi_mapped = dst.phi(h.on_state(x));
        if mapped_phi != phi_mapped {
            phi_compatible = false;
            violations.push(format!(
                "phi: phi({}) maps to `{}` but phi({}) = `{}`",
                src.state_name(x),
                dst.monoid().name(mapped_phi),
                dst.state_name(h.on_state(x)),
                dst.monoid().name(phi_mapped),
            ));
        }
    }
    HomomorphismReport {
        zero_preserved,
        addition_preserved,
        equivariant,
        phi_compatible,
        violations,
    }
}

/// Components of a candidate natural transformation: for each source state
/// `x`, one adjustment of the target algebra carrying `F(x)` to `G(x)`.
/// Single adjustments suffice because morphisms are identified by net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformationSpec {
    components: Vec<usize>,
}

impl NaturalTransformationSpec {
    pub fn new(
        src: &FiniteAlpayAlgebra,
        dst: &FiniteAlpayAlgebra,
        components: Vec<usize>,
    ) -> Result<Self, MapError> {
        if components.len() != src.state_count() {
            return Err(MapError::ComponentLength {
                expected: src.state_count(),
                got: components.len(),
            });
        }
        for (index, &value) in components.iter().enumerate() {
            if value >= dst.monoid().len() {
                return Err(MapError::ComponentRange { index, value });
            }
        }
        Ok(NaturalTransformationSpec { components })
    }

    pub fn component(&self, x: StateIx) -> AdjIx {
        AdjIx(self.components[x.0])
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NaturalityError {
    #[error("functor {which} fails the homomorphism audit")]
    NotAFunctor {
        which: &'static str,
        report: HomomorphismReport,
    },
    #[error("component at `{state}` does not carry F({state}) to G({state})")]
    IllFormedComponent { state: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityReport {
    pub commuting: bool,
    pub violations: Vec<String>,
}

/// Checks the commuting-square condition for every state and generator:
/// following `F` of the step and then the component equals following the
/// component and then `G` of the step, both as nets and on realized targets.
pub fn naturality_audit(
    src: &FiniteAlpayAlgebra,
    dst: &FiniteAlpayAlgebra,
    f: &HomomorphismSpec,
    g: &HomomorphismSpec,
    eta: &NaturalTransformationSpec,
) -> Result<NaturalityReport, NaturalityError> {
    for (which, h) in [("F", f), ("G", g)] {
        let report = homomorphism_audit(src, dst, h);
        if !report.passed() {
            return Err(NaturalityError::NotAFunctor { which, report });
        }
    }
    for x in src.states() {
        if dst.apply(f.on_state(x), eta.component(x)) != g.on_state(x) {
            return Err(NaturalityError::IllFormedComponent {
                state: src.state_name(x).to_owned(),
            });
        }
    }
    let mut violations = Vec::new();
    for x in src.states() {
        for a in src.monoid().generators() {
            let x_next = src.apply(x, a);
            let via_f = dst.monoid().add(f.on_adj(a), eta.component(x_next));
            let via_g = dst.monoid().add(eta.component(x), g.on_adj(a));
            if via_f != via_g || dst.apply(f.on_state(x), via_f) != g.on_state(x_next) {
                violations.push(format!(
                    "square at state `{}`, generator `{}`",
                    src.state_name(x),
                    src.monoid().name(a),
                ));
            }
        }
    }
    Ok(NaturalityReport {
        commuting: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategorySpecError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("object `{0}` has no identity arrow")]
    MissingIdentity(String),
    #[error("identity of `{object}` must be an endo-arrow on it, but `{arrow}` is {dom} -> {cod}")]
    BadIdentity {
        object: String,
        arrow: String,
        dom: String,
        cod: String,
    },
    #[error("composition `{g}` after `{f}` declared but cod({f}) != dom({g})")]
    NotComposable { g: String, f: String },
    #[error("no composition declared for `{g}` after `{f}`")]
    MissingComposition { g: String, f: String },
    #[error("composite `{h}` of `{g}` after `{f}` has wrong endpoints")]
    BadCompositeEndpoints { g: String, f: String, h: String },
    #[error("identity composite for `{f}` is missing or truncated")]
    TruncatedIdentity { f: String },
    #[error("unit law fails: composing `{f}` with an identity yields `{got}`")]
    UnitLaw { f: String, got: String },
    #[error("associativity fails on `{h}` after `{g}` after `{f}`")]
    Associativity { h: String, g: String, f: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Result of composing two composable arrows. `Truncated` marks composites
/// deliberately cut off by the spec (they embed as the absorbing element).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composite {
    Arrow(usize),
    Truncated,
}

/// A finite category presented by tables: objects, named arrows, an
/// identity per object, and the full composition table over composable
/// pairs. Validated on construction: unit laws must hold outright, and
/// associativity must hold with truncation propagating (both association
/// orders agree, arrow-for-arrow or both truncated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCategorySpec {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    compose: BTreeMap<(usize, usize), Composite>,
}

impl SmallCategorySpec {
    /// `compose` entries are `(g, f, h)` meaning `g ∘ f = h`; `h = None`
    /// marks a truncated composite.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identities: BTreeMap<String, String>,
        compose: Vec<(String, String, Option<String>)>,
    ) -> Result<Self, CategorySpecError> {
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].contains(o) {
                return Err(CategorySpecError::DuplicateObject(o.clone()));
            }
        }
        let object_ix = |name: &str| {
            objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| CategorySpecError::UnknownObject(name.to_owned()))
        };
        let mut resolved = Vec::new();
        for (name, dom, cod) in arrows {
            if resolved.iter().any(|a: &Arrow| a.name == name) {
                return Err(CategorySpecError::DuplicateArrow(name));
            }
            resolved.push(Arrow {
                name,
                dom: object_ix(&dom)?,
                cod: object_ix(&cod)?,
            });
        }
        let arrows = resolved;
        let arrow_ix = |name: &str| {
            arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| CategorySpecError::UnknownArrow(name.to_owned()))
        };

        let mut identity_of = vec![usize::MAX; objects.len()];
        for (object, arrow) in identities {
            let o = object_ix(&object)?;
            let a = arrow_ix(&arrow)?;
            if arrows[a].dom != o || arrows[a].cod != o {
                return Err(CategorySpecError::BadIdentity {
                    object,
                    arrow,
                    dom: objects[arrows[a].dom].clone(),
                    cod: objects[arrows[a].cod].clone(),
                });
            }
            identity_of[o] = a;
        }
        for (o, &id) in identity_of.iter().enumerate() {
            if id == usize::MAX {
                return Err(CategorySpecError::MissingIdentity(objects[o].clone()));
            }
        }

        let mut table = BTreeMap::new();
        for (g, f, h) in compose {
            let gi = arrow_ix(&g)?;
            let fi = arrow_ix(&f)?;
            if arrows[fi].cod != arrows[gi].dom {
                return Err(CategorySpecError::NotComposable { g, f });
            }
            let entry = match h {
                None => Composite::Truncated,
                Some(h) => {
                    let hi = arrow_ix(&h)?;
                    if arrows[hi].dom != arrows[fi].dom || arrows[hi].cod != arrows[gi].cod {
                        return Err(CategorySpecError::BadCompositeEndpoints { g, f, h });
                    }
                    Composite::Arrow(hi)
                }
            };
            table.insert((gi, fi), entry);
        }
        for g in 0..arrows.len() {
            for f in 0..arrows.len() {
                if arrows[f].cod == arrows[g].dom && !table.contains_key(&(g, f)) {
                    return Err(CategorySpecError::MissingComposition {
                        g: arrows[g].name.clone(),
                        f: arrows[f].name.clone(),
                    });
                }
            }
        }

        let cat = SmallCategorySpec {
            objects,
            arrows,
            identities: identity_of,
            compose: table,
        };

        for f in 0..cat.arrows.len() {
            let left = cat.compose.get(&(cat.identities[cat.arrows[f].cod], f));
            let right = cat.compose.get(&(f, cat.identities[cat.arrows[f].dom]));
            for side in [left, right] {
                match side {
                    Some(Composite::Arrow(h)) if *h == f => {}
                    Some(Composite::Arrow(h)) => {
                        return Err(CategorySpecError::UnitLaw {
                            f: cat.arrows[f].name.clone(),
                            got: cat.arrows[*h].name.clone(),
                        });
                    }
                    _ => {
                        return Err(CategorySpecError::TruncatedIdentity {
                            f: cat.arrows[f].name.clone(),
                        });
                    }
                }
            }
        }

        for f in 0..cat.arrows.len() {
            for g in 0..cat.arrows.len() {
                if cat.arrows[f].cod != cat.arrows[g].dom {
                    continue;
                }
                for h in 0..cat.arrows.len() {
                    if cat.arrows[g].cod != cat.arrows[h].dom {
                        continue;
                    }
                    let left = match cat.compose[&(g, f)] {
                        Composite::Truncated => Composite::Truncated,
                        Composite::Arrow(gf) => cat.compose[&(h, gf)],
                    };
                    let right = match cat.compose[&(h, g)] {
                        Composite::Truncated => Composite::Truncated,
                        Composite::Arrow(hg) => cat.compose[&(hg, f)],
                    };
                    if left != right {
                        return Err(CategorySpecError::Associativity {
                            h: cat.arrows[h].name.clone(),
                            g: cat.arrows[g].name.clone(),
                            f: cat.arrows[f].name.clone(),
                        });
                    }
                }
            }
        }

        Ok(cat)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity_of(&self, object: usize) -> usize {
        self.identities[object]
    }

    /// `None` when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<Composite> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, dom: usize, cod: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].dom == dom && self.arrows[a].cod == cod)
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("algebra is missing state `{0}` for an embedded object")]
    MissingState(String),
    #[error("algebra is missing adjustment `{0}` for an embedded arrow")]
    MissingArrow(String),
    #[error(
        "hom-set mismatch between `{x}` and `{y}`: expected {{{expected}}}, found {{{found}}}"
    )]
    HomMismatch {
        x: String,
        y: String,
        expected: String,
        found: String,
    },
    #[error("composition not preserved on `{g}` after `{f}`")]
    CompositionMismatch { g: String, f: String },
}

/// Witness that a small category sits inside an algebra's reachability
/// category: object and arrow images, with the hom-set bijection and
/// composition preservation checked (the zero and absorbing elements are
/// excluded from the arrow comparison).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub object_map: Vec<StateIx>,
    pub arrow_map: Vec<AdjIx>,
    pub hom_bijection_checked: bool,
    pub composition_preserved: bool,
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = base.to_owned();
    while taken(&name) {
        name.push('_');
    }
    name
}

/// Builds an algebra whose reachability category contains the given small
/// category: states are the objects plus a sink, the monoid is the arrows
/// plus a fresh zero and an absorbing `dead` element, addition is reversed
/// composition (non-composable or truncated pairs collapse to `dead`), and
/// an arrow acts by sending its domain to its codomain and everything else
/// to the sink. Identity arrows stay distinct from the monoid zero: `id_x`
/// fixes `x` but sinks every other state, while zero fixes everything.
/// The update rule is constantly zero and Ψ is a single chain value, so for
/// a category with no truncated composites the result satisfies all axioms
/// (with commutativity not required). A truncated composite necessarily
/// breaks action compatibility — the two arrows act in sequence while their
/// sum is `dead` — so such embeddings trade the action law for the hom-set
/// certificate, which still holds.
pub fn embed_category(
    cat: &SmallCategorySpec,
) -> Result<(FiniteAlpayAlgebra, EmbeddingCertificate), EmbedError> {
    let objects = cat.object_names();
    let arrows = cat.arrows();
    let n = arrows.len();

    let zero_name = fresh_name("0", |s| arrows.iter().any(|a| a.name == s));
    let dead_name = fresh_name("dead", |s| {
        arrows.iter().any(|a| a.name == s) || s == zero_name
    });
    let sink_name = fresh_name("bot", |s| objects.contains(&s.to_owned()));

    let mut elements = Vec::with_capacity(n + 2);
    elements.push(zero_name);
    elements.extend(arrows.iter().map(|a| a.name.clone()));
    elements.push(dead_name);
    let dead = n + 1;

    let mut table = vec![vec![0usize; n + 2]; n + 2];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, entry) in row.iter_mut().enumerate() {
            *entry = if x == 0 {
                y
            } else if y == 0 {
                x
            } else if x == dead || y == dead {
                dead
            } else {
                // add(f, g) = g ∘ f: do f, then g.
                match cat.compose(y - 1, x - 1) {
                    Some(Composite::Arrow(h)) => h + 1,
                    Some(Composite::Truncated) | None => dead,
                }
            };
        }
    }
    let monoid = AdjustmentMonoid::new(elements, 0, table, false, (1..=n).collect())
        .expect("embedded monoid is structurally sound");

    let mut states: Vec<String> = objects.to_vec();
    states.push(sink_name);
    let sink = objects.len();
    let mut action = vec![vec![0usize; n + 2]; states.len()];
    for (s, row) in action.iter_mut().enumerate() {
        for (e, entry) in row.iter_mut().enumerate() {
            *entry = if e == 0 {
                s
            } else if e == dead {
                sink
            } else {
                let arrow = &arrows[e - 1];
                if s == arrow.dom {
                    arrow.cod
                } else {
                    sink
                }
            };
        }
    }

    let eval_order = EvalOrder::chain(vec!["unit".to_owned()]).expect("one label");
    let alg = FiniteAlpayAlgebra::from_parts(AlgebraParts {
        states,
        monoid,
        action,
        phi: vec![0; objects.len() + 1],
        psi: vec![EvalValue::Chain(0); objects.len() + 1],
        eval_order,
        initial_state: None,
        named_sets: BTreeMap::new(),
    })
    .expect("embedded algebra is structurally sound");

    let certificate = verify_embedding(cat, &alg)?;
    Ok((alg, certificate))
}

/// Re-derives and checks an embedding certificate against an algebra whose
/// states and adjustments carry the category's object and arrow names (as
/// [`embed_category`] produces, possibly after a serialization round trip).
pub fn verify_embedding(
    cat: &SmallCategorySpec,
    alg: &FiniteAlpayAlgebra,
) -> Result<EmbeddingCertificate, EmbedError> {
    let object_map: Vec<StateIx> = cat
        .object_names()
        .iter()
        .map(|o| {
            alg.lookup_state(o)
                .map_err(|_| EmbedError::MissingState(o.clone()))
        })
        .collect::<Result<_, _>>()?;
    let arrow_map: Vec<AdjIx> = cat
        .arrows()
        .iter()
        .map(|a| {
            alg.monoid()
                .lookup(&a.name)
                .map_err(|_| EmbedError::MissingArrow(a.name.clone()))
        })
        .collect::<Result<_, _>>()?;
    let arrow_image: BTreeSet<AdjIx> = arrow_map.iter().copied().collect();
    let zero = alg.monoid().zero();

    for (g, garrow) in cat.arrows().iter().enumerate() {
        for (f, farrow) in cat.arrows().iter().enumerate() {
            let Some(result) = cat.compose(g, f) else {
                continue;
            };
            let net = alg.monoid().add(arrow_map[f], arrow_map[g]);
            let ok = match result {
                Composite::Arrow(h) => net == arrow_map[h],
                Composite::Truncated => net != zero && !arrow_image.contains(&net),
            };
            if !ok {
                return Err(EmbedError::CompositionMismatch {
                    g: garrow.name.clone(),
                    f: farrow.name.clone(),
                });
            }
        }
    }

    let view = CategoryView::build(alg, saturation_depth(alg));
    for (x, &sx) in object_map.iter().enumerate() {
        for (y, &sy) in object_map.iter().enumerate() {
            let expected: BTreeSet<AdjIx> =
                cat.hom(x, y).into_iter().map(|a| arrow_map[a]).collect();
            let found: BTreeSet<AdjIx> = view
                .hom(sx, sy)
                .into_iter()
                .map(|m| m.net)
                .filter(|net| arrow_image.contains(net))
                .collect();
            if expected != found {
                let render = |set: &BTreeSet<AdjIx>| {
                    set.iter()
                        .map(|&a| alg.monoid().name(a))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                return Err(EmbedError::HomMismatch {
                    x: cat.object_names()[x].clone(),
                    y: cat.object_names()[y].clone(),
                    expected: render(&expected),
                    found: render(&found),
                });
            }
        }
    }

    Ok(EmbeddingCertificate {
        object_map,
        arrow_map,
        hom_bijection_checked: true,
        composition_preserved: true,
    })
}
