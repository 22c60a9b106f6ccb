//! Command-line front end for the workbench.
//!
//! Exit codes: 0 = all checks passed, 1 = a check failed (report on
//! stdout), 2 = usage, IO, or parse error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use alpay_workbench::algebra::{Axiom, AxiomReport, FiniteAlpayAlgebra, StateIx};
use alpay_workbench::category::{
    self, embed_category, saturation_depth, CategoryError, ExtremaReport,
};
use alpay_workbench::dynamics::{self, FixpointOutcome, Trajectory, TrajectoryEnd};
use alpay_workbench::homology::{
    build_complex, cycle_probe, graph_oracle, homology_report, CycleClass, EdgePolicy,
    EdgeSelection, ProbeFinding, SelfLoopPolicy, TwoCellSpec,
};
use alpay_workbench::logic::{
    check_claim, model_check, named_set_env, parse_formula, Claim, ClaimError,
};
use alpay_workbench::workbench::{
    builtins, export_dot, load_category_spec, load_spec, load_two_cells, random_algebra,
    save_category_spec, save_spec, RandomAlgebraParams,
};

#[derive(Parser)]
#[command(
    name = "alpay",
    version,
    about = "Finite-model workbench for Alpay algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the exhaustive axiom audit on a spec file.
    Validate { spec: PathBuf },
    /// Iterate the update rule from a start state and print the trajectory.
    Run {
        spec: PathBuf,
        /// Start state (defaults to the spec's initial_state).
        #[arg(long)]
        from: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Run the update rule to its fixed point.
    Fixpoint {
        spec: PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Check that every state converges within the strict-increase bound.
    AuditTermination { spec: PathBuf },
    /// Reachability-category analyses.
    Category {
        spec: PathBuf,
        #[command(subcommand)]
        cmd: CategoryCmd,
    },
    /// Embed a small-category spec into a fresh algebra.
    Embed {
        catspec: PathBuf,
        /// Where to write the embedded algebra's spec.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Betti numbers, torsion, and the graph oracle.
    Homology {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = EdgesArg::Generators)]
        edges: EdgesArg,
        #[arg(long = "self-loops", value_enum, default_value_t = LoopsArg::Keep)]
        self_loops: LoopsArg,
        /// JSON file with declared two-cells.
        #[arg(long = "two-cells")]
        two_cells: Option<PathBuf>,
    },
    /// Model-check a formula; exit 0 iff every state satisfies it.
    Check {
        spec: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Check a quantified claim over the whole algebra.
    Claim {
        spec: PathBuf,
        /// all-states-converge | unique-global-attractor | exists-state-satisfying
        #[arg(long)]
        kind: String,
        /// Formula for exists-state-satisfying.
        #[arg(long)]
        formula: Option<String>,
    },
    /// Probe the cycles-vs-homology correspondence per edge policy.
    ProbeC4 { spec: PathBuf },
    /// Generate random algebras and run the standard audits over them.
    Sweep {
        #[arg(long)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ground set size (1..=8).
        #[arg(long)]
        size: u32,
        /// Seed subsets drawn before union closure.
        #[arg(long, default_value_t = 5)]
        family: u32,
    },
    /// Print the transition graph in DOT syntax.
    ExportDot {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = EdgesArg::Generators)]
        edges: EdgesArg,
        #[arg(long = "self-loops", value_enum, default_value_t = LoopsArg::Keep)]
        self_loops: LoopsArg,
    },
    /// Write a built-in spec (algebra or category) to a file.
    Builtin {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CategoryCmd {
    /// Audit identity, associativity, closure, and the groupoid property.
    Laws {
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Print the hom-set between two states.
    Homs {
        x: String,
        y: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Report initial/terminal objects under both uniqueness readings.
    Extremal {
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgesArg {
    Generators,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopsArg {
    Keep,
    Drop,
}

fn policy_of(edges: EdgesArg, self_loops: LoopsArg) -> EdgePolicy {
    EdgePolicy {
        selection: match edges {
            EdgesArg::Generators => EdgeSelection::Generators,
            EdgesArg::All => EdgeSelection::AllAdjustments,
        },
        self_loops: match self_loops {
            LoopsArg::Keep => SelfLoopPolicy::Keep,
            LoopsArg::Drop => SelfLoopPolicy::Drop,
        },
    }
}

/// Errors that mean "could not run" (exit 2), as opposed to "ran and the
/// check failed" (exit 1).
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<u8, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<FiniteAlpayAlgebra, UsageError> {
    load_spec(&read_file(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn start_state(alg: &FiniteAlpayAlgebra, from: &Option<String>) -> Result<StateIx, UsageError> {
    match from {
        Some(name) => Ok(alg.lookup_state(name)?),
        None => alg
            .initial_state()
            .ok_or_else(|| UsageError("no --from given and the spec has no initial_state".into())),
    }
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Validate { spec } => {
            let alg = load_algebra(&spec)?;
            let report = alg.validate();
            print!("{}", render_axiom_report(&report));
            Ok(u8::from(!report.passed()))
        }
        Cmd::Run { spec, from, budget } => {
            let alg = load_algebra(&spec)?;
            let start = start_state(&alg, &from)?;
            let trajectory = dynamics::run_trajectory(&alg, start, budget)?;
            print!("{}", render_trajectory(&alg, &trajectory));
            Ok(u8::from(!matches!(
                trajectory.outcome,
                TrajectoryEnd::FixedPoint(_)
            )))
        }
        Cmd::Fixpoint { spec, from, budget } => {
            let alg = load_algebra(&spec)?;
            let start = start_state(&alg, &from)?;
            match dynamics::phi_infinity(&alg, start, budget)? {
                FixpointOutcome::Converged { state, steps } => {
                    println!(
                        "converged to {} in {} step{}",
                        alg.state_name(state),
                        steps,
                        if steps == 1 { "" } else { "s" }
                    );
                    Ok(0)
                }
                FixpointOutcome::Nonterminating { cycle } => {
                    println!("nonterminating: cycle [{}]", names(&alg, &cycle).join(", "));
                    Ok(1)
                }
                FixpointOutcome::BudgetExhausted { last_state } => {
                    println!("budget exhausted at {}", alg.state_name(last_state));
                    Ok(1)
                }
            }
        }
        Cmd::AuditTermination { spec } => {
            let alg = load_algebra(&spec)?;
            match dynamics::termination_audit(&alg) {
                Err(refusal) => {
                    println!("refused: algebra fails the axiom audit");
                    print!("{}", render_axiom_report(&refusal.report));
                    Ok(1)
                }
                Ok(report) => {
                    for (start, outcome) in &report.outcomes {
                        match outcome {
                            FixpointOutcome::Converged { state, steps } => println!(
                                "{} -> {} in {} step{}",
                                alg.state_name(*start),
                                alg.state_name(*state),
                                steps,
                                if *steps == 1 { "" } else { "s" }
                            ),
                            other => println!("{}: {other:?}", alg.state_name(*start)),
                        }
                    }
                    println!(
                        "max steps {} within bound {} (bound respected: {})",
                        report.max_steps_observed, report.step_bound, report.bound_respected
                    );
                    Ok(u8::from(
                        !(report.all_converged() && report.bound_respected),
                    ))
                }
            }
        }
        Cmd::Category { spec, cmd } => {
            let alg = load_algebra(&spec)?;
            match cmd {
                CategoryCmd::Laws { depth } => match category::category_law_audit(&alg, depth) {
                    Err(CategoryError::Refused(refusal)) => {
                        println!("refused: algebra fails the axiom audit");
                        print!("{}", render_axiom_report(&refusal.report));
                        Ok(1)
                    }
                    Err(e @ CategoryError::DepthTooSmall { .. }) => Err(e.into()),
                    Ok(report) => {
                        println!(
                            "depth {} morphisms {}\nidentity: {}\nassociativity: {}\nclosure: {}\ngroupoid: {}",
                            report.depth,
                            report.morphism_count,
                            verdict(report.identity_ok),
                            verdict(report.associativity_ok),
                            verdict(report.closure_ok),
                            if report.groupoid { "yes" } else { "no" },
                        );
                        for v in &report.violations {
                            println!("  violation: {v}");
                        }
                        Ok(u8::from(!report.passed()))
                    }
                },
                CategoryCmd::Homs { x, y, depth } => {
                    let x = alg.lookup_state(&x)?;
                    let y = alg.lookup_state(&y)?;
                    let depth = depth.unwrap_or_else(|| saturation_depth(&alg));
                    let homs = category::hom_set(&alg, x, y, depth);
                    println!(
                        "hom({}, {}) at depth {}: {} morphism{}",
                        alg.state_name(x),
                        alg.state_name(y),
                        depth,
                        homs.len(),
                        if homs.len() == 1 { "" } else { "s" }
                    );
                    for m in &homs {
                        println!("  net {}", alg.monoid().name(m.net));
                    }
                    Ok(0)
                }
                CategoryCmd::Extremal { depth } => {
                    let depth =
                        depth.unwrap_or_else(|| saturation_depth(&alg).max(alg.state_count()));
                    let report = category::extremal_objects(&alg, depth)?;
                    print!("{}", render_extrema(&alg, &report));
                    Ok(0)
                }
            }
        }
        Cmd::Embed { catspec, output } => {
            let cat = load_category_spec(&read_file(&catspec)?)
                .map_err(|e| UsageError(format!("{}: {e}", catspec.display())))?;
            match embed_category(&cat) {
                Err(e) => {
                    println!("embedding certificate failed: {e}");
                    Ok(1)
                }
                Ok((alg, cert)) => {
                    std::fs::write(&output, save_spec(&alg))
                        .map_err(|e| UsageError(format!("{}: {e}", output.display())))?;
                    println!(
                        "embedded {} objects, {} arrows into {} states, {} adjustments",
                        cat.object_names().len(),
                        cat.arrows().len(),
                        alg.state_count(),
                        alg.monoid().len()
                    );
                    println!(
                        "hom bijection: {}\ncomposition preserved: {}",
                        verdict(cert.hom_bijection_checked),
                        verdict(cert.composition_preserved)
                    );
                    println!("wrote {}", output.display());
                    Ok(0)
                }
            }
        }
        Cmd::Homology {
            spec,
            edges,
            self_loops,
            two_cells,
        } => {
            let alg = load_algebra(&spec)?;
            let policy = policy_of(edges, self_loops);
            let cells: Vec<TwoCellSpec> = match &two_cells {
                None => Vec::new(),
                Some(path) => load_two_cells(&read_file(path)?, &alg)
                    .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
            };
            let complex = build_complex(&alg, policy, &cells)?;
            let report = homology_report(&complex);
            let oracle = graph_oracle(&alg, policy);
            println!(
                "{policy}: {} vertices, {} edges ({} self-loops), {} two-cells",
                complex.vertices,
                complex.edges.len(),
                complex.self_loop_count,
                complex.two_cells.len()
            );
            println!("b0 = {}", report.b0);
            println!("b1 = {}", report.b1);
            let torsion: Vec<String> = report.h1_torsion.iter().map(|t| t.to_string()).collect();
            println!(
                "h1 torsion: {}",
                if torsion.is_empty() {
                    "none".to_owned()
                } else {
                    torsion.join(", ")
                }
            );
            println!(
                "oracle: components {}, cycle rank {}, directed acyclic {}",
                oracle.components, oracle.cycle_rank, oracle.directed_acyclic
            );
            Ok(0)
        }
        Cmd::Check { spec, formula } => {
            let alg = load_algebra(&spec)?;
            let f = parse_formula(&formula).map_err(|e| UsageError(format!("--formula: {e}")))?;
            let sat = model_check(&alg, &f, &named_set_env(&alg))
                .map_err(|e| UsageError(format!("--formula: {e}")))?;
            let members = sat.members();
            println!(
                "{} of {} states satisfy: {f}",
                members.len(),
                alg.state_count()
            );
            for x in &members {
                println!("  {}", alg.state_name(*x));
            }
            Ok(u8::from(members.len() != alg.state_count()))
        }
        Cmd::Claim {
            spec,
            kind,
            formula,
        } => {
            let alg = load_algebra(&spec)?;
            let claim = match kind.as_str() {
                "all-states-converge" => Claim::AllStatesConverge,
                "unique-global-attractor" => Claim::UniqueGlobalAttractor,
                "exists-state-satisfying" => {
                    let text = formula.ok_or_else(|| {
                        UsageError("exists-state-satisfying needs --formula".into())
                    })?;
                    Claim::ExistsStateSatisfying(
                        parse_formula(&text).map_err(|e| UsageError(format!("--formula: {e}")))?,
                    )
                }
                other => return Err(UsageError(format!("unknown claim kind `{other}`"))),
            };
            match check_claim(&alg, &claim, &named_set_env(&alg)) {
                Err(ClaimError::Refused(refusal)) => {
                    println!("refused: algebra fails the axiom audit");
                    print!("{}", render_axiom_report(&refusal.report));
                    Ok(1)
                }
                Err(ClaimError::Logic(e)) => Err(UsageError(format!("--formula: {e}"))),
                Ok(result) => {
                    println!("claim {kind}: {}", verdict(result.verdict));
                    if !result.attractors.is_empty() {
                        println!("attractors: {}", names(&alg, &result.attractors).join(", "));
                    }
                    if let Some(witness) = result.witness_state {
                        println!("witness state: {}", alg.state_name(witness));
                    }
                    if let Some(trajectory) = &result.witness_trajectory {
                        print!("{}", render_trajectory(&alg, trajectory));
                    }
                    Ok(u8::from(!result.verdict))
                }
            }
        }
        Cmd::ProbeC4 { spec } => {
            let alg = load_algebra(&spec)?;
            let finding = cycle_probe(&alg);
            print!("{}", render_probe(&finding));
            let impossible = finding
                .rows
                .iter()
                .any(|r| r.classification == CycleClass::CounterexampleToIf);
            Ok(u8::from(impossible))
        }
        Cmd::Sweep {
            count,
            seed,
            size,
            family,
        } => {
            let mut converged = 0u32;
            let mut unique_attractor = 0u32;
            let mut only_if_counterexamples = 0u32;
            let mut hard_failures = 0u32;
            for offset in 0..u64::from(count) {
                let params = RandomAlgebraParams {
                    ground_set_size: size,
                    family_size: family,
                    seed: seed + offset,
                };
                let alg = random_algebra(&params)?;
                let report = dynamics::termination_audit(&alg)
                    .map_err(|e| UsageError(format!("seed {}: {e}", params.seed)))?;
                if report.all_converged() && report.bound_respected {
                    converged += 1;
                }
                let claim = check_claim(&alg, &Claim::UniqueGlobalAttractor, &named_set_env(&alg))
                    .map_err(|e| UsageError(format!("seed {}: {e}", params.seed)))?;
                if claim.verdict {
                    unique_attractor += 1;
                }
                for row in cycle_probe(&alg).rows {
                    match row.classification {
                        CycleClass::CounterexampleToOnlyIf => only_if_counterexamples += 1,
                        CycleClass::CounterexampleToIf => hard_failures += 1,
                        CycleClass::Consistent => {}
                    }
                }
            }
            println!(
                "seeds {seed}..{} size {size} family {family}",
                seed + u64::from(count)
            );
            println!("converged within bound: {converged}/{count}");
            println!("unique attractor: {unique_attractor}/{count}");
            println!("probe counterexample-to-only-if rows: {only_if_counterexamples}");
            println!("probe counterexample-to-if rows (must be 0): {hard_failures}");
            Ok(u8::from(converged != count || hard_failures != 0))
        }
        Cmd::ExportDot {
            spec,
            edges,
            self_loops,
        } => {
            let alg = load_algebra(&spec)?;
            print!("{}", export_dot(&alg, policy_of(edges, self_loops)));
            Ok(0)
        }
        Cmd::Builtin { name, output } => {
            let text = if let Some(alg) = builtins::algebra(&name) {
                save_spec(&alg)
            } else if let Some(cat) = builtins::category(&name) {
                save_category_spec(&cat)
            } else {
                return Err(UsageError(format!(
                    "unknown builtin `{name}` (algebras: {}; categories: {})",
                    builtins::ALGEBRA_NAMES.join(", "),
                    builtins::CATEGORY_NAMES.join(", ")
                )));
            };
            std::fs::write(&output, text)
                .map_err(|e| UsageError(format!("{}: {e}", output.display())))?;
            println!("wrote {}", output.display());
            Ok(0)
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn names(alg: &FiniteAlpayAlgebra, states: &[StateIx]) -> Vec<String> {
    states
        .iter()
        .map(|&x| alg.state_name(x).to_owned())
        .collect()
}

fn render_axiom_report(report: &AxiomReport) -> String {
    let mut out = String::new();
    for axiom in Axiom::ALL {
        let _ = writeln!(out, "{axiom}: {}", verdict(report.verdict(axiom)));
        for violation in report.violations_for(axiom) {
            let _ = writeln!(
                out,
                "  witness ({}): {}",
                violation.subject.join(", "),
                violation.detail
            );
        }
    }
    let _ = writeln!(out, "overall: {}", verdict(report.passed()));
    out
}

fn render_trajectory(alg: &FiniteAlpayAlgebra, t: &Trajectory) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "start {} (ψ={})",
        alg.state_name(t.start),
        alg.eval_order().format(&t.psi_start)
    );
    for s in &t.steps {
        let _ = writeln!(
            out,
            "  {} --{}--> {} (ψ={})",
            alg.state_name(s.state_before),
            alg.monoid().name(s.adjustment),
            alg.state_name(s.state_after),
            alg.eval_order().format(&s.psi_after)
        );
    }
    match &t.outcome {
        TrajectoryEnd::FixedPoint(x) => {
            let _ = writeln!(
                out,
                "fixed point {} after {} steps",
                alg.state_name(*x),
                t.steps.len()
            );
        }
        TrajectoryEnd::CycleDetected { .. } => {
            let cycle = t.cycle_witness().unwrap_or_default();
            let _ = writeln!(out, "cycle detected: [{}]", names(alg, &cycle).join(", "));
        }
        TrajectoryEnd::BudgetExhausted => {
            let _ = writeln!(out, "budget exhausted after {} steps", t.steps.len());
        }
    }
    out
}

fn render_extrema(alg: &FiniteAlpayAlgebra, report: &ExtremaReport) -> String {
    let list = |xs: &[StateIx]| {
        if xs.is_empty() {
            "none".to_owned()
        } else {
            names(alg, xs).join(", ")
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "depth {}", report.depth);
    let _ = writeln!(
        out,
        "terminal (unique net from every state): {}",
        list(&report.strict_terminal)
    );
    let _ = writeln!(
        out,
        "terminal (reachable from every state):  {}",
        list(&report.reachable_terminal)
    );
    let _ = writeln!(
        out,
        "initial (unique net to every state):    {}",
        list(&report.strict_initial)
    );
    let _ = writeln!(
        out,
        "initial (reaches every state):          {}",
        list(&report.reachable_initial)
    );
    if report.degenerate_all_extremal {
        let _ = writeln!(
            out,
            "note: every object is extremal (degenerate; the hom structure is uniform)"
        );
    }
    let _ = writeln!(
        out,
        "note: \"exactly one way\" is read over net adjustments; the reachability \
         rows ignore net multiplicity"
    );
    out
}

fn render_probe(finding: &ProbeFinding) -> String {
    let mut out = String::new();
    for row in &finding.rows {
        let _ = writeln!(
            out,
            "{}: b0={} b1={} components={} directed-acyclic={} -> {}",
            row.policy, row.b0, row.b1, row.components, row.directed_acyclic, row.classification
        );
    }
    let _ = writeln!(out, "note: {}", ProbeFinding::NOTE);
    out
}
