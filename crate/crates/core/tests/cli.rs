//! End-to-end CLI behavior: flag handling, fallbacks, and the 0/1/2 exit
//! contract across subcommands.

use std::path::Path;
use std::process::{Command, Output};

use alpay_workbench::workbench::{builtins, load_spec, save_spec};

fn alpay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alpay"))
        .args(args)
        .output()
        .unwrap()
}

fn write_builtin(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, save_spec(&builtins::algebra(name).unwrap())).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn run_falls_back_to_the_initial_state() {
    let dir = tempfile::tempdir().unwrap();
    let counter = write_builtin(dir.path(), "COUNTER5");
    let out = alpay(&["run", &counter]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("start 0"));

    // CYCLE3 has no initial_state and no --from: usage error.
    let cycle = write_builtin(dir.path(), "CYCLE3");
    let out = alpay(&["run", &cycle]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("initial_state"));

    let out = alpay(&["run", &cycle, "--from", "1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = alpay(&["run", &counter, "--from", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonconvergent_runs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let badloop = write_builtin(dir.path(), "BADLOOP");
    let out = alpay(&["run", &badloop, "--from", "a"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("cycle detected: [a, b]"));

    let out = alpay(&["fixpoint", &badloop, "--from", "a"]);
    assert_eq!(out.status.code(), Some(1));

    let out = alpay(&["audit-termination", &badloop]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("refused"));
}

#[test]
fn category_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let counter = write_builtin(dir.path(), "COUNTER5");
    let out = alpay(&["category", &counter, "laws"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("groupoid: no"));

    let out = alpay(&["category", &counter, "laws", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(2), "depth below 2 cannot run");

    let out = alpay(&["category", &counter, "homs", "0", "2"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("net 2"));

    let out = alpay(&["category", &counter, "extremal"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("terminal (reachable from every state):  5"));
    assert!(text.contains("initial (unique net to every state):    0"));
}

#[test]
fn embed_writes_a_loadable_spec() {
    let dir = tempfile::tempdir().unwrap();
    let catspec = dir.path().join("poset3.json");
    let out_path = dir.path().join("embedded.json");
    let out = alpay(&["builtin", "POSET3", "-o", catspec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = alpay(&[
        "embed",
        catspec.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("hom bijection: pass"));

    let embedded = load_spec(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(embedded.state_names(), &["0", "1", "2", "bot"]);
    assert!(embedded.validate().passed());
}

#[test]
fn homology_accepts_two_cell_files() {
    let dir = tempfile::tempdir().unwrap();
    let diamond = write_builtin(dir.path(), "DIAMOND");
    let cells = dir.path().join("cells.json");
    std::fs::write(&cells, r#"[{"square": ["00", "a", "b"]}]"#).unwrap();
    let out = alpay(&[
        "homology",
        &diamond,
        "--self-loops",
        "drop",
        "--two-cells",
        cells.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("b1 = 0"), "{text}");

    // A chain that is not a cycle cannot run.
    std::fs::write(&cells, r#"[{"chain": [[1, "00", "a"]]}]"#).unwrap();
    let out = alpay(&["homology", &diamond, "--two-cells", cells.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_exits_one_unless_universal() {
    let dir = tempfile::tempdir().unwrap();
    let counter = write_builtin(dir.path(), "COUNTER5");
    let out = alpay(&["check", &counter, "--formula", "AF[phi] fixed"]);
    assert_eq!(out.status.code(), Some(0));
    let out = alpay(&["check", &counter, "--formula", "psi >= 3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("3 of 6 states satisfy"), "{text}");
    let out = alpay(&["check", &counter, "--formula", "psi >= 1/2"]);
    assert_eq!(out.status.code(), Some(2), "literal mismatch cannot run");
    let out = alpay(&["check", &counter, "--formula", "AF[phi"]);
    assert_eq!(out.status.code(), Some(2), "parse error cannot run");
}

#[test]
fn claim_kinds_and_probe() {
    let dir = tempfile::tempdir().unwrap();
    let counter = write_builtin(dir.path(), "COUNTER5");
    let out = alpay(&["claim", &counter, "--kind", "all-states-converge"]);
    assert_eq!(out.status.code(), Some(0));
    let out = alpay(&[
        "claim",
        &counter,
        "--kind",
        "exists-state-satisfying",
        "--formula",
        "psi_top",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("witness state: 5"));
    let out = alpay(&["claim", &counter, "--kind", "exists-state-satisfying"]);
    assert_eq!(out.status.code(), Some(2), "missing --formula");
    let out = alpay(&["claim", &counter, "--kind", "sideways"]);
    assert_eq!(out.status.code(), Some(2));

    let cycle = write_builtin(dir.path(), "CYCLE3");
    let out = alpay(&["probe-c4", &cycle]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("consistent-with-conjecture"));
}

#[test]
fn builtin_command_covers_the_catalogue() {
    let dir = tempfile::tempdir().unwrap();
    for name in builtins::ALGEBRA_NAMES {
        let path = dir.path().join(format!("{name}.json"));
        let out = alpay(&["builtin", name, "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(
            load_spec(&std::fs::read_to_string(&path).unwrap()).unwrap(),
            builtins::algebra(name).unwrap()
        );
    }
    let out = alpay(&[
        "builtin",
        "MISSING",
        "-o",
        dir.path().join("x.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
