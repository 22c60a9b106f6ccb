//! DOT (Graphviz) export of the transition graph.

use crate::algebra::FiniteAlpayAlgebra;
use crate::homology::{edges, EdgePolicy};

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the policy's transition graph: one node per state labeled with
/// its Ψ value (fixed points get a doubled border), one edge per selected
/// transition labeled with its adjustment. Output is deterministic: nodes
/// and edges follow declaration order.
pub fn export_dot(alg: &FiniteAlpayAlgebra, policy: EdgePolicy) -> String {
    let mut out = String::from("digraph algebra {\n  rankdir=LR;\n");
    for x in alg.states() {
        let label = format!(
            "{} | ψ={}",
            alg.state_name(x),
            alg.eval_order().format(alg.psi(x))
        );
        let peripheries = if alg.is_fixed_point(x) {
            ", peripheries=2"
        } else {
            ""
        };
        out.push_str(&format!(
            "  {} [label={}{}];\n",
            quote(alg.state_name(x)),
            quote(&label),
            peripheries
        ));
    }
    for e in edges(alg, policy) {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(alg.state_name(e.source)),
            quote(alg.state_name(e.target)),
            quote(alg.monoid().name(e.label))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::builtins;

    #[test]
    fn triangle_renders_three_nodes_and_edges() {
        let dot = export_dot(&builtins::cycle3(), EdgePolicy::default());
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert_eq!(dot.matches("label=\"").count(), 6);
        assert!(dot.contains("\"0\" -> \"1\" [label=\"1\"];"));
    }

    #[test]
    fn counter_keeps_its_self_loop_and_marks_the_fixed_point() {
        let dot = export_dot(&builtins::counter5(), EdgePolicy::default());
        assert!(dot.contains("\"5\" -> \"5\""));
        assert!(dot.contains("\"5\" [label=\"5 | ψ=5\", peripheries=2];"));
        assert_eq!(
            dot,
            export_dot(&builtins::counter5(), EdgePolicy::default())
        );
    }
}
