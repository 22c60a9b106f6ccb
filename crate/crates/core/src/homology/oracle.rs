//! Graph-theoretic cross-check for the chain-complex computation.
//!
//! Connected components by union-find and the Euler cycle rank
//! |E| − |V| + components give b₀ and (two-cell-free) b₁ along a route
//! completely independent of Smith normal form. Directed acyclicity comes
//! from a three-color depth-first search.

use crate::algebra::FiniteAlpayAlgebra;

use super::{edges, Edge, EdgePolicy};

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut xr, mut yr) = (self.find(x), self.find(y));
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }

    fn component_count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub policy: EdgePolicy,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Weakly connected components of the transition graph.
    pub components: usize,
    /// |E| − |V| + components; each self-loop contributes 1.
    pub cycle_rank: usize,
    pub directed_acyclic: bool,
}

/// Independent homology oracle over the policy's edge set.
pub fn graph_oracle(alg: &FiniteAlpayAlgebra, policy: EdgePolicy) -> OracleReport {
    let edge_list = edges(alg, policy);
    let n = alg.state_count();

    let mut uf = UnionFind::new(n);
    for e in &edge_list {
        uf.union(e.source.0, e.target.0);
    }
    let components = if n == 0 { 0 } else { uf.component_count() };
    let cycle_rank = edge_list.len() + components - n;

    OracleReport {
        policy,
        vertex_count: n,
        edge_count: edge_list.len(),
        components,
        cycle_rank,
        directed_acyclic: is_directed_acyclic(n, &edge_list),
    }
}

fn is_directed_acyclic(n: usize, edge_list: &[Edge]) -> bool {
    let mut succ = vec![Vec::new(); n];
    for e in edge_list {
        if e.source == e.target {
            return false;
        }
        succ[e.source.0].push(e.target.0);
    }
    // 0 = white, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        color[start] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < succ[node].len() {
                let child = succ[node][*next];
                *next += 1;
                match color[child] {
                    0 => {
                        color[child] = 1;
                        stack.push((child, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                color[node] = 2;
                stack.pop();
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::builtins;

    #[test]
    fn triangle_is_one_component_with_one_cycle() {
        let report = graph_oracle(&builtins::cycle3(), EdgePolicy::default());
        assert_eq!(report.components, 1);
        assert_eq!(report.cycle_rank, 1);
        assert!(!report.directed_acyclic);
    }

    #[test]
    fn diamond_without_self_loops_is_a_dag_with_one_cycle_in_cycle_space() {
        let policy = EdgePolicy {
            selection: super::super::EdgeSelection::Generators,
            self_loops: super::super::SelfLoopPolicy::Drop,
        };
        let report = graph_oracle(&builtins::diamond(), policy);
        assert_eq!(report.edge_count, 4);
        assert_eq!(report.components, 1);
        assert_eq!(report.cycle_rank, 1);
        assert!(report.directed_acyclic);
    }

    #[test]
    fn disjoint_copies_have_two_components() {
        let report = graph_oracle(&builtins::twopeaks(), EdgePolicy::default());
        assert_eq!(report.components, 2);
    }

    #[test]
    fn self_loops_count_as_directed_cycles() {
        let report = graph_oracle(&builtins::selfloop(), EdgePolicy::default());
        assert_eq!(report.cycle_rank, 1);
        assert!(!report.directed_acyclic);
    }
}
