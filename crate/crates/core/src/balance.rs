//! Exact balance tests through fundamental cycles of a BFS spanning tree.
//!
//! The tree is grown from vertex 0 with neighbors visited in ascending id,
//! so certificates are deterministic.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::graph::{GainGraph, SwitchingFunction};

/// BFS spanning tree with the gain of each tree path from the root.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Gain of the tree path `root -> v`.
    pub root_gain: Vec<UnitGain>,
    tree_edge: Vec<bool>,
    visit_order: Vec<usize>,
}

impl SpanningTree {
    pub fn bfs(g: &GainGraph) -> Result<Self> {
        g.require_connected()?;
        let n = g.order();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut root_gain = vec![UnitGain::ONE; n];
        let mut tree_edge = vec![false; g.edge_count()];
        let mut seen = vec![false; n];
        let mut visit_order = Vec::with_capacity(n);
        if n > 0 {
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(v) = queue.pop_front() {
                visit_order.push(v);
                for &(w, k) in g.neighbor_edges(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        root_gain[w] = root_gain[v] * g.gain(v, w).expect("tree edge");
                        tree_edge[k] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(SpanningTree {
            parent,
            depth,
            root_gain,
            tree_edge,
            visit_order,
        })
    }

    pub fn is_tree_edge(&self, k: usize) -> bool {
        self.tree_edge[k]
    }

    /// Root path gains of this tree shape evaluated with the gains of `g`.
    fn root_gains_in(&self, g: &GainGraph) -> Vec<UnitGain> {
        let mut out = vec![UnitGain::ONE; self.parent.len()];
        for &v in &self.visit_order {
            if let Some(p) = self.parent[v] {
                out[v] = out[p] * g.gain(p, v).expect("tree edge");
            }
        }
        out
    }

    /// Gain of the fundamental cycle `root -> u -> v -> root` closed by edge `u -> v`.
    fn fundamental_gain(&self, g: &GainGraph, k: usize) -> UnitGain {
        let e = g.edges()[k];
        self.root_gain[e.u] * e.gain * self.root_gain[e.v].conj()
    }

    /// Vertex sequence of the fundamental cycle of non-tree edge `u -> v`,
    /// starting at `u` and ending at `v` (closed by the edge `v -> u`).
    pub fn fundamental_cycle(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a].expect("non-root");
                up.push(a);
            } else {
                b = self.parent[b].expect("non-root");
                down.push(b);
            }
        }
        // up ends at the common ancestor; down also does
        down.pop();
        up.extend(down.into_iter().rev());
        // now u .. lca .. v; the closing edge v -> u completes the cycle
        up
    }
}

/// A non-neutral fundamental cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleCertificate {
    /// Vertices in traversal order; the cycle closes from the last back to the first.
    pub cycle: Vec<usize>,
    pub gain: UnitGain,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BalanceReport {
    /// `switch(g, switching)` has every gain equal to one.
    Balanced { switching: SwitchingFunction },
    Unbalanced(CycleCertificate),
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceReport::Balanced { .. })
    }
}

/// Decides balance from the fundamental cycles of the BFS tree.
pub fn is_balanced(g: &GainGraph) -> Result<BalanceReport> {
    let tree = SpanningTree::bfs(g)?;
    for (k, e) in g.edges().iter().enumerate() {
        if tree.is_tree_edge(k) {
            continue;
        }
        let gain = tree.fundamental_gain(g, k);
        if !gain.is_one() {
            let cycle = tree.fundamental_cycle(e.u, e.v);
            let gain = g.cycle_gain(&cycle)?;
            return Ok(BalanceReport::Unbalanced(CycleCertificate { cycle, gain }));
        }
    }
    // zeta(v) is the gain of the tree path v -> root
    let switching = SwitchingFunction::new(tree.root_gain.iter().map(|z| z.conj()).collect());
    Ok(BalanceReport::Balanced { switching })
}

/// `-Phi` is balanced.
pub fn is_antibalanced(g: &GainGraph) -> Result<bool> {
    Ok(is_balanced(&g.negated())?.is_balanced())
}

/// Two gain graphs on the same connected underlying graph are switching
/// equivalent iff their fundamental cycle gains agree.
pub fn switching_equivalent(a: &GainGraph, b: &GainGraph) -> Result<bool> {
    if !a.same_underlying(b) {
        return Err(Error::GraphMismatch);
    }
    let tree = SpanningTree::bfs(a)?;
    let root_b = tree.root_gains_in(b);
    Ok((0..a.edge_count())
        .filter(|&k| !tree.is_tree_edge(k))
        .all(|k| {
            let e = b.edges()[k];
            let gb = root_b[e.u] * e.gain * root_b[e.v].conj();
            tree.fundamental_gain(a, k).approx_eq(gb)
        }))
}
