//! Blocks, bipartiteness, blockwise compatibility and even-cycle witnesses.

use std::collections::VecDeque;

use crate::balance::is_balanced;
use crate::distance::is_distance_compatible;
use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::graph::GainGraph;
use crate::paths::{is_geodetic, GainSetTable};

/// Biconnected components as edge sets, plus the cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge indices per block, ascending; blocks ordered by their smallest edge.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

/// Lowpoint DFS from vertex 0 (iterative).
pub fn block_decomposition(g: &GainGraph) -> Result<BlockDecomposition> {
    g.require_connected()?;
    let n = g.order();
    let mut blocks = Vec::new();
    let mut is_cut = vec![false; n];
    if n > 0 {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        // (vertex, edge to parent, next neighbor position)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(0, None, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        let mut root_children = 0;
        while let Some(frame) = stack.last_mut() {
            let (v, parent_edge, pos) = *frame;
            let nbrs = g.neighbor_edges(v);
            if pos < nbrs.len() {
                frame.2 += 1;
                let (w, k) = nbrs[pos];
                if Some(k) == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push(k);
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, Some(k), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(k);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(&(p, _, _)), Some(k)) = (stack.last(), parent_edge) {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != 0 {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == k {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[0] = true;
        }
    }
    blocks.sort_by_key(|b| b[0]);
    Ok(BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    })
}

/// Each block as a densely relabelled gain subgraph with its `local -> global` map.
pub fn block_subgraphs(g: &GainGraph) -> Result<Vec<(GainGraph, Vec<usize>)>> {
    Ok(block_decomposition(g)?
        .blocks
        .iter()
        .map(|b| g.edge_subgraph(b))
        .collect())
}

/// Connected with at least three vertices and no cut vertex.
pub fn is_two_connected(g: &GainGraph) -> Result<bool> {
    Ok(g.order() >= 3 && block_decomposition(g)?.cut_vertices.is_empty())
}

/// BFS two-coloring.
pub fn is_bipartite(g: &GainGraph) -> Result<bool> {
    g.require_connected()?;
    let n = g.order();
    if n == 0 {
        return Ok(true);
    }
    let mut color = vec![u8::MAX; n];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for (w, _) in g.neighbors(v) {
            if color[w] == u8::MAX {
                color[w] = 1 - color[v];
                queue.push_back(w);
            } else if color[w] == color[v] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// On bipartite graphs compatibility coincides with balance; returns the balance verdict.
pub fn bipartite_compatibility_criterion(g: &GainGraph) -> Result<bool> {
    if !is_bipartite(g)? {
        return Err(Error::Precondition("graph is not bipartite".into()));
    }
    Ok(is_balanced(g)?.is_balanced())
}

/// Compatibility verdict for every block, in block order.
pub fn block_compatibilities(g: &GainGraph) -> Result<(BlockDecomposition, Vec<bool>)> {
    let dec = block_decomposition(g)?;
    let verdicts = dec
        .blocks
        .iter()
        .map(|b| {
            let (sub, _) = g.edge_subgraph(b);
            Ok(is_distance_compatible(&sub)?.compatible)
        })
        .collect::<Result<_>>()?;
    Ok((dec, verdicts))
}

/// Conjunction of block compatibilities.
pub fn blockwise_compatibility(g: &GainGraph) -> Result<bool> {
    Ok(block_compatibilities(g)?.1.into_iter().all(|c| c))
}

/// An unbalanced even cycle with diametrically opposite `s`, `t` at graph distance `|C| / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenCycleWitness {
    /// Starts at `s`; `cycle[len / 2] == t`.
    pub cycle: Vec<usize>,
    pub s: usize,
    pub t: usize,
    pub gain: UnitGain,
}

/// Searches an incompatibility witness on a 2-connected non-geodetic graph.
///
/// Pairs are scanned by ascending distance. At the first incompatible pair
/// every closer pair is compatible, so a shortest path's gain is fixed by
/// its first step, and two shortest paths of different gain cannot share an
/// internal vertex.
pub fn incompatibility_witness(g: &GainGraph) -> Result<Option<EvenCycleWitness>> {
    g.require_connected()?;
    if !is_two_connected(g)? {
        return Err(Error::Precondition("graph is not 2-connected".into()));
    }
    if is_geodetic(g)? {
        return Err(Error::Precondition("graph is geodetic".into()));
    }
    let table = GainSetTable::new(g)?;
    let mut pairs: Vec<_> = table.pairs().collect();
    pairs.sort_by_key(|p| (p.dist, p.source, p.target));
    let Some(bad) = pairs.into_iter().find(|p| !p.is_singleton()) else {
        return Ok(None);
    };
    let (s, t, d) = (bad.source, bad.target, bad.dist);

    let via = |u: usize| -> UnitGain {
        g.gain(s, u).expect("neighbor") * table.get(u, t).gains[0]
    };
    let firsts: Vec<usize> = g
        .neighbors(s)
        .map(|(u, _)| u)
        .filter(|&u| table.dist(u, t) + 1 == d)
        .collect();
    let u1 = firsts[0];
    let u2 = *firsts
        .iter()
        .find(|&&u| !via(u).approx_eq(via(u1)))
        .ok_or_else(|| Error::Numerical("no second first step with a different gain".into()))?;

    let descend = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut x = start;
        while x != t {
            x = g
                .neighbors(x)
                .map(|(y, _)| y)
                .find(|&y| table.dist(y, t) + 1 == table.dist(x, t))
                .expect("shortest path continues");
            path.push(x);
        }
        path
    };
    let mut cycle = vec![s];
    cycle.extend(descend(u1));
    let back = descend(u2);
    // back = u2 .. t; append its interior in reverse (t excluded)
    cycle.extend(back[..back.len() - 1].iter().rev());
    let gain = g.cycle_gain(&cycle)?;
    Ok(Some(EvenCycleWitness { cycle, s, t, gain }))
}
