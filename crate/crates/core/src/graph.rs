//! The gain graph data model and switching.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::matrix::HermitianMatrix;

/// An undirected edge stored with orientation `u -> v`, `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub gain: UnitGain,
}

/// A simple graph whose oriented edges carry unit gains.
///
/// Only the orientation `u -> v` with `u < v` is stored; the opposite
/// orientation is read back as the conjugate, so the adjacency matrix is
/// Hermitian by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GainGraph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl GainGraph {
    /// Builds a gain graph from `(u, v, gain of u -> v)` triples. Edges may be
    /// given in either orientation; they are canonicalized to `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, UnitGain)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v, gain) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            let edge = if u < v {
                Edge { u, v, gain }
            } else {
                Edge {
                    u: v,
                    v: u,
                    gain: gain.conj(),
                }
            };
            canon.push(edge);
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for pair in canon.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(Error::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (k, e) in canon.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(GainGraph {
            n,
            edges: canon,
            adj,
        })
    }

    /// The underlying graph with every gain equal to one.
    pub fn unit(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        GainGraph::new(n, edges.into_iter().map(|(u, v)| (u, v, UnitGain::ONE)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edges in canonical `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order, with the gain of `v -> w`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, UnitGain)> + '_ {
        self.adj[v].iter().map(move |&(w, k)| (w, self.oriented(k, v)))
    }

    pub(crate) fn neighbor_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|pos| list[pos].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Gain of the oriented edge `u -> v`, if present.
    pub fn gain(&self, u: usize, v: usize) -> Option<UnitGain> {
        self.edge_index(u, v).map(|k| self.oriented(k, u))
    }

    #[inline]
    fn oriented(&self, k: usize, from: usize) -> UnitGain {
        let e = self.edges[k];
        if e.u == from {
            e.gain
        } else {
            e.gain.conj()
        }
    }

    /// Replaces every gain by `f(edge)`, keeping the underlying graph.
    pub fn map_gains(&self, mut f: impl FnMut(&Edge) -> UnitGain) -> GainGraph {
        GainGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    gain: f(e),
                    ..*e
                })
                .collect(),
            adj: self.adj.clone(),
        }
    }

    /// `-Phi`.
    pub fn negated(&self) -> GainGraph {
        self.map_gains(|e| -e.gain)
    }

    /// The underlying graph `G` with all gains one.
    pub fn underlying(&self) -> GainGraph {
        self.map_gains(|_| UnitGain::ONE)
    }

    pub fn same_underlying(&self, other: &GainGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.u == b.u && a.v == b.v)
    }

    /// Gains agree edgewise within the gain tolerance.
    pub fn approx_eq(&self, other: &GainGraph) -> bool {
        self.same_underlying(other)
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.gain.approx_eq(b.gain))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `A(Phi)`: entry `(s, t)` is the gain of `s -> t`, zero for non-adjacent pairs.
    pub fn adjacency(&self) -> HermitianMatrix {
        let mut upper = vec![num_complex::Complex64::new(0.0, 0.0); self.n * self.n];
        for e in &self.edges {
            upper[e.u * self.n + e.v] = e.gain.value();
        }
        HermitianMatrix::from_upper(self.n, |_| 0.0, |i, j| upper[i * self.n + j])
    }

    /// Applies `zeta`: the edge `u -> v` gets `zeta(u)^-1 phi(u -> v) zeta(v)`.
    pub fn switch(&self, zeta: &SwitchingFunction) -> Result<GainGraph> {
        if zeta.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: zeta.len(),
            });
        }
        Ok(self.map_gains(|e| zeta[e.u].conj() * e.gain * zeta[e.v]))
    }

    /// Product of the oriented edge gains along `path`.
    pub fn path_gain(&self, path: &[usize]) -> Result<UnitGain> {
        for &v in path {
            self.check_vertex(v)?;
        }
        path.windows(2).try_fold(UnitGain::ONE, |acc, w| {
            self.gain(w[0], w[1])
                .map(|g| acc * g)
                .ok_or(Error::InvalidPath(w[0], w[1]))
        })
    }

    /// Gain of the closed walk `cycle[0] -> cycle[1] -> ... -> cycle[0]`.
    pub fn cycle_gain(&self, cycle: &[usize]) -> Result<UnitGain> {
        let mut closed = cycle.to_vec();
        if let Some(&first) = cycle.first() {
            closed.push(first);
        }
        self.path_gain(&closed)
    }

    /// Subgraph spanned by a set of edges (given by index), relabelled densely.
    /// Returns the subgraph and `local -> global` vertex mapping.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> (GainGraph, Vec<usize>) {
        let mut vertices: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&k| [self.edges[k].u, self.edges[k].v])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local = |g: usize| vertices.binary_search(&g).expect("vertex of subgraph");
        let edges: Vec<_> = edge_ids
            .iter()
            .map(|&k| {
                let e = self.edges[k];
                (local(e.u), local(e.v), e.gain)
            })
            .collect();
        let sub = GainGraph::new(vertices.len(), edges).expect("subgraph of a simple graph is simple");
        (sub, vertices)
    }
}

/// A function `zeta: V -> T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SwitchingFunction(Vec<UnitGain>);

impl SwitchingFunction {
    pub fn new(values: Vec<UnitGain>) -> Self {
        SwitchingFunction(values)
    }

    pub fn identity(n: usize) -> Self {
        SwitchingFunction(vec![UnitGain::ONE; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[UnitGain] {
        &self.0
    }

    /// The switching function undoing this one.
    pub fn inverse(&self) -> Self {
        SwitchingFunction(self.0.iter().map(|g| g.conj()).collect())
    }
}

impl std::ops::Index<usize> for SwitchingFunction {
    type Output = UnitGain;

    fn index(&self, v: usize) -> &UnitGain {
        &self.0[v]
    }
}
