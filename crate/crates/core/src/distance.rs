//! Auxiliary gains, gain distance matrices and the verdicts built on them.
//!
//! For `s < t` the maximum auxiliary gain is the lexicographic `(Re, Im)`
//! maximum of the shortest-path gain set of `s -> t`, and the value for the
//! opposite orientation is its conjugate. Ties in `Re` are detected within
//! [`EPS_GAIN`]. The minimum auxiliary gain is defined symmetrically.

use std::fmt;

use num_complex::Complex64;

use crate::balance::{is_antibalanced, is_balanced};
use crate::error::{Error, Result};
use crate::gain::{UnitGain, EPS_GAIN};
use crate::graph::GainGraph;
use crate::matrix::HermitianMatrix;
use crate::paths::{is_geodetic, shortest_gain_set, GainSetTable};

/// A total order on the vertices: `perm[k]` is the `k`-th smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    perm: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrder {
    /// `v_1 < v_2 < ... < v_n`.
    pub fn standard(n: usize) -> Self {
        VertexOrder {
            perm: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn reverse(n: usize) -> Self {
        VertexOrder::from_perm((0..n).rev().collect()).expect("reversal is a permutation")
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut rank = vec![usize::MAX; n];
        for (k, &v) in perm.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if rank[v] != usize::MAX {
                return Err(Error::Precondition(format!("vertex {v} repeated in order")));
            }
            rank[v] = k;
        }
        Ok(VertexOrder { perm, rank })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    fn check(&self, g: &GainGraph) -> Result<()> {
        if self.len() == g.order() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: g.order(),
                found: self.len(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extreme {
    Max,
    Min,
}

/// Lexicographic `(Re, Im)` extreme of a nonempty gain set, with `Re` ties
/// detected within [`EPS_GAIN`].
pub fn lexicographic_extreme(gains: &[UnitGain], which: Extreme) -> UnitGain {
    let tied = extreme_re_subset(gains, which);
    let pick = tied.into_iter().reduce(|a, b| match which {
        Extreme::Max if b.im() > a.im() => b,
        Extreme::Min if b.im() < a.im() => b,
        _ => a,
    });
    pick.expect("nonempty gain set")
}

/// Gains whose real part attains the max (or min) within [`EPS_GAIN`].
fn extreme_re_subset(gains: &[UnitGain], which: Extreme) -> Vec<UnitGain> {
    let target = match which {
        Extreme::Max => gains.iter().map(|g| g.re()).fold(f64::NEG_INFINITY, f64::max),
        Extreme::Min => gains.iter().map(|g| g.re()).fold(f64::INFINITY, f64::min),
    };
    gains
        .iter()
        .copied()
        .filter(|g| (g.re() - target).abs() <= EPS_GAIN)
        .collect()
}

fn auxiliary_gain(
    g: &GainGraph,
    order: &VertexOrder,
    s: usize,
    t: usize,
    which: Extreme,
) -> Result<UnitGain> {
    order.check(g)?;
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    g.require_connected()?;
    if s == t {
        return Ok(UnitGain::ONE);
    }
    if order.less(s, t) {
        let set = shortest_gain_set(g, s, t)?;
        Ok(lexicographic_extreme(&set.gains, which))
    } else {
        Ok(auxiliary_gain(g, order, t, s, which)?.conj())
    }
}

/// `phi^<_max(s, t)`; one on the diagonal.
pub fn auxiliary_gain_max(g: &GainGraph, order: &VertexOrder, s: usize, t: usize) -> Result<UnitGain> {
    auxiliary_gain(g, order, s, t, Extreme::Max)
}

/// `phi^<_min(s, t)`; one on the diagonal.
pub fn auxiliary_gain_min(g: &GainGraph, order: &VertexOrder, s: usize, t: usize) -> Result<UnitGain> {
    auxiliary_gain(g, order, s, t, Extreme::Min)
}

/// Auxiliary gain of `i -> j` for every pair, from precomputed gain sets.
fn auxiliary_table(table: &GainSetTable, order: &VertexOrder, which: Extreme) -> Vec<Vec<UnitGain>> {
    let n = table.order();
    let mut out = vec![vec![UnitGain::ONE; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = if order.less(i, j) { (i, j) } else { (j, i) };
            let ab = lexicographic_extreme(&table.get(a, b).gains, which);
            let ij = if a == i { ab } else { ab.conj() };
            out[i][j] = ij;
            out[j][i] = ij.conj();
        }
    }
    out
}

fn gain_distance_matrix(table: &GainSetTable, aux: &[Vec<UnitGain>]) -> HermitianMatrix {
    HermitianMatrix::from_upper(
        table.order(),
        |_| 0.0,
        |i, j| aux[i][j].value() * table.dist(i, j) as f64,
    )
}

/// `D^max_<` and `D^min_<` for one vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrices {
    pub order: VertexOrder,
    pub dmax: HermitianMatrix,
    pub dmin: HermitianMatrix,
}

pub fn distance_matrices(g: &GainGraph, order: &VertexOrder) -> Result<DistanceMatrices> {
    order.check(g)?;
    let table = GainSetTable::new(g)?;
    Ok(distance_matrices_from(&table, order))
}

fn distance_matrices_from(table: &GainSetTable, order: &VertexOrder) -> DistanceMatrices {
    let dmax = gain_distance_matrix(table, &auxiliary_table(table, order, Extreme::Max));
    let dmin = gain_distance_matrix(table, &auxiliary_table(table, order, Extreme::Min));
    DistanceMatrices {
        order: order.clone(),
        dmax,
        dmin,
    }
}

/// Classical distance matrix `D(G)`.
pub fn classical_distance_matrix(g: &GainGraph) -> Result<HermitianMatrix> {
    let table = GainSetTable::new(g)?;
    Ok(HermitianMatrix::from_upper(
        g.order(),
        |_| 0.0,
        |i, j| Complex64::new(table.dist(i, j) as f64, 0.0),
    ))
}

/// A pair whose `Re`-extreme shortest-path gains are a conjugate pair `x +- iy`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderWitness {
    pub s: usize,
    pub t: usize,
    pub extreme: Extreme,
    /// The tied gains of `s -> t`, `Im` descending.
    pub gains: Vec<UnitGain>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderIndependence {
    pub independent: bool,
    pub witness: Option<OrderWitness>,
}

/// Order independence decided from gain sets: every pair's `Re`-maximizing
/// and `Re`-minimizing subsets must each be a single gain.
pub fn is_order_independent(g: &GainGraph) -> Result<OrderIndependence> {
    let table = GainSetTable::new(g)?;
    Ok(order_independence_from(&table))
}

fn order_independence_from(table: &GainSetTable) -> OrderIndependence {
    for set in table.pairs() {
        for extreme in [Extreme::Max, Extreme::Min] {
            let mut tied = extreme_re_subset(&set.gains, extreme);
            if tied.len() > 1 {
                tied.sort_by(|a, b| b.im().total_cmp(&a.im()));
                return OrderIndependence {
                    independent: false,
                    witness: Some(OrderWitness {
                        s: set.source,
                        t: set.target,
                        extreme,
                        gains: tied,
                    }),
                };
            }
        }
    }
    OrderIndependence {
        independent: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilityWitness {
    pub s: usize,
    pub t: usize,
    pub gains: Vec<UnitGain>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Compatibility {
    pub compatible: bool,
    /// `D(Phi)` when compatible.
    pub matrix: Option<HermitianMatrix>,
    /// First pair `s < t` (lexicographically) with more than one gain.
    pub witness: Option<CompatibilityWitness>,
}

/// Distance compatibility: every pair's shortest paths share one gain.
pub fn is_distance_compatible(g: &GainGraph) -> Result<Compatibility> {
    let table = GainSetTable::new(g)?;
    Ok(compatibility_from(&table))
}

fn compatibility_from(table: &GainSetTable) -> Compatibility {
    if let Some(set) = table.pairs().find(|set| !set.is_singleton()) {
        return Compatibility {
            compatible: false,
            matrix: None,
            witness: Some(CompatibilityWitness {
                s: set.source,
                t: set.target,
                gains: set.gains.clone(),
            }),
        };
    }
    let n = table.order();
    let matrix = HermitianMatrix::from_upper(
        n,
        |_| 0.0,
        |i, j| table.get(i, j).gains[0].value() * table.dist(i, j) as f64,
    );
    Compatibility {
        compatible: true,
        matrix: Some(matrix),
        witness: None,
    }
}

/// The four classes every connected gain graph falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    /// Balanced, anti-balanced or geodetic (hence `D^max = D^min`).
    A,
    /// None of the three, order independent, `D^max = D^min`.
    B,
    /// None of the three, order independent, `D^max != D^min`.
    C,
    /// None of the three and order dependent.
    D,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphClass::A => "A",
            GraphClass::B => "B",
            GraphClass::C => "C",
            GraphClass::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: GraphClass,
    pub balanced: bool,
    pub antibalanced: bool,
    pub geodetic: bool,
    pub order_independent: bool,
    pub compatible: bool,
}

impl Classification {
    pub fn of(g: &GainGraph) -> Result<Self> {
        let table = GainSetTable::new(g)?;
        let balanced = is_balanced(g)?.is_balanced();
        let antibalanced = is_antibalanced(g)?;
        let geodetic = is_geodetic(g)?;
        let order_independent = order_independence_from(&table).independent;
        let compatible = compatibility_from(&table).compatible;
        let class = if balanced || antibalanced || geodetic {
            debug_assert!(compatible);
            GraphClass::A
        } else if !order_independent {
            GraphClass::D
        } else if compatible {
            GraphClass::B
        } else {
            GraphClass::C
        };
        Ok(Classification {
            class,
            balanced,
            antibalanced,
            geodetic,
            order_independent,
            compatible,
        })
    }
}

pub fn classify(g: &GainGraph) -> Result<GraphClass> {
    Ok(Classification::of(g)?.class)
}

fn completion(g: &GainGraph, order: &VertexOrder, which: Extreme) -> Result<GainGraph> {
    order.check(g)?;
    let table = GainSetTable::new(g)?;
    let aux = auxiliary_table(&table, order, which);
    let n = g.order();
    let mut edges: Vec<(usize, usize, UnitGain)> =
        g.edges().iter().map(|e| (e.u, e.v, e.gain)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                edges.push((i, j, aux[i][j]));
            }
        }
    }
    GainGraph::new(n, edges)
}

/// `K^{D^max_<}(Phi)`: original edges kept, non-adjacent pairs joined with
/// the maximum auxiliary gain.
pub fn completion_max(g: &GainGraph, order: &VertexOrder) -> Result<GainGraph> {
    completion(g, order, Extreme::Max)
}

/// `K^{D^min_<}(Phi)`.
pub fn completion_min(g: &GainGraph, order: &VertexOrder) -> Result<GainGraph> {
    completion(g, order, Extreme::Min)
}
