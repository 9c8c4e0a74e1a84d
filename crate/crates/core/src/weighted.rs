//! Positively weighted gain graphs and the weighted gain Sachs expansion.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gain::UnitGain;
use crate::graph::GainGraph;
use crate::matrix::HermitianMatrix;
use crate::spectra::{cospectral, eigenvalues_hermitian};

/// Largest order accepted by [`sachs_coefficients`].
pub const DEFAULT_SACHS_BOUND: usize = 12;

/// A gain graph with a positive weight on every edge.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGainGraph {
    base: GainGraph,
    // indexed like base.edges()
    weights: Vec<f64>,
}

impl WeightedGainGraph {
    /// `weights[k]` belongs to `base.edges()[k]`.
    pub fn new(base: GainGraph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != base.edge_count() {
            return Err(Error::Dimension {
                expected: base.edge_count(),
                found: weights.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::NonPositiveWeight(w));
        }
        Ok(WeightedGainGraph { base, weights })
    }

    pub fn uniform(base: GainGraph, weight: f64) -> Result<Self> {
        let weights = vec![weight; base.edge_count()];
        WeightedGainGraph::new(base, weights)
    }

    /// From `(u, v, gain of u -> v, weight)` in any orientation.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, UnitGain, f64)>,
    ) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let base = GainGraph::new(n, edges.iter().map(|&(u, v, g, _)| (u, v, g)))?;
        let mut weights = vec![0.0; base.edge_count()];
        for &(u, v, _, w) in &edges {
            weights[base.edge_index(u, v).expect("edge just inserted")] = w;
        }
        WeightedGainGraph::new(base, weights)
    }

    pub fn base(&self) -> &GainGraph {
        &self.base
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.base.edge_index(u, v).map(|k| self.weights[k])
    }

    /// `A(G_w)`: the weight of each edge, zero elsewhere.
    pub fn weight_matrix(&self) -> HermitianMatrix {
        let n = self.base.order();
        let mut upper = vec![0.0; n * n];
        for (e, w) in self.base.edges().iter().zip(&self.weights) {
            upper[e.u * n + e.v] = *w;
        }
        HermitianMatrix::from_upper(n, |_| 0.0, |i, j| Complex64::new(upper[i * n + j], 0.0))
    }
}

/// `A(Phi_w) = A(Phi) o A(G_w)`.
pub fn weighted_adjacency(wg: &WeightedGainGraph) -> HermitianMatrix {
    wg.base
        .adjacency()
        .hadamard_real(&wg.weight_matrix())
        .expect("same order")
}

/// An unoriented simple cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleCycle {
    /// Starts at the smallest vertex, with `vertices[1] < vertices[last]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub gain: UnitGain,
}

/// Every simple cycle (length at least three), each reported once.
pub fn simple_cycles(g: &GainGraph) -> Vec<SimpleCycle> {
    let n = g.order();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn extend(
        g: &GainGraph,
        root: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<SimpleCycle>,
    ) {
        let v = *path.last().expect("nonempty");
        for (w, _) in g.neighbors(v) {
            if w == root && path.len() >= 3 && path[1] < v {
                let edges = (0..path.len())
                    .map(|k| {
                        g.edge_index(path[k], path[(k + 1) % path.len()])
                            .expect("cycle edge")
                    })
                    .collect();
                let gain = g.cycle_gain(path).expect("cycle of the graph");
                out.push(SimpleCycle {
                    vertices: path.clone(),
                    edges,
                    gain,
                });
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(g, root, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, &mut path, &mut on_path, &mut out);
        on_path[root] = false;
        path.pop();
    }
    out
}

/// One elementary subgraph `H` and its contribution to `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SachsTerm {
    /// Edge indices of `H` (into the base graph's edge list).
    pub edges: Vec<usize>,
    /// `p(H)`.
    pub components: usize,
    /// `c(H)`.
    pub cycles: usize,
    /// `w(H_e)`, product of the isolated-edge weights.
    pub isolated_edge_weight: f64,
    /// `w(H)`, product of all edge weights.
    pub total_weight: f64,
    /// Product of `Re(phi(C))` over the cycles of `H`.
    pub re_gain_product: f64,
    /// `(-1)^p 2^c w(H_e) w(H) prod Re(phi(C))`.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SachsExpansion {
    /// `a_0 .. a_n` with `chi(x) = sum a_i x^{n-i}`.
    pub coefficients: Vec<f64>,
    /// `terms[i]` are the elementary subgraphs on `i` vertices.
    pub terms: Vec<Vec<SachsTerm>>,
}

impl SachsExpansion {
    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }
}

/// Characteristic polynomial coefficients by enumerating elementary
/// subgraphs, with the default size bound.
pub fn sachs_coefficients(wg: &WeightedGainGraph) -> Result<SachsExpansion> {
    sachs_coefficients_bounded(wg, DEFAULT_SACHS_BOUND)
}

pub fn sachs_coefficients_bounded(wg: &WeightedGainGraph, bound: usize) -> Result<SachsExpansion> {
    let g = &wg.base;
    let n = g.order();
    if n > bound || n > 63 {
        return Err(Error::TooLarge { n, bound });
    }
    // cycles grouped by their smallest vertex
    let mut cycles_at: Vec<Vec<(u64, SimpleCycle, f64)>> = vec![Vec::new(); n];
    for cyc in simple_cycles(g) {
        let mask = cyc.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        let w: f64 = cyc.edges.iter().map(|&k| wg.weights[k]).product();
        cycles_at[cyc.vertices[0]].push((mask, cyc, w));
    }

    struct State<'a> {
        wg: &'a WeightedGainGraph,
        cycles_at: &'a [Vec<(u64, SimpleCycle, f64)>],
        edges: Vec<usize>,
        components: usize,
        cycles: usize,
        isolated: f64,
        total: f64,
        re_product: f64,
        terms: Vec<Vec<SachsTerm>>,
    }

    fn visit(st: &mut State<'_>, v: usize, covered: u64) {
        let n = st.wg.base.order();
        if v == n {
            let sign = if st.components % 2 == 0 { 1.0 } else { -1.0 };
            let value = sign
                * 2f64.powi(st.cycles as i32)
                * st.isolated
                * st.total
                * st.re_product;
            let mut edges = st.edges.clone();
            edges.sort_unstable();
            st.terms[covered.count_ones() as usize].push(SachsTerm {
                edges,
                components: st.components,
                cycles: st.cycles,
                isolated_edge_weight: st.isolated,
                total_weight: st.total,
                re_gain_product: st.re_product,
                value,
            });
            return;
        }
        if covered & (1 << v) != 0 {
            visit(st, v + 1, covered);
            return;
        }
        // v outside H
        visit(st, v + 1, covered);
        // v matched by an isolated edge to a later vertex
        let wg = st.wg;
        for &(u, k) in wg.base.neighbor_edges(v) {
            if u > v && covered & (1 << u) == 0 {
                let w = wg.weights[k];
                let saved = (st.isolated, st.total);
                st.edges.push(k);
                st.components += 1;
                st.isolated *= w;
                st.total *= w;
                visit(st, v + 1, covered | 1 << v | 1 << u);
                (st.isolated, st.total) = saved;
                st.components -= 1;
                st.edges.pop();
            }
        }
        // v as the smallest vertex of a cycle
        let cycles_at = st.cycles_at;
        for (mask, cyc, w) in &cycles_at[v] {
            if mask & covered != 0 {
                continue;
            }
            let saved = (st.total, st.re_product);
            let len = st.edges.len();
            st.edges.extend(&cyc.edges);
            st.components += 1;
            st.cycles += 1;
            st.total *= w;
            st.re_product *= cyc.gain.re();
            visit(st, v + 1, covered | mask);
            (st.total, st.re_product) = saved;
            st.components -= 1;
            st.cycles -= 1;
            st.edges.truncate(len);
        }
    }

    let mut st = State {
        wg,
        cycles_at: &cycles_at,
        edges: Vec::new(),
        components: 0,
        cycles: 0,
        isolated: 1.0,
        total: 1.0,
        re_product: 1.0,
        terms: vec![Vec::new(); n + 1],
    };
    visit(&mut st, 0, 0);
    let terms = st.terms;
    let coefficients = terms.iter().map(|ts| ts.iter().map(|t| t.value).sum()).collect();
    Ok(SachsExpansion {
        coefficients,
        terms,
    })
}

/// Monic `prod (x - mu_k)` over the eigenvalues of `m`, as `[1, a_1, .., a_n]`.
pub fn char_poly_from_spectrum(m: &HermitianMatrix) -> Result<Vec<f64>> {
    let spectrum = eigenvalues_hermitian(m)?;
    let mut coeffs = vec![1.0];
    for &mu in spectrum.values() {
        let mut next = coeffs.clone();
        next.push(0.0);
        for k in 1..next.len() {
            next[k] -= mu * coeffs[k - 1];
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// `A(Phi_w)` cospectral with `A(G_w)`, which holds exactly when `Phi` is balanced.
pub fn weighted_balance_cospectral(wg: &WeightedGainGraph, tol: f64) -> Result<bool> {
    wg.base.require_connected()?;
    cospectral(&weighted_adjacency(wg), &wg.weight_matrix(), tol)
}

/// `rho(A(Phi_w)) == rho(A(G_w))`, exactly when `Phi` or `-Phi` is balanced.
pub fn weighted_radius_criterion(wg: &WeightedGainGraph, tol: f64) -> Result<bool> {
    wg.base.require_connected()?;
    let a = eigenvalues_hermitian(&weighted_adjacency(wg))?.spectral_radius();
    let b = eigenvalues_hermitian(&wg.weight_matrix())?.spectral_radius();
    Ok((a - b).abs() <= tol)
}

/// `lambda_max(A(Phi_w)) == lambda_max(A(G_w))`, exactly when `Phi` is balanced.
pub fn weighted_largest_eigenvalue_criterion(wg: &WeightedGainGraph, tol: f64) -> Result<bool> {
    wg.base.require_connected()?;
    let a = eigenvalues_hermitian(&weighted_adjacency(wg))?.largest().unwrap_or(0.0);
    let b = eigenvalues_hermitian(&wg.weight_matrix())?.largest().unwrap_or(0.0);
    Ok((a - b).abs() <= tol)
}
