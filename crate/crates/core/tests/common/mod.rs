//! Independent oracles and instance helpers shared by the integration tests.
//!
//! Nothing here calls the library's algorithms; the oracles only read the
//! graph through `order`, `edges`, `gain` and `neighbors`.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::f64::consts::PI;

use gainspec::generate;
use gainspec::{GainGraph, HermitianMatrix, UnitGain};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub mod golden;

pub const EPS: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(g: UnitGain) -> Complex64 {
    Complex64::new(g.re(), g.im())
}

/// Plain complex product of oriented gains along a vertex sequence.
pub fn walk_gain(g: &GainGraph, walk: &[usize]) -> Complex64 {
    walk.windows(2)
        .map(|w| c(g.gain(w[0], w[1]).expect("adjacent")))
        .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
}

pub fn closed_gain(g: &GainGraph, cycle: &[usize]) -> Complex64 {
    let mut w = cycle.to_vec();
    w.push(cycle[0]);
    walk_gain(g, &w)
}

/// Visits every simple cycle once (smallest vertex first, one direction).
/// Stops early when `visit` returns `false`; returns whether it ran to completion.
pub fn for_each_cycle(g: &GainGraph, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let n = g.order();
    let mut on_path = vec![false; n];
    fn dfs(
        g: &GainGraph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let v = *path.last().unwrap();
        for (w, _) in g.neighbors(v) {
            if w == start && path.len() >= 3 && path[1] < v {
                if !visit(path) {
                    return false;
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                let go_on = dfs(g, start, path, on_path, visit);
                path.pop();
                on_path[w] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    for s in 0..n {
        on_path[s] = true;
        let mut path = vec![s];
        if !dfs(g, s, &mut path, &mut on_path, &mut visit) {
            return false;
        }
        on_path[s] = false;
    }
    true
}

pub fn all_cycles(g: &GainGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_cycle(g, |c| {
        out.push(c.to_vec());
        true
    });
    out
}

/// Every simple cycle has gain one.
pub fn oracle_balanced(g: &GainGraph) -> bool {
    for_each_cycle(g, |cyc| (closed_gain(g, cyc) - 1.0).norm() <= EPS)
}

pub fn oracle_antibalanced(g: &GainGraph) -> bool {
    for_each_cycle(g, |cyc| {
        let sign = if cyc.len() % 2 == 0 { 1.0 } else { -1.0 };
        (closed_gain(g, cyc) * sign - 1.0).norm() <= EPS
    })
}

pub fn bfs(g: &GainGraph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for (w, _) in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

pub fn dedup(mut zs: Vec<Complex64>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for z in zs {
        if !out.iter().any(|w| (w - z).norm() <= EPS) {
            out.push(z);
        }
    }
    out
}

/// All simple `s -> t` paths of length `d(s, t)`, by exhaustive DFS.
pub fn brute_shortest_paths(g: &GainGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let d = bfs(g, s)[t].expect("connected");
    let mut out = Vec::new();
    let mut path = vec![s];
    fn go(g: &GainGraph, t: usize, d: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if path.len() - 1 == d {
            if v == t {
                out.push(path.clone());
            }
            return;
        }
        for (w, _) in g.neighbors(v) {
            if !path.contains(&w) {
                path.push(w);
                go(g, t, d, path, out);
                path.pop();
            }
        }
    }
    go(g, t, d, &mut path, &mut out);
    out
}

pub fn brute_gain_set(g: &GainGraph, s: usize, t: usize) -> Vec<Complex64> {
    if s == t {
        return vec![Complex64::new(1.0, 0.0)];
    }
    dedup(brute_shortest_paths(g, s, t).iter().map(|p| walk_gain(g, p)).collect())
}

/// Max Re first, then max Im among the Re ties (`max`); min/min otherwise.
pub fn lex_extreme(zs: &[Complex64], max: bool) -> Complex64 {
    let sign = if max { 1.0 } else { -1.0 };
    let best_re = zs.iter().map(|z| sign * z.re).fold(f64::NEG_INFINITY, f64::max);
    *zs.iter()
        .filter(|z| sign * z.re >= best_re - EPS)
        .max_by(|a, b| (sign * a.im).total_cmp(&(sign * b.im)))
        .unwrap()
}

/// Gain distance matrix straight from the definition; `perm[k]` is the k-th smallest vertex.
pub fn oracle_distance_matrix(g: &GainGraph, perm: &[usize], max: bool) -> Vec<Vec<Complex64>> {
    let n = g.order();
    let mut rank = vec![0; n];
    for (k, &v) in perm.iter().enumerate() {
        rank[v] = k;
    }
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        let di = bfs(g, i);
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = if rank[i] < rank[j] { (i, j) } else { (j, i) };
            let x = lex_extreme(&brute_gain_set(g, a, b), max);
            let x = if a == i { x } else { x.conj() };
            m[i][j] = x * di[j].unwrap() as f64;
        }
    }
    m
}

pub fn oracle_classical(g: &GainGraph) -> Vec<Vec<f64>> {
    (0..g.order())
        .map(|i| bfs(g, i).into_iter().map(|d| d.unwrap() as f64).collect())
        .collect()
}

pub fn rows_close(a: &[Vec<Complex64>], b: &[Vec<Complex64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).norm() <= tol))
}

/// Coefficients `[1, c_1, .., c_n]` of `det(xI - M)` by Faddeev-LeVerrier.
pub fn faddeev_leverrier(m: &[Vec<Complex64>]) -> Vec<f64> {
    let n = m.len();
    let zero = Complex64::new(0.0, 0.0);
    let matmul = |a: &[Vec<Complex64>], b: &[Vec<Complex64>]| -> Vec<Vec<Complex64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut mk = vec![vec![zero; n]; n];
    for k in 1..=n {
        let prev = *coeffs.last().unwrap();
        let mut next = matmul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += prev;
        }
        mk = next;
        let am = matmul(m, &mk);
        let tr: Complex64 = (0..n).map(|i| am[i][i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs.into_iter().map(|z| z.re).collect()
}

pub fn hermitian_rows(m: &HermitianMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
}

/// Even simple cycle through `s` and `t` at opposite positions, gain not one,
/// and `d(s, t)` equal to half its length.
pub fn witness_is_valid(g: &GainGraph, cycle: &[usize], s: usize, t: usize) -> bool {
    let len = cycle.len();
    let mut distinct = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len() == len
        && len >= 4
        && len % 2 == 0
        && (0..len).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % len]))
        && cycle[0] == s
        && cycle[len / 2] == t
        && (closed_gain(g, cycle) - 1.0).norm() > EPS
        && bfs(g, s)[t] == Some(len / 2)
}

// ---------------------------------------------------------------------------
// instance mixtures

/// Gains for a fixed underlying graph drawn from one of several families, so
/// that both verdicts of most predicates show up.
pub fn mixed_gains(g: &GainGraph, rng: &mut ChaCha8Rng) -> GainGraph {
    match rng.random_range(0..5) {
        0 => generate::random_balanced(g, rng),
        1 => generate::with_random_gains(g, rng),
        2 => generate::with_root_of_unity_gains(g, 2, rng),
        3 => generate::with_root_of_unity_gains(g, 4, rng),
        _ => generate::with_root_of_unity_gains(g, 6, rng),
    }
}

// ---------------------------------------------------------------------------
// proptest strategies

pub fn arb_angle() -> impl Strategy<Value = f64> {
    prop_oneof![(0i64..8).prop_map(|k| PI * k as f64 / 4.0), -PI..PI]
}

fn build(n: usize, parents: &[usize], extra: &[bool], angles: &[f64]) -> GainGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            let tree = parents[v - 1] == u;
            if tree || extra[k] {
                edges.push((u, v, UnitGain::from_angle(angles[k])));
            }
            k += 1;
        }
    }
    GainGraph::new(n, edges).unwrap()
}

/// Connected gain graph: random recursive tree plus random extra edges.
pub fn arb_connected(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = GainGraph> {
    (lo..=hi).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        let parents: Vec<_> = (1..n).map(|k| 0..k).collect();
        (
            Just(n),
            parents,
            proptest::collection::vec(proptest::bool::weighted(density), pairs),
            proptest::collection::vec(arb_angle(), pairs),
        )
            .prop_map(|(n, p, e, a)| build(n, &p, &e, &a))
    })
}

pub fn arb_switching(n: usize) -> impl Strategy<Value = Vec<UnitGain>> {
    proptest::collection::vec(-PI..PI, n).prop_map(|a| a.into_iter().map(UnitGain::from_angle).collect())
}

/// Balanced graph: all-ones graph switched by a random function.
pub fn arb_balanced(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = GainGraph> {
    arb_connected(lo, hi, density).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_switching(n)).prop_map(|(g, z)| {
            g.underlying()
                .switch(&gainspec::SwitchingFunction::new(z))
                .unwrap()
        })
    })
}
