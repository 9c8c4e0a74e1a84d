//! Random instance generators for tests, benchmarks and experiments.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::gain::UnitGain;
use crate::graph::{GainGraph, SwitchingFunction};
use crate::matrix::HermitianMatrix;
use crate::paths::is_geodetic;
use crate::structure::{block_decomposition, is_two_connected};
use crate::weighted::WeightedGainGraph;

const MAX_REJECTIONS: usize = 10_000;

pub fn random_gain<R: Rng + ?Sized>(rng: &mut R) -> UnitGain {
    UnitGain::from_angle(rng.random_range(-PI..PI))
}

/// A uniformly chosen `k`-th root of unity.
pub fn random_root_of_unity<R: Rng + ?Sized>(k: u32, rng: &mut R) -> UnitGain {
    let j = rng.random_range(0..k.max(1)) as i64;
    UnitGain::from_pi_fraction(2 * j, k.max(1) as i64).expect("nonzero denominator")
}

pub fn random_switching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SwitchingFunction {
    SwitchingFunction::new((0..n).map(|_| random_gain(rng)).collect())
}

fn random_spanning_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (1..n)
        .map(|k| (perm[rng.random_range(0..k)], perm[k]))
        .collect()
}

/// Connected `G(n, p)` with all gains one, by rejection; after too many
/// rejections a random spanning tree is added to the last sample.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GainGraph {
    let sample = |rng: &mut R| -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        edges
    };
    let mut edges = Vec::new();
    for _ in 0..MAX_REJECTIONS {
        edges = sample(rng);
        let g = GainGraph::unit(n, edges.iter().copied()).expect("simple graph");
        if g.is_connected() {
            return g;
        }
    }
    for (u, v) in random_spanning_tree(n, rng) {
        let (a, b) = (u.min(v), u.max(v));
        if !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    GainGraph::unit(n, edges).expect("simple graph")
}

/// Same underlying graph with independent uniform gains.
pub fn with_random_gains<R: Rng + ?Sized>(g: &GainGraph, rng: &mut R) -> GainGraph {
    g.map_gains(|_| random_gain(rng))
}

/// Same underlying graph with gains drawn from the `k`-th roots of unity.
pub fn with_root_of_unity_gains<R: Rng + ?Sized>(g: &GainGraph, k: u32, rng: &mut R) -> GainGraph {
    g.map_gains(|_| random_root_of_unity(k, rng))
}

/// The all-ones graph on the same edges switched by a random function.
pub fn random_balanced<R: Rng + ?Sized>(g: &GainGraph, rng: &mut R) -> GainGraph {
    let zeta = random_switching(g.order(), rng);
    g.underlying().switch(&zeta).expect("matching order")
}

pub fn random_weights<R: Rng + ?Sized>(g: &GainGraph, lo: f64, hi: f64, rng: &mut R) -> WeightedGainGraph {
    let w = (0..g.edge_count()).map(|_| rng.random_range(lo..=hi)).collect();
    WeightedGainGraph::new(g.clone(), w).expect("positive weights")
}

/// Connected bipartite graph with all gains one.
pub fn random_bipartite<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GainGraph {
    assert!(n >= 2, "bipartite graph needs two vertices");
    loop {
        let left = rng.random_range(1..n);
        let mut side: Vec<bool> = (0..n).map(|k| k < left).collect();
        side.shuffle(rng);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = GainGraph::unit(n, edges).expect("simple graph");
        if g.is_connected() {
            return g;
        }
    }
}

/// Connected graph with at least two blocks: two random connected pieces
/// glued at one vertex, then relabelled.
pub fn random_multiblock<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GainGraph {
    assert!(n >= 3, "two blocks need three vertices");
    let n1 = rng.random_range(2..n);
    let n2 = n - n1 + 1;
    let a = random_connected_graph(n1, p, rng);
    let b = random_connected_graph(n2, p, rng);
    let glue = rng.random_range(0..n1);
    // b's vertex 0 becomes `glue`, the rest follow a's vertices
    let map_b = |v: usize| if v == 0 { glue } else { n1 + v - 1 };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges = a
        .edges()
        .iter()
        .map(|e| (e.u, e.v))
        .chain(b.edges().iter().map(|e| (map_b(e.u), map_b(e.v))))
        .map(|(u, v)| (perm[u], perm[v]));
    let g = GainGraph::unit(n, edges).expect("simple graph");
    debug_assert!(block_decomposition(&g).map(|d| d.blocks.len() >= 2).unwrap_or(false));
    g
}

/// 2-connected non-geodetic graph (`n >= 4`) by rejection from `G(n, p)`.
pub fn random_two_connected_non_geodetic<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> GainGraph {
    assert!(n >= 4, "non-geodetic 2-connected graphs need four vertices");
    loop {
        let g = random_connected_graph(n, p, rng);
        if is_two_connected(&g).unwrap_or(false) && !is_geodetic(&g).unwrap_or(true) {
            return g;
        }
    }
}

/// Dense random Hermitian matrix with entries in the unit square.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let mut upper = vec![Complex64::new(0.0, 0.0); n * n];
    let mut diag = vec![0.0; n];
    for i in 0..n {
        diag[i] = rng.random_range(-1.0..1.0);
        for j in i + 1..n {
            upper[i * n + j] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    HermitianMatrix::from_upper(n, |i| diag[i], |i, j| upper[i * n + j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::is_balanced;
    use crate::structure::is_bipartite;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 4..9 {
            let g = random_connected_graph(n, 0.3, &mut rng);
            assert!(g.is_connected());
            assert!(is_balanced(&random_balanced(&g, &mut rng)).unwrap().is_balanced());
            assert!(is_bipartite(&random_bipartite(n, 0.5, &mut rng)).unwrap());
            let m = random_multiblock(n, 0.6, &mut rng);
            assert!(m.is_connected());
            assert!(block_decomposition(&m).unwrap().blocks.len() >= 2);
            let t = random_two_connected_non_geodetic(n, 0.5, &mut rng);
            assert!(is_two_connected(&t).unwrap() && !is_geodetic(&t).unwrap());
        }
    }

    #[test]
    fn roots_of_unity() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let z = random_root_of_unity(4, &mut rng);
            assert!([UnitGain::ONE, UnitGain::I, UnitGain::NEG_ONE, UnitGain::I.conj()]
                .iter()
                .any(|w| w.approx_eq(z)));
        }
    }
}
