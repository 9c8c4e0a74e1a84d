//! Hop distances and the distinct gains realized by shortest paths.
//!
//! Gain sets are propagated over the shortest-path DAG of each source. No
//! pruning is possible: `Re` of a product is not monotone under
//! multiplication by unit gains, so every distinct gain is kept.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::gain::{UnitGain, EPS_GAIN};
use crate::graph::GainGraph;

/// Default bound on the number of paths produced by [`enumerate_shortest_paths`].
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Hop distances from `source`; errors on a disconnected graph.
pub fn bfs_distances(g: &GainGraph, source: usize) -> Result<Vec<usize>> {
    g.check_vertex(source)?;
    let dist = raw_bfs(g, source);
    if dist.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(dist)
}

fn raw_bfs(g: &GainGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbor_edges(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The classical distance matrix `D(G)` as hop counts.
pub fn all_pairs_distances(g: &GainGraph) -> Result<Vec<Vec<usize>>> {
    (0..g.order()).map(|s| bfs_distances(g, s)).collect()
}

/// A set of unit gains deduplicated under [`EPS_GAIN`].
///
/// Gains are bucketed on a grid of spacing `EPS_GAIN`; membership checks look
/// at the neighboring buckets too, so near-boundary pairs are still merged.
#[derive(Clone, Debug, Default)]
pub struct GainSet {
    gains: Vec<UnitGain>,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl GainSet {
    pub fn new() -> Self {
        GainSet::default()
    }

    fn key(g: UnitGain) -> (i64, i64) {
        (
            (g.re() / EPS_GAIN).round() as i64,
            (g.im() / EPS_GAIN).round() as i64,
        )
    }

    pub fn contains(&self, g: UnitGain) -> bool {
        let (kr, ki) = GainSet::key(g);
        for dr in -1..=1 {
            for di in -1..=1 {
                if let Some(ids) = self.buckets.get(&(kr + dr, ki + di)) {
                    if ids.iter().any(|&k| self.gains[k].approx_eq(g)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Inserts `g` unless an equal gain is present; returns whether it was new.
    pub fn insert(&mut self, g: UnitGain) -> bool {
        if self.contains(g) {
            return false;
        }
        self.buckets
            .entry(GainSet::key(g))
            .or_default()
            .push(self.gains.len());
        self.gains.push(g);
        true
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = UnitGain> + '_ {
        self.gains.iter().copied()
    }

    /// Gains sorted lexicographically by `(Re, Im)`.
    pub fn into_sorted(self) -> Vec<UnitGain> {
        let mut v = self.gains;
        v.sort_by(|a, b| a.re().total_cmp(&b.re()).then(a.im().total_cmp(&b.im())));
        v
    }
}

impl FromIterator<UnitGain> for GainSet {
    fn from_iter<I: IntoIterator<Item = UnitGain>>(iter: I) -> Self {
        let mut set = GainSet::new();
        for g in iter {
            set.insert(g);
        }
        set
    }
}

/// The distinct gains over all shortest `source -> target` paths.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestPathGainSet {
    pub source: usize,
    pub target: usize,
    pub dist: usize,
    /// Distinct gains sorted lexicographically by `(Re, Im)`.
    pub gains: Vec<UnitGain>,
    /// Number of shortest paths, saturating at `u64::MAX`.
    pub path_count: u64,
    pub count_saturated: bool,
}

impl ShortestPathGainSet {
    /// All shortest paths share one gain.
    pub fn is_singleton(&self) -> bool {
        self.gains.len() == 1
    }
}

/// Shortest-path gain sets from one source to every vertex.
fn source_gain_sets(g: &GainGraph, source: usize) -> Result<Vec<ShortestPathGainSet>> {
    let dist = bfs_distances(g, source)?;
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| dist[v]);

    let mut sets: Vec<GainSet> = vec![GainSet::new(); n];
    let mut counts = vec![0u64; n];
    let mut saturated = vec![false; n];
    sets[source].insert(UnitGain::ONE);
    counts[source] = 1;
    for &v in &order {
        if v == source {
            continue;
        }
        let mut set = GainSet::new();
        let mut count = 0u64;
        let mut sat = false;
        for (u, gain_uv) in g.neighbors(v).map(|(u, gvu)| (u, gvu.conj())) {
            if dist[u] + 1 != dist[v] {
                continue;
            }
            for h in sets[u].iter() {
                set.insert(h * gain_uv);
            }
            let (sum, overflow) = count.overflowing_add(counts[u]);
            sat |= overflow || saturated[u];
            count = if overflow { u64::MAX } else { sum };
        }
        sets[v] = set;
        counts[v] = count;
        saturated[v] = sat;
    }
    Ok(sets
        .into_iter()
        .enumerate()
        .map(|(t, set)| ShortestPathGainSet {
            source,
            target: t,
            dist: dist[t],
            gains: set.into_sorted(),
            path_count: counts[t],
            count_saturated: saturated[t],
        })
        .collect())
}

/// Distinct shortest-path gains between `s` and `t`.
pub fn shortest_gain_set(g: &GainGraph, s: usize, t: usize) -> Result<ShortestPathGainSet> {
    g.check_vertex(t)?;
    let mut all = source_gain_sets(g, s)?;
    Ok(all.swap_remove(t))
}

/// Gain sets for every ordered pair; `sets[s][t]`.
#[derive(Clone, Debug)]
pub struct GainSetTable {
    sets: Vec<Vec<ShortestPathGainSet>>,
}

impl GainSetTable {
    pub fn new(g: &GainGraph) -> Result<Self> {
        g.require_connected()?;
        let sets = (0..g.order())
            .map(|s| source_gain_sets(g, s))
            .collect::<Result<_>>()?;
        Ok(GainSetTable { sets })
    }

    pub fn order(&self) -> usize {
        self.sets.len()
    }

    pub fn get(&self, s: usize, t: usize) -> &ShortestPathGainSet {
        &self.sets[s][t]
    }

    pub fn dist(&self, s: usize, t: usize) -> usize {
        self.sets[s][t].dist
    }

    /// Unordered pairs `s < t`.
    pub fn pairs(&self) -> impl Iterator<Item = &ShortestPathGainSet> {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().skip(s + 1))
    }
}

/// All shortest `s -> t` paths, in ascending-neighbor DFS order; fails if
/// there are more than `cap` of them.
pub fn enumerate_shortest_paths(
    g: &GainGraph,
    s: usize,
    t: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if cap == 0 {
        return Err(Error::Precondition("path cap must be positive".into()));
    }
    g.check_vertex(s)?;
    let to_target = bfs_distances(g, t)?;
    let mut out = Vec::new();
    let mut path = vec![s];
    let explosion = Error::PathExplosion {
        from: s,
        to: t,
        cap,
    };
    fn walk(
        g: &GainGraph,
        to_target: &[usize],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        let v = *path.last().expect("nonempty path");
        if to_target[v] == 0 {
            if out.len() == cap {
                return false;
            }
            out.push(path.clone());
            return true;
        }
        for &(w, _) in g.neighbor_edges(v) {
            if to_target[w] + 1 == to_target[v] {
                path.push(w);
                let ok = walk(g, to_target, path, out, cap);
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    if walk(g, &to_target, &mut path, &mut out, cap) {
        Ok(out)
    } else {
        Err(explosion)
    }
}

/// Shortest-path counts from `source`, saturating.
pub fn path_counts(g: &GainGraph, source: usize) -> Result<Vec<u64>> {
    let dist = bfs_distances(g, source)?;
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut counts = vec![0u64; g.order()];
    counts[source] = 1;
    for &v in order.iter().skip(1) {
        counts[v] = g
            .neighbor_edges(v)
            .iter()
            .filter(|&&(u, _)| dist[u] + 1 == dist[v])
            .fold(0u64, |acc, &(u, _)| acc.saturating_add(counts[u]));
    }
    Ok(counts)
}

/// Every pair of vertices is joined by a unique shortest path.
pub fn is_geodetic(g: &GainGraph) -> Result<bool> {
    g.require_connected()?;
    for s in 0..g.order() {
        if path_counts(g, s)?.iter().any(|&c| c != 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn cycle(n: usize) -> GainGraph {
        GainGraph::unit(n, (0..n).map(|k| (k, (k + 1) % n))).unwrap()
    }

    fn c4_with(g01: UnitGain, g03: UnitGain) -> GainGraph {
        GainGraph::new(
            4,
            [(0, 1, g01), (1, 2, UnitGain::ONE), (2, 3, UnitGain::ONE), (0, 3, g03)],
        )
        .unwrap()
    }

    fn hypercube(d: usize) -> GainGraph {
        let n = 1 << d;
        let edges = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|(a, b)| a < b));
        GainGraph::unit(n, edges).unwrap()
    }

    #[test]
    fn distance_examples() {
        let p3 = GainGraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(bfs_distances(&p3, 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(bfs_distances(&cycle(4), 0).unwrap(), vec![0, 1, 2, 1]);
        let k4 = GainGraph::unit(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for s in 0..4 {
            let d = bfs_distances(&k4, s).unwrap();
            assert!(d.iter().enumerate().all(|(t, &x)| x == usize::from(t != s)));
        }
        let split = GainGraph::unit(3, [(0, 1)]).unwrap();
        assert_eq!(bfs_distances(&split, 0), Err(Error::Disconnected));
    }

    #[test]
    fn tree_pairs_have_one_gain() {
        let g = GainGraph::new(
            4,
            [(0, 1, UnitGain::I), (1, 2, UnitGain::from_angle(0.4)), (1, 3, UnitGain::NEG_ONE)],
        )
        .unwrap();
        for s in 0..4 {
            for t in 0..4 {
                let set = shortest_gain_set(&g, s, t).unwrap();
                assert_eq!(set.gains.len(), 1);
                assert_eq!(set.path_count, 1);
            }
        }
        let set = shortest_gain_set(&g, 2, 3).unwrap();
        assert_eq!(set.dist, 2);
        let expected = UnitGain::from_angle(0.4).conj() * UnitGain::NEG_ONE;
        assert!(set.gains[0].approx_eq(expected));
    }

    #[test]
    fn c4_one_gain_i_pair_has_two_gains() {
        let g = c4_with(UnitGain::I, UnitGain::ONE);
        let set = shortest_gain_set(&g, 0, 2).unwrap();
        assert_eq!(set.dist, 2);
        assert_eq!(set.path_count, 2);
        assert_eq!(set.gains.len(), 2);
        // sorted by (Re, Im): i then 1
        assert!(set.gains[0].approx_eq(UnitGain::I));
        assert!(set.gains[1].approx_eq(UnitGain::ONE));
    }

    #[test]
    fn c4_conjugate_pair() {
        let w = UnitGain::from_angle(FRAC_PI_3);
        let g = c4_with(w, w.conj());
        let set = shortest_gain_set(&g, 0, 2).unwrap();
        assert_eq!(set.gains.len(), 2);
        assert!(set.gains[0].approx_eq(w.conj()));
        assert!(set.gains[1].approx_eq(w));
    }

    #[test]
    fn diagonal_pair_is_trivial() {
        let set = shortest_gain_set(&cycle(5), 3, 3).unwrap();
        assert_eq!(set.dist, 0);
        assert_eq!(set.gains, vec![UnitGain::ONE]);
    }

    #[test]
    fn enumeration_examples() {
        let g = GainGraph::unit(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(enumerate_shortest_paths(&g, 0, 3, 10).unwrap(), vec![vec![0, 1, 3]]);
        assert_eq!(
            enumerate_shortest_paths(&cycle(4), 0, 2, 10).unwrap(),
            vec![vec![0, 1, 2], vec![0, 3, 2]]
        );
        let q3 = hypercube(3);
        let paths = enumerate_shortest_paths(&q3, 0, 7, 100).unwrap();
        assert_eq!(paths.len(), 6);
        assert!(paths.iter().all(|p| p.len() == 4));
        assert!(matches!(
            enumerate_shortest_paths(&q3, 0, 7, 5),
            Err(Error::PathExplosion { cap: 5, .. })
        ));
        assert!(enumerate_shortest_paths(&q3, 0, 7, 0).is_err());
    }

    #[test]
    fn geodetic_examples() {
        let tree = GainGraph::unit(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert!(is_geodetic(&tree).unwrap());
        assert!(is_geodetic(&cycle(5)).unwrap());
        assert!(!is_geodetic(&cycle(4)).unwrap());
    }

    #[test]
    fn hypercube_counts_match_factorial() {
        let q = hypercube(5);
        assert_eq!(path_counts(&q, 0).unwrap()[31], 120);
        let set = shortest_gain_set(&q, 0, 31).unwrap();
        assert_eq!(set.path_count, 120);
        assert!(!set.count_saturated);
        assert_eq!(set.gains.len(), 1);
    }

    #[test]
    fn gain_set_merges_near_duplicates() {
        let a = UnitGain::from_angle(0.5);
        let b = UnitGain::from_angle(0.5 + 1e-12);
        let c = UnitGain::from_angle(0.5 + 1e-6);
        let set: GainSet = [a, b, c].into_iter().collect();
        assert_eq!(set.len(), 2);
    }
}
