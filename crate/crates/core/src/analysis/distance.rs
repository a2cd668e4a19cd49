//! Geodesic distances, the BH05 distance identity, and exact diameters of
//! the level Schreier graphs.
//!
//! Level graphs are never materialized here: vertices are n-bit integers and
//! the four generator moves are computed on the fly, so breadth-first search
//! runs over flat arrays up to level 20 and beyond.

use std::collections::HashMap;

use crate::graph::LabeledMultigraph;
use crate::schreier::{b_inv_level, b_level};
use crate::{Error, Result};

/// Geodesic distances from one source; vertices not reached are absent.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    pub source: i64,
    pub dist: HashMap<i64, u32>,
}

impl DistanceTable {
    pub fn get(&self, v: i64) -> Option<u32> {
        self.dist.get(&v).copied()
    }
}

/// Plain BFS on a finite multigraph; loops never shorten distances and
/// parallel edges count once.
pub fn bfs(graph: &LabeledMultigraph, source: i64) -> DistanceTable {
    let adj = graph.adjacency_simple();
    let start = graph
        .vertex_index(source)
        .expect("source vertex in the graph");
    let mut dist: Vec<Option<u32>> = vec![None; graph.vertex_count()];
    dist[start] = Some(0);
    let mut frontier = vec![start];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    DistanceTable {
        source,
        dist: dist
            .into_iter()
            .enumerate()
            .filter_map(|(i, d)| d.map(|d| (graph.vertices()[i], d)))
            .collect(),
    }
}

const UNSEEN: u32 = u32::MAX;

/// BFS over the implicit level-n Schreier graph from `source`, distances
/// indexed by vertex integer.
pub fn level_bfs(n: u32, source: u64) -> Vec<u32> {
    assert!(n >= 1 && n <= 26);
    let size = 1usize << n;
    let mut dist = vec![UNSEEN; size];
    dist[source as usize] = 0;
    let mut frontier = vec![source];
    let mut d = 0;
    let mask = (1u64 << n) - 1;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for &v in &frontier {
            for w in [
                (v + 1) & mask,
                v.wrapping_sub(1) & mask,
                b_level(v, n),
                b_inv_level(v, n),
            ] {
                if dist[w as usize] == UNSEEN {
                    dist[w as usize] = d;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// The Theorem 12 proof identity: the distance between 0^m and 0^(m−1)1 at
/// level m = (n²+3n+2)/2, which must come out to n·2^n + 1.
pub fn bh05_distance(n: u32) -> Result<u64> {
    if n == 0 || n > 5 {
        return Err(Error::ExplosionGuard(format!(
            "bh05 level (n²+3n+2)/2 for n = {n} exceeds the search budget"
        )));
    }
    let m = (n * n + 3 * n + 2) / 2;
    let dist = level_bfs(m, 0);
    // 0^(m−1)1 has its single 1 in tree position m, the top bit.
    Ok(dist[1usize << (m - 1)] as u64)
}

/// The certified interval [d, 2d] with d = d(0^n, 0^(n−1)1), which sandwiches
/// the diameter by the Theorem 12 proof.
pub fn diameter_interval(n: u32) -> (u64, u64) {
    let dist = level_bfs(n, 0);
    let d = dist[1usize << (n - 1)] as u64;
    (d, 2 * d)
}

/// Exact diameter of the level-n Schreier graph by eccentricity bounding:
/// repeated BFS from chosen sources tightens per-vertex lower/upper
/// eccentricity bounds until no vertex can beat the best eccentricity seen.
pub fn exact_diameter(n: u32) -> u64 {
    assert!(n >= 1 && n <= 20);
    let size = 1usize << n;
    let mut ecc_lo = vec![0u32; size];
    let mut ecc_hi = vec![u32::MAX; size];
    let mut active: Vec<u32> = (0..size as u32).collect();
    let mut diameter = 0u32;
    let mut pick_high = true;
    // First source: 0, a natural extremal point.
    let mut source = 0u32;
    loop {
        let dist = level_bfs(n, source as u64);
        let ecc = *dist.iter().max().unwrap();
        diameter = diameter.max(ecc);
        active.retain(|&v| {
            let d = dist[v as usize];
            let lo = ecc_lo[v as usize].max(ecc.saturating_sub(d)).max(d);
            let hi = ecc_hi[v as usize].min(ecc + d);
            ecc_lo[v as usize] = lo;
            ecc_hi[v as usize] = hi;
            hi > diameter
        });
        let Some(&next) = (if pick_high {
            active.iter().max_by_key(|&&v| ecc_hi[v as usize])
        } else {
            active.iter().min_by_key(|&&v| ecc_lo[v as usize])
        }) else {
            return diameter as u64;
        };
        pick_high = !pick_high;
        source = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::model_graph;
    use crate::schreier::gamma_n;

    #[test]
    fn bfs_small_model() {
        let g = model_graph(2);
        let t = bfs(&g, 0);
        assert_eq!(t.get(0), Some(0));
        assert_eq!(t.get(2), Some(2));
        assert_eq!(t.get(1), Some(1));
    }

    #[test]
    fn bfs_single_vertex() {
        let mut g = LabeledMultigraph::new();
        g.add_vertex(7);
        let t = bfs(&g, 7);
        assert_eq!(t.dist.len(), 1);
        assert_eq!(t.get(7), Some(0));
    }

    #[test]
    fn level_bfs_matches_graph_bfs() {
        for n in 1..=10u32 {
            let g = gamma_n(n).unwrap();
            let table = bfs(&g.graph, 0);
            let flat = level_bfs(n, 0);
            for (v, &d) in flat.iter().enumerate() {
                assert_eq!(table.get(v as i64), Some(d), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn bfs_adjacent_distances_differ_by_at_most_one() {
        let g = gamma_n(8).unwrap();
        let t = bfs(&g.graph, 3);
        for (u, v, _) in g.graph.edges() {
            let du = t.get(u).unwrap() as i64;
            let dv = t.get(v).unwrap() as i64;
            assert!((du - dv).abs() <= 1);
        }
    }

    #[test]
    fn bh05_small_values() {
        assert_eq!(bh05_distance(1).unwrap(), 3);
        assert_eq!(bh05_distance(2).unwrap(), 9);
        assert!(bh05_distance(6).is_err());
    }

    #[test]
    fn gamma3_distance_example() {
        let dist = level_bfs(3, 0);
        assert_eq!(dist[4], 3); // d(000, 001), the n = 1 BH05 identity
    }

    #[test]
    fn exact_diameter_small() {
        assert_eq!(exact_diameter(1), 1);
        assert_eq!(exact_diameter(2), 2);
        // Brute-force comparison on mid sizes.
        for n in 3..=9u32 {
            let size = 1u64 << n;
            let brute = (0..size)
                .map(|v| *level_bfs(n, v).iter().max().unwrap() as u64)
                .max()
                .unwrap();
            assert_eq!(exact_diameter(n), brute, "n={n}");
        }
    }

    #[test]
    fn diameter_sandwich() {
        for n in 2..=12u32 {
            let (lo, hi) = diameter_interval(n);
            let exact = exact_diameter(n);
            assert!(lo <= exact && exact <= hi, "n={n} {lo} {exact} {hi}");
        }
    }
}
