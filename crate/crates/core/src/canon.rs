//! Canonical forms for pointed balls.
//!
//! A ball is reduced to a `Certificate`, a canonical integer encoding of its
//! pointed multigraph isomorphism type: two balls get equal certificates if
//! and only if there is a basepoint-preserving multigraph isomorphism between
//! them. Canonicalization is exact, by color refinement with full
//! backtracking individualization over the first non-singleton cell and
//! taking the minimum leaf encoding.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{LabeledMultigraph, WindowGraph};
use crate::words::OmegaWord;
use crate::{Error, Result};

/// Canonical encoding of a pointed ball. Equality of certificates is
/// pointed isomorphism of the underlying multigraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u64>);

/// A finite multigraph with loops, ready for canonicalization. Vertices are
/// dense indices; `seed` holds the initial color invariants (distance from
/// the basepoint, loop count, degree).
#[derive(Clone, Debug)]
pub struct BallGraph {
    adj: Vec<Vec<(usize, u32)>>,
    loops: Vec<u32>,
    seed: Vec<(u32, u32, u32)>,
}

impl BallGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn from_edges(order: &[i64], dist: &HashMap<i64, u32>, edges: &[(i64, i64)]) -> Self {
        let index: HashMap<i64, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = order.len();
        let mut counts: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
        let mut loops = vec![0u32; n];
        for &(u, v) in edges {
            let (ui, vi) = (index[&u], index[&v]);
            if ui == vi {
                loops[ui] += 1;
            } else {
                *counts[ui].entry(vi).or_default() += 1;
                *counts[vi].entry(ui).or_default() += 1;
            }
        }
        let adj: Vec<Vec<(usize, u32)>> = counts
            .into_iter()
            .map(|m| {
                let mut v: Vec<_> = m.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let seed = (0..n)
            .map(|i| {
                let deg: u32 =
                    adj[i].iter().map(|&(_, m)| m).sum::<u32>() + 2 * loops[i];
                (dist[&order[i]], loops[i], deg)
            })
            .collect();
        BallGraph { adj, loops, seed }
    }
}

/// One pass of stable color refinement: the new color of a vertex is its old
/// color together with the multiset of (neighbor color, multiplicity) pairs.
fn refine(g: &BallGraph, colors: &mut Vec<u32>) {
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u32)>)> = Vec::with_capacity(colors.len());
        for (v, nbrs) in g.adj.iter().enumerate() {
            let mut around: Vec<(u32, u32)> =
                nbrs.iter().map(|&(w, m)| (colors[w], m)).collect();
            around.sort_unstable();
            sigs.push((colors[v], around));
        }
        // Ranks come from the sorted order of distinct signatures, never
        // from vertex enumeration order, so the coloring is invariant.
        let mut palette: BTreeMap<&(u32, Vec<(u32, u32)>), u32> =
            sigs.iter().map(|s| (s, 0)).collect();
        for (rank, (_, id)) in palette.iter_mut().enumerate() {
            *id = rank as u32;
        }
        let new: Vec<u32> = sigs.iter().map(|s| palette[s]).collect();
        let classes_before = count_classes(colors);
        let classes_after = palette.len();
        *colors = new;
        if classes_after == classes_before {
            return;
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Encodes the graph under a discrete coloring, which is a vertex ordering.
fn encode(g: &BallGraph, colors: &[u32]) -> Certificate {
    let n = g.adj.len();
    let mut pos = vec![0usize; n];
    for (v, &c) in colors.iter().enumerate() {
        pos[c as usize] = v;
    }
    let mut out = Vec::with_capacity(4 * n);
    out.push(n as u64);
    for &v in &pos {
        out.push(g.loops[v] as u64);
        let mut row: Vec<(u32, u32)> = g.adj[v]
            .iter()
            .map(|&(w, m)| (colors[w], m))
            .collect();
        row.sort_unstable();
        out.push(row.len() as u64);
        for (c, m) in row {
            out.push(c as u64);
            out.push(m as u64);
        }
    }
    Certificate(out)
}

/// Isomorphism-invariant summary of a stable coloring: one block per color
/// class in rank order, carrying the class size and the (shared) loop count
/// and neighbor-color row of its members.
fn partition_invariant(g: &BallGraph, colors: &[u32]) -> Vec<u64> {
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let mut out = Vec::new();
    for (c, members) in cells {
        let rep = members[0];
        let mut row: Vec<(u32, u32)> = g.adj[rep]
            .iter()
            .map(|&(w, m)| (colors[w], m))
            .collect();
        row.sort_unstable();
        out.push(c as u64);
        out.push(members.len() as u64);
        out.push(g.loops[rep] as u64);
        out.push(row.len() as u64);
        for (cw, m) in row {
            out.push(cw as u64);
            out.push(m as u64);
        }
    }
    out
}

/// Canonical search over individualization branches. `colors` must already
/// be stable under refinement. The certificate is the concatenated chain of
/// partition invariants down the chosen path plus the leaf encoding; at each
/// node only branches whose refined partition attains the minimal invariant
/// survive, which prunes the tree without losing exactness (the pruning key
/// is itself part of the certificate).
fn search(g: &BallGraph, colors: &[u32]) -> Certificate {
    let n = colors.len();
    if count_classes(colors) == n {
        return encode(g, colors);
    }
    // First non-singleton cell, by color value.
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cell = cells.into_values().find(|c| c.len() > 1).unwrap();
    let fresh = n as u32;
    let mut branches: Vec<(Vec<u64>, Vec<u32>)> = cell
        .into_iter()
        .map(|v| {
            let mut branch = colors.to_vec();
            branch[v] = fresh;
            refine(g, &mut branch);
            (partition_invariant(g, &branch), branch)
        })
        .collect();
    let min_inv = branches.iter().map(|(inv, _)| inv.clone()).min().unwrap();
    branches.retain(|(inv, _)| *inv == min_inv);
    let mut best: Option<Certificate> = None;
    for (_, branch) in branches {
        let cert = search(g, &branch);
        if best.as_ref().map_or(true, |b| cert < *b) {
            best = Some(cert);
        }
    }
    let mut out = min_inv;
    out.extend_from_slice(&best.unwrap().0);
    Certificate(out)
}

/// Canonical certificate of a prepared ball.
pub fn canonical_certificate(g: &BallGraph) -> Certificate {
    assert!(!g.adj.is_empty());
    let mut palette: BTreeMap<(u32, u32, u32), u32> =
        g.seed.iter().map(|&s| (s, 0)).collect();
    for (rank, (_, id)) in palette.iter_mut().enumerate() {
        *id = rank as u32;
    }
    let mut colors: Vec<u32> = g.seed.iter().map(|s| palette[s]).collect();
    refine(g, &mut colors);
    let mut out = partition_invariant(g, &colors);
    out.extend_from_slice(&search(g, &colors).0);
    Certificate(out)
}

/// Certificate of a ball already materialized as an induced multigraph with
/// its distance map, as produced by `graph::omega_ball`.
pub fn certificate_from_parts(
    ball: &LabeledMultigraph,
    dist: &HashMap<i64, u32>,
    _r: u32,
) -> Certificate {
    let mut order: Vec<i64> = dist.keys().copied().collect();
    order.sort_unstable();
    let edges: Vec<(i64, i64)> = ball.edges().map(|(u, v, _)| (u, v)).collect();
    canonical_certificate(&BallGraph::from_edges(&order, dist, &edges))
}

/// Distances from `center` inside a finite multigraph; loops do not shorten
/// anything.
fn graph_distances(g: &LabeledMultigraph, center: i64, r: u32) -> HashMap<i64, u32> {
    let adj = g.adjacency_simple();
    let start = g.vertex_index(center).expect("center in graph");
    let mut dist: HashMap<usize, u32> = HashMap::new();
    dist.insert(start, 0);
    let mut frontier = vec![start];
    for d in 1..=r {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist.into_iter()
        .map(|(i, d)| (g.vertices()[i], d))
        .collect()
}

/// Certificate of the `r`-ball around `center` inside a finite graph, taken
/// as the induced multigraph on the ball vertices.
pub fn graph_ball_certificate(g: &LabeledMultigraph, center: i64, r: u32) -> Certificate {
    let dist = graph_distances(g, center, r);
    let mut order: Vec<i64> = dist.keys().copied().collect();
    order.sort_unstable();
    let edges: Vec<(i64, i64)> = g
        .edges()
        .filter(|(u, v, _)| dist.contains_key(u) && dist.contains_key(v))
        .map(|(u, v, _)| (u, v))
        .collect();
    canonical_certificate(&BallGraph::from_edges(&order, &dist, &edges))
}

/// Certificate of the `r`-ball around `center` in a window of the infinite
/// graph. Fails with `IncompleteBall` unless every vertex at distance `< r`
/// has all four incident edges inside the window, which guarantees the ball
/// is the true ball of the infinite graph.
pub fn window_ball_certificate(win: &WindowGraph, center: i64, r: u32) -> Result<Certificate> {
    if !win.is_complete(center) {
        return Err(Error::IncompleteBall { center, r });
    }
    let dist = graph_distances(&win.graph, center, r);
    for (&z, &d) in &dist {
        if d < r && !win.is_complete(z) {
            return Err(Error::IncompleteBall { center, r });
        }
    }
    let mut order: Vec<i64> = dist.keys().copied().collect();
    order.sort_unstable();
    let edges: Vec<(i64, i64)> = win
        .graph
        .edges()
        .filter(|(u, v, _)| dist.contains_key(u) && dist.contains_key(v))
        .map(|(u, v, _)| (u, v))
        .collect();
    Ok(canonical_certificate(&BallGraph::from_edges(
        &order, &dist, &edges,
    )))
}

/// Certificate of the true `r`-ball of the infinite graph, straight from the
/// adjacency oracle.
pub fn oracle_ball_certificate(omega: &OmegaWord, center: i64, r: u32) -> Result<Certificate> {
    let (ball, dist) = crate::graph::omega_ball(omega, center, r)?;
    Ok(certificate_from_parts(&ball, &dist, r))
}

/// Decides pointed isomorphism of two prepared balls directly, by joint
/// color refinement followed by backtracking matching. Equivalent to
/// comparing canonical certificates but far cheaper when the balls carry
/// many automorphisms, since a yes-instance needs only one matching and a
/// no-instance usually dies in refinement.
pub fn balls_isomorphic(g1: &BallGraph, g2: &BallGraph) -> bool {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if n1 != n2 {
        return false;
    }
    // Joint refinement: both graphs as one disjoint union, so color ranks
    // are comparable across the two parts.
    let mut union_adj = g1.adj.clone();
    union_adj.extend(
        g2.adj
            .iter()
            .map(|nbrs| nbrs.iter().map(|&(w, m)| (w + n1, m)).collect()),
    );
    let mut loops = g1.loops.clone();
    loops.extend_from_slice(&g2.loops);
    let mut seed = g1.seed.clone();
    seed.extend_from_slice(&g2.seed);
    let union = BallGraph {
        adj: union_adj,
        loops,
        seed,
    };
    let mut palette: BTreeMap<(u32, u32, u32), u32> =
        union.seed.iter().map(|&s| (s, 0)).collect();
    for (rank, (_, id)) in palette.iter_mut().enumerate() {
        *id = rank as u32;
    }
    let mut colors: Vec<u32> = union.seed.iter().map(|s| palette[s]).collect();
    refine(&union, &mut colors);
    // Each color class must split evenly across the two parts.
    let mut balance: HashMap<u32, i64> = HashMap::new();
    for (v, &c) in colors.iter().enumerate() {
        *balance.entry(c).or_default() += if v < n1 { 1 } else { -1 };
    }
    if balance.values().any(|&d| d != 0) {
        return false;
    }
    // Match in breadth-first order from the basepoint so every vertex after
    // the first has a mapped neighbor constraining its candidates.
    let mut order: Vec<usize> = (0..n1).collect();
    order.sort_by_key(|&v| (g1.seed[v].0, v));
    let mut candidates: HashMap<u32, Vec<usize>> = HashMap::new();
    for v in 0..n1 {
        candidates.entry(colors[n1 + v]).or_default().push(v);
    }
    let mut map = vec![usize::MAX; n1];
    let mut inv = vec![usize::MAX; n1];
    fn consistent(
        g1: &BallGraph,
        g2: &BallGraph,
        map: &[usize],
        inv: &[usize],
        u: usize,
        t: usize,
    ) -> bool {
        if g1.loops[u] != g2.loops[t] {
            return false;
        }
        for &(w, m) in &g1.adj[u] {
            if map[w] != usize::MAX {
                let hit = g2.adj[t].iter().find(|&&(x, _)| x == map[w]).map(|&(_, m2)| m2);
                if hit != Some(m) {
                    return false;
                }
            }
        }
        for &(x, m2) in &g2.adj[t] {
            if inv[x] != usize::MAX {
                let hit = g1.adj[u].iter().find(|&&(w, _)| w == inv[x]).map(|&(_, m)| m);
                if hit != Some(m2) {
                    return false;
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        g1: &BallGraph,
        g2: &BallGraph,
        order: &[usize],
        colors: &[u32],
        candidates: &HashMap<u32, Vec<usize>>,
        map: &mut [usize],
        inv: &mut [usize],
        depth: usize,
        budget: &mut u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let u = order[depth];
        for &t in &candidates[&colors[u]] {
            if inv[t] == usize::MAX && consistent(g1, g2, map, inv, u, t) {
                map[u] = t;
                inv[t] = u;
                if backtrack(g1, g2, order, colors, candidates, map, inv, depth + 1, budget) {
                    return true;
                }
                map[u] = usize::MAX;
                inv[t] = usize::MAX;
            }
        }
        false
    }
    let mut budget = 50_000_000u64;
    let found = backtrack(
        g1,
        g2,
        &order,
        &colors,
        &candidates,
        &mut map,
        &mut inv,
        0,
        &mut budget,
    );
    if !found && budget == 0 {
        // Exhausted the budget without a proof either way; fall back to the
        // exact canonical comparison.
        return canonical_certificate(g1) == canonical_certificate(g2);
    }
    found
}

/// Builds the prepared `BallGraph` of the true `r`-ball around `center`.
pub fn oracle_ball_graph(omega: &OmegaWord, center: i64, r: u32) -> Result<BallGraph> {
    let (ball, dist) = crate::graph::omega_ball(omega, center, r)?;
    let mut order: Vec<i64> = dist.keys().copied().collect();
    order.sort_unstable();
    let edges: Vec<(i64, i64)> = ball.edges().map(|(u, v, _)| (u, v)).collect();
    Ok(BallGraph::from_edges(&order, &dist, &edges))
}

/// Pointed isomorphism of the `r`-balls at `z1` and `z2` in the infinite
/// graph.
pub fn oracle_balls_isomorphic(omega: &OmegaWord, z1: i64, z2: i64, r: u32) -> Result<bool> {
    let a = oracle_ball_graph(omega, z1, r)?;
    let b = oracle_ball_graph(omega, z2, r)?;
    Ok(balls_isomorphic(&a, &b))
}
