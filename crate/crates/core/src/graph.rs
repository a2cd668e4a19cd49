//! The infinite graphs on ℤ indexed by a binary sequence, their partial
//! graphs, finite models, quotients, windows, and the explicit isomorphism
//! maps between them.
//!
//! The infinite graph is never materialized: `level_of` and `neighbors` are
//! exact adjacency oracles, and `window` carves finite induced pieces out of
//! them.

use std::collections::HashMap;

use crate::words::{OmegaWord, TailClass};
use crate::{Error, Result};

/// Edge labels: the construction level of an edge, a generator label on a
/// Schreier graph, or the residual loop absorbing all levels beyond the
/// graph's modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Level(u32),
    Gen(GenLabel),
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLabel {
    A,
    B,
}

impl std::fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeLabel::Level(n) => write!(f, "{n}"),
            EdgeLabel::Gen(GenLabel::A) => write!(f, "a"),
            EdgeLabel::Gen(GenLabel::B) => write!(f, "b"),
            EdgeLabel::Loop => write!(f, "loop"),
        }
    }
}

/// A finite undirected multigraph with loops and labeled edges. Vertices are
/// integer keys; a loop contributes 2 to its endpoint's degree.
#[derive(Clone, Debug, Default)]
pub struct LabeledMultigraph {
    vertices: Vec<i64>,
    index: HashMap<i64, usize>,
    edges: Vec<(usize, usize, EdgeLabel)>,
}

impl LabeledMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, key: i64) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.vertices.len();
        self.vertices.push(key);
        self.index.insert(key, i);
        i
    }

    pub fn add_edge(&mut self, u: i64, v: i64, label: EdgeLabel) {
        let ui = self.add_vertex(u);
        let vi = self.add_vertex(v);
        let (a, b) = if self.vertices[ui] <= self.vertices[vi] {
            (ui, vi)
        } else {
            (vi, ui)
        };
        self.edges.push((a, b, label));
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn contains_vertex(&self, key: i64) -> bool {
        self.index.contains_key(&key)
    }

    /// Edges as `(u, v, label)` with `u ≤ v`.
    pub fn edges(&self) -> impl Iterator<Item = (i64, i64, EdgeLabel)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b, l)| (self.vertices[a], self.vertices[b], l))
    }

    /// Sorted edge list, the deterministic export surface.
    pub fn sorted_edges(&self) -> Vec<(i64, i64, EdgeLabel)> {
        let mut out: Vec<_> = self.edges().collect();
        out.sort();
        out
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, key: i64) -> usize {
        let Some(&i) = self.index.get(&key) else {
            return 0;
        };
        self.edges
            .iter()
            .map(|&(a, b, _)| {
                if a == i && b == i {
                    2
                } else if a == i || b == i {
                    1
                } else {
                    0
                }
            })
            .sum()
    }

    /// Simple adjacency lists over internal indices: loops dropped, parallel
    /// edges merged. The form consumed by breadth-first search.
    pub fn adjacency_simple(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b, _) in &self.edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Adjacency with multiplicities, loops separate: `(neighbors, loops)`.
    pub fn adjacency_multi(&self) -> (Vec<Vec<(usize, u32)>>, Vec<u32>) {
        let n = self.vertices.len();
        let mut counts: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
        let mut loops = vec![0u32; n];
        for &(a, b, _) in &self.edges {
            if a == b {
                loops[a] += 1;
            } else {
                *counts[a].entry(b).or_default() += 1;
                *counts[b].entry(a).or_default() += 1;
            }
        }
        let adj = counts
            .into_iter()
            .map(|m| {
                let mut v: Vec<_> = m.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        (adj, loops)
    }

    pub fn vertex_index(&self, key: i64) -> Option<usize> {
        self.index.get(&key).copied()
    }
}

/// An affine vertex map `z ↦ ±z + shift`. All explicit isomorphisms between
/// the infinite graphs and their quotients take this form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub neg: bool,
    pub shift: i64,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            neg: false,
            shift: 0,
        }
    }

    pub fn translation(shift: i64) -> Self {
        AffineMap { neg: false, shift }
    }

    pub fn apply(&self, z: i64) -> i64 {
        if self.neg {
            self.shift - z
        } else {
            self.shift + z
        }
    }

    pub fn apply_mod(&self, z: i64, modulus: i64) -> i64 {
        self.apply(z).rem_euclid(modulus)
    }
}

/// The level classification of a vertex of the infinite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexLevel {
    /// The unique `n ≥ 1` with `z ≡ −a_n (mod 2^n)`; the vertex carries the
    /// two level-`n` edges `z ± 2^n`.
    Jump(u32),
    /// The unique uncovered vertex of an eventually constant sequence; the
    /// vertex carries a loop.
    LoopHere,
}

/// The unique edge level at `z`, or the loop vertex.
///
/// `z ≡ −a_n (mod 2^n)` holds exactly when the first `n−1` digits of the
/// 2-adic sum `z + ω̂` vanish and the `n`-th does not, so the level is one
/// plus the 2-adic valuation of `z + ω̂`; the loop vertex is the unique `z`
/// with `z + ω̂ = 0`, precomputed in closed form by `tail_class`.
pub fn level_of(omega: &OmegaWord, z: i64) -> Result<VertexLevel> {
    if let TailClass::EventuallyConstant { loop_vertex } = omega.tail_class() {
        if z == loop_vertex {
            return Ok(VertexLevel::LoopHere);
        }
    }
    let cap = 64
        + 64.max(omega.preperiod().len() + omega.period().len())
        + omega.period().len();
    let mut carry = 0u8;
    for i in 0..cap {
        let zd = ((z >> i.min(63)) & 1) as u8;
        let s = zd + omega.digit(i) + carry;
        if s & 1 == 1 {
            return Ok(VertexLevel::Jump(i as u32 + 1));
        }
        carry = s >> 1;
    }
    Err(Error::IterationCapExceeded { z })
}

/// The full multiset of neighbors of `z`: the two level-0 edges plus either
/// the two level-`n` jumps or the loop. The loop is reported as `(z, Loop)`.
pub fn neighbors(omega: &OmegaWord, z: i64) -> Result<Vec<(i64, EdgeLabel)>> {
    let mut out = vec![(z - 1, EdgeLabel::Level(0)), (z + 1, EdgeLabel::Level(0))];
    match level_of(omega, z)? {
        VertexLevel::Jump(n) => {
            let jump = 1i64
                .checked_shl(n)
                .ok_or_else(|| Error::Overflow(format!("level-{n} jump")))?;
            out.push((z - jump, EdgeLabel::Level(n)));
            out.push((z + jump, EdgeLabel::Level(n)));
        }
        VertexLevel::LoopHere => out.push((z, EdgeLabel::Loop)),
    }
    Ok(out)
}

/// A finite induced piece of the infinite graph on a closed interval, with a
/// per-vertex flag telling whether all four incident edges lie inside.
#[derive(Clone, Debug)]
pub struct WindowGraph {
    pub lo: i64,
    pub hi: i64,
    pub graph: LabeledMultigraph,
    complete: Vec<bool>,
}

impl WindowGraph {
    pub fn is_complete(&self, z: i64) -> bool {
        if z < self.lo || z > self.hi {
            return false;
        }
        self.complete[(z - self.lo) as usize]
    }

    pub fn complete_vertices(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..=self.hi).filter(|&z| self.is_complete(z))
    }
}

/// The induced subgraph of the infinite graph on `[lo, hi]`.
pub fn window(omega: &OmegaWord, lo: i64, hi: i64) -> Result<WindowGraph> {
    assert!(lo <= hi);
    let mut graph = LabeledMultigraph::new();
    let mut complete = Vec::with_capacity((hi - lo + 1) as usize);
    for z in lo..=hi {
        graph.add_vertex(z);
        let mut all_in = true;
        for (to, label) in neighbors(omega, z)? {
            if to < lo || to > hi {
                all_in = false;
                continue;
            }
            // Each interior edge is added once, by its smaller endpoint.
            if to > z || (to == z && label == EdgeLabel::Loop) {
                graph.add_edge(z, to, label);
            }
        }
        complete.push(all_in);
    }
    Ok(WindowGraph {
        lo,
        hi,
        graph,
        complete,
    })
}

/// A window of the partial graph containing only edge levels `≤ max_level`.
pub fn partial_graph(
    omega: &OmegaWord,
    max_level: u32,
    lo: i64,
    hi: i64,
) -> Result<WindowGraph> {
    assert!(lo <= hi);
    let mut graph = LabeledMultigraph::new();
    let mut complete = Vec::with_capacity((hi - lo + 1) as usize);
    for z in lo..=hi {
        graph.add_vertex(z);
        let mut all_in = true;
        for (to, label) in neighbors(omega, z)? {
            match label {
                EdgeLabel::Level(n) if n <= max_level => {
                    if to < lo || to > hi {
                        all_in = false;
                    } else if to > z {
                        graph.add_edge(z, to, label);
                    }
                }
                // Higher levels and the loop are not part of the partial graph.
                _ => {}
            }
        }
        complete.push(all_in);
    }
    Ok(WindowGraph {
        lo,
        hi,
        graph,
        complete,
    })
}

/// The finite 4-regular model on ℤ/2^n: the level-0 cycle, one jump family
/// per level `1 ≤ k < n`, a level-`n` loop at `2^(n−1)`, and a residual loop
/// at 0 standing for all higher levels, which collapse there.
pub fn model_graph(n: u32) -> LabeledMultigraph {
    assert!(n >= 1 && n <= 26, "model_graph size 2^{n} out of range");
    let size = 1i64 << n;
    let mut g = LabeledMultigraph::new();
    for z in 0..size {
        g.add_vertex(z);
    }
    for z in 0..size {
        g.add_edge(z, (z + 1) % size, EdgeLabel::Level(0));
    }
    for k in 1..n {
        let jump = 1i64 << k;
        let base = 1i64 << (k - 1);
        let mut w = base;
        while w < size {
            g.add_edge(w, (w + jump) % size, EdgeLabel::Level(k));
            w += jump;
        }
    }
    g.add_edge(size / 2, size / 2, EdgeLabel::Level(n));
    g.add_edge(0, 0, EdgeLabel::Loop);
    g
}

/// The quotient of the infinite graph modulo 2^n: one edge class per orbit of
/// edges under translation by 2^n.
pub fn quotient_mod(omega: &OmegaWord, n: u32) -> Result<LabeledMultigraph> {
    assert!(n >= 1);
    if n > 26 {
        return Err(Error::Overflow(format!("quotient modulus 2^{n}")));
    }
    let size = 1i64 << n;
    let mut g = LabeledMultigraph::new();
    for z in 0..size {
        g.add_vertex(z);
    }
    for z in 0..size {
        g.add_edge(z, (z + 1) % size, EdgeLabel::Level(0));
    }
    for m in 1..=n {
        let jump = 1i64 << m;
        let base = (-omega.coefficient_a(m)?).rem_euclid(jump);
        let mut w = base;
        while w < size {
            g.add_edge(w, (w + jump) % size, EdgeLabel::Level(m));
            w += jump;
        }
    }
    // All levels above n collapse onto a single loop at −(prefix value).
    let residual = (-omega.numeric_prefix(n)?).rem_euclid(size);
    g.add_edge(residual, residual, EdgeLabel::Loop);
    Ok(g)
}

/// Flips letter `n` of the sequence; the returned translation is an
/// isomorphism from the graph of `omega` onto the graph of the flipped word.
pub fn iso_lemma1(omega: &OmegaWord, n: u32) -> Result<(AffineMap, OmegaWord)> {
    assert!(n >= 1);
    if n > 62 {
        return Err(Error::Overflow(format!("letter flip at n = {n}")));
    }
    let x = omega.letter(n as usize) as i64;
    // Φ(z) = z − (x̄ − x)·2^(n−1) = z + (2x − 1)·2^(n−1).
    let shift = (2 * x - 1) * (1i64 << (n - 1));
    Ok((AffineMap::translation(shift), flip_letter(omega, n as usize)))
}

/// The sequence with letter `n` (1-indexed) flipped, recanonicalized.
pub fn flip_letter(omega: &OmegaWord, n: usize) -> OmegaWord {
    let pre_len = omega.preperiod().len();
    let p = omega.period().len();
    let keep = n.max(pre_len);
    let mut pre: Vec<u8> = (0..keep).map(|i| omega.digit(i)).collect();
    pre[n - 1] = 1 - pre[n - 1];
    // keep ≥ pre_len, so the collected period is a rotation of the original.
    let per: Vec<u8> = (0..p).map(|i| omega.digit(keep + i)).collect();
    OmegaWord::from_bits(&pre, &per).expect("flip preserves validity")
}

/// The inversion `z ↦ −z + 1`, an isomorphism onto the complement sequence's
/// graph.
pub fn iso_lemma2(omega: &OmegaWord) -> (AffineMap, OmegaWord) {
    (
        AffineMap { neg: true, shift: 1 },
        omega.complement(),
    )
}

/// Explicit isomorphism between the two infinite graphs when one exists:
/// a translation for cofinal sequences, a reflection for anticofinal ones,
/// and `None` otherwise (the graphs are non-isomorphic).
pub fn iso_theorem1(omega: &OmegaWord, other: &OmegaWord) -> Result<Option<AffineMap>> {
    if omega.is_cofinal(other) {
        let t = cofinal_translation(omega, other)?;
        return Ok(Some(AffineMap::translation(t)));
    }
    if omega.is_anticofinal(other) {
        let bar = other.complement();
        let t = cofinal_translation(omega, &bar)?;
        // Follow the translation by z ↦ −z + 1 into the complement's graph.
        return Ok(Some(AffineMap {
            neg: true,
            shift: 1 - t,
        }));
    }
    Ok(None)
}

/// Net shift `Σ (xᵢ − yᵢ)·2^(i−1)` over the finitely many differing letters.
fn cofinal_translation(omega: &OmegaWord, other: &OmegaWord) -> Result<i64> {
    let bound = omega.preperiod().len().max(other.preperiod().len());
    if bound > 62 {
        return Err(Error::Overflow("cofinal translation".into()));
    }
    let mut shift = 0i64;
    for i in 1..=bound {
        let x = omega.letter(i) as i64;
        let y = other.letter(i) as i64;
        shift += (x - y) * (1i64 << (i - 1));
    }
    Ok(shift)
}

/// The translation `z ↦ z + numeric_prefix(n) (mod 2^n)` carrying the
/// quotient onto the finite model.
pub fn iso_prop4(omega: &OmegaWord, n: u32) -> Result<AffineMap> {
    assert!(n >= 1);
    Ok(AffineMap::translation(omega.numeric_prefix(n)?))
}

/// Checks that `map` is a bijection of vertex sets carrying the edge multiset
/// of `g1` exactly onto that of `g2`. Labels participate only when
/// `ignore_labels` is false.
pub fn validate_iso(
    map: impl Fn(i64) -> i64,
    g1: &LabeledMultigraph,
    g2: &LabeledMultigraph,
    ignore_labels: bool,
) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut seen = std::collections::HashSet::with_capacity(g1.vertex_count());
    for &v in g1.vertices() {
        let image = map(v);
        if !g2.contains_vertex(image) || !seen.insert(image) {
            return false;
        }
    }
    let normalize = |u: i64, v: i64, l: EdgeLabel| {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        (a, b, if ignore_labels { EdgeLabel::Level(0) } else { l })
    };
    let mut mapped: Vec<_> = g1
        .edges()
        .map(|(u, v, l)| normalize(map(u), map(v), l))
        .collect();
    let mut target: Vec<_> = g2.edges().map(|(u, v, l)| normalize(u, v, l)).collect();
    mapped.sort();
    target.sort();
    mapped == target
}

/// The radius-`r` ball around `center` in the infinite graph, built directly
/// from the adjacency oracle: the induced multigraph on the ball vertices and
/// the geodesic distances. Loops never shorten distances.
pub fn omega_ball(
    omega: &OmegaWord,
    center: i64,
    r: u32,
) -> Result<(LabeledMultigraph, HashMap<i64, u32>)> {
    let mut dist: HashMap<i64, u32> = HashMap::new();
    dist.insert(center, 0);
    let mut frontier = vec![center];
    for d in 1..=r {
        let mut next = Vec::new();
        for &z in &frontier {
            for (to, _) in neighbors(omega, z)? {
                if to != z && !dist.contains_key(&to) {
                    dist.insert(to, d);
                    next.push(to);
                }
            }
        }
        frontier = next;
    }
    let mut graph = LabeledMultigraph::new();
    let mut keys: Vec<i64> = dist.keys().copied().collect();
    keys.sort_unstable();
    for &z in &keys {
        graph.add_vertex(z);
    }
    for &z in &keys {
        for (to, label) in neighbors(omega, z)? {
            if dist.contains_key(&to) && (to > z || (to == z && label == EdgeLabel::Loop)) {
                graph.add_edge(z, to, label);
            }
        }
    }
    Ok((graph, dist))
}

/// Pointed-ball comparison of the infinite graph against the finite model:
/// true iff the `r`-ball at 0 is pointed-isomorphic to the `r`-ball at
/// `numeric_prefix(n) mod 2^n` in the model on ℤ/2^n.
pub fn convergence_check(omega: &OmegaWord, n: u32, r: u32) -> Result<bool> {
    let (ball, dist) = omega_ball(omega, 0, r)?;
    let cert = crate::canon::certificate_from_parts(&ball, &dist, r);
    let model = model_graph(n);
    let basepoint = omega.numeric_prefix(n)?.rem_euclid(1i64 << n);
    let model_cert = crate::canon::graph_ball_certificate(&model, basepoint, r);
    Ok(cert == model_cert)
}
