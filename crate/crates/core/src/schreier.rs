//! Schreier graphs of the level-n actions and orbital balls of the action on
//! infinite sequences, with the explicit exponent isomorphisms onto the
//! finite models and the infinite graphs.
//!
//! Level-n words are stored as n-bit integers with the first tree letter in
//! the least significant bit; the adding machine is then literally +1 modulo
//! 2^n, and the exponent isomorphism is the identity on representations.

use std::collections::HashMap;

use crate::graph::{neighbors, EdgeLabel, GenLabel, LabeledMultigraph};
use crate::group::{act_omega, gen_a, gen_b, GroupWord};
use crate::words::OmegaWord;
use crate::{Error, Result};

/// The adding machine on level n: +1 mod 2^n.
pub fn a_level(v: u64, n: u32) -> u64 {
    (v + 1) & ((1u64 << n) - 1)
}

/// The generator b on level n: keep the low bits through the first 1, add
/// one to the rest. Fixes 0 and 2^(n−1).
pub fn b_level(v: u64, n: u32) -> u64 {
    if v == 0 {
        return 0;
    }
    let keep = v.trailing_zeros() + 1;
    if keep >= n {
        return v;
    }
    let low = v & ((1 << keep) - 1);
    let high = (v >> keep) + 1;
    low | ((high & ((1 << (n - keep)) - 1)) << keep)
}

pub fn b_inv_level(v: u64, n: u32) -> u64 {
    if v == 0 {
        return 0;
    }
    let keep = v.trailing_zeros() + 1;
    if keep >= n {
        return v;
    }
    let low = v & ((1 << keep) - 1);
    let high = (v >> keep).wrapping_sub(1);
    low | ((high & ((1 << (n - keep)) - 1)) << keep)
}

/// The level-n Schreier graph: one undirected edge {v, s(v)} per vertex and
/// generator s ∈ {a, b}, loops included.
#[derive(Clone, Debug)]
pub struct SchreierLevelGraph {
    pub n: u32,
    pub graph: LabeledMultigraph,
}

pub fn gamma_n(n: u32) -> Result<SchreierLevelGraph> {
    if n == 0 || n > 20 {
        return Err(Error::Invalid(format!(
            "level {n} out of the materializable range 1..=20"
        )));
    }
    let size = 1u64 << n;
    let mut graph = LabeledMultigraph::new();
    for v in 0..size {
        graph.add_vertex(v as i64);
    }
    for v in 0..size {
        graph.add_edge(v as i64, a_level(v, n) as i64, EdgeLabel::Gen(GenLabel::A));
        graph.add_edge(v as i64, b_level(v, n) as i64, EdgeLabel::Gen(GenLabel::B));
    }
    Ok(SchreierLevelGraph { n, graph })
}

/// Theorem 9's level map φ_n(a^m(0^n)) = m. With the integer representation
/// this is the identity; kept explicit so the isomorphism check names it.
pub fn iso_theorem9_level(v: i64) -> i64 {
    v
}

/// An exact radius-r ball of the orbital Schreier graph, vertices in
/// canonical form and indexed densely in discovery order.
#[derive(Clone, Debug)]
pub struct OrbitalBall {
    pub center: OmegaWord,
    pub r: u32,
    pub words: Vec<OmegaWord>,
    pub dist: Vec<u32>,
    /// Vertex keys are the dense indices into `words`.
    pub graph: LabeledMultigraph,
}

impl OrbitalBall {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn distance_map(&self) -> HashMap<i64, u32> {
        self.dist
            .iter()
            .enumerate()
            .map(|(i, &d)| (i as i64, d))
            .collect()
    }
}

/// Breadth-first ball in Γ_ω using the generator actions, deduplicated by
/// canonical form; the induced subgraph carries one edge per (vertex,
/// generator) pair with both endpoints inside.
pub fn orbital_ball(omega: &OmegaWord, r: u32) -> OrbitalBall {
    let a = gen_a();
    let a_inv = a.inverse();
    let b = gen_b();
    let b_inv = b.inverse();
    let gens: [&GroupWord; 4] = [&a, &a_inv, &b, &b_inv];

    let mut words = vec![omega.clone()];
    let mut dist = vec![0u32];
    let mut index: HashMap<OmegaWord, usize> = HashMap::new();
    index.insert(omega.clone(), 0);
    let mut frontier = vec![0usize];
    for d in 1..=r {
        let mut next = Vec::new();
        for &i in &frontier {
            let from = words[i].clone();
            for g in gens {
                let to = act_omega(g, &from);
                if !index.contains_key(&to) {
                    let j = words.len();
                    index.insert(to.clone(), j);
                    words.push(to);
                    dist.push(d);
                    next.push(j);
                }
            }
        }
        frontier = next;
    }

    let mut graph = LabeledMultigraph::new();
    for i in 0..words.len() {
        graph.add_vertex(i as i64);
    }
    for (i, w) in words.iter().enumerate() {
        for (g, label) in [(&a, GenLabel::A), (&b, GenLabel::B)] {
            let to = act_omega(g, w);
            if let Some(&j) = index.get(&to) {
                graph.add_edge(i as i64, j as i64, EdgeLabel::Gen(label));
            }
        }
    }
    OrbitalBall {
        center: omega.clone(),
        r,
        words,
        dist,
        graph,
    }
}

/// Theorem 9's orbital map φ(a^m(ω)) = m on the ball vertices, by 2-adic
/// subtraction, with an adjacency validation of the induced map against the
/// X_ω oracle on interior vertices.
pub fn iso_theorem9_orbital(ball: &OrbitalBall) -> Result<Vec<i64>> {
    let exps: Vec<i64> = ball
        .words
        .iter()
        .map(|w| w.exponent_from(&ball.center))
        .collect::<Result<_>>()?;
    for (i, w) in ball.words.iter().enumerate() {
        if ball.dist[i] + 1 > ball.r {
            continue;
        }
        // Every generator image of an interior vertex must map to an X_ω
        // neighbor of the image (or to the vertex itself for the b-loop).
        let image_neighbors: Vec<i64> = neighbors(&ball.center, exps[i])?
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        for g in [gen_a(), gen_a().inverse(), gen_b(), gen_b().inverse()] {
            let to = act_omega(&g, w);
            let j = ball
                .words
                .iter()
                .position(|u| *u == to)
                .expect("interior image stays in the ball");
            if exps[j] != exps[i] && !image_neighbors.contains(&exps[j]) {
                return Err(Error::Invalid(format!(
                    "exponent map broke adjacency at m = {}",
                    exps[i]
                )));
            }
        }
    }
    Ok(exps)
}

/// Finite-level surrogate of Proposition 8: Γ_n is connected, and every
/// b-move is the adding-machine power 2^(t+1) predicted by the Theorem 9
/// proof, where t is the position of the first 1.
pub fn orbit_check_prop8(n: u32) -> Result<bool> {
    if n == 0 || n > 20 {
        return Err(Error::Invalid(format!("level {n} out of range 1..=20")));
    }
    let size = 1u64 << n;
    let mask = size - 1;
    for v in 1..size {
        let t = v.trailing_zeros() as u64;
        let expect = (v + (1u64 << (t + 1))) & mask;
        if b_level(v, n) != expect {
            return Ok(false);
        }
    }
    // Connectivity: the a-edges alone form a 2^n-cycle, so reaching every
    // vertex from 0 by repeated +1 is the whole check.
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{certificate_from_parts, graph_ball_certificate};
    use crate::graph::{model_graph, omega_ball, validate_iso};
    use crate::group::act_finite;
    use crate::words::FiniteWord;

    fn ow(s: &str) -> OmegaWord {
        OmegaWord::parse(s).unwrap()
    }

    #[test]
    fn level_actions_match_group_actions() {
        for n in 1..=10u32 {
            let size = 1u64 << n;
            for v in 0..size {
                let w = FiniteWord::from_value(v, n as usize);
                let av = act_finite(&gen_a(), &w);
                assert_eq!(FiniteWord::from_value(a_level(v, n), n as usize), av);
                let bv = act_finite(&gen_b(), &w);
                assert_eq!(FiniteWord::from_value(b_level(v, n), n as usize), bv);
                // b_inv inverts b.
                assert_eq!(b_inv_level(b_level(v, n), n), v);
            }
        }
    }

    #[test]
    fn gamma_small_levels() {
        let g1 = gamma_n(1).unwrap();
        assert_eq!(g1.graph.vertex_count(), 2);
        let edges = g1.graph.sorted_edges();
        assert_eq!(
            edges,
            vec![
                (0, 0, EdgeLabel::Gen(GenLabel::B)),
                (0, 1, EdgeLabel::Gen(GenLabel::A)),
                (0, 1, EdgeLabel::Gen(GenLabel::A)),
                (1, 1, EdgeLabel::Gen(GenLabel::B)),
            ]
        );

        // n = 2: a-cycle 0→1→2→3, b-loops at 0 (= 00) and 2 (= 01),
        // b-edge 1–3 (10–11) doubled, one from each endpoint.
        let g2 = gamma_n(2).unwrap();
        let edges = g2.graph.sorted_edges();
        assert!(edges.contains(&(0, 0, EdgeLabel::Gen(GenLabel::B))));
        assert!(edges.contains(&(2, 2, EdgeLabel::Gen(GenLabel::B))));
        assert_eq!(
            edges
                .iter()
                .filter(|&&(u, v, l)| (u, v, l) == (1, 3, EdgeLabel::Gen(GenLabel::B)))
                .count(),
            2
        );
    }

    #[test]
    fn b_loops_exactly_two() {
        for n in 1..=16u32 {
            let size = 1u64 << n;
            let fixed: Vec<u64> = (0..size).filter(|&v| b_level(v, n) == v).collect();
            assert_eq!(fixed, vec![0, size / 2], "n={n}");
        }
    }

    #[test]
    fn gamma_isomorphic_to_model() {
        for n in 1..=12u32 {
            let g = gamma_n(n).unwrap();
            let m = model_graph(n);
            assert!(
                validate_iso(iso_theorem9_level, &g.graph, &m, true),
                "n={n}"
            );
        }
    }

    #[test]
    fn orbital_ball_small() {
        let b0 = orbital_ball(&ow("(10)"), 0);
        assert_eq!(b0.len(), 1);

        let b1 = orbital_ball(&ow("(0)"), 1);
        let mut words = b1.words.clone();
        words.sort_by_key(|w| format!("{w}"));
        assert_eq!(b1.len(), 3);
        assert!(b1.words.contains(&ow("1(0)")));
        assert!(b1.words.contains(&ow("(1)")));
        // The b-loop at the center is present.
        assert!(b1
            .graph
            .edges()
            .any(|(u, v, l)| u == 0 && v == 0 && l == EdgeLabel::Gen(GenLabel::B)));
    }

    #[test]
    fn cross_oracle_ball_sizes() {
        for om in [ow("(0)"), ow("(10)"), ow("(110)"), ow("1(10)")] {
            for r in 0..=20u32 {
                let orbital = orbital_ball(&om, r);
                let (_, dist) = omega_ball(&om, 0, r).unwrap();
                assert_eq!(orbital.len(), dist.len(), "ω={om} r={r}");
            }
        }
    }

    #[test]
    fn orbital_exponents() {
        let om = ow("(10)");
        let ball = orbital_ball(&om, 6);
        let exps = iso_theorem9_orbital(&ball).unwrap();
        assert_eq!(exps[0], 0);
        // The exponent of a(ω) is 1.
        let a_img = act_omega(&gen_a(), &om);
        let i = ball.words.iter().position(|w| *w == a_img).unwrap();
        assert_eq!(exps[i], 1);
        // Distinct vertices get distinct integers.
        let mut sorted = exps.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), exps.len());
    }

    #[test]
    fn prop8_surrogate() {
        for n in [1u32, 8, 14] {
            assert!(orbit_check_prop8(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn pointed_convergence_gamma_to_orbital() {
        // The r-ball at the prefix vertex of Γ_n converges to the r-ball at
        // ω in Γ_ω.
        for om in [ow("(10)"), ow("(0)"), ow("1(10)")] {
            let r = 3;
            let n = 10;
            let g = gamma_n(n).unwrap();
            let basepoint = om.numeric_prefix(n).unwrap().rem_euclid(1 << n);
            let level_cert = graph_ball_certificate(&g.graph, basepoint, r);
            let ball = orbital_ball(&om, r);
            let orbital_cert = certificate_from_parts(&ball.graph, &ball.distance_map(), r);
            assert_eq!(level_cert, orbital_cert, "ω={om}");
        }
    }
}
