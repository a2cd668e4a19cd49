//! The §5 contraction experiment: restrictions of long words collapse into
//! the set 𝒩 after logarithmically many levels.
//!
//! Restrictions over all binary prefixes of depth k are enumerated as a set
//! closure S₀ = {g}, Sₖ₊₁ = {w|₀, w|₁ : w ∈ Sₖ}, deduplicated by reduced
//! word; this reaches depth ⌈log₂n⌉·(⌈log₂n⌉+1) without touching the 2^depth
//! prefix tree.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{match_nucleus, restrict, to_syllables, GenLetter, GroupWord};
use crate::words::FiniteWord;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ContractionSample {
    pub word: GroupWord,
    pub depth: u32,
    /// Distinct restrictions at the final depth.
    pub final_set_size: usize,
    pub nucleus_ok: bool,
    pub halving_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub samples: Vec<ContractionSample>,
    pub all_nucleus: bool,
    pub all_halving: bool,
}

fn restriction_closure_step(set: &HashSet<GroupWord>) -> HashSet<GroupWord> {
    let zero = FiniteWord::new(vec![0]).unwrap();
    let one = FiniteWord::new(vec![1]).unwrap();
    let mut next = HashSet::with_capacity(set.len() * 2);
    for w in set {
        next.insert(restrict(w, &zero));
        next.insert(restrict(w, &one));
    }
    next
}

fn ceil_log2(n: usize) -> u32 {
    (n.max(1)).next_power_of_two().trailing_zeros()
}

/// Runs the depth-⌈log₂n⌉·(⌈log₂n⌉+1) nucleus check and the intermediate
/// syllable-halving check (with +1 slack) on one word.
pub fn contraction_check(g: &GroupWord) -> Result<ContractionSample> {
    let n = g.len().max(2);
    let l = ceil_log2(n);
    let depth = l * (l + 1);
    let halving_depth = l + 1;
    let m0 = to_syllables(g).m();

    let mut set: HashSet<GroupWord> = HashSet::new();
    set.insert(g.clone());
    let mut halving_ok = true;
    for step in 1..=depth {
        set = restriction_closure_step(&set);
        if set.len() > 100_000 {
            return Err(Error::ExplosionGuard(format!(
                "restriction closure reached {} words at depth {step}",
                set.len()
            )));
        }
        if step == halving_depth {
            halving_ok = set.iter().all(|w| to_syllables(w).m() <= m0 / 2 + 1);
        }
    }
    let nucleus_ok = set.iter().all(|w| match_nucleus(w).is_some());
    Ok(ContractionSample {
        word: g.clone(),
        depth,
        final_set_size: set.len(),
        nucleus_ok,
        halving_ok,
    })
}

fn random_reduced(rng: &mut impl Rng, len: usize) -> GroupWord {
    let mut w = GroupWord::identity();
    while w.len() < len {
        let l = match rng.gen_range(0..4) {
            0 => GenLetter::A,
            1 => GenLetter::AInv,
            2 => GenLetter::B,
            _ => GenLetter::BInv,
        };
        w.push_reduced(l);
    }
    w
}

/// Seeded sweep of `contraction_check` over random words of length up to
/// `max_len`.
pub fn contraction_experiment(
    sample_size: usize,
    max_len: usize,
    seed: u64,
) -> Result<ContractionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(sample_size);
    for _ in 0..sample_size {
        let len = rng.gen_range(2..=max_len.max(2));
        let g = random_reduced(&mut rng, len);
        samples.push(contraction_check(&g)?);
    }
    Ok(ContractionReport {
        all_nucleus: samples.iter().all(|s| s.nucleus_ok),
        all_halving: samples.iter().all(|s| s.halving_ok),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn powers_of_b_are_immediate() {
        let s = contraction_check(&gw("bbbbb")).unwrap();
        assert!(s.nucleus_ok);
        assert!(s.halving_ok);
    }

    #[test]
    fn ba_power_contracts() {
        let g = gw("ba").pow(8);
        let s = contraction_check(&g).unwrap();
        assert!(s.nucleus_ok, "final set size {}", s.final_set_size);
    }

    #[test]
    fn random_sweep() {
        let report = contraction_experiment(20, 32, 5).unwrap();
        assert!(report.all_nucleus);
        assert!(report.all_halving);
        // Final sets stay tiny compared to the 2^depth prefix tree.
        for s in &report.samples {
            assert!(s.final_set_size < 2000, "{}", s.final_set_size);
        }
    }

    #[test]
    fn depth_formula() {
        assert_eq!(ceil_log2(32), 5);
        assert_eq!(ceil_log2(33), 6);
        let s = contraction_check(&random_reduced(
            &mut ChaCha8Rng::seed_from_u64(1),
            32,
        ))
        .unwrap();
        assert_eq!(s.depth, 30);
    }
}
