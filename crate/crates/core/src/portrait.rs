//! Depth-truncated portraits of tree automorphisms, hash-consed.
//!
//! A portrait of depth L is a root permutation plus two portraits of depth
//! L−1; interning makes structural equality of ids coincide with equality of
//! actions on level L. Composition and inversion are memoized, so comparing
//! long words on deep levels costs far less than 2^L evaluations.

use std::collections::HashMap;

use crate::group::{GenLetter, GroupWord};

/// Interned portrait handle. Two handles from the same `ActionSpace` are
/// equal iff the truncated actions are equal.
pub type PortraitId = usize;

const LEAF: PortraitId = 0;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    swap: bool,
    c0: PortraitId,
    c1: PortraitId,
}

/// Arena of interned portraits with memoized operations.
pub struct ActionSpace {
    nodes: Vec<Node>,
    index: HashMap<Node, PortraitId>,
    identity_chain: Vec<PortraitId>,
    letter_memo: HashMap<(GenLetter, u32), PortraitId>,
    compose_memo: HashMap<(PortraitId, PortraitId), PortraitId>,
    invert_memo: HashMap<PortraitId, PortraitId>,
}

impl Default for ActionSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl ActionSpace {
    pub fn new() -> Self {
        // Slot 0 is the depth-0 leaf; it never carries children.
        ActionSpace {
            nodes: vec![Node {
                swap: false,
                c0: LEAF,
                c1: LEAF,
            }],
            index: HashMap::new(),
            identity_chain: vec![LEAF],
            letter_memo: HashMap::new(),
            compose_memo: HashMap::new(),
            invert_memo: HashMap::new(),
        }
    }

    fn intern(&mut self, swap: bool, c0: PortraitId, c1: PortraitId) -> PortraitId {
        let node = Node { swap, c0, c1 };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    /// The identity portrait of the given depth.
    pub fn identity(&mut self, depth: u32) -> PortraitId {
        while self.identity_chain.len() <= depth as usize {
            let prev = *self.identity_chain.last().unwrap();
            let next = self.intern(false, prev, prev);
            self.identity_chain.push(next);
        }
        self.identity_chain[depth as usize]
    }

    /// The portrait of one generator letter.
    pub fn letter_action(&mut self, l: GenLetter, depth: u32) -> PortraitId {
        if depth == 0 {
            return LEAF;
        }
        if let Some(&id) = self.letter_memo.get(&(l, depth)) {
            return id;
        }
        let e = self.identity(depth - 1);
        let sub = |space: &mut Self, l| space.letter_action(l, depth - 1);
        let id = match l {
            GenLetter::A => {
                let c1 = sub(self, GenLetter::A);
                self.intern(true, e, c1)
            }
            GenLetter::AInv => {
                let c0 = sub(self, GenLetter::AInv);
                self.intern(true, c0, e)
            }
            GenLetter::B => {
                let c0 = sub(self, GenLetter::B);
                let c1 = sub(self, GenLetter::A);
                self.intern(false, c0, c1)
            }
            GenLetter::BInv => {
                let c0 = sub(self, GenLetter::BInv);
                let c1 = sub(self, GenLetter::AInv);
                self.intern(false, c0, c1)
            }
        };
        self.letter_memo.insert((l, depth), id);
        id
    }

    /// Function composition f∘g (g applied first). Both portraits must have
    /// equal depth; (f∘g)|ₓ = f|_{π_g(x)} ∘ g|ₓ.
    pub fn compose(&mut self, f: PortraitId, g: PortraitId) -> PortraitId {
        if f == LEAF || g == LEAF {
            debug_assert_eq!(f, g, "composing portraits of unequal depth");
            return LEAF;
        }
        if let Some(&id) = self.compose_memo.get(&(f, g)) {
            return id;
        }
        let nf = self.nodes[f];
        let ng = self.nodes[g];
        let (f_at_g0, f_at_g1) = if ng.swap {
            (nf.c1, nf.c0)
        } else {
            (nf.c0, nf.c1)
        };
        let c0 = self.compose(f_at_g0, ng.c0);
        let c1 = self.compose(f_at_g1, ng.c1);
        let id = self.intern(nf.swap ^ ng.swap, c0, c1);
        self.compose_memo.insert((f, g), id);
        id
    }

    /// The inverse portrait: (f⁻¹)|ₓ = (f|_{π⁻¹(x)})⁻¹.
    pub fn invert(&mut self, f: PortraitId) -> PortraitId {
        if f == LEAF {
            return LEAF;
        }
        if let Some(&id) = self.invert_memo.get(&f) {
            return id;
        }
        let n = self.nodes[f];
        let id = if n.swap {
            let c0 = self.invert(n.c1);
            let c1 = self.invert(n.c0);
            self.intern(true, c0, c1)
        } else {
            let c0 = self.invert(n.c0);
            let c1 = self.invert(n.c1);
            self.intern(false, c0, c1)
        };
        self.invert_memo.insert(f, id);
        id
    }

    /// The portrait of a whole word at the given depth; the word s₁⋯sₙ acts
    /// with sₙ first, so the portrait is s₁∘s₂∘⋯∘sₙ.
    pub fn word_action(&mut self, g: &GroupWord, depth: u32) -> PortraitId {
        let mut acc = self.identity(depth);
        for &l in g.letters() {
            let p = self.letter_action(l, depth);
            acc = self.compose(acc, p);
        }
        acc
    }

    /// Applies the portrait to one level-L vertex, most significant tree
    /// letter first (index 0 = root letter).
    pub fn apply(&self, mut f: PortraitId, v: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(v.len());
        for &x in v {
            if f == LEAF {
                out.push(x);
                continue;
            }
            let n = self.nodes[f];
            out.push(if n.swap { 1 - x } else { x });
            f = if x == 0 { n.c0 } else { n.c1 };
        }
        out
    }

    /// Number of distinct actions on level `depth` among the given words.
    pub fn distinct_action_count<'a>(
        &mut self,
        words: impl IntoIterator<Item = &'a GroupWord>,
        depth: u32,
    ) -> usize {
        let mut seen = std::collections::HashSet::new();
        for w in words {
            let id = self.word_action(w, depth);
            seen.insert(id);
        }
        seen.len()
    }
}

/// States of the three 3-state automata generating G, plus a perturbed
/// variant used as a negative control.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum AutState {
    A1,
    B1,
    B2,
    B2Perturbed,
}

impl ActionSpace {
    fn automaton_state(
        &mut self,
        s: AutState,
        depth: u32,
        memo: &mut HashMap<(AutState, u32), PortraitId>,
    ) -> PortraitId {
        if depth == 0 {
            return LEAF;
        }
        if let Some(&id) = memo.get(&(s, depth)) {
            return id;
        }
        let id = match s {
            // a₁ = (e, a₁)σ
            AutState::A1 => {
                let e = self.identity(depth - 1);
                let c1 = self.automaton_state(AutState::A1, depth - 1, memo);
                self.intern(true, e, c1)
            }
            // b₁ = (b₁, a₁)σ
            AutState::B1 => {
                let c0 = self.automaton_state(AutState::B1, depth - 1, memo);
                let c1 = self.automaton_state(AutState::A1, depth - 1, memo);
                self.intern(true, c0, c1)
            }
            // b₂ = (a₁, b₂)σ
            AutState::B2 => {
                let c0 = self.automaton_state(AutState::A1, depth - 1, memo);
                let c1 = self.automaton_state(AutState::B2, depth - 1, memo);
                self.intern(true, c0, c1)
            }
            // The control: coordinates of b₂ exchanged.
            AutState::B2Perturbed => {
                let c0 = self.automaton_state(AutState::B2Perturbed, depth - 1, memo);
                let c1 = self.automaton_state(AutState::A1, depth - 1, memo);
                self.intern(true, c0, c1)
            }
        };
        memo.insert((s, depth), id);
        id
    }
}

/// Checks the §4 claim that the three generating automata define the same
/// group: b = b₁a and b = a⁻¹b₂ as tree automorphisms, verified exactly on
/// level L. Products are read left-to-right, left factor applied first.
pub fn verify_automata_equivalence(level: u32) -> bool {
    let mut space = ActionSpace::new();
    let mut memo = HashMap::new();
    let b = space.letter_action(GenLetter::B, level);
    let a = space.letter_action(GenLetter::A, level);
    let a_inv = space.letter_action(GenLetter::AInv, level);
    let b1 = space.automaton_state(AutState::B1, level, &mut memo);
    let b2 = space.automaton_state(AutState::B2, level, &mut memo);
    let b1a = space.compose(a, b1);
    let ainv_b2 = space.compose(b2, a_inv);
    b == b1a && b == ainv_b2
}

/// The same check against the deliberately perturbed b₂ automaton; must fail
/// already at L = 2.
pub fn perturbed_automata_differ(level: u32) -> bool {
    let mut space = ActionSpace::new();
    let mut memo = HashMap::new();
    let b = space.letter_action(GenLetter::B, level);
    let a_inv = space.letter_action(GenLetter::AInv, level);
    let b2p = space.automaton_state(AutState::B2Perturbed, level, &mut memo);
    let ainv_b2p = space.compose(b2p, a_inv);
    b != ainv_b2p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::act_finite;
    use crate::words::FiniteWord;
    use rand::{Rng, SeedableRng};

    #[test]
    fn portrait_apply_matches_direct_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut space = ActionSpace::new();
        for _ in 0..100 {
            let len = rng.gen_range(0..10);
            let mut g = GroupWord::identity();
            while g.len() < len {
                g.push_reduced(match rng.gen_range(0..4) {
                    0 => GenLetter::A,
                    1 => GenLetter::AInv,
                    2 => GenLetter::B,
                    _ => GenLetter::BInv,
                });
            }
            let depth = rng.gen_range(1..8u32);
            let p = space.word_action(&g, depth);
            let v: Vec<u8> = (0..depth).map(|_| rng.gen_range(0..2u8)).collect();
            let direct = act_finite(&g, &FiniteWord::new(v.clone()).unwrap());
            assert_eq!(space.apply(p, &v), direct.bits().to_vec());
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let mut space = ActionSpace::new();
        for depth in 1..=10u32 {
            for l in [GenLetter::A, GenLetter::AInv, GenLetter::B, GenLetter::BInv] {
                let p = space.letter_action(l, depth);
                let q = space.invert(p);
                let e = space.identity(depth);
                assert_eq!(space.compose(p, q), e);
                assert_eq!(space.compose(q, p), e);
            }
        }
        // Letter inverses agree with portrait inversion.
        let pa = space.letter_action(GenLetter::A, 8);
        let pai = space.letter_action(GenLetter::AInv, 8);
        assert_eq!(space.invert(pa), pai);
    }

    #[test]
    fn automata_equivalence() {
        for level in [1, 4, 8, 12] {
            assert!(verify_automata_equivalence(level), "level {level}");
        }
        // The perturbed b₂ happens to agree with b on levels 1 and 2; the
        // difference appears from level 3 on.
        assert!(!perturbed_automata_differ(2));
        assert!(perturbed_automata_differ(3));
        assert!(perturbed_automata_differ(8));
    }

    #[test]
    fn positive_monoid_words_are_distinct() {
        // Finite surrogate of freeness of the monoid ⟨a, b⟩: the 510
        // nonempty positive words of length ≤ 8 act pairwise differently.
        let mut all = Vec::new();
        let mut layer = vec![GroupWord::identity()];
        for _ in 0..8 {
            let mut next = Vec::new();
            for w in &layer {
                for l in [GenLetter::A, GenLetter::B] {
                    let mut ext = w.clone();
                    ext.push_reduced(l);
                    next.push(ext);
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        assert_eq!(all.len(), 510);
        let mut space = ActionSpace::new();
        assert_eq!(space.distinct_action_count(all.iter(), 20), 510);
    }

    #[test]
    fn adding_machine_order() {
        let mut space = ActionSpace::new();
        for level in 1..=10u32 {
            let a = space.letter_action(GenLetter::A, level);
            let mut acc = space.identity(level);
            let e = space.identity(level);
            let mut order = 0u64;
            loop {
                acc = space.compose(acc, a);
                order += 1;
                if acc == e {
                    break;
                }
            }
            assert_eq!(order, 1 << level);
        }
    }
}
