//! The self-similar group G = ⟨a, b⟩ acting on the rooted binary tree.
//!
//! Wreath recursion: a = (e, a)σ and b = (b, a), with the convention that
//! (g|₀, g|₁)π sends x·w to π(x)·g|ₓ(w). A word s₁s₂⋯sₙ acts with sₙ applied
//! first, so g(v) = s₁(s₂(⋯sₙ(v))). Elements are kept as freely reduced
//! words; semantic equality is depth-bounded, through `equal_on_level`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::words::{FiniteWord, OmegaWord};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLetter {
    A,
    AInv,
    B,
    BInv,
}

impl GenLetter {
    pub fn inverse(self) -> GenLetter {
        match self {
            GenLetter::A => GenLetter::AInv,
            GenLetter::AInv => GenLetter::A,
            GenLetter::B => GenLetter::BInv,
            GenLetter::BInv => GenLetter::B,
        }
    }

    fn symbol(self) -> char {
        match self {
            GenLetter::A => 'a',
            GenLetter::AInv => 'A',
            GenLetter::B => 'b',
            GenLetter::BInv => 'B',
        }
    }
}

/// One step of the automaton: the image of the tree letter `x` and the
/// restriction (`None` = identity).
///
/// a|₀ = e, a|₁ = a; a⁻¹|₀ = a⁻¹, a⁻¹|₁ = e; b|₀ = b, b|₁ = a;
/// b⁻¹|₀ = b⁻¹, b⁻¹|₁ = a⁻¹. a and a⁻¹ swap the letter, b and b⁻¹ fix it.
fn step(s: GenLetter, x: u8) -> (u8, Option<GenLetter>) {
    match (s, x) {
        (GenLetter::A, 0) => (1, None),
        (GenLetter::A, _) => (0, Some(GenLetter::A)),
        (GenLetter::AInv, 0) => (1, Some(GenLetter::AInv)),
        (GenLetter::AInv, _) => (0, None),
        (GenLetter::B, 0) => (0, Some(GenLetter::B)),
        (GenLetter::B, _) => (1, Some(GenLetter::A)),
        (GenLetter::BInv, 0) => (0, Some(GenLetter::BInv)),
        (GenLetter::BInv, _) => (1, Some(GenLetter::AInv)),
    }
}

/// A freely reduced word in the generators; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<GenLetter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = GenLetter>) -> Self {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push_reduced(l);
        }
        w
    }

    /// Parses a word over {a, A, b, B} (capital = inverse); whitespace is
    /// skipped, the empty string and "e" are the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let mut w = GroupWord::identity();
        for c in s.chars() {
            let letter = match c {
                'a' => GenLetter::A,
                'A' => GenLetter::AInv,
                'b' => GenLetter::B,
                'B' => GenLetter::BInv,
                'e' => continue,
                c if c.is_whitespace() => continue,
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} in group word"
                    )))
                }
            };
            w.push_reduced(letter);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.letters
    }

    pub fn push_reduced(&mut self, l: GenLetter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push_reduced(l);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for &l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

pub fn gen_a() -> GroupWord {
    GroupWord::from_letters([GenLetter::A])
}

pub fn gen_b() -> GroupWord {
    GroupWord::from_letters([GenLetter::B])
}

/// Applies the word to one tree letter: the image bit and the restriction of
/// the whole word at that letter, freely reduced.
fn act_and_restrict(g: &GroupWord, x: u8) -> (u8, GroupWord) {
    let mut bit = x;
    let mut rev: Vec<GenLetter> = Vec::with_capacity(g.len());
    for &s in g.letters.iter().rev() {
        let (y, r) = step(s, bit);
        bit = y;
        if let Some(r) = r {
            rev.push(r);
        }
    }
    (bit, GroupWord::from_letters(rev.into_iter().rev()))
}

/// The image of a finite tree vertex under the word.
pub fn act_finite(g: &GroupWord, v: &FiniteWord) -> FiniteWord {
    let mut w = g.clone();
    let mut out = FiniteWord::empty();
    for &x in v.bits() {
        let (y, next) = act_and_restrict(&w, x);
        out.push(y);
        w = next;
    }
    out
}

/// The restriction g|ᵥ as a freely reduced word; satisfies l(g|ᵥ) ≤ l(g).
pub fn restrict(g: &GroupWord, v: &FiniteWord) -> GroupWord {
    let mut w = g.clone();
    for &x in v.bits() {
        let (_, next) = act_and_restrict(&w, x);
        w = next;
    }
    w
}

/// The image of an eventually periodic sequence, in canonical form.
///
/// Runs the word down the digit stream; each level replaces the word by its
/// restriction, so the state space (structural position, reduced restriction
/// word) is finite and the first repeat closes the output period. When the
/// restriction hits the identity the remaining stream is copied verbatim.
pub fn act_omega(g: &GroupWord, omega: &OmegaWord) -> OmegaWord {
    let pre_len = omega.preperiod().len();
    let p = omega.period().len();
    let mut out: Vec<u8> = Vec::new();
    let mut w = g.clone();
    let mut seen: HashMap<(usize, GroupWord), usize> = HashMap::new();
    let mut i = 0usize;
    loop {
        if w.is_empty() {
            let k = i.max(pre_len);
            let mut pre = out;
            for j in i..k {
                pre.push(omega.digit(j));
            }
            let per: Vec<u8> = (0..p).map(|t| omega.digit(k + t)).collect();
            return OmegaWord::from_bits(&pre, &per).expect("valid image word");
        }
        if i >= pre_len {
            let key = (omega.struct_pos(i), w.clone());
            if let Some(&j) = seen.get(&key) {
                let per = out[j..].to_vec();
                let pre = out[..j].to_vec();
                return OmegaWord::from_bits(&pre, &per).expect("valid image word");
            }
            seen.insert(key, i);
        }
        let (y, next) = act_and_restrict(&w, omega.digit(i));
        out.push(y);
        w = next;
        i += 1;
    }
}

/// The action of aᵐ, computed as 2-adic addition of m instead of m-fold
/// application.
pub fn act_power_a(m: i64, omega: &OmegaWord) -> OmegaWord {
    omega.add_integer(m)
}

/// True iff g and h act identically on the whole level L of the tree.
pub fn equal_on_level(g: &GroupWord, h: &GroupWord, level: u32) -> bool {
    let mut space = crate::portrait::ActionSpace::new();
    space.word_action(g, level) == space.word_action(h, level)
}

/// Alternating exponent form a^{α₀} b^{β₁} a^{α₁} ⋯ b^{β_m} a^{α_m} with the
/// interior exponents nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyllableForm {
    pub alpha0: i64,
    /// The (βᵢ, αᵢ) pairs; every βᵢ is nonzero, and every αᵢ except possibly
    /// the last.
    pub pairs: Vec<(i64, i64)>,
}

impl SyllableForm {
    /// The number of b-syllables.
    pub fn m(&self) -> usize {
        self.pairs.len()
    }
}

/// Groups the reduced word into alternating syllables. Maximal runs in a
/// reduced word are sign-homogeneous, so each run is one exponent.
pub fn to_syllables(g: &GroupWord) -> SyllableForm {
    let mut runs: Vec<(bool, i64)> = Vec::new(); // (is_b, exponent)
    for &l in g.letters() {
        let (is_b, delta) = match l {
            GenLetter::A => (false, 1),
            GenLetter::AInv => (false, -1),
            GenLetter::B => (true, 1),
            GenLetter::BInv => (true, -1),
        };
        match runs.last_mut() {
            Some((b, e)) if *b == is_b => *e += delta,
            _ => runs.push((is_b, delta)),
        }
    }
    let mut iter = runs.into_iter().peekable();
    let alpha0 = match iter.peek() {
        Some(&(false, e)) => {
            iter.next();
            e
        }
        _ => 0,
    };
    let mut pairs = Vec::new();
    while let Some((is_b, beta)) = iter.next() {
        debug_assert!(is_b);
        let alpha = match iter.peek() {
            Some(&(false, e)) => {
                iter.next();
                e
            }
            _ => 0,
        };
        pairs.push((beta, alpha));
    }
    SyllableForm { alpha0, pairs }
}

/// An element of the set 𝒩 = {a^{ε₁} b^k a^{ε₂}, a^k : k ∈ ℤ, εᵢ ∈ {−1,0,1}}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusElement {
    PowerOfA(i64),
    Sandwich(i8, i64, i8),
}

/// Syntactic match of the reduced word against the 𝒩 patterns.
pub fn match_nucleus(g: &GroupWord) -> Option<NucleusElement> {
    let form = to_syllables(g);
    match form.pairs.as_slice() {
        [] => Some(NucleusElement::PowerOfA(form.alpha0)),
        &[(beta, alpha)] if form.alpha0.abs() <= 1 && alpha.abs() <= 1 => Some(
            NucleusElement::Sandwich(form.alpha0 as i8, beta, alpha as i8),
        ),
        _ => None,
    }
}

/// All freely reduced words of length at most `n`, depth-first.
pub fn reduced_words_up_to(n: usize) -> Result<Vec<GroupWord>> {
    if n > 12 {
        return Err(Error::ExplosionGuard(format!(
            "enumeration of reduced words of length ≤ {n}"
        )));
    }
    let mut out = Vec::new();
    let mut current = GroupWord::identity();
    fn visit(current: &mut GroupWord, n: usize, out: &mut Vec<GroupWord>) {
        out.push(current.clone());
        if current.len() == n {
            return;
        }
        for l in [GenLetter::A, GenLetter::AInv, GenLetter::B, GenLetter::BInv] {
            if current.letters().last() == Some(&l.inverse()) {
                continue;
            }
            current.push_reduced(l);
            visit(current, n, out);
            current.letters.pop();
        }
    }
    visit(&mut current, n, &mut out);
    Ok(out)
}

/// The set of restrictions at `prefix` of all reduced words of length ≤ n,
/// deduplicated syntactically by reduced word.
pub fn restriction_set(n: usize, prefix: &FiniteWord) -> Result<HashSet<GroupWord>> {
    let mut out = HashSet::new();
    for w in reduced_words_up_to(n)? {
        out.insert(restrict(&w, prefix));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn gw(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    fn fw(s: &str) -> FiniteWord {
        FiniteWord::parse(s).unwrap()
    }

    fn ow(s: &str) -> OmegaWord {
        OmegaWord::parse(s).unwrap()
    }

    fn random_word(rng: &mut impl Rng, len: usize) -> GroupWord {
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

    fn random_vertex(rng: &mut impl Rng, len: usize) -> FiniteWord {
        FiniteWord::new((0..len).map(|_| rng.gen_range(0..2u8)).collect()).unwrap()
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(gw("aA"), GroupWord::identity());
        assert_eq!(gw("abBA"), GroupWord::identity());
        assert_eq!(gw("ab").len(), 2);
        assert_eq!(gw("a b\tB"), gw("a"));
        assert!(GroupWord::parse("axb").is_err());
        assert_eq!(gw("ab").inverse(), gw("BA"));
        assert_eq!(gw("ab").mul(&gw("BA")), GroupWord::identity());
    }

    #[test]
    fn act_finite_examples() {
        assert_eq!(act_finite(&gw("a"), &fw("11")), fw("00"));
        assert_eq!(act_finite(&gw("b"), &fw("0000")), fw("0000"));
        assert_eq!(act_finite(&gw("b"), &fw("10")), fw("11"));
    }

    #[test]
    fn adding_machine_consistency() {
        // a^m on 0^k reads off m in binary, least significant bit first.
        for k in 1..=10usize {
            let size = 1u64 << k;
            for m in 0..size {
                let img = act_finite(&gw("a").pow(m as i64), &FiniteWord::from_value(0, k));
                assert_eq!(img, FiniteWord::from_value(m, k), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn b_fixes_low_bits_and_increments_high() {
        // b(0^t 1 w) = 0^t 1 a(w): on integers, keep the low 1+t bits and add
        // one to the rest.
        for k in 1..=12usize {
            let size = 1u64 << k;
            for v in 0..size {
                let img = act_finite(&gw("b"), &FiniteWord::from_value(v, k));
                let expect = if v == 0 {
                    0
                } else {
                    let t = v.trailing_zeros() as usize;
                    let keep = t + 1;
                    if keep >= k {
                        v
                    } else {
                        let low = v & ((1 << keep) - 1);
                        let high = (v >> keep) + 1;
                        low | ((high % (1 << (k - keep))) << keep)
                    }
                };
                assert_eq!(img, FiniteWord::from_value(expect, k), "k={k} v={v}");
            }
        }
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&gw("b"), &fw("1")), gw("a"));
        assert_eq!(restrict(&gw("b"), &fw("00000")), gw("b"));
        // ba = (a, ba)σ in coordinates: restriction a at 0, ba at 1.
        assert_eq!(restrict(&gw("ba"), &fw("0")), gw("a"));
        assert_eq!(restrict(&gw("ba"), &fw("1")), gw("ba"));
        assert_eq!(restrict(&gw("a"), &fw("0")), GroupWord::identity());
        assert_eq!(restrict(&gw("A"), &fw("0")), gw("A"));
    }

    #[test]
    fn act_omega_examples() {
        assert_eq!(act_omega(&gw("a"), &ow("(1)")), ow("(0)"));
        assert_eq!(act_omega(&gw("a"), &ow("0(10)")), ow("1(10)"));
        assert_eq!(act_omega(&gw("b"), &ow("(0)")), ow("(0)"));
        // The infinite carry through a mixed word.
        assert_eq!(act_omega(&gw("a"), &ow("(10)")), ow("01(10)"));
    }

    #[test]
    fn act_power_a_matches_iteration() {
        for om in [ow("(0)"), ow("(10)"), ow("11(0)"), ow("0(011)")] {
            for m in -9i64..=9 {
                let fast = act_power_a(m, &om);
                let mut slow = om.clone();
                let g = if m < 0 { gw("A") } else { gw("a") };
                for _ in 0..m.abs() {
                    slow = act_omega(&g, &slow);
                }
                assert_eq!(fast, slow, "ω={om} m={m}");
            }
        }
        assert_eq!(act_power_a(4, &ow("(0)")), ow("001(0)"));
        assert_eq!(act_power_a(-1, &ow("(0)")), ow("(1)"));
    }

    #[test]
    fn homomorphism_on_random_words() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let len = rng.gen_range(0..8);
            let g = random_word(&mut rng, len);
            let len = rng.gen_range(0..8);
            let h = random_word(&mut rng, len);
            let vl = rng.gen_range(1..10);
            let v = random_vertex(&mut rng, vl);
            assert_eq!(
                act_finite(&g.mul(&h), &v),
                act_finite(&g, &act_finite(&h, &v))
            );
        }
    }

    #[test]
    fn restriction_composition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let len = rng.gen_range(0..8);
            let g = random_word(&mut rng, len);
            let ul = rng.gen_range(1..5);
            let u = random_vertex(&mut rng, ul);
            let vl = rng.gen_range(1..5);
            let v = random_vertex(&mut rng, vl);
            let mut uv = u.clone();
            for &x in v.bits() {
                uv.push(x);
            }
            let lhs = restrict(&g, &uv);
            let rhs = restrict(&restrict(&g, &u), &v);
            assert!(equal_on_level(&lhs, &rhs, 16));
        }
    }

    #[test]
    fn section4_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 1..=12usize {
            // b(0^{n−1} 1 ω) = 0^{n−1} 1 a(ω).
            let om = ow("0(011)");
            let mut pre: Vec<u8> = vec![0; n - 1];
            pre.push(1);
            let padded = prepend(&pre, &om);
            let lhs = act_omega(&gw("b"), &padded);
            let rhs = prepend(&pre, &act_omega(&gw("a"), &om));
            assert_eq!(lhs, rhs, "n={n}");

            // a^{2^n}(vω) = v·a(ω) for random v of length n.
            let v = random_vertex(&mut rng, n);
            let padded = prepend(v.bits(), &om);
            let lhs = act_power_a(1i64 << n, &padded);
            let rhs = prepend(v.bits(), &act_omega(&gw("a"), &om));
            assert_eq!(lhs, rhs, "n={n} v={v}");
        }
    }

    fn prepend(bits: &[u8], om: &OmegaWord) -> OmegaWord {
        let mut pre: Vec<u8> = bits.to_vec();
        pre.extend(om.preperiod().bits());
        OmegaWord::from_bits(&pre, om.period().bits()).unwrap()
    }

    #[test]
    fn contraction_of_length() {
        // Exhaustive at small size, sampled at the enumeration boundary.
        for g in reduced_words_up_to(7).unwrap() {
            for depth in 1..=4usize {
                for v in 0..(1u64 << depth) {
                    let r = restrict(&g, &FiniteWord::from_value(v, depth));
                    assert!(r.len() <= g.len(), "g={g:?} v={v:#b}");
                }
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..2000 {
            let g = random_word(&mut rng, 12);
            let v = random_vertex(&mut rng, 6);
            assert!(restrict(&g, &v).len() <= g.len());
        }
    }

    #[test]
    fn syllable_forms() {
        let f = to_syllables(&gw("abA"));
        assert_eq!(f.alpha0, 1);
        assert_eq!(f.pairs, vec![(1, -1)]);

        let e = to_syllables(&GroupWord::identity());
        assert_eq!(e.alpha0, 0);
        assert!(e.pairs.is_empty());

        let g = to_syllables(&gw("bba"));
        assert_eq!(g.alpha0, 0);
        assert_eq!(g.pairs, vec![(2, 1)]);

        // Alternation forces m b-syllables to use ≥ 2m − 1 letters.
        for w in reduced_words_up_to(6).unwrap() {
            assert!(2 * to_syllables(&w).m() <= w.len() + 1);
        }
    }

    #[test]
    fn nucleus_matching() {
        assert_eq!(
            match_nucleus(&gw("Abba")),
            Some(NucleusElement::Sandwich(-1, 2, 1))
        );
        assert_eq!(match_nucleus(&gw("aaa")), Some(NucleusElement::PowerOfA(3)));
        assert_eq!(match_nucleus(&gw("bab")), None);
        assert_eq!(
            match_nucleus(&GroupWord::identity()),
            Some(NucleusElement::PowerOfA(0))
        );
        assert_eq!(match_nucleus(&gw("aab")), None); // ε₁ out of range
        assert_eq!(
            match_nucleus(&gw("BBB")),
            Some(NucleusElement::Sandwich(0, -3, 0))
        );
    }

    #[test]
    fn restriction_sets() {
        let zero = fw("0");
        let set = restriction_set(1, &zero).unwrap();
        let expect: HashSet<GroupWord> =
            [gw(""), gw("A"), gw("b"), gw("B")].into_iter().collect();
        assert_eq!(set, expect);

        let trivial = restriction_set(0, &fw("0101")).unwrap();
        assert_eq!(trivial.len(), 1);

        // At the root the restriction is the identity map.
        let all = restriction_set(4, &FiniteWord::empty()).unwrap();
        let count: usize = 1 + (1..=4).map(|l| 4 * 3usize.pow(l - 1)).sum::<usize>();
        assert_eq!(all.len(), count);

        assert!(restriction_set(13, &zero).is_err());
    }

    #[test]
    fn equal_on_level_basics() {
        assert!(equal_on_level(&gw("aA"), &GroupWord::identity(), 5));
        // The adding machine has order 2^L on level L.
        for l in 1..=6u32 {
            let p = gw("a").pow(1i64 << l);
            assert!(equal_on_level(&p, &GroupWord::identity(), l));
            assert!(!equal_on_level(&p, &GroupWord::identity(), l + 1));
        }
    }
}
