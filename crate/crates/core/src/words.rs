//! Eventually periodic binary sequences and their arithmetic.
//!
//! A sequence `ω = x₁x₂…` is stored as a preperiod plus a repeating period,
//! kept in canonical form (primitive period, minimal preperiod) so that
//! structural equality coincides with equality of the expanded sequences.
//! Letters are 1-indexed; the numeric value of a finite prefix is the
//! least-significant-bit-first sum `Σ xᵢ·2^(i−1)`.

use std::fmt;

use crate::{Error, Result};

/// A finite binary word, least significant letter first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    bits: Vec<u8>,
}

impl FiniteWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Invalid("finite word letters must be 0 or 1".into()));
        }
        Ok(FiniteWord { bits })
    }

    pub fn empty() -> Self {
        FiniteWord { bits: Vec::new() }
    }

    /// The LSB-first binary word of `value` padded to `len` letters.
    pub fn from_value(value: u64, len: usize) -> Self {
        let bits = (0..len).map(|i| ((value >> i) & 1) as u8).collect();
        FiniteWord { bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(FiniteWord { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Letter `xᵢ` with `i` 1-indexed.
    pub fn letter(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// `Σ xᵢ·2^(i−1)` as an exact integer.
    pub fn value(&self) -> Result<i64> {
        if self.bits.len() > 62 {
            return Err(Error::Overflow(format!(
                "numeric value of a {}-letter word",
                self.bits.len()
            )));
        }
        Ok(self
            .bits
            .iter()
            .enumerate()
            .map(|(i, &b)| (b as i64) << i)
            .sum())
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.bits.push(bit);
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tail behaviour of an eventually periodic sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailClass {
    /// The sequence ends in `0^∞` or `1^∞`; the associated graph has a loop
    /// at the given vertex.
    EventuallyConstant { loop_vertex: i64 },
    /// Both letters occur infinitely often.
    Mixed,
}

/// An eventually periodic infinite binary sequence `preperiod·period^∞`,
/// stored in canonical form: the period is primitive and the preperiod is
/// minimal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaWord {
    preperiod: FiniteWord,
    period: FiniteWord,
}

impl OmegaWord {
    pub fn new(preperiod: FiniteWord, period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be nonempty".into()));
        }
        let (pre, per) = canonicalize(preperiod.bits, period.bits);
        Ok(OmegaWord {
            preperiod: FiniteWord { bits: pre },
            period: FiniteWord { bits: per },
        })
    }

    pub fn from_bits(preperiod: &[u8], period: &[u8]) -> Result<Self> {
        Self::new(
            FiniteWord::new(preperiod.to_vec())?,
            FiniteWord::new(period.to_vec())?,
        )
    }

    /// Parses the `PRE(P)` grammar, e.g. `(0)`, `(10)`, `110(0)`.
    pub fn parse(s: &str) -> Result<Self> {
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in {s:?}")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("missing trailing ')' in {s:?}")));
        }
        let pre = FiniteWord::parse(&s[..open])?;
        let per = FiniteWord::parse(&s[open + 1..s.len() - 1])?;
        Self::new(pre, per)
    }

    pub fn preperiod(&self) -> &FiniteWord {
        &self.preperiod
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    /// Letter `xᵢ`, 1-indexed.
    pub fn letter(&self, i: usize) -> u8 {
        assert!(i >= 1, "letters are 1-indexed");
        self.digit(i - 1)
    }

    /// Letter at 0-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        let pre = self.preperiod.len();
        if i < pre {
            self.preperiod.bits[i]
        } else {
            self.period.bits[(i - pre) % self.period.len()]
        }
    }

    /// Collapses a 0-based position to its structural position: positions in
    /// the periodic tail are identified modulo the period length.
    pub fn struct_pos(&self, i: usize) -> usize {
        let pre = self.preperiod.len();
        if i < pre {
            i
        } else {
            pre + (i - pre) % self.period.len()
        }
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord {
            bits: (0..n).map(|i| self.digit(i)).collect(),
        }
    }

    /// The coefficient `a_n^ω = Σ_{i≤n} xᵢ·2^(i−1) − 2^(n−1)`.
    pub fn coefficient_a(&self, n: u32) -> Result<i64> {
        if n == 0 {
            return Err(Error::Invalid("coefficient_a requires n ≥ 1".into()));
        }
        if n > 62 {
            return Err(Error::Overflow(format!("coefficient_a at n = {n}")));
        }
        let prefix = self.numeric_prefix(n)?;
        Ok(prefix - (1i64 << (n - 1)))
    }

    /// `Σ_{i≤n} xᵢ·2^(i−1)`.
    pub fn numeric_prefix(&self, n: u32) -> Result<i64> {
        if n > 62 {
            return Err(Error::Overflow(format!("numeric_prefix at n = {n}")));
        }
        Ok((0..n as usize)
            .map(|i| (self.digit(i) as i64) << i)
            .sum())
    }

    pub fn complement(&self) -> OmegaWord {
        let pre = self.preperiod.bits.iter().map(|&b| 1 - b).collect();
        let per = self.period.bits.iter().map(|&b| 1 - b).collect();
        OmegaWord::new(
            FiniteWord { bits: pre },
            FiniteWord { bits: per },
        )
        .expect("complement preserves validity")
    }

    /// True iff the expanded sequences agree from some index on.
    pub fn is_cofinal(&self, other: &OmegaWord) -> bool {
        let start = self.preperiod.len().max(other.preperiod.len());
        let window = lcm(self.period.len(), other.period.len());
        (start..start + window).all(|i| self.digit(i) == other.digit(i))
    }

    /// True iff the sequences disagree at every index from some point on.
    pub fn is_anticofinal(&self, other: &OmegaWord) -> bool {
        self.is_cofinal(&other.complement())
    }

    pub fn tail_class(&self) -> TailClass {
        match self.period.bits.as_slice() {
            [0] => {
                // ω = x₁…x_k 0^∞: loop at −Σ xᵢ 2^(i−1).
                let v: i64 = self
                    .preperiod
                    .bits
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| (b as i64) << i)
                    .sum();
                TailClass::EventuallyConstant { loop_vertex: -v }
            }
            [1] => {
                // ω = x₁…x_k 1^∞: loop at 1 − Σ (xᵢ − 1)·2^(i−1).
                let v: i64 = self
                    .preperiod
                    .bits
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| ((b as i64) - 1) << i)
                    .sum();
                TailClass::EventuallyConstant { loop_vertex: 1 - v }
            }
            _ => TailClass::Mixed,
        }
    }

    /// 2-adic addition of the integer `m` to the digit stream.
    pub fn add_integer(&self, m: i64) -> OmegaWord {
        let pre_len = self.preperiod.len();
        let p = self.period.len();
        // After position 63 the digit stream of m is constant (sign bit), and
        // after the preperiod ω is periodic, so (position mod period, carry)
        // must repeat and close the output period.
        let stable = pre_len.max(64);
        let mut out: Vec<u8> = Vec::new();
        let mut carry: u8 = 0;
        let mut seen: Vec<Option<usize>> = vec![None; 2 * p];
        let mut i = 0usize;
        loop {
            if i >= stable {
                let spos = (i - pre_len) % p;
                let key = 2 * spos + carry as usize;
                if let Some(start) = seen[key] {
                    return OmegaWord::from_bits(&out[..start], &out[start..i])
                        .expect("digit streams are binary");
                }
                seen[key] = Some(i);
            }
            let md = ((m >> i.min(63)) & 1) as u8;
            let s = self.digit(i) + md + carry;
            out.push(s & 1);
            carry = s >> 1;
            i += 1;
        }
    }

    /// The integer `m` with `base + m = self` 2-adically, i.e. the adding
    /// machine exponent carrying `base` to `self`, when it is an integer.
    pub fn exponent_from(&self, base: &OmegaWord) -> Result<i64> {
        let pre = self.preperiod.len().max(base.preperiod.len());
        let p = lcm(self.period.len(), base.period.len());
        let mut out: Vec<u8> = Vec::new();
        let mut borrow: u8 = 0;
        let mut seen: Vec<Option<usize>> = vec![None; 2 * p];
        let mut i = 0usize;
        let (start, end) = loop {
            if i >= pre {
                let spos = (i - pre) % p;
                let key = 2 * spos + borrow as usize;
                if let Some(start) = seen[key] {
                    break (start, i);
                }
                seen[key] = Some(i);
            }
            let d = self.digit(i) as i8 - base.digit(i) as i8 - borrow as i8;
            out.push((d & 1) as u8);
            borrow = u8::from(d < 0);
            i += 1;
        };
        let tail = &out[start..end];
        if tail.iter().all(|&b| b == 0) {
            finite_digits_value(&out[..start], false)
        } else if tail.iter().all(|&b| b == 1) {
            finite_digits_value(&out[..start], true)
        } else {
            Err(Error::NotInAOrbit)
        }
    }
}

/// Value of an LSB-first digit prefix followed by a constant tail:
/// `Σ dᵢ2^i` for tail 0, `Σ dᵢ2^i − 2^len` for tail 1.
fn finite_digits_value(digits: &[u8], ones_tail: bool) -> Result<i64> {
    if digits.len() > 62 {
        return Err(Error::Overflow("adding machine exponent".into()));
    }
    let v: i64 = digits
        .iter()
        .enumerate()
        .map(|(i, &b)| (b as i64) << i)
        .sum();
    Ok(if ones_tail {
        v - (1i64 << digits.len())
    } else {
        v
    })
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

impl fmt::Debug for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn canonicalize(pre: Vec<u8>, per: Vec<u8>) -> (Vec<u8>, Vec<u8>) {
    // Primitive root of the period.
    let p = per.len();
    let mut root = p;
    for d in 1..=p / 2 {
        if p % d == 0 && per.iter().enumerate().all(|(i, &b)| b == per[i % d]) {
            root = d;
            break;
        }
    }
    let mut per: Vec<u8> = per[..root].to_vec();
    let mut pre = pre;
    // Absorb preperiod letters that agree with the cyclically aligned period
    // letter: pre·c (w·c)^∞ = pre·(c·w)^∞.
    while let Some(&last) = pre.last() {
        if last == *per.last().unwrap() {
            pre.pop();
            per.rotate_right(1);
        } else {
            break;
        }
    }
    (pre, per)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
