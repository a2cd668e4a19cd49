//! r-type censuses, genericity, dense holonomy, and local isomorphism.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::canon::{
    oracle_ball_certificate, oracle_balls_isomorphic, window_ball_certificate, Certificate,
};
use crate::graph::{neighbors, omega_ball, window, AffineMap, WindowGraph};
use crate::words::{OmegaWord, TailClass};
use crate::{Error, Result};

/// The census of pointed r-ball types over the scanned vertices.
#[derive(Clone, Debug)]
pub struct TypeCensus {
    pub r: u32,
    /// Certificate → all scanned vertices of that type, sorted.
    pub types: BTreeMap<Certificate, Vec<i64>>,
    pub scanned: usize,
}

impl TypeCensus {
    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    /// The representative nearest to 0 for each type.
    pub fn representatives(&self) -> Vec<i64> {
        self.types
            .values()
            .map(|zs| *zs.iter().min_by_key(|z| (z.abs(), **z)).unwrap())
            .collect()
    }
}

/// Census over every vertex of the window whose r-ball is complete.
pub fn type_census(win: &WindowGraph, r: u32) -> TypeCensus {
    let zs: Vec<i64> = (win.lo..=win.hi).collect();
    let certs: Vec<(i64, Option<Certificate>)> = zs
        .par_iter()
        .map(|&z| (z, window_ball_certificate(win, z, r).ok()))
        .collect();
    let mut types: BTreeMap<Certificate, Vec<i64>> = BTreeMap::new();
    let mut scanned = 0;
    for (z, cert) in certs {
        if let Some(c) = cert {
            types.entry(c).or_default().push(z);
            scanned += 1;
        }
    }
    TypeCensus { r, types, scanned }
}

/// The smallest r ≤ cap whose pointed balls at z₁ and z₂ differ, or None.
/// Decided by direct pairwise ball isomorphism, which stays fast at radii
/// where canonical certificates become expensive.
pub fn genericity_radius(
    omega: &OmegaWord,
    z1: i64,
    z2: i64,
    cap: u32,
) -> Result<Option<u32>> {
    assert_ne!(z1, z2);
    for r in 0..=cap {
        if !oracle_balls_isomorphic(omega, z1, z2, r)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Theorem 7's dense-holonomy radius: returns R = 2^n such that every R-ball
/// of X_ω contains vertices of every r-type, and verifies the claim on a
/// window.
///
/// n is chosen as in the proof: large enough that the (r+1)-ball around each
/// type representative sits inside (−2^(n−1), 2^(n−1)). Verification checks
/// type periodicity α(z) = α(z + 2^(n+1)) over one period and that each
/// interval [c − R, c + R] with c in one period carries all types; since any
/// ball B(c, R) contains that interval, the covering claim follows.
pub fn dense_holonomy_radius(omega: &OmegaWord, r: u32) -> Result<u64> {
    if let TailClass::EventuallyConstant { .. } = omega.tail_class() {
        return Err(Error::NotDenseHolonomy);
    }
    let base = window(omega, -(1 << 12), 1 << 12)?;
    let census = type_census(&base, r);
    if census.type_count() == 0 {
        return Err(Error::Invalid("census window too small".into()));
    }

    let mut n = 1u32;
    for &z in &census.representatives() {
        let (_, dist) = omega_ball(omega, z, r + 1)?;
        for &v in dist.keys() {
            while v.abs() >= 1i64 << (n - 1) {
                n += 1;
            }
        }
    }
    let radius_r = 1u64 << n;
    let period = 2 * radius_r as i64;

    // Certificates across one period plus margins, shared by both checks.
    let lo = -(radius_r as i64);
    let hi = period + radius_r as i64 + period; // one extra period for the shift test
    let certs: HashMap<i64, Certificate> = (lo..=hi)
        .into_par_iter()
        .map(|z| Ok((z, oracle_ball_certificate(omega, z, r)?)))
        .collect::<Result<_>>()?;

    for z in lo..=(lo + period) {
        if certs[&z] != certs[&(z + period)] {
            return Err(Error::Invalid(format!(
                "r-type at {z} not periodic with period {period}"
            )));
        }
    }
    let all_types: HashSet<&Certificate> = census.types.keys().collect();
    for c in 0..period {
        let present: HashSet<&Certificate> = (c - radius_r as i64..=c + radius_r as i64)
            .map(|z| &certs[&z])
            .collect();
        if !all_types.is_subset(&present) {
            return Err(Error::Invalid(format!(
                "the {radius_r}-ball at {c} misses an {r}-type"
            )));
        }
    }
    Ok(radius_r)
}

/// Verdict of the Theorem 6 comparison of two graphs' r-type sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalIsoVerdict {
    LocallyIso,
    /// A certificate realized in exactly one of the two graphs.
    Distinguished(Certificate),
}

/// Compares the r-type sets (not multiplicities) of the two graphs over the
/// windows [−2^m, 2^m].
pub fn local_iso_check(
    omega: &OmegaWord,
    other: &OmegaWord,
    r: u32,
    m: u32,
) -> Result<LocalIsoVerdict> {
    let half = 1i64 << m;
    let c1 = type_census(&window(omega, -half, half)?, r);
    let c2 = type_census(&window(other, -half, half)?, r);
    for t in c1.types.keys() {
        if !c2.types.contains_key(t) {
            return Ok(LocalIsoVerdict::Distinguished(t.clone()));
        }
    }
    for t in c2.types.keys() {
        if !c1.types.contains_key(t) {
            return Ok(LocalIsoVerdict::Distinguished(t.clone()));
        }
    }
    Ok(LocalIsoVerdict::LocallyIso)
}

/// Whether the affine map preserves X_ω adjacency at every z in
/// [−range, range], checked against the oracle on both sides (loops count).
pub fn affine_preserves_adjacency(omega: &OmegaWord, map: AffineMap, range: i64) -> Result<bool> {
    for z in -range..=range {
        let mut mapped: Vec<i64> = neighbors(omega, z)?
            .into_iter()
            .map(|(t, _)| map.apply(t))
            .collect();
        let mut direct: Vec<i64> = neighbors(omega, map.apply(z))?
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        mapped.sort_unstable();
        direct.sort_unstable();
        if mapped != direct {
            return Ok(false);
        }
    }
    Ok(true)
}
