//! Growth functions of the infinite graphs and the Theorem 13 bounds.

use std::collections::HashSet;

use crate::analysis::distance::exact_diameter;
use crate::graph::neighbors;
use crate::group::restriction_set;
use crate::schreier::orbital_ball;
use crate::words::OmegaWord;
use crate::Result;

/// Ball sizes |B(center, r)| for r = 0..=R.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub center: i64,
    /// rows[r] = |B(center, r)|.
    pub rows: Vec<u64>,
    pub oracle: &'static str,
}

/// Exact growth of X_ω at 0, straight from the adjacency oracle: a plain BFS
/// that never needs a window because the oracle answers everywhere.
pub fn growth_x_omega(omega: &OmegaWord, radius: u32) -> Result<GrowthTable> {
    let mut seen: HashSet<i64> = HashSet::new();
    seen.insert(0);
    let mut frontier = vec![0i64];
    let mut rows = vec![1u64];
    for _ in 1..=radius {
        let mut next = Vec::new();
        for &z in &frontier {
            for (to, _) in neighbors(omega, z)? {
                if to != z && seen.insert(to) {
                    next.push(to);
                }
            }
        }
        frontier = next;
        rows.push(seen.len() as u64);
    }
    Ok(GrowthTable {
        center: 0,
        rows,
        oracle: "window",
    })
}

/// The same table measured on the orbital Schreier graph; Theorem 9 says the
/// two must agree row by row.
pub fn growth_orbital(omega: &OmegaWord, radius: u32) -> GrowthTable {
    let ball = orbital_ball(omega, radius);
    let mut rows = vec![0u64; radius as usize + 1];
    for &d in &ball.dist {
        for r in d..=radius {
            rows[r as usize] += 1;
        }
    }
    GrowthTable {
        center: 0,
        rows,
        oracle: "orbital",
    }
}

/// Outcome of the Theorem 13 bound checks on one growth table.
#[derive(Clone, Debug)]
pub struct GrowthBoundsReport {
    /// (r, |B(r)|, bound 20·r^(log₂r+2)) for every r where the upper bound
    /// was checked; `upper_ok` is the conjunction.
    pub upper_ok: bool,
    pub upper_rows: Vec<(u32, u64, f64)>,
    /// (n, Diam(Γ_n), |B(0, 2·Diam)|, 2^n) for every n that fit in R.
    pub lower_rows: Vec<(u32, u64, u64, u64)>,
    pub lower_ok: bool,
}

/// Checks |B(0,r)| ≤ 20·r^(log₂r+2) for 2 ≤ r ≤ R and the lower-bound
/// mechanism |B(0, 2·Diam(Γ_n))| ≥ 2^n for every n with 2·Diam(Γ_n) ≤ R.
pub fn growth_bounds_check(omega: &OmegaWord, radius: u32) -> Result<GrowthBoundsReport> {
    let table = growth_x_omega(omega, radius)?;
    let mut upper_ok = true;
    let mut upper_rows = Vec::new();
    for r in 2..=radius {
        let count = table.rows[r as usize];
        let rf = r as f64;
        let bound = 20.0 * rf.powf(rf.log2() + 2.0);
        if (count as f64) > bound {
            upper_ok = false;
        }
        upper_rows.push((r, count, bound));
    }
    let mut lower_rows = Vec::new();
    let mut lower_ok = true;
    for n in 1..=14u32 {
        let diam = exact_diameter(n);
        if 2 * diam > radius as u64 {
            break;
        }
        let ball = table.rows[(2 * diam) as usize];
        let needed = 1u64 << n;
        if ball < needed {
            lower_ok = false;
        }
        lower_rows.push((n, diam, ball, needed));
    }
    Ok(GrowthBoundsReport {
        upper_ok,
        upper_rows,
        lower_rows,
        lower_ok,
    })
}

/// Eq. (7): |B(ω, n)| ≤ 2^k · |𝒩(n, k)| with the restriction set taken at
/// the length-k prefix of ω.
pub fn eq7_check(omega: &OmegaWord, n: usize, k: u32) -> Result<bool> {
    let ball = orbital_ball(omega, n as u32);
    let prefix = omega.prefix(k as usize);
    let nset = restriction_set(n, &prefix)?;
    Ok((ball.len() as u64) <= (1u64 << k) * nset.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ow(s: &str) -> OmegaWord {
        OmegaWord::parse(s).unwrap()
    }

    #[test]
    fn small_growth_values() {
        let t = growth_x_omega(&ow("(10)"), 1).unwrap();
        assert_eq!(t.rows, vec![1, 5]);
        let t0 = growth_x_omega(&ow("(0)"), 1).unwrap();
        assert_eq!(t0.rows, vec![1, 3]);
    }

    #[test]
    fn growth_monotone_and_degree_bounded() {
        let t = growth_x_omega(&ow("(110)"), 40).unwrap();
        for r in 1..t.rows.len() {
            assert!(t.rows[r] >= t.rows[r - 1]);
            assert!(t.rows[r] <= 4 * t.rows[r - 1] + 1);
        }
    }

    #[test]
    fn oracles_agree() {
        for om in [ow("(0)"), ow("(10)"), ow("1(10)")] {
            let a = growth_x_omega(&om, 16).unwrap();
            let b = growth_orbital(&om, 16);
            assert_eq!(a.rows, b.rows, "ω={om}");
        }
    }

    #[test]
    fn upper_bound_holds() {
        let report = growth_bounds_check(&ow("(10)"), 64).unwrap();
        assert!(report.upper_ok);
        assert!(report.lower_ok);
        assert!(!report.lower_rows.is_empty());
    }

    #[test]
    fn eq7_small_cases() {
        assert!(eq7_check(&ow("(10)"), 4, 2).unwrap());
        assert!(eq7_check(&ow("(0)"), 6, 3).unwrap());
        assert!(eq7_check(&ow("(110)"), 0, 1).unwrap());
    }
}
