//! Moments of statistic tables, their symmetrized variants, the `S*`
//! triangle that converts between the two, and the inequality scanner.
//!
//! Conventions: `moment(_, k, _)` uses the full power `k`, while the scanner
//! and `spt_k_finite` take the half-index `k` and work with order `2k`
//! throughout (the inequality is a statement about even orders).

use std::time::{Duration, Instant};

use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Value};

use crate::partitions::{spt_finite, table_ms2, table_ns1, StatTable};

/// `Σ_m m^k c(m, n)` over one row of a table.
pub fn moment(table: &StatTable, k: u32, n: usize) -> BigInt {
    let mut total = BigInt::zero();
    for (&m, &v) in table.row(n) {
        total += num::pow(BigInt::from(m), k as usize) * v;
    }
    total
}

/// Exact `k!`.
pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Generalized binomial `C(a, k) = a(a-1)···(a-k+1)/k!` for any integer `a`,
/// negative included. Always an exact integer.
pub fn gen_binomial(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= a - i;
    }
    let f = factorial(k);
    debug_assert!((&num % &f).is_zero());
    num / f
}

/// Symmetrized moment `Σ_m C(m + ⌊(k-1)/2⌋, k) c(m, n)`: the `η` family on
/// rank tables, the `μ` family on crank tables.
pub fn symmetrized_moment(table: &StatTable, k: u32, n: usize) -> BigInt {
    assert!(k >= 1, "the symmetrized moment needs k >= 1");
    let shift = (k as i64 - 1) / 2;
    let mut total = BigInt::zero();
    for (&m, &v) in table.row(n) {
        total += gen_binomial(m + shift, k) * v;
    }
    total
}

/// `g_k(x) = Π_{j=0}^{k-1} (x² - j²)`; vanishes for all integers `|x| < k`.
pub fn g_poly_eval(k: u32, x: i64) -> BigInt {
    assert!(k >= 1, "g_k needs k >= 1");
    let xx = BigInt::from(x) * x;
    let mut out = BigInt::one();
    for j in 0..k as i64 {
        out *= &xx - j * j;
    }
    out
}

/// Triangle of the positive integers `S*(n, k)` (`1 <= k <= n`) defined by
/// `S*(1,1) = 1` and `S*(n+1, k) = S*(n, k-1) + k² S*(n, k)`. They expand
/// even powers in the `g_k` basis: `x^{2n} = Σ_k S*(n,k) g_k(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SStarTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl SStarTriangle {
    /// Wrap raw rows without validation (row `n` must have `n` entries).
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), i + 1, "row {} must have {} entries", i + 1, i + 1);
        }
        SStarTriangle { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len()
    }

    /// `S*(n, k)`, zero outside `1 <= k <= n`.
    pub fn entry(&self, n: usize, k: usize) -> BigInt {
        assert!(n >= 1 && n <= self.nmax(), "row {n} is not in the triangle");
        if k >= 1 && k <= n {
            self.rows[n - 1][k - 1].clone()
        } else {
            BigInt::zero()
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        assert!(n >= 1 && n <= self.nmax(), "row {n} is not in the triangle");
        &self.rows[n - 1]
    }

    /// First `(n, k)` where the defining recursion fails, if any.
    pub fn recursion_failure(&self) -> Option<(usize, usize)> {
        if self.nmax() >= 1 && !self.rows[0][0].is_one() {
            return Some((1, 1));
        }
        for n in 1..self.nmax() {
            for k in 1..=(n + 1) {
                let expect = self.entry(n, k - 1) + BigInt::from(k * k) * self.entry(n, k);
                if self.entry(n + 1, k) != expect {
                    return Some((n + 1, k));
                }
            }
        }
        None
    }

    /// First `(n, x)` with `x in 0..=n` where `x^{2n} != Σ_k S*(n,k) g_k(x)`.
    pub fn polynomial_identity_failure(&self) -> Option<(usize, i64)> {
        for n in 1..=self.nmax() {
            for x in 0..=(n as i64) {
                let lhs = num::pow(BigInt::from(x), 2 * n);
                let mut rhs = BigInt::zero();
                for k in 1..=n {
                    rhs += self.entry(n, k) * g_poly_eval(k as u32, x);
                }
                if lhs != rhs {
                    return Some((n, x));
                }
            }
        }
        None
    }
}

/// Build the triangle through row `nmax` by the recursion, then assert the
/// polynomial identity at the sample points `x = 0..=n` of every row.
pub fn sstar(nmax: usize) -> SStarTriangle {
    assert!(nmax >= 1, "the triangle needs at least one row");
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..nmax {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 1..=(n + 1) {
            let carry = if k >= 2 { prev[k - 2].clone() } else { BigInt::zero() };
            let scaled = if k <= n {
                BigInt::from(k * k) * &prev[k - 1]
            } else {
                BigInt::zero()
            };
            row.push(carry + scaled);
        }
        rows.push(row);
    }
    let t = SStarTriangle::from_rows(rows);
    assert!(
        t.polynomial_identity_failure().is_none(),
        "S* recursion output failed its polynomial identity"
    );
    debug_assert!(t.rows.iter().flatten().all(|v| v.is_positive()));
    t
}

/// `Σ_{j=1..k} (2j)! S*(k,j) · symmetrized_moment(table, 2j, n)`; equals
/// `moment(table, 2k, n)` when the table is genuine.
pub fn reconstruct_moment(table: &StatTable, k: u32, n: usize, triangle: &SStarTriangle) -> BigInt {
    assert!(k >= 1 && (k as usize) <= triangle.nmax(), "k = {k} outside the triangle");
    let mut total = BigInt::zero();
    for j in 1..=k {
        total += factorial(2 * j)
            * triangle.entry(k as usize, j as usize)
            * symmetrized_moment(table, 2 * j, n);
    }
    total
}

/// `(1/(2k)!) Σ_m g_k(m) c(m, n)`, asserting the division is exact; equals
/// `symmetrized_moment(table, 2k, n)`.
pub fn symmetrized_via_g(table: &StatTable, k: u32, n: usize) -> BigInt {
    assert!(k >= 1, "the g-form needs k >= 1");
    let mut total = BigInt::zero();
    for (&m, &v) in table.row(n) {
        total += g_poly_eval(k, m) * v;
    }
    let f = factorial(2 * k);
    assert!(
        (&total % &f).is_zero(),
        "g-weighted sum {total} is not divisible by (2k)! = {f}"
    );
    total / f
}

/// `spt_k(n, N) = μ_{2k,N}(n) - η_{2k,N}(n)` from precomputed tables.
pub fn spt_k_from_tables(rank: &StatTable, crank: &StatTable, k: u32, n: usize) -> BigInt {
    assert!(k >= 1, "spt_k needs k >= 1");
    symmetrized_moment(crank, 2 * k, n) - symmetrized_moment(rank, 2 * k, n)
}

/// `spt_k(n, N)` built from scratch. `k = 1` recovers the enumerative
/// smallest-parts count `spt(n, N)`.
pub fn spt_k_finite(n: usize, cap: usize, k: u32) -> BigInt {
    assert!(n >= 1, "spt_k is defined for n >= 1");
    let rank = table_ns1(cap, n);
    let crank = table_ms2(cap, n);
    spt_k_from_tables(&rank, &crank, k, n)
}

/// One grid point of the scanner, with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanCell {
    pub cap: usize,
    pub k: u32,
    pub n: usize,
    /// `M_{2k,N}(n)` — the crank side.
    pub crank_moment: BigInt,
    /// `N_{2k,N}(n)` — the rank side.
    pub rank_moment: BigInt,
    /// `crank_moment - rank_moment`.
    pub margin: BigInt,
    /// `spt_k(n, N) = μ_{2k,N}(n) - η_{2k,N}(n)`.
    pub spt_margin: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanViolation {
    pub cap: usize,
    pub k: u32,
    pub n: usize,
    pub condition: &'static str,
    pub detail: String,
}

/// Outcome of a grid scan: every cell, plus any violated conditions (the
/// list is capped; `violations_truncated` says whether the cap was hit).
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub caps: Vec<usize>,
    pub ks: Vec<u32>,
    pub ns: Vec<usize>,
    pub cells: Vec<ScanCell>,
    pub checked: u64,
    pub violations: Vec<ScanViolation>,
    pub violation_cap: usize,
    pub violations_truncated: bool,
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && !self.violations_truncated
    }

    pub fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| {
                json!({
                    "N": v.cap,
                    "k": v.k,
                    "n": v.n,
                    "condition": v.condition,
                    "detail": v.detail,
                })
            })
            .collect();
        json!({
            "grid": { "N": self.caps, "k": self.ks, "n": self.ns },
            "checked": self.checked,
            "violations": violations,
            "violations_truncated": self.violations_truncated,
        })
    }
}

/// Scan one cap's grid against prebuilt tables. Checks, per `(k, n)`:
/// strict `M_{2k} > N_{2k}`, `spt_k >= 0`, and `M_{2k} - N_{2k} >= 2 spt(n, N)`.
pub fn scan_with_tables(
    rank: &StatTable,
    crank: &StatTable,
    ks: &[u32],
    ns: &[usize],
    violation_cap: usize,
) -> (Vec<ScanCell>, Vec<ScanViolation>, bool) {
    let cap = crank
        .cap()
        .as_finite()
        .expect("the scanner works on finite-cap tables");
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    let mut truncated = false;
    let mut push = |violations: &mut Vec<ScanViolation>, v: ScanViolation| {
        if violations.len() < violation_cap {
            violations.push(v);
        } else {
            truncated = true;
        }
    };
    for &k in ks {
        assert!(k >= 1, "the scanner takes half-indices k >= 1");
        for &n in ns {
            assert!(n >= 1, "the scanner grid starts at n = 1");
            let m2k = moment(crank, 2 * k, n);
            let n2k = moment(rank, 2 * k, n);
            let margin = &m2k - &n2k;
            let spt_margin = spt_k_from_tables(rank, crank, k, n);
            if m2k <= n2k {
                push(
                    &mut violations,
                    ScanViolation {
                        cap,
                        k,
                        n,
                        condition: "moment-inequality",
                        detail: format!("M = {m2k} is not strictly greater than N = {n2k}"),
                    },
                );
            }
            if spt_margin.is_negative() {
                push(
                    &mut violations,
                    ScanViolation {
                        cap,
                        k,
                        n,
                        condition: "spt-nonnegative",
                        detail: format!("spt_k = {spt_margin} is negative"),
                    },
                );
            }
            let twice_spt = BigInt::from(2u32) * spt_finite(n, cap);
            if margin < twice_spt {
                push(
                    &mut violations,
                    ScanViolation {
                        cap,
                        k,
                        n,
                        condition: "margin-at-least-twice-spt",
                        detail: format!("margin {margin} is below 2·spt(n, N) = {twice_spt}"),
                    },
                );
            }
            cells.push(ScanCell {
                cap,
                k,
                n,
                crank_moment: m2k,
                rank_moment: n2k,
                margin,
                spt_margin,
            });
        }
    }
    (cells, violations, truncated)
}

/// Build the tables for every cap in the grid and scan all of it.
pub fn inequality_scan(caps: &[usize], ks: &[u32], ns: &[usize], violation_cap: usize) -> ScanReport {
    let start = Instant::now();
    let nmax = ns.iter().copied().max().unwrap_or(0);
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    let mut truncated = false;
    for &cap in caps {
        let rank = table_ns1(cap, nmax);
        let crank = table_ms2(cap, nmax);
        let room = violation_cap - violations.len();
        let (c, v, t) = scan_with_tables(&rank, &crank, ks, ns, room);
        cells.extend(c);
        violations.extend(v);
        truncated |= t;
    }
    let checked = cells.len() as u64;
    ScanReport {
        caps: caps.to_vec(),
        ks: ks.to_vec(),
        ns: ns.to_vec(),
        cells,
        checked,
        violations,
        violation_cap,
        violations_truncated: truncated,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn moment_examples() {
        let crank = table_ms2(1, 6);
        let rank = table_ns1(1, 6);
        assert_eq!(moment(&crank, 2, 2), big(6));
        assert_eq!(moment(&rank, 2, 2), big(2));
        assert_eq!(moment(&crank, 0, 2), big(1)); // column sum of a crank table
    }

    #[test]
    fn odd_moments_vanish() {
        let crank = table_ms2(3, 10);
        let rank = table_ns1(3, 10);
        for k in [1u32, 3, 5] {
            for n in 1..=10 {
                assert!(moment(&crank, k, n).is_zero());
                assert!(moment(&rank, k, n).is_zero());
                assert!(symmetrized_moment(&crank, k, n).is_zero());
                assert!(symmetrized_moment(&rank, k, n).is_zero());
            }
        }
    }

    #[test]
    fn symmetrized_examples() {
        let crank = table_ms2(1, 6);
        let rank = table_ns1(1, 6);
        assert_eq!(symmetrized_moment(&rank, 2, 2), big(1));
        assert_eq!(symmetrized_moment(&crank, 2, 2), big(3));
    }

    #[test]
    fn frozen_symmetrized_sequences_at_cap_3() {
        let rank = table_ns1(3, 10);
        let crank = table_ms2(3, 10);
        let eta2: Vec<BigInt> = (1..=10).map(|n| symmetrized_moment(&rank, 2, n)).collect();
        let mu2: Vec<BigInt> = (1..=10).map(|n| symmetrized_moment(&crank, 2, n)).collect();
        let eta4: Vec<BigInt> = (1..=10).map(|n| symmetrized_moment(&rank, 4, n)).collect();
        let mu4: Vec<BigInt> = (1..=10).map(|n| symmetrized_moment(&crank, 4, n)).collect();
        let as_big = |v: &[i64]| v.iter().map(|&x| big(x)).collect::<Vec<_>>();
        assert_eq!(eta2, as_big(&[0, 1, 4, 10, 20, 36, 59, 93, 136, 197]));
        assert_eq!(mu2, as_big(&[1, 4, 9, 19, 32, 57, 84, 129, 183, 257]));
        assert_eq!(eta4, as_big(&[0, 0, 1, 6, 21, 56, 127, 258, 482, 847]));
        assert_eq!(mu4, as_big(&[0, 1, 6, 21, 55, 126, 252, 477, 828, 1392]));
    }

    #[test]
    fn generalized_binomial_handles_negatives() {
        assert_eq!(gen_binomial(-1, 2), big(1));
        assert_eq!(gen_binomial(-3, 3), big(-10));
        assert_eq!(gen_binomial(4, 2), big(6));
        assert_eq!(gen_binomial(0, 3), big(0));
        assert_eq!(gen_binomial(7, 0), big(1));
    }

    #[test]
    fn g_polynomial_values() {
        assert_eq!(g_poly_eval(1, 5), big(25));
        assert_eq!(g_poly_eval(2, 3), big(72));
        assert_eq!(g_poly_eval(3, 1), big(0));
        for x in -2i64..=2 {
            assert!(g_poly_eval(3, x).is_zero(), "g_3({x}) should vanish");
        }
    }

    #[test]
    fn sstar_small_rows() {
        let t = sstar(8);
        assert_eq!(t.row(1), &[big(1)]);
        assert_eq!(t.row(2), &[big(1), big(1)]);
        assert_eq!(t.row(3), &[big(1), big(5), big(1)]);
        for n in 1..=8 {
            assert_eq!(t.entry(n, n), big(1), "S*(n, n) at n = {n}");
        }
        assert_eq!(
            t.row(8),
            &[
                big(1),
                big(5461),
                big(118_482),
                big(196_053),
                big(61_490),
                big(5_278),
                big(140),
                big(1)
            ]
        );
        assert!(t.recursion_failure().is_none());
    }

    #[test]
    fn tampered_triangle_is_caught() {
        let good = sstar(4);
        let mut rows: Vec<Vec<BigInt>> = (1..=4).map(|n| good.row(n).to_vec()).collect();
        rows[2][1] = big(4); // true value is 5
        let bad = SStarTriangle::from_rows(rows);
        assert_eq!(bad.recursion_failure(), Some((3, 2)));
        assert!(bad.polynomial_identity_failure().is_some());
    }

    #[test]
    fn reconstruction_matches_direct_moments() {
        let t = sstar(4);
        let crank = table_ms2(1, 6);
        let rank = table_ns1(1, 6);
        assert_eq!(reconstruct_moment(&crank, 1, 2, &t), big(6));
        assert_eq!(reconstruct_moment(&rank, 1, 2, &t), big(2));
        let crank3 = table_ms2(3, 10);
        let rank3 = table_ns1(3, 10);
        for table in [&crank3, &rank3] {
            for k in 1..=3u32 {
                for n in 1..=10 {
                    assert_eq!(
                        reconstruct_moment(table, k, n, &t),
                        moment(table, 2 * k, n),
                        "k = {k}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn g_form_matches_symmetrized() {
        let crank = table_ms2(1, 6);
        let rank = table_ns1(1, 6);
        assert_eq!(symmetrized_via_g(&crank, 1, 2), big(3));
        assert_eq!(symmetrized_via_g(&rank, 1, 2), big(1));
        let crank3 = table_ms2(3, 10);
        let rank3 = table_ns1(3, 10);
        for table in [&crank3, &rank3] {
            for k in 1..=3u32 {
                for n in 1..=10 {
                    assert_eq!(
                        symmetrized_via_g(table, k, n),
                        symmetrized_moment(table, 2 * k, n),
                        "k = {k}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn spt_examples() {
        assert_eq!(spt_k_finite(2, 1, 1), big(2));
        for (n, expect) in [(1usize, 1i64), (2, 3), (3, 5), (4, 10), (5, 14)] {
            assert_eq!(spt_k_finite(n, n, 1), big(expect), "spt({n}, {n})");
        }
        let frozen = [1i64, 3, 5, 9, 12, 21, 25, 36, 47, 60];
        for (i, &expect) in frozen.iter().enumerate() {
            let n = i + 1;
            assert_eq!(spt_k_finite(n, 3, 1), big(expect), "spt({n}, 3)");
            assert_eq!(spt_finite(n, 3), expect as u64);
        }
    }

    #[test]
    fn frozen_even_moments_at_cap_3() {
        let rank = table_ns1(3, 8);
        let crank = table_ms2(3, 8);
        let expect = [
            (2i64, 0i64),
            (8, 2),
            (18, 8),
            (38, 20),
            (64, 40),
            (114, 72),
            (168, 118),
            (258, 186),
        ];
        for (i, &(m, nv)) in expect.iter().enumerate() {
            let n = i + 1;
            assert_eq!(moment(&crank, 2, n), big(m), "M at n = {n}");
            assert_eq!(moment(&rank, 2, n), big(nv), "N at n = {n}");
        }
    }

    #[test]
    fn scan_clean_grid() {
        let report = inequality_scan(&[1], &[1], &[2], 10);
        assert!(report.passed());
        assert_eq!(report.checked, 1);
        let cell = &report.cells[0];
        assert_eq!(cell.crank_moment, big(6));
        assert_eq!(cell.rank_moment, big(2));
        assert_eq!(cell.margin, big(4));
        assert_eq!(cell.spt_margin, big(2));
        let j = report.to_json();
        assert_eq!(j["checked"], 1);
        assert_eq!(j["violations"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn scan_catches_tampered_table() {
        let rank = table_ns1(2, 6);
        let mut crank = table_ms2(2, 6);
        // inflate a rank-side win by zeroing the crank row
        for m in -4i64..=4 {
            crank.set_entry(m, 4, 0);
        }
        let (_, violations, truncated) = scan_with_tables(&rank, &crank, &[1], &[3, 4], 10);
        assert!(!truncated);
        assert!(violations.iter().any(|v| v.n == 4 && v.condition == "moment-inequality"));
        assert!(violations.iter().all(|v| v.n != 3));
    }

    #[test]
    fn scan_violation_cap_truncates() {
        let rank = table_ns1(1, 8);
        let mut crank = table_ms2(1, 8);
        for n in 1..=8 {
            let row: Vec<i64> = crank.row(n).keys().copied().collect();
            for m in row {
                crank.set_entry(m, n, 0);
            }
        }
        let (_, violations, truncated) = scan_with_tables(&rank, &crank, &[1], &[1, 2, 3, 4], 3);
        assert_eq!(violations.len(), 3);
        assert!(truncated);
    }

    #[test]
    fn scan_small_grid_holds() {
        let report = inequality_scan(&[1, 2, 3], &[1, 2, 3], &(1..=10).collect::<Vec<_>>(), 10);
        assert!(report.passed());
        assert_eq!(report.checked, 3 * 3 * 10);
    }
}
