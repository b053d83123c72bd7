//! Report-producing checks for the `S*` triangle and the moment
//! reconstruction identities. These checks index by `(n, k)` or `(n, x)`
//! rather than series degrees; they reuse the mismatch slots with the row in
//! `q_degree` and the inner index in `z_exp`.

use std::time::Instant;

use num::{BigInt, Zero};
use serde_json::json;

use crate::moments::{
    factorial, g_poly_eval, moment, reconstruct_moment, symmetrized_moment, SStarTriangle,
};
use crate::partitions::StatTable;

use super::report::{Mismatch, VerificationReport};

/// Validate a triangle: the recursion must hold row to row and each row `n`
/// must expand `x^{2n}` in the `g_k` basis at the sample points `x = 0..=n`.
pub fn check_sstar(triangle: &SStarTriangle) -> VerificationReport {
    let start = Instant::now();
    let params = json!({"nmax": triangle.nmax()});
    let mut report = if let Some((n, k)) = triangle.recursion_failure() {
        let expect = if n == 1 {
            BigInt::from(1)
        } else {
            triangle.entry(n - 1, k.wrapping_sub(1)) + BigInt::from(k * k) * triangle.entry(n - 1, k)
        };
        VerificationReport::fail(
            "sstar",
            params,
            Mismatch {
                q_degree: n,
                z_exp: Some(k as i64),
                lhs: triangle.entry(n, k).to_string(),
                rhs: expect.to_string(),
            },
        )
    } else if let Some((n, x)) = triangle.polynomial_identity_failure() {
        let lhs = num::pow(BigInt::from(x), 2 * n);
        let mut rhs = BigInt::zero();
        for k in 1..=n {
            rhs += triangle.entry(n, k) * g_poly_eval(k as u32, x);
        }
        VerificationReport::fail(
            "sstar",
            params,
            Mismatch {
                q_degree: n,
                z_exp: Some(x),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        )
    } else {
        VerificationReport::pass("sstar", params)
    };
    report.elapsed = start.elapsed();
    report
}

/// The four reconstruction identities on one table, for `k <= kmax` and
/// `n <= nmax`: the `g_k`-weighted row sum equals `(2k)!` times the
/// symmetrized moment, and the triangle-weighted symmetrized moments rebuild
/// the plain moment of order `2k`.
pub fn check_fg(
    table: &StatTable,
    kmax: u32,
    nmax: usize,
    triangle: &SStarTriangle,
) -> VerificationReport {
    let start = Instant::now();
    assert!(kmax as usize <= triangle.nmax(), "the triangle is too small for kmax");
    let params = json!({"kind": table.kind_label(), "kmax": kmax, "nmax": nmax});
    for k in 1..=kmax {
        for n in 1..=nmax {
            let mut g_sum = BigInt::zero();
            for (&m, &v) in table.row(n) {
                g_sum += g_poly_eval(k, m) * v;
            }
            let scaled = factorial(2 * k) * symmetrized_moment(table, 2 * k, n);
            if g_sum != scaled {
                let mut r = VerificationReport::fail(
                    "fg",
                    params,
                    Mismatch {
                        q_degree: n,
                        z_exp: Some(k as i64),
                        lhs: g_sum.to_string(),
                        rhs: scaled.to_string(),
                    },
                );
                r.elapsed = start.elapsed();
                return r;
            }
            let rebuilt = reconstruct_moment(table, k, n, triangle);
            let direct = moment(table, 2 * k, n);
            if rebuilt != direct {
                let mut r = VerificationReport::fail(
                    "fg",
                    params,
                    Mismatch {
                        q_degree: n,
                        z_exp: Some(k as i64),
                        lhs: rebuilt.to_string(),
                        rhs: direct.to_string(),
                    },
                );
                r.elapsed = start.elapsed();
                return r;
            }
        }
    }
    let mut r = VerificationReport::pass("fg", params);
    r.elapsed = start.elapsed();
    r
}
