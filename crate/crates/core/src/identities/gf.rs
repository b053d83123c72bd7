//! Closed-form generating functions and the checks that pit them against
//! table-derived series.

use std::time::Instant;

use num::{BigRational, One};
use serde_json::json;

use crate::moments::symmetrized_moment;
use crate::partitions::{Cap, StatKind, StatTable};
use crate::qfunctions::{gaussian_binomial, pochhammer, pochhammer_inf};
use crate::series::{QSeries, ZQSeries};

use super::report::{compare_qseries, compare_zqseries, Mismatch, VerificationReport};

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Running product `Π_{i=1..j} 1/((1-zq^i)(1-z⁻¹q^i))` for `j = 0..=n_cap`.
fn geometric_ladder(n_cap: usize, trunc: usize) -> Vec<ZQSeries> {
    let mut out = Vec::with_capacity(n_cap + 1);
    out.push(ZQSeries::one(trunc));
    for i in 1..=n_cap {
        let up = ZQSeries::invert_factor(1, i, trunc).expect("q-exponent >= 1");
        let down = ZQSeries::invert_factor(-1, i, trunc).expect("q-exponent >= 1");
        let next = &(&out[i - 1] * &up) * &down;
        out.push(next);
    }
    out
}

/// Bivariate series whose coefficient table is the finite rank table:
/// `Σ_{j=1..N} [N j] (q)_j q^{j²} / ((zq)_j (z⁻¹q)_j)`.
pub fn rs1_series(n_cap: usize, trunc: usize) -> ZQSeries {
    assert!(n_cap >= 1, "the cap must be positive");
    let ladder = geometric_ladder(n_cap, trunc);
    let mut total = ZQSeries::zero(trunc);
    for j in 1..=n_cap {
        if j * j > trunc {
            break;
        }
        let pref = &(&gaussian_binomial(n_cap, j as i64, trunc) * &pochhammer(j, trunc))
            * &QSeries::monomial(BigRational::one(), j * j, trunc);
        total = &total + &(&ladder[j] * &pref);
    }
    total
}

/// Bivariate series whose coefficient table is the finite crank table:
/// `(q)_N / ((zq)_N (z⁻¹q)_N)`.
pub fn cs2_series(n_cap: usize, trunc: usize) -> ZQSeries {
    assert!(n_cap >= 1, "the cap must be positive");
    let ladder = geometric_ladder(n_cap, trunc);
    &ladder[n_cap] * &pochhammer(n_cap, trunc)
}

/// `Σ_n symmetrized_moment(table, k, n) qⁿ` up to `trunc`.
pub fn symmetrized_moment_series(table: &StatTable, k: u32, trunc: usize) -> QSeries {
    assert!(
        table.nmax() >= trunc,
        "the table reaches n = {} but the series needs {}",
        table.nmax(),
        trunc
    );
    let coeffs = (0..=trunc)
        .map(|n| BigRational::from_integer(symmetrized_moment(table, k, n)))
        .collect();
    QSeries::from_coeffs(coeffs)
}

fn half_exponent(kind: StatKind, n: usize, nu: u32) -> usize {
    let v = nu as usize * n;
    match kind {
        StatKind::Rank => n * (3 * n - 1) / 2 + v,
        StatKind::Crank => n * (n - 1) / 2 + v,
    }
}

fn sym_positive_exponent(kind: StatKind, n: usize, nu: u32) -> usize {
    let v = nu as usize * n;
    match kind {
        StatKind::Rank => n * (3 * n + 1) / 2 + v,
        StatKind::Crank => n * (n + 1) / 2 + v,
    }
}

/// Shared denominator `(q)_{N+n} (q)_{N-n} (1 - qⁿ)^{2ν}`, inverted.
fn inverted_denominator(n_cap: usize, n: usize, nu: u32, trunc: usize) -> QSeries {
    let mut den = &pochhammer(n_cap + n, trunc) * &pochhammer(n_cap - n, trunc);
    for _ in 0..2 * nu {
        den = den.mul_one_minus_q_pow(n);
    }
    den.invert().expect("denominator has constant term 1")
}

fn gf_rhs_half(kind: StatKind, n_cap: usize, nu: u32, trunc: usize) -> QSeries {
    let mut total = QSeries::zero(trunc);
    for n in 1..=n_cap {
        let e = half_exponent(kind, n, nu);
        if e > trunc {
            continue;
        }
        let sign = rational(if n % 2 == 1 { 1 } else { -1 });
        let num = &QSeries::monomial(sign.clone(), e, trunc)
            + &QSeries::monomial(sign, e + n, trunc);
        total = &total + &(&num * &inverted_denominator(n_cap, n, nu, trunc));
    }
    &pochhammer(n_cap, trunc) * &total
}

fn gf_rhs_symmetric(kind: StatKind, n_cap: usize, nu: u32, trunc: usize) -> QSeries {
    let mut total = QSeries::zero(trunc);
    for r in 1..=n_cap {
        // the summand at -r, after normalizing (1 - q^{-r})^{-2ν}, lands on
        // the same denominator with the half-form exponent
        let e_pos = sym_positive_exponent(kind, r, nu);
        let e_neg = half_exponent(kind, r, nu);
        if e_neg > trunc {
            continue;
        }
        let sign = rational(if r % 2 == 1 { 1 } else { -1 });
        let num = &QSeries::monomial(sign.clone(), e_pos, trunc)
            + &QSeries::monomial(sign, e_neg, trunc);
        total = &total + &(&num * &inverted_denominator(n_cap, r, nu, trunc));
    }
    &pochhammer(n_cap, trunc) * &total
}

fn gf_rhs(kind: StatKind, n_cap: usize, nu: u32, trunc: usize) -> QSeries {
    assert!(n_cap >= 1, "the cap must be positive");
    assert!(nu >= 1, "the symmetrized order needs nu >= 1");
    let half = gf_rhs_half(kind, n_cap, nu, trunc);
    let sym = gf_rhs_symmetric(kind, n_cap, nu, trunc);
    assert!(
        half == sym,
        "the two displayed closed forms disagree (kind {kind:?}, N = {n_cap}, nu = {nu})"
    );
    half
}

/// Closed form of `Σ_n η_{2ν,N}(n) qⁿ`; both displayed forms are computed and
/// must agree before the result is returned.
pub fn gf_eta_rhs(n_cap: usize, nu: u32, trunc: usize) -> QSeries {
    gf_rhs(StatKind::Rank, n_cap, nu, trunc)
}

/// Closed form of `Σ_n μ_{2ν,N}(n) qⁿ`, same two-form cross-check.
pub fn gf_mu_rhs(n_cap: usize, nu: u32, trunc: usize) -> QSeries {
    gf_rhs(StatKind::Crank, n_cap, nu, trunc)
}

fn classical_gf(kind: StatKind, k: u32, trunc: usize) -> QSeries {
    assert!(k >= 1, "the symmetrized order needs k >= 1");
    let mut total = QSeries::zero(trunc);
    let mut n = 1usize;
    // the sum self-truncates once the leading exponent passes trunc
    while half_exponent(kind, n, k) <= trunc {
        let e = half_exponent(kind, n, k);
        let sign = rational(if n % 2 == 1 { 1 } else { -1 });
        let num = &QSeries::monomial(sign.clone(), e, trunc)
            + &QSeries::monomial(sign, e + n, trunc);
        let mut den = QSeries::one(trunc);
        for _ in 0..2 * k {
            den = den.mul_one_minus_q_pow(n);
        }
        total = &total + &(&num * &den.invert().expect("constant term 1"));
        n += 1;
    }
    let inf = pochhammer_inf(trunc).invert().expect("constant term 1");
    &inf * &total
}

/// Classical (uncapped) analogue of [`gf_eta_rhs`].
pub fn classical_gf_eta(k: u32, trunc: usize) -> QSeries {
    classical_gf(StatKind::Rank, k, trunc)
}

/// Classical (uncapped) analogue of [`gf_mu_rhs`].
pub fn classical_gf_mu(k: u32, trunc: usize) -> QSeries {
    classical_gf(StatKind::Crank, k, trunc)
}

/// Right-hand side shared by the two bivariate identities:
/// `1/(q)_N + (1-z) Σ_{n=1..N} [N n] (-1)ⁿ (q)_n q^{e(n)} / (q)_{N+n}
///  · (1/(1-zqⁿ) - 1/(z-qⁿ))`, with `1/(z-qⁿ)` normalized to
/// `z⁻¹/(1-z⁻¹qⁿ)`.
fn andrews_rhs(n_cap: usize, trunc: usize, exponent: impl Fn(usize) -> usize) -> ZQSeries {
    let inv_pn = pochhammer(n_cap, trunc).invert().expect("constant term 1");
    let mut total = ZQSeries::from_qseries(&inv_pn);
    let one_minus_z = &ZQSeries::one(trunc) - &ZQSeries::monomial(1, 0, BigRational::one(), trunc);
    for n in 1..=n_cap {
        let sign = rational(if n % 2 == 0 { 1 } else { -1 });
        let pref = &(&(&gaussian_binomial(n_cap, n as i64, trunc) * &pochhammer(n, trunc))
            * &QSeries::monomial(sign, exponent(n), trunc))
            * &pochhammer(n_cap + n, trunc).invert().expect("constant term 1");
        let up = ZQSeries::invert_factor(1, n, trunc).expect("q-exponent >= 1");
        let down = &ZQSeries::invert_factor(-1, n, trunc).expect("q-exponent >= 1")
            * &ZQSeries::monomial(-1, 0, BigRational::one(), trunc);
        let diff = &up - &down;
        total = &total + &(&(&one_minus_z * &diff) * &pref);
    }
    total
}

/// Both sides of the rank-side bivariate identity, for comparison or
/// perturbation.
pub fn eq32_sides(n_cap: usize, trunc: usize) -> (ZQSeries, ZQSeries) {
    assert!(n_cap >= 1, "the cap must be positive");
    let ladder = geometric_ladder(n_cap, trunc);
    let mut lhs = ZQSeries::one(trunc); // the n = 0 term
    for n in 1..=n_cap {
        if n * n > trunc {
            break;
        }
        let pref = &(&gaussian_binomial(n_cap, n as i64, trunc) * &pochhammer(n, trunc))
            * &QSeries::monomial(BigRational::one(), n * n, trunc);
        lhs = &lhs + &(&ladder[n] * &pref);
    }
    let rhs = andrews_rhs(n_cap, trunc, |n| n * (3 * n + 1) / 2);
    (lhs, rhs)
}

/// Both sides of the crank-side bivariate identity.
pub fn eq35_sides(n_cap: usize, trunc: usize) -> (ZQSeries, ZQSeries) {
    let lhs = cs2_series(n_cap, trunc);
    let rhs = andrews_rhs(n_cap, trunc, |n| n * (n + 1) / 2);
    (lhs, rhs)
}

pub fn check_bivariate_identity_32(n_cap: usize, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let (lhs, rhs) = eq32_sides(n_cap, trunc);
    let mut r = compare_zqseries("eq3.2", json!({"N": n_cap, "Q": trunc}), &lhs, &rhs);
    r.elapsed = start.elapsed();
    r
}

pub fn check_bivariate_identity_35(n_cap: usize, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    let (lhs, rhs) = eq35_sides(n_cap, trunc);
    let mut r = compare_zqseries("eq3.5", json!({"N": n_cap, "Q": trunc}), &lhs, &rhs);
    r.elapsed = start.elapsed();
    r
}

/// Table-derived `Σ η_{2ν,N}(n) qⁿ` against the closed form.
pub fn check_theorem_22(n_cap: usize, nu: u32, trunc: usize, table: &StatTable) -> VerificationReport {
    let start = Instant::now();
    let lhs = symmetrized_moment_series(table, 2 * nu, trunc);
    let rhs = gf_eta_rhs(n_cap, nu, trunc);
    let mut r = compare_qseries("thm2.2", json!({"N": n_cap, "nu": nu, "Q": trunc}), &lhs, &rhs);
    r.elapsed = start.elapsed();
    r
}

/// Table-derived `Σ μ_{2ν,N}(n) qⁿ` against the closed form.
pub fn check_theorem_26(n_cap: usize, nu: u32, trunc: usize, table: &StatTable) -> VerificationReport {
    let start = Instant::now();
    let lhs = symmetrized_moment_series(table, 2 * nu, trunc);
    let rhs = gf_mu_rhs(n_cap, nu, trunc);
    let mut r = compare_qseries("thm2.6", json!({"N": n_cap, "nu": nu, "Q": trunc}), &lhs, &rhs);
    r.elapsed = start.elapsed();
    r
}

/// Finite closed forms agree with the classical ones through degree
/// `min(N, q_max)` — one report per family.
pub fn check_degeneration(n_cap: usize, nu: u32, q_max: usize) -> Vec<VerificationReport> {
    let trunc = n_cap.min(q_max);
    let mut out = Vec::new();
    for (family, finite, classical) in [
        ("eta", gf_eta_rhs(n_cap, nu, trunc), classical_gf_eta(nu, trunc)),
        ("mu", gf_mu_rhs(n_cap, nu, trunc), classical_gf_mu(nu, trunc)),
    ] {
        let start = Instant::now();
        let params = json!({"family": family, "N": n_cap, "nu": nu, "Q": trunc});
        let mut r = compare_qseries("degeneration", params, &finite, &classical);
        r.elapsed = start.elapsed();
        out.push(r);
    }
    out
}

/// A finite table equals its classical counterpart on rows `n <= N`.
pub fn check_stabilization(finite: &StatTable, classical: &StatTable) -> VerificationReport {
    assert_eq!(finite.kind(), classical.kind(), "tables must count the same statistic");
    let cap = finite
        .cap()
        .as_finite()
        .expect("the first argument must be a finite-cap table");
    assert_eq!(classical.cap(), Cap::Infinite, "the second argument must be classical");
    let depth = cap.min(finite.nmax()).min(classical.nmax());
    let params = json!({"kind": finite.kind_label(), "N": cap, "nmax": depth});
    for n in finite.n_min()..=depth {
        let (a, b) = (finite.row(n), classical.row(n));
        if a != b {
            let m = a
                .keys()
                .chain(b.keys())
                .copied()
                .find(|m| a.get(m) != b.get(m))
                .expect("rows differ");
            return VerificationReport::fail(
                "stabilization",
                params,
                Mismatch {
                    q_degree: n,
                    z_exp: Some(m),
                    lhs: finite.entry(m, n).to_string(),
                    rhs: classical.entry(m, n).to_string(),
                },
            );
        }
    }
    VerificationReport::pass("stabilization", params)
}
