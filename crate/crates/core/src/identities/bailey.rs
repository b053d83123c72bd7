//! Bailey pairs: the defining relation, the two built-in pairs behind the
//! crank and rank tables, the lemma's transform at exact rational
//! specializations, and the multisum identity both pairs feed.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num::{BigRational, One, Zero};
use serde_json::json;

use crate::error::CoreError;
use crate::qfunctions::{pochhammer, pochhammer_scalar};
use crate::series::QSeries;

use super::multisum::{multisum_core, multisum_with_head, ChainWeight};
use super::report::{compare_qseries, VerificationReport};

type Family = Arc<dyn Fn(usize, usize) -> QSeries + Send + Sync>;

/// A pair of series families `(α_n, β_n)` claimed to satisfy
/// `β_n = Σ_{r=0..n} α_r / ((q)_{n-r} (aq)_{n+r})`.
#[derive(Clone)]
pub struct BaileyPair {
    name: String,
    a: BigRational,
    alpha: Family,
    beta: Family,
}

impl BaileyPair {
    pub fn new(name: &str, a: BigRational, alpha: Family, beta: Family) -> Self {
        BaileyPair {
            name: name.to_string(),
            a,
            alpha,
            beta,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// `α_n` truncated at `trunc`.
    pub fn alpha(&self, n: usize, trunc: usize) -> QSeries {
        (self.alpha)(n, trunc)
    }

    /// `β_n` truncated at `trunc`.
    pub fn beta(&self, n: usize, trunc: usize) -> QSeries {
        (self.beta)(n, trunc)
    }
}

impl fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaileyPair")
            .field("name", &self.name)
            .field("a", &self.a)
            .finish_non_exhaustive()
    }
}

fn signed_monomial_pair(sign_positive: bool, e: usize, n: usize, trunc: usize) -> QSeries {
    let sign = if sign_positive {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    &QSeries::monomial(sign.clone(), e, trunc) + &QSeries::monomial(sign, e + n, trunc)
}

/// The pair behind the crank table: `α_n = (-1)ⁿ q^{n(n-1)/2} (1 + qⁿ)`,
/// `β_n = δ_{n,0}`, at `a = 1`.
pub fn crank_pair() -> BaileyPair {
    BaileyPair::new(
        "crank",
        BigRational::one(),
        Arc::new(|n, trunc| {
            if n == 0 {
                QSeries::one(trunc)
            } else {
                signed_monomial_pair(n % 2 == 0, n * (n - 1) / 2, n, trunc)
            }
        }),
        Arc::new(|n, trunc| {
            if n == 0 {
                QSeries::one(trunc)
            } else {
                QSeries::zero(trunc)
            }
        }),
    )
}

/// The pair behind the rank table: `α_n = (-1)ⁿ q^{n(3n-1)/2} (1 + qⁿ)`,
/// `β_n = 1/(q)_n`, at `a = 1`.
pub fn rank_pair() -> BaileyPair {
    BaileyPair::new(
        "rank",
        BigRational::one(),
        Arc::new(|n, trunc| {
            if n == 0 {
                QSeries::one(trunc)
            } else {
                signed_monomial_pair(n % 2 == 0, n * (3 * n - 1) / 2, n, trunc)
            }
        }),
        Arc::new(|n, trunc| pochhammer(n, trunc).invert().expect("constant term 1")),
    )
}

/// Verify the defining relation for every `n <= nmax`, expanding all
/// denominators as series up to `trunc` (nothing is cleared or cancelled).
pub fn bailey_check(pair: &BaileyPair, nmax: usize, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    for n in 0..=nmax {
        let mut rhs = QSeries::zero(trunc);
        for r in 0..=n {
            let den = &pochhammer(n - r, trunc) * &pochhammer_scalar(&pair.a, 1, n + r, trunc);
            rhs = &rhs + &(&pair.alpha(r, trunc) * &den.invert().expect("constant term 1"));
        }
        let lhs = pair.beta(n, trunc);
        let params = json!({"pair": pair.name(), "nmax": nmax, "Q": trunc, "n": n});
        let mut report = compare_qseries("bailey", params, &lhs, &rhs);
        if !report.passed() {
            report.elapsed = start.elapsed();
            return report;
        }
    }
    let mut report =
        VerificationReport::pass("bailey", json!({"pair": pair.name(), "nmax": nmax, "Q": trunc}));
    report.elapsed = start.elapsed();
    report
}

fn validate_rho(name: &'static str, rho: &BigRational) -> Result<(), CoreError> {
    if rho.is_zero() || rho.is_one() {
        return Err(CoreError::InvalidRho {
            name,
            value: rho.to_string(),
        });
    }
    Ok(())
}

/// One application of the lemma at exact rational `(ρ1, ρ2)`, `a = 1`:
///
/// `α'_n = (ρ1)_n (ρ2)_n (ρ1ρ2)⁻ⁿ qⁿ α_n / ((q/ρ1)_n (q/ρ2)_n)`,
/// `β'_n = Σ_j (ρ1)_j (ρ2)_j (q/ρ1ρ2)_{n-j} (ρ1ρ2)⁻ʲ qʲ β_j
///         / ((q)_{n-j} (q/ρ1)_n (q/ρ2)_n)`.
///
/// `ρ = 0` and `ρ = 1` are rejected: zero has no reciprocal and one makes
/// `(ρ)_n` collapse, which is the rational instance of a `qⁱ` specialization.
pub fn bailey_transform(
    pair: &BaileyPair,
    rho1: &BigRational,
    rho2: &BigRational,
) -> Result<BaileyPair, CoreError> {
    assert!(pair.a.is_one(), "the transform is implemented at a = 1");
    validate_rho("rho1", rho1)?;
    validate_rho("rho2", rho2)?;
    let r1 = rho1.clone();
    let r2 = rho2.clone();
    let inv_prod = (r1.clone() * &r2).recip();
    let name = format!("{}[rho1={}, rho2={}]", pair.name, rho1, rho2);

    let alpha_parent = pair.alpha.clone();
    let (a1, a2, ap) = (r1.clone(), r2.clone(), inv_prod.clone());
    let alpha: Family = Arc::new(move |n, trunc| {
        let num = &pochhammer_scalar(&a1, 0, n, trunc) * &pochhammer_scalar(&a2, 0, n, trunc);
        let den = &pochhammer_scalar(&a1.clone().recip(), 1, n, trunc)
            * &pochhammer_scalar(&a2.clone().recip(), 1, n, trunc);
        let factor = QSeries::monomial(num_pow(&ap, n), n, trunc);
        &(&num * &den.invert().expect("constant term 1")) * &(&factor * &alpha_parent(n, trunc))
    });

    let beta_parent = pair.beta.clone();
    let (b1, b2, bp) = (r1, r2, inv_prod);
    let beta: Family = Arc::new(move |n, trunc| {
        let mut total = QSeries::zero(trunc);
        for j in 0..=n {
            let mut term = &pochhammer_scalar(&b1, 0, j, trunc) * &pochhammer_scalar(&b2, 0, j, trunc);
            term = &term * &pochhammer_scalar(&bp, 1, n - j, trunc);
            term = &term * &pochhammer(n - j, trunc).invert().expect("constant term 1");
            term = &term * &QSeries::monomial(num_pow(&bp, j), j, trunc);
            total = &total + &(&term * &beta_parent(j, trunc));
        }
        let den = &pochhammer_scalar(&b1.clone().recip(), 1, n, trunc)
            * &pochhammer_scalar(&b2.clone().recip(), 1, n, trunc);
        &total * &den.invert().expect("constant term 1")
    });

    Ok(BaileyPair::new(&name, BigRational::one(), alpha, beta))
}

fn num_pow(base: &BigRational, exp: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// The multisum identity both built-in pairs satisfy: the
/// `(q)²_{n_1} β_{n_1}`-weighted chain sum equals the plain chain sum plus
/// `Σ_{r=1..N} (q)²_N q^{kr} α_r / ((q)_{N-r} (q)_{N+r} (1-q^r)^{2k})`.
pub fn check_prop_51(pair: &BaileyPair, k: u32, n_cap: usize, trunc: usize) -> VerificationReport {
    let start = Instant::now();
    assert!(pair.a.is_one(), "the identity requires a = 1");
    assert!(
        pair.alpha(0, trunc) == QSeries::one(trunc) && pair.beta(0, trunc) == QSeries::one(trunc),
        "the identity requires alpha_0 = beta_0 = 1"
    );
    let lhs = multisum_with_head(n_cap, k, trunc, |m, t| {
        let p = pochhammer(m, t);
        &(&p * &p) * &pair.beta(m, t)
    });
    let mut rhs = multisum_core(n_cap, k, trunc, ChainWeight::One);
    let pn = pochhammer(n_cap, trunc);
    let pn2 = &pn * &pn;
    for r in 1..=n_cap {
        let mut den = &pochhammer(n_cap - r, trunc) * &pochhammer(n_cap + r, trunc);
        for _ in 0..2 * k {
            den = den.mul_one_minus_q_pow(r);
        }
        let term = &(&pn2 * &den.invert().expect("constant term 1"))
            * &(&QSeries::monomial(BigRational::one(), k as usize * r, trunc)
                * &pair.alpha(r, trunc));
        rhs = &rhs + &term;
    }
    let params = json!({"pair": pair.name(), "k": k, "N": n_cap, "Q": trunc});
    let mut report = compare_qseries("prop5.1", params, &lhs, &rhs);
    report.elapsed = start.elapsed();
    report
}
