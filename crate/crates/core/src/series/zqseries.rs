use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::error::CoreError;
use crate::series::QSeries;

/// Series truncated in `q` whose `q^n` coefficient is a finite Laurent
/// polynomial in `z`.
///
/// Storage is one sparse map per `q`-degree, keyed by `z`-exponent and holding
/// only nonzero coefficients, so the recorded key range *is* the exact
/// `z`-support. Truncation-order discipline matches `QSeries`: operands must
/// agree on `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZQSeries {
    trunc: usize,
    slices: Vec<BTreeMap<i64, BigRational>>,
}

fn insert_add(map: &mut BTreeMap<i64, BigRational>, m: i64, v: BigRational) {
    if v.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl ZQSeries {
    pub fn zero(trunc: usize) -> Self {
        ZQSeries {
            trunc,
            slices: vec![BTreeMap::new(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, 0, BigRational::one(), trunc)
    }

    /// `coeff * z^z_exp q^q_exp`; `q`-exponents beyond the order give 0.
    pub fn monomial(z_exp: i64, q_exp: usize, coeff: BigRational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if q_exp <= trunc && !coeff.is_zero() {
            s.slices[q_exp].insert(z_exp, coeff);
        }
        s
    }

    /// Embed a univariate series as the `z^0` layer.
    pub fn from_qseries(q: &QSeries) -> Self {
        let mut s = Self::zero(q.trunc_order());
        for (n, c) in q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                s.slices[n].insert(0, c.clone());
            }
        }
        s
    }

    /// Geometric expansion of `1/(1 - z^s q^t)` as `Σ_u z^{su} q^{tu}`.
    ///
    /// Requires `t >= 1`; at `t = 0` a fixed `q`-degree would receive
    /// infinitely many `z`-terms, so the factor has no expansion here. Factors
    /// of the shape `1/(z - q^t)` must be normalized by the caller to
    /// `z^{-1} / (1 - z^{-1} q^t)` first.
    pub fn invert_factor(z_exp: i64, q_exp: usize, trunc: usize) -> Result<Self, CoreError> {
        if q_exp == 0 {
            return Err(CoreError::NonConvergentFactor { z_exp, q_exp });
        }
        let mut s = Self::zero(trunc);
        let mut u = 0usize;
        while q_exp * u <= trunc {
            s.slices[q_exp * u].insert(z_exp * u as i64, BigRational::one());
            u += 1;
        }
        Ok(s)
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    /// The `q^n` slice as a `z`-exponent → coefficient map (nonzero entries).
    pub fn slice(&self, n: usize) -> &BTreeMap<i64, BigRational> {
        assert!(n <= self.trunc, "q^{n} is beyond the truncation order {}", self.trunc);
        &self.slices[n]
    }

    pub fn coeff(&self, n: usize, m: i64) -> BigRational {
        self.slice(n).get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Overwrite one coefficient (mainly for perturbation in tests).
    pub fn set_coeff(&mut self, n: usize, m: i64, c: BigRational) {
        assert!(n <= self.trunc, "q^{n} is beyond the truncation order {}", self.trunc);
        if c.is_zero() {
            self.slices[n].remove(&m);
        } else {
            self.slices[n].insert(m, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|s| s.is_empty())
    }

    pub fn is_integral(&self) -> bool {
        self.slices
            .iter()
            .all(|s| s.values().all(|c| c.is_integer()))
    }

    /// Global `z`-exponent bounds over all `q`-degrees, if any term exists.
    pub fn z_bounds(&self) -> Option<(i64, i64)> {
        let mut bounds: Option<(i64, i64)> = None;
        for n in 0..=self.trunc {
            if let Some((lo, hi)) = self.z_bounds_at(n) {
                bounds = Some(match bounds {
                    None => (lo, hi),
                    Some((a, b)) => (a.min(lo), b.max(hi)),
                });
            }
        }
        bounds
    }

    pub fn z_bounds_at(&self, n: usize) -> Option<(i64, i64)> {
        let s = self.slice(n);
        match (s.keys().next(), s.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Some((lo, hi)),
            _ => None,
        }
    }

    /// True when every `q^n` slice is supported on `|m| <= n`.
    pub fn support_within_degree(&self) -> bool {
        self.slices
            .iter()
            .enumerate()
            .all(|(n, s)| s.keys().all(|&m| m.unsigned_abs() as usize <= n))
    }

    /// True when every slice is symmetric under `z -> 1/z`.
    pub fn is_z_symmetric(&self) -> bool {
        self.slices.iter().all(|s| {
            s.iter().all(|(&m, c)| {
                s.get(&-m).map(|d| d == c).unwrap_or(false)
            })
        })
    }

    /// `Σ_m m^k c(m,n)` per `q`-degree. `k = 0` evaluates at `z = 1`.
    pub fn weighted_collapse(&self, k: u32) -> QSeries {
        let mut out = QSeries::zero(self.trunc);
        for (n, s) in self.slices.iter().enumerate() {
            let mut acc = BigRational::zero();
            for (&m, c) in s {
                if k == 0 {
                    acc += c;
                } else {
                    let w = BigInt::from(m).pow(k);
                    acc += c * BigRational::from(w);
                }
            }
            out.set_coeff(n, acc);
        }
        out
    }

    /// Earliest differing coefficient between two series of equal order,
    /// scanning `q`-degrees in order and `z`-exponents ascending within one.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, i64, BigRational, BigRational)> {
        self.assert_same_trunc(other);
        for n in 0..=self.trunc {
            let (a, b) = (&self.slices[n], &other.slices[n]);
            let mut keys: Vec<i64> = a.keys().chain(b.keys()).copied().collect();
            keys.sort_unstable();
            keys.dedup();
            for m in keys {
                let x = a.get(&m).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(&m).cloned().unwrap_or_else(BigRational::zero);
                if x != y {
                    return Some((n, m, x, y));
                }
            }
        }
        None
    }

    fn assert_same_trunc(&self, other: &Self) {
        assert_eq!(
            self.trunc, other.trunc,
            "truncation order mismatch: q^{} vs q^{}",
            self.trunc, other.trunc
        );
    }
}

impl Add for &ZQSeries {
    type Output = ZQSeries;
    fn add(self, rhs: &ZQSeries) -> ZQSeries {
        self.assert_same_trunc(rhs);
        let mut out = self.clone();
        for (n, s) in rhs.slices.iter().enumerate() {
            for (&m, c) in s {
                insert_add(&mut out.slices[n], m, c.clone());
            }
        }
        out
    }
}

impl Sub for &ZQSeries {
    type Output = ZQSeries;
    fn sub(self, rhs: &ZQSeries) -> ZQSeries {
        self.assert_same_trunc(rhs);
        let mut out = self.clone();
        for (n, s) in rhs.slices.iter().enumerate() {
            for (&m, c) in s {
                insert_add(&mut out.slices[n], m, -c.clone());
            }
        }
        out
    }
}

impl Mul for &ZQSeries {
    type Output = ZQSeries;
    fn mul(self, rhs: &ZQSeries) -> ZQSeries {
        self.assert_same_trunc(rhs);
        let mut out = ZQSeries::zero(self.trunc);
        for n1 in 0..=self.trunc {
            if self.slices[n1].is_empty() {
                continue;
            }
            for n2 in 0..=(self.trunc - n1) {
                if rhs.slices[n2].is_empty() {
                    continue;
                }
                for (&m1, c1) in &self.slices[n1] {
                    for (&m2, c2) in &rhs.slices[n2] {
                        insert_add(&mut out.slices[n1 + n2], m1 + m2, c1 * c2);
                    }
                }
            }
        }
        out
    }
}

impl Mul<&QSeries> for &ZQSeries {
    type Output = ZQSeries;
    fn mul(self, rhs: &QSeries) -> ZQSeries {
        assert_eq!(
            self.trunc,
            rhs.trunc_order(),
            "truncation order mismatch: q^{} vs q^{}",
            self.trunc,
            rhs.trunc_order()
        );
        let mut out = ZQSeries::zero(self.trunc);
        for (n2, c2) in rhs.coeffs().iter().enumerate() {
            if c2.is_zero() {
                continue;
            }
            for n1 in 0..=(self.trunc - n2) {
                for (&m, c1) in &self.slices[n1] {
                    insert_add(&mut out.slices[n1 + n2], m, c1 * c2);
                }
            }
        }
        out
    }
}

impl Neg for &ZQSeries {
    type Output = ZQSeries;
    fn neg(self) -> ZQSeries {
        let mut out = self.clone();
        for s in &mut out.slices {
            for c in s.values_mut() {
                *c = -c.clone();
            }
        }
        out
    }
}

impl fmt::Debug for ZQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZQSeries(Q={})", self.trunc)?;
        for (n, s) in self.slices.iter().enumerate() {
            if !s.is_empty() {
                let terms: Vec<String> = s.iter().map(|(m, c)| format!("{c}*z^{m}")).collect();
                writeln!(f, "  q^{n}: {}", terms.join(" + "))?;
            }
        }
        Ok(())
    }
}
