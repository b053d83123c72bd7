use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::CoreError;

/// Truncated formal power series in `q` with exact rational coefficients.
///
/// A value represents `c_0 + c_1 q + ... + c_Q q^Q + O(q^{Q+1})`, where `Q` is
/// the truncation order. All arithmetic is exact; products drop terms beyond
/// `q^Q`. Operands must carry the same truncation order — mixing orders is a
/// bug and panics rather than silently re-truncating.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    trunc: usize,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// The zero series at truncation order `trunc`.
    pub fn zero(trunc: usize) -> Self {
        QSeries {
            trunc,
            coeffs: vec![BigRational::zero(); trunc + 1],
        }
    }

    /// The constant series 1.
    pub fn one(trunc: usize) -> Self {
        Self::monomial(BigRational::one(), 0, trunc)
    }

    /// `coeff * q^exp`; exponents beyond the truncation order give 0.
    pub fn monomial(coeff: BigRational, exp: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if exp <= trunc {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// Series with the given leading integer coefficients, zero-padded up to
    /// `trunc`. Panics if more than `trunc + 1` values are supplied.
    pub fn from_ints(vals: &[i64], trunc: usize) -> Self {
        assert!(
            vals.len() <= trunc + 1,
            "{} coefficients do not fit truncation order {}",
            vals.len(),
            trunc
        );
        let mut s = Self::zero(trunc);
        for (i, &v) in vals.iter().enumerate() {
            s.coeffs[i] = BigRational::from(BigInt::from(v));
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        QSeries {
            trunc: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `q^n`. Panics when `n` exceeds the truncation order:
    /// that coefficient is not known, and guessing 0 would be wrong.
    pub fn coeff(&self, n: usize) -> &BigRational {
        assert!(
            n <= self.trunc,
            "coefficient of q^{n} requested from a series truncated at q^{}",
            self.trunc
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Overwrite a single coefficient (mainly for perturbation in tests).
    pub fn set_coeff(&mut self, n: usize, c: BigRational) {
        assert!(n <= self.trunc, "q^{n} is beyond the truncation order {}", self.trunc);
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// All coefficients as integers, or `None` if any is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// Copy of the initial segment up to `new_trunc` (which must not exceed
    /// the current order).
    pub fn truncate_to(&self, new_trunc: usize) -> QSeries {
        assert!(
            new_trunc <= self.trunc,
            "cannot extend a series truncated at q^{} to q^{new_trunc}",
            self.trunc
        );
        QSeries {
            trunc: new_trunc,
            coeffs: self.coeffs[..=new_trunc].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut out = QSeries::one(self.trunc);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse up to the truncation order, by the usual
    /// triangular coefficient solve. Fails when the constant term is zero.
    pub fn invert(&self) -> Result<QSeries, CoreError> {
        if self.coeffs[0].is_zero() {
            return Err(CoreError::ZeroConstantTerm);
        }
        let mut out = QSeries::zero(self.trunc);
        let c0 = &self.coeffs[0];
        out.coeffs[0] = c0.recip();
        for n in 1..=self.trunc {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !out.coeffs[n - k].is_zero() {
                    acc += &self.coeffs[k] * &out.coeffs[n - k];
                }
            }
            if !acc.is_zero() {
                out.coeffs[n] = -acc / c0;
            }
        }
        Ok(out)
    }

    /// `self * (1 - q^e)` without a general convolution.
    pub(crate) fn mul_one_minus_q_pow(&self, e: usize) -> QSeries {
        let mut out = self.clone();
        if e == 0 {
            return QSeries::zero(self.trunc);
        }
        for n in (e..=self.trunc).rev() {
            let t = self.coeffs[n - e].clone();
            out.coeffs[n] -= t;
        }
        out
    }

    fn assert_same_trunc(&self, other: &Self) {
        assert_eq!(
            self.trunc, other.trunc,
            "truncation order mismatch: q^{} vs q^{}",
            self.trunc, other.trunc
        );
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.assert_same_trunc(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        QSeries { trunc: self.trunc, coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.assert_same_trunc(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        QSeries { trunc: self.trunc, coeffs }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.assert_same_trunc(rhs);
        let mut out = QSeries::zero(self.trunc);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(self.trunc + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_term(c: &BigRational, exp: usize, out: &mut String) {
    let mag = c.abs();
    let q = match exp {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{exp}"),
    };
    if exp == 0 {
        out.push_str(&mag.to_string());
    } else if mag.is_one() {
        out.push_str(&q);
    } else {
        out.push_str(&format!("{mag}*{q}"));
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            fmt_term(c, exp, &mut s);
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s} + O(q^{})", self.trunc + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(vals: &[i64], trunc: usize) -> QSeries {
        QSeries::from_ints(vals, trunc)
    }

    #[test]
    fn product_of_conjugate_binomials() {
        let a = ints(&[1, -1], 4);
        let b = ints(&[1, 1], 4);
        assert_eq!(&a * &b, ints(&[1, 0, -1], 4));
    }

    #[test]
    fn geometric_series_times_one_minus_q() {
        let geo = ints(&[1; 11], 10);
        let lin = ints(&[1, -1], 10);
        assert_eq!(&geo * &lin, QSeries::one(10));
    }

    #[test]
    fn two_factor_product_expands() {
        // (1-q)(1-q^2) = 1 - q - q^2 + q^3
        let a = ints(&[1, -1], 5);
        let b = ints(&[1, 0, -1], 5);
        assert_eq!(&a * &b, ints(&[1, -1, -1, 1], 5));
    }

    #[test]
    fn invert_one_minus_q_is_geometric() {
        let a = ints(&[1, -1], 3);
        assert_eq!(a.invert().unwrap(), ints(&[1, 1, 1, 1], 3));
    }

    #[test]
    fn invert_one_is_one() {
        assert_eq!(QSeries::one(6).invert().unwrap(), QSeries::one(6));
    }

    #[test]
    fn invert_zero_constant_term_fails() {
        let a = ints(&[0, 1], 3);
        assert!(matches!(a.invert(), Err(CoreError::ZeroConstantTerm)));
    }

    #[test]
    fn inverse_of_full_product_counts_partitions() {
        // 1/((1-q)(1-q^2)...(1-q^10)) begins with the partition numbers.
        let mut prod = QSeries::one(10);
        for i in 1..=10 {
            prod = prod.mul_one_minus_q_pow(i);
        }
        let inv = prod.invert().unwrap();
        // Independent count: enumerate partitions directly.
        let expect = ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42], 10);
        assert_eq!(inv, expect);
    }

    #[test]
    #[should_panic(expected = "truncation order mismatch")]
    fn mixing_truncation_orders_panics() {
        let a = QSeries::one(4);
        let b = QSeries::one(5);
        let _ = &a + &b;
    }

    #[test]
    #[should_panic(expected = "truncated at")]
    fn coefficient_beyond_truncation_panics() {
        let a = QSeries::one(4);
        a.coeff(5);
    }

    #[test]
    fn mul_inverse_round_trip() {
        let a = ints(&[3, -1, 0, 2, 5], 8);
        let prod = &a * &a.invert().unwrap();
        assert_eq!(prod, QSeries::one(8));
    }

    #[test]
    fn display_matches_expected_shape() {
        let mut s = ints(&[1, -1], 9);
        s.set_coeff(3, BigRational::from(BigInt::from(2)));
        assert_eq!(s.to_string(), "1 - q + 2*q^3 + O(q^10)");
        assert_eq!(QSeries::zero(2).to_string(), "0 + O(q^3)");
        let half = QSeries::monomial(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            2,
            4,
        );
        assert_eq!(half.to_string(), "1/2*q^2 + O(q^5)");
        let neg = ints(&[0, -1], 4);
        assert_eq!(neg.to_string(), "-q + O(q^5)");
    }

    #[test]
    fn truncate_to_keeps_prefix() {
        let a = ints(&[1, 2, 3, 4], 3);
        assert_eq!(a.truncate_to(1), ints(&[1, 2], 1));
    }

    #[test]
    fn integrality_flags() {
        let a = ints(&[1, 2], 3);
        assert!(a.is_integral());
        assert_eq!(
            a.integer_coeffs().unwrap(),
            vec![
                BigInt::from(1),
                BigInt::from(2),
                BigInt::from(0),
                BigInt::from(0)
            ]
        );
        let b = QSeries::monomial(BigRational::new(BigInt::from(1), BigInt::from(3)), 1, 3);
        assert!(!b.is_integral());
        assert!(b.integer_coeffs().is_none());
    }
}
