//! Standard q-objects: Pochhammer symbols `(q;q)_n`, shifted and scalar
//! variants, truncated infinite products, and Gaussian binomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, One};

use crate::series::QSeries;

/// Number of factors in a Pochhammer-type product. `Infinite` keeps only the
/// factors that can affect coefficients up to the truncation order; the
/// dropped ones are congruent to 1 there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terms {
    Finite(usize),
    Infinite,
}

static POCH_CACHE: OnceLock<Mutex<HashMap<(usize, usize), QSeries>>> = OnceLock::new();
static GAUSS_CACHE: OnceLock<Mutex<HashMap<(usize, usize), Vec<BigInt>>>> = OnceLock::new();

/// `(q;q)_n = Π_{i=1..n} (1 - q^i)`, truncated. Memoized per `(n, Q)`; factors
/// with `i > Q` are identity at this order, so the key is clamped.
pub fn pochhammer(n: usize, trunc: usize) -> QSeries {
    let n = n.min(trunc);
    let cache = POCH_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, trunc)) {
        return hit.clone();
    }
    let mut out = QSeries::one(trunc);
    for i in 1..=n {
        out = out.mul_one_minus_q_pow(i);
    }
    cache.lock().unwrap().insert((n, trunc), out.clone());
    out
}

/// `(q;q)_∞` truncated at `Q`.
pub fn pochhammer_inf(trunc: usize) -> QSeries {
    pochhammer(trunc, trunc)
}

/// `(q^a;q)_n = Π_{i=0..n-1} (1 - q^{a+i})` for `a >= 1`.
pub fn pochhammer_shifted(a: usize, n: Terms, trunc: usize) -> QSeries {
    assert!(a >= 1, "the base exponent must be positive, got {a}");
    let count = match n {
        Terms::Finite(k) => k,
        // factors beyond q^trunc cannot touch retained coefficients
        Terms::Infinite => (trunc + 1).saturating_sub(a),
    };
    let mut out = QSeries::one(trunc);
    for i in 0..count {
        let e = a + i;
        if e > trunc {
            break;
        }
        out = out.mul_one_minus_q_pow(e);
    }
    out
}

/// `(c·q^s;q)_n = Π_{i=0..n-1} (1 - c q^{s+i})` for an exact rational `c`.
///
/// With `s = 0` the first factor is the constant `1 - c`.
pub fn pochhammer_scalar(c: &BigRational, s: usize, n: usize, trunc: usize) -> QSeries {
    let mut out = QSeries::one(trunc);
    for i in 0..n {
        let e = s + i;
        if e > trunc {
            break;
        }
        let factor = &QSeries::one(trunc) - &QSeries::monomial(c.clone(), e, trunc);
        out = &out * &factor;
    }
    out
}

/// Gaussian binomial `[big_n, n]` as a truncated series: the exact polynomial
/// `(q)_{big_n} / ((q)_n (q)_{big_n - n})`, or 0 outside `0 <= n <= big_n`.
///
/// Computed by series division with an integrality assertion; the q-Pascal
/// recurrence is deliberately *not* used here so it stays available as an
/// independent test oracle.
pub fn gaussian_binomial(big_n: usize, n: i64, trunc: usize) -> QSeries {
    if n < 0 || n as usize > big_n {
        return QSeries::zero(trunc);
    }
    let k = (n as usize).min(big_n - n as usize);
    let poly = gaussian_poly(big_n, k);
    let mut out = QSeries::zero(trunc);
    for (e, c) in poly.iter().enumerate().take(trunc + 1) {
        out.set_coeff(e, BigRational::from(c.clone()));
    }
    out
}

/// Full coefficient list of `[big_n, k]`, a polynomial of degree `k(big_n-k)`.
fn gaussian_poly(big_n: usize, k: usize) -> Vec<BigInt> {
    let cache = GAUSS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(big_n, k)) {
        return hit.clone();
    }
    let deg = k * (big_n - k);
    let num = pochhammer(big_n, deg);
    let den = &pochhammer(k, deg) * &pochhammer(big_n - k, deg);
    let quot = &num * &den.invert().expect("(q)_n has constant term 1");
    let coeffs = quot
        .integer_coeffs()
        .expect("Gaussian binomial division must come out integral");
    assert!(coeffs[0].is_one(), "Gaussian binomial must have constant term 1");
    cache.lock().unwrap().insert((big_n, k), coeffs.clone());
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn empty_products_are_one() {
        assert_eq!(pochhammer(0, 5), QSeries::one(5));
        assert_eq!(pochhammer_shifted(3, Terms::Finite(0), 5), QSeries::one(5));
    }

    #[test]
    fn poch_two_expands() {
        assert_eq!(pochhammer(2, 5), QSeries::from_ints(&[1, -1, -1, 1], 5));
    }

    #[test]
    fn poch_three_top_coefficient() {
        // (1-q)(1-q^2)(1-q^3) expanded term by term:
        // 1 - q - q^2 + q^4 + q^5 - q^6
        let p = pochhammer(3, 6);
        assert_eq!(p, QSeries::from_ints(&[1, -1, -1, 0, 1, 1, -1], 6));
    }

    #[test]
    fn shifted_single_factor() {
        assert_eq!(
            pochhammer_shifted(2, Terms::Finite(1), 4),
            QSeries::from_ints(&[1, 0, -1], 4)
        );
    }

    #[test]
    fn infinite_product_matches_pentagonal_start() {
        let p = pochhammer_shifted(1, Terms::Infinite, 5);
        assert_eq!(p, QSeries::from_ints(&[1, -1, -1, 0, 0, 1], 5));
        assert_eq!(p, pochhammer_inf(5));
    }

    #[test]
    fn scalar_pochhammer_at_unit_scalar_matches_shifted() {
        let one = BigRational::one();
        assert_eq!(
            pochhammer_scalar(&one, 1, 4, 10),
            pochhammer_shifted(1, Terms::Finite(4), 10)
        );
    }

    #[test]
    fn scalar_pochhammer_constant_factor() {
        // (c; q)_1 = 1 - c with s = 0
        let c = BigRational::new(BigInt::from(2), BigInt::from(3));
        let p = pochhammer_scalar(&c, 0, 1, 4);
        assert_eq!(*p.coeff(0), BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(p.coeff(1).is_zero());
    }

    #[test]
    fn gaussian_small_cases() {
        assert_eq!(gaussian_binomial(2, 1, 4), QSeries::from_ints(&[1, 1], 4));
        assert_eq!(
            gaussian_binomial(4, 2, 4),
            QSeries::from_ints(&[1, 1, 2, 1, 1], 4)
        );
        assert!(gaussian_binomial(3, 5, 4).is_zero());
        assert!(gaussian_binomial(3, -1, 4).is_zero());
        assert_eq!(gaussian_binomial(5, 0, 3), QSeries::one(3));
    }

    #[test]
    fn gaussian_symmetry() {
        for big_n in 0..=12usize {
            for n in 0..=big_n {
                let q = big_n * n; // >= n(big_n - n)
                assert_eq!(
                    gaussian_binomial(big_n, n as i64, q),
                    gaussian_binomial(big_n, (big_n - n) as i64, q),
                    "symmetry failed at [{big_n}, {n}]"
                );
            }
        }
    }

    #[test]
    fn gaussian_pascal_recurrence() {
        // [N n] = [N-1 n-1] + q^n [N-1 n]: the independent construction.
        for big_n in 1..=10usize {
            for n in 0..=big_n {
                let q = big_n * big_n;
                let lhs = gaussian_binomial(big_n, n as i64, q);
                let a = gaussian_binomial(big_n - 1, n as i64 - 1, q);
                let b = gaussian_binomial(big_n - 1, n as i64, q);
                let shift = QSeries::monomial(BigRational::one(), n, q);
                let rhs = &a + &(&shift * &b);
                assert_eq!(lhs, rhs, "q-Pascal failed at [{big_n}, {n}]");
            }
        }
    }

    #[test]
    fn gaussian_coefficient_sum_is_binomial() {
        // evaluating at q = 1 (sum of coefficients) gives C(N, n)
        let binom = |n: u64, k: u64| -> u64 {
            let mut r = 1u64;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        };
        for big_n in 0..=9usize {
            for n in 0..=big_n {
                let q = big_n * big_n;
                let g = gaussian_binomial(big_n, n as i64, q);
                let total: BigRational = g.coeffs().iter().sum();
                assert_eq!(
                    total,
                    BigRational::from(BigInt::from(binom(big_n as u64, n as u64)))
                );
            }
        }
    }

    #[test]
    fn memoized_pochhammer_is_consistent() {
        let a = pochhammer(7, 12);
        let b = pochhammer(7, 12);
        assert_eq!(a, b);
        // same product at a clamped length: (q)_n stabilizes for n >= Q
        assert_eq!(pochhammer(30, 12), pochhammer(12, 12));
    }
}
