//! Randomized structural properties: ring axioms for the series types,
//! inversion round trips, q-Pochhammer/Gaussian-binomial identities, table
//! invariants against direct partition enumeration, and the multisum kernel
//! against naive chain enumeration.

use num::{BigRational, One};
use proptest::prelude::*;

use qmoments_core::identities::{bailey_check, bailey_transform, crank_pair, multisum_core, rank_pair, ChainWeight};
use qmoments_core::partitions::{partitions_of, table_ms2, table_ns1};
use qmoments_core::qfunctions::{gaussian_binomial, pochhammer, pochhammer_shifted, Terms};
use qmoments_core::{QSeries, ZQSeries};

const Q: usize = 6;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn series() -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(rational(), Q + 1).prop_map(QSeries::from_coeffs)
}

/// A series with its constant coefficient forced away from zero.
fn unit_series() -> impl Strategy<Value = QSeries> {
    (series(), 1i64..=9, 1i64..=4).prop_map(|(mut s, n, d)| {
        s.set_coeff(0, BigRational::new(n.into(), d.into()));
        s
    })
}

proptest! {
    #[test]
    fn addition_commutes(a in series(), b in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in series(), b in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn negation_cancels(a in series()) {
        prop_assert!((&a + &-&a).is_zero());
    }

    #[test]
    fn inversion_round_trips(a in unit_series()) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(&a * &inv, QSeries::one(Q));
    }

    #[test]
    fn inversion_is_multiplicative(a in unit_series(), b in unit_series()) {
        let lhs = (&a * &b).invert().unwrap();
        let rhs = &a.invert().unwrap() * &b.invert().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_factor_inversion_round_trips(z in -3i64..=3, s in 1usize..=5) {
        let inv = ZQSeries::invert_factor(z, s, 10).unwrap();
        let factor = &ZQSeries::one(10) - &ZQSeries::monomial(z, s, BigRational::one(), 10);
        prop_assert_eq!(&inv * &factor, ZQSeries::one(10));
    }

    #[test]
    fn odd_collapse_of_symmetric_series_vanishes(
        entries in proptest::collection::vec((0usize..=6, 0i64..=6, -9i64..=9), 0..12),
        k in prop::sample::select(vec![1u32, 3, 5]),
    ) {
        let mut s = ZQSeries::zero(6);
        for (n, m, v) in entries {
            let v = BigRational::from_integer(v.into());
            s.set_coeff(n, m, v.clone());
            s.set_coeff(n, -m, v);
        }
        prop_assert!(s.is_z_symmetric());
        prop_assert!(s.weighted_collapse(k).is_zero());
    }

    #[test]
    fn pochhammer_concatenates(m in 0usize..=8, n in 0usize..=8) {
        let lhs = pochhammer(m + n, 12);
        let rhs = &pochhammer(m, 12) * &pochhammer_shifted(m + 1, Terms::Finite(n), 12);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gaussian_binomial_is_symmetric(big_n in 0usize..=10, k in 0i64..=10) {
        prop_assume!(k <= big_n as i64);
        let lhs = gaussian_binomial(big_n, k, 30);
        let rhs = gaussian_binomial(big_n, big_n as i64 - k, 30);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gaussian_binomial_satisfies_pascal(big_n in 1usize..=10, k in 1i64..=9) {
        prop_assume!(k < big_n as i64);
        let lhs = gaussian_binomial(big_n, k, 30);
        let shift = QSeries::monomial(BigRational::one(), k as usize, 30);
        let rhs = &gaussian_binomial(big_n - 1, k - 1, 30)
            + &(&shift * &gaussian_binomial(big_n - 1, k, 30));
        prop_assert_eq!(lhs, rhs);
    }

    // at z = 1 both bivariate generating functions degenerate to the one for
    // partitions into parts of size at most the cap, so both tables share the
    // same column sums
    #[test]
    fn table_columns_count_part_capped_partitions(cap in 1usize..=5, nmax in 1usize..=10) {
        let rank = table_ns1(cap, nmax);
        let crank = table_ms2(cap, nmax);
        prop_assert!(rank.is_symmetric());
        prop_assert!(crank.is_symmetric());
        for n in 1..=nmax {
            let count = partitions_of(n, Some(cap)).count() as i64;
            prop_assert_eq!(rank.column_sum(n), count);
            prop_assert_eq!(crank.column_sum(n), count);
        }
    }
}

/// `q^m / (1 - q^m)^2`, built from first principles for the naive comparison.
fn naive_chain_factor(m: usize, trunc: usize) -> QSeries {
    let geom = (&QSeries::one(trunc) - &QSeries::monomial(BigRational::one(), m, trunc))
        .invert()
        .unwrap();
    &QSeries::monomial(BigRational::one(), m, trunc) * &geom.pow(2)
}

fn naive_multisum(n_cap: usize, k: u32, trunc: usize, weight: ChainWeight) -> QSeries {
    fn rec(hi: usize, depth: u32, trunc: usize, weight: ChainWeight, acc: &QSeries, out: &mut QSeries) {
        if depth == 0 {
            *out = &*out + acc;
            return;
        }
        for m in 1..=hi {
            let mut next = acc * &naive_chain_factor(m, trunc);
            if depth == 1 {
                if let ChainWeight::PochFirst = weight {
                    next = &next * &pochhammer(m, trunc);
                }
            }
            rec(m, depth - 1, trunc, weight, &next, out);
        }
    }
    let mut out = QSeries::zero(trunc);
    rec(n_cap, k, trunc, weight, &QSeries::one(trunc), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multisum_matches_naive_chain_enumeration(
        n_cap in 1usize..=4,
        k in 1u32..=3,
        trunc in 4usize..=10,
        weight in prop::sample::select(vec![ChainWeight::One, ChainWeight::PochFirst]),
    ) {
        let fast = multisum_core(n_cap, k, trunc, weight);
        let slow = naive_multisum(n_cap, k, trunc, weight);
        prop_assert_eq!(fast, slow);
    }
}

fn small_rho() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=5)
        .prop_filter("rho must avoid 0 and 1", |(n, d)| *n != 0 && n != d)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transformed_pairs_still_satisfy_the_relation(
        rho1 in small_rho(),
        rho2 in small_rho(),
        use_rank in any::<bool>(),
    ) {
        let base = if use_rank { rank_pair() } else { crank_pair() };
        let pair = bailey_transform(&base, &rho1, &rho2).unwrap();
        let report = bailey_check(&pair, 3, 8);
        prop_assert!(report.passed(), "{}", report);
    }
}
