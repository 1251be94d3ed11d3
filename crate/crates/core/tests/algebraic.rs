mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use betalab::algebraic::{AlgebraicReal, FieldElement};
use betalab::poly::IntPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn gamma() -> Arc<AlgebraicReal> {
    Arc::new(AlgebraicReal::unique_positive_root(&IntPolynomial::from_i64s(&[-1, -1, -1, 1])).unwrap())
}

fn element(c: Vec<(i64, i64)>) -> FieldElement {
    let coeffs = c
        .into_iter()
        .map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect();
    FieldElement::from_coeffs(&gamma(), coeffs)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..6), 3)
}

proptest! {
    #[test]
    fn floor_and_frac_split_exactly(c in coeffs()) {
        let x = element(c);
        let (k, frac) = x.floor_and_frac();
        prop_assert_ne!(frac.signum(), Ordering::Less);
        prop_assert_eq!(frac.add_integer(&BigInt::from(-1)).signum(), Ordering::Less);
        prop_assert!(frac.add_integer(&k).sub(&x).unwrap().is_zero());
    }

    #[test]
    fn comparison_agrees_with_floats_when_far_apart(a in coeffs(), b in coeffs()) {
        let (x, y) = (element(a), element(b));
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x.compare(&y).unwrap(), fx.partial_cmp(&fy).unwrap());
        }
    }

    #[test]
    fn products_reduce_like_polynomials(a in coeffs(), b in coeffs()) {
        let (x, y) = (element(a), element(b));
        let naive = common::reduce_mod(common::poly_mul_q(x.coeffs(), y.coeffs()), &[-1, -1, -1, 1]);
        let ours = x.mul(&y).unwrap();
        let mut got = ours.coeffs().to_vec();
        got.resize(3, BigRational::zero());
        prop_assert_eq!(got, naive);
    }
}
