use std::sync::Arc;

use cubictheta::cyclonum::cyclotomic_polynomial;
use cubictheta::{CycloContext, CycloNumber};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const ORDERS: [u32; 7] = [1, 3, 4, 6, 12, 36, 72];

fn element(ctx: &Arc<CycloContext>, parts: &[(i64, i64)], den: i64) -> CycloNumber {
    let mut acc = CycloNumber::zero(ctx);
    for &(k, c) in parts {
        acc = &acc + &CycloNumber::root_of_unity(k, ctx).scale(&BigRational::from_integer(c.into()));
    }
    acc.scale(&BigRational::new(BigInt::one(), den.into()))
}

/// Integer multiples of roots of unity and a common denominator.
type Parts = (Vec<(i64, i64)>, i64);

fn parts() -> impl Strategy<Value = Parts> {
    (prop::collection::vec((0i64..72, -6i64..=6), 0..5), 1i64..5)
}

fn triple() -> impl Strategy<Value = (u32, [Parts; 3])> {
    (prop::sample::select(ORDERS.to_vec()), [parts(), parts(), parts()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((n, [a, b, c]) in triple()) {
        let ctx = CycloContext::new(n).unwrap();
        let (a, b, c) = (element(&ctx, &a.0, a.1), element(&ctx, &b.0, b.1), element(&ctx, &c.0, c.1));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycloNumber::one(&ctx), a.clone());
    }

    #[test]
    fn inverse_is_two_sided((n, [a, _, _]) in triple()) {
        let ctx = CycloContext::new(n).unwrap();
        let a = element(&ctx, &a.0, a.1);
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert!((&inv * &a).is_one());
    }

    #[test]
    fn lift_is_a_homomorphism((n, [a, b, _]) in triple(), k in 1u32..4) {
        let ctx = CycloContext::new(n).unwrap();
        let (a, b) = (element(&ctx, &a.0, a.1), element(&ctx, &b.0, b.1));
        let m = n * k;
        prop_assert_eq!((&a * &b).lift(m).unwrap(), &a.lift(m).unwrap() * &b.lift(m).unwrap());
        prop_assert_eq!((&a + &b).lift(m).unwrap(), &a.lift(m).unwrap() + &b.lift(m).unwrap());
    }

    #[test]
    fn canonical_zero_matches_numeric_zero((n, [a, b, _]) in triple()) {
        let ctx = CycloContext::new(n).unwrap();
        let (a, b) = (element(&ctx, &a.0, a.1), element(&ctx, &b.0, b.1));
        let d = &a - &b;
        prop_assert_eq!(d.is_zero(), d.approx_complex().norm() < 1e-9);
    }
}

#[test]
fn root_of_unity_has_exact_order() {
    for n in ORDERS {
        let ctx = CycloContext::new(n).unwrap();
        let z = CycloNumber::root_of_unity(1, &ctx);
        assert!(z.pow(n).is_one(), "ζ_{n}^{n}");
        let phi = cyclotomic_polynomial(n);
        let mut value = CycloNumber::zero(&ctx);
        for (k, &c) in phi.iter().enumerate() {
            value = &value + &z.pow(k as u32).scale(&BigRational::from_integer(c.into()));
        }
        assert!(value.is_zero(), "Φ_{n}(ζ_{n})");
    }
}

#[test]
fn phi_72_from_division_oracle() {
    // x^72 − 1 divided by Φ_d for every proper divisor d of 72, by long division
    // over the integers.
    let mut num = vec![0i64; 73];
    num[0] = -1;
    num[72] = 1;
    for d in (1..72u32).filter(|d| 72 % d == 0) {
        let den = cyclotomic_polynomial(d);
        let mut quot = vec![0i64; num.len() - den.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = num[i + den.len() - 1];
            quot[i] = c;
            for (j, &b) in den.iter().enumerate() {
                num[i + j] -= c * b;
            }
        }
        assert!(num.iter().all(|x| x.is_zero()));
        num = quot;
    }
    let mut expected = vec![0i64; 25];
    expected[0] = 1;
    expected[12] = -1;
    expected[24] = 1;
    assert_eq!(num, expected);
    assert_eq!(cyclotomic_polynomial(72), expected);
}
