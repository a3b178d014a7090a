use copartition_core::{
    cp_gf_series, enumerate_copartitions, CopartitionCounter, CopartitionParams, Error, Ring, Series,
};
use num_bigint::BigUint;
use proptest::prelude::*;

const N: usize = 24;

fn coeffs(max: i128) -> impl Strategy<Value = Vec<i128>> {
    prop::collection::vec(-max..=max, N + 1)
}

fn modulus() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(6), Just(49), Just(1_000_003), Just((1u64 << 61) - 1)]
}

fn series(ring: Ring, c: &[i128]) -> Series {
    Series::from_coeffs(ring, c.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws_hold_exactly(x in coeffs(1000), y in coeffs(1000), z in coeffs(1000)) {
        let (a, b, c) = (series(Ring::Integers, &x), series(Ring::Integers, &y), series(Ring::Integers, &z));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn modular_arithmetic_is_the_reduction_of_exact(x in coeffs(1 << 20), y in coeffs(1 << 20), m in modulus()) {
        let ring = Ring::from_modulus(m).unwrap();
        let exact = series(Ring::Integers, &x).mul(&series(Ring::Integers, &y)).unwrap();
        let modular = series(ring, &x).mul(&series(ring, &y)).unwrap();
        prop_assert_eq!(exact.reduce_mod(m).unwrap(), modular);
        let sum = series(Ring::Integers, &x).add(&series(Ring::Integers, &y)).unwrap();
        prop_assert_eq!(sum.reduce_mod(m).unwrap(), series(ring, &x).add(&series(ring, &y)).unwrap());
    }

    #[test]
    fn unit_series_invert(mut small in coeffs(2), mut wide in coeffs(1 << 40), sign in prop::bool::ANY, m in modulus()) {
        let unit = if sign { 1 } else { -1 };
        small[0] = unit;
        wide[0] = unit;
        for (ring, x) in [(Ring::Integers, &small), (Ring::from_modulus(m).unwrap(), &wide)] {
            let a = series(ring, x);
            let inv = a.invert().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), Series::one(ring, N));
        }
    }

    #[test]
    fn exact_overflow_is_reported(mut x in coeffs(1 << 60)) {
        x[0] = 1;
        x[1] = 1 << 60;
        let a = series(Ring::Integers, &x);
        let overflowed = matches!(a.pow(4), Err(Error::IntegerOverflow { .. }));
        prop_assert!(overflowed);
    }

    #[test]
    fn truncation_commutes_with_products(x in coeffs(100), y in coeffs(100), k in 0usize..=N) {
        let (a, b) = (series(Ring::Integers, &x), series(Ring::Integers, &y));
        prop_assert_eq!(a.mul(&b).unwrap().truncate(k), a.truncate(k).mul(&b.truncate(k)).unwrap());
    }

    #[test]
    fn powers_are_repeated_products(x in coeffs(5), k in 0u32..5) {
        let a = series(Ring::Integers, &x);
        let mut expected = Series::one(Ring::Integers, N);
        for _ in 0..k {
            expected = expected.mul(&a).unwrap();
        }
        prop_assert_eq!(a.pow(k).unwrap(), expected);
    }

    #[test]
    fn copartitions_are_symmetric(a in 1u64..6, b in 1u64..6, m in 1u64..7) {
        let p = CopartitionParams::new(a, b, m).unwrap();
        let one = cp_gf_series(&p, Ring::Integers, 60).unwrap();
        let other = cp_gf_series(&p.swapped(), Ring::Integers, 60).unwrap();
        prop_assert_eq!(one, other);
        let (x, y) = (CopartitionCounter::new(p, 60), CopartitionCounter::new(p.swapped(), 60));
        for n in 0..=60 {
            prop_assert_eq!(x.count(n), y.count(n));
        }
    }

    #[test]
    fn listed_triples_are_valid_and_counted(a in 1u64..5, b in 1u64..5, m in 1u64..6, n in 0u64..22) {
        let p = CopartitionParams::new(a, b, m).unwrap();
        let listed = enumerate_copartitions(&p, n);
        prop_assert!(listed.iter().all(|t| t.is_valid(&p) && t.size() == n));
        let refined = CopartitionCounter::new(p, n).refined(n);
        prop_assert_eq!(refined.total(), BigUint::from(listed.len()));
        for t in &listed {
            prop_assert!(refined.get(t.ground_parts(), t.sky_parts()) > BigUint::from(0u8));
        }
    }
}
