use codegree_core::cyclo::CycloNum;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = CycloNum> {
    (1u32..=30).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n as usize).prop_map(move |c| {
            let coeffs: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
            CycloNum::from_exponents(n, &coeffs)
        })
    })
}

fn unit(n: u32, k: i64) -> i64 {
    let mut k = k.rem_euclid(n as i64).max(1);
    while (k as u64).gcd(&(n as u64)) != 1 {
        k += 1;
    }
    k
}

proptest! {
    #[test]
    fn galois_composes(x in element(), a in 1i64..60, b in 1i64..60) {
        let n = x.conductor();
        let (a, b) = (unit(n, a), unit(n, b));
        let lhs = x.galois(a).unwrap().galois(b).unwrap();
        prop_assert_eq!(lhs, x.galois(a * b).unwrap());
    }

    #[test]
    fn galois_is_a_ring_map(x in element(), y in element(), k in 1i64..60) {
        let n = x.conductor().lcm(&y.conductor());
        let (x, y) = (x.coerce(n), y.coerce(n));
        let k = unit(n, k);
        prop_assert_eq!((&x * &y).galois(k).unwrap(), &x.galois(k).unwrap() * &y.galois(k).unwrap());
        prop_assert_eq!((&x + &y).galois(k).unwrap(), &x.galois(k).unwrap() + &y.galois(k).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution(x in element()) {
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        let norm = &x * &x.conjugate();
        prop_assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn coercion_preserves_value(x in element(), m in 1u32..4) {
        let n = x.conductor() * m;
        let y = x.coerce(n);
        let (a, b) = (x.to_complex(), y.to_complex());
        prop_assert!((a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6);
        prop_assert_eq!(y, x);
    }
}
