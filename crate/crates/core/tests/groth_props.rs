use std::collections::BTreeMap;

use kquiver::groth::{
    expansion_oracle, g_poly, quiver_coefficients, sign_check, straighten_linear, ExtractOptions, Partition,
    Straightener,
};
use kquiver::kclass::{bundle_roots, check_symmetric, kclass_with_pair};
use kquiver::quiver::{dimension_vector, interval_root, OrbitVector, Quiver};
use kquiver::reineke::resolution_pair;
use kquiver::{Poly, Rational, Scalar};
use proptest::prelude::*;

fn a2(m11: u64, m12: u64, m22: u64) -> OrbitVector {
    OrbitVector::new([
        (interval_root(2, 1, 1), m11),
        (interval_root(2, 1, 2), m12),
        (interval_root(2, 2, 2), m22),
    ])
}

#[test]
fn extraction_matches_linear_solve_on_a2() {
    let q = Quiver::a_equioriented(2);
    for (m11, m12, m22) in [(1, 1, 1), (1, 0, 1), (0, 1, 1), (2, 1, 1), (1, 1, 2), (1, 2, 1)] {
        let m = a2(m11, m12, m22);
        let v = dimension_vector(&q, &m);
        let parts: Vec<Vec<Vec<u32>>> = [
            vec![interval_root(2, 2, 2)],
            vec![interval_root(2, 1, 2), interval_root(2, 1, 1)],
        ]
        .into_iter()
        .map(|p| p.into_iter().filter(|r| m.0.contains_key(r)).collect::<Vec<_>>())
        .filter(|p| !p.is_empty())
        .collect();
        let rp = resolution_pair(&q, &m, &parts).unwrap();
        let t = quiver_coefficients::<Rational>(&q, &v, &rp, ExtractOptions::default()).unwrap();
        let kc: Poly = kclass_with_pair(&q, &v, &rp).unwrap();
        let oracle = expansion_oracle(&kc, &q, &v, 1, 12).unwrap();
        assert_eq!(t, oracle, "m = ({m11},{m12},{m22})");
        assert!(sign_check(&t, (m11 * m22) as u32));
    }
}

#[test]
fn g_polynomials_are_symmetric_and_nonzero() {
    for n in 1..=3u32 {
        for p in 1..=2u32 {
            for lam in [vec![1i64], vec![2], vec![1, 1], vec![2, 1]] {
                if lam.len() > n as usize {
                    continue;
                }
                let g: Poly = g_poly(&lam, n, p).unwrap();
                assert!(!g.is_zero());
                check_symmetric(&g, &bundle_roots(&[n, p])).unwrap();
            }
        }
    }
}

fn seq(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..=3, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn non_positive_tail_is_dropped(i in seq(2), j in proptest::collection::vec(-2i64..=0, 1..=2), n in 1u32..=3, p in 1u32..=3) {
        let ij: Vec<i64> = i.iter().chain(&j).copied().collect();
        prop_assert_eq!(g_poly::<Rational>(&ij, n, p).unwrap(), g_poly::<Rational>(&i, n, p).unwrap());
    }

    #[test]
    fn consecutive_pair_rule(i in seq(1), j in seq(1), a in -1i64..=3, n in 1u32..=2, p in 1u32..=2) {
        let lhs: Vec<i64> = i.iter().copied().chain([a - 1, a]).chain(j.iter().copied()).collect();
        let rhs: Vec<i64> = i.iter().copied().chain([a, a]).chain(j.iter().copied()).collect();
        prop_assert_eq!(g_poly::<Rational>(&lhs, n, p).unwrap(), g_poly::<Rational>(&rhs, n, p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn straightening_rules_match_linear_algebra(s in proptest::collection::vec(-1i64..=3, 1..=3)) {
        let lin: BTreeMap<Partition, i64> = straighten_linear::<Rational>(&s, 3, 2)
            .unwrap()
            .into_iter()
            .map(|(k, c)| (k, c.to_int().unwrap()))
            .collect();
        prop_assert_eq!(Straightener::new().straighten(&s), lin);
    }
}
