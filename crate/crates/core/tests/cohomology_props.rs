use kquiver::cohomology::{class_var, codimension, elementary, to_chern_classes};
use kquiver::quiver::{interval_root, OrbitVector, Quiver};
use kquiver::symbolic::{Monomial, Var};
use kquiver::{Poly, Rational};
use proptest::prelude::*;

/// Random polynomial in `c_1..c_rank` of weighted degree at most 4.
fn class_poly(rank: u32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(0u32..=4, rank as usize), -3i64..=3), 0..4).prop_map(
        move |terms| {
            Poly::from_terms(terms.into_iter().filter_map(|(e, c)| {
                let deg: u32 = e.iter().enumerate().map(|(k, x)| (k as u32 + 1) * x).sum();
                (deg <= 4).then(|| {
                    let m = Monomial::from_pairs(
                        e.iter()
                            .enumerate()
                            .map(|(k, &x)| (class_var(1, k as u32 + 1), x as i32)),
                    );
                    (m, Rational::from_integer(c.into()))
                })
            }))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rewriting_inverts_elementary_expansion((rank, p) in (1u32..=3).prop_flat_map(|r| (Just(r), class_poly(r)))) {
        let roots: Vec<Var> = (1..=rank).map(|j| Var::root(1, j)).collect();
        let mut expanded = p.clone();
        for k in 1..=rank {
            expanded = expanded.substitute_poly(class_var(1, k), &elementary(&roots, k as usize)).unwrap();
        }
        prop_assert_eq!(to_chern_classes(&expanded, &[(roots, 1)]).unwrap(), p);
    }
}

#[test]
fn zero_orbit_has_full_codimension() {
    let q = Quiver::a_equioriented(2);
    for e1 in 1..=2u64 {
        for e2 in 1..=2u64 {
            let m = OrbitVector::new([(interval_root(2, 1, 1), e1), (interval_root(2, 2, 2), e2)]);
            assert_eq!(codimension::<Rational>(&q, &m).unwrap() as u64, e1 * e2);
        }
    }
    let dense = OrbitVector::new([(interval_root(2, 1, 2), 2)]);
    assert_eq!(codimension::<Rational>(&q, &dense).unwrap(), 0);
}
