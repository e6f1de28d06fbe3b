use kquiver::symbolic::{parse_poly, poly_from_json, poly_to_json, series_expand_to, ExpansionDomain, Monomial, Var};
use kquiver::{Frac, Poly, Rational, Scalar};
use proptest::prelude::*;

fn vars() -> Vec<Var> {
    vec![Var::root(1, 1), Var::root(1, 2), Var::root(2, 1), Var::residue(1, 1)]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((0..4usize, -2i32..=2), 0..3)
        .prop_map(|ps| Monomial::from_pairs(ps.into_iter().map(|(k, e)| (vars()[k], e))))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((monomial(), rational()), 0..5).prop_map(Poly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn text_and_json_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly::<Rational>(&text).unwrap(), a.clone());
        prop_assert_eq!(poly_from_json::<Rational>(&poly_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn series_of_product(
        ka in 1u32..=2, kb in 1u32..=2,
        ca in rational(), cb in rational(),
        num in poly(),
        cut in 0i64..=5,
    ) {
        prop_assume!(ca != Rational::from_int(0) && cb != Rational::from_int(0));
        let (x, y) = (Var::aux("t", 1, 1), Var::aux("t", 2, 1));
        let dom = ExpansionDomain::from_levels(&[vec![x], vec![y]]);
        // both factors are geometric in x and y, which are small against the rest
        let f = Frac::inv_binomial(ca, Monomial::from_pairs([(x, 1), (vars()[0], -1)])).unwrap().pow(ka as i32).unwrap();
        let g = Frac::inv_binomial(cb, Monomial::from_pairs([(x, 1), (y, -1)])).unwrap()
            .pow(kb as i32).unwrap()
            .mul(&Frac::from_poly(num.clone()));
        let fg = series_expand_to(&f.mul(&g), &dom, cut).unwrap();
        let lo = num.iter().map(|(m, _)| dom.grade(m)).min().unwrap_or(0).min(0);
        // enough room in each factor to cover everything up to the cut
        let sf = series_expand_to(&f, &dom, cut - lo).unwrap();
        let sg = series_expand_to(&g, &dom, cut).unwrap();
        let prod = Poly::from_terms(sf.mul(&sg).into_terms().filter(|(m, _)| dom.grade(m) <= cut));
        prop_assert_eq!(fg.clone(), prod);
        // raising the bound keeps every coefficient already present
        let wider = series_expand_to(&f.mul(&g), &dom, cut + 2).unwrap();
        let trimmed = Poly::from_terms(wider.into_terms().filter(|(m, _)| dom.grade(m) <= cut));
        prop_assert_eq!(trimmed, fg);
    }
}

#[test]
fn parse_errors() {
    assert!(parse_poly::<Rational>("").is_err());
    assert!(parse_poly::<Rational>("1 +").is_err());
    assert!(parse_poly::<Rational>("e1_1^x").is_err());
    assert_eq!(parse_poly::<Rational>("2/4*e1_1").unwrap().to_string(), "1/2*e1_1");
    assert_eq!(Rational::from_int(3).inv(), Rational::new(1.into(), 3.into()));
}
