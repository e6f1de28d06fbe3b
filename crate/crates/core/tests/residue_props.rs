use std::collections::BTreeMap;

use kquiver::residue::{dlog, enumerate_poles, ir_alphabet, ir_zero_infty, residue_at};
use kquiver::symbolic::{series_expand_to, ExpansionDomain, Monomial, Var};
use kquiver::{Frac, Poly, Rational, Scalar};
use proptest::prelude::*;

fn coefficient(p: &Poly, v: Var, k: i32) -> Poly {
    p.collect_in(v).remove(&k).unwrap_or_default()
}

/// `Res_{z=0}` by expanding in `z` small.
fn residue_at_zero(f: &Frac, z: Var) -> Poly {
    let dom = ExpansionDomain::from_levels(&[vec![z]]);
    coefficient(&series_expand_to(f, &dom, -1).unwrap(), z, -1)
}

/// `Res_{z=∞} f dz = −Res_{w=0} f(1/w) w^{−2} dw`.
fn residue_at_infinity(f: &Frac, z: Var) -> Poly {
    let mut map = BTreeMap::new();
    map.insert(z, Frac::term(Rational::from_int(1), Monomial::var_pow(z, -1)));
    let g = f
        .substitute(&map)
        .unwrap()
        .mul(&Frac::term(Rational::from_int(1), Monomial::var_pow(z, -2)));
    residue_at_zero(&g, z).neg()
}

/// A form `z^e Π(1 − z/b_j) / Π(1 − c_i z/a_i)^{k_i} dz/z`.
fn form() -> impl Strategy<Value = (Frac, Var)> {
    (
        -2i32..=2,
        proptest::collection::vec((1i64..=3, 1i32..=2), 1..=3),
        0usize..=2,
    )
        .prop_map(|(e, dens, nums)| {
            let z = Var::residue(1, 1);
            let mut f = Frac::term(Rational::from_int(1), Monomial::var_pow(z, e)).mul(&dlog(&[z]));
            for (k, (c, mult)) in dens.into_iter().enumerate() {
                let m = Monomial::from_pairs([(z, 1), (Var::root(1, k as u32 + 1), -1)]);
                f = f.mul(&Frac::inv_binomial(Rational::from_int(c), m).unwrap().pow(mult).unwrap());
            }
            for j in 0..nums {
                f = f.mul(&Frac::binomial(
                    Rational::from_int(1),
                    Monomial::from_pairs([(z, 1), (Var::root(2, j as u32 + 1), -1)]),
                ));
            }
            (f, z)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_theorem((f, z) in form()) {
        let finite = Frac::sum(enumerate_poles(&f, z).unwrap().iter().map(|p| residue_at(&f, p).unwrap()));
        let total = residue_at_zero(&f, z).add(&residue_at_infinity(&f, z)).add(&finite.to_laurent().unwrap());
        prop_assert!(total.is_zero(), "residues sum to {}", total);
        let ir = ir_zero_infty(&f, z).unwrap().to_laurent().unwrap();
        prop_assert_eq!(ir, residue_at_zero(&f, z).add(&residue_at_infinity(&f, z)));
    }
}

#[test]
fn eliminated_variables_disappear() {
    let (a1, a2, b1) = (Var::root(1, 1), Var::root(1, 2), Var::root(2, 1));
    let z: Vec<Var> = (1..=2).map(|k| Var::residue(k, 1)).collect();
    let one = Rational::from_int(1);
    let mut f = Frac::binomial(one.clone(), Monomial::from_pairs([(b1, 1), (z[1], -1)]))
        .mul(&Frac::binomial(
            one.clone(),
            Monomial::from_pairs([(z[1], 1), (z[0], -1)]),
        ))
        .mul(&dlog(&z));
    for &zi in &z {
        for a in [a1, a2] {
            f = f.mul(&Frac::inv_binomial(one.clone(), Monomial::from_pairs([(zi, 1), (a, -1)])).unwrap());
        }
    }
    let out = ir_alphabet(&f, &z).unwrap();
    assert!(z.iter().all(|v| !out.contains_var(*v)));
}
