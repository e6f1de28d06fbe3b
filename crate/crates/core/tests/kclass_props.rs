use std::collections::BTreeMap;

use kquiver::kclass::{bundle_roots, kclass, kclass_with_pair, rename_roots, stepwise_pushforward};
use kquiver::quiver::{dimension_vector, interval_root, OrbitVector, Quiver};
use kquiver::reineke::{resolution_pair, ResolutionPair};
use kquiver::Poly;

fn a2(m11: u64, m12: u64, m22: u64) -> OrbitVector {
    OrbitVector::new([
        (interval_root(2, 1, 1), m11),
        (interval_root(2, 1, 2), m12),
        (interval_root(2, 2, 2), m22),
    ])
}

/// The partition `{φ22} ∪ {φ12, φ11}` restricted to the support.
fn a2_parts(m: &OrbitVector) -> Vec<Vec<Vec<u32>>> {
    let keep = |r: Vec<u32>| m.0.contains_key(&r).then_some(r);
    [
        vec![interval_root(2, 2, 2)],
        vec![interval_root(2, 1, 2), interval_root(2, 1, 1)],
    ]
    .into_iter()
    .map(|p| p.into_iter().filter_map(keep).collect::<Vec<_>>())
    .filter(|p| !p.is_empty())
    .collect()
}

fn small_a2() -> Vec<OrbitVector> {
    let mut out = Vec::new();
    for m11 in 0..=2 {
        for m12 in 0..=2 {
            for m22 in 0..=2 {
                if (1..=3).contains(&(m11 + m12)) && (1..=3).contains(&(m12 + m22)) {
                    out.push(a2(m11, m12, m22));
                }
            }
        }
    }
    out
}

#[test]
fn single_step_shortcut_for_a2() {
    let q = Quiver::a_equioriented(2);
    for m in small_a2() {
        let v = dimension_vector(&q, &m);
        let full =
            kclass_with_pair::<kquiver::Rational>(&q, &v, &resolution_pair(&q, &m, &a2_parts(&m)).unwrap()).unwrap();
        let m22 = m.0.get(&interval_root(2, 2, 2)).copied().unwrap_or(0) as u32;
        let short = if m22 == 0 {
            Poly::one()
        } else {
            kclass_with_pair(&q, &v, &ResolutionPair::new(vec![2], vec![m22]).unwrap()).unwrap()
        };
        assert_eq!(full, short, "{}", m.to_json());
        assert_eq!(kclass::<kquiver::Rational>(&q, &m).unwrap(), full);
    }
}

#[test]
fn residue_and_stepwise_routes_agree() {
    let q = Quiver::a_equioriented(2);
    for m in small_a2() {
        let v = dimension_vector(&q, &m);
        let rp = resolution_pair(&q, &m, &a2_parts(&m)).unwrap();
        let k: Poly = kclass_with_pair(&q, &v, &rp).unwrap();
        assert_eq!(stepwise_pushforward(&q, &v, &rp).unwrap(), k, "{}", m.to_json());
    }
}

#[test]
fn classes_are_symmetric_under_transpositions() {
    let q = Quiver::new(3, vec![(1, 2), (3, 2)]).unwrap();
    let m = OrbitVector::new([
        (interval_root(3, 1, 2), 1),
        (interval_root(3, 1, 3), 1),
        (interval_root(3, 2, 2), 1),
        (interval_root(3, 3, 3), 1),
    ]);
    let v = dimension_vector(&q, &m);
    let k: Poly = kclass(&q, &m).unwrap();
    for alphabet in bundle_roots(&v) {
        for w in alphabet.windows(2) {
            let swap: BTreeMap<_, _> = [(w[0], w[1]), (w[1], w[0])].into_iter().collect();
            assert_eq!(rename_roots(&k, &swap), k);
        }
    }
}
