//! Exact linear combinations of sparse polynomials.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::symbolic::{LaurentPoly, Monomial};

/// Incremental row echelon form over polynomial columns.
pub struct Echelon<C: Scalar> {
    rows: Vec<(Monomial, LaurentPoly<C>, BTreeMap<usize, C>)>,
    dependent: Vec<usize>,
}

impl<C: Scalar> Default for Echelon<C> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            dependent: Vec::new(),
        }
    }
}

impl<C: Scalar> Echelon<C> {
    fn reduce(&self, v: &mut LaurentPoly<C>, combo: &mut BTreeMap<usize, C>) {
        for (p, w, cw) in &self.rows {
            let a = v.coeff(p);
            if a.is_zero() {
                continue;
            }
            let f = a / w.coeff(p);
            *v = v.sub(&w.scale(&f));
            for (j, c) in cw {
                let e = combo.entry(*j).or_insert_with(C::zero);
                *e = e.clone() - f.clone() * c.clone();
            }
        }
        combo.retain(|_, c| !c.is_zero());
    }

    /// Adds column `index`; returns `false` if it depends on earlier ones.
    pub fn push(&mut self, index: usize, col: &LaurentPoly<C>) -> bool {
        let mut v = col.clone();
        let mut combo = BTreeMap::from([(index, C::one())]);
        self.reduce(&mut v, &mut combo);
        match v.sorted_terms().first().map(|(m, _)| (*m).clone()) {
            Some(p) => {
                self.rows.push((p, v, combo));
                true
            }
            None => {
                self.dependent.push(index);
                false
            }
        }
    }

    /// Columns found to be dependent.
    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    /// Writes `target` as a combination of the columns, if possible.
    pub fn solve(&self, target: &LaurentPoly<C>) -> Option<BTreeMap<usize, C>> {
        let mut v = target.clone();
        let mut combo = BTreeMap::new();
        self.reduce(&mut v, &mut combo);
        if !v.is_zero() {
            return None;
        }
        Some(
            combo
                .into_iter()
                .map(|(j, c)| (j, -c))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_poly;
    use crate::Rational;

    #[test]
    fn solves_and_detects_dependence() {
        let cols: Vec<LaurentPoly<Rational>> = ["1 + e1_1", "e1_1 - e1_2", "1 + e1_2"]
            .iter()
            .map(|s| parse_poly(s).unwrap())
            .collect();
        let mut e = Echelon::default();
        assert!(e.push(0, &cols[0]));
        assert!(e.push(1, &cols[1]));
        assert!(!e.push(2, &cols[2]));
        let t = parse_poly("3 + 2*e1_1 + e1_2").unwrap();
        let sol = e.solve(&t).unwrap();
        assert_eq!(sol[&0], Rational::from_int(3));
        assert_eq!(sol[&1], Rational::from_int(-1));
        assert!(e.solve(&parse_poly("e1_3").unwrap()).is_none());
    }
}
