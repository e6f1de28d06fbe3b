//! Truncated Laurent expansion of factored rational functions.

use std::collections::BTreeMap;

use super::factored::FactoredRational;
use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::var::Var;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An ordering of variables by magnitude: variables at a lower level are
/// infinitely smaller than those above them. Variables outside the domain
/// behave as constants.
#[derive(Debug, Clone, Default)]
pub struct ExpansionDomain {
    levels: BTreeMap<Var, u32>,
    top: u32,
}

impl ExpansionDomain {
    /// Builds a domain from groups listed from smallest to largest.
    pub fn from_levels(groups: &[Vec<Var>]) -> Self {
        let mut levels = BTreeMap::new();
        for (k, g) in groups.iter().enumerate() {
            for &v in g {
                levels.insert(v, k as u32);
            }
        }
        ExpansionDomain {
            levels,
            top: groups.len() as u32,
        }
    }

    /// Each variable on its own level, smallest first.
    pub fn chain(vars: &[Var]) -> Self {
        let groups: Vec<Vec<Var>> = vars.iter().map(|v| vec![*v]).collect();
        Self::from_levels(&groups)
    }

    /// Grade of a variable: `top - level` inside the domain, 0 outside.
    pub fn grade_var(&self, v: Var) -> i64 {
        self.levels.get(&v).map_or(0, |l| (self.top - l) as i64)
    }

    pub fn grade(&self, m: &Monomial) -> i64 {
        m.iter().map(|(v, e)| self.grade_var(v) * e as i64).sum()
    }

    pub fn max_grade(&self) -> i64 {
        self.top as i64
    }

    /// Whether `m` tends to zero in the domain.
    pub fn is_small(&self, m: &Monomial) -> Option<bool> {
        m.iter()
            .filter_map(|(v, e)| self.levels.get(&v).map(|l| ((*l, v), e)))
            .min_by_key(|p| p.0)
            .map(|(_, e)| e > 0)
    }
}

/// Expands `f` in the domain, keeping monomials of grade at most
/// `min_grade + bound`, where `min_grade` is the lowest grade occurring in
/// the leading part of the expansion.
pub fn series_expand<C: Scalar>(f: &FactoredRational<C>, dom: &ExpansionDomain, bound: i64) -> Result<LaurentPoly<C>> {
    let (lead, factors) = prepare(f, dom)?;
    let gmin = lead.iter().map(|(m, _)| dom.grade(m)).min().unwrap_or(0);
    Ok(multiply_series(lead, &factors, dom, gmin + bound))
}

/// Expands `f` in the domain, keeping monomials of grade at most `max_grade`.
pub fn series_expand_to<C: Scalar>(
    f: &FactoredRational<C>,
    dom: &ExpansionDomain,
    max_grade: i64,
) -> Result<LaurentPoly<C>> {
    let (lead, factors) = prepare(f, dom)?;
    Ok(multiply_series(lead, &factors, dom, max_grade))
}

type Geometric<C> = (C, Monomial, u32);

fn prepare<C: Scalar>(f: &FactoredRational<C>, dom: &ExpansionDomain) -> Result<(LaurentPoly<C>, Vec<Geometric<C>>)> {
    let mut lead = f.numerator_poly();
    let mut factors = Vec::new();
    for (b, &k) in f.denominator_factors() {
        let small = dom.is_small(&b.m).ok_or_else(|| Error::NotExpandable(b.to_string()))?;
        let (c, m) = if small {
            (b.c.clone(), b.m.clone())
        } else {
            // 1/(1 - c m) = -(c m)^-1 / (1 - (c m)^-1)
            let pre = LaurentPoly::term(-b.c.inv(), b.m.inv());
            lead = lead.mul(&pre.pow(k));
            (b.c.inv(), b.m.inv())
        };
        if dom.grade(&m) < 1 {
            return Err(Error::NotExpandable(b.to_string()));
        }
        factors.push((c, m, k));
    }
    Ok((lead, factors))
}

fn multiply_series<C: Scalar>(
    lead: LaurentPoly<C>,
    factors: &[Geometric<C>],
    dom: &ExpansionDomain,
    cut: i64,
) -> LaurentPoly<C> {
    let keep = |p: LaurentPoly<C>| LaurentPoly::from_terms(p.into_terms().filter(|(m, _)| dom.grade(m) <= cut));
    let mut acc = keep(lead);
    for (c, m, k) in factors {
        for _ in 0..*k {
            let mut cur = acc.clone();
            loop {
                cur = keep(cur.mul_term(c, m));
                if cur.is_zero() {
                    break;
                }
                acc = acc.add(&cur);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = FactoredRational<Rational>;

    #[test]
    fn geometric_squared() {
        let x = Var::aux("t", 1, 1);
        let f = F::inv_binomial(Rational::from_int(1), Monomial::var(x))
            .unwrap()
            .pow(2)
            .unwrap();
        let s = series_expand(&f, &ExpansionDomain::chain(&[x]), 3).unwrap();
        assert_eq!(s.to_string(), "1 + 2*t1_1 + 3*t1_1^2 + 4*t1_1^3");
    }

    #[test]
    fn orientation_follows_domain() {
        let a = Var::root(1, 1);
        let b = Var::root(2, 1);
        let m = Monomial::from_pairs([(a, 1), (b, -1)]);
        let f = F::inv_binomial(Rational::from_int(1), m).unwrap();
        let s = series_expand(&f, &ExpansionDomain::chain(&[a, b]), 2).unwrap();
        assert_eq!(s.to_string(), "1 + e1_1*e2_1^-1 + e1_1^2*e2_1^-2");
        let s = series_expand(&f, &ExpansionDomain::chain(&[b, a]), 1).unwrap();
        assert_eq!(s.to_string(), "-e1_1^-1*e2_1 - e1_1^-2*e2_1^2");
    }
}
