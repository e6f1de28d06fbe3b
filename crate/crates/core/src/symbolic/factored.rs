//! Rational functions kept as a Laurent polynomial times a ratio of binomial
//! products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::laurent::{pow_scalar, LaurentPoly};
use super::monomial::Monomial;
use super::var::Var;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The factor `1 - c*m`, normalized so that `m` is not the unit monomial and
/// its first variable carries a positive exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial<C> {
    pub m: Monomial,
    pub c: C,
}

/// Result of normalizing `1 - c*m`.
pub enum Canon<C> {
    /// The expression is the constant given.
    Constant(C),
    /// The expression equals `pc * pm * binomial`.
    Factor { pc: C, pm: Monomial, b: Binomial<C> },
}

impl<C: Scalar> Binomial<C> {
    pub fn canon(c: C, m: Monomial) -> Canon<C> {
        if c.is_zero() {
            return Canon::Constant(C::one());
        }
        match m.first() {
            None => Canon::Constant(C::one() - c),
            Some((_, e)) if e > 0 => Canon::Factor {
                pc: C::one(),
                pm: Monomial::one(),
                b: Binomial { m, c },
            },
            Some(_) => {
                // 1 - c m = (-c m) (1 - m^-1 / c)
                let b = Binomial { m: m.inv(), c: c.inv() };
                Canon::Factor { pc: -c, pm: m, b }
            }
        }
    }

    pub fn to_poly(&self) -> LaurentPoly<C> {
        LaurentPoly::binomial(&self.c, &self.m)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.m.contains(v)
    }
}

impl<C: Scalar> fmt::Display for Binomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_poly())
    }
}

impl<C: Scalar> fmt::Debug for Binomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type FactorMap<C> = BTreeMap<Binomial<C>, u32>;

/// `coeff * prod(num) / prod(den)`.
///
/// The zero function has a zero `coeff` and empty factor maps. The two maps
/// never share a binomial. Equality is equality of functions.
#[derive(Clone)]
pub struct FactoredRational<C> {
    coeff: LaurentPoly<C>,
    num: FactorMap<C>,
    den: FactorMap<C>,
}

fn expand<C: Scalar>(base: LaurentPoly<C>, factors: &FactorMap<C>) -> LaurentPoly<C> {
    let mut out = base;
    for (b, &k) in factors {
        out = out.mul_binomial_pow(&b.c, &b.m, k);
    }
    out
}

fn bump<C: Scalar>(map: &mut FactorMap<C>, b: Binomial<C>, k: u32) {
    if k > 0 {
        *map.entry(b).or_insert(0) += k;
    }
}

impl<C: Scalar> FactoredRational<C> {
    pub fn zero() -> Self {
        FactoredRational {
            coeff: LaurentPoly::zero(),
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::term(c, m))
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        let mut f = FactoredRational {
            coeff: p,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        };
        f.factor_coeff();
        f
    }

    /// The factor `1 - c*m`.
    pub fn binomial(c: C, m: Monomial) -> Self {
        match Binomial::canon(c, m) {
            Canon::Constant(k) => Self::constant(k),
            Canon::Factor { pc, pm, b } => {
                let mut num = BTreeMap::new();
                num.insert(b, 1);
                FactoredRational {
                    coeff: LaurentPoly::term(pc, pm),
                    num,
                    den: BTreeMap::new(),
                }
            }
        }
    }

    /// `1 / (1 - c*m)`; fails when the factor is identically zero.
    pub fn inv_binomial(c: C, m: Monomial) -> Result<Self> {
        Self::binomial(c, m).recip()
    }

    pub fn coeff(&self) -> &LaurentPoly<C> {
        &self.coeff
    }

    pub fn numerator_factors(&self) -> &FactorMap<C> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &FactorMap<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Returns `(c, m)` when the value is a single term with no factors.
    pub fn as_term(&self) -> Option<(C, Monomial)> {
        if self.num.is_empty() && self.den.is_empty() {
            self.coeff.as_term()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.coeff.vars();
        for b in self.num.keys().chain(self.den.keys()) {
            s.extend(b.m.iter().map(|p| p.0));
        }
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.coeff.contains_var(v) || self.num.keys().chain(self.den.keys()).any(|b| b.contains(v))
    }

    /// Moves a two-term coefficient into the factor maps.
    fn factor_coeff(&mut self) {
        if self.coeff.is_zero() {
            self.num.clear();
            self.den.clear();
            return;
        }
        if self.coeff.len() != 2 {
            return;
        }
        let mut terms = self.coeff.sorted_terms();
        let (m2, c2) = terms.pop().unwrap();
        let (m1, c1) = terms.pop().unwrap();
        let c = -(c2.clone() / c1.clone());
        let m = m2.div(m1);
        let (c1, m1) = (c1.clone(), m1.clone());
        if let Canon::Factor { pc, pm, b } = Binomial::canon(c, m) {
            self.coeff = LaurentPoly::term(c1 * pc, m1.mul(&pm));
            self.put_num(b, 1);
        }
    }

    fn put_num(&mut self, b: Binomial<C>, k: u32) {
        let mut k = k;
        if let Some(d) = self.den.get_mut(&b) {
            let t = k.min(*d);
            *d -= t;
            k -= t;
            if *d == 0 {
                self.den.remove(&b);
            }
        }
        bump(&mut self.num, b, k);
    }

    fn put_den(&mut self, b: Binomial<C>, k: u32) {
        let mut k = k;
        if let Some(d) = self.num.get_mut(&b) {
            let t = k.min(*d);
            *d -= t;
            k -= t;
            if *d == 0 {
                self.num.remove(&b);
            }
        }
        bump(&mut self.den, b, k);
    }

    /// Divides the coefficient by denominator binomials where exact.
    fn reduce(&mut self) {
        if self.coeff.is_zero() {
            self.num.clear();
            self.den.clear();
            return;
        }
        let keys: Vec<Binomial<C>> = self.den.keys().cloned().collect();
        for b in keys {
            let mut k = self.den[&b];
            while k > 0 {
                match self.coeff.div_binomial(&b.c, &b.m) {
                    Some(q) => {
                        self.coeff = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k == 0 {
                self.den.remove(&b);
            } else {
                self.den.insert(b, k);
            }
        }
        self.factor_coeff();
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeff = out.coeff.neg();
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff = out.coeff.scale(k);
        out
    }

    pub fn mul_term(&self, k: &C, m: &Monomial) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff = out.coeff.mul_term(k, m);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = FactoredRational {
            coeff: self.coeff.mul(&other.coeff),
            num: self.num.clone(),
            den: self.den.clone(),
        };
        for (b, &k) in &other.num {
            out.put_num(b.clone(), k);
        }
        for (b, &k) in &other.den {
            out.put_den(b.clone(), k);
        }
        out.factor_coeff();
        out
    }

    /// Multiplies by `(1 - c*m)^k` for any integer `k`.
    pub fn mul_binomial_pow(&self, c: &C, m: &Monomial, k: i32) -> Result<Self> {
        if k == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        match Binomial::canon(c.clone(), m.clone()) {
            Canon::Constant(v) => {
                if v.is_zero() && k < 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.scale(&pow_scalar(&v, k)))
            }
            Canon::Factor { pc, pm, b } => {
                let mut out = self.mul_term(&pow_scalar(&pc, k), &pm.pow(k));
                if k > 0 {
                    out.put_num(b, k as u32);
                } else {
                    out.put_den(b, k.unsigned_abs());
                }
                Ok(out)
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, m) = self
            .coeff
            .as_term()
            .ok_or_else(|| Error::NotRepresentable(format!("1/({})", self.coeff)))?;
        Ok(FactoredRational {
            coeff: LaurentPoly::term(c.inv(), m.inv()),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common = BTreeMap::new();
        for (b, &k) in &self.num {
            if let Some(&j) = other.num.get(b) {
                common.insert(b.clone(), k.min(j));
            }
        }
        let mut den = self.den.clone();
        for (b, &k) in &other.den {
            let e = den.entry(b.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let side = |f: &Self| -> LaurentPoly<C> {
            let mut extra: FactorMap<C> = BTreeMap::new();
            for (b, &k) in &f.num {
                bump(&mut extra, b.clone(), k - common.get(b).copied().unwrap_or(0));
            }
            for (b, &k) in &den {
                bump(&mut extra, b.clone(), k - f.den.get(b).copied().unwrap_or(0));
            }
            expand(f.coeff.clone(), &extra)
        };
        let coeff = side(self).add(&side(other));
        let mut out = FactoredRational {
            coeff,
            num: common,
            den,
        };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Sums an iterator of values pairwise.
    pub fn sum<I: IntoIterator<Item = Self>>(it: I) -> Self {
        let mut layer: Vec<Self> = it.into_iter().filter(|f| !f.is_zero()).collect();
        if layer.is_empty() {
            return Self::zero();
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly<C>> {
        let mut p = expand(self.coeff.clone(), &self.num);
        for (b, &k) in &self.den {
            for _ in 0..k {
                p = p.div_binomial(&b.c, &b.m)?;
            }
        }
        Some(p)
    }

    /// Expands the numerator fully: `(poly, den)`.
    pub fn numerator_poly(&self) -> LaurentPoly<C> {
        expand(self.coeff.clone(), &self.num)
    }

    /// Value of a monomial under a substitution map.
    fn subst_monomial(m: &Monomial, map: &BTreeMap<Var, Self>) -> Result<Self> {
        let mut rest = Vec::new();
        let mut out = Self::one();
        let mut c_acc = C::one();
        for (v, e) in m.iter() {
            match map.get(&v) {
                None => rest.push((v, e)),
                Some(val) => match val.as_term() {
                    Some((c, vm)) => {
                        c_acc = c_acc * pow_scalar(&c, e);
                        rest.extend(vm.pow(e).iter());
                    }
                    None => out = out.mul(&val.pow(e)?),
                },
            }
        }
        Ok(out.mul_term(&c_acc, &Monomial::from_pairs(rest)))
    }

    /// Simultaneously replaces each key of `map` by its value.
    pub fn substitute(&self, map: &BTreeMap<Var, Self>) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let touched = |m: &Monomial| m.iter().any(|(v, _)| map.contains_key(&v));
        let mut out = if self.coeff.iter().any(|(m, _)| touched(m)) {
            self.substitute_coeff(map)?
        } else {
            FactoredRational {
                coeff: self.coeff.clone(),
                num: BTreeMap::new(),
                den: BTreeMap::new(),
            }
        };
        for (b, &k) in &self.num {
            if !touched(&b.m) {
                out.put_num(b.clone(), k);
                continue;
            }
            let val = Self::one().sub(&Self::subst_monomial(&b.m, map)?.scale(&b.c));
            out = out.mul(&val.pow(k as i32)?);
        }
        for (b, &k) in &self.den {
            if !touched(&b.m) {
                out.put_den(b.clone(), k);
                continue;
            }
            let val = Self::one().sub(&Self::subst_monomial(&b.m, map)?.scale(&b.c));
            if val.is_zero() {
                return Err(Error::VanishingFactor);
            }
            out = out.mul(&val.pow(-(k as i32))?);
        }
        out.factor_coeff();
        Ok(out)
    }

    fn substitute_coeff(&self, map: &BTreeMap<Var, Self>) -> Result<Self> {
        let all_terms = map.values().all(|v| v.as_term().is_some());
        if all_terms {
            let mut p = LaurentPoly::zero();
            for (m, c) in self.coeff.iter() {
                let t = Self::subst_monomial(m, map)?;
                let (tc, tm) = t.as_term().expect("monomial image");
                p.add_term(tm, c.clone() * tc);
            }
            return Ok(Self::from_poly(p));
        }
        // group by the exponents of substituted variables
        let mut groups: BTreeMap<Monomial, LaurentPoly<C>> = BTreeMap::new();
        for (m, c) in self.coeff.iter() {
            let (inside, rest): (Vec<_>, Vec<_>) = m.iter().partition(|(v, _)| map.contains_key(v));
            groups
                .entry(Monomial::from_pairs(inside))
                .or_default()
                .add_term(Monomial::from_pairs(rest), c.clone());
        }
        let mut parts = Vec::with_capacity(groups.len());
        for (key, rest) in groups {
            parts.push(Self::subst_monomial(&key, map)?.mul(&Self::from_poly(rest)));
        }
        Ok(Self::sum(parts))
    }

    pub fn substitute_var(&self, v: Var, value: &Self) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(v, value.clone());
        self.substitute(&map)
    }
}

impl<C: Scalar> PartialEq for FactoredRational<C> {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<C: Scalar> From<LaurentPoly<C>> for FactoredRational<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> fmt::Display for FactoredRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coeff)?;
        for (b, k) in &self.num {
            if *k == 1 {
                write!(f, " * {b}")?;
            } else {
                write!(f, " * {b}^{k}")?;
            }
        }
        for (b, k) in &self.den {
            if *k == 1 {
                write!(f, " / {b}")?;
            } else {
                write!(f, " / {b}^{k}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for FactoredRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = FactoredRational<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ab() -> (Var, Var) {
        (Var::root(1, 1), Var::root(2, 1))
    }

    #[test]
    fn cancellation() {
        let (a, b) = ab();
        let m = Monomial::from_pairs([(a, 1), (b, -1)]);
        let f = F::binomial(r(1), m.clone());
        let g = F::inv_binomial(r(1), m).unwrap();
        let h = f.mul(&g);
        assert_eq!(h.as_term(), Some((r(1), Monomial::one())));
    }

    #[test]
    fn sum_over_common_denominator() {
        // 1/(1-a/b) + 1/(1-b/a) = 1
        let (a, b) = ab();
        let m = Monomial::from_pairs([(a, 1), (b, -1)]);
        let s = F::inv_binomial(r(1), m.clone())
            .unwrap()
            .add(&F::inv_binomial(r(1), m.inv()).unwrap());
        assert_eq!(s.to_laurent().unwrap(), LaurentPoly::one());
        assert!(s.denominator_factors().is_empty());
    }

    #[test]
    fn substitution_into_factors() {
        // u := 1 - v in (1 - u) gives v
        let u = Var::aux("u", 1, 1);
        let v = Var::aux("v", 1, 1);
        let f = F::binomial(r(1), Monomial::var(u));
        let val = F::binomial(r(1), Monomial::var(v));
        let g = f.substitute_var(u, &val).unwrap();
        assert_eq!(g.to_laurent().unwrap(), LaurentPoly::var(v));
        // (1 - u2/u1) with both shifted gives (v2 - v1)/(1 - v1)
        let (u1, u2) = (Var::aux("u", 1, 1), Var::aux("u", 1, 2));
        let (v1, v2) = (Var::aux("v", 1, 1), Var::aux("v", 1, 2));
        let f = F::inv_binomial(r(1), Monomial::from_pairs([(u2, 1), (u1, -1)])).unwrap();
        let mut map = BTreeMap::new();
        map.insert(u1, F::binomial(r(1), Monomial::var(v1)));
        map.insert(u2, F::binomial(r(1), Monomial::var(v2)));
        let g = f.substitute(&map).unwrap();
        let expect = F::binomial(r(1), Monomial::var(v1))
            .div(&F::from_poly(LaurentPoly::var(v2).sub(&LaurentPoly::var(v1))))
            .unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn vanishing_denominator() {
        let (a, b) = ab();
        let f = F::inv_binomial(r(1), Monomial::from_pairs([(a, 1), (b, -1)])).unwrap();
        assert_eq!(f.substitute_var(a, &F::var(b)), Err(Error::VanishingFactor));
        assert_eq!(F::zero().recip(), Err(Error::DivisionByZero));
    }
}
