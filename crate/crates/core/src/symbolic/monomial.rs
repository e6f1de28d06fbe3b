//! Laurent monomials as sparse exponent vectors.

use std::fmt;

use smallvec::SmallVec;

use super::var::Var;

/// A product of variables with nonzero integer exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = SmallVec::new();
        if e != 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    /// Builds a monomial from arbitrary pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, i32); 6]> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 6]> = SmallVec::new();
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<(Var, i32)> {
        self.0.first().copied()
    }

    pub fn exp(&self, v: Var) -> i32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.exp(v) != 0
    }

    /// Splits off the power of `v`, returning `(e, rest)`.
    pub fn split(&self, v: Var) -> (i32, Monomial) {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let e = rest.remove(i).1;
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Whether every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|p| p.1 >= 0)
    }

    /// Canonical display order: total degree, then total absolute degree,
    /// then larger exponents of earlier variables first.
    pub fn cmp_canonical(&self, other: &Monomial) -> std::cmp::Ordering {
        let abs = |m: &Monomial| m.0.iter().map(|p| p.1.unsigned_abs() as i64).sum::<i64>();
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| abs(self).cmp(&abs(other)))
            .then_with(|| {
                let (a, b) = (&self.0, &other.0);
                let (mut i, mut j) = (0, 0);
                loop {
                    let x = a.get(i).copied();
                    let y = b.get(j).copied();
                    match (x, y) {
                        (None, None) => return std::cmp::Ordering::Equal,
                        (Some((_, e)), None) => return 0.cmp(&e),
                        (None, Some((_, e))) => return e.cmp(&0),
                        (Some((u, e)), Some((w, f))) => {
                            if u == w {
                                if e != f {
                                    return f.cmp(&e);
                                }
                                i += 1;
                                j += 1;
                            } else if u < w {
                                return 0.cmp(&e);
                            } else {
                                return f.cmp(&0);
                            }
                        }
                    }
                }
            })
    }

    /// Renames variables through `f`, merging collisions.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Var::root(1, 1);
        let b = Var::root(1, 2);
        let m = Monomial::from_pairs([(b, 2), (a, 1), (b, -1)]);
        assert_eq!(m.to_string(), "e1_1*e1_2");
        let n = m.mul(&Monomial::var_pow(a, -1));
        assert_eq!(n, Monomial::var(b));
        assert!(m.div(&m).is_one());
        assert_eq!(m.pow(-2).exp(b), -2);
        assert_eq!(m.split(a), (1, Monomial::var(b)));
    }
}
