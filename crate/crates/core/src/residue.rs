//! Residues at finite poles and the iterated residue functional
//! `IR_{0,∞}`, together with equivariant localization on Grassmannians.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symbolic::laurent::pow_scalar;
use crate::symbolic::{Binomial, FactoredRational, LaurentPoly, Monomial, Var};

type Fr<C> = FactoredRational<C>;

/// A finite nonzero pole of a one-form `f(z) dz` in the variable `var`.
#[derive(Clone)]
pub struct Pole<C> {
    pub var: Var,
    /// Location `c * m` of the pole.
    pub at: (C, Monomial),
    /// Effective order after cancelling vanishing numerator factors.
    pub order: u32,
    binomial: Binomial<C>,
    /// `+1` if the factor is `1 - c z m`, `-1` if it is `1 - c m / z`.
    orient: i32,
}

impl<C: Scalar> std::fmt::Debug for Pole<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}*{} (order {})", self.var, self.at.0, self.at.1, self.order)
    }
}

/// Location where `1 - c z^e m'` vanishes, for `e = ±1`.
fn zero_of<C: Scalar>(b: &Binomial<C>, var: Var) -> Result<Option<(i32, C, Monomial)>> {
    let (e, rest) = b.m.split(var);
    match e {
        0 => Ok(None),
        1 => Ok(Some((1, b.c.inv(), rest.inv()))),
        -1 => Ok(Some((-1, b.c.clone(), rest))),
        _ => Err(Error::NonLinearPole(b.to_string())),
    }
}

/// Value of `c * m` after putting `var = c0 * m0`.
fn eval_term<C: Scalar>(c: &C, m: &Monomial, var: Var, c0: &C, m0: &Monomial) -> (C, Monomial) {
    let (e, rest) = m.split(var);
    (c.clone() * pow_scalar(c0, e), rest.mul(&m0.pow(e)))
}

fn vanishes_at<C: Scalar>(b: &Binomial<C>, var: Var, c0: &C, m0: &Monomial) -> bool {
    let (c, m) = eval_term(&b.c, &b.m, var, c0, m0);
    m.is_one() && c.is_one()
}

/// Lists the finite nonzero poles of `f dz` in `var`. Denominator factors
/// must be linear in `var`.
pub fn enumerate_poles<C: Scalar>(f: &Fr<C>, var: Var) -> Result<Vec<Pole<C>>> {
    let mut poles = Vec::new();
    for (b, &k) in f.denominator_factors() {
        let Some((orient, c0, m0)) = zero_of(b, var)? else {
            continue;
        };
        let mut cancel: u32 = f
            .numerator_factors()
            .iter()
            .filter(|(nb, _)| nb.contains(var) && vanishes_at(nb, var, &c0, &m0))
            .map(|(_, &j)| j)
            .sum();
        let line = Monomial::var(var).mul(&m0.inv());
        let mut p = f.coeff().clone();
        while cancel < k {
            match p.div_binomial(&c0.inv(), &line) {
                Some(q) => {
                    p = q;
                    cancel += 1;
                }
                None => break,
            }
        }
        if cancel < k {
            poles.push(Pole {
                var,
                at: (c0, m0),
                order: k - cancel,
                binomial: b.clone(),
                orient,
            });
        }
    }
    Ok(poles)
}

/// `binom(e, j)` for any integer `e`.
fn gen_binom<C: Scalar>(e: i32, j: usize) -> C {
    let mut out = C::one();
    for i in 0..j {
        out = out * C::from_int((e - i as i32) as i64) / C::from_int(i as i64 + 1);
    }
    out
}

fn series_mul<C: Scalar>(a: &[Fr<C>], b: &[Fr<C>]) -> Vec<Fr<C>> {
    let n = a.len().min(b.len());
    (0..n).map(|k| Fr::sum((0..=k).map(|i| a[i].mul(&b[k - i])))).collect()
}

fn series_inv<C: Scalar>(a: &[Fr<C>]) -> Result<Vec<Fr<C>>> {
    let inv0 = a[0].recip()?;
    let mut out = vec![inv0.clone()];
    for n in 1..a.len() {
        let s = Fr::sum((1..=n).map(|j| a[j].mul(&out[n - j])));
        out.push(s.mul(&inv0).neg());
    }
    Ok(out)
}

fn series_pow<C: Scalar>(a: &[Fr<C>], k: u32) -> Vec<Fr<C>> {
    let mut out: Vec<Fr<C>> = (0..a.len())
        .map(|i| if i == 0 { Fr::one() } else { Fr::zero() })
        .collect();
    for _ in 0..k {
        out = series_mul(&out, a);
    }
    out
}

/// Series of `1 - c m (1+t)^e` where `c m` is the value at the pole.
fn binomial_series<C: Scalar>(c: &C, m: &Monomial, e: i32, len: usize) -> Vec<Fr<C>> {
    (0..len)
        .map(|j| {
            if j == 0 {
                Fr::binomial(c.clone(), m.clone())
            } else {
                Fr::term(-c.clone() * gen_binom::<C>(e, j), m.clone())
            }
        })
        .collect()
}

/// Residue of `f dz` at a pole produced by [`enumerate_poles`].
pub fn residue_at<C: Scalar>(f: &Fr<C>, pole: &Pole<C>) -> Result<Fr<C>> {
    let var = pole.var;
    let (c0, m0) = &pole.at;
    let z0 = Fr::term(c0.clone(), m0.clone());
    let raw = f.denominator_factors()[&pole.binomial];
    let rest = f.mul_binomial_pow(&pole.binomial.c, &pole.binomial.m, raw as i32)?;
    if raw == 1 {
        let mut map = BTreeMap::new();
        map.insert(var, z0.clone());
        let v = rest.substitute(&map)?.mul(&z0);
        return Ok(if pole.orient == 1 { v.neg() } else { v });
    }
    // Local expansion in z = z0 (1 + t), keeping t^0 .. t^(raw-1).
    let len = raw as usize;
    let mut constant = z0;
    let mut series: Vec<Fr<C>> = (0..len).map(|i| if i == 0 { Fr::one() } else { Fr::zero() }).collect();
    if pole.orient == 1 {
        if raw % 2 == 1 {
            constant = constant.neg();
        }
    } else {
        // (t / (1+t))^-raw contributes (1+t)^raw
        let s: Vec<Fr<C>> = (0..len).map(|j| Fr::constant(gen_binom::<C>(raw as i32, j))).collect();
        series = series_mul(&series, &s);
    }
    for (b, &k) in rest.numerator_factors() {
        let (e, _) = b.m.split(var);
        if e == 0 {
            constant = constant.mul(&Fr::binomial(b.c.clone(), b.m.clone()).pow(k as i32)?);
            continue;
        }
        let (c, m) = eval_term(&b.c, &b.m, var, c0, m0);
        let s = binomial_series(&c, &m, e, len);
        series = series_mul(&series, &series_pow(&s, k));
    }
    for (b, &k) in rest.denominator_factors() {
        let (e, _) = b.m.split(var);
        if e == 0 {
            constant = constant.mul(&Fr::inv_binomial(b.c.clone(), b.m.clone())?.pow(k as i32)?);
            continue;
        }
        let (c, m) = eval_term(&b.c, &b.m, var, c0, m0);
        let s = series_inv(&binomial_series(&c, &m, e, len))?;
        series = series_mul(&series, &series_pow(&s, k));
    }
    let mut cs: Vec<LaurentPoly<C>> = vec![LaurentPoly::zero(); len];
    for (e, p) in rest.coeff().collect_in(var) {
        let scaled = p.mul_term(&pow_scalar(c0, e), &m0.pow(e));
        for (j, slot) in cs.iter_mut().enumerate() {
            let b: C = gen_binom(e, j);
            if !b.is_zero() {
                *slot = slot.add(&scaled.scale(&b));
            }
        }
    }
    let cs: Vec<Fr<C>> = cs.into_iter().map(Fr::from_poly).collect();
    series = series_mul(&series, &cs);
    Ok(series[len - 1].mul(&constant))
}

/// `IR_{0,∞}` in one variable: minus the sum of all finite nonzero residues.
pub fn ir_zero_infty<C: Scalar>(f: &Fr<C>, var: Var) -> Result<Fr<C>> {
    let poles = enumerate_poles(f, var)?;
    let mut parts = Vec::with_capacity(poles.len());
    for p in &poles {
        parts.push(residue_at(f, p)?);
    }
    Ok(Fr::sum(parts).neg())
}

/// Iterated `IR_{0,∞}`; `vars[0]` is taken first.
pub fn ir_alphabet<C: Scalar>(f: &Fr<C>, vars: &[Var]) -> Result<Fr<C>> {
    let mut cur = f.clone();
    for &v in vars {
        cur = ir_zero_infty(&cur, v)?;
    }
    Ok(cur)
}

/// `Δ(z) = ∏_{i<j} (1 - z_j / z_i)`.
pub fn vandermonde<C: Scalar>(z: &[Var]) -> Fr<C> {
    let mut out = Fr::one();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            out = out.mul(&Fr::binomial(C::one(), Monomial::from_pairs([(z[j], 1), (z[i], -1)])));
        }
    }
    out
}

/// `∏ 1/z`, the logarithmic volume form.
pub fn dlog<C: Scalar>(z: &[Var]) -> Fr<C> {
    Fr::term(C::one(), Monomial::from_pairs(z.iter().map(|&v| (v, -1))))
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        Err(Error::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// Push-forward along the Grassmannian of rank `sigma.len()` subbundles of a
/// bundle with Chern roots `roots`, by summing over torus fixed points.
/// `f` is written in the tautological sub-roots `sigma` and quotient roots
/// `omega`.
pub fn localization_pushforward<C: Scalar>(f: &Fr<C>, sigma: &[Var], omega: &[Var], roots: &[Var]) -> Result<Fr<C>> {
    let (k, n) = (sigma.len(), roots.len());
    check_k(k, n)?;
    if k + omega.len() != n {
        return Err(Error::LengthMismatch(format!("{k} + {} != {n}", omega.len())));
    }
    let mut parts = Vec::new();
    for sub in (0..n).combinations(k) {
        let quo: Vec<usize> = (0..n).filter(|i| !sub.contains(i)).collect();
        let mut map = BTreeMap::new();
        for (s, &i) in sigma.iter().zip(&sub) {
            map.insert(*s, Fr::var(roots[i]));
        }
        for (w, &j) in omega.iter().zip(&quo) {
            map.insert(*w, Fr::var(roots[j]));
        }
        let mut term = f.substitute(&map)?;
        for &i in &sub {
            for &j in &quo {
                term = term.mul(&Fr::inv_binomial(
                    C::one(),
                    Monomial::from_pairs([(roots[i], 1), (roots[j], -1)]),
                )?);
            }
        }
        parts.push(term);
    }
    Ok(Fr::sum(parts))
}

fn tangent_den<C: Scalar>(z: &[Var], roots: &[Var], inverse: bool) -> Result<Fr<C>> {
    let mut out = Fr::one();
    for &zi in z {
        for &a in roots {
            let m = if inverse {
                Monomial::from_pairs([(zi, 1), (a, 1)])
            } else {
                Monomial::from_pairs([(zi, 1), (a, -1)])
            };
            out = out.mul(&Fr::inv_binomial(C::one(), m)?);
        }
    }
    Ok(out)
}

/// Residue form of [`localization_pushforward`] using one residue variable
/// per root: `z[..k]` replace `sigma`, `z[k..]` replace `omega`.
pub fn ir_pushforward_full<C: Scalar>(
    f: &Fr<C>,
    sigma: &[Var],
    omega: &[Var],
    roots: &[Var],
    z: &[Var],
) -> Result<Fr<C>> {
    let (k, n) = (sigma.len(), roots.len());
    check_k(k, n)?;
    if k + omega.len() != n || z.len() != n {
        return Err(Error::LengthMismatch("alphabet sizes".into()));
    }
    let mut map = BTreeMap::new();
    for (s, zv) in sigma.iter().chain(omega).zip(z) {
        map.insert(*s, Fr::var(*zv));
    }
    let integrand = f
        .substitute(&map)?
        .mul(&vandermonde(z))
        .mul(&tangent_den(z, roots, false)?)
        .mul(&dlog(z));
    ir_alphabet(&integrand, z)
}

/// Residue form for integrands depending only on the sub-roots `sigma`.
pub fn ir_pushforward_s<C: Scalar>(f: &Fr<C>, sigma: &[Var], roots: &[Var], z: &[Var]) -> Result<Fr<C>> {
    check_k(sigma.len(), roots.len())?;
    if z.len() != sigma.len() {
        return Err(Error::LengthMismatch("alphabet sizes".into()));
    }
    let mut map = BTreeMap::new();
    for (s, zv) in sigma.iter().zip(z) {
        map.insert(*s, Fr::var(*zv));
    }
    let integrand = f
        .substitute(&map)?
        .mul(&vandermonde(z))
        .mul(&tangent_den(z, roots, false)?)
        .mul(&dlog(z));
    ir_alphabet(&integrand, z)
}

/// Residue form for integrands depending only on the quotient roots `omega`.
pub fn ir_pushforward_q<C: Scalar>(f: &Fr<C>, omega: &[Var], roots: &[Var], z: &[Var]) -> Result<Fr<C>> {
    check_k(omega.len(), roots.len())?;
    if z.len() != omega.len() {
        return Err(Error::LengthMismatch("alphabet sizes".into()));
    }
    let mut map = BTreeMap::new();
    for (w, zv) in omega.iter().zip(z) {
        map.insert(*w, Fr::term(C::one(), Monomial::var_pow(*zv, -1)));
    }
    let integrand = f
        .substitute(&map)?
        .mul(&vandermonde(z))
        .mul(&tangent_den(z, roots, true)?)
        .mul(&dlog(z));
    ir_alphabet(&integrand, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Frac, Poly, Rational};

    fn one() -> Rational {
        Rational::from_int(1)
    }

    fn ratio(x: Var, y: Var) -> Monomial {
        Monomial::from_pairs([(x, 1), (y, -1)])
    }

    #[test]
    fn two_simple_poles() {
        let (a, b, z) = (Var::root(1, 1), Var::root(2, 1), Var::residue(1, 1));
        let f = Frac::inv_binomial(one(), ratio(z, a))
            .unwrap()
            .mul(&Frac::inv_binomial(one(), ratio(z, b)).unwrap())
            .mul(&dlog(&[z]));
        assert_eq!(enumerate_poles(&f, z).unwrap().len(), 2);
        assert_eq!(ir_zero_infty(&f, z).unwrap().to_laurent().unwrap(), Poly::one());
    }

    #[test]
    fn single_simple_pole() {
        // 1/(1 - z/a) dz/z at z = a has residue -1; IR = 1
        let (a, z) = (Var::root(1, 1), Var::residue(1, 1));
        let f = Frac::inv_binomial(one(), ratio(z, a)).unwrap().mul(&dlog(&[z]));
        let p = enumerate_poles(&f, z).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(
            residue_at(&f, &p[0]).unwrap().to_laurent().unwrap(),
            Poly::constant(-one())
        );
        assert!(ir_zero_infty(&dlog::<Rational>(&[z]), z).unwrap().is_zero());
    }

    #[test]
    fn double_pole() {
        // z dz / (1 - z/a)^2 / (1 - z/b): residues sum to minus the one at infinity
        let (a, b, z) = (Var::root(1, 1), Var::root(2, 1), Var::residue(1, 1));
        let f = Frac::inv_binomial(one(), ratio(z, a))
            .unwrap()
            .pow(2)
            .unwrap()
            .mul(&Frac::inv_binomial(one(), ratio(z, b)).unwrap());
        let poles = enumerate_poles(&f, z).unwrap();
        let orders: Vec<u32> = poles.iter().map(|p| p.order).collect();
        assert_eq!(orders.iter().sum::<u32>(), 3);
        // f ~ a^2 b / z^3 at infinity, so the residue there vanishes
        let total = Frac::sum(poles.iter().map(|p| residue_at(&f, p).unwrap()));
        assert!(total.is_zero());
    }

    #[test]
    fn cancelled_pole_is_skipped() {
        let (a, z) = (Var::root(1, 1), Var::residue(1, 1));
        let num = Frac::from_poly(Poly::var(z).sub(&Poly::var(a)));
        let f = num.mul(&Frac::inv_binomial(one(), ratio(z, a)).unwrap());
        assert!(enumerate_poles(&f, z).unwrap().is_empty());
    }

    #[test]
    fn nonlinear_pole_rejected() {
        let (a, z) = (Var::root(1, 1), Var::residue(1, 1));
        let f = Frac::inv_binomial(one(), Monomial::from_pairs([(z, 2), (a, -1)])).unwrap();
        assert!(matches!(enumerate_poles(&f, z), Err(Error::NonLinearPole(_))));
    }
}
