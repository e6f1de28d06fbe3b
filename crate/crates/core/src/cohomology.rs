//! Cohomological limits: leading terms of K-classes, Chern class
//! rewriting, relative Chern classes and Schur determinants.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groth::{weight, QuiverCoefficientTable};
use crate::kclass::{bundle_roots, kclass};
use crate::quiver::{dimension_vector, OrbitVector, Quiver};
use crate::scalar::Scalar;
use crate::symbolic::{LaurentPoly, Monomial, Var};

/// Symbol for the `k`-th Chern class of the bundle at `vertex`.
pub fn class_var(vertex: u32, k: u32) -> Var {
    Var::aux("c", vertex, k)
}

/// `[1, c_1, …, c_rank]` of the bundle at `vertex`, as symbols.
pub fn chern_symbols<C: Scalar>(vertex: u32, rank: u32) -> Vec<LaurentPoly<C>> {
    std::iter::once(LaurentPoly::one())
        .chain((1..=rank).map(|k| LaurentPoly::var(class_var(vertex, k))))
        .collect()
}

/// Lowest nonvanishing homogeneous part of `kc` after putting every
/// variable `x = exp(x)`, with its degree.
pub fn chern_character_leading<C: Scalar>(kc: &LaurentPoly<C>, cap: u32) -> Result<(LaurentPoly<C>, u32)> {
    if kc.is_zero() {
        return Err(Error::ZeroClass);
    }
    let linear: Vec<(LaurentPoly<C>, C)> = kc
        .iter()
        .map(|(m, c)| {
            let l = LaurentPoly::from_terms(m.iter().map(|(v, e)| (Monomial::var(v), C::from_int(e as i64))));
            (l, c.clone())
        })
        .collect();
    let mut powers: Vec<LaurentPoly<C>> = linear.iter().map(|_| LaurentPoly::one()).collect();
    let mut fact = C::one();
    for d in 0..=cap {
        if d > 0 {
            fact = fact * C::from_int(d as i64);
            for (p, (l, _)) in powers.iter_mut().zip(&linear) {
                *p = p.mul(l);
            }
        }
        let mut sum = LaurentPoly::zero();
        for (p, (_, c)) in powers.iter().zip(&linear) {
            sum = sum.add(&p.scale(c));
        }
        if !sum.is_zero() {
            return Ok((sum.scale(&fact.inv()), d));
        }
    }
    Err(Error::DegreeCapExceeded(cap as usize))
}

/// Elementary symmetric polynomial `e_k(vars)`.
pub fn elementary<C: Scalar>(vars: &[Var], k: usize) -> LaurentPoly<C> {
    let mut e: Vec<LaurentPoly<C>> = vec![LaurentPoly::one()];
    for &x in vars {
        let mut next = e.clone();
        next.push(LaurentPoly::zero());
        for j in 1..next.len() {
            next[j] = next[j].add(&e[j - 1].mul(&LaurentPoly::var(x)));
        }
        e = next;
    }
    e.get(k).cloned().unwrap_or_else(LaurentPoly::zero)
}

/// Rewrites a polynomial symmetric in each alphabet `(roots, vertex)` in
/// terms of the Chern class symbols of those vertices.
pub fn to_chern_classes<C: Scalar>(p: &LaurentPoly<C>, alphabets: &[(Vec<Var>, u32)]) -> Result<LaurentPoly<C>> {
    if !p.is_polynomial() {
        return Err(Error::InvalidInput("negative exponents".into()));
    }
    let mut cur = p.clone();
    for (roots, vertex) in alphabets {
        let n = roots.len();
        let es: Vec<LaurentPoly<C>> = (0..=n).map(|k| elementary(roots, k)).collect();
        let mut rest = cur;
        let mut out = LaurentPoly::zero();
        loop {
            let mut lead: Option<Vec<i32>> = None;
            for (m, _) in rest.iter() {
                let ex: Vec<i32> = roots.iter().map(|&x| m.exp(x)).collect();
                if lead.as_ref().is_none_or(|l| ex > *l) {
                    lead = Some(ex);
                }
            }
            let lead = match lead {
                Some(l) if l.iter().any(|&x| x != 0) => l,
                _ => {
                    out = out.add(&rest);
                    break;
                }
            };
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Asymmetric);
            }
            let coeff = LaurentPoly::from_terms(rest.iter().filter_map(|(m, c)| {
                let ex: Vec<i32> = roots.iter().map(|&x| m.exp(x)).collect();
                (ex == lead).then(|| {
                    (
                        Monomial::from_pairs(m.iter().filter(|(v, _)| !roots.contains(v))),
                        c.clone(),
                    )
                })
            }));
            let mut in_roots = coeff.clone();
            let mut pairs = Vec::new();
            for k in 1..=n {
                let mult = lead[k - 1] - lead.get(k).copied().unwrap_or(0);
                if mult > 0 {
                    in_roots = in_roots.mul(&es[k].pow(mult as u32));
                    pairs.push((class_var(*vertex, k as u32), mult));
                }
            }
            rest = rest.sub(&in_roots);
            out = out.add(&coeff.mul_term(&C::one(), &Monomial::from_pairs(pairs)));
        }
        cur = out;
    }
    Ok(cur)
}

/// Coefficients `0..=order` of `Σ c_k(V)(−ξ)^k / Σ c_l(W)(−ξ)^l`, that is
/// the Chern classes of `V^∨ − W^∨`.
pub fn relative_chern<C: Scalar>(cv: &[LaurentPoly<C>], cw: &[LaurentPoly<C>], order: usize) -> Vec<LaurentPoly<C>> {
    let sign = |k: usize, p: &LaurentPoly<C>| if k.is_multiple_of(2) { p.clone() } else { p.neg() };
    let num: Vec<LaurentPoly<C>> = (0..=order)
        .map(|k| cv.get(k).map(|p| sign(k, p)).unwrap_or_default())
        .collect();
    let den: Vec<LaurentPoly<C>> = (0..=order)
        .map(|k| cw.get(k).map(|p| sign(k, p)).unwrap_or_default())
        .collect();
    let mut out: Vec<LaurentPoly<C>> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut r = num[n].clone();
        for l in 1..=n {
            r = r.sub(&den[l].mul(&out[n - l]));
        }
        out.push(r);
    }
    out
}

/// `det(h_{λ_i + j − i})` with `h_0 = 1` and `h_k = 0` for `k < 0`.
pub fn schur_det<C: Scalar>(lambda: &[u32], h: &[LaurentPoly<C>]) -> Result<LaurentPoly<C>> {
    let l = lambda.len();
    let entry = |i: usize, j: usize| -> Result<LaurentPoly<C>> {
        let k = lambda[i] as i64 + j as i64 - i as i64;
        if k < 0 {
            return Ok(LaurentPoly::zero());
        }
        if k == 0 {
            return Ok(LaurentPoly::one());
        }
        h.get(k as usize)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("h_{k} not supplied")))
    };
    let mut m = vec![vec![LaurentPoly::zero(); l]; l];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = entry(i, j)?;
        }
    }
    Ok(det(&m))
}

fn det<C: Scalar>(m: &[Vec<LaurentPoly<C>>]) -> LaurentPoly<C> {
    match m.len() {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        n => {
            let mut out = LaurentPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly<C>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|p| p.0 != j)
                            .map(|p| p.1.clone())
                            .collect()
                    })
                    .collect();
                let t = m[0][j].mul(&det(&minor));
                out = if j % 2 == 0 { out.add(&t) } else { out.sub(&t) };
            }
            out
        }
    }
}

/// `h_k(E_i − M_i) = c_k(M_i^∨ − E_i^∨)` in class symbols, `k = 0..=order`.
pub fn h_classes<C: Scalar>(q: &Quiver, v: &[u32], i: usize, order: usize) -> Vec<LaurentPoly<C>> {
    let mut cm = vec![LaurentPoly::one()];
    for t in q.tails_of(i) {
        let ct = chern_symbols::<C>(t as u32, v[t - 1]);
        let mut next = vec![LaurentPoly::zero(); cm.len() + ct.len() - 1];
        for (a, x) in cm.iter().enumerate() {
            for (b, y) in ct.iter().enumerate() {
                next[a + b] = next[a + b].add(&x.mul(y));
            }
        }
        cm = next;
    }
    relative_chern(&cm, &chern_symbols(i as u32, v[i - 1]), order)
}

/// Cohomology class assembled from quiver coefficients of weight `codim`:
/// `Σ c_μ Π_i s_{μ_i}(E_i − M_i)`.
pub fn cohomology_from_coefficients<C: Scalar>(
    t: &QuiverCoefficientTable,
    q: &Quiver,
    v: &[u32],
    codim: u32,
) -> Result<LaurentPoly<C>> {
    let order = codim as usize + v.iter().sum::<u32>() as usize;
    let hs: Vec<Vec<LaurentPoly<C>>> = (1..=q.vertices()).map(|i| h_classes(q, v, i, order)).collect();
    let mut out = LaurentPoly::zero();
    for (mu, &c) in t.iter().filter(|(mu, _)| weight(mu) == codim) {
        let mut term = LaurentPoly::constant(C::from_int(c));
        for (i, p) in mu.iter().enumerate() {
            term = term.mul(&schur_det(p, &hs[i])?);
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Leading cohomology class of a K-class written in Chern class symbols.
pub fn cohomology_class<C: Scalar>(kc: &LaurentPoly<C>, v: &[u32]) -> Result<(LaurentPoly<C>, u32)> {
    let cap = 2 * v.iter().sum::<u32>().pow(2).max(1);
    let (lead, d) = chern_character_leading(kc, cap)?;
    let alphabets: Vec<(Vec<Var>, u32)> = bundle_roots(v)
        .into_iter()
        .enumerate()
        .map(|(i, r)| (r, i as u32 + 1))
        .collect();
    Ok((to_chern_classes(&lead, &alphabets)?, d))
}

/// Codimension of `Ω_m`: the degree of the leading cohomology class.
pub fn codimension<C: Scalar>(q: &Quiver, m: &OrbitVector) -> Result<u32> {
    let kc: LaurentPoly<C> = kclass(q, m)?;
    let cap = 2 * dimension_vector(q, m).iter().sum::<u32>().pow(2).max(1);
    Ok(chern_character_leading(&kc, cap)?.1)
}

/// Renders class symbols `c{i}_{k}` with letters per vertex (`A1`, `B2`, …).
pub fn display_classes<C: Scalar>(p: &LaurentPoly<C>) -> String {
    let letters: BTreeMap<Var, String> = p
        .vars()
        .into_iter()
        .filter_map(|v| match v.kind() {
            crate::symbolic::VarKind::Aux {
                name: "c",
                major,
                minor,
            } if (1..=26).contains(&major) => Some((v, format!("{}{minor}", (b'A' + major as u8 - 1) as char))),
            _ => None,
        })
        .collect();
    let s = p.to_string();
    let mut out = String::with_capacity(s.len());
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        if !token.is_empty() {
            match Var::parse(token).ok().and_then(|v| letters.get(&v)) {
                Some(l) => out.push_str(l),
                None => out.push_str(token),
            }
            token.clear();
        }
    };
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            if token.is_empty() && ch.is_ascii_digit() {
                out.push(ch);
            } else {
                token.push(ch);
            }
        } else {
            flush(&mut token, &mut out);
            out.push(ch);
        }
    }
    flush(&mut token, &mut out);
    out
}
