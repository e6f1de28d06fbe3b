//! Grothendieck polynomials `G_λ(A − B)` by residues, straightening of
//! non-partition indices, and quiver coefficients.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kclass::{build_factors, bundle_roots, m_roots};
use crate::linsolve::Echelon;
use crate::quiver::{dimension_vector, OrbitVector, Quiver};
use crate::reineke::{default_resolution, trim_trivial_steps, ResolutionPair};
use crate::residue::{dlog, ir_alphabet, vandermonde};
use crate::scalar::Scalar;
use crate::symbolic::{series_expand_to, ExpansionDomain, FactoredRational, LaurentPoly, Monomial, Var};

type Fr<C> = FactoredRational<C>;

/// A weakly decreasing sequence of positive integers.
pub type Partition = Vec<u32>;

/// Coefficients `c_μ` indexed by one partition per vertex.
pub type QuiverCoefficientTable = BTreeMap<Vec<Partition>, i64>;

pub fn weight(mu: &[Partition]) -> u32 {
    mu.iter().flatten().sum()
}

/// `g_λ(A − B)` for any integer sequence `λ`.
pub fn g_poly_seq<C: Scalar>(lambda: &[i64], a: &[Var], b: &[Var]) -> Result<LaurentPoly<C>> {
    let l = b.len() as i64 - a.len() as i64;
    let z: Vec<Var> = (1..=lambda.len() as u32).map(|i| Var::residue(0, i)).collect();
    let mut f = vandermonde::<C>(&z).mul(&dlog(&z));
    for (i, (&zi, &li)) in z.iter().zip(lambda).enumerate() {
        let e = li - (i as i64 + 1) - l;
        f = f.mul_binomial_pow(&C::one(), &Monomial::var(zi), e as i32)?;
        for &x in b {
            f = f.mul(&Fr::binomial(C::one(), Monomial::from_pairs([(x, 1), (zi, 1)])));
        }
        for &x in a {
            f = f.mul(&Fr::inv_binomial(C::one(), Monomial::from_pairs([(x, 1), (zi, 1)]))?);
        }
    }
    let out = ir_alphabet(&f, &z)?;
    out.to_laurent()
        .ok_or_else(|| Error::NotRepresentable(format!("g_{lambda:?} is not a Laurent polynomial")))
}

/// `g_λ(A − B)` with `A = e1_1..e1_n` and `B = e2_1..e2_p`.
pub fn g_poly<C: Scalar>(lambda: &[i64], n: u32, p: u32) -> Result<LaurentPoly<C>> {
    let a: Vec<Var> = (1..=n).map(|j| Var::root(1, j)).collect();
    let b: Vec<Var> = (1..=p).map(|j| Var::root(2, j)).collect();
    g_poly_seq(lambda, &a, &b)
}

/// Rewrites `g_s` for integer sequences `s` as integer combinations of
/// `g_λ` over partitions, valid for alphabets of any size.
///
/// Trailing non-positive entries are dropped, `(…, p−1, p, …)` becomes
/// `(…, p, p, …)`, and an ascent `(a, b)` with `b ≥ a + 2` is exchanged by
/// `g(a, b) = g(a+1, b) − g(b−1, a+1) + g(b, a+1)`, which follows from the
/// symmetry of the residue functional in two adjacent variables.
#[derive(Default)]
pub struct Straightener {
    cache: HashMap<Vec<i64>, BTreeMap<Partition, i64>>,
}

impl Straightener {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn straighten(&mut self, seq: &[i64]) -> BTreeMap<Partition, i64> {
        let mut s = seq.to_vec();
        while s.last().is_some_and(|&x| x <= 0) {
            s.pop();
        }
        if let Some(hit) = self.cache.get(&s) {
            return hit.clone();
        }
        let out = match s.windows(2).position(|w| w[0] < w[1]) {
            None => BTreeMap::from([(s.iter().map(|&x| x as u32).collect(), 1)]),
            Some(j) => {
                let (a, b) = (s[j], s[j + 1]);
                if b == a + 1 {
                    let mut t = s.clone();
                    t[j] = b;
                    self.straighten(&t)
                } else {
                    let mut acc = BTreeMap::new();
                    for (x, y, sign) in [(a + 1, b, 1), (b - 1, a + 1, -1), (b, a + 1, 1)] {
                        let mut t = s.clone();
                        t[j] = x;
                        t[j + 1] = y;
                        for (p, c) in self.straighten(&t) {
                            *acc.entry(p).or_insert(0) += sign * c;
                        }
                    }
                    acc.retain(|_, c| *c != 0);
                    acc
                }
            }
        };
        self.cache.insert(s, out.clone());
        out
    }
}

/// Partitions with at most `len` parts and size at most `max`.
pub fn partitions_up_to(max: u32, len: usize) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, len: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        out.push(cur.clone());
        if cur.len() == len {
            return;
        }
        for x in 1..=cap.min(rem) {
            cur.push(x);
            rec(rem - x, x, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, max, len, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));
    out
}

/// Straightening by solving a linear system in the `g_λ` of alphabets with
/// sizes `n` and `p`. Used to validate [`Straightener`].
pub fn straighten_linear<C: Scalar>(seq: &[i64], n: u32, p: u32) -> Result<BTreeMap<Partition, C>> {
    let target = g_poly::<C>(seq, n, p)?;
    let len = seq.len();
    let top = seq.iter().map(|&x| x.max(0) as u32).max().unwrap_or(0) * len as u32;
    let basis = partitions_up_to(top, len);
    let mut ech = Echelon::default();
    for (k, lam) in basis.iter().enumerate() {
        let s: Vec<i64> = lam.iter().map(|&x| x as i64).collect();
        ech.push(k, &g_poly::<C>(&s, n, p)?);
    }
    let sol = ech
        .solve(&target)
        .ok_or_else(|| Error::Inconsistent(format!("g_{seq:?} outside the span")))?;
    Ok(sol.into_iter().map(|(k, c)| (basis[k].clone(), c)).collect())
}

/// Residue variables of each vertex family, in step order.
pub fn families(q: &Quiver, rp: &ResolutionPair) -> Vec<Vec<Var>> {
    let mut fam = vec![Vec::new(); q.vertices()];
    for (k, (&i, &r)) in rp.i.iter().zip(&rp.r).enumerate() {
        for j in 1..=r {
            fam[i - 1].push(Var::residue(k as u32 + 1, j));
        }
    }
    fam
}

/// The same integrand as the residue formula, but integrated family by
/// family: vertices in reverse topological order, and inside a family its
/// first variable first.
pub fn regrouped_kclass<C: Scalar>(q: &Quiver, v: &[u32], rp: &ResolutionPair) -> Result<LaurentPoly<C>> {
    let fs = build_factors::<C>(q, v, rp)?;
    let fam = families(q, rp);
    let all: Vec<usize> = (1..=q.vertices()).collect();
    let order: Vec<Var> = q
        .topological_order(&all)
        .into_iter()
        .rev()
        .flat_map(|i| fam[i - 1].clone())
        .collect();
    let out = ir_alphabet(&fs.integrand(), &order)?;
    out.to_laurent()
        .ok_or_else(|| Error::NotRepresentable("regrouped result".into()))
}

/// The rational function whose expansion encodes the quiver coefficients,
/// in variables `v{i}_{j}` (the `j`-th variable of vertex `i`'s family).
pub fn coefficient_function<C: Scalar>(q: &Quiver, v: &[u32], rp: &ResolutionPair) -> Result<(Fr<C>, Vec<Vec<Var>>)> {
    rp.validate(q, v)?;
    let fam = families(q, rp);
    let mut rename = BTreeMap::new();
    let mut shifted = Vec::with_capacity(fam.len());
    for (i, f) in fam.iter().enumerate() {
        let mut vs = Vec::new();
        for (j, &z) in f.iter().enumerate() {
            let nv = Var::aux("v", i as u32 + 1, j as u32 + 1);
            rename.insert(z, Fr::binomial(C::one(), Monomial::var(nv)));
            vs.push(nv);
        }
        shifted.push(vs);
    }
    let mut f = Fr::one();
    for (i, fz) in fam.iter().enumerate() {
        let l = v[i] as i64 - m_roots(q, v, i + 1).len() as i64;
        for &z in fz {
            f = f.mul_binomial_pow(&C::one(), &Monomial::var(z), -l as i32)?;
        }
    }
    for (k, &ik) in rp.i.iter().enumerate() {
        let tails = q.tails_of(ik);
        for j in 1..=rp.r[k] {
            let y = Var::residue(k as u32 + 1, j);
            for l in 0..k {
                if tails.contains(&rp.i[l]) {
                    for jj in 1..=rp.r[l] {
                        let x = Var::residue(l as u32 + 1, jj);
                        f = f.mul(&Fr::inv_binomial(C::one(), Monomial::from_pairs([(y, 1), (x, -1)]))?);
                    }
                }
            }
        }
    }
    let mut f = f.substitute(&rename)?;
    let lift = Monomial::from_pairs(
        shifted
            .iter()
            .flat_map(|vs| vs.iter().enumerate().map(|(j, &x)| (x, j as i32 + 1))),
    );
    f = f.mul_term(&C::one(), &lift);
    Ok((f, shifted))
}

/// Quiver coefficients of weight at most `w`, exact.
fn coefficients_to_weight<C: Scalar>(
    f: &Fr<C>,
    shifted: &[Vec<Var>],
    q: &Quiver,
    w: u32,
    st: &mut Straightener,
) -> Result<BTreeMap<Vec<Partition>, C>> {
    let depth = q.depths();
    let levels = depth.iter().skip(1).copied().max().unwrap_or(0) + 1;
    let mut groups = vec![Vec::new(); levels];
    for (i, vs) in shifted.iter().enumerate() {
        groups[depth[i + 1]].extend(vs.iter().copied());
    }
    let dom = ExpansionDomain::from_levels(&groups);
    let cut = w as i64 * dom.max_grade();
    let series = series_expand_to(f, &dom, cut)?;
    let mut seqs: HashMap<Vec<Vec<i64>>, C> = HashMap::new();
    for (m, c) in series.iter() {
        let key: Vec<Vec<i64>> = shifted
            .iter()
            .map(|vs| {
                let mut s: Vec<i64> = vs.iter().map(|&x| m.exp(x) as i64).collect();
                while s.last().is_some_and(|&x| x <= 0) {
                    s.pop();
                }
                s
            })
            .collect();
        let e = seqs.entry(key).or_insert_with(C::zero);
        *e = e.clone() + c.clone();
    }
    let mut table: BTreeMap<Vec<Partition>, C> = BTreeMap::new();
    for (key, c) in seqs {
        if c.is_zero() {
            continue;
        }
        let mut acc: Vec<(Vec<Partition>, i64)> = vec![(Vec::new(), 1)];
        for s in &key {
            let parts = st.straighten(s);
            let mut next = Vec::with_capacity(acc.len() * parts.len());
            for (prefix, k) in &acc {
                for (p, j) in &parts {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    next.push((t, k * j));
                }
            }
            acc = next;
        }
        for (mu, k) in acc {
            if weight(&mu) <= w {
                let e = table.entry(mu).or_insert_with(C::zero);
                *e = e.clone() + c.clone() * C::from_int(k);
            }
        }
    }
    table.retain(|_, c| !c.is_zero());
    Ok(table)
}

fn to_integer_table<C: Scalar>(t: BTreeMap<Vec<Partition>, C>) -> Result<QuiverCoefficientTable> {
    t.into_iter()
        .map(|(k, c)| {
            c.to_int()
                .map(|x| (k.clone(), x))
                .ok_or_else(|| Error::Inconsistent(format!("non-integer coefficient {c} at {k:?}")))
        })
        .collect()
}

/// Options for coefficient extraction.
#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    /// First weight bound tried; `None` means the sum of the ranks.
    pub start: Option<u32>,
    /// Largest weight bound tried before giving up.
    pub cap: u32,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { start: None, cap: 64 }
    }
}

/// Quiver coefficients from the expansion of the regrouped residue
/// integrand. The weight bound grows until the two weights above the
/// current bound carry no coefficient.
pub fn quiver_coefficients<C: Scalar>(
    q: &Quiver,
    v: &[u32],
    rp: &ResolutionPair,
    opts: ExtractOptions,
) -> Result<QuiverCoefficientTable> {
    let (f, shifted) = coefficient_function::<C>(q, v, rp)?;
    let mut st = Straightener::new();
    let mut w = opts.start.unwrap_or_else(|| v.iter().sum());
    loop {
        if w + 2 > opts.cap {
            return Err(Error::DegreeBoundExhausted(w as usize));
        }
        let t = coefficients_to_weight(&f, &shifted, q, w + 2, &mut st)?;
        if t.keys().all(|mu| weight(mu) <= w) {
            return to_integer_table(t);
        }
        w += 2;
    }
}

/// Quiver coefficients of `Ω_m` using the automatic resolution with trivial
/// trailing steps removed.
pub fn quiver_coefficients_of<C: Scalar>(
    q: &Quiver,
    m: &OrbitVector,
    opts: ExtractOptions,
) -> Result<QuiverCoefficientTable> {
    let v = dimension_vector(q, m);
    let (_, rp) = default_resolution(q, m)?;
    quiver_coefficients::<C>(q, &v, &trim_trivial_steps(q, &v, &rp), opts)
}

/// Independent oracle: solves `kc = Σ c_μ Π_i G_{μ_i}(E_i − M_i)` over all
/// `μ` with `ℓ(μ_i) ≤ v_i` and growing total weight.
pub fn expansion_oracle<C: Scalar>(
    kc: &LaurentPoly<C>,
    q: &Quiver,
    v: &[u32],
    start: u32,
    cap: u32,
) -> Result<QuiverCoefficientTable> {
    let e = bundle_roots(v);
    let mut cache: HashMap<(usize, Partition), LaurentPoly<C>> = HashMap::new();
    let mut last: Option<QuiverCoefficientTable> = None;
    let mut d = start;
    while d <= cap {
        let per_vertex: Vec<Vec<Partition>> = (0..q.vertices()).map(|i| partitions_up_to(d, v[i] as usize)).collect();
        let mut basis: Vec<Vec<Partition>> = vec![Vec::new()];
        for opts in &per_vertex {
            let mut next = Vec::new();
            for prefix in &basis {
                for p in opts {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    if weight(&t) <= d {
                        next.push(t);
                    }
                }
            }
            basis = next;
        }
        let mut ech = Echelon::default();
        for (k, mu) in basis.iter().enumerate() {
            let mut prod = LaurentPoly::one();
            for (i, p) in mu.iter().enumerate() {
                let key = (i, p.clone());
                if !cache.contains_key(&key) {
                    let s: Vec<i64> = p.iter().map(|&x| x as i64).collect();
                    let g = g_poly_seq(&s, &e[i], &m_roots(q, v, i + 1))?;
                    cache.insert(key.clone(), g);
                }
                prod = prod.mul(&cache[&key]);
            }
            ech.push(k, &prod);
        }
        if !ech.dependent().is_empty() {
            return Err(Error::Inconsistent("Grothendieck products are dependent".into()));
        }
        if let Some(sol) = ech.solve(kc) {
            let t = to_integer_table(sol.into_iter().map(|(k, c)| (basis[k].clone(), c)).collect())?;
            if last.as_ref() == Some(&t) {
                return Ok(t);
            }
            last = Some(t);
        } else {
            last = None;
        }
        d += 1;
    }
    Err(Error::DegreeBoundExhausted(cap as usize))
}

/// `(−1)^{|μ| − codim} c_μ ≥ 0` for every entry.
pub fn sign_check(t: &QuiverCoefficientTable, codim: u32) -> bool {
    t.iter().all(|(mu, &c)| {
        let s = if (weight(mu) + codim).is_multiple_of(2) { 1 } else { -1 };
        s * c >= 0
    })
}

/// JSON form: `[{"mu": [[..], ..], "c": k}, ..]` in canonical order.
pub fn table_to_json(t: &QuiverCoefficientTable) -> Value {
    Value::Array(t.iter().map(|(mu, c)| json!({ "mu": mu, "c": c })).collect())
}

pub fn table_from_json(v: &Value) -> Result<QuiverCoefficientTable> {
    let bad = || Error::Parse("malformed coefficient table".into());
    let mut t = BTreeMap::new();
    for e in v.as_array().ok_or_else(bad)? {
        let mu: Vec<Partition> = serde_json::from_value(e.get("mu").ok_or_else(bad)?.clone()).map_err(|_| bad())?;
        let c = e.get("c").and_then(Value::as_i64).ok_or_else(bad)?;
        t.insert(mu, c);
    }
    Ok(t)
}

/// Text form, one `μ: c` line per entry.
pub fn table_to_text(t: &QuiverCoefficientTable) -> String {
    let mut s = String::new();
    for (mu, c) in t {
        let parts: Vec<String> = mu
            .iter()
            .map(|p| format!("({})", p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        s.push_str(&format!("{}: {c}\n", parts.join(" ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_poly;
    use crate::{Poly, Rational};

    #[test]
    fn g1_matches_example() {
        let g: Poly = g_poly(&[1], 2, 2).unwrap();
        assert_eq!(g, parse_poly("1 - e1_1^-1*e1_2^-1*e2_1*e2_2").unwrap());
        let empty: Poly = g_poly(&[], 2, 2).unwrap();
        assert!(empty.is_one());
    }

    #[test]
    fn straightening_rules() {
        let mut st = Straightener::new();
        assert_eq!(st.straighten(&[2, 0, -1]), BTreeMap::from([(vec![2], 1)]));
        assert_eq!(st.straighten(&[1, 2]), BTreeMap::from([(vec![2, 2], 1)]));
        let lin = straighten_linear::<Rational>(&[0, 3], 2, 3).unwrap();
        let rules = st.straighten(&[0, 3]);
        let lin: BTreeMap<Partition, i64> = lin.into_iter().map(|(k, c)| (k, c.to_int().unwrap())).collect();
        assert_eq!(lin, rules);
    }

    #[test]
    fn partitions_listing() {
        assert_eq!(
            partitions_up_to(3, 2),
            vec![vec![], vec![1], vec![1, 1], vec![2], vec![2, 1], vec![3]]
        );
    }

    #[test]
    fn table_json_roundtrip() {
        let t = QuiverCoefficientTable::from([(vec![vec![], vec![2, 1]], 1), (vec![vec![1], vec![2]], -1)]);
        assert_eq!(table_from_json(&table_to_json(&t)).unwrap(), t);
        assert!(sign_check(
            &QuiverCoefficientTable::from([(vec![vec![3]], 1), (vec![vec![4]], -1)]),
            3
        ));
        assert!(!sign_check(&t, 3));
    }
}
