//! Dynkin quivers, positive roots and the Euler form.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simply laced Dynkin type of a connected quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// An oriented Dynkin diagram with vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    kind: DynkinType,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        Quiver::new(j.vertices, j.arrows.iter().map(|a| (a[0], a[1])).collect())
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson {
            vertices: q.n,
            arrows: q.arrows.iter().map(|&(t, h)| [t, h]).collect(),
        }
    }
}

/// A positive root, as its coefficient vector on the simple roots.
pub type Root = Vec<u32>;

impl Quiver {
    /// Validates that the underlying graph is a connected ADE diagram.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        if n == 0 {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        let mut edges = BTreeSet::new();
        let mut adj = vec![Vec::new(); n + 1];
        for &(t, h) in &arrows {
            for v in [t, h] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange(v));
                }
            }
            if t == h {
                return Err(Error::InvalidQuiver(format!("loop at vertex {t}")));
            }
            if !edges.insert((t.min(h), t.max(h))) {
                return Err(Error::InvalidQuiver(format!("multiple edges between {t} and {h}")));
            }
            adj[t].push(h);
            adj[h].push(t);
        }
        if arrows.len() != n - 1 {
            return Err(Error::InvalidQuiver("underlying graph is not a tree".into()));
        }
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidQuiver("underlying graph is not connected".into()));
        }
        let kind = classify(n, &adj)?;
        Ok(Quiver { n, arrows, kind })
    }

    /// Equioriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn a_equioriented(n: usize) -> Quiver {
        Quiver::new(n, (1..n).map(|i| (i, i + 1)).collect()).expect("valid A_n")
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.kind
    }

    /// Tails of arrows ending at `i`.
    pub fn tails_of(&self, i: usize) -> Vec<usize> {
        let mut t: Vec<usize> = self.arrows.iter().filter(|a| a.1 == i).map(|a| a.0).collect();
        t.sort_unstable();
        t
    }

    /// `⟨u, w⟩ = Σ u_i w_i − Σ_arrows u_t w_h`.
    pub fn euler_form(&self, u: &[u32], w: &[u32]) -> i64 {
        let d: i64 = u.iter().zip(w).map(|(a, b)| *a as i64 * *b as i64).sum();
        let a: i64 = self
            .arrows
            .iter()
            .map(|&(t, h)| u[t - 1] as i64 * w[h - 1] as i64)
            .sum();
        d - a
    }

    /// Positive roots by closure under simple reflections, ordered by height
    /// and then with larger leading coefficients first.
    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.n;
        let mut adj = vec![Vec::new(); n];
        for &(t, h) in &self.arrows {
            adj[t - 1].push(h - 1);
            adj[h - 1].push(t - 1);
        }
        let simple = |i: usize| {
            let mut r = vec![0u32; n];
            r[i] = 1;
            r
        };
        let mut found: BTreeSet<Root> = (0..n).map(simple).collect();
        let mut queue: VecDeque<Root> = found.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let pair = 2 * b[i] as i64 - adj[i].iter().map(|&j| b[j] as i64).sum::<i64>();
                let new = b[i] as i64 - pair;
                if new < 0 || pair == 0 {
                    continue;
                }
                let mut r = b.clone();
                r[i] = new as u32;
                if r.iter().any(|&x| x > 0) && found.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<Root> = found.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: u32 = a.iter().sum();
            let hb: u32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        roots
    }

    /// Whether `r` is a positive root.
    pub fn is_root(&self, r: &[u32]) -> bool {
        r.len() == self.n && self.euler_form(r, r) == 1 && r.iter().any(|&x| x > 0) && {
            self.positive_roots().iter().any(|x| x == r)
        }
    }

    /// Topological order of the vertices in `subset` (tails first, ties by
    /// index), using arrows between vertices of `subset` only.
    pub fn topological_order(&self, subset: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        let mut indeg: BTreeMap<usize, usize> = set.iter().map(|&v| (v, 0)).collect();
        for &(t, h) in &self.arrows {
            if set.contains(&t) && set.contains(&h) {
                *indeg.get_mut(&h).unwrap() += 1;
            }
        }
        let mut ready: BTreeSet<usize> = indeg.iter().filter(|p| *p.1 == 0).map(|p| *p.0).collect();
        let mut out = Vec::with_capacity(set.len());
        while let Some(v) = ready.pop_first() {
            out.push(v);
            for &(t, h) in &self.arrows {
                if t == v && set.contains(&h) {
                    let d = indeg.get_mut(&h).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(h);
                    }
                }
            }
        }
        out
    }

    /// Depth of each vertex: sources have depth 0, heads sit one above the
    /// deepest tail.
    pub fn depths(&self) -> Vec<usize> {
        let all: Vec<usize> = (1..=self.n).collect();
        let mut depth = vec![0; self.n + 1];
        for v in self.topological_order(&all) {
            for t in self.tails_of(v) {
                depth[v] = depth[v].max(depth[t] + 1);
            }
        }
        depth
    }
}

fn classify(n: usize, adj: &[Vec<usize>]) -> Result<DynkinType> {
    let branch: Vec<usize> = (1..=n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return Ok(DynkinType::A(n));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(Error::InvalidQuiver("not a Dynkin diagram".into()));
    }
    let c = branch[0];
    let mut legs: Vec<usize> = adj[c]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (c, start, 1);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    legs.sort_unstable();
    match legs[..] {
        [1, 1, _] => Ok(DynkinType::D(n)),
        [1, 2, 2..=4] => Ok(DynkinType::E(n)),
        _ => Err(Error::InvalidQuiver("not a Dynkin diagram".into())),
    }
}

/// Multiplicities of indecomposables, keyed by root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitVector(pub BTreeMap<Root, u64>);

#[derive(Serialize, Deserialize)]
struct OrbitEntry {
    root: Root,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct OrbitJson {
    m: Vec<OrbitEntry>,
}

impl OrbitVector {
    pub fn new<I: IntoIterator<Item = (Root, u64)>>(it: I) -> Self {
        let mut m = BTreeMap::new();
        for (r, k) in it {
            if k > 0 {
                *m.entry(r).or_insert(0) += k;
            }
        }
        OrbitVector(m)
    }

    /// Checks every key against the roots of `q`.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let roots: BTreeSet<Root> = q.positive_roots().into_iter().collect();
        for r in self.0.keys() {
            if r.len() != q.vertices() {
                return Err(Error::LengthMismatch(format!(
                    "root {r:?} for {} vertices",
                    q.vertices()
                )));
            }
            if !roots.contains(r) {
                return Err(Error::InvalidInput(format!("{r:?} is not a positive root")));
            }
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<Root> {
        self.0.keys().cloned().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = OrbitJson {
            m: self
                .0
                .iter()
                .map(|(r, &k)| OrbitEntry {
                    root: r.clone(),
                    mult: k,
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: OrbitJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(OrbitVector::new(j.m.into_iter().map(|e| (e.root, e.mult))))
    }
}

/// `v_i = Σ m_φ d_i(φ)`.
pub fn dimension_vector(q: &Quiver, m: &OrbitVector) -> Vec<u32> {
    let mut v = vec![0u32; q.vertices()];
    for (r, &k) in &m.0 {
        for (i, x) in r.iter().enumerate() {
            v[i] += x * k as u32;
        }
    }
    v
}

/// The interval root `φ_{ij}` of a type A quiver on `n` vertices.
pub fn interval_root(n: usize, i: usize, j: usize) -> Root {
    (1..=n).map(|k| u32::from(i <= k && k <= j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        assert_eq!(Quiver::a_equioriented(3).positive_roots().len(), 6);
        let d4 = Quiver::new(4, vec![(1, 2), (3, 2), (4, 2)]).unwrap();
        assert_eq!(d4.dynkin_type(), DynkinType::D(4));
        assert_eq!(d4.positive_roots().len(), 12);
        let e8 = Quiver::new(8, vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (3, 8)]).unwrap();
        assert_eq!(e8.dynkin_type(), DynkinType::E(8));
        assert_eq!(e8.positive_roots().len(), 120);
    }

    #[test]
    fn rejects_non_dynkin() {
        assert!(Quiver::new(3, vec![(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(Quiver::new(2, vec![(1, 2), (2, 1)]).is_err());
        assert!(Quiver::new(5, vec![(1, 2), (3, 2), (4, 2), (5, 2)]).is_err());
        assert!(Quiver::new(2, vec![(1, 3)]).is_err());
        // affine D4 tilde shape with two branch points
        assert!(Quiver::new(6, vec![(1, 2), (3, 2), (2, 4), (4, 5), (4, 6)]).is_err());
    }

    #[test]
    fn euler_and_tails() {
        let q = Quiver::new(3, vec![(1, 2), (3, 2)]).unwrap();
        assert_eq!(q.tails_of(2), vec![1, 3]);
        assert_eq!(q.euler_form(&[0, 1, 0], &[1, 1, 1]), 1);
        assert_eq!(q.euler_form(&[1, 1, 1], &[0, 1, 0]), -1);
        assert_eq!(q.topological_order(&[1, 2, 3]), vec![1, 3, 2]);
        assert_eq!(q.depths(), vec![0, 0, 1, 0]);
        let m = OrbitVector::new([(interval_root(3, 1, 2), 1), (interval_root(3, 2, 2), 2)]);
        assert_eq!(dimension_vector(&q, &m), vec![1, 3, 0]);
        assert_eq!(OrbitVector::from_json(&m.to_json()).unwrap(), m);
    }
}
