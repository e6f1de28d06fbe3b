//! Directed partitions of a root support and the resolution pairs they
//! induce.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{dimension_vector, OrbitVector, Quiver, Root};

/// Ordered parts of a set of roots.
pub type DirectedPartition = Vec<Vec<Root>>;

/// Vertex sequence `i` and rank sequence `r` of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionPair {
    pub i: Vec<usize>,
    pub r: Vec<u32>,
}

impl ResolutionPair {
    pub fn new(i: Vec<usize>, r: Vec<u32>) -> Result<Self> {
        if i.len() != r.len() {
            return Err(Error::LengthMismatch(format!(
                "i has {} entries, r has {}",
                i.len(),
                r.len()
            )));
        }
        Ok(ResolutionPair { i, r })
    }

    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty()
    }

    /// Checks vertex range, positivity and `Σ_{i_k = i} r_k ≤ v_i`.
    pub fn validate(&self, q: &Quiver, v: &[u32]) -> Result<()> {
        if self.i.len() != self.r.len() {
            return Err(Error::LengthMismatch("i and r".into()));
        }
        let mut used = vec![0u32; q.vertices()];
        for (&i, &r) in self.i.iter().zip(&self.r) {
            if i == 0 || i > q.vertices() {
                return Err(Error::VertexOutOfRange(i));
            }
            if r == 0 {
                return Err(Error::InvalidInput("zero rank in resolution pair".into()));
            }
            used[i - 1] += r;
        }
        for (k, (&u, &cap)) in used.iter().zip(v).enumerate() {
            if u > cap {
                return Err(Error::InvalidInput(format!("ranks at vertex {} exceed {cap}", k + 1)));
            }
        }
        Ok(())
    }
}

/// Finds the first pair of roots breaking the directedness conditions.
pub fn check_directed_partition(q: &Quiver, parts: &[Vec<Root>]) -> std::result::Result<(), String> {
    for (a, pa) in parts.iter().enumerate() {
        for (x, y) in pa.iter().tuple_combinations() {
            if q.euler_form(x, y) < 0 || q.euler_form(y, x) < 0 {
                return Err(format!("{x:?} and {y:?} share part {} but pair negatively", a + 1));
            }
        }
        for pb in &parts[a + 1..] {
            for x in pa {
                for y in pb {
                    if q.euler_form(x, y) < 0 || q.euler_form(y, x) > 0 {
                        return Err(format!("{x:?} may not precede {y:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn compatible(q: &Quiver, x: &Root, y: &Root) -> bool {
    q.euler_form(x, y) >= 0 && q.euler_form(y, x) >= 0
}

/// Computes a directed partition of `support`.
///
/// Roots pairing positively both ways are merged, the remaining classes are
/// sorted along the order forced by the Euler form, and consecutive classes
/// are merged greedily starting from the last one. An exhaustive search is used if that fails.
pub fn directed_partition(q: &Quiver, support: &[Root]) -> Result<DirectedPartition> {
    let roots: Vec<Root> = support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = roots.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for (a, b) in (0..n).tuple_combinations() {
        if q.euler_form(&roots[a], &roots[b]) > 0 && q.euler_form(&roots[b], &roots[a]) > 0 {
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            class[ra.max(rb)] = ra.min(rb);
        }
    }
    let reps: Vec<usize> = (0..n).map(|x| find(&mut class, x)).collect();
    let ids: Vec<usize> = reps.iter().copied().unique().collect();
    let mut edges = BTreeSet::new();
    for (a, b) in (0..n).tuple_combinations() {
        for (x, y) in [(a, b), (b, a)] {
            let (xy, yx) = (q.euler_form(&roots[x], &roots[y]), q.euler_form(&roots[y], &roots[x]));
            // x must come no later than y
            if (yx < 0 || (xy > 0 && yx == 0)) && reps[x] != reps[y] {
                edges.insert((reps[x], reps[y]));
            }
        }
    }
    let mut order = Vec::new();
    let mut left: BTreeSet<usize> = ids.iter().copied().collect();
    while let Some(&next) = left
        .iter()
        .find(|&&c| !edges.iter().any(|&(s, t)| t == c && left.contains(&s)))
    {
        left.remove(&next);
        order.push(next);
    }
    if left.is_empty() {
        let mut parts: DirectedPartition = Vec::new();
        for c in order.into_iter().rev() {
            let members: Vec<Root> = (0..n).filter(|&x| reps[x] == c).map(|x| roots[x].clone()).collect();
            let merge = parts
                .last()
                .is_some_and(|next| next.iter().all(|x| members.iter().all(|y| compatible(q, x, y))));
            if merge {
                let next = parts.last_mut().unwrap();
                let mut joined = members;
                joined.append(next);
                *next = joined;
            } else {
                parts.push(members);
            }
        }
        parts.reverse();
        if check_directed_partition(q, &parts).is_ok() {
            return Ok(parts);
        }
    }
    exhaustive(q, &roots)
}

fn exhaustive(q: &Quiver, roots: &[Root]) -> Result<DirectedPartition> {
    let n = roots.len();
    if n > 9 {
        return Err(Error::NoDirectedPartition);
    }
    for perm in (0..n).permutations(n) {
        for cuts in 0..(1u32 << (n - 1)) {
            let mut parts: DirectedPartition = vec![vec![roots[perm[0]].clone()]];
            for k in 1..n {
                if cuts & (1 << (k - 1)) != 0 {
                    parts.push(Vec::new());
                }
                parts.last_mut().unwrap().push(roots[perm[k]].clone());
            }
            if check_directed_partition(q, &parts).is_ok() {
                return Ok(parts);
            }
        }
    }
    Err(Error::NoDirectedPartition)
}

/// Every directed partition of `support`, up to reordering inside parts.
/// Exhaustive, so only for supports of at most seven roots.
pub fn all_directed_partitions(q: &Quiver, support: &[Root]) -> Result<Vec<DirectedPartition>> {
    let n = support.len();
    if n == 0 || n > 7 {
        return Err(Error::InvalidInput(format!("cannot enumerate partitions of {n} roots")));
    }
    let mut seen: BTreeSet<DirectedPartition> = BTreeSet::new();
    for perm in (0..n).permutations(n) {
        for cuts in 0..(1u32 << (n - 1)) {
            let mut parts: DirectedPartition = vec![vec![support[perm[0]].clone()]];
            for k in 1..n {
                if cuts & (1 << (k - 1)) != 0 {
                    parts.push(Vec::new());
                }
                parts.last_mut().unwrap().push(support[perm[k]].clone());
            }
            if parts.iter().any(|p| !p.is_sorted()) {
                continue;
            }
            if check_directed_partition(q, &parts).is_ok() {
                seen.insert(parts);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The resolution pair of a directed partition: each part contributes its
/// support vertices in topological order with the ranks of `Σ m_φ φ`.
pub fn resolution_pair(q: &Quiver, m: &OrbitVector, parts: &[Vec<Root>]) -> Result<ResolutionPair> {
    m.validate(q)?;
    let covered: BTreeSet<&Root> = parts.iter().flatten().collect();
    let support: BTreeSet<&Root> = m.0.keys().collect();
    if covered != support || parts.iter().map(Vec::len).sum::<usize>() != support.len() {
        return Err(Error::InvalidInput("partition does not match the support of m".into()));
    }
    check_directed_partition(q, parts).map_err(Error::InvalidInput)?;
    let (mut i, mut r) = (Vec::new(), Vec::new());
    for part in parts {
        let mut p = vec![0u32; q.vertices()];
        for root in part {
            for (k, x) in root.iter().enumerate() {
                p[k] += x * m.0[root] as u32;
            }
        }
        let verts: Vec<usize> = (1..=q.vertices()).filter(|&k| p[k - 1] > 0).collect();
        for k in q.topological_order(&verts) {
            i.push(k);
            r.push(p[k - 1]);
        }
    }
    let rp = ResolutionPair { i, r };
    rp.validate(q, &dimension_vector(q, m))?;
    Ok(rp)
}

/// Drops trailing steps whose Grassmannian is a point and whose map has a
/// zero source: each such step is an isomorphism, so the push-forward is
/// unchanged.
pub fn trim_trivial_steps(q: &Quiver, v: &[u32], rp: &ResolutionPair) -> ResolutionPair {
    let mut k = rp.len();
    loop {
        if k == 0 {
            break;
        }
        let mut cur: Vec<u32> = v.to_vec();
        for l in 0..k - 1 {
            cur[rp.i[l] - 1] -= rp.r[l];
        }
        let i = rp.i[k - 1];
        let full = rp.r[k - 1] == cur[i - 1];
        let no_source = q.tails_of(i).iter().all(|&t| cur[t - 1] == 0);
        if full && no_source {
            k -= 1;
        } else {
            break;
        }
    }
    ResolutionPair {
        i: rp.i[..k].to_vec(),
        r: rp.r[..k].to_vec(),
    }
}

/// Partition and resolution pair chosen automatically.
pub fn default_resolution(q: &Quiver, m: &OrbitVector) -> Result<(DirectedPartition, ResolutionPair)> {
    m.validate(q)?;
    let parts = directed_partition(q, &m.support())?;
    let rp = resolution_pair(q, m, &parts)?;
    Ok((parts, rp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::interval_root as phi;

    #[test]
    fn inbound_a3_pair() {
        let q = Quiver::new(3, vec![(1, 2), (3, 2)]).unwrap();
        let m = OrbitVector::new([
            (phi(3, 1, 2), 1),
            (phi(3, 1, 3), 1),
            (phi(3, 2, 2), 1),
            (phi(3, 3, 3), 1),
        ]);
        let parts = vec![vec![phi(3, 2, 2)], vec![phi(3, 1, 2), phi(3, 1, 3)], vec![phi(3, 3, 3)]];
        let rp = resolution_pair(&q, &m, &parts).unwrap();
        assert_eq!(rp.i, vec![2, 1, 3, 2, 3]);
        assert_eq!(rp.r, vec![1, 2, 1, 2, 1]);
        let auto = directed_partition(&q, &m.support()).unwrap();
        assert!(check_directed_partition(&q, &auto).is_ok());
        let (_, rp) = default_resolution(&q, &m).unwrap();
        let short = trim_trivial_steps(&q, &[2, 3, 2], &rp);
        let all = all_directed_partitions(&q, &m.support()).unwrap();
        assert!(all.len() > 1);
        assert!(all
            .iter()
            .any(|p| p.iter().map(Vec::len).collect::<Vec<_>>() == vec![1, 2, 1]));
        assert_eq!((short.i, short.r), (vec![1, 2], vec![1, 2]));
    }

    #[test]
    fn a2_pair_and_violation() {
        let q = Quiver::a_equioriented(2);
        let m = OrbitVector::new([(phi(2, 1, 1), 1), (phi(2, 1, 2), 1), (phi(2, 2, 2), 1)]);
        let parts = vec![vec![phi(2, 2, 2)], vec![phi(2, 1, 2), phi(2, 1, 1)]];
        let rp = resolution_pair(&q, &m, &parts).unwrap();
        assert_eq!((rp.i.clone(), rp.r.clone()), (vec![2, 1, 2], vec![1, 2, 1]));
        assert_eq!(directed_partition(&q, &m.support()).unwrap(), parts);
        assert_eq!(
            trim_trivial_steps(&q, &[2, 2], &rp),
            ResolutionPair::new(vec![2], vec![1]).unwrap()
        );
        let bad = vec![vec![phi(2, 1, 1)], vec![phi(2, 2, 2)]];
        assert!(check_directed_partition(&q, &bad).is_err());
    }

    #[test]
    fn every_support_of_small_quivers_has_a_partition() {
        for q in [
            Quiver::a_equioriented(3),
            Quiver::new(3, vec![(1, 2), (3, 2)]).unwrap(),
            Quiver::new(4, vec![(1, 2), (3, 2), (4, 2)]).unwrap(),
        ] {
            let roots = q.positive_roots();
            let parts = directed_partition(&q, &roots).unwrap();
            assert!(check_directed_partition(&q, &parts).is_ok());
            assert_eq!(parts.iter().map(Vec::len).sum::<usize>(), roots.len());
        }
    }
}
