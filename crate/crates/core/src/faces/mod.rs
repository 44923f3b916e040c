//! Faces of `P_n`.
//!
//! A linear functional `c` picks out the face `F_c` of maximisers. Sorting
//! coordinates by the sign and rank of `c_i` gives an ordered partition
//! `(B_-1, B_0, B_1, ..., B_k)` that determines the face, and the face has
//! dimension `n - k - |B_-1|`. Counting these partitions yields the
//! f-vector in closed form; [`oracle`] recomputes the face lattice from
//! vertex-facet incidences as an independent check.

pub mod oracle;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, stirling2};
use crate::polytope::{vertex_count, Vertex};

pub use oracle::{face_lattice_oracle, FaceLattice, IncidenceMatrix, VertexSet};

/// `(B_-1, B_0, B_1, ..., B_k)` over 0-based coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    negative: Vec<usize>,
    zero: Vec<usize>,
    positive: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// Validates disjointness, coverage of `0..n`, nonempty positive blocks
    /// and the two redundant patterns that describe the same face as
    /// another partition.
    pub fn new(
        n: usize,
        negative: Vec<usize>,
        zero: Vec<usize>,
        positive: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut seen = vec![false; n];
        for &i in negative.iter().chain(&zero).chain(positive.iter().flatten()) {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain(format!("index {i} repeated or out of range")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Domain("blocks do not cover every coordinate".into()));
        }
        if positive.iter().any(Vec::is_empty) {
            return Err(Error::Domain("positive blocks must be nonempty".into()));
        }
        let mut p = Self {
            negative,
            zero,
            positive,
        };
        p.negative.sort_unstable();
        p.zero.sort_unstable();
        for b in &mut p.positive {
            b.sort_unstable();
        }
        if p.is_redundant() {
            return Err(Error::Domain(
                "partition duplicates a face with fewer positive blocks".into(),
            ));
        }
        Ok(p)
    }

    fn is_redundant(&self) -> bool {
        self.negative.is_empty()
            && (self.zero.len() == 1
                || (self.zero.is_empty() && self.positive.first().is_some_and(|b| b.len() == 1)))
    }

    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    pub fn zero(&self) -> &[usize] {
        &self.zero
    }

    pub fn positive(&self) -> &[Vec<usize>] {
        &self.positive
    }

    pub fn n(&self) -> usize {
        self.negative.len() + self.zero.len() + self.positive.iter().map(Vec::len).sum::<usize>()
    }

    /// `n - k - |B_-1|`
    pub fn dimension(&self) -> usize {
        self.n() - self.positive.len() - self.negative.len()
    }

    /// A functional whose maximisers are exactly this face.
    pub fn direction(&self) -> Vec<i64> {
        let mut c = vec![0; self.n()];
        for &i in &self.negative {
            c[i] = -1;
        }
        for (rank, block) in self.positive.iter().enumerate() {
            for &i in block {
                c[i] = rank as i64 + 1;
            }
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDescriptor {
    pub partition: OrderedPartition,
    pub dimension: usize,
}

impl From<OrderedPartition> for FaceDescriptor {
    fn from(partition: OrderedPartition) -> Self {
        let dimension = partition.dimension();
        Self {
            partition,
            dimension,
        }
    }
}

/// `f_{n-s} = sum_{m = 0, m != 1}^{s} C(n, m) (s - m)! S(n - m + 1, s - m + 1)`.
pub fn face_count(n: usize, s: usize) -> BigInt {
    (0..=s)
        .filter(|&m| m != 1)
        .map(|m| binomial(n, m as i64) * factorial(s - m) * stirling2(n - m + 1, s - m + 1))
        .sum()
}

/// `(f_0, ..., f_{n-1})`. The polytope itself (`s = 0`) is not included.
pub fn f_vector(n: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::Domain("f-vector is defined for n >= 1".into()));
    }
    Ok((0..n).map(|d| face_count(n, n - d)).collect())
}

/// `(n n! / 2)(1/1! + ... + 1/n!)`, i.e. `n V / 2`.
pub fn edge_count(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::DegenerateDimension(format!("P_{n} has no edges")));
    }
    let twice = BigInt::from(n) * vertex_count(n);
    if !(&twice % 2u32).is_zero() {
        return Err(Error::Integrity(format!("n V is odd for n = {n}")));
    }
    Ok(twice / 2u32)
}

fn combinations(items: &[usize], m: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < m - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, m, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, m, 0, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Every face descriptor of dimension `d`, each exactly once.
///
/// For each size `m` of `B_-1` and each choice of it, the remaining indices
/// are labelled `0` (for `B_0`) or `1..=k` with every positive label used,
/// where `k = n - d - m`.
pub fn enumerate_faces(n: usize, d: usize) -> Result<Vec<FaceDescriptor>> {
    if d > n {
        return Err(Error::Domain(format!("face dimension {d} exceeds n = {n}")));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for m in 0..=(n - d) {
        let k = n - d - m;
        for negative in combinations(&all, m) {
            let rest: Vec<usize> = all.iter().copied().filter(|i| !negative.contains(i)).collect();
            if rest.len() < k {
                continue;
            }
            let mut labels = vec![0usize; rest.len()];
            loop {
                let mut blocks = vec![Vec::new(); k + 1];
                for (&idx, &lab) in rest.iter().zip(&labels) {
                    blocks[lab].push(idx);
                }
                if blocks[1..].iter().all(|b| !b.is_empty()) {
                    let zero = blocks.remove(0);
                    let candidate = OrderedPartition {
                        negative: negative.clone(),
                        zero,
                        positive: blocks,
                    };
                    if !candidate.is_redundant() {
                        out.push(FaceDescriptor::from(candidate));
                    }
                }
                if !advance(&mut labels, |_| k + 1) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Mixed-radix increment, last digit fastest. Returns false after wrapping.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < radix(pos) {
            return true;
        }
        digits[pos] = 0;
    }
    false
}

fn distinct_permutations(pattern: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = pattern.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Vertices of the face: ones on `B_-1`; on `B_0` a rearrangement of
/// `(1, ..., 1, j+1, ..., l_-1 + l_0)` for some `j` in `[l_-1, l_-1 + l_0]`;
/// on each `B_i` a rearrangement of the next consecutive run of values.
pub fn face_vertices(fd: &FaceDescriptor) -> Result<BTreeSet<Vertex>> {
    let p = &fd.partition;
    let n = p.n();
    let neg = p.negative.len();
    let low = neg + p.zero.len();

    let mut runs: Vec<(&[usize], Vec<Vec<u32>>)> = Vec::new();
    let mut start = low as u32;
    for block in &p.positive {
        let run: Vec<u32> = (start + 1..=start + block.len() as u32).collect();
        start += block.len() as u32;
        runs.push((block, distinct_permutations(&run)));
    }

    let mut out = BTreeSet::new();
    for j in neg..=low {
        let zero_pattern: Vec<u32> = std::iter::repeat_n(1, j - neg)
            .chain((j as u32 + 1)..=(low as u32))
            .collect();
        let mut choices: Vec<(&[usize], Vec<Vec<u32>>)> =
            vec![(p.zero.as_slice(), distinct_permutations(&zero_pattern))];
        choices.extend(runs.iter().map(|(b, perms)| (*b, perms.clone())));

        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut coords = vec![1u32; n];
            for ((positions, perms), &which) in choices.iter().zip(&idx) {
                for (&pos, &val) in positions.iter().zip(&perms[which]) {
                    coords[pos] = val;
                }
            }
            out.insert(Vertex::new(coords)?);
            if !advance(&mut idx, |c| choices[c].1.len()) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn verts(list: &[&[u32]]) -> BTreeSet<Vertex> {
        list.iter().map(|c| Vertex::new(c.to_vec()).unwrap()).collect()
    }

    #[test]
    fn f_vector_small() {
        assert_eq!(f_vector(1).unwrap(), ints(&[1]));
        assert_eq!(f_vector(2).unwrap(), ints(&[3, 3]));
        assert_eq!(f_vector(3).unwrap(), ints(&[10, 15, 7]));
        assert_eq!(f_vector(4).unwrap(), ints(&[41, 82, 56, 15]));
        assert!(f_vector(0).is_err());
    }

    #[test]
    fn f_vector_reverse_summation_agrees() {
        for n in 1..=12usize {
            let f = f_vector(n).unwrap();
            for s in 1..=n {
                let reversed: BigInt = (0..=s)
                    .rev()
                    .filter(|&m| m != 1)
                    .map(|m| {
                        binomial(n, m as i64) * factorial(s - m) * stirling2(n - m + 1, s - m + 1)
                    })
                    .fold(BigInt::zero(), |a, b| a + b);
                assert_eq!(f[n - s], reversed);
            }
        }
    }

    #[test]
    fn closed_forms_agree() {
        for n in 2..=12usize {
            let f = f_vector(n).unwrap();
            assert_eq!(f[0], vertex_count(n), "f0 n={n}");
            assert_eq!(f[1], edge_count(n).unwrap(), "f1 n={n}");
            assert_eq!(f[n - 1], BigInt::from((1u64 << n) - 1), "facets n={n}");
            let euler: BigInt = f
                .iter()
                .enumerate()
                .map(|(i, fi)| if i % 2 == 0 { fi.clone() } else { -fi })
                .sum();
            let expected = if n % 2 == 0 { 0 } else { 2 };
            assert_eq!(euler, BigInt::from(expected), "Euler n={n}");
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(edge_count(3).unwrap(), BigInt::from(15));
        assert_eq!(edge_count(2).unwrap(), BigInt::from(3));
        assert_eq!(edge_count(5).unwrap(), BigInt::from(515));
    }

    #[test]
    fn enumeration_counts_match_formula() {
        assert_eq!(enumerate_faces(3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_faces(3, 0).unwrap().len(), 10);
        for n in 2..=6usize {
            let f = f_vector(n).unwrap();
            for d in 0..n {
                assert_eq!(BigInt::from(enumerate_faces(n, d).unwrap().len()), f[d], "n={n} d={d}");
            }
            let top = enumerate_faces(n, n).unwrap();
            assert_eq!(top.len(), 1);
            assert_eq!(top[0].partition.zero().len(), n);
        }
    }

    #[test]
    fn face_vertex_examples() {
        let bottom = FaceDescriptor::from(OrderedPartition::new(3, vec![0, 1, 2], vec![], vec![]).unwrap());
        assert_eq!(bottom.dimension, 0);
        assert_eq!(face_vertices(&bottom).unwrap(), verts(&[&[1, 1, 1]]));

        let whole = FaceDescriptor::from(OrderedPartition::new(3, vec![], vec![0, 1, 2], vec![]).unwrap());
        assert_eq!(face_vertices(&whole).unwrap().len(), 10);

        let edge = FaceDescriptor::from(OrderedPartition::new(3, vec![0], vec![], vec![vec![1, 2]]).unwrap());
        assert_eq!(edge.dimension, 1);
        assert_eq!(face_vertices(&edge).unwrap(), verts(&[&[1, 2, 3], &[1, 3, 2]]));
    }

    #[test]
    fn redundant_partitions_are_rejected() {
        assert!(OrderedPartition::new(3, vec![], vec![0], vec![vec![1, 2]]).is_err());
        assert!(OrderedPartition::new(3, vec![], vec![], vec![vec![0], vec![1, 2]]).is_err());
        assert!(OrderedPartition::new(3, vec![0], vec![0], vec![vec![1, 2]]).is_err());
        assert!(OrderedPartition::new(3, vec![0], vec![], vec![vec![1]]).is_err());
    }

    #[test]
    fn face_vertices_maximise_direction() {
        let all: Vec<Vertex> = crate::polytope::vertices(4).collect();
        for d in 0..4 {
            for fd in enumerate_faces(4, d).unwrap() {
                let c = fd.partition.direction();
                let score = |v: &Vertex| v.coords().iter().zip(&c).map(|(&x, &w)| x as i64 * w).sum::<i64>();
                let best = all.iter().map(score).max().unwrap();
                let maximisers: BTreeSet<Vertex> = all.iter().filter(|v| score(v) == best).cloned().collect();
                assert_eq!(face_vertices(&fd).unwrap(), maximisers, "{fd:?}");
            }
        }
    }
}
