//! Face lattice of `P_n` recomputed from scratch: record which vertices
//! are tight on which facets, then close the facet vertex-sets under
//! intersection. Dimensions come from exact affine rank. Nothing here
//! relies on the ordered-partition description of faces.

use std::collections::{BTreeMap, BTreeSet};
use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polytope::{facet_system, vertices, Facet, Vertex};

/// Largest `n` the oracle accepts.
pub const ORACLE_MAX_N: usize = 5;

/// Set of vertex indices as a fixed-width bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u64>);

impl VertexSet {
    pub fn empty(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Rows are facets, columns vertices; a bit is set when the vertex lies on
/// the facet's hyperplane.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    facets: Vec<Facet>,
    vertices: Vec<Vertex>,
    rows: Vec<VertexSet>,
}

impl IncidenceMatrix {
    pub fn new(n: usize) -> Result<Self> {
        let facets = facet_system(n)?.facets().to_vec();
        let vertices: Vec<Vertex> = vertices(n).collect();
        let points: Vec<Vec<i64>> = vertices.iter().map(Vertex::to_i64).collect();
        let rows = facets
            .iter()
            .map(|f| {
                let mut row = VertexSet::empty(vertices.len());
                for (j, p) in points.iter().enumerate() {
                    if f.is_tight(p) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(Self {
            facets,
            vertices,
            rows,
        })
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    /// Number of facets the `j`-th vertex lies on.
    pub fn facet_degree(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(j)).count()
    }
}

/// Exact affine dimension of a point set (`-1` for the empty set is
/// reported as `None`).
pub fn affine_dimension(points: &[Vec<i64>]) -> Option<usize> {
    let (base, rest) = points.split_first()?;
    let mut rows: Vec<Vec<BigRational>> = rest
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(a, b)| BigRational::from_integer(BigInt::from(a - b)))
                .collect()
        })
        .collect();
    let cols = base.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &head[col];
            for c in col..cols {
                let delta = &factor * &head[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Proper nonempty faces grouped by dimension. The polytope itself is kept
/// apart in `whole`.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub faces: BTreeMap<usize, BTreeSet<VertexSet>>,
    pub whole: VertexSet,
}

impl FaceLattice {
    /// Face counts `(f_0, ..., f_{n-1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.n)
            .map(|d| self.faces.get(&d).map_or(0, BTreeSet::len))
            .collect()
    }

    pub fn faces_of_dimension(&self, d: usize) -> impl Iterator<Item = &VertexSet> {
        self.faces.get(&d).into_iter().flatten()
    }

    pub fn vertex_list(&self, set: &VertexSet) -> Vec<Vertex> {
        set.iter().map(|i| self.vertices[i].clone()).collect()
    }
}

pub fn face_lattice_oracle(n: usize) -> Result<FaceLattice> {
    face_lattice_oracle_sharded(n, 1)
}

/// Closure search: start from the facet vertex-sets and intersect every
/// newly found set with every facet until nothing new appears. With
/// `shards > 1` each frontier is split across threads; the merged result
/// is a set union, so it does not depend on the split.
pub fn face_lattice_oracle_sharded(n: usize, shards: usize) -> Result<FaceLattice> {
    if n < 2 {
        return Err(Error::DegenerateDimension(format!(
            "face lattice oracle needs n >= 2, got {n}"
        )));
    }
    if n > ORACLE_MAX_N {
        return Err(Error::ResourceBound {
            method: "face_lattice_oracle",
            required: n as u128,
            budget: ORACLE_MAX_N as u128,
        });
    }
    let inc = IncidenceMatrix::new(n)?;
    let rows = inc.rows();

    let mut found: BTreeSet<VertexSet> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut frontier: Vec<VertexSet> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let expand = |chunk: &[VertexSet]| -> BTreeSet<VertexSet> {
            chunk
                .iter()
                .flat_map(|f| rows.iter().map(move |r| f.intersect(r)))
                .filter(|s| !s.is_empty())
                .collect()
        };
        let produced: BTreeSet<VertexSet> = if shards <= 1 || frontier.len() < 2 {
            expand(&frontier)
        } else {
            let size = frontier.len().div_ceil(shards);
            thread::scope(|scope| {
                let handles: Vec<_> = frontier
                    .chunks(size)
                    .map(|chunk| scope.spawn(move || expand(chunk)))
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("oracle shard panicked"))
                    .collect()
            })
        };
        frontier = produced
            .into_iter()
            .filter(|s| found.insert(s.clone()))
            .collect();
    }

    let points: Vec<Vec<i64>> = inc.vertices().iter().map(Vertex::to_i64).collect();
    let mut faces: BTreeMap<usize, BTreeSet<VertexSet>> = BTreeMap::new();
    for set in found {
        let pts: Vec<Vec<i64>> = set.iter().map(|i| points[i].clone()).collect();
        let d = affine_dimension(&pts).expect("nonempty face");
        if d >= n {
            return Err(Error::Integrity("a facet intersection is full-dimensional".into()));
        }
        faces.entry(d).or_default().insert(set);
    }
    Ok(FaceLattice {
        n,
        whole: VertexSet::full(inc.vertices().len()),
        vertices: inc.vertices().to_vec(),
        faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_p3() {
        assert_eq!(face_lattice_oracle(2).unwrap().f_vector(), vec![3, 3]);
        assert_eq!(face_lattice_oracle(3).unwrap().f_vector(), vec![10, 15, 7]);
    }

    #[test]
    fn p4_counts() {
        assert_eq!(face_lattice_oracle(4).unwrap().f_vector(), vec![41, 82, 56, 15]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(face_lattice_oracle(6), Err(Error::ResourceBound { .. })));
        assert!(face_lattice_oracle(1).is_err());
    }

    #[test]
    fn sharding_is_deterministic() {
        let a = face_lattice_oracle(4).unwrap();
        let b = face_lattice_oracle_sharded(4, 3).unwrap();
        assert_eq!(a.faces, b.faces);
    }

    #[test]
    fn simple_polytope_incidence() {
        for n in 2..=4 {
            let inc = IncidenceMatrix::new(n).unwrap();
            for j in 0..inc.vertices().len() {
                assert_eq!(inc.facet_degree(j), n, "{:?}", inc.vertices()[j]);
            }
        }
    }

    #[test]
    fn affine_dimension_basics() {
        assert_eq!(affine_dimension(&[]), None);
        assert_eq!(affine_dimension(&[vec![1, 2]]), Some(0));
        assert_eq!(affine_dimension(&[vec![0, 0], vec![1, 1], vec![2, 2]]), Some(1));
        assert_eq!(
            affine_dimension(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]),
            Some(2)
        );
    }
}
