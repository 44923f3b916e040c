//! The parking-function polytope `P_n`: its defining inequalities, its
//! lattice of parking functions, its vertices and its edge graph.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::factorial;

/// A sequence in `[1, n]^n` whose increasing rearrangement `b` has
/// `b_i <= i` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction(Vec<u32>);

impl ParkingFunction {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let as_i64: Vec<i64> = entries.iter().map(|&e| i64::from(e)).collect();
        if is_parking_function(&as_i64) {
            Ok(Self(entries))
        } else {
            Err(Error::Domain(format!("{entries:?} is not a parking function")))
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn is_parking_function(a: &[i64]) -> bool {
    let n = a.len() as i64;
    if a.iter().any(|&v| v < 1 || v > n) {
        return false;
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.iter().zip(1..).all(|(&b, i)| b <= i)
}

/// Parking functions of length `n` in lexicographic order.
pub fn enumerate_parking_functions(n: usize) -> ParkingFunctions {
    ParkingFunctions {
        n,
        current: None,
        done: n == 0,
    }
}

pub struct ParkingFunctions {
    n: usize,
    current: Option<Vec<i64>>,
    done: bool,
}

impl Iterator for ParkingFunctions {
    type Item = ParkingFunction;

    fn next(&mut self) -> Option<ParkingFunction> {
        if self.done {
            return None;
        }
        let n = self.n;
        let next = match self.current.take() {
            None => Some(vec![1; n]),
            Some(mut cur) => {
                // A prefix extends to a parking function iff its completion
                // by ones does, and raising an entry only hurts, so only the
                // immediate successor value needs trying at each position.
                let mut found = false;
                for p in (0..n).rev() {
                    if cur[p] as usize >= n {
                        continue;
                    }
                    cur[p] += 1;
                    cur[p + 1..].fill(1);
                    if is_parking_function(&cur) {
                        found = true;
                        break;
                    }
                }
                found.then_some(cur)
            }
        };
        match next {
            Some(v) => {
                let pf = ParkingFunction(v.iter().map(|&e| e as u32).collect());
                self.current = Some(v);
                Some(pf)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// Right-hand side of the top-`k` sum inequality:
/// `(n-k+1) + ... + n = k n - k (k - 1) / 2`.
pub fn top_sum_bound(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    k * n - k * (k - 1) / 2
}

/// Subset sizes that carry an upper-bound facet: `1..=n-2` and `n`.
pub fn facet_sizes(n: usize) -> impl Iterator<Item = usize> {
    (1..=n.saturating_sub(2)).chain(std::iter::once(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Facet {
    /// `x_i >= 1`
    Lower(usize),
    /// `sum_{i in members} x_i <= bound`
    Upper { members: Vec<usize>, bound: i64 },
}

impl Facet {
    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        match self {
            Facet::Lower(i) => x[*i] >= 1,
            Facet::Upper { members, bound } => members.iter().map(|&i| x[i]).sum::<i64>() <= *bound,
        }
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        match self {
            Facet::Lower(i) => x[*i] == 1,
            Facet::Upper { members, bound } => members.iter().map(|&i| x[i]).sum::<i64>() == *bound,
        }
    }
}

/// The irredundant inequality description of `P_n`.
#[derive(Debug, Clone)]
pub struct FacetSystem {
    n: usize,
    facets: Vec<Facet>,
}

impl FacetSystem {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.n && self.facets.iter().all(|f| f.is_satisfied(x))
    }
}

/// Lower bounds `x_i >= 1`, then for each size `k` in `1..=n-2` and `k = n`
/// every `k`-subset bounded by [`top_sum_bound`]. Subsets of size `n - 1`
/// are implied and left out.
pub fn facet_system(n: usize) -> Result<FacetSystem> {
    if n < 2 {
        return Err(Error::DegenerateDimension(format!(
            "P_{n} is a point and has no facets"
        )));
    }
    if n > 24 {
        return Err(Error::Domain(format!(
            "facet system for n = {n} would hold 2^{n} - 1 inequalities"
        )));
    }
    let mut facets: Vec<Facet> = (0..n).map(Facet::Lower).collect();
    for k in facet_sizes(n) {
        let bound = top_sum_bound(n, k);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                let members = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                facets.push(Facet::Upper { members, bound });
            }
        }
    }
    Ok(FacetSystem { n, facets })
}

/// Integer membership in the dilation `m P_n`, via sorted prefix sums:
/// the top-`k` sum bound for `k` in `1..=n-2` and `k = n` is equivalent to
/// all subset bounds of that size.
pub fn contains_point(x: &[i64], n: usize, m: i64) -> bool {
    if x.len() != n || x.iter().any(|&v| v < m) {
        return false;
    }
    let mut sorted = x.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0i64;
    for (k, v) in sorted.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        prefix += v;
        if (k + 2 <= n || k == n) && prefix > m * top_sum_bound(n, k) {
            return false;
        }
    }
    true
}

/// Membership of a rational point in `m P_n`.
pub fn membership(x: &[BigRational], n: usize, m: u64) -> bool {
    if x.len() != n {
        return false;
    }
    let m = BigRational::from_integer(BigInt::from(m));
    if x.iter().any(|v| v < &m) {
        return false;
    }
    let mut sorted = x.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = BigRational::zero();
    for (k, v) in sorted.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        prefix += v;
        if k + 2 <= n || k == n {
            let bound = &m * BigRational::from_integer(BigInt::from(top_sum_bound(n, k)));
            if prefix > bound {
                return false;
            }
        }
    }
    true
}

/// A vertex of `P_n`: a rearrangement of `(1, ..., 1, k+1, ..., n)` with
/// `k` ones, sitting on layer `n - k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    layer: usize,
    coords: Vec<u32>,
}

impl Vertex {
    /// Validates `coords` and computes the layer.
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        let n = coords.len();
        let ones = coords.iter().filter(|&&c| c == 1).count();
        let mut sorted = coords.clone();
        sorted.sort_unstable();
        let ok = ones >= 1 && sorted.iter().zip(1u32..).all(|(&c, i)| if (i as usize) <= ones { c == 1 } else { c == i });
        if !ok {
            return Err(Error::Domain(format!("{coords:?} is not a vertex of P_{n}")));
        }
        Ok(Self {
            layer: n - ones,
            coords,
        })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Number of ones, i.e. the `k` in `(1, ..., 1, k+1, ..., n)`.
    pub fn ones(&self) -> usize {
        self.coords.len() - self.layer
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|&c| i64::from(c)).collect()
    }

    fn position_of(&self, value: u32) -> usize {
        self.coords
            .iter()
            .position(|&c| c == value)
            .expect("value present in vertex")
    }

    /// The `n` neighbours in the edge graph: same-layer swaps of adjacent
    /// values, the `k` ways to raise a one to `k`, and the single way to
    /// drop `k + 1` to one.
    pub fn neighbors(&self) -> Vec<Vertex> {
        let n = self.coords.len() as u32;
        let k = self.ones() as u32;
        let mut out = Vec::with_capacity(n as usize);
        if k < n {
            let first = if k == 1 { 1 } else { k + 1 };
            for j in first..n {
                let mut c = self.coords.clone();
                let (a, b) = (self.position_of(j), self.position_of(j + 1));
                c.swap(a, b);
                out.push(Vertex { layer: self.layer, coords: c });
            }
        }
        if k >= 2 {
            for (p, _) in self.coords.iter().enumerate().filter(|(_, &c)| c == 1) {
                let mut c = self.coords.clone();
                c[p] = k;
                out.push(Vertex { layer: self.layer + 1, coords: c });
            }
        }
        if k < n {
            let mut c = self.coords.clone();
            c[self.position_of(k + 1)] = 1;
            out.push(Vertex { layer: self.layer - 1, coords: c });
        }
        out
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.coords, self.layer)
    }
}

/// Rearranges `v` into the lexicographically next permutation; false when
/// `v` is already the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Sorted representative of layer `layer`: `n - layer` ones followed by
/// `n - layer + 1, ..., n`.
pub fn layer_pattern(n: usize, layer: usize) -> Vec<u32> {
    let k = n - layer;
    (1..=n as u32).map(|i| if (i as usize) <= k { 1 } else { i }).collect()
}

/// All vertices of `P_n`, ordered by layer and then lexicographically.
pub fn vertices(n: usize) -> impl Iterator<Item = Vertex> {
    (0..n).flat_map(move |layer| {
        let mut current = Some(layer_pattern(n, layer));
        std::iter::from_fn(move || {
            let out = current.take()?;
            let mut next = out.clone();
            if next_permutation(&mut next) {
                current = Some(next);
            }
            Some(Vertex { layer, coords: out })
        })
    })
}

/// `n! (1/1! + ... + 1/n!)`.
pub fn vertex_count(n: usize) -> BigInt {
    let nf = factorial(n);
    (1..=n).map(|k| &nf / factorial(k)).sum()
}

#[derive(Debug, Clone)]
pub struct EdgeGraph {
    vertices: Vec<Vertex>,
    adjacency: Vec<Vec<usize>>,
}

impl EdgeGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }
}

pub fn edge_graph(n: usize) -> Result<EdgeGraph> {
    if n < 2 {
        return Err(Error::DegenerateDimension(format!(
            "P_{n} is a point and has no edges"
        )));
    }
    let verts: Vec<Vertex> = vertices(n).collect();
    let index: HashMap<&[u32], usize> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (v.coords(), i))
        .collect();
    let mut adjacency = Vec::with_capacity(verts.len());
    for v in &verts {
        let mut adj: Vec<usize> = v
            .neighbors()
            .iter()
            .map(|u| {
                index.get(u.coords()).copied().ok_or_else(|| {
                    Error::Integrity(format!("neighbour {u:?} of {v:?} is not a vertex"))
                })
            })
            .collect::<Result<_>>()?;
        adj.sort_unstable();
        adj.dedup();
        adjacency.push(adj);
    }
    for (i, adj) in adjacency.iter().enumerate() {
        if adj.iter().any(|&j| !adjacency[j].contains(&i)) {
            return Err(Error::Integrity(format!(
                "adjacency of {:?} is not symmetric",
                verts[i]
            )));
        }
    }
    Ok(EdgeGraph {
        vertices: verts,
        adjacency,
    })
}
