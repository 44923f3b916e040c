//! Cross-verification suite: every closed form against its independent
//! route, at whatever sizes the oracles can afford.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::faces::oracle::{face_lattice_oracle_sharded, FaceLattice, VertexSet, ORACLE_MAX_N};
use crate::faces::{edge_count, enumerate_faces, f_vector, face_vertices};
use crate::lattice::{slice_count_bruteforce, sum_range, CountMethod, DragonTable};
use crate::numerics::format_rational;
use crate::polytope::{edge_graph, vertex_count};
use crate::scan::{count_box, ScanConfig};
use crate::volume::{egf_identity_check, volume, volume_oracle, VOLUME_ORACLE_MAX_N};

pub const EULER_MAX_N: usize = 12;
pub const GRAPH_MAX_N: usize = 7;
pub const LATTICE_MAX_N: usize = 5;
pub const EGF_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Closed forms checked against each other; no brute-force oracles.
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(Error::Domain(format!("unknown verification level {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed { counterexample: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Passed)
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Failed { .. })
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Passed => write!(f, "{}: pass", self.name),
            Status::Failed { counterexample } => write!(f, "{}: FAIL ({counterexample})", self.name),
            Status::Skipped { reason } => write!(f, "{}: skipped: {reason}", self.name),
        }
    }
}

/// `Ok(None)` is a pass, `Ok(Some(msg))` a mismatch.
type Probe = Result<Option<String>>;

fn mismatch(ok: bool, describe: impl FnOnce() -> String) -> Probe {
    Ok((!ok).then(describe))
}

fn run(name: &'static str, applicable: bool, skip_reason: &str, probe: impl FnOnce() -> Probe) -> Result<CheckOutcome> {
    let status = if !applicable {
        Status::Skipped {
            reason: skip_reason.to_string(),
        }
    } else {
        match probe() {
            Ok(None) => Status::Passed,
            Ok(Some(counterexample)) => Status::Failed { counterexample },
            Err(Error::ResourceBound { method, .. }) => Status::Skipped {
                reason: format!("resource bound ({method})"),
            },
            Err(e) => return Err(e),
        }
    };
    Ok(CheckOutcome { name, status })
}

/// Vertex sets of the ordered-partition faces, by dimension, in the oracle's
/// vertex indexing.
pub fn partition_faces_by_dimension(lattice: &FaceLattice) -> Result<Vec<BTreeSet<VertexSet>>> {
    let index: std::collections::HashMap<_, _> = lattice
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut out = Vec::with_capacity(lattice.n);
    for d in 0..lattice.n {
        let mut sets = BTreeSet::new();
        for fd in enumerate_faces(lattice.n, d)? {
            let mut set = VertexSet::empty(lattice.vertices.len());
            for v in face_vertices(&fd)? {
                set.insert(index[&v]);
            }
            if !sets.insert(set) {
                return Err(Error::Integrity(format!("descriptor {fd:?} repeats a face")));
            }
        }
        out.push(sets);
    }
    Ok(out)
}

pub fn verify(n: usize, level: Level, config: &ScanConfig) -> Result<Vec<CheckOutcome>> {
    if n < 2 {
        return Err(Error::Domain("verification needs n >= 2".into()));
    }
    let full = level == Level::Full;
    let level_skip = "level fast";
    let bound_skip = "resource bound";
    let mut out = Vec::new();

    let f = f_vector(n)?;
    out.push(run("f0 equals vertex count", true, "", || {
        mismatch(f[0] == vertex_count(n), || format!("f0 = {}, V = {}", f[0], vertex_count(n)))
    })?);
    out.push(run("f1 equals nV/2", true, "", || {
        let e = edge_count(n)?;
        mismatch(f[1] == e, || format!("f1 = {}, nV/2 = {e}", f[1]))
    })?);
    out.push(run("facet count 2^n - 1", n <= 127, bound_skip, || {
        let expected = (BigInt::from(1) << n) - 1;
        mismatch(f[n - 1] == expected, || format!("f_(n-1) = {}", f[n - 1]))
    })?);
    out.push(run("Euler relation", n <= EULER_MAX_N, bound_skip, || {
        let alt: BigInt = f.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).sum();
        let expected = BigInt::from(if n.is_multiple_of(2) { 0 } else { 2 });
        mismatch(alt == expected, || format!("alternating sum {alt}"))
    })?);
    out.push(run("EGF identity (order 10)", true, "", || {
        let check = egf_identity_check(EGF_ORDER)?;
        mismatch(check.holds(), || format!("residual {:?}", check.residual))
    })?);
    out.push(run("edge graph regular with nV/2 edges", n <= GRAPH_MAX_N, bound_skip, || {
        let g = edge_graph(n)?;
        if let Some(i) = (0..g.vertices().len()).find(|&i| g.degree(i) != n) {
            return Ok(Some(format!("vertex {:?} has degree {}", g.vertices()[i], g.degree(i))));
        }
        if let Some((i, j)) = g.edges().find(|&(i, j)| g.vertices()[i].layer().abs_diff(g.vertices()[j].layer()) > 1) {
            return Ok(Some(format!("edge {:?} -- {:?} skips a layer", g.vertices()[i], g.vertices()[j])));
        }
        let e = BigInt::from(g.edge_count());
        mismatch(e == edge_count(n)?, || format!("graph has {e} edges"))
    })?);

    let oracle_ok = n <= ORACLE_MAX_N;
    let (applicable, reason) = if !full { (false, level_skip) } else { (oracle_ok, bound_skip) };
    let lattice = if applicable { Some(face_lattice_oracle_sharded(n, config.shards)?) } else { None };
    out.push(run("f-vector equals incidence oracle", applicable, reason, || {
        let got = lattice.as_ref().unwrap().f_vector();
        let got: Vec<BigInt> = got.into_iter().map(BigInt::from).collect();
        mismatch(got == f, || format!("oracle {got:?} vs formula {f:?}"))
    })?);
    out.push(run("partition faces biject onto oracle faces", applicable, reason, || {
        let lat = lattice.as_ref().unwrap();
        let ours = partition_faces_by_dimension(lat)?;
        for (d, sets) in ours.iter().enumerate() {
            let theirs: BTreeSet<VertexSet> = lat.faces_of_dimension(d).cloned().collect();
            if sets != &theirs {
                let extra = sets.symmetric_difference(&theirs).next().unwrap();
                return Ok(Some(format!("dimension {d}: face {:?} differs", lat.vertex_list(extra))));
            }
        }
        Ok(None)
    })?);
    out.push(run("edge graph equals oracle edges", applicable, reason, || {
        let lat = lattice.as_ref().unwrap();
        let g = edge_graph(n)?;
        let ours: BTreeSet<VertexSet> = g
            .edges()
            .map(|(i, j)| {
                let mut s = VertexSet::empty(g.vertices().len());
                s.insert(i);
                s.insert(j);
                s
            })
            .collect();
        let theirs: BTreeSet<VertexSet> = lat.faces_of_dimension(1).cloned().collect();
        mismatch(ours == theirs, || {
            let diff = ours.symmetric_difference(&theirs).next().unwrap();
            format!("edge {:?} differs", lat.vertex_list(diff))
        })
    })?);

    let (applicable, reason) = if !full { (false, level_skip) } else { (n <= VOLUME_ORACLE_MAX_N, bound_skip) };
    out.push(run("volume equals Ehrhart leading coefficient", applicable, reason, || {
        let oracle = volume_oracle(n, config)?;
        let v = volume(n);
        mismatch(oracle == v, || format!("oracle {} vs recurrence {}", format_rational(&oracle), format_rational(&v)))
    })?);

    let (applicable, reason) = if !full { (false, level_skip) } else { (n <= LATTICE_MAX_N, bound_skip) };
    out.push(run("Postnikov slices equal brute-force slices", applicable, reason, || {
        let table = DragonTable::new(n, config)?;
        for s in sum_range(n) {
            let closed = table.slice_count(s)?.count;
            let brute = slice_count_bruteforce(n, s, config)?;
            if closed != brute {
                return Ok(Some(format!("S = {s}: closed {closed}, brute force {brute}")));
            }
        }
        Ok(None)
    })?);
    out.push(run("closed lattice count equals brute force", applicable, reason, || {
        let closed = crate::lattice::lattice_count(n, CountMethod::Closed, config)?;
        let brute = crate::lattice::lattice_count(n, CountMethod::BruteForce, config)?;
        mismatch(closed == brute, || format!("closed {closed}, brute force {brute}"))
    })?);
    out.push(run("parking functions lie in P_n; excess lattice points iff n >= 3", applicable, reason, || {
        if let Some(pf) = crate::polytope::enumerate_parking_functions(n).find(|p| {
            let x: Vec<i64> = p.entries().iter().map(|&e| i64::from(e)).collect();
            !crate::polytope::contains_point(&x, n, 1)
        }) {
            return Ok(Some(format!("parking function {:?} outside P_n", pf.entries())));
        }
        let extra = count_box(n, 1, n as i64, config, "verify", |x| {
            crate::polytope::contains_point(x, n, 1) && !crate::polytope::is_parking_function(x)
        })?;
        mismatch((extra > 0) == (n >= 3), || format!("{extra} lattice points are not parking functions"))
    })?);

    Ok(out)
}
