//! Lattice points of `P_n`.
//!
//! Cutting `P_n` by the hyperplanes `x_1 + ... + x_n = S` gives slices that
//! are ordinary permutohedra: the slice at `S = n` is the single point
//! `(1, ..., 1)`, and every other slice is the convex hull of the
//! rearrangements of `(1, ..., 1, r, k+2, ..., n)` for a unique pair
//! `2 <= r <= k + 1`. Each slice is counted with Postnikov's formula
//! ([`postnikov`]) or by direct scan, and the slices are summed over
//! `S = n ..= n(n+1)/2`.

pub mod dragon;
pub mod postnikov;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::binomial;
use crate::polytope::contains_point;
use crate::scan::{count_box, count_box_level, ScanConfig};

pub use dragon::{dragon_condition, SubsetCollection};
pub use postnikov::{postnikov_slice_count, DragonTable, SliceEvaluation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    /// `S = n`: only the all-ones point.
    AllOnes,
    /// Rearrangements of `k` ones, then `r`, then `k+2, ..., n`.
    Pair { r: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceSpec {
    pub n: usize,
    pub sum: i64,
    pub kind: SliceKind,
}

/// Inclusive range of coordinate sums met by `P_n`.
pub fn sum_range(n: usize) -> std::ops::RangeInclusive<i64> {
    n as i64..=(n * (n + 1) / 2) as i64
}

/// `k + (k+2) + ... + n`: the sum of the slice pattern without its `r`.
fn pattern_base(n: usize, k: usize) -> i64 {
    k as i64 + (k + 2..=n).map(|v| v as i64).sum::<i64>()
}

pub fn slice_spec(n: usize, sum: i64) -> Result<SliceSpec> {
    if n == 0 || !sum_range(n).contains(&sum) {
        return Err(Error::Domain(format!(
            "coordinate sum {sum} outside {:?} for n = {n}",
            sum_range(n)
        )));
    }
    if sum == n as i64 {
        return Ok(SliceSpec {
            n,
            sum,
            kind: SliceKind::AllOnes,
        });
    }
    // bases decrease strictly in k, and each bracket (base, base + k + 1]
    // abuts the next, so exactly one k fits
    (1..n)
        .find_map(|k| {
            let r = sum - pattern_base(n, k);
            (2..=k as i64 + 1).contains(&r).then_some(SliceSpec {
                n,
                sum,
                kind: SliceKind::Pair { r: r as usize, k },
            })
        })
        .ok_or_else(|| Error::Integrity(format!("no slice pattern for n = {n}, S = {sum}")))
}

/// Sorted representative vertex of the slice.
pub fn slice_vertex_type(spec: &SliceSpec) -> Vec<i64> {
    match spec.kind {
        SliceKind::AllOnes => vec![1; spec.n],
        SliceKind::Pair { r, k } => std::iter::repeat_n(1, k)
            .chain(std::iter::once(r as i64))
            .chain((k + 2..=spec.n).map(|v| v as i64))
            .collect(),
    }
}

/// `y_j = sum_{i=0}^{j-1} (-1)^i C(j-1, i) x_{j-i}` for ascending `x`.
pub fn y_coordinates(x: &[i64]) -> Vec<BigInt> {
    (1..=x.len())
        .map(|j| {
            (0..j)
                .map(|i| {
                    let term = binomial(j - 1, i as i64) * x[j - 1 - i];
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// Inverse transform: `x_j = sum_i C(j-1, i-1) y_i`.
pub fn x_from_y(y: &[BigInt]) -> Vec<BigInt> {
    (1..=y.len())
        .map(|j| (1..=j).map(|i| binomial(j - 1, i as i64 - 1) * &y[i - 1]).sum())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Closed,
    BruteForce,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Closed => "closed",
            CountMethod::BruteForce => "bruteforce",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(CountMethod::Closed),
            "bruteforce" => Ok(CountMethod::BruteForce),
            other => Err(Error::Domain(format!("unknown counting method {other:?}"))),
        }
    }
}

/// Number of integer points of `P_n`.
pub fn lattice_count(n: usize, method: CountMethod, config: &ScanConfig) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    match method {
        CountMethod::Closed => {
            let table = DragonTable::new(n, config)?;
            sum_range(n)
                .map(|s| table.slice_count(s).map(|e| e.count))
                .sum()
        }
        CountMethod::BruteForce => {
            let count = count_box(n, 1, n as i64, config, "lattice_count(bruteforce)", |x| {
                contains_point(x, n, 1)
            })?;
            Ok(BigInt::from(count))
        }
    }
}

/// Integer points of `P_n` with coordinate sum `sum`, by direct scan.
pub fn slice_count_bruteforce(n: usize, sum: i64, config: &ScanConfig) -> Result<BigInt> {
    slice_spec(n, sum)?;
    let count = count_box_level(n, 1, n as i64, sum, config, "slice_count_bruteforce", |x| {
        contains_point(x, n, 1)
    })?;
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn slice_spec_examples() {
        assert_eq!(slice_spec(3, 3).unwrap().kind, SliceKind::AllOnes);
        assert_eq!(slice_spec(3, 4).unwrap().kind, SliceKind::Pair { r: 2, k: 2 });
        assert_eq!(slice_spec(3, 6).unwrap().kind, SliceKind::Pair { r: 2, k: 1 });
        assert!(slice_spec(3, 2).is_err());
        assert!(slice_spec(3, 7).is_err());
    }

    #[test]
    fn slice_vertex_types() {
        assert_eq!(slice_vertex_type(&slice_spec(3, 4).unwrap()), vec![1, 1, 2]);
        assert_eq!(slice_vertex_type(&slice_spec(3, 3).unwrap()), vec![1, 1, 1]);
        assert_eq!(slice_vertex_type(&slice_spec(4, 10).unwrap()), vec![1, 2, 3, 4]);
    }

    #[test]
    fn slice_spec_unique_by_exhaustive_scan() {
        for n in 1..=10usize {
            for sum in sum_range(n) {
                let mut hits = Vec::new();
                if sum == n as i64 {
                    hits.push(SliceKind::AllOnes);
                }
                for k in 1..=n {
                    for r in 2..=k + 1 {
                        // pattern needs k ones, r, then k+2..=n: n coordinates
                        if k + 1 > n {
                            continue;
                        }
                        if pattern_base(n, k) + r as i64 == sum {
                            hits.push(SliceKind::Pair { r, k });
                        }
                    }
                }
                assert_eq!(hits.len(), 1, "n={n} S={sum}: {hits:?}");
                assert_eq!(slice_spec(n, sum).unwrap().kind, hits[0]);
                let v = slice_vertex_type(&slice_spec(n, sum).unwrap());
                assert_eq!(v.len(), n);
                assert_eq!(v.iter().sum::<i64>(), sum);
            }
        }
    }

    #[test]
    fn y_examples() {
        assert_eq!(y_coordinates(&[1, 2, 3]), ints(&[1, 1, 0]));
        assert_eq!(y_coordinates(&[1, 1, 1]), ints(&[1, 0, 0]));
        assert_eq!(y_coordinates(&[1, 1, 2]), ints(&[1, 0, 1]));
    }

    proptest! {
        #[test]
        fn y_round_trip(mut x in proptest::collection::vec(-50i64..50, 1..=10)) {
            x.sort_unstable();
            let back = x_from_y(&y_coordinates(&x));
            prop_assert_eq!(back, ints(&x));
        }
    }

    #[test]
    fn small_lattice_counts() {
        let cfg = ScanConfig::default();
        for (n, expected) in [(1usize, 1i64), (2, 3), (3, 17)] {
            assert_eq!(lattice_count(n, CountMethod::Closed, &cfg).unwrap(), BigInt::from(expected));
            assert_eq!(lattice_count(n, CountMethod::BruteForce, &cfg).unwrap(), BigInt::from(expected));
        }
    }

    #[test]
    fn slice_bruteforce_examples() {
        let cfg = ScanConfig::default();
        assert_eq!(slice_count_bruteforce(3, 6, &cfg).unwrap(), BigInt::from(7));
        assert_eq!(slice_count_bruteforce(3, 3, &cfg).unwrap(), BigInt::from(1));
        assert_eq!(slice_count_bruteforce(3, 4, &cfg).unwrap(), BigInt::from(3));
        let closed = postnikov_slice_count(4, 10, &cfg).unwrap();
        assert_eq!(slice_count_bruteforce(4, 10, &cfg).unwrap(), closed);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("closed".parse::<CountMethod>().unwrap(), CountMethod::Closed);
        assert_eq!("bruteforce".parse::<CountMethod>().unwrap(), CountMethod::BruteForce);
        assert!("fast".parse::<CountMethod>().is_err());
    }
}
