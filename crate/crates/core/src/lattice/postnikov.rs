//! Lattice points of a slice via Postnikov's formula for generalized
//! permutohedra:
//!
//! `N = 1/(n-1)! * sum over admissible (S_1, ..., S_{n-1}) of {Y_{S_1} ... Y_{S_{n-1}}}`
//!
//! where the bracket groups equal subsets into multiplicities `a_I` and
//! evaluates `(Y_[n] + 1)^(a_[n]) * prod_{I != [n]} Y_I^(a_I)` with rising
//! factorial powers. Here `Y_I = y_{|I|}`, so a collection's bracket only
//! depends on the sizes and multiplicities of its distinct subsets.
//!
//! The admissible collections do not depend on the slice, so they are
//! enumerated once per `n` and tallied by that shape; each slice is then a
//! weighted sum over shapes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::dragon::dragon_exhaustive;
use super::{slice_spec, slice_vertex_type, y_coordinates, SliceSpec};
use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, raising_factorial};
use crate::scan::ScanConfig;

/// Bracket shape of a collection: multiplicity of the full set, and the
/// sorted `(size, multiplicity)` pairs of the other distinct subsets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketShape {
    pub full: usize,
    pub parts: Vec<(usize, usize)>,
}

impl BracketShape {
    pub fn evaluate(&self, y: &[BigInt]) -> BigInt {
        let n = y.len();
        let mut value = raising_factorial(&(&y[n - 1] + 1), self.full);
        for &(size, mult) in &self.parts {
            if value.is_zero() {
                break;
            }
            value *= raising_factorial(&y[size - 1], mult);
        }
        value
    }
}

/// Admissible collections for one `n`, tallied by [`BracketShape`]. The
/// weight of a shape is the number of ordered collections having it.
#[derive(Debug, Clone)]
pub struct DragonTable {
    n: usize,
    shapes: BTreeMap<BracketShape, BigInt>,
    collections: BigInt,
}

#[derive(Debug, Clone)]
pub struct SliceEvaluation {
    pub spec: SliceSpec,
    pub y: Vec<BigInt>,
    /// Bracket sum before division by `(n-1)!`.
    pub bracket_sum: BigInt,
    pub count: BigInt,
}

/// Upper bound on the multisets the enumeration may visit:
/// `C(M + n - 2, n - 1)` with `M` the number of subsets of size `>= 2`.
pub fn enumeration_size(n: usize) -> u128 {
    if n <= 1 {
        return 1;
    }
    let subsets = (1u128 << n) - n as u128 - 1;
    let total = binomial((subsets as usize) + n - 2, (n - 1) as i64);
    u128::try_from(total).unwrap_or(u128::MAX)
}

impl DragonTable {
    pub fn new(n: usize, config: &ScanConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if n > 31 {
            return Err(Error::Domain(format!("n = {n} is too large")));
        }
        config.check("lattice_count(closed)", enumeration_size(n))?;
        let slots = n - 1;
        // singletons and the empty set can never satisfy the bound alone
        let subsets: Vec<u32> = (0u32..(1 << n)).filter(|s| s.count_ones() >= 2).collect();
        let full = (1u32 << n) - 1;
        let slot_factorial = factorial(slots);

        let mut shapes: BTreeMap<BracketShape, BigInt> = BTreeMap::new();
        let mut collections = BigInt::zero();
        let mut chosen: Vec<usize> = Vec::with_capacity(slots);
        let mut unions = vec![0u32; 1 << slots];

        // Depth-first over non-decreasing subset indices; `unions[g]` holds
        // the union over the group `g` of already placed slots.
        fn place(
            depth: usize,
            start: usize,
            subsets: &[u32],
            chosen: &mut Vec<usize>,
            unions: &mut [u32],
            leaf: &mut dyn FnMut(&[usize]),
        ) {
            if depth == chosen.capacity() {
                leaf(chosen);
                return;
            }
            'candidates: for idx in start..subsets.len() {
                let set = subsets[idx];
                for group in 0..(1usize << depth) {
                    let merged = unions[group] | set;
                    if merged.count_ones() < group.count_ones() + 2 {
                        continue 'candidates;
                    }
                    unions[group | 1 << depth] = merged;
                }
                chosen.push(idx);
                place(depth + 1, idx, subsets, chosen, unions, leaf);
                chosen.pop();
            }
        }

        let mut leaf = |picked: &[usize]| {
            let mut shape = BracketShape {
                full: 0,
                parts: Vec::new(),
            };
            let mut orderings = slot_factorial.clone();
            for run in picked.chunk_by(|a, b| a == b) {
                let set = subsets[run[0]];
                orderings /= factorial(run.len());
                if set == full {
                    shape.full = run.len();
                } else {
                    shape.parts.push((set.count_ones() as usize, run.len()));
                }
            }
            shape.parts.sort_unstable();
            collections += &orderings;
            *shapes.entry(shape).or_insert_with(BigInt::zero) += orderings;
        };
        place(0, 0, &subsets, &mut chosen, &mut unions, &mut leaf);

        Ok(Self {
            n,
            shapes,
            collections,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of ordered admissible collections.
    pub fn collections(&self) -> &BigInt {
        &self.collections
    }

    pub fn shapes(&self) -> &BTreeMap<BracketShape, BigInt> {
        &self.shapes
    }

    pub fn bracket_sum(&self, y: &[BigInt]) -> BigInt {
        self.shapes
            .iter()
            .map(|(shape, weight)| shape.evaluate(y) * weight)
            .sum()
    }

    pub fn slice_count(&self, sum: i64) -> Result<SliceEvaluation> {
        let spec = slice_spec(self.n, sum)?;
        let x = slice_vertex_type(&spec);
        let y = y_coordinates(&x);
        let bracket_sum = self.bracket_sum(&y);
        let (count, rem) = bracket_sum.div_rem(&factorial(self.n - 1));
        if !rem.is_zero() {
            return Err(Error::Integrity(format!(
                "bracket sum {bracket_sum} for n = {}, S = {sum} is not divisible by {}!",
                self.n,
                self.n - 1
            )));
        }
        Ok(SliceEvaluation {
            spec,
            y,
            bracket_sum,
            count,
        })
    }
}

/// Lattice points of the slice of `P_n` at coordinate sum `sum`.
pub fn postnikov_slice_count(n: usize, sum: i64, config: &ScanConfig) -> Result<BigInt> {
    slice_spec(n, sum)?;
    Ok(DragonTable::new(n, config)?.slice_count(sum)?.count)
}

/// Reference evaluation over ordered tuples, without any grouping. Only
/// practical for `n <= 5`; used to cross-check [`DragonTable`].
pub fn bracket_sum_ordered(n: usize, y: &[BigInt]) -> BigInt {
    let slots = n - 1;
    let per = 1usize << n;
    let full = (1u32 << n) - 1;
    let mut total = BigInt::zero();
    let mut tuple = vec![0u32; slots];
    for code in 0..per.pow(slots as u32) {
        let mut c = code;
        for slot in tuple.iter_mut() {
            *slot = (c % per) as u32;
            c /= per;
        }
        if !dragon_exhaustive(&tuple) {
            continue;
        }
        let mut tally: BTreeMap<u32, usize> = BTreeMap::new();
        for &s in &tuple {
            *tally.entry(s).or_default() += 1;
        }
        let mut value = BigInt::from(1);
        for (set, mult) in tally {
            let base = if set == full {
                &y[n - 1] + 1
            } else {
                y[set.count_ones() as usize - 1].clone()
            };
            value *= raising_factorial(&base, mult);
        }
        total += value;
    }
    total
}
