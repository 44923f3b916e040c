//! The admissibility condition on collections of subsets: every `k` of the
//! subsets together cover at least `k + 1` elements.
//!
//! Two independent checks are provided. The exhaustive one inspects every
//! nonempty group of subsets. The matching one uses the equivalent
//! statement that for every element `e` the subsets with `e` removed still
//! admit a system of distinct representatives.

use crate::error::{Error, Result};

/// An ordered tuple of subsets of `{1, ..., n}`, stored as bitmasks with
/// bit `i - 1` standing for element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetCollection {
    n: usize,
    sets: Vec<u32>,
}

impl SubsetCollection {
    pub fn new(n: usize, sets: Vec<u32>) -> Result<Self> {
        if n > 31 {
            return Err(Error::Domain(format!("ground set of size {n} is too large")));
        }
        if sets.iter().any(|&s| s >> n != 0) {
            return Err(Error::Domain(format!("subset outside {{1..{n}}}")));
        }
        Ok(Self { n, sets })
    }

    /// Builds a collection from 1-based element lists.
    pub fn from_elements(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for set in sets {
            let mut mask = 0u32;
            for &e in *set {
                if e == 0 || e > n {
                    return Err(Error::Domain(format!("element {e} outside 1..={n}")));
                }
                mask |= 1 << (e - 1);
            }
            masks.push(mask);
        }
        Self::new(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[u32] {
        &self.sets
    }
}

/// Checks every nonempty group of subsets directly.
pub fn dragon_exhaustive(sets: &[u32]) -> bool {
    let count = sets.len();
    assert!(count < 32, "too many subsets for exhaustive check");
    let mut unions = vec![0u32; 1 << count];
    for group in 1usize..(1 << count) {
        let low = group.trailing_zeros() as usize;
        unions[group] = unions[group & (group - 1)] | sets[low];
        if unions[group].count_ones() < group.count_ones() + 1 {
            return false;
        }
    }
    true
}

/// Kuhn's augmenting-path matching of subsets into elements, skipping
/// element `banned`. Returns true when every subset is matched.
fn saturating_matching(sets: &[u32], n: usize, banned: usize) -> bool {
    fn augment(set: usize, sets: &[u32], n: usize, banned: usize, owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for e in 0..n {
            if e == banned || sets[set] >> e & 1 == 0 || seen[e] {
                continue;
            }
            seen[e] = true;
            let free = match owner[e] {
                None => true,
                Some(other) => augment(other, sets, n, banned, owner, seen),
            };
            if free {
                owner[e] = Some(set);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; n];
    (0..sets.len()).all(|s| {
        let mut seen = vec![false; n];
        augment(s, sets, n, banned, &mut owner, &mut seen)
    })
}

/// Matching certificate: for each element `e`, the subsets minus `e` have
/// distinct representatives.
pub fn dragon_matching(sets: &[u32], n: usize) -> bool {
    if sets.is_empty() {
        return true;
    }
    if n == 0 {
        return false;
    }
    (0..n).all(|e| saturating_matching(sets, n, e))
}

/// Evaluates both checks and insists they agree.
pub fn dragon_condition(collection: &SubsetCollection) -> Result<bool> {
    let direct = dragon_exhaustive(collection.sets());
    let matched = dragon_matching(collection.sets(), collection.n());
    if direct != matched {
        return Err(Error::Integrity(format!(
            "union check ({direct}) and matching check ({matched}) disagree on {:?}",
            collection.sets()
        )));
    }
    Ok(direct)
}
