//! Brute-force integer box scans.
//!
//! Points of `[lo, hi]^n` are visited in odometer order (last coordinate
//! fastest). The outermost coordinate range can be split into contiguous
//! shards evaluated on separate threads; shard totals are summed in shard
//! order, so counts never depend on the shard count.

use std::env;
use std::thread;

use crate::error::{Error, Result};

/// Environment variable overriding [`ScanConfig::budget`].
pub const BUDGET_ENV: &str = "PARKHULL_BUDGET";

pub const DEFAULT_BUDGET: u128 = 250_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Number of parallel shards over the outermost coordinate.
    pub shards: usize,
    /// Maximum number of points (or collections, for enumerators) a single
    /// call may visit.
    pub budget: u128,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            shards: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl ScanConfig {
    pub fn with_shards(self, shards: usize) -> Self {
        Self {
            shards: shards.max(1),
            ..self
        }
    }

    pub fn with_budget(self, budget: u128) -> Self {
        Self { budget, ..self }
    }

    /// Default configuration with the budget taken from [`BUDGET_ENV`] when
    /// it is set to a valid integer.
    pub fn from_env() -> Self {
        let budget = env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Self::default().with_budget(budget)
    }

    pub(crate) fn check(&self, method: &'static str, required: u128) -> Result<()> {
        if required > self.budget {
            Err(Error::ResourceBound {
                method,
                required,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

fn box_size(side: i64, dims: usize) -> u128 {
    if side <= 0 {
        return 0;
    }
    (side as u128).saturating_pow(dims as u32)
}

/// Runs `visit` on every prefix in `[lo, hi]^dims`, sharded on the first
/// coordinate, and sums the returned counts. `visit` receives a scratch
/// buffer of length `width >= dims` whose first `dims` entries hold the
/// current prefix.
fn scan<F>(dims: usize, width: usize, lo: i64, hi: i64, shards: usize, visit: F) -> u64
where
    F: Fn(&mut [i64]) -> u64 + Sync,
{
    if hi < lo {
        return 0;
    }
    if dims == 0 {
        let mut buf = vec![0; width];
        return visit(&mut buf);
    }
    let side = (hi - lo + 1) as usize;
    let shards = shards.clamp(1, side);
    let run = |first_lo: i64, first_hi: i64| -> u64 {
        let mut buf = vec![lo; width];
        buf[0] = first_lo;
        let mut total = 0u64;
        loop {
            total += visit(&mut buf);
            // advance the odometer over positions dims-1 .. 0
            let mut pos = dims;
            loop {
                if pos == 0 {
                    return total;
                }
                pos -= 1;
                let limit = if pos == 0 { first_hi } else { hi };
                if buf[pos] < limit {
                    buf[pos] += 1;
                    for slot in &mut buf[pos + 1..dims] {
                        *slot = lo;
                    }
                    break;
                }
            }
        }
    };
    if shards == 1 {
        return run(lo, hi);
    }
    let bounds: Vec<(i64, i64)> = (0..shards)
        .map(|s| {
            let start = lo + (s * side / shards) as i64;
            let end = lo + ((s + 1) * side / shards) as i64 - 1;
            (start, end)
        })
        .filter(|(a, b)| a <= b)
        .collect();
    thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(a, b)| scope.spawn(move || run(a, b)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan shard panicked"))
            .sum()
    })
}

/// Counts points of `[lo, hi]^n` satisfying `pred`.
pub fn count_box<P>(
    n: usize,
    lo: i64,
    hi: i64,
    config: &ScanConfig,
    method: &'static str,
    pred: P,
) -> Result<u64>
where
    P: Fn(&[i64]) -> bool + Sync,
{
    config.check(method, box_size(hi - lo + 1, n))?;
    Ok(scan(n, n, lo, hi, config.shards, |x| u64::from(pred(x))))
}

/// Counts points of `[lo, hi]^n` with coordinate sum `sum` satisfying
/// `pred`. Only the first `n - 1` coordinates are scanned; the last one is
/// forced by the sum.
pub fn count_box_level<P>(
    n: usize,
    lo: i64,
    hi: i64,
    sum: i64,
    config: &ScanConfig,
    method: &'static str,
    pred: P,
) -> Result<u64>
where
    P: Fn(&[i64]) -> bool + Sync,
{
    if n == 0 {
        return Ok(u64::from(sum == 0));
    }
    config.check(method, box_size(hi - lo + 1, n - 1))?;
    let free = n - 1;
    Ok(scan(free, n, lo, hi, config.shards, |x| {
        let last = sum - x[..free].iter().sum::<i64>();
        if last < lo || last > hi {
            return 0;
        }
        x[free] = last;
        u64::from(pred(x))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_box_is_counted_once() {
        let cfg = ScanConfig::default();
        assert_eq!(count_box(3, 1, 4, &cfg, "t", |_| true).unwrap(), 64);
        assert_eq!(count_box(1, 2, 2, &cfg, "t", |_| true).unwrap(), 1);
    }

    #[test]
    fn shard_count_does_not_change_totals() {
        let pred = |x: &[i64]| x.iter().sum::<i64>() % 3 == 0;
        let base = count_box(4, 1, 5, &ScanConfig::default(), "t", pred).unwrap();
        for shards in 2..=7 {
            let cfg = ScanConfig::default().with_shards(shards);
            assert_eq!(count_box(4, 1, 5, &cfg, "t", pred).unwrap(), base);
        }
    }

    #[test]
    fn level_scan_matches_filtered_box() {
        let cfg = ScanConfig::default();
        for s in 3..=12 {
            let direct =
                count_box(3, 1, 4, &cfg, "t", |x| x.iter().sum::<i64>() == s).unwrap();
            let level = count_box_level(3, 1, 4, s, &cfg.with_shards(3), "t", |_| true).unwrap();
            assert_eq!(direct, level, "sum {s}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = ScanConfig::default().with_budget(100);
        let err = count_box(3, 1, 5, &cfg, "scan", |_| true).unwrap_err();
        assert!(matches!(err, Error::ResourceBound { required: 125, .. }));
    }
}
