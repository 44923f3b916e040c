use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Lower-triangular table grown row by row on demand.
struct Triangle {
    rows: Vec<Vec<BigInt>>,
    next_row: fn(&[BigInt], usize) -> Vec<BigInt>,
}

impl Triangle {
    fn new(first: Vec<BigInt>, next_row: fn(&[BigInt], usize) -> Vec<BigInt>) -> Self {
        Self {
            rows: vec![first],
            next_row,
        }
    }

    fn get(&mut self, n: usize, k: usize) -> BigInt {
        while self.rows.len() <= n {
            let i = self.rows.len();
            let row = (self.next_row)(&self.rows[i - 1], i);
            self.rows.push(row);
        }
        self.rows[n].get(k).cloned().unwrap_or_default()
    }
}

fn pascal_row(prev: &[BigInt], n: usize) -> Vec<BigInt> {
    (0..=n)
        .map(|k| {
            let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            let right = prev.get(k).cloned().unwrap_or_default();
            left + right
        })
        .collect()
}

// S(n, k) = k S(n-1, k) + S(n-1, k-1)
fn stirling_row(prev: &[BigInt], n: usize) -> Vec<BigInt> {
    (0..=n)
        .map(|k| {
            let stay = prev.get(k).map(|s| s * BigInt::from(k)).unwrap_or_default();
            let join = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            stay + join
        })
        .collect()
}

fn pascal() -> &'static Mutex<Triangle> {
    static TABLE: OnceLock<Mutex<Triangle>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Triangle::new(vec![BigInt::one()], pascal_row)))
}

fn stirling() -> &'static Mutex<Triangle> {
    static TABLE: OnceLock<Mutex<Triangle>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Triangle::new(vec![BigInt::one()], stirling_row)))
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as u64 > n as u64 {
        return BigInt::zero();
    }
    pascal().lock().expect("pascal table poisoned").get(n, k as usize)
}

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling().lock().expect("stirling table poisoned").get(n, k)
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rising factorial `y (y + 1) ... (y + a - 1)`; the empty product is 1.
pub fn raising_factorial(y: &BigInt, a: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut term = y.clone();
    for _ in 0..a {
        acc *= &term;
        term += 1;
    }
    acc
}
