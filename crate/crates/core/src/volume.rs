//! Exact volume of `P_n`.
//!
//! Primary route: the recurrence
//! `V_n = (1/n) sum_{k<n} C(n,k) (n-k)^(n-k-1) (n+k-1)/2 V_k` with `V_0 = 1`.
//! Two independent checks: the exponential generating function identity
//! `sum V_n x^n / n! = exp(int x g'(x)^2 / 2)` with `g` the tree function,
//! and the leading coefficient of the Ehrhart polynomial interpolated from
//! brute-force lattice-point counts of dilations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, RationalSeries};
use crate::polytope::contains_point;
use crate::scan::{count_box, ScanConfig};

/// Largest `n` the interpolation oracle accepts.
pub const VOLUME_ORACLE_MAX_N: usize = 5;

/// Memoised `V_0, V_1, ...`.
#[derive(Debug, Clone)]
pub struct VolumeTable {
    values: Vec<BigRational>,
}

impl Default for VolumeTable {
    fn default() -> Self {
        Self::new()
    }
}

impl VolumeTable {
    pub fn new() -> Self {
        Self {
            values: vec![BigRational::one(), BigRational::zero()],
        }
    }

    pub fn get(&mut self, n: usize) -> &BigRational {
        while self.values.len() <= n {
            let next = self.next_value();
            self.values.push(next);
        }
        &self.values[n]
    }

    fn next_value(&self) -> BigRational {
        let n = self.values.len();
        let mut acc = BigRational::zero();
        for (k, vk) in self.values.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            let j = n - k;
            let weight = binomial(n, k as i64)
                * BigInt::from(j).pow(j as u32 - 1)
                * BigInt::from(n + k - 1);
            acc += vk * BigRational::from_integer(weight);
        }
        acc / BigRational::from_integer(BigInt::from(2 * n))
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// `Vol(P_n)`; `V_0 = 1` by convention and `V_1 = 0`.
pub fn volume(n: usize) -> BigRational {
    VolumeTable::new().get(n).clone()
}

/// `sum_{n >= 1} n^(n-1) x^n / n!`, the exponential generating function of
/// rooted labelled trees.
pub fn tree_function(order: usize) -> RationalSeries {
    RationalSeries::from_fn(order, |n| {
        if n == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(n).pow(n as u32 - 1), factorial(n))
        }
    })
}

#[derive(Debug, Clone)]
pub struct EgfCheck {
    pub order: usize,
    /// `sum V_n x^n / n!` from the recurrence.
    pub from_recurrence: RationalSeries,
    /// `exp(int x g'^2 / 2)`.
    pub from_identity: RationalSeries,
    pub residual: RationalSeries,
}

impl EgfCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn egf_identity_check(order: usize) -> Result<EgfCheck> {
    if order == 0 {
        return Err(Error::Domain("EGF check needs order >= 1".into()));
    }
    let g_prime = tree_function(order + 1).differentiate()?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let integrand = g_prime.mul(&g_prime)?.shift_up().scale(&half);
    let exponent = integrand.integrate().truncate(order)?;
    let from_identity = exponent.exp()?;

    let mut table = VolumeTable::new();
    let from_recurrence = RationalSeries::from_fn(order, |n| {
        table.get(n) / BigRational::from_integer(factorial(n))
    });
    let residual = from_recurrence.sub(&from_identity)?;
    Ok(EgfCheck {
        order,
        from_recurrence,
        from_identity,
        residual,
    })
}

/// Number of integer points in the dilation `m P_n`, by scanning the box
/// `[m, m n]^n`.
pub fn ehrhart_count(n: usize, m: u64, config: &ScanConfig) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if m == 0 {
        return Ok(BigInt::one());
    }
    let m = m as i64;
    let hi = m.checked_mul(n as i64).ok_or_else(|| Error::Domain("dilation too large".into()))?;
    let count = count_box(n, m, hi, config, "ehrhart_count", |x| contains_point(x, n, m))?;
    Ok(BigInt::from(count))
}

/// Newton divided differences through `(xs[i], ys[i])`; returns the
/// coefficient of the highest-degree Newton basis term, which is the
/// leading coefficient of the interpolating polynomial.
pub fn leading_coefficient(xs: &[BigRational], ys: &[BigRational]) -> Result<BigRational> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::Contract("interpolation needs matching nonempty samples".into()));
    }
    let mut table = ys.to_vec();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            let span = &xs[i] - &xs[i - level];
            if span.is_zero() {
                return Err(Error::Contract("repeated interpolation node".into()));
            }
            table[i] = (&table[i] - &table[i - 1]) / span;
        }
    }
    Ok(table.pop().expect("nonempty"))
}

/// Volume as the leading coefficient of the Ehrhart polynomial, sampled at
/// dilations `0..=n`.
pub fn volume_oracle(n: usize, config: &ScanConfig) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if n > VOLUME_ORACLE_MAX_N {
        return Err(Error::ResourceBound {
            method: "volume_oracle",
            required: n as u128,
            budget: VOLUME_ORACLE_MAX_N as u128,
        });
    }
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for m in 0..=n as u64 {
        xs.push(BigRational::from_integer(BigInt::from(m)));
        ys.push(BigRational::from_integer(ehrhart_count(n, m, config)?));
    }
    leading_coefficient(&xs, &ys)
}
