use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A power series over the rationals, known exactly up to and including
/// `x^order`. Coefficient `i` multiplies `x^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `order` is dropped.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = BigRational>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// Series whose `i`-th coefficient is `f(i)`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Contract(format!(
                "cannot extend a series known to order {} up to order {order}",
                self.order()
            )));
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_same_order(&self, other: &Self, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Contract(format!(
                "{op}: truncation orders differ ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other, "add")?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other, "sub")?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other, "mul")?;
        let order = self.order();
        let coeffs = (0..=order)
            .map(|i| {
                (0..=i)
                    .filter(|&j| !self.coeffs[j].is_zero())
                    .map(|j| &self.coeffs[j] * &other.coeffs[i - j])
                    .sum()
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `x`. The result is known one order further.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Formal derivative. The top coefficient would need `x^(order+1)`, so
    /// the result is known to one order less.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::Contract(
                "cannot differentiate a series known only to order 0".into(),
            ));
        }
        Ok(Self {
            coeffs: (1..self.coeffs.len())
                .map(|i| &self.coeffs[i] * BigInt::from(i))
                .collect(),
        })
    }

    /// Antiderivative with zero constant term, known one order further.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / BigInt::from(i + 1)),
        );
        Self { coeffs }
    }

    /// `exp(self)`, defined only when the constant term vanishes.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Contract(
                "exp requires a zero constant term".into(),
            ));
        }
        // F = exp(H)  =>  F' = H' F  =>  i F_i = sum_{k=1..i} k H_k F_{i-k}
        let order = self.order();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = BigRational::one();
        for i in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=i {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * BigInt::from(k) * &out[i - k];
                }
            }
            out[i] = acc / BigInt::from(i);
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Contract(
                "reciprocal requires a nonzero constant term".into(),
            ));
        }
        let order = self.order();
        let lead = self.coeffs[0].recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        out.push(lead.clone());
        for i in 1..=order {
            let acc: BigRational = (1..=i).map(|k| &self.coeffs[k] * &out[i - k]).sum();
            out.push(-acc * &lead);
        }
        Ok(Self { coeffs: out })
    }

    /// Natural logarithm; requires constant term 1. Known to the same order.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Contract("ln requires constant term 1".into()));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let deriv = self.differentiate()?;
        let inv = self.truncate(self.order() - 1)?.recip()?;
        Ok(deriv.mul(&inv)?.integrate())
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(super::format_rational)
            .collect();
        write!(f, "[{}] + O(x^{})", terms.join(", "), self.order() + 1)
    }
}
