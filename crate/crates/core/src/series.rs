//! Univariate formal power series over exact rationals, truncated at a
//! fixed order. Provides the Todd-type factor t/(1−e^{−t}) used by the
//! Euler-characteristic evaluation, computed by series inversion (an
//! independent Bernoulli recurrence validates it in tests).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients for exponents 0..=order; arithmetic never consults
/// exponents above the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        Self { coeffs }
    }

    pub fn zero(order: u32) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, exponent: u32) -> BigRational {
        self.coeffs
            .get(exponent as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// e^{c·t} truncated: coefficients c^m/m!.
    pub fn exp_series(c: &BigRational, order: u32) -> Self {
        let mut coeffs = Vec::with_capacity(order as usize + 1);
        let mut term = BigRational::one();
        coeffs.push(term.clone());
        for m in 1..=order {
            term = term * c / BigRational::from(BigInt::from(m));
            coeffs.push(term.clone());
        }
        Self { coeffs }
    }

    /// t/(1−e^{−t}): the reciprocal of Σ_{m≥0} (−1)^m t^m/(m+1)!.
    pub fn todd(order: u32) -> Self {
        let mut denom = Vec::with_capacity(order as usize + 1);
        let mut term = BigRational::one();
        denom.push(term.clone());
        for m in 1..=order {
            // (−1)^m/(m+1)! from (−1)^{m−1}/m!
            term = -term / BigRational::from(BigInt::from(m + 1));
            denom.push(term.clone());
        }
        Self::new(denom)
            .reciprocal()
            .expect("the Todd denominator has constant term 1")
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order()) as usize;
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// The series t with s·t = 1 up to the truncation order.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let lead = self.coeffs[0].recip();
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        coeffs[0] = lead.clone();
        for n in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for j in 1..=n {
                acc += &self.coeffs[j] * &coeffs[n - j];
            }
            coeffs[n] = -acc * &lead;
        }
        Ok(Self { coeffs })
    }

    /// m-fold product under truncation; `pow(s, 0)` is 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
