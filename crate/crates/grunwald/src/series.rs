//! Truncated power series.
//!
//! A [`TruncatedSeries`] holds the coefficients c_0..c_K of a series
//! modulo O(z^{K+1}). The truncation order K is explicit state: combining
//! two series with different K is an error, never a silent re-truncation.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T: Coeff> {
    coeffs: Vec<T>,
}

impl<T: Coeff> TruncatedSeries<T> {
    /// Series from its K+1 leading coefficients.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    /// The constant series 1 truncated at order `k`.
    pub fn one(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[0] = T::one();
        TruncatedSeries { coeffs }
    }

    /// Leading K+1 coefficients of a polynomial, zero-padded.
    pub fn from_polynomial(p: &Polynomial<T>, k: usize) -> Self {
        let coeffs = (0..=k).map(|i| p.coeff(i)).collect();
        TruncatedSeries { coeffs }
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    fn check_order(&self, rhs: &Self) -> Result<(), Error> {
        if self.order() != rhs.order() {
            return Err(Error::TruncationMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_order(rhs)?;
        let k = self.order();
        let mut out = vec![T::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(k + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        TruncatedSeries { coeffs }
    }

    /// Binomial series of `self^alpha` for a series with constant term
    /// exactly 1:
    ///
    ///   (1 + X)^alpha = 1 + alpha X + alpha(alpha-1)/2! X^2 + ...
    ///
    /// X has zero constant term, so X^n contributes nothing below z^n and
    /// the expansion closes at order K. The coefficient field is
    /// preserved: a rational alpha on a rational series stays rational,
    /// and a non-negative integer alpha terminates after alpha terms,
    /// reproducing the plain polynomial power.
    pub fn pow_alpha(&self, alpha: &T) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let k = self.order();
        let mut x = self.clone();
        x.coeffs[0] = T::zero();
        let mut result = TruncatedSeries::one(k);
        let mut xpow = TruncatedSeries::one(k);
        let mut binom = T::one();
        for n in 1..=k {
            binom = binom * (alpha.clone() - T::from_i64(n as i64 - 1)) / T::from_i64(n as i64);
            if binom.is_zero() {
                break;
            }
            xpow = xpow.mul(&x)?;
            for i in n..=k {
                result.coeffs[i] =
                    result.coeffs[i].clone() + binom.clone() * xpow.coeffs[i].clone();
            }
        }
        Ok(result)
    }

    /// Evaluate the truncated polynomial at a floating point.
    pub fn eval_f64(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc
    }
}
