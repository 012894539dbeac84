//! Grünwald weight expansion.
//!
//! The weights w_0..w_M are the Taylor coefficients of
//! W(z) = (beta_0 + ... + beta_p z^p)^alpha. Two structurally different
//! algorithms compute them:
//!
//! - [`miller_weights`]: the power-series recurrence
//!   w_0 = beta_0^alpha,
//!   w_m = (1/(m beta_0)) sum_{j=1}^{min(m,p)} (j(alpha+1) - m) w_{m-j} beta_j,
//! - [`weights_series_oracle`]: beta_0^alpha times the binomial series of
//!   (P(z)/beta_0)^alpha, the independent cross-check.
//!
//! For non-negative integer alpha on an exact coefficient vector both
//! routes run in exact rational arithmetic (the expansion is a
//! polynomial and the floating recurrence would otherwise pollute the
//! identically-zero tail with exponentially amplified roundoff). For
//! fractional alpha the weights are irrational and are computed in f64;
//! a negative constant term is rejected rather than going complex.

use std::fmt::Write as _;

use crate::error::Error;
use crate::generator::BetaVector;
use crate::poly::Polynomial;
use crate::scalar::{Coeff, Rational};
use crate::series::TruncatedSeries;

/// Expanded weight sequence w_0..w_M. All values finite.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    values: Vec<f64>,
}

impl WeightSeq {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Truncation length M (index of the last weight).
    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    /// CSV with one row per weight: `k,w_k` at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,w\n");
        for (k, w) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{k},{w:.16e}");
        }
        out
    }

    fn from_checked(values: Vec<f64>) -> Result<Self, Error> {
        if let Some(index) = values.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteWeights { index });
        }
        Ok(WeightSeq { values })
    }
}

fn guard_leading<T: Coeff>(b: &BetaVector<T>, alpha: &T) -> Result<(), Error> {
    if b.is_degenerate() {
        return Err(Error::DegenerateGenerator);
    }
    let beta0 = b.betas()[0].to_f64();
    if beta0 < 0.0 && alpha.as_integer().is_none() {
        return Err(Error::NegativePower(beta0));
    }
    Ok(())
}

/// Weight sequence of length M+1 by the recurrence route. The inner sum
/// stops at min(m, p) because the generator polynomial has degree p.
pub fn miller_weights<T: Coeff>(
    b: &BetaVector<T>,
    alpha: &T,
    m: usize,
) -> Result<WeightSeq, Error> {
    guard_leading(b, alpha)?;
    if T::EXACT {
        if let Some(n) = alpha.as_integer() {
            if n >= 0 {
                return WeightSeq::from_checked(
                    miller_recurrence(b.betas(), alpha, m)?
                        .iter()
                        .map(Coeff::to_f64)
                        .collect(),
                );
            }
        }
    }
    let betas: Vec<f64> = b.betas().iter().map(Coeff::to_f64).collect();
    let values = miller_recurrence(&betas, &alpha.to_f64(), m)?;
    WeightSeq::from_checked(values)
}

fn miller_recurrence<T: Coeff>(betas: &[T], alpha: &T, m: usize) -> Result<Vec<T>, Error> {
    let p = betas.len() - 1;
    let beta0 = &betas[0];
    let mut w = Vec::with_capacity(m + 1);
    w.push(T::try_pow(beta0, alpha)?);
    for k in 1..=m {
        let mut acc = T::zero();
        for j in 1..=k.min(p) {
            let factor =
                T::from_i64(j as i64) * (alpha.clone() + T::one()) - T::from_i64(k as i64);
            acc = acc + factor * w[k - j].clone() * betas[j].clone();
        }
        w.push(acc / (T::from_i64(k as i64) * beta0.clone()));
    }
    Ok(w)
}

/// Independent series route: normalize the generator polynomial to unit
/// constant term, take the binomial series power, and scale back by
/// beta_0^alpha.
pub fn weights_series_oracle<T: Coeff>(
    b: &BetaVector<T>,
    alpha: &T,
    m: usize,
) -> Result<WeightSeq, Error> {
    guard_leading(b, alpha)?;
    if T::EXACT {
        if let Some(n) = alpha.as_integer() {
            if n >= 0 {
                return WeightSeq::from_checked(
                    series_route(b.betas(), alpha, m)?
                        .iter()
                        .map(Coeff::to_f64)
                        .collect(),
                );
            }
        }
    }
    let betas: Vec<f64> = b.betas().iter().map(Coeff::to_f64).collect();
    let values = series_route(&betas, &alpha.to_f64(), m)?;
    WeightSeq::from_checked(values)
}

fn series_route<T: Coeff>(betas: &[T], alpha: &T, m: usize) -> Result<Vec<T>, Error> {
    let beta0 = betas[0].clone();
    let normalized: Vec<T> = betas.iter().map(|c| c.clone() / beta0.clone()).collect();
    let poly = Polynomial::new(normalized);
    let series = TruncatedSeries::from_polynomial(&poly, m).pow_alpha(alpha)?;
    let scale = T::try_pow(&beta0, alpha)?;
    Ok(series
        .coeffs()
        .iter()
        .map(|c| c.clone() * scale.clone())
        .collect())
}

/// Exact expansion of an integer power of the generator polynomial.
/// Degenerate (zero) constant terms are fine here; only the recurrence
/// divides by beta_0.
pub fn integer_weights_exact(
    b: &BetaVector<Rational>,
    n: usize,
    m: usize,
) -> Vec<Rational> {
    let poly = Polynomial::new(b.betas().to_vec()).pow(n);
    (0..=m).map(|k| poly.coeff(k)).collect()
}
