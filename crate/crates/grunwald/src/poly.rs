//! Dense univariate polynomials over a [`Coeff`] field.

use crate::scalar::Coeff;

/// Polynomial with ascending coefficients; index = power of z. Trailing
/// zeros are trimmed, the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Coeff> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Highest nonzero power, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of z^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Polynomial::new(vec![T::one()]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Display as `c0 + c1 z + c2 z^2 + ...` with zero terms suppressed.
    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => format!(" {var}"),
                _ => format!(" {var}^{k}"),
            };
            if parts.is_empty() {
                parts.push(format!("{c}{mono}"));
            } else if c.to_f64() < 0.0 {
                parts.push(format!("- {}{mono}", c.clone().neg()));
            } else {
                parts.push(format!("+ {c}{mono}"));
            }
        }
        parts.join(" ")
    }
}
