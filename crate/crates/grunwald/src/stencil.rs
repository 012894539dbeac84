//! Finite-difference stencils for integer-order derivatives.
//!
//! For integer alpha = n the generating function is an integer power of a
//! polynomial, so the expansion is finite and exact: the weights of
//! (sum_j beta_j z^j)^n with lambda = r/n give an order-p approximation of
//! the n-th derivative on a uniform grid. With the convention
//! f_j := f(x + j h), weight w_k sits at node offset r - k and
//!
//!   d^n/dx^n f(x) = h^(-n) sum_k w_k f(x + (r - k) h) + O(h^p).
//!
//! Under this orientation the moment sums
//! sum_k w_k (r - k)^m are exactly 0 for m = 0..n+p-1, m != n, and
//! exactly +n! at m = n, which is equivalent to exactness on all
//! polynomials of degree below n + p.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::generator::beta_explicit;
use crate::poly::Polynomial;
use crate::scalar::{format_rational, parse_rational, rat, Coeff, Rational};

/// Uniform-grid stencil: node offsets (as multiples of h) with exact
/// rational coefficients, normalized by h^(-n).
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub n: usize,
    pub p: usize,
    pub r: Rational,
    /// (offset, coefficient) pairs, offsets r - k strictly decreasing,
    /// zero coefficients retained (fixed length n p + 1).
    pub nodes: Vec<(Rational, Rational)>,
}

/// Stencil of the n-th derivative with accuracy order p and shift r.
pub fn integer_stencil(n: usize, p: usize, r: &Rational) -> Result<Stencil, Error> {
    if n == 0 {
        return Err(Error::InvalidSpec("derivative order n must be >= 1".into()));
    }
    if p == 0 {
        return Err(Error::InvalidSpec("accuracy order p must be >= 1".into()));
    }
    let lambda = r / rat(n as i64, 1);
    let beta = beta_explicit(p, &lambda);
    let expansion = Polynomial::new(beta.betas().to_vec()).pow(n);
    let nodes = (0..=n * p)
        .map(|k| (r - rat(k as i64, 1), expansion.coeff(k)))
        .collect();
    Ok(Stencil {
        n,
        p,
        r: r.clone(),
        nodes,
    })
}

/// Moment sums sum_k c_k offset_k^m for m = 0..n+p-1: the order
/// conditions of the stencil.
pub fn stencil_moments(s: &Stencil) -> Vec<Rational> {
    (0..s.n + s.p)
        .map(|m| {
            s.nodes
                .iter()
                .fold(rat(0, 1), |acc, (offset, coeff)| {
                    acc + offset.powi(m) * coeff.clone()
                })
        })
        .collect()
}

/// Output format for [`render_stencil`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Json,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(RenderFormat::Text),
            "json" => Ok(RenderFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Human-readable formula (zero nodes suppressed) or exact JSON (zero
/// nodes retained).
pub fn render_stencil(s: &Stencil, format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => {
            serde_json::to_string(&StencilDoc::from_stencil(s)).expect("stencil serializes")
        }
        RenderFormat::Text => {
            let mut terms = String::new();
            for (offset, coeff) in &s.nodes {
                if coeff.is_zero() {
                    continue;
                }
                let magnitude = Coeff::abs(coeff);
                let sign = if coeff.to_f64() < 0.0 { "-" } else { "+" };
                if terms.is_empty() {
                    if sign == "-" {
                        terms.push_str("-");
                    }
                } else {
                    terms.push_str(&format!(" {sign} "));
                }
                if magnitude.is_one() {
                    terms.push_str(&format!("f[{offset}]"));
                } else {
                    terms.push_str(&format!("{magnitude} f[{offset}]"));
                }
            }
            if terms.is_empty() {
                terms.push('0');
            }
            format!(
                "d^{n}/dx^{n} f(x) = ({terms}) / h^{n} + O(h^{p}),  order {p}",
                n = s.n,
                p = s.p
            )
        }
    }
}

/// Serialized stencil with exact scalars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StencilDoc {
    pub n: usize,
    pub p: usize,
    pub r: String,
    pub nodes: Vec<StencilNodeDoc>,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StencilNodeDoc {
    pub offset: String,
    pub coeff: String,
}

impl StencilDoc {
    pub fn from_stencil(s: &Stencil) -> Self {
        StencilDoc {
            n: s.n,
            p: s.p,
            r: format_rational(&s.r),
            nodes: s
                .nodes
                .iter()
                .map(|(offset, coeff)| StencilNodeDoc {
                    offset: format_rational(offset),
                    coeff: format_rational(coeff),
                })
                .collect(),
            order: s.p,
        }
    }

    pub fn to_stencil(&self) -> Result<Stencil, Error> {
        let nodes = self
            .nodes
            .iter()
            .map(|node| Ok((parse_rational(&node.offset)?, parse_rational(&node.coeff)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Stencil {
            n: self.n,
            p: self.p,
            r: parse_rational(&self.r)?,
            nodes,
        })
    }
}
