//! Grünwald-type approximations of fractional derivatives from explicit
//! generating functions.
//!
//! A fractional derivative of order `alpha` is discretized on a uniform
//! grid by weights drawn from a generating function
//! `W(z) = (beta_0 + beta_1 z + ... + beta_p z^p)^alpha`. This crate
//! computes the generator coefficients for any approximation order `p`
//! and shift `r` in closed form, expands the weights, verifies the order
//! symbolically in exact rational arithmetic, measures empirical
//! convergence on grid functions, and specializes integer `alpha` to
//! classical (and new) finite-difference stencils.
//!
//! ```
//! use grunwald::{parse_rational, verify_order, GeneratorSpec};
//!
//! let spec = GeneratorSpec::new(
//!     parse_rational("1/2").unwrap(),
//!     2,
//!     parse_rational("1").unwrap(),
//! )
//! .unwrap();
//! let report = verify_order(&spec, 6).unwrap();
//! assert_eq!(report.confirmed_order, 2);
//! ```
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run -p grunwald --example table_generators
//! cargo run -p grunwald --example fractional_weights
//! cargo run -p grunwald --example order_check
//! cargo run -p grunwald --example convergence_study
//! cargo run -p grunwald --example difference_formulas
//! ```
//!
//! The same functionality is scriptable through the `grunwald` binary;
//! see the crate README.

pub mod cli;
mod error;
pub mod generator;
pub mod operator;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod stencil;
pub mod verify;
pub mod weights;

pub use error::Error;
pub use generator::{
    beta_explicit, beta_vandermonde, det_u2, moment_residual, BetaVector, BetaVectorDoc,
    GeneratorSpec,
};
pub use operator::{
    apply_shifted_grunwald, estimate_order, estimate_order_side, halving_spacings,
    rl_derivative_power, ConvergenceRow, ConvergenceTable, GridFn, Side,
};
pub use poly::Polynomial;
pub use scalar::{format_rational, parse_rational, rat, Coeff, Rational};
pub use series::TruncatedSeries;
pub use stencil::{integer_stencil, render_stencil, stencil_moments, RenderFormat, Stencil};
pub use verify::{g_series, verify_order, verify_vector, OrderReport, OrderReportDoc};
pub use weights::{integer_weights_exact, miller_weights, weights_series_oracle, WeightSeq};
