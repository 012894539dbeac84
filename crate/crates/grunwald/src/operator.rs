//! Grid application of the shifted operator and empirical order
//! estimation.
//!
//! The left/right operator with shift r applied to f at x is
//!
//!   left:  h^(-alpha) sum_k w_k f(x - (k - r) h)
//!   right: h^(-alpha) sum_k w_k f(x + (k - r) h)
//!
//! with f zero-extended outside its interval. The sum is truncated at
//! N + ceil(r), N = floor((x - a)/h) for the left operator and
//! floor((b - x)/h) for the right one, which covers every grid point
//! inside the interval.

use std::fmt::Write as _;

use statrs::function::gamma::gamma;

use crate::error::Error;
use crate::generator::GeneratorSpec;
use crate::scalar::{Coeff, Rational};
use crate::weights::{miller_weights, WeightSeq};

/// Operator side: which fractional derivative is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!("side must be left or right, got {other:?}"))),
        }
    }
}

enum GridData {
    Samples(Vec<f64>),
    Handle(Box<dyn Fn(f64) -> f64 + Sync>),
}

/// Function on a uniform grid over [a, b], zero-extended outside.
/// Carries either point samples (restricting evaluation to grid points)
/// or an evaluable handle (required for non-integer shifts).
pub struct GridFn {
    a: f64,
    b: f64,
    h: f64,
    data: GridData,
}

impl GridFn {
    pub fn from_samples(a: f64, b: f64, h: f64, samples: Vec<f64>) -> Result<Self, Error> {
        if !(h > 0.0) || !(b > a) {
            return Err(Error::InvalidSpec("need h > 0 and b > a".into()));
        }
        let expected = ((b - a) / h).floor() as usize + 1;
        if samples.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "expected {expected} samples on [{a}, {b}] with h = {h}, got {}",
                samples.len()
            )));
        }
        Ok(GridFn {
            a,
            b,
            h,
            data: GridData::Samples(samples),
        })
    }

    pub fn from_fn(
        a: f64,
        b: f64,
        h: f64,
        f: impl Fn(f64) -> f64 + Sync + 'static,
    ) -> Result<Self, Error> {
        if !(h > 0.0) || !(b > a) {
            return Err(Error::InvalidSpec("need h > 0 and b > a".into()));
        }
        Ok(GridFn {
            a,
            b,
            h,
            data: GridData::Handle(Box::new(f)),
        })
    }

    /// Sample an evaluable function onto the grid.
    pub fn sample(a: f64, b: f64, h: f64, f: impl Fn(f64) -> f64) -> Result<Self, Error> {
        if !(h > 0.0) || !(b > a) {
            return Err(Error::InvalidSpec("need h > 0 and b > a".into()));
        }
        let count = ((b - a) / h).floor() as usize + 1;
        let samples = (0..count).map(|k| f(a + k as f64 * h)).collect();
        GridFn::from_samples(a, b, h, samples)
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Value at x with zero extension outside [a, b]. Sample-backed
    /// functions reject points that do not sit on the grid.
    pub fn eval(&self, x: f64) -> Result<f64, Error> {
        let tol = 1e-9 * self.h;
        if x < self.a - tol || x > self.b + tol {
            return Ok(0.0);
        }
        match &self.data {
            GridData::Handle(f) => Ok(f(x)),
            GridData::Samples(values) => {
                let pos = (x - self.a) / self.h;
                let idx = pos.round();
                if (pos - idx).abs() > 1e-8 {
                    return Err(Error::OffGridEvaluation(x));
                }
                Ok(values.get(idx as usize).copied().unwrap_or(0.0))
            }
        }
    }
}

/// Apply the shifted operator to `f` at `x` with precomputed weights.
/// The weight sequence must cover N + ceil(r) terms.
pub fn apply_shifted_grunwald(
    f: &GridFn,
    x: f64,
    spec: &GeneratorSpec<f64>,
    w: &WeightSeq,
    side: Side,
) -> Result<f64, Error> {
    let (a, b) = f.interval();
    if x < a || x > b {
        return Err(Error::InvalidSpec(format!("x = {x} outside [{a}, {b}]")));
    }
    let h = f.spacing();
    let r = spec.r;
    let steps = match side {
        Side::Left => ((x - a) / h).floor(),
        Side::Right => ((b - x) / h).floor(),
    } as i64;
    let k_max = steps + r.ceil() as i64;
    if k_max < 0 {
        return Ok(0.0);
    }
    let needed = k_max as usize + 1;
    if w.len() < needed {
        return Err(Error::InsufficientWeights {
            needed,
            got: w.len(),
        });
    }
    let mut acc = 0.0;
    for (k, weight) in w.values()[..needed].iter().enumerate() {
        if *weight == 0.0 {
            continue;
        }
        let offset = (r - k as f64) * h;
        let point = match side {
            Side::Left => x + offset,
            Side::Right => x - offset,
        };
        acc += weight * f.eval(point)?;
    }
    Ok(acc * h.powf(-spec.alpha))
}

/// Closed-form left Riemann-Liouville derivative of x^mu (base point 0):
///
///   D^alpha x^mu = Gamma(mu + 1) / Gamma(mu + 1 - alpha) x^(mu - alpha)
///
/// Rejected when mu + 1 - alpha hits a pole of the reciprocal Gamma.
pub fn rl_derivative_power(mu: f64, alpha: f64, x: f64) -> Result<f64, Error> {
    if !(mu > -1.0) {
        return Err(Error::InvalidSpec(format!("mu = {mu} must exceed -1")));
    }
    if !(x > 0.0) {
        return Err(Error::InvalidSpec(format!("x = {x} must be positive")));
    }
    let s = mu + 1.0 - alpha;
    if s <= 0.0 && (s - s.round()).abs() < 1e-12 {
        return Err(Error::GammaPole(s));
    }
    Ok(gamma(mu + 1.0) / gamma(s) * x.powf(mu - alpha))
}

/// One grid refinement measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub approx: f64,
    pub exact: f64,
    pub error: f64,
    /// Row sits on the roundoff floor (within three decades of machine
    /// epsilon relative to the exact value) and is excluded from the fit.
    pub excluded: bool,
}

/// Refinement table with the fitted log-log slope.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub slope: f64,
    pub residual: f64,
}

impl ConvergenceTable {
    /// CSV rows `h,approx,exact,error` followed by a comment row with the
    /// fitted slope, fit residual, and any rows excluded as roundoff.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,approx,exact,error\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:e},{:.16e},{:.16e},{:.16e}",
                row.h, row.approx, row.exact, row.error
            );
        }
        let excluded: Vec<String> = self
            .rows
            .iter()
            .filter(|r| r.excluded)
            .map(|r| format!("{:e}", r.h))
            .collect();
        if excluded.is_empty() {
            let _ = writeln!(out, "# slope = {:.6}, residual = {:.3e}", self.slope, self.residual);
        } else {
            let _ = writeln!(
                out,
                "# slope = {:.6}, residual = {:.3e}, excluded = [{}]",
                self.slope,
                self.residual,
                excluded.join(" ")
            );
        }
        out
    }
}

/// Measure the empirical convergence order of the left operator against
/// the closed-form derivative of x^mu on [0, 2 x0], evaluated at x0.
///
/// Each h gets its own weight expansion of length N + ceil(r). Rows whose
/// error is below 1e3 * eps * |exact| sit on the roundoff floor; they are
/// flagged and excluded from the least-squares slope fit.
pub fn estimate_order(
    spec: &GeneratorSpec<Rational>,
    mu: f64,
    x0: f64,
    h_list: &[f64],
) -> Result<ConvergenceTable, Error> {
    estimate_order_side(spec, mu, x0, h_list, Side::Left)
}

/// [`estimate_order`] for either side. The right operator is measured on
/// the mirrored power (b - x)^mu, whose right derivative at x0 equals the
/// left derivative of x^mu at the mirrored point b - x0 = x0.
pub fn estimate_order_side(
    spec: &GeneratorSpec<Rational>,
    mu: f64,
    x0: f64,
    h_list: &[f64],
    side: Side,
) -> Result<ConvergenceTable, Error> {
    if h_list.len() < 4 {
        return Err(Error::InvalidSpec(format!(
            "need at least 4 grid spacings, got {}",
            h_list.len()
        )));
    }
    if h_list.windows(2).any(|w| w[1] >= w[0]) || h_list.iter().any(|&h| h <= 0.0) {
        return Err(Error::InvalidSpec(
            "grid spacings must be positive and strictly decreasing".into(),
        ));
    }
    if !(x0 > 0.0) {
        return Err(Error::InvalidSpec("x0 must be positive".into()));
    }
    let beta = spec.beta()?;
    let spec_f = spec.to_f64();
    let exact = rl_derivative_power(mu, spec_f.alpha, x0)?;
    let (a, b) = (0.0, 2.0 * x0);
    let integer_mu = mu.fract() == 0.0 && mu >= 0.0;
    let floor = 1e3 * f64::EPSILON * exact.abs();

    let mut rows = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let steps = ((x0 - a) / h).floor() as usize;
        let m = steps + spec_f.r.ceil().max(0.0) as usize;
        let w = miller_weights(&beta, &spec.alpha, m)?;
        let f = GridFn::from_fn(a, b, h, move |x| {
            let base = match side {
                Side::Left => x,
                Side::Right => b - x,
            };
            if integer_mu {
                base.powi(mu as i32)
            } else {
                base.powf(mu)
            }
        })?;
        let approx = apply_shifted_grunwald(&f, x0, &spec_f, &w, side)?;
        let error = (approx - exact).abs();
        rows.push(ConvergenceRow {
            h,
            approx,
            exact,
            error,
            excluded: !error.is_finite() || error <= floor,
        });
    }
    let (slope, residual) = fit_log_slope(&rows);
    Ok(ConvergenceTable {
        rows,
        slope,
        residual,
    })
}

/// Least squares slope of log error against log h over the included rows.
fn fit_log_slope(rows: &[ConvergenceRow]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.excluded && r.error > 0.0)
        .map(|r| (r.h.ln(), r.error.ln()))
        .collect();
    if pts.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    (slope, (ss_res / n).sqrt())
}

/// Grid spacings h_start, h_start/2, ..., halved `count` times in total.
pub fn halving_spacings(h_start: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| h_start / 2f64.powi(i as i32)).collect()
}
