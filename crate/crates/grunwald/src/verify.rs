//! Symbolic order verification.
//!
//! A weight generating function W approximates the fractional derivative
//! of order alpha with shift r and order p exactly when its symbol
//!
//!   G(z) = z^(-alpha) W(e^(-z)) e^(rz)
//!
//! satisfies G(z) = 1 + O(z^p). For W = P(z)^alpha the symbol expands
//! without any transcendental work: with lambda_j = lambda - j,
//!
//!   G(z) = (sum_{n >= 0} b_n z^(n-1))^alpha,
//!   b_n = (1/n!) sum_j lambda_j^n beta_j,
//!
//! so b_0 = 0 is the consistency condition (no pole at z = 0), b_1 = 1
//! normalizes the constant term, and the binomial series power produces
//! the Taylor coefficients a_0..a_K of G exactly whenever alpha and the
//! coefficients are rational. No tolerance appears on the exact path.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::generator::{BetaVector, GeneratorSpec};
use crate::scalar::{format_rational, Coeff, Rational};
use crate::series::TruncatedSeries;

/// Result of expanding and scanning the symbol of one generator.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderReport<T: Coeff> {
    pub spec: GeneratorSpec<T>,
    /// Largest q <= K with a_0 = 1 and a_1..a_{q-1} all zero. Superconvergent
    /// shifts report more than the requested order; an invalid generator
    /// reports 0.
    pub confirmed_order: usize,
    /// a_p, the leading coefficient of the error expansion
    /// D f - Delta f = -(a_p h^p D^{p+alpha} f + ...).
    pub leading_coeff: T,
    /// The pole check b_0 = sum of the coefficients; zero on valid input.
    pub b0_residual: T,
    /// Symbol tail a_p..a_K.
    pub a_tail: Vec<T>,
}

/// Natural magnitude of the symbol coefficients, used to scale the
/// floating-path zero test: sum |beta_j| e^|lambda_j|.
fn float_scale<T: Coeff>(b: &BetaVector<T>) -> f64 {
    let lambda = b.lambda().to_f64();
    b.betas()
        .iter()
        .enumerate()
        .map(|(j, beta)| beta.to_f64().abs() * (lambda - j as f64).abs().exp())
        .sum::<f64>()
        .max(1.0)
}

fn is_effectively_zero<T: Coeff>(value: &T, scale: f64) -> bool {
    if T::EXACT {
        value.is_zero()
    } else {
        value.to_f64().abs() <= 1e-10 * scale
    }
}

/// Taylor coefficients a_0..a_K of the symbol G(z).
///
/// Errors with [`Error::InconsistentGenerator`] when the coefficients do
/// not sum to zero (the symbol then has a z^(-alpha) pole).
pub fn g_series<T: Coeff>(
    b: &BetaVector<T>,
    alpha: &T,
    k: usize,
) -> Result<TruncatedSeries<T>, Error> {
    let scale = float_scale(b);
    let b0 = b
        .betas()
        .iter()
        .fold(T::zero(), |acc, beta| acc + beta.clone());
    if !is_effectively_zero(&b0, scale) {
        return Err(Error::InconsistentGenerator(b0.to_f64()));
    }

    // Inner series S(z) = b_1 + b_2 z + ... + b_{K+1} z^K.
    let nodes: Vec<T> = (0..b.betas().len())
        .map(|j| b.lambda().clone() - T::from_i64(j as i64))
        .collect();
    let mut node_pow: Vec<T> = nodes.clone(); // lambda_j^1
    let mut factorial = T::one();
    let mut inner = Vec::with_capacity(k + 1);
    for n in 1..=(k + 1) {
        factorial = factorial * T::from_i64(n as i64);
        let mut sum = T::zero();
        for (pow, beta) in node_pow.iter().zip(b.betas()) {
            sum = sum + pow.clone() * beta.clone();
        }
        inner.push(sum / factorial.clone());
        for (pow, node) in node_pow.iter_mut().zip(&nodes) {
            *pow = pow.clone() * node.clone();
        }
    }
    let s = TruncatedSeries::new(inner);

    let lead = s.coeff(0).clone();
    if lead.is_one() {
        return s.pow_alpha(alpha);
    }
    // General leading term: G = lead^alpha * (S/lead)^alpha. Representable
    // exactly only for integer alpha; the floating field scales through.
    let lead_pow = T::try_pow(&lead, alpha)?;
    let normalized = s.scale(&(T::one() / lead));
    Ok(normalized.pow_alpha(alpha)?.scale(&lead_pow))
}

/// Expand the symbol of the generator built from `spec` and report the
/// confirmed order and error-expansion coefficients.
pub fn verify_order<T: Coeff>(
    spec: &GeneratorSpec<T>,
    k: usize,
) -> Result<OrderReport<T>, Error> {
    verify_vector(spec, &spec.beta()?, k)
}

/// Like [`verify_order`] but on an externally supplied coefficient
/// vector, e.g. one loaded from a file. The vector is taken as-is; the
/// spec only provides alpha and the claimed order.
pub fn verify_vector<T: Coeff>(
    spec: &GeneratorSpec<T>,
    b: &BetaVector<T>,
    k: usize,
) -> Result<OrderReport<T>, Error> {
    if k < spec.p + 2 {
        return Err(Error::InvalidSpec(format!(
            "series order {k} too short to confirm order {} (need at least p + 2)",
            spec.p
        )));
    }
    let scale = float_scale(b);
    let b0_residual = b
        .betas()
        .iter()
        .fold(T::zero(), |acc, beta| acc + beta.clone());
    let g = g_series(b, &spec.alpha, k)?;

    let mut confirmed = 0;
    if is_effectively_zero(&(g.coeff(0).clone() - T::one()), scale) {
        confirmed = 1;
        while confirmed < k && is_effectively_zero(g.coeff(confirmed), scale) {
            confirmed += 1;
        }
    }
    Ok(OrderReport {
        spec: spec.clone(),
        confirmed_order: confirmed,
        leading_coeff: g.coeff(spec.p).clone(),
        b0_residual,
        a_tail: g.coeffs()[spec.p..].to_vec(),
    })
}

/// Serialized order report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReportDoc {
    pub alpha: String,
    pub p: usize,
    pub r: String,
    pub confirmed_order: usize,
    pub leading_coeff: String,
    pub tail: Vec<String>,
}

impl OrderReport<Rational> {
    pub fn to_doc(&self) -> OrderReportDoc {
        OrderReportDoc {
            alpha: format_rational(&self.spec.alpha),
            p: self.spec.p,
            r: format_rational(&self.spec.r),
            confirmed_order: self.confirmed_order,
            leading_coeff: format_rational(&self.leading_coeff),
            tail: self.a_tail.iter().map(format_rational).collect(),
        }
    }
}

impl OrderReport<f64> {
    pub fn to_doc(&self) -> OrderReportDoc {
        OrderReportDoc {
            alpha: self.spec.alpha.to_string(),
            p: self.spec.p,
            r: self.spec.r.to_string(),
            confirmed_order: self.confirmed_order,
            leading_coeff: self.leading_coeff.to_string(),
            tail: self.a_tail.iter().map(f64::to_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::beta_explicit;
    use crate::scalar::rat;

    #[test]
    fn first_order_symbol_coefficients() {
        // W = (1 - z)^(1/2), no shift: G = ((1 - e^-z)/z)^(1/2)
        //   = 1 - z/4 + 5 z^2/96 + O(z^3).
        let b = beta_explicit(1, &rat(0, 1));
        let g = g_series(&b, &rat(1, 2), 2).unwrap();
        assert_eq!(g.coeffs(), &[rat(1, 1), rat(-1, 4), rat(5, 96)]);
    }

    #[test]
    fn shifted_second_order_symbol_is_exact() {
        // alpha = 1/2, r = 1 => lambda = 2: a_0 = 1, a_1 = 0, a_2 != 0.
        let b = beta_explicit(2, &rat(2, 1));
        let g = g_series(&b, &rat(1, 2), 4).unwrap();
        assert_eq!(g.coeff(0), &rat(1, 1));
        assert_eq!(g.coeff(1), &rat(0, 1));
        assert_eq!(g.coeff(2), &rat(-1, 6));
    }

    #[test]
    fn inconsistent_vector_reports_pole() {
        let b = BetaVector::new(vec![rat(1, 1), rat(-1, 2)], rat(0, 1)).unwrap();
        assert!(matches!(
            g_series(&b, &rat(1, 2), 4),
            Err(Error::InconsistentGenerator(_))
        ));
    }

    #[test]
    fn verify_third_order_shifted() {
        let spec = GeneratorSpec::new(rat(1, 2), 3, rat(1, 1)).unwrap();
        let report = verify_order(&spec, 6).unwrap();
        assert_eq!(report.confirmed_order, 3);
        assert_eq!(report.b0_residual, rat(0, 1));
        assert!(!report.leading_coeff.is_zero());
    }

    #[test]
    fn verify_first_order_leading_coefficient() {
        let spec = GeneratorSpec::new(rat(1, 2), 1, rat(0, 1)).unwrap();
        let report = verify_order(&spec, 4).unwrap();
        assert_eq!(report.confirmed_order, 1);
        assert_eq!(report.leading_coeff, rat(-1, 4));
        assert_eq!(report.a_tail[0], rat(-1, 4));
    }

    #[test]
    fn verify_integer_order_central_difference() {
        // alpha = 2, p = 2, r = 1 builds (1 - z)^2: the classic central
        // second difference with error coefficient 1/12.
        let spec = GeneratorSpec::new(rat(2, 1), 2, rat(1, 1)).unwrap();
        let report = verify_order(&spec, 6).unwrap();
        assert_eq!(report.confirmed_order, 2);
        assert_eq!(report.leading_coeff, rat(1, 12));
    }

    #[test]
    fn superconvergence_at_half_alpha_shift() {
        // First-order generator applied at shift r = alpha/2 gains an
        // order: a_1 vanishes, a_2 = 1/48.
        let spec = GeneratorSpec::new(rat(1, 2), 1, rat(1, 4)).unwrap();
        let report = verify_order(&spec, 5).unwrap();
        assert!(report.confirmed_order >= 2);
        let b = beta_explicit(1, &rat(1, 2));
        let g = g_series(&b, &rat(1, 2), 4).unwrap();
        assert_eq!(
            g.coeffs(),
            &[rat(1, 1), rat(0, 1), rat(1, 48), rat(0, 1), rat(1, 23040)]
        );
    }

    #[test]
    fn short_truncation_is_rejected() {
        let spec = GeneratorSpec::new(rat(1, 2), 3, rat(0, 1)).unwrap();
        assert!(matches!(
            verify_order(&spec, 4),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn float_path_matches_exact_path() {
        let exact_spec = GeneratorSpec::new(rat(1, 2), 2, rat(1, 1)).unwrap();
        let float_spec = GeneratorSpec::new(0.5f64, 2, 1.0).unwrap();
        let exact = verify_order(&exact_spec, 6).unwrap();
        let float = verify_order(&float_spec, 6).unwrap();
        assert_eq!(exact.confirmed_order, float.confirmed_order);
        assert!(
            (exact.leading_coeff.to_f64() - float.leading_coeff).abs() < 1e-12
        );
    }

    #[test]
    fn symbol_series_matches_direct_float_evaluation() {
        // G(z) = z^-alpha (sum beta_j e^(lambda_j z))^alpha evaluated
        // numerically must agree with the truncated series up to the
        // truncation error C |z|^(K+1).
        for (alpha, p, r) in [(rat(1, 2), 2, rat(1, 1)), (rat(3, 2), 3, rat(1, 1))] {
            let spec = GeneratorSpec::new(alpha.clone(), p, r.clone()).unwrap();
            let b = spec.beta().unwrap();
            let k = p + 4;
            let g = g_series(&b, &alpha, k).unwrap();
            let lambda = b.lambda().to_f64();
            let af = alpha.to_f64();
            for z in [0.05f64, 0.02, 0.01] {
                let direct: f64 = b
                    .betas()
                    .iter()
                    .enumerate()
                    .map(|(j, beta)| beta.to_f64() * ((lambda - j as f64) * z).exp())
                    .sum::<f64>()
                    .powf(af)
                    / z.powf(af);
                let series = g.eval_f64(z);
                // truncation error plus a budget for the cancellation in
                // the direct evaluation near z = 0
                let tol = 10.0 * z.powi(k as i32 + 1) + 1e-11;
                assert!(
                    (direct - series).abs() <= tol,
                    "alpha={af} p={p} z={z}: {direct} vs {series}"
                );
            }
        }
    }

    #[test]
    fn report_doc_round_trips() {
        let spec = GeneratorSpec::new(rat(1, 2), 2, rat(1, 1)).unwrap();
        let report = verify_order(&spec, 6).unwrap();
        let doc = report.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: OrderReportDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
