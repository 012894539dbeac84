//! Generator-polynomial coefficients.
//!
//! A Grünwald-type approximation of order p with shift r for the
//! fractional derivative of order alpha is generated by
//! W(z) = (beta_0 + beta_1 z + ... + beta_p z^p)^alpha, where the
//! coefficients depend only on p and the normalized shift
//! lambda = r / alpha. They are the unique solution of the moment system
//!
//!   sum_j (lambda - j)^n beta_j = delta_{1,n},   n = 0..p,
//!
//! a Vandermonde system in the nodes lambda_j = lambda - j. Two
//! independent routes are provided: the closed form [`beta_explicit`]
//! (the product-of-sums form, singularity-free for every lambda,
//! including integer lambda) and the direct exact solve
//! [`beta_vandermonde`].

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{format_rational, parse_rational, Coeff, Rational};

/// The triple (alpha, p, r) identifying one approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec<T: Coeff> {
    pub alpha: T,
    pub p: usize,
    pub r: T,
}

impl<T: Coeff> GeneratorSpec<T> {
    pub fn new(alpha: T, p: usize, r: T) -> Result<Self, Error> {
        if alpha.is_zero() || alpha.to_f64() <= 0.0 {
            return Err(Error::ZeroAlpha);
        }
        if p == 0 {
            return Err(Error::InvalidSpec("approximation order p must be >= 1".into()));
        }
        Ok(GeneratorSpec { alpha, p, r })
    }

    /// Normalized shift lambda = r / alpha.
    pub fn lambda(&self) -> Result<T, Error> {
        if self.alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        Ok(self.r.clone() / self.alpha.clone())
    }

    /// Generator coefficients for this spec via the closed form.
    pub fn beta(&self) -> Result<BetaVector<T>, Error> {
        Ok(beta_explicit(self.p, &self.lambda()?))
    }
}

impl GeneratorSpec<Rational> {
    pub fn to_f64(&self) -> GeneratorSpec<f64> {
        GeneratorSpec {
            alpha: self.alpha.to_f64(),
            p: self.p,
            r: self.r.to_f64(),
        }
    }
}

/// The p+1 generator-polynomial coefficients beta_0..beta_p together with
/// the lambda they were evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaVector<T: Coeff> {
    betas: Vec<T>,
    lambda: T,
}

impl<T: Coeff> BetaVector<T> {
    pub fn new(betas: Vec<T>, lambda: T) -> Result<Self, Error> {
        if betas.len() < 2 {
            return Err(Error::InvalidSpec("beta vector needs at least two entries".into()));
        }
        Ok(BetaVector { betas, lambda })
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    /// Approximation order p (degree of the generator polynomial).
    pub fn p(&self) -> usize {
        self.betas.len() - 1
    }

    /// A zero constant term is permitted here but rejected by weight
    /// expansion, which divides by beta_0.
    pub fn is_degenerate(&self) -> bool {
        self.betas[0].is_zero()
    }
}

/// Closed-form coefficients
///
///   beta_j = -(prod_{m != j} 1/(j - m)) (sum_{m != j} prod_{l != m, j} (lambda - l))
///
/// for j = 0..p. This form has no poles in lambda, so it is the route used
/// everywhere, including integer lambda where the alternate
/// product-of-reciprocals form breaks down.
pub fn beta_explicit<T: Coeff>(p: usize, lambda: &T) -> BetaVector<T> {
    assert!(p >= 1, "approximation order p must be >= 1");
    let mut betas = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let mut denom = T::one();
        for m in 0..=p {
            if m != j {
                denom = denom * T::from_i64(j as i64 - m as i64);
            }
        }
        let mut sum = T::zero();
        for m in 0..=p {
            if m == j {
                continue;
            }
            let mut prod = T::one();
            for l in 0..=p {
                if l != m && l != j {
                    prod = prod * (lambda.clone() - T::from_i64(l as i64));
                }
            }
            sum = sum + prod;
        }
        betas.push((sum / denom).neg());
    }
    BetaVector {
        betas,
        lambda: lambda.clone(),
    }
}

/// Independent oracle: solve the moment system
/// V(lambda_0..lambda_p) b = (0,1,0,...,0) directly by Gaussian
/// elimination over the coefficient field. The nodes lambda_j = lambda - j
/// are pairwise distinct, so the matrix is nonsingular.
pub fn beta_vandermonde<T: Coeff>(p: usize, lambda: &T) -> BetaVector<T> {
    assert!(p >= 1, "approximation order p must be >= 1");
    let nodes: Vec<T> = (0..=p)
        .map(|j| lambda.clone() - T::from_i64(j as i64))
        .collect();
    let mut matrix = Vec::with_capacity(p + 1);
    let mut row = vec![T::one(); p + 1];
    matrix.push(row.clone());
    for _ in 1..=p {
        row = row
            .iter()
            .zip(&nodes)
            .map(|(v, node)| v.clone() * node.clone())
            .collect();
        matrix.push(row.clone());
    }
    let mut rhs = vec![T::zero(); p + 1];
    rhs[1] = T::one();
    let betas = solve_dense(matrix, rhs);
    BetaVector {
        betas,
        lambda: lambda.clone(),
    }
}

/// Gaussian elimination with pivoting by floating magnitude. Pivots are
/// checked for exact zero, which cannot occur on the Vandermonde systems
/// solved here.
fn solve_dense<T: Coeff>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Vec<T> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                let x = a[i][col].to_f64().abs();
                let y = a[j][col].to_f64().abs();
                x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty column");
        assert!(!a[pivot_row][col].is_zero(), "singular moment system");
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / a[col][col].clone();
            for k in col..n {
                a[row][k] = a[row][k].clone() - factor.clone() * a[col][k].clone();
            }
            b[row] = b[row].clone() - factor * b[col].clone();
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for col in row + 1..n {
            acc = acc - a[row][col].clone() * x[col].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    x
}

/// Residual of the n-th moment condition:
/// sum_j (lambda - j)^n beta_j - delta_{1,n}. Exactly zero for n <= p on a
/// valid coefficient vector.
pub fn moment_residual<T: Coeff>(b: &BetaVector<T>, n: usize) -> T {
    let mut acc = T::zero();
    for (j, beta) in b.betas.iter().enumerate() {
        let node = b.lambda.clone() - T::from_i64(j as i64);
        acc = acc + node.powi(n) * beta.clone();
    }
    if n == 1 {
        acc = acc - T::one();
    }
    acc
}

/// Closed-form determinant of the Vandermonde variant whose rows are the
/// powers 0, 2, 3, ..., q+1 of the nodes:
///
///   |U2(x_0..x_q)| = prod_{i<j} (x_j - x_i) * sum_m prod_{l != m} x_l
pub fn det_u2<T: Coeff>(xs: &[T]) -> T {
    let q = xs.len() - 1;
    let mut vandermonde = T::one();
    for i in 0..=q {
        for j in i + 1..=q {
            vandermonde = vandermonde * (xs[j].clone() - xs[i].clone());
        }
    }
    let mut sum = T::zero();
    for m in 0..=q {
        let mut prod = T::one();
        for (l, x) in xs.iter().enumerate() {
            if l != m {
                prod = prod * x.clone();
            }
        }
        sum = sum + prod;
    }
    vandermonde * sum
}

/// Serialized form of a coefficient vector: all scalars in canonical
/// exact notation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaVectorDoc {
    pub alpha: String,
    pub p: usize,
    pub r: String,
    pub lambda: String,
    pub beta: Vec<String>,
}

impl BetaVectorDoc {
    pub fn from_parts(spec: &GeneratorSpec<Rational>, b: &BetaVector<Rational>) -> Self {
        BetaVectorDoc {
            alpha: format_rational(&spec.alpha),
            p: spec.p,
            r: format_rational(&spec.r),
            lambda: format_rational(b.lambda()),
            beta: b.betas().iter().map(format_rational).collect(),
        }
    }

    pub fn to_parts(&self) -> Result<(GeneratorSpec<Rational>, BetaVector<Rational>), Error> {
        let spec = GeneratorSpec::new(
            parse_rational(&self.alpha)?,
            self.p,
            parse_rational(&self.r)?,
        )?;
        let betas = self
            .beta
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        let lambda = parse_rational(&self.lambda)?;
        if betas.len() != self.p + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                self.p + 1,
                betas.len()
            )));
        }
        Ok((spec, BetaVector::new(betas, lambda)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn rats(cs: &[(i64, i64)]) -> Vec<Rational> {
        cs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn lambda_of_divides_exactly() {
        let spec = GeneratorSpec::new(rat(2, 1), 1, rat(1, 1)).unwrap();
        assert_eq!(spec.lambda().unwrap(), rat(1, 2));
        let spec = GeneratorSpec::new(rat(1, 1), 1, rat(0, 1)).unwrap();
        assert_eq!(spec.lambda().unwrap(), rat(0, 1));
        let spec = GeneratorSpec::new(rat(3, 2), 1, rat(1, 1)).unwrap();
        assert_eq!(spec.lambda().unwrap(), rat(2, 3));
    }

    #[test]
    fn zero_alpha_is_rejected() {
        assert!(matches!(
            GeneratorSpec::new(rat(0, 1), 1, rat(0, 1)),
            Err(Error::ZeroAlpha)
        ));
    }

    #[test]
    fn explicit_first_order_is_one_minus_z() {
        for lambda in [rat(0, 1), rat(1, 2), rat(-7, 3), rat(5, 1)] {
            let b = beta_explicit(1, &lambda);
            assert_eq!(b.betas(), rats(&[(1, 1), (-1, 1)]).as_slice());
        }
    }

    #[test]
    fn explicit_second_order_at_half_degenerates_to_first() {
        let b = beta_explicit(2, &rat(1, 2));
        assert_eq!(b.betas(), rats(&[(1, 1), (-1, 1), (0, 1)]).as_slice());
        assert!(!b.is_degenerate());
    }

    #[test]
    fn explicit_third_order_lubich() {
        let b = beta_explicit(3, &rat(0, 1));
        assert_eq!(
            b.betas(),
            rats(&[(11, 6), (-3, 1), (3, 2), (-1, 3)]).as_slice()
        );
    }

    #[test]
    fn vandermonde_known_vectors() {
        assert_eq!(
            beta_vandermonde(1, &rat(1, 2)).betas(),
            rats(&[(1, 1), (-1, 1)]).as_slice()
        );
        assert_eq!(
            beta_vandermonde(2, &rat(0, 1)).betas(),
            rats(&[(3, 2), (-2, 1), (1, 2)]).as_slice()
        );
        assert_eq!(
            beta_vandermonde(4, &rat(0, 1)).betas(),
            rats(&[(25, 12), (-4, 1), (3, 1), (-4, 3), (1, 4)]).as_slice()
        );
    }

    #[test]
    fn moment_residuals_vanish_up_to_p() {
        let b = beta_explicit(2, &rat(1, 2));
        assert_eq!(moment_residual(&b, 0), rat(0, 1));
        assert_eq!(moment_residual(&b, 1), rat(0, 1));
        assert_eq!(moment_residual(&b, 2), rat(0, 1));
        // n = 3 is past the order conditions: residual 1/4 by direct sum.
        assert_eq!(moment_residual(&b, 3), rat(1, 4));
    }

    #[test]
    fn det_u2_small_cases() {
        assert_eq!(det_u2(&rats(&[(1, 1), (2, 1)])), rat(3, 1));
        assert_eq!(det_u2(&rats(&[(0, 1), (1, 1), (2, 1)])), rat(4, 1));
        assert_eq!(det_u2(&rats(&[(5, 2), (1, 3), (5, 2)])), rat(0, 1));
    }

    /// Cofactor-expansion determinant, the independent check for det_u2.
    fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = rat(0, 1);
        for col in 0..n {
            if m[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = m[0][col].clone() * det_cofactor(&minor);
            acc = if col % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn u2_matrix(xs: &[Rational]) -> Vec<Vec<Rational>> {
        let q = xs.len() - 1;
        let mut rows = vec![vec![rat(1, 1); q + 1]];
        for power in 2..=q + 1 {
            rows.push(xs.iter().map(|x| x.powi(power)).collect());
        }
        rows
    }

    #[test]
    fn det_u2_matches_cofactor_expansion() {
        // Deterministic pseudo-random rational inputs, sizes 2..=6.
        let mut seed = 17i64;
        let mut next = || {
            seed = (seed * 1103515245 + 12345) % 2048;
            rat(seed - 1024, 1 + (seed % 7).abs())
        };
        for size in 2..=6usize {
            for _ in 0..8 {
                let xs: Vec<Rational> = (0..size).map(|_| next()).collect();
                assert_eq!(det_u2(&xs), det_cofactor(&u2_matrix(&xs)), "size {size}");
            }
        }
    }

    /// Alternate closed form with reciprocal factors,
    /// beta_j = -(prod_{m != j} (lambda-m)/(j-m)) (sum_{m != j} 1/(lambda-m)),
    /// valid only away from integer lambda in 0..p. Used as a third route.
    fn beta_reciprocal_form(p: usize, lambda: &Rational) -> Vec<Rational> {
        (0..=p)
            .map(|j| {
                let mut prod = rat(1, 1);
                let mut sum = rat(0, 1);
                for m in 0..=p {
                    if m == j {
                        continue;
                    }
                    let node = lambda.clone() - rat(m as i64, 1);
                    prod = prod * node.clone() / rat(j as i64 - m as i64, 1);
                    sum = sum + rat(1, 1) / node;
                }
                (prod * sum).neg()
            })
            .collect()
    }

    #[test]
    fn reciprocal_form_agrees_off_singularities() {
        for p in 1..=5 {
            for lambda in [rat(1, 3), rat(-5, 2), rat(22, 7)] {
                let direct = beta_explicit(p, &lambda);
                assert_eq!(
                    direct.betas(),
                    beta_reciprocal_form(p, &lambda).as_slice(),
                    "p={p} lambda={lambda}"
                );
            }
        }
    }

    #[test]
    fn lubich_generators_match_backward_difference_sums() {
        // The no-shift generators coincide with sum_{j=1}^p (1/j)(1-z)^j.
        let one_minus_z = Polynomial::new(rats(&[(1, 1), (-1, 1)]));
        for p in 1..=6usize {
            let mut sum = Polynomial::zero();
            for j in 1..=p {
                let term = one_minus_z.pow(j);
                let scaled =
                    Polynomial::new(term.coeffs().iter().map(|c| c / rat(j as i64, 1)).collect());
                sum = Polynomial::new(
                    (0..=p)
                        .map(|k| sum.coeff(k) + scaled.coeff(k))
                        .collect(),
                );
            }
            let b = beta_explicit(p, &rat(0, 1));
            let expected: Vec<Rational> = (0..=p).map(|k| sum.coeff(k)).collect();
            assert_eq!(b.betas(), expected.as_slice(), "p={p}");
        }
    }

    #[test]
    fn float_field_stays_close_to_exact() {
        let exact = beta_explicit(4, &rat(3, 7));
        let float = beta_explicit(4, &(3.0 / 7.0));
        for (e, f) in exact.betas().iter().zip(float.betas()) {
            assert!((e.to_f64() - f).abs() < 1e-13);
        }
    }

    #[test]
    fn doc_round_trip() {
        let spec = GeneratorSpec::new(rat(1, 2), 2, rat(1, 1)).unwrap();
        let b = spec.beta().unwrap();
        let doc = BetaVectorDoc::from_parts(&spec, &b);
        let json = serde_json::to_string(&doc).unwrap();
        let back: BetaVectorDoc = serde_json::from_str(&json).unwrap();
        let (spec2, b2) = back.to_parts().unwrap();
        assert_eq!(spec, spec2);
        assert_eq!(b, b2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn explicit_equals_vandermonde(p in 1usize..=8, num in -24i64..24, den in 1i64..8) {
            let lambda = rat(num, den);
            prop_assert_eq!(beta_explicit(p, &lambda), beta_vandermonde(p, &lambda));
        }

        #[test]
        fn moments_vanish_and_betas_sum_to_zero(p in 1usize..=6, num in -12i64..12, den in 1i64..6) {
            let lambda = rat(num, den);
            let b = beta_explicit(p, &lambda);
            let sum = b.betas().iter().fold(rat(0, 1), |acc, x| acc + x.clone());
            prop_assert_eq!(sum, rat(0, 1));
            for n in 0..=p {
                prop_assert_eq!(moment_residual(&b, n), rat(0, 1));
            }
        }
    }
}
