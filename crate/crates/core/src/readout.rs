//! Ridge-regression readout: the only trained layer.
//!
//! The fit solves (X^T X + lambda I) W = X^T Y in feature space via a
//! symmetric positive-definite factorization. Feature space is F = bias +
//! nodes + inputs, which stays at or below the sample count for every task
//! here, and the Gram matrix is SPD for any lambda > 0.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// serde adapters giving matrices a stable row-major JSON schema:
/// {"rows": r, "cols": c, "data": [row-major entries]}.
pub mod mat_serde {
    use nalgebra::DMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                data.push(m[(r, c)]);
            }
        }
        Repr {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<DMatrix<f64>, D::Error> {
        let repr = Repr::deserialize(d)?;
        if repr.data.len() != repr.rows * repr.cols {
            return Err(serde::de::Error::custom(format!(
                "matrix data length {} does not match {}x{}",
                repr.data.len(),
                repr.rows,
                repr.cols
            )));
        }
        Ok(DMatrix::from_row_slice(repr.rows, repr.cols, &repr.data))
    }
}

/// Shape of the feature rows a readout was trained on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureLayout {
    /// Leading constant-1 column present?
    pub bias: bool,
    /// Raw input columns appended after the node activations?
    pub input: bool,
    pub n_nodes: usize,
    pub n_inputs: usize,
}

impl FeatureLayout {
    pub fn width(&self) -> usize {
        usize::from(self.bias) + self.n_nodes + if self.input { self.n_inputs } else { 0 }
    }
}

/// Trained readout: y = W_out * features.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReadoutWeights {
    /// n_y x F.
    #[serde(with = "mat_serde")]
    pub w_out: DMatrix<f64>,
    pub layout: FeatureLayout,
    /// Regularization actually applied (after any jitter escalation).
    pub lambda_used: f64,
}

/// Readout training knobs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RidgeConfig {
    /// None picks the scale-aware default 1e-6 * trace(X^T X) / F.
    pub lambda: Option<f64>,
    /// Leading reservoir steps discarded before harvesting features.
    pub washout: usize,
}

impl Default for RidgeConfig {
    fn default() -> Self {
        Self {
            lambda: None,
            washout: 100,
        }
    }
}

impl RidgeConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.lambda {
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::Config(format!(
                    "ridge.lambda must be finite and >= 0, got {l}"
                )));
            }
        }
        Ok(())
    }
}

fn check_finite(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{what} contains non-finite values")));
    }
    Ok(())
}

/// Fit W_out minimizing |X W^T - Y|^2 + lambda |W|^2.
///
/// `lambda = None` uses the scale-aware default. If the factorization fails
/// (lambda 0 on rank-deficient data) the jitter is escalated by up to three
/// decades from 1e-12 * trace/F; the lambda actually used is reported in the
/// result.
pub fn ridge_fit(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    lambda: Option<f64>,
    layout: FeatureLayout,
) -> Result<ReadoutWeights> {
    if x.nrows() == 0 {
        return Err(Error::Dimension("ridge fit needs at least one row".into()));
    }
    if x.nrows() != y.nrows() {
        return Err(Error::Dimension(format!(
            "feature rows {} != target rows {}",
            x.nrows(),
            y.nrows()
        )));
    }
    if x.ncols() != layout.width() {
        return Err(Error::Dimension(format!(
            "feature width {} does not match layout width {}",
            x.ncols(),
            layout.width()
        )));
    }
    if let Some(l) = lambda {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::Domain(format!(
                "lambda must be finite and >= 0, got {l}"
            )));
        }
    }
    check_finite(x, "feature matrix")?;
    check_finite(y, "target matrix")?;

    let f = x.ncols();
    let gram = x.tr_mul(x);
    let xty = x.tr_mul(y);
    let trace = gram.trace();
    let lambda0 = lambda.unwrap_or(1e-6 * trace / f as f64);
    let jitter = 1e-12 * trace / f as f64;

    let mut attempts = vec![lambda0];
    for decade in 0..=3 {
        let l = lambda0.max(jitter * 10f64.powi(decade));
        if !attempts.contains(&l) {
            attempts.push(l);
        }
    }

    for lam in attempts {
        let mut g = gram.clone();
        for i in 0..f {
            g[(i, i)] += lam;
        }
        if let Some(chol) = Cholesky::new(g) {
            let w = chol.solve(&xty); // F x n_y
            return Ok(ReadoutWeights {
                w_out: w.transpose(),
                layout,
                lambda_used: lam,
            });
        }
    }
    Err(Error::Factorization(format!(
        "Gram matrix not positive definite after jitter escalation (trace {trace:.3e})"
    )))
}

/// Batch prediction: one output row per feature row.
pub fn predict(readout: &ReadoutWeights, features: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if features.ncols() != readout.layout.width() {
        return Err(Error::Dimension(format!(
            "feature width {} does not match trained layout width {}",
            features.ncols(),
            readout.layout.width()
        )));
    }
    Ok(features * readout.w_out.transpose())
}

/// Single feature vector prediction.
pub fn predict_one(readout: &ReadoutWeights, features: &[f64]) -> Result<DVector<f64>> {
    if features.len() != readout.layout.width() {
        return Err(Error::Dimension(format!(
            "feature width {} does not match trained layout width {}",
            features.len(),
            readout.layout.width()
        )));
    }
    Ok(&readout.w_out * DVector::from_row_slice(features))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_layout(width: usize) -> FeatureLayout {
        FeatureLayout {
            bias: false,
            input: false,
            n_nodes: width,
            n_inputs: 0,
        }
    }

    #[test]
    fn identity_data_recovers_identity() {
        let x = DMatrix::identity(3, 3);
        let y = DMatrix::identity(3, 3);
        let r = ridge_fit(&x, &y, Some(0.0), plain_layout(3)).unwrap();
        assert!((&r.w_out - DMatrix::identity(3, 3)).abs().max() < 1e-12);
    }

    #[test]
    fn exact_scalar_line() {
        let x = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let y = DMatrix::from_column_slice(3, 1, &[2.0, 4.0, 6.0]);
        let r = ridge_fit(&x, &y, Some(0.0), plain_layout(1)).unwrap();
        assert!((r.w_out[(0, 0)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_ridge_closed_form() {
        // w = sum(xy) / (sum(x^2) + lambda) = 28/15
        let x = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let y = DMatrix::from_column_slice(3, 1, &[2.0, 4.0, 6.0]);
        let r = ridge_fit(&x, &y, Some(1.0), plain_layout(1)).unwrap();
        assert!((r.w_out[(0, 0)] - 28.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn huge_lambda_shrinks_to_zero() {
        let x = DMatrix::from_column_slice(4, 1, &[1.0, -2.0, 0.5, 3.0]);
        let y = DMatrix::from_column_slice(4, 1, &[1.0, 1.0, 1.0, 1.0]);
        let r = ridge_fit(&x, &y, Some(1e12), plain_layout(1)).unwrap();
        assert!(r.w_out[(0, 0)].abs() < 1e-10);
    }

    #[test]
    fn normal_equation_residual_is_tiny() {
        let mut rng = crate::rng::CounterRng::new(1, 31);
        let x = DMatrix::from_fn(40, 6, |_, _| rng.next_signed());
        let y = DMatrix::from_fn(40, 2, |_, _| rng.next_signed());
        let lam = 1e-3;
        let r = ridge_fit(&x, &y, Some(lam), plain_layout(6)).unwrap();
        let gram = x.tr_mul(&x) + DMatrix::identity(6, 6) * lam;
        let xty = x.tr_mul(&y);
        let resid = (&gram * r.w_out.transpose() - &xty).norm();
        assert!(resid <= 1e-8 * xty.norm(), "resid={resid}");
    }

    #[test]
    fn shrinkage_is_monotone_in_lambda() {
        let mut rng = crate::rng::CounterRng::new(2, 37);
        let x = DMatrix::from_fn(30, 5, |_, _| rng.next_signed());
        let y = DMatrix::from_fn(30, 1, |_, _| rng.next_signed());
        let mut prev = f64::INFINITY;
        for lam in [0.0, 1e-4, 1e-2, 1.0, 100.0] {
            let r = ridge_fit(&x, &y, Some(lam), plain_layout(5)).unwrap();
            let n = r.w_out.norm();
            assert!(n <= prev + 1e-12, "norm grew at lambda={lam}");
            prev = n;
        }
    }

    #[test]
    fn exact_recovery_with_zero_lambda() {
        let mut rng = crate::rng::CounterRng::new(3, 41);
        let x = DMatrix::from_fn(50, 4, |_, _| rng.next_signed());
        let w_true = DMatrix::from_fn(1, 4, |_, c| (c as f64 + 1.0) * 0.5);
        let y = &x * w_true.transpose();
        let r = ridge_fit(&x, &y, Some(0.0), plain_layout(4)).unwrap();
        assert!((&r.w_out - &w_true).norm() <= 1e-8 * w_true.norm());
    }

    #[test]
    fn prediction_is_linear() {
        let mut rng = crate::rng::CounterRng::new(4, 43);
        let r = ReadoutWeights {
            w_out: DMatrix::from_fn(2, 5, |_, _| rng.next_signed()),
            layout: plain_layout(5),
            lambda_used: 0.0,
        };
        let f1: Vec<f64> = (0..5).map(|_| rng.next_signed()).collect();
        let f2: Vec<f64> = (0..5).map(|_| rng.next_signed()).collect();
        let sum: Vec<f64> = f1.iter().zip(&f2).map(|(a, b)| a + b).collect();
        let lhs = predict_one(&r, &sum).unwrap();
        let rhs = predict_one(&r, &f1).unwrap() + predict_one(&r, &f2).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn zero_readout_predicts_zero() {
        let r = ReadoutWeights {
            w_out: DMatrix::zeros(1, 3),
            layout: plain_layout(3),
            lambda_used: 0.0,
        };
        let out = predict_one(&r, &[5.0, -2.0, 7.0]).unwrap();
        assert_eq!(out[0], 0.0);
    }

    #[test]
    fn layout_mismatch_is_rejected() {
        let r = ReadoutWeights {
            w_out: DMatrix::zeros(1, 3),
            layout: plain_layout(3),
            lambda_used: 0.0,
        };
        assert!(predict_one(&r, &[1.0, 2.0]).is_err());
        let x = DMatrix::zeros(4, 2);
        assert!(predict(&r, &x).is_err());
    }

    #[test]
    fn rank_deficient_data_escalates_jitter() {
        // duplicated column makes X^T X singular at lambda = 0
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
        let y = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let r = ridge_fit(&x, &y, Some(0.0), plain_layout(2)).unwrap();
        assert!(r.lambda_used > 0.0);
        assert!(r.w_out.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn dimension_errors() {
        let x = DMatrix::zeros(3, 2);
        let y = DMatrix::zeros(4, 1);
        assert!(ridge_fit(&x, &y, Some(0.1), plain_layout(2)).is_err());
        let y3 = DMatrix::zeros(3, 1);
        assert!(ridge_fit(&x, &y3, Some(0.1), plain_layout(5)).is_err());
        assert!(ridge_fit(&x, &y3, Some(f64::NAN), plain_layout(2)).is_err());
    }
}
