//! Maximum-likelihood post-processing.
//!
//! After a log-likelihood maximization the inverse Hessian reported by
//! the optimizer estimates the variance-covariance matrix of the
//! parameters. This module extracts it, derives standard errors, Wald
//! statistics, chi-square(1) p-values and 95% confidence intervals.

use crate::linalg::PackedSymmetric;
use crate::optimizer::OptimReport;
use thiserror::Error;

/// 97.5% standard-normal quantile, hard-coded for bit-stable intervals.
pub const Z_975: f64 = 1.959964;

const LN_SQRT_PI: f64 = 0.5723649429247001;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MleError {
    /// The optimizer could not invert the Hessian at the final point.
    #[error("variance-covariance unavailable: Hessian not invertible at the optimum")]
    MissingVcov,
    /// Some estimated variances are not positive. Usually a sign that
    /// parameters sit on the boundary of the parameter space; fixing
    /// them and re-running the optimization is the usual remedy.
    #[error("non-positive variance for parameter(s) {indices:?}; consider fixing boundary parameters")]
    NonPositiveVariance { indices: Vec<usize> },
    #[error("chi-square statistic must be non-negative, got {0}")]
    NegativeStatistic(f64),
}

/// Per-parameter summary line.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub coef: f64,
    pub se: f64,
    pub wald: f64,
    pub p: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Coefficient table plus the quantities it was derived from.
#[derive(Debug, Clone)]
pub struct MleSummary {
    pub rows: Vec<SummaryRow>,
    pub loglik: f64,
    pub vcov: PackedSymmetric,
}

/// Variance-covariance matrix from a maximization report.
///
/// Fails when the report carries no inverse Hessian or when a diagonal
/// entry is not positive; the error names the offending parameters.
pub fn vcov_from_report(report: &OptimReport) -> Result<PackedSymmetric, MleError> {
    let v = report.v.as_ref().ok_or(MleError::MissingVcov)?;
    let bad: Vec<usize> = (0..v.dim()).filter(|&i| v.get(i, i) <= 0.0).collect();
    if !bad.is_empty() {
        return Err(MleError::NonPositiveVariance { indices: bad });
    }
    Ok(v.clone())
}

/// Full summary: coefficient, SE, Wald, p-value, 95% CI per parameter.
pub fn summarize(report: &OptimReport) -> Result<MleSummary, MleError> {
    let vcov = vcov_from_report(report)?;
    let rows = report
        .b
        .iter()
        .enumerate()
        .map(|(j, &coef)| {
            let se = vcov.get(j, j).sqrt();
            let ratio = coef / se;
            let wald = ratio * ratio;
            let p = chisq1_upper_tail(wald).expect("wald is non-negative");
            SummaryRow {
                coef,
                se,
                wald,
                p,
                ci_low: coef - Z_975 * se,
                ci_high: coef + Z_975 * se,
            }
        })
        .collect();
    Ok(MleSummary {
        rows,
        loglik: report.fn_value,
        vcov,
    })
}

/// Upper tail of the chi-square distribution with one degree of
/// freedom: `P(X > x) = erfc(sqrt(x/2))`.
pub fn chisq1_upper_tail(x: f64) -> Result<f64, MleError> {
    if x < 0.0 || x.is_nan() {
        return Err(MleError::NegativeStatistic(x));
    }
    Ok(erfc((x / 2.0).sqrt()))
}

/// Complementary error function.
///
/// Evaluated through the regularized incomplete gamma function
/// `erfc(z) = Q(1/2, z^2)` with the classic series / continued-fraction
/// split, giving better than 1e-13 relative accuracy over the range
/// needed for p-values (z up to ~12 covers chi-square statistics beyond
/// 250).
pub fn erfc(z: f64) -> f64 {
    if z < 0.0 {
        return 2.0 - erfc(-z);
    }
    if z == 0.0 {
        return 1.0;
    }
    let x = z * z;
    if x < 1.5 {
        1.0 - gamma_p_half(x)
    } else {
        gamma_q_half_cf(x)
    }
}

/// Series for the regularized lower incomplete gamma P(1/2, x).
fn gamma_p_half(x: f64) -> f64 {
    let a = 0.5;
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..200 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln() - LN_SQRT_PI).exp()
}

/// Modified Lentz continued fraction for the regularized upper
/// incomplete gamma Q(1/2, x), valid for x >= 1.5.
fn gamma_q_half_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let a = 0.5;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..200 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - LN_SQRT_PI).exp() * h
}
