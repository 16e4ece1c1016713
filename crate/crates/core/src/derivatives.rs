//! Numerical derivatives with parallel evaluation and deterministic
//! assembly.
//!
//! Gradients use central differences, Hessians forward differences,
//! with the per-parameter step `h_j = max(1e-7, 1e-4 * |theta_j|)`.
//! A full numeric pass costs exactly `2m` objective evaluations for
//! the gradient plus `m(m+1)/2` for the Hessian: the Hessian stencil
//! reuses the gradient's forward bumps and the already known `f(theta)`.
//! With an analytic gradient the Hessian instead takes `2m` gradient
//! calls (central differences of the gradient, then symmetrized).

use crate::linalg::PackedSymmetric;
use crate::pool::WorkerPool;
use thiserror::Error;

/// Substitute for non-finite objective values when blinding is enabled,
/// in the internal minimization sense.
pub const BLINDING_SENTINEL: f64 = 500_000.0;

/// Policy for non-finite objective values inside an evaluation batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blinding {
    /// Non-finite values are an error.
    Off,
    /// Non-finite values are replaced by [`BLINDING_SENTINEL`] and flagged.
    Sentinel,
}

#[derive(Debug, Error, PartialEq)]
pub enum DerivativeError {
    /// The objective returned NaN or an infinity with blinding disabled.
    /// Indices identify the parameters whose bump points failed.
    #[error("objective returned non-finite values at bumps of parameter(s) {params:?}")]
    NonFiniteObjective { params: Vec<usize> },
    /// An analytic gradient returned a non-finite component.
    #[error("analytic gradient returned a non-finite component for parameter {param}")]
    NonFiniteGradient { param: usize },
}

/// Result of one objective batch: values aligned with the input points
/// regardless of worker scheduling, plus blinding bookkeeping.
#[derive(Debug, Clone)]
pub struct EvalBatch {
    pub values: Vec<f64>,
    pub blinded: Vec<bool>,
    pub n_nonfinite: usize,
}

/// Finite-difference step for one parameter value.
pub fn fd_step(theta_j: f64) -> f64 {
    (1e-4 * theta_j.abs()).max(1e-7)
}

fn steps(theta: &[f64]) -> Vec<f64> {
    theta.iter().copied().map(fd_step).collect()
}

fn bumped(theta: &[f64], j: usize, h: f64) -> Vec<f64> {
    let mut p = theta.to_vec();
    p[j] += h;
    p
}

/// Evaluate the objective at every point, dispatching across the pool.
///
/// With [`Blinding::Off`], any non-finite value aborts with an error
/// naming the failed point indices (the caller remaps them to
/// parameters). With [`Blinding::Sentinel`], failed entries carry the
/// sentinel and are flagged.
pub fn evaluate_batch<F>(
    f: &F,
    points: &[Vec<f64>],
    pool: &WorkerPool,
    blinding: Blinding,
) -> Result<EvalBatch, DerivativeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let raw = pool.map(points.len(), |i| f(&points[i]));
    let mut values = Vec::with_capacity(raw.len());
    let mut blinded = vec![false; raw.len()];
    let mut bad = Vec::new();
    for (i, v) in raw.into_iter().enumerate() {
        if v.is_finite() {
            values.push(v);
        } else {
            match blinding {
                Blinding::Off => {
                    bad.push(i);
                    values.push(v);
                }
                Blinding::Sentinel => {
                    values.push(BLINDING_SENTINEL);
                    blinded[i] = true;
                }
            }
        }
    }
    if !bad.is_empty() {
        return Err(DerivativeError::NonFiniteObjective { params: bad });
    }
    let n_nonfinite = blinded.iter().filter(|b| **b).count();
    Ok(EvalBatch {
        values,
        blinded,
        n_nonfinite,
    })
}

/// Gradient and Hessian from one combined numeric pass.
#[derive(Debug)]
pub struct NumericPass {
    pub gradient: Vec<f64>,
    pub hessian: PackedSymmetric,
    /// Objective evaluations issued: always `2m + m(m+1)/2`.
    pub n_evals: usize,
}

/// Central-difference gradient: `2m` evaluations.
pub fn numeric_gradient<F>(
    f: &F,
    theta: &[f64],
    pool: &WorkerPool,
    blinding: Blinding,
) -> Result<Vec<f64>, DerivativeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let (gradient, _, _) = gradient_with_bumps(f, theta, pool, blinding)?;
    Ok(gradient)
}

/// Gradient plus the forward-bump values needed by the Hessian stencil.
fn gradient_with_bumps<F>(
    f: &F,
    theta: &[f64],
    pool: &WorkerPool,
    blinding: Blinding,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), DerivativeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let m = theta.len();
    let h = steps(theta);
    let mut points = Vec::with_capacity(2 * m);
    for j in 0..m {
        points.push(bumped(theta, j, h[j]));
    }
    for j in 0..m {
        points.push(bumped(theta, j, -h[j]));
    }
    let batch = evaluate_batch(f, &points, pool, blinding).map_err(|e| remap_params(e, m))?;
    let forward = batch.values[..m].to_vec();
    let backward = &batch.values[m..];
    let gradient = (0..m)
        .map(|j| (forward[j] - backward[j]) / (2.0 * h[j]))
        .collect();
    Ok((gradient, forward, h))
}

fn remap_params(e: DerivativeError, m: usize) -> DerivativeError {
    match e {
        DerivativeError::NonFiniteObjective { params } => {
            let mut p: Vec<usize> = params.into_iter().map(|i| i % m).collect();
            p.dedup();
            DerivativeError::NonFiniteObjective { params: p }
        }
        other => other,
    }
}

/// Forward-difference Hessian reusing the gradient pass's forward bumps:
/// exactly `m(m+1)/2` fresh evaluations.
///
/// `H[i][j] = (f(t+hi+hj) - f(t+hi) - f(t+hj) + f(t)) / (hi*hj)` for `i <= j`.
pub fn numeric_hessian<F>(
    f: &F,
    theta: &[f64],
    f_at_theta: f64,
    forward_bumps: &[f64],
    h: &[f64],
    pool: &WorkerPool,
    blinding: Blinding,
) -> Result<PackedSymmetric, DerivativeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let m = theta.len();
    assert_eq!(forward_bumps.len(), m);
    let mut points = Vec::with_capacity(m * (m + 1) / 2);
    let mut pairs = Vec::with_capacity(points.capacity());
    for i in 0..m {
        for j in i..m {
            let mut p = bumped(theta, i, h[i]);
            p[j] += h[j];
            points.push(p);
            pairs.push((i, j));
        }
    }
    let batch = evaluate_batch(f, &points, pool, blinding).map_err(|e| match e {
        DerivativeError::NonFiniteObjective { params } => DerivativeError::NonFiniteObjective {
            params: params.into_iter().map(|k| pairs[k].0).collect(),
        },
        other => other,
    })?;
    let mut hess = PackedSymmetric::zeros(m);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let v = (batch.values[k] - forward_bumps[i] - forward_bumps[j] + f_at_theta)
            / (h[i] * h[j]);
        hess.set(i, j, v);
    }
    Ok(hess)
}

/// One full numeric derivative pass: gradient then Hessian with bump
/// reuse, `2m + m(m+1)/2` objective evaluations total.
pub fn numeric_pass<F>(
    f: &F,
    theta: &[f64],
    f_at_theta: f64,
    pool: &WorkerPool,
    blinding: Blinding,
) -> Result<NumericPass, DerivativeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let m = theta.len();
    let (gradient, forward, h) = gradient_with_bumps(f, theta, pool, blinding)?;
    let hessian = numeric_hessian(f, theta, f_at_theta, &forward, &h, pool, blinding)?;
    Ok(NumericPass {
        gradient,
        hessian,
        n_evals: 2 * m + m * (m + 1) / 2,
    })
}

/// Hessian by central differences of an analytic gradient: exactly `2m`
/// gradient calls. The raw column matrix is symmetrized as
/// `(H + H^T) / 2` before packing to remove rounding skew.
pub fn hessian_from_gradient<G>(
    g: &G,
    theta: &[f64],
    pool: &WorkerPool,
) -> Result<PackedSymmetric, DerivativeError>
where
    G: Fn(&[f64]) -> Vec<f64> + Sync,
{
    let m = theta.len();
    let h = steps(theta);
    let mut points = Vec::with_capacity(2 * m);
    for j in 0..m {
        points.push(bumped(theta, j, h[j]));
    }
    for j in 0..m {
        points.push(bumped(theta, j, -h[j]));
    }
    let grads = pool.map(points.len(), |i| g(&points[i]));
    for (i, gv) in grads.iter().enumerate() {
        assert_eq!(gv.len(), m, "gradient length must equal parameter count");
        if let Some(bad) = gv.iter().position(|v| !v.is_finite()) {
            let _ = bad;
            return Err(DerivativeError::NonFiniteGradient { param: i % m });
        }
    }
    // raw column j = (g(t+h_j e_j) - g(t-h_j e_j)) / (2 h_j)
    let col = |j: usize, i: usize| (grads[j][i] - grads[m + j][i]) / (2.0 * h[j]);
    Ok(PackedSymmetric::from_fn(m, |i, j| {
        0.5 * (col(j, i) + col(i, j))
    }))
}
