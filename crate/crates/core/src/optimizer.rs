//! The Marquardt-Levenberg iteration loop.
//!
//! Each iteration inflates the Hessian diagonal with
//! `H~[ii] = H[ii] + lambda * ((1 - eta) * |H[ii]| + eta * tr(H))`
//! until the Cholesky factorization succeeds, solves for the Newton
//! direction, and line-searches along it. `lambda` grows on failure
//! (factorization or line search) and shrinks on acceptance, so the
//! step matrix approaches the true Hessian near the optimum. The trace
//! term is dropped for an iteration whose Hessian has non-positive
//! trace, where it would deflate instead of inflate.
//!
//! Convergence demands all three of:
//! - parameter stability `sum((theta' - theta)^2) < epsa`,
//! - objective stability `|F' - F| < epsb`,
//! - relative distance to minimum `g^T H^-1 g / m < epsd`,
//!
//! the last evaluated with the uninflated Hessian and set to
//! `1 + epsd` when that Hessian is not positive definite, which is what
//! rejects saddle points.

use crate::derivatives::{
    hessian_from_gradient, numeric_pass, Blinding, DerivativeError, BLINDING_SENTINEL,
};
use crate::linalg::{cholesky, invert, PackedSymmetric};
use crate::pool::WorkerPool;
use crate::rng::SplitMix64;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type Gradient = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
pub type Hessian = Arc<dyn Fn(&[f64]) -> PackedSymmetric + Send + Sync>;

/// Optimization sense of a [`Problem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Reference optimum attached to a test problem.
#[derive(Debug, Clone)]
pub struct KnownOptimum {
    pub f: f64,
    pub theta: Option<Vec<f64>>,
}

/// An objective with optional analytic derivatives and metadata.
///
/// The objective (and gradient) must be pure functions of the parameter
/// vector plus immutable captured data: the worker pool calls them
/// concurrently.
#[derive(Clone)]
pub struct Problem {
    pub name: String,
    pub dim: usize,
    pub objective: Objective,
    pub gradient: Option<Gradient>,
    pub hessian: Option<Hessian>,
    pub sense: Sense,
    pub x0: Vec<f64>,
    pub known_optimum: Option<KnownOptimum>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("sense", &self.sense)
            .field("x0", &self.x0)
            .field("analytic_gradient", &self.gradient.is_some())
            .field("analytic_hessian", &self.hessian.is_some())
            .finish()
    }
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            objective: Arc::new(objective),
            gradient: None,
            hessian: None,
            sense: Sense::Minimize,
            x0: vec![0.0; dim],
            known_optimum: None,
        }
    }

    pub fn with_gradient(
        mut self,
        g: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn with_hessian(
        mut self,
        h: impl Fn(&[f64]) -> PackedSymmetric + Send + Sync + 'static,
    ) -> Self {
        self.hessian = Some(Arc::new(h));
        self
    }

    pub fn with_sense(mut self, sense: Sense) -> Self {
        self.sense = sense;
        self
    }

    pub fn with_start(mut self, x0: Vec<f64>) -> Self {
        assert_eq!(x0.len(), self.dim);
        self.x0 = x0;
        self
    }

    pub fn with_known_optimum(mut self, f: f64, theta: Option<Vec<f64>>) -> Self {
        self.known_optimum = Some(KnownOptimum { f, theta });
        self
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

/// Tolerances, iteration caps and the lambda/eta schedule.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub maxiter: usize,
    pub epsa: f64,
    pub epsb: f64,
    pub epsd: f64,
    pub minimize: bool,
    pub blinding: bool,
    pub multiple_try: usize,
    pub nproc: usize,
    pub lambda0: f64,
    pub lambda_grow: f64,
    pub lambda_shrink: f64,
    pub lambda_max: f64,
    pub eta: f64,
    pub max_linesearch: usize,
    pub print_every: Option<usize>,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            maxiter: 500,
            epsa: 1e-4,
            epsb: 1e-4,
            epsd: 1e-4,
            minimize: true,
            blinding: true,
            multiple_try: 25,
            nproc: 1,
            lambda0: 1e-3,
            lambda_grow: 10.0,
            lambda_shrink: 0.1,
            lambda_max: 1e12,
            eta: 0.1,
            max_linesearch: 30,
            print_every: None,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), OptimError> {
        let bad = |msg: &str| Err(OptimError::InvalidConfig(msg.to_string()));
        if self.maxiter == 0 {
            return bad("maxiter must be positive");
        }
        if !(self.epsa > 0.0 && self.epsb > 0.0 && self.epsd > 0.0) {
            return bad("epsa, epsb and epsd must be positive");
        }
        if !(self.lambda0 > 0.0 && self.lambda0 <= self.lambda_max) {
            return bad("lambda0 must be positive and not exceed lambda_max");
        }
        if self.lambda_grow <= 1.0 {
            return bad("lambda_grow must exceed 1");
        }
        if !(self.lambda_shrink > 0.0 && self.lambda_shrink < 1.0) {
            return bad("lambda_shrink must lie in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return bad("eta must lie in [0, 1]");
        }
        if self.max_linesearch == 0 {
            return bad("max_linesearch must be positive");
        }
        if self.nproc == 0 {
            return bad("nproc must be positive");
        }
        Ok(())
    }
}

/// Why the optimizer stopped. `code()` gives the numeric status used in
/// reports: 1 converged, 2 iteration cap, 3 inflation failure, 4
/// unrecoverable non-finite objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopCode {
    Converged,
    MaxIterations,
    InflationFailure,
    NonFiniteObjective,
}

impl StopCode {
    pub fn code(self) -> u8 {
        match self {
            StopCode::Converged => 1,
            StopCode::MaxIterations => 2,
            StopCode::InflationFailure => 3,
            StopCode::NonFiniteObjective => 4,
        }
    }
}

impl fmt::Display for StopCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            StopCode::Converged => "convergence criteria satisfied",
            StopCode::MaxIterations => "maximum number of iterations reached",
            StopCode::InflationFailure => "inflation failed to produce an acceptable step",
            StopCode::NonFiniteObjective => "objective non-finite and unrecoverable",
        };
        f.write_str(msg)
    }
}

/// One accepted iteration of the trace.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub k: usize,
    /// Objective in the caller's sense.
    pub objective: f64,
    /// Parameter stability: sum of squared parameter changes.
    pub step_sq: f64,
    /// Objective stability: |F(k+1) - F(k)|.
    pub obj_delta: f64,
    pub rdm: f64,
    pub lambda: f64,
    pub n_evals: usize,
    /// Accepted step length.
    pub delta: f64,
}

/// Final state of a [`minimize`]/[`maximize`] call.
#[derive(Debug, Clone)]
pub struct OptimReport {
    /// Final parameter vector.
    pub b: Vec<f64>,
    /// Final objective in the caller's sense (a maximized value is the
    /// maximum itself, not its negative).
    pub fn_value: f64,
    /// Iterations performed.
    pub ni: usize,
    /// Final parameter-stability criterion.
    pub ca: f64,
    /// Final objective-stability criterion.
    pub cb: f64,
    /// Final relative distance to minimum/maximum.
    pub rdm: f64,
    pub istop: StopCode,
    /// Inverse of the final uninflated Hessian of the internal
    /// minimization objective, when that Hessian is invertible. For a
    /// maximization this is the variance-covariance estimator.
    pub v: Option<PackedSymmetric>,
    pub trace: Vec<IterationRecord>,
    /// Final gradient in the caller's sense.
    pub grad: Vec<f64>,
}

impl OptimReport {
    pub fn converged(&self) -> bool {
        self.istop == StopCode::Converged
    }
}

#[derive(Debug, Error)]
pub enum OptimError {
    #[error("start vector has length {got} but the problem has {expected} parameters")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Fletcher-style diagonal inflation:
/// `H~[ii] = H[ii] + lambda * ((1 - eta) * |H[ii]| + eta * tr(H))`.
/// Off-diagonal entries are untouched.
pub fn inflate(h: &PackedSymmetric, lambda: f64, eta: f64) -> PackedSymmetric {
    let tr = h.trace();
    let mut out = h.clone();
    for i in 0..h.dim() {
        let hii = h.get(i, i);
        out.set(i, i, hii + lambda * ((1.0 - eta) * hii.abs() + eta * tr));
    }
    out
}

/// Relative distance to minimum: `g^T H^-1 g / m`, or `1 + epsd` when
/// the (uninflated) Hessian is not positive definite or the quadratic
/// form comes out negative.
pub fn rdm(g: &[f64], h: &PackedSymmetric, epsd: f64) -> f64 {
    debug_assert_eq!(g.len(), h.dim());
    let fail = 1.0 + epsd;
    match cholesky(h) {
        Ok(f) if f.success() => match f.quadratic_form(g) {
            Ok(q) if q >= 0.0 => q / g.len() as f64,
            _ => fail,
        },
        _ => fail,
    }
}

/// Outcome of one line search along a fixed direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineSearchOutcome {
    Accepted { delta: f64, f_new: f64, n_evals: usize },
    /// No strict decrease found; the caller grows lambda and recomputes
    /// the direction.
    Failed { n_evals: usize },
}

fn point_along(theta: &[f64], dir: &[f64], delta: f64) -> Vec<f64> {
    theta
        .iter()
        .zip(dir)
        .map(|(t, d)| t + delta * d)
        .collect()
}

/// Vertex of the parabola through three samples, or None when degenerate.
fn parabola_vertex(x1: f64, y1: f64, x2: f64, y2: f64, x3: f64, y3: f64) -> Option<f64> {
    let den = (x2 - x1) * (y2 - y3) - (x2 - x3) * (y2 - y1);
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let v = x2 - 0.5 * ((x2 - x1).powi(2) * (y2 - y3) - (x2 - x3).powi(2) * (y2 - y1)) / den;
    v.is_finite().then_some(v)
}

/// Step-length search along `dir` from `theta`, where `f0 = f(theta)`.
///
/// The unit step is tried first. If it already decreases the objective
/// the step is extended (doubling) while the decrease keeps improving,
/// mirroring the reference implementation's extrapolating search;
/// otherwise the step is halved until a decrease appears. Either way a
/// single parabolic refinement through the best bracketing triple is
/// attempted, and the refined step is kept only when it beats the best
/// sampled point. Failure (no decrease within `max_trials` halvings)
/// tells the caller to grow lambda.
pub fn line_search<F: Fn(&[f64]) -> f64>(
    f: F,
    theta: &[f64],
    dir: &[f64],
    f0: f64,
    max_trials: usize,
) -> LineSearchOutcome {
    // non-finite candidate points never count as a decrease
    let eval = |delta: f64, n: &mut usize| -> f64 {
        let p = point_along(theta, dir, delta);
        if p.iter().any(|v| !v.is_finite()) {
            return f64::INFINITY;
        }
        *n += 1;
        f(&p)
    };
    let mut n_evals = 0;
    let f1 = eval(1.0, &mut n_evals);

    let refine =
        |triple: [(f64, f64); 3], best: (f64, f64), n: &mut usize| -> (f64, f64) {
            let [(xa, ya), (xb, yb), (xc, yc)] = triple;
            if let Some(v) = parabola_vertex(xa, ya, xb, yb, xc, yc) {
                // skip the re-evaluation when the vertex is the best sample itself
                if v > xa && v < xc && (v - best.0).abs() > 1e-12 * best.0.abs().max(1.0) {
                    let fv = eval(v, n);
                    if fv < best.1 {
                        return (v, fv);
                    }
                }
            }
            best
        };

    if f1 < f0 {
        // forward extension while strictly improving
        let mut samples = vec![(0.0, f0), (1.0, f1)];
        let (mut best_d, mut best_f) = (1.0, f1);
        for _ in 0..max_trials {
            let d = best_d * 2.0;
            let fd = eval(d, &mut n_evals);
            samples.push((d, fd));
            if fd < best_f {
                best_d = d;
                best_f = fd;
            } else {
                break;
            }
        }
        let i = samples.iter().position(|s| s.0 == best_d).unwrap();
        let (delta, f_new) = if i + 1 < samples.len() {
            refine(
                [samples[i - 1], samples[i], samples[i + 1]],
                (best_d, best_f),
                &mut n_evals,
            )
        } else {
            (best_d, best_f)
        };
        return LineSearchOutcome::Accepted {
            delta,
            f_new,
            n_evals,
        };
    }

    // halving ladder
    let mut delta = 1.0;
    let mut above = (1.0, f1); // most recent non-improving sample
    for _ in 0..max_trials {
        delta *= 0.5;
        let fd = eval(delta, &mut n_evals);
        if fd < f0 {
            let (d, f_new) = refine(
                [(0.0, f0), (delta, fd), above],
                (delta, fd),
                &mut n_evals,
            );
            return LineSearchOutcome::Accepted {
                delta: d,
                f_new,
                n_evals,
            };
        }
        above = (delta, fd);
    }
    LineSearchOutcome::Failed { n_evals }
}

/// Reshape a start whose objective is non-finite until it evaluates
/// finite, up to `tries` times.
///
/// Each attempt jitters the current candidate component-wise as
/// `b[j] <- b[j] * (1 + u) + w` with `u ~ U(-0.5, 0.5)` and
/// `w ~ U(-0.1, 0.1)` from the seeded stream (the additive term moves
/// components stuck at zero). Returns the first finite candidate and
/// the number of objective evaluations spent, or None when exhausted.
pub fn multiple_try_init<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    tries: usize,
    seed: u64,
) -> Option<(Vec<f64>, f64, usize)> {
    let f0 = f(x0);
    if f0.is_finite() {
        return Some((x0.to_vec(), f0, 1));
    }
    let mut rng = SplitMix64::new(seed);
    let mut cand = x0.to_vec();
    let mut n_evals = 1;
    for _ in 0..tries {
        for c in &mut cand {
            let u = rng.uniform(-0.5, 0.5);
            let w = rng.uniform(-0.1, 0.1);
            *c = *c * (1.0 + u) + w;
        }
        let fc = f(&cand);
        n_evals += 1;
        if fc.is_finite() {
            return Some((cand, fc, n_evals));
        }
    }
    None
}

/// Minimize `problem.objective` from `x0`.
pub fn minimize(
    problem: &Problem,
    x0: &[f64],
    config: &OptimizerConfig,
    pool: &WorkerPool,
) -> Result<OptimReport, OptimError> {
    run(problem, x0, config, pool, false)
}

/// Maximize `problem.objective` from `x0`.
///
/// Implemented as the minimization of the negated objective; the
/// reported `fn_value` and `grad` are flipped back to the caller's
/// sense, while `v` stays the inverse Hessian of the internal
/// minimization (the variance-covariance estimator of a log-likelihood).
pub fn maximize(
    problem: &Problem,
    x0: &[f64],
    config: &OptimizerConfig,
    pool: &WorkerPool,
) -> Result<OptimReport, OptimError> {
    run(problem, x0, config, pool, true)
}

/// Dispatch on `config.minimize`.
pub fn optimize(
    problem: &Problem,
    x0: &[f64],
    config: &OptimizerConfig,
    pool: &WorkerPool,
) -> Result<OptimReport, OptimError> {
    if config.minimize {
        minimize(problem, x0, config, pool)
    } else {
        maximize(problem, x0, config, pool)
    }
}

struct Derivs {
    g: Vec<f64>,
    h: PackedSymmetric,
    n_evals: usize,
}

fn run(
    problem: &Problem,
    x0: &[f64],
    config: &OptimizerConfig,
    pool: &WorkerPool,
    negate: bool,
) -> Result<OptimReport, OptimError> {
    config.validate()?;
    if x0.len() != problem.dim {
        return Err(OptimError::DimensionMismatch {
            expected: problem.dim,
            got: x0.len(),
        });
    }

    let sign = if negate { -1.0 } else { 1.0 };
    let raw = problem.objective.clone();
    // internal minimization objective, without blinding
    let obj = move |x: &[f64]| sign * raw(x);
    let blinding = if config.blinding {
        Blinding::Sentinel
    } else {
        Blinding::Off
    };
    // objective as seen by the line search: blinded when enabled
    let obj_ls = |x: &[f64]| {
        let v = obj(x);
        if !v.is_finite() && config.blinding {
            BLINDING_SENTINEL
        } else {
            v
        }
    };

    let analytic_grad: Option<Gradient> = problem.gradient.clone();
    let grad_internal = analytic_grad.map(|g| {
        move |x: &[f64]| -> Vec<f64> { g(x).iter().map(|v| sign * v).collect() }
    });
    let hess_internal = problem.hessian.clone().map(|h| {
        move |x: &[f64]| -> PackedSymmetric {
            let m = h(x);
            if negate {
                m.scaled(-1.0)
            } else {
                m
            }
        }
    });

    let derivs = |x: &[f64], fx: f64| -> Result<Derivs, DerivativeError> {
        match (&grad_internal, &hess_internal) {
            (Some(g), Some(hs)) => {
                let gv = check_gradient(g(x))?;
                Ok(Derivs {
                    g: gv,
                    h: hs(x),
                    n_evals: 0,
                })
            }
            (Some(g), None) => {
                let gv = check_gradient(g(x))?;
                let h = hessian_from_gradient(g, x, pool)?;
                Ok(Derivs {
                    g: gv,
                    h,
                    n_evals: 0,
                })
            }
            (None, _) => {
                let pass = numeric_pass(&obj_ls, x, fx, pool, blinding)?;
                Ok(Derivs {
                    g: pass.gradient,
                    h: pass.hessian,
                    n_evals: pass.n_evals,
                })
            }
        }
    };

    let mut report = Reporter {
        negate,
        trace: Vec::new(),
        print_every: config.print_every,
    };

    // initialization guard: reshape the start until the objective is finite
    let (mut x, mut f_cur, init_evals) =
        match multiple_try_init(&obj, x0, config.multiple_try, config.seed) {
            Some(v) => v,
            None => {
                return Ok(report.finish(
                    x0.to_vec(),
                    obj(x0),
                    0,
                    f64::INFINITY,
                    f64::INFINITY,
                    f64::INFINITY,
                    StopCode::NonFiniteObjective,
                    None,
                    vec![f64::NAN; problem.dim],
                ));
            }
        };

    let mut d = match derivs(&x, f_cur) {
        Ok(d) => d,
        Err(_) => {
            let grad = vec![f64::NAN; problem.dim];
            return Ok(report.finish(
                x,
                f_cur,
                0,
                f64::INFINITY,
                f64::INFINITY,
                f64::INFINITY,
                StopCode::NonFiniteObjective,
                None,
                grad,
            ));
        }
    };

    let mut lambda = config.lambda0;
    let (mut ca, mut cb, mut rdm_val) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    // evaluations not yet attributed to a trace record (initialization
    // plus the derivative pass at the start point)
    let mut pending_evals = init_evals + d.n_evals;

    for k in 1..=config.maxiter {
        let mut iter_evals = std::mem::take(&mut pending_evals);
        // find an acceptable positive-definite step, growing lambda on failure
        let (delta, f_new, dir) = loop {
            let eta_k = if d.h.trace() > 0.0 { config.eta } else { 0.0 };
            let inflated = inflate(&d.h, lambda, eta_k);
            let step = match cholesky(&inflated) {
                Ok(fact) if fact.success() => {
                    let neg_g: Vec<f64> = d.g.iter().map(|v| -v).collect();
                    fact.solve(&neg_g).ok()
                }
                _ => None,
            };
            if let Some(dir) = step {
                match line_search(&obj_ls, &x, &dir, f_cur, config.max_linesearch) {
                    LineSearchOutcome::Accepted {
                        delta,
                        f_new,
                        n_evals,
                    } => {
                        iter_evals += n_evals;
                        break (delta, f_new, dir);
                    }
                    LineSearchOutcome::Failed { n_evals } => {
                        iter_evals += n_evals;
                        // zero-step convergence: no numerically detectable
                        // decrease along the Newton ray and RDM already
                        // satisfied means the iterate is the optimum
                        let r0 = rdm(&d.g, &d.h, config.epsd);
                        if r0 < config.epsd {
                            let v = invert(&d.h).ok();
                            report.push(k, f_cur, 0.0, 0.0, r0, lambda, iter_evals.max(1), 0.0);
                            return Ok(report.finish(
                                x,
                                f_cur,
                                k,
                                0.0,
                                0.0,
                                r0,
                                StopCode::Converged,
                                v,
                                d.g,
                            ));
                        }
                    }
                }
            }
            lambda *= config.lambda_grow;
            if lambda > config.lambda_max {
                let v = invert(&d.h).ok();
                return Ok(report.finish(
                    x,
                    f_cur,
                    k,
                    ca,
                    cb,
                    rdm_val,
                    StopCode::InflationFailure,
                    v,
                    d.g,
                ));
            }
        };

        lambda = (lambda * config.lambda_shrink).max(1e-10);
        let x_new = point_along(&x, &dir, delta);
        ca = x_new
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        cb = (f_new - f_cur).abs();

        d = match derivs(&x_new, f_new) {
            Ok(d) => d,
            Err(_) => {
                return Ok(report.finish(
                    x_new,
                    f_new,
                    k,
                    ca,
                    cb,
                    rdm_val,
                    StopCode::NonFiniteObjective,
                    None,
                    vec![f64::NAN; problem.dim],
                ));
            }
        };
        iter_evals += d.n_evals;
        rdm_val = rdm(&d.g, &d.h, config.epsd);
        x = x_new;
        f_cur = f_new;
        report.push(k, f_cur, ca, cb, rdm_val, lambda, iter_evals.max(1), delta);

        if ca < config.epsa && cb < config.epsb && rdm_val < config.epsd {
            let v = invert(&d.h).ok();
            return Ok(report.finish(x, f_cur, k, ca, cb, rdm_val, StopCode::Converged, v, d.g));
        }
    }

    let v = invert(&d.h).ok();
    return Ok(report.finish(
        x,
        f_cur,
        config.maxiter,
        ca,
        cb,
        rdm_val,
        StopCode::MaxIterations,
        v,
        d.g,
    ));
}

fn check_gradient(g: Vec<f64>) -> Result<Vec<f64>, DerivativeError> {
    if let Some(param) = g.iter().position(|v| !v.is_finite()) {
        return Err(DerivativeError::NonFiniteGradient { param });
    }
    Ok(g)
}

struct Reporter {
    negate: bool,
    trace: Vec<IterationRecord>,
    print_every: Option<usize>,
}

impl Reporter {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        k: usize,
        f_internal: f64,
        step_sq: f64,
        obj_delta: f64,
        rdm: f64,
        lambda: f64,
        n_evals: usize,
        delta: f64,
    ) {
        let objective = if self.negate { -f_internal } else { f_internal };
        let rec = IterationRecord {
            k,
            objective,
            step_sq,
            obj_delta,
            rdm,
            lambda,
            n_evals,
            delta,
        };
        if let Some(p) = self.print_every {
            if p > 0 && k % p == 0 {
                println!(
                    "iter {:>4}  objective={:<15.8e} ca={:<11.4e} cb={:<11.4e} rdm={:<11.4e} lambda={:<9.3e} delta={:.4}",
                    rec.k, rec.objective, rec.step_sq, rec.obj_delta, rec.rdm, rec.lambda, rec.delta
                );
            }
        }
        self.trace.push(rec);
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        self,
        b: Vec<f64>,
        f_internal: f64,
        ni: usize,
        ca: f64,
        cb: f64,
        rdm: f64,
        istop: StopCode,
        v: Option<PackedSymmetric>,
        grad_internal: Vec<f64>,
    ) -> OptimReport {
        let sign = if self.negate { -1.0 } else { 1.0 };
        OptimReport {
            b,
            fn_value: sign * f_internal,
            ni,
            ca,
            cb,
            rdm,
            istop,
            v,
            trace: self.trace,
            grad: grad_internal.iter().map(|g| sign * g).collect(),
        }
    }
}

/// Evaluation batches for external callers that want the blinded
/// objective semantics of a given configuration.
pub fn blinded_objective(
    problem: &Problem,
    config: &OptimizerConfig,
) -> impl Fn(&[f64]) -> f64 + Send + Sync {
    let raw = problem.objective.clone();
    let blinding = config.blinding;
    move |x: &[f64]| {
        let v = raw(x);
        if !v.is_finite() && blinding {
            BLINDING_SENTINEL
        } else {
            v
        }
    }
}
