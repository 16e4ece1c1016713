//! Linear mixed model with a Gaussian random intercept: seeded
//! simulator, closed-form log-likelihood, analytic gradient, and CSV
//! serialization of the dataset.
//!
//! Per subject `i` with `n_i` measurements the marginal covariance is
//! `V_i = sigma_e^2 I + sigma_u^2 J` (J all ones). The rank-one
//! structure gives `O(n_i)` formulas instead of an `n_i x n_i`
//! factorization:
//!
//! ```text
//! log|V|   = (n_i - 1) log(se2) + log(se2 + n_i su2)
//! V^-1 r   = r / se2 - su2 / (se2 (se2 + n_i su2)) * sum(r) * 1
//! ```
//!
//! The parameter vector is `[beta.., sigma_u, sigma_e]`; both standard
//! deviations enter only through their squares, so the space is
//! genuinely unconstrained and a fit may legitimately return a negative
//! sigma (same likelihood as its absolute value).

use crate::linalg::PackedSymmetric;
use crate::mle::{summarize, MleError, MleSummary};
use crate::optimizer::{maximize, OptimError, OptimReport, OptimizerConfig, Problem, Sense};
use crate::pool::WorkerPool;
use crate::rng::SplitMix64;
use std::io::{BufRead, Write};
use std::sync::Arc;
use thiserror::Error;

/// Expected CSV header for LMM datasets.
pub const CSV_HEADER: &str = "i,t,X1,X3,Y";

/// Number of design columns: intercept, t, X1, X3, t*X1.
pub const N_DESIGN_COLS: usize = 5;

/// Stacked repeated-measures dataset ordered by subject.
#[derive(Debug, Clone, PartialEq)]
pub struct LmmData {
    /// Outcome, one entry per measurement.
    pub y: Vec<f64>,
    /// Design matrix, row-major, `n_cols` columns, rows aligned with `y`.
    pub x: Vec<f64>,
    pub n_cols: usize,
    /// Measurements per subject; sums to `y.len()`.
    pub ni: Vec<usize>,
}

impl LmmData {
    pub fn n_subjects(&self) -> usize {
        self.ni.len()
    }

    pub fn n_obs(&self) -> usize {
        self.y.len()
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.x[r * self.n_cols..(r + 1) * self.n_cols]
    }

    fn check(&self) {
        assert_eq!(self.ni.iter().sum::<usize>(), self.y.len());
        assert_eq!(self.x.len(), self.y.len() * self.n_cols);
        assert!(self.ni.iter().all(|&n| n >= 1));
    }

    /// Parameter count of the associated likelihood: columns + 2 sigmas.
    pub fn n_params(&self) -> usize {
        self.n_cols + 2
    }

    /// Multiply the outcome by a scalar (used by scale-robustness checks).
    pub fn scaled_outcome(&self, c: f64) -> LmmData {
        LmmData {
            y: self.y.iter().map(|v| c * v).collect(),
            x: self.x.clone(),
            n_cols: self.n_cols,
            ni: self.ni.clone(),
        }
    }
}

/// Simulate `n_subjects` subjects observed at t = 0..ni_each-1 with
/// design columns [1, t, X1, X3, t*X1].
///
/// Covariates and effects per subject: X1 ~ Bernoulli(0.5),
/// X3 ~ N(0, 1), random intercept u ~ N(0, sigma_u^2); measurement
/// noise N(0, sigma_e^2) inside the time loop. The draw order is fixed
/// (subject loop outer, time loop inner) so a seed pins the dataset
/// bit-for-bit.
pub fn simulate_lmm(
    n_subjects: usize,
    ni_each: usize,
    beta: &[f64],
    sigma_u: f64,
    sigma_e: f64,
    seed: u64,
) -> LmmData {
    assert!(n_subjects >= 1 && ni_each >= 1);
    assert_eq!(beta.len(), N_DESIGN_COLS, "expected coefficients for [1, t, X1, X3, t*X1]");
    assert!(sigma_u >= 0.0 && sigma_e >= 0.0);
    let mut rng = SplitMix64::new(seed);
    let mut y = Vec::with_capacity(n_subjects * ni_each);
    let mut x = Vec::with_capacity(n_subjects * ni_each * N_DESIGN_COLS);
    for _ in 0..n_subjects {
        let x1 = if rng.bernoulli(0.5) { 1.0 } else { 0.0 };
        let x3 = rng.normal();
        let u = rng.normal() * sigma_u;
        for t in 0..ni_each {
            let t = t as f64;
            let row = [1.0, t, x1, x3, t * x1];
            let mean: f64 = row.iter().zip(beta).map(|(a, b)| a * b).sum();
            let eps = rng.normal() * sigma_e;
            y.push(mean + u + eps);
            x.extend_from_slice(&row);
        }
    }
    let data = LmmData {
        y,
        x,
        n_cols: N_DESIGN_COLS,
        ni: vec![ni_each; n_subjects],
    };
    data.check();
    data
}

/// Log-likelihood of the random-intercept LMM at `b = [beta.., su, se]`.
///
/// Returns a non-finite value when `sigma_e == 0` (the optimizer's
/// blinding path handles it).
pub fn loglik_lmm(b: &[f64], data: &LmmData) -> f64 {
    let p = data.n_cols;
    assert_eq!(b.len(), p + 2, "parameter layout is [beta.., sigma_u, sigma_e]");
    let (beta, su, se) = (&b[..p], b[p], b[p + 1]);
    let su2 = su * su;
    let se2 = se * se;
    let ln_tau = (2.0 * std::f64::consts::PI).ln();
    let mut ll = 0.0;
    let mut pos = 0;
    for &ni in &data.ni {
        let nif = ni as f64;
        let a = se2 + nif * su2;
        let mut rss = 0.0;
        let mut rsum = 0.0;
        for r in pos..pos + ni {
            let mean: f64 = data.row(r).iter().zip(beta).map(|(x, c)| x * c).sum();
            let resid = data.y[r] - mean;
            rss += resid * resid;
            rsum += resid;
        }
        let logdet = (nif - 1.0) * se2.ln() + a.ln();
        let quad = rss / se2 - su2 * rsum * rsum / (se2 * a);
        ll += -0.5 * (nif * ln_tau + logdet + quad);
        pos += ni;
    }
    ll
}

/// Analytic gradient of [`loglik_lmm`] in the `[beta.., su, se]` layout.
pub fn grad_lmm(b: &[f64], data: &LmmData) -> Vec<f64> {
    let p = data.n_cols;
    assert_eq!(b.len(), p + 2);
    let (beta, su, se) = (&b[..p], b[p], b[p + 1]);
    let su2 = su * su;
    let se2 = se * se;
    let mut g_beta = vec![0.0; p];
    let mut g_su2 = 0.0; // d ll / d su^2
    let mut g_se2 = 0.0; // d ll / d se^2
    let mut pos = 0;
    for &ni in &data.ni {
        let nif = ni as f64;
        let a = se2 + nif * su2;
        let c = su2 / (se2 * a);
        let mut rss = 0.0;
        let mut rsum = 0.0;
        let mut xtr = vec![0.0; p];
        let mut xcol = vec![0.0; p];
        for r in pos..pos + ni {
            let row = data.row(r);
            let mean: f64 = row.iter().zip(beta).map(|(x, c)| x * c).sum();
            let resid = data.y[r] - mean;
            rss += resid * resid;
            rsum += resid;
            for (k, v) in row.iter().enumerate() {
                xtr[k] += v * resid;
                xcol[k] += v;
            }
        }
        // beta block: X' V^-1 r = X'r / se2 - c * sum(r) * X'1
        for k in 0..p {
            g_beta[k] += xtr[k] / se2 - c * rsum * xcol[k];
        }
        // d/d su2: 0.5 * (sum(r)^2 / a^2 - n / a)
        g_su2 += 0.5 * (rsum * rsum / (a * a) - nif / a);
        // d/d se2: 0.5 * (||V^-1 r||^2 - ((n - 1)/se2 + 1/a))
        let vinv_norm2 = rss / (se2 * se2) - 2.0 * c * rsum * rsum / se2 + c * c * rsum * rsum * nif;
        g_se2 += 0.5 * (vinv_norm2 - ((nif - 1.0) / se2 + 1.0 / a));
        pos += ni;
    }
    let mut g = g_beta;
    g.push(2.0 * su * g_su2);
    g.push(2.0 * se * g_se2);
    g
}

/// Wrap a dataset as a maximization [`Problem`] with analytic gradient.
///
/// The default start is the trivial point: zero coefficients, unit
/// standard deviations.
pub fn lmm_problem(data: Arc<LmmData>, analytic_gradient: bool) -> Problem {
    data.check();
    let m = data.n_params();
    let d1 = data.clone();
    let mut p = Problem::new("lmm", m, move |b: &[f64]| loglik_lmm(b, &d1))
        .with_sense(Sense::Maximize)
        .with_start(trivial_start(m));
    if analytic_gradient {
        let d2 = data;
        p = p.with_gradient(move |b: &[f64]| grad_lmm(b, &d2));
    }
    p
}

/// Trivial start: zeros for coefficients, ones for both sigmas.
pub fn trivial_start(n_params: usize) -> Vec<f64> {
    let mut s = vec![0.0; n_params];
    s[n_params - 2] = 1.0;
    s[n_params - 1] = 1.0;
    s
}

/// A fitted LMM: optimizer report with canonical (non-negative) sigmas
/// plus the derived summary.
#[derive(Debug, Clone)]
pub struct LmmFit {
    pub report: OptimReport,
    pub summary: Option<MleSummary>,
    pub summary_error: Option<MleError>,
}

#[derive(Debug, Error)]
pub enum LmmFitError {
    #[error(transparent)]
    Optim(#[from] OptimError),
}

/// Maximize the likelihood and canonicalize the sign of both sigma
/// parameters.
///
/// The likelihood is even in each sigma, so flipping a negative sigma
/// to its absolute value leaves the value unchanged and transforms the
/// variance-covariance matrix exactly (`v -> D v D` with `D` the sign
/// diagonal).
pub fn fit_lmm(
    data: Arc<LmmData>,
    x0: &[f64],
    config: &OptimizerConfig,
    pool: &WorkerPool,
    analytic_gradient: bool,
) -> Result<LmmFit, LmmFitError> {
    let problem = lmm_problem(data, analytic_gradient);
    let mut report = maximize(&problem, x0, config, pool)?;
    canonicalize_sigmas(&mut report);
    let (summary, summary_error) = match summarize(&report) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e)),
    };
    Ok(LmmFit {
        report,
        summary,
        summary_error,
    })
}

fn canonicalize_sigmas(report: &mut OptimReport) {
    let m = report.b.len();
    let mut signs = vec![1.0; m];
    let mut flipped = false;
    for j in [m - 2, m - 1] {
        if report.b[j] < 0.0 {
            signs[j] = -1.0;
            report.b[j] = -report.b[j];
            flipped = true;
        }
    }
    if !flipped {
        return;
    }
    for (j, g) in report.grad.iter_mut().enumerate() {
        *g *= signs[j];
    }
    if let Some(v) = report.v.take() {
        report.v = Some(PackedSymmetric::from_fn(m, |i, j| {
            signs[i] * signs[j] * v.get(i, j)
        }));
    }
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("bad CSV header: expected `{CSV_HEADER}`, got `{got}`")]
    BadHeader { got: String },
    #[error("line {line}: {msg}")]
    BadRow { line: usize, msg: String },
    #[error("dataset is empty")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Write the dataset as `i,t,X1,X3,Y`, one row per measurement,
/// subjects numbered from 1.
pub fn write_csv(data: &LmmData, out: &mut impl Write) -> Result<(), CsvError> {
    assert_eq!(data.n_cols, N_DESIGN_COLS);
    writeln!(out, "{CSV_HEADER}")?;
    let mut r = 0;
    for (subj, &ni) in data.ni.iter().enumerate() {
        for _ in 0..ni {
            let row = data.row(r);
            // design columns: [1, t, X1, X3, t*X1]
            writeln!(
                out,
                "{},{},{},{},{}",
                subj + 1,
                fmt_full(row[1]),
                fmt_full(row[2]),
                fmt_full(row[3]),
                fmt_full(data.y[r])
            )?;
            r += 1;
        }
    }
    Ok(())
}

fn fmt_full(v: f64) -> String {
    // shortest representation that round-trips f64
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

/// Read a dataset written by [`write_csv`] (or any file with the same
/// header). Rows must be grouped by subject id.
pub fn read_csv(input: impl BufRead) -> Result<LmmData, CsvError> {
    let mut lines = input.lines();
    let header = lines.next().ok_or(CsvError::Empty)??;
    if header.trim() != CSV_HEADER {
        return Err(CsvError::BadHeader {
            got: header.trim().to_string(),
        });
    }
    let mut y = Vec::new();
    let mut x = Vec::new();
    let mut ni: Vec<usize> = Vec::new();
    let mut last_id: Option<String> = None;
    for (k, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = k + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CsvError::BadRow {
                line: lineno,
                msg: format!("expected 5 comma-separated fields, got {}", fields.len()),
            });
        }
        let id = fields[0].to_string();
        let parse = |s: &str, name: &str| -> Result<f64, CsvError> {
            s.trim().parse::<f64>().map_err(|_| CsvError::BadRow {
                line: lineno,
                msg: format!("cannot parse {name} value `{s}`"),
            })
        };
        let t = parse(fields[1], "t")?;
        let x1 = parse(fields[2], "X1")?;
        let x3 = parse(fields[3], "X3")?;
        let yv = parse(fields[4], "Y")?;
        if last_id.as_deref() != Some(id.as_str()) {
            ni.push(0);
            last_id = Some(id);
        }
        *ni.last_mut().unwrap() += 1;
        x.extend_from_slice(&[1.0, t, x1, x3, t * x1]);
        y.push(yv);
    }
    if y.is_empty() {
        return Err(CsvError::Empty);
    }
    let data = LmmData {
        y,
        x,
        n_cols: N_DESIGN_COLS,
        ni,
    };
    data.check();
    Ok(data)
}
