//! A robust Marquardt-Levenberg local optimizer.
//!
//! The algorithm minimizes (or maximizes) a scalar objective of `m`
//! unconstrained parameters by damped Newton steps
//!
//! ```text
//! theta[k+1] = theta[k] - delta_k * inflate(H, lambda_k, eta_k)^-1 * grad
//! ```
//!
//! where the Hessian diagonal is inflated following Fletcher's
//! curvature-scaled scheme until the step matrix is positive definite.
//! Convergence requires three criteria simultaneously: parameter
//! stability, objective stability and the relative distance to the
//! minimum/maximum (RDM), which rejects saddle points by demanding an
//! invertible, positive-definite Hessian at the solution.
//!
//! Derivatives are obtained by central (gradient) and forward (Hessian)
//! finite differences, or from a user-supplied analytic gradient, and
//! every independent evaluation of a derivative pass can be dispatched
//! on a worker pool with deterministic assembly: results are bitwise
//! identical for any worker count.
//!
//! For log-likelihood maximization the inverse Hessian at the optimum
//! estimates the variance-covariance matrix of the parameters; the
//! [`mle`] module turns it into standard errors, Wald statistics,
//! p-values and confidence intervals.

pub mod derivatives;
pub mod grid;
pub mod linalg;
pub mod mle;
pub mod optimizer;
pub mod pool;
pub mod problems;
pub mod rng;

pub use derivatives::{Blinding, DerivativeError, EvalBatch, BLINDING_SENTINEL};
pub use grid::{grid_search, GridSearchResult, GridSpec};
pub use linalg::{cholesky, invert, Factorization, LinalgError, PackedSymmetric};
pub use mle::{chisq1_upper_tail, summarize, vcov_from_report, MleError, MleSummary, SummaryRow};
pub use optimizer::{
    maximize, minimize, optimize, IterationRecord, KnownOptimum, OptimError, OptimReport,
    OptimizerConfig, Problem, Sense, StopCode,
};
pub use pool::WorkerPool;
pub use rng::SplitMix64;
