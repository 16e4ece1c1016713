//! Multi-start grid search: run the local optimizer from a lattice of
//! starting points and keep the best result.
//!
//! Runs are dispatched concurrently across the pool; each run itself is
//! sequential so its trace is deterministic. The distinct local minima
//! found by converged runs are clustered by final position.

use crate::optimizer::{optimize, OptimError, OptimReport, OptimizerConfig, Problem};
use crate::pool::WorkerPool;

/// Regular one-dimensional grid, applied per problem dimension.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    /// The grid points `lo + k * (hi - lo) / (count - 1)`.
    pub fn points(&self) -> Vec<f64> {
        assert!(self.count >= 1);
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|k| self.lo + k as f64 * (self.hi - self.lo) / (self.count - 1) as f64)
            .collect()
    }

    /// Cartesian product of the per-dimension points: `count^dim` starts.
    pub fn starts(&self, dim: usize) -> Vec<Vec<f64>> {
        let axis = self.points();
        let mut starts = vec![Vec::new()];
        for _ in 0..dim {
            let mut next = Vec::with_capacity(starts.len() * axis.len());
            for s in &starts {
                for &v in &axis {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
            starts = next;
        }
        starts
    }
}

/// A local minimum cluster: representative objective value and point,
/// with the number of runs that landed in it.
#[derive(Debug, Clone)]
pub struct MinimumCluster {
    pub f: f64,
    pub theta: Vec<f64>,
    pub hits: usize,
}

#[derive(Debug)]
pub struct GridSearchResult {
    /// Report of the best run (lowest final objective in the problem's
    /// sense over all runs, converged or not).
    pub best: OptimReport,
    pub best_start: Vec<f64>,
    pub n_runs: usize,
    pub n_converged: usize,
    /// Converged minima clustered at tolerance 1e-3 on the position,
    /// best first.
    pub minima: Vec<MinimumCluster>,
}

/// Tolerance used to decide that two converged runs found the same
/// local minimum.
pub const CLUSTER_TOL: f64 = 1e-3;

/// Run one optimization per grid start and aggregate.
pub fn grid_search(
    problem: &Problem,
    spec: &GridSpec,
    config: &OptimizerConfig,
    pool: &WorkerPool,
) -> Result<GridSearchResult, OptimError> {
    config.validate()?;
    let starts = spec.starts(problem.dim);
    // runs are parallel across starts; each run evaluates sequentially
    let run_cfg = OptimizerConfig {
        nproc: 1,
        print_every: None,
        ..config.clone()
    };
    let reports: Vec<Result<OptimReport, OptimError>> = pool.map(starts.len(), |i| {
        let inner = WorkerPool::sequential();
        optimize(problem, &starts[i], &run_cfg, &inner)
    });
    let mut runs: Vec<(Vec<f64>, OptimReport)> = Vec::with_capacity(reports.len());
    for (start, rep) in starts.into_iter().zip(reports) {
        runs.push((start, rep?));
    }

    // best in the problem's sense: fn_value is caller-sense, so for a
    // maximization bigger is better
    let better = |a: f64, b: f64| -> bool {
        if config.minimize {
            a < b
        } else {
            a > b
        }
    };
    let mut best_idx = 0;
    for (i, (_, rep)) in runs.iter().enumerate() {
        if rep.fn_value.is_finite()
            && (!runs[best_idx].1.fn_value.is_finite()
                || better(rep.fn_value, runs[best_idx].1.fn_value))
        {
            best_idx = i;
        }
    }

    let n_converged = runs.iter().filter(|(_, r)| r.converged()).count();
    let mut minima: Vec<MinimumCluster> = Vec::new();
    let mut converged: Vec<&(Vec<f64>, OptimReport)> =
        runs.iter().filter(|(_, r)| r.converged()).collect();
    converged.sort_by(|a, b| {
        if config.minimize {
            a.1.fn_value.total_cmp(&b.1.fn_value)
        } else {
            b.1.fn_value.total_cmp(&a.1.fn_value)
        }
    });
    for (_, rep) in converged {
        match minima.iter_mut().find(|c| {
            c.theta
                .iter()
                .zip(&rep.b)
                .all(|(a, b)| (a - b).abs() <= CLUSTER_TOL)
        }) {
            Some(cluster) => cluster.hits += 1,
            None => minima.push(MinimumCluster {
                f: rep.fn_value,
                theta: rep.b.clone(),
                hits: 1,
            }),
        }
    }

    let (best_start, best) = runs.swap_remove(best_idx);
    Ok(GridSearchResult {
        best,
        best_start,
        n_runs: runs.len() + 1,
        n_converged,
        minima,
    })
}
