//! Registry of test problems exercising the optimizer: the
//! More-Garbow-Hillstrom subset, the linear mixed model with its seeded
//! simulator, the Wild function, and pathological fixtures.

pub mod lmm;
pub mod more;

pub use lmm::{
    fit_lmm, grad_lmm, lmm_problem, loglik_lmm, read_csv, simulate_lmm, trivial_start, write_csv,
    CsvError, LmmData, LmmFit, CSV_HEADER,
};
pub use more::more_suite;

use crate::optimizer::Problem;

/// The Wild function: heavily multimodal in one variable.
///
/// `fw(x) = 10 sin(0.3 x) sin(1.3 x^2) + 1e-5 x^4 + 0.2 x + 80`
pub fn wild(x: f64) -> f64 {
    10.0 * (0.3 * x).sin() * (1.3 * x * x).sin() + 1e-5 * x.powi(4) + 0.2 * x + 80.0
}

/// Global minimum of [`wild`] on [-50, 50] (found by grid search).
pub const WILD_GLOBAL_F: f64 = 67.46773474158633;
pub const WILD_GLOBAL_X: f64 = -15.815151124687656;

pub fn wild_problem() -> Problem {
    Problem::new("wild", 1, |x: &[f64]| wild(x[0]))
        .with_start(vec![0.0])
        .with_known_optimum(WILD_GLOBAL_F, Some(vec![WILD_GLOBAL_X]))
}

/// Saddle fixture: f(x, y) = x^2 - y^2 from (0.5, 0.3).
///
/// The origin is a stationary point with indefinite Hessian
/// diag(2, -2); the RDM criterion must keep the optimizer from ever
/// declaring convergence there.
pub fn saddle_fixture() -> Problem {
    Problem::new("saddle", 2, |x: &[f64]| x[0] * x[0] - x[1] * x[1])
        .with_start(vec![0.5, 0.3])
}

/// Objective with a non-finite region, for blinding and multiple-try
/// paths: log(x) is NaN for x <= 0.
pub fn log_domain_fixture() -> Problem {
    Problem::new("logsq", 1, |x: &[f64]| (x[0].ln() - 1.0) * (x[0].ln() - 1.0))
        .with_start(vec![-1.0])
        .with_known_optimum(0.0, Some(vec![std::f64::consts::E]))
}

/// Every named problem the CLI can run.
pub fn registry() -> Vec<Problem> {
    let mut all = more_suite();
    all.push(wild_problem());
    all.push(saddle_fixture());
    all.push(log_domain_fixture());
    all
}

/// Look up a registered problem by name.
pub fn by_name(name: &str) -> Option<Problem> {
    registry().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PackedSymmetric;
    use crate::optimizer::rdm;

    #[test]
    fn wild_at_zero_is_eighty() {
        assert_eq!(wild(0.0), 80.0);
    }

    #[test]
    fn wild_reference_minimum() {
        let f = wild(-15.8152);
        assert!((f - 67.4677).abs() < 1e-3, "{f}");
    }

    #[test]
    fn wild_duplicate_transcription_oracle() {
        // independent transcription of the formula
        let alt = |x: f64| {
            let osc = 10.0 * f64::sin(0.3 * x) * f64::sin(1.3 * x.powi(2));
            osc + 0.00001 * x.powi(4) + 0.2 * x + 80.0
        };
        for i in -100..=100 {
            let x = i as f64 * 0.37;
            let (a, b) = (wild(x), alt(x));
            assert!((a - b).abs() <= 1e-13 * a.abs(), "x={x}: {a} vs {b}");
        }
        let (a, b) = (wild(10.0), alt(10.0));
        assert!((a - b).abs() <= 1e-13 * a.abs());
    }

    #[test]
    fn saddle_properties() {
        let p = saddle_fixture();
        assert_eq!(p.objective_at(&[0.0, 0.0]), 0.0);
        // gradient at origin is zero, Hessian diag(2, -2) at any point
        let h = PackedSymmetric::from_upper(2, vec![2.0, 0.0, -2.0]);
        let epsd = 1e-4;
        assert_eq!(rdm(&[0.0, 0.0], &h, epsd), 1.0 + epsd);
    }

    #[test]
    fn registry_lookup() {
        assert!(by_name("rosen").is_some());
        assert!(by_name("wild").is_some());
        assert!(by_name("no_such_problem").is_none());
        // names are unique
        let names: Vec<String> = registry().into_iter().map(|p| p.name).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len());
    }
}
