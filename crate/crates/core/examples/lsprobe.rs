use levmarq::derivatives::{numeric_pass, Blinding};
use levmarq::linalg::cholesky;
use levmarq::optimizer::{inflate, line_search, LineSearchOutcome};
use levmarq::problems::{loglik_lmm, simulate_lmm, trivial_start};
use levmarq::WorkerPool;
use std::sync::Arc;

fn main() {
    let data = Arc::new(simulate_lmm(500, 5, &[50.0, 0.1, 2.4, 2.9, -0.4], 5.6, 3.0, 1));
    let d = data.clone();
    let obj = move |b: &[f64]| -loglik_lmm(b, &d);
    let pool = WorkerPool::sequential();
    let mut x = trivial_start(7);
    let mut f0 = obj(&x);
    let mut lambda = 1e-3;
    for k in 1..=6 {
        let pass = numeric_pass(&obj, &x, f0, &pool, Blinding::Sentinel).unwrap();
        let (g, h) = (pass.gradient, pass.hessian);
        loop {
            let eta_k = if h.trace() > 0.0 { 0.1 } else { 0.0 };
            let infl = inflate(&h, lambda, eta_k);
            let fact = cholesky(&infl).unwrap();
            if !fact.success() {
                println!("k={k} lambda={lambda:.1e}: not PD");
                lambda *= 10.0;
                continue;
            }
            let neg_g: Vec<f64> = g.iter().map(|v| -v).collect();
            let dir = fact.solve(&neg_g).unwrap();
            match line_search(&obj, &x, &dir, f0, 30) {
                LineSearchOutcome::Accepted { delta, f_new, n_evals } => {
                    println!("k={k} lambda={lambda:.1e}: accepted delta={delta:.6} f={f_new:.4} ls_evals={n_evals}");
                    lambda = (lambda * 0.1f64).max(1e-10);
                    for (xi, di) in x.iter_mut().zip(&dir) { *xi += delta * di; }
                    f0 = f_new;
                    break;
                }
                LineSearchOutcome::Failed { n_evals } => {
                    println!("k={k} lambda={lambda:.1e}: FAILED ls_evals={n_evals}");
                    lambda *= 10.0;
                }
            }
        }
    }
}
