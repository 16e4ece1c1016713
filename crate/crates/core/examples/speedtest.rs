use levmarq::optimizer::{minimize, OptimizerConfig, Problem};
use levmarq::problems::{loglik_lmm, simulate_lmm, trivial_start};
use levmarq::WorkerPool;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn main() {
    let data = Arc::new(simulate_lmm(500, 5, &[50.0, 0.1, 2.4, 2.9, -0.4], 5.6, 3.0, 1));
    // raw objective cost
    let b = trivial_start(7);
    let t0 = Instant::now();
    for _ in 0..100 { std::hint::black_box(loglik_lmm(&b, &data)); }
    println!("plain loglik eval: {:?}", t0.elapsed() / 100);

    let busy = Duration::from_millis(2);
    let cfg = OptimizerConfig::default();
    for nproc in [1usize, 2] {
        let d = data.clone();
        let p = Problem::new("lmm-busy", 7, move |b: &[f64]| {
            let t0 = Instant::now();
            let v = loglik_lmm(b, &d);
            while t0.elapsed() < busy { std::hint::spin_loop(); }
            -v
        });
        let pool = WorkerPool::new(nproc);
        let t0 = Instant::now();
        let r = minimize(&p, &trivial_start(7), &cfg, &pool).unwrap();
        let dt = t0.elapsed();
        let evals: usize = r.trace.iter().map(|t| t.n_evals).sum();
        println!("nproc={nproc}: {:?} ni={} total_evals={} istop={:?}", dt, r.ni, evals, r.istop);
        for t in &r.trace {
            print!("{}({}) ", t.k, t.n_evals);
        }
        println!();
    }
}
