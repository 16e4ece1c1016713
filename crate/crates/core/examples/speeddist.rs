use levmarq::optimizer::{minimize, OptimizerConfig, Problem};
use levmarq::problems::{loglik_lmm, simulate_lmm, trivial_start};
use levmarq::WorkerPool;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn main() {
    let data = Arc::new(simulate_lmm(500, 5, &[50.0, 0.1, 2.4, 2.9, -0.4], 5.6, 3.0, 1));
    let busy = Duration::from_millis(2);
    let cfg = OptimizerConfig::default();
    for nproc in [1usize, 2] {
        let pool = WorkerPool::new(nproc);
        let mut times = Vec::new();
        for _ in 0..5 {
            let d = data.clone();
            let p = Problem::new("lmm-busy", 7, move |b: &[f64]| {
                let t0 = Instant::now();
                let v = loglik_lmm(b, &d);
                while t0.elapsed() < busy { std::hint::spin_loop(); }
                -v
            });
            let t0 = Instant::now();
            let r = minimize(&p, &trivial_start(7), &cfg, &pool).unwrap();
            assert!(r.converged());
            times.push(t0.elapsed());
        }
        println!("nproc={nproc}: {:?}", times);
    }
}
