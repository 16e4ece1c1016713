use levmarq::derivatives::{evaluate_batch, Blinding};
use levmarq::WorkerPool;
use std::time::{Duration, Instant};

fn main() {
    let busy = Duration::from_millis(2);
    let f = |x: &[f64]| {
        let t0 = Instant::now();
        let v = x[0] + 1.0;
        while t0.elapsed() < busy { std::hint::spin_loop(); }
        v
    };
    let points: Vec<Vec<f64>> = (0..42).map(|i| vec![i as f64; 7]).collect();
    for nproc in [1usize, 2] {
        let pool = WorkerPool::new(nproc);
        // warm
        evaluate_batch(&f, &points, &pool, Blinding::Off).unwrap();
        let t0 = Instant::now();
        for _ in 0..20 {
            evaluate_batch(&f, &points, &pool, Blinding::Off).unwrap();
        }
        println!("nproc={nproc}: {:?} per 42-pt batch", t0.elapsed() / 20);
    }
    // two separate batches 14 + 28 (current pass structure)
    let g: Vec<Vec<f64>> = (0..14).map(|i| vec![i as f64; 7]).collect();
    let h: Vec<Vec<f64>> = (0..28).map(|i| vec![i as f64; 7]).collect();
    for nproc in [1usize, 2] {
        let pool = WorkerPool::new(nproc);
        evaluate_batch(&f, &g, &pool, Blinding::Off).unwrap();
        let t0 = Instant::now();
        for _ in 0..20 {
            evaluate_batch(&f, &g, &pool, Blinding::Off).unwrap();
            evaluate_batch(&f, &h, &pool, Blinding::Off).unwrap();
        }
        println!("nproc={nproc}: {:?} per 14+28 split pass", t0.elapsed() / 20);
    }
}
