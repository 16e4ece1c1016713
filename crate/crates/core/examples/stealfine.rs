use rayon::prelude::*;
use std::time::{Duration, Instant};

fn spin1() {
    let busy = Duration::from_millis(2);
    let s = Instant::now();
    while s.elapsed() < busy { std::hint::spin_loop(); }
}

fn stats(mut v: Vec<f64>) -> String {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    format!("min {:.1} p25 {:.1} med {:.1} p75 {:.1} max {:.1} mean {:.1}",
        v[0], v[n/4], v[n/2], v[3*n/4], v[n-1], v.iter().sum::<f64>()/n as f64)
}

fn main() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    // fine-grained stealing
    let mut fine = Vec::new();
    for _ in 0..60 {
        let t0 = Instant::now();
        pool.install(|| (0..42).into_par_iter().with_max_len(1).for_each(|_| spin1()));
        fine.push(t0.elapsed().as_secs_f64()*1000.0);
    }
    println!("rayon max_len=1: {}", stats(fine));
    // static halves via scoped threads
    let mut stat = Vec::new();
    for _ in 0..60 {
        let t0 = Instant::now();
        std::thread::scope(|s| {
            let h = s.spawn(|| for _ in 0..21 { spin1() });
            for _ in 0..21 { spin1() }
            h.join().unwrap();
        });
        stat.push(t0.elapsed().as_secs_f64()*1000.0);
    }
    println!("static halves:   {}", stats(stat));
}
