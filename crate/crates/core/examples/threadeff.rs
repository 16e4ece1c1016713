use std::time::{Duration, Instant};

fn spin_n(n: usize) {
    let busy = Duration::from_millis(2);
    for _ in 0..n {
        let t0 = Instant::now();
        while t0.elapsed() < busy { std::hint::spin_loop(); }
    }
}

fn main() {
    // sequential 42
    let t0 = Instant::now();
    spin_n(42);
    println!("sequential 42 spins: {:?}", t0.elapsed());
    // two plain threads, 21 each
    let t0 = Instant::now();
    let a = std::thread::spawn(|| spin_n(21));
    let b = std::thread::spawn(|| spin_n(21));
    a.join().unwrap();
    b.join().unwrap();
    println!("2 threads x 21 spins: {:?}", t0.elapsed());
    // rayon pool, par_iter
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    for _ in 0..3 {
        let t0 = Instant::now();
        pool.install(|| (0..42).into_par_iter().for_each(|_| spin_n(1)));
        println!("rayon 42 tasks on 2 workers: {:?}", t0.elapsed());
    }
    // rayon with max_len=1 forcing per-item splits
    for _ in 0..3 {
        let t0 = Instant::now();
        pool.install(|| (0..42).into_par_iter().with_max_len(1).for_each(|_| spin_n(1)));
        println!("rayon max_len=1: {:?}", t0.elapsed());
    }
}
