use std::time::{Duration, Instant};

fn spin_block(n: usize) -> Duration {
    let busy = Duration::from_millis(2);
    let t0 = Instant::now();
    for _ in 0..n {
        let s = Instant::now();
        while s.elapsed() < busy { std::hint::spin_loop(); }
    }
    t0.elapsed()
}

fn main() {
    let mut times = Vec::new();
    for _ in 0..60 {
        let t0 = Instant::now();
        std::thread::scope(|s| {
            let h = s.spawn(|| spin_block(21));
            spin_block(21);
            h.join().unwrap();
        });
        times.push(t0.elapsed().as_secs_f64() * 1000.0);
    }
    let mut sorted = times.clone();
    sorted.sort_by(f64::total_cmp);
    println!("min {:.1} p25 {:.1} median {:.1} p75 {:.1} max {:.1}",
        sorted[0], sorted[15], sorted[30], sorted[45], sorted[59]);
    let quiet = times.iter().filter(|t| **t < 47.0).count();
    println!("quiet batches (<47ms): {}/60", quiet);
    println!("first 20: {:?}", &times.iter().map(|t| *t as u32).collect::<Vec<_>>()[..20]);
}
