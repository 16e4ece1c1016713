use std::time::{Duration, Instant};

fn spin1() {
    let busy = Duration::from_millis(2);
    let t0 = Instant::now();
    while t0.elapsed() < busy { std::hint::spin_loop(); }
}

fn map_scoped<T: Send, F: Fn(usize) -> T + Sync>(workers: usize, n: usize, f: F) -> Vec<T> {
    let chunk = n.div_ceil(workers);
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let (first, rest) = out.split_at_mut(chunk.min(n));
    std::thread::scope(|s| {
        let mut handles = Vec::new();
        for (w, slots) in rest.chunks_mut(chunk).enumerate() {
            let f = &f;
            handles.push(s.spawn(move || {
                for (off, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(f((w + 1) * chunk + off));
                }
            }));
        }
        for (off, slot) in first.iter_mut().enumerate() {
            *slot = Some(f(off));
        }
    });
    out.into_iter().map(|v| v.unwrap()).collect()
}

fn main() {
    for workers in [1usize, 2] {
        // warm
        map_scoped(workers, 42, |_| spin1());
        let t0 = Instant::now();
        for _ in 0..20 {
            map_scoped(workers, 42, |_| spin1());
        }
        println!("workers={workers}: {:?} per 42-pt batch", t0.elapsed() / 20);
    }
    // overhead for cheap evals
    let t0 = Instant::now();
    for _ in 0..1000 {
        map_scoped(2, 42, |i| (i as f64).sin());
    }
    println!("cheap-eval batch overhead at 2 workers: {:?}", t0.elapsed() / 1000);
}
