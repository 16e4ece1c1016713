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
    println!("main thread 21 spins: {:?}", spin_block(21));
    for trial in 0..5 {
        let t0 = Instant::now();
        std::thread::scope(|s| {
            let h = s.spawn(|| spin_block(21));
            let main_time = spin_block(21);
            let spawned_time = h.join().unwrap();
            println!(
                "trial {trial}: total {:?}, main chunk {:?}, spawned chunk {:?}",
                t0.elapsed(), main_time, spawned_time
            );
        });
    }
    // 2 spawned, main parked
    for trial in 0..3 {
        let t0 = Instant::now();
        std::thread::scope(|s| {
            let a = s.spawn(|| spin_block(21));
            let b = s.spawn(|| spin_block(21));
            let (ta, tb) = (a.join().unwrap(), b.join().unwrap());
            println!("parked-main trial {trial}: total {:?}, a {:?}, b {:?}", t0.elapsed(), ta, tb);
        });
    }
}
