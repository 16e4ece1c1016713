//! Twelve classic unconstrained test problems from the
//! More-Garbow-Hillstrom battery, with their standard starting points
//! and reference minima.
//!
//! `freud_roth` carries the documented second minimum (48.98425...),
//! which is the solution every descent method reaches from the standard
//! start; the global minimum f = 0 at (5, 4) lies in a different basin.

use crate::optimizer::Problem;

fn sq(x: f64) -> f64 {
    x * x
}

pub fn rosen() -> Problem {
    Problem::new("rosen", 2, |x: &[f64]| {
        sq(10.0 * (x[1] - x[0] * x[0])) + sq(1.0 - x[0])
    })
    .with_start(vec![-1.2, 1.0])
    .with_known_optimum(0.0, Some(vec![1.0, 1.0]))
}

pub fn freud_roth() -> Problem {
    Problem::new("freud_roth", 2, |x: &[f64]| {
        let f1 = -13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1];
        let f2 = -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1];
        f1 * f1 + f2 * f2
    })
    .with_start(vec![0.5, -2.0])
    .with_known_optimum(
        48.98425367924002,
        Some(vec![11.412778986902094, -0.8968052532744765]),
    )
}

pub fn beale() -> Problem {
    Problem::new("beale", 2, |x: &[f64]| {
        let ys = [1.5, 2.25, 2.625];
        (1..=3)
            .map(|i| sq(ys[i - 1] - x[0] * (1.0 - x[1].powi(i as i32))))
            .sum()
    })
    .with_start(vec![1.0, 1.0])
    .with_known_optimum(0.0, Some(vec![3.0, 0.5]))
}

pub fn helical() -> Problem {
    Problem::new("helical", 3, |x: &[f64]| {
        let theta = if x[0] > 0.0 {
            (x[1] / x[0]).atan() / std::f64::consts::TAU
        } else if x[0] < 0.0 {
            (x[1] / x[0]).atan() / std::f64::consts::TAU + 0.5
        } else if x[1] >= 0.0 {
            0.25
        } else {
            -0.25
        };
        sq(10.0 * (x[2] - 10.0 * theta)) + sq(10.0 * (x[0].hypot(x[1]) - 1.0)) + sq(x[2])
    })
    .with_start(vec![-1.0, 0.0, 0.0])
    .with_known_optimum(0.0, Some(vec![1.0, 0.0, 0.0]))
}

pub fn bard() -> Problem {
    const Y: [f64; 15] = [
        0.14, 0.18, 0.22, 0.25, 0.29, 0.32, 0.35, 0.39, 0.37, 0.58, 0.73, 0.96, 1.34, 2.10, 4.39,
    ];
    Problem::new("bard", 3, |x: &[f64]| {
        (1..=15)
            .map(|i| {
                let u = i as f64;
                let v = 16.0 - u;
                let w = u.min(v);
                sq(Y[i - 1] - (x[0] + u / (v * x[1] + w * x[2])))
            })
            .sum()
    })
    .with_start(vec![1.0, 1.0, 1.0])
    .with_known_optimum(8.214877306578954e-3, None)
}

pub fn box_3d() -> Problem {
    Problem::new("box_3d", 3, |x: &[f64]| {
        (1..=10)
            .map(|i| {
                let t = 0.1 * i as f64;
                sq((-t * x[0]).exp()
                    - (-t * x[1]).exp()
                    - x[2] * ((-t).exp() - (-10.0 * t).exp()))
            })
            .sum()
    })
    .with_start(vec![0.0, 10.0, 20.0])
    .with_known_optimum(0.0, Some(vec![1.0, 10.0, 1.0]))
}

pub fn powell_s() -> Problem {
    Problem::new("powell_s", 4, |x: &[f64]| {
        sq(x[0] + 10.0 * x[1])
            + 5.0 * sq(x[2] - x[3])
            + sq(sq(x[1] - 2.0 * x[2]))
            + 10.0 * sq(sq(x[0] - x[3]))
    })
    .with_start(vec![3.0, -1.0, 0.0, 1.0])
    .with_known_optimum(0.0, Some(vec![0.0, 0.0, 0.0, 0.0]))
}

pub fn wood() -> Problem {
    Problem::new("wood", 4, |x: &[f64]| {
        100.0 * sq(x[1] - x[0] * x[0])
            + sq(1.0 - x[0])
            + 90.0 * sq(x[3] - x[2] * x[2])
            + sq(1.0 - x[2])
            + 10.1 * (sq(x[1] - 1.0) + sq(x[3] - 1.0))
            + 19.8 * (x[1] - 1.0) * (x[3] - 1.0)
    })
    .with_start(vec![-3.0, -1.0, -3.0, -1.0])
    .with_known_optimum(0.0, Some(vec![1.0, 1.0, 1.0, 1.0]))
}

pub fn kow_osb() -> Problem {
    const Y: [f64; 11] = [
        0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
    ];
    const U: [f64; 11] = [
        4.0000, 2.0000, 1.0000, 0.5000, 0.2500, 0.1670, 0.1250, 0.1000, 0.0833, 0.0714, 0.0625,
    ];
    Problem::new("kow_osb", 4, |x: &[f64]| {
        (0..11)
            .map(|i| {
                let u = U[i];
                sq(Y[i] - x[0] * (u * u + u * x[1]) / (u * u + u * x[2] + x[3]))
            })
            .sum()
    })
    .with_start(vec![0.25, 0.39, 0.415, 0.39])
    .with_known_optimum(3.075056038492367e-4, None)
}

pub fn brown_den() -> Problem {
    Problem::new("brown_den", 4, |x: &[f64]| {
        (1..=20)
            .map(|i| {
                let t = i as f64 / 5.0;
                sq(sq(x[0] + t * x[1] - t.exp()) + sq(x[2] + x[3] * t.sin() - t.cos()))
            })
            .sum()
    })
    .with_start(vec![25.0, 5.0, -5.0, -1.0])
    .with_known_optimum(85822.20162635624, None)
}

pub fn ex_rosen() -> Problem {
    let n = 10;
    Problem::new("ex_rosen", n, |x: &[f64]| {
        x.chunks_exact(2)
            .map(|p| sq(10.0 * (p[1] - p[0] * p[0])) + sq(1.0 - p[0]))
            .sum()
    })
    .with_start([-1.2, 1.0].repeat(n / 2))
    .with_known_optimum(0.0, Some(vec![1.0; n]))
}

pub fn ex_powell() -> Problem {
    let n = 12;
    Problem::new("ex_powell", n, |x: &[f64]| {
        x.chunks_exact(4)
            .map(|p| {
                sq(p[0] + 10.0 * p[1])
                    + 5.0 * sq(p[2] - p[3])
                    + sq(sq(p[1] - 2.0 * p[2]))
                    + 10.0 * sq(sq(p[0] - p[3]))
            })
            .sum()
    })
    .with_start([3.0, -1.0, 0.0, 1.0].repeat(n / 4))
    .with_known_optimum(0.0, Some(vec![0.0; n]))
}

/// The registered subset, in battery order.
pub fn more_suite() -> Vec<Problem> {
    vec![
        rosen(),
        freud_roth(),
        beale(),
        helical(),
        bard(),
        box_3d(),
        powell_s(),
        wood(),
        kow_osb(),
        brown_den(),
        ex_rosen(),
        ex_powell(),
    ]
}
