//! Shared oracles and test-function generators for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use disk_harmonics::DiskFunction;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Trapezoid nodes for the periodic integral representations below.
const BESSEL_NODES: usize = 512;

/// `J_m(x) = (1 / 2 pi) int_0^{2 pi} cos(m t - x sin t) dt`.
pub fn bessel_j(m: i32, x: f64) -> f64 {
    let h = 2.0 * PI / BESSEL_NODES as f64;
    let mut s = 0.0;
    for i in 0..BESSEL_NODES {
        let t = i as f64 * h;
        s += (m as f64 * t - x * t.sin()).cos();
    }
    s / BESSEL_NODES as f64
}

/// `J_m'(x) = (1 / 2 pi) int_0^{2 pi} sin t sin(m t - x sin t) dt`.
pub fn bessel_j_prime(m: i32, x: f64) -> f64 {
    let h = 2.0 * PI / BESSEL_NODES as f64;
    let mut s = 0.0;
    for i in 0..BESSEL_NODES {
        let t = i as f64 * h;
        s += t.sin() * (m as f64 * t - x * t.sin()).sin();
    }
    s / BESSEL_NODES as f64
}

/// First `count` roots of `f` above `start` by a `step` scan plus bisection.
///
/// Start past the flat stretch near the origin where `J_m` and `J_m'` are
/// below the quadrature noise; `j_{m,1} > m` and `j'_{m,1} >= m` make
/// `0.9 m` safe for both.
pub fn scan_roots(f: impl Fn(f64) -> f64, start: f64, count: usize, step: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut x0 = start;
    let mut f0 = f(x0);
    let mut i = 1u64;
    while roots.len() < count {
        let x1 = start + i as f64 * step;
        let f1 = f(x1);
        if (f0 < 0.0) != (f1 < 0.0) {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
        i += 1;
    }
    roots
}

/// Smooth taper `(1 - r^2 / R^2)^2` inside radius `R`.
pub fn taper(x: f64, y: f64, radius: f64) -> f64 {
    let t = 1.0 - (x * x + y * y) / (radius * radius);
    if t > 0.0 {
        t * t
    } else {
        0.0
    }
}

/// Sum of Gaussian bumps inside radius `R`, multiplied by the taper.
#[derive(Debug, Clone)]
pub struct Bumps {
    pub radius: f64,
    pub terms: Vec<(f64, f64, f64, f64)>,
}

impl Bumps {
    pub fn random(rng: &mut ChaCha8Rng, radius: f64, count: usize) -> Self {
        Self::random_width(rng, radius, count, 0.2..0.4)
    }

    /// Like `random` with widths drawn from `width` (relative to `radius`).
    pub fn random_width(
        rng: &mut ChaCha8Rng,
        radius: f64,
        count: usize,
        width: std::ops::Range<f64>,
    ) -> Self {
        let terms = (0..count)
            .map(|_| {
                let r = rng.gen_range(0.0..0.5) * radius;
                let t = rng.gen_range(0.0..2.0 * PI);
                let sigma = rng.gen_range(width.clone()) * radius;
                let amp = rng.gen_range(0.3..1.0) * if rng.gen_bool(0.75) { 1.0 } else { -1.0 };
                (r * t.cos(), r * t.sin(), sigma, amp)
            })
            .collect();
        Bumps { radius, terms }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let w = taper(x, y, self.radius);
        if w == 0.0 {
            return 0.0;
        }
        let s: f64 = self
            .terms
            .iter()
            .map(|&(cx, cy, sigma, amp)| {
                amp * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * sigma * sigma)).exp()
            })
            .sum();
        w * s
    }

    pub fn sample(&self, a: f64, grid: usize) -> DiskFunction {
        DiskFunction::restrict_and_pad_real(|x, y| self.eval(x, y), a, self.radius, grid).unwrap()
    }
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
