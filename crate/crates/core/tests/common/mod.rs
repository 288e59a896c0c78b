//! Test-only oracles, written independently of the library's evaluation
//! path.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use varcurve_core::{KnotPlacement, PrimaryGrid};

/// Cubic Hermite interpolant on `[x0, x1]` written in the classical basis
/// `h00, h10, h01, h11`. Returns value, first and second derivative.
pub fn hermite(x0: f64, x1: f64, f0: f64, f1: f64, d0: f64, d1: f64, x: f64) -> (f64, f64, f64) {
    let l = x1 - x0;
    let t = (x - x0) / l;
    let (t2, t3) = (t * t, t * t * t);
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let v = h00 * f0 + h10 * l * d0 + h01 * f1 + h11 * l * d1;

    let g00 = 6.0 * t2 - 6.0 * t;
    let g10 = 3.0 * t2 - 4.0 * t + 1.0;
    let g01 = -6.0 * t2 + 6.0 * t;
    let g11 = 3.0 * t2 - 2.0 * t;
    let dv = (g00 * f0 + g01 * f1) / l + g10 * d0 + g11 * d1;

    let k00 = 12.0 * t - 6.0;
    let k10 = 6.0 * t - 4.0;
    let k01 = -12.0 * t + 6.0;
    let k11 = 6.0 * t - 2.0;
    let d2v = (k00 * f0 + k01 * f1) / (l * l) + (k10 * d0 + k11 * d1) / l;
    (v, dv, d2v)
}

/// The piece around interior knot `i` (1-based) rebuilt from first
/// principles: knots, blended values and divided differences computed
/// directly from the raw arrays, then passed to [`hermite`].
pub struct OraclePiece {
    pub x0: f64,
    pub x1: f64,
    pub f0: f64,
    pub f1: f64,
    pub d0: f64,
    pub d1: f64,
}

impl OraclePiece {
    pub fn new(tau: &[f64], f: &[f64], alpha: f64, beta: f64, i: usize) -> Self {
        let k = i - 1;
        Self {
            x0: tau[k] - alpha * (tau[k] - tau[k - 1]),
            x1: tau[k] + beta * (tau[k + 1] - tau[k]),
            f0: f[k] - alpha * (f[k] - f[k - 1]),
            f1: f[k] + beta * (f[k + 1] - f[k]),
            d0: (f[k] - f[k - 1]) / (tau[k] - tau[k - 1]),
            d1: (f[k + 1] - f[k]) / (tau[k + 1] - tau[k]),
        }
    }

    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        hermite(self.x0, self.x1, self.f0, self.f1, self.d0, self.d1, x)
    }
}

/// C1 written with the literal `h / alpha` and `h^2 / alpha` quotients.
pub fn c1_literal(h_l: f64, h_r: f64, alpha: f64, beta: f64) -> f64 {
    let s = h_l + h_r;
    h_l * h_r
        * ((h_r / beta + h_l / alpha) / (4.0 * s)
            + (h_r / beta - h_l / alpha) * (h_r - h_l) / (4.0 * s.powi(2))
            - (h_r.powi(2) / beta - h_l.powi(2) / alpha) * (h_r - h_l) / (2.0 * s.powi(3)))
}

/// C2 written with the literal `h / alpha` and `h^2 / alpha` quotients.
pub fn c2_literal(h_l: f64, h_r: f64, alpha: f64, beta: f64) -> f64 {
    let s = h_l + h_r;
    let p = h_r.powi(2) + h_l.powi(2) - 4.0 * h_l * h_r;
    (h_r.powi(2) / beta - h_l.powi(2) / alpha) / (2.0 * s)
        + p * (h_r / beta - h_l / alpha) / (4.0 * s.powi(2))
        - p * (h_r.powi(2) / beta - h_l.powi(2) / alpha) / (2.0 * s.powi(3))
        - (h_r - h_l) * (h_r / beta + h_l / alpha) / (4.0 * s)
}

pub struct Draw {
    pub tau: Vec<f64>,
    pub placement: KnotPlacement,
}

impl Draw {
    pub fn grid(&self, f: &[f64]) -> PrimaryGrid {
        PrimaryGrid::new(self.tau.clone(), f.to_vec()).unwrap()
    }

    /// `(alpha_i, beta_i)` for interior knot `i`.
    pub fn params(&self, i: usize) -> (f64, f64) {
        (self.placement.alpha(i), self.placement.beta(i))
    }
}

/// Random admissible grid and placement; ends are clamped a quarter of the
/// time.
pub fn random_draw(rng: &mut StdRng) -> Draw {
    let n = rng.gen_range(3..=12);
    let mut tau = vec![rng.gen_range(-5.0..5.0)];
    for _ in 1..n {
        let step = 10f64.powf(rng.gen_range(-1.3..0.3));
        tau.push(tau.last().unwrap() + step);
    }
    let clamp = rng.gen_bool(0.25);
    let alpha2 = if clamp { 1.0 } else { rng.gen_range(0.02..=1.0) };
    let mut beta: Vec<f64> = (0..n - 2).map(|_| rng.gen_range(0.02..0.98)).collect();
    if clamp {
        *beta.last_mut().unwrap() = 1.0;
    }
    Draw {
        tau,
        placement: KnotPlacement::new(alpha2, beta).unwrap(),
    }
}

pub fn random_values(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()
}

/// Uniform grid with a placement keeping `h_i = h_{i+1}` on every segment.
pub fn random_uniform_draw(rng: &mut StdRng) -> Draw {
    let n = rng.gen_range(3..=12);
    // Dyadic start and step make the floating-point grid exactly uniform.
    let start = rng.gen_range(-50_000..50_000) as f64 / 1024.0;
    let step = rng.gen_range(1..3000) as f64 / 1024.0;
    let tau = (0..n).map(|k| start + step * k as f64).collect();
    let theta: f64 = rng.gen_range(0.05..0.95);
    // alpha_i = beta_i forces beta to alternate theta, 1 - theta.
    let beta = (0..n - 2)
        .map(|k| if k % 2 == 0 { theta } else { 1.0 - theta })
        .collect();
    Draw {
        tau,
        placement: KnotPlacement::new(theta, beta).unwrap(),
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale.max(a.abs()).max(b.abs())
}
