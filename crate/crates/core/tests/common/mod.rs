#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vortexw::{FourierSeries, VortexConfiguration};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// `k` points within `radius`, pairwise at least `sep` apart, degrees in ±1, ±2.
pub fn configuration(rng: &mut ChaCha8Rng, k: usize, radius: f64, sep: f64) -> VortexConfiguration {
    let mut pts: Vec<Complex64> = Vec::with_capacity(k);
    while pts.len() < k {
        let z = point_in_disc(rng, radius);
        if pts.iter().all(|p| (p - z).norm() >= sep) {
            pts.push(z);
        }
    }
    let degrees = (0..k)
        .map(|_| [-2, -1, 1, 2][rng.random_range(0..4)])
        .collect();
    VortexConfiguration::new(pts, degrees).unwrap()
}

/// Same total degree as `cfg`, fresh positions.
pub fn base_for(rng: &mut ChaCha8Rng, cfg: &VortexConfiguration, radius: f64) -> VortexConfiguration {
    let d = cfg.total_degree();
    let k = rng.random_range(if d == 0 { 2 } else { 1 }..=3usize);
    loop {
        let mut base = configuration(rng, k, radius, 0.1);
        let rest: i32 = base.degrees()[1..].iter().sum();
        let mut degrees = base.degrees().to_vec();
        degrees[0] = d - rest;
        if degrees[0] != 0 {
            base = VortexConfiguration::new(base.points().to_vec(), degrees).unwrap();
            return base;
        }
    }
}

pub fn series(rng: &mut ChaCha8Rng, trunc: usize, scale: f64) -> FourierSeries {
    let cos: Vec<f64> = (0..trunc).map(|n| scale * rng.random_range(-1.0..1.0) / (n + 1) as f64).collect();
    let sin: Vec<f64> = (0..trunc).map(|n| scale * rng.random_range(-1.0..1.0) / (n + 1) as f64).collect();
    FourierSeries::from_trig(rng.random_range(-1.0..1.0), &cos, &sin, trunc)
}

/// Central-difference gradient of a scalar function of the real coordinates.
pub fn fd_gradient(cfg: &VortexConfiguration, step: f64, f: impl Fn(&VortexConfiguration) -> f64) -> Vec<f64> {
    let x = cfg.to_real();
    (0..x.len())
        .map(|i| {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += step;
            xm[i] -= step;
            (f(&cfg.from_real(&xp)) - f(&cfg.from_real(&xm))) / (2.0 * step)
        })
        .collect()
}

/// Largest componentwise relative error, with `floor` guarding tiny entries.
pub fn max_rel_err(a: &[f64], b: &[f64], floor: f64) -> f64 {
    let scale = b.iter().fold(floor, |m, v| m.max(v.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max)
}
