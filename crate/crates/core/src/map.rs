//! Conformal representations `f: 𝔻 → Ω`.
//!
//! Every quantity on `Ω = f(𝔻)` is handled through its pullback to the
//! disc, so a map only has to provide its value and first three complex
//! derivatives.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Holomorphic map of the closed unit disc with derivatives up to order 3.
pub trait ConformalMap: Sync {
    fn eval(&self, z: Complex64) -> Complex64;

    /// `f^{(order)}(z)` for `order ∈ {1, 2, 3}`.
    fn derivative(&self, z: Complex64, order: u32) -> Complex64;

    fn d1(&self, z: Complex64) -> Complex64 {
        self.derivative(z, 1)
    }
    fn d2(&self, z: Complex64) -> Complex64 {
        self.derivative(z, 2)
    }
    fn d3(&self, z: Complex64) -> Complex64 {
        self.derivative(z, 3)
    }
}

impl<M: ConformalMap + ?Sized> ConformalMap for &M {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }
    fn derivative(&self, z: Complex64, order: u32) -> Complex64 {
        (**self).derivative(z, order)
    }
}

/// `f(z) = Σ_m c_m z^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalPolyMap {
    coeffs: Vec<Complex64>,
}

impl ConformalPolyMap {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyMap);
        }
        Ok(Self { coeffs })
    }

    pub fn identity() -> Self {
        Self::scaling(1.0)
    }

    /// `f(z) = R z`.
    pub fn scaling(r: f64) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(r, 0.0)],
        }
    }

    /// `f(z) = z + ε z^m`.
    pub fn perturbed_identity(eps: Complex64, power: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); power.max(1) + 1];
        coeffs[1] = Complex64::new(1.0, 0.0);
        coeffs[power] += eps;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Upper bound of `|f^{(order)}|` on the closed unit disc.
    pub fn derivative_bound(&self, order: u32) -> f64 {
        let k = order as usize;
        self.coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(m, c)| falling(m, k) * c.norm())
            .sum()
    }
}

fn falling(m: usize, k: usize) -> f64 {
    (0..k).map(|i| (m - i) as f64).product()
}

impl ConformalMap for ConformalPolyMap {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn derivative(&self, z: Complex64, order: u32) -> Complex64 {
        let k = order as usize;
        self.coeffs
            .iter()
            .enumerate()
            .skip(k)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
                acc * z + c * falling(m, k)
            })
    }
}

/// Disc automorphism `m_β(z) = (z + β) / (1 + β̄ z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    beta: Complex64,
}

impl MobiusMap {
    pub fn new(beta: Complex64) -> Result<Self> {
        if !(beta.norm() < 1.0) {
            return Err(Error::InvalidInput(format!(
                "Möbius parameter {beta} must lie in the open unit disc"
            )));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

impl ConformalMap for MobiusMap {
    fn eval(&self, z: Complex64) -> Complex64 {
        (z + self.beta) / (1.0 + self.beta.conj() * z)
    }

    fn derivative(&self, z: Complex64, order: u32) -> Complex64 {
        // m(z) = 1/b̄ − (1 − |β|²)/b̄ · (1 + b̄z)^{-1}
        let bc = self.beta.conj();
        let s = 1.0 - self.beta.norm_sqr();
        let w = 1.0 + bc * z;
        match order {
            1 => s / (w * w),
            2 => -2.0 * s * bc / (w * w * w),
            3 => 6.0 * s * bc * bc / (w * w * w * w),
            _ => panic!("derivative order {order} not supported"),
        }
    }
}

/// `outer ∘ inner`.
#[derive(Debug, Clone)]
pub struct Composed<F, G> {
    pub outer: F,
    pub inner: G,
}

impl<F: ConformalMap, G: ConformalMap> ConformalMap for Composed<F, G> {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.outer.eval(self.inner.eval(z))
    }

    fn derivative(&self, z: Complex64, order: u32) -> Complex64 {
        let w = self.inner.eval(z);
        let (g1, g2, g3) = (self.inner.d1(z), self.inner.d2(z), self.inner.d3(z));
        match order {
            1 => self.outer.d1(w) * g1,
            2 => self.outer.d2(w) * g1 * g1 + self.outer.d1(w) * g2,
            3 => {
                self.outer.d3(w) * g1 * g1 * g1
                    + 3.0 * self.outer.d2(w) * g1 * g2
                    + self.outer.d1(w) * g3
            }
            _ => panic!("derivative order {order} not supported"),
        }
    }
}

/// Number of boundary samples used for the simplicity sweep.
pub const BOUNDARY_SAMPLES: usize = 512;

/// Outcome of [`validate_map`].
#[derive(Debug, Clone, PartialEq)]
pub struct MapValidation {
    /// Smallest `|f'|` over the validation grid.
    pub min_abs_derivative: f64,
    /// Certified lower bound of `|f'|` on the closed disc.
    pub certified_lower_bound: f64,
    /// Winding number of the boundary image about `f(0)`.
    pub winding_number: i64,
    pub boundary_samples: usize,
}

/// Numerical membership test for the admissible maps.
///
/// `f'` is sampled on a polar grid with `grid_density` radii and
/// `4·grid_density` angles covering the closed disc; each sample is
/// turned into a lower bound via `|f'(z)| ≥ |f'(z_k)| − max|f''|·dist`.
/// The boundary polygon with [`BOUNDARY_SAMPLES`] vertices must wind once
/// around `f(0)` and have no crossing segments.
pub fn validate_map(f: &ConformalPolyMap, grid_density: usize) -> Result<MapValidation> {
    if f.coeffs.is_empty() {
        return Err(Error::EmptyMap);
    }
    let c1 = f.coeffs.get(1).copied().unwrap_or_default();
    if c1.norm() == 0.0 {
        return Err(Error::DegenerateDerivative { bound: 0.0 });
    }
    let nr = grid_density.max(2);
    let nt = 4 * nr;
    let dr = 1.0 / (nr - 1) as f64;
    let dt = 2.0 * PI / nt as f64;
    let lipschitz = f.derivative_bound(2);
    let mut min_abs = f64::INFINITY;
    let mut bound = f64::INFINITY;
    for i in 0..nr {
        let r = i as f64 * dr;
        // Every point of the disc lies within this distance of a node.
        let reach = 0.5 * (dr + r * dt).hypot(dr);
        let count = if i == 0 { 1 } else { nt };
        for j in 0..count {
            let z = Complex64::from_polar(r, j as f64 * dt);
            let v = f.d1(z).norm();
            min_abs = min_abs.min(v);
            bound = bound.min(v - lipschitz * reach);
        }
    }
    if !(bound > 0.0) {
        return Err(Error::DegenerateDerivative { bound });
    }

    let samples: Vec<Complex64> = (0..BOUNDARY_SAMPLES)
        .map(|k| f.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / BOUNDARY_SAMPLES as f64)))
        .collect();
    let centre = f.eval(Complex64::new(0.0, 0.0));
    let winding = winding_number(&samples, centre);
    if winding != 1 {
        return Err(Error::BoundaryNotSimple {
            reason: format!("winding number {winding} about f(0)"),
        });
    }
    if let Some((a, b)) = first_crossing(&samples) {
        return Err(Error::BoundaryNotSimple {
            reason: format!("segments {a} and {b} intersect"),
        });
    }
    Ok(MapValidation {
        min_abs_derivative: min_abs,
        certified_lower_bound: bound,
        winding_number: winding,
        boundary_samples: BOUNDARY_SAMPLES,
    })
}

/// Winding number of the closed polygon `pts` about `p`.
pub fn winding_number(pts: &[Complex64], p: Complex64) -> i64 {
    let n = pts.len();
    let total: f64 = (0..n)
        .map(|k| ((pts[(k + 1) % n] - p) / (pts[k] - p)).arg())
        .sum();
    (total / (2.0 * PI)).round() as i64
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// O(S²) sweep over non-adjacent segment pairs of a closed polygon.
fn first_crossing(pts: &[Complex64]) -> Option<(usize, usize)> {
    let n = pts.len();
    for i in 0..n {
        let (p1, p2) = (pts[i], pts[(i + 1) % n]);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(p1, p2, pts[j], pts[(j + 1) % n]) {
                return Some((i, j));
            }
        }
    }
    None
}
