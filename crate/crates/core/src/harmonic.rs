//! Harmonic calculus on the unit circle and disc in Fourier variables,
//! plus polar quadrature on annuli.
//!
//! A boundary function `ψ = Σ a_n e^{inθ}` is identified with its harmonic
//! extension `a_0 + 2 Re Σ_{n≥1} a_n z^n`.

use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Normalized harmonic conjugate: `b_n = -i sign(n) a_n`, `b_0 = 0`.
pub fn harmonic_conjugate(psi: &FourierSeries) -> FourierSeries {
    psi.map_modes(|n, a| if n == 0 { Complex64::new(0.0, 0.0) } else { -I * a })
}

/// `∂ψ/∂θ`: `a_n ↦ i n a_n`.
pub fn tangential_derivative(psi: &FourierSeries) -> FourierSeries {
    psi.map_modes(|n, a| I * n as f64 * a)
}

/// `∂_r` of the harmonic extension at `r = 1`: `a_n ↦ |n| a_n`.
pub fn normal_derivative_of_extension(psi: &FourierSeries) -> FourierSeries {
    psi.map_modes(|n, a| n as f64 * a)
}

/// `|ψ|²_{H^{1/2}} = ∫_𝔻 |∇ψ|² = 2π Σ_n |n| |a_n|²`.
pub fn h_half_seminorm_sq(psi: &FourierSeries) -> f64 {
    4.0 * PI
        * psi
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum::<f64>()
}

/// `⟨φ, ψ⟩_{H^{1/2}} = ∫_𝔻 ∇φ·∇ψ`.
pub fn h_half_inner(phi: &FourierSeries, psi: &FourierSeries) -> f64 {
    let n = phi.trunc().min(psi.trunc());
    4.0 * PI
        * (1..=n)
            .map(|k| k as f64 * (phi.coeffs()[k] * psi.coeffs()[k].conj()).re)
            .sum::<f64>()
}

/// Value of the harmonic extension at `z ∈ 𝔻̄`.
pub fn extension_value(psi: &FourierSeries, z: Complex64) -> f64 {
    psi.mean() + 2.0 * psi.positive_part(z).re
}

/// Gradient of the harmonic extension, as `∂_x + i ∂_y`.
///
/// The extension is `Re h` with `h = a_0 + 2 Σ a_n z^n`, so the gradient is
/// `conj(h')`.
pub fn extension_gradient(psi: &FourierSeries, z: Complex64) -> Complex64 {
    let c = psi.coeffs();
    let dh = c[1..]
        .iter()
        .enumerate()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (m, a)| acc * z + a * (m + 1) as f64);
    (2.0 * dh).conj()
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n > 0);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// How Gauss–Legendre nodes are placed between inner and outer radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialMap {
    /// Nodes uniform in `r`; exact for polynomial integrands in `r`.
    Linear,
    /// Nodes uniform in `log r`; resolves `1/r²` growth near a small inner radius.
    Logarithmic,
}

pub const DEFAULT_RADIAL_NODES: usize = 128;
pub const DEFAULT_ANGULAR_NODES: usize = 512;

/// Tensor rule on annuli: Gauss–Legendre in the radius, trapezoid in the angle.
#[derive(Debug, Clone)]
pub struct AnnulusQuadrature {
    radial: GaussLegendre,
    angular: usize,
    map: RadialMap,
}

impl Default for AnnulusQuadrature {
    fn default() -> Self {
        Self::new(DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES)
    }
}

impl AnnulusQuadrature {
    pub fn new(radial: usize, angular: usize) -> Self {
        Self {
            radial: GaussLegendre::new(radial),
            angular: angular.max(1),
            map: RadialMap::Linear,
        }
    }

    pub fn with_map(mut self, map: RadialMap) -> Self {
        self.map = map;
        self
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular
    }

    pub fn map(&self) -> RadialMap {
        self.map
    }

    /// `∬ field dA` over `{inner ≤ |z − centre| ≤ outer}`.
    ///
    /// Radial lines are summed in parallel and reduced in a fixed order, so
    /// the result does not depend on the thread count.
    pub fn integrate<F>(&self, centre: Complex64, inner: f64, outer: f64, field: F) -> Result<f64>
    where
        F: Fn(Complex64) -> f64 + Sync,
    {
        if !(inner >= 0.0 && outer > inner && outer.is_finite()) {
            return Err(Error::InvalidRadius {
                reason: format!("annulus [{inner}, {outer}] is empty or invalid"),
            });
        }
        if self.map == RadialMap::Logarithmic && inner <= 0.0 {
            return Err(Error::InvalidRadius {
                reason: "logarithmic radial map needs a positive inner radius".into(),
            });
        }
        let dtheta = 2.0 * PI / self.angular as f64;
        let dirs: Vec<Complex64> = (0..self.angular)
            .map(|k| Complex64::from_polar(1.0, k as f64 * dtheta))
            .collect();
        let lines: Vec<f64> = self
            .radial
            .nodes()
            .par_iter()
            .zip(self.radial.weights().par_iter())
            .map(|(&x, &w)| {
                // r and the measure r·dr/dx·w at this node
                let (r, jac) = match self.map {
                    RadialMap::Linear => {
                        let half = 0.5 * (outer - inner);
                        let r = inner + half * (x + 1.0);
                        (r, half * r)
                    }
                    RadialMap::Logarithmic => {
                        let span = (outer / inner).ln();
                        let r = inner * (0.5 * span * (x + 1.0)).exp();
                        (r, 0.5 * span * r * r)
                    }
                };
                let ring: f64 = dirs.iter().map(|d| field(centre + r * d)).sum();
                w * jac * ring * dtheta
            })
            .collect();
        Ok(lines.iter().sum())
    }
}

/// `∬_{ρ ≤ |z| ≤ 1} field dA`.
pub fn integrate_annulus<F>(field: F, rho: f64, quad: &AnnulusQuadrature) -> Result<f64>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidRadius {
            reason: format!("inner radius {rho} outside [0, 1)"),
        });
    }
    quad.integrate(Complex64::new(0.0, 0.0), rho, 1.0, field)
}
