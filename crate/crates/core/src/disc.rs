//! Explicit unit-disc quantities: the regular part Φ̂, the energies Ŵ and
//! W(·, g⁰e^{iψ}), the canonical boundary datum and the normal trace N.

use crate::config::{validate_configuration, VortexConfiguration};
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::harmonic::{h_half_seminorm_sq, harmonic_conjugate};
use crate::wirtinger::Wirtinger;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Reference configuration `α⁰` defining the boundary datum `g⁰ = g^{α⁰}`,
/// together with the truncation used for boundary series.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscEnergyContext {
    base: VortexConfiguration,
    trunc: usize,
}

impl DiscEnergyContext {
    pub fn new(base: VortexConfiguration, trunc: usize) -> Result<Self> {
        let base = validate_configuration(&base)?;
        if trunc == 0 {
            return Err(Error::InvalidInput("truncation must be positive".into()));
        }
        Ok(Self { base, trunc })
    }

    pub fn base(&self) -> &VortexConfiguration {
        &self.base
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    fn check(&self, cfg: &VortexConfiguration) -> Result<()> {
        if cfg.total_degree() != self.base.total_degree() {
            return Err(Error::InvalidInput(format!(
                "total degree {} differs from the base datum degree {}",
                cfg.total_degree(),
                self.base.total_degree()
            )));
        }
        Ok(())
    }

    /// Moving points with weight `d_j` followed by base points with weight `−d⁰_j`.
    fn weighted_points<'a>(
        &'a self,
        cfg: &'a VortexConfiguration,
    ) -> impl Iterator<Item = (Complex64, f64)> + 'a {
        let moving = cfg.points().iter().zip(cfg.degrees()).map(|(&a, &d)| (a, d as f64));
        let fixed = self
            .base
            .points()
            .iter()
            .zip(self.base.degrees())
            .map(|(&a, &d)| (a, -(d as f64)));
        moving.chain(fixed)
    }
}

fn log_reflected(p: Complex64, q: Complex64) -> f64 {
    if p == q {
        (-p.norm_sqr()).ln_1p()
    } else {
        (1.0 - p.conj() * q).norm().ln()
    }
}

/// `Σ_j d_j (log|z − α_j| − log|1 − ᾱ_j z|)`.
pub fn hat_phi(cfg: &VortexConfiguration, z: Complex64) -> Result<f64> {
    let mut acc = 0.0;
    for (j, (&a, &d)) in cfg.points().iter().zip(cfg.degrees()).enumerate() {
        let r = (z - a).norm();
        if r == 0.0 {
            return Err(Error::EvaluationAtVortex { index: j });
        }
        acc += d as f64 * (r.ln() - (1.0 - a.conj() * z).norm().ln());
    }
    Ok(acc)
}

/// Gradient of `Φ̂` as a complex number `∂_x + i∂_y`.
pub fn hat_phi_gradient(cfg: &VortexConfiguration, z: Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, (&a, &d)) in cfg.points().iter().zip(cfg.degrees()).enumerate() {
        if z == a {
            return Err(Error::EvaluationAtVortex { index: j });
        }
        acc += d as f64 * (1.0 / (z - a) + a.conj() / (1.0 - a.conj() * z));
    }
    Ok(acc.conj())
}

/// The renormalized energy with prescribed degrees on the disc.
pub fn hat_w(cfg: &VortexConfiguration) -> f64 {
    let (pts, deg) = (cfg.points(), cfg.degrees());
    let mut acc = 0.0;
    for j in 0..pts.len() {
        let dj = deg[j] as f64;
        acc += PI * dj * dj * (-pts[j].norm_sqr()).ln_1p();
        for l in 0..pts.len() {
            if l != j {
                let c = PI * dj * deg[l] as f64;
                acc += c * (log_reflected(pts[j], pts[l]) - (pts[j] - pts[l]).norm().ln());
            }
        }
    }
    acc
}

fn hat_w_terms(cfg: &VortexConfiguration, w: &mut Wirtinger) {
    let (pts, deg) = (cfg.points(), cfg.degrees());
    for j in 0..pts.len() {
        let dj = deg[j] as f64;
        w.log_one_minus_modulus_sq(j, pts[j], PI * dj * dj);
        for l in 0..pts.len() {
            if l != j {
                let c = PI * dj * deg[l] as f64;
                w.log_distance(j, l, pts[j], pts[l], -c);
                w.log_reflected_pair(j, l, pts[j], pts[l], c);
            }
        }
    }
}

pub fn hat_w_grad(cfg: &VortexConfiguration) -> DVector<f64> {
    let mut w = Wirtinger::new(cfg.len());
    hat_w_terms(cfg, &mut w);
    w.gradient()
}

pub fn hat_w_hess(cfg: &VortexConfiguration) -> DMatrix<f64> {
    let mut w = Wirtinger::new(cfg.len());
    hat_w_terms(cfg, &mut w);
    w.hessian()
}

/// `∂Φ̂/∂ν` on the circle: `a_0 = d`, `a_n = Σ_j d_j ᾱ_jⁿ`.
pub fn canonical_datum_density(cfg: &VortexConfiguration, trunc: usize) -> FourierSeries {
    let mut coeffs = vec![Complex64::new(cfg.total_degree() as f64, 0.0); trunc + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = cfg
            .points()
            .iter()
            .zip(cfg.degrees())
            .map(|(&a, &d)| d as f64 * a.conj().powu(n as u32))
            .sum();
    }
    FourierSeries::from_coeffs(coeffs)
}

/// The canonical datum `g^α(e^{iθ}) = Π_j B_{α_j}(e^{iθ})^{d_j}` with
/// `B_α(z) = (z − α)/(1 − ᾱz)`; its phase primitive has zero mean.
pub fn canonical_datum(cfg: &VortexConfiguration, theta: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    cfg.points()
        .iter()
        .zip(cfg.degrees())
        .fold(Complex64::new(1.0, 0.0), |acc, (&a, &d)| {
            acc * ((z - a) / (1.0 - a.conj() * z)).powi(d)
        })
}

/// Gradient of `ψ*_{α,g⁰} = 2Σ_j d_j (log|1 − ᾱ⁰_j z| − log|1 − ᾱ_j z|)`.
pub fn psi_star_base_grad(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    z: Complex64,
) -> Result<Complex64> {
    ctx.check(cfg)?;
    Ok(ctx
        .weighted_points(cfg)
        .map(|(a, w)| {
            let q = 1.0 - a.conj() * z;
            2.0 * w * a * q / q.norm_sqr()
        })
        .sum())
}

/// Boundary trace of `ψ*_{α,g⁰}`: `s_n = Σ_j d_j (ᾱ_jⁿ − (ᾱ⁰_j)ⁿ)/n`, zero mean.
pub fn psi_star_base_boundary(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
) -> Result<FourierSeries> {
    ctx.check(cfg)?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); ctx.trunc + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = ctx
            .weighted_points(cfg)
            .map(|(a, w)| w * a.conj().powu(n as u32))
            .sum::<Complex64>()
            / n as f64;
    }
    Ok(FourierSeries::from_coeffs(coeffs))
}

/// `P, P', P''` for `P(z) = Σ_{n≥1} b_n zⁿ` (`b_0` of a conjugate series is 0).
fn poly_derivs(b: &FourierSeries, z: Complex64) -> [Complex64; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut dp, mut half_d2p) = (zero, zero, zero);
    for &c in b.coeffs().iter().rev() {
        half_d2p = half_d2p * z + dp;
        dp = dp * z + p;
        p = p * z + c;
    }
    [p, dp, 2.0 * half_d2p]
}

/// `W(α, g⁰e^{iψ}) = Ŵ(α) + ½|ψ*_{α,g⁰} + ψ*|²_{H^{1/2}}`.
///
/// The self term of the base series is summed in closed form,
/// `½|ψ*_{α,g⁰}|² = −2π Σ_{p,q} w_p w_q log|1 − β̄_p β_q|`, and the cross term
/// is `4π Σ_p w_p Re P(β_p)` with `P` the holomorphic part of `ψ*`.
pub fn w_disc(ctx: &DiscEnergyContext, cfg: &VortexConfiguration, psi: &FourierSeries) -> Result<f64> {
    ctx.check(cfg)?;
    let pts: Vec<(Complex64, f64)> = ctx.weighted_points(cfg).collect();
    let mut self_term = 0.0;
    for &(p, wp) in &pts {
        for &(q, wq) in &pts {
            self_term += wp * wq * log_reflected(p, q);
        }
    }
    let b = harmonic_conjugate(psi);
    let cross: f64 = pts
        .iter()
        .map(|&(p, wp)| wp * b.positive_part(p).re)
        .sum();
    Ok(hat_w(cfg) - 2.0 * PI * self_term + 4.0 * PI * cross + 0.5 * h_half_seminorm_sq(psi))
}

fn w_disc_terms(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
    w: &mut Wirtinger,
) -> Result<()> {
    ctx.check(cfg)?;
    hat_w_terms(cfg, w);
    let (pts, deg) = (cfg.points(), cfg.degrees());
    let b = harmonic_conjugate(psi);
    for j in 0..pts.len() {
        let dj = deg[j] as f64;
        w.log_one_minus_modulus_sq(j, pts[j], -2.0 * PI * dj * dj);
        for l in 0..pts.len() {
            if l != j {
                w.log_reflected_pair(j, l, pts[j], pts[l], -2.0 * PI * dj * deg[l] as f64);
            }
        }
        for (&beta, &d0) in ctx.base.points().iter().zip(ctx.base.degrees()) {
            w.log_reflected_fixed(j, pts[j], beta, 4.0 * PI * dj * d0 as f64);
        }
        let [_, dp, d2p] = poly_derivs(&b, pts[j]);
        w.real_part_holomorphic(j, 4.0 * PI * dj * dp, 4.0 * PI * dj * d2p);
    }
    Ok(())
}

pub fn w_disc_grad(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<DVector<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    w_disc_terms(ctx, cfg, psi, &mut w)?;
    Ok(w.gradient())
}

pub fn w_disc_hess(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<DMatrix<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    w_disc_terms(ctx, cfg, psi, &mut w)?;
    Ok(w.hessian())
}

/// `N = ∂ψ*/∂τ + 2Σ d⁰_j α⁰_j∧z/|z−α⁰_j|² − 2Σ d_j α_j∧z/|z−α_j|²` on the circle.
///
/// Uses `α∧z/|z−α|² = ∂_τ log|1 − ᾱz|`, whose coefficients are `−iᾱⁿ/2`.
pub fn n_disc(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<FourierSeries> {
    ctx.check(cfg)?;
    let trunc = ctx.trunc.max(psi.trunc());
    let i = Complex64::new(0.0, 1.0);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); trunc + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        let vortices: Complex64 = ctx
            .weighted_points(cfg)
            .map(|(a, w)| w * a.conj().powu(n as u32))
            .sum();
        *c = n as f64 * psi.coeff(n as i64) + i * vortices;
    }
    Ok(FourierSeries::from_coeffs(coeffs))
}

/// Pointwise value of `N` at `e^{iθ}` (exact, no truncation of the vortex terms).
pub fn n_disc_at(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
    theta: f64,
) -> Result<f64> {
    ctx.check(cfg)?;
    let z = Complex64::from_polar(1.0, theta);
    let wedge = |a: Complex64| (a.re * z.im - a.im * z.re) / (z - a).norm_sqr();
    let dtau = crate::harmonic::tangential_derivative(&harmonic_conjugate(psi)).eval(theta);
    let vortices: f64 = ctx.weighted_points(cfg).map(|(a, w)| w * wedge(a)).sum();
    Ok(dtau - 2.0 * vortices)
}
