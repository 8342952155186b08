//! Quadrature check of the expansion
//! `½∫_{𝔻_ρ}|∇Φ_{a,g}|² = π(Σ d_j²) log(1/ρ) + W(a, g) + O(ρ)`,
//! where `𝔻_ρ` is the disc with the vortex discs of radius `ρ` removed.
//!
//! The punctured disc is split by a smooth partition of unity: around each
//! vortex a radial cutoff `χ_j` equal to one up to `R_j/2` and zero beyond
//! `R_j`, integrated with a log-radial annulus rule; the remainder
//! `1 − Σχ_j` is integrated over the whole disc.

use crate::config::VortexConfiguration;
use crate::disc::{hat_phi_gradient, psi_star_base_grad, w_disc, DiscEnergyContext};
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::harmonic::{extension_gradient, harmonic_conjugate, AnnulusQuadrature, RadialMap};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Gradient of `Φ_{a,g} = Φ̂_a − ψ*`, with `ψ* = ψ*_{α,g⁰}` plus the
/// harmonic extension of the conjugate of `ψ`.
pub fn grad_phi_ag(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
    z: Complex64,
) -> Result<Complex64> {
    let hat = hat_phi_gradient(cfg, z)?;
    let base = psi_star_base_grad(ctx, cfg, z)?;
    Ok(hat - base - extension_gradient(&harmonic_conjugate(psi), z))
}

/// Outer patch radius around each vortex.
pub fn patch_radii(cfg: &VortexConfiguration) -> Vec<f64> {
    let pts = cfg.points();
    pts.iter()
        .enumerate()
        .map(|(j, &a)| {
            let nearest = pts
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, &b)| 0.5 * (a - b).norm())
                .fold(f64::INFINITY, f64::min);
            0.8 * nearest.min(1.0 - a.norm())
        })
        .collect()
}

/// `e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})`, a `C^∞` step from 0 to 1 on `[0, 1]`.
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

fn cutoff(r: f64, outer: f64) -> f64 {
    1.0 - smooth_step((r - 0.5 * outer) / (0.5 * outer))
}

/// `½∬ |∇Φ_{a,g}|² dA` over the disc minus the vortex discs of radius `ρ`.
///
/// `ρ` must be positive and smaller than half of every patch radius.
pub fn punctured_energy(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
    rho: f64,
    quad: &AnnulusQuadrature,
) -> Result<f64> {
    let radii = patch_radii(cfg);
    let limit = 0.5 * radii.iter().copied().fold(f64::INFINITY, f64::min);
    if !(rho > 0.0 && rho < limit) {
        return Err(Error::InvalidRadius {
            reason: format!("ρ = {rho} must lie in (0, {limit})"),
        });
    }
    let conj = harmonic_conjugate(psi);
    let density = |z: Complex64| -> f64 {
        let g = hat_phi_gradient(cfg, z)
            .and_then(|h| Ok(h - psi_star_base_grad(ctx, cfg, z)?))
            .map(|g| g - extension_gradient(&conj, z));
        match g {
            Ok(g) => 0.5 * g.norm_sqr(),
            Err(_) => f64::NAN,
        }
    };
    let pts = cfg.points();
    let partition = |z: Complex64| -> f64 {
        pts.iter()
            .zip(&radii)
            .map(|(&a, &r)| cutoff((z - a).norm(), r))
            .sum()
    };

    let log_quad = quad.clone().with_map(RadialMap::Logarithmic);
    let mut total = 0.0;
    for (&a, &r) in pts.iter().zip(&radii) {
        total += log_quad.integrate(a, rho, r, |z| cutoff((z - a).norm(), r) * density(z))?;
    }
    let linear = quad.clone().with_map(RadialMap::Linear);
    total += linear.integrate(Complex64::new(0.0, 0.0), 0.0, 1.0, |z| {
        let w = 1.0 - partition(z);
        if w <= 0.0 {
            0.0
        } else {
            w * density(z)
        }
    })?;
    if !total.is_finite() {
        return Err(Error::InvalidInput("energy density is not finite on the quadrature nodes".into()));
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub rhos: Vec<f64>,
    pub energies: Vec<f64>,
    /// Fitted constant term.
    pub w_estimate: f64,
    /// Fitted coefficient of `ρ`.
    pub linear_coefficient: f64,
    pub w_formula: f64,
    pub abs_error: f64,
    /// `π Σ d_j²`, the fixed coefficient of `log(1/ρ)`.
    pub log_coefficient: f64,
    /// `(E(ρ_i) − E(ρ_{i+1})) / log(ρ_{i+1}/ρ_i)` for successive radii; tends to
    /// `log_coefficient`.
    pub slope_check: Vec<f64>,
    /// Residuals of the fit at each radius.
    pub residuals: Vec<f64>,
}

/// Fits `E(ρ) − π(Σd_j²) log(1/ρ) = W + Cρ` by least squares and compares
/// `W` with [`w_disc`].
pub fn expansion_report(
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
    rhos: &[f64],
    quad: &AnnulusQuadrature,
) -> Result<ExpansionReport> {
    if rhos.len() < 3 || rhos.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidInput(
            "need at least three strictly decreasing radii".into(),
        ));
    }
    let energies = rhos
        .iter()
        .map(|&r| punctured_energy(ctx, cfg, psi, r, quad))
        .collect::<Result<Vec<_>>>()?;
    let log_coefficient = PI * cfg.degree_square_sum() as f64;
    let y: Vec<f64> = rhos
        .iter()
        .zip(&energies)
        .map(|(&r, &e)| e - log_coefficient * (1.0 / r).ln())
        .collect();

    let n = rhos.len() as f64;
    let mean_r = rhos.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let sxx: f64 = rhos.iter().map(|r| (r - mean_r).powi(2)).sum();
    let sxy: f64 = rhos.iter().zip(&y).map(|(r, v)| (r - mean_r) * (v - mean_y)).sum();
    let linear_coefficient = sxy / sxx;
    let w_estimate = mean_y - linear_coefficient * mean_r;

    let residuals = rhos
        .iter()
        .zip(&y)
        .map(|(&r, &v)| v - w_estimate - linear_coefficient * r)
        .collect();
    let slope_check = rhos
        .windows(2)
        .zip(energies.windows(2))
        .map(|(r, e)| (e[0] - e[1]) / (r[1] / r[0]).ln())
        .collect();
    let w_formula = w_disc(ctx, cfg, psi)?;
    Ok(ExpansionReport {
        rhos: rhos.to_vec(),
        energies,
        w_estimate,
        linear_coefficient,
        w_formula,
        abs_error: (w_estimate - w_formula).abs(),
        log_coefficient,
        slope_check,
        residuals,
    })
}
