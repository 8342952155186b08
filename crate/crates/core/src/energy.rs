//! Scalar energies of a vortex configuration and their second-order reports.

use crate::config::VortexConfiguration;
use crate::error::Result;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// A critical point is nondegenerate when the smallest singular value of
/// the Hessian exceeds this (the radial configuration has eigenvalues ±2π).
pub const TOL_ND: f64 = 1e-8 * PI;

/// Smooth real function on admissible configurations with fixed degrees,
/// differentiated in the coordinates `(x_1, y_1, …, x_k, y_k)`.
pub trait Energy: Sync {
    fn value(&self, cfg: &VortexConfiguration) -> Result<f64>;
    fn gradient(&self, cfg: &VortexConfiguration) -> Result<DVector<f64>>;
    fn hessian(&self, cfg: &VortexConfiguration) -> Result<DMatrix<f64>>;

    fn report(&self, cfg: &VortexConfiguration) -> Result<EnergyReport> {
        Ok(EnergyReport::new(
            self.value(cfg)?,
            self.gradient(cfg)?,
            self.hessian(cfg)?,
        ))
    }
}

/// Value, gradient and Hessian with a nondegeneracy verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
    pub nondegenerate: bool,
    /// `σ_max / σ_min` of the Hessian (infinite when singular).
    pub condition_number: f64,
    pub smallest_singular_value: f64,
}

impl EnergyReport {
    pub fn new(value: f64, gradient: DVector<f64>, hessian: DMatrix<f64>) -> Self {
        let sv = hessian.singular_values();
        let smin = sv.min();
        let smax = sv.max();
        Self {
            value,
            gradient,
            nondegenerate: smin > TOL_ND,
            condition_number: if smin > 0.0 { smax / smin } else { f64::INFINITY },
            smallest_singular_value: smin,
            hessian,
        }
    }
}

/// Verdict and conditioning of a symmetric matrix, `(σ_min, nondegenerate)`.
pub fn nondegeneracy(hessian: &DMatrix<f64>) -> (f64, bool) {
    let smin = hessian.singular_values().min();
    (smin, smin > TOL_ND)
}

/// Central-difference gradient of an energy (test and diagnostic helper).
pub fn fd_gradient<E: Energy + ?Sized>(
    energy: &E,
    cfg: &VortexConfiguration,
    step: f64,
) -> Result<DVector<f64>> {
    let x = cfg.to_real();
    let mut g = DVector::zeros(x.len());
    for i in 0..x.len() {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[i] += step;
        xm[i] -= step;
        g[i] = (energy.value(&cfg.from_real(&xp))? - energy.value(&cfg.from_real(&xm))?)
            / (2.0 * step);
    }
    Ok(g)
}

/// Central differences of the analytic gradient.
pub fn fd_hessian<E: Energy + ?Sized>(
    energy: &E,
    cfg: &VortexConfiguration,
    step: f64,
) -> Result<DMatrix<f64>> {
    let x = cfg.to_real();
    let n = x.len();
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[i] += step;
        xm[i] -= step;
        let col = (energy.gradient(&cfg.from_real(&xp))? - energy.gradient(&cfg.from_real(&xm))?)
            / (2.0 * step);
        h.set_column(i, &col);
    }
    Ok(h)
}
