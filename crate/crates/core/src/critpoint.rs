//! Critical points of `Ŵ^Ω` and `W^Ω(·, g)`: damped Newton, multistart
//! maximization of `Ŵ^Ω` and continuation along parameter paths.

use crate::config::{validate_configuration, VortexConfiguration};
use crate::disc::DiscEnergyContext;
use crate::energy::{nondegeneracy, Energy};
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::map::ConformalMap;
use crate::transport::{HatWOmega, WOmega};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

pub const TOL_NEWTON: f64 = 1e-12;
pub const MAX_NEWTON_ITERATIONS: usize = 50;
pub const DEFAULT_MULTISTART: usize = 16;
pub const MULTISTART_RADIUS: f64 = 0.8;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-12;
/// Values closer than this count as a tie in [`find_max_hat_w`].
const TIE: f64 = 1e-12;
/// Converged starts closer than this count as the same critical point.
const SAME_POINT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport {
    pub location: VortexConfiguration,
    pub value: f64,
    pub residual_norm: f64,
    pub hessian: DMatrix<f64>,
    pub smallest_singular_value: f64,
    pub nondegenerate: bool,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxReport {
    pub best: CriticalPointReport,
    /// Every converged start reached the same point.
    pub global_candidate: bool,
    pub starts: usize,
    pub converged_starts: usize,
}

fn report<E: Energy + ?Sized>(
    energy: &E,
    location: VortexConfiguration,
    residual_norm: f64,
    iterations: usize,
) -> Result<CriticalPointReport> {
    let hessian = energy.hessian(&location)?;
    let (smin, nondegenerate) = nondegeneracy(&hessian);
    Ok(CriticalPointReport {
        value: energy.value(&location)?,
        location,
        residual_norm,
        hessian,
        smallest_singular_value: smin,
        nondegenerate,
        iterations,
        converged: true,
    })
}

fn newton_direction(h: &DMatrix<f64>, g: &DVector<f64>) -> DVector<f64> {
    match h.clone().lu().solve(&(-g)) {
        Some(p) if p.iter().all(|v| v.is_finite()) => p,
        _ => h.clone().svd(true, true).solve(&(-g), 1e-14).unwrap_or_else(|_| -g),
    }
}

/// Damped Newton on `∇E = 0` with Armijo backtracking on `½‖∇E‖²`.
///
/// Trial points outside the admissible configurations are rejected; if no
/// admissible trial exists the search fails with `LeftAdmissibleRegion`.
pub fn newton<E: Energy + ?Sized>(energy: &E, init: &VortexConfiguration) -> Result<CriticalPointReport> {
    let mut cfg = validate_configuration(init)?;
    let mut g = energy.gradient(&cfg)?;
    let mut r = g.norm();
    for it in 0..MAX_NEWTON_ITERATIONS {
        if r <= TOL_NEWTON {
            return report(energy, cfg, r, it);
        }
        let p = newton_direction(&energy.hessian(&cfg)?, &g);
        let x = DVector::from_vec(cfg.to_real());
        let mut t = 1.0;
        let mut admissible_trial = false;
        let mut accepted = None;
        while t >= MIN_STEP {
            let trial = cfg.from_real((&x + t * &p).as_slice());
            if trial.is_admissible() {
                admissible_trial = true;
                if let Ok(gt) = energy.gradient(&trial) {
                    let rt = gt.norm();
                    if rt.is_finite() && rt * rt <= (1.0 - 2.0 * ARMIJO * t) * r * r {
                        accepted = Some((trial, gt, rt));
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((next, gn, rn)) => {
                cfg = next;
                g = gn;
                r = rn;
            }
            None if !admissible_trial => return Err(Error::LeftAdmissibleRegion { iteration: it }),
            None => return Err(Error::NewtonDiverged { iterations: it, residual: r }),
        }
    }
    if r <= TOL_NEWTON {
        return report(energy, cfg, r, MAX_NEWTON_ITERATIONS);
    }
    Err(Error::NewtonDiverged {
        iterations: MAX_NEWTON_ITERATIONS,
        residual: r,
    })
}

/// Zero of `∇_α[Ŵ^𝔻(α) + π Σ d_j² log|f'(α_j)|]` near `init`.
pub fn find_critical_hat_w<M: ConformalMap>(f: &M, init: &VortexConfiguration) -> Result<CriticalPointReport> {
    newton(&HatWOmega { map: f }, init)
}

/// Zero of `∇_α[W^𝔻(α, g⁰e^{iψ}) + π Σ d_j² log|f'(α_j)|]` near `init`.
pub fn find_critical_w<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    psi: &FourierSeries,
    init: &VortexConfiguration,
) -> Result<CriticalPointReport> {
    newton(&WOmega { map: f, ctx, psi }, init)
}

/// `n` points of a Vogel spiral filling the disc of radius `radius`; the
/// first point is the centre.
pub fn multistart_lattice(n: usize, radius: f64) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| Complex64::from_polar(radius * (i as f64 / n as f64).sqrt(), golden * i as f64))
        .collect()
}

/// Gradient ascent with backtracking, used to bring a start into the basin
/// of a maximum before Newton polishing.
fn ascend<E: Energy + ?Sized>(energy: &E, init: VortexConfiguration) -> Result<VortexConfiguration> {
    let mut cfg = init;
    let mut value = energy.value(&cfg)?;
    let mut t = 0.05;
    for _ in 0..500 {
        let g = energy.gradient(&cfg)?;
        if g.norm() < 1e-4 {
            break;
        }
        let x = DVector::from_vec(cfg.to_real());
        loop {
            let trial = cfg.from_real((&x + t * &g).as_slice());
            if trial.is_admissible() {
                let v = energy.value(&trial)?;
                if v > value {
                    cfg = trial;
                    value = v;
                    t = (t * 1.5).min(1.0);
                    break;
                }
            }
            t *= 0.5;
            if t < MIN_STEP {
                return Ok(cfg);
            }
        }
    }
    Ok(cfg)
}

/// Maximizer of `Ŵ^Ω ∘ f` for a single vortex of degree one.
///
/// Each start on [`multistart_lattice`] is driven uphill and polished by
/// Newton; among converged local maxima the largest value wins, ties
/// broken by the smallest `|α|`.
pub fn find_max_hat_w<M: ConformalMap>(f: &M, multistart: usize) -> Result<MaxReport> {
    let energy = HatWOmega { map: f };
    let starts = multistart_lattice(multistart.max(1), MULTISTART_RADIUS);
    let mut found: Vec<CriticalPointReport> = starts
        .par_iter()
        .map(|&a| -> Result<CriticalPointReport> {
            let cfg = VortexConfiguration::single(a, 1)?;
            let cfg = ascend(&energy, cfg)?;
            newton(&energy, &cfg)
        })
        .filter_map(|r| r.ok())
        .filter(|r| r.hessian.symmetric_eigenvalues().max() < 0.0)
        .collect();
    if found.is_empty() {
        return Err(Error::NoCriticalPointFound);
    }
    found.sort_by(|a, b| {
        if (a.value - b.value).abs() <= TIE {
            a.location.points()[0].norm().total_cmp(&b.location.points()[0].norm())
        } else {
            b.value.total_cmp(&a.value)
        }
    });
    let best_point = found[0].location.points()[0];
    let global_candidate = found
        .iter()
        .all(|r| (r.location.points()[0] - best_point).norm() < SAME_POINT);
    Ok(MaxReport {
        converged_starts: found.len(),
        best: found.swap_remove(0),
        global_candidate,
        starts: starts.len(),
    })
}

/// Warm-started Newton along a path of energies.
pub fn continue_critical<E: Energy>(path: &[E], start: &CriticalPointReport) -> Result<Vec<CriticalPointReport>> {
    if !start.converged || !start.nondegenerate {
        return Err(Error::InvalidInput(
            "continuation must start from a converged nondegenerate critical point".into(),
        ));
    }
    let mut out = Vec::with_capacity(path.len());
    let mut current = start.location.clone();
    for (step, energy) in path.iter().enumerate() {
        let r = newton(energy, &current)?;
        if !r.nondegenerate {
            return Err(Error::NondegeneracyLost {
                step,
                sigma: r.smallest_singular_value,
            });
        }
        current = r.location.clone();
        out.push(r);
    }
    Ok(out)
}
