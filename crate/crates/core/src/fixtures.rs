//! Closed-form fixtures for the radial configuration and a few identities,
//! runnable at any time as a self-check.

use crate::config::VortexConfiguration;
use crate::disc::{hat_w, hat_w_grad, hat_w_hess, w_disc, w_disc_hess, DiscEnergyContext};
use crate::error::Result;
use crate::expansion::expansion_report;
use crate::fourier::FourierSeries;
use crate::harmonic::AnnulusQuadrature;
use crate::map::{ConformalMap, ConformalPolyMap, MobiusMap};
use crate::ndcheck::{
    assemble_du_matrix_at, check_nd1, du_star_matrix_analytic_disc, magic_determinant_check,
    DEFAULT_FD_STEP,
};
use crate::transport::transport_hat_w;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub pass: bool,
    /// Measured deviation from the closed-form value.
    pub deviation: f64,
    pub tolerance: f64,
}

fn outcome(name: &'static str, deviation: f64, tolerance: f64) -> FixtureOutcome {
    FixtureOutcome {
        name,
        pass: deviation <= tolerance,
        deviation,
        tolerance,
    }
}

fn origin() -> Result<VortexConfiguration> {
    VortexConfiguration::single(Complex64::new(0.0, 0.0), 1)
}

pub fn run_all() -> Result<Vec<FixtureOutcome>> {
    let id2 = DMatrix::<f64>::identity(2, 2);
    let zero_cfg = origin()?;
    let ctx = DiscEnergyContext::new(zero_cfg.clone(), 32)?;
    let zero = FourierSeries::zeros(1);
    let mut out = vec![
        outcome("hat_w_gradient_at_origin", hat_w_grad(&zero_cfg).amax(), 1e-10),
        outcome(
            "hat_w_hessian_at_origin",
            (hat_w_hess(&zero_cfg) + 2.0 * PI * &id2).amax(),
            1e-10,
        ),
        outcome(
            "w_hessian_at_origin",
            (w_disc_hess(&ctx, &zero_cfg, &zero)? - 2.0 * PI * &id2).amax(),
            1e-8,
        ),
    ];

    let half = VortexConfiguration::single(Complex64::new(0.5, 0.0), 1)?;
    out.push(outcome(
        "hat_w_single_vortex",
        (hat_w(&half) - PI * 0.75f64.ln()).abs(),
        1e-12,
    ));
    out.push(outcome(
        "w_single_vortex",
        (w_disc(&ctx, &half, &zero)? + PI * 0.75f64.ln()).abs(),
        1e-12,
    ));

    let n = 8;
    let analytic = du_star_matrix_analytic_disc(n)?;
    let mut diag = DMatrix::zeros(2 * n, 2 * n);
    for k in 1..=n {
        let d = if k == 1 { -1.0 } else { k as f64 };
        diag[(2 * k - 2, 2 * k - 2)] = d;
        diag[(2 * k - 1, 2 * k - 1)] = d;
    }
    out.push(outcome("du_spectrum_analytic", (&analytic.matrix - &diag).amax(), 0.0));
    let id = ConformalPolyMap::identity();
    let fd = assemble_du_matrix_at(&id, Complex64::new(0.0, 0.0), n, DEFAULT_FD_STEP)?;
    out.push(outcome("du_spectrum_finite_difference", (&fd.matrix - &diag).amax(), 1e-6));

    let nd1 = check_nd1(&id)?;
    out.push(outcome(
        "nd1_disc",
        if nd1.pass { nd1.a0.norm() } else { f64::INFINITY },
        1e-10,
    ));

    let quad = AnnulusQuadrature::new(64, 256);
    let rep = expansion_report(&ctx, &half, &zero, &[0.02, 0.01, 0.005], &quad)?;
    out.push(outcome(
        "expansion_single_vortex",
        (rep.w_estimate + PI * 0.75f64.ln()).abs(),
        5e-3,
    ));

    let magic_fail = [Complex64::new(0.0, 0.0), Complex64::new(3.0, 4.0), Complex64::new(-1.5, 0.25)]
        .iter()
        .filter(|&&w| !magic_determinant_check(w))
        .count();
    out.push(outcome("magic_determinant", magic_fail as f64, 0.0));

    let beta = Complex64::new(0.3, -0.2);
    let m = MobiusMap::new(beta)?;
    let cfg = VortexConfiguration::new(
        vec![Complex64::new(0.1, 0.4), Complex64::new(-0.3, -0.1)],
        vec![1, -1],
    )?;
    let moved = cfg.with_points(cfg.points().iter().map(|&a| m.eval(a)).collect());
    out.push(outcome(
        "mobius_transport",
        (transport_hat_w(&m, &cfg)? - hat_w(&moved)).abs(),
        1e-10,
    ));
    Ok(out)
}
