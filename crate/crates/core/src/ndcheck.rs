//! Numerical checks of the two nondegeneracy hypotheses for a single
//! degree-one vortex in `Ω = f(𝔻)`.
//!
//! (ND1) asks for a nondegenerate critical point `a⁰` of `W(·, g^{a⁰})`;
//! it is reached through the maximum of `Ŵ^Ω`. (ND2) asks for the
//! invertibility of the linearized boundary operator `DU*(0)`, discretized
//! over the modes `cos nθ, sin nθ` with `1 ≤ n ≤ N`. The truncation-doubling
//! test used for (ND2) is a heuristic, not a proof.

use crate::config::VortexConfiguration;
use crate::critpoint::{find_critical_w, find_max_hat_w, DEFAULT_MULTISTART};
use crate::disc::{n_disc, DiscEnergyContext};
use crate::energy::nondegeneracy;
use crate::error::{Error, Result};
use crate::fourier::{FourierSeries, Trig};
use crate::harmonic::{harmonic_conjugate, normal_derivative_of_extension, tangential_derivative};
use crate::map::ConformalMap;
use crate::transport::{transport_w_grad, transport_w_hess};
use crate::wirtinger::m_matrix;
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rayon::prelude::*;

/// Smallest admissible singular value of the (ND2) matrix.
pub const TOL_OP: f64 = 1e-3;
/// Largest admissible relative change of `σ_min` under truncation doubling.
pub const TRUNCATION_STABILITY: f64 = 1e-2;
/// Finite-difference step in `ψ` for [`assemble_du_matrix`].
pub const DEFAULT_FD_STEP: f64 = 1e-4;
const RICHARDSON_TRIGGER: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct Nd1Report {
    pub a0: Complex64,
    pub value: f64,
    pub hessian_hat: DMatrix<f64>,
    pub hessian_w: DMatrix<f64>,
    /// `‖∇W(a⁰, g^{a⁰})‖`, zero up to the Newton tolerance.
    pub w_gradient_norm: f64,
    pub global_candidate: bool,
    pub pass: bool,
}

/// (ND1) for `Ω = f(𝔻)` via the maximizer of `Ŵ^Ω`.
pub fn check_nd1<M: ConformalMap>(f: &M) -> Result<Nd1Report> {
    let max = find_max_hat_w(f, DEFAULT_MULTISTART)?;
    let a0 = max.best.location.clone();
    let ctx = DiscEnergyContext::new(a0.clone(), crate::fourier::DEFAULT_TRUNC)?;
    let zero = FourierSeries::zeros(1);
    let hessian_w = transport_w_hess(f, &ctx, &a0, &zero)?;
    let w_gradient_norm = transport_w_grad(f, &ctx, &a0, &zero)?.norm();
    let pass = max.best.nondegenerate && nondegeneracy(&hessian_w).1;
    Ok(Nd1Report {
        a0: a0.points()[0],
        value: max.best.value,
        hessian_hat: max.best.hessian,
        hessian_w,
        w_gradient_norm,
        global_candidate: max.global_candidate,
        pass,
    })
}

/// Truncated operator over `{cos nθ, sin nθ}_{1≤n≤N}` (mode 0 quotiented out).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: DMatrix<f64>,
    pub mode_index: Vec<(usize, Trig)>,
    pub trunc: usize,
}

impl OperatorMatrix {
    fn basis(trunc: usize) -> Vec<(usize, Trig)> {
        (1..=trunc).flat_map(|n| [(n, Trig::Cos), (n, Trig::Sin)]).collect()
    }

    fn from_columns(trunc: usize, columns: Vec<FourierSeries>) -> Self {
        let mode_index = Self::basis(trunc);
        let matrix = DMatrix::from_fn(2 * trunc, 2 * trunc, |row, col| {
            let (n, kind) = mode_index[row];
            match kind {
                Trig::Cos => columns[col].cos_coeff(n),
                Trig::Sin => columns[col].sin_coeff(n),
            }
        });
        Self {
            matrix,
            mode_index,
            trunc,
        }
    }

    pub fn index_of(&self, n: usize, kind: Trig) -> Option<usize> {
        self.mode_index.iter().position(|&m| m == (n, kind))
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.matrix.singular_values().iter().copied().collect();
        sv.sort_by(f64::total_cmp);
        sv
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.matrix.singular_values().min()
    }
}

/// `DU*(0)ψ = ∂ψ*/∂τ − 2(Da(0)ψ)∧z` for the disc with `a⁰ = 0`, where
/// `Da(0)ψ = −(1/π)∫ z ∂ψ*/∂ν dθ`.
fn du_star_disc(psi: &FourierSeries) -> FourierSeries {
    let conj = harmonic_conjugate(psi);
    let l = tangential_derivative(&conj);
    let dnu = normal_derivative_of_extension(&conj);
    let da = -2.0 * dnu.coeff(-1);
    // (v₁, v₂)∧z = v₁ sin θ − v₂ cos θ
    let k = FourierSeries::from_trig(0.0, &[-2.0 * da.im], &[2.0 * da.re], psi.trunc());
    &l - &k
}

/// Exact matrix of `DU*(0)` for `Ω = 𝔻`, `a⁰ = 0`.
pub fn du_star_matrix_analytic_disc(trunc: usize) -> Result<OperatorMatrix> {
    if trunc < 2 {
        return Err(Error::InvalidInput("truncation must be at least 2".into()));
    }
    let columns = OperatorMatrix::basis(trunc)
        .into_iter()
        .map(|(n, kind)| du_star_disc(&FourierSeries::mode(n, kind, 1.0, trunc)))
        .collect();
    Ok(OperatorMatrix::from_columns(trunc, columns))
}

fn boundary_operator<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    psi: &FourierSeries,
) -> Result<FourierSeries> {
    let crit = find_critical_w(f, ctx, psi, ctx.base())?;
    n_disc(ctx, &crit.location, psi)
}

fn fd_column<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    e: &FourierSeries,
    h: f64,
) -> Result<FourierSeries> {
    let plus = boundary_operator(f, ctx, &(e * h))?;
    let minus = boundary_operator(f, ctx, &(e * -h))?;
    Ok(&(&plus - &minus) * (0.5 / h))
}

/// Finite-difference matrix of `ψ ↦ U(f, ψ) = N(α(ψ, f), g^{a⁰}e^{iψ})` at
/// `ψ = 0`, where `α(ψ, f)` is the critical point of `W^Ω(·, g^{a⁰}e^{iψ})`
/// continued from `a⁰`.
pub fn assemble_du_matrix_at<M: ConformalMap>(
    f: &M,
    a0: Complex64,
    trunc: usize,
    fd_step: f64,
) -> Result<OperatorMatrix> {
    if trunc < 2 {
        return Err(Error::InvalidInput("truncation must be at least 2".into()));
    }
    if !(fd_step > 0.0) {
        return Err(Error::InvalidInput("finite-difference step must be positive".into()));
    }
    let ctx = DiscEnergyContext::new(VortexConfiguration::single(a0, 1)?, trunc)?;
    let columns = OperatorMatrix::basis(trunc)
        .into_par_iter()
        .map(|(n, kind)| {
            let e = FourierSeries::mode(n, kind, 1.0, trunc);
            let coarse = fd_column(f, &ctx, &e, fd_step)?;
            let fine = fd_column(f, &ctx, &e, 0.5 * fd_step)?;
            if coarse.max_abs_coeff_diff(&fine) > RICHARDSON_TRIGGER {
                Ok(&(&(&fine * 4.0) - &coarse) * (1.0 / 3.0))
            } else {
                Ok(fine)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix::from_columns(trunc, columns))
}

/// [`assemble_du_matrix_at`] at the (ND1) point of `f`; (ND1) must pass.
pub fn assemble_du_matrix<M: ConformalMap>(f: &M, trunc: usize, fd_step: f64) -> Result<OperatorMatrix> {
    let nd1 = check_nd1(f)?;
    if !nd1.pass {
        return Err(Error::InvalidInput("(ND1) does not hold for this map".into()));
    }
    assemble_du_matrix_at(f, nd1.a0, trunc, fd_step)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nd2Report {
    pub a0: Complex64,
    pub trunc: usize,
    pub smallest_singular_value: f64,
    /// `σ_min` at truncation `2N`.
    pub smallest_singular_value_fine: f64,
    pub relative_change: f64,
    pub pass: bool,
}

/// (ND2) at a known (ND1) point: `σ_min > TOL_OP`, stable under `N → 2N`.
pub fn check_nd2_at<M: ConformalMap>(f: &M, a0: Complex64, trunc: usize) -> Result<Nd2Report> {
    let coarse = assemble_du_matrix_at(f, a0, trunc, DEFAULT_FD_STEP)?.smallest_singular_value();
    let fine = assemble_du_matrix_at(f, a0, 2 * trunc, DEFAULT_FD_STEP)?.smallest_singular_value();
    let relative_change = (fine - coarse).abs() / coarse.abs().max(f64::MIN_POSITIVE);
    if relative_change >= TRUNCATION_STABILITY {
        return Err(Error::TruncationUnstable { coarse, fine });
    }
    Ok(Nd2Report {
        a0,
        trunc,
        smallest_singular_value: coarse,
        smallest_singular_value_fine: fine,
        relative_change,
        pass: coarse > TOL_OP,
    })
}

pub fn check_nd2<M: ConformalMap>(f: &M, trunc: usize) -> Result<Nd2Report> {
    let nd1 = check_nd1(f)?;
    if !nd1.pass {
        return Err(Error::InvalidInput("(ND1) does not hold for this map".into()));
    }
    check_nd2_at(f, nd1.a0, trunc)
}

/// `det(M_w − 2I)` and `det(M_w + 2I)`, each expanded from its own matrix.
pub fn magic_determinants(w: Complex64) -> (f64, f64) {
    let m = m_matrix(w);
    let two = 2.0 * Matrix2::<f64>::identity();
    let det = |a: Matrix2<f64>| a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    (det(m - two), det(m + two))
}

/// Both determinants agree with each other and with `4 − |w|²` to rounding.
pub fn magic_determinant_check(w: Complex64) -> bool {
    let (minus, plus) = magic_determinants(w);
    let target = 4.0 - w.norm_sqr();
    let tol = 8.0 * f64::EPSILON * (4.0 + w.norm_sqr() + 4.0 * w.norm());
    (minus - plus).abs() <= tol && (minus - target).abs() <= tol && (plus - target).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::ConformalPolyMap;
    use std::f64::consts::PI;

    #[test]
    fn analytic_disc_operator() {
        let m = du_star_matrix_analytic_disc(8).unwrap();
        let mut expect = DMatrix::zeros(16, 16);
        for n in 1..=8 {
            let d = if n == 1 { -1.0 } else { n as f64 };
            expect[(2 * n - 2, 2 * n - 2)] = d;
            expect[(2 * n - 1, 2 * n - 1)] = d;
        }
        assert_eq!(m.matrix, expect);
        assert_eq!(m.index_of(3, Trig::Sin), Some(5));
        assert!((m.smallest_singular_value() - 1.0).abs() < 1e-15);
        assert!(du_star_matrix_analytic_disc(1).is_err());
    }

    #[test]
    fn nd1_for_the_disc() {
        let r = check_nd1(&ConformalPolyMap::identity()).unwrap();
        assert!(r.pass && r.a0.norm() < 1e-12);
        assert!((r.hessian_hat + 2.0 * PI * DMatrix::identity(2, 2)).amax() < 1e-10);
        assert!((r.hessian_w - 2.0 * PI * DMatrix::identity(2, 2)).amax() < 1e-10);
    }

    #[test]
    fn magic_examples() {
        assert!(magic_determinant_check(Complex64::new(0.0, 0.0)));
        assert_eq!(magic_determinants(Complex64::new(0.0, 0.0)), (4.0, 4.0));
        assert!(magic_determinant_check(Complex64::new(3.0, 4.0)));
        assert_eq!(magic_determinants(Complex64::new(3.0, 4.0)), (-21.0, -21.0));
    }
}
