//! Energies and boundary traces on `Ω = f(𝔻)`, pulled back to the disc.
//!
//! Both renormalized energies pick up `π Σ_j d_j² log|f'(α_j)|`; the trace
//! `N` is divided by `|f'|` on the circle. Callers are expected to have
//! validated `f` once; evaluations only guard against `f'(α_j) = 0`.

use crate::config::VortexConfiguration;
use crate::disc::{self, DiscEnergyContext};
use crate::energy::Energy;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;
use crate::map::ConformalMap;
use crate::wirtinger::{m_matrix, Wirtinger};
use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use std::f64::consts::PI;

fn fprime<M: ConformalMap>(f: &M, z: Complex64) -> Result<Complex64> {
    let d = f.d1(z);
    if d.norm() == 0.0 {
        return Err(Error::DegenerateDerivative { bound: 0.0 });
    }
    Ok(d)
}

/// `π Σ_j d_j² log|f'(α_j)|`.
pub fn map_term<M: ConformalMap>(f: &M, cfg: &VortexConfiguration) -> Result<f64> {
    let mut acc = 0.0;
    for (&a, &d) in cfg.points().iter().zip(cfg.degrees()) {
        acc += PI * (d * d) as f64 * fprime(f, a)?.norm().ln();
    }
    Ok(acc)
}

fn map_terms<M: ConformalMap>(f: &M, cfg: &VortexConfiguration, w: &mut Wirtinger) -> Result<()> {
    for (j, (&a, &d)) in cfg.points().iter().zip(cfg.degrees()).enumerate() {
        let c = PI * (d * d) as f64;
        let (f1, f2, f3) = (fprime(f, a)?, f.d2(a), f.d3(a));
        let q = f2 / f1;
        w.real_part_holomorphic(j, c * q, c * (f3 / f1 - q * q));
    }
    Ok(())
}

/// Hessian of `α ↦ π log|f'(α)|`, equal to `π M_w` with `w = (f'''f' − f''²)/f'²`.
pub fn log_fprime_hessian<M: ConformalMap>(f: &M, alpha: Complex64) -> Result<Matrix2<f64>> {
    let f1 = fprime(f, alpha)?;
    let q = f.d2(alpha) / f1;
    Ok(PI * m_matrix(f.d3(alpha) / f1 - q * q))
}

/// Gradient of `α ↦ π log|f'(α)|` as `π conj(f''/f')`.
pub fn log_fprime_gradient<M: ConformalMap>(f: &M, alpha: Complex64) -> Result<Complex64> {
    Ok(PI * (f.d2(alpha) / fprime(f, alpha)?).conj())
}

pub fn transport_hat_w<M: ConformalMap>(f: &M, cfg: &VortexConfiguration) -> Result<f64> {
    Ok(disc::hat_w(cfg) + map_term(f, cfg)?)
}

pub fn transport_hat_w_grad<M: ConformalMap>(f: &M, cfg: &VortexConfiguration) -> Result<DVector<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    map_terms(f, cfg, &mut w)?;
    Ok(disc::hat_w_grad(cfg) + w.gradient())
}

pub fn transport_hat_w_hess<M: ConformalMap>(f: &M, cfg: &VortexConfiguration) -> Result<DMatrix<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    map_terms(f, cfg, &mut w)?;
    Ok(disc::hat_w_hess(cfg) + w.hessian())
}

pub fn transport_w<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<f64> {
    Ok(disc::w_disc(ctx, cfg, psi)? + map_term(f, cfg)?)
}

pub fn transport_w_grad<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<DVector<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    map_terms(f, cfg, &mut w)?;
    Ok(disc::w_disc_grad(ctx, cfg, psi)? + w.gradient())
}

pub fn transport_w_hess<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<DMatrix<f64>> {
    let mut w = Wirtinger::new(cfg.len());
    map_terms(f, cfg, &mut w)?;
    Ok(disc::w_disc_hess(ctx, cfg, psi)? + w.hessian())
}

/// Pullback `θ ↦ N^Ω(f(e^{iθ})) = N^𝔻(θ)/|f'(e^{iθ})|`, projected on the
/// modes up to `max(ctx.trunc, ψ.trunc)`.
pub fn transport_n<M: ConformalMap>(
    f: &M,
    ctx: &DiscEnergyContext,
    cfg: &VortexConfiguration,
    psi: &FourierSeries,
) -> Result<FourierSeries> {
    let trunc = ctx.trunc().max(psi.trunc());
    let samples = (4 * (trunc + 1)).max(256);
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = 2.0 * PI * k as f64 / samples as f64;
        let n = disc::n_disc_at(ctx, cfg, psi, t)?;
        values.push(n / fprime(f, Complex64::from_polar(1.0, t))?.norm());
    }
    Ok(FourierSeries::from_samples(&values, trunc))
}

/// `Ŵ^Ω ∘ f` as an [`Energy`].
#[derive(Debug, Clone)]
pub struct HatWOmega<M> {
    pub map: M,
}

impl<M: ConformalMap> Energy for HatWOmega<M> {
    fn value(&self, cfg: &VortexConfiguration) -> Result<f64> {
        transport_hat_w(&self.map, cfg)
    }
    fn gradient(&self, cfg: &VortexConfiguration) -> Result<DVector<f64>> {
        transport_hat_w_grad(&self.map, cfg)
    }
    fn hessian(&self, cfg: &VortexConfiguration) -> Result<DMatrix<f64>> {
        transport_hat_w_hess(&self.map, cfg)
    }
}

/// `W^Ω(f(·), g⁰e^{iψ})` as an [`Energy`].
#[derive(Debug, Clone)]
pub struct WOmega<'a, M> {
    pub map: M,
    pub ctx: &'a DiscEnergyContext,
    pub psi: &'a FourierSeries,
}

impl<M: ConformalMap> Energy for WOmega<'_, M> {
    fn value(&self, cfg: &VortexConfiguration) -> Result<f64> {
        transport_w(&self.map, self.ctx, cfg, self.psi)
    }
    fn gradient(&self, cfg: &VortexConfiguration) -> Result<DVector<f64>> {
        transport_w_grad(&self.map, self.ctx, cfg, self.psi)
    }
    fn hessian(&self, cfg: &VortexConfiguration) -> Result<DMatrix<f64>> {
        transport_w_hess(&self.map, self.ctx, cfg, self.psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{fd_gradient, fd_hessian};
    use crate::fourier::Trig;
    use crate::map::{Composed, ConformalPolyMap, MobiusMap};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_scaling() {
        let cfg = VortexConfiguration::new(vec![c(0.2, 0.1), c(-0.4, 0.3)], vec![1, -1]).unwrap();
        let id = ConformalPolyMap::identity();
        assert_eq!(transport_hat_w(&id, &cfg).unwrap(), disc::hat_w(&cfg));
        let zero = VortexConfiguration::single(c(0.0, 0.0), 1).unwrap();
        let r = ConformalPolyMap::scaling(2.5);
        assert_relative_eq!(transport_hat_w(&r, &zero).unwrap(), PI * 2.5f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn map_gradient_term_at_origin() {
        let eps = c(0.03, -0.02);
        let f = ConformalPolyMap::perturbed_identity(eps, 2);
        assert_relative_eq!(
            (log_fprime_gradient(&f, c(0.0, 0.0)).unwrap() - PI * (2.0 * eps).conj()).norm(),
            0.0,
            epsilon = 1e-15
        );
        let ctx = DiscEnergyContext::new(VortexConfiguration::single(c(0.0, 0.0), 1).unwrap(), 16).unwrap();
        let g = transport_w_grad(&f, &ctx, ctx.base(), &FourierSeries::zeros(4)).unwrap();
        assert_relative_eq!(g[0], 2.0 * PI * eps.re, epsilon = 1e-15);
        assert_relative_eq!(g[1], -2.0 * PI * eps.im, epsilon = 1e-15);
    }

    #[test]
    fn log_fprime_hessian_examples() {
        let id = ConformalPolyMap::identity();
        assert_eq!(log_fprime_hessian(&id, c(0.3, 0.2)).unwrap(), Matrix2::zeros());
        let eps = c(0.07, 0.02);
        let f = ConformalPolyMap::perturbed_identity(eps, 3);
        let h = log_fprime_hessian(&f, c(0.0, 0.0)).unwrap();
        assert!((h - PI * m_matrix(6.0 * eps)).amax() < 1e-15);

        let f = ConformalPolyMap::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.1, 0.05), c(-0.03, 0.02)]).unwrap();
        let a = c(0.25, -0.4);
        let g = |z: Complex64| PI * f.d1(z).norm().ln();
        let step = 1e-4;
        let dirs = [c(1.0, 0.0), c(0.0, 1.0)];
        let h = log_fprime_hessian(&f, a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (u, v) = (dirs[i] * step, dirs[j] * step);
                let fd = (g(a + u + v) - g(a + u - v) - g(a - u + v) + g(a - u - v)) / (4.0 * step * step);
                assert_relative_eq!(h[(i, j)], fd, epsilon = 1e-6);
            }
        }
        let zsq = ConformalPolyMap::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            log_fprime_hessian(&zsq, c(0.0, 0.0)),
            Err(Error::DegenerateDerivative { .. })
        ));
    }

    #[test]
    fn mobius_coherence() {
        let cfg = VortexConfiguration::new(vec![c(0.1, 0.3), c(-0.2, -0.25)], vec![1, 1]).unwrap();
        for beta in [c(0.3, 0.1), c(-0.5, 0.4), c(0.0, -0.7)] {
            let m = MobiusMap::new(beta).unwrap();
            let moved = cfg.with_points(cfg.points().iter().map(|&a| m.eval(a)).collect());
            assert_relative_eq!(
                transport_hat_w(&m, &cfg).unwrap(),
                disc::hat_w(&moved),
                epsilon = 1e-12
            );
            // composition: (f ∘ m) evaluated at cfg equals f evaluated at m(cfg)
            let f = ConformalPolyMap::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.08, -0.03)]).unwrap();
            let fm = Composed { outer: &f, inner: m };
            assert_relative_eq!(
                transport_hat_w(&fm, &cfg).unwrap(),
                transport_hat_w(&f, &moved).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let f = ConformalPolyMap::new(vec![c(0.1, 0.0), c(1.0, 0.2), c(0.08, -0.03), c(0.0, 0.02)]).unwrap();
        let base = VortexConfiguration::new(vec![c(0.1, 0.0), c(-0.2, 0.3)], vec![1, 1]).unwrap();
        let ctx = DiscEnergyContext::new(base, 32).unwrap();
        let psi = FourierSeries::from_trig(0.0, &[0.1, 0.02], &[0.0, -0.05], 8);
        let cfg = VortexConfiguration::new(vec![c(0.3, -0.1), c(-0.1, 0.45)], vec![1, 1]).unwrap();
        let energies: [&dyn Energy; 2] = [
            &HatWOmega { map: &f },
            &WOmega { map: &f, ctx: &ctx, psi: &psi },
        ];
        for e in energies {
            let g = e.gradient(&cfg).unwrap();
            let fd = fd_gradient(e, &cfg, 1e-6).unwrap();
            assert!((&g - &fd).amax() < 1e-7 * g.amax().max(1.0));
            let h = e.hessian(&cfg).unwrap();
            let fdh = fd_hessian(e, &cfg, 1e-6).unwrap();
            assert!((&h - &fdh).amax() < 1e-6 * h.amax().max(1.0));
        }
    }

    #[test]
    fn transported_trace() {
        let ctx = DiscEnergyContext::new(VortexConfiguration::single(c(0.0, 0.0), 1).unwrap(), 32).unwrap();
        let cfg = VortexConfiguration::single(c(0.3, -0.2), 1).unwrap();
        let psi = FourierSeries::mode(2, Trig::Sin, 0.2, 8);
        let nd = disc::n_disc(&ctx, &cfg, &psi).unwrap();
        let id = transport_n(&ConformalPolyMap::identity(), &ctx, &cfg, &psi).unwrap();
        assert!(id.max_abs_coeff_diff(&nd) < 1e-12);
        let scaled = transport_n(&ConformalPolyMap::scaling(2.0), &ctx, &cfg, &psi).unwrap();
        assert!(scaled.max_abs_coeff_diff(&(&nd * 0.5)) < 1e-12);

        // ∮ N^Ω ds = ∫ N^Ω(f(e^{iθ})) |f'(e^{iθ})| dθ = 0
        let f = ConformalPolyMap::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.1, 0.05)]).unwrap();
        let n = transport_n(&f, &ctx, &cfg, &psi).unwrap();
        let m = 256;
        let integral: f64 = (0..m)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / m as f64;
                n.eval(t) * f.d1(Complex64::from_polar(1.0, t)).norm()
            })
            .sum::<f64>()
            * 2.0
            * PI
            / m as f64;
        assert!(integral.abs() < 1e-6, "{integral}");
    }

    #[test]
    fn determinant_identity() {
        for w in [c(0.0, 0.0), c(3.0, 4.0), c(-0.7, 1.9)] {
            let m = m_matrix(w);
            let id: Matrix2<f64> = Matrix2::identity();
            let minus = (m - 2.0 * id).determinant();
            let plus = (m + 2.0 * id).determinant();
            assert_relative_eq!(minus, 4.0 - w.norm_sqr(), epsilon = 1e-12);
            assert_relative_eq!(plus, 4.0 - w.norm_sqr(), epsilon = 1e-12);
        }
    }
}
