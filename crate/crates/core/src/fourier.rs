//! Real-valued functions on the unit circle as truncated Fourier series.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// Default number of retained modes.
pub const DEFAULT_TRUNC: usize = 64;

/// `ψ(θ) = Σ_{|n|≤N} a_n e^{inθ}` with `a_{-n} = conj(a_n)`.
///
/// Only the modes `0..=N` are stored, so real-valuedness holds by
/// construction; `a_0` is kept real.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    coeffs: Vec<Complex64>,
}

/// Real trigonometric basis element `cos nθ` or `sin nθ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trig {
    Cos,
    Sin,
}

impl FourierSeries {
    pub fn zeros(trunc: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); trunc + 1],
        }
    }

    /// From the non-negative modes `a_0, a_1, …, a_N`; `Im a_0` is dropped.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        coeffs[0].im = 0.0;
        Self { coeffs }
    }

    pub fn constant(value: f64, trunc: usize) -> Self {
        let mut s = Self::zeros(trunc);
        s.coeffs[0] = Complex64::new(value, 0.0);
        s
    }

    /// `c + Σ_{n≥1} cos[n-1]·cos nθ + sin[n-1]·sin nθ`.
    pub fn from_trig(constant: f64, cos: &[f64], sin: &[f64], trunc: usize) -> Self {
        let trunc = trunc.max(cos.len()).max(sin.len());
        let mut s = Self::constant(constant, trunc);
        for (i, &a) in cos.iter().enumerate() {
            s.coeffs[i + 1] += Complex64::new(0.5 * a, 0.0);
        }
        for (i, &b) in sin.iter().enumerate() {
            s.coeffs[i + 1] += Complex64::new(0.0, -0.5 * b);
        }
        s
    }

    /// `amplitude · cos nθ` or `amplitude · sin nθ`.
    pub fn mode(n: usize, kind: Trig, amplitude: f64, trunc: usize) -> Self {
        let mut s = Self::zeros(trunc.max(n));
        if n == 0 {
            if kind == Trig::Cos {
                s.coeffs[0] = Complex64::new(amplitude, 0.0);
            }
            return s;
        }
        s.coeffs[n] = match kind {
            Trig::Cos => Complex64::new(0.5 * amplitude, 0.0),
            Trig::Sin => Complex64::new(0.0, -0.5 * amplitude),
        };
        s
    }

    /// Trapezoid projection of equispaced samples `f(2πk/M)`, `M > 2N`.
    pub fn from_samples(samples: &[f64], trunc: usize) -> Self {
        let m = samples.len();
        assert!(m > 2 * trunc, "need more than 2N samples");
        let coeffs = (0..=trunc)
            .map(|n| {
                let sum: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| v * Complex64::from_polar(1.0, -2.0 * PI * (n * k) as f64 / m as f64))
                    .sum();
                sum / m as f64
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Samples `θ ↦ f(θ)` at `M` equispaced points and projects.
    pub fn from_fn(trunc: usize, samples: usize, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = (0..samples)
            .map(|k| f(2.0 * PI * k as f64 / samples as f64))
            .collect();
        Self::from_samples(&values, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of the modes `0..=N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_n` for any integer `n` (zero beyond the truncation).
    pub fn coeff(&self, n: i64) -> Complex64 {
        let idx = n.unsigned_abs() as usize;
        match self.coeffs.get(idx) {
            Some(&a) if n >= 0 => a,
            Some(&a) => a.conj(),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn set_coeff(&mut self, n: usize, value: Complex64) {
        if n >= self.coeffs.len() {
            self.coeffs.resize(n + 1, Complex64::new(0.0, 0.0));
        }
        self.coeffs[n] = value;
        self.coeffs[0].im = 0.0;
    }

    /// Coefficient of `cos nθ` in the real expansion.
    pub fn cos_coeff(&self, n: usize) -> f64 {
        let a = self.coeff(n as i64);
        if n == 0 {
            a.re
        } else {
            2.0 * a.re
        }
    }

    /// Coefficient of `sin nθ` in the real expansion.
    pub fn sin_coeff(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            -2.0 * self.coeff(n as i64).im
        }
    }

    /// Mean value over the circle, `a_0`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn without_mean(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = Complex64::new(0.0, 0.0);
        s
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        self.mean() + 2.0 * self.positive_part(z).re
    }

    /// `Σ_{n≥1} a_n z^n` evaluated by Horner's rule.
    pub fn positive_part(&self, z: Complex64) -> Complex64 {
        self.coeffs[1..]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| (acc + a) * z)
    }

    /// `∫_0^{2π} f g dθ = 2π Σ_n a_n conj(b_n)`.
    pub fn pairing(&self, other: &Self) -> f64 {
        let n = self.trunc().min(other.trunc());
        let tail: f64 = (1..=n)
            .map(|k| (self.coeffs[k] * other.coeffs[k].conj()).re)
            .sum();
        2.0 * PI * (self.mean() * other.mean() + 2.0 * tail)
    }

    /// Same function with a different truncation (zero-padded or cut).
    pub fn resized(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Applies `a_n ↦ m(n)·a_n` for `n ≥ 0`; `m` must respect conjugate symmetry.
    pub(crate) fn map_modes(&self, m: impl Fn(usize, Complex64) -> Complex64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &a)| m(n, a))
                .collect(),
        )
    }

    pub fn max_abs_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.trunc().max(other.trunc()) as i64;
        (0..=n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &FourierSeries {
    type Output = FourierSeries;
    fn add(self, rhs: Self) -> FourierSeries {
        let n = self.trunc().max(rhs.trunc());
        FourierSeries::from_coeffs((0..=n as i64).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &FourierSeries {
    type Output = FourierSeries;
    fn sub(self, rhs: Self) -> FourierSeries {
        self + &(-rhs)
    }
}

impl Neg for &FourierSeries {
    type Output = FourierSeries;
    fn neg(self) -> FourierSeries {
        self.map_modes(|_, a| -a)
    }
}

impl Mul<f64> for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: f64) -> FourierSeries {
        self.map_modes(|_, a| a * rhs)
    }
}
