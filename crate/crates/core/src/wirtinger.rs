//! Accumulates Wirtinger derivatives of a real function of `k` complex
//! variables and converts them to the real gradient and Hessian in the
//! coordinates `(x_1, y_1, …, x_k, y_k)`.
//!
//! For real `F`, with `A_jl = ∂_j ∂_l F` and `B_jl = ∂_j ∂̄_l F`:
//!
//! ```text
//! ∂_{x_j} F = 2 Re ∂_j F            ∂_{y_j} F = -2 Im ∂_j F
//! H[x_j, x_l] =  2 Re A + 2 Re B    H[x_j, y_l] = -2 Im A + 2 Im B
//! H[y_j, x_l] = -2 Im A - 2 Im B    H[y_j, y_l] = -2 Re A + 2 Re B
//! ```

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub(crate) struct Wirtinger {
    grad: Vec<Complex64>,
    hol: DMatrix<Complex64>,
    mixed: DMatrix<Complex64>,
}

impl Wirtinger {
    pub fn new(k: usize) -> Self {
        Self {
            grad: vec![Complex64::new(0.0, 0.0); k],
            hol: DMatrix::zeros(k, k),
            mixed: DMatrix::zeros(k, k),
        }
    }

    /// `c · log|z_j − z_l|` (ordered pair, `j ≠ l`).
    pub fn log_distance(&mut self, j: usize, l: usize, zj: Complex64, zl: Complex64, c: f64) {
        let q = 0.5 * c / (zj - zl);
        let q2 = q / (zj - zl);
        self.grad[j] += q;
        self.grad[l] -= q;
        self.hol[(j, j)] -= q2;
        self.hol[(l, l)] -= q2;
        self.hol[(j, l)] += q2;
        self.hol[(l, j)] += q2;
    }

    /// `c · log|1 − conj(z_j) z_l|` (ordered pair, both moving, `j ≠ l`).
    pub fn log_reflected_pair(&mut self, j: usize, l: usize, zj: Complex64, zl: Complex64, c: f64) {
        let half = 0.5 * c;
        let d = 1.0 - zj.conj() * zl;
        let dt = d.conj();
        self.grad[j] += -half * zl.conj() / dt;
        self.grad[l] += -half * zj.conj() / d;
        self.hol[(j, j)] += -half * zl.conj() * zl.conj() / (dt * dt);
        self.hol[(l, l)] += -half * zj.conj() * zj.conj() / (d * d);
        self.mixed[(j, l)] += -half / (dt * dt);
        self.mixed[(l, j)] += -half / (d * d);
    }

    /// `c · log|1 − conj(β) z_j|` with `β` fixed.
    pub fn log_reflected_fixed(&mut self, j: usize, zj: Complex64, beta: Complex64, c: f64) {
        let half = 0.5 * c;
        let bc = beta.conj();
        let d = 1.0 - bc * zj;
        self.grad[j] += -half * bc / d;
        self.hol[(j, j)] += -half * bc * bc / (d * d);
    }

    /// `c · log(1 − |z_j|²)`.
    pub fn log_one_minus_modulus_sq(&mut self, j: usize, zj: Complex64, c: f64) {
        let s = 1.0 - zj.norm_sqr();
        self.grad[j] += -c * zj.conj() / s;
        self.hol[(j, j)] += -c * zj.conj() * zj.conj() / (s * s);
        self.mixed[(j, j)] += Complex64::new(-c / (s * s), 0.0);
    }

    /// `Re h(z_j)` with `h` holomorphic, given `h'(z_j)` and `h''(z_j)`.
    pub fn real_part_holomorphic(&mut self, j: usize, dh: Complex64, d2h: Complex64) {
        self.grad[j] += 0.5 * dh;
        self.hol[(j, j)] += 0.5 * d2h;
    }

    pub fn gradient(&self) -> DVector<f64> {
        let k = self.grad.len();
        DVector::from_fn(2 * k, |i, _| {
            let g = self.grad[i / 2];
            if i % 2 == 0 {
                2.0 * g.re
            } else {
                -2.0 * g.im
            }
        })
    }

    pub fn hessian(&self) -> DMatrix<f64> {
        let k = self.grad.len();
        let mut h = DMatrix::zeros(2 * k, 2 * k);
        for j in 0..k {
            for l in 0..k {
                let a = self.hol[(j, l)];
                let b = self.mixed[(j, l)];
                h[(2 * j, 2 * l)] = 2.0 * (a.re + b.re);
                h[(2 * j, 2 * l + 1)] = 2.0 * (b.im - a.im);
                h[(2 * j + 1, 2 * l)] = -2.0 * (a.im + b.im);
                h[(2 * j + 1, 2 * l + 1)] = 2.0 * (b.re - a.re);
            }
        }
        h
    }
}

/// `M_w = [[Re w, −Im w], [−Im w, −Re w]]`, the matrix of `ξ ↦ conj(w ξ)`.
pub fn m_matrix(w: Complex64) -> nalgebra::Matrix2<f64> {
    nalgebra::Matrix2::new(w.re, -w.im, -w.im, -w.re)
}
