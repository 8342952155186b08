//! Vortex configurations in the unit disc.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Vortices must satisfy `|α_j| < 1 - BOUNDARY_MARGIN`.
pub const BOUNDARY_MARGIN: f64 = 1e-3;
/// Minimal distance between two vortices.
pub const SEPARATION_MARGIN: f64 = 1e-8;

/// Points `α_j` of the open unit disc carrying integer degrees `d_j`.
///
/// Construction through [`VortexConfiguration::new`] validates the
/// admissibility margins; [`VortexConfiguration::unchecked`] skips them and
/// is meant for iterates and for exercising the validator itself.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexConfiguration {
    points: Vec<Complex64>,
    degrees: Vec<i32>,
}

impl VortexConfiguration {
    pub fn new(points: Vec<Complex64>, degrees: Vec<i32>) -> Result<Self> {
        validate_configuration(&Self::unchecked(points, degrees))
    }

    pub fn unchecked(points: Vec<Complex64>, degrees: Vec<i32>) -> Self {
        Self { points, degrees }
    }

    /// A single vortex at `point` with degree `degree`.
    pub fn single(point: Complex64, degree: i32) -> Result<Self> {
        Self::new(vec![point], vec![degree])
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `d = Σ d_j`.
    pub fn total_degree(&self) -> i32 {
        self.degrees.iter().sum()
    }

    /// `Σ d_j²`, the coefficient of `π log(1/ρ)` in the energy expansion.
    pub fn degree_square_sum(&self) -> i32 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Same degrees, new points (not validated).
    pub fn with_points(&self, points: Vec<Complex64>) -> Self {
        assert_eq!(points.len(), self.degrees.len());
        Self::unchecked(points, self.degrees.clone())
    }

    /// Real coordinates `(x_1, y_1, x_2, y_2, …)`.
    pub fn to_real(&self) -> Vec<f64> {
        self.points.iter().flat_map(|p| [p.re, p.im]).collect()
    }

    /// Inverse of [`to_real`](Self::to_real), keeping the degrees.
    pub fn from_real(&self, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), 2 * self.len());
        self.with_points(
            coords
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect(),
        )
    }

    /// Smallest pairwise distance, `+∞` for a single vortex.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    pub fn is_admissible(&self) -> bool {
        validate_configuration(self).is_ok()
    }
}

/// Checks the admissibility margins and returns a copy on success.
pub fn validate_configuration(cfg: &VortexConfiguration) -> Result<VortexConfiguration> {
    if cfg.points.is_empty() || cfg.degrees.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    if cfg.points.len() != cfg.degrees.len() {
        return Err(Error::DegreeCountMismatch {
            points: cfg.points.len(),
            degrees: cfg.degrees.len(),
        });
    }
    let limit = 1.0 - BOUNDARY_MARGIN;
    for (index, p) in cfg.points.iter().enumerate() {
        let modulus = p.norm();
        // NaN fails this comparison too.
        if !(modulus < limit) {
            return Err(Error::VortexTooCloseToBoundary {
                index,
                modulus,
                limit,
            });
        }
    }
    for (i, a) in cfg.points.iter().enumerate() {
        for (j, b) in cfg.points.iter().enumerate().skip(i + 1) {
            let distance = (a - b).norm();
            if distance < SEPARATION_MARGIN {
                return Err(Error::VorticesCollide {
                    first: i,
                    second: j,
                    distance,
                });
            }
        }
    }
    Ok(cfg.clone())
}
