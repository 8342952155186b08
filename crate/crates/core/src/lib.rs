#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Ginzburg–Landau renormalized energies for vortex configurations in
//! simply connected planar domains `Ω = f(𝔻)`.
//!
//! Everything is computed in disc coordinates: configurations live in the
//! unit disc, boundary data are truncated Fourier series on the circle and
//! domain quantities are obtained by transport through the conformal map.

pub mod config;
pub mod critpoint;
pub mod disc;
pub mod energy;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod fourier;
pub mod harmonic;
pub mod map;
pub mod ndcheck;
pub mod transport;
mod wirtinger;

pub use config::{validate_configuration, VortexConfiguration};
pub use disc::DiscEnergyContext;
pub use energy::{Energy, EnergyReport, TOL_ND};
pub use error::{Error, Result};
pub use fourier::{FourierSeries, Trig};
pub use harmonic::AnnulusQuadrature;
pub use map::{validate_map, ConformalMap, ConformalPolyMap, MobiusMap};
pub use wirtinger::m_matrix;
