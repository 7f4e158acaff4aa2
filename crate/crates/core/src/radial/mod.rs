//! Radial calculus: profiles, quadrature, ball masses, Riesz/Wolff potentials and the radial
//! (γ-)Laplacian.

mod function;
mod operators;
mod potential;
pub mod quadrature;

pub use function::{RadialForm, RadialFunction};
pub use operators::{radial_gamma_laplacian, radial_laplacian};
pub use potential::{
    ball_mass, integrate_half_line, riesz_potential, riesz_potential_direct, sin_power_integral,
    sphere_area, total_mass, wolff_potential,
};
pub(crate) use potential::breakpoints;

use crate::error::{invalid, Result};

/// Tolerances for every quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]

pub struct QuadratureConfig {
    pub rel_tol: f64,
    /// Absolute floor, relative to the first-pass magnitude of each integral.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Fixed Wolff truncation radius; adaptive when `None`.
    pub tail_cut: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rel_tol: 1e-8, abs_tol: 1e-12, max_subdivisions: 2000, tail_cut: None }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return invalid("quadrature tolerances must be positive");
        }
        if self.max_subdivisions == 0 {
            return invalid("max_subdivisions must be positive");
        }
        if let Some(t) = self.tail_cut {
            if !(t > 0.0 && t.is_finite()) {
                return invalid("tail_cut must be positive and finite");
            }
        }
        Ok(())
    }
}
