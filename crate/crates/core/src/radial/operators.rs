//! Closed-form radial Laplacian and γ-Laplacian of power profiles.

use super::function::{RadialForm, RadialFunction};
use crate::error::{invalid, Result};
use crate::scalar::Real;

fn power_params<F: Real>(f: &RadialFunction<F>) -> Result<(F, F)> {
    match f.form() {
        RadialForm::Power { theta, m } => Ok((*theta, *m)),
        _ => invalid("closed-form operators need a Power profile"),
    }
}

/// `-Δu` for `u = A(1+Kr²)^{-θ}`:
/// `2AKθ (1+Kr²)^{-θ-2} (n + (n-2-2θ)Kr²)`.
pub fn radial_laplacian<F: Real>(f: &RadialFunction<F>, n: u32, r: F) -> Result<F> {
    let (theta, m) = power_params(f)?;
    if m != F::c(2.0) {
        return invalid(format!("radial Laplacian formula needs m = 2, got m = {m}"));
    }
    let (a, k) = (f.amplitude(), f.scale());
    let nf = F::c(n as f64);
    let kr2 = k * r * r;
    let base = F::one() + kr2;
    let two = F::c(2.0);
    Ok(two * a * k * theta * base.powf(-theta - two) * (nf + (nf - two - two * theta) * kr2))
}

/// `-Δ_γ u = -div(|∇u|^{γ-2}∇u)` for `u = A(1+Kr^m)^{-θ}` with `m = γ/(γ-1)`:
/// `(AKmθ)^{γ-1} (1+Kr^m)^{-(θ+1)(γ-1)-1} (n + (n-(θ+1)γ)Kr^m)`.
pub fn radial_gamma_laplacian<F: Real>(f: &RadialFunction<F>, n: u32, gamma: F, r: F) -> Result<F> {
    let (theta, m) = power_params(f)?;
    let one = F::one();
    if !(gamma > one) {
        return invalid(format!("gamma = {gamma} violates gamma > 1"));
    }
    let want = gamma / (gamma - one);
    if (m - want).abs() > F::c(1e-12) * want {
        return invalid(format!("gamma-Laplacian formula needs m = gamma/(gamma-1) = {want}, got m = {m}"));
    }
    let (a, k) = (f.amplitude(), f.scale());
    let nf = F::c(n as f64);
    let krm = k * r.powf(m);
    let base = one + krm;
    let g1 = gamma - one;
    Ok((a * k * m * theta).powf(g1) * base.powf(-(theta + one) * g1 - one) * (nf + (nf - (theta + one) * gamma) * krm))
}
