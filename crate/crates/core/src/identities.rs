//! Pohozaev obstructions, integration-by-parts chains, energy balances and scaling algebra.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::param_space::{Kernel, ProblemSpec};
use crate::radial::quadrature::integrate;
use crate::radial::{breakpoints, integrate_half_line, sphere_area, QuadratureConfig, RadialFunction};
use crate::scalar::{Real, Scalar};

/// Two sides of an identity and their relative gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual<F> {
    pub lhs: F,
    pub rhs: F,
    /// `|lhs - rhs| / max(|lhs|, |rhs|, floor)`.
    pub relative_residual: F,
    /// Quadrature tolerance the two sides were computed with.
    pub tolerance_used: F,
}

impl<F: Real> IdentityResidual<F> {
    pub fn new(lhs: F, rhs: F, tolerance_used: F) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(F::min_positive_value());
        IdentityResidual { lhs, rhs, relative_residual: (lhs - rhs).abs() / scale, tolerance_used }
    }
}

/// Sign of a Pohozaev obstruction and its equivalence with the exponent condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction<S> {
    pub value: S,
    /// `value ≤ 0`: no positive solution on a ball.
    pub obstructed: bool,
    /// The exponent condition the sign is equivalent to (supercritical or critical).
    pub exponent_condition: bool,
    /// `obstructed == exponent_condition`.
    pub consistent: bool,
}

fn check_order<S: Scalar>(n: u32, k: u32) -> Result<(S, S)> {
    if k < 1 || 2 * k >= n {
        return invalid(format!("order k = {k} violates 1 <= k < n/2 (n = {n})"));
    }
    Ok((S::int(n as i64), S::int(k as i64)))
}

fn positive<S: Scalar>(name: &str, x: &S) -> Result<()> {
    if !(*x > S::zero()) {
        return invalid(format!("{name} = {x} must be positive"));
    }
    Ok(())
}

/// `n/(p+1) + k(2-n)/2 + n(k-1)/2`, nonpositive iff `p ≥ (n+2k)/(n-2k)`.
pub fn pohozaev_obstruction_scalar<S: Scalar>(n: u32, k: u32, p: &S, tol: f64) -> Result<Obstruction<S>> {
    let (nf, kf) = check_order::<S>(n, k)?;
    positive("p", p)?;
    let one = S::one();
    let two = S::int(2);
    let value = nf.clone() / (p.clone() + one.clone()) + kf.clone() * (two.clone() - nf.clone()) / two.clone()
        + nf.clone() * (kf.clone() - one) / two.clone();
    let threshold = (nf.clone() + two.clone() * kf.clone()) / (nf - two * kf);
    let obstructed = value.compare(&S::zero(), tol) != Ordering::Greater;
    let exponent_condition = p.compare(&threshold, tol) != Ordering::Less;
    Ok(Obstruction { value, obstructed, exponent_condition, consistent: obstructed == exponent_condition })
}

/// `n/(p+1) + n/(q+1) + n(k-1) + (2-n)k`, nonpositive iff `1/(p+1) + 1/(q+1) ≤ (n-2k)/n`.
pub fn pohozaev_obstruction_system<S: Scalar>(n: u32, k: u32, p: &S, q: &S, tol: f64) -> Result<Obstruction<S>> {
    let (nf, kf) = check_order::<S>(n, k)?;
    positive("p", p)?;
    positive("q", q)?;
    let one = S::one();
    let two = S::int(2);
    let value = nf.clone() / (p.clone() + one.clone())
        + nf.clone() / (q.clone() + one.clone())
        + nf.clone() * (kf.clone() - one.clone())
        + (two.clone() - nf.clone()) * kf.clone();
    let sum = one.clone() / (p.clone() + one.clone()) + one.clone() / (q.clone() + one);
    let bound = (nf.clone() - two * kf) / nf;
    let obstructed = value.compare(&S::zero(), tol) != Ordering::Greater;
    let exponent_condition = sum.compare(&bound, tol) != Ordering::Greater;
    Ok(Obstruction { value, obstructed, exponent_condition, consistent: obstructed == exponent_condition })
}

/// Polynomial in `r²`: `Σ c_i r^{2i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial<F> {
    pub coeffs: Vec<F>,
}

impl<F: Real> EvenPolynomial<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        EvenPolynomial { coeffs }
    }

    /// `(1 - r²/R²)^power`.
    pub fn bump(radius: F, power: u32) -> Self {
        let mut c = vec![F::one()];
        let step = -(radius * radius).recip();
        for _ in 0..power {
            let mut next = vec![F::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i] = next[i] + *ci;
                next[i + 1] = next[i + 1] + *ci * step;
            }
            c = next;
        }
        EvenPolynomial { coeffs: c }
    }

    pub fn value(&self, r: F) -> F {
        let r2 = r * r;
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * r2 + *c)
    }

    pub fn derivative(&self, r: F) -> F {
        let r2 = r * r;
        let mut acc = F::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * r2 + F::c(2.0 * i as f64) * *c;
        }
        acc * r
    }

    /// `-Δ` in dimension `n`: `r^{2i} ↦ -2i(2i+n-2) r^{2i-2}`.
    pub fn neg_laplacian(&self, n: u32) -> Self {
        let coeffs = (1..self.coeffs.len())
            .map(|i| -F::c((2 * i) as f64 * (2 * i + n as usize - 2) as f64) * self.coeffs[i])
            .collect();
        EvenPolynomial { coeffs }
    }

    /// `r ↦ p(r / s)`.
    pub fn rescaled(&self, s: F) -> Self {
        let inv = (s * s).recip();
        let mut f = F::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = *c * f;
                f = f * inv;
                v
            })
            .collect();
        EvenPolynomial { coeffs }
    }
}

/// One integral of the chain, e.g. `∫ u_1 u_3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMember<F> {
    pub label: String,
    pub value: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport<F> {
    /// `∫u_1 u_{k+1}, ∫∇u_1·∇u_k, ∫u_2 u_k, …, ∫u_{k+1} u_1` in integration-by-parts order.
    pub members: Vec<ChainMember<F>>,
    /// Residuals between consecutive members.
    pub residuals: Vec<IdentityResidual<F>>,
}

/// Integration-by-parts chain for `u_{j+1} = -Δu_j` on the ball of radius `R`.
///
/// Consecutive members differ by sphere terms `R^{n-1} u_i(R) u_j'(R)`; these are evaluated
/// exactly first and the call is rejected, naming the failing links, when any is not
/// negligible.
pub fn green_chain_residual<F: Real>(
    u1: &EvenPolynomial<F>,
    k: u32,
    n: u32,
    radius: F,
    cfg: &QuadratureConfig,
) -> Result<ChainReport<F>> {
    cfg.validate()?;
    if k < 1 || n < 2 {
        return invalid("chain needs k >= 1 and n >= 2");
    }
    if !(radius > F::zero() && radius.is_finite()) {
        return invalid("radius must be positive");
    }
    let k = k as usize;
    let mut chain = vec![u1.clone()];
    for j in 0..k {
        let next = chain[j].neg_laplacian(n);
        chain.push(next);
    }
    let area = sphere_area::<F>(n);
    let nm1 = (n - 1) as i32;
    let ball = |h: &dyn Fn(F) -> F, label: &str| -> Result<F> {
        let pts = [F::zero(), radius * F::c(0.5), radius];
        let v = integrate(|r: F| h(r) * r.powi(nm1), &pts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, label)?;
        Ok(area * v.value)
    };
    // u indices are 1-based in labels
    let u = |i: usize| &chain[i - 1];
    let mut members = Vec::new();
    let mut boundary = Vec::new();
    let sphere = area * radius.powi(nm1);
    for j in 1..=k {
        let (a, b) = (j, k + 2 - j);
        let label = format!("int u{a} u{b}");
        members.push(ChainMember { value: ball(&|r| u(a).value(r) * u(b).value(r), &label)?, label });
        let (a, c) = (j, k + 1 - j);
        let label = format!("int grad u{a} . grad u{c}");
        members.push(ChainMember { value: ball(&|r| u(a).derivative(r) * u(c).derivative(r), &label)?, label });
        // P_j - G_j and G_j - P_{j+1}
        boundary.push(-sphere * u(j).value(radius) * u(k + 1 - j).derivative(radius));
        boundary.push(sphere * u(k + 1 - j).value(radius) * u(j).derivative(radius));
    }
    let label = format!("int u{} u1", k + 1);
    members.push(ChainMember { value: ball(&|r| u(k + 1).value(r) * u(1).value(r), &label)?, label });
    let scale = members.iter().fold(F::min_positive_value(), |m, c| m.max(c.value.abs()));
    let limit = F::c(cfg.rel_tol.max(1e-12)) * scale;
    let failing: Vec<String> = boundary
        .iter()
        .enumerate()
        .filter(|(_, b)| b.abs() > limit)
        .map(|(i, b)| format!("{} = {} (boundary term {:e})", members[i].label, members[i + 1].label, b.as_f64()))
        .collect();
    if !failing.is_empty() {
        return Err(Error::Rejected(format!("boundary conditions not met: {}", failing.join("; "))));
    }
    let tol = F::c(cfg.rel_tol);
    let residuals = members.windows(2).map(|w| IdentityResidual::new(w[0].value, w[1].value, tol)).collect();
    Ok(ChainReport { members, residuals })
}

/// `|S^{n-1}| ∫₀^∞ h(r) r^{n-1} dr` for `h ~ r^{-n-κ}`, with head breakpoints from `u`.
fn radial_integral<F: Real>(
    u: &RadialFunction<F>,
    n: u32,
    stretch: F,
    kappa: F,
    h: impl Fn(F) -> F,
    cfg: &QuadratureConfig,
    context: &str,
) -> Result<F> {
    let head: Vec<F> = breakpoints(u, F::zero(), F::c(100.0) * u.core_scale(), &[])
        .into_iter()
        .map(|p| p / stretch)
        .collect();
    let nm1 = F::c((n - 1) as f64);
    let v = integrate_half_line(
        |r: F| if r == F::zero() { F::zero() } else { h(r) * (nm1 * r.ln()).exp() },
        &head,
        kappa,
        cfg.rel_tol,
        cfg,
        None,
        context,
    )?;
    Ok(sphere_area::<F>(n) * v)
}

/// `∫ u^e dx` over `R^n`.
pub fn lebesgue_energy<F: Real>(u: &RadialFunction<F>, n: u32, e: F, cfg: &QuadratureConfig) -> Result<F> {
    cfg.validate()?;
    let kappa = u.decay_exponent() * e - F::c(n as f64);
    radial_integral(u, n, F::one(), kappa, |r| (e * u.ln_value(r)).exp(), cfg, "L^e energy")
}

/// Both sides of the integral Pohozaev relation.
#[derive(Debug, Clone, PartialEq)]
pub struct PohozaevReport<F> {
    /// `∫ u^p (x·∇u) dx`.
    pub a: F,
    /// `-((n-α)/2) ∫ u^{p+1} dx`.
    pub b: F,
    /// `-(n/(p+1)) ∫ u^{p+1} dx`.
    pub c: F,
    pub a_vs_b: IdentityResidual<F>,
    pub a_vs_c: IdentityResidual<F>,
}

/// `A = ∫u^p x·∇u`, against `B` (from the equation) and `C` (from integrating by parts).
///
/// `A = C` holds for any decaying `u`; `A = B` additionally needs `p = (n+α)/(n-α)`.
pub fn integral_pohozaev_residual<F: Real>(
    u: &RadialFunction<F>,
    n: u32,
    alpha: F,
    p: F,
    cfg: &QuadratureConfig,
) -> Result<PohozaevReport<F>> {
    cfg.validate()?;
    let nf = F::c(n as f64);
    if !(alpha > F::zero() && alpha < nf && p > F::zero()) {
        return invalid("Pohozaev relation needs 0 < alpha < n and p > 0");
    }
    let kappa = u.decay_exponent() * (p + F::one()) - nf;
    let energy = lebesgue_energy(u, n, p + F::one(), cfg)?;
    let a = radial_integral(
        u,
        n,
        F::one(),
        kappa,
        |r| (p * u.ln_value(r)).exp() * r * u.derivative(r),
        cfg,
        "Pohozaev x.grad u",
    )?;
    let two = F::c(2.0);
    let b = -(nf - alpha) / two * energy;
    let c = -nf / (p + F::one()) * energy;
    let tol = F::c(cfg.rel_tol);
    Ok(PohozaevReport { a, b, c, a_vs_b: IdentityResidual::new(a, b, tol), a_vs_c: IdentityResidual::new(a, c, tol) })
}

/// `∫|∇u|^γ dx` against `∫u^{p+1} dx`.
pub fn energy_balance_residual<F: Real>(
    u: &RadialFunction<F>,
    n: u32,
    gamma: F,
    p: F,
    cfg: &QuadratureConfig,
) -> Result<IdentityResidual<F>> {
    cfg.validate()?;
    if !(gamma > F::one() && p > F::zero()) {
        return invalid("energy balance needs gamma > 1 and p > 0");
    }
    let nf = F::c(n as f64);
    let kappa = (u.decay_exponent() + F::one()) * gamma - nf;
    let grad = radial_integral(u, n, F::one(), kappa, |r| u.derivative(r).abs().powf(gamma), cfg, "gradient energy")?;
    let pot = lebesgue_energy(u, n, p + F::one(), cfg)?;
    Ok(IdentityResidual::new(grad, pot, F::c(cfg.rel_tol)))
}

/// `∫(μ^σ u(μ·))^e dx` against `μ^{σe-n} ∫u^e dx`; both are computed by quadrature.
pub fn scaled_energy_check<F: Real>(
    u: &RadialFunction<F>,
    mu: F,
    sigma: F,
    e: F,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<IdentityResidual<F>> {
    cfg.validate()?;
    if !(mu > F::zero() && mu.is_finite() && e > F::zero()) {
        return invalid("scaled energy needs mu > 0 and e > 0");
    }
    let nf = F::c(n as f64);
    let kappa = u.decay_exponent() * e - nf;
    let scaled = |m: F, s: F| {
        let lift = m.powf(s);
        radial_integral(u, n, m, kappa, move |r| (lift * u.value(m * r)).powf(e), cfg, "scaled energy")
    };
    let lhs = scaled(mu, sigma)?;
    let rhs = mu.powf(sigma * e - nf) * scaled(F::one(), F::zero())?;
    Ok(IdentityResidual::new(lhs, rhs, F::c(cfg.rel_tol)))
}

/// Exponents `σ` keeping the equation and an energy invariant under `u ↦ μ^σ u(μ·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingExponents<S> {
    /// `[σ]` or `[σ1, σ2]` from the equation.
    pub sigma_equation: Vec<S>,
    /// From the primary energy: `L^{p+1}` (Riesz, poly-Laplace) or `L^{p+γ-1}`.
    pub sigma_energy: Vec<S>,
    pub invariant: bool,
    /// From the `L^{p+1}` energy, for kernels whose primary energy differs.
    pub sigma_energy_alt: Option<Vec<S>>,
    /// Exact algebraic invariance of the `L^{p+1}` energy.
    pub invariant_alt: Option<bool>,
    /// The system condition `p = q or γ = 2` as stated for the `L^{p+1}` energy. It is only
    /// the ratio of the two energy conditions, so `invariant_alt` can be false when it holds.
    pub stated_alt_condition: Option<bool>,
}

/// Scaling exponents and invariance flags for `spec`.
pub fn scaling_exponents<S: Scalar>(spec: &ProblemSpec<S>) -> Result<ScalingExponents<S>> {
    let (s, g1) = spec.kernel().wolff_pair();
    let n = S::int(spec.n() as i64);
    let p = spec.p().clone();
    let tol = spec.tol();
    let has_alt = matches!(spec.kernel(), Kernel::Wolff { .. } | Kernel::GammaLaplace { .. });
    let eq_all = |a: &[S], b: &[S]| a.iter().zip(b).all(|(x, y)| x.approx_eq(y, tol));
    let one = S::one();
    match spec.q() {
        None => {
            let denom = p.clone() - g1.clone();
            if denom.compare(&S::zero(), tol) == Ordering::Equal {
                return Err(Error::Rejected("scaling exponents undefined: p = gamma - 1".into()));
            }
            let sigma = vec![s / denom];
            let energy = vec![n.clone() / (p.clone() + g1)];
            let alt = has_alt.then(|| vec![n.clone() / (p.clone() + one)]);
            Ok(ScalingExponents {
                invariant: eq_all(&sigma, &energy),
                invariant_alt: alt.as_ref().map(|a| eq_all(&sigma, a)),
                sigma_equation: sigma,
                sigma_energy: energy,
                sigma_energy_alt: alt,
                stated_alt_condition: None,
            })
        }
        Some(q) => {
            let q = q.clone();
            let det = p.clone() * q.clone() - g1.clone() * g1.clone();
            if det.compare(&S::zero(), tol) == Ordering::Equal {
                return Err(Error::Rejected("scaling exponents undefined: pq = (gamma-1)^2".into()));
            }
            // (γ-1)σ1 + βγ = qσ2, (γ-1)σ2 + βγ = pσ1
            let sigma = vec![
                s.clone() * (q.clone() + g1.clone()) / det.clone(),
                s * (p.clone() + g1.clone()) / det,
            ];
            let energy = vec![n.clone() / (p.clone() + g1.clone()), n.clone() / (q.clone() + g1.clone())];
            let alt = has_alt.then(|| vec![n.clone() / (p.clone() + one.clone()), n / (q.clone() + one.clone())]);
            let stated = has_alt.then(|| p.approx_eq(&q, tol) || g1.approx_eq(&one, tol));
            Ok(ScalingExponents {
                invariant: eq_all(&sigma, &energy),
                invariant_alt: alt.as_ref().map(|a| eq_all(&sigma, a)),
                sigma_equation: sigma,
                sigma_energy: energy,
                sigma_energy_alt: alt,
                stated_alt_condition: stated,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::bubble_profile;
    use crate::param_space::CoeffMode;
    use crate::scalar::Exact;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn tight() -> QuadratureConfig {
        QuadratureConfig { rel_tol: 1e-12, abs_tol: 1e-14, ..Default::default() }
    }

    #[test]
    fn obstruction_examples() {
        let o = pohozaev_obstruction_scalar(5, 2, &Exact::int(9), 0.0).unwrap();
        assert_eq!(o.value, Exact::int(0));
        assert!(o.obstructed && o.consistent);
        let o = pohozaev_obstruction_scalar(5, 2, &Exact::int(10), 0.0).unwrap();
        assert_eq!(o.value, Exact::ratio(-1, 22));
        let o = pohozaev_obstruction_scalar(3, 1, &Exact::int(3), 0.0).unwrap();
        assert_eq!(o.value, Exact::ratio(1, 4));
        assert!(!o.obstructed && o.consistent);
        let o = pohozaev_obstruction_system(6, 1, &Exact::int(2), &Exact::int(2), 0.0).unwrap();
        assert_eq!(o.value, Exact::int(0));
        let o = pohozaev_obstruction_system(6, 1, &Exact::int(3), &Exact::int(3), 0.0).unwrap();
        assert_eq!(o.value, Exact::int(-1));
        let o = pohozaev_obstruction_system(5, 1, &Exact::int(1), &Exact::int(1), 0.0).unwrap();
        assert_eq!(o.value, Exact::int(2));
        assert!(pohozaev_obstruction_scalar(4, 2, &Exact::int(3), 0.0).is_err());
    }

    #[test]
    fn green_chain_bump() {
        let u1 = EvenPolynomial::bump(1.0f64, 2);
        assert_eq!(u1.neg_laplacian(3).coeffs, vec![12.0, -20.0]);
        let rep = green_chain_residual(&u1, 2, 3, 1.0, &tight()).unwrap();
        assert_eq!(rep.members.len(), 5);
        for m in &rep.members {
            assert_relative_eq!(m.value, 256.0 * PI / 7.0, max_relative = 1e-10);
        }
        let rep = green_chain_residual(&EvenPolynomial::bump(1.0f64, 1), 1, 3, 1.0, &tight()).unwrap();
        assert!(rep.residuals.iter().all(|r| r.relative_residual < 1e-10));
        // u1 = 1 - r² has u1'(1) ≠ 0, which breaks the k = 2 chain
        assert!(matches!(
            green_chain_residual(&EvenPolynomial::bump(1.0f64, 1), 2, 3, 1.0, &tight()),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn green_chain_homogeneity() {
        let u1 = EvenPolynomial::bump(1.0f64, 2);
        let a = green_chain_residual(&u1, 2, 3, 1.0, &tight()).unwrap();
        let b = green_chain_residual(&u1.rescaled(2.0), 2, 3, 2.0, &tight()).unwrap();
        // R^{n-2k}
        for (x, y) in a.members.iter().zip(&b.members) {
            assert_relative_eq!(y.value, x.value * 0.5, max_relative = 1e-10);
        }
    }

    #[test]
    fn bubble_pohozaev_and_energy() {
        let u = bubble_profile::<f64>(3).unwrap();
        let e = 3f64.powf(1.5) * PI * PI / 4.0;
        let rep = integral_pohozaev_residual(&u, 3, 2.0, 5.0, &tight()).unwrap();
        assert_relative_eq!(rep.a, -e / 2.0, max_relative = 1e-9);
        assert!(rep.a_vs_b.relative_residual < 1e-9 && rep.a_vs_c.relative_residual < 1e-9);
        let rep = integral_pohozaev_residual(&u, 3, 2.0, 4.0, &tight()).unwrap();
        assert!(rep.a_vs_b.relative_residual > 0.05 && rep.a_vs_c.relative_residual < 1e-9);
        let bal = energy_balance_residual(&u, 3, 2.0, 5.0, &tight()).unwrap();
        assert_relative_eq!(bal.lhs, e, max_relative = 1e-9);
        assert!(bal.relative_residual < 1e-9);
        let bad = RadialFunction::power(2.0, 2.0).unwrap();
        assert!(energy_balance_residual(&bad, 3, 2.0, 5.0, &tight()).unwrap().relative_residual > 0.1);
    }

    #[test]
    fn scaled_energy_examples() {
        let u = RadialFunction::<f64>::power(2.0, 2.0).unwrap();
        let r = scaled_energy_check(&u, 1.0, 0.7, 1.3, 3, &tight()).unwrap();
        assert_eq!(r.relative_residual, 0.0);
        let r = scaled_energy_check(&u, 2.0, 0.0, 1.0, 3, &tight()).unwrap();
        assert_relative_eq!(r.lhs, PI * PI / 8.0, max_relative = 1e-10);
        assert!(r.relative_residual < 1e-10);
        let b = bubble_profile::<f64>(3).unwrap();
        let r = scaled_energy_check(&b, 3.0, 0.5, 6.0, 3, &tight()).unwrap();
        assert!(r.relative_residual < 1e-10);
    }

    #[test]
    fn scaling_examples() {
        let riesz = |p: Exact| {
            ProblemSpec::new(5, Kernel::Riesz { alpha: Exact::int(2) }, p, None, CoeffMode::Constant).unwrap()
        };
        let s = scaling_exponents(&riesz(Exact::ratio(7, 3))).unwrap();
        assert_eq!(s.sigma_equation, vec![Exact::ratio(3, 2)]);
        assert!(s.invariant);
        let s = scaling_exponents(&riesz(Exact::int(2))).unwrap();
        assert_eq!(s.sigma_energy, vec![Exact::ratio(5, 3)]);
        assert!(!s.invariant);
        let spec = ProblemSpec::new(
            6,
            Kernel::GammaLaplace { gamma: Exact::ratio(3, 2) },
            Exact::int(3),
            Some(Exact::int(3)),
            CoeffMode::Constant,
        )
        .unwrap();
        let s = scaling_exponents(&spec).unwrap();
        assert_eq!(s.stated_alt_condition, Some(true));
        assert_eq!(s.invariant_alt, Some(false));
        assert!(scaling_exponents(&riesz(Exact::int(1))).is_err());
    }
}
