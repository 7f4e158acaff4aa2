//! Explicit solution families, their induced coefficients and double-bound verification.
//!
//! A family is a pair of explicit radial profiles `(u, v)` (or a single `u`). Plugging it
//! into the equation defines the coefficient, e.g. `c(x) = u / I_α(v^q)` for integral kernels
//! or `c = -Δu / u^p` for the Laplacian; the family is a solution for a double-bounded
//! coefficient exactly when `c` stays between two positive constants. This is verified on a
//! finite log-spaced grid together with the analytic limit at infinity, which is a numerical
//! verification, not a proof.

use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};
use crate::param_space::{
    classify_finite_energy_scalar, classify_finite_energy_system, classify_variable_coeff_scalar,
    classify_variable_coeff_system, system_families, CoeffMode, Component, DecayRate, Kernel,
    ProblemSpec, RateRole, SystemFamilyKind, Verdict,
};
use crate::radial::{
    radial_gamma_laplacian, radial_laplacian, riesz_potential, total_mass, wolff_potential,
    QuadratureConfig, RadialForm, RadialFunction,
};
use crate::scalar::{Real, Scalar};

/// Which construction a family comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    /// Scalar slow-decay family.
    Slow,
    /// Scalar fast-decay family.
    Fast,
    /// Constant-coefficient extremal (bubble) or explicit γ-Laplace solution.
    Exact,
    SlowSlow,
    FastFast,
    /// One component at the fast rate, the other at the induced rate (`mirrored` swaps them).
    MixedUFastVFast { mirrored: bool },
    /// Fast pair with a logarithmic factor on one component.
    LogCorrected { on_u: bool },
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Slow => "slow",
            FamilyTag::Fast => "fast",
            FamilyTag::Exact => "exact",
            FamilyTag::SlowSlow => "slow-slow",
            FamilyTag::FastFast => "fast-fast",
            FamilyTag::MixedUFastVFast { mirrored: false } => "mixed",
            FamilyTag::MixedUFastVFast { mirrored: true } => "mixed-mirrored",
            FamilyTag::LogCorrected { on_u: false } => "log-corrected-v",
            FamilyTag::LogCorrected { on_u: true } => "log-corrected-u",
        }
    }
}

/// An explicit family: profiles plus the decay rates they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyPair<F> {
    pub u: RadialFunction<F>,
    pub v: Option<RadialFunction<F>>,
    pub rates: (DecayRate<F>, Option<DecayRate<F>>),
    pub family_tag: FamilyTag,
}

fn rate_to_real<S: Scalar, F: Real>(r: &DecayRate<S>) -> DecayRate<F> {
    DecayRate {
        two_theta: F::c(r.two_theta.to_f64()),
        m: F::c(r.m.to_f64()),
        log_corrected: r.log_corrected,
        role: r.role,
        component: r.component,
    }
}

/// Profile `(1+r^m)^{-θ}` with `mθ = two_theta`, times `log(e+r)^{log_exp}` when corrected.
fn profile<F: Real>(rate: &DecayRate<F>, log_exp: F) -> Result<RadialFunction<F>> {
    let theta = rate.two_theta / rate.m;
    if rate.log_corrected {
        RadialFunction::log_power(theta, rate.m, log_exp)
    } else {
        RadialFunction::power(theta, rate.m)
    }
}

fn reject_verdict<S: Scalar>(v: &Verdict<S>) -> Error {
    Error::Rejected(format!(
        "no explicit family: classifier verdict is {} ({})",
        v.outcome.label(),
        v.theorem_tag
    ))
}

/// Every explicit family constructed for `spec`, with the gating constraints evaluated.
///
/// Rejects specs outside the existence region of the matching classifier.
pub fn family_catalog<S: Scalar, F: Real>(spec: &ProblemSpec<S>) -> Result<Vec<FamilyPair<F>>> {
    let (_, g1) = spec.kernel().wolff_pair();
    let log_exp = F::c(1.0 / g1.to_f64());
    let mut out = Vec::new();
    match (spec.is_system(), spec.coeff_mode()) {
        (false, mode) => {
            let verdict = match mode {
                CoeffMode::DoubleBounded => classify_variable_coeff_scalar(spec)?,
                CoeffMode::Constant => classify_finite_energy_scalar(spec)?,
            };
            if !verdict.exists_outcome() {
                return Err(reject_verdict(&verdict));
            }
            for r in verdict.witness_rates() {
                let rate: DecayRate<F> = rate_to_real(r);
                let tag = match r.role {
                    RateRole::Slow => FamilyTag::Slow,
                    RateRole::Fast => FamilyTag::Fast,
                    _ => FamilyTag::Exact,
                };
                let u = match (r.role, spec.kernel()) {
                    (RateRole::Explicit, Kernel::GammaLaplace { gamma }) => {
                        let (n, gamma) = (spec.n(), F::c(gamma.to_f64()));
                        gamma_explicit_profile(n, gamma, F::one(), calibrate_gamma_explicit(n, gamma, F::one())?)?
                    }
                    _ => profile(&rate, log_exp)?,
                };
                out.push(FamilyPair { u, v: None, rates: (rate, None), family_tag: tag });
            }
        }
        (true, CoeffMode::DoubleBounded) => {
            let verdict = classify_variable_coeff_system(spec)?;
            if !verdict.exists_outcome() {
                return Err(reject_verdict(&verdict));
            }
            let rates = verdict.witness_rates();
            let ru: DecayRate<F> = rate_to_real(&rates[0]);
            let rv: DecayRate<F> = rate_to_real(&rates[1]);
            out.push(FamilyPair {
                u: profile(&ru, log_exp)?,
                v: Some(profile(&rv, log_exp)?),
                rates: (ru, Some(rv)),
                family_tag: FamilyTag::SlowSlow,
            });
            for fam in system_families(spec) {
                let ru: DecayRate<F> = rate_to_real(&fam.u);
                let rv: DecayRate<F> = rate_to_real(&fam.v);
                let tag = match fam.kind {
                    SystemFamilyKind::FastFast => FamilyTag::FastFast,
                    SystemFamilyKind::Mixed { mirrored } => FamilyTag::MixedUFastVFast { mirrored },
                    SystemFamilyKind::Log { on_u } => FamilyTag::LogCorrected { on_u },
                };
                out.push(FamilyPair {
                    u: profile(&ru, log_exp)?,
                    v: Some(profile(&rv, log_exp)?),
                    rates: (ru, Some(rv)),
                    family_tag: tag,
                });
            }
        }
        (true, CoeffMode::Constant) => {
            let (finite_energy, _) = classify_finite_energy_system(spec)?;
            if !finite_energy.exists_outcome() {
                return Err(reject_verdict(&finite_energy));
            }
            let rates = finite_energy.witness_rates();
            let ru: DecayRate<F> = rate_to_real(&rates[0]);
            let rv: DecayRate<F> = rate_to_real(&rates[1]);
            let tag = if ru.log_corrected || rv.log_corrected {
                FamilyTag::LogCorrected { on_u: ru.log_corrected }
            } else if ru.two_theta == rv.two_theta {
                FamilyTag::FastFast
            } else {
                FamilyTag::MixedUFastVFast { mirrored: ru.role == RateRole::Mixed }
            };
            out.push(FamilyPair {
                u: profile(&ru, log_exp)?,
                v: Some(profile(&rv, log_exp)?),
                rates: (ru, Some(rv)),
                family_tag: tag,
            });
        }
    }
    Ok(out)
}

/// How the coefficient was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRoute {
    /// `u / I_α(·)` with the bare Riesz kernel of this order.
    RieszIntegral,
    WolffIntegral,
    /// `-Δu / (·)` from the closed-form radial Laplacian.
    Laplacian,
    /// `-Δ_γ u / (·)` from the closed-form radial γ-Laplacian.
    GammaLaplacian,
}

/// Coefficient values on a radial grid; `c_v` is present for systems.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientProfile<F> {
    pub radii: Vec<F>,
    pub c_u: Vec<F>,
    pub c_v: Option<Vec<F>>,
    pub route: CoefficientRoute,
    /// Analytic limits of `c_u`, `c_v` at infinity, when the power exponents determine them.
    pub limit_u: Option<F>,
    pub limit_v: Option<F>,
}

enum Operator<F> {
    Riesz(F),
    Wolff(F, F),
    Laplacian,
    GammaLaplacian(F),
}

fn operator_for<S: Scalar, F: Real>(spec: &ProblemSpec<S>) -> Operator<F> {
    match spec.kernel() {
        Kernel::Riesz { alpha } => Operator::Riesz(F::c(alpha.to_f64())),
        Kernel::Wolff { beta, gamma } => Operator::Wolff(F::c(beta.to_f64()), F::c(gamma.to_f64())),
        // Lane-Emden systems go through the integral form: their log-corrected profiles have
        // no closed-form Laplacian.
        Kernel::PolyLaplace { k: 1 } if !spec.is_system() => Operator::Laplacian,
        Kernel::PolyLaplace { k } => Operator::Riesz(F::c(2.0 * *k as f64)),
        Kernel::GammaLaplace { gamma } => Operator::GammaLaplacian(F::c(gamma.to_f64())),
    }
}

/// `c(r)` for each equation of `spec` along `radii`.
///
/// Integral kernels give `c_u = u / K(v^q)` and `c_v = v / K(u^p)` (scalar: `u / K(u^p)`);
/// the Laplacian and γ-Laplacian give `(-Δ u) / v^q` from the closed-form operators.
/// Divergent potentials propagate as [`Error::Divergence`].
pub fn coefficient_profile<S: Scalar, F: Real>(
    spec: &ProblemSpec<S>,
    pair: &FamilyPair<F>,
    radii: &[F],
    cfg: &QuadratureConfig,
) -> Result<CoefficientProfile<F>> {
    let n = spec.n();
    let p = F::c(spec.p().to_f64());
    let q = spec.q().map(|q| F::c(q.to_f64()));
    if spec.is_system() != pair.v.is_some() {
        return invalid("family shape (scalar/system) does not match the spec");
    }
    if radii.iter().any(|r| !(*r >= F::zero() && r.is_finite())) {
        return invalid("radii must be finite and nonnegative");
    }
    let op = operator_for::<S, F>(spec);
    let route = match op {
        Operator::Riesz(_) => CoefficientRoute::RieszIntegral,
        Operator::Wolff(..) => CoefficientRoute::WolffIntegral,
        Operator::Laplacian => CoefficientRoute::Laplacian,
        Operator::GammaLaplacian(_) => CoefficientRoute::GammaLaplacian,
    };
    // (profile whose coefficient is measured, source profile raised to the power)
    let mut equations = vec![(&pair.u, pair.v.as_ref().unwrap_or(&pair.u), q.unwrap_or(p))];
    if let Some(v) = &pair.v {
        equations.push((v, &pair.u, p));
    }
    let mut columns = Vec::new();
    let mut limits = Vec::new();
    for (target, source, power) in equations {
        let forced = source.powf(power);
        let mut col = Vec::with_capacity(radii.len());
        for &r in radii {
            let denom_or_num = match &op {
                Operator::Riesz(alpha) => riesz_potential(&forced, n, *alpha, r, cfg)?,
                Operator::Wolff(beta, gamma) => wolff_potential(&forced, n, *beta, *gamma, r, cfg)?,
                Operator::Laplacian => radial_laplacian(target, n, r)?,
                Operator::GammaLaplacian(gamma) => radial_gamma_laplacian(target, n, *gamma, r)?,
            };
            col.push(match &op {
                Operator::Riesz(_) | Operator::Wolff(..) => target.value(r) / denom_or_num,
                _ => denom_or_num / forced.value(r),
            });
        }
        columns.push(col);
        limits.push(coefficient_limit(&op, n, target, &forced, cfg)?);
    }
    let c_v = if columns.len() == 2 { columns.pop() } else { None };
    let limit_v = if limits.len() == 2 { limits.pop().flatten() } else { None };
    Ok(CoefficientProfile {
        radii: radii.to_vec(),
        c_u: columns.pop().expect("one column"),
        c_v,
        route,
        limit_u: limits.pop().flatten(),
        limit_v,
    })
}

/// `f(r) ≈ coef · r^{-exp}` at infinity; `None` for log-corrected or sampled profiles.
fn power_asymptotic<F: Real>(f: &RadialFunction<F>) -> Option<(F, F)> {
    match f.form() {
        RadialForm::Power { theta, m } => {
            Some((f.amplitude() * f.scale().powf(-*theta), *m * *theta))
        }
        _ => None,
    }
}

/// `∫|x-y|^{α-n}|y|^{-b} dy = riesz_composition_constant · |x|^{α-b}` for `α < b < n`.
pub fn riesz_composition_constant(n: u32, alpha: f64, b: f64) -> f64 {
    let n = n as f64;
    let lg = 0.5 * n * std::f64::consts::PI.ln() + ln_gamma(alpha / 2.0) + ln_gamma((n - b) / 2.0)
        + ln_gamma((b - alpha) / 2.0)
        - ln_gamma((n - alpha) / 2.0)
        - ln_gamma(b / 2.0)
        - ln_gamma((n + alpha - b) / 2.0);
    lg.exp()
}

/// Limit of the coefficient at infinity from the leading power laws, or `None` when a
/// logarithm or an unknown constant is involved.
fn coefficient_limit<F: Real>(
    op: &Operator<F>,
    n: u32,
    target: &RadialFunction<F>,
    forced: &RadialFunction<F>,
    cfg: &QuadratureConfig,
) -> Result<Option<F>> {
    let (Some((ct, et)), Some((cf, ef))) = (power_asymptotic(target), power_asymptotic(forced)) else {
        return Ok(None);
    };
    let nf = F::c(n as f64);
    let one = F::one();
    let (num, den) = match op {
        Operator::Riesz(alpha) => {
            let pot = if ef > nf {
                (total_mass(forced, n, cfg)?, nf - *alpha)
            } else if ef < nf && ef > *alpha {
                let k = riesz_composition_constant(n, alpha.as_f64(), ef.as_f64());
                (cf * F::c(k), ef - *alpha)
            } else {
                return Ok(None);
            };
            ((ct, et), pot)
        }
        Operator::Wolff(beta, gamma) => {
            if !(ef > nf) {
                return Ok(None);
            }
            let g1 = *gamma - one;
            let m = total_mass(forced, n, cfg)?;
            let bg = *beta * *gamma;
            ((ct, et), (m.powf(one / g1) * g1 / (nf - bg), (nf - bg) / g1))
        }
        Operator::Laplacian => {
            let (theta, _) = target.power_params().expect("power");
            let (a, k) = (target.amplitude(), target.scale());
            let two = F::c(2.0);
            let lead = nf - two - two * theta;
            let lap = if lead != F::zero() {
                (two * a * k * theta * lead * k.powf(-theta - one), two * theta + two)
            } else {
                (two * a * k * theta * nf * k.powf(-theta - two), two * theta + F::c(4.0))
            };
            (lap, (cf, ef))
        }
        Operator::GammaLaplacian(gamma) => {
            let (theta, m) = target.power_params().expect("power");
            let (a, k) = (target.amplitude(), target.scale());
            let g1 = *gamma - one;
            let outer = (theta + one) * g1 + one;
            let base = (a * k * m * theta).powf(g1) * k.powf(-outer);
            let lead = nf - (theta + one) * *gamma;
            let lap = if lead != F::zero() {
                (base * lead * k, m * outer - m)
            } else {
                (base * nf, m * outer)
            };
            (lap, (cf, ef))
        }
    };
    let ((a_num, e_num), (a_den, e_den)) = (num, den);
    let scale = e_num.abs().max(e_den.abs()).max(one);
    Ok(Some(if (e_num - e_den).abs() <= F::c(1e-9) * scale {
        a_num / a_den
    } else if e_num > e_den {
        F::zero()
    } else {
        F::infinity()
    }))
}

/// Double-boundedness verdict for one coefficient grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleBoundReport<F> {
    pub inf_c: F,
    pub sup_c: F,
    pub ratio: F,
    pub grid: Vec<F>,
    pub limit_at_infinity: Option<F>,
    /// Double bounded on the tested range (and at infinity when the limit is known).
    pub verdict: bool,
    /// First radius with a nonpositive or non-finite coefficient.
    pub offending_radius: Option<F>,
    pub note: Option<String>,
}

/// Combines grid extrema with the analytic limit at infinity.
pub fn double_bound_report<F: Real>(radii: &[F], c: &[F], limit: Option<F>) -> DoubleBoundReport<F> {
    let mut inf_c = F::infinity();
    let mut sup_c = F::neg_infinity();
    let mut offending = None;
    for (&r, &v) in radii.iter().zip(c) {
        if !(v.is_finite() && v > F::zero()) && offending.is_none() {
            offending = Some(r);
        }
        inf_c = inf_c.min(v);
        sup_c = sup_c.max(v);
    }
    let mut note = None;
    if let Some(l) = limit {
        inf_c = inf_c.min(l);
        sup_c = sup_c.max(l);
        if !(l.is_finite() && l > F::zero()) {
            note = Some(format!("coefficient tends to {} at infinity", l.as_f64()));
        }
    } else {
        note = Some("no analytic limit at infinity; verdict covers the tested grid only".into());
    }
    let limit_ok = limit.is_none_or(|l| l.is_finite() && l > F::zero());
    let verdict = offending.is_none() && limit_ok && inf_c > F::zero() && sup_c.is_finite() && !c.is_empty();
    DoubleBoundReport {
        inf_c,
        sup_c,
        ratio: sup_c / inf_c,
        grid: radii.to_vec(),
        limit_at_infinity: limit,
        verdict,
        offending_radius: offending,
        note,
    }
}

/// `0` followed by `per_decade` log-spaced radii per decade on `[10^lo, 10^hi]`.
pub fn log_grid<F: Real>(lo: i32, hi: i32, per_decade: u32) -> Vec<F> {
    let mut out = vec![F::zero()];
    let steps = (hi - lo) as u32 * per_decade;
    for i in 0..=steps {
        out.push(F::c(10f64.powf(lo as f64 + i as f64 / per_decade as f64)));
    }
    out
}

/// Reports for `c_u` (and `c_v`) of a computed profile.
pub fn profile_reports<F: Real>(profile: &CoefficientProfile<F>, log_corrected: bool) -> Vec<DoubleBoundReport<F>> {
    let mut out = vec![double_bound_report(&profile.radii, &profile.c_u, profile.limit_u)];
    if let Some(cv) = &profile.c_v {
        out.push(double_bound_report(&profile.radii, cv, profile.limit_v));
    }
    if log_corrected {
        for r in &mut out {
            r.note = Some(
                "log-corrected family: the coefficient drifts like a power of log r at infinity; \
                 verdict covers the tested grid only"
                    .into(),
            );
        }
    }
    out
}

/// Constant-coefficient solutions with known closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactKind<F> {
    /// `-Δu = u^{(n+2)/(n-2)}`, `u = (n(n-2))^{(n-2)/4} (1+r²)^{-(n-2)/2}`.
    Bubble { n: u32 },
    /// `-Δ_γ u = u^{γ*-1}`, `u = d / (1 + D d^{γ/(n-γ)} r^{γ/(γ-1)})^{(n-γ)/γ}`; `D` is
    /// calibrated so the residual at `r = 1` vanishes when not given.
    GammaLaplaceExplicit { n: u32, gamma: F, d: F, big_d: Option<F> },
}

/// Outcome of an exact-solution check.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResidual<F> {
    pub max_relative_residual: F,
    pub profile: RadialFunction<F>,
    pub exponent: F,
    /// Calibrated (or supplied) `D` for the γ-Laplace family.
    pub big_d: Option<F>,
}

/// Bubble amplitude `(n(n-2))^{(n-2)/4}`.
pub fn bubble_profile<F: Real>(n: u32) -> Result<RadialFunction<F>> {
    if n < 3 {
        return invalid(format!("dimension n = {n} violates n >= 3"));
    }
    let nf = F::c(n as f64);
    let two = F::c(2.0);
    let amp = (nf * (nf - two)).powf((nf - two) / F::c(4.0));
    RadialFunction::power((nf - two) / two, two)?.with_amplitude(amp)
}

fn gamma_explicit_profile<F: Real>(n: u32, gamma: F, d: F, big_d: F) -> Result<RadialFunction<F>> {
    let nf = F::c(n as f64);
    let one = F::one();
    let theta = (nf - gamma) / gamma;
    let m = gamma / (gamma - one);
    let k = big_d * d.powf(gamma / (nf - gamma));
    RadialFunction::power(theta, m)?.with_amplitude(d)?.with_scale(k)
}

fn gamma_explicit_exponent<F: Real>(n: u32, gamma: F) -> F {
    let nf = F::c(n as f64);
    nf * gamma / (nf - gamma) - F::one()
}

/// Bisection on `ln D` for the γ-Laplace explicit family so that `-Δ_γ u(1) = u(1)^{γ*-1}`.
pub fn calibrate_gamma_explicit<F: Real>(n: u32, gamma: F, d: F) -> Result<F> {
    let nf = F::c(n as f64);
    if !(gamma > F::one() && gamma < nf) || !(d > F::zero()) {
        return invalid("explicit gamma-Laplace family needs 1 < gamma < n and d > 0");
    }
    let p = gamma_explicit_exponent(n, gamma);
    let mismatch = |ln_d: F| -> Result<F> {
        let u = gamma_explicit_profile(n, gamma, d, ln_d.exp())?;
        let r = F::one();
        Ok(radial_gamma_laplacian(&u, n, gamma, r)?.ln() - p * u.value(r).ln())
    };
    let (mut lo, mut hi) = (F::c(-200.0), F::c(200.0));
    let (flo, fhi) = (mismatch(lo)?, mismatch(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::NonConvergence {
            context: "explicit gamma-Laplace calibration: no sign change".into(),
            estimate: f64::NAN,
            error_bound: f64::INFINITY,
        });
    }
    let increasing = fhi > flo;
    for _ in 0..200 {
        let mid = F::c(0.5) * (lo + hi);
        let fm = mismatch(mid)?;
        if fm == F::zero() {
            return Ok(mid.exp());
        }
        if (fm > F::zero()) == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= F::epsilon() * F::c(4.0) * hi.abs().max(F::one()) {
            break;
        }
    }
    Ok((F::c(0.5) * (lo + hi)).exp())
}

/// Max relative residual of the constant-coefficient equation on `radii`.
pub fn exact_solution_residual<F: Real>(kind: ExactKind<F>, radii: &[F]) -> Result<ExactResidual<F>> {
    let (u, exponent, big_d, op_gamma, n) = match kind {
        ExactKind::Bubble { n } => {
            let nf = F::c(n as f64);
            let two = F::c(2.0);
            (bubble_profile::<F>(n)?, (nf + two) / (nf - two), None, None, n)
        }
        ExactKind::GammaLaplaceExplicit { n, gamma, d, big_d } => {
            let big_d = match big_d {
                Some(v) => v,
                None => calibrate_gamma_explicit(n, gamma, d)?,
            };
            (gamma_explicit_profile(n, gamma, d, big_d)?, gamma_explicit_exponent(n, gamma), Some(big_d), Some(gamma), n)
        }
    };
    let mut worst = F::zero();
    for &r in radii {
        let lhs = match op_gamma {
            None => radial_laplacian(&u, n, r)?,
            Some(g) => radial_gamma_laplacian(&u, n, g, r)?,
        };
        let rhs = u.value(r).powf(exponent);
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    Ok(ExactResidual { max_relative_residual: worst, profile: u, exponent, big_d })
}

/// Scalar helper: the component whose coefficient a report belongs to.
pub fn component_label(c: Component) -> &'static str {
    match c {
        Component::Single => "u",
        Component::U => "u",
        Component::V => "v",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use approx::assert_relative_eq;

    fn riesz(n: u32, alpha: i64, p: Exact, q: Option<Exact>) -> ProblemSpec<Exact> {
        ProblemSpec::new(n, Kernel::Riesz { alpha: Exact::int(alpha) }, p, q, CoeffMode::DoubleBounded).unwrap()
    }

    #[test]
    fn scalar_catalog_has_slow_and_fast() {
        let fams: Vec<FamilyPair<f64>> = family_catalog(&riesz(5, 2, Exact::int(3), None)).unwrap();
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[0].family_tag, FamilyTag::Slow);
        assert_relative_eq!(fams[0].rates.0.two_theta, 1.0);
        assert_relative_eq!(fams[1].rates.0.two_theta, 3.0);
    }

    #[test]
    fn system_catalog_at_p_q_5() {
        let fams: Vec<FamilyPair<f64>> =
            family_catalog(&riesz(5, 2, Exact::int(5), Some(Exact::int(5)))).unwrap();
        let tags: Vec<_> = fams.iter().map(|f| f.family_tag).collect();
        assert!(tags.contains(&FamilyTag::FastFast));
        assert!(tags.contains(&FamilyTag::LogCorrected { on_u: false }));
        let ff = fams.iter().find(|f| f.family_tag == FamilyTag::FastFast).unwrap();
        assert_relative_eq!(ff.rates.0.two_theta, 3.0);
    }

    #[test]
    fn catalog_rejects_nonexistence_region() {
        let err = family_catalog::<Exact, f64>(&riesz(5, 2, Exact::ratio(1, 2), Some(Exact::ratio(1, 2))));
        assert!(matches!(err, Err(Error::Rejected(_))));
    }

    #[test]
    fn lane_emden_profile_and_limit() {
        let spec = ProblemSpec::new(5, Kernel::PolyLaplace { k: 1 }, Exact::int(2), None, CoeffMode::DoubleBounded)
            .unwrap();
        let fams: Vec<FamilyPair<f64>> = family_catalog(&spec).unwrap();
        let slow = &fams[0];
        assert_relative_eq!(slow.u.power_params().unwrap().0, 1.0);
        let radii = log_grid(-2, 3, 4);
        let prof = coefficient_profile(&spec, slow, &radii, &QuadratureConfig::default()).unwrap();
        for (r, c) in radii.iter().zip(&prof.c_u) {
            assert_relative_eq!(*c, 2.0 * (r * r + 5.0) / (1.0 + r * r), max_relative = 1e-13);
        }
        let rep = &profile_reports(&prof, false)[0];
        assert_relative_eq!(rep.inf_c, 2.0, max_relative = 1e-12);
        assert_relative_eq!(rep.sup_c, 10.0, max_relative = 1e-12);
        assert!(rep.verdict);
    }

    #[test]
    fn report_flags_bad_nodes() {
        let rep = double_bound_report(&[0.0, 1.0, 2.0], &[1.0, -1.0, 1.0], None);
        assert!(!rep.verdict);
        assert_eq!(rep.offending_radius, Some(1.0));
        let rep = double_bound_report(&[0.0, 1.0], &[1.0, 1.0], Some(1.0));
        assert!(rep.verdict);
        assert_eq!(rep.ratio, 1.0);
        let rep = double_bound_report(&[0.0, 1.0], &[1.0, 1.0], Some(0.0));
        assert!(!rep.verdict);
    }

    #[test]
    fn composition_constant_oracle() {
        // n = 5, α = 2, b = 4: 4π²
        assert_relative_eq!(riesz_composition_constant(5, 2.0, 4.0), 4.0 * std::f64::consts::PI.powi(2), max_relative = 1e-13);
    }

    #[test]
    fn bubbles_and_explicit_family() {
        let radii = log_grid::<f64>(-2, 3, 4);
        for n in [3, 5, 7] {
            let res = exact_solution_residual(ExactKind::Bubble { n }, &radii).unwrap();
            assert!(res.max_relative_residual < 1e-12, "n = {n}: {}", res.max_relative_residual);
        }
        let res = exact_solution_residual(
            ExactKind::GammaLaplaceExplicit { n: 5, gamma: 1.5, d: 1.0, big_d: None },
            &radii,
        )
        .unwrap();
        assert!(res.max_relative_residual < 1e-10);
        // closed-form calibration: D = d^{γ/((n-γ)(γ-1))} / (mθ n^{1/(γ-1)})
        let (n, g, d) = (5.0f64, 1.5f64, 2.0f64);
        let want = d.powf(g / ((n - g) * (g - 1.0))) / (3.0 * (n - g) / g * n.powf(1.0 / (g - 1.0)));
        assert_relative_eq!(calibrate_gamma_explicit(5, g, d).unwrap(), want, max_relative = 1e-10);
    }
}
