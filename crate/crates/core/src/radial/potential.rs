//! Ball masses and Riesz/Wolff potentials of radial functions.
//!
//! All kernels are bare (`|x-y|^{α-n}`, no normalising constant). Potentials are computed
//! through the layer-cake form `(n-α)∫ t^{α-n-1} m(x,t) dt`, where `m(x,t)` is the mass of
//! `f` in `B_t(x)`; a direct `(s, φ)` double quadrature is kept as an oracle.

use std::cell::RefCell;

use statrs::function::gamma::ln_gamma;

use super::function::RadialFunction;
use super::quadrature::{integrate, integrate_with_floor};
use super::QuadratureConfig;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Surface area of the unit sphere `S^{n-1} ⊂ R^n`, `2π^{n/2}/Γ(n/2)`.
pub fn sphere_area<F: Real>(n: u32) -> F {
    let h = n as f64 / 2.0;
    F::c(2.0 * (h * std::f64::consts::PI.ln() - ln_gamma(h)).exp())
}

/// `∫₀^φ sin^m ψ dψ` for `φ ∈ [0, π]`.
pub fn sin_power_integral<F: Real>(m: u32, phi: F) -> F {
    let pi = F::PI();
    let phi = phi.max(F::zero()).min(pi);
    let third = pi / F::c(3.0);
    if phi <= third {
        sin_power_series(m, phi)
    } else if phi >= pi - third {
        full_sin_power::<F>(m) - sin_power_series(m, pi - phi)
    } else {
        sin_power_recursion(m, phi)
    }
}

/// `∫₀^π sin^m = √π Γ((m+1)/2) / Γ(m/2+1)`.
fn full_sin_power<F: Real>(m: u32) -> F {
    let m = m as f64;
    F::c((0.5 * std::f64::consts::PI.ln() + ln_gamma((m + 1.0) / 2.0) - ln_gamma(m / 2.0 + 1.0)).exp())
}

/// `Σ_k binom(2k,k)/4^k · x^{m+2k+1}/(m+2k+1)` with `x = sin φ`, valid for `φ ≤ π/2`; used
/// where the forward recursion would cancel catastrophically.
fn sin_power_series<F: Real>(m: u32, phi: F) -> F {
    let x = phi.sin();
    let x2 = x * x;
    let mut coeff = F::one();
    let mut power = x.powi(m as i32 + 1);
    let mut sum = F::zero();
    for k in 0..400u32 {
        let term = coeff * power / F::c((m + 2 * k + 1) as f64);
        sum = sum + term;
        if term <= F::epsilon() * sum {
            break;
        }
        coeff = coeff * F::c((2 * k + 1) as f64) / F::c((2 * k + 2) as f64);
        power = power * x2;
    }
    sum
}

fn sin_power_recursion<F: Real>(m: u32, phi: F) -> F {
    let (s, c) = phi.sin_cos();
    let mut even = phi; // I_0
    let mut odd = F::one() - c; // I_1
    if m == 0 {
        return even;
    }
    for j in 2..=m {
        let jf = F::c(j as f64);
        let next_base = if j % 2 == 0 { even } else { odd };
        let val = -s.powi(j as i32 - 1) * c / jf + (jf - F::one()) / jf * next_base;
        if j % 2 == 0 {
            even = val;
        } else {
            odd = val;
        }
    }
    if m.is_multiple_of(2) {
        even
    } else {
        odd
    }
}

/// Breakpoints in `[lo, hi]`: the ends, the profile's features and decades around them.
pub(crate) fn breakpoints<F: Real>(f: &RadialFunction<F>, lo: F, hi: F, extra: &[F]) -> Vec<F> {
    let mut feats = f.features();
    if feats.len() > 40 {
        let step = feats.len() as f64 / 40.0;
        feats = (0..40).map(|i| feats[(i as f64 * step) as usize]).chain(feats.last().copied()).collect();
    }
    let mut pts = vec![lo, hi];
    let ten = F::c(10.0);
    for c in feats.iter().take(2) {
        let mut v = *c * F::c(1e-3);
        for _ in 0..16 {
            pts.push(v);
            v = v * ten;
        }
    }
    pts.extend(feats.iter().copied());
    pts.extend(extra.iter().copied());
    if lo > F::zero() && hi > ten * lo {
        let mut v = lo * ten;
        while v < hi {
            pts.push(v);
            v = v * ten;
        }
    }
    pts.retain(|p| *p >= lo && *p <= hi && p.is_finite());
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= F::c(1e-12) * b.abs());
    pts
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return invalid(format!("dimension n = {n} violates n >= 2"));
    }
    Ok(())
}

/// Mass of `f` in a ball of radius `t` centred at distance `x` from the origin.
pub fn ball_mass<F: Real>(f: &RadialFunction<F>, n: u32, x: F, t: F, cfg: &QuadratureConfig) -> Result<F> {
    cfg.validate()?;
    check_n(n)?;
    if !(x >= F::zero() && t > F::zero()) {
        return invalid("ball mass needs x >= 0 and t > 0");
    }
    ball_mass_rel(f, n, x, t, cfg.rel_tol, cfg)
}

pub(crate) fn ball_mass_rel<F: Real>(
    f: &RadialFunction<F>,
    n: u32,
    x: F,
    t: F,
    rel: f64,
    cfg: &QuadratureConfig,
) -> Result<F> {
    let area = sphere_area::<F>(n);
    let shell = |s: F| f.weighted(s, n);
    if x == F::zero() {
        let pts = breakpoints(f, F::zero(), t, &[]);
        return Ok(area * integrate(shell, &pts, rel, cfg.abs_tol, cfg.max_subdivisions, "ball mass")?.value);
    }
    let mut full = F::zero();
    if t > x {
        let pts = breakpoints(f, F::zero(), t - x, &[]);
        full = area * integrate(shell, &pts, rel, cfg.abs_tol, cfg.max_subdivisions, "ball mass (full shells)")?.value;
    }
    // Integrate over the offset u = s - x so that narrow caps (t << x) keep full precision.
    let lo = if t < x { -t } else { t - F::c(2.0) * x };
    let hi = t;
    let sub_area = sphere_area::<F>(n - 1);
    let cap = |u: F| {
        let s = x + u;
        if s <= F::zero() {
            return F::zero();
        }
        let sin2 = ((t - u) * (t + u) / (F::c(4.0) * x * s)).max(F::zero()).min(F::one());
        let phi = F::c(2.0) * sin2.sqrt().asin();
        f.weighted(s, n) * sub_area * sin_power_integral(n - 2, phi)
    };
    let mut pts: Vec<F> = breakpoints(f, lo + x, hi + x, &[]).into_iter().map(|p| p - x).collect();
    pts.push(F::zero().max(lo).min(hi));
    pts.push(F::c(0.5) * (lo + hi));
    pts[0] = lo;
    pts.retain(|p| *p >= lo && *p <= hi);
    pts.push(hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let floor = F::c(rel) * full;
    let part =
        integrate_with_floor(cap, &pts, rel, cfg.abs_tol, floor, cfg.max_subdivisions, "ball mass (caps)")?.value;
    Ok(full + part)
}

/// Total mass `∫_{R^n} f`; diverges unless `f` decays faster than `r^{-n}`.
pub fn total_mass<F: Real>(f: &RadialFunction<F>, n: u32, cfg: &QuadratureConfig) -> Result<F> {
    cfg.validate()?;
    check_n(n)?;
    let area = sphere_area::<F>(n);
    let kappa = f.decay_exponent() - F::c(n as f64);
    let head = breakpoints(f, F::zero(), F::c(100.0) * f.core_scale(), &[]);
    let v = integrate_half_line(|s| f.weighted(s, n), &head, kappa, cfg.rel_tol, cfg, None, "total mass")?;
    Ok(area * v)
}

/// `∫₀^∞ h` where `h(t) ~ t^{-κ-1}` beyond `head.last()`.
///
/// The head is integrated adaptively, then decade panels are added until the closed-form
/// remainder `h(T)·T/κ` is negligible (or `cap` is reached, where it is added as the tail).
pub fn integrate_half_line<F: Real>(
    mut h: impl FnMut(F) -> F,
    head: &[F],
    kappa: F,
    rel: f64,
    cfg: &QuadratureConfig,
    cap: Option<F>,
    context: &str,
) -> Result<F> {
    if !(kappa > F::zero()) {
        return Err(Error::Divergence { context: context.to_string(), exponent: kappa.as_f64() });
    }
    let t1 = *head.last().expect("nonempty head");
    let cap = cap.unwrap_or(t1 * F::c(1e40));
    if cap <= t1 {
        let pts: Vec<F> = head.iter().copied().filter(|p| *p < cap).chain(std::iter::once(cap)).collect();
        let acc = integrate(&mut h, &pts, rel, cfg.abs_tol, cfg.max_subdivisions, context)?.value;
        return Ok(acc + h(cap) * cap / kappa);
    }
    let mut acc = integrate(&mut h, head, rel, cfg.abs_tol, cfg.max_subdivisions, context)?.value;
    let mut t = t1;
    let ten = F::c(10.0);
    loop {
        let rem = h(t) * t / kappa;
        if !rem.is_finite() {
            return Err(Error::NonConvergence {
                context: format!("{context}: non-finite tail"),
                estimate: acc.as_f64(),
                error_bound: f64::INFINITY,
            });
        }
        let settled = t >= t1 * F::c(1e3) && rem <= F::c(0.1 * rel) * acc.abs();
        if settled || t >= cap {
            return Ok(acc + rem);
        }
        let next = (t * ten).min(cap);
        let pts = [t, t * F::c(2.0), t * F::c(5.0), next];
        let pts: Vec<F> = pts.into_iter().filter(|p| *p <= next).collect();
        acc = acc + integrate(&mut h, &pts, rel, cfg.abs_tol, cfg.max_subdivisions, context)?.value;
        t = next;
    }
}

/// Head breakpoints for layer-cake integrals in `t` at centre distance `x`.
fn layer_points<F: Real>(f: &RadialFunction<F>, x: F) -> Vec<F> {
    let c0 = f.core_scale();
    let anchor = if x > F::zero() { x.min(c0) } else { c0 };
    let mut extra = Vec::new();
    let mut v = anchor;
    for _ in 0..24 {
        v = v * F::c(0.1);
        extra.push(v);
    }
    if x > F::zero() {
        extra.push(x);
        extra.push(F::c(2.0) * x);
        for c in f.features() {
            for k in [0.1, 1.0, 10.0] {
                extra.push(x + c * F::c(k));
                extra.push((x - c * F::c(k)).abs());
            }
        }
    }
    let t1 = F::c(100.0) * (x + c0);
    breakpoints(f, F::zero(), t1, &extra)
}

/// Runs a layer-cake integrand, turning inner failures into the reported error.
fn with_inner<F: Real, T>(run: impl FnOnce(&dyn Fn(Result<F>) -> F) -> Result<T>) -> Result<T> {
    let slot: RefCell<Option<Error>> = RefCell::new(None);
    let catch = |r: Result<F>| match r {
        Ok(v) => v,
        Err(e) => {
            slot.borrow_mut().get_or_insert(e);
            F::nan()
        }
    };
    let out = run(&catch);
    match slot.into_inner() {
        Some(e) => Err(e),
        None => out,
    }
}

fn inner_rel(cfg: &QuadratureConfig) -> f64 {
    (cfg.rel_tol * 1e-2).max(1e-14)
}

fn check_alpha<F: Real>(n: u32, alpha: F) -> Result<()> {
    if !(alpha > F::zero() && alpha < F::c(n as f64)) {
        return invalid(format!("alpha = {alpha} violates 0 < alpha < n"));
    }
    Ok(())
}

/// Exponent `κ` of the layer-cake integrand's tail `t^{-κ-1}`.
fn layer_tail<F: Real>(g: &RadialFunction<F>, n: u32, order: F) -> F {
    g.decay_exponent().min(F::c(n as f64)) - order
}

/// `∫ |x̂-y|^{α-n} g(|y|) dy` at `|x̂| = x`, by the layer-cake formula.
pub fn riesz_potential<F: Real>(
    g: &RadialFunction<F>,
    n: u32,
    alpha: F,
    x: F,
    cfg: &QuadratureConfig,
) -> Result<F> {
    cfg.validate()?;
    check_n(n)?;
    check_alpha(n, alpha)?;
    if !(x >= F::zero()) {
        return invalid("potential radius must be >= 0");
    }
    let nf = F::c(n as f64);
    let kappa = layer_tail(g, n, alpha);
    let head = layer_points(g, x);
    let rel = inner_rel(cfg);
    with_inner(|catch| {
        let h = |t: F| {
            let m = catch(ball_mass_rel(g, n, x, t, rel, cfg));
            if m == F::zero() {
                return F::zero();
            }
            (nf - alpha) * (m.ln() + (alpha - nf - F::one()) * t.ln()).exp()
        };
        integrate_half_line(h, &head, kappa, cfg.rel_tol, cfg, None, "riesz potential")
    })
}

/// The same potential by direct `(s, φ)` quadrature of the kernel; the oracle for
/// [`riesz_potential`].
pub fn riesz_potential_direct<F: Real>(
    g: &RadialFunction<F>,
    n: u32,
    alpha: F,
    x: F,
    cfg: &QuadratureConfig,
) -> Result<F> {
    cfg.validate()?;
    check_n(n)?;
    check_alpha(n, alpha)?;
    let nf = F::c(n as f64);
    let kappa = g.decay_exponent() - alpha;
    if x == F::zero() {
        let head = breakpoints(g, F::zero(), F::c(100.0) * g.core_scale(), &[]);
        let area = sphere_area::<F>(n);
        let h = |s: F| if s == F::zero() { F::zero() } else { g.weighted(s, n) * s.powf(alpha - nf) };
        return Ok(area * integrate_half_line(h, &head, kappa, cfg.rel_tol, cfg, None, "riesz direct")?);
    }
    let sub_area = sphere_area::<F>(n - 1);
    let rel = inner_rel(cfg);
    let half_exp = (alpha - nf) / F::c(2.0);
    let pi = F::PI();
    // kernel(s, x - s); the offset is passed separately to keep precision near s = x
    let kernel = |s: F, d0: F| -> Result<F> {
        let d0 = if d0 == F::zero() { F::epsilon() * x } else { d0 };
        let delta = (d0.abs() / x).max(F::c(1e-300));
        let mut pts = vec![F::zero(), pi];
        let mut v = delta * F::c(0.1);
        for _ in 0..8 {
            if v < pi {
                pts.push(v);
            }
            v = v * F::c(10.0);
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let inner = |phi: F| {
            let sh = (phi / F::c(2.0)).sin();
            let d2 = d0 * d0 + F::c(4.0) * x * s * sh * sh;
            d2.powf(half_exp) * phi.sin().powi(n as i32 - 2)
        };
        Ok(sub_area * integrate(inner, &pts, rel, cfg.abs_tol, cfg.max_subdivisions, "riesz direct (angle)")?.value)
    };
    // s = x ∓ w² on [x/2, 3x/2] flattens the |s-x|^{α-1} singularity of the angular kernel.
    let two = F::c(2.0);
    let half_x = x / two;
    let root = half_x.sqrt();
    let mut wpts = vec![F::zero(), root];
    for k in 1..=12 {
        wpts.push(root * F::c(10f64.powf(-k as f64 / 2.0)));
    }
    for c in g.features() {
        if (c - x).abs() < half_x {
            wpts.push((c - x).abs().sqrt());
        }
    }
    wpts.retain(|w| *w <= root);
    wpts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    wpts.dedup();
    let near = with_inner(|catch| {
        let h = |w: F| {
            let (w2, sl, sr) = (w * w, x - w * w, x + w * w);
            let left = g.weighted(sl, n) * catch(kernel(sl, w2));
            let right = g.weighted(sr, n) * catch(kernel(sr, -w2));
            two * w * (left + right)
        };
        Ok(integrate(h, &wpts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, "riesz direct (near)")?.value)
    })?;
    let inner_pts = breakpoints(g, F::zero(), half_x, &[]);
    let core = with_inner(|catch| {
        let h = |s: F| if s == F::zero() { F::zero() } else { g.weighted(s, n) * catch(kernel(s, x - s)) };
        Ok(integrate(h, &inner_pts, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, "riesz direct (core)")?.value)
    })?;
    let head = breakpoints(g, F::c(1.5) * x, F::c(100.0) * (x + g.core_scale()), &[F::c(4.0) * x]);
    let far = with_inner(|catch| {
        let h = |s: F| g.weighted(s, n) * catch(kernel(s, x - s));
        integrate_half_line(h, &head, kappa, cfg.rel_tol, cfg, None, "riesz direct")
    })?;
    Ok(core + near + far)
}

/// Wolff potential `∫₀^∞ [m(x,t)/t^{n-βγ}]^{1/(γ-1)} dt/t`.
///
/// Uses `cfg.tail_cut` as the truncation radius when set (closed-form tail beyond it), and an
/// adaptive cut otherwise.
pub fn wolff_potential<F: Real>(
    f: &RadialFunction<F>,
    n: u32,
    beta: F,
    gamma: F,
    x: F,
    cfg: &QuadratureConfig,
) -> Result<F> {
    cfg.validate()?;
    check_n(n)?;
    let nf = F::c(n as f64);
    let one = F::one();
    if !(beta > F::zero()) {
        return invalid(format!("beta = {beta} violates beta > 0"));
    }
    if !(gamma > one && gamma <= F::c(2.0)) {
        return invalid(format!("gamma = {gamma} violates 1 < gamma <= 2"));
    }
    let bg = beta * gamma;
    if !(bg < nf) {
        return invalid(format!("beta*gamma = {bg} violates beta*gamma < n"));
    }
    if !(x >= F::zero()) {
        return invalid("potential radius must be >= 0");
    }
    let kappa = layer_tail(f, n, bg) / (gamma - one);
    let head = layer_points(f, x);
    let rel = inner_rel(cfg);
    let cap = cfg.tail_cut.map(F::c);
    with_inner(|catch| {
        let h = |t: F| {
            let m = catch(ball_mass_rel(f, n, x, t, rel, cfg));
            if m == F::zero() {
                return F::zero();
            }
            ((m.ln() - (nf - bg) * t.ln()) / (gamma - one) - t.ln()).exp()
        };
        integrate_half_line(h, &head, kappa, cfg.rel_tol, cfg, cap, "wolff potential")
    })
}
