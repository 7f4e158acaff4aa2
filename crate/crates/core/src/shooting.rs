//! Shooting for the radial bi-Laplace system
//! `-(u'' + (n-1)/r u') = v`, `-(v'' + (n-1)/r v') = u^p`, `u(0) = 1`, `v(0) = a`.
//!
//! Trajectories are integrated with Dormand-Prince 5(4) and its dense output, so the first
//! zero of `u` or `v` can be located by bisection on the interpolant. Small `a` makes `v`
//! vanish first, large `a` makes `u` vanish first; the threshold in between is a positive
//! decaying (entire) solution, found by bisection on `a`.

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Radial state `(r, u, u', v, v')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootState<F> {
    pub r: F,
    pub u: F,
    pub du: F,
    pub v: F,
    pub dv: F,
}

impl<F: Real> ShootState<F> {
    fn from_vec(r: F, y: [F; 4]) -> Self {
        ShootState { r, u: y[0], du: y[1], v: y[2], dv: y[3] }
    }
}

/// How a single shot ends.
#[derive(Debug, Clone, PartialEq)]
pub enum ShootOutcome<F> {
    /// `u` reached zero first. `degraded` marks a crossing located only to the last step.
    UCrossed { r_cross: F, state: ShootState<F>, degraded: bool },
    VCrossed { r_cross: F, state: ShootState<F>, degraded: bool },
    /// Both components positive on `[0, r_max]`; the exponent is fitted on the last decade.
    AliveAt { r_max: F, state: ShootState<F>, fitted_decay_exponent: Option<F> },
}

impl<F: Real> ShootOutcome<F> {
    pub fn label(&self) -> &'static str {
        match self {
            ShootOutcome::UCrossed { .. } => "u-crossed",
            ShootOutcome::VCrossed { .. } => "v-crossed",
            ShootOutcome::AliveAt { .. } => "alive",
        }
    }

    pub fn crossing_radius(&self) -> Option<F> {
        match self {
            ShootOutcome::UCrossed { r_cross, .. } | ShootOutcome::VCrossed { r_cross, .. } => Some(*r_cross),
            ShootOutcome::AliveAt { .. } => None,
        }
    }

    pub fn state(&self) -> &ShootState<F> {
        match self {
            ShootOutcome::UCrossed { state, .. }
            | ShootOutcome::VCrossed { state, .. }
            | ShootOutcome::AliveAt { state, .. } => state,
        }
    }
}

/// Right-hand side of the `v` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Forcing {
    /// `u_+^p`.
    #[default]
    Power,
    /// Zero forcing: `v` is harmonic, used to test the integrator against closed forms.
    Zero,
}

/// Step control for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Radius of the Taylor start, also the first step size.
    pub h_init: f64,
    /// Width to which crossings are localized.
    pub zero_tol: f64,
    pub forcing: Forcing,
    pub max_steps: usize,
}

impl Default for ShootConfig {
    fn default() -> Self {
        ShootConfig { rel_tol: 1e-10, abs_tol: 1e-12, h_init: 1e-6, zero_tol: 1e-12, forcing: Forcing::Power, max_steps: 1_000_000 }
    }
}

impl ShootConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if !(pos(self.rel_tol) && self.abs_tol >= 0.0 && pos(self.h_init) && pos(self.zero_tol)) {
            return invalid("shooting tolerances and h_init must be positive and finite");
        }
        if self.max_steps == 0 {
            return invalid("max_steps must be positive");
        }
        Ok(())
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// One accepted step with its continuous extension.
#[derive(Debug, Clone)]
struct Segment<F> {
    r0: F,
    h: F,
    rcont: [[F; 4]; 5],
}

impl<F: Real> Segment<F> {
    fn eval(&self, r: F) -> [F; 4] {
        let th = (r - self.r0) / self.h;
        let th1 = F::one() - th;
        let mut y = [F::zero(); 4];
        for (i, yi) in y.iter_mut().enumerate() {
            let c = &self.rcont;
            *yi = c[0][i] + th * (c[1][i] + th1 * (c[2][i] + th * (c[3][i] + th1 * c[4][i])));
        }
        y
    }
}

/// A computed trajectory with dense output on `[h_init, end]`.
#[derive(Debug, Clone)]
pub struct Trajectory<F> {
    start: ShootState<F>,
    segments: Vec<Segment<F>>,
    pub outcome: ShootOutcome<F>,
}

impl<F: Real> Trajectory<F> {
    /// Interpolated state at `r` within the integrated range (Taylor start below `h_init`).
    pub fn state_at(&self, r: F) -> Option<ShootState<F>> {
        if r < self.start.r {
            return None;
        }
        let idx = self.segments.partition_point(|s| s.r0 + s.h < r);
        let seg = self.segments.get(idx).or(self.segments.last())?;
        if r > seg.r0 + seg.h * F::c(1.0 + 1e-12) {
            return None;
        }
        Some(ShootState::from_vec(r, seg.eval(r)))
    }

    pub fn start(&self) -> ShootState<F> {
        self.start
    }

    /// Right end of the integrated range (crossing radius or `r_max`).
    pub fn end(&self) -> F {
        match &self.outcome {
            ShootOutcome::AliveAt { r_max, .. } => *r_max,
            other => other.crossing_radius().expect("crossing"),
        }
    }

    /// Accepted step radii, useful as sample points.
    pub fn step_radii(&self) -> Vec<F> {
        self.segments.iter().map(|s| s.r0).collect()
    }
}

fn rhs<F: Real>(n: F, p: F, forcing: Forcing, r: F, y: &[F; 4]) -> [F; 4] {
    let damp = (n - F::one()) / r;
    let src = match forcing {
        Forcing::Power => {
            if y[0] > F::zero() {
                y[0].powf(p)
            } else {
                F::zero()
            }
        }
        Forcing::Zero => F::zero(),
    };
    [y[1], -y[2] - damp * y[1], y[3], -src - damp * y[3]]
}

/// Shoots from `u(0) = 1, v(0) = a` and classifies the trajectory up to `r_max`.
pub fn integrate<F: Real>(n: u32, p: F, a: F, r_max: F, cfg: &ShootConfig) -> Result<ShootOutcome<F>> {
    Ok(integrate_trajectory(n, p, a, r_max, cfg)?.outcome)
}

/// [`integrate`], keeping the dense output.
pub fn integrate_trajectory<F: Real>(n: u32, p: F, a: F, r_max: F, cfg: &ShootConfig) -> Result<Trajectory<F>> {
    cfg.validate()?;
    if n < 1 {
        return invalid("dimension must be positive");
    }
    if !(p > F::zero() && p.is_finite()) {
        return invalid("exponent p must be positive");
    }
    if !(a >= F::zero() && a.is_finite()) {
        return invalid("shooting parameter a must be nonnegative");
    }
    let h0 = F::c(cfg.h_init);
    if !(r_max > h0 && r_max.is_finite()) {
        return invalid("r_max must exceed h_init");
    }
    let nf = F::c(n as f64);
    let two_n = F::c(2.0) * nf;
    let src0 = match cfg.forcing {
        Forcing::Power => F::one(),
        Forcing::Zero => F::zero(),
    };
    // leading Taylor terms of the integral representation
    let r0 = h0;
    let mut y = [
        F::one() - a * r0 * r0 / two_n,
        -a * r0 / nf,
        a - src0 * r0 * r0 / two_n,
        -src0 * r0 / nf,
    ];
    let start = ShootState::from_vec(r0, y);
    let (rtol, atol) = (F::c(cfg.rel_tol), F::c(cfg.abs_tol));
    let f = |r: F, y: &[F; 4]| rhs(nf, p, cfg.forcing, r, y);
    let mut r = r0;
    let mut h = h0;
    let mut k1 = f(r, &y);
    let mut segments = Vec::new();
    let mut steps = 0usize;
    let mut last_err = F::c(1e-4);
    let min_h = |r: F| F::c(16.0) * F::epsilon() * r;
    loop {
        if steps >= cfg.max_steps {
            return Err(Error::NonConvergence {
                context: format!("shooting: max_steps reached at r = {:e}", r.as_f64()),
                estimate: r.as_f64(),
                error_bound: f64::INFINITY,
            });
        }
        steps += 1;
        let last = r + h >= r_max;
        if last {
            h = r_max - r;
        }
        let mut k = [[F::zero(); 4]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let aij = F::c(A[s][j]);
                if A[s][j] != 0.0 {
                    for i in 0..4 {
                        ys[i] = ys[i] + h * aij * kj[i];
                    }
                }
            }
            k[s] = f(r + F::c(C[s]) * h, &ys);
        }
        let mut y1 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..4 {
                y1[i] = y1[i] + h * F::c(A[6][j]) * kj[i];
            }
        }
        let mut err = F::zero();
        for i in 0..4 {
            let mut e = F::zero();
            for (j, kj) in k.iter().enumerate() {
                e = e + F::c(E[j]) * kj[i];
            }
            let sc = atol + rtol * y[i].abs().max(y1[i].abs());
            let q = h * e / sc;
            err = err + q * q;
        }
        err = (err / F::c(4.0)).sqrt();
        if !err.is_finite() {
            err = F::c(1e10);
        }
        if err <= F::one() {
            let mut rcont = [[F::zero(); 4]; 5];
            for i in 0..4 {
                let ydiff = y1[i] - y[i];
                let bspl = h * k[0][i] - ydiff;
                rcont[0][i] = y[i];
                rcont[1][i] = ydiff;
                rcont[2][i] = bspl;
                rcont[3][i] = ydiff - h * k[6][i] - bspl;
                let mut d = F::zero();
                for (j, kj) in k.iter().enumerate() {
                    d = d + F::c(D[j]) * kj[i];
                }
                rcont[4][i] = h * d;
            }
            let seg = Segment { r0: r, h, rcont };
            let r1 = r + h;
            // only a sign change counts: the degenerate a = 0 shot keeps v ≡ 0
            let u_cross = y[0] > F::zero() && y1[0] <= F::zero();
            let v_cross = y[2] > F::zero() && y1[2] <= F::zero();
            if u_cross || v_cross {
                let zt = F::c(cfg.zero_tol);
                let ru = if u_cross { Some(locate(&seg, 0, zt)) } else { None };
                let rv = if v_cross { Some(locate(&seg, 2, zt)) } else { None };
                segments.push(seg);
                let first_u = match (ru, rv) {
                    (Some(a), Some(b)) => a <= b,
                    (Some(_), None) => true,
                    _ => false,
                };
                let rc = if first_u { ru.unwrap() } else { rv.unwrap() };
                let seg = segments.last().unwrap();
                let state = ShootState::from_vec(rc, seg.eval(rc));
                let outcome = if first_u {
                    ShootOutcome::UCrossed { r_cross: rc, state, degraded: false }
                } else {
                    ShootOutcome::VCrossed { r_cross: rc, state, degraded: false }
                };
                return Ok(Trajectory { start, segments, outcome });
            }
            segments.push(seg);
            r = r1;
            y = y1;
            k1 = k[6];
            if last {
                let state = ShootState::from_vec(r, y);
                let fitted = fit_decay(&segments, r_max);
                let outcome = ShootOutcome::AliveAt { r_max, state, fitted_decay_exponent: fitted };
                return Ok(Trajectory { start, segments, outcome });
            }
            // PI step control
            let fac = F::c(0.9) * err.max(F::c(1e-10)).powf(F::c(-0.17)) * last_err.powf(F::c(0.04));
            last_err = err.max(F::c(1e-4));
            h = h * fac.min(F::c(10.0)).max(F::c(0.2));
        } else {
            h = h * (F::c(0.9) * err.powf(F::c(-0.2))).max(F::c(0.2));
        }
        if h < min_h(r) {
            // a vanishing step only happens against a crossing; report it at the current radius
            let state = ShootState::from_vec(r, y);
            let outcome = if y[0] <= y[2] {
                ShootOutcome::UCrossed { r_cross: r, state, degraded: true }
            } else {
                ShootOutcome::VCrossed { r_cross: r, state, degraded: true }
            };
            if y[0].min(y[2]) > F::c(1e-6) * y[0].max(y[2]) {
                return Err(Error::NonConvergence {
                    context: format!("shooting: step size underflow at r = {:e} away from a crossing", r.as_f64()),
                    estimate: r.as_f64(),
                    error_bound: f64::INFINITY,
                });
            }
            return Ok(Trajectory { start, segments, outcome });
        }
    }
}

/// First zero of component `i` in a segment whose right end is nonpositive.
fn locate<F: Real>(seg: &Segment<F>, i: usize, zero_tol: F) -> F {
    let mut lo = seg.r0;
    let mut hi = seg.r0 + seg.h;
    // the interpolant may dip below zero before the step end; scan for the first sign change
    let probes = 32;
    for j in 1..=probes {
        let r = seg.r0 + seg.h * F::c(j as f64 / probes as f64);
        if seg.eval(r)[i] <= F::zero() {
            hi = r;
            break;
        }
        lo = r;
    }
    while hi - lo > zero_tol {
        let mid = F::c(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if seg.eval(mid)[i] > F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Least-squares slope of `ln u` against `ln r` on `[r_max/10, r_max]`, negated.
fn fit_decay<F: Real>(segments: &[Segment<F>], r_max: F) -> Option<F> {
    let lo = r_max / F::c(10.0);
    if segments.first()?.r0 > lo {
        return None;
    }
    let m = 41;
    let (mut sx, mut sy, mut sxx, mut sxy) = (F::zero(), F::zero(), F::zero(), F::zero());
    let mut idx = 0;
    for j in 0..m {
        let r = lo * F::c(10f64.powf(j as f64 / (m - 1) as f64));
        while idx + 1 < segments.len() && segments[idx].r0 + segments[idx].h < r {
            idx += 1;
        }
        let u = segments[idx].eval(r)[0];
        if !(u > F::zero()) {
            return None;
        }
        let (x, yv) = (r.ln(), u.ln());
        sx = sx + x;
        sy = sy + yv;
        sxx = sxx + x * x;
        sxy = sxy + x * yv;
    }
    let mf = F::c(m as f64);
    let slope = (mf * sxy - sx * sy) / (mf * sxx - sx * sx);
    slope.is_finite().then_some(-slope)
}

/// Bisection record for the threshold shooting parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult<F> {
    /// Final bracket; `lo` shoots to a `v` crossing, `hi` to a `u` crossing.
    pub bracket: (F, F),
    pub bracket_outcomes: (ShootOutcome<F>, ShootOutcome<F>),
    pub iterations: usize,
    /// Midpoints that stayed alive past the extended horizon, so could not be classified.
    pub monotonicity_violations: usize,
    pub threshold_a: F,
    pub threshold_trajectory: ShootOutcome<F>,
    /// `u' < 0` and `v' < 0` at every sampled radius of the threshold trajectory.
    pub trajectory_monotone: bool,
}

/// Radii beyond `r_max` tried (as multiples) before declaring a midpoint unclassifiable.
const EXTENSIONS: [f64; 3] = [10.0, 100.0, 1000.0];

/// Bisects the shooting parameter between the two crossing regimes.
///
/// Requires strict supercriticality `p > (n+4)/(n-4)`; the initial bracket is
/// `[1/(n 2^{1+p}), 4n]`. Midpoints alive at `r_max` are re-shot to larger radii; those
/// still alive count as monotonicity violations and the bracket shrinks symmetrically
/// around them while keeping classified endpoints.
pub fn find_threshold<F: Real>(n: u32, p: F, bisect_tol: F, r_max: F, cfg: &ShootConfig) -> Result<ThresholdResult<F>> {
    if n <= 4 {
        return invalid(format!("threshold search needs n > 4 (got n = {n})"));
    }
    let nf = F::c(n as f64);
    let four = F::c(4.0);
    let crit = (nf + four) / (nf - four);
    if !(p > crit) {
        return invalid(format!(
            "p = {} is not strictly above (n+4)/(n-4) = {}; outside the scope of the existence argument",
            p.as_f64(),
            crit.as_f64()
        ));
    }
    if !(bisect_tol > F::zero()) {
        return invalid("bisect_tol must be positive");
    }
    let mut lo = F::one() / (nf * F::c(2.0).powf(F::one() + p));
    let mut hi = four * nf;
    let mut lo_out = integrate(n, p, lo, r_max, cfg)?;
    if !matches!(lo_out, ShootOutcome::VCrossed { .. }) {
        return Err(Error::Rejected(format!(
            "a = 1/(n 2^(1+p)) should make v vanish first (small-a bound), got {}",
            lo_out.label()
        )));
    }
    let mut hi_out = integrate(n, p, hi, r_max, cfg)?;
    if !matches!(hi_out, ShootOutcome::UCrossed { .. }) {
        return Err(Error::Rejected(format!("a = 4n should make u vanish first (large-a bound), got {}", hi_out.label())));
    }
    let mut iterations = 0;
    let mut violations = 0;
    while hi - lo >= bisect_tol {
        iterations += 1;
        let mid = F::c(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match classify_extended(n, p, mid, r_max, cfg)? {
            out @ ShootOutcome::VCrossed { .. } => {
                lo = mid;
                lo_out = out;
            }
            out @ ShootOutcome::UCrossed { .. } => {
                hi = mid;
                hi_out = out;
            }
            ShootOutcome::AliveAt { .. } => {
                violations += 1;
                let quarter = F::c(0.25) * (hi - lo);
                let (nlo, nhi) = (mid - quarter, mid + quarter);
                let olo = classify_extended(n, p, nlo, r_max, cfg)?;
                let ohi = classify_extended(n, p, nhi, r_max, cfg)?;
                let (lo_ok, hi_ok) =
                    (matches!(olo, ShootOutcome::VCrossed { .. }), matches!(ohi, ShootOutcome::UCrossed { .. }));
                if lo_ok {
                    lo = nlo;
                    lo_out = olo;
                }
                if hi_ok {
                    hi = nhi;
                    hi_out = ohi;
                }
                if !lo_ok && !hi_ok {
                    break;
                }
            }
        }
    }
    let threshold_a = F::c(0.5) * (lo + hi);
    let traj = integrate_trajectory(n, p, threshold_a, r_max, cfg)?;
    let trajectory_monotone = matches!(traj.outcome, ShootOutcome::AliveAt { .. })
        && traj.segments.iter().all(|s| {
            let y = s.rcont[0];
            s.r0 <= F::c(cfg.h_init) * F::c(1.5) || (y[1] < F::zero() && y[3] < F::zero())
        });
    Ok(ThresholdResult {
        bracket: (lo, hi),
        bracket_outcomes: (lo_out, hi_out),
        iterations,
        monotonicity_violations: violations,
        threshold_a,
        threshold_trajectory: traj.outcome,
        trajectory_monotone,
    })
}

fn classify_extended<F: Real>(n: u32, p: F, a: F, r_max: F, cfg: &ShootConfig) -> Result<ShootOutcome<F>> {
    let mut out = integrate(n, p, a, r_max, cfg)?;
    for m in EXTENSIONS {
        if !matches!(out, ShootOutcome::AliveAt { .. }) {
            break;
        }
        out = integrate(n, p, a, r_max * F::c(m), cfg)?;
    }
    Ok(out)
}
