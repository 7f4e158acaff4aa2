//! Problem descriptions, critical exponents and theorem-by-theorem classification.
//!
//! Every threshold is a rational function of `(n, α)` or `(n, β, γ)`, so classification is
//! generic over [`Scalar`]: with [`Exact`](crate::Exact) inputs the sharp boundary cases are
//! decided exactly, with floats a relative tolerance (default `1e-12`) decides ties in favour
//! of the boundary.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Integral kernel or differential operator of the problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel<S> {
    /// Bare Riesz kernel `|x-y|^{α-n}`, `0 < α < n`.
    Riesz { alpha: S },
    /// Wolff potential `W_{β,γ}`, `β > 0`, `1 < γ ≤ 2`, `βγ < n`.
    Wolff { beta: S, gamma: S },
    /// `(-Δ)^k`, `1 ≤ k < n/2`.
    PolyLaplace { k: u32 },
    /// γ-Laplacian `-div(|∇u|^{γ-2}∇u)`, `1 < γ < n`.
    GammaLaplace { gamma: S },
}

impl<S: Scalar> Kernel<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Riesz { .. } => "riesz",
            Kernel::Wolff { .. } => "wolff",
            Kernel::PolyLaplace { .. } => "poly-laplace",
            Kernel::GammaLaplace { .. } => "gamma-laplace",
        }
    }

    /// The pair `(βγ, γ-1)` driving every critical formula.
    ///
    /// Riesz maps to `(α, 1)`, poly-Laplace to `(2k, 1)` and the γ-Laplacian to `(γ, γ-1)`
    /// (a Wolff potential with `β = 1`).
    pub fn wolff_pair(&self) -> (S, S) {
        match self {
            Kernel::Riesz { alpha } => (alpha.clone(), S::one()),
            Kernel::Wolff { beta, gamma } => {
                (beta.clone() * gamma.clone(), gamma.clone() - S::one())
            }
            Kernel::PolyLaplace { k } => (S::int(2 * *k as i64), S::one()),
            Kernel::GammaLaplace { gamma } => (gamma.clone(), gamma.clone() - S::one()),
        }
    }

    /// Order `α` of the equivalent Riesz kernel, when there is one.
    pub fn riesz_alpha(&self) -> Option<S> {
        match self {
            Kernel::Riesz { alpha } => Some(alpha.clone()),
            Kernel::PolyLaplace { k } => Some(S::int(2 * *k as i64)),
            Kernel::Wolff { beta, gamma } if *gamma == S::int(2) => {
                Some(beta.clone() * S::int(2))
            }
            _ => None,
        }
    }
}

/// Whether the coefficient `c(x)` is an arbitrary double-bounded function or a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMode {
    DoubleBounded,
    Constant,
}

/// A validated problem: dimension, kernel, exponents and coefficient mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec<S> {
    n: u32,
    kernel: Kernel<S>,
    p: S,
    q: Option<S>,
    coeff_mode: CoeffMode,
    radial: bool,
    tol: f64,
}

impl<S: Scalar> ProblemSpec<S> {
    /// Builds a spec, rejecting any domain violation with the violated constraint named.
    pub fn new(
        n: u32,
        kernel: Kernel<S>,
        p: S,
        q: Option<S>,
        coeff_mode: CoeffMode,
    ) -> Result<Self> {
        if n < 3 {
            return invalid(format!("dimension n = {n} violates n >= 3"));
        }
        let nn = S::int(n as i64);
        let zero = S::zero();
        let one = S::one();
        match &kernel {
            Kernel::Riesz { alpha } => {
                if !(*alpha > zero && *alpha < nn) {
                    return invalid(format!("riesz order alpha = {alpha} violates 0 < alpha < n = {n}"));
                }
            }
            Kernel::Wolff { beta, gamma } => {
                if *beta <= zero {
                    return invalid(format!("wolff beta = {beta} violates beta > 0"));
                }
                if !(*gamma > one && *gamma <= S::int(2)) {
                    return invalid(format!("wolff gamma = {gamma} violates 1 < gamma <= 2"));
                }
                if beta.clone() * gamma.clone() >= nn {
                    return invalid(format!("wolff beta*gamma = {} violates beta*gamma < n = {n}", beta.clone() * gamma.clone()));
                }
            }
            Kernel::PolyLaplace { k } => {
                if *k < 1 || 2 * *k >= n {
                    return invalid(format!("poly-laplace order k = {k} violates 1 <= k < n/2 = {}", n as f64 / 2.0));
                }
            }
            Kernel::GammaLaplace { gamma } => {
                if !(*gamma > one && *gamma < nn) {
                    return invalid(format!("gamma-laplace gamma = {gamma} violates 1 < gamma < n = {n}"));
                }
            }
        }
        if p <= zero {
            return invalid(format!("exponent p = {p} violates p > 0"));
        }
        if let Some(q) = &q {
            if *q <= zero {
                return invalid(format!("exponent q = {q} violates q > 0"));
            }
        }
        Ok(ProblemSpec { n, kernel, p, q, coeff_mode, radial: false, tol: 1e-12 })
    }

    /// Asserts that only radial solutions are of interest (enables radial partial results).
    pub fn with_radial(mut self, radial: bool) -> Self {
        self.radial = radial;
        self
    }

    /// Comparison tolerance for floating-point scalars (ignored for exact scalars).
    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return invalid(format!("tolerance {tol} violates tol > 0"));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn kernel(&self) -> &Kernel<S> {
        &self.kernel
    }
    pub fn p(&self) -> &S {
        &self.p
    }
    pub fn q(&self) -> Option<&S> {
        self.q.as_ref()
    }
    pub fn coeff_mode(&self) -> CoeffMode {
        self.coeff_mode
    }
    pub fn radial(&self) -> bool {
        self.radial
    }
    pub fn tol(&self) -> f64 {
        self.tol
    }
    pub fn is_system(&self) -> bool {
        self.q.is_some()
    }

    fn cmp(&self, a: &S, b: &S) -> Ordering {
        a.compare(b, self.tol)
    }

    fn eq(&self, a: &S, b: &S) -> bool {
        self.cmp(a, b) == Ordering::Equal
    }
}

/// System thresholds: the two slow-rate ratios against their common bound, and the value of
/// the critical sum on the constant-coefficient hyperbola.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemThreshold<S> {
    /// `βγ(q+γ-1)/(pq-(γ-1)²)`; `None` when `pq ≤ (γ-1)²`.
    pub ratio_u: Option<S>,
    /// `βγ(p+γ-1)/(pq-(γ-1)²)`; `None` when `pq ≤ (γ-1)²`.
    pub ratio_v: Option<S>,
    /// `(n-βγ)/(γ-1)`.
    pub bound: S,
    /// Right-hand side of the critical hyperbola (`(n-α)/n`, or `(n-βγ)/(n(γ-1))`).
    pub critical_sum: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSet<S> {
    /// Variable-coefficient threshold.
    pub serrin: S,
    /// Finite-energy / scaling threshold.
    pub sobolev: S,
    /// `γ*-1` for Wolff and γ-Laplace kernels.
    pub energy_star: Option<S>,
    pub system: Option<SystemThreshold<S>>,
}

/// All critical exponents of `spec`.
///
/// ```
/// use liouville_core::{critical_set, Exact, Kernel, CoeffMode, ProblemSpec, Scalar};
/// let spec = ProblemSpec::new(5, Kernel::Riesz { alpha: Exact::int(2) }, Exact::int(2), None,
///     CoeffMode::DoubleBounded).unwrap();
/// let c = critical_set(&spec);
/// assert_eq!(c.serrin, Exact::ratio(5, 3));
/// assert_eq!(c.sobolev, Exact::ratio(7, 3));
/// ```
pub fn critical_set<S: Scalar>(spec: &ProblemSpec<S>) -> CriticalSet<S> {
    let n = S::int(spec.n as i64);
    let (s, g1) = spec.kernel.wolff_pair();
    let serrin = n.clone() * g1.clone() / (n.clone() - s.clone());
    let sobolev = g1.clone() * (n.clone() + s.clone()) / (n.clone() - s.clone());
    let energy_star = match spec.kernel {
        Kernel::Wolff { .. } | Kernel::GammaLaplace { .. } => {
            let gamma = g1.clone() + S::one();
            Some(n.clone() * gamma / (n.clone() - s.clone()) - S::one())
        }
        _ => None,
    };
    let system = spec.q.as_ref().map(|q| {
        let p = spec.p.clone();
        let denom = p.clone() * q.clone() - g1.clone() * g1.clone();
        let (ratio_u, ratio_v) = if denom > S::zero() {
            (
                Some(s.clone() * (q.clone() + g1.clone()) / denom.clone()),
                Some(s.clone() * (p.clone() + g1.clone()) / denom),
            )
        } else {
            (None, None)
        };
        SystemThreshold {
            ratio_u,
            ratio_v,
            bound: (n.clone() - s.clone()) / g1.clone(),
            critical_sum: (n.clone() - s.clone()) / (n.clone() * g1.clone()),
        }
    });
    CriticalSet { serrin, sobolev, energy_star, system }
}

/// Which explicit family a witness rate comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateRole {
    Slow,
    Fast,
    Mixed,
    LogCorrected,
    /// Constant-coefficient extremal (bubble).
    Bubble,
    /// Explicit γ-Laplace finite-energy family.
    Explicit,
    /// Existence cited from external work; the rate is the natural scaling rate.
    Cited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Single,
    U,
    V,
}

/// A decay rate `u ≈ (1+|x|^m)^{-θ}`; `two_theta` holds `mθ` (`2θ` when `m = 2`), i.e. the
/// power of `|x|^{-1}` at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRate<S> {
    pub two_theta: S,
    pub m: S,
    pub log_corrected: bool,
    pub role: RateRole,
    pub component: Component,
}

impl<S: Scalar> DecayRate<S> {
    fn new(two_theta: S, m: S, role: RateRole, component: Component) -> Self {
        DecayRate { two_theta, m, log_corrected: false, role, component }
    }

    fn logged(mut self) -> Self {
        self.log_corrected = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    IterationBlowup,
    CriticalIntegralArgument,
    PohozaevObstruction,
    PartialResult,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<S> {
    Exists { witness_rates: Vec<DecayRate<S>> },
    NotExists { mechanism: Mechanism, notes: Vec<String> },
    Open { conjecture: String },
}

impl<S> Outcome<S> {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Exists { .. } => "exists",
            Outcome::NotExists { .. } => "not_exists",
            Outcome::Open { .. } => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub outcome: Outcome<S>,
    pub theorem_tag: String,
    /// Hypothesis restriction carried verbatim (e.g. the `inf u = 0` condition).
    pub caveat: Option<String>,
}

impl<S: Scalar> Verdict<S> {
    fn exists(rates: Vec<DecayRate<S>>, tag: &str) -> Self {
        debug_assert!(!rates.is_empty());
        Verdict { outcome: Outcome::Exists { witness_rates: rates }, theorem_tag: tag.into(), caveat: None }
    }

    fn not_exists(mechanism: Mechanism, tag: &str) -> Self {
        Verdict { outcome: Outcome::NotExists { mechanism, notes: vec![] }, theorem_tag: tag.into(), caveat: None }
    }

    fn open(conjecture: &str, tag: &str) -> Self {
        Verdict { outcome: Outcome::Open { conjecture: conjecture.into() }, theorem_tag: tag.into(), caveat: None }
    }

    fn note(mut self, text: &str) -> Self {
        if let Outcome::NotExists { notes, .. } = &mut self.outcome {
            notes.push(text.into());
        }
        self
    }

    pub fn exists_outcome(&self) -> bool {
        matches!(self.outcome, Outcome::Exists { .. })
    }

    pub fn mechanism(&self) -> Option<Mechanism> {
        match &self.outcome {
            Outcome::NotExists { mechanism, .. } => Some(*mechanism),
            _ => None,
        }
    }

    pub fn witness_rates(&self) -> &[DecayRate<S>] {
        match &self.outcome {
            Outcome::Exists { witness_rates } => witness_rates,
            _ => &[],
        }
    }
}

const INF_CAVEAT: &str = "among solutions with inf u = 0";
const INF_CAVEAT_SYSTEM: &str = "among solutions with inf u = inf v = 0";

fn require_scalar<S: Scalar>(spec: &ProblemSpec<S>) -> Result<()> {
    if spec.is_system() {
        return Err(Error::Rejected("system spec passed to a scalar classifier".into()));
    }
    Ok(())
}

fn require_system<S: Scalar>(spec: &ProblemSpec<S>) -> Result<()> {
    if !spec.is_system() {
        return Err(Error::Rejected("scalar spec passed to a system classifier".into()));
    }
    Ok(())
}

fn require_mode<S: Scalar>(spec: &ProblemSpec<S>, mode: CoeffMode) -> Result<()> {
    if spec.coeff_mode != mode {
        let want = match mode {
            CoeffMode::DoubleBounded => "double-bounded",
            CoeffMode::Constant => "constant",
        };
        return Err(Error::Rejected(format!("classifier needs coefficient mode {want}")));
    }
    Ok(())
}

/// Variable (double-bounded) coefficient scalar equation: exists iff `p > serrin`.
///
/// ```
/// use liouville_core::*;
/// let spec = ProblemSpec::new(5, Kernel::Riesz { alpha: Exact::int(2) }, Exact::ratio(5, 3),
///     None, CoeffMode::DoubleBounded).unwrap();
/// let v = classify_variable_coeff_scalar(&spec).unwrap();
/// assert_eq!(v.mechanism(), Some(Mechanism::CriticalIntegralArgument));
/// ```
pub fn classify_variable_coeff_scalar<S: Scalar>(spec: &ProblemSpec<S>) -> Result<Verdict<S>> {
    require_scalar(spec)?;
    require_mode(spec, CoeffMode::DoubleBounded)?;
    let n = S::int(spec.n as i64);
    let p = spec.p.clone();
    let (s, g1) = spec.kernel.wolff_pair();
    let serrin = critical_set(spec).serrin;
    let two = S::int(2);

    let tag = match &spec.kernel {
        Kernel::Riesz { .. } => "Thm 2.3",
        Kernel::Wolff { .. } => "Thm 2.5",
        Kernel::PolyLaplace { k } => {
            let covered = spec.cmp(&p, &S::one()) == Ordering::Greater
                || (*k == 1 && spec.cmp(&p, &S::one()) != Ordering::Less);
            if !covered {
                return Ok(Verdict::open(
                    "equivalence with the integral form is only established for p > 1",
                    "Cor 2.4",
                ));
            }
            if *k == 1 {
                "Thm 2.2"
            } else {
                "Cor 2.4"
            }
        }
        Kernel::GammaLaplace { .. } => "Thm 2.6",
    };

    let verdict = match spec.cmp(&p, &serrin) {
        Ordering::Greater => {
            let mut rates = Vec::new();
            match &spec.kernel {
                Kernel::GammaLaplace { gamma } => {
                    let m = gamma.clone() / g1.clone();
                    let slow = gamma.clone() / (p.clone() - g1.clone());
                    rates.push(DecayRate::new(slow, m.clone(), RateRole::Slow, Component::Single));
                    let p_fast = (n.clone() * g1.clone() + gamma.clone()) / (n.clone() - gamma.clone());
                    if spec.eq(&p, &p_fast) {
                        let fast = (n.clone() - gamma.clone()) / g1.clone();
                        rates.push(DecayRate::new(fast, m, RateRole::Fast, Component::Single));
                    }
                }
                _ => {
                    let slow = s.clone() / (p.clone() - g1.clone());
                    rates.push(DecayRate::new(slow, two.clone(), RateRole::Slow, Component::Single));
                    let fast = (n.clone() - s.clone()) / g1.clone();
                    rates.push(DecayRate::new(fast, two.clone(), RateRole::Fast, Component::Single));
                }
            }
            Verdict::exists(rates, tag)
        }
        Ordering::Equal => Verdict::not_exists(Mechanism::CriticalIntegralArgument, tag),
        Ordering::Less => Verdict::not_exists(Mechanism::IterationBlowup, tag),
    };
    Ok(match spec.kernel {
        Kernel::GammaLaplace { .. } if !verdict.exists_outcome() => {
            Verdict { caveat: Some(INF_CAVEAT.into()), ..verdict }
        }
        _ => verdict,
    })
}

/// Variable-coefficient systems.
///
/// Exists iff `pq > (γ-1)²` and `max{ratio_u, ratio_v} < (n-βγ)/(γ-1)`; equality of the max
/// with the bound is the critical-integral case. Extra fast/mixed/log-corrected families are
/// attached as witnesses when their construction constraints hold.
pub fn classify_variable_coeff_system<S: Scalar>(spec: &ProblemSpec<S>) -> Result<Verdict<S>> {
    require_system(spec)?;
    require_mode(spec, CoeffMode::DoubleBounded)?;
    let p = spec.p.clone();
    let q = spec.q.clone().expect("system");
    let (_, g1) = spec.kernel.wolff_pair();

    let tag = match &spec.kernel {
        Kernel::Riesz { .. } => "Thm 3.1",
        Kernel::Wolff { .. } => "Thm 3.3",
        Kernel::PolyLaplace { .. } => {
            if spec.cmp(&(p.clone() * q.clone()), &S::one()) != Ordering::Greater {
                return Ok(Verdict::open(
                    "equivalence with the integral system is only established for pq > 1",
                    "Cor 3.2",
                ));
            }
            "Cor 3.2"
        }
        Kernel::GammaLaplace { .. } => "Thm 3.4",
    };
    let crit = critical_set(spec);
    let sys = crit.system.clone().expect("system thresholds");

    let pq = p.clone() * q.clone();
    let verdict = if spec.cmp(&pq, &(g1.clone() * g1.clone())) != Ordering::Greater {
        Verdict::not_exists(Mechanism::IterationBlowup, tag)
    } else {
        let ru = sys.ratio_u.clone().expect("pq above threshold");
        let rv = sys.ratio_v.clone().expect("pq above threshold");
        let max = if ru > rv { ru.clone() } else { rv.clone() };
        match spec.cmp(&max, &sys.bound) {
            Ordering::Less => {
                let two = S::int(2);
                let m = match &spec.kernel {
                    Kernel::GammaLaplace { gamma } => gamma.clone() / g1.clone(),
                    _ => two,
                };
                let mut rates = vec![
                    DecayRate::new(ru, m.clone(), RateRole::Slow, Component::U),
                    DecayRate::new(rv, m, RateRole::Slow, Component::V),
                ];
                rates.extend(extra_system_rates(spec, &crit));
                Verdict::exists(rates, tag)
            }
            Ordering::Equal => Verdict::not_exists(Mechanism::CriticalIntegralArgument, tag),
            Ordering::Greater => Verdict::not_exists(Mechanism::IterationBlowup, tag),
        }
    };
    Ok(match spec.kernel {
        Kernel::GammaLaplace { .. } if !verdict.exists_outcome() => {
            Verdict { caveat: Some(INF_CAVEAT_SYSTEM.into()), ..verdict }
        }
        _ => verdict,
    })
}

/// The constructive system families beyond the slow pair, as `(tag, u rate, v rate)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SystemFamilyRates<S> {
    pub kind: SystemFamilyKind,
    pub u: DecayRate<S>,
    pub v: DecayRate<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SystemFamilyKind {
    FastFast,
    /// Both fast, u at the standard fast rate (`mirrored = false`) or v (`true`).
    Mixed { mirrored: bool },
    /// Log correction on v (`on_u = false`) or on u.
    Log { on_u: bool },
}

/// Gate evaluation for the fast, mixed and log-corrected system families.
pub(crate) fn system_families<S: Scalar>(spec: &ProblemSpec<S>) -> Vec<SystemFamilyRates<S>> {
    let n = S::int(spec.n as i64);
    let p = spec.p.clone();
    let q = spec.q.clone().expect("system");
    let (s, g1) = spec.kernel.wolff_pair();
    let serrin = critical_set(spec).serrin;
    let gt = |a: &S, b: &S| spec.cmp(a, b) == Ordering::Greater;
    let lt = |a: &S, b: &S| spec.cmp(a, b) == Ordering::Less;
    let mut out = Vec::new();
    let pq_excess = p.clone() * q.clone() - g1.clone() * g1.clone();
    if pq_excess <= S::zero() {
        return out;
    }
    let fast = (n.clone() - s.clone()) / g1.clone();

    match &spec.kernel {
        Kernel::GammaLaplace { gamma } => {
            let m = gamma.clone() / g1.clone();
            let p_fast = (n.clone() * g1.clone() + gamma.clone()) / (n.clone() - gamma.clone());
            let rate = |v: S, role, c| DecayRate::new(v, m.clone(), role, c);
            if spec.eq(&p, &p_fast) && spec.eq(&q, &p_fast) {
                out.push(SystemFamilyRates {
                    kind: SystemFamilyKind::FastFast,
                    u: rate(fast.clone(), RateRole::Fast, Component::U),
                    v: rate(fast.clone(), RateRole::Fast, Component::V),
                });
            }
            for mirrored in [false, true] {
                let (a, b) = if mirrored { (q.clone(), p.clone()) } else { (p.clone(), q.clone()) };
                let lhs = gamma.clone() * (b.clone() + gamma.clone()) / pq_excess.clone();
                let other = a * fast.clone() / g1.clone() - gamma.clone() / g1.clone();
                if spec.eq(&lhs, &fast) && other > S::zero() && lt(&other, &fast) {
                    let (ru, rv) = if mirrored {
                        (rate(other, RateRole::Mixed, Component::U), rate(fast.clone(), RateRole::Mixed, Component::V))
                    } else {
                        (rate(fast.clone(), RateRole::Mixed, Component::U), rate(other, RateRole::Mixed, Component::V))
                    };
                    out.push(SystemFamilyRates { kind: SystemFamilyKind::Mixed { mirrored }, u: ru, v: rv });
                }
            }
            if spec.eq(&p, &p_fast) && spec.eq(&q, &p_fast) {
                out.push(SystemFamilyRates {
                    kind: SystemFamilyKind::Log { on_u: false },
                    u: rate(fast.clone(), RateRole::LogCorrected, Component::U),
                    v: rate(fast, RateRole::LogCorrected, Component::V).logged(),
                });
            }
        }
        _ => {
            let two = S::int(2);
            let rate = |v: S, role, c| DecayRate::new(v, two.clone(), role, c);
            if gt(&p, &serrin) && gt(&q, &serrin) {
                out.push(SystemFamilyRates {
                    kind: SystemFamilyKind::FastFast,
                    u: rate(fast.clone(), RateRole::Fast, Component::U),
                    v: rate(fast.clone(), RateRole::Fast, Component::V),
                });
            }
            let lower = s.clone() / (n.clone() - s.clone());
            for mirrored in [false, true] {
                let (a, b) = if mirrored { (q.clone(), p.clone()) } else { (p.clone(), q.clone()) };
                let ratio = s.clone() * (b + g1.clone()) / pq_excess.clone();
                if gt(&a, &lower) && lt(&a, &serrin) && lt(&ratio, &fast) {
                    let other = a * fast.clone() / g1.clone() - s.clone() / g1.clone();
                    let (ru, rv) = if mirrored {
                        (rate(other, RateRole::Mixed, Component::U), rate(fast.clone(), RateRole::Mixed, Component::V))
                    } else {
                        (rate(fast.clone(), RateRole::Mixed, Component::U), rate(other, RateRole::Mixed, Component::V))
                    };
                    out.push(SystemFamilyRates { kind: SystemFamilyKind::Mixed { mirrored }, u: ru, v: rv });
                }
            }
            let ge = |a: &S, b: &S| spec.cmp(a, b) != Ordering::Less;
            if ge(&p, &serrin) && gt(&q, &serrin) {
                out.push(SystemFamilyRates {
                    kind: SystemFamilyKind::Log { on_u: false },
                    u: rate(fast.clone(), RateRole::LogCorrected, Component::U),
                    v: rate(fast, RateRole::LogCorrected, Component::V).logged(),
                });
            } else if ge(&q, &serrin) && gt(&p, &serrin) {
                out.push(SystemFamilyRates {
                    kind: SystemFamilyKind::Log { on_u: true },
                    u: rate(fast.clone(), RateRole::LogCorrected, Component::U).logged(),
                    v: rate(fast, RateRole::LogCorrected, Component::V),
                });
            }
        }
    }
    out
}

fn extra_system_rates<S: Scalar>(spec: &ProblemSpec<S>, _crit: &CriticalSet<S>) -> Vec<DecayRate<S>> {
    system_families(spec)
        .into_iter()
        .flat_map(|f| [f.u, f.v])
        .collect()
}

/// Constant-coefficient scalar equation: finite-energy solutions exist only at the
/// Sobolev exponent (Riesz / poly-Laplace) or at `γ*-1` (γ-Laplace).
pub fn classify_finite_energy_scalar<S: Scalar>(spec: &ProblemSpec<S>) -> Result<Verdict<S>> {
    require_scalar(spec)?;
    require_mode(spec, CoeffMode::Constant)?;
    let n = S::int(spec.n as i64);
    let p = spec.p.clone();
    let crit = critical_set(spec);
    let (s, g1) = spec.kernel.wolff_pair();
    let two = S::int(2);
    match &spec.kernel {
        Kernel::Riesz { .. } | Kernel::PolyLaplace { .. } => {
            let tag = if let Kernel::PolyLaplace { .. } = spec.kernel {
                if spec.cmp(&p, &S::one()) != Ordering::Greater {
                    return Ok(Verdict::open(
                        "equivalence with the integral form is only established for p > 1",
                        "Cor 4.6",
                    ));
                }
                "Cor 4.6"
            } else {
                "Thm 4.5"
            };
            if spec.eq(&p, &crit.sobolev) {
                let rate = DecayRate::new(n - s, two, RateRole::Bubble, Component::Single);
                Ok(Verdict::exists(vec![rate], tag))
            } else {
                Ok(Verdict::not_exists(Mechanism::PohozaevObstruction, tag))
            }
        }
        Kernel::GammaLaplace { gamma } => {
            let star = crit.energy_star.expect("gamma-laplace energy exponent");
            if spec.eq(&p, &star) {
                let rate = DecayRate::new(
                    (n - gamma.clone()) / g1.clone(),
                    gamma.clone() / g1,
                    RateRole::Explicit,
                    Component::Single,
                );
                Ok(Verdict::exists(vec![rate], "Thm 4.8"))
            } else {
                Ok(Verdict::not_exists(Mechanism::PohozaevObstruction, "Thm 4.8"))
            }
        }
        Kernel::Wolff { .. } => Ok(Verdict::open(
            "whether the scaling exponent is necessary and sufficient for the constant-coefficient Wolff equation is unknown",
            "Remark 4.2(1)",
        )),
    }
}

/// Constant-coefficient systems (Riesz / poly-Laplace only).
///
/// Returns `(finite_energy, any_positive)`.
pub fn classify_finite_energy_system<S: Scalar>(
    spec: &ProblemSpec<S>,
) -> Result<(Verdict<S>, Verdict<S>)> {
    require_system(spec)?;
    require_mode(spec, CoeffMode::Constant)?;
    let alpha = match &spec.kernel {
        Kernel::Riesz { alpha } => alpha.clone(),
        Kernel::PolyLaplace { k } => S::int(2 * *k as i64),
        _ => {
            return Err(Error::Rejected(format!(
                "no constant-coefficient system criterion for the {} kernel",
                spec.kernel.name()
            )))
        }
    };
    let poly = matches!(spec.kernel, Kernel::PolyLaplace { .. });
    let n = S::int(spec.n as i64);
    let p = spec.p.clone();
    let q = spec.q.clone().expect("system");
    let one = S::one();
    let sum = one.clone() / (p.clone() + one.clone()) + one.clone() / (q.clone() + one.clone());
    let crit_sum = (n.clone() - alpha.clone()) / n.clone();
    let serrin = n.clone() / (n.clone() - alpha.clone());
    let fast = n.clone() - alpha.clone();
    let two = S::int(2);

    let critical_rates = || -> Vec<DecayRate<S>> {
        let r = |v: S, role, c| DecayRate::new(v, two.clone(), role, c);
        let cmp_p = spec.cmp(&p, &serrin);
        let cmp_q = spec.cmp(&q, &serrin);
        if cmp_p == Ordering::Less {
            vec![
                r(fast.clone(), RateRole::Fast, Component::U),
                r(p.clone() * fast.clone() - alpha.clone(), RateRole::Mixed, Component::V),
            ]
        } else if cmp_q == Ordering::Less {
            vec![
                r(q.clone() * fast.clone() - alpha.clone(), RateRole::Mixed, Component::U),
                r(fast.clone(), RateRole::Fast, Component::V),
            ]
        } else if cmp_p == Ordering::Equal {
            vec![
                r(fast.clone(), RateRole::Fast, Component::U),
                r(fast.clone(), RateRole::LogCorrected, Component::V).logged(),
            ]
        } else if cmp_q == Ordering::Equal {
            vec![
                r(fast.clone(), RateRole::LogCorrected, Component::U).logged(),
                r(fast.clone(), RateRole::Fast, Component::V),
            ]
        } else {
            vec![
                r(fast.clone(), RateRole::Fast, Component::U),
                r(fast.clone(), RateRole::Fast, Component::V),
            ]
        }
    };

    let fe_tag = if poly { "Cor 5.4" } else { "Thm 5.3" };
    let on_hyperbola = spec.eq(&sum, &crit_sum);
    let finite_energy = if on_hyperbola {
        Verdict::exists(critical_rates(), fe_tag)
    } else {
        Verdict::not_exists(Mechanism::PohozaevObstruction, fe_tag)
    };

    let any_positive = if spec.cmp(&sum, &crit_sum) != Ordering::Greater {
        let rates = if on_hyperbola {
            critical_rates()
        } else {
            let pq1 = p.clone() * q.clone() - one.clone();
            vec![
                DecayRate::new(alpha.clone() * (q.clone() + one.clone()) / pq1.clone(), two.clone(), RateRole::Cited, Component::U),
                DecayRate::new(alpha.clone() * (p.clone() + one.clone()) / pq1, two.clone(), RateRole::Cited, Component::V),
            ]
        };
        let mut v = Verdict::exists(rates, "Thm 1.1(2), existence cited");
        let even = crate::scalar::is_integer(&(alpha.clone() / two.clone()), spec.tol);
        if !even {
            v.caveat = Some("non-even alpha: existence by analogy with the alpha = 2k statement".into());
        }
        v
    } else {
        let lower = alpha.clone() / (n.clone() - alpha.clone());
        let le = |a: &S, b: &S| spec.cmp(a, b) != Ordering::Greater;
        if le(&p, &lower) || le(&q, &lower) || spec.eq(&p, &one) || spec.eq(&q, &one) {
            Verdict::not_exists(Mechanism::PartialResult, "Remark 1.2(i)")
                .note("subcritical: p or q <= alpha/(n-alpha), or p = 1, or q = 1")
        } else if spec.radial && (poly || alpha >= two) {
            Verdict::not_exists(Mechanism::PartialResult, "Remark 1.2(ii)")
                .note("radial solutions only (radial symmetry asserted by the caller)")
        } else {
            Verdict::open("HLS/Lane-Emden conjecture", "Remark 1.2")
        }
    };
    Ok((finite_energy, any_positive))
}
