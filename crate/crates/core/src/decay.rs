//! Decay-exponent recurrences.
//!
//! A positive solution of `u = c·W_{β,γ}(u^p)` satisfies `u ≥ c|x|^{-a_j}` for every term of
//! `a_j = (p·a_{j-1} - βγ)/(γ-1)`, starting from `a_0 = (n-βγ)/(γ-1)`. Once some `a_j ≤ 0`
//! the potential of `u^p` is infinite, so no solution exists. The Riesz case is `β = α/2`,
//! `γ = 2`, i.e. `a_j = p·a_{j-1} - α`.
//!
//! For systems the lower bounds alternate: `b_k = (p·a_k - βγ)/(γ-1)` and
//! `a_k = (q·b_{k-1} - βγ)/(γ-1)`. A second chain seeded by `v ≥ c|x|^{-a_0}` (the same
//! recurrence with `p` and `q` swapped) is run alongside; when `p·a_0 - βγ` already exceeds
//! the fixed point of the first chain only the second one reaches zero.

use std::cmp::Ordering;

use crate::error::{invalid, Result};
use crate::param_space::{Kernel, ProblemSpec};
use crate::scalar::Scalar;

/// Sequences stop once `|a_j|` exceeds this value.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// Default iteration budget.
pub const DEFAULT_J_MAX: usize = 64;

/// Which sequence produced an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    A,
    B,
    /// The chain seeded from the second component's lower bound.
    MirrorA,
    MirrorB,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecaySequenceReport<S> {
    pub a: Vec<S>,
    pub b: Option<Vec<S>>,
    /// The chain started from `v`'s bound (systems only); `mirror_a` follows `v`,
    /// `mirror_b` follows `u`.
    pub mirror_a: Option<Vec<S>>,
    pub mirror_b: Option<Vec<S>>,
    /// Smallest index with a term `≤ 0`, and the sequence it occurs in.
    pub first_nonpositive: Option<(usize, Sequence)>,
    /// Smallest index with a term `< 0`.
    pub first_strictly_negative: Option<(usize, Sequence)>,
    /// Fixed point `δ/(ρ-1)` when the ratio `ρ` is below one.
    pub limit: Option<S>,
    /// Largest `|recurrence - closed form| / max(1, |a_j|)`.
    pub closed_form_max_residual: f64,
    /// True when the overflow guard cut a sequence short.
    pub truncated: bool,
}

impl<S: Scalar> DecaySequenceReport<S> {
    /// True when the iteration certifies nonexistence (some term `≤ 0`).
    pub fn blows_up(&self) -> bool {
        self.first_nonpositive.is_some()
    }
}

fn check_domain<S: Scalar>(n: u32, beta: &S, gamma: &S, j_max: usize) -> Result<()> {
    if j_max == 0 {
        return invalid("j_max = 0 violates j_max >= 1");
    }
    let zero = S::zero();
    if *beta <= zero {
        return invalid(format!("beta = {beta} violates beta > 0"));
    }
    if !(*gamma > S::one() && *gamma <= S::int(2)) {
        return invalid(format!("gamma = {gamma} violates 1 < gamma <= 2"));
    }
    if beta.clone() * gamma.clone() >= S::int(n as i64) {
        return invalid("beta*gamma < n violated");
    }
    Ok(())
}

fn guard<S: Scalar>(x: &S) -> bool {
    x.abs().to_f64() > OVERFLOW_GUARD
}

fn first_index<S: Scalar>(seq: &[S], strict: bool) -> Option<usize> {
    let zero = S::zero();
    seq.iter().position(|x| if strict { *x < zero } else { *x <= zero })
}

fn earliest(cands: &[(Option<usize>, Sequence)]) -> Option<(usize, Sequence)> {
    cands
        .iter()
        .filter_map(|(i, s)| i.map(|i| (i, *s)))
        .min_by_key(|(i, _)| *i)
}

/// `a_j = (a_0 - L)ρ^j + L` with `L = δ/(ρ-1)`, or `a_0 - δj` when `ρ = 1`, for `j < len`.
fn closed_forms<S: Scalar>(a0: &S, rho: &S, delta: &S, len: usize) -> Vec<S> {
    if *rho == S::one() {
        return (0..len).map(|j| a0.clone() - delta.clone() * S::int(j as i64)).collect();
    }
    let l = delta.clone() / (rho.clone() - S::one());
    let mut term = a0.clone() - l.clone();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(term.clone() + l.clone());
        term = term * rho.clone();
    }
    out
}

fn residual<S: Scalar>(computed: &S, exact: &S) -> f64 {
    let scale = computed.abs().to_f64().max(1.0);
    (computed.clone() - exact.clone()).abs().to_f64() / scale
}

/// Scalar recurrence `a_j = (p/(γ-1))·a_{j-1} - βγ/(γ-1)`.
///
/// ```
/// use liouville_core::{scalar_decay_sequence, Exact, Scalar};
/// let r = scalar_decay_sequence(5, &Exact::int(1), &Exact::int(2), &Exact::ratio(3, 2), 8).unwrap();
/// assert_eq!(r.a[4], Exact::ratio(-17, 16));
/// assert_eq!(r.first_strictly_negative.map(|x| x.0), Some(4));
/// ```
pub fn scalar_decay_sequence<S: Scalar>(
    n: u32,
    beta: &S,
    gamma: &S,
    p: &S,
    j_max: usize,
) -> Result<DecaySequenceReport<S>> {
    check_domain(n, beta, gamma, j_max)?;
    let g1 = gamma.clone() - S::one();
    let s = beta.clone() * gamma.clone();
    let a0 = (S::int(n as i64) - s.clone()) / g1.clone();
    let rho = p.clone() / g1.clone();
    let delta = s / g1;
    let neg_delta = -delta.clone();

    let mut a = vec![a0.clone()];
    let mut truncated = false;
    for _ in 0..j_max {
        let next = rho.mul_add(a.last().unwrap(), &neg_delta);
        let stop = guard(&next);
        a.push(next);
        if stop {
            truncated = true;
            break;
        }
    }
    let closed_form_max_residual = a
        .iter()
        .zip(closed_forms(&a0, &rho, &delta, a.len()))
        .map(|(x, exact)| residual(x, &exact))
        .fold(0.0, f64::max);
    let limit = (rho < S::one()).then(|| delta.clone() / (rho.clone() - S::one()));
    Ok(DecaySequenceReport {
        first_nonpositive: first_index(&a, false).map(|i| (i, Sequence::A)),
        first_strictly_negative: first_index(&a, true).map(|i| (i, Sequence::A)),
        a,
        b: None,
        mirror_a: None,
        mirror_b: None,
        limit,
        closed_form_max_residual,
        truncated,
    })
}

struct Chain<S> {
    a: Vec<S>,
    b: Vec<S>,
    truncated: bool,
    residual: f64,
}

/// Runs `b_k = (p a_k - s)/g1`, `a_{k+1} = (q b_k - s)/g1` from `a_0`.
fn run_chain<S: Scalar>(a0: &S, p: &S, q: &S, s: &S, g1: &S, k_max: usize) -> Chain<S> {
    let pg = p.clone() / g1.clone();
    let qg = q.clone() / g1.clone();
    let neg = -(s.clone() / g1.clone());
    let mut a = vec![a0.clone()];
    let mut b = Vec::new();
    let mut truncated = false;
    for k in 0..=k_max {
        let bk = pg.mul_add(&a[k], &neg);
        let stop = guard(&bk);
        b.push(bk);
        if stop {
            truncated = true;
            break;
        }
        if k == k_max {
            break;
        }
        let next = qg.mul_add(&b[k], &neg);
        let stop = guard(&next);
        a.push(next);
        if stop {
            truncated = true;
            break;
        }
    }
    // Closed form in the two-step ratio pq/g1².
    let rho = p.clone() * q.clone() / (g1.clone() * g1.clone());
    let delta = s.clone() * (q.clone() + g1.clone()) / (g1.clone() * g1.clone());
    let mut res: f64 = 0.0;
    for (k, (ak, exact_a)) in a.iter().zip(closed_forms(a0, &rho, &delta, a.len())).enumerate() {
        res = res.max(residual(ak, &exact_a));
        if let Some(bk) = b.get(k) {
            let exact_b = (p.clone() * exact_a - s.clone()) / g1.clone();
            res = res.max(residual(bk, &exact_b));
        }
    }
    Chain { a, b, truncated, residual: res }
}

/// System recurrences with the interleaved sequences `a_k`, `b_k` and the mirrored chain.
pub fn system_decay_sequence<S: Scalar>(
    n: u32,
    beta: &S,
    gamma: &S,
    p: &S,
    q: &S,
    k_max: usize,
) -> Result<DecaySequenceReport<S>> {
    check_domain(n, beta, gamma, k_max)?;
    let g1 = gamma.clone() - S::one();
    let s = beta.clone() * gamma.clone();
    let a0 = (S::int(n as i64) - s.clone()) / g1.clone();
    let main = run_chain(&a0, p, q, &s, &g1, k_max);
    let mirror = run_chain(&a0, q, p, &s, &g1, k_max);

    let rho = p.clone() * q.clone() / (g1.clone() * g1.clone());
    let limit = (rho < S::one()).then(|| {
        let delta = s.clone() * (q.clone() + g1.clone()) / (g1.clone() * g1.clone());
        delta / (rho.clone() - S::one())
    });
    let pick = |strict| {
        earliest(&[
            (first_index(&main.a, strict), Sequence::A),
            (first_index(&main.b, strict), Sequence::B),
            (first_index(&mirror.a, strict), Sequence::MirrorA),
            (first_index(&mirror.b, strict), Sequence::MirrorB),
        ])
    };
    Ok(DecaySequenceReport {
        first_nonpositive: pick(false),
        first_strictly_negative: pick(true),
        closed_form_max_residual: main.residual.max(mirror.residual),
        truncated: main.truncated || mirror.truncated,
        a: main.a,
        b: Some(main.b),
        mirror_a: Some(mirror.a),
        mirror_b: Some(mirror.b),
        limit,
    })
}

/// Runs the matching recurrence for a spec (Riesz and poly-Laplace through `β = α/2`, `γ = 2`).
pub fn decay_sequence_for<S: Scalar>(spec: &ProblemSpec<S>, j_max: usize) -> Result<DecaySequenceReport<S>> {
    let two = S::int(2);
    let (beta, gamma) = match spec.kernel() {
        Kernel::Riesz { alpha } => (alpha.clone() / two.clone(), two),
        Kernel::PolyLaplace { k } => (S::int(*k as i64), two),
        Kernel::Wolff { beta, gamma } => (beta.clone(), gamma.clone()),
        Kernel::GammaLaplace { gamma } => (S::one(), gamma.clone()),
    };
    match spec.q() {
        None => scalar_decay_sequence(spec.n(), &beta, &gamma, spec.p(), j_max),
        Some(q) => system_decay_sequence(spec.n(), &beta, &gamma, spec.p(), q, j_max),
    }
}

/// Whether the sequence is strictly decreasing over its computed terms.
pub fn strictly_decreasing<S: Scalar>(seq: &[S]) -> bool {
    seq.windows(2).all(|w| w[1].compare(&w[0], 0.0) == Ordering::Less)
}
