//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Value, error estimate and bookkeeping of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<F> {
    pub value: F,
    pub error: F,
    pub evaluations: usize,
    pub intervals: usize,
}

struct Segment<F> {
    a: F,
    b: F,
    value: F,
    error: F,
}

impl<F: PartialOrd> PartialEq for Segment<F> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<F: PartialOrd> Eq for Segment<F> {}
impl<F: PartialOrd> PartialOrd for Segment<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: PartialOrd> Ord for Segment<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// One 15-point Kronrod rule with the QUADPACK error heuristic.
fn gk15<F: Real>(f: &mut impl FnMut(F) -> F, a: F, b: F) -> (F, F, bool) {
    let half = F::c(0.5);
    let center = half * (a + b);
    let h = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * F::c(WGK[7]);
    let mut res_g = fc * F::c(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [F::zero(); 7];
    let mut fv2 = [F::zero(); 7];
    let mut finite = fc.is_finite();
    for j in 0..7 {
        let dx = h * F::c(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        finite &= f1.is_finite() && f2.is_finite();
        fv1[j] = f1;
        fv2[j] = f2;
        let w = F::c(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + F::c(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = F::c(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + F::c(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * h;
    let res_abs = res_abs * h.abs();
    let res_asc = res_asc * h.abs();
    let mut err = ((res_k - res_g) * h).abs();
    if res_asc != F::zero() && err != F::zero() {
        let scale = (F::c(200.0) * err / res_asc).powf(F::c(1.5));
        err = res_asc * scale.min(F::one());
    }
    let round = F::c(50.0) * F::epsilon() * res_abs;
    if round > err {
        err = round;
    }
    (value, err, finite)
}

/// Integrates `f` over `[points[0], points.last()]`, splitting at every interior point first.
///
/// Stops when the summed error estimate is below `max(rel_tol·|I|, abs_tol·|I₀|)`, where `I₀`
/// is the first-pass estimate; `abs_tol` is thus a floor relative to the integral's scale.
pub fn integrate<F: Real>(
    f: impl FnMut(F) -> F,
    points: &[F],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
    context: &str,
) -> Result<QuadResult<F>> {
    integrate_with_floor(f, points, rel_tol, abs_tol, F::zero(), max_subdivisions, context)
}

/// [`integrate`] with an additional absolute error floor `floor_abs`, for integrals that are
/// one part of a larger sum and need only be accurate relative to that sum.
pub fn integrate_with_floor<F: Real>(
    mut f: impl FnMut(F) -> F,
    points: &[F],
    rel_tol: f64,
    abs_tol: f64,
    floor_abs: F,
    max_subdivisions: usize,
    context: &str,
) -> Result<QuadResult<F>> {
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment<F>> = Vec::new();
    let mut evaluations = 0usize;
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (value, error, finite) = gk15(&mut f, w[0], w[1]);
            evaluations += 15;
            if !finite {
                return non_finite(context, w[0], w[1]);
            }
            heap.push(Segment { a: w[0], b: w[1], value, error });
        }
    }
    if heap.is_empty() {
        return Ok(QuadResult { value: F::zero(), error: F::zero(), evaluations, intervals: 0 });
    }
    let sum = |heap: &BinaryHeap<Segment<F>>, frozen: &[Segment<F>]| {
        let mut v = F::zero();
        let mut e = F::zero();
        for s in heap.iter().chain(frozen.iter()) {
            v = v + s.value;
            e = e + s.error;
        }
        (v, e)
    };
    let (initial, _) = sum(&heap, &frozen);
    let floor = (F::c(abs_tol) * initial.abs()).max(floor_abs);
    let rel = F::c(rel_tol);
    let mut splits = 0usize;
    let mut since_resum = 0usize;
    let (mut total, mut error) = sum(&heap, &frozen);
    loop {
        if since_resum >= 64 {
            (total, error) = sum(&heap, &frozen);
            since_resum = 0;
        }
        if error <= (rel * total.abs()).max(floor) {
            (total, error) = sum(&heap, &frozen);
            if error <= (rel * total.abs()).max(floor) {
                break;
            }
        }
        let Some(worst) = heap.pop() else { break };
        let mid = F::c(0.5) * (worst.a + worst.b);
        let width_floor = F::c(64.0) * F::epsilon() * worst.a.abs().max(worst.b.abs());
        if worst.b - worst.a <= width_floor || mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            continue;
        }
        if splits >= max_subdivisions {
            let (value, err) = sum(&heap, &frozen);
            let (value, err) = (value + worst.value, err + worst.error);
            return Err(Error::NonConvergence {
                context: context.to_string(),
                estimate: value.as_f64(),
                error_bound: err.as_f64(),
            });
        }
        splits += 1;
        since_resum += 1;
        let (v1, e1, ok1) = gk15(&mut f, worst.a, mid);
        let (v2, e2, ok2) = gk15(&mut f, mid, worst.b);
        evaluations += 30;
        if !(ok1 && ok2) {
            return non_finite(context, worst.a, worst.b);
        }
        total = total - worst.value + v1 + v2;
        error = error - worst.error + e1 + e2;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }
    let intervals = heap.len() + frozen.len();
    Ok(QuadResult { value: total, error, evaluations, intervals })
}

fn non_finite<F: Real, T>(context: &str, a: F, b: F) -> Result<T> {
    Err(Error::NonConvergence {
        context: format!(
            "{context}: non-finite integrand on [{:e}, {:e}]",
            a.as_f64(),
            b.as_f64()
        ),
        estimate: f64::NAN,
        error_bound: f64::INFINITY,
    })
}
