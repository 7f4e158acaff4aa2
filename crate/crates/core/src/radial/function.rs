use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Shape of a radial profile. Amplitude `A` and radial scale `K` live on [`RadialFunction`].
#[derive(Debug, Clone, PartialEq)]
pub enum RadialForm<F> {
    /// `A (1 + K r^m)^{-θ}`.
    Power { theta: F, m: F },
    /// `A (log(e + r))^{ℓ} (1 + K r^m)^{-θ}`.
    ///
    /// `log(e + r)` replaces `log r` so the profile is positive and finite at the origin;
    /// the asymptotics at infinity are unchanged.
    LogPower { theta: F, m: F, log_exp: F },
    /// Piecewise-linear samples on `grid` (starting at 0), extended beyond the last node by
    /// `values.last() · (r / grid.last())^{-b}` with `b = extrapolation_exponent`.
    Sampled { grid: Vec<F>, values: Vec<F>, extrapolation_exponent: F },
}

/// A positive radial function on `[0, ∞)` with an evaluation contract and a known tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction<F> {
    amplitude: F,
    scale: F,
    form: RadialForm<F>,
}

impl<F: Real> RadialFunction<F> {
    /// `(1 + r^m)^{-θ}`, `θ > 0`, `m > 1`.
    pub fn power(theta: F, m: F) -> Result<Self> {
        if !(theta > F::zero()) {
            return invalid(format!("power profile theta = {theta} violates theta > 0"));
        }
        Self::check_m(m)?;
        Ok(RadialFunction { amplitude: F::one(), scale: F::one(), form: RadialForm::Power { theta, m } })
    }

    /// The constant function 1 (the degenerate `θ = 0` power profile). Only meaningful for
    /// ball masses: its potentials diverge.
    pub fn unit() -> Self {
        RadialFunction { amplitude: F::one(), scale: F::one(), form: RadialForm::Power { theta: F::zero(), m: F::c(2.0) } }
    }

    /// `(log(e + r))^{ℓ} (1 + r^m)^{-θ}`.
    pub fn log_power(theta: F, m: F, log_exp: F) -> Result<Self> {
        if !(theta > F::zero()) {
            return invalid(format!("log-power profile theta = {theta} violates theta > 0"));
        }
        Self::check_m(m)?;
        if !log_exp.is_finite() {
            return invalid("log-power exponent must be finite");
        }
        Ok(RadialFunction { amplitude: F::one(), scale: F::one(), form: RadialForm::LogPower { theta, m, log_exp } })
    }

    /// Sampled profile; needs `grid[0] = 0`, at least 8 strictly increasing nodes and
    /// nonnegative finite values.
    pub fn sampled(grid: Vec<F>, values: Vec<F>, extrapolation_exponent: F) -> Result<Self> {
        if grid.len() < 8 {
            return invalid(format!("sampled profile has {} nodes, needs at least 8", grid.len()));
        }
        if grid.len() != values.len() {
            return invalid("sampled profile grid and values differ in length");
        }
        if grid[0] != F::zero() {
            return invalid("sampled profile grid must start at 0");
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("sampled profile grid must be strictly increasing");
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= F::zero())) {
            return invalid("sampled profile values must be finite and nonnegative");
        }
        if !(extrapolation_exponent > F::zero()) {
            return invalid("sampled profile extrapolation exponent must be positive");
        }
        Ok(RadialFunction {
            amplitude: F::one(),
            scale: F::one(),
            form: RadialForm::Sampled { grid, values, extrapolation_exponent },
        })
    }

    fn check_m(m: F) -> Result<()> {
        if !(m > F::one()) {
            return invalid(format!("profile power m = {m} violates m > 1"));
        }
        Ok(())
    }

    /// Multiplies the profile by `a > 0`.
    pub fn with_amplitude(mut self, a: F) -> Result<Self> {
        if !(a > F::zero() && a.is_finite()) {
            return invalid("amplitude must be positive and finite");
        }
        self.amplitude = a;
        Ok(self)
    }

    /// Replaces `r^m` by `K r^m` (power forms only).
    pub fn with_scale(mut self, k: F) -> Result<Self> {
        if !(k > F::zero() && k.is_finite()) {
            return invalid("radial scale must be positive and finite");
        }
        if let RadialForm::Sampled { .. } = self.form {
            return invalid("radial scale applies to power forms only");
        }
        self.scale = k;
        Ok(self)
    }

    pub fn form(&self) -> &RadialForm<F> {
        &self.form
    }
    pub fn amplitude(&self) -> F {
        self.amplitude
    }
    pub fn scale(&self) -> F {
        self.scale
    }

    /// `(θ, m)` for power and log-power forms.
    pub fn power_params(&self) -> Option<(F, F)> {
        match &self.form {
            RadialForm::Power { theta, m } | RadialForm::LogPower { theta, m, .. } => Some((*theta, *m)),
            RadialForm::Sampled { .. } => None,
        }
    }

    pub fn is_log_corrected(&self) -> bool {
        matches!(&self.form, RadialForm::LogPower { log_exp, .. } if *log_exp != F::zero())
    }

    /// Power of `r^{-1}` at infinity (ignoring logarithmic factors).
    pub fn decay_exponent(&self) -> F {
        match &self.form {
            RadialForm::Power { theta, m } | RadialForm::LogPower { theta, m, .. } => *m * *theta,
            RadialForm::Sampled { extrapolation_exponent, .. } => *extrapolation_exponent,
        }
    }

    /// Radius where the profile turns from its core to its tail.
    pub fn core_scale(&self) -> F {
        match &self.form {
            RadialForm::Power { m, .. } | RadialForm::LogPower { m, .. } => self.scale.powf(-m.recip()),
            RadialForm::Sampled { grid, .. } => *grid.last().unwrap(),
        }
    }

    /// Radii where the profile changes character (sample nodes, core scale).
    pub fn features(&self) -> Vec<F> {
        match &self.form {
            RadialForm::Sampled { grid, .. } => grid[1..].to_vec(),
            _ => vec![self.core_scale()],
        }
    }

    /// `f^e` as a radial function of the same kind.
    pub fn powf(&self, e: F) -> Self {
        let amplitude = self.amplitude.powf(e);
        let form = match &self.form {
            RadialForm::Power { theta, m } => RadialForm::Power { theta: *theta * e, m: *m },
            RadialForm::LogPower { theta, m, log_exp } => {
                RadialForm::LogPower { theta: *theta * e, m: *m, log_exp: *log_exp * e }
            }
            RadialForm::Sampled { grid, values, extrapolation_exponent } => RadialForm::Sampled {
                grid: grid.clone(),
                values: values.iter().map(|v| v.powf(e)).collect(),
                extrapolation_exponent: *extrapolation_exponent * e,
            },
        };
        RadialFunction { amplitude, scale: self.scale, form }
    }

    fn log_factor(r: F, log_exp: F) -> (F, F, F) {
        // L = log(e+r)^ℓ and its first two derivatives.
        let e_r = F::E() + r;
        let lg = e_r.ln();
        let l0 = lg.powf(log_exp);
        let l1 = log_exp * lg.powf(log_exp - F::one()) / e_r;
        let l2 = log_exp
            * ((log_exp - F::one()) * lg.powf(log_exp - F::c(2.0)) - lg.powf(log_exp - F::one()))
            / (e_r * e_r);
        (l0, l1, l2)
    }

    /// `(1+Kr^m)^{-θ}` and its first two derivatives.
    fn power_factor(&self, r: F, theta: F, m: F) -> (F, F, F) {
        let k = self.scale;
        let one = F::one();
        let rm = r.powf(m);
        let base = one + k * rm;
        let p0 = base.powf(-theta);
        if r == F::zero() {
            // r^{m-1} and r^{m-2} vanish for m > 2; for m = 2 the second derivative is
            // -2θK; for 1 < m < 2 it is unbounded (never needed at r = 0 by callers).
            let p2 = if m == F::c(2.0) {
                -F::c(2.0) * theta * k
            } else if m > F::c(2.0) {
                F::zero()
            } else {
                F::neg_infinity()
            };
            return (p0, F::zero(), p2);
        }
        let rm1 = r.powf(m - one);
        let rm2 = r.powf(m - F::c(2.0));
        let p1 = -theta * m * k * rm1 * base.powf(-theta - one);
        let p2 = -theta * m * k
            * ((m - one) * rm2 * base.powf(-theta - one)
                - (theta + one) * m * k * rm1 * rm1 * base.powf(-theta - F::c(2.0)));
        (p0, p1, p2)
    }

    /// Value, first and second derivative at `r`.
    pub fn jet(&self, r: F) -> (F, F, F) {
        let a = self.amplitude;
        match &self.form {
            RadialForm::Power { theta, m } => {
                let (p0, p1, p2) = self.power_factor(r, *theta, *m);
                (a * p0, a * p1, a * p2)
            }
            RadialForm::LogPower { theta, m, log_exp } => {
                let (p0, p1, p2) = self.power_factor(r, *theta, *m);
                let (l0, l1, l2) = Self::log_factor(r, *log_exp);
                (a * l0 * p0, a * (l1 * p0 + l0 * p1), a * (l2 * p0 + F::c(2.0) * l1 * p1 + l0 * p2))
            }
            RadialForm::Sampled { grid, values, extrapolation_exponent } => {
                let last = grid.len() - 1;
                if r >= grid[last] {
                    let b = *extrapolation_exponent;
                    let v = values[last] * (r / grid[last]).powf(-b);
                    let d1 = -b * v / r;
                    let d2 = b * (b + F::one()) * v / (r * r);
                    return (a * v, a * d1, a * d2);
                }
                let i = match grid.binary_search_by(|g| g.partial_cmp(&r).unwrap()) {
                    Ok(i) => i.min(last - 1),
                    Err(i) => i - 1,
                };
                let w = (r - grid[i]) / (grid[i + 1] - grid[i]);
                let slope = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
                (a * (values[i] + w * (values[i + 1] - values[i])), a * slope, F::zero())
            }
        }
    }

    pub fn value(&self, r: F) -> F {
        match &self.form {
            RadialForm::Power { theta, m } => {
                self.amplitude * (F::one() + self.scale * r.powf(*m)).powf(-*theta)
            }
            _ => self.jet(r).0,
        }
    }

    pub fn derivative(&self, r: F) -> F {
        self.jet(r).1
    }

    pub fn second_derivative(&self, r: F) -> F {
        self.jet(r).2
    }

    /// `ln f(r)`, computed without overflow for very large `r`.
    pub fn ln_value(&self, r: F) -> F {
        match &self.form {
            RadialForm::Power { theta, m } | RadialForm::LogPower { theta, m, .. } => {
                let lk = self.scale.ln() + *m * r.ln();
                // ln(1 + e^{lk}) evaluated stably
                let l1p = if lk > F::c(30.0) { lk + (-lk).exp().ln_1p() } else { lk.exp().ln_1p() };
                let mut out = self.amplitude.ln() - *theta * l1p;
                if let RadialForm::LogPower { log_exp, .. } = &self.form {
                    out = out + *log_exp * (F::E() + r).ln().ln();
                }
                out
            }
            RadialForm::Sampled { .. } => self.value(r).ln(),
        }
    }

    /// `f(s) s^{n-1}`, switching to logarithms when the factors would overflow.
    pub fn weighted(&self, s: F, n: u32) -> F {
        if s == F::zero() {
            return if n == 1 { self.value(s) } else { F::zero() };
        }
        if s < F::c(1e20) {
            self.value(s) * s.powi(n as i32 - 1)
        } else {
            (self.ln_value(s) + F::c((n - 1) as f64) * s.ln()).exp()
        }
    }
}
