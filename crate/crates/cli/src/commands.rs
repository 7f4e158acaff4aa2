use liouville_core::decay::{decay_sequence_for, Sequence};
use liouville_core::families::{
    coefficient_profile, exact_solution_residual, family_catalog, log_grid, profile_reports, ExactKind, FamilyPair,
};
use liouville_core::identities::{
    energy_balance_residual, green_chain_residual, integral_pohozaev_residual, pohozaev_obstruction_scalar,
    pohozaev_obstruction_system, scaled_energy_check, scaling_exponents, EvenPolynomial, IdentityResidual, Obstruction,
};
use liouville_core::param_space::{Component, RateRole};
use liouville_core::radial::{
    radial_gamma_laplacian, radial_laplacian, riesz_potential, riesz_potential_direct, wolff_potential,
};
use liouville_core::shooting::{find_threshold, integrate, Forcing, ShootConfig, ShootOutcome};
use liouville_core::{
    classify_finite_energy_scalar, classify_finite_energy_system, classify_variable_coeff_scalar,
    classify_variable_coeff_system, critical_set, parse_exact, CoeffMode, DecayRate, Error, Exact, Kernel, Outcome,
    ProblemSpec, QuadratureConfig, RadialFunction, Result, Scalar, Verdict,
};
use serde_json::{json, Map, Value};

use crate::args::*;

pub type Record = Map<String, Value>;

/// Records plus an optional document-level summary.
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<Record>,
    pub summary: Option<Record>,
}

impl Output {
    fn rows(records: Vec<Record>) -> Self {
        Output { records, summary: None }
    }
}

pub fn exact(flag: &str, text: &str) -> Result<Exact> {
    parse_exact(text).ok_or_else(|| Error::Invalid(format!("--{flag}: cannot parse '{text}' as a number")))
}

fn real(flag: &str, text: &str) -> Result<f64> {
    Ok(exact(flag, text)?.to_f64())
}

fn required<'a>(flag: &str, v: &'a Option<String>, context: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Invalid(format!("--{flag} is required for {context}")))
}

/// Integers become JSON integers, other rationals `"a/b"` strings.
pub fn rational(x: &Exact) -> Value {
    if x.is_integer() {
        if let Ok(i) = x.to_integer().to_string().parse::<i64>() {
            return json!(i);
        }
    }
    Value::String(x.to_string())
}

pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

fn opt_float(x: Option<f64>) -> Value {
    x.map(float).unwrap_or(Value::Null)
}

fn record(pairs: Vec<(&str, Value)>) -> Record {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn quad_config(q: &QuadArgs) -> Result<QuadratureConfig> {
    let cfg = QuadratureConfig {
        rel_tol: q.rel_tol,
        abs_tol: q.abs_tol,
        max_subdivisions: q.max_subdivisions,
        tail_cut: q.tail_cut,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn build_spec(a: &ProblemArgs) -> Result<ProblemSpec<Exact>> {
    let ctx = |k: &str| format!("kernel {k}");
    let kernel = match a.kernel {
        KernelKind::Riesz => Kernel::Riesz { alpha: exact("alpha", required("alpha", &a.alpha, &ctx("riesz"))?)? },
        KernelKind::Wolff => Kernel::Wolff {
            beta: exact("beta", required("beta", &a.beta, &ctx("wolff"))?)?,
            gamma: exact("gamma", required("gamma", &a.gamma, &ctx("wolff"))?)?,
        },
        KernelKind::PolyLaplace => Kernel::PolyLaplace {
            k: a.k.ok_or_else(|| Error::Invalid("--k is required for kernel poly-laplace".into()))?,
        },
        KernelKind::GammaLaplace => {
            Kernel::GammaLaplace { gamma: exact("gamma", required("gamma", &a.gamma, &ctx("gamma-laplace"))?)? }
        }
    };
    let p = exact("p", &a.p)?;
    let q = a.q.as_deref().map(|q| exact("q", q)).transpose()?;
    let mode = match a.coeff {
        Coeff::DoubleBounded => CoeffMode::DoubleBounded,
        Coeff::Constant => CoeffMode::Constant,
    };
    Ok(ProblemSpec::new(a.n, kernel, p, q, mode)?.with_radial(a.radial))
}

fn role_name(r: RateRole) -> &'static str {
    match r {
        RateRole::Slow => "slow",
        RateRole::Fast => "fast",
        RateRole::Mixed => "mixed",
        RateRole::LogCorrected => "log-corrected",
        RateRole::Bubble => "bubble",
        RateRole::Explicit => "explicit",
        RateRole::Cited => "cited",
    }
}

fn component_name(c: Component) -> &'static str {
    match c {
        Component::Single => "u",
        Component::U => "u",
        Component::V => "v",
    }
}

fn rate_value(r: &DecayRate<Exact>) -> Value {
    json!({
        "two_theta": rational(&r.two_theta),
        "m": rational(&r.m),
        "log_corrected": r.log_corrected,
        "role": role_name(r.role),
        "component": component_name(r.component),
    })
}

fn verdict_record(question: &str, v: &Verdict<Exact>) -> Record {
    let (mechanism, detail) = match &v.outcome {
        Outcome::Exists { .. } => (Value::Null, Value::Null),
        Outcome::NotExists { mechanism, notes } => {
            (json!(format!("{mechanism:?}")), if notes.is_empty() { Value::Null } else { json!(notes.join("; ")) })
        }
        Outcome::Open { conjecture } => (Value::Null, json!(conjecture)),
    };
    let rates = v.witness_rates();
    record(vec![
        ("question", json!(question)),
        ("outcome", json!(v.outcome.label())),
        ("theorem", json!(v.theorem_tag)),
        ("mechanism", mechanism),
        ("caveat", v.caveat.as_ref().map(|c| json!(c)).unwrap_or(Value::Null)),
        ("rates", Value::Array(rates.iter().map(|r| rational(&r.two_theta)).collect())),
        ("rate_details", Value::Array(rates.iter().map(rate_value).collect())),
        ("detail", detail),
    ])
}

pub fn classify(a: &ProblemArgs) -> Result<Output> {
    let spec = build_spec(a)?;
    let rows = match (spec.is_system(), spec.coeff_mode()) {
        (false, CoeffMode::DoubleBounded) => vec![verdict_record("existence", &classify_variable_coeff_scalar(&spec)?)],
        (true, CoeffMode::DoubleBounded) => vec![verdict_record("existence", &classify_variable_coeff_system(&spec)?)],
        (false, CoeffMode::Constant) => vec![verdict_record("finite-energy", &classify_finite_energy_scalar(&spec)?)],
        (true, CoeffMode::Constant) => {
            let (fe, pos) = classify_finite_energy_system(&spec)?;
            vec![verdict_record("finite-energy", &fe), verdict_record("positive", &pos)]
        }
    };
    Ok(Output::rows(rows))
}

pub fn criticals(a: &ProblemArgs) -> Result<Output> {
    let spec = build_spec(a)?;
    let c = critical_set(&spec);
    let opt = |x: Option<&Exact>| x.map(rational).unwrap_or(Value::Null);
    let sys = c.system.as_ref();
    Ok(Output::rows(vec![record(vec![
        ("serrin", rational(&c.serrin)),
        ("sobolev", rational(&c.sobolev)),
        ("energy_star", opt(c.energy_star.as_ref())),
        ("ratio_u", opt(sys.and_then(|s| s.ratio_u.as_ref()))),
        ("ratio_v", opt(sys.and_then(|s| s.ratio_v.as_ref()))),
        ("bound", opt(sys.map(|s| &s.bound))),
        ("critical_sum", opt(sys.map(|s| &s.critical_sum))),
    ])]))
}

fn sequence_name(s: Sequence) -> &'static str {
    match s {
        Sequence::A => "a",
        Sequence::B => "b",
        Sequence::MirrorA => "mirror_a",
        Sequence::MirrorB => "mirror_b",
    }
}

pub fn iterate(a: &IterateArgs) -> Result<Output> {
    let spec = build_spec(&a.problem)?;
    let rep = decay_sequence_for(&spec, a.j_max)?;
    let at = |s: &Option<Vec<Exact>>, j: usize| s.as_ref().and_then(|v| v.get(j)).map(rational).unwrap_or(Value::Null);
    let len = [Some(&rep.a), rep.b.as_ref(), rep.mirror_a.as_ref(), rep.mirror_b.as_ref()]
        .iter()
        .flatten()
        .map(|v| v.len())
        .max()
        .unwrap_or(0);
    let a_seq = Some(rep.a.clone());
    let rows = (0..len)
        .map(|j| {
            record(vec![
                ("j", json!(j)),
                ("a", at(&a_seq, j)),
                ("b", at(&rep.b, j)),
                ("mirror_a", at(&rep.mirror_a, j)),
                ("mirror_b", at(&rep.mirror_b, j)),
            ])
        })
        .collect();
    let idx = |x: Option<(usize, Sequence)>| {
        x.map(|(j, s)| json!({"index": j, "sequence": sequence_name(s)})).unwrap_or(Value::Null)
    };
    let summary = record(vec![
        ("blows_up", json!(rep.blows_up())),
        ("first_nonpositive", idx(rep.first_nonpositive)),
        ("first_strictly_negative", idx(rep.first_strictly_negative)),
        ("limit", rep.limit.as_ref().map(rational).unwrap_or(Value::Null)),
        ("closed_form_max_residual", float(rep.closed_form_max_residual)),
        ("truncated", json!(rep.truncated)),
    ]);
    Ok(Output { records: rows, summary: Some(summary) })
}

fn profile_from(p: &ProfileArgs) -> Result<RadialFunction<f64>> {
    let theta = real("theta", required("theta", &p.theta, "a power profile")?)?;
    let m = real("m", &p.m)?;
    let f = match &p.log_exp {
        Some(e) => RadialFunction::log_power(theta, m, real("log-exp", e)?)?,
        None => RadialFunction::power(theta, m)?.with_scale(real("scale", &p.scale)?)?,
    };
    f.with_amplitude(real("amplitude", &p.amplitude)?)
}

fn radii(list: &[String]) -> Result<Vec<f64>> {
    list.iter().map(|r| real("radii", r)).collect()
}

pub fn potential(a: &PotentialArgs) -> Result<Output> {
    let cfg = quad_config(&a.quad)?;
    let f = profile_from(&a.profile)?;
    let need = |flag: &str, v: &Option<String>| -> Result<f64> { real(flag, required(flag, v, "this operator")?) };
    let mut rows = Vec::new();
    for r in radii(&a.radii)? {
        let value = match a.operator {
            Operator::Riesz => {
                let alpha = need("alpha", &a.alpha)?;
                match a.method {
                    RieszMethod::LayerCake => riesz_potential(&f, a.n, alpha, r, &cfg)?,
                    RieszMethod::Direct => riesz_potential_direct(&f, a.n, alpha, r, &cfg)?,
                }
            }
            Operator::Wolff => wolff_potential(&f, a.n, need("beta", &a.beta)?, need("gamma", &a.gamma)?, r, &cfg)?,
            Operator::Laplacian => radial_laplacian(&f, a.n, r)?,
            Operator::GammaLaplacian => radial_gamma_laplacian(&f, a.n, need("gamma", &a.gamma)?, r)?,
        };
        rows.push(record(vec![("r", float(r)), ("value", float(value))]));
    }
    Ok(Output::rows(rows))
}

fn family_label(i: usize, f: &FamilyPair<f64>) -> String {
    format!("{i}:{}", f.family_tag.name())
}

pub fn family(a: &FamilyArgs) -> Result<Output> {
    let spec = build_spec(&a.problem)?;
    let cfg = quad_config(&a.quad)?;
    let fams: Vec<FamilyPair<f64>> = family_catalog(&spec)?;
    let grid = if a.radii.is_empty() { log_grid(-2, 3, 4) } else { radii(&a.radii)? };
    let mut rows = Vec::new();
    for (i, fam) in fams.iter().enumerate() {
        let label = family_label(i, fam);
        let rate = |r: Option<&DecayRate<f64>>, key: &str| -> Vec<(String, Value)> {
            match r {
                Some(r) => vec![
                    (format!("{key}_two_theta"), float(r.two_theta)),
                    (format!("{key}_m"), float(r.m)),
                    (format!("{key}_log_corrected"), json!(r.log_corrected)),
                ],
                None => vec![
                    (format!("{key}_two_theta"), Value::Null),
                    (format!("{key}_m"), Value::Null),
                    (format!("{key}_log_corrected"), Value::Null),
                ],
            }
        };
        match a.detail {
            FamilyDetail::Catalog => {
                let mut rec = record(vec![("family", json!(label)), ("tag", json!(fam.family_tag.name()))]);
                rec.extend(rate(Some(&fam.rates.0), "u"));
                rec.extend(rate(fam.rates.1.as_ref(), "v"));
                rows.push(rec);
            }
            FamilyDetail::Profile => {
                let prof = coefficient_profile(&spec, fam, &grid, &cfg)?;
                for (j, r) in prof.radii.iter().enumerate() {
                    rows.push(record(vec![
                        ("family", json!(label)),
                        ("r", float(*r)),
                        ("c_u", float(prof.c_u[j])),
                        ("c_v", prof.c_v.as_ref().map(|c| float(c[j])).unwrap_or(Value::Null)),
                    ]));
                }
            }
            FamilyDetail::Report => {
                let prof = coefficient_profile(&spec, fam, &grid, &cfg)?;
                let logged = fam.rates.0.log_corrected || fam.rates.1.as_ref().is_some_and(|r| r.log_corrected);
                for (rep, comp) in profile_reports(&prof, logged).iter().zip(["u", "v"]) {
                    rows.push(record(vec![
                        ("family", json!(label)),
                        ("component", json!(comp)),
                        ("route", json!(format!("{:?}", prof.route))),
                        ("inf_c", float(rep.inf_c)),
                        ("sup_c", float(rep.sup_c)),
                        ("ratio", float(rep.ratio)),
                        ("limit_at_infinity", opt_float(rep.limit_at_infinity)),
                        ("verdict", json!(rep.verdict)),
                        ("offending_radius", opt_float(rep.offending_radius)),
                        ("grid_points", json!(rep.grid.len())),
                        ("note", rep.note.as_ref().map(|n| json!(n)).unwrap_or(Value::Null)),
                    ]));
                }
            }
        }
    }
    Ok(Output::rows(rows))
}

fn step_config(s: &StepArgs) -> Result<ShootConfig> {
    let cfg = ShootConfig {
        rel_tol: s.step_rel_tol,
        abs_tol: s.step_abs_tol,
        h_init: s.h_init,
        zero_tol: s.zero_tol,
        forcing: match s.forcing {
            ForcingKind::Power => Forcing::Power,
            ForcingKind::Zero => Forcing::Zero,
        },
        ..Default::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn outcome_fields(prefix: &str, o: &ShootOutcome<f64>) -> Vec<(String, Value)> {
    let s = o.state();
    let (degraded, fitted) = match o {
        ShootOutcome::UCrossed { degraded, .. } | ShootOutcome::VCrossed { degraded, .. } => (json!(degraded), Value::Null),
        ShootOutcome::AliveAt { fitted_decay_exponent, .. } => (Value::Null, opt_float(*fitted_decay_exponent)),
    };
    [
        ("outcome", json!(o.label())),
        ("r_cross", opt_float(o.crossing_radius())),
        ("degraded", degraded),
        ("r", float(s.r)),
        ("u", float(s.u)),
        ("du", float(s.du)),
        ("v", float(s.v)),
        ("dv", float(s.dv)),
        ("fitted_decay_exponent", fitted),
    ]
    .into_iter()
    .map(|(k, v)| (format!("{prefix}{k}"), v))
    .collect()
}

pub fn shoot(a: &ShootArgs) -> Result<Output> {
    let cfg = step_config(&a.step)?;
    let out = integrate(a.n, real("p", &a.p)?, real("a", &a.a)?, real("r-max", &a.r_max)?, &cfg)?;
    Ok(Output::rows(vec![outcome_fields("", &out).into_iter().collect()]))
}

pub fn threshold(a: &ThresholdArgs) -> Result<Output> {
    let cfg = step_config(&a.step)?;
    let res = find_threshold(a.n, real("p", &a.p)?, real("tol", &a.tol)?, real("r-max", &a.r_max)?, &cfg)?;
    let mut rec = record(vec![
        ("a_lo", float(res.bracket.0)),
        ("a_hi", float(res.bracket.1)),
        ("width", float(res.bracket.1 - res.bracket.0)),
        ("iterations", json!(res.iterations)),
        ("monotonicity_violations", json!(res.monotonicity_violations)),
        ("threshold_a", float(res.threshold_a)),
        ("trajectory_monotone", json!(res.trajectory_monotone)),
    ]);
    rec.extend(outcome_fields("lo_", &res.bracket_outcomes.0));
    rec.extend(outcome_fields("hi_", &res.bracket_outcomes.1));
    rec.extend(outcome_fields("threshold_", &res.threshold_trajectory));
    Ok(Output::rows(vec![rec]))
}

fn residual_record(label: &str, r: &IdentityResidual<f64>) -> Record {
    record(vec![
        ("identity", json!(label)),
        ("lhs", float(r.lhs)),
        ("rhs", float(r.rhs)),
        ("relative_residual", float(r.relative_residual)),
        ("tolerance_used", float(r.tolerance_used)),
    ])
}

fn obstruction_record(o: &Obstruction<Exact>) -> Record {
    record(vec![
        ("value", rational(&o.value)),
        ("obstructed", json!(o.obstructed)),
        ("boundary", json!(o.value == Exact::int(0))),
        ("exponent_condition", json!(o.exponent_condition)),
        ("consistent", json!(o.consistent)),
    ])
}

fn identity_profile(a: &IdentityArgs) -> Result<(RadialFunction<f64>, Option<f64>)> {
    match a.profile {
        ProfileKind::Bubble => Ok((liouville_core::families::bubble_profile(a.n)?, None)),
        ProfileKind::Power => Ok((profile_from(&a.shape)?, None)),
        ProfileKind::GammaExplicit => {
            let gamma = real("gamma", required("gamma", &a.gamma, "the gamma-explicit profile")?)?;
            let d = real("d", &a.d)?;
            let res = exact_solution_residual(ExactKind::GammaLaplaceExplicit { n: a.n, gamma, d, big_d: None }, &[1.0])?;
            Ok((res.profile, res.big_d))
        }
    }
}

pub fn identity(a: &IdentityArgs) -> Result<Output> {
    let cfg = quad_config(&a.quad)?;
    let need = |flag: &str, v: &Option<String>| -> Result<f64> { real(flag, required(flag, v, "this identity")?) };
    let need_exact = |flag: &str, v: &Option<String>| -> Result<Exact> { exact(flag, required(flag, v, "this identity")?) };
    let need_k = || a.k.ok_or_else(|| Error::Invalid("--k is required for this identity".into()));
    let rows = match a.kind {
        IdentityKind::ObstructionScalar => {
            vec![obstruction_record(&pohozaev_obstruction_scalar(a.n, need_k()?, &need_exact("p", &a.p)?, 0.0)?)]
        }
        IdentityKind::ObstructionSystem => vec![obstruction_record(&pohozaev_obstruction_system(
            a.n,
            need_k()?,
            &need_exact("p", &a.p)?,
            &need_exact("q", &a.q)?,
            0.0,
        )?)],
        IdentityKind::Chain => {
            let radius = real("radius", &a.radius)?;
            let u1 = if a.coeffs.is_empty() {
                EvenPolynomial::bump(radius, 2)
            } else {
                EvenPolynomial::new(a.coeffs.iter().map(|c| real("coeffs", c)).collect::<Result<_>>()?)
            };
            let rep = green_chain_residual(&u1, need_k()?, a.n, radius, &cfg)?;
            rep.members
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    record(vec![
                        ("member", json!(m.label)),
                        ("value", float(m.value)),
                        ("residual_to_next", opt_float(rep.residuals.get(i).map(|r| r.relative_residual))),
                    ])
                })
                .collect()
        }
        IdentityKind::Pohozaev => {
            let (u, _) = identity_profile(a)?;
            let rep = integral_pohozaev_residual(&u, a.n, need("alpha", &a.alpha)?, need("p", &a.p)?, &cfg)?;
            vec![residual_record("A=B", &rep.a_vs_b), residual_record("A=C", &rep.a_vs_c)]
        }
        IdentityKind::Energy => {
            let (u, _) = identity_profile(a)?;
            let gamma = a.gamma.as_deref().map(|g| real("gamma", g)).transpose()?.unwrap_or(2.0);
            vec![residual_record("grad-energy=potential-energy", &energy_balance_residual(&u, a.n, gamma, need("p", &a.p)?, &cfg)?)]
        }
        IdentityKind::ScaledEnergy => {
            let (u, _) = identity_profile(a)?;
            let r = scaled_energy_check(&u, need("mu", &a.mu)?, need("sigma", &a.sigma)?, need("e", &a.e)?, a.n, &cfg)?;
            vec![residual_record("scaled=unscaled", &r)]
        }
        IdentityKind::Scaling => {
            let problem = ProblemArgs {
                n: a.n,
                kernel: a.kernel,
                alpha: a.alpha.clone(),
                beta: a.beta.clone(),
                gamma: a.gamma.clone(),
                k: a.k,
                p: required("p", &a.p, "this identity")?.to_string(),
                q: a.q.clone(),
                coeff: Coeff::Constant,
                radial: false,
            };
            let s = scaling_exponents(&build_spec(&problem)?)?;
            let list = |v: &[Exact]| Value::Array(v.iter().map(rational).collect());
            vec![record(vec![
                ("sigma_equation", list(&s.sigma_equation)),
                ("sigma_energy", list(&s.sigma_energy)),
                ("invariant", json!(s.invariant)),
                ("sigma_energy_alt", s.sigma_energy_alt.as_deref().map(list).unwrap_or(Value::Null)),
                ("invariant_alt", s.invariant_alt.map(|b| json!(b)).unwrap_or(Value::Null)),
                ("stated_alt_condition", s.stated_alt_condition.map(|b| json!(b)).unwrap_or(Value::Null)),
            ])]
        }
        IdentityKind::ExactBubble | IdentityKind::ExactGamma => {
            let kind = if a.kind == IdentityKind::ExactBubble {
                ExactKind::Bubble { n: a.n }
            } else {
                ExactKind::GammaLaplaceExplicit {
                    n: a.n,
                    gamma: need("gamma", &a.gamma)?,
                    d: real("d", &a.d)?,
                    big_d: None,
                }
            };
            let grid = if a.radii.is_empty() { log_grid(-2, 3, 4) } else { radii(&a.radii)? };
            let res = exact_solution_residual(kind, &grid)?;
            vec![record(vec![
                ("max_relative_residual", float(res.max_relative_residual)),
                ("exponent", float(res.exponent)),
                ("amplitude", float(res.profile.amplitude())),
                ("big_d", opt_float(res.big_d)),
                ("grid_points", json!(grid.len())),
            ])]
        }
    };
    Ok(Output::rows(rows))
}
