//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always printed. It exits nonzero
//! when a criterion fails, unless the failure is listed in `KNOWN_DEVIATIONS` *and* the
//! measured value matches the analysis recorded there.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use liouville_core::decay::decay_sequence_for;
use liouville_core::families::{
    coefficient_profile, exact_solution_residual, family_catalog, log_grid, profile_reports, ExactKind, FamilyTag,
};
use liouville_core::identities::{
    energy_balance_residual, green_chain_residual, integral_pohozaev_residual, lebesgue_energy,
    pohozaev_obstruction_scalar, pohozaev_obstruction_system, scaled_energy_check, scaling_exponents, EvenPolynomial,
};
use liouville_core::radial::{riesz_potential, wolff_potential};
use liouville_core::shooting::{find_threshold, integrate, ShootConfig, ShootOutcome};
use liouville_core::{
    classify_variable_coeff_scalar, classify_variable_coeff_system, scalar_decay_sequence, CoeffMode, Exact, Kernel,
    Mechanism, Outcome, ProblemSpec, QuadratureConfig, RadialFunction, Scalar, Verdict,
};

/// Criterion id and the measured quantity that explains the expected failure.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    4,
    "the Riesz-integral coefficient u/I_2(u^p) of the slow Lane-Emden family has sup/inf = 3, not 5; \
     c_diff/c_riesz is constant only for constant c",
)];

struct Suite {
    unexpected: Vec<u32>,
}

impl Suite {
    fn report(&mut self, id: u32, title: &str, pass: bool, detail: String, explained: bool) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2}: {title} -- {detail}");
        if !pass {
            match KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == id) {
                Some((_, why)) if explained => println!("     known deviation: {why}"),
                _ => self.unexpected.push(id),
            }
        }
    }
}

fn q(a: i64, b: i64) -> Exact {
    Exact::ratio(a, b)
}

fn quarters() -> Vec<Exact> {
    (1..=24).map(|k| q(k, 4)).collect()
}

fn riesz_grid() -> Vec<(u32, Exact)> {
    let mut out = vec![];
    for n in 3u32..=10 {
        for a in [q(1, 2), q(1, 1), q(2, 1), q(3, 1)] {
            if a < Exact::int(n as i64) {
                out.push((n, a));
            }
        }
    }
    out
}

/// `(n, β, γ)` Wolff points with `γ < 2`.
fn wolff_grid() -> Vec<(u32, Exact, Exact)> {
    let mut out = vec![];
    for n in 3u32..=10 {
        for b in [q(1, 2), q(1, 1)] {
            for g in [q(3, 2), q(7, 4)] {
                out.push((n, b.clone(), g));
            }
        }
    }
    out
}

fn spec(n: u32, kernel: Kernel<Exact>, p: &Exact, qq: Option<&Exact>, mode: CoeffMode) -> ProblemSpec<Exact> {
    ProblemSpec::new(n, kernel, p.clone(), qq.cloned(), mode).expect("grid point is valid")
}

fn classify(s: &ProblemSpec<Exact>) -> Verdict<Exact> {
    if s.is_system() { classify_variable_coeff_system(s) } else { classify_variable_coeff_scalar(s) }
        .expect("classifier accepts grid point")
}

/// Expected verdict from the inequalities: `Some(None)` exists, `Some(Some(m))` not.
#[derive(Debug, PartialEq)]
enum Expect {
    Exists,
    Not(Mechanism),
}

fn from_margin(exists: bool, boundary: bool) -> Expect {
    if exists {
        Expect::Exists
    } else if boundary {
        Expect::Not(Mechanism::CriticalIntegralArgument)
    } else {
        Expect::Not(Mechanism::IterationBlowup)
    }
}

/// Scalar: `p` against `n(γ-1)/(n-βγ)` (Riesz: `γ = 2`, `β = α/2`).
fn oracle_scalar(n: u32, bg: &Exact, g1: &Exact, p: &Exact) -> Expect {
    let nn = Exact::int(n as i64);
    let serrin = nn.clone() * g1.clone() / (nn - bg.clone());
    from_margin(*p > serrin, *p == serrin)
}

/// System: `pq > (γ-1)²` and `max{βγ(p+γ-1), βγ(q+γ-1)} / (pq-(γ-1)²) < (n-βγ)/(γ-1)`.
fn oracle_system(n: u32, bg: &Exact, g1: &Exact, p: &Exact, qq: &Exact) -> Expect {
    let det = p.clone() * qq.clone() - g1.clone() * g1.clone();
    if det <= Exact::int(0) {
        return Expect::Not(Mechanism::IterationBlowup);
    }
    let top = std::cmp::max(p.clone(), qq.clone()) + g1.clone();
    let lhs = bg.clone() * top / det;
    let bound = (Exact::int(n as i64) - bg.clone()) / g1.clone();
    from_margin(lhs < bound, lhs == bound)
}

fn observed(v: &Verdict<Exact>) -> Expect {
    match &v.outcome {
        Outcome::Exists { .. } => Expect::Exists,
        Outcome::NotExists { mechanism, .. } => Expect::Not(*mechanism),
        Outcome::Open { .. } => Expect::Not(Mechanism::PartialResult),
    }
}

/// Every variable-coefficient spec of the criterion-1 grid with its kernel parameters.
fn grid_specs() -> Vec<(ProblemSpec<Exact>, Exact, Exact)> {
    let ps = quarters();
    let mut out = vec![];
    let mut push = |n: u32, kernel: Kernel<Exact>, bg: Exact, g1: Exact| {
        for p in &ps {
            out.push((spec(n, kernel.clone(), p, None, CoeffMode::DoubleBounded), bg.clone(), g1.clone()));
            for qq in &ps {
                out.push((spec(n, kernel.clone(), p, Some(qq), CoeffMode::DoubleBounded), bg.clone(), g1.clone()));
            }
        }
    };
    for (n, a) in riesz_grid() {
        push(n, Kernel::Riesz { alpha: a.clone() }, a, Exact::int(1));
    }
    for (n, b, g) in wolff_grid() {
        let bg = b.clone() * g.clone();
        push(n, Kernel::Wolff { beta: b, gamma: g.clone() }, bg, g - Exact::int(1));
    }
    out
}

fn criterion_1(s: &mut Suite) {
    let t = Instant::now();
    let specs = grid_specs();
    let mut mismatches = 0;
    for (sp, bg, g1) in &specs {
        let want = match sp.q() {
            None => oracle_scalar(sp.n(), bg, g1, sp.p()),
            Some(qq) => oracle_system(sp.n(), bg, g1, sp.p(), qq),
        };
        if observed(&classify(sp)) != want {
            mismatches += 1;
            if mismatches <= 5 {
                println!("     mismatch: n={} p={} q={:?} kernel={:?}", sp.n(), sp.p(), sp.q(), sp.kernel());
            }
        }
    }
    let el = t.elapsed();
    s.report(
        1,
        "classification exactness",
        mismatches == 0 && el < Duration::from_secs(5),
        format!("{} specs, {mismatches} mismatches, {:.2}s (limit 5s)", specs.len(), el.as_secs_f64()),
        false,
    );
}

fn criterion_2(s: &mut Suite) {
    let t = Instant::now();
    let ps = quarters();
    let (mut verdicts, mut sequences, mut total) = (0, 0, 0);
    for (n, a) in riesz_grid() {
        let r = Kernel::Riesz { alpha: a.clone() };
        let w = Kernel::Wolff { beta: a.clone() / Exact::int(2), gamma: Exact::int(2) };
        for p in &ps {
            let mut cases = vec![None];
            cases.extend(ps.iter().map(Some));
            for qq in cases {
                total += 1;
                let sr = spec(n, r.clone(), p, qq, CoeffMode::DoubleBounded);
                let sw = spec(n, w.clone(), p, qq, CoeffMode::DoubleBounded);
                let (vr, vw) = (classify(&sr), classify(&sw));
                if vr.outcome != vw.outcome {
                    verdicts += 1;
                }
                let (dr, dw) = (decay_sequence_for(&sr, 64).unwrap(), decay_sequence_for(&sw, 64).unwrap());
                if dr.a != dw.a || dr.b != dw.b || dr.first_nonpositive != dw.first_nonpositive {
                    sequences += 1;
                }
            }
        }
    }
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for (n, alpha) in [(3u32, 2.0), (5, 2.0), (4, 1.0), (6, 3.0)] {
        for (theta, x) in [(2.0, 0.0), (2.5, 0.7), (3.0, 2.0), (1.75, 5.0), (4.0, 20.0)] {
            let g = RadialFunction::power(theta, 2.0).unwrap();
            let ri = riesz_potential(&g, n, alpha, x, &cfg).unwrap();
            let wo = wolff_potential(&g, n, alpha / 2.0, 2.0, x, &cfg).unwrap();
            worst = worst.max(((n as f64 - alpha) * wo - ri).abs() / ri.abs());
            points += 1;
        }
    }
    let el = t.elapsed();
    s.report(
        2,
        "Wolff(alpha/2, 2) reduces to Riesz(alpha)",
        verdicts == 0 && sequences == 0 && worst < 1e-6 && el < Duration::from_secs(60),
        format!(
            "{total} specs: {verdicts} verdict / {sequences} sequence mismatches; {points} potentials, max rel {worst:.2e}; {:.2}s",
            el.as_secs_f64()
        ),
        false,
    );
}

fn criterion_3(s: &mut Suite) {
    let (mut blowups, mut missed, mut exists, mut spurious) = (0, 0, 0, 0);
    let mut worst_residual: f64 = 0.0;
    for (sp, _, _) in grid_specs() {
        let rep = decay_sequence_for(&sp, 64).unwrap();
        worst_residual = worst_residual.max(rep.closed_form_max_residual);
        match observed(&classify(&sp)) {
            Expect::Not(Mechanism::IterationBlowup) => {
                blowups += 1;
                if rep.first_nonpositive.is_none() {
                    missed += 1;
                }
            }
            Expect::Exists => {
                exists += 1;
                if rep.first_nonpositive.is_some() {
                    spurious += 1;
                }
            }
            _ => {}
        }
    }
    let worked = scalar_decay_sequence(5, &Exact::int(1), &Exact::int(2), &q(3, 2), 64).unwrap();
    let expected = [q(3, 1), q(5, 2), q(7, 4), q(5, 8), q(-17, 16)];
    let worked_ok = worked.a[..5] == expected;
    s.report(
        3,
        "decay-iteration certificates",
        missed == 0 && spurious == 0 && worst_residual < 1e-9 && worked_ok,
        format!(
            "{blowups} blow-up points ({missed} uncertified), {exists} existence points ({spurious} spurious), \
             max closed-form residual {worst_residual:.1e}, worked sequence {}",
            if worked_ok { "exact" } else { "WRONG" }
        ),
        false,
    );
}

fn criterion_4(s: &mut Suite) {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut grid = log_grid::<f64>(-2, 6, 4);
    grid.extend([0.5, 1.0, 2.0, 5.0_f64.sqrt()]);
    grid.sort_by(f64::total_cmp);

    // Lane-Emden slow family through the Laplacian
    let le = spec(5, Kernel::PolyLaplace { k: 1 }, &q(2, 1), None, CoeffMode::DoubleBounded);
    let slow = family_catalog::<_, f64>(&le).unwrap().into_iter().find(|f| f.family_tag == FamilyTag::Slow).unwrap();
    let prof = coefficient_profile(&le, &slow, &grid, &cfg).unwrap();
    let analytic_err = grid
        .iter()
        .zip(&prof.c_u)
        .map(|(r, c)| (c - 2.0 * (r * r + 5.0) / (1.0 + r * r)).abs())
        .fold(0.0, f64::max);
    let rep = &profile_reports(&prof, false)[0];
    let le_ok = (rep.inf_c - 2.0).abs() < 1e-9 && (rep.sup_c - 10.0).abs() < 1e-9 && analytic_err < 1e-9 && rep.verdict;

    // same family through the Newton-kernel integral
    let rz = spec(5, Kernel::Riesz { alpha: Exact::int(2) }, &q(2, 1), None, CoeffMode::DoubleBounded);
    let slow_r = family_catalog::<_, f64>(&rz).unwrap().into_iter().find(|f| f.family_tag == FamilyTag::Slow).unwrap();
    let rep_r = &profile_reports(&coefficient_profile(&rz, &slow_r, &grid, &cfg).unwrap(), false)[0];
    let riesz_claim = (rep_r.ratio - 5.0).abs() < 1e-3;
    let riesz_as_analysed = (rep_r.ratio - 3.0).abs() < 1e-3;

    // system families: slow-slow, fast-fast, log-corrected at p = q = 5; mixed needs p != q
    let mut fams = vec![];
    for (p, qq) in [(q(5, 1), q(5, 1)), (q(3, 2), q(5, 1))] {
        let sp = spec(5, Kernel::Riesz { alpha: Exact::int(2) }, &p, Some(&qq), CoeffMode::DoubleBounded);
        for f in family_catalog::<_, f64>(&sp).unwrap() {
            let is_new = !fams.iter().any(|(tag, _, _): &(FamilyTag, bool, f64)| tag == &f.family_tag);
            let wanted = matches!(
                f.family_tag,
                FamilyTag::SlowSlow | FamilyTag::FastFast | FamilyTag::LogCorrected { .. } | FamilyTag::MixedUFastVFast { .. }
            );
            if !(is_new && wanted) || (p != qq && f.family_tag != FamilyTag::MixedUFastVFast { mirrored: false }) {
                continue;
            }
            let log = matches!(f.family_tag, FamilyTag::LogCorrected { .. });
            let reps = profile_reports(&coefficient_profile(&sp, &f, &grid, &cfg).unwrap(), log);
            let ok = reps.iter().all(|r| r.verdict && r.ratio.is_finite());
            let worst = reps.iter().map(|r| r.ratio).fold(0.0, f64::max);
            fams.push((f.family_tag, ok, worst));
        }
    }
    let sys_ok = fams.len() == 4 && fams.iter().all(|f| f.1);
    let el = t.elapsed();
    let in_time = el < Duration::from_secs(300);
    let fam_text: Vec<String> = fams.iter().map(|(t, ok, r)| format!("{}:{}(ratio {r:.3})", t.name(), ok)).collect();
    s.report(
        4,
        "double-bound verification",
        le_ok && riesz_claim && sys_ok && in_time,
        format!(
            "Lane-Emden inf {:.12} sup {:.12} (analytic max err {analytic_err:.1e}); Riesz-route ratio {:.6} (stated 5); \
             systems on [0, 1e6]: {}; {:.1}s",
            rep.inf_c,
            rep.sup_c,
            rep_r.ratio,
            fam_text.join(", "),
            el.as_secs_f64()
        ),
        le_ok && sys_ok && in_time && riesz_as_analysed,
    );
}

fn tight() -> QuadratureConfig {
    QuadratureConfig { rel_tol: 1e-11, abs_tol: 1e-14, ..Default::default() }
}

fn criterion_5(s: &mut Suite) {
    let cfg = tight();
    let radii: Vec<f64> = vec![0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 3.5, 7.0, 15.0, 40.0];
    let pde = exact_solution_residual(ExactKind::Bubble { n: 3 }, &radii).unwrap().max_relative_residual;
    // u⁵ of the unnormalised profile (1+r²)^{-1/2}
    let g = RadialFunction::power(2.5, 2.0).unwrap();
    let mut riesz_err: f64 = 0.0;
    for &x in &radii {
        let v = riesz_potential(&g, 3, 2.0, x, &cfg).unwrap();
        let want = 4.0 * PI / 3.0 / (1.0 + x * x).sqrt();
        riesz_err = riesz_err.max((v - want).abs() / want);
    }
    let u = liouville_core::families::bubble_profile::<f64>(3).unwrap();
    let energy_exact = 3f64.powf(1.5) * PI * PI / 4.0;
    let bal = energy_balance_residual(&u, 3, 2.0, 5.0, &cfg).unwrap();
    let l6 = lebesgue_energy(&u, 3, 6.0, &cfg).unwrap();
    let energy_err = ((bal.lhs - energy_exact).abs().max((l6 - energy_exact).abs())) / energy_exact;
    let poh = integral_pohozaev_residual(&u, 3, 2.0, 5.0, &cfg).unwrap();
    let poh_res = poh.a_vs_b.relative_residual.max(poh.a_vs_c.relative_residual);
    let control = integral_pohozaev_residual(&u, 3, 2.0, 4.5, &cfg).unwrap();
    s.report(
        5,
        "bubble identities",
        pde < 1e-10 && riesz_err < 1e-6 && energy_err < 1e-6 && bal.relative_residual < 1e-6 && poh_res < 1e-6
            && control.a_vs_b.relative_residual > 0.05,
        format!(
            "PDE residual {pde:.1e}; Newton identity max rel {riesz_err:.1e} at 10 radii; energies {:.6}/{l6:.6} \
             vs {energy_exact:.6} (rel {energy_err:.1e}); Pohozaev {poh_res:.1e}; control p=4.5 A-vs-B {:.3}",
            bal.lhs, control.a_vs_b.relative_residual
        ),
        false,
    );
}

fn criterion_6(s: &mut Suite) {
    let t = Instant::now();
    let cfg = ShootConfig::default();
    let hi = integrate(5, 10.0, 20.0, 50.0, &cfg).unwrap();
    let lo = integrate(5, 10.0, 9.76e-5, 50.0, &cfg).unwrap();
    let hi_ok = matches!(hi, ShootOutcome::UCrossed { .. }) && hi.crossing_radius().unwrap() <= 1.001;
    let lo_ok = matches!(lo, ShootOutcome::VCrossed { .. }) && lo.crossing_radius().unwrap() <= 1.001;
    let th = find_threshold(5, 10.0, 1e-8, 50.0, &cfg).unwrap();
    let width = th.bracket.1 - th.bracket.0;
    let positive = match &th.threshold_trajectory {
        ShootOutcome::AliveAt { r_max, state, .. } => *r_max >= 50.0 && state.u > 0.0 && state.v > 0.0,
        _ => false,
    };
    let el = t.elapsed();
    s.report(
        6,
        "shooting brackets and threshold",
        hi_ok && lo_ok && width < 1e-8 && th.iterations <= 40 && positive && th.trajectory_monotone
            && el < Duration::from_secs(30),
        format!(
            "a=20 -> {} at {:.4}; a=9.76e-5 -> {} at {:.4}; threshold a*={:.10} width {width:.2e} in {} iterations, \
             trajectory positive={positive} decreasing={}; {:.2}s",
            hi.label(),
            hi.crossing_radius().unwrap_or(f64::NAN),
            lo.label(),
            lo.crossing_radius().unwrap_or(f64::NAN),
            th.threshold_a,
            th.iterations,
            th.trajectory_monotone,
            el.as_secs_f64()
        ),
        false,
    );
}

fn criterion_7(s: &mut Suite) {
    let ps = quarters();
    let (mut checked, mut mismatches) = (0, 0);
    let zero = Exact::int(0);
    let one = Exact::int(1);
    for n in 3u32..=10 {
        let nn = Exact::int(n as i64);
        for k in 1u32..=3 {
            if 2 * k >= n {
                continue;
            }
            let kk = Exact::int(2 * k as i64);
            let sob = (nn.clone() + kk.clone()) / (nn.clone() - kk.clone());
            let hyper = (nn.clone() - kk) / nn.clone();
            for p in &ps {
                checked += 1;
                let o = pohozaev_obstruction_scalar(n, k, p, 0.0).unwrap();
                if (o.value <= zero) != (*p >= sob) {
                    mismatches += 1;
                }
                for qq in &ps {
                    checked += 1;
                    let o = pohozaev_obstruction_system(n, k, p, qq, 0.0).unwrap();
                    let sum = one.clone() / (p.clone() + one.clone()) + one.clone() / (qq.clone() + one.clone());
                    if (o.value <= zero) != (sum <= hyper) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    s.report(
        7,
        "Pohozaev obstruction equivalence",
        mismatches == 0,
        format!("{checked} exact comparisons, {mismatches} mismatches"),
        false,
    );
}

fn criterion_8(s: &mut Suite) {
    let rep = green_chain_residual(&EvenPolynomial::bump(1.0f64, 2), 2, 3, 1.0, &tight()).unwrap();
    let want = 256.0 * PI / 7.0;
    let worst = rep.members.iter().map(|m| (m.value - want).abs() / want).fold(0.0, f64::max);
    s.report(
        8,
        "green-chain identity",
        worst < 1e-8 && !rep.members.is_empty(),
        format!("{} chain integrals, max rel deviation from 256pi/7 {worst:.1e}", rep.members.len()),
        false,
    );
}

fn criterion_9(s: &mut Suite) {
    let ps = quarters();
    let one = Exact::int(1);
    let (mut checked, mut mismatches, mut undefined) = (0, 0, 0);
    let mut check = |got: bool, want: bool| {
        checked += 1;
        if got != want {
            mismatches += 1;
        }
    };
    // (n, kernel, βγ, γ-1, has L^{p+1} alternative)
    let mut kernels: Vec<(u32, Kernel<Exact>, Exact, Exact, bool)> = vec![];
    for (n, a) in riesz_grid() {
        kernels.push((n, Kernel::Riesz { alpha: a.clone() }, a, Exact::int(1), false));
    }
    for n in 3u32..=10 {
        kernels.push((n, Kernel::PolyLaplace { k: 1 }, Exact::int(2), Exact::int(1), false));
        for (b, g) in [(q(1, 2), q(3, 2)), (q(1, 1), q(3, 2)), (q(1, 1), q(7, 4)), (q(1, 2), q(2, 1))] {
            kernels.push((n, Kernel::Wolff { beta: b.clone(), gamma: g.clone() }, b * g.clone(), g - one.clone(), true));
        }
        for g in [q(5, 4), q(3, 2), q(7, 4), q(2, 1)] {
            kernels.push((n, Kernel::GammaLaplace { gamma: g.clone() }, g.clone(), g - one.clone(), true));
        }
    }
    for (n, kernel, bg, g1, alt) in &kernels {
        let nn = Exact::int(*n as i64);
        for p in &ps {
            let mut cases = vec![None];
            cases.extend(ps.iter().map(Some));
            for qq in cases {
                let sp = spec(*n, kernel.clone(), p, qq, CoeffMode::Constant);
                let Ok(sc) = scaling_exponents(&sp) else {
                    // only the degenerate linear systems may be refused
                    let degenerate = match qq {
                        None => *p == *g1,
                        Some(qq) => p.clone() * qq.clone() == g1.clone() * g1.clone(),
                    };
                    check(true, degenerate);
                    undefined += 1;
                    continue;
                };
                match qq {
                    None => {
                        // (3.2)-type: p = (n+βγ)/(n-βγ)·(γ-1); alternative p = nγ/(n-βγ) - 1
                        let main = (nn.clone() + bg.clone()) / (nn.clone() - bg.clone()) * g1.clone();
                        check(sc.invariant, *p == main);
                        if *alt {
                            let gamma = g1.clone() + one.clone();
                            let star = nn.clone() * gamma / (nn.clone() - bg.clone()) - one.clone();
                            check(sc.invariant_alt == Some(true), *p == star);
                        }
                    }
                    Some(qq) => {
                        // hyperbola 1/(p+γ-1) + 1/(q+γ-1) = (n-βγ)/(n(γ-1))
                        let lhs = one.clone() / (p.clone() + g1.clone()) + one.clone() / (qq.clone() + g1.clone());
                        let rhs = (nn.clone() - bg.clone()) / (nn.clone() * g1.clone());
                        check(sc.invariant, lhs == rhs);
                        if *alt {
                            check(sc.stated_alt_condition == Some(true), *p == *qq || *g1 == one);
                        }
                    }
                }
            }
        }
    }
    let cfg = tight();
    let bubble = liouville_core::families::bubble_profile::<f64>(3).unwrap();
    let quartic = RadialFunction::power(2.0, 2.0).unwrap();
    let trivial = scaled_energy_check(&quartic, 1.0, 0.7, 1.5, 3, &cfg).unwrap();
    let mass = scaled_energy_check(&quartic, 2.0, 0.0, 1.0, 3, &cfg).unwrap();
    let energy = scaled_energy_check(&bubble, 3.0, 0.5, 6.0, 3, &cfg).unwrap();
    let scaled_ok = trivial.relative_residual == 0.0 && mass.relative_residual < 1e-8 && energy.relative_residual < 1e-8;
    s.report(
        9,
        "scaling algebra",
        mismatches == 0 && scaled_ok,
        format!(
            "{checked} exact flag checks ({undefined} degenerate refusals), {mismatches} mismatches; scaled-energy \
             residuals {:.1e} / {:.1e} / {:.1e}",
            trivial.relative_residual, mass.relative_residual, energy.relative_residual
        ),
        false,
    );
}

fn scratch_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("liouville-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

/// CLI invocations covering every criterion above.
fn cli_suite() -> Vec<Vec<&'static str>> {
    vec![
        vec!["sweep", "--over", "p=1/4:6:1/4", "--over", "n=3,5,10", "classify", "--alpha", "2"],
        vec!["sweep", "--over", "q=1/4:6:1/4", "classify", "--n", "5", "--alpha", "2", "--p", "5/3"],
        vec!["classify", "--kernel", "wolff", "--n", "5", "--beta", "1", "--gamma", "2", "--p", "2"],
        vec!["potential", "--operator", "wolff", "--n", "5", "--beta", "1", "--gamma", "2", "--theta", "5/2", "--radii", "0,0.7,2,20"],
        vec!["potential", "--operator", "riesz", "--n", "5", "--alpha", "2", "--theta", "5/2", "--radii", "0,0.7,2,20"],
        vec!["iterate", "--n", "5", "--alpha", "2", "--p", "3/2"],
        vec!["iterate", "--n", "5", "--alpha", "2", "--p", "1", "--q", "1"],
        vec!["family", "--n", "5", "--kernel", "poly-laplace", "--k", "1", "--p", "2"],
        vec!["family", "--n", "5", "--alpha", "2", "--p", "5", "--q", "5", "--detail", "report"],
        vec!["identity", "exact-bubble", "--n", "3", "--radii", "0,0.5,1,10"],
        vec!["potential", "--operator", "riesz", "--n", "3", "--alpha", "2", "--theta", "5/2", "--radii", "0,1,3,40"],
        vec!["identity", "energy", "--n", "3", "--gamma", "2", "--p", "5"],
        vec!["identity", "pohozaev", "--n", "3", "--alpha", "2", "--p", "9/2"],
        vec!["shoot", "--n", "5", "--p", "10", "--a", "20"],
        vec!["threshold", "--n", "5", "--p", "10", "--tol", "1e-8"],
        vec!["sweep", "--over", "p=1/4:6:1/4", "identity", "obstruction-scalar", "--n", "7", "--k", "3"],
        vec!["identity", "chain", "--n", "3", "--k", "2"],
        vec!["identity", "scaling", "--kernel", "gamma-laplace", "--n", "5", "--gamma", "3/2", "--p", "2", "--q", "2"],
        vec!["identity", "scaled-energy", "--n", "3", "--mu", "3", "--sigma", "1/2", "--e", "6"],
    ]
}

fn run_bin(args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_liouville")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10(s: &mut Suite) {
    let dir = scratch_dir();
    let (mut runs, mut identical, mut failures) = (0, 0, vec![]);
    for (i, args) in cli_suite().into_iter().enumerate() {
        for format in ["json", "csv"] {
            let mut argv = vec!["--format".to_string(), format.to_string()];
            argv.extend(args.iter().map(|s| s.to_string()));
            let (code, first) = run_bin(&argv);
            runs += 1;
            if code != 0 {
                failures.push(format!("#{i} {format} exit {code}"));
                continue;
            }
            let path = dir.join(format!("run{i}.{format}"));
            std::fs::write(&path, &first).unwrap();
            let (code, replay) = run_bin(&["--manifest".to_string(), path.display().to_string()]);
            if code == 0 && replay == first {
                identical += 1;
            } else {
                failures.push(format!("#{i} {format} replay differs (exit {code})"));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    s.report(
        10,
        "CLI manifest replay is byte-identical",
        failures.is_empty(),
        format!("{identical}/{runs} documents replayed identically{}", if failures.is_empty() { String::new() } else { format!("; {}", failures.join(", ")) }),
        false,
    );
}

fn main() {
    let mut s = Suite { unexpected: vec![] };
    let t = Instant::now();
    criterion_1(&mut s);
    criterion_2(&mut s);
    criterion_3(&mut s);
    criterion_4(&mut s);
    criterion_5(&mut s);
    criterion_6(&mut s);
    criterion_7(&mut s);
    criterion_8(&mut s);
    criterion_9(&mut s);
    criterion_10(&mut s);
    println!("acceptance finished in {:.1}s", t.elapsed().as_secs_f64());
    if !s.unexpected.is_empty() {
        println!("unexpected failures: {:?}", s.unexpected);
        std::process::exit(1);
    }
}
