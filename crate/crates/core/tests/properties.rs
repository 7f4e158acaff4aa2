use liouville_core::families::{coefficient_profile, family_catalog, FamilyTag};
use liouville_core::identities::{pohozaev_obstruction_scalar, pohozaev_obstruction_system, scaling_exponents};
use liouville_core::param_space::{Component, RateRole};
use liouville_core::radial::{ball_mass, radial_laplacian, riesz_potential, riesz_potential_direct, sphere_area};
use liouville_core::shooting::{integrate, integrate_trajectory, ShootConfig, ShootOutcome};
use liouville_core::{
    classify_finite_energy_system, classify_variable_coeff_scalar, classify_variable_coeff_system, critical_set,
    decay::decay_sequence_for, decay::strictly_decreasing, CoeffMode, Exact, Kernel, Mechanism, Outcome, ProblemSpec,
    QuadratureConfig, RadialFunction, Scalar,
};
use proptest::prelude::*;

fn q(num: i64, den: i64) -> Exact {
    Exact::ratio(num, den)
}

/// `(n, α)` with `α ∈ {1/2, 1, 2, 3}`, `α < n`.
fn riesz_pair() -> impl Strategy<Value = (u32, Exact)> {
    (3u32..=10, prop::sample::select(vec![(1, 2), (1, 1), (2, 1), (3, 1)]))
        .prop_filter("alpha < n", |(n, (a, b))| a < &(*n as i64 * b))
        .prop_map(|(n, (a, b))| (n, q(a, b)))
}

/// Quarter grid `1/4 .. 6`.
fn quarter() -> impl Strategy<Value = Exact> {
    (1i64..=24).prop_map(|k| q(k, 4))
}

fn riesz(n: u32, alpha: &Exact, p: &Exact, qq: Option<&Exact>, mode: CoeffMode) -> ProblemSpec<Exact> {
    ProblemSpec::new(n, Kernel::Riesz { alpha: alpha.clone() }, p.clone(), qq.cloned(), mode).unwrap()
}

fn rates(o: &Outcome<Exact>) -> Vec<(Exact, RateRole, Component)> {
    match o {
        Outcome::Exists { witness_rates } => {
            witness_rates.iter().map(|r| (r.two_theta.clone(), r.role, r.component)).collect()
        }
        _ => vec![],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn riesz_scalar_exists_iff_above_serrin((n, alpha) in riesz_pair(), p in quarter()) {
        let v = classify_variable_coeff_scalar(&riesz(n, &alpha, &p, None, CoeffMode::DoubleBounded)).unwrap();
        let nn = Exact::int(n as i64);
        prop_assert_eq!(v.exists_outcome(), p > nn.clone() / (nn - alpha));
    }

    #[test]
    fn wolff_at_gamma_two_matches_riesz((n, alpha) in riesz_pair(), p in quarter(), qq in prop::option::of(quarter())) {
        let r = riesz(n, &alpha, &p, qq.as_ref(), CoeffMode::DoubleBounded);
        let w = ProblemSpec::new(
            n,
            Kernel::Wolff { beta: alpha.clone() / Exact::int(2), gamma: Exact::int(2) },
            p.clone(), qq.clone(), CoeffMode::DoubleBounded,
        ).unwrap();
        let (vr, vw) = if qq.is_some() {
            (classify_variable_coeff_system(&r).unwrap(), classify_variable_coeff_system(&w).unwrap())
        } else {
            (classify_variable_coeff_scalar(&r).unwrap(), classify_variable_coeff_scalar(&w).unwrap())
        };
        prop_assert_eq!(vr.outcome.label(), vw.outcome.label());
        prop_assert_eq!(rates(&vr.outcome), rates(&vw.outcome));
    }

    #[test]
    fn poly_laplace_matches_riesz_of_order_2k(n in 3u32..=12, k in 1u32..=5, p in quarter(), qq in prop::option::of(quarter())) {
        prop_assume!(2 * k < n);
        let one = Exact::int(1);
        let superlinear = match &qq { Some(qq) => p.clone() * qq.clone() > one, None => p > one };
        prop_assume!(superlinear);
        let alpha = Exact::int(2 * k as i64);
        let r = riesz(n, &alpha, &p, qq.as_ref(), CoeffMode::DoubleBounded);
        let l = ProblemSpec::new(n, Kernel::PolyLaplace { k }, p.clone(), qq.clone(), CoeffMode::DoubleBounded).unwrap();
        let (vr, vl) = if qq.is_some() {
            (classify_variable_coeff_system(&r).unwrap(), classify_variable_coeff_system(&l).unwrap())
        } else {
            (classify_variable_coeff_scalar(&r).unwrap(), classify_variable_coeff_scalar(&l).unwrap())
        };
        prop_assert_eq!(vr.outcome.label(), vl.outcome.label());
    }

    #[test]
    fn slow_rates_satisfy_exponent_balance((n, alpha) in riesz_pair(), p in quarter(), qq in prop::option::of(quarter())) {
        let spec = riesz(n, &alpha, &p, qq.as_ref(), CoeffMode::DoubleBounded);
        let one = Exact::int(1);
        match &qq {
            None => {
                let v = classify_variable_coeff_scalar(&spec).unwrap();
                for (t, role, _) in rates(&v.outcome) {
                    if role == RateRole::Slow {
                        prop_assert_eq!(t * (p.clone() - one.clone()), alpha.clone());
                    }
                }
            }
            Some(qq) => {
                let v = classify_variable_coeff_system(&spec).unwrap();
                let pq1 = p.clone() * qq.clone() - one.clone();
                for (t, role, c) in rates(&v.outcome) {
                    if role != RateRole::Slow {
                        continue;
                    }
                    let rhs = match c {
                        Component::U => alpha.clone() * (qq.clone() + one.clone()),
                        Component::V => alpha.clone() * (p.clone() + one.clone()),
                        Component::Single => return Err(TestCaseError::fail("scalar rate in a system verdict")),
                    };
                    prop_assert_eq!(t * pq1.clone(), rhs);
                }
            }
        }
    }

    #[test]
    fn finite_energy_system_is_symmetric((n, alpha) in riesz_pair(), p in quarter(), qq in quarter()) {
        let a = classify_finite_energy_system(&riesz(n, &alpha, &p, Some(&qq), CoeffMode::Constant)).unwrap().0;
        let b = classify_finite_energy_system(&riesz(n, &alpha, &qq, Some(&p), CoeffMode::Constant)).unwrap().0;
        prop_assert_eq!(a.outcome.label(), b.outcome.label());
    }

    #[test]
    fn decay_blowup_matches_classifier((n, alpha) in riesz_pair(), p in quarter(), qq in prop::option::of(quarter())) {
        let spec = riesz(n, &alpha, &p, qq.as_ref(), CoeffMode::DoubleBounded);
        let v = if qq.is_some() {
            classify_variable_coeff_system(&spec).unwrap()
        } else {
            classify_variable_coeff_scalar(&spec).unwrap()
        };
        let report = decay_sequence_for(&spec, 64).unwrap();
        prop_assert!(report.closed_form_max_residual < 1e-9);
        match v.mechanism() {
            Some(Mechanism::IterationBlowup) => prop_assert!(report.first_nonpositive.is_some()),
            Some(_) => {}
            None => prop_assert!(report.first_nonpositive.is_none()),
        }
        if qq.is_none() && p < critical_set(&spec).serrin {
            prop_assert!(strictly_decreasing(&report.a));
        }
    }

    #[test]
    fn obstruction_sign_matches_sobolev_scalar(n in 3u32..=12, k in 1u32..=5, p in quarter()) {
        prop_assume!(2 * k < n);
        let o = pohozaev_obstruction_scalar(n, k, &p, 0.0).unwrap();
        let (nn, kk) = (Exact::int(n as i64), Exact::int(2 * k as i64));
        let sob = (nn.clone() + kk.clone()) / (nn - kk);
        prop_assert_eq!(o.value <= Exact::int(0), p >= sob);
    }

    #[test]
    fn obstruction_sign_matches_hyperbola_system(n in 3u32..=12, k in 1u32..=5, p in quarter(), qq in quarter()) {
        prop_assume!(2 * k < n);
        let o = pohozaev_obstruction_system(n, k, &p, &qq, 0.0).unwrap();
        let one = Exact::int(1);
        let nn = Exact::int(n as i64);
        let lhs = one.clone() / (p + one.clone()) + one.clone() / (qq + one);
        let rhs = (nn.clone() - Exact::int(2 * k as i64)) / nn;
        prop_assert_eq!(o.value <= Exact::int(0), lhs <= rhs);
    }

    #[test]
    fn scaling_invariant_iff_sobolev((n, alpha) in riesz_pair(), p in quarter()) {
        let spec = riesz(n, &alpha, &p, None, CoeffMode::Constant);
        let nn = Exact::int(n as i64);
        let sob = (nn.clone() + alpha.clone()) / (nn - alpha);
        match scaling_exponents(&spec) {
            Ok(s) => prop_assert_eq!(s.invariant, p == sob),
            // only p = 1 (σ undefined) may be refused
            Err(_) => prop_assert_eq!(p, Exact::int(1)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ball_mass_nondecreasing_to_total(theta in 2.0f64..4.0, x in 0.0f64..3.0) {
        let f = RadialFunction::power(theta, 2.0).unwrap();
        let cfg = QuadratureConfig::default();
        let mut prev = 0.0;
        for t in [0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0, 1e4] {
            let m = ball_mass(&f, 3, x, t, &cfg).unwrap();
            prop_assert!(m >= prev * (1.0 - 1e-9));
            prev = m;
        }
        let total = liouville_core::radial::total_mass(&f, 3, &cfg).unwrap();
        prop_assert!((prev - total).abs() < 1e-3 * total);
    }

    #[test]
    fn layer_cake_agrees_with_direct_quadrature(theta in 1.6f64..3.0, x in 0.0f64..4.0) {
        let f = RadialFunction::power(theta, 2.0).unwrap();
        let cfg = QuadratureConfig::default();
        let a = riesz_potential(&f, 3, 2.0, x, &cfg).unwrap();
        let b = riesz_potential_direct(&f, 3, 2.0, x, &cfg).unwrap();
        prop_assert!((a - b).abs() <= 10.0 * cfg.rel_tol * b.abs(), "{a} vs {b}");
    }

    #[test]
    fn laplacian_matches_finite_difference(theta in 0.2f64..3.0, n in 3u32..=8, r in 0.2f64..5.0) {
        let f = RadialFunction::power(theta, 2.0).unwrap();
        let h = 1e-4;
        let (fm, f0, fp) = (f.value(r - h), f.value(r), f.value(r + h));
        let fd = -((fp - 2.0 * f0 + fm) / (h * h) + (n as f64 - 1.0) / r * (fp - fm) / (2.0 * h));
        let exact = radial_laplacian(&f, n, r).unwrap();
        prop_assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()), "{fd} vs {exact}");
    }

    #[test]
    fn shooting_brackets_hold(n in 5u32..=7, dp in 0.05f64..10.0) {
        let p = (n as f64 + 4.0) / (n as f64 - 4.0) + dp;
        let cfg = ShootConfig::default();
        let hi = integrate(n, p, 4.0 * n as f64, 50.0, &cfg).unwrap();
        prop_assert!(matches!(hi, ShootOutcome::UCrossed { .. }), "{:?}", hi);
        prop_assert!(hi.crossing_radius().unwrap() <= 1.0 + cfg.zero_tol);
        let a_lo = 0.99 / (n as f64 * 2f64.powf(1.0 + p));
        let lo = integrate(n, p, a_lo, 50.0, &cfg).unwrap();
        prop_assert!(matches!(lo, ShootOutcome::VCrossed { .. }), "{:?}", lo);
        prop_assert!(lo.crossing_radius().unwrap() <= 1.0 + cfg.zero_tol);
    }

    #[test]
    fn shooting_is_monotone_while_positive(a in 1e-3f64..20.0, p in 9.5f64..20.0) {
        let tr = integrate_trajectory(5, p, a, 50.0, &ShootConfig::default()).unwrap();
        for r in tr.step_radii().into_iter().skip(1) {
            let s = tr.state_at(r).unwrap();
            if s.u > 0.0 && s.v > 0.0 {
                prop_assert!(s.du <= 0.0 && s.dv <= 0.0, "r = {r}: {s:?}");
            }
        }
    }
}

#[test]
fn shooting_crossing_converges_under_refinement() {
    let at = |tol: f64| -> f64 {
        let cfg = ShootConfig { rel_tol: tol, abs_tol: tol * 1e-2, ..ShootConfig::default() };
        integrate(5, 10.0, 5.0, 50.0, &cfg).unwrap().crossing_radius().unwrap()
    };
    for tol in [1e-6, 1e-8] {
        assert!((at(tol) - at(tol / 2.0)).abs() < 10.0 * tol);
    }
}

#[test]
fn shooting_matches_integral_representation() {
    // u(r) = 1 - ∫₀^r τ^{1-n} ∫₀^τ s^{n-1} v ds dτ, by independent trapezoid sums on the dense output
    let (n, p, a) = (5u32, 10.0, 0.3);
    let tr = integrate_trajectory(n, p, a, 3.0, &ShootConfig::default()).unwrap();
    let m = 30_000;
    let r_end = 3.0f64.min(tr.end());
    let h = r_end / m as f64;
    let (mut inner, mut outer) = (0.0, 0.0);
    let mut prev_inner_term = 0.0;
    let mut prev_outer_term = 0.0;
    for i in 1..=m {
        let s = i as f64 * h;
        let v = tr.state_at(s.max(tr.start().r)).unwrap().v;
        let term = s.powi(n as i32 - 1) * v;
        inner += 0.5 * h * (prev_inner_term + term);
        prev_inner_term = term;
        let outer_term = inner / s.powi(n as i32 - 1);
        outer += 0.5 * h * (prev_outer_term + outer_term);
        prev_outer_term = outer_term;
    }
    let u = tr.state_at(r_end).unwrap().u;
    assert!((u - (1.0 - outer)).abs() < 1e-6, "{u} vs {}", 1.0 - outer);
}

#[test]
fn system_coefficients_swap_with_exponents() {
    let cfg = QuadratureConfig::default();
    let radii = [0.0, 0.5, 2.0, 10.0];
    let (p, qq) = (q(3, 2), q(5, 1));
    let a = riesz(5, &Exact::int(2), &p, Some(&qq), CoeffMode::DoubleBounded);
    let b = riesz(5, &Exact::int(2), &qq, Some(&p), CoeffMode::DoubleBounded);
    let fa = family_catalog::<_, f64>(&a).unwrap();
    let fb = family_catalog::<_, f64>(&b).unwrap();
    let pick = |fs: &[liouville_core::families::FamilyPair<f64>]| {
        fs.iter().find(|f| matches!(f.family_tag, FamilyTag::SlowSlow)).cloned().unwrap()
    };
    let (pa, pb) = (pick(&fa), pick(&fb));
    let ca = coefficient_profile(&a, &pa, &radii, &cfg).unwrap();
    let cb = coefficient_profile(&b, &pb, &radii, &cfg).unwrap();
    let (cau, cav) = (&ca.c_u, ca.c_v.as_ref().unwrap());
    let (cbu, cbv) = (&cb.c_u, cb.c_v.as_ref().unwrap());
    for i in 0..radii.len() {
        assert!((cau[i] - cbv[i]).abs() <= 1e-12 * cau[i].abs(), "{} vs {}", cau[i], cbv[i]);
        assert!((cav[i] - cbu[i]).abs() <= 1e-12 * cav[i].abs(), "{} vs {}", cav[i], cbu[i]);
    }
}

#[test]
fn laplacian_and_newton_coefficients_differ_by_constant() {
    // the Newton kernel inverts -Δ up to (n-2)ω_{n-1}, so the two coefficient notions differ by
    // that constant when c is constant: the fast family at the Sobolev exponent
    let cfg = QuadratureConfig::default();
    let radii = [0.0, 0.3, 1.0, 3.0, 10.0, 100.0];
    for (n, p) in [(5u32, q(7, 3)), (6, q(2, 1)), (3, q(5, 1)), (7, q(9, 5))] {
        let lap = ProblemSpec::new(n, Kernel::PolyLaplace { k: 1 }, p.clone(), None, CoeffMode::DoubleBounded).unwrap();
        let rsz = riesz(n, &Exact::int(2), &p, None, CoeffMode::DoubleBounded);
        let fast = |spec: &ProblemSpec<Exact>| {
            family_catalog::<_, f64>(spec).unwrap().into_iter().find(|f| f.family_tag == FamilyTag::Fast).unwrap()
        };
        let cl = coefficient_profile(&lap, &fast(&lap), &radii, &cfg).unwrap();
        let cr = coefficient_profile(&rsz, &fast(&rsz), &radii, &cfg).unwrap();
        let expected = (n as f64 - 2.0) * sphere_area::<f64>(n);
        for ((r, a), b) in radii.iter().zip(&cl.c_u).zip(&cr.c_u) {
            let ratio = a / b;
            assert!((ratio - expected).abs() < 1e-6 * expected, "n={n} r={r}: {ratio} vs {expected}");
        }
    }
}
