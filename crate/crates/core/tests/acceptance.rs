//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use pdm_core::correspondence::{full_report, Agreement, Model, Reliability};
use pdm_core::dynamics1d::{self, ClassifyOptions, ConfinementClass1D, State1D};
use pdm_core::dynamics2d::{self, RadialBound, State2D};
use pdm_core::numerics::{find_turning_points, IntegratorConfig, Trajectory};
use pdm_core::quantum::{
    builtin_schemes, classify_1d, classify_2d, effective_potential_1d, scheme_by_name, QuantumClass,
};
use pdm_core::spectra::{pt_reference_1d, solve, SpectrumRequest};
use pdm_core::MassProfile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn max_relative_drift(traj: &Trajectory, index: usize) -> f64 {
    let first = traj.first().invariant_values[index];
    traj.samples
        .iter()
        .map(|s| (s.invariant_values[index] - first).abs() / first.abs())
        .fold(0.0, f64::max)
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn conservation() -> Outcome {
    let cfg = IntegratorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst = [0.0f64; 4];
    for _ in 0..50 {
        let exp = MassProfile::exponential(signed(&mut rng, 0.2, 1.5), rng.gen_range(0..3), rng.gen_range(0.5..3.0))
            .map_err(|e| e.to_string())?;
        let rat =
            MassProfile::rational_1d(signed(&mut rng, 0.2, 2.0), rng.gen_range(0.5..3.0)).map_err(|e| e.to_string())?;
        for (slot, p) in [(0, &exp), (1, &rat)] {
            let s0 = State1D::new(rng.gen_range(-1.0..1.0), signed(&mut rng, 0.2, 2.0)).map_err(|e| e.to_string())?;
            let traj = dynamics1d::simulate(p, s0, 10.0, &cfg).map_err(|e| format!("{}: {e}", p.name()))?;
            worst[slot] = worst[slot].max(max_relative_drift(&traj, 0));
        }

        let pow = MassProfile::power_law(rng.gen_range(-4.0..2.0), rng.gen_range(0.5..3.0), 1.0)
            .map_err(|e| e.to_string())?;
        let rat2 = MassProfile::rational_2d(
            signed(&mut rng, 0.2, 2.0),
            rng.gen_range(0.5..3.0),
            rng.gen_range(0.2..2.0),
        )
        .map_err(|e| e.to_string())?;
        for (slot, g) in [(2, &pow), (3, &rat2)] {
            let s0 = State2D::new(
                rng.gen_range(0.5..2.0),
                rng.gen_range(-PI..PI),
                signed(&mut rng, 0.0, 1.5),
                signed(&mut rng, 0.2, 1.5),
            )
            .map_err(|e| e.to_string())?;
            let traj = dynamics2d::simulate_polar(g, s0, 10.0, &cfg).map_err(|e| format!("{}: {e}", g.name()))?;
            worst[slot] = worst[slot].max(max_relative_drift(&traj, 0));
        }
    }
    let max = worst.iter().cloned().fold(0.0, f64::max);
    let detail = format!(
        "max drift exponential {:.1e}, rational1d {:.1e}, powerlaw {:.1e}, rational2d {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    );
    check(max < 1e-7, detail.clone(), detail)
}

fn closed_form_rational() -> Outcome {
    let b = 1.3;
    let p = MassProfile::rational_1d(b, 1.0).map_err(|e| e.to_string())?;
    // ẋ0 is the speed at the origin: ẋ = ẋ0 (1 + B²x²) along the orbit
    let (x0, xdot0) = (0.2, 0.9);
    let s0 = State1D::new(x0, xdot0 * (1.0 + b * b * x0 * x0)).map_err(|e| e.to_string())?;
    let t_blow = (FRAC_PI_2 - (b * x0).atan()) / (b * xdot0);
    let traj = dynamics1d::simulate(&p, s0, 0.95 * t_blow, &IntegratorConfig::default()).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for s in &traj.samples {
        let exact = (b * xdot0 * s.t + (b * x0).atan()).tan() / b;
        worst = worst.max((s.state[0] - exact).abs());
    }

    let s00 = State1D::new(0.0, 1.0).map_err(|e| e.to_string())?;
    let unit = MassProfile::rational_1d(1.0, 1.0).map_err(|e| e.to_string())?;
    let t_est = match dynamics1d::classify(&unit, s00, &ClassifyOptions::default()).map_err(|e| e.to_string())? {
        ConfinementClass1D::UnboundedFiniteTimeBlowup { t_blowup } => t_blowup,
        other => return Err(format!("benchmark classified as {other:?}")),
    };
    let t_err = (t_est - FRAC_PI_2).abs();
    let detail = format!("max |x - x_exact| = {worst:.1e} up to 95% of blow-up; blow-up time error {t_err:.1e}");
    check(worst < 1e-8 && t_err < 1e-6, detail.clone(), detail)
}

fn exponential_force_identity() -> Outcome {
    let cfg = IntegratorConfig::default();
    let mut worst = 0.0f64;
    for n in [0u32, 1] {
        for a in [1.0, -1.0] {
            let m0 = 1.0;
            let p = MassProfile::exponential(a, n, m0).map_err(|e| e.to_string())?;
            let s0 = State1D::new(0.0, 1.0).map_err(|e| e.to_string())?;
            let traj = dynamics1d::simulate(&p, s0, 10.0, &cfg).map_err(|e| e.to_string())?;
            for s in &traj.samples {
                let st = State1D::from_slice(&s.state);
                let m = p.eval(st.x).map_err(|e| e.to_string())?.m;
                let lhs = m * dynamics1d::acceleration(&p, st).map_err(|e| e.to_string())?;
                let rhs = a * m0 * s0.v * s0.v * st.x.powi(n as i32);
                let scale = lhs.abs().max(rhs.abs());
                if scale > 0.0 {
                    worst = worst.max((lhs + rhs).abs() / scale);
                }
            }
        }
    }
    let detail = format!("max relative residual {worst:.1e} over n = 0, 1 and A = ±1");
    check(worst < 1e-6, detail.clone(), detail)
}

fn power_law_bound() -> Outcome {
    let cfg = IntegratorConfig::default();
    let g = MassProfile::power_law(-3.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let s0 = State2D::new(1.0, 0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let traj = dynamics2d::simulate_polar(&g, s0, 30.0, &cfg).map_err(|e| e.to_string())?;
    let r_peak = traj.component(0).fold(0.0, f64::max);
    let turns = find_turning_points(&traj, 0);
    let r_turn = turns.iter().map(|t| t.value).fold(0.0, f64::max);
    let analytic = match dynamics2d::power_law_bound(-3.0, 1.0, 1.0, 1.0, 1.0).map_err(|e| e.to_string())? {
        RadialBound::MaxRadius { r_max } => r_max,
        other => return Err(format!("analytic bound {other:?}")),
    };

    let free = MassProfile::power_law(0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let esc = dynamics2d::simulate_polar(&free, s0, 100.0, &cfg).map_err(|e| e.to_string())?;
    let r_end = esc.last().state[0];
    let detail = format!(
        "analytic r_max {analytic}, turning radius {r_turn:.9}, sampled peak {r_peak:.9}; nu = 0 reaches r = {r_end:.1}"
    );
    check(
        !turns.is_empty() && (r_turn - 2.0).abs() <= 1e-5 && r_peak <= 2.0 + 1e-9 && r_end > 100.0,
        detail.clone(),
        detail,
    )
}

fn spiral() -> Outcome {
    let g = MassProfile::power_law(-2.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let s0 = State2D::new(1.0, 0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    // θ̇ = 1 on this orbit, so t = 4π covers θ ∈ [0, 4π]
    let traj = dynamics2d::simulate_polar(&g, s0, 4.0 * PI, &IntegratorConfig::default()).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for s in &traj.samples {
        let want = s.state[1].exp();
        worst = worst.max((s.state[0] - want).abs() / want);
    }
    let theta_end = traj.last().state[1];
    let detail = format!("max relative deviation from e^theta {worst:.1e} up to theta = {theta_end:.6}");
    check(
        worst < 1e-6 && theta_end >= 4.0 * PI * (1.0 - 1e-9),
        detail.clone(),
        detail,
    )
}

fn rational_interval() -> Outcome {
    let cfg = IntegratorConfig::default();
    let g = MassProfile::rational_2d(1.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let s0 = State2D::new(1.0, 0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let traj = dynamics2d::simulate_polar(&g, s0, 50.0, &cfg).map_err(|e| e.to_string())?;
    let turns = find_turning_points(&traj, 0);
    let (want_lo, want_hi) = (SQRT_2 - 1.0, SQRT_2 + 1.0);
    let mut worst = 0.0f64;
    let (mut n_lo, mut n_hi) = (0, 0);
    for t in &turns {
        let (want, count) = if t.value < 1.0 {
            (want_lo, &mut n_lo)
        } else {
            (want_hi, &mut n_hi)
        };
        *count += 1;
        worst = worst.max((t.value - want).abs() / want);
    }

    let circ = State2D::new(1.0, 0.0, 0.0, 1.0).map_err(|e| e.to_string())?;
    let held = dynamics2d::simulate_polar(&g, circ, 50.0, &cfg).map_err(|e| e.to_string())?;
    let dev = held.component(0).map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    let detail = format!(
        "{n_lo} inner and {n_hi} outer turning points, max relative error {worst:.1e}; circular orbit max |r - 1| = {dev:.1e}"
    );
    check(
        n_lo > 0 && n_hi > 0 && worst < 1e-5 && dev < 1e-8,
        detail.clone(),
        detail,
    )
}

fn ordering_coefficients() -> Outcome {
    let r = |n: i128, d: i128| Ratio::new(n, d);
    let table = [
        ("ZhuKroemer", r(1, 4), r(5, 16), r(3, 2), r(0, 1)),
        ("MustafaMazharimousavi", r(0, 1), r(0, 1), r(7, 8), r(0, 1)),
        ("BenDanielDuke", r(-1, 4), r(-7, 16), r(0, 1), r(1, 2)),
        ("GoraWilliams", r(1, 4), r(9, 16), r(2, 1), r(-1, 1)),
        ("LiKuhn", r(0, 1), r(1, 16), r(1, 1), r(-1, 4)),
    ];
    let mut bad = Vec::new();
    for (name, a, b, xi, w) in table {
        let s = scheme_by_name(name).ok_or(format!("missing scheme {name}"))?;
        let c = s.coefficients();
        if (c.a, c.b, c.xi, c.five_a_minus_four_b()) != (a, b, xi, w) {
            bad.push(format!(
                "{name}: got ({}, {}, {}, {})",
                c.a,
                c.b,
                c.xi,
                c.five_a_minus_four_b()
            ));
        }
    }
    check(
        bad.is_empty() && builtin_schemes().len() == 5,
        "exact (a, b, xi, 5a-4b) for all five schemes".into(),
        bad.join("; "),
    )
}

fn quantum_classification() -> Outcome {
    let mut bad = Vec::new();
    let want_1d = [
        ("ZhuKroemer", "Free"),
        ("MustafaMazharimousavi", "Free"),
        ("BenDanielDuke", "BoundStates"),
        ("GoraWilliams", "Unphysical"),
        ("LiKuhn", "Unphysical"),
    ];
    for (name, want) in want_1d {
        let s = scheme_by_name(name).ok_or(format!("missing scheme {name}"))?;
        let got = classify_1d(&s).label();
        if got != want {
            bad.push(format!("1D {name}: {got}"));
        }
        for m in [1i64, 2, 3, 4, 5] {
            for signed_m in [m, -m] {
                let want_bound = m >= 3 || name != "GoraWilliams";
                if classify_2d(&s, signed_m).is_bound() != want_bound {
                    bad.push(format!("2D {name} m={signed_m}"));
                }
            }
        }
        if classify_2d(&s, 0) != QuantumClass::SStateExcluded {
            bad.push(format!("2D {name} m=0 not excluded"));
        }
    }
    check(
        bad.is_empty(),
        "1D classes and 2D bound conditions for |m| = 0..5 match".into(),
        bad.join("; "),
    )
}

fn spectral_dual_oracle() -> Outcome {
    let bdd = scheme_by_name("BenDanielDuke").ok_or("missing scheme")?;
    let pot = effective_potential_1d(&bdd, 1.0, 1.0).map_err(|e| e.to_string())?;
    let lambda = match pot.class {
        QuantumClass::BoundStates { lambda } => lambda,
        other => return Err(format!("BDD classified {other:?}")),
    };
    let sol = solve(&SpectrumRequest::new(pot, 5).with_grid(4000)).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let mut bounded = true;
    for n in 0..5 {
        let exact = pt_reference_1d(lambda, 1.0, n).map_err(|e| e.to_string())?;
        let ladder = (n as f64 + 2.0).powi(2) / 2.0;
        let err = (sol.levels_scaled[n] - exact).abs();
        worst = worst.max(err).max((exact - ladder).abs());
        bounded &= sol.estimated_error[n] >= err;
    }

    let zk = scheme_by_name("ZhuKroemer").ok_or("missing scheme")?;
    let free = effective_potential_1d(&zk, 1.0, 1.0).map_err(|e| e.to_string())?;
    let boxed = solve(&SpectrumRequest::new(free, 5).with_grid(4000).allowing_unbound()).map_err(|e| e.to_string())?;
    let box_err = (0..5)
        .map(|n| (boxed.levels_scaled[n] - (n as f64 + 1.0).powi(2) / 2.0).abs())
        .fold(0.0, f64::max);
    let detail = format!(
        "lambda = {lambda}, max |E_fd - (n+2)^2/2| = {worst:.1e}, estimate bounds error: {bounded}, box max error {box_err:.1e}"
    );
    check(worst < 1e-4 && bounded && box_err < 1e-4, detail.clone(), detail)
}

fn correspondence_headlines() -> Outcome {
    let r =
        full_report(&builtin_schemes(), &[Model::Rational1D, Model::Rational2D], 1..=3).map_err(|e| e.to_string())?;
    let j = |name: &str| r.judgment(name).cloned().ok_or(format!("no judgment for {name}"));
    let mut bad = Vec::new();
    for name in ["ZhuKroemer", "MustafaMazharimousavi"] {
        let row = j(name)?;
        if row.one_d != Some(Agreement::Consistent) || row.two_d != Some(Agreement::Consistent) {
            bad.push(format!("{name} not consistent in both models"));
        }
        if row.reliability != Reliability::Reliable {
            bad.push(format!("{name} not reliable"));
        }
    }
    for name in ["GoraWilliams", "LiKuhn"] {
        let row = j(name)?;
        if row.one_d != Some(Agreement::Contradicts) || row.reliability != Reliability::Disqualified {
            bad.push(format!("{name} not disqualified in 1D"));
        }
    }
    let bdd = j("BenDanielDuke")?;
    if bdd.one_d != Some(Agreement::Contradicts)
        || !bdd.two_d_bound_for_some_m
        || bdd.two_d != Some(Agreement::Consistent)
    {
        bad.push("BenDanielDuke headline mismatch".into());
    }
    check(
        bad.is_empty(),
        "five headline judgments reproduced".into(),
        bad.join("; "),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("quasi-momentum and angular-momentum conservation", conservation),
        ("rational 1D closed form and blow-up time", closed_form_rational),
        ("exponential-family force identity", exponential_force_identity),
        ("2D power-law radial bound and escape", power_law_bound),
        ("logarithmic spiral", spiral),
        ("2D rational confinement interval", rational_interval),
        ("exact ordering coefficients", ordering_coefficients),
        ("quantum classification", quantum_classification),
        ("spectral dual oracle", spectral_dual_oracle),
        ("correspondence headline judgments", correspondence_headlines),
    ];
    let started = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.1} s",
        criteria.len() - failures,
        started.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
