use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use pdm_core::correspondence::{full_report, CorrespondenceReport, Model};
use pdm_core::dynamics1d::{self, ClassifyOptions, ConfinementClass1D, State1D};
use pdm_core::dynamics2d::{self, RadialBound, State2D};
use pdm_core::numerics::{find_turning_points, IntegratorConfig, Method, Termination, Trajectory};
use pdm_core::quantum::{
    builtin_schemes, classify_1d, classify_2d, describe_exact, effective_potential_1d, effective_potential_2d,
    parse_exact, scheme_by_name, Exact, OrderingScheme, QuantumClass,
};
use pdm_core::spectra::{solve, SpectrumRequest};
use pdm_core::{Error, MassProfile};

use crate::config::{choose, ensure_parent_exists, write_file, ConfigError, Resolver};
use crate::output::{float, Format, Table};

const INTEGRATOR_KEYS: [&str; 6] = ["abs_tol", "rel_tol", "max_step", "max_steps", "method", "step"];

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Flat TOML file of key = value pairs; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
pub struct IntegratorArgs {
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    max_step: Option<f64>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// dopri (adaptive Dormand–Prince 5(4)) or rk4 (fixed step)
    #[arg(long)]
    method: Option<String>,
    /// Step size for rk4
    #[arg(long)]
    step: Option<f64>,
}

impl IntegratorArgs {
    fn resolve(&self, r: &Resolver) -> Result<IntegratorConfig> {
        let mut cfg = IntegratorConfig::default();
        cfg.abs_tol = r.f64_or("abs_tol", self.abs_tol, cfg.abs_tol)?;
        cfg.rel_tol = r.f64_or("rel_tol", self.rel_tol, cfg.rel_tol)?;
        cfg.max_step = r.f64_or("max_step", self.max_step, cfg.max_step)?;
        cfg.max_steps = r.usize_or("max_steps", self.max_steps, cfg.max_steps)?;
        let method = r.str_or("method", self.method.clone(), "dopri")?;
        if choose("method", &method, &["dopri", "rk4"])? == "rk4" {
            cfg.method = Method::Rk4 {
                step: r.f64_or("step", self.step, 1e-3)?,
            };
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn output_target(r: &Resolver, io: &IoArgs, default_stem: &str) -> Result<(PathBuf, Format)> {
    let format = Format::parse(&r.str_or("format", io.format.clone(), "csv")?)?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = match &io.output {
        Some(p) => p.clone(),
        None => PathBuf::from(r.str_or("output", None, &format!("{default_stem}.{ext}"))?),
    };
    ensure_parent_exists(&path)?;
    Ok((path, format))
}

fn max_relative_drift(traj: &Trajectory, index: usize) -> f64 {
    let first = traj.first().invariant_values[index];
    let scale = first.abs().max(f64::MIN_POSITIVE);
    traj.samples
        .iter()
        .map(|s| (s.invariant_values[index] - first).abs() / scale)
        .fold(0.0, f64::max)
}

fn termination_note(traj: &Trajectory) -> String {
    match traj.termination {
        Termination::Completed => "completed".into(),
        Termination::Diverged { t } => format!("diverged at t = {t:.10}"),
        Termination::Stopped { t, reason } => format!("stopped at t = {t:.10} ({reason})"),
    }
}

// ---------------------------------------------------------------- simulate1d

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Simulate1dArgs {
    /// exponential1d, rational1d or constant
    #[arg(long)]
    family: Option<String>,
    #[arg(long = "A")]
    a: Option<f64>,
    /// Exponent n of the exponential family
    #[arg(long)]
    n: Option<i64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long)]
    m0: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    v0: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[command(flatten)]
    io: IoArgs,
}

const SIM1D_KEYS: [&str; 11] = [
    "family", "A", "n", "B", "m0", "x0", "v0", "t_end", "output", "format", "config",
];

pub fn simulate1d(args: &Simulate1dArgs) -> Result<()> {
    let keys: Vec<&str> = SIM1D_KEYS.iter().chain(&INTEGRATOR_KEYS).copied().collect();
    let r = Resolver::load(args.io.config.as_deref(), &keys)?;
    let family = r.str_or("family", args.family.clone(), "rational1d")?;
    let family = choose("family", &family, &["exponential1d", "rational1d", "constant"])?;
    let m0 = r.f64_or("m0", args.m0, 1.0)?;
    let profile = match family {
        "exponential1d" => {
            let n = r.i64_or("n", args.n, 0)?;
            let n =
                u32::try_from(n).map_err(|_| ConfigError(format!("--n must be a non-negative integer, got {n}")))?;
            MassProfile::exponential(r.f64_or("A", args.a, 1.0)?, n, m0)?
        }
        "rational1d" => MassProfile::rational_1d(r.f64_or("B", args.b, 1.0)?, m0)?,
        _ => MassProfile::constant(m0)?,
    };
    let s0 = State1D::new(r.f64_or("x0", args.x0, 0.0)?, r.f64_or("v0", args.v0, 1.0)?)?;
    let t_end = r.f64_or("t_end", args.t_end, 10.0)?;
    let cfg = args.integrator.resolve(&r)?;
    let (path, format) = output_target(&r, &args.io, "trajectory1d")?;

    let traj = dynamics1d::simulate(&profile, s0, t_end, &cfg)?;
    let mut rows = Vec::with_capacity(traj.len());
    for s in &traj.samples {
        let m = profile.eval(s.state[0])?.m;
        rows.push(vec![s.t, s.state[0], s.state[1], m, s.invariant_values[0]]);
    }
    let table = Table {
        header: &["t", "x", "xdot", "mass", "Pi"],
        rows,
    };
    write_file(&path, &table.render(format)?)?;

    let last = traj.last();
    println!(
        "simulate1d: {} samples of {} written to {} ({})",
        traj.len(),
        profile.name(),
        path.display(),
        termination_note(&traj)
    );
    println!(
        "final state: t = {}, x = {}, xdot = {}",
        float(last.t),
        float(last.state[0]),
        float(last.state[1])
    );
    println!(
        "Pi = {}, max relative drift {:.3e}",
        float(traj.first().invariant_values[0]),
        max_relative_drift(&traj, 0)
    );

    let options = ClassifyOptions {
        integrator: cfg,
        ..ClassifyOptions::default()
    };
    let class = dynamics1d::classify(&profile, s0, &options)?;
    let analytic = match profile {
        MassProfile::Rational1D { b, .. } => Some(dynamics1d::rational_blowup_time(b, s0)?),
        _ => None,
    };
    match class {
        ConfinementClass1D::UnboundedFiniteTimeBlowup { t_blowup } => match analytic {
            Some(t) => println!("class: UnboundedFiniteTimeBlowup, blow-up at t = {t_blowup:.10} (analytic {t:.10})"),
            None => println!("class: UnboundedFiniteTimeBlowup, blow-up at t = {t_blowup:.10}"),
        },
        ConfinementClass1D::UnboundedAsymptotic => println!("class: UnboundedAsymptotic"),
        ConfinementClass1D::ConfinedFinite { range } => println!(
            "class: ConfinedFinite, x in [{:.6}, {:.6}] over a horizon of {}",
            range.0, range.1, options.horizon
        ),
    }
    Ok(())
}

// ---------------------------------------------------------------- simulate2d

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Simulate2dArgs {
    /// powerlaw2d, rational2d or constant
    #[arg(long)]
    family: Option<String>,
    /// Power-law exponent
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    m0: Option<f64>,
    /// Initial radius, also the radius where g = m0
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    theta0: Option<f64>,
    #[arg(long)]
    rdot0: Option<f64>,
    #[arg(long)]
    thetadot0: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[command(flatten)]
    integrator: IntegratorArgs,
    #[command(flatten)]
    io: IoArgs,
}

const SIM2D_KEYS: [&str; 13] = [
    "family",
    "nu",
    "C",
    "m0",
    "r0",
    "theta0",
    "rdot0",
    "thetadot0",
    "t_end",
    "output",
    "format",
    "config",
    "n",
];

pub fn simulate2d(args: &Simulate2dArgs) -> Result<()> {
    let keys: Vec<&str> = SIM2D_KEYS.iter().chain(&INTEGRATOR_KEYS).copied().collect();
    let r = Resolver::load(args.io.config.as_deref(), &keys)?;
    let family = r.str_or("family", args.family.clone(), "rational2d")?;
    let family = choose("family", &family, &["powerlaw2d", "rational2d", "constant"])?;
    let m0 = r.f64_or("m0", args.m0, 1.0)?;
    let r0 = r.f64_or("r0", args.r0, 1.0)?;
    let nu = r.f64_or("nu", args.nu, -3.0)?;
    let c = r.f64_or("C", args.c, 1.0)?;
    let g = match family {
        "powerlaw2d" => MassProfile::power_law(nu, m0, r0)?,
        "rational2d" => MassProfile::rational_2d(c, m0, r0)?,
        _ => MassProfile::constant(m0)?,
    };
    let s0 = State2D::new(
        r0,
        r.f64_or("theta0", args.theta0, 0.0)?,
        r.f64_or("rdot0", args.rdot0, 1.0)?,
        r.f64_or("thetadot0", args.thetadot0, 1.0)?,
    )?;
    if s0.rdot == 0.0 && s0.thetadot == 0.0 {
        bail!(ConfigError(
            "particle must be moving: rdot0 and thetadot0 are both zero".into()
        ));
    }
    let t_end = r.f64_or("t_end", args.t_end, 20.0)?;
    let cfg = args.integrator.resolve(&r)?;
    let (path, format) = output_target(&r, &args.io, "trajectory2d")?;

    let traj = dynamics2d::simulate_polar(&g, s0, t_end, &cfg)?;
    let rows = traj
        .samples
        .iter()
        .map(|s| {
            let mut row = vec![s.t];
            row.extend_from_slice(&s.state);
            row.extend_from_slice(&s.invariant_values);
            row
        })
        .collect();
    let table = Table {
        header: &["t", "r", "theta", "rdot", "thetadot", "K", "radial_residual"],
        rows,
    };
    write_file(&path, &table.render(format)?)?;

    let last = traj.last();
    let residual = traj
        .samples
        .iter()
        .map(|s| s.invariant_values[1].abs())
        .fold(0.0, f64::max);
    println!(
        "simulate2d: {} samples of {} written to {} ({})",
        traj.len(),
        g.name(),
        path.display(),
        termination_note(&traj)
    );
    println!(
        "final state: t = {}, r = {}, theta = {}",
        float(last.t),
        float(last.state[0]),
        float(last.state[1])
    );
    println!(
        "K = {}, max relative drift {:.3e}; max radial-energy residual {:.3e}",
        float(traj.first().invariant_values[0]),
        max_relative_drift(&traj, 0),
        residual
    );

    let turns = find_turning_points(&traj, 0);
    let turn_range = (!turns.is_empty()).then(|| {
        turns.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t.value), hi.max(t.value))
        })
    });
    let bound = match family {
        "powerlaw2d" => dynamics2d::power_law_bound(nu, m0, r0, s0.rdot, s0.thetadot)?,
        "rational2d" => dynamics2d::rational_confinement_interval(c, m0, r0, s0.rdot, s0.thetadot)?,
        _ => RadialBound::Unbounded,
    };
    let r_peak = traj.component(0).fold(0.0, f64::max);
    match bound {
        RadialBound::MaxRadius { r_max } => {
            let simulated = turn_range.map_or(r_peak, |t| t.1);
            println!(
                "bound: MaxRadius, r_max analytic {r_max:.9} vs simulated {simulated:.9} (difference {:.3e})",
                (simulated - r_max).abs()
            );
        }
        RadialBound::Interval { r_lo, r_hi } => {
            print!("bound: Interval ({r_lo:.6}, {r_hi:.6})");
            match turn_range {
                Some((lo, hi)) => println!(", simulated turning radii ({lo:.6}, {hi:.6})"),
                None => println!(", no turning points within the horizon"),
            }
        }
        RadialBound::Spiral { growth_rate } => {
            let dev = traj
                .samples
                .iter()
                .map(|s| {
                    let want = r0 * (growth_rate * (s.state[1] - s0.theta)).exp();
                    (s.state[0] - want).abs() / want
                })
                .fold(0.0, f64::max);
            println!("bound: Spiral, r = r0 exp({growth_rate:.10} (theta - theta0)), max relative deviation {dev:.3e}");
        }
        RadialBound::Unbounded => println!("bound: Unbounded, largest radius reached {r_peak:.6}"),
    }
    Ok(())
}

// ---------------------------------------------------------------- schemes

fn parse_rational(key: &str, text: &str) -> Result<Exact> {
    parse_exact(text).map_err(|e| ConfigError(format!("--{key}: {e}")).into())
}

/// Named built-in or, for "custom", the user's (j, k[, l]).
fn resolve_scheme(name: &str, j: Option<&str>, k: Option<&str>, l: Option<&str>) -> Result<OrderingScheme> {
    if name.eq_ignore_ascii_case("custom") {
        let (Some(j), Some(k)) = (j, k) else {
            bail!(ConfigError("a custom scheme needs --j and --k".into()));
        };
        let (j, k) = (parse_rational("j", j)?, parse_rational("k", k)?);
        return match l {
            Some(l) => OrderingScheme::new("custom", j, k, parse_rational("l", l)?).map_err(Into::into),
            None => Ok(OrderingScheme::from_jk("custom", j, k)),
        };
    }
    scheme_by_name(name).ok_or_else(|| {
        let names: Vec<String> = builtin_schemes().into_iter().map(|s| s.name).collect();
        ConfigError(format!(
            "unknown scheme '{name}'; built-ins are {} (or custom)",
            names.join(", ")
        ))
        .into()
    })
}

fn parse_model(text: &str) -> Result<Model> {
    Ok(match choose("model", text, &["rational1d", "rational2d"])? {
        "rational1d" => Model::Rational1D,
        _ => Model::Rational2D,
    })
}

// ---------------------------------------------------------------- spectrum

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    /// Built-in scheme name or "custom"
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// rational1d or rational2d
    #[arg(long)]
    model: Option<String>,
    /// Magnetic quantum number (2D)
    #[arg(long = "m")]
    m_quantum: Option<i64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    m0: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    /// Number of levels
    #[arg(long)]
    n: Option<usize>,
    /// Interior grid points (default 2000 in 1D, 4000 in 2D)
    #[arg(long)]
    grid: Option<usize>,
    /// Solve a free (zero-well) potential as a hard-wall box
    #[arg(long)]
    allow_unbound: bool,
    #[command(flatten)]
    io: IoArgs,
}

const SPECTRUM_KEYS: [&str; 16] = [
    "scheme",
    "j",
    "k",
    "l",
    "model",
    "m",
    "B",
    "C",
    "m0",
    "r0",
    "n",
    "grid",
    "allow_unbound",
    "output",
    "format",
    "config",
];

pub fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let r = Resolver::load(args.io.config.as_deref(), &SPECTRUM_KEYS)?;
    let scheme = resolve_scheme(
        &r.str_or("scheme", args.scheme.clone(), "BenDanielDuke")?,
        r.opt_str("j", args.j.clone())?.as_deref(),
        r.opt_str("k", args.k.clone())?.as_deref(),
        r.opt_str("l", args.l.clone())?.as_deref(),
    )?;
    let model = parse_model(&r.str_or("model", args.model.clone(), "rational1d")?)?;
    let m0 = r.f64_or("m0", args.m0, 1.0)?;
    let potential = match model {
        Model::Rational1D => effective_potential_1d(&scheme, r.f64_or("B", args.b, 1.0)?, m0)?,
        Model::Rational2D => effective_potential_2d(
            &scheme,
            r.i64_or("m", args.m_quantum, 1)?,
            r.f64_or("C", args.c, 1.0)?,
            m0,
            r.f64_or("r0", args.r0, 1.0)?,
        )?,
    };
    let mut req = SpectrumRequest::new(potential.clone(), r.usize_or("n", args.n, 5)?);
    if let Some(grid) = r.opt_i64("grid", args.grid.map(|g| g as i64))? {
        req = req
            .with_grid(usize::try_from(grid).map_err(|_| ConfigError(format!("--grid must be positive, got {grid}")))?);
    }
    if r.switch("allow_unbound", args.allow_unbound)? {
        req = req.allowing_unbound();
    }
    let (path, format) = output_target(&r, &args.io, "spectrum")?;

    let m_note = potential.m_quantum.map(|m| format!(" m={m}")).unwrap_or_default();
    let class = potential.class.label();
    let sol = match solve(&req) {
        Ok(s) => s,
        Err(Error::NotBound(why)) => {
            println!(
                "scheme={} model={}{m_note} class={class} status=NotBound: {why}; no spectrum written",
                scheme.name,
                model.label()
            );
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let rows = (0..sol.levels_scaled.len())
        .map(|n| {
            vec![
                n as f64,
                sol.levels_scaled[n],
                sol.levels_physical[n],
                sol.estimated_error[n],
            ]
        })
        .collect();
    let table = Table {
        header: &["n", "level_scaled", "level_physical", "estimated_error"],
        rows,
    };
    let text = match format {
        // the level index is an integer column
        Format::Csv => table
            .render(format)?
            .lines()
            .enumerate()
            .map(|(i, line)| match (i, line.split_once(',')) {
                (0, _) | (_, None) => format!("{line}\n"),
                (_, Some((_, rest))) => format!("{},{rest}\n", i - 1),
            })
            .collect(),
        Format::Json => table.render(format)?,
    };
    write_file(&path, &text)?;

    let lambda = match potential.class {
        QuantumClass::BoundStates { lambda } => format!(" lambda={lambda}"),
        _ => String::new(),
    };
    println!(
        "scheme={} model={}{m_note} class={class}{lambda} grid={}; written to {}",
        scheme.name,
        model.label(),
        sol.grid_points_used,
        path.display()
    );
    for n in 0..sol.levels_scaled.len() {
        println!(
            "n={n} level_scaled={:.10} level_physical={:.10} estimated_error={:.2e}",
            sol.levels_scaled[n], sol.levels_physical[n], sol.estimated_error[n]
        );
    }
    Ok(())
}

// ---------------------------------------------------------------- classify

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    /// Comma-separated scheme names, "all", or "custom"
    #[arg(long)]
    schemes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// Comma-separated models (rational1d, rational2d)
    #[arg(long)]
    models: Option<String>,
    #[arg(long)]
    m_min: Option<i64>,
    #[arg(long)]
    m_max: Option<i64>,
    /// JSON report file
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

const CLASSIFY_KEYS: [&str; 9] = ["schemes", "j", "k", "l", "models", "m_min", "m_max", "output", "config"];

#[derive(Serialize)]
struct SchemeRecord {
    scheme: String,
    j: String,
    k: String,
    l: String,
    a: String,
    b: String,
    xi: String,
    coeff_1d: String,
    class_1d: &'static str,
    lambda_1d: Option<f64>,
    class_2d_by_m: BTreeMap<i64, &'static str>,
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    schemes: Vec<SchemeRecord>,
    report: &'a CorrespondenceReport,
}

fn record(s: &OrderingScheme, ms: &[i64]) -> SchemeRecord {
    let c = s.coefficients();
    let class_1d = classify_1d(s);
    SchemeRecord {
        scheme: s.name.clone(),
        j: describe_exact(s.j),
        k: describe_exact(s.k),
        l: describe_exact(s.l),
        a: describe_exact(c.a),
        b: describe_exact(c.b),
        xi: describe_exact(c.xi),
        coeff_1d: describe_exact(c.five_a_minus_four_b()),
        class_1d: class_1d.label(),
        lambda_1d: match class_1d {
            QuantumClass::BoundStates { lambda } => Some(lambda),
            _ => None,
        },
        class_2d_by_m: ms.iter().map(|&m| (m, classify_2d(s, m).label())).collect(),
    }
}

pub fn classify(args: &ClassifyArgs) -> Result<()> {
    let r = Resolver::load(args.config.as_deref(), &CLASSIFY_KEYS)?;
    let (j, k, l) = (
        r.opt_str("j", args.j.clone())?,
        r.opt_str("k", args.k.clone())?,
        r.opt_str("l", args.l.clone())?,
    );
    let names = r.str_or("schemes", args.schemes.clone(), "all")?;
    let mut schemes = Vec::new();
    for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name.eq_ignore_ascii_case("all") {
            schemes.extend(builtin_schemes());
        } else {
            schemes.push(resolve_scheme(name, j.as_deref(), k.as_deref(), l.as_deref())?);
        }
    }
    if schemes.is_empty() {
        bail!(ConfigError("no schemes selected".into()));
    }
    let models = r
        .str_or("models", args.models.clone(), "rational1d,rational2d")?
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_model)
        .collect::<Result<Vec<_>>>()?;
    let (m_min, m_max) = (r.i64_or("m_min", args.m_min, 1)?, r.i64_or("m_max", args.m_max, 3)?);
    let output = match &args.output {
        Some(p) => p.clone(),
        None => PathBuf::from(r.str_or("output", None, "classification.json")?),
    };
    ensure_parent_exists(&output)?;

    let report = full_report(&schemes, &models, m_min..=m_max)?;
    let ms: Vec<i64> = (m_min..=m_max).collect();
    let out = ClassifyOutput {
        schemes: schemes.iter().map(|s| record(s, &ms)).collect(),
        report: &report,
    };
    let mut json = serde_json::to_string_pretty(&out).context("serialising the report")?;
    json.push('\n');
    write_file(&output, &json)?;

    print!("{report}");
    println!("report written to {}", output.display());
    Ok(())
}

// ---------------------------------------------------------------- profiles

pub fn profiles() -> Result<()> {
    println!("mass profiles:");
    for (name, formula, params) in [
        ("exponential1d", "m(x) = m0 exp(2A x^(n+1)/(n+1))", "--A --n --m0"),
        ("rational1d", "m(x) = m0 / (1 + B^2 x^2)^2", "--B --m0"),
        ("powerlaw2d", "g(r) = m0 (r/r0)^nu", "--nu --m0 --r0"),
        (
            "rational2d",
            "g(r) = C~ / (1 + C^2 r^2)^2, C~ = m0 (1 + C^2 r0^2)^2",
            "--C --m0 --r0",
        ),
        ("constant", "m = m0", "--m0"),
    ] {
        println!("  {name:<14} {formula:<56} {params}");
    }
    println!("ordering schemes (j + k + l = -1):");
    for s in builtin_schemes() {
        println!(
            "  {:<22} j = {:>4}  k = {:>4}  l = {:>4}",
            s.name,
            s.j.to_string(),
            s.k.to_string(),
            s.l.to_string()
        );
    }
    println!("  custom                 --j, --k (and optionally --l)");
    Ok(())
}
