//! Quasi-free particle on a line with position-dependent mass.
//!
//! The Lagrangian ½m(x)ẋ² gives m ẍ + ½ m′ ẋ² = 0. Along any solution the
//! quasi-momentum Π = √m(x) ẋ is conserved, and the point-canonical
//! coordinate q(x) = ∫√m dx advances uniformly, q(x(t)) − q(x0) = Π t.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numerics::{integrate_until, IntegratorConfig, Termination, Trajectory};
use crate::profiles::MassProfile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct State1D {
    pub x: f64,
    pub v: f64,
}

impl State1D {
    pub fn new(x: f64, v: f64) -> Result<Self> {
        if !(x.is_finite() && v.is_finite()) {
            return invalid("state must be finite");
        }
        Ok(Self { x, v })
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self { x: s[0], v: s[1] }
    }
}

/// Conserved Π = √m(x)·ẋ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct QuasiMomentum(pub f64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ConfinementClass1D {
    /// Motion stayed inside `range` over the horizon and was decelerating.
    ConfinedFinite { range: (f64, f64) },
    /// Position reaches infinity in finite time.
    UnboundedFiniteTimeBlowup { t_blowup: f64 },
    /// Escape without a finite-time singularity.
    UnboundedAsymptotic,
}

impl ConfinementClass1D {
    pub fn is_confined(&self) -> bool {
        matches!(self, Self::ConfinedFinite { .. })
    }
}

/// Knobs for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyOptions {
    pub horizon: f64,
    pub x_ceiling: f64,
    /// A run that completes the horizon counts as escaping when the final
    /// speed is still at least this fraction of the initial speed.
    pub escape_speed_ratio: f64,
    pub integrator: IntegratorConfig,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            horizon: 100.0,
            x_ceiling: 1e6,
            escape_speed_ratio: 0.5,
            integrator: IntegratorConfig::default(),
        }
    }
}

/// ẍ = −½ (m′/m) ẋ².
pub fn acceleration(profile: &MassProfile, s: State1D) -> Result<f64> {
    Ok(-0.5 * profile.log_derivative(s.x)? * s.v * s.v)
}

pub fn quasi_momentum(profile: &MassProfile, s: State1D) -> Result<QuasiMomentum> {
    Ok(QuasiMomentum(profile.eval(s.x)?.m.sqrt() * s.v))
}

fn check_moving(s0: State1D) -> Result<()> {
    if s0.v == 0.0 {
        return invalid("initial velocity must be non-zero for a quasi-free particle to move");
    }
    State1D::new(s0.x, s0.v).map(|_| ())
}

fn run(
    profile: &MassProfile,
    s0: State1D,
    t_end: f64,
    config: &IntegratorConfig,
    x_ceiling: f64,
) -> Result<Trajectory> {
    check_moving(s0)?;
    profile.eval(s0.x)?;
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = acceleration(profile, State1D::from_slice(y))?;
        Ok(())
    };
    let mut traj = integrate_until(rhs, &[s0.x, s0.v], (0.0, t_end), config, |_, y| {
        (y[0].abs() > x_ceiling).then_some("position ceiling")
    })?;
    traj.attach_invariants(|_, y| Ok(vec![quasi_momentum(profile, State1D::from_slice(y))?.0]))?;
    Ok(traj)
}

/// Integrates the equation of motion from `s0` to `t_end`.
///
/// Every sample carries Π as `invariant_values[0]`. A finite-time blow-up
/// ends the run with [`Termination::Diverged`].
pub fn simulate(profile: &MassProfile, s0: State1D, t_end: f64, config: &IntegratorConfig) -> Result<Trajectory> {
    run(profile, s0, t_end, config, f64::INFINITY)
}

/// x(t) = (1/B) tan(Bu t + arctan(Bx0)) for the rational mass m0/(1+B²x²)²,
/// where u = ẋ/(1+B²x²) is the (conserved) speed the orbit has at x = 0.
pub fn closed_form_rational(b: f64, s0: State1D, t: f64) -> Result<f64> {
    if b == 0.0 {
        return invalid("B must be non-zero");
    }
    let phase = b * origin_speed(b, s0) * t + (b * s0.x).atan();
    if phase.abs() >= FRAC_PI_2 {
        return Err(Error::BlowupReached {
            t_blowup: rational_blowup_time(b, s0).unwrap_or(f64::NAN),
        });
    }
    Ok(phase.tan() / b)
}

/// Time at which the rational-mass trajectory reaches infinity.
pub fn rational_blowup_time(b: f64, s0: State1D) -> Result<f64> {
    if b == 0.0 || s0.v == 0.0 {
        return invalid("B and the initial velocity must be non-zero");
    }
    let rate = b * origin_speed(b, s0);
    let phase0 = (b * s0.x).atan();
    Ok((FRAC_PI_2.copysign(rate) - phase0) / rate)
}

fn origin_speed(b: f64, s0: State1D) -> f64 {
    s0.v / (1.0 + b * b * s0.x * s0.x)
}

/// x(t) = (1/A) ln(Aẋ0 t + e^{Ax0}) for the exponential mass with n = 0.
pub fn closed_form_exponential_n0(a: f64, s0: State1D, t: f64) -> Result<f64> {
    if a == 0.0 {
        return invalid("A must be non-zero");
    }
    let arg = a * s0.v * t + (a * s0.x).exp();
    if !(arg > 0.0) {
        return Err(Error::Domain(format!(
            "logarithm argument {arg} is not positive: the trajectory is singular before t = {t}"
        )));
    }
    Ok(arg.ln() / a)
}

/// q(x) = ∫_{x_ref}^{x} √m ds.
pub fn pct_coordinate(profile: &MassProfile, x: f64, x_ref: f64) -> Result<f64> {
    profile.pct_coordinate(x, x_ref)
}

/// Decides the qualitative fate of the motion started at `s0`.
///
/// A run that diverges or crosses `x_ceiling` is a finite-time blow-up when
/// the local growth law ẋ ∝ |x|^p has p > 1 (p estimated as xẍ/ẋ²), and the
/// blow-up time is extrapolated as t + x/((p−1)ẋ). Otherwise it escapes
/// asymptotically. A run that reaches the horizon escapes if its speed stayed
/// above `escape_speed_ratio`·|ẋ0|, and is confined to the visited range if
/// it has decelerated below that.
pub fn classify(profile: &MassProfile, s0: State1D, options: &ClassifyOptions) -> Result<ConfinementClass1D> {
    if !(options.horizon > 0.0 && options.x_ceiling > 0.0) {
        return invalid("horizon and x_ceiling must be positive");
    }
    let traj = run(profile, s0, options.horizon, &options.integrator, options.x_ceiling)?;
    let last = State1D::from_slice(&traj.last().state);
    match traj.termination {
        Termination::Diverged { t } | Termination::Stopped { t, .. } => {
            let acc = acceleration(profile, last)?;
            let p = last.x * acc / (last.v * last.v);
            if p > 1.0 + 1e-6 {
                Ok(ConfinementClass1D::UnboundedFiniteTimeBlowup {
                    t_blowup: t + last.x / ((p - 1.0) * last.v),
                })
            } else {
                Ok(ConfinementClass1D::UnboundedAsymptotic)
            }
        }
        Termination::Completed => {
            if last.v.abs() >= options.escape_speed_ratio * s0.v.abs() {
                Ok(ConfinementClass1D::UnboundedAsymptotic)
            } else {
                let (lo, hi) = traj
                    .component(0)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
                Ok(ConfinementClass1D::ConfinedFinite { range: (lo, hi) })
            }
        }
    }
}
