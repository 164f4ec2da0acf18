//! Quasi-free particle in the plane, polar coordinates, mass m(r,θ) = g(r)f(θ).
//!
//! With f ≡ 1 the angular momentum K = g r² θ̇ is conserved and the radial
//! motion obeys g ṙ² + K²/(g r²) = const. The analytic bounds in this module
//! all assume f ≡ 1; the general coupled equations are available through
//! [`AngularFactor`].

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numerics::{integrate_adaptive, integrate_until, IntegratorConfig, Trajectory};
use crate::profiles::MassProfile;

/// Runs end with this reason once r drops below `COLLAPSE_FRACTION`·r0.
pub const COLLAPSE_REASON: &str = "collapse to center";
pub const COLLAPSE_FRACTION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct State2D {
    pub r: f64,
    pub theta: f64,
    pub rdot: f64,
    pub thetadot: f64,
}

impl State2D {
    pub fn new(r: f64, theta: f64, rdot: f64, thetadot: f64) -> Result<Self> {
        if !(r > 0.0) {
            return invalid(format!("radius must be positive, got {r}"));
        }
        if ![r, theta, rdot, thetadot].iter().all(|v| v.is_finite()) {
            return invalid("state must be finite");
        }
        Ok(Self {
            r,
            theta,
            rdot,
            thetadot,
        })
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self {
            r: s[0],
            theta: s[1],
            rdot: s[2],
            thetadot: s[3],
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r, self.theta, self.rdot, self.thetadot]
    }
}

/// K = g(r) r² θ̇.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct AngularMomentum(pub f64);

pub fn angular_momentum(g: &MassProfile, s: State2D) -> Result<AngularMomentum> {
    Ok(AngularMomentum(g.eval(s.r)?.m * s.r * s.r * s.thetadot))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RadialBound {
    MaxRadius {
        r_max: f64,
    },
    Interval {
        r_lo: f64,
        r_hi: f64,
    },
    Unbounded,
    /// r = r0 exp(growth_rate θ).
    Spiral {
        growth_rate: f64,
    },
}

impl RadialBound {
    pub fn is_confined(&self) -> bool {
        matches!(self, Self::MaxRadius { .. } | Self::Interval { .. })
    }
}

/// Time derivative of the polar state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarDerivative {
    pub rdot: f64,
    pub thetadot: f64,
    pub rddot: f64,
    pub thetaddot: f64,
}

/// Angular factor f(θ) of a separable mass g(r)f(θ), with its derivative.
#[derive(Clone)]
pub struct AngularFactor {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    df: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl AngularFactor {
    pub fn new<F, D>(f: F, df: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            df: Arc::new(df),
        }
    }

    pub fn uniform() -> Self {
        Self::new(|_| 1.0, |_| 0.0)
    }

    fn eval(&self, theta: f64) -> Result<(f64, f64)> {
        let (f, df) = ((self.f)(theta), (self.df)(theta));
        if !(f > 0.0 && f.is_finite() && df.is_finite()) {
            return Err(Error::Domain(format!("angular factor invalid at theta = {theta}")));
        }
        Ok((f, df))
    }
}

impl fmt::Debug for AngularFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AngularFactor(..)")
    }
}

/// Equations of motion for a radial mass g(r).
///
/// r̈ = −½(g′/g)ṙ² + (1 + r g′/(2g)) r θ̇², and θ̈ = −(g′/g + 2/r) ṙ θ̇ from
/// differentiating K = g r² θ̇ = const.
pub fn polar_rhs(g: &MassProfile, s: State2D) -> Result<PolarDerivative> {
    if !(s.r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {}", s.r)));
    }
    let ld = g.log_derivative(s.r)?;
    Ok(PolarDerivative {
        rdot: s.rdot,
        thetadot: s.thetadot,
        rddot: -0.5 * ld * s.rdot * s.rdot + (1.0 + 0.5 * ld * s.r) * s.r * s.thetadot * s.thetadot,
        thetaddot: -(ld + 2.0 / s.r) * s.rdot * s.thetadot,
    })
}

/// Full Euler–Lagrange equations for m(r,θ) = g(r) f(θ).
pub fn polar_rhs_general(g: &MassProfile, f: &AngularFactor, s: State2D) -> Result<PolarDerivative> {
    if !(s.r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {}", s.r)));
    }
    let lg = g.log_derivative(s.r)?;
    let (fv, dfv) = f.eval(s.theta)?;
    let lf = dfv / fv;
    let (r, rd, td) = (s.r, s.rdot, s.thetadot);
    let speed_sq = rd * rd + r * r * td * td;
    Ok(PolarDerivative {
        rdot: rd,
        thetadot: td,
        rddot: -lg * rd * rd - lf * rd * td + 0.5 * lg * speed_sq + r * td * td,
        thetaddot: 0.5 * lf * speed_sq / (r * r) - td * (lg * rd + lf * td + 2.0 * rd / r),
    })
}

fn run_polar<F>(rhs: F, s0: State2D, t_end: f64, config: &IntegratorConfig) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
{
    let r_floor = COLLAPSE_FRACTION * s0.r;
    let res = integrate_until(rhs, &s0.to_array(), (0.0, t_end), config, |_, y| {
        (y[0] < r_floor).then_some(COLLAPSE_REASON)
    });
    match res {
        Err(Error::StepFailure { t }) => Err(Error::CollapseToCenter { t }),
        other => other,
    }
}

fn write_derivative(d: PolarDerivative, dy: &mut [f64]) {
    dy[0] = d.rdot;
    dy[1] = d.thetadot;
    dy[2] = d.rddot;
    dy[3] = d.thetaddot;
}

/// Integrates the radial-mass equations of motion.
///
/// Each sample carries `[K, radial_residual]`, where the residual is
/// (g ṙ² − g·[`radial_speed_sq`]) normalised by the radial energy scale
/// ã² = g(r0)ṙ0² + K²/(g(r0) r0²).
pub fn simulate_polar(g: &MassProfile, s0: State2D, t_end: f64, config: &IntegratorConfig) -> Result<Trajectory> {
    let s0 = State2D::new(s0.r, s0.theta, s0.rdot, s0.thetadot)?;
    g.eval(s0.r)?;
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        write_derivative(polar_rhs(g, State2D::from_slice(y))?, dy);
        Ok(())
    };
    let mut traj = run_polar(rhs, s0, t_end, config)?;
    let scale = radial_energy_scale(g, s0)?.max(f64::MIN_POSITIVE);
    traj.attach_invariants(|_, y| {
        let s = State2D::from_slice(y);
        let gm = g.eval(s.r)?.m;
        let k = gm * s.r * s.r * s.thetadot;
        let predicted = radial_speed_sq(g, s.r, s0)?;
        Ok(vec![k, gm * (s.rdot * s.rdot - predicted) / scale])
    })?;
    Ok(traj)
}

/// Integrates the coupled equations for m = g(r) f(θ).
///
/// Samples carry `[p_θ, kinetic energy]`; p_θ = g f r² θ̇ is conserved only
/// when f is constant, the kinetic energy always.
pub fn simulate_polar_general(
    g: &MassProfile,
    f: &AngularFactor,
    s0: State2D,
    t_end: f64,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    let s0 = State2D::new(s0.r, s0.theta, s0.rdot, s0.thetadot)?;
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        write_derivative(polar_rhs_general(g, f, State2D::from_slice(y))?, dy);
        Ok(())
    };
    let mut traj = run_polar(rhs, s0, t_end, config)?;
    traj.attach_invariants(|_, y| {
        let s = State2D::from_slice(y);
        let m = g.eval(s.r)?.m * f.eval(s.theta)?.0;
        Ok(vec![
            m * s.r * s.r * s.thetadot,
            0.5 * m * (s.rdot * s.rdot + s.r * s.r * s.thetadot * s.thetadot),
        ])
    })?;
    Ok(traj)
}

/// ã² = g(r0)ṙ0² + K²/(g(r0) r0²), the conserved g ṙ² + K²/(g r²).
pub fn radial_energy_scale(g: &MassProfile, init: State2D) -> Result<f64> {
    let g0 = g.eval(init.r)?.m;
    let k = g0 * init.r * init.r * init.thetadot;
    Ok(g0 * init.rdot * init.rdot + k * k / (g0 * init.r * init.r))
}

/// ṙ² at radius `r` for the orbit started at `init`, from the radial energy
/// relation g u(r) − g(r0) u(r0) = ∫ K²/(s² g) (2/s + g′/g) ds.
///
/// Closed forms for the power-law and rational families, adaptive quadrature
/// for anything else. A negative value marks a classically forbidden radius.
pub fn radial_speed_sq(g: &MassProfile, r: f64, init: State2D) -> Result<f64> {
    if !(r > 0.0 && init.r > 0.0) {
        return invalid("radii must be positive");
    }
    let r0 = init.r;
    let g0 = g.eval(r0)?.m;
    let k = g0 * r0 * r0 * init.thetadot;
    match *g {
        MassProfile::PowerLaw2D { nu, .. } => {
            // g(r) = g0 (r/r0)^ν holds with the initial radius as reference
            let ratio = r0 / r;
            let kt2 = k * k / (r0 * r0);
            let rhs = ratio.powf(nu) * (g0 * g0 * init.rdot * init.rdot + kt2) - kt2 * ratio.powf(2.0 * nu + 2.0);
            Ok(rhs / (g0 * g0))
        }
        MassProfile::Rational2D { .. } => {
            let gr = g.eval(r)?.m;
            let a2 = g0 * init.rdot * init.rdot + k * k / (g0 * r0 * r0);
            Ok((a2 - k * k / (gr * r * r)) / gr)
        }
        _ => {
            let gr = g.eval(r)?.m;
            let integrand = |s: f64| match g.eval(s) {
                Ok(e) => k * k / (s * s * e.m) * (2.0 / s + e.dm / e.m),
                Err(_) => f64::NAN,
            };
            let scale = (k * k / (g0 * r0 * r0)).max(g0 * init.rdot * init.rdot).max(1e-300);
            let integral = integrate_adaptive(integrand, r0, r, 1e-14 * scale)?;
            Ok((g0 * init.rdot * init.rdot + integral) / gr)
        }
    }
}

/// Radial fate for g = m0 (r/r0)^ν started at r0.
///
/// ν < −2 confines the particle below r_max = r0 (K̃²/B0²)^{1/(ν+2)} with
/// K̃² = K²/r0² and B0² = m0²ṙ0² + K̃²; ν > −2 lets it escape; ν = −2 gives
/// the logarithmic spiral.
pub fn power_law_bound(nu: f64, m0: f64, r0: f64, rdot0: f64, thetadot0: f64) -> Result<RadialBound> {
    if !(r0 > 0.0 && m0 > 0.0) {
        return invalid("r0 and m0 must be positive");
    }
    if rdot0 == 0.0 && thetadot0 == 0.0 {
        return invalid("particle must be moving");
    }
    let k = m0 * r0 * r0 * thetadot0;
    if k == 0.0 {
        // purely radial motion never turns around
        return Ok(RadialBound::Unbounded);
    }
    if nu == -2.0 {
        return Ok(RadialBound::Spiral {
            growth_rate: m0 * r0 * rdot0 / k,
        });
    }
    if nu > -2.0 {
        return Ok(RadialBound::Unbounded);
    }
    let kt2 = k * k / (r0 * r0);
    let b02 = m0 * m0 * rdot0 * rdot0 + kt2;
    Ok(RadialBound::MaxRadius {
        r_max: r0 * (kt2 / b02).powf(1.0 / (nu + 2.0)),
    })
}

/// r(θ) = r0 exp((m0 r0 ṙ0 / K) θ), the exact ν = −2 orbit.
pub fn spiral_radius(m0: f64, r0: f64, rdot0: f64, k: AngularMomentum, theta: f64) -> Result<f64> {
    if k.0 == 0.0 {
        return invalid("angular momentum must be non-zero for the spiral solution");
    }
    Ok(r0 * (m0 * r0 * rdot0 / k.0 * theta).exp())
}

/// Radial interval allowed to the orbit of g = C̃/(1+C²r²)² started at r0
/// (where g(r0) = m0): the roots of C²r² − L̃r + 1 with L̃ = √(ã²C̃/K²).
pub fn rational_confinement_interval(c: f64, m0: f64, r0: f64, rdot0: f64, thetadot0: f64) -> Result<RadialBound> {
    if c == 0.0 || !(m0 > 0.0) || !(r0 > 0.0) {
        return invalid("C must be non-zero, m0 and r0 positive");
    }
    let c_tilde = m0 * (1.0 + c * c * r0 * r0).powi(2);
    let k = m0 * r0 * r0 * thetadot0;
    if k == 0.0 {
        return Ok(RadialBound::Unbounded);
    }
    let a2 = m0 * rdot0 * rdot0 + k * k / (m0 * r0 * r0);
    match confinement_interval_from_invariants(c, c_tilde, a2, k) {
        // r0 itself satisfies the inequality, so a negative discriminant here
        // is rounding on a double root
        Err(Error::NoRealRoots { .. }) if rdot0 == 0.0 => Ok(RadialBound::Interval { r_lo: r0, r_hi: r0 }),
        other => other,
    }
}

/// Roots of C²r² − L̃r + 1 ≤ 0 given C̃, ã² and K directly.
pub fn confinement_interval_from_invariants(c: f64, c_tilde: f64, a_tilde_sq: f64, k: f64) -> Result<RadialBound> {
    if k == 0.0 {
        return Ok(RadialBound::Unbounded);
    }
    let l = (a_tilde_sq * c_tilde / (k * k)).sqrt();
    let c2 = c * c;
    let disc = 1.0 - 4.0 * c2 / (l * l);
    if disc < 0.0 {
        return Err(Error::NoRealRoots { discriminant: disc });
    }
    let root = disc.sqrt();
    // r_lo via the product of roots (1/C²) to avoid cancellation
    let r_hi = l / (2.0 * c2) * (1.0 + root);
    let r_lo = 1.0 / (c2 * r_hi);
    Ok(RadialBound::Interval { r_lo, r_hi })
}
