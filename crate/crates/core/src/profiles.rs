//! Position-dependent mass profiles.
//!
//! Four analytic families are built in. Each supplies m, m′ and m″ in closed
//! form; custom profiles must provide all three callables themselves.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{domain, invalid, Result};
use crate::numerics::integrate_adaptive;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied profile: mass and its first two derivatives.
#[derive(Clone)]
pub struct CustomProfile {
    pub name: String,
    mass: ScalarFn,
    first: ScalarFn,
    second: ScalarFn,
    /// Open interval on which the callables are valid.
    pub domain: (f64, f64),
}

impl CustomProfile {
    pub fn new<M, D1, D2>(name: impl Into<String>, mass: M, first: D1, second: D2) -> Self
    where
        M: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            mass: Arc::new(mass),
            first: Arc::new(first),
            second: Arc::new(second),
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }
}

impl fmt::Debug for CustomProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomProfile")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum MassProfile {
    /// m(x) = m0 exp(2A x^(n+1) / (n+1)), so that m′/m = 2A xⁿ.
    Exponential1D {
        a: f64,
        n: u32,
        m0: f64,
    },
    /// m(x) = m0 / (1 + B²x²)².
    Rational1D {
        b: f64,
        m0: f64,
    },
    /// g(r) = m0 (r/r0)^ν, r > 0.
    PowerLaw2D {
        nu: f64,
        m0: f64,
        r0: f64,
    },
    /// g(r) = C̃ / (1 + C²r²)² with C̃ = m0 (1 + C²r0²)², so g(r0) = m0.
    Rational2D {
        c: f64,
        m0: f64,
        r0: f64,
        c_tilde: f64,
    },
    Custom(CustomProfile),
}

/// Mass and its first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassEval {
    pub m: f64,
    pub dm: f64,
    pub d2m: f64,
}

/// Nature of the self-induced force on a moving particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForceClass {
    Damping,
    AntiDamping,
    Neutral,
}

fn check_mass(m0: f64) -> Result<()> {
    if m0 > 0.0 && m0.is_finite() {
        Ok(())
    } else {
        invalid(format!("reference mass must be positive and finite, got {m0}"))
    }
}

fn check_nonzero(name: &str, v: f64) -> Result<()> {
    if v != 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be finite and non-zero, got {v}"))
    }
}

impl MassProfile {
    pub fn exponential(a: f64, n: u32, m0: f64) -> Result<Self> {
        check_nonzero("A", a)?;
        check_mass(m0)?;
        Ok(Self::Exponential1D { a, n, m0 })
    }

    pub fn rational_1d(b: f64, m0: f64) -> Result<Self> {
        check_nonzero("B", b)?;
        check_mass(m0)?;
        Ok(Self::Rational1D { b, m0 })
    }

    pub fn power_law(nu: f64, m0: f64, r0: f64) -> Result<Self> {
        if !nu.is_finite() {
            return invalid("power-law exponent must be finite");
        }
        check_mass(m0)?;
        if !(r0 > 0.0 && r0.is_finite()) {
            return invalid(format!("reference radius must be positive, got {r0}"));
        }
        Ok(Self::PowerLaw2D { nu, m0, r0 })
    }

    pub fn rational_2d(c: f64, m0: f64, r0: f64) -> Result<Self> {
        check_nonzero("C", c)?;
        check_mass(m0)?;
        if !(r0 >= 0.0 && r0.is_finite()) {
            return invalid(format!("reference radius must be non-negative, got {r0}"));
        }
        let c_tilde = m0 * (1.0 + c * c * r0 * r0).powi(2);
        Ok(Self::Rational2D { c, m0, r0, c_tilde })
    }

    /// Constant mass, expressed as a custom profile.
    pub fn constant(m0: f64) -> Result<Self> {
        check_mass(m0)?;
        Ok(Self::Custom(CustomProfile::new(
            "constant",
            move |_| m0,
            |_| 0.0,
            |_| 0.0,
        )))
    }

    pub fn custom(profile: CustomProfile) -> Self {
        Self::Custom(profile)
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Exponential1D { .. } => "exponential1d",
            Self::Rational1D { .. } => "rational1d",
            Self::PowerLaw2D { .. } => "powerlaw2d",
            Self::Rational2D { .. } => "rational2d",
            Self::Custom(c) => &c.name,
        }
    }

    /// Scale mass used for normalisation: m0 for the built-ins.
    pub fn reference_mass(&self) -> Option<f64> {
        match *self {
            Self::Exponential1D { m0, .. }
            | Self::Rational1D { m0, .. }
            | Self::PowerLaw2D { m0, .. }
            | Self::Rational2D { m0, .. } => Some(m0),
            Self::Custom(_) => None,
        }
    }

    pub fn eval(&self, x: f64) -> Result<MassEval> {
        if !x.is_finite() {
            return domain(format!("non-finite position {x}"));
        }
        let out = match *self {
            Self::Exponential1D { a, n, m0 } => {
                let n_f = f64::from(n);
                let m = m0 * (2.0 * a * x.powi(n as i32 + 1) / (n_f + 1.0)).exp();
                let ld = 2.0 * a * x.powi(n as i32);
                let dld = if n == 0 {
                    0.0
                } else {
                    2.0 * a * n_f * x.powi(n as i32 - 1)
                };
                MassEval {
                    m,
                    dm: m * ld,
                    d2m: m * (ld * ld + dld),
                }
            }
            Self::Rational1D { b, m0 } => rational_eval(b, m0, x),
            Self::Rational2D { c, c_tilde, .. } => rational_eval(c, c_tilde, x),
            Self::PowerLaw2D { nu, m0, r0 } => {
                if x <= 0.0 {
                    return domain(format!("power-law mass is defined for r > 0, got r = {x}"));
                }
                let m = m0 * (x / r0).powf(nu);
                MassEval {
                    m,
                    dm: nu * m / x,
                    d2m: nu * (nu - 1.0) * m / (x * x),
                }
            }
            Self::Custom(ref c) => {
                if !(x > c.domain.0 && x < c.domain.1) {
                    return domain(format!("{x} lies outside the domain of profile '{}'", c.name));
                }
                MassEval {
                    m: (c.mass)(x),
                    dm: (c.first)(x),
                    d2m: (c.second)(x),
                }
            }
        };
        if !(out.m > 0.0 && out.m.is_finite()) {
            return domain(format!("mass {} at x = {x} is not positive and finite", out.m));
        }
        if !(out.dm.is_finite() && out.d2m.is_finite()) {
            return domain(format!("mass derivatives are not finite at x = {x}"));
        }
        Ok(out)
    }

    /// m′(x)/m(x).
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        match *self {
            Self::Exponential1D { a, n, .. } => {
                if !x.is_finite() {
                    return domain(format!("non-finite position {x}"));
                }
                Ok(2.0 * a * x.powi(n as i32))
            }
            Self::Rational1D { b, .. } => Ok(-4.0 * b * b * x / (1.0 + b * b * x * x)),
            Self::Rational2D { c, .. } => Ok(-4.0 * c * c * x / (1.0 + c * c * x * x)),
            Self::PowerLaw2D { nu, .. } => {
                if x <= 0.0 {
                    return domain(format!("power-law mass is defined for r > 0, got r = {x}"));
                }
                Ok(nu / x)
            }
            Self::Custom(_) => {
                let e = self.eval(x)?;
                Ok(e.dm / e.m)
            }
        }
    }

    /// Whether the self-induced force −½(m′/m)ẋ² slows (`Damping`) or speeds
    /// up (`AntiDamping`) a particle at `x` moving with velocity `v`.
    pub fn force_sign_class(&self, x: f64, v: f64) -> Result<ForceClass> {
        let ld = self.log_derivative(x)?;
        if ld == 0.0 || v == 0.0 {
            return Ok(ForceClass::Neutral);
        }
        Ok(if ld * v > 0.0 {
            ForceClass::Damping
        } else {
            ForceClass::AntiDamping
        })
    }

    /// Point-canonical coordinate q(x) = ∫_{x_ref}^{x} √m(s) ds.
    ///
    /// Closed form where the antiderivative is elementary, adaptive
    /// quadrature otherwise.
    pub fn pct_coordinate(&self, x: f64, x_ref: f64) -> Result<f64> {
        self.eval(x)?;
        self.eval(x_ref)?;
        match *self {
            Self::Rational1D { b, m0 } => Ok(m0.sqrt() / b * ((b * x).atan() - (b * x_ref).atan())),
            Self::Rational2D { c, c_tilde, .. } => Ok(c_tilde.sqrt() / c * ((c * x).atan() - (c * x_ref).atan())),
            Self::Exponential1D { a, n: 0, m0 } => Ok(m0.sqrt() * ((a * x).exp() - (a * x_ref).exp()) / a),
            Self::PowerLaw2D { nu, m0, r0 } => {
                let scale = m0.sqrt() * r0.powf(-0.5 * nu);
                let p = 0.5 * nu + 1.0;
                if p == 0.0 {
                    Ok(scale * (x / x_ref).ln())
                } else {
                    Ok(scale * (x.powf(p) - x_ref.powf(p)) / p)
                }
            }
            _ => {
                let f = |s: f64| self.eval(s).map(|e| e.m.sqrt()).unwrap_or(f64::NAN);
                let tol = 1e-13 * (x - x_ref).abs().max(1.0);
                integrate_adaptive(f, x_ref, x, tol)
            }
        }
    }
}

fn rational_eval(b: f64, scale: f64, x: f64) -> MassEval {
    let b2 = b * b;
    let u = 1.0 + b2 * x * x;
    MassEval {
        m: scale / (u * u),
        dm: -4.0 * b2 * x * scale / (u * u * u),
        d2m: scale * (20.0 * b2 * b2 * x * x - 4.0 * b2) / (u * u * u * u),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exponential_at_origin() {
        let p = MassProfile::exponential(1.0, 0, 1.0).unwrap();
        let e = p.eval(0.0).unwrap();
        assert_eq!((e.m, e.dm, e.d2m), (1.0, 2.0, 4.0));
    }

    #[test]
    fn rational_at_origin() {
        let p = MassProfile::rational_1d(1.0, 1.0).unwrap();
        let e = p.eval(0.0).unwrap();
        assert_eq!((e.m, e.dm, e.d2m), (1.0, 0.0, -4.0));
    }

    #[test]
    fn constructors_reject_degenerate_parameters() {
        assert!(MassProfile::exponential(0.0, 0, 1.0).is_err());
        assert!(MassProfile::rational_1d(0.0, 1.0).is_err());
        assert!(MassProfile::rational_2d(1.0, -1.0, 1.0).is_err());
        assert!(MassProfile::power_law(-3.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn log_derivatives() {
        let p = MassProfile::exponential(2.0, 1, 1.0).unwrap();
        assert_eq!(p.log_derivative(3.0).unwrap(), 12.0);
        let r = MassProfile::rational_1d(1.7, 2.0).unwrap();
        assert_eq!(r.log_derivative(0.0).unwrap(), 0.0);
        let r2 = MassProfile::rational_2d(1.0, 1.0, 1.0).unwrap();
        assert_eq!(r2.log_derivative(1.0).unwrap(), -2.0);
    }

    #[test]
    fn force_classes() {
        let e = MassProfile::exponential(1.0, 0, 1.0).unwrap();
        assert_eq!(e.force_sign_class(0.0, 1.0).unwrap(), ForceClass::Damping);
        let c = MassProfile::constant(3.0).unwrap();
        assert_eq!(c.force_sign_class(5.0, 1.0).unwrap(), ForceClass::Neutral);
        let r = MassProfile::rational_1d(1.0, 1.0).unwrap();
        assert_eq!(r.force_sign_class(1.0, 1.0).unwrap(), ForceClass::AntiDamping);
    }

    #[test]
    fn power_law_domain() {
        let p = MassProfile::power_law(-3.0, 1.0, 1.0).unwrap();
        assert!(p.eval(0.0).is_err());
        assert!(p.eval(-1.0).is_err());
        assert!(MassProfile::power_law(2.0, 1.0, 1.0).unwrap().eval(0.0).is_err());
    }

    #[test]
    fn rational_2d_reference_mass() {
        for (c, m0, r0) in [(1.0, 1.0, 1.0), (0.3, 2.5, 4.0), (-2.0, 0.7, 0.0)] {
            let p = MassProfile::rational_2d(c, m0, r0).unwrap();
            assert_eq!(p.eval(r0).unwrap().m, m0);
        }
    }

    #[test]
    fn pct_coordinates() {
        let r = MassProfile::rational_1d(1.0, 1.0).unwrap();
        assert!((r.pct_coordinate(1.0, 0.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let c = MassProfile::constant(4.0).unwrap();
        assert!((c.pct_coordinate(3.0, 0.0).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(r.pct_coordinate(0.4, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn pct_quadrature_agrees_with_closed_forms() {
        let cases = [
            MassProfile::rational_1d(0.8, 1.3).unwrap(),
            MassProfile::exponential(-0.6, 0, 2.0).unwrap(),
            MassProfile::power_law(-3.0, 1.5, 0.7).unwrap(),
            MassProfile::power_law(-2.0, 1.0, 1.0).unwrap(),
        ];
        for p in cases {
            let as_custom = {
                let q = p.clone();
                let (q1, q2) = (p.clone(), p.clone());
                MassProfile::custom(CustomProfile::new(
                    "copy",
                    move |x| q.eval(x).unwrap().m,
                    move |x| q1.eval(x).unwrap().dm,
                    move |x| q2.eval(x).unwrap().d2m,
                ))
            };
            let a = p.pct_coordinate(2.1, 0.5).unwrap();
            let b = as_custom.pct_coordinate(2.1, 0.5).unwrap();
            assert!((a - b).abs() < 1e-11 * a.abs().max(1.0), "{}: {a} vs {b}", p.name());
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    fn check_derivatives(p: &MassProfile, x: f64) -> std::result::Result<(), TestCaseError> {
        let h = 1e-5 * x.abs().max(1.0);
        let (lo, hi) = (p.eval(x - h).unwrap(), p.eval(x + h).unwrap());
        let mid = p.eval(x).unwrap();
        let fd1 = (hi.m - lo.m) / (2.0 * h);
        let fd2 = (hi.dm - lo.dm) / (2.0 * h);
        let scale1 = mid.dm.abs().max(mid.m * 1e-3);
        let scale2 = mid.d2m.abs().max(mid.dm.abs() * 1e-3).max(mid.m * 1e-3);
        prop_assert!((fd1 - mid.dm).abs() <= 1e-6 * scale1, "m' {} vs fd {}", mid.dm, fd1);
        prop_assert!((fd2 - mid.d2m).abs() <= 1e-6 * scale2, "m'' {} vs fd {}", mid.d2m, fd2);
        prop_assert!(rel(p.log_derivative(x).unwrap(), mid.dm / mid.m) < 1e-12);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn exponential_derivatives(a in prop_oneof![-1.5f64..-0.1, 0.1f64..1.5], n in 0u32..4, m0 in 0.1f64..5.0, x in -1.5f64..1.5) {
            check_derivatives(&MassProfile::exponential(a, n, m0).unwrap(), x)?;
        }

        #[test]
        fn rational_1d_derivatives(b in 0.1f64..3.0, m0 in 0.1f64..5.0, x in -3.0f64..3.0) {
            check_derivatives(&MassProfile::rational_1d(b, m0).unwrap(), x)?;
        }

        #[test]
        fn power_law_derivatives(nu in -4.0f64..3.0, m0 in 0.1f64..5.0, r0 in 0.2f64..3.0, r in 0.1f64..5.0) {
            check_derivatives(&MassProfile::power_law(nu, m0, r0).unwrap(), r)?;
        }

        #[test]
        fn rational_2d_derivatives(c in 0.1f64..3.0, m0 in 0.1f64..5.0, r0 in 0.0f64..3.0, r in 0.0f64..4.0) {
            check_derivatives(&MassProfile::rational_2d(c, m0, r0).unwrap(), r)?;
        }

        #[test]
        fn exponential_log_derivative_is_exact(a in -2.0f64..2.0, n in 0u32..5, x in -2.0f64..2.0) {
            prop_assume!(a != 0.0);
            let p = MassProfile::exponential(a, n, 1.0).unwrap();
            prop_assert_eq!(p.log_derivative(x).unwrap(), 2.0 * a * x.powi(n as i32));
        }
    }
}
