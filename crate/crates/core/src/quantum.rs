//! Von Roos ordering ambiguity and the resulting effective potentials.
//!
//! The kinetic operator ¼[m^j p m^k p m^l + m^l p m^k p m^j] with
//! j + k + l = −1 reduces, for the two rational mass models, to Pöschl–Teller
//! wells after a point-canonical transformation. Whether the well binds is
//! decided by exact rational combinations of (j, k, l), so coefficients are
//! kept as [`Exact`] rationals and only converted to floats when a potential
//! is built.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

pub type Exact = Ratio<i128>;

fn q(n: i128, d: i128) -> Exact {
    Ratio::new(n, d)
}

/// Parses "-0.25", "3", "-1/4" or "1.5e-1" into an exact rational.
pub fn parse_exact(text: &str) -> Result<Exact> {
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad_number(text))?;
        let d: i128 = d.trim().parse().map_err(|_| bad_number(text))?;
        if d == 0 {
            return invalid(format!("zero denominator in '{text}'"));
        }
        return Ok(Ratio::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad_number(text))?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad_number(text));
    }
    if !(int_part.chars().all(|c| c.is_ascii_digit()) && frac_part.chars().all(|c| c.is_ascii_digit())) {
        return Err(bad_number(text));
    }
    let scale = frac_part.len() as i32 - exp;
    if frac_part.len() + int_part.len() > 30 || scale.abs() > 30 {
        return invalid(format!("'{text}' has too many digits for exact arithmetic"));
    }
    let all: i128 = format!("{int_part}{frac_part}").parse().map_err(|_| bad_number(text))?;
    let signed = if neg { -all } else { all };
    Ok(if scale >= 0 {
        Ratio::new(signed, 10i128.pow(scale as u32))
    } else {
        Ratio::from_integer(signed * 10i128.pow((-scale) as u32))
    })
}

fn bad_number(text: &str) -> crate::Error {
    crate::Error::InvalidParameter(format!("cannot parse '{text}' as a rational number"))
}

pub fn to_f64(x: Exact) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// "0.3125 (5/16)": shortest round-trip decimal with the exact fraction.
pub fn describe_exact(x: Exact) -> String {
    format!("{} ({})", to_f64(x), x)
}

fn ser_exact<S: Serializer>(x: &Exact, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&describe_exact(*x))
}

/// Ambiguity triple (j, k, l) with j + k + l = −1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingScheme {
    pub name: String,
    #[serde(serialize_with = "ser_exact")]
    pub j: Exact,
    #[serde(serialize_with = "ser_exact")]
    pub k: Exact,
    #[serde(serialize_with = "ser_exact")]
    pub l: Exact,
}

impl OrderingScheme {
    pub fn new(name: impl Into<String>, j: Exact, k: Exact, l: Exact) -> Result<Self> {
        if j + k + l != q(-1, 1) {
            return invalid(format!(
                "ordering parameters must satisfy j + k + l = -1, got {}",
                j + k + l
            ));
        }
        Ok(Self {
            name: name.into(),
            j,
            k,
            l,
        })
    }

    /// Builds the scheme with l = −1 − j − k.
    pub fn from_jk(name: impl Into<String>, j: Exact, k: Exact) -> Self {
        Self {
            name: name.into(),
            j,
            k,
            l: q(-1, 1) - j - k,
        }
    }

    pub fn coefficients(&self) -> AmbiguityCoefficients {
        coefficients(self)
    }

    /// The same scheme with j and l exchanged.
    pub fn mirrored(&self) -> Self {
        Self {
            name: format!("{}(j<->l)", self.name),
            j: self.l,
            k: self.k,
            l: self.j,
        }
    }

    /// 8ξ − 8k − 12 − m² + 1/4; negative means the 2D well binds at |m|.
    pub fn well_bracket_2d(&self, m_quantum: i64) -> Exact {
        let xi = self.coefficients().xi;
        let m2 = Exact::from_integer(i128::from(m_quantum) * i128::from(m_quantum));
        q(8, 1) * xi - q(8, 1) * self.k - q(12, 1) - m2 + q(1, 4)
    }
}

impl fmt::Display for OrderingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (j={}, k={}, l={})", self.name, self.j, self.k, self.l)
    }
}

/// The five orderings discussed in the literature.
pub fn builtin_schemes() -> Vec<OrderingScheme> {
    let mk = |name: &str, j, k, l| OrderingScheme::new(name, j, k, l).expect("built-in schemes satisfy the constraint");
    vec![
        mk("ZhuKroemer", q(-1, 2), q(0, 1), q(-1, 2)),
        mk("MustafaMazharimousavi", q(-1, 4), q(-1, 2), q(-1, 4)),
        mk("BenDanielDuke", q(0, 1), q(-1, 1), q(0, 1)),
        mk("GoraWilliams", q(-1, 1), q(0, 1), q(0, 1)),
        mk("LiKuhn", q(0, 1), q(-1, 2), q(-1, 2)),
    ]
}

/// Looks a built-in scheme up by name, case- and punctuation-insensitively,
/// or by its initials (zk, mm, bdd, gw, lk).
pub fn scheme_by_name(name: &str) -> Option<OrderingScheme> {
    let key: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase();
    let alias = match key.as_str() {
        "zk" => "zhukroemer",
        "mm" => "mustafamazharimousavi",
        "bdd" | "bendanieldduke" => "bendanielduke",
        "gw" | "gorawilliam" => "gorawilliams",
        "lk" => "likuhn",
        other => other,
    };
    builtin_schemes()
        .into_iter()
        .find(|s| s.name.to_ascii_lowercase() == alias)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmbiguityCoefficients {
    #[serde(serialize_with = "ser_exact")]
    pub a: Exact,
    #[serde(serialize_with = "ser_exact")]
    pub b: Exact,
    #[serde(serialize_with = "ser_exact")]
    pub xi: Exact,
}

impl AmbiguityCoefficients {
    /// 5a − 4b: the 1D well strength in units of 2/m0.
    pub fn five_a_minus_four_b(&self) -> Exact {
        q(5, 1) * self.a - q(4, 1) * self.b
    }

    /// 3a − 2b: enters the 1D energy shift.
    pub fn three_a_minus_two_b(&self) -> Exact {
        q(3, 1) * self.a - q(2, 1) * self.b
    }
}

/// a = (1+2k)/4, b = 9/16 + j(j+k+1) + k, ξ = j(j−1) + l(l−1) − k(k+1).
pub fn coefficients(s: &OrderingScheme) -> AmbiguityCoefficients {
    let one = q(1, 1);
    let (j, k, l) = (s.j, s.k, s.l);
    AmbiguityCoefficients {
        a: (one + q(2, 1) * k) / q(4, 1),
        b: q(9, 16) + j * (j + k + one) + k,
        xi: j * (j - one) + l * (l - one) - k * (k + one),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dimension {
    OneD,
    TwoDRadial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum QuantumClass {
    /// Confining Pöschl–Teller well with exponent λ > 1.
    BoundStates { lambda: f64 },
    /// Vanishing well: a textbook free particle.
    Free,
    /// Negative (attractive-singular) coefficient; no admissible spectrum.
    Unphysical,
    /// m = 0 in the plane: the centrifugal coefficient m² − 1/4 is negative.
    SStateExcluded,
}

impl QuantumClass {
    pub fn is_bound(&self) -> bool {
        matches!(self, Self::BoundStates { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::BoundStates { .. } => "BoundStates",
            Self::Free => "Free",
            Self::Unphysical => "Unphysical",
            Self::SStateExcluded => "SStateExcluded",
        }
    }
}

/// Affine map from the scaled eigenvalue to the physical energy,
/// E = slope·level + offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBackmap {
    pub slope: f64,
    pub offset: f64,
}

impl EnergyBackmap {
    pub fn to_physical(&self, level: f64) -> f64 {
        self.slope * level + self.offset
    }

    pub fn to_scaled(&self, energy: f64) -> f64 {
        (energy - self.offset) / self.slope
    }
}

/// −κ ψ″ + [centrifugal/sin²z + well/cos²z] ψ = level·ψ on `domain`, with κ
/// the kinetic prefactor (1/(2m0) in 1D, 1 in the radial 2D problem).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectivePotential {
    pub dimension: Dimension,
    pub scheme: String,
    pub m_quantum: Option<i64>,
    pub kinetic_prefactor: f64,
    pub well_coeff: f64,
    pub centrifugal_coeff: f64,
    #[serde(serialize_with = "ser_exact")]
    pub well_coeff_exact: Exact,
    pub domain: (f64, f64),
    pub mass_scale: f64,
    pub energy_backmap: EnergyBackmap,
    pub class: QuantumClass,
}

impl EffectivePotential {
    pub fn value(&self, z: f64) -> f64 {
        let mut v = self.well_coeff / z.cos().powi(2);
        if self.centrifugal_coeff != 0.0 {
            v += self.centrifugal_coeff / z.sin().powi(2);
        }
        v
    }

    pub fn s_state_excluded(&self) -> bool {
        self.class == QuantumClass::SStateExcluded
    }

    /// Exponents (λ_sin, λ_cos) with coefficient = λ(λ−1)/(2m0) (1D, no sin
    /// term) or λ(λ−1) (2D). `None` when the well does not bind.
    pub fn exponents(&self) -> Option<(f64, f64)> {
        match self.dimension {
            Dimension::OneD => {
                // well_coeff_exact = 2(5a − 4b), λ(λ−1) = 4(5a − 4b)
                let s = 2.0 * to_f64(self.well_coeff_exact);
                (s > 0.0).then(|| (0.0, upper_root(s)))
            }
            Dimension::TwoDRadial => {
                let m = self.m_quantum.unwrap_or(0).unsigned_abs() as f64;
                (self.well_coeff > 0.0 && m > 0.0).then(|| (0.5 + m, upper_root(self.well_coeff)))
            }
        }
    }
}

/// Larger root of λ(λ−1) = c.
fn upper_root(c: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 4.0 * c).sqrt())
}

/// Sign of 5a − 4b decides the 1D class; λ(λ−1) = 4(5a − 4b).
pub fn classify_1d(s: &OrderingScheme) -> QuantumClass {
    let w = s.coefficients().five_a_minus_four_b();
    if w.is_positive() {
        QuantumClass::BoundStates {
            lambda: upper_root(4.0 * to_f64(w)),
        }
    } else if w.is_zero() {
        QuantumClass::Free
    } else {
        QuantumClass::Unphysical
    }
}

/// Both 8ξ − 8k − 12 − m² + 1/4 < 0 and m² − 1/4 > 0 are required.
pub fn classify_2d(s: &OrderingScheme, m_quantum: i64) -> QuantumClass {
    if m_quantum == 0 {
        return QuantumClass::SStateExcluded;
    }
    let well = -s.well_bracket_2d(m_quantum);
    if well.is_positive() {
        QuantumClass::BoundStates {
            lambda: upper_root(to_f64(well)),
        }
    } else if well.is_zero() {
        QuantumClass::Free
    } else {
        QuantumClass::Unphysical
    }
}

/// Effective potential 2(5a−4b)/(m0 cos²z) on (−π/2, π/2) for the mass
/// m0/(1+B²x²)², with 𝓔 = E/B² + (4/m0)(3a − 2b).
pub fn effective_potential_1d(s: &OrderingScheme, b: f64, m0: f64) -> Result<EffectivePotential> {
    if b == 0.0 || !b.is_finite() {
        return invalid("B must be finite and non-zero");
    }
    if !(m0 > 0.0 && m0.is_finite()) {
        return invalid("m0 must be positive");
    }
    let c = s.coefficients();
    let w = c.five_a_minus_four_b();
    let shift = 4.0 / m0 * to_f64(c.three_a_minus_two_b());
    Ok(EffectivePotential {
        dimension: Dimension::OneD,
        scheme: s.name.clone(),
        m_quantum: None,
        kinetic_prefactor: 1.0 / (2.0 * m0),
        well_coeff: 2.0 * to_f64(w) / m0,
        centrifugal_coeff: 0.0,
        well_coeff_exact: w * q(2, 1),
        domain: (-FRAC_PI_2, FRAC_PI_2),
        mass_scale: m0,
        energy_backmap: EnergyBackmap {
            slope: b * b,
            offset: -b * b * shift,
        },
        class: classify_1d(s),
    })
}

/// Effective potential (m²−1/4)/sin²z − (8ξ−8k−12−m²+1/4)/cos²z on (0, π/2)
/// for the mass C̃/(1+C²r²)², with η = 2EC̃/C² − 8ξ + 12k − 1.
///
/// `well_coeff_exact` holds the exact cos⁻² coefficient (not divided by m0).
pub fn effective_potential_2d(
    s: &OrderingScheme,
    m_quantum: i64,
    c: f64,
    m0: f64,
    r0: f64,
) -> Result<EffectivePotential> {
    if c == 0.0 || !c.is_finite() {
        return invalid("C must be finite and non-zero");
    }
    if !(m0 > 0.0 && m0.is_finite()) || !(r0 >= 0.0 && r0.is_finite()) {
        return invalid("m0 must be positive and r0 non-negative");
    }
    let c_tilde = m0 * (1.0 + c * c * r0 * r0).powi(2);
    let coeffs = s.coefficients();
    let well = -s.well_bracket_2d(m_quantum);
    let m2 = (m_quantum as f64).powi(2);
    // η + 8ξ − 12k + 1 = 2EC̃/C²
    let eta_shift = to_f64(q(8, 1) * coeffs.xi - q(12, 1) * s.k + q(1, 1));
    let slope = c * c / (2.0 * c_tilde);
    Ok(EffectivePotential {
        dimension: Dimension::TwoDRadial,
        scheme: s.name.clone(),
        m_quantum: Some(m_quantum),
        kinetic_prefactor: 1.0,
        well_coeff: to_f64(well),
        centrifugal_coeff: m2 - 0.25,
        well_coeff_exact: well,
        domain: (0.0, FRAC_PI_2),
        mass_scale: c_tilde,
        energy_backmap: EnergyBackmap {
            slope,
            offset: slope * eta_shift,
        },
        class: classify_2d(s, m_quantum),
    })
}

/// z = arctan(Bx), the 1D transformed coordinate; |z| < π/2 for all finite x.
pub fn pct_coordinate_1d(b: f64, x: f64) -> f64 {
    (b * x).atan()
}

/// z = C q(r)/√C̃ = arctan(|C| r) ∈ [0, π/2).
pub fn pct_coordinate_2d(c: f64, m0: f64, r0: f64, r: f64) -> Result<f64> {
    if r < 0.0 {
        return invalid("radius must be non-negative");
    }
    if c == 0.0 || !(m0 > 0.0) || r0 < 0.0 {
        return invalid("C must be non-zero, m0 positive, r0 non-negative");
    }
    Ok((c.abs() * r).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scheme(name: &str) -> OrderingScheme {
        scheme_by_name(name).unwrap()
    }

    #[test]
    fn builtins_satisfy_constraint() {
        let all = builtin_schemes();
        assert_eq!(all.len(), 5);
        for s in &all {
            assert_eq!(s.j + s.k + s.l, q(-1, 1));
        }
        let bdd = scheme("BenDanielDuke");
        assert_eq!((bdd.j, bdd.k, bdd.l), (q(0, 1), q(-1, 1), q(0, 1)));
        let gw = scheme("gorawilliams");
        assert_eq!((gw.j, gw.k, gw.l), (q(-1, 1), q(0, 1), q(0, 1)));
        assert_eq!(scheme("bendanieldduke"), bdd);
    }

    #[test]
    fn coefficient_examples() {
        let c = scheme("zk").coefficients();
        assert_eq!((c.a, c.b, c.xi), (q(1, 4), q(5, 16), q(3, 2)));
        let c = scheme("mm").coefficients();
        assert_eq!((c.a, c.b, c.xi), (q(0, 1), q(0, 1), q(7, 8)));
        let c = scheme("bdd").coefficients();
        assert_eq!((c.a, c.b, c.xi), (q(-1, 4), q(-7, 16), q(0, 1)));
    }

    #[test]
    fn constructor_rejects_bad_triples() {
        assert!(OrderingScheme::new("x", q(0, 1), q(0, 1), q(0, 1)).is_err());
        assert!(OrderingScheme::new("x", q(-1, 3), q(-1, 3), q(-1, 3)).is_ok());
    }

    #[test]
    fn potentials_1d() {
        let p = effective_potential_1d(&scheme("bdd"), 1.0, 1.0).unwrap();
        assert_eq!(p.well_coeff, 1.0);
        assert_eq!(p.class, QuantumClass::BoundStates { lambda: 2.0 });
        let p = effective_potential_1d(&scheme("zk"), 3.0, 2.0).unwrap();
        assert_eq!(p.well_coeff, 0.0);
        assert!(p.well_coeff_exact.is_zero());
        assert_eq!(p.class, QuantumClass::Free);
        let p = effective_potential_1d(&scheme("gw"), 1.0, 1.0).unwrap();
        assert_eq!(p.well_coeff, -2.0);
        assert_eq!(p.class, QuantumClass::Unphysical);
        assert!(effective_potential_1d(&scheme("gw"), 0.0, 1.0).is_err());
    }

    #[test]
    fn potentials_2d() {
        let p = effective_potential_2d(&scheme("gw"), 1, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.well_coeff, -3.25);
        assert!(!p.class.is_bound());
        let p = effective_potential_2d(&scheme("zk"), 1, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(scheme("zk").well_bracket_2d(1), q(-3, 4));
        assert!(p.class.is_bound());
        assert_eq!(p.centrifugal_coeff, 0.75);
        let p = effective_potential_2d(&scheme("zk"), 0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.centrifugal_coeff, -0.25);
        assert!(p.s_state_excluded());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_1d(&scheme("bdd")), QuantumClass::BoundStates { lambda: 2.0 });
        assert_eq!(classify_1d(&scheme("mm")), QuantumClass::Free);
        assert_eq!(classify_1d(&scheme("lk")), QuantumClass::Unphysical);
        assert_eq!(scheme("lk").coefficients().five_a_minus_four_b(), q(-1, 4));
        assert!(!classify_2d(&scheme("gw"), 2).is_bound());
        assert!(classify_2d(&scheme("gw"), 3).is_bound());
        for s in builtin_schemes() {
            assert!(classify_2d(&s, 3).is_bound());
            assert!(classify_2d(&s, -3).is_bound());
        }
        assert_eq!(classify_2d(&scheme("zk"), 0), QuantumClass::SStateExcluded);
    }

    #[test]
    fn backmaps_invert() {
        let p = effective_potential_1d(&scheme("bdd"), 1.3, 0.7).unwrap();
        for e in [-3.0, 0.0, 2.5, 1e3] {
            let back = p.energy_backmap.to_physical(p.energy_backmap.to_scaled(e));
            assert!((back - e).abs() <= 4.0 * f64::EPSILON * e.abs().max(1.0));
        }
        let p2 = effective_potential_2d(&scheme("zk"), 2, 0.8, 1.1, 0.5).unwrap();
        let e = 4.2;
        assert!((p2.energy_backmap.to_physical(p2.energy_backmap.to_scaled(e)) - e).abs() < 1e-14);
        // 1D: E = B²(𝓔 − (4/m0)(3a − 2b)); BDD has 3a − 2b = 1/8
        let p = effective_potential_1d(&scheme("bdd"), 2.0, 1.0).unwrap();
        assert!((p.energy_backmap.to_physical(2.0) - 4.0 * (2.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn transformed_coordinates() {
        assert_eq!(pct_coordinate_2d(1.0, 1.0, 1.0, 0.0).unwrap(), 0.0);
        assert!((pct_coordinate_2d(1.0, 1.0, 1.0, 1.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let far = pct_coordinate_2d(1.0, 1.0, 1.0, 1e12).unwrap();
        assert!(far < FRAC_PI_2 && FRAC_PI_2 - far < 1e-11);
        assert!(pct_coordinate_1d(2.0, 1e9) < FRAC_PI_2);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_exact("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_exact("-1/4").unwrap(), q(-1, 4));
        assert_eq!(parse_exact("0").unwrap(), q(0, 1));
        assert_eq!(parse_exact("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_exact(".75").unwrap(), q(3, 4));
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("1/0").is_err());
        assert_eq!(describe_exact(q(5, 16)), "0.3125 (5/16)");
    }

    fn small_rational() -> impl Strategy<Value = Exact> {
        (-40i128..=40, 1i128..=16).prop_map(|(n, d)| Ratio::new(n, d))
    }

    proptest! {
        #[test]
        fn b_and_xi_symmetric_in_j_l(j in small_rational(), k in small_rational()) {
            let s = OrderingScheme::from_jk("p", j, k);
            let m = s.mirrored();
            prop_assert_eq!(s.coefficients().b, m.coefficients().b);
            prop_assert_eq!(s.coefficients().xi, m.coefficients().xi);
            prop_assert_eq!(classify_1d(&s), classify_1d(&m));
        }

        #[test]
        fn binding_is_monotone_in_m(j in small_rational(), k in small_rational()) {
            let s = OrderingScheme::from_jk("p", j, k);
            let mut bound = false;
            for m in 1..12 {
                let now = classify_2d(&s, m).is_bound();
                prop_assert!(!bound || now);
                bound = now;
            }
        }
    }
}
