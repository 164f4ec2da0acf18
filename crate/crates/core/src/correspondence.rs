//! Classical–quantum correspondence for the two rational benchmark masses.
//!
//! A scheme is consistent with a model when the quantum class agrees with the
//! classical fate: escaping particles must be free, confined particles must
//! have bound states. Classical verdicts come from the closed-form blow-up
//! time and confinement interval, so they do not depend on a horizon.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::dynamics1d::{self, ConfinementClass1D, State1D};
use crate::dynamics2d::{self, RadialBound, State2D};
use crate::error::{invalid, Result};
use crate::numerics::{find_turning_points, IntegratorConfig};
use crate::profiles::MassProfile;
use crate::quantum::{classify_1d, classify_2d, OrderingScheme, QuantumClass};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    Rational1D,
    Rational2D,
}

impl Model {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Rational1D => "rational1d",
            Self::Rational2D => "rational2d",
        }
    }
}

/// Parameters and initial conditions of the benchmark orbits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Benchmarks {
    pub b: f64,
    pub m0_1d: f64,
    pub x0: f64,
    pub v0: f64,
    pub c: f64,
    pub m0_2d: f64,
    pub r0: f64,
    pub rdot0: f64,
    pub thetadot0: f64,
}

impl Default for Benchmarks {
    fn default() -> Self {
        Self {
            b: 1.0,
            m0_1d: 1.0,
            x0: 0.0,
            v0: 1.0,
            c: 1.0,
            m0_2d: 1.0,
            r0: 1.0,
            rdot0: 1.0,
            thetadot0: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClassicalClass {
    OneD(ConfinementClass1D),
    TwoD(RadialBound),
}

impl ClassicalClass {
    pub fn is_confined(&self) -> bool {
        match self {
            Self::OneD(c) => c.is_confined(),
            Self::TwoD(b) => b.is_confined(),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::OneD(ConfinementClass1D::ConfinedFinite { range }) => {
                format!("confined ({:.6}, {:.6})", range.0, range.1)
            }
            Self::OneD(ConfinementClass1D::UnboundedFiniteTimeBlowup { t_blowup }) => {
                format!("blow-up at t = {t_blowup:.6}")
            }
            Self::OneD(ConfinementClass1D::UnboundedAsymptotic) => "unbounded".into(),
            Self::TwoD(RadialBound::Interval { r_lo, r_hi }) => format!("r in ({r_lo:.6}, {r_hi:.6})"),
            Self::TwoD(RadialBound::MaxRadius { r_max }) => format!("r <= {r_max:.6}"),
            Self::TwoD(RadialBound::Spiral { growth_rate }) => format!("spiral, rate {growth_rate:.6}"),
            Self::TwoD(RadialBound::Unbounded) => "unbounded".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Agreement {
    Consistent,
    Contradicts,
    /// Consistent exactly for |m| ≥ `min_abs_m`.
    ConditionallyConsistent {
        min_abs_m: u64,
    },
    /// m = 0: the S-states are lost, no verdict.
    Excluded,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Consistent => f.write_str("Consistent"),
            Self::Contradicts => f.write_str("Contradicts"),
            Self::ConditionallyConsistent { min_abs_m } => write!(f, "Consistent for |m|>={min_abs_m}"),
            Self::Excluded => f.write_str("Excluded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceVerdict {
    pub scheme: OrderingScheme,
    pub model: Model,
    pub m_quantum: Option<i64>,
    pub classical_class: ClassicalClass,
    pub quantum_class: QuantumClass,
    pub agreement: Agreement,
}

/// Rule table. (confined, unphysical) is treated like (confined, free).
pub fn agreement(classical: &ClassicalClass, quantum: &QuantumClass) -> Agreement {
    match (classical.is_confined(), quantum) {
        (_, QuantumClass::SStateExcluded) => Agreement::Excluded,
        (false, QuantumClass::Free) | (true, QuantumClass::BoundStates { .. }) => Agreement::Consistent,
        _ => Agreement::Contradicts,
    }
}

/// Analytic classical fate of a benchmark orbit.
pub fn classical_class(model: Model, bm: &Benchmarks) -> Result<ClassicalClass> {
    match model {
        Model::Rational1D => {
            let s0 = State1D::new(bm.x0, bm.v0)?;
            let t_blowup = dynamics1d::rational_blowup_time(bm.b, s0)?;
            Ok(ClassicalClass::OneD(ConfinementClass1D::UnboundedFiniteTimeBlowup {
                t_blowup,
            }))
        }
        Model::Rational2D => Ok(ClassicalClass::TwoD(dynamics2d::rational_confinement_interval(
            bm.c,
            bm.m0_2d,
            bm.r0,
            bm.rdot0,
            bm.thetadot0,
        )?)),
    }
}

/// Classical fate recomputed by integration, for comparison with
/// [`classical_class`].
pub fn simulated_classical_class(model: Model, bm: &Benchmarks) -> Result<ClassicalClass> {
    match model {
        Model::Rational1D => {
            let profile = MassProfile::rational_1d(bm.b, bm.m0_1d)?;
            let s0 = State1D::new(bm.x0, bm.v0)?;
            Ok(ClassicalClass::OneD(dynamics1d::classify(
                &profile,
                s0,
                &dynamics1d::ClassifyOptions::default(),
            )?))
        }
        Model::Rational2D => {
            let g = MassProfile::rational_2d(bm.c, bm.m0_2d, bm.r0)?;
            let s0 = State2D::new(bm.r0, 0.0, bm.rdot0, bm.thetadot0)?;
            let traj = dynamics2d::simulate_polar(&g, s0, 50.0, &IntegratorConfig::default())?;
            let turns = find_turning_points(&traj, 0);
            if turns.is_empty() {
                return Ok(ClassicalClass::TwoD(RadialBound::Unbounded));
            }
            let r_lo = turns.iter().map(|t| t.value).fold(f64::INFINITY, f64::min);
            let r_hi = turns.iter().map(|t| t.value).fold(f64::NEG_INFINITY, f64::max);
            Ok(ClassicalClass::TwoD(RadialBound::Interval { r_lo, r_hi }))
        }
    }
}

/// Verdict for one scheme on one benchmark model (m_quantum is required for
/// the planar model and ignored on the line).
pub fn judge(scheme: &OrderingScheme, model: Model, m_quantum: Option<i64>) -> Result<CorrespondenceVerdict> {
    judge_with(scheme, model, m_quantum, &Benchmarks::default())
}

pub fn judge_with(
    scheme: &OrderingScheme,
    model: Model,
    m_quantum: Option<i64>,
    bm: &Benchmarks,
) -> Result<CorrespondenceVerdict> {
    let classical = classical_class(model, bm)?;
    let (m_quantum, quantum) = match model {
        Model::Rational1D => (None, classify_1d(scheme)),
        Model::Rational2D => {
            let Some(m) = m_quantum else {
                return invalid("the 2D model needs a magnetic quantum number");
            };
            (Some(m), classify_2d(scheme, m))
        }
    };
    Ok(CorrespondenceVerdict {
        scheme: scheme.clone(),
        model,
        m_quantum,
        agreement: agreement(&classical, &quantum),
        classical_class: classical,
        quantum_class: quantum,
    })
}

/// Per-(scheme, model) aggregate over the magnetic quantum numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scheme: String,
    pub model: Model,
    pub agreement: Agreement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reliability {
    /// Consistent in every model examined.
    Reliable,
    /// Quantum-mechanically unphysical on a benchmark.
    Disqualified,
    /// Mixed evidence; no verdict pronounced.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeJudgment {
    pub scheme: String,
    pub one_d: Option<Agreement>,
    pub two_d: Option<Agreement>,
    pub two_d_bound_for_some_m: bool,
    pub reliability: Reliability,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrespondenceReport {
    pub verdicts: Vec<CorrespondenceVerdict>,
    pub summaries: Vec<SummaryRow>,
    pub judgments: Vec<SchemeJudgment>,
    pub footer: Vec<String>,
}

impl CorrespondenceReport {
    pub fn verdict(&self, scheme: &str, model: Model, m_quantum: Option<i64>) -> Option<&CorrespondenceVerdict> {
        self.verdicts
            .iter()
            .find(|v| v.scheme.name == scheme && v.model == model && v.m_quantum == m_quantum)
    }

    pub fn summary(&self, scheme: &str, model: Model) -> Option<Agreement> {
        self.summaries
            .iter()
            .find(|s| s.scheme == scheme && s.model == model)
            .map(|s| s.agreement)
    }

    pub fn judgment(&self, scheme: &str) -> Option<&SchemeJudgment> {
        self.judgments.iter().find(|j| j.scheme == scheme)
    }
}

/// Collapses per-|m| verdicts (m = 0 already removed) into one agreement.
fn aggregate(mut cells: Vec<(u64, Agreement)>) -> Agreement {
    if cells.is_empty() {
        return Agreement::Excluded;
    }
    cells.sort_by_key(|c| c.0);
    let first_ok = cells.iter().position(|c| c.1 == Agreement::Consistent);
    match first_ok {
        Some(0) if cells.iter().all(|c| c.1 == Agreement::Consistent) => Agreement::Consistent,
        Some(i) if cells[i..].iter().all(|c| c.1 == Agreement::Consistent) => {
            Agreement::ConditionallyConsistent { min_abs_m: cells[i].0 }
        }
        _ => Agreement::Contradicts,
    }
}

/// Verdict matrix over `schemes` × `models` (× `m_range` for the planar
/// model), with per-row summaries and per-scheme judgments.
pub fn full_report(
    schemes: &[OrderingScheme],
    models: &[Model],
    m_range: RangeInclusive<i64>,
) -> Result<CorrespondenceReport> {
    full_report_with(schemes, models, m_range, &Benchmarks::default())
}

pub fn full_report_with(
    schemes: &[OrderingScheme],
    models: &[Model],
    m_range: RangeInclusive<i64>,
    bm: &Benchmarks,
) -> Result<CorrespondenceReport> {
    if schemes.is_empty() || models.is_empty() {
        return invalid("at least one scheme and one model are required");
    }
    if models.contains(&Model::Rational2D) && m_range.is_empty() {
        return invalid("the 2D model needs a non-empty range of magnetic quantum numbers");
    }

    let mut cells = Vec::new();
    for s in schemes {
        for &model in models {
            match model {
                Model::Rational1D => cells.push((s, model, None)),
                Model::Rational2D => cells.extend(m_range.clone().map(|m| (s, model, Some(m)))),
            }
        }
    }
    let verdicts = sweep::map(&cells, |&(s, model, m)| judge_with(s, model, m, bm))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut summaries = Vec::new();
    let mut judgments = Vec::new();
    for s in schemes {
        let mut row = SchemeJudgment {
            scheme: s.name.clone(),
            one_d: None,
            two_d: None,
            two_d_bound_for_some_m: false,
            reliability: Reliability::Undecided,
        };
        let mut unphysical = false;
        for &model in models {
            let mine: Vec<_> = verdicts.iter().filter(|v| v.scheme == *s && v.model == model).collect();
            let agreement = match model {
                Model::Rational1D => mine[0].agreement,
                Model::Rational2D => aggregate(
                    mine.iter()
                        .filter(|v| v.agreement != Agreement::Excluded)
                        .map(|v| (v.m_quantum.unwrap_or(0).unsigned_abs(), v.agreement))
                        .collect(),
                ),
            };
            if model == Model::Rational1D {
                unphysical |= mine[0].quantum_class == QuantumClass::Unphysical;
                row.one_d = Some(agreement);
            } else {
                row.two_d = Some(agreement);
                row.two_d_bound_for_some_m = mine.iter().any(|v| v.quantum_class.is_bound());
            }
            summaries.push(SummaryRow {
                scheme: s.name.clone(),
                model,
                agreement,
            });
        }
        let all_consistent = [row.one_d, row.two_d]
            .iter()
            .flatten()
            .all(|a| *a == Agreement::Consistent);
        row.reliability = if all_consistent {
            Reliability::Reliable
        } else if unphysical {
            Reliability::Disqualified
        } else {
            Reliability::Undecided
        };
        judgments.push(row);
    }

    let mut footer = vec![
        "Rule extension: a confined classical orbit paired with an unphysical quantum class counts as Contradicts."
            .to_string(),
        "Classical classes are analytic (blow-up time on the line, turning-radius interval in the plane).".to_string(),
        "Quantum walls sit at z = ±π/2 (line) and z = π/2 (plane); z = arctan(Bx) and z = arctan(Cr) reach them only as x, r → ∞, so no finite x- or r-range is asserted."
            .to_string(),
    ];
    if models.contains(&Model::Rational2D) && m_range.contains(&0) {
        footer.push(
            "m = 0 rows are Excluded: m² − 1/4 < 0 loses the S-states, and they do not enter the 2D summary."
                .to_string(),
        );
    }
    if judgments.iter().any(|j| j.reliability == Reliability::Undecided) {
        footer.push(
            "Undecided schemes contradict on one model but not by being unphysical; no final verdict is pronounced."
                .to_string(),
        );
    }

    Ok(CorrespondenceReport {
        verdicts,
        summaries,
        judgments,
        footer,
    })
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<24} {:<11} {:>4}  {:<30} {:<16} verdict",
            "scheme", "model", "m", "classical", "quantum"
        )?;
        for v in &self.verdicts {
            let m = v.m_quantum.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<24} {:<11} {:>4}  {:<30} {:<16} {}",
                v.scheme.name,
                v.model.label(),
                m,
                v.classical_class.label(),
                v.quantum_class.label(),
                v.agreement
            )?;
        }
        writeln!(f)?;
        writeln!(f, "{:<24} {:<26} {:<26} judgment", "scheme", "rational1d", "rational2d")?;
        for j in &self.judgments {
            let show = |a: Option<Agreement>| a.map(|a| a.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<24} {:<26} {:<26} {:?}",
                j.scheme,
                show(j.one_d),
                show(j.two_d),
                j.reliability
            )?;
        }
        writeln!(f)?;
        for line in &self.footer {
            writeln!(f, "note: {line}")?;
        }
        Ok(())
    }
}
