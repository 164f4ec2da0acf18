//! Bound-state spectra of the Pöschl–Teller effective potentials.
//!
//! Dirichlet finite differences on the open z-interval. Endpoints are left
//! out of the grid because the potential is singular there. Each solve also
//! runs on a half-size grid, and the difference between the two feeds the
//! per-level error estimate.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numerics::{eigen_tridiagonal, eigenvector_tridiagonal};
use crate::quantum::{Dimension, EffectivePotential, EnergyBackmap, QuantumClass};
use crate::sweep;

pub const DEFAULT_GRID_1D: usize = 2000;
/// The 1/sin²z wall converges more slowly, so 2D requests use twice the grid.
pub const DEFAULT_GRID_2D: usize = 4000;
pub const MIN_GRID: usize = 64;

/// Safety factor on the Richardson estimate.
pub const ERROR_SAFETY_FACTOR: f64 = 1.25;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRequest {
    pub potential: EffectivePotential,
    pub n_states: usize,
    pub grid_points: usize,
    /// Solve a `Free` potential anyway (a box with hard walls).
    pub allow_unbound: bool,
}

impl SpectrumRequest {
    pub fn new(potential: EffectivePotential, n_states: usize) -> Self {
        let grid_points = match potential.dimension {
            Dimension::OneD => DEFAULT_GRID_1D,
            Dimension::TwoDRadial => DEFAULT_GRID_2D,
        };
        Self {
            potential,
            n_states,
            grid_points,
            allow_unbound: false,
        }
    }

    pub fn with_grid(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn allowing_unbound(mut self) -> Self {
        self.allow_unbound = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_states == 0 {
            return invalid("n_states must be at least 1");
        }
        if self.grid_points < MIN_GRID {
            return invalid(format!(
                "grid_points must be at least {MIN_GRID}, got {}",
                self.grid_points
            ));
        }
        if self.n_states > self.grid_points / 4 {
            return invalid(format!(
                "{} states cannot be resolved on a grid of {} points",
                self.n_states, self.grid_points
            ));
        }
        match self.potential.class {
            QuantumClass::BoundStates { .. } => Ok(()),
            QuantumClass::Free if self.allow_unbound => Ok(()),
            other => Err(Error::NotBound(format!(
                "{} potential of scheme {} is classified {}",
                match self.potential.dimension {
                    Dimension::OneD => "1D",
                    Dimension::TwoDRadial => "2D",
                },
                self.potential.scheme,
                other.label()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub levels_scaled: Vec<f64>,
    pub levels_physical: Vec<f64>,
    pub grid_points_used: usize,
    pub estimated_error: Vec<f64>,
    pub backmap: EnergyBackmap,
}

/// Tridiagonal FD Hamiltonian on `n` interior points.
fn hamiltonian(p: &EffectivePotential, n: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let (lo, hi) = p.domain;
    let h = (hi - lo) / (n as f64 + 1.0);
    let kin = p.kinetic_prefactor / (h * h);
    let diag = (1..=n).map(|i| 2.0 * kin + p.value(lo + i as f64 * h)).collect();
    (diag, vec![-kin; n - 1], h)
}

fn lowest_levels(p: &EffectivePotential, n: usize, count: usize) -> Result<Vec<f64>> {
    let (diag, off, _) = hamiltonian(p, n);
    eigen_tridiagonal(&diag, &off, count)
}

/// Lowest `n_states` levels with a Richardson-type error estimate.
///
/// The estimate is Fs·|𝓔(N) − 𝓔(N/2)|/(ρ² − 1), with ρ the ratio of the
/// two grid spacings and Fs = [`ERROR_SAFETY_FACTOR`].
pub fn solve(req: &SpectrumRequest) -> Result<Spectrum> {
    req.validate()?;
    let p = &req.potential;
    let (n_fine, n_coarse) = (req.grid_points, req.grid_points / 2);
    let (fine, coarse) = sweep::join(
        || lowest_levels(p, n_fine, req.n_states),
        || lowest_levels(p, n_coarse, req.n_states),
    );
    let (fine, coarse) = (fine?, coarse?);
    let rho = (n_fine as f64 + 1.0) / (n_coarse as f64 + 1.0);
    let estimated_error = fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| ERROR_SAFETY_FACTOR * (f - c).abs() / (rho * rho - 1.0))
        .collect();
    log::debug!("solved {} levels of {} on {} points", req.n_states, p.scheme, n_fine);
    Ok(Spectrum {
        levels_physical: fine.iter().map(|&l| p.energy_backmap.to_physical(l)).collect(),
        levels_scaled: fine,
        grid_points_used: n_fine,
        estimated_error,
        backmap: p.energy_backmap,
    })
}

/// Grid-point wavefunctions (unit Euclidean norm) for the requested levels,
/// on the fine grid of `req`. Returns the z-coordinates alongside.
pub fn wavefunctions(req: &SpectrumRequest, levels: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    req.validate()?;
    let p = &req.potential;
    let (diag, off, h) = hamiltonian(p, req.grid_points);
    let z = (1..=req.grid_points).map(|i| p.domain.0 + i as f64 * h).collect();
    let states = levels
        .iter()
        .map(|&l| eigenvector_tridiagonal(&diag, &off, l))
        .collect::<Result<Vec<_>>>()?;
    Ok((z, states))
}

/// Interior sign changes, ignoring entries below 1e-10 of the peak.
pub fn sign_changes(psi: &[f64]) -> usize {
    let peak = psi.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let floor = 1e-10 * peak;
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in psi.iter().filter(|v| v.abs() > floor) {
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// 𝓔ₙ = (n + λ)²/(2m0) for −1/(2m0)∂² + λ(λ−1)/(2m0 cos²z). λ = 1 is the bare box.
pub fn pt_reference_1d(lambda: f64, m0: f64, n: usize) -> Result<f64> {
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return invalid(format!("lambda must be at least 1, got {lambda}"));
    }
    if !(m0 > 0.0 && m0.is_finite()) {
        return invalid("m0 must be positive");
    }
    Ok((n as f64 + lambda).powi(2) / (2.0 * m0))
}

/// ηₙ = (2n + λ_sin + λ_cos)² for −∂² + λ_sin(λ_sin−1)/sin²z + λ_cos(λ_cos−1)/cos²z.
pub fn pt_reference_2d(lambda_sin: f64, lambda_cos: f64, n: usize) -> Result<f64> {
    if !(lambda_sin >= 1.0 && lambda_sin.is_finite() && lambda_cos >= 1.0 && lambda_cos.is_finite()) {
        return invalid(format!(
            "exponents must be at least 1 (regular branch), got lambda_sin = {lambda_sin}, lambda_cos = {lambda_cos}"
        ));
    }
    Ok((2.0 * n as f64 + lambda_sin + lambda_cos).powi(2))
}

/// Analytic scaled level n of a potential built by the `quantum` module.
pub fn reference_level(p: &EffectivePotential, n: usize) -> Result<f64> {
    match (p.dimension, p.class) {
        (Dimension::OneD, QuantumClass::BoundStates { lambda }) => pt_reference_1d(lambda, p.mass_scale, n),
        (Dimension::OneD, QuantumClass::Free) => pt_reference_1d(1.0, p.mass_scale, n),
        (Dimension::TwoDRadial, QuantumClass::BoundStates { .. } | QuantumClass::Free) => {
            let m = p.m_quantum.unwrap_or(0).unsigned_abs() as f64;
            let lambda_cos = 0.5 * (1.0 + (1.0 + 4.0 * p.well_coeff).sqrt());
            pt_reference_2d(0.5 + m, lambda_cos, n)
        }
        (_, class) => Err(Error::NotBound(format!(
            "no analytic ladder for class {}",
            class.label()
        ))),
    }
}
