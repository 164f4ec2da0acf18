use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Stepping scheme used by [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Method {
    /// Embedded Dormand–Prince 5(4) pair with local error control.
    DormandPrince,
    /// Classical fourth-order Runge–Kutta with a fixed step.
    Rk4 { step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_step: f64,
    pub max_steps: usize,
    pub method: Method,
    /// Integration ends with [`Termination::Diverged`] once any state
    /// component exceeds this magnitude.
    pub state_ceiling: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_step: f64::INFINITY,
            max_steps: 2_000_000,
            method: Method::DormandPrince,
            state_ceiling: 1e12,
        }
    }
}

impl IntegratorConfig {
    pub fn fixed_step(step: f64) -> Self {
        Self {
            method: Method::Rk4 { step },
            ..Self::default()
        }
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_step(mut self, max_step: f64) -> Self {
        self.max_step = max_step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return invalid("integrator tolerances must be positive");
        }
        if self.max_steps == 0 {
            return invalid("max_steps must be positive");
        }
        if !(self.max_step > 0.0) {
            return invalid("max_step must be positive");
        }
        if !(self.state_ceiling > 0.0) {
            return invalid("state_ceiling must be positive");
        }
        if let Method::Rk4 { step } = self.method {
            if !(step > 0.0 && step.is_finite()) {
                return invalid("fixed RK4 step must be positive and finite");
            }
        }
        Ok(())
    }
}

/// Growth of the largest state component, relative to max(1, |y0|), beyond
/// which a step-size collapse is read as a singularity rather than a failure.
pub const DIVERGENCE_GROWTH: f64 = 1e6;

/// How an integration run ended.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Termination {
    /// Reached the end of the requested time span.
    Completed,
    /// A state component exceeded the configured ceiling at `t`, or the step
    /// size collapsed after the state grew by [`DIVERGENCE_GROWTH`].
    Diverged { t: f64 },
    /// A caller-supplied stop condition fired at `t`.
    Stopped { t: f64, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub state: Vec<f64>,
    pub invariant_values: Vec<f64>,
}

/// Accepted steps of an integration run, in time order.
///
/// States use the Lagrangian layout: the first `coordinates` entries are
/// generalised coordinates, the next `coordinates` their velocities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub coordinates: usize,
    pub samples: Vec<Sample>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least the initial sample")
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    pub fn component(&self, index: usize) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(move |s| s.state[index])
    }

    pub fn diverged(&self) -> bool {
        matches!(self.termination, Termination::Diverged { .. })
    }

    /// Fills every sample's invariant list from its time and state.
    pub fn attach_invariants<F>(&mut self, mut f: F) -> Result<()>
    where
        F: FnMut(f64, &[f64]) -> Result<Vec<f64>>,
    {
        for s in &mut self.samples {
            s.invariant_values = f(s.t, &s.state)?;
        }
        Ok(())
    }
}

/// Integrates `y' = rhs(t, y)` over `t_span`.
///
/// `rhs` writes the derivative into its third argument. The run is a pure
/// function of its inputs.
pub fn integrate<F>(rhs: F, state0: &[f64], t_span: (f64, f64), config: &IntegratorConfig) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
{
    integrate_until(rhs, state0, t_span, config, |_, _| None)
}

/// Like [`integrate`], but `stop` is consulted after every accepted step and
/// ends the run when it returns a reason.
pub fn integrate_until<F, S>(
    mut rhs: F,
    state0: &[f64],
    t_span: (f64, f64),
    config: &IntegratorConfig,
    mut stop: S,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    S: FnMut(f64, &[f64]) -> Option<&'static str>,
{
    config.validate()?;
    let (t0, t1) = t_span;
    if !(t0.is_finite() && t1.is_finite()) || t0 == t1 {
        return invalid("time span must be finite and non-degenerate");
    }
    if state0.is_empty() || state0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteState { t: t0 });
    }
    let coordinates = if state0.len().is_multiple_of(2) {
        state0.len() / 2
    } else {
        state0.len()
    };
    let mut f0 = vec![0.0; state0.len()];
    rhs(t0, state0, &mut f0)?;
    if f0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteState { t: t0 });
    }

    let mut traj = Trajectory {
        coordinates,
        samples: vec![Sample {
            t: t0,
            state: state0.to_vec(),
            invariant_values: Vec::new(),
        }],
        termination: Termination::Completed,
    };

    let stepper = Stepper {
        config,
        t_end: t1,
        dir: (t1 - t0).signum(),
    };
    match config.method {
        Method::DormandPrince => stepper.run_dopri(&mut rhs, &mut stop, f0, &mut traj)?,
        Method::Rk4 { step } => stepper.run_rk4(&mut rhs, &mut stop, step, &mut traj)?,
    }
    Ok(traj)
}

struct Stepper<'a> {
    config: &'a IntegratorConfig,
    t_end: f64,
    dir: f64,
}

enum Accepted {
    Continue,
    Finished,
}

impl Stepper<'_> {
    fn accept<S>(&self, t: f64, y: &[f64], stop: &mut S, traj: &mut Trajectory) -> Accepted
    where
        S: FnMut(f64, &[f64]) -> Option<&'static str>,
    {
        traj.samples.push(Sample {
            t,
            state: y.to_vec(),
            invariant_values: Vec::new(),
        });
        if y.iter().any(|v| v.abs() > self.config.state_ceiling) {
            traj.termination = Termination::Diverged { t };
            return Accepted::Finished;
        }
        if let Some(reason) = stop(t, y) {
            traj.termination = Termination::Stopped { t, reason };
            return Accepted::Finished;
        }
        if t == self.t_end {
            return Accepted::Finished;
        }
        Accepted::Continue
    }

    fn clip(&self, t: f64, h: f64) -> (f64, bool) {
        let remaining = (self.t_end - t) * self.dir;
        if h >= remaining {
            (remaining, true)
        } else {
            (h, false)
        }
    }

    fn run_rk4<F, S>(&self, rhs: &mut F, stop: &mut S, step: f64, traj: &mut Trajectory) -> Result<()>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
        S: FnMut(f64, &[f64]) -> Option<&'static str>,
    {
        let n = traj.samples[0].state.len();
        let mut y = traj.samples[0].state.clone();
        let mut t = traj.samples[0].t;
        let mut k = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        let mut tmp = vec![0.0; n];
        let step = step.min(self.config.max_step);
        for _ in 0..self.config.max_steps {
            let (h_abs, last) = self.clip(t, step);
            let h = h_abs * self.dir;
            rhs(t, &y, &mut k[0])?;
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k[0][i];
            }
            rhs(t + 0.5 * h, &tmp, &mut k[1])?;
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * h * k[1][i];
            }
            rhs(t + 0.5 * h, &tmp, &mut k[2])?;
            for i in 0..n {
                tmp[i] = y[i] + h * k[2][i];
            }
            rhs(t + h, &tmp, &mut k[3])?;
            for i in 0..n {
                y[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
            }
            t = if last { self.t_end } else { t + h };
            if y.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteState { t });
            }
            if let Accepted::Finished = self.accept(t, &y, stop, traj) {
                return Ok(());
            }
        }
        Err(Error::StepLimit {
            t,
            max_steps: self.config.max_steps,
        })
    }

    fn error_norm(&self, y: &[f64], y_new: &[f64], err: &[f64]) -> f64 {
        let sum: f64 = y
            .iter()
            .zip(y_new)
            .zip(err)
            .map(|((a, b), e)| {
                let sc = self.config.abs_tol + self.config.rel_tol * a.abs().max(b.abs());
                (e / sc).powi(2)
            })
            .sum();
        (sum / y.len() as f64).sqrt()
    }

    fn initial_step<F>(&self, rhs: &mut F, t: f64, y: &[f64], f0: &[f64]) -> f64
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    {
        let zeros = vec![0.0; y.len()];
        let d0 = self.error_norm(&zeros, y, y);
        let d1 = self.error_norm(&zeros, y, f0);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1: Vec<f64> = y.iter().zip(f0).map(|(a, b)| a + self.dir * h0 * b).collect();
        let mut f1 = vec![0.0; y.len()];
        let d2 = match rhs(t + self.dir * h0, &y1, &mut f1) {
            Ok(()) => {
                let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
                self.error_norm(&zeros, y, &diff) / h0
            }
            Err(_) => f64::INFINITY,
        };
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        let h = (100.0 * h0).min(h1);
        if h.is_finite() && h > 0.0 {
            h.min(self.config.max_step)
        } else {
            h0.min(self.config.max_step)
        }
    }

    fn run_dopri<F, S>(&self, rhs: &mut F, stop: &mut S, f_start: Vec<f64>, traj: &mut Trajectory) -> Result<()>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
        S: FnMut(f64, &[f64]) -> Option<&'static str>,
    {
        const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
        const A: [[f64; 6]; 7] = [
            [0.0; 6],
            [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
            [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
            [
                19372.0 / 6561.0,
                -25360.0 / 2187.0,
                64448.0 / 6561.0,
                -212.0 / 729.0,
                0.0,
                0.0,
            ],
            [
                9017.0 / 3168.0,
                -355.0 / 33.0,
                46732.0 / 5247.0,
                49.0 / 176.0,
                -5103.0 / 18656.0,
                0.0,
            ],
            [
                35.0 / 384.0,
                0.0,
                500.0 / 1113.0,
                125.0 / 192.0,
                -2187.0 / 6784.0,
                11.0 / 84.0,
            ],
        ];
        // fifth-order weights minus embedded fourth-order weights
        const E: [f64; 7] = [
            71.0 / 57600.0,
            0.0,
            -71.0 / 16695.0,
            71.0 / 1920.0,
            -17253.0 / 339200.0,
            22.0 / 525.0,
            -1.0 / 40.0,
        ];

        let n = traj.samples[0].state.len();
        let mut y = traj.samples[0].state.clone();
        let mut t = traj.samples[0].t;
        let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
        k[0] = f_start;
        let mut tmp = vec![0.0; n];
        let mut y_new = vec![0.0; n];
        let mut err = vec![0.0; n];
        let mut h_abs = self.initial_step(rhs, t, &y, &k[0]);
        let mut rejected_last = false;
        let span = (self.t_end - traj.samples[0].t).abs();
        let scale0 = y.iter().fold(1.0f64, |a, v| a.max(v.abs()));

        for _ in 0..self.config.max_steps {
            let min_step = 16.0 * f64::EPSILON * t.abs().max(1e-6 * span);
            if h_abs < min_step {
                if y.iter().fold(0.0f64, |a, v| a.max(v.abs())) >= DIVERGENCE_GROWTH * scale0 {
                    traj.termination = Termination::Diverged { t };
                    return Ok(());
                }
                return Err(Error::StepFailure { t });
            }
            let (h_try, last) = self.clip(t, h_abs.min(self.config.max_step));
            let h = h_try * self.dir;

            let mut stage_ok = true;
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += h * A[s][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                if rhs(t + C[s] * h, &tmp, &mut k[s]).is_err() || k[s].iter().any(|v| !v.is_finite()) {
                    stage_ok = false;
                    break;
                }
                if s == 6 {
                    y_new.copy_from_slice(&tmp);
                }
            }
            if !stage_ok {
                h_abs = h_try * 0.25;
                rejected_last = true;
                continue;
            }
            for i in 0..n {
                err[i] = h * E.iter().zip(&k).map(|(e, kj)| e * kj[i]).sum::<f64>();
            }
            let norm = self.error_norm(&y, &y_new, &err);
            if !norm.is_finite() {
                h_abs = h_try * 0.25;
                rejected_last = true;
                continue;
            }
            if norm <= 1.0 {
                t = if last { self.t_end } else { t + h };
                y.copy_from_slice(&y_new);
                // first-same-as-last: the final stage is the next step's first
                let last_stage = k[6].clone();
                k[0] = last_stage;
                let mut factor = if norm == 0.0 {
                    5.0
                } else {
                    (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
                };
                if rejected_last {
                    factor = factor.min(1.0);
                }
                h_abs = h_try * factor;
                rejected_last = false;
                if let Accepted::Finished = self.accept(t, &y, stop, traj) {
                    return Ok(());
                }
            } else {
                h_abs = h_try * (0.9 * norm.powf(-0.2)).max(0.2);
                rejected_last = true;
            }
        }
        Err(Error::StepLimit {
            t,
            max_steps: self.config.max_steps,
        })
    }
}
