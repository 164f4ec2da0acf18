use serde::Serialize;

use super::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TurningPoint {
    pub t: f64,
    /// Coordinate value at the turning point.
    pub value: f64,
}

/// Locates sign changes of the velocity of coordinate `component`.
///
/// The crossing time comes from a 3-point quadratic fit to the velocity; the
/// coordinate value there from cubic Hermite interpolation over the
/// bracketing step.
pub fn find_turning_points(traj: &Trajectory, component: usize) -> Vec<TurningPoint> {
    let samples = &traj.samples;
    let vel = component + traj.coordinates;
    if samples.len() < 3 || samples[0].state.len() <= vel {
        return Vec::new();
    }
    let v = |i: usize| samples[i].state[vel];
    let mut out = Vec::new();
    let mut i = 1;
    while i < samples.len() {
        let (v0, v1) = (v(i - 1), v(i));
        if v0 * v1 < 0.0 {
            out.push(refine(traj, component, i));
        } else if v1 == 0.0 && v0 != 0.0 && i + 1 < samples.len() && v0 * v(i + 1) < 0.0 {
            out.push(TurningPoint {
                t: samples[i].t,
                value: samples[i].state[component],
            });
            i += 1;
        }
        i += 1;
    }
    out
}

fn refine(traj: &Trajectory, component: usize, i: usize) -> TurningPoint {
    let samples = &traj.samples;
    let vel = component + traj.coordinates;
    let (a, b) = (&samples[i - 1], &samples[i]);
    let h = b.t - a.t;

    let third = if i + 1 < samples.len() {
        i + 1
    } else {
        i.saturating_sub(2)
    };
    let tau = {
        let (ta, va) = (0.0, a.state[vel]);
        let (tb, vb) = (h, b.state[vel]);
        let c = &samples[third];
        let (tc, vc) = (c.t - a.t, c.state[vel]);
        quadratic_root(ta, va, tb, vb, tc, vc).unwrap_or(-va * h / (vb - va))
    };

    let s = tau / h;
    let (s2, s3) = (s * s, s * s * s);
    let x = (2.0 * s3 - 3.0 * s2 + 1.0) * a.state[component]
        + (s3 - 2.0 * s2 + s) * h * a.state[vel]
        + (-2.0 * s3 + 3.0 * s2) * b.state[component]
        + (s3 - s2) * h * b.state[vel];
    TurningPoint { t: a.t + tau, value: x }
}

/// Root in [min(ta,tb), max(ta,tb)] of the parabola through three points.
fn quadratic_root(ta: f64, va: f64, tb: f64, vb: f64, tc: f64, vc: f64) -> Option<f64> {
    // Newton divided differences: v(t) = va + d1 (t - ta) + d2 (t - ta)(t - tb)
    let d1 = (vb - va) / (tb - ta);
    let d2 = ((vc - vb) / (tc - tb) - d1) / (tc - ta);
    // expand to q2 t^2 + q1 t + q0
    let q2 = d2;
    let q1 = d1 - d2 * (ta + tb);
    let q0 = va - d1 * ta + d2 * ta * tb;
    let (lo, hi) = if ta < tb { (ta, tb) } else { (tb, ta) };
    let inside = |t: f64| t >= lo && t <= hi;
    if q2.abs() <= 1e-14 * q1.abs() {
        let t = -q0 / q1;
        return inside(t).then_some(t);
    }
    let disc = q1 * q1 - 4.0 * q2 * q0;
    if disc < 0.0 {
        return None;
    }
    // numerically stable pair of roots
    let q = -0.5 * (q1 + disc.sqrt().copysign(q1));
    let r1 = q / q2;
    let r2 = if q != 0.0 { q0 / q } else { r1 };
    [r1, r2].into_iter().find(|&t| inside(t))
}
