//! Shared numerical kernels: explicit ODE integration, the symmetric
//! tridiagonal eigensolver, turning-point detection and 1D quadrature.

mod ode;
mod quad;
mod tridiag;
mod turning;

pub use ode::{
    integrate, integrate_until, IntegratorConfig, Method, Sample, Termination, Trajectory, DIVERGENCE_GROWTH,
};
pub use quad::integrate_adaptive;
pub use tridiag::{eigen_tridiagonal, eigenvector_tridiagonal, MAX_QL_ITERATIONS};
pub use turning::{find_turning_points, TurningPoint};
