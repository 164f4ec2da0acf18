use crate::error::{invalid, Error, Result};

/// Iteration cap per eigenvalue for the implicit-shift QL sweep.
pub const MAX_QL_ITERATIONS: usize = 50;

/// Lowest `n_lowest` eigenvalues of the symmetric tridiagonal matrix with
/// main diagonal `diag` and sub/super-diagonal `offdiag`, ascending.
///
/// Implicit-shift QL (eigenvalues only, O(n²)).
pub fn eigen_tridiagonal(diag: &[f64], offdiag: &[f64], n_lowest: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return invalid("empty matrix");
    }
    if offdiag.len() + 1 != n {
        return invalid(format!(
            "off-diagonal length {} does not match diagonal length {}",
            offdiag.len(),
            n
        ));
    }
    if n_lowest > n {
        return invalid(format!("requested {n_lowest} eigenvalues of a {n}x{n} matrix"));
    }
    if diag.iter().chain(offdiag).any(|v| !v.is_finite()) {
        return invalid("matrix entries must be finite");
    }

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::ConvergenceFailure {
                    index: l,
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    d.sort_by(f64::total_cmp);
    d.truncate(n_lowest);
    Ok(d)
}

/// Unit-norm eigenvector for an (already computed) eigenvalue, by inverse
/// iteration with a pivoted tridiagonal LU factorisation.
pub fn eigenvector_tridiagonal(diag: &[f64], offdiag: &[f64], eigenvalue: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || offdiag.len() + 1 != n {
        return invalid("inconsistent tridiagonal dimensions");
    }
    let scale = diag.iter().chain(offdiag).fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let shift = eigenvalue + 1e-10 * scale;
    let lu = TridiagLu::factor(diag, offdiag, shift);

    let mut x = vec![1.0; n];
    // deterministic, non-symmetric start so no eigenvector is orthogonal to it
    for (i, v) in x.iter_mut().enumerate() {
        *v += 1e-3 * (i as f64 * 0.618_033_988_749_895).fract();
    }
    for _ in 0..4 {
        lu.solve(&mut x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ConvergenceFailure {
                index: 0,
                iterations: 4,
            });
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    Ok(x)
}

/// LU factorisation with partial pivoting of `T - shift*I` (LAPACK gttrf layout).
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    ipiv: Vec<usize>,
}

impl TridiagLu {
    fn factor(diag: &[f64], offdiag: &[f64], shift: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|v| v - shift).collect();
        let mut dl = offdiag.to_vec();
        let mut du = offdiag.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut ipiv: Vec<usize> = (0..n).collect();
        let tiny = f64::EPSILON * diag.iter().fold(1.0f64, |a, v| a.max(v.abs()));

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                ipiv[i] = i + 1;
            }
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self { dl, d, du, du2, ipiv }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.ipiv[i] == i {
                b[i + 1] -= self.dl[i] * b[i];
            } else {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toeplitz_3x3() {
        let ev = eigen_tridiagonal(&[2.0, 2.0, 2.0], &[-1.0, -1.0], 3).unwrap();
        let s2 = 2f64.sqrt();
        let want = [2.0 - s2, 2.0, 2.0 + s2];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn one_by_one() {
        assert_eq!(eigen_tridiagonal(&[5.0], &[], 1).unwrap(), vec![5.0]);
    }

    #[test]
    fn particle_in_box_ground_level() {
        let n = 1999;
        let h = std::f64::consts::PI / (n as f64 + 1.0);
        let diag = vec![1.0 / (h * h); n];
        let off = vec![-1.0 / (2.0 * h * h); n - 1];
        let ev = eigen_tridiagonal(&diag, &off, 3).unwrap();
        assert!((ev[0] - 0.5).abs() < 1e-5);
        assert!((ev[1] - 2.0).abs() < 1e-4);
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn dimension_checks() {
        assert!(eigen_tridiagonal(&[1.0, 2.0], &[], 1).is_err());
        assert!(eigen_tridiagonal(&[1.0, 2.0], &[0.5], 3).is_err());
        assert!(eigen_tridiagonal(&[], &[], 0).is_err());
    }

    #[test]
    fn eigenvector_satisfies_equation() {
        let diag = [2.0, 2.0, 2.0, 2.0];
        let off = [-1.0, -1.0, -1.0];
        let ev = eigen_tridiagonal(&diag, &off, 4).unwrap();
        for &lam in &ev {
            let v = eigenvector_tridiagonal(&diag, &off, lam).unwrap();
            for i in 0..4 {
                let mut tv = diag[i] * v[i];
                if i > 0 {
                    tv += off[i - 1] * v[i - 1];
                }
                if i < 3 {
                    tv += off[i] * v[i + 1];
                }
                assert!((tv - lam * v[i]).abs() < 1e-8);
            }
        }
    }
}
