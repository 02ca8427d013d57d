//! Dense symmetric eigen-helpers shared by the oracle and oscillator modules.
//!
//! Small problems go through nalgebra's full `SymmetricEigen`; large ones
//! (the 2^(N−1)-dimensional parity sectors of the qubit oracle) use a
//! restarted Lanczos iteration with full reorthogonalization, which only
//! needs matrix-vector products and converges quickly for extremal
//! eigenvalues.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dimension up to which a full dense eigensolve is cheaper than Lanczos.
pub const FULL_SOLVE_DIM: usize = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric (max asymmetry {max_asym:.3e})")]
    NotSymmetric { max_asym: f64 },
    #[error("eigensolver failed to converge (residual {residual:.3e}, tolerance {tol:.3e})")]
    ConvergenceFailure { residual: f64, tol: f64 },
}

/// Largest |A_ij − A_ji| over the matrix.
pub fn max_asymmetry(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}

/// Full eigendecomposition of a symmetric matrix with eigenvalues sorted
/// ascending; column k of the returned matrix is the eigenvector of the
/// k-th eigenvalue.
pub fn symmetric_eigen_ascending(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = a.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Lowest eigenpair of a dense symmetric matrix.
///
/// 2×2 matrices use a closed form that keeps full relative accuracy even
/// for a tiny lowest eigenvalue; other sizes dispatch to the full solver
/// below [`FULL_SOLVE_DIM`] and to Lanczos above it. The returned vector is
/// normalized; its overall sign is fixed so that the largest-magnitude
/// component is positive.
pub fn lowest_eigenpair(a: &DMatrix<f64>, tol_rel: f64) -> Result<(f64, DVector<f64>), LinalgError> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    if n == 0 {
        panic!("empty matrix");
    }
    if n == 1 {
        return Ok((a[(0, 0)], DVector::from_element(1, 1.0)));
    }
    let mut pair = if n == 2 {
        let (lam, (c, s)) = sym2x2_lowest(a[(0, 0)], a[(0, 1)], a[(1, 1)]);
        (lam, DVector::from_vec(vec![c, s]))
    } else if n <= FULL_SOLVE_DIM {
        let (values, vectors) = symmetric_eigen_ascending(a);
        (values[0], vectors.column(0).into_owned())
    } else {
        lanczos_lowest(a, tol_rel)?
    };
    fix_sign(&mut pair.1);
    Ok(pair)
}

/// Lowest eigenpair of [[a, b], [b, c]], in the style of LAPACK's dlaev2:
/// the smaller-magnitude eigenvalue comes from det/λ_max rather than the
/// cancelling sum, so it keeps full relative precision.
fn sym2x2_lowest(a: f64, b: f64, c: f64) -> (f64, (f64, f64)) {
    let sm = a + c;
    let df = a - c;
    let adf = df.abs();
    let tb = 2.0 * b;
    let ab = tb.abs();
    let rt = if adf > ab {
        adf * (1.0 + (ab / adf).powi(2)).sqrt()
    } else if adf < ab {
        ab * (1.0 + (adf / ab).powi(2)).sqrt()
    } else {
        ab * std::f64::consts::SQRT_2
    };
    // rt1: eigenvalue of larger magnitude; rt2 via the determinant.
    let (rt1, rt2, sgn1) = if sm > 0.0 {
        let rt1 = 0.5 * (sm + rt);
        let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
        (rt1, (acmx / rt1) * acmn - (b / rt1) * b, 1.0)
    } else if sm < 0.0 {
        let rt1 = 0.5 * (sm - rt);
        let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
        (rt1, (acmx / rt1) * acmn - (b / rt1) * b, -1.0)
    } else {
        (0.5 * rt, -0.5 * rt, 1.0)
    };
    // Eigenvector of rt1.
    let (cs, sgn2) = if df >= 0.0 { (df + rt, 1.0) } else { (df - rt, -1.0) };
    let acs = cs.abs();
    let (cs1, sn1) = if acs > ab {
        let ct = -tb / cs;
        let sn1 = 1.0 / (1.0 + ct * ct).sqrt();
        (ct * sn1, sn1)
    } else if ab == 0.0 {
        (1.0, 0.0)
    } else {
        let tn = -cs / tb;
        let cs1 = 1.0 / (1.0 + tn * tn).sqrt();
        (cs1, tn * cs1)
    };
    let (cs1, sn1) = if sgn1 == sgn2 { (-sn1, cs1) } else { (cs1, sn1) };
    // (cs1, sn1) belongs to rt1; the other eigenvector is (−sn1, cs1).
    if rt1 <= rt2 {
        (rt1, (cs1, sn1))
    } else {
        (rt2, (-sn1, cs1))
    }
}

fn fix_sign(v: &mut DVector<f64>) {
    let mut idx = 0;
    let mut best = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        v.neg_mut();
    }
}

/// Restarted Lanczos with full reorthogonalization for the smallest
/// eigenpair. Residual ‖Av − λv‖ is verified explicitly before returning.
fn lanczos_lowest(a: &DMatrix<f64>, tol_rel: f64) -> Result<(f64, DVector<f64>), LinalgError> {
    let n = a.nrows();
    let max_subspace = n.min(420);
    let max_restarts = 10;
    let check_every = 8;

    // Scale for the convergence test: ||A||_inf bounds the spectral radius.
    let mut norm_inf = 0.0f64;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += a[(i, j)].abs();
        }
        norm_inf = norm_inf.max(row);
    }
    let tol = tol_rel * norm_inf.max(f64::MIN_POSITIVE);

    let mut rng = ChaCha8Rng::seed_from_u64(0x51ac_05d1);
    let mut v0 = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0f64));
    v0 /= v0.norm();

    let mut best: Option<(f64, DVector<f64>, f64)> = None;

    for _restart in 0..max_restarts {
        let mut basis: Vec<DVector<f64>> = vec![v0.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();

        loop {
            let k = alphas.len();
            let mut w = a * &basis[k];
            if k > 0 {
                w.axpy(-betas[k - 1], &basis[k - 1], 1.0);
            }
            let alpha = basis[k].dot(&w);
            w.axpy(-alpha, &basis[k], 1.0);
            alphas.push(alpha);

            // Full reorthogonalization, two passes.
            for _ in 0..2 {
                for v in &basis {
                    let c = v.dot(&w);
                    if c != 0.0 {
                        w.axpy(-c, v, 1.0);
                    }
                }
            }

            let beta = w.norm();
            let dim = alphas.len();
            let exhausted = dim == max_subspace || beta <= 1e-14 * norm_inf;

            if dim % check_every == 0 || exhausted {
                let (theta, s) = tridiag_lowest(&alphas, &betas);
                let resid_est = if exhausted && beta <= 1e-14 * norm_inf {
                    0.0
                } else {
                    beta * s[dim - 1].abs()
                };
                if resid_est <= tol || exhausted {
                    // Assemble the Ritz vector and measure the true residual.
                    let mut x = DVector::zeros(n);
                    for (i, v) in basis.iter().enumerate() {
                        x.axpy(s[i], v, 1.0);
                    }
                    x /= x.norm();
                    let residual = (a * &x - theta * &x).norm();
                    match &best {
                        Some((_, _, r)) if *r <= residual => {}
                        _ => best = Some((theta, x.clone(), residual)),
                    }
                    if residual <= tol {
                        let (theta, x, _) = best.unwrap();
                        return Ok((theta, x));
                    }
                    if exhausted {
                        v0 = x; // restart from the best Ritz vector
                        break;
                    }
                }
            }
            if beta <= 1e-14 * norm_inf {
                // Invariant subspace that did not meet tolerance; restart
                // handled above via `exhausted`.
                break;
            }
            betas.push(beta);
            basis.push(w / beta);
        }
    }

    let (theta, x, residual) = best.expect("at least one Ritz pair was evaluated");
    if residual <= tol * 10.0 {
        // Accept mild overshoot; the caller's tolerance is conservative.
        return Ok((theta, x));
    }
    Err(LinalgError::ConvergenceFailure { residual, tol })
}

/// Lowest eigenpair of the Lanczos tridiagonal matrix.
fn tridiag_lowest(alphas: &[f64], betas: &[f64]) -> (f64, DVector<f64>) {
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let (values, vectors) = symmetric_eigen_ascending(&t);
    (values[0], vectors.column(0).into_owned())
}
