//! Self-contained dense complex linear algebra.
//!
//! Everything here is sized for the small state spaces of the simulator
//! (at most a few hundred rows for vectorized Liouvillians), so the solvers
//! are plain dense algorithms: a cyclic complex Jacobi eigensolver for
//! Hermitian matrices, characteristic-polynomial root finding for tiny
//! general matrices, scaling-and-squaring for the matrix exponential and
//! LU with partial pivoting for linear solves.

use ndarray::{Array1, Array2};

use crate::{C64, CMat, CVec, Error, Result};

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

/// Largest entrywise magnitude of `m - m^dagger`.
pub fn hermiticity_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Largest entrywise magnitude.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn offdiag_norm(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

const HERMITIAN_TOL: f64 = 1e-10;
const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Cyclic complex Jacobi rotations, iterated until the off-diagonal norm
/// drops below `1e-14` relative to the matrix scale. Ties keep the original
/// diagonal order.
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    hermitian_eigen_impl(h, false).map(|(vals, _)| vals)
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors (columns).
pub fn hermitian_eigen(h: &CMat) -> Result<(Vec<f64>, CMat)> {
    let (vals, vecs) = hermitian_eigen_impl(h, true)?;
    Ok((vals, vecs.expect("vectors requested")))
}

fn hermitian_eigen_impl(h: &CMat, want_vectors: bool) -> Result<(Vec<f64>, Option<CMat>)> {
    let n = h.nrows();
    if n == 0 || h.ncols() != n {
        return Err(Error::Dimension(format!(
            "hermitian eigensolver needs a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let scale = max_abs(h).max(1.0);
    let dev = hermiticity_deviation(h);
    if dev > HERMITIAN_TOL * scale.max(1.0) {
        return Err(Error::NotHermitian(dev));
    }

    let mut a = h.clone();
    // Symmetrize exactly so the rotations see a Hermitian matrix.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = want_vectors.then(|| CMat::eye(n));

    let target = JACOBI_OFF_TOL * frobenius(&a).max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if offdiag_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = a[(p, q)];
                let absb = beta.norm();
                if absb <= 1e-300 {
                    continue;
                }
                let phase = beta / absb;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * absb).atan2(app - aqq);
                let c = theta.cos();
                let s = phase.conj() * theta.sin();

                // Columns: A <- A R with R[pp]=c, R[pq]=-conj(s), R[qp]=s, R[qq]=c.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip + s * aiq;
                    a[(i, q)] = -s.conj() * aip + c * aiq;
                }
                // Rows: A <- R^dagger A.
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = c * apj + s.conj() * aqj;
                    a[(q, j)] = -s * apj + c * aqj;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm[(i, p)];
                        let viq = vm[(i, q)];
                        vm[(i, p)] = c * vip + s * viq;
                        vm[(i, q)] = -s.conj() * vip + c * viq;
                    }
                }
            }
        }
    }
    if offdiag_norm(&a) > 10.0 * target {
        return Err(Error::Numerical(
            "Jacobi eigensolver did not converge".into(),
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps original index order among ties.
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = v.map(|vm| {
        let mut out = CMat::zeros((n, n));
        for (new_col, &old_col) in order.iter().enumerate() {
            for i in 0..n {
                out[(i, new_col)] = vm[(i, old_col)];
            }
        }
        out
    });
    Ok((vals, vecs))
}

/// All complex eigenvalues of a small (dim <= 4) general matrix, sorted by
/// descending real part.
///
/// Uses the characteristic polynomial (Faddeev-LeVerrier) with closed forms
/// for dim <= 2 and simultaneous Durand-Kerner iteration for dims 3 and 4.
pub fn general_eigenvalues_small(m: &CMat) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::Dimension("square matrix required".into()));
    }
    if n > 4 {
        return Err(Error::Dimension(format!(
            "general eigensolver limited to dim <= 4, got {n}"
        )));
    }
    let mut vals = match n {
        1 => vec![m[(0, 0)]],
        2 => {
            let tr = m[(0, 0)] + m[(1, 1)];
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            let disc = (tr * tr - 4.0 * det).sqrt();
            vec![0.5 * (tr + disc), 0.5 * (tr - disc)]
        }
        _ => {
            let coeffs = char_poly(m);
            poly_roots(&coeffs)
        }
    };
    vals.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
    Ok(vals)
}

/// Monic characteristic polynomial coefficients `c[0] + c[1] x + ... + x^n`
/// (the leading 1 is implicit; `c.len() == n`).
fn char_poly(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut mk = CMat::eye(n);
    for k in 1..=n {
        mk = m.dot(&mk);
        let ck = -trace(&mk) / (k as f64);
        c[n - k] = ck;
        for i in 0..n {
            mk[(i, i)] += ck;
        }
    }
    c.truncate(n);
    c
}

pub fn trace(m: &CMat) -> C64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

/// Durand-Kerner on a monic polynomial given by its low-to-high coefficients
/// (leading 1 implicit). Linear convergence on multiple roots is acceptable
/// at these degrees; the iteration budget is generous.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    let eval = |x: C64| -> C64 {
        let mut p = C64::new(1.0, 0.0);
        for &c in coeffs.iter().rev() {
            p = p * x + c;
        }
        p
    };
    let scale = 1.0 + coeffs.iter().fold(0.0f64, |a, c| a.max(c.norm()));
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n)
        .map(|k| scale * seed.powu(k as u32 + 1))
        .collect();
    for _ in 0..1000 {
        let mut shift = 0.0f64;
        for k in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            if denom.norm() < 1e-280 {
                continue;
            }
            let delta = eval(roots[k]) / denom;
            roots[k] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-16 * scale {
            break;
        }
    }
    roots
}

/// Dense matrix exponential by scaling and squaring with a truncated Taylor
/// kernel on the scaled-down matrix.
pub fn expm(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension("square matrix required".into()));
    }
    if a.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numerical("non-finite entry in expm input".into()));
    }
    // 1-norm (max column sum).
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let squarings = if norm1 > 0.25 {
        (norm1 / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let b = a.mapv(|z| z / 2f64.powi(squarings as i32));

    let mut e = CMat::eye(n);
    let mut term = CMat::eye(n);
    for k in 1..=30 {
        term = term.dot(&b).mapv(|z| z / k as f64);
        e = e + &term;
        if frobenius(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        e = e.dot(&e);
    }
    if e.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numerical("overflow in expm".into()));
    }
    Ok(e)
}

/// `exp(t L) v`.
pub fn expm_apply(l: &CMat, t: f64, v: &CVec) -> Result<CVec> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::Invalid(format!("time must be finite and >= 0, got {t}")));
    }
    if v.len() != l.nrows() {
        return Err(Error::Dimension("vector length must match matrix".into()));
    }
    let e = expm(&l.mapv(|z| z * t))?;
    let out = e.dot(v);
    if out.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numerical("non-finite result in expm_apply".into()));
    }
    Ok(out)
}

/// Solve `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &CMat, b: &CVec) -> Result<CVec> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return Err(Error::Dimension("lu_solve shape mismatch".into()));
    }
    let scale = max_abs(a).max(1e-300);
    let mut lu = a.clone();
    let mut x: CVec = b.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu[(col, col)].norm();
        for r in (col + 1)..n {
            let mag = lu[(r, col)].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag < 1e-13 * scale {
            return Err(Error::Numerical(format!(
                "singular matrix in LU solve (pivot {pivot_mag:.3e} at column {col})"
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                lu.swap((col, j), (pivot_row, j));
            }
            x.swap(col, pivot_row);
            perm.swap(col, pivot_row);
        }
        let piv = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / piv;
            lu[(r, col)] = f;
            for j in (col + 1)..n {
                let v = lu[(col, j)];
                lu[(r, j)] -= f * v;
            }
        }
    }
    // Forward substitution with the stored multipliers.
    for i in 0..n {
        for j in 0..i {
            let f = lu[(i, j)];
            let xj = x[j];
            x[i] -= f * xj;
        }
    }
    // Back substitution.
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            let f = lu[(i, j)];
            let xj = x[j];
            x[i] -= f * xj;
        }
        x[i] /= lu[(i, i)];
    }
    Ok(x)
}

/// Unique null vector of a Liouvillian-like matrix, normalized so that
/// `trace_functional . x = 1`.
///
/// One row of `L` is replaced by the trace constraint and the resulting
/// system is solved by LU. A singular modified system signals a nullspace of
/// dimension greater than one, which is reported rather than resolved.
pub fn nullspace_unit_trace(l: &CMat, trace_functional: &CVec) -> Result<CVec> {
    let n = l.nrows();
    if l.ncols() != n || trace_functional.len() != n {
        return Err(Error::Dimension("nullspace solve shape mismatch".into()));
    }
    let mut m = l.clone();
    for j in 0..n {
        m[(0, j)] = trace_functional[j];
    }
    let mut rhs = CVec::zeros(n);
    rhs[0] = C64::new(1.0, 0.0);
    let x = lu_solve(&m, &rhs).map_err(|e| match e {
        Error::Numerical(_) => Error::DegenerateSteadyState,
        other => other,
    })?;

    let resid = l
        .dot(&x)
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    if resid > 1e-10 * max_abs(l).max(1.0) {
        return Err(Error::Numerical(format!(
            "nullspace residual too large: {resid:.3e}"
        )));
    }
    Ok(x)
}

/// Hermitian square root of a positive semidefinite matrix. Eigenvalues
/// below `1e-13` of the matrix scale are treated as exact zeros.
pub fn sqrt_psd(h: &CMat) -> Result<CMat> {
    let (vals, vecs) = hermitian_eigen(h)?;
    let n = h.nrows();
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let mut out = CMat::zeros((n, n));
    for (k, &val) in vals.iter().enumerate() {
        if val <= 1e-13 * scale {
            continue;
        }
        let s = val.sqrt();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += s * vecs[(i, k)] * vecs[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// Singular values (descending) via the eigenvalues of the Hermitian
/// augmented matrix `[[0, B], [B^dagger, 0]]`. This avoids forming
/// `B^dagger B` and keeps small singular values accurate to machine epsilon
/// times the matrix scale.
pub fn singular_values(b: &CMat) -> Result<Vec<f64>> {
    let (r, c) = (b.nrows(), b.ncols());
    let n = r + c;
    let mut h = CMat::zeros((n, n));
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = b[(i, j)];
            h[(r + j, i)] = b[(i, j)].conj();
        }
    }
    let vals = hermitian_eigenvalues(&h)?;
    Ok(vals.into_iter().take(r.min(c)).map(|v| v.max(0.0)).collect())
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    let mut out = CMat::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Column-stacking vectorization: `vec(m)[j*n + i] = m[i, j]`.
pub fn vec_mat(m: &CMat) -> CVec {
    let n = m.nrows();
    let mut out = Array1::zeros(n * m.ncols());
    for j in 0..m.ncols() {
        for i in 0..n {
            out[j * n + i] = m[(i, j)];
        }
    }
    out
}

/// Inverse of [`vec_mat`] for a square matrix of side `n`.
pub fn unvec(v: &CVec, n: usize) -> CMat {
    let mut out = Array2::zeros((n, n));
    for j in 0..n {
        for i in 0..n {
            out[(i, j)] = v[j * n + i];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> CMat {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMat::zeros((n, n));
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn jacobi_diagonal_case() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 0)] = c(0.3, 0.0);
        m[(1, 1)] = c(0.7, 0.0);
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert!((vals[0] - 0.7).abs() < 1e-15);
        assert!((vals[1] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn jacobi_offdiagonal_two_by_two() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 1)] = c(0.3, 0.4); // |c| = 0.5
        m[(1, 0)] = c(0.3, -0.4);
        let vals = hermitian_eigenvalues(&m).unwrap();
        assert!((vals[0] - 0.5).abs() < 1e-14);
        assert!((vals[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn jacobi_trace_identity_9x9() {
        let m = random_hermitian(9, 7);
        let vals = hermitian_eigenvalues(&m).unwrap();
        let sum: f64 = vals.iter().sum();
        assert!((sum - trace(&m).re).abs() < 1e-12);
    }

    #[test]
    fn jacobi_eigenvectors_orthonormal_and_consistent() {
        let m = random_hermitian(7, 42);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        let gram = dagger(&vecs).dot(&vecs);
        for i in 0..7 {
            for j in 0..7 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - c(expect, 0.0)).norm() < 1e-12);
            }
        }
        // Frobenius norm invariance.
        let fro_vals: f64 = vals.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((fro_vals - frobenius(&m)).abs() < 1e-11);
        // A v = lambda v.
        for k in 0..7 {
            let col = vecs.column(k).to_owned();
            let av = m.dot(&col);
            for i in 0..7 {
                assert!((av[i] - vals[k] * col[i]).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn jacobi_rejects_non_hermitian() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn general_eigen_identity() {
        let m = CMat::eye(4);
        let vals = general_eigenvalues_small(&m).unwrap();
        // A quadruple root limits attainable accuracy to roughly eps^(1/4)
        // for any method working from the characteristic polynomial.
        for &v in &vals {
            assert!((v - c(1.0, 0.0)).norm() < 5e-3);
        }
    }

    #[test]
    fn general_eigen_nilpotent() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 1)] = c(1.0, 0.0);
        let vals = general_eigenvalues_small(&m).unwrap();
        for v in vals {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn general_eigen_product_matches_determinant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut m = CMat::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let vals = general_eigenvalues_small(&m).unwrap();
        let prod: C64 = vals.iter().product();
        // Determinant via LU on the 4x4.
        let det = {
            let coeffs = char_poly(&m);
            // det = (-1)^n * c0 for the monic characteristic polynomial.
            coeffs[0]
        };
        assert!((prod - det).norm() < 1e-10);
    }

    #[test]
    fn general_eigen_rejects_large() {
        let m = CMat::eye(5);
        assert!(general_eigenvalues_small(&m).is_err());
    }

    #[test]
    fn expm_zero_time_is_identity() {
        let m = random_hermitian(5, 11);
        let v: CVec = (0..5).map(|i| c(i as f64, -0.5)).collect();
        let out = expm_apply(&m, 0.0, &v).unwrap();
        for i in 0..5 {
            assert!((out[i] - v[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn expm_diagonal_scalar() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 0)] = c(-1.0, 0.0);
        let v: CVec = vec![c(1.0, 0.0), c(1.0, 0.0)].into();
        let out = expm_apply(&m, 1.0, &v).unwrap();
        assert!((out[0].re - (-1.0f64).exp()).abs() < 1e-14);
        assert!((out[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expm_semigroup_property() {
        let m = random_hermitian(6, 5).mapv(|z| z * c(0.0, -1.0));
        let v: CVec = (0..6).map(|i| c(1.0 / (i as f64 + 1.0), 0.2)).collect();
        let whole = expm_apply(&m, 2.0, &v).unwrap();
        let half = expm_apply(&m, 1.0, &v).unwrap();
        let twice = expm_apply(&m, 1.0, &half).unwrap();
        for i in 0..6 {
            assert!((whole[i] - twice[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn lu_solves_random_system() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let n = 12;
        let mut a = CMat::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let x_true: CVec = (0..n).map(|i| c(i as f64 * 0.1 - 0.4, 0.3)).collect();
        let b = a.dot(&x_true);
        let x = lu_solve(&a, &b).unwrap();
        for i in 0..n {
            assert!((x[i] - x_true[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let m = random_hermitian(5, 23);
        let psd = m.dot(&dagger(&m));
        let s = sqrt_psd(&psd).unwrap();
        let back = s.dot(&s);
        for i in 0..5 {
            for j in 0..5 {
                assert!((back[(i, j)] - psd[(i, j)]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn singular_values_of_diagonal() {
        let mut b = CMat::zeros((3, 3));
        b[(0, 0)] = c(0.0, 3.0);
        b[(1, 1)] = c(-2.0, 0.0);
        b[(2, 2)] = c(0.5, 0.0);
        let sv = singular_values(&b).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-13);
        assert!((sv[1] - 2.0).abs() < 1e-13);
        assert!((sv[2] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn vec_unvec_roundtrip_and_kron_identity() {
        let m = random_hermitian(4, 9);
        let v = vec_mat(&m);
        let back = unvec(&v, 4);
        assert_eq!(m, back);

        // vec(A X B) = kron(B^T, A) vec(X)
        let a = random_hermitian(3, 1);
        let x = random_hermitian(3, 2);
        let b = random_hermitian(3, 3);
        let lhs = vec_mat(&a.dot(&x).dot(&b));
        let rhs = kron(&b.t().to_owned(), &a).dot(&vec_mat(&x));
        for i in 0..9 {
            assert!((lhs[i] - rhs[i]).norm() < 1e-12);
        }
    }
}
