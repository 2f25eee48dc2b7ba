//! Small dense complex linear algebra: a deterministic cyclic Jacobi
//! eigensolver for Hermitian matrices and the subspace operations built on it
//! (orthonormalization, null spaces, principal angles, least squares).
//!
//! Everything here is self-contained so that results are bit-reproducible
//! across runs with identical inputs.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Off-diagonal mass threshold for Jacobi convergence, relative to the input
/// Frobenius norm.
const JACOBI_EPS: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<Complex64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map(|v| v.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn off_diagonal_mass(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a.get(p, q).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matrix whose columns are
/// the matching orthonormal eigenvectors. The input is symmetrized first so
/// floating-point noise in `a` cannot break Hermiticity.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    // symmetrize
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            m.set(i, j, v);
        }
    }
    let scale = m.frobenius().max(1.0);
    let mut v = CMatrix::identity(n);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_mass(&m) <= JACOBI_EPS * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let mag = apq.norm();
                if mag <= JACOBI_EPS * scale * 1e-3 {
                    continue;
                }
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                // phase so that the (p,q) entry becomes real positive
                let phase = apq / mag;
                let theta = 0.5 * (aqq - app) / mag;
                // smaller-magnitude root of t^2 - 2*theta*t - 1 = 0
                let t = if theta >= 0.0 {
                    -1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // unitary: column p' = c*colp + s*conj(phase)*colq,
                //          column q' = -s*phase*colp + c*colq
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(-s, 0.0) * phase;
                let u_qp = Complex64::new(s, 0.0) * phase.conj();
                let u_qq = Complex64::new(c, 0.0);
                // m <- U^* m U ; first columns (right multiply)
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, mkp * u_pp + mkq * u_qp);
                    m.set(k, q, mkp * u_pq + mkq * u_qq);
                }
                // rows (left multiply by U^*)
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, u_pp.conj() * mpk + u_qp.conj() * mqk);
                    m.set(q, k, u_pq.conj() * mpk + u_qq.conj() * mqk);
                }
                // accumulate eigenvectors
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * u_pp + vkq * u_qp);
                    v.set(k, q, vkp * u_pq + vkq * u_qq);
                }
            }
        }
    }
    if off_diagonal_mass(&m) > 1e-8 * scale {
        return Err(Error::EigenNoConvergence);
    }
    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap().then(i.cmp(&j)));
    let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vs = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vs.set(k, new_col, v.get(k, old_col));
        }
    }
    Ok((sorted, vs))
}

/// Hermitian inner product `<u, v> = v^* H u` (linear in `u`). `metric = None`
/// means the Euclidean one.
pub fn inner(u: &[Complex64], v: &[Complex64], metric: Option<&CMatrix>) -> Complex64 {
    match metric {
        None => u
            .iter()
            .zip(v)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>(),
        Some(h) => {
            let mut s = Complex64::new(0.0, 0.0);
            for a in 0..u.len() {
                for b in 0..u.len() {
                    s += v[a].conj() * h.get(a, b) * u[b];
                }
            }
            s
        }
    }
}

pub fn vec_norm(u: &[Complex64], metric: Option<&CMatrix>) -> f64 {
    inner(u, u, metric).re.max(0.0).sqrt()
}

/// Modified Gram-Schmidt with rank detection: vectors whose residual norm
/// falls below `tol` are dropped.
pub fn orthonormalize(
    vecs: &[Vec<Complex64>],
    metric: Option<&CMatrix>,
    tol: f64,
) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vecs {
        let mut w = v.clone();
        // two MGS passes for numerical safety
        for _ in 0..2 {
            for b in &basis {
                let c = inner(&w, b, metric);
                for (wk, bk) in w.iter_mut().zip(b) {
                    *wk -= c * bk;
                }
            }
        }
        let nrm = vec_norm(&w, metric);
        if nrm > tol {
            for wk in w.iter_mut() {
                *wk /= Complex64::new(nrm, 0.0);
            }
            basis.push(w);
        }
    }
    basis
}

/// Orthonormal basis of the (right) null space of `a`: eigenvectors of
/// `a^* a` whose singular value is at most `tol`.
pub fn nullspace(a: &CMatrix, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    if a.rows == 0 {
        return Ok((0..a.cols)
            .map(|j| {
                let mut e = vec![Complex64::new(0.0, 0.0); a.cols];
                e[j] = Complex64::new(1.0, 0.0);
                e
            })
            .collect());
    }
    let ata = a.adjoint().matmul(a);
    let (eigs, v) = hermitian_eigen(&ata)?;
    let mut out = Vec::new();
    for (i, lam) in eigs.iter().enumerate() {
        if lam.max(0.0).sqrt() <= tol {
            out.push(v.col(i));
        }
    }
    Ok(out)
}

pub fn rank(a: &CMatrix, tol: f64) -> Result<usize> {
    Ok(a.cols - nullspace(a, tol)?.len())
}

/// Cosines of the principal angles between the spans of `u` and `w`,
/// descending. Values are clamped to [0, 1].
pub fn principal_cosines(u: &[Vec<Complex64>], w: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    let ub = orthonormalize(u, None, 1e-12);
    let wb = orthonormalize(w, None, 1e-12);
    if ub.is_empty() || wb.is_empty() {
        return Ok(Vec::new());
    }
    let um = CMatrix::from_cols(&ub);
    let wm = CMatrix::from_cols(&wb);
    let m = um.adjoint().matmul(&wm);
    let (eigs, _) = hermitian_eigen(&m.adjoint().matmul(&m))?;
    let mut cos: Vec<f64> = eigs
        .iter()
        .map(|l| l.max(0.0).sqrt().min(1.0))
        .collect();
    cos.sort_by(|a, b| b.partial_cmp(a).unwrap());
    cos.truncate(ub.len().min(wb.len()));
    Ok(cos)
}

/// Dimension of the intersection of two spans: the number of principal-angle
/// cosines at least `1 - tol`.
pub fn intersection_dim(u: &[Vec<Complex64>], w: &[Vec<Complex64>], tol: f64) -> Result<usize> {
    Ok(principal_cosines(u, w)?
        .iter()
        .filter(|c| **c >= 1.0 - tol)
        .count())
}

/// Euclidean norm of `b - proj_span(a) b`.
pub fn lsq_residual(a_cols: &[Vec<Complex64>], b: &[Complex64]) -> f64 {
    let basis = orthonormalize(a_cols, None, 1e-12);
    let mut r = b.to_vec();
    for q in &basis {
        let c = inner(&r, q, None);
        for (rk, qk) in r.iter_mut().zip(q) {
            *rk -= c * qk;
        }
    }
    vec_norm(&r, None)
}

/// Real vectors as complex ones with zero imaginary part.
pub fn real_to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
}
