//! Complex Hessian and Levi form of a polynomial defining function, tangent
//! frames, pointwise classification (eigen-signature, pseudoconvexity, Z(q),
//! q-convexity margin), and deterministic boundary sampling.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, orthonormalize, CMatrix};
use crate::poly::{HermitianPolynomial, WirtingerKind};
use crate::rational::GaussianRational;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// |r(p)| tolerance for accepting a point as a boundary point.
pub const BOUNDARY_TOL: f64 = 1e-8;
/// Residual target for sampled boundary points after root refinement.
pub const SAMPLE_RESIDUAL: f64 = 1e-12;
/// Default tolerance for eigenvalue signature counting.
pub const DEFAULT_SIGNATURE_TOL: f64 = 1e-9;

pub type Point = Vec<Complex64>;

/// A domain `{ r < 0 }` cut out by a real polynomial defining function.
#[derive(Debug, Clone)]
pub struct DefiningFunction {
    r: HermitianPolynomial,
    n: usize,
}

impl DefiningFunction {
    /// Requires `r` real (equal to its own conjugate) and nonzero. The
    /// gradient condition `dr != 0` is checked per call at the points
    /// actually used.
    pub fn new(r: HermitianPolynomial) -> Result<Self> {
        if !r.is_real() {
            return Err(Error::NotReal);
        }
        if r.is_zero() {
            return Err(Error::DegenerateGradient);
        }
        let n = r.dim();
        Ok(DefiningFunction { r, n })
    }

    pub fn r(&self) -> &HermitianPolynomial {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// j-th entry is `dr/dz_j`.
    pub fn gradient_form(&self) -> Vec<HermitianPolynomial> {
        (0..self.n)
            .map(|j| self.r.wirtinger(j, WirtingerKind::Holomorphic).unwrap())
            .collect()
    }

    /// Entry `(i, j)` is `d^2 r / dz_i dconj(z_j)`; Hermitian symbolically.
    pub fn complex_hessian(&self) -> Vec<Vec<HermitianPolynomial>> {
        (0..self.n)
            .map(|i| {
                let di = self.r.wirtinger(i, WirtingerKind::Holomorphic).unwrap();
                (0..self.n)
                    .map(|j| di.wirtinger(j, WirtingerKind::Antiholomorphic).unwrap())
                    .collect()
            })
            .collect()
    }

    pub fn r_at(&self, p: &[Complex64]) -> Complex64 {
        self.r.evaluate_f64(p)
    }

    /// Numeric gradient `(dr/dz_1, ..., dr/dz_n)` at a point.
    pub fn gradient_at(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.gradient_form()
            .iter()
            .map(|g| g.evaluate_f64(p))
            .collect()
    }

    pub fn check_on_boundary(&self, p: &[Complex64]) -> Result<()> {
        let residual = self.r_at(p).norm();
        if residual > BOUNDARY_TOL {
            return Err(Error::OffBoundary {
                residual,
                tol: BOUNDARY_TOL,
            });
        }
        Ok(())
    }
}

/// Constant Hermitian metric on the ambient `C^n`.
#[derive(Debug, Clone)]
pub struct HermitianMetric {
    entries: Vec<Vec<GaussianRational>>,
}

impl HermitianMetric {
    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        HermitianMetric { entries }
    }

    /// Validates conjugate symmetry and positive definiteness (leading
    /// principal minors positive, exactly).
    pub fn new(entries: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::BadMetric);
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i][j] != entries[j][i].conj() {
                    return Err(Error::BadMetric);
                }
            }
        }
        for k in 1..=n {
            let det = exact_det(&entries, k);
            if !det.is_real() || det.re <= num_rational::BigRational::from_integer(0.into()) {
                return Err(Error::BadMetric);
            }
        }
        Ok(HermitianMetric { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let n = self.size();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.entries[i][j].to_complex64());
            }
        }
        m
    }
}

/// Exact determinant of the leading k-by-k block, by cofactor expansion.
fn exact_det(entries: &[Vec<GaussianRational>], k: usize) -> GaussianRational {
    fn det_rec(m: &Vec<Vec<GaussianRational>>) -> GaussianRational {
        let k = m.len();
        if k == 0 {
            return GaussianRational::one();
        }
        if k == 1 {
            return m[0][0].clone();
        }
        let mut acc = GaussianRational::zero();
        for j in 0..k {
            if m[0][j].is_zero() {
                continue;
            }
            let sub: Vec<Vec<GaussianRational>> = (1..k)
                .map(|i| {
                    (0..k)
                        .filter(|jj| *jj != j)
                        .map(|jj| m[i][jj].clone())
                        .collect()
                })
                .collect();
            let mut term = &m[0][j] * &det_rec(&sub);
            if j % 2 == 1 {
                term = -term;
            }
            acc = &acc + &term;
        }
        acc
    }
    let block: Vec<Vec<GaussianRational>> = (0..k)
        .map(|i| (0..k).map(|j| entries[i][j].clone()).collect())
        .collect();
    det_rec(&block)
}

/// A frame of (1,0) vectors annihilating `dr`, possibly polynomial-valued.
///
/// When the graph construction cannot divide exactly by `dr/dz_n`, the frame
/// is stored in denominator-cleared form `dr/dz_n * e_j - dr/dz_j * e_n` and
/// `denominator` records the cleared factor.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub base_point: Option<Point>,
    pub vectors: Vec<Vec<HermitianPolynomial>>,
    pub denominator: Option<HermitianPolynomial>,
}

impl TangentFrame {
    pub fn is_symbolic(&self) -> bool {
        self.vectors
            .iter()
            .any(|v| v.iter().any(|p| !p.is_constant()))
    }

    pub fn evaluate_at(&self, p: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|c| c.evaluate_f64(p)).collect())
            .collect()
    }
}

/// Graph frame along the `z_n` axis, without anchoring at a point:
/// `L_j = e_j - (r_{z_j}/r_{z_n}) e_n`.
pub fn graph_frame_symbolic(d: &DefiningFunction) -> Result<TangentFrame> {
    let n = d.dim();
    let grad = d.gradient_form();
    let rzn = &grad[n - 1];
    if rzn.is_zero() {
        return Err(Error::DegenerateFrame);
    }
    let quotients: Option<Vec<HermitianPolynomial>> =
        (0..n - 1).map(|j| grad[j].exact_div(rzn)).collect();
    match quotients {
        Some(qs) => {
            let vectors = (0..n - 1)
                .map(|j| {
                    let mut v = vec![HermitianPolynomial::zero(n); n];
                    v[j] = HermitianPolynomial::one(n);
                    v[n - 1] = qs[j].negate();
                    v
                })
                .collect();
            Ok(TangentFrame {
                base_point: None,
                vectors,
                denominator: None,
            })
        }
        None => {
            let vectors = (0..n - 1)
                .map(|j| {
                    let mut v = vec![HermitianPolynomial::zero(n); n];
                    v[j] = rzn.clone();
                    v[n - 1] = grad[j].negate();
                    v
                })
                .collect();
            Ok(TangentFrame {
                base_point: None,
                vectors,
                denominator: Some(rzn.clone()),
            })
        }
    }
}

/// Graph frame anchored at a boundary point `p`; errors when `p` is off the
/// boundary or the graph derivative `dr/dz_n` vanishes at `p`.
pub fn graph_frame(d: &DefiningFunction, p: &[Complex64]) -> Result<TangentFrame> {
    d.check_on_boundary(p)?;
    let n = d.dim();
    let grad = d.gradient_at(p);
    if grad[n - 1].norm() <= 1e-12 {
        return Err(Error::DegenerateFrame);
    }
    let mut frame = graph_frame_symbolic(d)?;
    frame.base_point = Some(p.to_vec());
    Ok(frame)
}

/// The Levi form restricted to a frame. Trace and determinant are reported
/// in the convention that the stored frame is orthonormal.
#[derive(Debug, Clone)]
pub struct LeviFrameMatrix {
    pub entries: Vec<Vec<HermitianPolynomial>>,
    pub frame: TangentFrame,
}

impl LeviFrameMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Symbolic trace and determinant, in the convention that the frame is
    /// orthonormal for the metric in use.
    pub fn trace_det(&self) -> (HermitianPolynomial, HermitianPolynomial) {
        let k = self.size();
        if k == 0 {
            return (HermitianPolynomial::zero(0), HermitianPolynomial::zero(0));
        }
        let n = self.entries[0][0].dim();
        let mut tr = HermitianPolynomial::zero(n);
        for i in 0..k {
            tr = tr.add(&self.entries[i][i]);
        }
        (tr, crate::poly::poly_det(&self.entries))
    }

    pub fn evaluate_at(&self, p: &[Complex64]) -> CMatrix {
        let k = self.size();
        let mut m = CMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.entries[i][j].evaluate_f64(p));
            }
        }
        m
    }
}

/// `entry(i, j) = sum_{a,b} v_i[a] * r_{a conj(b)} * conj(v_j[b])`.
pub fn levi_matrix_on_frame(d: &DefiningFunction, frame: &TangentFrame) -> LeviFrameMatrix {
    let n = d.dim();
    let hess = d.complex_hessian();
    let k = frame.vectors.len();
    let mut entries = vec![vec![HermitianPolynomial::zero(n); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = HermitianPolynomial::zero(n);
            for a in 0..n {
                if frame.vectors[i][a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if hess[a][b].is_zero() || frame.vectors[j][b].is_zero() {
                        continue;
                    }
                    acc = acc.add(
                        &frame.vectors[i][a]
                            .mul(&hess[a][b])
                            .mul(&frame.vectors[j][b].conjugate()),
                    );
                }
            }
            entries[i][j] = acc;
        }
    }
    LeviFrameMatrix {
        entries,
        frame: frame.clone(),
    }
}

/// How the frame of the complex tangent space is normalized before the Levi
/// matrix is read off.
#[derive(Debug, Clone, Copy)]
pub enum FrameMode<'a> {
    /// Graph-projection frame `e_k - (g_k / g_pivot) e_pivot`, declared
    /// orthonormal: the convention of projecting the boundary tangent space
    /// along a coordinate axis (the `z_n` axis when the graph derivative
    /// does not vanish).
    Projection,
    /// Gram-Schmidt against a constant Hermitian metric.
    Orthonormal(&'a HermitianMetric),
}

/// Deterministic basis of the complex tangent space at `p` (not yet
/// orthonormal): `e_k - (g_k / g_pivot) e_pivot` for `k != pivot`. The pivot
/// is the graph direction `z_n` when usable, otherwise the gradient entry of
/// largest magnitude.
pub fn complex_tangent_basis(d: &DefiningFunction, p: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let n = d.dim();
    let grad = d.gradient_at(p);
    let mut pivot = 0;
    for j in 1..n {
        if grad[j].norm() > grad[pivot].norm() {
            pivot = j;
        }
    }
    if grad[pivot].norm() <= 1e-12 {
        return Err(Error::DegenerateGradient);
    }
    if grad[n - 1].norm() > 1e-8 {
        pivot = n - 1;
    }
    let mut basis = Vec::with_capacity(n - 1);
    for k in 0..n {
        if k == pivot {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k] = Complex64::new(1.0, 0.0);
        v[pivot] = -grad[k] / grad[pivot];
        basis.push(v);
    }
    Ok(basis)
}

/// Numeric Levi matrix on a frame of the complex tangent space at `p`.
/// Returns the frame (ambient vectors) and the matrix.
pub fn numeric_levi(
    d: &DefiningFunction,
    p: &[Complex64],
    mode: FrameMode,
) -> Result<(Vec<Vec<Complex64>>, CMatrix)> {
    let n = d.dim();
    let basis = complex_tangent_basis(d, p)?;
    let frame = match mode {
        FrameMode::Projection => basis,
        FrameMode::Orthonormal(metric) => {
            let h = metric.to_cmatrix();
            orthonormalize(&basis, Some(&h), 1e-12)
        }
    };
    if frame.len() != n - 1 {
        return Err(Error::DegenerateGradient);
    }
    let hess_polys = d.complex_hessian();
    let mut hess = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            hess.set(a, b, hess_polys[a][b].evaluate_f64(p));
        }
    }
    let k = frame.len();
    let mut levi = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    acc += frame[i][a] * hess.get(a, b) * frame[j][b].conj();
                }
            }
            levi.set(i, j, acc);
        }
    }
    Ok((frame, levi))
}

/// Pointwise classification verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub point: Vec<(f64, f64)>,
    pub eigenvalues: Vec<f64>,
    pub signature: (usize, usize, usize),
    pub q: usize,
    pub q_margin: f64,
    pub pseudoconvex: bool,
    pub q_convex: bool,
    pub z_q: bool,
}

/// Eigen-signature, q-convexity margin, and the pseudoconvex / Z(q) verdicts
/// of the Levi form at a boundary point. The default frame convention is the
/// graph projection; pass `FrameMode::Orthonormal` to classify against a
/// constant Hermitian metric instead.
pub fn classify_point(
    d: &DefiningFunction,
    p: &[Complex64],
    q: usize,
    mode: FrameMode,
    tol: f64,
) -> Result<ClassificationReport> {
    let n = d.dim();
    if q < 1 || q > n - 1 {
        return Err(Error::InvalidQ { q, max: n - 1 });
    }
    d.check_on_boundary(p)?;
    let (_, levi) = numeric_levi(d, p, mode)?;
    let (eigs, _) = hermitian_eigen(&levi)?;
    let n_pos = eigs.iter().filter(|l| **l > tol).count();
    let n_neg = eigs.iter().filter(|l| **l < -tol).count();
    let n_zero = eigs.len() - n_pos - n_neg;
    let q_margin: f64 = eigs.iter().take(q).sum();
    Ok(ClassificationReport {
        point: p.iter().map(|z| (z.re, z.im)).collect(),
        eigenvalues: eigs.clone(),
        signature: (n_pos, n_neg, n_zero),
        q,
        q_margin,
        pseudoconvex: eigs.first().map(|l| *l >= -tol).unwrap_or(true),
        q_convex: q_margin > tol,
        z_q: n_pos >= n - q || n_neg >= q + 1,
    })
}

/// Axis-aligned box in `R^{2n}`, coordinates ordered `x_1..x_n, y_1..y_n`.
#[derive(Debug, Clone, Serialize)]
pub struct RealBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl RealBox {
    pub fn cube(n: usize, half_width: f64) -> Self {
        RealBox {
            lo: vec![-half_width; 2 * n],
            hi: vec![half_width; 2 * n],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.lo.len() != 2 * n || self.hi.len() != 2 * n {
            return Err(Error::Problem(format!(
                "box must have 2n = {} coordinates",
                2 * n
            )));
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| l > h) {
            return Err(Error::Problem("box has lo > hi".into()));
        }
        Ok(())
    }
}

pub fn real_coords_to_point(v: &[f64]) -> Point {
    let n = v.len() / 2;
    (0..n).map(|j| Complex64::new(v[j], v[n + j])).collect()
}

pub fn point_to_real_coords(p: &[Complex64]) -> Vec<f64> {
    let n = p.len();
    let mut v = vec![0.0; 2 * n];
    for j in 0..n {
        v[j] = p[j].re;
        v[n + j] = p[j].im;
    }
    v
}

#[derive(Debug, Clone)]
pub struct SampleOutcome {
    pub points: Vec<Point>,
    pub warning: Option<String>,
}

/// Deterministic boundary sampler: random lines through the box, sign-change
/// bracketing, bisection, then Newton refinement along the line. Points are
/// accepted only when `|r(p)| <= 1e-12`.
pub fn sample_boundary(
    d: &DefiningFunction,
    bx: &RealBox,
    count: usize,
    seed: u64,
) -> Result<SampleOutcome> {
    let n = d.dim();
    bx.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grad_polys = d.gradient_form();
    let dim = 2 * n;
    let mut points = Vec::new();
    let max_attempts = count.max(1) * 200;

    for _ in 0..max_attempts {
        if points.len() >= count {
            break;
        }
        let a: Vec<f64> = (0..dim)
            .map(|i| rng.gen_range(bx.lo[i]..=bx.hi[i]))
            .collect();
        let dir: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let norm: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        let dir: Vec<f64> = dir.iter().map(|x| x / norm).collect();
        // t-range keeping a + t*dir inside the box
        let mut tmin = f64::NEG_INFINITY;
        let mut tmax = f64::INFINITY;
        for i in 0..dim {
            if dir[i].abs() < 1e-14 {
                continue;
            }
            let t0 = (bx.lo[i] - a[i]) / dir[i];
            let t1 = (bx.hi[i] - a[i]) / dir[i];
            tmin = tmin.max(t0.min(t1));
            tmax = tmax.min(t0.max(t1));
        }
        if !(tmin.is_finite() && tmax.is_finite() && tmin < tmax) {
            continue;
        }
        let line_point = |t: f64| -> Point {
            let v: Vec<f64> = (0..dim).map(|i| a[i] + t * dir[i]).collect();
            real_coords_to_point(&v)
        };
        let f = |t: f64| -> f64 { d.r_at(&line_point(t)).re };
        // scan for a sign change
        const SCAN: usize = 32;
        let mut bracket = None;
        let mut prev_t = tmin;
        let mut prev_f = f(tmin);
        for k in 1..=SCAN {
            let t = tmin + (tmax - tmin) * (k as f64) / (SCAN as f64);
            let ft = f(t);
            if prev_f == 0.0 {
                bracket = Some((prev_t, prev_t));
                break;
            }
            if prev_f * ft < 0.0 {
                bracket = Some((prev_t, t));
                break;
            }
            prev_t = t;
            prev_f = ft;
        }
        let (mut lo, mut hi) = match bracket {
            Some(b) => b,
            None => continue,
        };
        // bisection
        let mut mid = 0.5 * (lo + hi);
        if lo < hi {
            let mut flo = f(lo);
            for _ in 0..80 {
                mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
        } else {
            mid = lo;
        }
        // Newton refinement along the line
        let zdot: Vec<Complex64> = (0..n).map(|j| Complex64::new(dir[j], dir[n + j])).collect();
        let mut t = mid;
        for _ in 0..12 {
            let pt = line_point(t);
            let val = d.r_at(&pt).re;
            if val.abs() <= SAMPLE_RESIDUAL {
                break;
            }
            let mut deriv = Complex64::new(0.0, 0.0);
            for j in 0..n {
                deriv += grad_polys[j].evaluate_f64(&pt) * zdot[j];
            }
            let slope = 2.0 * deriv.re;
            if slope.abs() < 1e-14 {
                break;
            }
            t -= val / slope;
        }
        let pt = line_point(t);
        if d.r_at(&pt).re.abs() <= SAMPLE_RESIDUAL {
            points.push(pt);
        }
    }

    let warning = if points.len() < count {
        Some(format!(
            "requested {} boundary samples, found {}",
            count,
            points.len()
        ))
    } else {
        None
    };
    Ok(SampleOutcome { points, warning })
}
