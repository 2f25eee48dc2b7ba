//! Geometry of candidate varieties and submanifolds inside the boundary:
//! Levi kernel, holomorphic dimension, complex tangency, Lie-bracket flags
//! and finite bracket type, involutivity, and the order of tangency of
//! parametrized complex manifolds.
//!
//! Real tangent vectors use the `2n` coordinate layout `x_1..x_n, y_1..y_n`;
//! the complex structure acts as the block rotation `J(a, b) = (-b, a)`.

use crate::error::{Error, Result};
use crate::groebner::radical_membership;
use crate::levi::{
    numeric_levi, point_to_real_coords, real_coords_to_point, DefiningFunction, FrameMode,
    HermitianMetric, Point, RealBox, BOUNDARY_TOL, DEFAULT_SIGNATURE_TOL,
};
use crate::linalg::{
    hermitian_eigen, intersection_dim, lsq_residual, nullspace, orthonormalize,
    CMatrix,
};
use crate::poly::{HermitianPolynomial, WirtingerKind};
use crate::rational::GaussianRational;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Residual target for variety sample points.
pub const VARIETY_RESIDUAL: f64 = 1e-10;
/// Default threshold on principal-angle cosines for subspace intersections.
pub const DEFAULT_INTERSECTION_TOL: f64 = 1e-7;
/// Default shrink depth for the holomorphic-dimension scan.
pub const HOLDIM_SHRINK_DEPTH: usize = 4;

/// A real variety in the boundary, cut out by real polynomial equations.
#[derive(Debug, Clone)]
pub struct VarietyIdeal {
    n: usize,
    generators: Vec<HermitianPolynomial>,
}

impl VarietyIdeal {
    pub fn new(generators: Vec<HermitianPolynomial>) -> Result<Self> {
        let n = generators
            .first()
            .map(|g| g.dim())
            .ok_or_else(|| Error::Problem("variety needs at least one generator".into()))?;
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(g.dim(), n));
            }
            if !g.is_real() {
                return Err(Error::NotReal);
            }
        }
        Ok(VarietyIdeal { n, generators })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[HermitianPolynomial] {
        &self.generators
    }

    /// Adjoin the defining function (dropped if already present).
    pub fn with_boundary(&self, d: &DefiningFunction) -> VarietyIdeal {
        let mut gens = self.generators.clone();
        let r = d.r().clone();
        if !gens.iter().any(|g| g.monic() == r.monic()) {
            gens.push(r);
        }
        VarietyIdeal {
            n: self.n,
            generators: gens,
        }
    }

    pub fn residual_at(&self, p: &[Complex64]) -> f64 {
        self.generators
            .iter()
            .map(|g| g.evaluate_f64(p).norm())
            .fold(0.0, f64::max)
    }
}

/// The 2n real partial derivatives `(d/dx_1.., d/dy_1..)` of a polynomial.
fn real_partials(g: &HermitianPolynomial) -> Vec<HermitianPolynomial> {
    let n = g.dim();
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let gz = g.wirtinger(j, WirtingerKind::Holomorphic).unwrap();
        let gzb = g.wirtinger(j, WirtingerKind::Antiholomorphic).unwrap();
        out.push(gz.add(&gzb));
    }
    for j in 0..n {
        let gz = g.wirtinger(j, WirtingerKind::Holomorphic).unwrap();
        let gzb = g.wirtinger(j, WirtingerKind::Antiholomorphic).unwrap();
        out.push(gz.sub(&gzb).scale(&GaussianRational::i()));
    }
    out
}

/// Real Jacobian of the variety's generators at a point, rows per generator.
fn real_jacobian(v: &VarietyIdeal, p: &[Complex64]) -> CMatrix {
    let rows: Vec<Vec<Complex64>> = v
        .generators
        .iter()
        .map(|g| {
            real_partials(g)
                .iter()
                .map(|dg| Complex64::new(dg.evaluate_f64(p).re, 0.0))
                .collect()
        })
        .collect();
    CMatrix::from_rows(&rows)
}

/// `J(a, b) = (-b, a)` in the block layout.
pub fn apply_j(v: &[f64]) -> Vec<f64> {
    let n = v.len() / 2;
    let mut out = vec![0.0; 2 * n];
    for j in 0..n {
        out[j] = -v[n + j];
        out[n + j] = v[j];
    }
    out
}

/// Real block-layout vector to the ambient complex vector `a + i b`.
pub fn real_vector_to_complex_point(v: &[f64]) -> Vec<Complex64> {
    let n = v.len() / 2;
    (0..n).map(|j| Complex64::new(v[j], v[n + j])).collect()
}

/// Orthonormal basis of the null space of the Levi form at a boundary point,
/// as ambient complex vectors: eigenvectors with `|eigenvalue| < tol`.
pub fn levi_kernel_at(
    d: &DefiningFunction,
    p: &[Complex64],
    tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    d.check_on_boundary(p)?;
    let metric = HermitianMetric::identity(d.dim());
    let (frame, levi) = numeric_levi(d, p, FrameMode::Orthonormal(&metric))?;
    let (eigs, vecs) = hermitian_eigen(&levi)?;
    let mut out = Vec::new();
    for (k, lam) in eigs.iter().enumerate() {
        if lam.abs() < tol {
            let w = vecs.col(k);
            let mut ambient = vec![Complex64::new(0.0, 0.0); d.dim()];
            for (i, wi) in w.iter().enumerate() {
                for (a, fa) in frame[i].iter().enumerate() {
                    ambient[a] += wi * fa;
                }
            }
            out.push(ambient);
        }
    }
    Ok(out)
}

/// Real tangent space and its largest J-invariant subspace at a point of the
/// variety. Returns a real orthonormal basis of `T_p V` (block layout) and a
/// complex orthonormal basis of `T^C_p V` (ambient vectors).
pub fn tangent_spaces_at(
    v: &VarietyIdeal,
    p: &[Complex64],
    tol: f64,
) -> Result<(Vec<Vec<f64>>, Vec<Vec<Complex64>>)> {
    let residual = v.residual_at(p);
    if residual > BOUNDARY_TOL {
        return Err(Error::OffVariety {
            residual,
            tol: BOUNDARY_TOL,
        });
    }
    let jac = real_jacobian(v, p);
    let null = nullspace(&jac, tol)?;
    let t_basis: Vec<Vec<f64>> = null
        .iter()
        .map(|w| w.iter().map(|c| c.re).collect())
        .collect();
    // T^C = T intersect J(T): solve [U | -JU] (a; b) = 0, map a back
    let dim_t = t_basis.len();
    let complex_basis = if dim_t == 0 {
        Vec::new()
    } else {
        let ju: Vec<Vec<f64>> = t_basis.iter().map(|u| apply_j(u)).collect();
        let two_n = 2 * v.n;
        let mut stacked = CMatrix::zeros(two_n, 2 * dim_t);
        for (j, u) in t_basis.iter().enumerate() {
            for i in 0..two_n {
                stacked.set(i, j, Complex64::new(u[i], 0.0));
            }
        }
        for (j, w) in ju.iter().enumerate() {
            for i in 0..two_n {
                stacked.set(i, dim_t + j, Complex64::new(-w[i], 0.0));
            }
        }
        let kernel = nullspace(&stacked, tol)?;
        let mut inter: Vec<Vec<f64>> = Vec::new();
        for coeffs in kernel {
            let mut x = vec![0.0; two_n];
            for (j, u) in t_basis.iter().enumerate() {
                for i in 0..two_n {
                    x[i] += coeffs[j].re * u[i];
                }
            }
            inter.push(x);
        }
        let ambient: Vec<Vec<Complex64>> = inter
            .iter()
            .map(|w| real_vector_to_complex_point(w))
            .collect();
        orthonormalize(&ambient, None, 1e-9)
    };
    Ok((t_basis, complex_basis))
}

/// Deterministic Gauss-Newton projection of random starts onto the zero set
/// of a real polynomial system.
struct VarietySampler {
    system: Vec<HermitianPolynomial>,
    partials: Vec<Vec<HermitianPolynomial>>,
    n: usize,
}

impl VarietySampler {
    fn new(system: Vec<HermitianPolynomial>) -> Self {
        let n = system.first().map(|g| g.dim()).unwrap_or(0);
        let partials = system.iter().map(real_partials).collect();
        VarietySampler { system, partials, n }
    }

    fn residual(&self, p: &[Complex64]) -> f64 {
        self.system
            .iter()
            .map(|g| g.evaluate_f64(p).norm())
            .fold(0.0, f64::max)
    }

    /// One Gauss-Newton run from a start in real coordinates. Returns the
    /// refined point when it converges below the residual target.
    fn project(&self, start: &[f64]) -> Option<Point> {
        let m = self.system.len();
        let dim = 2 * self.n;
        let mut x = start.to_vec();
        for _ in 0..60 {
            let p = real_coords_to_point(&x);
            let f: Vec<f64> = self.system.iter().map(|g| g.evaluate_f64(&p).re).collect();
            let maxres = f.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            if maxres <= VARIETY_RESIDUAL {
                return Some(p);
            }
            let mut jac = CMatrix::zeros(m, dim);
            for (i, parts) in self.partials.iter().enumerate() {
                for (j, dg) in parts.iter().enumerate() {
                    jac.set(i, j, Complex64::new(dg.evaluate_f64(&p).re, 0.0));
                }
            }
            // minimum-norm step via the pseudo-inverse of J J^T
            let jjt = jac.matmul(&jac.adjoint());
            let (eigs, vecs) = hermitian_eigen(&jjt).ok()?;
            let fv: Vec<Complex64> = f.iter().map(|v| Complex64::new(*v, 0.0)).collect();
            let mut y = vec![Complex64::new(0.0, 0.0); m];
            for (k, lam) in eigs.iter().enumerate() {
                if *lam <= 1e-12 {
                    continue;
                }
                let col = vecs.col(k);
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    proj += col[i].conj() * fv[i];
                }
                let scale = proj / lam;
                for i in 0..m {
                    y[i] += scale * col[i];
                }
            }
            let mut moved = false;
            for j in 0..dim {
                let mut step = 0.0;
                for i in 0..m {
                    step += (jac.get(i, j).conj() * y[i]).re;
                }
                if step != 0.0 {
                    moved = true;
                }
                x[j] -= step;
            }
            if !moved {
                return None;
            }
        }
        let p = real_coords_to_point(&x);
        if self.residual(&p) <= VARIETY_RESIDUAL {
            Some(p)
        } else {
            None
        }
    }

    /// Samples inside a box.
    fn sample_box(&self, bx: &RealBox, count: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 2 * self.n;
        let mut out = Vec::new();
        for _ in 0..count.max(1) * 60 {
            if out.len() >= count {
                break;
            }
            let start: Vec<f64> = (0..dim)
                .map(|i| rng.gen_range(bx.lo[i]..=bx.hi[i]))
                .collect();
            if let Some(p) = self.project(&start) {
                out.push(p);
            }
        }
        out
    }

    /// Samples inside a Euclidean ball around a center, staying within the
    /// given radius of it.
    fn sample_ball(&self, center: &[f64], radius: f64, count: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = center.len();
        let mut out = Vec::new();
        for _ in 0..count.max(1) * 60 {
            if out.len() >= count {
                break;
            }
            let dir: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let norm: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue;
            }
            let rad = radius * rng.gen_range(0.0..=1.0f64);
            let start: Vec<f64> = center
                .iter()
                .zip(&dir)
                .map(|(c, d)| c + rad * d / norm)
                .collect();
            if let Some(p) = self.project(&start) {
                let dist: f64 = point_to_real_coords(&p)
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if dist <= radius {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Per-radius row of the holomorphic-dimension scan.
#[derive(Debug, Clone)]
pub struct RadiusStat {
    pub radius: f64,
    pub samples_used: usize,
    pub min_dim: usize,
}

#[derive(Debug, Clone)]
pub struct HolDimReport {
    /// Stabilized value: the largest per-radius minimum.
    pub value: usize,
    pub per_radius: Vec<RadiusStat>,
    /// Set when sampled points show non-constant Jacobian rank; such points
    /// are excluded from the minima.
    pub rank_jump_detected: bool,
}

/// Holomorphic dimension of `V` inside the boundary at `z0`: for shrinking
/// radii, the minimum over sampled points of
/// `dim_C(T^C V  intersect  Ker L)`; the stabilized value is the largest of
/// the per-radius minima.
#[allow(clippy::too_many_arguments)]
pub fn holomorphic_dimension(
    d: &DefiningFunction,
    v: &VarietyIdeal,
    z0: &[Complex64],
    radius: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<HolDimReport> {
    let v_full = v.with_boundary(d);
    let residual = v_full.residual_at(z0);
    if residual > BOUNDARY_TOL {
        return Err(Error::OffVariety {
            residual,
            tol: BOUNDARY_TOL,
        });
    }
    let sampler = VarietySampler::new(v_full.generators.clone());
    let center = point_to_real_coords(z0);
    let mut per_radius = Vec::new();
    let mut rank_jump = false;
    for k in 0..=HOLDIM_SHRINK_DEPTH {
        let rho = radius * 0.5f64.powi(k as i32);
        let mut pts = vec![z0.to_vec()];
        pts.extend(sampler.sample_ball(&center, rho, samples, seed.wrapping_add(k as u64)));
        if pts.is_empty() {
            return Err(Error::NoSamples);
        }
        // smoothness filter: keep the points with the modal Jacobian rank
        let ranks: Vec<usize> = pts
            .iter()
            .map(|p| {
                let jac = real_jacobian(&v_full, p);
                crate::linalg::rank(&jac, 1e-8)
            })
            .collect::<Result<_>>()?;
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for r in &ranks {
            match counts.iter_mut().find(|(rr, _)| rr == r) {
                Some((_, c)) => *c += 1,
                None => counts.push((*r, 1)),
            }
        }
        counts.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
        let modal_rank = counts[0].0;
        if counts.len() > 1 {
            rank_jump = true;
        }
        let mut min_dim: Option<usize> = None;
        let mut used = 0;
        for (p, r) in pts.iter().zip(&ranks) {
            if *r != modal_rank {
                continue;
            }
            let (_, tc) = tangent_spaces_at(&v_full, p, 1e-8)?;
            let ker = levi_kernel_at(d, p, DEFAULT_SIGNATURE_TOL)?;
            let dim = if tc.is_empty() || ker.is_empty() {
                0
            } else {
                intersection_dim(&tc, &ker, tol)?
            };
            used += 1;
            min_dim = Some(min_dim.map_or(dim, |m: usize| m.min(dim)));
        }
        let min_dim = min_dim.ok_or(Error::NoSamples)?;
        per_radius.push(RadiusStat {
            radius: rho,
            samples_used: used,
            min_dim,
        });
    }
    let value = per_radius.iter().map(|r| r.min_dim).max().unwrap_or(0);
    Ok(HolDimReport {
        value,
        per_radius,
        rank_jump_detected: rank_jump,
    })
}

#[derive(Debug, Clone)]
pub struct CtangentReport {
    pub holds: bool,
    pub max_violation: f64,
    pub samples_used: usize,
}

/// Checks `TM subset T^C bOmega` on sampled points of `M`: every real tangent
/// vector `X` and its rotation `JX` must annihilate `dr`. Samples with
/// `r != 0` trigger a distinct error since `M` is assumed to lie in the
/// boundary.
pub fn complex_tangential_check(
    d: &DefiningFunction,
    m: &VarietyIdeal,
    bx: &RealBox,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CtangentReport> {
    let sampler = VarietySampler::new(m.generators.clone());
    let pts = sampler.sample_box(bx, samples, seed);
    if pts.is_empty() {
        return Err(Error::NoSamples);
    }
    let max_r = pts
        .iter()
        .map(|p| d.r_at(p).norm())
        .fold(0.0f64, f64::max);
    if max_r > BOUNDARY_TOL {
        return Err(Error::NotInBoundary {
            max_residual: max_r,
        });
    }
    let dr = real_partials(d.r());
    let mut max_violation = 0.0f64;
    for p in &pts {
        let (t_basis, _) = tangent_spaces_at(m, p, 1e-8)?;
        let dr_at: Vec<f64> = dr.iter().map(|g| g.evaluate_f64(p).re).collect();
        for x in &t_basis {
            let jx = apply_j(x);
            let pair = |v: &[f64]| -> f64 {
                v.iter().zip(&dr_at).map(|(a, b)| a * b).sum::<f64>().abs()
            };
            max_violation = max_violation.max(pair(x)).max(pair(&jx));
        }
    }
    Ok(CtangentReport {
        holds: max_violation < tol,
        max_violation,
        samples_used: pts.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// (1,0) field: n coefficients on `d/dz_j`.
    Holomorphic,
    /// Real field: 2n coefficients on `d/dx_j, d/dy_j`.
    Real,
}

/// A vector field with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVectorField {
    pub kind: FieldKind,
    pub n: usize,
    pub coefficients: Vec<HermitianPolynomial>,
}

impl PolyVectorField {
    pub fn new(kind: FieldKind, n: usize, coefficients: Vec<HermitianPolynomial>) -> Result<Self> {
        let expected = match kind {
            FieldKind::Holomorphic => n,
            FieldKind::Real => 2 * n,
        };
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch(coefficients.len(), expected));
        }
        if coefficients.iter().any(|c| c.dim() != n) {
            return Err(Error::DimensionMismatch(n, n));
        }
        if kind == FieldKind::Real && coefficients.iter().any(|c| !c.is_real()) {
            return Err(Error::NotReal);
        }
        Ok(PolyVectorField {
            kind,
            n,
            coefficients,
        })
    }

    /// Apply the field as a derivation to a polynomial.
    pub fn apply(&self, g: &HermitianPolynomial) -> HermitianPolynomial {
        let n = self.n;
        let mut acc = HermitianPolynomial::zero(n);
        match self.kind {
            FieldKind::Holomorphic => {
                for j in 0..n {
                    if self.coefficients[j].is_zero() {
                        continue;
                    }
                    let dg = g.wirtinger(j, WirtingerKind::Holomorphic).unwrap();
                    acc = acc.add(&self.coefficients[j].mul(&dg));
                }
            }
            FieldKind::Real => {
                let parts = real_partials(g);
                for (c, dg) in self.coefficients.iter().zip(&parts) {
                    if c.is_zero() || dg.is_zero() {
                        continue;
                    }
                    acc = acc.add(&c.mul(dg));
                }
            }
        }
        acc
    }

    pub fn evaluate_at(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.coefficients
            .iter()
            .map(|c| c.evaluate_f64(p))
            .collect()
    }
}

/// `[X, Y] = X(Y) - Y(X)` componentwise; exact polynomial coefficients.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField> {
    if x.kind != y.kind || x.n != y.n {
        return Err(Error::FieldKindMismatch);
    }
    let out: Vec<HermitianPolynomial> = x
        .coefficients
        .iter()
        .zip(&y.coefficients)
        .map(|(xc, yc)| x.apply(yc).sub(&y.apply(xc)))
        .collect();
    PolyVectorField::new(x.kind, x.n, out)
}

/// The filtration `L^0 subset L^1 subset ...` of a submanifold's tangent
/// bundle generated by brackets of the spanning fields.
#[derive(Debug, Clone)]
pub struct BracketFlag {
    /// Growth counts `(p_0, p_1, ..., p_s)`; trailing zero growth is dropped.
    pub dims: Vec<usize>,
    pub depth: usize,
    pub finite_type: bool,
    pub base_point: Vec<(f64, f64)>,
    pub manifold_dim: usize,
}

/// Builds the bracket flag of the distribution spanned by `fields` on `M` at
/// `p`. The fields must be real and tangent to `M` (each field applied to
/// each generator must lie in the radical of the generator ideal).
pub fn bracket_flag(
    fields: &[PolyVectorField],
    m: &VarietyIdeal,
    p: &[Complex64],
    max_depth: usize,
    groebner_limit: usize,
) -> Result<BracketFlag> {
    let n = m.dim();
    for f in fields {
        if f.kind != FieldKind::Real || f.n != n {
            return Err(Error::FieldKindMismatch);
        }
    }
    for (fi, f) in fields.iter().enumerate() {
        for (gi, g) in m.generators().iter().enumerate() {
            let fg = f.apply(g);
            if !radical_membership(&fg, m.generators(), None, groebner_limit)? {
                return Err(Error::FieldNotTangent {
                    field: fi,
                    generator: gi,
                });
            }
        }
    }
    let jac = real_jacobian(m, p);
    let manifold_dim = 2 * n - crate::linalg::rank(&jac, 1e-8)?;

    let eval_span_rank = |vecs: &[Vec<Complex64>]| -> Result<usize> {
        if vecs.is_empty() {
            return Ok(0);
        }
        Ok(orthonormalize(vecs, None, 1e-8).len())
    };
    let eval_fields = |fs: &[PolyVectorField], at: &[Complex64]| -> Vec<Vec<Complex64>> {
        fs.iter().map(|f| f.evaluate_at(at)).collect()
    };

    // degeneracy check on the base rank: nearby perturbations should not see
    // a strictly larger level-0 span
    let base_rank = eval_span_rank(&eval_fields(fields, p))?;
    if !fields.is_empty() {
        let center = point_to_real_coords(p);
        for t in 0..8 {
            let mut shifted = center.clone();
            let idx = t % (2 * n);
            shifted[idx] += 1e-4;
            let q = real_coords_to_point(&shifted);
            if eval_span_rank(&eval_fields(fields, &q))? > base_rank {
                return Err(Error::DegenerateRank);
            }
        }
    }

    let mut levels: Vec<Vec<PolyVectorField>> = vec![fields.to_vec()];
    let mut all_vecs = eval_fields(fields, p);
    let mut dims = vec![base_rank];
    let mut total = base_rank;
    let mut depth = 0;
    for j in 1..=max_depth {
        if total >= manifold_dim {
            break;
        }
        let mut next_level = Vec::new();
        for x0 in fields {
            for y in &levels[j - 1] {
                next_level.push(lie_bracket(x0, y)?);
            }
        }
        let mut grown = all_vecs.clone();
        grown.extend(eval_fields(&next_level, p));
        let new_total = eval_span_rank(&grown)?;
        if new_total == total {
            break;
        }
        dims.push(new_total - total);
        total = new_total;
        depth = j;
        all_vecs = grown;
        levels.push(next_level);
    }
    let finite_type = total == manifold_dim && dims.len() >= 2;
    Ok(BracketFlag {
        dims,
        depth,
        finite_type,
        base_point: p.iter().map(|z| (z.re, z.im)).collect(),
        manifold_dim,
    })
}

/// True when every pairwise bracket lies in the pointwise span of the fields
/// on sampled points of `M` (least-squares residual below `tol`). The span
/// rank must not jump across samples.
pub fn involutivity_check(
    fields: &[PolyVectorField],
    m: &VarietyIdeal,
    bx: &RealBox,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<bool> {
    if fields.len() < 2 {
        return Ok(true);
    }
    let sampler = VarietySampler::new(m.generators().to_vec());
    let pts = sampler.sample_box(bx, samples, seed);
    if pts.is_empty() {
        return Err(Error::NoSamples);
    }
    let mut brackets = Vec::new();
    for i in 0..fields.len() {
        for j in (i + 1)..fields.len() {
            brackets.push(lie_bracket(&fields[i], &fields[j])?);
        }
    }
    let mut rank_seen: Option<usize> = None;
    for p in &pts {
        let span: Vec<Vec<Complex64>> = fields.iter().map(|f| f.evaluate_at(p)).collect();
        let rank = orthonormalize(&span, None, 1e-8).len();
        match rank_seen {
            None => rank_seen = Some(rank),
            Some(r) if r != rank => return Err(Error::RankJump(r, rank)),
            _ => {}
        }
        for b in &brackets {
            let bv = b.evaluate_at(p);
            if lsq_residual(&span, &bv) >= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A polynomial holomorphic map from parameter space `C^d` into `C^n`.
#[derive(Debug, Clone)]
pub struct HoloMap {
    pub params: usize,
    pub components: Vec<HermitianPolynomial>,
}

impl HoloMap {
    /// Components live in the `d`-dimensional parameter ring and must be
    /// genuinely independent of the conjugated parameters.
    pub fn new(params: usize, components: Vec<HermitianPolynomial>) -> Result<Self> {
        for (k, c) in components.iter().enumerate() {
            if c.dim() != params {
                return Err(Error::DimensionMismatch(c.dim(), params));
            }
            for (m, _) in c.terms() {
                if (0..params).any(|j| m.zbar_exp(j) > 0) {
                    return Err(Error::NotHolomorphic { component: k });
                }
            }
        }
        Ok(HoloMap { params, components })
    }

    /// Value at the base parameter 0, exactly.
    pub fn base_value(&self) -> Vec<GaussianRational> {
        self.components.iter().map(|c| c.constant_term()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangencyOrder {
    /// Lowest total degree of a nonzero term of `r  after  phi`.
    Finite(u32),
    /// The composition is the zero polynomial: the image lies in the
    /// boundary exactly.
    IdenticallyZero,
    /// Nonzero, but every term has degree above the cap; inconclusive.
    AboveMax(u32),
}

/// Order of tangency of the image of `phi` to the boundary at `phi(0)`:
/// composes `r` with `phi` exactly and reads off the lowest-degree term.
pub fn tangency_order(
    d: &DefiningFunction,
    phi: &HoloMap,
    max_order: u32,
) -> Result<TangencyOrder> {
    if phi.components.len() != d.dim() {
        return Err(Error::DimensionMismatch(phi.components.len(), d.dim()));
    }
    let base = phi.base_value();
    let at_base = d.r().evaluate_exact(&base)?;
    if !at_base.is_zero() {
        return Err(Error::MapOffBoundary {
            residual: at_base.to_complex64().norm(),
        });
    }
    let conj_components: Vec<HermitianPolynomial> =
        phi.components.iter().map(|c| c.conjugate()).collect();
    let composed = d.r().compose(&phi.components, &conj_components)?;
    if composed.is_zero() {
        return Ok(TangencyOrder::IdenticallyZero);
    }
    let min_degree = composed
        .terms()
        .map(|(m, _)| m.total_degree())
        .min()
        .unwrap();
    if min_degree > max_order {
        Ok(TangencyOrder::AboveMax(max_order))
    } else {
        Ok(TangencyOrder::Finite(min_degree))
    }
}
