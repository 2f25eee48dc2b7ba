//! Exact multivariate polynomial arithmetic in the variables `z_1..z_n` and
//! their formal conjugates `conj(z_1)..conj(z_n)`, treated as `2n` independent
//! indeterminates, with Wirtinger differentiation and evaluation.

use crate::error::{Error, Result};
use crate::rational::GaussianRational;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which Wirtinger derivative to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WirtingerKind {
    /// d/dz_j, treating conj(z_j) as constant.
    Holomorphic,
    /// d/d conj(z_j), treating z_j as constant.
    Antiholomorphic,
}

/// Exponent vector of length `2n`: the first `n` entries are the powers of
/// `z_j`, the last `n` the powers of `conj(z_j)`.
///
/// `Ord` is graded reverse lexicographic with the variable order
/// `z_1 < ... < z_n < conj(z_1) < ... < conj(z_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial {
            exps: vec![0; 2 * n],
        }
    }

    pub fn n(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn z_exp(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn zbar_exp(&self, j: usize) -> u32 {
        self.exps[self.n() + j]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Swap the z block with the conj(z) block.
    pub fn conj_swap(&self) -> Monomial {
        let n = self.n();
        let mut exps = vec![0; 2 * n];
        for j in 0..n {
            exps[j] = self.exps[n + j];
            exps[n + j] = self.exps[j];
        }
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        // Equal degree: the monomial whose first differing exponent (scanning
        // from the smallest variable) is smaller is the larger monomial.
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a != b {
                return if a < b { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the Gaussian rationals in `z, conj(z)`.
///
/// Canonical form: no zero coefficients are stored, so two polynomials are
/// equal iff their term maps are equal. A polynomial is *real* iff it equals
/// its own conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermitianPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl HermitianPolynomial {
    pub fn zero(n: usize) -> Self {
        HermitianPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::unit(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::constant(n, GaussianRational::from_int(k))
    }

    /// The variable `z_{j+1}` (0-based `j`).
    pub fn var_z(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j + 1, n });
        }
        let mut m = Monomial::unit(n);
        m.exps[j] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, GaussianRational::one());
        Ok(p)
    }

    /// The formal conjugate `conj(z_{j+1})`.
    pub fn var_zbar(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j + 1, n });
        }
        let mut m = Monomial::unit(n);
        m.exps[n + j] = 1;
        let mut p = Self::zero(n);
        p.add_term(m, GaussianRational::one());
        Ok(p)
    }

    /// Real part sugar: `x_j = (z_j + conj(z_j)) / 2`.
    pub fn var_x(n: usize, j: usize) -> Result<Self> {
        let half = GaussianRational::from_ratio(1, 2);
        Ok(Self::var_z(n, j)?
            .add(&Self::var_zbar(n, j)?)
            .scale(&half))
    }

    /// Imaginary part sugar: `y_j = (z_j - conj(z_j)) / (2i)`.
    pub fn var_y(n: usize, j: usize) -> Result<Self> {
        // 1/(2i) = -i/2
        let c = &GaussianRational::from_ratio(-1, 2) * &GaussianRational::i();
        Ok(Self::var_z(n, j)?
            .sub(&Self::var_zbar(n, j)?)
            .scale(&c))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::unit(self.n))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest monomial in the graded reverse lexicographic order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    /// Scale so the leading coefficient is exactly 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.exps.len(), 2 * self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("dimension mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("dimension mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("dimension mismatch")
    }

    pub fn negate(&self) -> Self {
        HermitianPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HermitianPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply by a single term.
    pub fn term_mul(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HermitianPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to `z_{j+1}` or `conj(z_{j+1})`,
    /// treating the `2n` indeterminates as independent.
    pub fn wirtinger(&self, j: usize, kind: WirtingerKind) -> Result<Self> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j + 1,
                n: self.n,
            });
        }
        let slot = match kind {
            WirtingerKind::Holomorphic => j,
            WirtingerKind::Antiholomorphic => self.n + j,
        };
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exps[slot];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps[slot] = e - 1;
            out.add_term(dm, c * &GaussianRational::from_int(e as i64));
        }
        Ok(out)
    }

    /// Swap `z_j <-> conj(z_j)` in every monomial and conjugate every
    /// coefficient. An involutive ring anti-automorphism (here the ring is
    /// commutative, so an automorphism) fixing real polynomials.
    pub fn conjugate(&self) -> Self {
        HermitianPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conj_swap(), c.conj()))
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Exact evaluation at a Gaussian-rational point: `z_j = pt[j]`,
    /// `conj(z_j) = conj(pt[j])`.
    pub fn evaluate_exact(&self, pt: &[GaussianRational]) -> Result<GaussianRational> {
        if pt.len() != self.n {
            return Err(Error::DimensionMismatch(pt.len(), self.n));
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for j in 0..self.n {
                for _ in 0..m.z_exp(j) {
                    v = &v * &pt[j];
                }
                let cj = pt[j].conj();
                for _ in 0..m.zbar_exp(j) {
                    v = &v * &cj;
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Floating evaluation at a complex point.
    pub fn evaluate_f64(&self, pt: &[Complex64]) -> Complex64 {
        debug_assert_eq!(pt.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex64();
            for j in 0..self.n {
                if m.z_exp(j) > 0 {
                    v *= pt[j].powi(m.z_exp(j) as i32);
                }
                if m.zbar_exp(j) > 0 {
                    v *= pt[j].conj().powi(m.zbar_exp(j) as i32);
                }
            }
            acc += v;
        }
        acc
    }

    /// Exact division by `divisor`: returns the quotient when the remainder of
    /// multivariate division is zero, `None` otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let dlm = divisor.leading_monomial().unwrap().clone();
        let dlc = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n);
        while let Some((lm, lc)) = rem.terms.last_key_value().map(|(m, c)| (m.clone(), c.clone()))
        {
            if !dlm.divides(&lm) {
                return None;
            }
            let qm = dlm.div_into(&lm);
            let qc = &lc / &dlc;
            quot.add_term(qm.clone(), qc.clone());
            rem = rem.sub(&divisor.term_mul(&qm, &qc));
        }
        Some(quot)
    }

    /// Substitute `z_j -> z_images[j]`, `conj(z_j) -> zbar_images[j]`.
    /// All images must live in a common ring.
    pub fn compose(
        &self,
        z_images: &[HermitianPolynomial],
        zbar_images: &[HermitianPolynomial],
    ) -> Result<HermitianPolynomial> {
        if z_images.len() != self.n || zbar_images.len() != self.n {
            return Err(Error::DimensionMismatch(z_images.len(), self.n));
        }
        let m_dim = z_images
            .first()
            .or_else(|| zbar_images.first())
            .map(|p| p.dim())
            .unwrap_or(0);
        let mut out = HermitianPolynomial::zero(m_dim);
        for (m, c) in &self.terms {
            let mut v = HermitianPolynomial::constant(m_dim, c.clone());
            for j in 0..self.n {
                if m.z_exp(j) > 0 {
                    v = v.checked_mul(&z_images[j].pow(m.z_exp(j)))?;
                }
                if m.zbar_exp(j) > 0 {
                    v = v.checked_mul(&zbar_images[j].pow(m.zbar_exp(j)))?;
                }
            }
            out = out.checked_add(&v)?;
        }
        Ok(out)
    }

    /// Embed into the polynomial ring over `C^m`, `m >= n`, mapping variables
    /// by index.
    pub fn extend_dim(&self, m: usize) -> Self {
        assert!(m >= self.n);
        let mut out = HermitianPolynomial::zero(m);
        for (mono, c) in &self.terms {
            let mut exps = vec![0u32; 2 * m];
            for j in 0..self.n {
                exps[j] = mono.z_exp(j);
                exps[m + j] = mono.zbar_exp(j);
            }
            out.add_term(Monomial { exps }, c.clone());
        }
        out
    }

    /// Deterministic total order used to canonicalize generator lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let la = self.leading_monomial();
        let lb = other.leading_monomial();
        match (la, lb) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(a), Some(b)) => {
                let o = a.cmp(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
        let o = self.num_terms().cmp(&other.num_terms());
        if o != Ordering::Equal {
            return o;
        }
        for ((ma, ca), (mb, cb)) in self.terms.iter().rev().zip(other.terms.iter().rev()) {
            let o = ma.cmp(mb);
            if o != Ordering::Equal {
                return o;
            }
            let o = ca.cmp(cb);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    /// Canonical expression string; parses back to the same polynomial. The
    /// base variable name is `z` (`format_with` allows `w` for map
    /// parameters).
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign_neg, coeff_abs) = if c.is_real() && c.re < BigRational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if sign_neg {
                    out.push('-');
                }
                first = false;
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_unit() || !coeff_abs.is_one() {
                factors.push(coeff_abs.to_string());
            }
            for j in 0..self.n {
                let e = m.z_exp(j);
                if e == 1 {
                    factors.push(format!("{}{}", var, j + 1));
                } else if e > 1 {
                    factors.push(format!("{}{}^{}", var, j + 1, e));
                }
            }
            for j in 0..self.n {
                let e = m.zbar_exp(j);
                if e == 1 {
                    factors.push(format!("conj({}{})", var, j + 1));
                } else if e > 1 {
                    factors.push(format!("conj({}{})^{}", var, j + 1, e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for HermitianPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("z"))
    }
}

impl Add for &HermitianPolynomial {
    type Output = HermitianPolynomial;
    fn add(self, rhs: Self) -> HermitianPolynomial {
        HermitianPolynomial::add(self, rhs)
    }
}

impl Sub for &HermitianPolynomial {
    type Output = HermitianPolynomial;
    fn sub(self, rhs: Self) -> HermitianPolynomial {
        HermitianPolynomial::sub(self, rhs)
    }
}

impl Mul for &HermitianPolynomial {
    type Output = HermitianPolynomial;
    fn mul(self, rhs: Self) -> HermitianPolynomial {
        HermitianPolynomial::mul(self, rhs)
    }
}

impl Neg for &HermitianPolynomial {
    type Output = HermitianPolynomial;
    fn neg(self) -> HermitianPolynomial {
        self.negate()
    }
}

/// Exact determinant of a square polynomial matrix by cofactor expansion
/// along the first row.
pub fn poly_det(m: &[Vec<HermitianPolynomial>]) -> HermitianPolynomial {
    let k = m.len();
    assert!(k > 0 && m.iter().all(|row| row.len() == k));
    let n = m[0][0].dim();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = HermitianPolynomial::zero(n);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<HermitianPolynomial>> = (1..k)
            .map(|i| {
                (0..k)
                    .filter(|jj| *jj != j)
                    .map(|jj| m[i][jj].clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&poly_det(&sub));
        if j % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Ring arithmetic entry point with explicit error reporting.
pub fn arith(
    a: &HermitianPolynomial,
    b: &HermitianPolynomial,
    op: ArithOp,
) -> Result<HermitianPolynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::GaussianRational as G;
    use num_traits::One;

    fn z(n: usize, j: usize) -> HermitianPolynomial {
        HermitianPolynomial::var_z(n, j).unwrap()
    }

    fn zb(n: usize, j: usize) -> HermitianPolynomial {
        HermitianPolynomial::var_zbar(n, j).unwrap()
    }

    #[test]
    fn add_cancels_conjugate_pair() {
        // (z1 + conj(z1)) + (z1 - conj(z1)) = 2 z1
        let a = z(2, 0).add(&zb(2, 0));
        let b = z(2, 0).sub(&zb(2, 0));
        let s = a.add(&b);
        assert_eq!(s, z(2, 0).scale(&G::from_int(2)));
    }

    #[test]
    fn product_of_norms() {
        let p = z(2, 0).mul(&zb(2, 0));
        let q = z(2, 1).mul(&zb(2, 1));
        let pq = p.mul(&q);
        assert_eq!(pq.num_terms(), 1);
        let m = pq.leading_monomial().unwrap();
        assert_eq!(m.exps, vec![1, 1, 1, 1]);
    }

    #[test]
    fn squared_norm_structure() {
        // (z1 conj(z1))^2 = z1^2 conj(z1)^2
        let p = z(2, 0).mul(&zb(2, 0));
        let sq = p.mul(&p);
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(sq.leading_monomial().unwrap().exps, vec![2, 0, 2, 0]);
    }

    #[test]
    fn wirtinger_basics() {
        let p = z(2, 0).mul(&zb(2, 0));
        let d = p.wirtinger(0, WirtingerKind::Antiholomorphic).unwrap();
        assert_eq!(d, z(2, 0));
        // d/dz1 d/dconj(z1) of (1/4) z1^2 conj(z1)^2 = z1 conj(z1)
        let q = z(2, 0)
            .pow(2)
            .mul(&zb(2, 0).pow(2))
            .scale(&G::from_ratio(1, 4));
        let dq = q
            .wirtinger(0, WirtingerKind::Holomorphic)
            .unwrap()
            .wirtinger(0, WirtingerKind::Antiholomorphic)
            .unwrap();
        assert_eq!(dq, z(2, 0).mul(&zb(2, 0)));
        // derivative in an absent variable vanishes
        let d2 = p.wirtinger(1, WirtingerKind::Holomorphic).unwrap();
        assert!(d2.is_zero());
    }

    #[test]
    fn wirtinger_out_of_range() {
        let p = z(2, 0);
        assert!(p.wirtinger(2, WirtingerKind::Holomorphic).is_err());
    }

    #[test]
    fn conjugation() {
        let p = z(1, 0).scale(&G::i());
        let c = p.conjugate();
        assert_eq!(c, zb(1, 0).scale(&-G::i()));
        let norm = z(1, 0).mul(&zb(1, 0));
        assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn reality() {
        let x3 = HermitianPolynomial::var_x(3, 2).unwrap();
        assert!(x3.is_real());
        assert!(!z(3, 0).is_real());
    }

    #[test]
    fn evaluation() {
        let p = z(2, 0).mul(&zb(2, 0));
        let pt = [Complex64::new(1.0, 1.0), Complex64::new(0.0, 0.0)];
        let v = p.evaluate_f64(&pt);
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-15);

        let exact_pt = [
            GaussianRational::new(BigRational::one(), BigRational::one()),
            GaussianRational::zero(),
        ];
        let ve = p.evaluate_exact(&exact_pt).unwrap();
        assert_eq!(ve, G::from_int(2));

        // value at 0 is the constant term
        let q = p.add(&HermitianPolynomial::from_int(2, -5));
        let zero_pt = [GaussianRational::zero(), GaussianRational::zero()];
        assert_eq!(q.evaluate_exact(&zero_pt).unwrap(), G::from_int(-5));
    }

    #[test]
    fn trace_polynomial_at_one() {
        // 2 z2 conj(z2) at z2 = 1 evaluates to 2
        let tr = z(3, 1).mul(&zb(3, 1)).scale(&G::from_int(2));
        let point = [
            GaussianRational::zero(),
            GaussianRational::from_int(1),
            GaussianRational::zero(),
        ];
        assert_eq!(tr.evaluate_exact(&point).unwrap(), G::from_int(2));
    }

    #[test]
    fn grevlex_order() {
        // z1 < z2 < conj(z1) < conj(z2) for degree-1 monomials
        let n = 2;
        let mz1 = z(n, 0).leading_monomial().unwrap().clone();
        let mz2 = z(n, 1).leading_monomial().unwrap().clone();
        let mzb1 = zb(n, 0).leading_monomial().unwrap().clone();
        assert!(mz1 < mz2);
        assert!(mz2 < mzb1);
        // degree dominates
        let sq = z(n, 0).pow(2).leading_monomial().unwrap().clone();
        assert!(mzb1 < sq);
    }

    #[test]
    fn exact_division() {
        let p = z(2, 0).pow(2).mul(&zb(2, 1)).scale(&G::from_ratio(3, 2));
        let d = z(2, 0);
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q.mul(&d), p);
        assert!(z(2, 0).exact_div(&z(2, 1)).is_none());
        // division by a constant always succeeds
        let c = HermitianPolynomial::constant(2, G::from_ratio(-1, 2));
        let q2 = p.exact_div(&c).unwrap();
        assert_eq!(q2, p.scale(&G::from_int(-2)));
    }

    #[test]
    fn display_roundtrip_format() {
        let p = z(2, 0)
            .mul(&zb(2, 0))
            .sub(&HermitianPolynomial::one(2))
            .add(&z(2, 1).scale(&G::from_ratio(-1, 2)));
        let s = p.to_string();
        assert!(s.contains("z1*conj(z1)"));
        assert!(s.contains("1/2*z2"));
    }
}
