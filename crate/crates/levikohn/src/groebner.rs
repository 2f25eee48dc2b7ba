//! Reduced Groebner bases over the Gaussian rationals by Buchberger's
//! algorithm, with the `z` and `conj(z)` variables treated as independent
//! indeterminates, plus ideal and radical membership (Rabinowitsch trick).
//!
//! All computations are budgeted: every single-step reduction and every
//! processed S-pair spends one unit, and exceeding the limit aborts with a
//! budget error rather than running away.

use crate::error::{Error, Result};
use crate::poly::{HermitianPolynomial, Monomial};
use crate::rational::GaussianRational;
use std::collections::BTreeSet;

pub const DEFAULT_GROEBNER_LIMIT: usize = 100_000;

/// Work counter shared by one Groebner computation.
#[derive(Debug, Clone)]
pub struct Budget {
    pub limit: usize,
    pub used: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Budget { limit, used: 0 }
    }

    fn spend(&mut self, amount: usize) -> Result<()> {
        self.used += amount;
        if self.used > self.limit {
            Err(Error::GroebnerBudget {
                reductions: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// A reduced Groebner basis: monic elements, sorted by leading monomial, no
/// element's term is divisible by another element's leading monomial. Unique
/// for a fixed monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub basis: Vec<HermitianPolynomial>,
    /// Monomial order tag; the only implemented order.
    pub order: &'static str,
}

impl GroebnerBasis {
    pub fn contains_constant(&self) -> bool {
        self.basis.iter().any(|p| !p.is_zero() && p.is_constant())
    }
}

/// Full normal form of `f` with respect to `basis` (leading terms and tails
/// both reduced). `basis` elements must be nonzero.
pub fn normal_form(
    f: &HermitianPolynomial,
    basis: &[HermitianPolynomial],
    budget: &mut Budget,
) -> Result<HermitianPolynomial> {
    let n = f.dim();
    let mut p = f.clone();
    let mut nf = HermitianPolynomial::zero(n);
    'outer: while !p.is_zero() {
        let lm = p.leading_monomial().unwrap().clone();
        let lc = p.leading_coefficient().unwrap().clone();
        for g in basis {
            let glm = g.leading_monomial().unwrap();
            if glm.divides(&lm) {
                budget.spend(1)?;
                let m = glm.div_into(&lm);
                let c = &lc / g.leading_coefficient().unwrap();
                p = p.sub(&g.term_mul(&m, &c));
                continue 'outer;
            }
        }
        // irreducible leading term moves to the normal form
        let mut single = HermitianPolynomial::zero(n);
        single.add_term(lm.clone(), lc.clone());
        nf = nf.add(&single);
        p = p.sub(&single);
    }
    Ok(nf)
}

fn s_polynomial(f: &HermitianPolynomial, g: &HermitianPolynomial) -> HermitianPolynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let mf = lf.div_into(&l);
    let mg = lg.div_into(&l);
    let cf = f.leading_coefficient().unwrap().inv();
    let cg = g.leading_coefficient().unwrap().inv();
    f.term_mul(&mf, &cf).sub(&g.term_mul(&mg, &cg))
}

/// Reduced Groebner basis of the ideal generated by `gens` under the fixed
/// graded reverse lexicographic order. Deterministic: pair selection is by
/// minimal lcm, ties by index.
pub fn groebner_basis(
    gens: &[HermitianPolynomial],
    budget: &mut Budget,
) -> Result<GroebnerBasis> {
    if let Some(first) = gens.first() {
        for g in gens {
            if g.dim() != first.dim() {
                return Err(Error::DimensionMismatch(g.dim(), first.dim()));
            }
        }
    }
    let mut basis: Vec<HermitianPolynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.monic();
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    // pair queue keyed by (lcm, i, j)
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let l = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            pairs.insert((l, i, j));
        }
    }

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (lcm, i, j) = entry;
        budget.spend(1)?;
        // Buchberger's coprimality criterion
        let prod = basis[i]
            .leading_monomial()
            .unwrap()
            .mul(basis[j].leading_monomial().unwrap());
        if prod == lcm {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let nf = normal_form(&s, &basis, budget)?;
        if !nf.is_zero() {
            let nf = nf.monic();
            let k = basis.len();
            for (idx, b) in basis.iter().enumerate() {
                let l = b
                    .leading_monomial()
                    .unwrap()
                    .lcm(nf.leading_monomial().unwrap());
                pairs.insert((l, idx, k));
            }
            basis.push(nf);
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another element's (keeping the first of an equal-lm pair); the leading
    // term ideal is unchanged, so this is still a Groebner basis
    let mut minimal: Vec<HermitianPolynomial> = Vec::new();
    'keep: for i in 0..basis.len() {
        let lmi = basis[i].leading_monomial().unwrap();
        for (j, other) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lmj = other.leading_monomial().unwrap();
            if lmj.divides(lmi) && (lmj != lmi || j < i) {
                continue 'keep;
            }
        }
        minimal.push(basis[i].clone());
    }
    // tail-reduce: leading terms are now pairwise irreducible, so one pass
    // of full normal forms yields the unique reduced basis
    let mut reduced: Vec<HermitianPolynomial> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<HermitianPolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let nf = normal_form(&minimal[i], &others, budget)?;
        debug_assert!(!nf.is_zero());
        reduced.push(nf.monic());
    }
    basis = reduced;
    basis.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp(b.leading_monomial().unwrap())
            .then_with(|| a.canonical_cmp(b))
    });
    Ok(GroebnerBasis {
        basis,
        order: "grevlex",
    })
}

/// A polynomial together with its representation in terms of the original
/// generators: `poly = sum_k rep[k] * gens[k]`.
#[derive(Debug, Clone)]
pub struct Tracked {
    pub poly: HermitianPolynomial,
    pub rep: Vec<HermitianPolynomial>,
}

impl Tracked {
    fn sub_mul(&mut self, other: &Tracked, m: &Monomial, c: &GaussianRational) {
        self.poly = self.poly.sub(&other.poly.term_mul(m, c));
        for (r, o) in self.rep.iter_mut().zip(&other.rep) {
            *r = r.sub(&o.term_mul(m, c));
        }
    }

    fn scale(&mut self, c: &GaussianRational) {
        self.poly = self.poly.scale(c);
        for r in self.rep.iter_mut() {
            *r = r.scale(c);
        }
    }

    /// Re-verify the representation by exact arithmetic.
    pub fn verify(&self, gens: &[HermitianPolynomial]) -> bool {
        if gens.len() != self.rep.len() {
            return false;
        }
        let n = self.poly.dim();
        let mut acc = HermitianPolynomial::zero(n);
        for (r, g) in self.rep.iter().zip(gens) {
            acc = acc.add(&r.mul(g));
        }
        acc == self.poly
    }
}

fn tracked_normal_form(f: &Tracked, basis: &[Tracked], budget: &mut Budget) -> Result<Tracked> {
    let n = f.poly.dim();
    let mut p = f.clone();
    let mut nf = Tracked {
        poly: HermitianPolynomial::zero(n),
        rep: vec![HermitianPolynomial::zero(n); f.rep.len()],
    };
    'outer: while !p.poly.is_zero() {
        let lm = p.poly.leading_monomial().unwrap().clone();
        let lc = p.poly.leading_coefficient().unwrap().clone();
        for g in basis {
            let glm = g.poly.leading_monomial().unwrap();
            if glm.divides(&lm) {
                budget.spend(1)?;
                let m = glm.div_into(&lm);
                let c = &lc / g.poly.leading_coefficient().unwrap();
                p.sub_mul(g, &m, &c);
                continue 'outer;
            }
        }
        let mut single = HermitianPolynomial::zero(n);
        single.add_term(lm.clone(), lc.clone());
        nf.poly = nf.poly.add(&single);
        p.poly = p.poly.sub(&single);
    }
    // the skipped irreducible terms belong to the normal form; the
    // representation of nf is rep(f) - rep(consumed part) = p.rep residue
    for (r, q) in nf.rep.iter_mut().zip(&p.rep) {
        *r = q.clone();
    }
    Ok(nf)
}

/// Groebner basis with cofactor tracking. Slower than `groebner_basis`; used
/// when a replayable membership witness is needed.
pub fn groebner_basis_tracked(
    gens: &[HermitianPolynomial],
    budget: &mut Budget,
) -> Result<Vec<Tracked>> {
    let k = gens.len();
    let n = gens.first().map(|g| g.dim()).unwrap_or(0);
    let mut basis: Vec<Tracked> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut rep = vec![HermitianPolynomial::zero(n); k];
        rep[idx] = HermitianPolynomial::one(n);
        let mut t = Tracked {
            poly: g.clone(),
            rep,
        };
        let lc_inv = g.leading_coefficient().unwrap().inv();
        t.scale(&lc_inv);
        basis.push(t);
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let l = basis[i]
                .poly
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].poly.leading_monomial().unwrap());
            pairs.insert((l, i, j));
        }
    }
    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (lcm, i, j) = entry;
        budget.spend(1)?;
        let prod = basis[i]
            .poly
            .leading_monomial()
            .unwrap()
            .mul(basis[j].poly.leading_monomial().unwrap());
        if prod == lcm {
            continue;
        }
        // tracked S-polynomial
        let (mf, mg) = {
            let lf = basis[i].poly.leading_monomial().unwrap();
            let lg = basis[j].poly.leading_monomial().unwrap();
            let l = lf.lcm(lg);
            (lf.div_into(&l), lg.div_into(&l))
        };
        let one = GaussianRational::one();
        let mut s = Tracked {
            poly: basis[i].poly.term_mul(&mf, &one),
            rep: basis[i]
                .rep
                .iter()
                .map(|r| r.term_mul(&mf, &one))
                .collect(),
        };
        s.sub_mul(&basis[j], &mg, &one);
        let nf = tracked_normal_form(&s, &basis, budget)?;
        if !nf.poly.is_zero() {
            let mut nf = nf;
            let lc_inv = nf.poly.leading_coefficient().unwrap().inv();
            nf.scale(&lc_inv);
            let knew = basis.len();
            for (idx, b) in basis.iter().enumerate() {
                let l = b
                    .poly
                    .leading_monomial()
                    .unwrap()
                    .lcm(nf.poly.leading_monomial().unwrap());
                pairs.insert((l, idx, knew));
            }
            basis.push(nf);
        }
    }
    Ok(basis)
}

/// Witness that `1` lies in the ideal generated by `gens`: exact cofactors
/// with `sum_k cofactors[k] * gens[k] = 1`. `None` when `1` is not found.
pub fn one_witness(
    gens: &[HermitianPolynomial],
    budget: &mut Budget,
) -> Result<Option<Vec<HermitianPolynomial>>> {
    let tracked = groebner_basis_tracked(gens, budget)?;
    for t in &tracked {
        if !t.poly.is_zero() && t.poly.is_constant() {
            // scale to make the combination exactly 1
            let c = t.poly.constant_term().inv();
            let mut w = t.clone();
            w.scale(&c);
            debug_assert!(w.verify(gens));
            return Ok(Some(w.rep));
        }
    }
    Ok(None)
}

/// Ordinary ideal membership: the normal form against a reduced basis
/// vanishes.
pub fn ideal_membership(
    f: &HermitianPolynomial,
    gb: &GroebnerBasis,
    budget: &mut Budget,
) -> Result<bool> {
    Ok(normal_form(f, &gb.basis, budget)?.is_zero())
}

/// Radical membership by the Rabinowitsch trick: `f` lies in the radical of
/// `<gens>` iff `1` lies in the ideal `<gens, 1 - t*f>` where `t` is one
/// fresh variable. When a precomputed basis of `<gens>` is supplied, ordinary
/// membership is tried first as a fast path.
pub fn radical_membership(
    f: &HermitianPolynomial,
    gens: &[HermitianPolynomial],
    precomputed: Option<&GroebnerBasis>,
    limit: usize,
) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let mut budget = Budget::new(limit);
    if let Some(gb) = precomputed {
        if ideal_membership(f, gb, &mut budget)? {
            return Ok(true);
        }
    }
    let n = f.dim();
    let m = n + 1;
    let mut extended: Vec<HermitianPolynomial> =
        gens.iter().map(|g| g.extend_dim(m)).collect();
    let t = HermitianPolynomial::var_z(m, m - 1).expect("fresh variable");
    let one_minus_tf = HermitianPolynomial::one(m).sub(&t.mul(&f.extend_dim(m)));
    extended.push(one_minus_tf);
    let gb = groebner_basis(&extended, &mut budget)?;
    Ok(gb.contains_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HermitianPolynomial as P;

    fn z(n: usize, j: usize) -> P {
        P::var_z(n, j).unwrap()
    }

    fn zb(n: usize, j: usize) -> P {
        P::var_zbar(n, j).unwrap()
    }

    fn gb(gens: &[P]) -> GroebnerBasis {
        groebner_basis(gens, &mut Budget::new(DEFAULT_GROEBNER_LIMIT)).unwrap()
    }

    #[test]
    fn already_reduced_pair() {
        let b = gb(&[z(1, 0), zb(1, 0)]);
        assert_eq!(b.basis, vec![z(1, 0), zb(1, 0)]);
    }

    #[test]
    fn captures_one_via_s_polynomial() {
        // z^2 and z*conj(z) - 1 generate the unit ideal:
        // conj(z)*z^2 - z*(z*conj(z) - 1) = z, then z*conj(z) - 1 and z give 1
        let gens = [z(1, 0).pow(2), z(1, 0).mul(&zb(1, 0)).sub(&P::one(1))];
        let b = gb(&gens);
        assert_eq!(b.basis, vec![P::one(1)]);
        assert!(b.contains_constant());
    }

    #[test]
    fn zero_ideal() {
        let b = gb(&[]);
        assert!(b.basis.is_empty());
        assert!(!b.contains_constant());
    }

    #[test]
    fn radical_membership_examples() {
        // z1 in rad <z1^2>
        assert!(radical_membership(&z(1, 0), &[z(1, 0).pow(2)], None, 100_000).unwrap());
        // 1 in rad <z conj(z) - 1, z^2>
        let gens = [z(1, 0).mul(&zb(1, 0)).sub(&P::one(1)), z(1, 0).pow(2)];
        assert!(radical_membership(&P::one(1), &gens, None, 100_000).unwrap());
        // z2 not in rad <z1>
        assert!(!radical_membership(&z(2, 1), &[z(2, 0)], None, 100_000).unwrap());
    }

    #[test]
    fn radical_membership_over_gaussian_coefficients() {
        use crate::rational::GaussianRational;
        // x^2 + 1 factors as (x - i)(x + i) over the Gaussian rationals:
        // x - i vanishes only at +i, so it is not in the radical, while the
        // product of both factors is
        let x = z(1, 0);
        let gen = x.pow(2).add(&P::one(1));
        let x_minus_i = x.sub(&P::constant(1, GaussianRational::i()));
        let x_plus_i = x.add(&P::constant(1, GaussianRational::i()));
        assert!(!radical_membership(&x_minus_i, &[gen.clone()], None, 100_000).unwrap());
        assert!(
            radical_membership(&x_minus_i.mul(&x_plus_i), &[gen.clone()], None, 100_000).unwrap()
        );
        // nilpotent-style membership: x + conj(x) in rad <(x + conj(x))^3>
        let s = z(1, 0).add(&zb(1, 0));
        assert!(radical_membership(&s, &[s.pow(3)], None, 100_000).unwrap());
        assert!(!radical_membership(&z(1, 0).sub(&zb(1, 0)), &[s.pow(3)], None, 100_000).unwrap());
    }

    #[test]
    fn reduced_basis_is_input_order_independent() {
        let n = 2;
        let g1 = z(n, 0).pow(2).add(&z(n, 1));
        let g2 = z(n, 0).mul(&z(n, 1)).sub(&P::one(n));
        let g3 = z(n, 1).pow(3).sub(&z(n, 0));
        let a = gb(&[g1.clone(), g2.clone(), g3.clone()]);
        let b = gb(&[g3, g1, g2]);
        assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn budget_error_fires() {
        // leading monomials share z1, so the pair is actually processed and
        // the reductions exceed a one-unit budget
        let gens = [z(1, 0).pow(2), z(1, 0).mul(&zb(1, 0)).sub(&P::one(1))];
        let res = groebner_basis(&gens, &mut Budget::new(1));
        assert!(matches!(res, Err(Error::GroebnerBudget { .. })));
    }

    #[test]
    fn tracked_witness_recombines() {
        let gens = [z(1, 0).pow(2), z(1, 0).mul(&zb(1, 0)).sub(&P::one(1))];
        let w = one_witness(&gens, &mut Budget::new(DEFAULT_GROEBNER_LIMIT))
            .unwrap()
            .expect("unit ideal");
        let mut acc = P::zero(1);
        for (c, g) in w.iter().zip(&gens) {
            acc = acc.add(&c.mul(g));
        }
        assert_eq!(acc, P::one(1));
    }

    #[test]
    fn tracked_basis_reps_verify() {
        let n = 2;
        let gens = [
            z(n, 0).pow(2).sub(&z(n, 1)),
            z(n, 0).mul(&z(n, 1)).sub(&P::one(n)),
        ];
        let tracked =
            groebner_basis_tracked(&gens, &mut Budget::new(DEFAULT_GROEBNER_LIMIT)).unwrap();
        assert!(!tracked.is_empty());
        for t in &tracked {
            assert!(t.verify(&gens));
        }
    }
}
