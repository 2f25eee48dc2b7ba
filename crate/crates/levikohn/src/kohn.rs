//! The multiplier-ideal chain on q-forms: form-module matrices seeded by the
//! gradient and Hessian rows of the defining function, determinantal minors
//! of size `n - q + 1`, radical-closed ideal growth, and the
//! terminate-or-stabilize dichotomy.

use crate::error::{Error, Result};
use crate::groebner::{
    groebner_basis, ideal_membership, one_witness, radical_membership, Budget, GroebnerBasis,
};
use crate::levi::DefiningFunction;
use crate::poly::{poly_det, HermitianPolynomial, Monomial, WirtingerKind};
use crate::rational::GaussianRational;
use num_rational::BigRational;
use num_traits::Zero;

pub const DEFAULT_DEGREE_CAP: u32 = 40;
pub const DEFAULT_MAX_STEPS: usize = 8;

/// Where a module row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowProvenance {
    GradientOfR,
    HessianRow,
    GradientOfMultiplier,
}

impl RowProvenance {
    pub fn label(&self) -> &'static str {
        match self {
            RowProvenance::GradientOfR => "gradient-of-r",
            RowProvenance::HessianRow => "hessian-row",
            RowProvenance::GradientOfMultiplier => "gradient-of-multiplier",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FormModuleRow {
    pub coefficients: Vec<HermitianPolynomial>,
    pub provenance: RowProvenance,
}

impl FormModuleRow {
    fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}

/// Rows of (1,0)-forms in the coordinate `dz` basis.
#[derive(Debug, Clone)]
pub struct FormModuleMatrix {
    pub n: usize,
    pub rows: Vec<FormModuleRow>,
}

impl FormModuleMatrix {
    fn contains_row(&self, coeffs: &[HermitianPolynomial]) -> bool {
        self.rows.iter().any(|r| r.coefficients == coeffs)
    }
}

/// One recorded minor: which rows and columns, and the exact determinant.
#[derive(Debug, Clone)]
pub struct MinorRecord {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: HermitianPolynomial,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All `k x k` minors over row subsets meeting `[first_new_row, ..)` and all
/// column subsets, in lexicographic order of the index sets. Zero minors are
/// dropped.
pub fn minors_detailed(
    m: &FormModuleMatrix,
    k: usize,
    first_new_row: usize,
) -> Vec<MinorRecord> {
    let mut out = Vec::new();
    if k == 0 || k > m.n || k > m.rows.len() {
        return out;
    }
    let col_sets = k_subsets(m.n, k);
    for rows in k_subsets(m.rows.len(), k) {
        if *rows.last().unwrap() < first_new_row {
            continue;
        }
        for cols in &col_sets {
            let sub: Vec<Vec<HermitianPolynomial>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| m.rows[i].coefficients[j].clone())
                        .collect()
                })
                .collect();
            let det = poly_det(&sub);
            if !det.is_zero() {
                out.push(MinorRecord {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    value: det,
                });
            }
        }
    }
    out
}

/// The nonzero `k x k` minors of the module matrix.
pub fn minors(m: &FormModuleMatrix, k: usize) -> Vec<HermitianPolynomial> {
    minors_detailed(m, k, 0)
        .into_iter()
        .map(|r| r.value)
        .collect()
}

/// A closure event recorded while an ideal's generator set is normalized.
#[derive(Debug, Clone)]
pub enum ClosureEvent {
    ConjugateAdded {
        source: HermitianPolynomial,
        added: HermitianPolynomial,
    },
    /// `source` (or its negative) equals `sum_k coeff_k * part_k * conj(part_k)`
    /// with positive rational coefficients; each part is adjoined.
    SosSplit {
        source: HermitianPolynomial,
        negated: bool,
        parts: Vec<(BigRational, HermitianPolynomial)>,
    },
    DegreeCapDropped {
        dropped: HermitianPolynomial,
        degree: u32,
    },
}

/// Attempt an exact decomposition `g = sum_k d_k f_k conj(f_k)` with
/// `d_k > 0` rational, by an LDL* factorization of the Hermitian coefficient
/// matrix over the holomorphic/antiholomorphic monomial split. The split of a
/// monomial `z^a conj(z)^b` into `(a, b)` is unique, which keeps the
/// detection purely syntactic.
fn hermitian_sos_split(
    g: &HermitianPolynomial,
) -> Option<(bool, Vec<(BigRational, HermitianPolynomial)>)> {
    if g.is_zero() || !g.is_real() {
        return None;
    }
    let n = g.dim();
    // support of holomorphic and antiholomorphic exponent halves
    let mut support: Vec<Vec<u32>> = Vec::new();
    for (m, _) in g.terms() {
        let hol: Vec<u32> = (0..n).map(|j| m.z_exp(j)).collect();
        let anti: Vec<u32> = (0..n).map(|j| m.zbar_exp(j)).collect();
        for part in [hol, anti] {
            if !support.contains(&part) {
                support.push(part);
            }
        }
    }
    support.sort();
    let s = support.len();
    if s > 32 {
        return None;
    }
    let index_of = |v: &[u32]| support.iter().position(|w| w == v).unwrap();
    let build = |sign_flip: bool| -> Option<Vec<(BigRational, HermitianPolynomial)>> {
        // h[a][b] = coefficient of z^{support[a]} conj(z)^{support[b]}
        let mut h = vec![vec![GaussianRational::zero(); s]; s];
        for (m, c) in g.terms() {
            let hol: Vec<u32> = (0..n).map(|j| m.z_exp(j)).collect();
            let anti: Vec<u32> = (0..n).map(|j| m.zbar_exp(j)).collect();
            let c = if sign_flip { -c.clone() } else { c.clone() };
            h[index_of(&hol)][index_of(&anti)] = c;
        }
        // exact LDL* with the PSD zero-column rule
        let mut parts: Vec<(BigRational, Vec<GaussianRational>)> = Vec::new();
        for k in 0..s {
            let d = h[k][k].clone();
            if !d.is_real() {
                return None;
            }
            if d.re < BigRational::zero() {
                return None;
            }
            if d.re.is_zero() {
                for j in (k + 1)..s {
                    if !h[k][j].is_zero() || !h[j][k].is_zero() {
                        return None;
                    }
                }
                continue;
            }
            let mut col = vec![GaussianRational::zero(); s];
            for (j, cj) in col.iter_mut().enumerate().take(s).skip(k) {
                *cj = &h[j][k] / &d;
            }
            for j in k..s {
                for l in k..s {
                    let upd = &(&col[j] * &col[l].conj()) * &d;
                    h[j][l] = &h[j][l] - &upd;
                }
            }
            parts.push((d.re.clone(), col));
        }
        // rebuild polynomials and re-verify the identity exactly
        let mut out = Vec::new();
        let mut acc = HermitianPolynomial::zero(n);
        for (d, col) in parts {
            let mut f = HermitianPolynomial::zero(n);
            for (a, coeff) in col.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut exps = vec![0u32; 2 * n];
                exps[..n].copy_from_slice(&support[a]);
                f.add_term(Monomial { exps }, coeff.clone());
            }
            if f.is_zero() {
                continue;
            }
            let dc = GaussianRational::new(d.clone(), BigRational::zero());
            acc = acc.add(&f.mul(&f.conjugate()).scale(&dc));
            out.push((d, f));
        }
        let target = if sign_flip { g.negate() } else { g.clone() };
        if acc == target {
            Some(out)
        } else {
            None
        }
    };
    if let Some(parts) = build(false) {
        if !parts.is_empty() {
            return Some((false, parts));
        }
    }
    if let Some(parts) = build(true) {
        if !parts.is_empty() {
            return Some((true, parts));
        }
    }
    None
}

/// Conjugation-closed, radical-closed (by the implemented rules) generator
/// set with a reduced Groebner basis.
#[derive(Debug, Clone)]
pub struct MultiplierIdeal {
    pub n: usize,
    pub generators: Vec<HermitianPolynomial>,
    pub groebner: GroebnerBasis,
}

impl MultiplierIdeal {
    /// Normalize, conjugation-close, apply the sum-of-squares split rule to a
    /// fixpoint, enforce the degree cap, and compute the Groebner basis.
    ///
    /// `carried` generators are kept unconditionally; `candidates` that
    /// already lie in the ideal spanned by `prune_against` are dropped, which
    /// leaves the generated ideal unchanged but keeps generator lists from
    /// accumulating redundant minors across steps.
    pub fn close(
        n: usize,
        carried: Vec<HermitianPolynomial>,
        candidates: Vec<HermitianPolynomial>,
        prune_against: Option<&GroebnerBasis>,
        degree_cap: u32,
        limit: usize,
        events: &mut Vec<ClosureEvent>,
    ) -> Result<Self> {
        let mut raw = carried;
        match prune_against {
            None => raw.extend(candidates),
            Some(gb) => {
                let mut budget = Budget::new(limit);
                for c in candidates {
                    if !ideal_membership(&c, gb, &mut budget)? {
                        raw.push(c);
                    }
                }
            }
        }
        let mut gens: Vec<HermitianPolynomial> = Vec::new();
        let mut queue: Vec<HermitianPolynomial> = raw;
        let mut sos_done: Vec<HermitianPolynomial> = Vec::new();
        while let Some(g) = queue.pop() {
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if g.total_degree() > degree_cap {
                events.push(ClosureEvent::DegreeCapDropped {
                    degree: g.total_degree(),
                    dropped: g,
                });
                continue;
            }
            if gens.contains(&g) {
                continue;
            }
            gens.push(g.clone());
            let cg = g.conjugate().monic();
            if cg != g && !gens.contains(&cg) && !queue.contains(&cg) {
                events.push(ClosureEvent::ConjugateAdded {
                    source: g.clone(),
                    added: cg.clone(),
                });
                queue.push(cg);
            }
            if !sos_done.contains(&g) {
                sos_done.push(g.clone());
                if let Some((negated, parts)) = hermitian_sos_split(&g) {
                    let mut added_any = false;
                    for (_, f) in &parts {
                        let fm = f.monic();
                        if !gens.contains(&fm) && !queue.contains(&fm) {
                            queue.push(fm);
                            added_any = true;
                        }
                    }
                    // a split whose factors are all present adds nothing
                    if added_any {
                        events.push(ClosureEvent::SosSplit {
                            source: g,
                            negated,
                            parts,
                        });
                    }
                }
            }
        }
        gens.sort_by(|a, b| a.canonical_cmp(b));
        gens.dedup();
        let mut budget = Budget::new(limit);
        let groebner = groebner_basis(&gens, &mut budget)?;
        Ok(MultiplierIdeal {
            n,
            generators: gens,
            groebner,
        })
    }

    /// `1` lies in the ideal iff the reduced basis contains a constant.
    pub fn contains_one(&self) -> bool {
        self.groebner.contains_constant()
    }

    /// Radical membership with the cached basis as a fast path.
    pub fn radical_contains(&self, f: &HermitianPolynomial, limit: usize) -> Result<bool> {
        radical_membership(f, &self.generators, Some(&self.groebner), limit)
    }

    /// Real generators cutting out the same zero set: the real and imaginary
    /// parts of every generator. Normalization divides by a real scalar only
    /// (the leading coefficient of a real polynomial need not be real, so
    /// plain monic scaling could destroy reality).
    pub fn variety_generators(&self) -> Vec<HermitianPolynomial> {
        let half = GaussianRational::from_ratio(1, 2);
        let minus_half_i = &GaussianRational::from_ratio(-1, 2) * &GaussianRational::i();
        let real_normalize = |p: &HermitianPolynomial| -> HermitianPolynomial {
            match p.leading_coefficient() {
                None => p.clone(),
                Some(c) => {
                    let s = if !c.re.is_zero() {
                        c.re.clone()
                    } else {
                        c.im.clone()
                    };
                    let inv = GaussianRational::new(s, BigRational::zero()).inv();
                    p.scale(&inv)
                }
            }
        };
        let mut out: Vec<HermitianPolynomial> = Vec::new();
        for g in &self.generators {
            let cg = g.conjugate();
            let re = g.add(&cg).scale(&half);
            let im = g.sub(&cg).scale(&minus_half_i);
            for p in [re, im] {
                if p.is_zero() {
                    continue;
                }
                let p = real_normalize(&p);
                debug_assert!(p.is_real());
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainStatus {
    Running,
    Certified(usize),
    Stuck(usize),
    BudgetExhausted(usize),
}

impl ChainStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ChainStatus::Running => "running",
            ChainStatus::Certified(_) => "certified",
            ChainStatus::Stuck(_) => "stuck",
            ChainStatus::BudgetExhausted(_) => "budget-exhausted",
        }
    }

    pub fn step(&self) -> Option<usize> {
        match self {
            ChainStatus::Running => None,
            ChainStatus::Certified(h) | ChainStatus::Stuck(h) | ChainStatus::BudgetExhausted(h) => {
                Some(*h)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultiplierChainState {
    pub q: usize,
    pub h: usize,
    pub module: FormModuleMatrix,
    pub ideal: MultiplierIdeal,
    pub status: ChainStatus,
}

/// Everything needed to replay one chain step.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub h: usize,
    /// (row index, provenance, coefficients)
    pub rows_added: Vec<(usize, RowProvenance, Vec<HermitianPolynomial>)>,
    pub minors: Vec<MinorRecord>,
    pub closure_events: Vec<ClosureEvent>,
    pub generators_after: Vec<HermitianPolynomial>,
}

#[derive(Debug, Clone)]
pub struct ChainTrace {
    pub q: usize,
    pub minor_size: usize,
    pub steps: Vec<StepTrace>,
    /// Cofactors aligned with the final generator list certifying
    /// `sum_k cofactor_k * generator_k = 1`; present on certified chains.
    pub one_witness: Option<Vec<HermitianPolynomial>>,
    pub heuristic_fired: bool,
}

impl ChainTrace {
    fn update_heuristic_flag(&mut self) {
        self.heuristic_fired = self.steps.iter().any(|s| {
            s.closure_events
                .iter()
                .any(|e| matches!(e, ClosureEvent::SosSplit { .. }))
        });
    }
}

#[derive(Debug, Clone)]
pub struct ChainConfig {
    pub groebner_limit: usize,
    pub degree_cap: u32,
    /// Compute the cofactor witness on certification (slower, replayable).
    pub witness: bool,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            groebner_limit: crate::groebner::DEFAULT_GROEBNER_LIMIT,
            degree_cap: DEFAULT_DEGREE_CAP,
            witness: true,
        }
    }
}

/// A budget abort carrying the last fully-computed state.
#[derive(Debug)]
pub struct ChainAbort {
    pub partial: Option<MultiplierChainState>,
    pub partial_trace: Option<ChainTrace>,
    pub error: Error,
}

/// `M^q_1 = {dr, rows of the complex Hessian}`,
/// `I^q_1 = closure(r, minors of size n-q+1)`.
pub fn init_chain(
    d: &DefiningFunction,
    q: usize,
    cfg: &ChainConfig,
) -> Result<(MultiplierChainState, StepTrace)> {
    let n = d.dim();
    if q < 1 || q >= n {
        return Err(Error::InvalidQ { q, max: n - 1 });
    }
    let mut rows = Vec::new();
    rows.push(FormModuleRow {
        coefficients: d.gradient_form(),
        provenance: RowProvenance::GradientOfR,
    });
    for hrow in d.complex_hessian() {
        rows.push(FormModuleRow {
            coefficients: hrow,
            provenance: RowProvenance::HessianRow,
        });
    }
    let module = FormModuleMatrix { n, rows };
    let k = n - q + 1;
    let minor_records = minors_detailed(&module, k, 0);
    let carried = vec![d.r().clone()];
    let candidates: Vec<HermitianPolynomial> =
        minor_records.iter().map(|m| m.value.clone()).collect();
    let mut budget = Budget::new(cfg.groebner_limit);
    let seed_basis = groebner_basis(&carried, &mut budget)?;
    let mut events = Vec::new();
    let ideal = MultiplierIdeal::close(
        n,
        carried,
        candidates,
        Some(&seed_basis),
        cfg.degree_cap,
        cfg.groebner_limit,
        &mut events,
    )?;
    let status = if ideal.contains_one() {
        ChainStatus::Certified(1)
    } else {
        ChainStatus::Running
    };
    let trace = StepTrace {
        h: 1,
        rows_added: module
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.provenance, r.coefficients.clone()))
            .collect(),
        minors: minor_records,
        closure_events: events,
        generators_after: ideal.generators.clone(),
    };
    Ok((
        MultiplierChainState {
            q,
            h: 1,
            module,
            ideal,
            status,
        },
        trace,
    ))
}

/// Holomorphic gradient row of a multiplier.
fn gradient_row(g: &HermitianPolynomial, n: usize) -> Vec<HermitianPolynomial> {
    (0..n)
        .map(|j| g.wirtinger(j, WirtingerKind::Holomorphic).unwrap())
        .collect()
}

/// `M^q_h = {M^q_{h-1}, d I^q_{h-1}}`,
/// `I^q_h = closure(I^q_{h-1}, minors meeting the new rows)`.
///
/// Exact-duplicate and zero gradient rows are skipped: a repeated row only
/// reproduces minors already in the ideal, and a zero row only produces zero
/// minors, so the resulting ideal is unchanged.
pub fn step_chain(
    state: &MultiplierChainState,
    cfg: &ChainConfig,
) -> Result<(MultiplierChainState, StepTrace)> {
    if state.status != ChainStatus::Running {
        return Err(Error::ChainNotRunning(state.status.label().to_string()));
    }
    let n = state.module.n;
    let k = n - state.q + 1;
    let mut module = state.module.clone();
    let first_new_row = module.rows.len();
    let mut rows_added = Vec::new();
    for g in &state.ideal.generators {
        let row = FormModuleRow {
            coefficients: gradient_row(g, n),
            provenance: RowProvenance::GradientOfMultiplier,
        };
        if row.is_zero() || module.contains_row(&row.coefficients) {
            continue;
        }
        rows_added.push((module.rows.len(), row.provenance, row.coefficients.clone()));
        module.rows.push(row);
    }
    let minor_records = minors_detailed(&module, k, first_new_row);
    let carried = state.ideal.generators.clone();
    let candidates: Vec<HermitianPolynomial> =
        minor_records.iter().map(|m| m.value.clone()).collect();
    let mut events = Vec::new();
    let ideal = MultiplierIdeal::close(
        n,
        carried,
        candidates,
        Some(&state.ideal.groebner),
        cfg.degree_cap,
        cfg.groebner_limit,
        &mut events,
    )?;
    let h = state.h + 1;

    // Stabilization: candidate minors already inside the previous ideal are
    // pruned and the generator lists are canonical, so list equality is
    // exactly ordinary-ideal stabilization (and implies the mutual radical
    // containment of the generator sets). Radical-only containment is NOT
    // used as a stop: with the partial radical rules it fires on chains that
    // still certify one step later through a fresh gradient row.
    let status = if ideal.contains_one() {
        ChainStatus::Certified(h)
    } else if ideal.generators == state.ideal.generators {
        ChainStatus::Stuck(h)
    } else {
        ChainStatus::Running
    };
    let trace = StepTrace {
        h,
        rows_added,
        minors: minor_records,
        closure_events: events,
        generators_after: ideal.generators.clone(),
    };
    Ok((
        MultiplierChainState {
            q: state.q,
            h,
            module,
            ideal,
            status,
        },
        trace,
    ))
}

#[derive(Debug)]
pub struct ChainRun {
    pub state: MultiplierChainState,
    pub trace: ChainTrace,
}

/// Run the chain to certification, stabilization, or the step budget.
pub fn run_chain(
    d: &DefiningFunction,
    q: usize,
    max_h: usize,
    cfg: &ChainConfig,
) -> std::result::Result<ChainRun, ChainAbort> {
    let wrap = |error: Error| ChainAbort {
        partial: None,
        partial_trace: None,
        error,
    };
    if max_h < 1 {
        return Err(wrap(Error::Problem("max_h must be at least 1".into())));
    }
    let n = d.dim();
    let (mut state, first) = init_chain(d, q, cfg).map_err(wrap)?;
    let mut trace = ChainTrace {
        q,
        minor_size: n - q + 1,
        steps: vec![first],
        one_witness: None,
        heuristic_fired: false,
    };
    while state.status == ChainStatus::Running {
        if state.h >= max_h {
            state.status = ChainStatus::BudgetExhausted(state.h);
            break;
        }
        match step_chain(&state, cfg) {
            Ok((next, step_trace)) => {
                trace.steps.push(step_trace);
                state = next;
            }
            Err(error) => {
                trace.update_heuristic_flag();
                return Err(ChainAbort {
                    partial: Some(state),
                    partial_trace: Some(trace),
                    error,
                });
            }
        }
    }
    if matches!(state.status, ChainStatus::Certified(_)) && cfg.witness {
        let mut budget = Budget::new(cfg.groebner_limit);
        match one_witness(&state.ideal.generators, &mut budget) {
            Ok(w) => trace.one_witness = w,
            Err(error) => {
                trace.update_heuristic_flag();
                return Err(ChainAbort {
                    partial: Some(state),
                    partial_trace: Some(trace),
                    error,
                });
            }
        }
    }
    trace.update_heuristic_flag();
    Ok(ChainRun { state, trace })
}

/// Re-verify every replayable claim in a chain trace against a fresh
/// computation: minors recompute from the recorded rows, closure identities
/// recombine exactly, and the certification witness multiplies out to 1.
pub fn verify_trace(run: &ChainRun) -> Result<()> {
    let state = &run.state;
    let n = state.module.n;
    for step in &run.trace.steps {
        for minor in &step.minors {
            let sub: Vec<Vec<HermitianPolynomial>> = minor
                .rows
                .iter()
                .map(|&i| {
                    minor
                        .cols
                        .iter()
                        .map(|&j| state.module.rows[i].coefficients[j].clone())
                        .collect()
                })
                .collect();
            if poly_det(&sub) != minor.value {
                return Err(Error::Internal(format!(
                    "minor rows {:?} cols {:?} fails to replay",
                    minor.rows, minor.cols
                )));
            }
        }
        for ev in &step.closure_events {
            match ev {
                ClosureEvent::SosSplit {
                    source,
                    negated,
                    parts,
                } => {
                    let mut acc = HermitianPolynomial::zero(n);
                    for (d, f) in parts {
                        let dc = GaussianRational::new(d.clone(), BigRational::zero());
                        acc = acc.add(&f.mul(&f.conjugate()).scale(&dc));
                    }
                    let target = if *negated {
                        source.negate()
                    } else {
                        source.clone()
                    };
                    if acc != target {
                        return Err(Error::Internal(
                            "sum-of-squares certificate fails to replay".into(),
                        ));
                    }
                }
                ClosureEvent::ConjugateAdded { source, added } => {
                    if source.conjugate().monic() != *added {
                        return Err(Error::Internal(
                            "conjugation closure fails to replay".into(),
                        ));
                    }
                }
                ClosureEvent::DegreeCapDropped { .. } => {}
            }
        }
    }
    if let Some(w) = &run.trace.one_witness {
        if w.len() != state.ideal.generators.len() {
            return Err(Error::Internal("witness length mismatch".into()));
        }
        let mut acc = HermitianPolynomial::zero(n);
        for (c, g) in w.iter().zip(&state.ideal.generators) {
            acc = acc.add(&c.mul(g));
        }
        if acc != HermitianPolynomial::one(n) {
            return Err(Error::Internal(
                "certification witness fails to multiply out to 1".into(),
            ));
        }
    } else if matches!(state.status, ChainStatus::Certified(_)) {
        return Err(Error::Internal("certified chain carries no witness".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::HermitianPolynomial as P;

    fn defun(src: &str, n: usize) -> DefiningFunction {
        DefiningFunction::new(parse_polynomial(src, n).unwrap()).unwrap()
    }

    #[test]
    fn minors_of_ball_module() {
        let d = defun("z1*conj(z1) + z2*conj(z2) - 1", 2);
        let mut rows = vec![FormModuleRow {
            coefficients: d.gradient_form(),
            provenance: RowProvenance::GradientOfR,
        }];
        for hrow in d.complex_hessian() {
            rows.push(FormModuleRow {
                coefficients: hrow,
                provenance: RowProvenance::HessianRow,
            });
        }
        let m = FormModuleMatrix { n: 2, rows };
        let ms = minors(&m, 2);
        let zb1 = P::var_zbar(2, 0).unwrap();
        let zb2 = P::var_zbar(2, 1).unwrap();
        assert_eq!(ms, vec![zb2.negate(), zb1, P::one(2)]);
    }

    #[test]
    fn minors_edge_cases() {
        let zero = FormModuleMatrix {
            n: 3,
            rows: vec![
                FormModuleRow {
                    coefficients: vec![P::zero(3); 3],
                    provenance: RowProvenance::HessianRow,
                };
                2
            ],
        };
        assert!(minors(&zero, 2).is_empty());
        let single = FormModuleMatrix {
            n: 2,
            rows: vec![FormModuleRow {
                coefficients: vec![P::var_z(2, 0).unwrap(), P::zero(2)],
                provenance: RowProvenance::GradientOfR,
            }],
        };
        assert_eq!(minors(&single, 1), vec![P::var_z(2, 0).unwrap()]);
    }

    #[test]
    fn ball_certifies_at_step_one() {
        let d = defun("z1*conj(z1) + z2*conj(z2) - 1", 2);
        let run = run_chain(&d, 1, 8, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::Certified(1));
        assert!(run.trace.one_witness.is_some());
        verify_trace(&run).unwrap();
    }

    #[test]
    fn halfspace_init_and_stuck() {
        let d = defun("2*x2", 2);
        let (state, _) = init_chain(&d, 1, &ChainConfig::default()).unwrap();
        // I_1 is generated by r alone: all size-2 minors vanish
        let x2 = parse_polynomial("x2", 2).unwrap().monic();
        assert_eq!(state.ideal.generators, vec![x2]);
        assert_eq!(state.status, ChainStatus::Running);

        let run = run_chain(&d, 1, 8, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::Stuck(2));
        // variety description is {x2 = 0}
        let v = run.state.ideal.variety_generators();
        assert_eq!(v, vec![parse_polynomial("x2", 2).unwrap().monic()]);
    }

    #[test]
    fn step_refuses_non_running_state() {
        let d = defun("z1*conj(z1) + z2*conj(z2) - 1", 2);
        let (state, _) = init_chain(&d, 1, &ChainConfig::default()).unwrap();
        assert_eq!(state.status, ChainStatus::Certified(1));
        assert!(matches!(
            step_chain(&state, &ChainConfig::default()),
            Err(Error::ChainNotRunning(_))
        ));
    }

    #[test]
    fn weakly_pseudoconvex_ball_certifies_at_step_two() {
        // r = |z1|^2 + |z2|^4 - 1: the sum-of-squares rule adjoins z2 at init
        // and the added gradient row yields the unit minor at step 2
        let d = defun("z1*conj(z1) + (z2*conj(z2))^2 - 1", 2);
        let run = run_chain(&d, 1, 8, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::Certified(2));
        assert!(run.trace.heuristic_fired);
        // the sos rule fired on the |z2|^2 minor, adjoining z2
        let z2 = P::var_z(2, 1).unwrap();
        assert!(run.trace.steps[0].generators_after.contains(&z2));
        // explicit radical membership of 1 in the final ideal
        assert!(run
            .state
            .ideal
            .radical_contains(&P::one(2), 100_000)
            .unwrap());
        verify_trace(&run).unwrap();
    }

    #[test]
    fn flat_hyperplane_in_c3_stuck_on_two_forms() {
        // r = 2 x3 in C^3: the Levi form vanishes, the chain stabilizes at
        // once, and the stuck variety is the whole boundary x3 = 0
        let d = defun("2*x3", 3);
        let run = run_chain(&d, 2, 8, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::Stuck(2));
        let v = run.state.ideal.variety_generators();
        assert_eq!(v, vec![parse_polynomial("x3", 3).unwrap().monic()]);
    }

    #[test]
    fn radically_redundant_minors_do_not_stall_the_chain() {
        // |z1|^2 + |z2|^6 - 1: the step-2 minor z2 satisfies z2^2 in I_1, so
        // a radical-containment stop would call this chain stuck; the fresh
        // gradient row of z2 certifies it one step later instead
        let d = defun("z1*conj(z1) + (z2*conj(z2))^3 - 1", 2);
        let run = run_chain(&d, 1, 8, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::Certified(3));
        verify_trace(&run).unwrap();
    }

    #[test]
    fn variety_generators_stay_real() {
        // a conjugation-closed pair whose real part has a non-real leading
        // coefficient, which plain monic scaling would make non-real
        let g = P::var_z(2, 0)
            .unwrap()
            .add(&P::var_z(2, 1).unwrap().scale(&GaussianRational::i()));
        let mut events = Vec::new();
        let ideal = MultiplierIdeal::close(
            2,
            vec![g.clone(), g.conjugate()],
            Vec::new(),
            None,
            40,
            100_000,
            &mut events,
        )
        .unwrap();
        let v = ideal.variety_generators();
        assert!(!v.is_empty());
        for p in &v {
            assert!(p.is_real(), "variety generator {p} is not real");
        }
    }

    #[test]
    fn budget_exhausted_on_stuck_domain_with_one_step() {
        let d = defun("2*x2", 2);
        let run = run_chain(&d, 1, 1, &ChainConfig::default()).unwrap();
        assert_eq!(run.state.status, ChainStatus::BudgetExhausted(1));
        assert_eq!(run.state.h, 1);
    }

    #[test]
    fn mixed_boundary_init_structure() {
        // n = 3, q = 2: minors of size 2 of the 4x3 module matrix
        let d = defun(
            "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
            3,
        );
        let (state, trace) = init_chain(&d, 2, &ChainConfig::default()).unwrap();
        assert_eq!(state.module.rows.len(), 4);
        assert_eq!(trace.minors.iter().map(|m| &m.value).count(), trace.minors.len());
        // r itself is among the generators
        let r_monic = d.r().monic();
        assert!(state.ideal.generators.contains(&r_monic));
        // all recorded minors are generators too (up to monic normalization)
        for m in &trace.minors {
            assert!(state.ideal.generators.contains(&m.value.monic()));
        }
        // the Levi determinant is one of the minors (rows 2,3 = Hessian 1,2)
        let det = parse_polynomial(
            "-(z1*conj(z1))^2 - 3*(z2*conj(z2))^2 + 3*z1*conj(z1)*z2*conj(z2)",
            3,
        )
        .unwrap();
        assert!(trace.minors.iter().any(|m| m.value == det));
    }

    #[test]
    fn mixed_boundary_certifies_on_two_forms() {
        let d = defun(
            "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
            3,
        );
        let run = run_chain(&d, 2, 8, &ChainConfig::default()).unwrap();
        assert!(matches!(run.state.status, ChainStatus::Certified(_)));
        verify_trace(&run).unwrap();
    }

    #[test]
    fn chain_monotonicity_via_radical_membership() {
        let d = defun("z1*conj(z1) + (z2*conj(z2))^2 - 1", 2);
        let run = run_chain(&d, 1, 8, &ChainConfig::default()).unwrap();
        let states = chain_states_for_test(&d, 1, 8);
        for w in states.windows(2) {
            for g in &w[0].ideal.generators {
                assert!(w[1].ideal.radical_contains(g, 100_000).unwrap());
            }
        }
        let _ = run;
    }

    /// Replays the chain keeping every intermediate state.
    fn chain_states_for_test(
        d: &DefiningFunction,
        q: usize,
        max_h: usize,
    ) -> Vec<MultiplierChainState> {
        let cfg = ChainConfig::default();
        let (mut state, _) = init_chain(d, q, &cfg).unwrap();
        let mut out = vec![state.clone()];
        while state.status == ChainStatus::Running && state.h < max_h {
            let (next, _) = step_chain(&state, &cfg).unwrap();
            out.push(next.clone());
            state = next;
        }
        out
    }

    #[test]
    fn certified_step_is_stable_under_larger_budgets() {
        let d = defun("z1*conj(z1) + z2*conj(z2) - 1", 2);
        let a = run_chain(&d, 1, 2, &ChainConfig::default()).unwrap();
        let b = run_chain(&d, 1, 12, &ChainConfig::default()).unwrap();
        assert_eq!(a.state.status, ChainStatus::Certified(1));
        assert_eq!(b.state.status, ChainStatus::Certified(1));
        assert_eq!(a.state.ideal.generators, b.state.ideal.generators);
    }

    #[test]
    fn determinism_of_generator_lists() {
        let d = defun(
            "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
            3,
        );
        let a = run_chain(&d, 2, 8, &ChainConfig::default()).unwrap();
        let b = run_chain(&d, 2, 8, &ChainConfig::default()).unwrap();
        assert_eq!(a.state.ideal.generators, b.state.ideal.generators);
        assert_eq!(a.state.h, b.state.h);
    }

    #[test]
    fn conjugation_closure_invariant() {
        let d = defun("z1*conj(z1) + (z2*conj(z2))^2 - 1", 2);
        for state in chain_states_for_test(&d, 1, 8) {
            for g in &state.ideal.generators {
                let cg = g.conjugate().monic();
                assert!(
                    state.ideal.generators.contains(&cg),
                    "conjugate of {g} missing"
                );
            }
        }
    }

    #[test]
    fn sos_split_declines_mixed_factor_forms() {
        // the Levi determinant of the mixed boundary is a sum of squares of
        // real mixed-degree polynomials, which is outside the holomorphic
        // split rule: the detector must decline rather than guess
        let det = parse_polynomial(
            "-(z1*conj(z1))^2 - 3*(z2*conj(z2))^2 + 3*z1*conj(z1)*z2*conj(z2)",
            2,
        )
        .unwrap();
        assert!(hermitian_sos_split(&det).is_none());
        assert!(hermitian_sos_split(&det.negate()).is_none());
    }

    #[test]
    fn sos_split_detects_hermitian_forms() {
        let n = 2;
        let z1 = P::var_z(n, 0).unwrap();
        let z2 = P::var_z(n, 1).unwrap();
        // |z1|^2 + 2 |z2|^2
        let g = z1
            .mul(&z1.conjugate())
            .add(&z2.mul(&z2.conjugate()).scale(&GaussianRational::from_int(2)));
        let (neg, parts) = hermitian_sos_split(&g).unwrap();
        assert!(!neg);
        assert_eq!(parts.len(), 2);
        // -(|z1|^2 - |z2|^2) has no decomposition either way
        let h = z1.mul(&z1.conjugate()).sub(&z2.mul(&z2.conjugate()));
        assert!(hermitian_sos_split(&h).is_none());
        // cross terms: |z1 + z2|^2 = z1 conj(z1) + z1 conj(z2) + z2 conj(z1) + z2 conj(z2)
        let f = z1.add(&z2);
        let sq = f.mul(&f.conjugate());
        let (neg, parts) = hermitian_sos_split(&sq).unwrap();
        assert!(!neg);
        assert_eq!(parts.len(), 1);
        // negative of a norm square splits with the flag set
        let (neg, _) = hermitian_sos_split(&sq.negate()).unwrap();
        assert!(neg);
    }
}
