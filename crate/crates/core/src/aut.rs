//! Infinitesimal linear automorphisms of a cone and their prolongations.
//!
//! Two independent routes produce aut(Ŝ) ⊆ End(V):
//!
//! - *sampling*: g must map sampled points into the tangent space of the
//!   cone there, with a stabilization window and a holdout set guarding the
//!   finite sample;
//! - *ideal*: g must preserve the span of the degree-2 ideal generators,
//!   with no sampling at all.
//!
//! Both produce canonical echelon bases, so agreement is data equality.
//! The prolongation spaces are computed as one exact kernel per order. For
//! large ambient dimensions the same kernels are run over two fixed 30-bit
//! prime fields and the dimensions must agree; ambient dimension ≤ 10 is
//! always certified rationally.

use crate::error::Error;
use crate::linalg::{certified_kernel, Field, KernelAccum, PField, QField, QMatrix, Subspace};
use crate::rat::{Rat, Rng, FAST_PRIMES};
use crate::tensors::{monomials, sym_dim, MultiIndex, SymForm, VValuedSymMap};
use crate::zoo::ParamVariety;
use crate::Result;
use num_traits::Zero;

/// Knobs for the sampling engine and the prime-field fast path.
#[derive(Debug, Clone)]
pub struct EngineCfg {
    pub seed: u64,
    pub primes: [u64; 2],
    pub stability_window: usize,
    pub holdout: usize,
    pub max_samples: usize,
    pub certify_rational: bool,
}

impl Default for EngineCfg {
    fn default() -> Self {
        EngineCfg {
            seed: 1,
            primes: FAST_PRIMES,
            stability_window: 3,
            holdout: 5,
            max_samples: 200,
            certify_rational: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Sampled,
    Ideal,
    Oracle,
}

/// A Lie algebra of N×N matrices tangent to a cone, in canonical form.
#[derive(Debug, Clone)]
pub struct AutAlgebra {
    pub ambient: usize,
    pub basis: Subspace,
    pub provenance: Provenance,
    /// Kernel dimension after each sample (sampling path only).
    pub sample_dims: Vec<usize>,
}

impl AutAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn from_matrices(ambient: usize, mats: Vec<QMatrix>, provenance: Provenance) -> Self {
        let vecs = mats.into_iter().map(|m| m.flatten()).collect();
        AutAlgebra {
            ambient,
            basis: Subspace::from_vectors(ambient * ambient, vecs),
            provenance,
            sample_dims: Vec::new(),
        }
    }

    pub fn basis_matrices(&self) -> Vec<QMatrix> {
        self.basis
            .basis()
            .iter()
            .map(|v| QMatrix::from_flat(self.ambient, self.ambient, v.clone()))
            .collect()
    }

    pub fn contains_matrix(&self, m: &QMatrix) -> Result<bool> {
        self.basis.contains(&m.flatten())
    }

    /// Closure under the commutator bracket, checked pairwise on the basis.
    pub fn bracket_closed(&self) -> Result<bool> {
        let mats = self.basis_matrices();
        for (i, a) in mats.iter().enumerate() {
            for b in mats.iter().skip(i + 1) {
                if !self.contains_matrix(&a.commutator(b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// First-order prolongation (or a higher level of the tower): symmetric
/// maps Sym^{d}V → V whose slices land in the previous level.
#[derive(Debug, Clone)]
pub struct Prolongation {
    pub order: usize,
    pub basis: Vec<VValuedSymMap>,
    /// Canonical echelon span of the flattened maps.
    pub canonical: Subspace,
}

impl Prolongation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Tangency constraints at one sampled point, as sparse covectors on the
/// flattened endomorphism space: ℓ(g·p) = 0 for every annihilator ℓ of the
/// tangent space.
fn tangency_rows(n: usize, tangent: &Subspace, p: &[Rat]) -> Vec<Vec<(usize, Rat)>> {
    let ann = tangent.annihilator();
    let mut rows = Vec::with_capacity(ann.dim());
    for cov in ann.basis() {
        let mut row = Vec::new();
        for (i, ci) in cov.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, pj) in p.iter().enumerate() {
                if !pj.is_zero() {
                    row.push((i * n + j, ci * pj));
                }
            }
        }
        rows.push(row);
    }
    rows
}

enum Phase {
    Scanning { unchanged: usize },
    Holdout { left: usize },
}

/// Core sampling loop, generic over the coefficient field. Returns the
/// accumulated kernel, the per-sample dimension history and the collected
/// constraint rows.
fn aut_kernel_sampled<F: Field>(
    x: &ParamVariety,
    cfg: &EngineCfg,
    field: F,
) -> Result<(KernelAccum<F>, Vec<usize>, Vec<Vec<(usize, Rat)>>)> {
    let n = x.ambient;
    let mut rng = Rng::new(cfg.seed).derive(&x.name);
    let mut acc = KernelAccum::full(field, n * n);
    let mut history = Vec::new();
    let mut rows_seen = Vec::new();
    let mut phase = Phase::Scanning { unchanged: 0 };
    for sample_no in 0..cfg.max_samples {
        let (t, p) = x.sample_point(&mut rng)?;
        let tangent = x.tangent_space(&t, &p);
        if sample_no == 0 && tangent.dim() != x.cone_dim {
            return Err(Error::DegenerateParametrization {
                name: x.name.clone(),
                reason: format!(
                    "tangent rank {} at first sample, cone dimension {}",
                    tangent.dim(),
                    x.cone_dim
                ),
            });
        }
        let before = acc.dim();
        for row in tangency_rows(n, &tangent, &p) {
            acc.feed_rat_sparse(&row)?;
            rows_seen.push(row);
        }
        history.push(acc.dim());
        let stable = acc.dim() == before;
        phase = match phase {
            Phase::Scanning { unchanged } => {
                let unchanged = if stable { unchanged + 1 } else { 0 };
                if unchanged >= cfg.stability_window {
                    if cfg.holdout == 0 {
                        return Ok((acc, history, rows_seen));
                    }
                    Phase::Holdout { left: cfg.holdout }
                } else {
                    Phase::Scanning { unchanged }
                }
            }
            Phase::Holdout { left } => {
                if !stable {
                    Phase::Scanning { unchanged: 0 }
                } else if left == 1 {
                    return Ok((acc, history, rows_seen));
                } else {
                    Phase::Holdout { left: left - 1 }
                }
            }
        };
    }
    Err(Error::NonStabilizing { samples: cfg.max_samples })
}

/// aut(Ŝ) from sampled tangency constraints, exact over ℚ.
///
/// The sampling stop rule runs on the first fast-path prime; the rational
/// basis is then reconstructed from prime-field images and certified
/// against the collected constraint rows.
pub fn aut_from_samples(x: &ParamVariety, cfg: &EngineCfg) -> Result<AutAlgebra> {
    let (_, history, rows) = aut_kernel_sampled(x, cfg, PField { p: cfg.primes[0] })?;
    let basis = certified_kernel(x.ambient * x.ambient, &rows, &cfg.primes)?;
    Ok(AutAlgebra {
        ambient: x.ambient,
        basis,
        provenance: Provenance::Sampled,
        sample_dims: history,
    })
}

/// Constraint rows forcing gᵀS_q + S_q g into the span of the quadric Gram
/// matrices, expressed through the annihilator of that span.
fn ideal_rows(x: &ParamVariety) -> Result<Vec<Vec<(usize, Rat)>>> {
    let Some(quadrics) = &x.quadrics else {
        return Err(Error::NoIdeal { name: x.name.clone() });
    };
    if quadrics.is_empty() {
        return Err(Error::NoIdeal { name: x.name.clone() });
    }
    let n = x.ambient;
    let span = Subspace::from_vectors(
        sym_dim(n, 2),
        quadrics.iter().map(SymForm::coeff_vector).collect(),
    );
    let ann = span.annihilator();
    let mons = monomials(n, 2);
    let mon_pos = |i: usize, j: usize| -> usize {
        let mut e = vec![0u32; n];
        e[i] += 1;
        e[j] += 1;
        let target = MultiIndex(e);
        mons.iter().position(|m| *m == target).unwrap()
    };
    // cache positions of all pairs
    let mut pos = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let p = mon_pos(i, j);
            pos[i][j] = p;
            pos[j][i] = p;
        }
    }
    let grams: Vec<QMatrix> = quadrics.iter().map(SymForm::gram).collect();
    let mut rows = Vec::new();
    for s in &grams {
        for cov in ann.basis() {
            let mut row: Vec<(usize, Rat)> = Vec::new();
            // The form v ↦ vᵀ(gᵀS + Sg)v paired against the covector;
            // the coefficient of the unknown g_{kl} is 2·Σ_i cov[x_l x_i]·S_{ki}
            // and the global factor 2 is dropped.
            for k in 0..n {
                for l in 0..n {
                    let mut c = Rat::zero();
                    for i in 0..n {
                        let ski = s.get(k, i);
                        if !ski.is_zero() {
                            c += &cov[pos[l.min(i)][l.max(i)]] * ski;
                        }
                    }
                    if !c.is_zero() {
                        row.push((k * n + l, c));
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// aut(Ŝ) from the quadric ideal, exact and sampling-free.
pub fn aut_from_quadrics(x: &ParamVariety) -> Result<AutAlgebra> {
    aut_from_quadrics_cfg(x, &EngineCfg::default())
}

pub fn aut_from_quadrics_cfg(x: &ParamVariety, cfg: &EngineCfg) -> Result<AutAlgebra> {
    let rows = ideal_rows(x)?;
    let n = x.ambient;
    Ok(AutAlgebra {
        ambient: n,
        basis: certified_kernel(n * n, &rows, &cfg.primes)?,
        provenance: Provenance::Ideal,
        sample_dims: Vec::new(),
    })
}

fn polarization_scale(e: &MultiIndex) -> Rat {
    use num_bigint::BigInt;
    let mut num = BigInt::from(1);
    for &m in &e.0 {
        for k in 2..=m {
            num *= BigInt::from(k);
        }
    }
    let mut den = BigInt::from(1);
    for k in 2..=e.degree() {
        den *= BigInt::from(k);
    }
    Rat::new(num, den)
}

/// Full-symmetry constraint rows for one prolongation-tower level.
///
/// The unknown is a linear map V → span(prev); basis vectors of the
/// previous level are flat coefficient vectors of V-valued degree-d forms
/// in monomial order.
fn tower_rows<F: Field>(
    field: &F,
    n: usize,
    d: u32,
    prev: &[Vec<F::El>],
) -> Result<Vec<Vec<(usize, F::El)>>> {
    let dim_prev = prev.len();
    let mons_d = monomials(n, d);
    let mons_lower = monomials(n, d - 1);
    let mon_index: std::collections::HashMap<MultiIndex, usize> =
        mons_d.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let stride = mons_d.len();
    let scales: Vec<F::El> = mons_d
        .iter()
        .map(|e| field.from_rat(&polarization_scale(e)))
        .collect::<Result<_>>()?;
    let zero = field.zero();
    let mut rows = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for k_mon in &mons_lower {
                let mut eq = k_mon.0.clone();
                eq[q] += 1;
                let mut ep = k_mon.0.clone();
                ep[p] += 1;
                let iq = mon_index[&MultiIndex(eq)];
                let ip = mon_index[&MultiIndex(ep)];
                for a in 0..n {
                    let mut row: Vec<(usize, F::El)> = Vec::new();
                    for m in 0..dim_prev {
                        let bq = &prev[m][a * stride + iq];
                        if !field.is_zero(bq) {
                            let mut cq = zero.clone();
                            field.add_mul(&mut cq, bq, &scales[iq]);
                            row.push((p * dim_prev + m, cq));
                        }
                        let bp = &prev[m][a * stride + ip];
                        if !field.is_zero(bp) {
                            let mut cp = zero.clone();
                            field.sub_mul(&mut cp, bp, &scales[ip]);
                            row.push((q * dim_prev + m, cp));
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Assemble kernel vectors of the tower system into flat degree-(d+1)
/// V-valued forms: f_a = Σ_p v_p · Σ_m x[p][m] (B_m)_a.
fn tower_assemble<F: Field>(
    field: &F,
    n: usize,
    d: u32,
    prev: &[Vec<F::El>],
    kernel: &[Vec<F::El>],
) -> Vec<Vec<F::El>> {
    let dim_prev = prev.len();
    let mons_d = monomials(n, d);
    let mon_index: std::collections::HashMap<MultiIndex, usize> =
        mons_d.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let stride = mons_d.len();
    let mons_up = monomials(n, d + 1);
    let up_stride = mons_up.len();
    let mut out = Vec::new();
    for xvec in kernel {
        let mut flat = vec![field.zero(); n * up_stride];
        for (ui, upper) in mons_up.iter().enumerate() {
            for p in 0..n {
                if upper.0[p] == 0 {
                    continue;
                }
                let mut lower = upper.0.clone();
                lower[p] -= 1;
                let li = mon_index[&MultiIndex(lower)];
                for m in 0..dim_prev {
                    let xc = &xvec[p * dim_prev + m];
                    if field.is_zero(xc) {
                        continue;
                    }
                    for a in 0..n {
                        let b = &prev[m][a * stride + li];
                        if !field.is_zero(b) {
                            field.add_mul(&mut flat[a * up_stride + ui], xc, b);
                        }
                    }
                }
            }
        }
        out.push(flat);
    }
    out
}

/// One level of the tower over a prime field: one kernel, one answer.
fn tower_step<F: Field>(
    field: &F,
    n: usize,
    d: u32,
    prev: &[Vec<F::El>],
) -> Result<Vec<Vec<F::El>>> {
    let dim_prev = prev.len();
    if dim_prev == 0 {
        return Ok(Vec::new());
    }
    let mut acc = KernelAccum::full(field.clone(), n * dim_prev);
    for row in tower_rows(field, n, d, prev)? {
        acc.feed_sparse(&row);
    }
    let kernel: Vec<Vec<F::El>> = acc.into_basis();
    Ok(tower_assemble(field, n, d, prev, &kernel))
}

/// One tower level over ℚ, with the kernel reconstructed from prime fields
/// and certified.
fn tower_step_certified(
    n: usize,
    d: u32,
    prev: &[Vec<Rat>],
    primes: &[u64],
) -> Result<Vec<Vec<Rat>>> {
    if prev.is_empty() {
        return Ok(Vec::new());
    }
    let rows = tower_rows(&QField, n, d, prev)?;
    let kernel = certified_kernel(n * prev.len(), &rows, primes)?;
    Ok(tower_assemble(&QField, n, d, prev, kernel.basis()))
}

/// First prolongation of an explicitly given algebra, exact over ℚ, with
/// the basis assembled into symmetric quadratic maps.
pub fn prolong(g: &AutAlgebra) -> Prolongation {
    prolong_cfg(g, &EngineCfg::default()).expect("rational tower step cannot fail")
}

pub fn prolong_cfg(g: &AutAlgebra, cfg: &EngineCfg) -> Result<Prolongation> {
    let n = g.ambient;
    let prev: Vec<Vec<Rat>> = g.basis.basis().to_vec();
    let flats = tower_step_certified(n, 1, &prev, &cfg.primes)?;
    let basis: Vec<VValuedSymMap> =
        flats.iter().map(|f| VValuedSymMap::from_flat(n, 2, n, f)).collect();
    let canonical =
        Subspace::from_vectors(n * sym_dim(n, 2), basis.iter().map(|m| m.flatten()).collect());
    Ok(Prolongation { order: 1, basis, canonical })
}

fn field_dims_tower<F: Field>(
    x: &ParamVariety,
    kmax: usize,
    cfg: &EngineCfg,
    field: F,
) -> Result<Vec<usize>> {
    let n = x.ambient;
    let (acc, _, _) = aut_kernel_sampled(x, cfg, field.clone())?;
    let mut dims = vec![acc.dim()];
    let mut level: Vec<Vec<F::El>> = acc.into_basis();
    for k in 1..=kmax {
        level = tower_step(&field, n, k as u32, &level)?;
        dims.push(level.len());
    }
    Ok(dims)
}

/// Fully certified rational ladder: aut plus the tower levels, exact.
fn rational_dims_tower(x: &ParamVariety, kmax: usize, cfg: &EngineCfg) -> Result<Vec<usize>> {
    let g = aut_from_samples(x, cfg)?;
    let mut dims = vec![g.dim()];
    let mut level: Vec<Vec<Rat>> = g.basis.basis().to_vec();
    for k in 1..=kmax {
        level = tower_step_certified(x.ambient, k as u32, &level, &cfg.primes)?;
        dims.push(level.len());
    }
    Ok(dims)
}

/// Dimension ladder [dim aut, dim aut⁽¹⁾, …, dim aut⁽ᵏ⁾].
///
/// Runs the prime-field fast path over the two configured primes and
/// requires agreement; a disagreement drafts a third seeded prime together
/// with the rational path as arbiter. The rational path also runs whenever
/// the ambient dimension is at most 10 or certification is requested.
pub fn prolong_k(x: &ParamVariety, kmax: usize, cfg: &EngineCfg) -> Result<Vec<usize>> {
    let d0 = field_dims_tower(x, kmax, cfg, PField { p: cfg.primes[0] })?;
    let d1 = field_dims_tower(x, kmax, cfg, PField { p: cfg.primes[1] })?;
    if d0 != d1 {
        let p3 = third_prime(cfg);
        let d2 = field_dims_tower(x, kmax, cfg, PField { p: p3 })?;
        let dq = rational_dims_tower(x, kmax, cfg)?;
        if d2 != dq {
            return Err(Error::PrimeDisagreement {
                p1: cfg.primes[0],
                p2: cfg.primes[1],
                d1: d0[kmax],
                d2: d1[kmax],
            });
        }
        return Ok(dq);
    }
    if x.ambient <= 10 || cfg.certify_rational {
        let dq = rational_dims_tower(x, kmax, cfg)?;
        if dq != d0 {
            return Err(Error::PrimeDisagreement {
                p1: cfg.primes[0],
                p2: cfg.primes[1],
                d1: d0[kmax],
                d2: dq[kmax],
            });
        }
    }
    Ok(d0)
}

fn third_prime(cfg: &EngineCfg) -> u64 {
    let mut rng = Rng::new(cfg.seed).derive("third-prime");
    loop {
        let cand = (rng.next_u64() % (1 << 30)) | (1 << 29) | 1;
        if crate::rat::is_prime(cand) && !cfg.primes.contains(&cand) {
            return cand;
        }
    }
}

/// First-order consistency of a quadratic map along the cone: A(p, p) must
/// be tangent at every sampled smooth point.
pub fn verify_flow(a: &VValuedSymMap, x: &ParamVariety, n_samples: usize, rng: &mut Rng) -> bool {
    assert_eq!(a.degree(), 2);
    for _ in 0..n_samples {
        let Ok((t, p)) = x.sample_point(rng) else {
            return false;
        };
        let tangent = x.tangent_space(&t, &p);
        let v = a.eval_diag(&p);
        if !tangent.contains(&v).unwrap_or(false) {
            return false;
        }
    }
    true
}

/// dim aut⁽¹⁾ ≤ N · dim aut: every slice map is a linear map into aut.
pub fn prolongation_inclusion_bound(g: &AutAlgebra, p: &Prolongation) -> bool {
    p.dim() <= g.ambient * g.dim()
}
