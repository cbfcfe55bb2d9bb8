//! The catalogue of parametrized cone varieties.
//!
//! Each entry is a polynomial parametrization φ: ℚ^m → ℚ^N whose image spans
//! the affine cone under study, together with its known degree-2 ideal
//! generators when available. Outer-product charts (Segre, Veronese,
//! Plücker, symplectic) are conical as given; the quadric, spinor and Severi
//! charts carry an explicit scale parameter.

use crate::error::Error;
use crate::linalg::{QMatrix, Subspace};
use crate::octonion::{rank_one_chart, Jordan, Octonion};
use crate::rat::{rat, Rat, Rng};
use crate::tensors::{monomials, MultiIndex, Poly, PolyMap, Ring, SymForm};
use crate::Result;
use num_traits::Zero;

/// A parametrized affine cone in ℚ^N.
#[derive(Debug, Clone)]
pub struct ParamVariety {
    pub name: String,
    pub ambient: usize,
    pub cone_dim: usize,
    pub phi: PolyMap,
    pub quadrics: Option<Vec<SymForm>>,
    pub expected_dim_aut1: Option<usize>,
}

impl ParamVariety {
    pub fn params(&self) -> usize {
        self.phi.params()
    }

    /// Seeded point on the cone: parameters of height ≤ 10 and a nonzero
    /// image. Retries internally; a parametrization that keeps producing
    /// zero is reported as degenerate.
    pub fn sample_point(&self, rng: &mut Rng) -> Result<(Vec<Rat>, Vec<Rat>)> {
        for _ in 0..100 {
            let t: Vec<Rat> = (0..self.params()).map(|_| rng.small_rat(10)).collect();
            let p = self.phi.eval(&t);
            if p.iter().any(|x| !x.is_zero()) {
                return Ok((t, p));
            }
        }
        Err(Error::DegenerateParametrization {
            name: self.name.clone(),
            reason: "100 consecutive samples mapped to zero".into(),
        })
    }

    /// Tangent space of the cone at φ(t): the span of the Jacobian columns
    /// together with the point itself. Adding the point is idempotent for
    /// conical charts and supplies the ray for affine ones.
    pub fn tangent_space(&self, t: &[Rat], p: &[Rat]) -> Subspace {
        let jac = self.phi.jacobian(t);
        let mut vecs: Vec<Vec<Rat>> = (0..jac.cols()).map(|j| jac.col(j)).collect();
        vecs.push(p.to_vec());
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// Check the stored quadrics vanish identically on φ, as polynomials in
    /// the parameters.
    pub fn quadrics_vanish_symbolically(&self) -> bool {
        let Some(qs) = &self.quadrics else {
            return true;
        };
        qs.iter().all(|q| {
            let pulled = q.poly().substitute(self.phi.comps());
            pulled.is_ring_zero()
        })
    }
}

fn coord_polys(m: usize) -> Vec<Poly> {
    (0..m).map(|i| Poly::var(m, i)).collect()
}

/// Cone over a smooth quadric hypersurface in ℙ^{n−1}: chart
/// (t, s) ↦ s·(1, t, Σtᵢ²), cut out by x₀x_{n−1} − Σxᵢ².
pub fn make_quadric(n: usize) -> Result<ParamVariety> {
    if n < 3 {
        return Err(Error::BadDimension { what: "quadric ambient", got: n });
    }
    let m = n - 1; // t₁..t_{n−2} then the scale s
    let t = coord_polys(m);
    let s = &t[m - 1];
    let mut comps = vec![s.clone()];
    for ti in t.iter().take(n - 2) {
        comps.push(s * ti);
    }
    let mut qsum = Poly::zero(m);
    for ti in t.iter().take(n - 2) {
        qsum = &qsum + &(ti * ti);
    }
    comps.push(s * &qsum);
    let quadric = defining_quadric_of_quadric_cone(n);
    Ok(ParamVariety {
        name: format!("quadric:{n}"),
        ambient: n,
        cone_dim: n - 1,
        phi: PolyMap::new(m, comps),
        quadrics: Some(vec![quadric]),
        expected_dim_aut1: Some(n),
    })
}

/// x₀x_{n−1} − x₁² − … − x_{n−2}², the equation shared with the quadric
/// symbol system.
pub fn defining_quadric_of_quadric_cone(n: usize) -> SymForm {
    let mut p = Poly::zero(n);
    let mut e = vec![0u32; n];
    e[0] = 1;
    e[n - 1] = 1;
    p.add_term(MultiIndex(e), rat(1));
    for i in 1..n - 1 {
        let mut e = vec![0u32; n];
        e[i] = 2;
        p.add_term(MultiIndex(e), rat(-1));
    }
    SymForm::from_poly(n, 2, p)
}

/// Rank-one matrices u⊗v in Mat_{a×b}, row-major coordinates; the 2×2
/// minors generate the ideal.
pub fn make_segre(a: usize, b: usize) -> Result<ParamVariety> {
    if a < 2 || b < 2 {
        return Err(Error::BadDimension { what: "segre factor", got: a.min(b) });
    }
    let m = a + b;
    let n = a * b;
    let t = coord_polys(m);
    let mut comps = Vec::with_capacity(n);
    for i in 0..a {
        for j in 0..b {
            comps.push(&t[i] * &t[a + j]);
        }
    }
    let var = |i: usize, j: usize| Poly::var(n, i * b + j);
    let mut quadrics = Vec::new();
    for i in 0..a {
        for k in i + 1..a {
            for j in 0..b {
                for l in j + 1..b {
                    let q = &(&var(i, j) * &var(k, l)) - &(&var(i, l) * &var(k, j));
                    quadrics.push(SymForm::from_poly(n, 2, q));
                }
            }
        }
    }
    Ok(ParamVariety {
        name: format!("segre:{a}x{b}"),
        ambient: n,
        cone_dim: a + b - 1,
        phi: PolyMap::new(m, comps),
        quadrics: Some(quadrics),
        expected_dim_aut1: Some(a * b),
    })
}

fn sym_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i ≤ j, in the row-wise upper triangle
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

/// Rank-one symmetric matrices u⊙u; coordinates are the upper triangle
/// x_{ij} = uᵢuⱼ for i ≤ j; the symmetric 2×2 minors generate the ideal.
pub fn make_veronese2(n: usize) -> Result<ParamVariety> {
    if n < 2 {
        return Err(Error::BadDimension { what: "veronese base", got: n });
    }
    let nn = n * (n + 1) / 2;
    let t = coord_polys(n);
    let mut comps = Vec::with_capacity(nn);
    for i in 0..n {
        for j in i..n {
            comps.push(&t[i] * &t[j]);
        }
    }
    let var = |i: usize, j: usize| Poly::var(nn, sym_index(n, i.min(j), i.max(j)));
    let mut quadrics: Vec<SymForm> = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    let q = &(&var(i, j) * &var(k, l)) - &(&var(i, l) * &var(k, j));
                    if q.is_ring_zero() {
                        continue;
                    }
                    let f = SymForm::from_poly(nn, 2, q);
                    let neg = f.scale(&rat(-1));
                    if !quadrics.contains(&f) && !quadrics.contains(&neg) {
                        quadrics.push(f);
                    }
                }
            }
        }
    }
    Ok(ParamVariety {
        name: format!("veronese:{n}"),
        ambient: nn,
        cone_dim: n,
        phi: PolyMap::new(n, comps),
        quadrics: Some(quadrics),
        expected_dim_aut1: Some(n * (n + 1) / 2),
    })
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in the lexicographic list of pairs
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Rank-two alternating forms u∧v in Λ²ℚ^n, coordinates p_{ij} (i<j);
/// the three-term Grassmann relations on 4-subsets generate the ideal.
pub fn make_pluecker_rank2(n: usize) -> Result<ParamVariety> {
    if n < 4 {
        return Err(Error::BadDimension { what: "pluecker base", got: n });
    }
    let nn = n * (n - 1) / 2;
    let m = 2 * n;
    let t = coord_polys(m);
    let mut comps = Vec::with_capacity(nn);
    for i in 0..n {
        for j in i + 1..n {
            comps.push(&(&t[i] * &t[n + j]) - &(&t[j] * &t[n + i]));
        }
    }
    let var = |i: usize, j: usize| Poly::var(nn, pair_index(n, i, j));
    let mut quadrics = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = &(&(&var(a, b) * &var(c, d)) - &(&var(a, c) * &var(b, d)))
                        + &(&var(a, d) * &var(b, c));
                    quadrics.push(SymForm::from_poly(nn, 2, q));
                }
            }
        }
    }
    Ok(ParamVariety {
        name: format!("pluecker:{n}"),
        ambient: nn,
        cone_dim: 2 * n - 3,
        phi: PolyMap::new(m, comps),
        quadrics: Some(quadrics),
        expected_dim_aut1: Some(nn),
    })
}

/// Principal 4×4 sub-Pfaffian of a 5×5 alternating coordinate matrix,
/// omitting index `skip`; `entry(i, j)` supplies A_{ij} for i < j.
fn sub_pfaffian4(entry: &dyn Fn(usize, usize) -> Poly, skip: usize) -> Poly {
    let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
    let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
    let term = |i: usize, j: usize, k: usize, l: usize| &entry(i, j) * &entry(k, l);
    let mut p = term(a, b, c, d);
    p = &p - &term(a, c, b, d);
    p = &p + &term(a, d, b, c);
    p
}

/// The 10-dimensional spinor variety in ℙ^15: big-cell chart by a 5×5
/// alternating matrix,
/// (s, A) ↦ (s, s·A_{ij}, s·Pf₄(A omit i)). The ten quadrics cutting it out
/// are derived from the parametrization itself: the degree-2 part of the
/// kernel of the pullback map on quadratic monomials.
pub fn make_spinor5() -> Result<ParamVariety> {
    let m = 11; // s then the ten A_{ij}, i < j, lexicographic
    let nn = 16;
    let s = Poly::var(m, 0);
    let a_entry = |i: usize, j: usize| -> Poly {
        debug_assert!(i < j);
        Poly::var(m, 1 + pair_index(5, i, j))
    };
    let mut comps = vec![s.clone()];
    for i in 0..5 {
        for j in i + 1..5 {
            comps.push(&s * &a_entry(i, j));
        }
    }
    for i in 0..5 {
        comps.push(&s * &sub_pfaffian4(&a_entry, i));
    }
    let phi = PolyMap::new(m, comps);
    let quadrics = derive_quadrics(&phi, nn)?;
    Ok(ParamVariety {
        name: "spinor:5".into(),
        ambient: nn,
        cone_dim: 11,
        phi,
        quadrics: Some(quadrics),
        expected_dim_aut1: Some(16),
    })
}

/// Degree-2 part of the ideal of the image: kernel of the substitution map
/// on quadratic monomials, computed by exact linear algebra.
pub fn derive_quadrics(phi: &PolyMap, ambient: usize) -> Result<Vec<SymForm>> {
    let mons = monomials(ambient, 2);
    let mut pullbacks: Vec<Poly> = Vec::with_capacity(mons.len());
    for mon in &mons {
        let mut acc = Poly::one_poly(phi.params());
        for (i, &e) in mon.0.iter().enumerate() {
            for _ in 0..e {
                acc = &acc * &phi.comps()[i];
            }
        }
        pullbacks.push(acc);
    }
    let mut rows: Vec<MultiIndex> = Vec::new();
    for p in &pullbacks {
        for (idx, _) in p.terms() {
            if !rows.contains(idx) {
                rows.push(idx.clone());
            }
        }
    }
    rows.sort();
    let mat = QMatrix::from_fn(rows.len(), mons.len(), |r, c| pullbacks[c].coeff(&rows[r]));
    let kernel = mat.kernel_basis();
    Ok(kernel
        .basis()
        .iter()
        .map(|v| SymForm::from_coeff_vector(ambient, 2, v))
        .collect())
}

/// The 16-dimensional rank-one cone in the 27-dimensional space of Hermitian
/// 3×3 split-octonion matrices: chart (s, u, v) ↦ s·(1, N(v), N(u); ūv̄, u, v),
/// cut out by the 27 adjugate quadrics.
pub fn make_severi() -> Result<ParamVariety> {
    let m = 17; // s, then u (8 coords), then v (8 coords)
    let one = Poly::one_poly(m);
    let u = Octonion::from_coords(&(0..8).map(|i| Poly::var(m, 1 + i)).collect::<Vec<_>>());
    let v = Octonion::from_coords(&(0..8).map(|i| Poly::var(m, 9 + i)).collect::<Vec<_>>());
    let chart = rank_one_chart(one, u, v);
    let s = Poly::var(m, 0);
    let comps: Vec<Poly> = chart.coords().iter().map(|p| &s * p).collect();

    // adjugate components of a generic Hermitian matrix, as quadrics in the
    // 27 ambient coordinates
    let generic = Jordan::from_coords(&(0..27).map(|i| Poly::var(27, i)).collect::<Vec<_>>());
    let quadrics: Vec<SymForm> = generic
        .adjugate()
        .coords()
        .into_iter()
        .map(|p| SymForm::from_poly(27, 2, p))
        .collect();

    Ok(ParamVariety {
        name: "severi".into(),
        ambient: 27,
        cone_dim: 17,
        phi: PolyMap::new(m, comps),
        quadrics: Some(quadrics),
        expected_dim_aut1: Some(27),
    })
}

/// The symplectic-Grassmannian tangent model: (w, q) ↦ (w⊙w, w⊗q) in
/// Sym²ℚ^k ⊕ (ℚ^k ⊗ ℚ^mq) — the projection of the second Veronese of
/// ℙ(W ⊕ Q) away from Sym²Q.
pub fn make_sympl_vmrt(k: usize, mq: usize) -> Result<ParamVariety> {
    if k < 2 {
        return Err(Error::BadDimension { what: "sympl W factor", got: k });
    }
    if mq < 1 {
        return Err(Error::BadDimension { what: "sympl Q factor", got: mq });
    }
    let m = k + mq;
    let nn = k * (k + 1) / 2 + k * mq;
    let t = coord_polys(m);
    let mut comps = Vec::with_capacity(nn);
    for i in 0..k {
        for j in i..k {
            comps.push(&t[i] * &t[j]);
        }
    }
    for i in 0..k {
        for j in 0..mq {
            comps.push(&t[i] * &t[k + j]);
        }
    }
    Ok(ParamVariety {
        name: format!("sympl:{k},{mq}"),
        ambient: nn,
        cone_dim: k + mq,
        phi: PolyMap::new(m, comps),
        quadrics: None,
        expected_dim_aut1: Some(k * (k + 1) / 2),
    })
}

/// Linear projection away from ℙL: composes the chart with a fixed quotient
/// map V → V/L. The center must avoid the secant variety; that is probed on
/// 200 seeded secant samples (a necessary check only — downstream dimension
/// cross-checks catch what sampling cannot).
pub fn project(x: &ParamVariety, l: &Subspace, rng: &mut Rng) -> Result<ParamVariety> {
    if l.ambient() != x.ambient {
        return Err(Error::DimensionMismatch { expected: x.ambient, got: l.ambient() });
    }
    if l.dim() == 0 {
        return Ok(ParamVariety { name: format!("project({}; 0)", x.name), ..x.clone() });
    }
    for _ in 0..200 {
        let (_, p1) = x.sample_point(rng)?;
        let (_, p2) = x.sample_point(rng)?;
        let lambda = rng.small_nonzero(10);
        let secant: Vec<Rat> = p1.iter().zip(&p2).map(|(a, b)| a + &lambda * b).collect();
        if secant.iter().any(|c| !c.is_zero()) && l.contains(&secant)? {
            return Err(Error::SecantViolation { variety: x.name.clone() });
        }
    }
    let pivots = l.pivots();
    let non_pivots: Vec<usize> = (0..x.ambient).filter(|c| !pivots.contains(c)).collect();
    let rows: Vec<Vec<Rat>> = non_pivots
        .iter()
        .map(|&q| {
            let mut row = vec![Rat::zero(); x.ambient];
            row[q] = rat(1);
            for (b, &p) in l.basis().iter().zip(pivots) {
                row[p] = -b[q].clone();
            }
            row
        })
        .collect();
    Ok(ParamVariety {
        name: format!("project({}; {})", x.name, l.dim()),
        ambient: non_pivots.len(),
        cone_dim: x.cone_dim,
        phi: x.phi.compose_linear(&rows),
        quadrics: None,
        expected_dim_aut1: None,
    })
}

/// The quotient map used by [`project`], applied to a single ambient vector.
pub fn project_vector(l: &Subspace, v: &[Rat]) -> Vec<Rat> {
    let reduced = l.reduce(v);
    (0..l.ambient()).filter(|c| !l.pivots().contains(c)).map(|c| reduced[c].clone()).collect()
}
