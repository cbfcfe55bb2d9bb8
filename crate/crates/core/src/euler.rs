//! Graded symbol-system models and the two opposite vector-group actions.
//!
//! A symbol system F = ⊕F^k ⊂ ⊕Sym^k W* (constants, all linear forms, then
//! minor/sub-Pfaffian spaces closed under contraction) determines a graded
//! space V = ⊕V_k with V_k dual to F^k, a distinguished line V₀ = ℚe₀, the
//! embedding u ↦ e₀ + Σ_k Π_k(u,…,u), and the commuting nilpotent family
//! Γ_u raising the grading. Exponentiating with binomial weights gives the
//! translation representation ρ_x; on tube models (one-dimensional top
//! piece) the determinant-like pairing J reverses the grading and conjugates
//! ρ_x into the opposite representation ρ_y. The bilinear bracket map λ
//! built from the two sides lands in the first prolongation of the base
//! locus cone and is compared against the sampling engine head-on.

use crate::error::Error;
use crate::linalg::{QMatrix, Subspace};
use crate::rat::{rat, Rat};
use crate::tensors::{binomial, sym_dim, MultiIndex, Poly, PolyMap, SymForm};
use crate::tensors::VValuedSymMap;
use crate::Result;
use num_traits::{One, Zero};

/// Graded space of forms F⁰, …, F^r with chosen bases.
#[derive(Debug, Clone)]
pub struct SymbolSystem {
    pub name: String,
    pub w_dim: usize,
    pub rank: usize,
    pub components: Vec<Vec<SymForm>>,
}

impl SymbolSystem {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Exact validation: level zero is the constants, level one the full
    /// dual, every level independent, the top level nonzero, and every
    /// contraction by a basis vector drops one level into the span below.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidSymbolSystem { reason });
        if self.components.len() != self.rank + 1 {
            return fail(format!("expected {} levels", self.rank + 1));
        }
        if self.components[0].len() != 1
            || self.components[0][0] != SymForm::constant_one(self.w_dim)
        {
            return fail("level 0 must be the constant 1".into());
        }
        let f1 = Subspace::from_vectors(
            self.w_dim,
            self.components[1].iter().map(SymForm::coeff_vector).collect(),
        );
        if f1.dim() != self.w_dim {
            return fail("level 1 must span all linear forms".into());
        }
        if self.components[self.rank].is_empty() {
            return fail("top level is zero".into());
        }
        for (k, comp) in self.components.iter().enumerate() {
            for f in comp {
                if f.nvars() != self.w_dim || f.degree() != k as u32 {
                    return fail(format!("level {k} holds a form of wrong shape"));
                }
            }
            let span = Subspace::from_vectors(
                sym_dim(self.w_dim, k as u32),
                comp.iter().map(SymForm::coeff_vector).collect(),
            );
            if span.dim() != comp.len() {
                return fail(format!("level {k} basis is dependent"));
            }
        }
        for k in 0..self.rank {
            let lower = Subspace::from_vectors(
                sym_dim(self.w_dim, k as u32),
                self.components[k].iter().map(SymForm::coeff_vector).collect(),
            );
            for f in &self.components[k + 1] {
                for i in 0..self.w_dim {
                    let mut w = vec![Rat::zero(); self.w_dim];
                    w[i] = Rat::one();
                    let c = f.contract(&w);
                    if !lower.contains(&c.coeff_vector())? {
                        return fail(format!(
                            "contraction of a level-{} form leaves level {}",
                            k + 1,
                            k
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn subset_iter(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn det_poly(entry: &dyn Fn(usize, usize) -> Poly, rows: &[usize], cols: &[usize], nvars: usize) -> Poly {
    let k = rows.len();
    if k == 0 {
        return Poly::one_poly(nvars);
    }
    // Laplace along the first row
    let mut acc = Poly::zero(nvars);
    for (pos, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_poly(entry, &rows[1..], &sub_cols, nvars);
        let term = &entry(rows[0], c) * &minor;
        if pos % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

fn pfaffian_poly(entry: &dyn Fn(usize, usize) -> Poly, idx: &[usize], nvars: usize) -> Poly {
    if idx.is_empty() {
        return Poly::one_poly(nvars);
    }
    let s0 = idx[0];
    let mut acc = Poly::zero(nvars);
    for l in 1..idx.len() {
        let sl = idx[l];
        let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != s0 && x != sl).collect();
        let term = &entry(s0, sl) * &pfaffian_poly(entry, &rest, nvars);
        if (l - 1) % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Minors of a generic n×n matrix: level k is spanned by the k×k minors.
pub fn minors_symbol_system(n: usize) -> Result<SymbolSystem> {
    if n < 1 {
        return Err(Error::BadDimension { what: "minors size", got: n });
    }
    let w = n * n;
    let entry = move |i: usize, j: usize| Poly::var(w, i * n + j);
    let mut components = Vec::new();
    for k in 0..=n {
        let mut level = Vec::new();
        for rows in subset_iter(n, k) {
            for cols in subset_iter(n, k) {
                level.push(SymForm::from_poly(w, k as u32, det_poly(&entry, &rows, &cols, w)));
            }
        }
        components.push(level);
    }
    let sys = SymbolSystem { name: format!("minors:{n}"), w_dim: w, rank: n, components };
    sys.validate()?;
    Ok(sys)
}

/// Minors of a generic symmetric n×n matrix, one representative per
/// unordered pair of index sets.
pub fn sym_minors_symbol_system(n: usize) -> Result<SymbolSystem> {
    if n < 1 {
        return Err(Error::BadDimension { what: "symmetric minors size", got: n });
    }
    let w = n * (n + 1) / 2;
    let pos = move |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        i * n - i * (i + 1) / 2 + j
    };
    let entry = move |i: usize, j: usize| Poly::var(w, pos(i, j));
    let mut components = Vec::new();
    for k in 0..=n {
        let mut level = Vec::new();
        let subsets = subset_iter(n, k);
        for (a, rows) in subsets.iter().enumerate() {
            for cols in subsets.iter().skip(a) {
                level.push(SymForm::from_poly(w, k as u32, det_poly(&entry, rows, cols, w)));
            }
        }
        components.push(level);
    }
    let sys = SymbolSystem { name: format!("sym_minors:{n}"), w_dim: w, rank: n, components };
    sys.validate()?;
    Ok(sys)
}

/// Sub-Pfaffians of a generic alternating m×m matrix: level k is spanned by
/// the Pfaffians of the principal 2k×2k submatrices.
pub fn pfaffian_symbol_system(m: usize) -> Result<SymbolSystem> {
    if m < 4 {
        return Err(Error::BadDimension { what: "pfaffian size", got: m });
    }
    let w = m * (m - 1) / 2;
    let pos = move |i: usize, j: usize| {
        debug_assert!(i < j);
        i * m - i * (i + 1) / 2 + (j - i - 1)
    };
    let entry = move |i: usize, j: usize| {
        if i < j {
            Poly::var(w, pos(i, j))
        } else {
            -&Poly::var(w, pos(j, i))
        }
    };
    let rank = m / 2;
    let mut components = Vec::new();
    for k in 0..=rank {
        let mut level = Vec::new();
        for idx in subset_iter(m, 2 * k) {
            level.push(SymForm::from_poly(w, k as u32, pfaffian_poly(&entry, &idx, w)));
        }
        components.push(level);
    }
    let sys = SymbolSystem { name: format!("pfaffian:{m}"), w_dim: w, rank, components };
    sys.validate()?;
    Ok(sys)
}

/// The rank-2 system of a smooth quadric: constants, all linear forms, and
/// the single defining quadric shared with the quadric cone chart.
pub fn quadric_symbol_system(n: usize) -> Result<SymbolSystem> {
    if n < 3 {
        return Err(Error::BadDimension { what: "quadric ambient", got: n });
    }
    let q = crate::zoo::defining_quadric_of_quadric_cone(n);
    let components = vec![
        vec![SymForm::constant_one(n)],
        (0..n).map(|i| SymForm::coordinate(n, i)).collect(),
        vec![q],
    ];
    let sys = SymbolSystem { name: format!("quadric:{n}"), w_dim: n, rank: 2, components };
    sys.validate()?;
    Ok(sys)
}

/// The opposite-side data of a tube model: the block-lowering graded piece
/// of the cone's full symmetry algebra, the parametrization of its
/// translations, and a grading-flip group element completing an sl₂ pair.
#[derive(Debug, Clone)]
pub struct OppositeData {
    /// dρ_y(e_b) for each basis direction of W.
    y_basis: Vec<QMatrix>,
    flip: QMatrix,
    flip_inv: QMatrix,
}

/// The dual graded space with its translation operators.
#[derive(Debug)]
pub struct GradedModel {
    pub symbol: SymbolSystem,
    pub v_dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
    /// A rank-1 system embeds as all of ℙ(V₀ ⊕ V₁), a projective space.
    pub projective_space: bool,
    gammas: Vec<QMatrix>,
    tube: bool,
    opposite: std::sync::OnceLock<Result<OppositeData>>,
}

/// Σ Xᵐ/m!, exact for nilpotent X.
fn exp_nilpotent(x: &QMatrix) -> QMatrix {
    let n = x.rows();
    let mut acc = QMatrix::identity(n);
    let mut power = QMatrix::identity(n);
    let mut factorial = Rat::one();
    for m in 1..=n {
        power = power.mul(x);
        if power.is_zero() {
            break;
        }
        factorial *= rat(m as i64);
        acc = acc.add(&power.scale(&factorial.recip()));
    }
    acc
}

fn express_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let cols = basis.len();
    let m = QMatrix::from_fn(dim, cols + 1, |i, j| {
        if j < cols {
            basis[j][i].clone()
        } else {
            target[i].clone()
        }
    });
    let (r, pivots) = m.rref();
    if pivots.contains(&cols) {
        return None; // target outside the span
    }
    let mut coeffs = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = r.get(row, cols).clone();
    }
    Some(coeffs)
}

/// Build the graded model: Γ matrices as duals of the contraction maps.
/// The opposite-side operators of tube models are solved lazily from the
/// cone's full symmetry algebra on first use.
pub fn build_model(symbol: SymbolSystem) -> Result<GradedModel> {
    symbol.validate()?;
    let r = symbol.rank;
    let w = symbol.w_dim;
    let v_dims: Vec<usize> = symbol.dims();
    let total = v_dims.iter().sum();
    let offsets = {
        let mut o = vec![0usize];
        for d in &v_dims[..v_dims.len() - 1] {
            o.push(o.last().unwrap() + d);
        }
        o
    };

    // coefficient vectors per level, reused for the expression solves
    let coeffs: Vec<Vec<Vec<Rat>>> = symbol
        .components
        .iter()
        .map(|level| level.iter().map(SymForm::coeff_vector).collect())
        .collect();

    let mut gammas = Vec::with_capacity(w);
    for i in 0..w {
        let mut ei = vec![Rat::zero(); w];
        ei[i] = Rat::one();
        let mut g = QMatrix::zero(total, total);
        for k in 0..r {
            for (b, f) in symbol.components[k + 1].iter().enumerate() {
                let contracted = f.contract(&ei).coeff_vector();
                let expr = express_in_span(&coeffs[k], &contracted)
                    .ok_or_else(|| Error::InvalidSymbolSystem {
                        reason: format!("contraction escapes level {k}"),
                    })?;
                for (a, c) in expr.iter().enumerate() {
                    if !c.is_zero() {
                        g.set(offsets[k + 1] + b, offsets[k] + a, c.clone());
                    }
                }
            }
        }
        gammas.push(g);
    }

    let tube = v_dims[r] == 1 && v_dims.iter().eq(v_dims.iter().rev());
    Ok(GradedModel {
        projective_space: r == 1,
        symbol,
        v_dims,
        offsets,
        total,
        gammas,
        tube,
        opposite: std::sync::OnceLock::new(),
    })
}

impl GradedModel {
    pub fn rank(&self) -> usize {
        self.symbol.rank
    }

    pub fn w_dim(&self) -> usize {
        self.symbol.w_dim
    }

    pub fn is_tube(&self) -> bool {
        self.tube
    }

    pub fn e0(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.total];
        v[0] = Rat::one();
        v
    }

    /// The distinguished top-level direction (tube models keep it one-
    /// dimensional).
    pub fn e_top(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.total];
        v[self.offsets[self.rank()]] = Rat::one();
        v
    }

    /// e₀ + Σ_k Π_k(u,…,u): the level-k block is the evaluation of the
    /// level-k basis forms at u.
    pub fn embed(&self, u: &[Rat]) -> Vec<Rat> {
        assert_eq!(u.len(), self.w_dim());
        let mut out = Vec::with_capacity(self.total);
        for level in &self.symbol.components {
            for f in level {
                out.push(f.eval(u));
            }
        }
        out
    }

    /// Block of a vector at level k.
    pub fn block<'a>(&self, v: &'a [Rat], k: usize) -> &'a [Rat] {
        &v[self.offsets[k]..self.offsets[k] + self.v_dims[k]]
    }

    /// Γ_u, linear in u.
    pub fn gamma(&self, u: &[Rat]) -> QMatrix {
        assert_eq!(u.len(), self.w_dim());
        let mut g = QMatrix::zero(self.total, self.total);
        for (ui, gi) in u.iter().zip(&self.gammas) {
            if !ui.is_zero() {
                g = g.add(&gi.scale(ui));
            }
        }
        g
    }

    /// Translation representation: ρ_x(u) = Σ_m Γ_u^m · diag(C(k+m, k)).
    pub fn rho_x(&self, u: &[Rat]) -> QMatrix {
        let r = self.rank();
        let g = self.gamma(u);
        let mut acc = QMatrix::zero(self.total, self.total);
        let mut power = QMatrix::identity(self.total);
        for m in 0..=r {
            if m > 0 {
                power = g.mul(&power);
            }
            // scale columns of the power blockwise by C(k+m, k)
            let mut weighted = QMatrix::zero(self.total, self.total);
            for k in 0..=r {
                let b = Rat::from_integer(binomial(k + m, k));
                for col in self.offsets[k]..self.offsets[k] + self.v_dims[k] {
                    for row in 0..self.total {
                        let v = power.get(row, col);
                        if !v.is_zero() {
                            weighted.set(row, col, v * &b);
                        }
                    }
                }
            }
            acc = acc.add(&weighted);
        }
        acc
    }

    /// Formal t-linear coefficient of a matrix polynomial in t, by exact
    /// interpolation at t = 0, 1, …, degree.
    fn linear_coeff(&self, f: impl Fn(Rat) -> QMatrix, degree: usize) -> QMatrix {
        let pts: Vec<Rat> = (0..=degree as i64).map(rat).collect();
        let vand = QMatrix::from_fn(degree + 1, degree + 1, |i, j| {
            let mut acc = Rat::one();
            for _ in 0..j {
                acc *= &pts[i];
            }
            acc
        });
        let inv = vand.inverse().expect("distinct interpolation nodes");
        let mut acc = QMatrix::zero(self.total, self.total);
        for (i, t) in pts.iter().enumerate() {
            let w = inv.get(1, i);
            if !w.is_zero() {
                acc = acc.add(&f(t.clone()).scale(w));
            }
        }
        acc
    }

    /// dρ_x(u), computed independently of the Γ-block formula by
    /// interpolating ρ_x(t·u) in t.
    pub fn d_rho_x(&self, u: &[Rat]) -> QMatrix {
        self.linear_coeff(
            |t| {
                let tu: Vec<Rat> = u.iter().map(|x| x * &t).collect();
                self.rho_x(&tu)
            },
            self.rank(),
        )
    }

    /// The model's own cone as a parametrized variety: (s, u) ↦ s·embed(u).
    pub fn model_variety(&self) -> crate::zoo::ParamVariety {
        let w = self.w_dim();
        let m = w + 1;
        let s = Poly::var(m, 0);
        let subs: Vec<Poly> = (0..w).map(|i| Poly::var(m, 1 + i)).collect();
        let comps: Vec<Poly> = self
            .symbol
            .components
            .iter()
            .flatten()
            .map(|f| &s * &f.poly().substitute(&subs))
            .collect();
        crate::zoo::ParamVariety {
            name: format!("model:{}", self.symbol.name),
            ambient: self.total,
            cone_dim: w + 1,
            phi: PolyMap::new(m, comps),
            quadrics: None,
            expected_dim_aut1: None,
        }
    }

    /// Opposite-side operators, solved once from the full symmetry algebra
    /// of the embedded cone: the block-lowering graded piece supplies the
    /// opposite translations, and an sl₂ completion supplies the grading
    /// flip as an honest group element.
    fn opposite(&self) -> Result<&OppositeData> {
        if !self.tube {
            return Err(Error::NotTubeModel { name: self.symbol.name.clone() });
        }
        self.opposite
            .get_or_init(|| self.solve_opposite())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn solve_opposite(&self) -> Result<OppositeData> {
        let w = self.w_dim();
        let n = self.total;
        let r = self.rank();
        let mv = self.model_variety();
        let g = crate::aut::aut_from_samples(&mv, &crate::aut::EngineCfg::default())?;

        // block-lowering coordinate subspace of End(V)
        let mut lowering_slots = Vec::new();
        for k in 0..r {
            for row in self.offsets[k]..self.offsets[k] + self.v_dims[k] {
                for col in self.offsets[k + 1]..self.offsets[k + 1] + self.v_dims[k + 1] {
                    lowering_slots.push(row * n + col);
                }
            }
        }
        let lowering_span = Subspace::from_vectors(
            n * n,
            lowering_slots
                .iter()
                .map(|&slot| {
                    let mut v = vec![Rat::zero(); n * n];
                    v[slot] = Rat::one();
                    v
                })
                .collect(),
        );
        let g_minus = g.basis.intersect(&lowering_span)?;
        if g_minus.dim() != w {
            return Err(Error::InvalidSymbolSystem {
                reason: format!(
                    "lowering part of the symmetry algebra has dimension {}, expected {}",
                    g_minus.dim(),
                    w
                ),
            });
        }
        let lower_mats: Vec<QMatrix> =
            g_minus.basis().iter().map(|v| QMatrix::from_flat(n, n, v.clone())).collect();
        // parametrize by the V₁ → V₀ block: dρ_y(w) is the element whose
        // top block is the covector w
        let top_block = QMatrix::from_fn(w, lower_mats.len(), |j, m| {
            lower_mats[m].get(0, self.offsets[1] + j).clone()
        });
        let top_inv = top_block.inverse().ok_or_else(|| Error::InvalidSymbolSystem {
            reason: "top block does not parametrize the lowering part".into(),
        })?;
        let mut y_basis = Vec::with_capacity(w);
        for b in 0..w {
            let mut y = QMatrix::zero(n, n);
            for (m, mat) in lower_mats.iter().enumerate() {
                let c = top_inv.get(m, b);
                if !c.is_zero() {
                    y = y.add(&mat.scale(c));
                }
            }
            y_basis.push(y);
        }

        // grading flip exp(E)exp(−F)exp(E) from an sl₂ completion of a
        // generic raising element
        let mut rng = crate::rat::Rng::new(11).derive(&self.symbol.name);
        let mut flip_pair: Option<(QMatrix, QMatrix)> = None;
        for _ in 0..8 {
            let u0 = rng.small_vec(w, 5);
            let e = self.d_rho_x(&u0);
            // F ∈ g₋₁ with [[E, F], E] = 2E
            let images: Vec<Vec<Rat>> = lower_mats
                .iter()
                .map(|f| e.commutator(f).commutator(&e).flatten())
                .collect();
            let target = e.scale(&rat(2)).flatten();
            let Some(coeffs) = express_in_span(&images, &target) else {
                continue;
            };
            let mut f = QMatrix::zero(n, n);
            for (c, mat) in coeffs.iter().zip(&lower_mats) {
                if !c.is_zero() {
                    f = f.add(&mat.scale(c));
                }
            }
            let h = e.commutator(&f);
            if h.commutator(&e) != e.scale(&rat(2)) || h.commutator(&f) != f.scale(&rat(-2)) {
                continue;
            }
            let flip = exp_nilpotent(&e).mul(&exp_nilpotent(&f.scale(&rat(-1)))).mul(&exp_nilpotent(&e));
            let flip_inv = flip.inverse().expect("unipotent product");
            // must exchange the extreme levels
            let fe0 = flip.mul_vec(&self.e0());
            let top_coord = &fe0[self.offsets[r]];
            if top_coord.is_zero() || fe0.iter().enumerate().any(|(i, x)| i != self.offsets[r] && !x.is_zero()) {
                continue;
            }
            flip_pair = Some((flip, flip_inv));
            break;
        }
        let (flip, flip_inv) = flip_pair.ok_or_else(|| Error::InvalidSymbolSystem {
            reason: "no sl2 completion found for the grading flip".into(),
        })?;
        Ok(OppositeData { y_basis, flip, flip_inv })
    }

    /// The grading-flip group element J (and its inverse): conjugation by J
    /// carries the raising translations to the lowering side.
    pub fn grading_flip(&self) -> Result<(&QMatrix, &QMatrix)> {
        let opp = self.opposite()?;
        Ok((&opp.flip, &opp.flip_inv))
    }

    /// dρ_y(w): the block-lowering translation generator with top block w.
    pub fn d_rho_y_direct(&self, w: &[Rat]) -> Result<QMatrix> {
        assert_eq!(w.len(), self.w_dim());
        let opp = self.opposite()?;
        let mut acc = QMatrix::zero(self.total, self.total);
        for (wi, y) in w.iter().zip(&opp.y_basis) {
            if !wi.is_zero() {
                acc = acc.add(&y.scale(wi));
            }
        }
        Ok(acc)
    }

    /// Opposite translation representation ρ_y(w) = exp dρ_y(w).
    pub fn rho_y(&self, w: &[Rat]) -> Result<QMatrix> {
        Ok(exp_nilpotent(&self.d_rho_y_direct(w)?))
    }

    /// dρ_y recovered independently by interpolating ρ_y(t·w) in t.
    pub fn d_rho_y(&self, w: &[Rat]) -> Result<QMatrix> {
        let _ = self.opposite()?;
        Ok(self.linear_coeff(
            |t| {
                let tw: Vec<Rat> = w.iter().map(|x| x * &t).collect();
                self.rho_y(&tw).expect("tube checked")
            },
            self.rank(),
        ))
    }

    /// The opposite-cell embedding ρ_y(w)·e_top; at w = 0 this is the
    /// distinguished sink direction.
    pub fn embed_opposite(&self, w: &[Rat]) -> Result<Vec<Rat>> {
        Ok(self.rho_y(w)?.mul_vec(&self.e_top()))
    }

    /// Recover the chart parameter from a vector with nonzero V₀-block and
    /// test exact membership in the embedded cone.
    pub fn on_embedded_cone(&self, v: &[Rat]) -> bool {
        let v0 = &v[0];
        if v0.is_zero() {
            return false;
        }
        let u: Vec<Rat> = self.block(v, 1).iter().map(|x| x / v0).collect();
        let emb = self.embed(&u);
        emb.iter().zip(v).all(|(a, b)| &(a * v0) == b)
    }
}

/// Base locus of the fundamental forms: the predicate cutting the common
/// zero directions of the lowest level with a nonempty diagonal zero set.
#[derive(Debug, Clone)]
pub struct BaseLocus {
    pub l0: usize,
    pub forms: Vec<SymForm>,
}

impl BaseLocus {
    pub fn contains(&self, w: &[Rat]) -> bool {
        self.forms.iter().all(|f| f.eval(w).is_zero())
    }
}

/// Determine l₀ on a seeded probe set and return the membership predicate.
pub fn base_locus(model: &GradedModel, probes: &[Vec<Rat>]) -> Result<BaseLocus> {
    let sys = &model.symbol;
    for l in 2..=sys.rank {
        let hit = probes
            .iter()
            .any(|w| sys.components[l].iter().all(|f| f.eval(w).is_zero()));
        if hit {
            return Ok(BaseLocus { l0: l, forms: sys.components[l].clone() });
        }
    }
    Err(Error::InvalidSymbolSystem {
        reason: "no probe landed in any diagonal zero set".into(),
    })
}

/// Inclusion of successive base loci, asserted on the probe set.
pub fn base_locus_chain_holds(model: &GradedModel, probes: &[Vec<Rat>]) -> bool {
    let sys = &model.symbol;
    probes.iter().all(|w| {
        let mut inside_prev = false;
        for l in 2..=sys.rank {
            let inside = sys.components[l].iter().all(|f| f.eval(w).is_zero());
            if inside_prev && !inside {
                return false;
            }
            inside_prev = inside;
        }
        true
    })
}

/// The bilinear bracket map out of the opposite side: for each direction w,
/// the symmetric quadratic map (α, ξ) ↦ [[dρ_y(w), dρ_x(α)], dρ_x(ξ)]·e₀
/// read in the level-one block.
#[derive(Debug, Clone)]
pub struct LambdaMap {
    pub maps: Vec<VValuedSymMap>,
    /// Columns are the flattened quadratic maps, one per direction of W.
    pub matrix: QMatrix,
}

impl LambdaMap {
    pub fn image(&self) -> Subspace {
        let rows: Vec<Vec<Rat>> = (0..self.matrix.cols()).map(|j| self.matrix.col(j)).collect();
        Subspace::from_vectors(self.matrix.rows(), rows)
    }

    pub fn injective(&self) -> bool {
        self.matrix.kernel_basis().dim() == 0
    }
}

pub fn lambda_map(model: &GradedModel) -> Result<LambdaMap> {
    let _ = model.opposite()?;
    let w = model.w_dim();
    let basis_vec = |i: usize| {
        let mut v = vec![Rat::zero(); w];
        v[i] = Rat::one();
        v
    };
    let dx: Vec<QMatrix> = (0..w).map(|i| model.d_rho_x(&basis_vec(i))).collect();
    let e0 = model.e0();
    let mut maps = Vec::with_capacity(w);
    for b in 0..w {
        let y = model.d_rho_y_direct(&basis_vec(b))?;
        // values A(e_i, e_j) in the level-one block
        let mut values = vec![vec![Vec::new(); w]; w];
        for i in 0..w {
            let gamma_i = y.commutator(&dx[i]);
            for (j, dxj) in dx.iter().enumerate() {
                let vec = gamma_i.commutator(dxj).mul_vec(&e0);
                // everything lands in level one
                for (k, off) in model.offsets.iter().enumerate() {
                    if k != 1 {
                        for idx in *off..*off + model.v_dims[k] {
                            assert!(vec[idx].is_zero(), "bracket value escapes level one");
                        }
                    }
                }
                values[i][j] = model.block(&vec, 1).to_vec();
            }
        }
        for i in 0..w {
            for j in 0..w {
                assert_eq!(values[i][j], values[j][i], "bracket map must be symmetric");
            }
        }
        let mut comps = Vec::with_capacity(w);
        for a in 0..w {
            let mut poly = Poly::zero(w);
            for i in 0..w {
                for j in i..w {
                    let c = if i == j {
                        values[i][j][a].clone()
                    } else {
                        rat(2) * &values[i][j][a]
                    };
                    let mut e = vec![0u32; w];
                    e[i] += 1;
                    e[j] += 1;
                    poly.add_term(MultiIndex(e), c);
                }
            }
            comps.push(SymForm::from_poly(w, 2, poly));
        }
        maps.push(VValuedSymMap::new(w, 2, comps));
    }
    let flat_len = w * sym_dim(w, 2);
    let matrix = QMatrix::from_fn(flat_len, w, |i, j| maps[j].flatten()[i].clone());
    Ok(LambdaMap { maps, matrix })
}

/// Mixed-bracket fixed-point check: γ = [dρ_x(α), dρ_y(β)] must preserve
/// every level, and its first-order action on the chart parameters must
/// agree with the bracket formula on level one.
pub fn bracket_fixed_check(
    model: &GradedModel,
    pair: (usize, usize),
    w: &[Rat],
) -> Result<bool> {
    let _ = model.opposite()?;
    let wd = model.w_dim();
    let basis_vec = |i: usize| {
        let mut v = vec![Rat::zero(); wd];
        v[i] = Rat::one();
        v
    };
    let x_a = model.d_rho_x(&basis_vec(pair.0));
    let y_b = model.d_rho_y(&basis_vec(pair.1))?;
    let gamma = x_a.commutator(&y_b);
    // block preservation
    for k in 0..=model.rank() {
        for l in 0..=model.rank() {
            if k == l {
                continue;
            }
            for row in model.offsets[k]..model.offsets[k] + model.v_dims[k] {
                for col in model.offsets[l]..model.offsets[l] + model.v_dims[l] {
                    if !gamma.get(row, col).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    let c = gamma.get(0, 0).clone();
    // first-order action on the chart: (γ|_{V₁} − c)·Π₁(w) = [γ, dρ_x(w)]·e₀
    let x_w = model.d_rho_x(w);
    let lhs = {
        let pi1 = x_w.mul_vec(&model.e0());
        let gp = gamma.mul_vec(&pi1);
        gp.iter().zip(&pi1).map(|(a, b)| a - &c * b).collect::<Vec<Rat>>()
    };
    let rhs = gamma.commutator(&x_w).mul_vec(&model.e0());
    Ok(lhs == rhs)
}

/// The conjugated one-parameter family g·diag(t⁰, t⁻¹, …, t⁻ʳ)·g⁻¹ for
/// g = ρ_x(u)ρ_y(w), with its translated extreme fixed directions.
#[derive(Debug, Clone)]
pub struct PairAction {
    pub conj: QMatrix,
    pub conj_inv: QMatrix,
    /// Weight of each level block, level k carrying −k.
    pub weights: Vec<i64>,
    pub source: Vec<Rat>,
    pub sink: Vec<Rat>,
}

impl PairAction {
    /// The family member at a nonzero parameter value, as an exact matrix.
    pub fn family_at(&self, model: &GradedModel, t: &Rat) -> QMatrix {
        assert!(!t.is_zero());
        let mut d = QMatrix::zero(model.total, model.total);
        for k in 0..=model.rank() {
            let mut tw = Rat::one();
            for _ in 0..k {
                tw /= t;
            }
            for i in model.offsets[k]..model.offsets[k] + model.v_dims[k] {
                d.set(i, i, tw.clone());
            }
        }
        self.conj.mul(&d).mul(&self.conj_inv)
    }
}

pub fn pair_action(model: &GradedModel, u: &[Rat], w: &[Rat]) -> Result<PairAction> {
    let _ = model.opposite()?;
    let g = model.rho_x(u).mul(&model.rho_y(w)?);
    let g_inv = g.inverse().expect("products of unipotents are invertible");
    let sink = g.mul_vec(&model.e_top());
    if sink[model.offsets[model.rank()]].is_zero() {
        return Err(Error::DegeneratePair);
    }
    let source = g.mul_vec(&model.e0());
    let weights = (0..=model.rank() as i64).map(|k| -k).collect();
    Ok(PairAction { conj: g, conj_inv: g_inv, weights, source, sink })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{ratio, Rng};

    fn model(sys: SymbolSystem) -> GradedModel {
        build_model(sys).unwrap()
    }

    #[test]
    fn symbol_dimensions() {
        assert_eq!(minors_symbol_system(2).unwrap().dims(), vec![1, 4, 1]);
        assert_eq!(minors_symbol_system(3).unwrap().dims(), vec![1, 9, 9, 1]);
        assert_eq!(sym_minors_symbol_system(2).unwrap().dims(), vec![1, 3, 1]);
        assert_eq!(sym_minors_symbol_system(3).unwrap().dims(), vec![1, 6, 6, 1]);
        assert_eq!(pfaffian_symbol_system(4).unwrap().dims(), vec![1, 6, 1]);
        assert_eq!(pfaffian_symbol_system(6).unwrap().dims(), vec![1, 15, 15, 1]);
        assert_eq!(quadric_symbol_system(4).unwrap().dims(), vec![1, 4, 1]);
        assert!(pfaffian_symbol_system(3).is_err());
        assert!(quadric_symbol_system(2).is_err());
    }

    #[test]
    fn total_model_dimensions() {
        assert_eq!(model(minors_symbol_system(2).unwrap()).total, 6);
        assert_eq!(model(minors_symbol_system(3).unwrap()).total, 20);
        assert_eq!(model(sym_minors_symbol_system(2).unwrap()).total, 5);
        assert_eq!(model(sym_minors_symbol_system(3).unwrap()).total, 14);
        assert_eq!(model(pfaffian_symbol_system(6).unwrap()).total, 32);
    }

    #[test]
    fn embed_values() {
        let m = model(minors_symbol_system(2).unwrap());
        assert_eq!(m.embed(&vec![rat(0); 4]), {
            let mut v = vec![rat(0); 6];
            v[0] = rat(1);
            v
        });
        // identity matrix: constant 1, entries (1,0,0,1), determinant 1
        let id = [rat(1), rat(0), rat(0), rat(1)];
        assert_eq!(m.embed(&id), vec![rat(1), rat(1), rat(0), rat(0), rat(1), rat(1)]);
    }

    #[test]
    fn embed_scales_by_level() {
        let m = model(minors_symbol_system(2).unwrap());
        let mut rng = Rng::new(3);
        let u = rng.small_vec(4, 5);
        let t = rat(3);
        let tu: Vec<Rat> = u.iter().map(|x| x * &t).collect();
        let e = m.embed(&u);
        let et = m.embed(&tu);
        for k in 0..=m.rank() {
            let mut tk = Rat::one();
            for _ in 0..k {
                tk *= &t;
            }
            for (a, b) in m.block(&e, k).iter().zip(m.block(&et, k)) {
                assert_eq!(&(a * &tk), b);
            }
        }
    }

    #[test]
    fn rank_one_system_is_projective_space() {
        let m = model(minors_symbol_system(1).unwrap());
        assert!(m.projective_space);
        assert_eq!(m.total, 2);
    }

    #[test]
    fn gammas_commute_and_are_nilpotent() {
        for sys in [
            minors_symbol_system(2).unwrap(),
            sym_minors_symbol_system(3).unwrap(),
            pfaffian_symbol_system(4).unwrap(),
            quadric_symbol_system(4).unwrap(),
        ] {
            let m = model(sys);
            let mut rng = Rng::new(17);
            let u = rng.small_vec(m.w_dim(), 5);
            let v = rng.small_vec(m.w_dim(), 5);
            let gu = m.gamma(&u);
            let gv = m.gamma(&v);
            assert!(gu.commutator(&gv).is_zero(), "{}", m.symbol.name);
            // Γ_u sends the top level to zero
            let top = m.e_top();
            assert!(gu.mul_vec(&top).iter().all(Rat::is_zero));
            // Γ_u e0 = Π₁(u): the level-one block of the embedding derivative
            let ge0 = gu.mul_vec(&m.e0());
            let emb = m.embed(&u);
            assert_eq!(m.block(&ge0, 1), m.block(&emb, 1));
        }
    }

    #[test]
    fn rho_x_is_a_homomorphism_with_translation_identity() {
        for sys in [
            minors_symbol_system(2).unwrap(),
            minors_symbol_system(3).unwrap(),
            sym_minors_symbol_system(2).unwrap(),
            pfaffian_symbol_system(4).unwrap(),
            quadric_symbol_system(4).unwrap(),
        ] {
            let m = model(sys);
            let mut rng = Rng::new(29);
            assert_eq!(m.rho_x(&vec![rat(0); m.w_dim()]), QMatrix::identity(m.total));
            for _ in 0..20 {
                let u = rng.small_vec(m.w_dim(), 4);
                let v = rng.small_vec(m.w_dim(), 4);
                let sum: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
                assert_eq!(m.rho_x(&u).mul(&m.rho_x(&v)), m.rho_x(&sum), "{}", m.symbol.name);
                assert_eq!(
                    m.rho_x(&v).mul_vec(&m.embed(&u)),
                    m.embed(&sum),
                    "{}",
                    m.symbol.name
                );
            }
        }
    }

    #[test]
    fn d_rho_x_is_k_plus_one_gamma_blockwise() {
        for sys in [
            minors_symbol_system(2).unwrap(),
            sym_minors_symbol_system(3).unwrap(),
            quadric_symbol_system(5).unwrap(),
        ] {
            let m = model(sys);
            let mut rng = Rng::new(31);
            let u = rng.small_vec(m.w_dim(), 5);
            let d = m.d_rho_x(&u);
            let g = m.gamma(&u);
            for k in 0..=m.rank() {
                for col in m.offsets[k]..m.offsets[k] + m.v_dims[k] {
                    for row in 0..m.total {
                        assert_eq!(
                            d.get(row, col).clone(),
                            g.get(row, col) * rat(k as i64 + 1),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rho_y_lowers_and_kills_e0() {
        for sys in [
            minors_symbol_system(2).unwrap(),
            sym_minors_symbol_system(3).unwrap(),
            pfaffian_symbol_system(4).unwrap(),
            quadric_symbol_system(4).unwrap(),
        ] {
            let m = model(sys);
            let mut rng = Rng::new(37);
            let w = rng.small_vec(m.w_dim(), 5);
            let dy = m.d_rho_y(&w).unwrap();
            assert!(dy.mul_vec(&m.e0()).iter().all(Rat::is_zero), "{}", m.symbol.name);
            // block profile: level k+1 maps into level k and nothing else
            for k in 0..=m.rank() {
                for col in m.offsets[k]..m.offsets[k] + m.v_dims[k] {
                    for row in 0..m.total {
                        let in_lower = k > 0
                            && (m.offsets[k - 1]..m.offsets[k - 1] + m.v_dims[k - 1])
                                .contains(&row);
                        if !in_lower {
                            assert!(dy.get(row, col).is_zero());
                        }
                    }
                }
            }
            // opposite-cell origin
            assert_eq!(m.embed_opposite(&vec![rat(0); m.w_dim()]).unwrap(), m.e_top());
        }
    }

    #[test]
    fn rho_y_is_a_homomorphism_on_an_abelian_algebra() {
        let m = model(sym_minors_symbol_system(2).unwrap());
        let mut rng = Rng::new(59);
        for _ in 0..10 {
            let u = rng.small_vec(3, 4);
            let v = rng.small_vec(3, 4);
            let sum: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
            let yu = m.d_rho_y_direct(&u).unwrap();
            let yv = m.d_rho_y_direct(&v).unwrap();
            assert!(yu.commutator(&yv).is_zero());
            assert_eq!(m.rho_y(&u).unwrap().mul(&m.rho_y(&v).unwrap()), m.rho_y(&sum).unwrap());
        }
    }

    #[test]
    fn rho_y_translates_stay_on_the_cone() {
        for sys in [
            minors_symbol_system(2).unwrap(),
            sym_minors_symbol_system(2).unwrap(),
            pfaffian_symbol_system(4).unwrap(),
            quadric_symbol_system(4).unwrap(),
        ] {
            let m = model(sys);
            let mut rng = Rng::new(41);
            for _ in 0..10 {
                let u = rng.small_vec(m.w_dim(), 3);
                let w = rng.small_vec(m.w_dim(), 3);
                let moved = m.rho_y(&w).unwrap().mul_vec(&m.embed(&u));
                if !moved[0].is_zero() {
                    assert!(m.on_embedded_cone(&moved), "{}", m.symbol.name);
                }
            }
        }
    }

    #[test]
    fn grading_flip_reverses_blocks() {
        let m = model(minors_symbol_system(2).unwrap());
        let (j, j_inv) = m.grading_flip().unwrap();
        // e0 is carried to the top direction
        let je0 = j.mul_vec(&m.e0());
        assert!(!je0[m.offsets[2]].is_zero());
        assert!(je0[..m.offsets[2]].iter().all(Rat::is_zero));
        // conjugation by the flip has the lowering block profile
        let mut rng = Rng::new(71);
        let u = rng.small_vec(4, 5);
        let conj = j.mul(&m.rho_x(&u)).mul(j_inv);
        for k in 0..=m.rank() {
            for col in m.offsets[k]..m.offsets[k] + m.v_dims[k] {
                for row in 0..m.total {
                    let level_of_row = (0..=m.rank())
                        .find(|&l| row < m.offsets[l] + m.v_dims[l])
                        .unwrap();
                    if level_of_row > k {
                        assert!(conj.get(row, col).is_zero());
                    }
                }
            }
        }
        let non_tube = model(SymbolSystem {
            name: "free:2".into(),
            w_dim: 2,
            rank: 2,
            components: vec![
                vec![SymForm::constant_one(2)],
                vec![SymForm::coordinate(2, 0), SymForm::coordinate(2, 1)],
                {
                    let xx = &Poly::var(2, 0) * &Poly::var(2, 0);
                    let xy = &Poly::var(2, 0) * &Poly::var(2, 1);
                    let yy = &Poly::var(2, 1) * &Poly::var(2, 1);
                    vec![
                        SymForm::from_poly(2, 2, xx),
                        SymForm::from_poly(2, 2, xy),
                        SymForm::from_poly(2, 2, yy),
                    ]
                },
            ],
        });
        assert!(!non_tube.is_tube());
        assert!(matches!(non_tube.grading_flip(), Err(Error::NotTubeModel { .. })));
        assert!(matches!(non_tube.rho_y(&[rat(1), rat(0)]), Err(Error::NotTubeModel { .. })));
    }

    #[test]
    fn base_locus_of_minors_is_the_rank_one_cone() {
        let m = model(minors_symbol_system(2).unwrap());
        let segre = crate::zoo::make_segre(2, 2).unwrap();
        let mut rng = Rng::new(43);
        let probes: Vec<Vec<Rat>> =
            (0..20).map(|_| segre.sample_point(&mut rng).unwrap().1).collect();
        let bl = base_locus(&m, &probes).unwrap();
        assert_eq!(bl.l0, 2);
        for p in &probes {
            assert!(bl.contains(p));
        }
        assert!(base_locus_chain_holds(&m, &probes));
        let generic = rng.small_vec(4, 7);
        assert!(!bl.contains(&generic));
    }

    #[test]
    fn lambda_on_minors2_matches_the_prolongation_of_the_rank_one_cone() {
        let m = model(minors_symbol_system(2).unwrap());
        let lam = lambda_map(&m).unwrap();
        assert!(lam.injective());
        let img = lam.image();
        assert_eq!(img.dim(), 4);
        let segre = crate::zoo::make_segre(2, 2).unwrap();
        let g = crate::aut::aut_from_samples(&segre, &crate::aut::EngineCfg::default()).unwrap();
        let p = crate::aut::prolong(&g);
        assert_eq!(img, p.canonical);
    }

    #[test]
    fn lambda_on_sym_minors2_matches_the_conic_prolongation() {
        let m = model(sym_minors_symbol_system(2).unwrap());
        let lam = lambda_map(&m).unwrap();
        assert!(lam.injective());
        let img = lam.image();
        assert_eq!(img.dim(), 3);
        let conic = crate::zoo::make_veronese2(2).unwrap();
        let g = crate::aut::aut_from_samples(&conic, &crate::aut::EngineCfg::default()).unwrap();
        let p = crate::aut::prolong(&g);
        assert_eq!(img, p.canonical);
    }

    #[test]
    fn bracket_fixed_checks() {
        let m = model(minors_symbol_system(2).unwrap());
        let mut rng = Rng::new(47);
        let w = rng.small_vec(4, 5);
        for i in 0..4 {
            for j in 0..4 {
                assert!(bracket_fixed_check(&m, (i, j), &w).unwrap());
            }
        }
    }

    #[test]
    fn pair_action_standard_and_translated() {
        let m = model(minors_symbol_system(2).unwrap());
        let zero = vec![rat(0); 4];
        let std_action = pair_action(&m, &zero, &zero).unwrap();
        assert_eq!(std_action.weights, vec![0, -1, -2]);
        assert_eq!(std_action.conj, QMatrix::identity(6));
        assert_eq!(std_action.source, m.e0());
        assert_eq!(std_action.sink, m.e_top());

        let mut rng = Rng::new(53);
        let u = rng.small_vec(4, 3);
        let w = rng.small_vec(4, 3);
        match pair_action(&m, &u, &w) {
            Ok(act) => {
                let t = ratio(3, 2);
                let f = act.family_at(&m, &t);
                // fixed directions with the extreme weights
                assert_eq!(f.mul_vec(&act.source), act.source);
                let scaled: Vec<Rat> = act.sink.iter().map(|x| x / (&t * &t)).collect();
                assert_eq!(f.mul_vec(&act.sink), scaled);
                // conjugated weight spaces: g·V_k scales by t^{-k}
                for k in 0..=m.rank() {
                    for col in m.offsets[k]..m.offsets[k] + m.v_dims[k] {
                        let mut basis = vec![rat(0); m.total];
                        basis[col] = rat(1);
                        let gv = act.conj.mul_vec(&basis);
                        let mut tk = Rat::one();
                        for _ in 0..k {
                            tk /= &t;
                        }
                        let expect: Vec<Rat> = gv.iter().map(|x| x * &tk).collect();
                        assert_eq!(f.mul_vec(&gv), expect);
                    }
                }
                // translated source is the embedded chart point
                assert_eq!(act.source, m.embed(&u));
            }
            Err(Error::DegeneratePair) => panic!("seeded pair should be generic"),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn degenerate_pairs_are_detected() {
        // engineered so that the top component of the moved sink vanishes:
        // on the 2×2 chart this is det-like in (u, w)
        let m = model(minors_symbol_system(2).unwrap());
        let u = vec![rat(1), rat(0), rat(0), rat(0)];
        // search a w with vanishing top block
        let mut found = false;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let w = vec![rat(a), rat(0), rat(0), rat(b)];
                match pair_action(&m, &u, &w) {
                    Err(Error::DegeneratePair) => {
                        found = true;
                    }
                    _ => {}
                }
            }
        }
        assert!(found, "no degenerate pair in the search box");
    }
}
