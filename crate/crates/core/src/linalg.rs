//! Dense exact linear algebra over ℚ and over prime fields.
//!
//! All subspaces are kept in reduced row echelon form, so subspace equality
//! is plain data comparison. This matters downstream: the automorphism engine
//! compares spaces produced by two independent computations.

use crate::error::Error;
use crate::rat::{inv_mod, primitive_scale, rat, Rat};
use crate::Result;
use num_traits::{One, Zero};

/// Dense matrix over ℚ, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        QMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Row-major flattening, the canonical encoding of an endomorphism as an
    /// ambient vector of length rows×cols.
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, data }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel of the matrix as a canonical subspace of ℚ^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut vecs = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.cols, vecs)
    }

    /// Rank after reduction mod `p`. Fails with `BadPrime` if any entry's
    /// denominator vanishes mod `p`.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize> {
        Ok(ModMatrix::from_q(self, p)?.rank())
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }
}

fn reduce_against(basis: &[Vec<Rat>], pivots: &[usize], v: &mut [Rat]) {
    for (b, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
}

/// Linear subspace of ℚ^ambient held as its unique reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, QMatrix::identity(ambient).row_vecs())
    }

    pub fn from_vectors(ambient: usize, vecs: Vec<Vec<Rat>>) -> Self {
        for v in &vecs {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = QMatrix::from_rows(vecs);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after reduction by the echelon basis; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut w = v.to_vec();
        reduce_against(&self.basis, &self.pivots, &mut w);
        w
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        Ok(self.reduce(v).iter().all(Rat::is_zero))
    }

    pub fn contains_space(&self, other: &Subspace) -> Result<bool> {
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.ambient, vecs))
    }

    /// Intersection via the kernel of the stacked coefficient matrix: a
    /// vector Σxᵢaᵢ = Σyⱼbⱼ common to both spans corresponds to a kernel
    /// element of [Aᵀ | −Bᵀ].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        let da = self.dim();
        let db = other.dim();
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let m = QMatrix::from_fn(self.ambient, da + db, |i, j| {
            if j < da {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - da][i].clone()
            }
        });
        let ker = m.kernel_basis();
        let vecs = ker
            .basis()
            .iter()
            .map(|k| {
                let mut v = vec![Rat::zero(); self.ambient];
                for (j, b) in self.basis.iter().enumerate() {
                    if !k[j].is_zero() {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &k[j] * y;
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_vectors(self.ambient, vecs))
    }

    /// The space of covectors vanishing on this subspace, i.e. the kernel of
    /// the basis-as-rows matrix.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        QMatrix::from_rows(self.basis.clone()).kernel_basis()
    }
}

/// Dense matrix over 𝔽_p.
#[derive(Debug, Clone)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

pub fn rat_mod_p(x: &Rat, p: u64) -> Result<u64> {
    let pb = num_bigint::BigInt::from(p);
    let den = (x.denom() % &pb + &pb) % &pb;
    let den: u64 = den.try_into().unwrap();
    if den == 0 {
        return Err(Error::BadPrime { prime: p });
    }
    let num = (x.numer() % &pb + &pb) % &pb;
    let num: u64 = num.try_into().unwrap();
    Ok(crate::rat::mul_mod(num, inv_mod(den, p), p))
}

impl ModMatrix {
    pub fn from_q(m: &QMatrix, p: u64) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for x in &m.data {
            data.push(rat_mod_p(x, p)?);
        }
        Ok(ModMatrix { p, rows: m.rows, cols: m.cols, data })
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * self.cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.data[r * self.cols + c], p);
            for j in c..self.cols {
                self.data[r * self.cols + j] =
                    crate::rat::mul_mod(self.data[r * self.cols + j], inv, p);
            }
            for i in 0..self.rows {
                let f = self.data[i * self.cols + c];
                if i != r && f != 0 {
                    for j in c..self.cols {
                        let sub = crate::rat::mul_mod(f, self.data[r * self.cols + j], p);
                        let v = self.data[i * self.cols + j];
                        self.data[i * self.cols + j] = (v + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

/// A field the elimination routines can run over: either ℚ itself or 𝔽_p.
pub trait Field: Clone {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add_mul(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El);
    fn sub_mul(&self, acc: &mut Self::El, a: &Self::El, b: &Self::El);
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn from_rat(&self, r: &Rat) -> Result<Self::El>;
    fn normalize(&self, _v: &mut [Self::El]) {}
    /// Pivot preference; exact eliminations pick the smallest entry to keep
    /// integer growth down.
    fn pivot_weight(&self, _a: &Self::El) -> u64 {
        0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QField;

impl Field for QField {
    type El = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add_mul(&self, acc: &mut Rat, a: &Rat, b: &Rat) {
        *acc += a * b;
    }
    fn sub_mul(&self, acc: &mut Rat, a: &Rat, b: &Rat) {
        *acc -= a * b;
    }
    fn div(&self, a: &Rat, b: &Rat) -> Rat {
        a / b
    }
    fn from_rat(&self, r: &Rat) -> Result<Rat> {
        Ok(r.clone())
    }
    fn normalize(&self, v: &mut [Rat]) {
        primitive_scale(v);
    }
    fn pivot_weight(&self, a: &Rat) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PField {
    pub p: u64,
}

impl Field for PField {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add_mul(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = (*acc + crate::rat::mul_mod(*a, *b, self.p)) % self.p;
    }
    fn sub_mul(&self, acc: &mut u64, a: &u64, b: &u64) {
        let m = crate::rat::mul_mod(*a, *b, self.p);
        *acc = (*acc + self.p - m) % self.p;
    }
    fn div(&self, a: &u64, b: &u64) -> u64 {
        crate::rat::mul_mod(*a, inv_mod(*b, self.p), self.p)
    }
    fn from_rat(&self, r: &Rat) -> Result<u64> {
        rat_mod_p(r, self.p)
    }
}

/// Incrementally maintained kernel of a growing constraint system.
///
/// Starts from a spanning set (usually the full space) and shrinks it one
/// elimination per informative constraint row. Much cheaper than re-running
/// a full echelon pass per batch when most rows are redundant.
#[derive(Debug, Clone)]
pub struct KernelAccum<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::El>>,
}

impl<F: Field> KernelAccum<F> {
    pub fn full(field: F, ambient: usize) -> Self {
        let mut basis = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = one_of(&field);
            basis.push(v);
        }
        KernelAccum { field, ambient, basis }
    }

    pub fn from_vectors(field: F, ambient: usize, vecs: Vec<Vec<F::El>>) -> Self {
        for v in &vecs {
            assert_eq!(v.len(), ambient);
        }
        KernelAccum { field, ambient, basis: vecs }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::El>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<F::El>> {
        self.basis
    }

    /// Impose one linear constraint given as a sparse covector. Returns true
    /// when the kernel dimension dropped. The pivot is the smallest-weight
    /// nonzero coefficient, which keeps exact integer entries from blowing
    /// up over long elimination runs.
    pub fn feed_sparse(&mut self, row: &[(usize, F::El)]) -> bool {
        let f = self.field.clone();
        let mut coeffs: Vec<F::El> = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let mut acc = f.zero();
            for (j, val) in row {
                f.add_mul(&mut acc, val, &b[*j]);
            }
            coeffs.push(acc);
        }
        let piv = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .min_by_key(|(_, c)| f.pivot_weight(c))
            .map(|(i, _)| i);
        let Some(piv) = piv else {
            return false;
        };
        let pivot_vec = self.basis.remove(piv);
        let pivot_coeff = coeffs.remove(piv);
        for (b, c) in self.basis.iter_mut().zip(&coeffs) {
            if !f.is_zero(c) {
                let factor = f.div(c, &pivot_coeff);
                for (x, y) in b.iter_mut().zip(&pivot_vec) {
                    f.sub_mul(x, &factor, y);
                }
                f.normalize(b);
            }
        }
        true
    }

    /// Feed a rational constraint row, rescaled to a primitive integer
    /// covector first; unit rescaling never changes the kernel and keeps
    /// both the exact and the prime-field paths well conditioned.
    pub fn feed_rat_sparse(&mut self, row: &[(usize, Rat)]) -> Result<bool> {
        let mut vals: Vec<Rat> = row.iter().map(|(_, v)| v.clone()).collect();
        primitive_scale(&mut vals);
        let conv: Vec<(usize, F::El)> = row
            .iter()
            .zip(vals)
            .map(|((j, _), v)| Ok((*j, self.field.from_rat(&v)?)))
            .collect::<Result<_>>()?;
        Ok(self.feed_sparse(&conv))
    }
}

fn one_of<F: Field>(f: &F) -> F::El {
    f.from_rat(&rat(1)).expect("1 reduces in every field")
}

impl KernelAccum<QField> {
    /// Canonical form of the accumulated kernel.
    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_vectors(self.ambient, self.basis.clone())
    }
}

/// Rational reconstruction (Wang): the unique n/d with n ≡ r·d (mod m),
/// |n| ≤ B and 0 < d ≤ B for B = ⌊√(m/2)⌋, if one exists.
pub fn rational_reconstruct(r: &num_bigint::BigInt, m: &num_bigint::BigInt) -> Option<Rat> {
    use num_bigint::BigInt;
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), ((r % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (num, den) = if t1 < BigInt::zero() { (-r1, -t1) } else { (r1, t1) };
    if den > bound || den.is_zero() {
        return None;
    }
    if num_integer::gcd(num.clone(), den.clone()) != BigInt::one() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Canonical kernel basis mod p of a sparse rational constraint system.
/// Returns the reduced echelon basis vectors (rows) over 𝔽_p.
fn kernel_mod_p(ambient: usize, rows: &[Vec<(usize, Rat)>], p: u64) -> Result<Vec<Vec<u64>>> {
    let mut acc = KernelAccum::full(PField { p }, ambient);
    for row in rows {
        acc.feed_rat_sparse(row)?;
    }
    let basis = acc.into_basis();
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut m = ModMatrix {
        p,
        rows: basis.len(),
        cols: ambient,
        data: basis.into_iter().flatten().collect(),
    };
    let pivots = m.rref_in_place();
    Ok((0..pivots.len()).map(|i| m.data[i * ambient..(i + 1) * ambient].to_vec()).collect())
}

/// Exact kernel of a sparse rational constraint system, computed through
/// prime fields with rational reconstruction and certified rigorously:
/// every returned vector is checked against every original row, and the
/// prime-field rank bounds the kernel dimension from above.
pub fn certified_kernel(
    ambient: usize,
    rows: &[Vec<(usize, Rat)>],
    primes: &[u64],
) -> Result<Subspace> {
    use num_bigint::BigInt;
    // normalized copies so each row is a primitive integer covector
    let rows: Vec<Vec<(usize, Rat)>> = rows
        .iter()
        .map(|row| {
            let mut vals: Vec<Rat> = row.iter().map(|(_, v)| v.clone()).collect();
            primitive_scale(&mut vals);
            row.iter().zip(vals).map(|((j, _), v)| (*j, v)).collect()
        })
        .collect();
    let mut prime_stream = primes.iter().copied().chain(extra_primes());
    let mut used: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut best_dim = usize::MAX;
    for _ in 0..12 {
        let p = prime_stream.next().expect("prime stream is infinite");
        let img = match kernel_mod_p(ambient, &rows, p) {
            Ok(img) => img,
            Err(Error::BadPrime { .. }) => continue,
            Err(e) => return Err(e),
        };
        match img.len().cmp(&best_dim) {
            std::cmp::Ordering::Less => {
                best_dim = img.len();
                used = vec![p];
                images = vec![img];
            }
            std::cmp::Ordering::Equal => {
                used.push(p);
                images.push(img);
            }
            std::cmp::Ordering::Greater => continue,
        }
        // combine residues and attempt reconstruction
        let dim = best_dim;
        if dim == 0 {
            return Ok(Subspace::zero(ambient));
        }
        let mut modulus = BigInt::one();
        for q in &used {
            modulus *= BigInt::from(*q);
        }
        let mut candidate: Vec<Vec<Rat>> = Vec::with_capacity(dim);
        let mut ok = true;
        'rec: for i in 0..dim {
            let mut v = Vec::with_capacity(ambient);
            for j in 0..ambient {
                let mut residue = BigInt::zero();
                let mut m_acc = BigInt::one();
                for (q, img) in used.iter().zip(&images) {
                    let qb = BigInt::from(*q);
                    // incremental CRT
                    let cur = BigInt::from(img[i][j]);
                    let diff = ((&cur - &residue) % &qb + &qb) % &qb;
                    let m_inv = mod_inverse(&m_acc, &qb);
                    residue += &m_acc * ((diff * m_inv) % &qb);
                    m_acc *= qb;
                }
                match rational_reconstruct(&residue, &modulus) {
                    Some(x) => v.push(x),
                    None => {
                        ok = false;
                        break 'rec;
                    }
                }
            }
            candidate.push(v);
        }
        if !ok {
            continue;
        }
        // soundness: every row annihilates the candidate exactly
        let verified = candidate.iter().all(|v| {
            rows.iter().all(|row| {
                let mut acc = Rat::zero();
                for (j, c) in row {
                    if !v[*j].is_zero() {
                        acc += c * &v[*j];
                    }
                }
                acc.is_zero()
            })
        });
        if !verified {
            continue;
        }
        // completeness: the prime-field rank already bounds dim ker ≤ dim
        let space = Subspace::from_vectors(ambient, candidate);
        if space.dim() == dim {
            return Ok(space);
        }
    }
    Err(Error::PrimeDisagreement {
        p1: used.first().copied().unwrap_or(0),
        p2: used.last().copied().unwrap_or(0),
        d1: best_dim,
        d2: 0,
    })
}

fn mod_inverse(a: &num_bigint::BigInt, m: &num_bigint::BigInt) -> num_bigint::BigInt {
    let a = ((a % m) + m) % m;
    let e = num_integer::Integer::extended_gcd(&a, m);
    ((e.x % m) + m) % m
}

/// Seeded 30-bit primes beyond the two fixed ones.
fn extra_primes() -> impl Iterator<Item = u64> {
    let mut rng = crate::rat::Rng::new(0x9e3779b97f4a7c15);
    std::iter::from_fn(move || {
        loop {
            let cand = (rng.next_u64() % (1 << 30)) | (1 << 29) | 1;
            if crate::rat::is_prime(cand) && !crate::rat::FAST_PRIMES.contains(&cand) {
                return Some(cand);
            }
        }
    })
}
