//! Symmetric multilinear forms, polarization and polynomial parametrizations.
//!
//! A degree-d form is stored by its monomial coefficients in a fixed
//! lexicographic order, so form equality is data equality. The multilinear
//! values are recovered on demand by exact polarization; characteristic zero
//! makes the division by d! harmless.

use crate::error::Error;
use crate::linalg::QMatrix;
use crate::rat::{rat, Rat};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a monomial. The derived ordering on the exponent list
/// is the fixed lexicographic order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }
}

/// All exponent vectors of length `n` and degree `d`, in lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if n == 1 {
            let mut e = prefix.clone();
            e.push(d);
            out.push(MultiIndex(e));
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// dim Sym^d of an n-dimensional space: C(n+d−1, d).
pub fn sym_dim(n: usize, d: u32) -> usize {
    let b = binomial(n + d as usize - 1, d as usize);
    b.try_into().expect("sym_dim fits in usize")
}

/// Minimal ring interface; lets octonion and Jordan arithmetic run over
/// rational numbers and over polynomial coefficients alike. Zero of the
/// right shape is obtained as `x.sub(&x)` so implementors need no nullary
/// constructors (a polynomial ring must carry its variable count).
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_ring_zero(&self) -> bool {
        *self == self.sub(self)
    }
}

impl Ring for Rat {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Sparse multivariate polynomial over ℚ with a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(MultiIndex(vec![0; n]), c);
        }
        p
    }

    pub fn one_poly(n: usize) -> Self {
        Poly::constant(n, Rat::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut p = Poly::zero(n);
        p.terms.insert(MultiIndex::unit(n, i), Rat::one());
        p
    }

    pub fn monomial(n: usize, idx: MultiIndex, c: Rat) -> Self {
        assert_eq!(idx.0.len(), n);
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(idx, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn eval(&self, args: &[Rat]) -> Rat {
        assert_eq!(args.len(), self.n);
        let mut acc = Rat::zero();
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (a, &e) in args.iter().zip(&idx.0) {
                for _ in 0..e {
                    t *= a;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (idx, c) in &self.terms {
            if idx.0[i] == 0 {
                continue;
            }
            let mut e = idx.0.clone();
            let k = e[i];
            e[i] -= 1;
            out.add_term(MultiIndex(e), c * rat(k as i64));
        }
        out
    }

    /// Substitute polynomials for the variables (polynomial composition).
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.n);
        let m = subs.first().map_or(0, Poly::nvars);
        let mut acc = Poly::zero(m);
        for (idx, c) in &self.terms {
            let mut term = Poly::constant(m, c.clone());
            for (s, &e) in subs.iter().zip(&idx.0) {
                for _ in 0..e {
                    term = &term * s;
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = Poly::zero(self.n);
        for (i1, c1) in &self.terms {
            for (i2, c2) in &other.terms {
                let e: Vec<u32> = i1.0.iter().zip(&i2.0).map(|(a, b)| a + b).collect();
                out.add_term(MultiIndex(e), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl Ring for Poly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_ring_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Homogeneous symmetric form of a fixed degree: an element of Sym^d(ℚ^n)^*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm {
    n: usize,
    d: u32,
    poly: Poly,
}

impl SymForm {
    pub fn zero(n: usize, d: u32) -> Self {
        SymForm { n, d, poly: Poly::zero(n) }
    }

    pub fn constant_one(n: usize) -> Self {
        SymForm { n, d: 0, poly: Poly::one_poly(n) }
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        SymForm { n, d: 1, poly: Poly::var(n, i) }
    }

    /// Wrap a polynomial that must be homogeneous of degree `d`.
    pub fn from_poly(n: usize, d: u32, poly: Poly) -> Self {
        assert_eq!(poly.nvars(), n);
        assert!(poly.terms().all(|(idx, _)| idx.degree() == d), "inhomogeneous polynomial");
        SymForm { n, d, poly }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_ring_zero()
    }

    pub fn eval(&self, v: &[Rat]) -> Rat {
        self.poly.eval(v)
    }

    pub fn add(&self, other: &SymForm) -> SymForm {
        assert_eq!((self.n, self.d), (other.n, other.d));
        SymForm { n: self.n, d: self.d, poly: &self.poly + &other.poly }
    }

    pub fn scale(&self, c: &Rat) -> SymForm {
        SymForm { n: self.n, d: self.d, poly: self.poly.scale(c) }
    }

    /// The symmetric multilinear value P_f(v₁,…,v_d) recovered by
    /// inclusion–exclusion over argument subsets, divided by d!.
    pub fn polarize_eval(&self, args: &[Vec<Rat>]) -> Result<Rat> {
        if args.len() != self.d as usize {
            return Err(Error::DimensionMismatch { expected: self.d as usize, got: args.len() });
        }
        for a in args {
            if a.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: a.len() });
            }
        }
        let d = self.d as usize;
        if d == 0 {
            return Ok(self.poly.coeff(&MultiIndex(vec![0; self.n])));
        }
        let mut acc = Rat::zero();
        for mask in 1u32..(1 << d) {
            let mut v = vec![Rat::zero(); self.n];
            for (i, a) in args.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(a) {
                        *x += y;
                    }
                }
            }
            let sign = if (d - mask.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
            acc += self.eval(&v) * rat(sign);
        }
        let mut dfact = BigInt::one();
        for k in 2..=d {
            dfact *= BigInt::from(k);
        }
        Ok(acc / Rat::from_integer(dfact))
    }

    /// Polarized value on standard basis vectors given by an exponent vector;
    /// a scaled coefficient lookup.
    pub fn polarize_eval_basis(&self, idx: &MultiIndex) -> Rat {
        debug_assert_eq!(idx.degree(), self.d);
        let c = self.poly.coeff(idx);
        if c.is_zero() {
            return c;
        }
        let mut num = BigInt::one();
        for &e in &idx.0 {
            for k in 2..=e {
                num *= BigInt::from(k);
            }
        }
        let mut den = BigInt::one();
        for k in 2..=self.d {
            den *= BigInt::from(k);
        }
        c * Rat::new(num, den)
    }

    /// Contraction ι_w: the degree-(d−1) form whose polarization fixes the
    /// first slot at `w`. Degree-0 forms contract to zero by convention.
    pub fn contract(&self, w: &[Rat]) -> SymForm {
        assert_eq!(w.len(), self.n);
        if self.d == 0 {
            return SymForm::zero(self.n, 0);
        }
        let mut acc = Poly::zero(self.n);
        for (i, wi) in w.iter().enumerate() {
            if !wi.is_zero() {
                acc = &acc + &self.poly.partial(i).scale(wi);
            }
        }
        let scaled = acc.scale(&Rat::new(BigInt::one(), BigInt::from(self.d)));
        SymForm { n: self.n, d: self.d - 1, poly: scaled }
    }

    /// Dense coefficient vector over the lexicographic monomial list of this
    /// degree. Canonical encoding for subspace work on spaces of forms.
    pub fn coeff_vector(&self) -> Vec<Rat> {
        monomials(self.n, self.d).iter().map(|m| self.poly.coeff(m)).collect()
    }

    pub fn from_coeff_vector(n: usize, d: u32, coeffs: &[Rat]) -> SymForm {
        let mons = monomials(n, d);
        assert_eq!(coeffs.len(), mons.len());
        let mut poly = Poly::zero(n);
        for (m, c) in mons.into_iter().zip(coeffs) {
            poly.add_term(m, c.clone());
        }
        SymForm { n, d, poly }
    }

    /// Gram matrix of a quadratic form: f(v) = vᵀ S v with S symmetric.
    pub fn gram(&self) -> QMatrix {
        assert_eq!(self.d, 2, "gram is only defined for quadrics");
        let mut s = QMatrix::zero(self.n, self.n);
        for (idx, c) in self.poly.terms() {
            let support: Vec<usize> =
                idx.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect();
            match support.as_slice() {
                [i] => s.set(*i, *i, c.clone()),
                [i, j] => {
                    let half = c / rat(2);
                    s.set(*i, *j, half.clone());
                    s.set(*j, *i, half);
                }
                _ => unreachable!(),
            }
        }
        s
    }
}

/// Symmetric map Sym^d(ℚ^n) → ℚ^N stored as one form per output coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VValuedSymMap {
    n: usize,
    d: u32,
    comps: Vec<SymForm>,
}

impl VValuedSymMap {
    pub fn new(n: usize, d: u32, comps: Vec<SymForm>) -> Self {
        assert!(comps.iter().all(|f| f.nvars() == n && f.degree() == d));
        VValuedSymMap { n, d, comps }
    }

    pub fn input_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn output_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[SymForm] {
        &self.comps
    }

    /// A(v, …, v): the diagonal evaluation.
    pub fn eval_diag(&self, v: &[Rat]) -> Vec<Rat> {
        self.comps.iter().map(|f| f.eval(v)).collect()
    }

    pub fn polarize_eval(&self, args: &[Vec<Rat>]) -> Result<Vec<Rat>> {
        self.comps.iter().map(|f| f.polarize_eval(args)).collect()
    }

    /// The slice endomorphism v ↦ A(v, e_{i}, …) as a matrix, for degree 2.
    pub fn slice_matrix(&self, i: usize) -> QMatrix {
        assert_eq!(self.d, 2);
        QMatrix::from_fn(self.output_dim(), self.n, |a, j| {
            let mut idx = vec![0u32; self.n];
            idx[i] += 1;
            idx[j] += 1;
            self.comps[a].polarize_eval_basis(&MultiIndex(idx))
        })
    }

    /// Canonical flattening: output coordinates × lex monomial coefficients.
    pub fn flatten(&self) -> Vec<Rat> {
        self.comps.iter().flat_map(|f| f.coeff_vector()).collect()
    }

    pub fn from_flat(n: usize, d: u32, out_dim: usize, flat: &[Rat]) -> Self {
        let stride = sym_dim(n, d);
        assert_eq!(flat.len(), out_dim * stride);
        let comps = (0..out_dim)
            .map(|a| SymForm::from_coeff_vector(n, d, &flat[a * stride..(a + 1) * stride]))
            .collect();
        VValuedSymMap::new(n, d, comps)
    }
}

/// Polynomial map ℚ^m → ℚ^N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    m: usize,
    comps: Vec<Poly>,
}

impl PolyMap {
    pub fn new(m: usize, comps: Vec<Poly>) -> Self {
        assert!(comps.iter().all(|p| p.nvars() == m));
        PolyMap { m, comps }
    }

    pub fn params(&self) -> usize {
        self.m
    }

    pub fn output_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn eval(&self, t: &[Rat]) -> Vec<Rat> {
        assert_eq!(t.len(), self.m);
        self.comps.iter().map(|p| p.eval(t)).collect()
    }

    /// N×m matrix of partial derivatives at `t`.
    pub fn jacobian(&self, t: &[Rat]) -> QMatrix {
        assert_eq!(t.len(), self.m);
        QMatrix::from_fn(self.comps.len(), self.m, |i, j| self.comps[i].partial(j).eval(t))
    }

    /// Compose with a linear map on the target given by rows.
    pub fn compose_linear(&self, rows: &[Vec<Rat>]) -> PolyMap {
        let comps = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), self.comps.len());
                let mut acc = Poly::zero(self.m);
                for (c, p) in row.iter().zip(&self.comps) {
                    if !c.is_zero() {
                        acc = &acc + &p.scale(c);
                    }
                }
                acc
            })
            .collect();
        PolyMap::new(self.m, comps)
    }
}

/// Free-standing form of the Jacobian, evaluated at a parameter point.
pub fn jacobian(phi: &PolyMap, t: &[Rat]) -> QMatrix {
    phi.jacobian(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{ratio, Rng};
    use crate::Error;

    fn sf(n: usize, d: u32, terms: &[(&[u32], Rat)]) -> SymForm {
        let mut p = Poly::zero(n);
        for (e, c) in terms {
            p.add_term(MultiIndex(e.to_vec()), c.clone());
        }
        SymForm::from_poly(n, d, p)
    }

    fn e(n: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    #[test]
    fn polarize_xy_on_basis_pair() {
        let f = sf(2, 2, &[(&[1, 1], rat(1))]);
        assert_eq!(f.polarize_eval(&[e(2, 0), e(2, 1)]).unwrap(), ratio(1, 2));
    }

    #[test]
    fn polarize_x_squared_diagonal() {
        let f = sf(2, 2, &[(&[2, 0], rat(1))]);
        assert_eq!(f.polarize_eval(&[e(2, 0), e(2, 0)]).unwrap(), rat(1));
    }

    #[test]
    fn polarize_x2y_mixed() {
        let f = sf(2, 3, &[(&[2, 1], rat(1))]);
        assert_eq!(f.polarize_eval(&[e(2, 0), e(2, 0), e(2, 1)]).unwrap(), ratio(1, 3));
        assert_eq!(
            f.polarize_eval_basis(&MultiIndex(vec![2, 1])),
            ratio(1, 3)
        );
    }

    #[test]
    fn polarize_dimension_mismatch() {
        let f = sf(2, 2, &[(&[1, 1], rat(1))]);
        assert!(matches!(f.polarize_eval(&[e(2, 0)]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            f.polarize_eval(&[e(3, 0), e(3, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn polarization_is_symmetric_and_diagonal_consistent() {
        let mut rng = Rng::new(11);
        for _ in 0..100 {
            let n = rng.int_in(1, 3) as usize;
            let d = rng.int_in(1, 3) as u32;
            let mut p = Poly::zero(n);
            for m in monomials(n, d) {
                p.add_term(m, rng.small_rat(4));
            }
            let f = SymForm::from_poly(n, d, p);
            let v = rng.small_vec(n, 5);
            let diag = vec![v.clone(); d as usize];
            assert_eq!(f.polarize_eval(&diag).unwrap(), f.eval(&v));
            if d >= 2 {
                let args: Vec<Vec<Rat>> = (0..d).map(|_| rng.small_vec(n, 5)).collect();
                let mut swapped = args.clone();
                swapped.swap(0, (d - 1) as usize);
                assert_eq!(
                    f.polarize_eval(&args).unwrap(),
                    f.polarize_eval(&swapped).unwrap()
                );
            }
        }
    }

    #[test]
    fn contract_x_squared_gives_x() {
        let f = sf(2, 2, &[(&[2, 0], rat(1))]);
        let g = f.contract(&e(2, 0));
        assert_eq!(g, sf(2, 1, &[(&[1, 0], rat(1))]));
    }

    #[test]
    fn contract_degree_zero_is_zero() {
        let f = SymForm::constant_one(3);
        assert!(f.contract(&e(3, 1)).is_zero());
    }

    #[test]
    fn contract_det2_at_e11() {
        // det of a generic 2×2 matrix in variables (x11, x12, x21, x22)
        let det = sf(4, 2, &[(&[1, 0, 0, 1], rat(1)), (&[0, 1, 1, 0], rat(-1))]);
        let g = det.contract(&e(4, 0));
        assert_eq!(g, sf(4, 1, &[(&[0, 0, 0, 1], ratio(1, 2))]));
    }

    #[test]
    fn contractions_commute_and_are_linear() {
        let mut rng = Rng::new(23);
        for _ in 0..40 {
            let n = rng.int_in(2, 4) as usize;
            let d = rng.int_in(2, 4) as u32;
            let mut p = Poly::zero(n);
            for m in monomials(n, d) {
                p.add_term(m, rng.small_rat(4));
            }
            let f = SymForm::from_poly(n, d, p);
            let u = rng.small_vec(n, 5);
            let w = rng.small_vec(n, 5);
            assert_eq!(f.contract(&u).contract(&w), f.contract(&w).contract(&u));
            let sum: Vec<Rat> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
            assert_eq!(f.contract(&sum), f.contract(&u).add(&f.contract(&w)));
        }
    }

    #[test]
    fn jacobian_of_u_u_squared() {
        let phi = PolyMap::new(
            1,
            vec![Poly::var(1, 0), &Poly::var(1, 0) * &Poly::var(1, 0)],
        );
        let j = jacobian(&phi, &[rat(3)]);
        assert_eq!(j.col(0), vec![rat(1), rat(6)]);
    }

    #[test]
    fn jacobian_of_linear_map_is_constant() {
        let phi = PolyMap::new(
            2,
            vec![
                &Poly::var(2, 0).scale(&rat(2)) + &Poly::var(2, 1).scale(&rat(-1)),
                Poly::var(2, 1),
            ],
        );
        let j0 = jacobian(&phi, &[rat(0), rat(0)]);
        let j1 = jacobian(&phi, &[rat(5), rat(-7)]);
        assert_eq!(j0, j1);
        assert_eq!(*j0.get(0, 0), rat(2));
        assert_eq!(*j0.get(0, 1), rat(-1));
    }

    #[test]
    fn sym_dim_values() {
        assert_eq!(sym_dim(3, 2), 6);
        assert_eq!(sym_dim(5, 0), 1);
        assert_eq!(sym_dim(4, 3), 20);
    }

    #[test]
    fn monomial_order_is_lexicographic() {
        let ms = monomials(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], MultiIndex(vec![2, 0, 0]));
        assert_eq!(ms[1], MultiIndex(vec![1, 1, 0]));
        assert_eq!(ms[5], MultiIndex(vec![0, 0, 2]));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn substitute_composes() {
        // f(x, y) = x y restricted along x = t², y = t + 1
        let f = &Poly::var(2, 0) * &Poly::var(2, 1);
        let t2 = &Poly::var(1, 0) * &Poly::var(1, 0);
        let t1 = &Poly::var(1, 0) + &Poly::one_poly(1);
        let g = f.substitute(&[t2, t1]);
        assert_eq!(g.eval(&[rat(2)]), rat(12));
    }

    #[test]
    fn gram_matrix_roundtrip() {
        let q = sf(3, 2, &[(&[2, 0, 0], rat(3)), (&[1, 1, 0], rat(4)), (&[0, 0, 2], rat(-1))]);
        let s = q.gram();
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            let v = rng.small_vec(3, 6);
            let sv = s.mul_vec(&v);
            let quad: Rat = v.iter().zip(&sv).map(|(a, b)| a * b).sum();
            assert_eq!(quad, q.eval(&v));
        }
    }
}
