//! Split octonions in the Zorn vector-matrix model, and Hermitian 3×3
//! matrices over them.
//!
//! A Zorn element is a pair of scalars and a pair of 3-vectors,
//!
//! ```text
//!     [ a   x ]
//!     [ y   b ]
//! ```
//!
//! multiplied with the dot- and cross-product twisted rule. The norm
//! N(z) = z·z̄ = ab − x·y is the split quadratic form and is multiplicative.
//! Arithmetic is generic over the coefficient ring so the same code runs over
//! ℚ and over polynomial rings (for identity checking on symbolic
//! parameters).

use crate::tensors::Ring;

#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<T: Ring> {
    pub a: T,
    pub x: [T; 3],
    pub y: [T; 3],
    pub b: T,
}

fn dot<T: Ring>(u: &[T; 3], v: &[T; 3]) -> T {
    let mut acc = u[0].mul(&v[0]);
    acc = acc.add(&u[1].mul(&v[1]));
    acc.add(&u[2].mul(&v[2]))
}

fn cross<T: Ring>(u: &[T; 3], v: &[T; 3]) -> [T; 3] {
    [
        u[1].mul(&v[2]).sub(&u[2].mul(&v[1])),
        u[2].mul(&v[0]).sub(&u[0].mul(&v[2])),
        u[0].mul(&v[1]).sub(&u[1].mul(&v[0])),
    ]
}

fn vadd<T: Ring>(u: &[T; 3], v: &[T; 3]) -> [T; 3] {
    [u[0].add(&v[0]), u[1].add(&v[1]), u[2].add(&v[2])]
}

fn vscale<T: Ring>(c: &T, v: &[T; 3]) -> [T; 3] {
    [c.mul(&v[0]), c.mul(&v[1]), c.mul(&v[2])]
}

impl<T: Ring> Octonion<T> {
    /// Zero element shaped like the supplied witness.
    pub fn zero_like(w: &T) -> Self {
        let z = w.sub(w);
        Octonion { a: z.clone(), x: [z.clone(), z.clone(), z.clone()], y: [z.clone(), z.clone(), z.clone()], b: z }
    }

    /// Scalar embedding a ↦ a·1 (diagonal).
    pub fn scalar(a: T) -> Self {
        let z = a.sub(&a);
        Octonion { a: a.clone(), x: [z.clone(), z.clone(), z.clone()], y: [z.clone(), z.clone(), z.clone()], b: a }
    }

    /// Coordinates in the fixed order (a, x₁, x₂, x₃, y₁, y₂, y₃, b).
    pub fn coords(&self) -> Vec<T> {
        let mut v = vec![self.a.clone()];
        v.extend(self.x.iter().cloned());
        v.extend(self.y.iter().cloned());
        v.push(self.b.clone());
        v
    }

    pub fn from_coords(c: &[T]) -> Self {
        assert_eq!(c.len(), 8);
        Octonion {
            a: c[0].clone(),
            x: [c[1].clone(), c[2].clone(), c[3].clone()],
            y: [c[4].clone(), c[5].clone(), c[6].clone()],
            b: c[7].clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Octonion {
            a: self.a.add(&o.a),
            x: vadd(&self.x, &o.x),
            y: vadd(&self.y, &o.y),
            b: self.b.add(&o.b),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Octonion {
            a: self.a.neg(),
            x: [self.x[0].neg(), self.x[1].neg(), self.x[2].neg()],
            y: [self.y[0].neg(), self.y[1].neg(), self.y[2].neg()],
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Octonion {
            a: c.mul(&self.a),
            x: vscale(c, &self.x),
            y: vscale(c, &self.y),
            b: c.mul(&self.b),
        }
    }

    /// Zorn product.
    pub fn mul(&self, o: &Self) -> Self {
        let a = self.a.mul(&o.a).add(&dot(&self.x, &o.y));
        let x = vadd(
            &vadd(&vscale(&self.a, &o.x), &vscale(&o.b, &self.x)),
            &cross(&self.y, &o.y).map(|t| t.neg()),
        );
        let y = vadd(
            &vadd(&vscale(&o.a, &self.y), &vscale(&self.b, &o.y)),
            &cross(&self.x, &o.x),
        );
        let b = self.b.mul(&o.b).add(&dot(&self.y, &o.x));
        Octonion { a, x, y, b }
    }

    /// Conjugation: swaps the diagonal and negates the vector parts.
    pub fn conj(&self) -> Self {
        Octonion {
            a: self.b.clone(),
            x: [self.x[0].neg(), self.x[1].neg(), self.x[2].neg()],
            y: [self.y[0].neg(), self.y[1].neg(), self.y[2].neg()],
            b: self.a.clone(),
        }
    }

    /// The split norm N(z) = ab − x·y; z·z̄ equals N(z)·1.
    pub fn norm(&self) -> T {
        self.a.mul(&self.b).sub(&dot(&self.x, &self.y))
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Ring::is_ring_zero)
    }
}

/// Hermitian 3×3 matrix over the split octonions:
///
/// ```text
///     [ d₁   o₃   ō₂ ]
///     [ ō₃   d₂   o₁ ]
///     [ o₂   ō₁   d₃ ]
/// ```
///
/// 27 coordinates: three diagonal scalars and three octonions.
#[derive(Debug, Clone, PartialEq)]
pub struct Jordan<T: Ring> {
    pub diag: [T; 3],
    pub off: [Octonion<T>; 3],
}

impl<T: Ring> Jordan<T> {
    /// Coordinates in the fixed order (d₁, d₂, d₃, o₁ coords, o₂ coords, o₃ coords).
    pub fn coords(&self) -> Vec<T> {
        let mut v: Vec<T> = self.diag.to_vec();
        for o in &self.off {
            v.extend(o.coords());
        }
        v
    }

    pub fn from_coords(c: &[T]) -> Self {
        assert_eq!(c.len(), 27);
        Jordan {
            diag: [c[0].clone(), c[1].clone(), c[2].clone()],
            off: [
                Octonion::from_coords(&c[3..11]),
                Octonion::from_coords(&c[11..19]),
                Octonion::from_coords(&c[19..27]),
            ],
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Jordan {
            diag: [c.mul(&self.diag[0]), c.mul(&self.diag[1]), c.mul(&self.diag[2])],
            off: [self.off[0].scale(c), self.off[1].scale(c), self.off[2].scale(c)],
        }
    }

    /// The adjugate X ↦ X^♯. A Hermitian matrix has rank ≤ 1 exactly when
    /// its adjugate vanishes; the 27 components are the quadratic equations
    /// cutting out the rank-one cone.
    pub fn adjugate(&self) -> Jordan<T> {
        let [d1, d2, d3] = &self.diag;
        let [o1, o2, o3] = &self.off;
        let diag = [
            d2.mul(d3).sub(&o1.norm()),
            d3.mul(d1).sub(&o2.norm()),
            d1.mul(d2).sub(&o3.norm()),
        ];
        let off = [
            o2.conj().mul(&o3.conj()).sub(&o1.scale(d1)),
            o3.conj().mul(&o1.conj()).sub(&o2.scale(d2)),
            o1.conj().mul(&o2.conj()).sub(&o3.scale(d3)),
        ];
        Jordan { diag, off }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Ring::is_ring_zero)
    }
}

/// The rank-one chart with first diagonal entry 1: parametrized by two free
/// octonions (u, v), the remaining entries are forced to
/// (1, N(v), N(u); ūv̄, u, v).
pub fn rank_one_chart<T: Ring>(one: T, u: Octonion<T>, v: Octonion<T>) -> Jordan<T> {
    let o1 = u.conj().mul(&v.conj());
    Jordan { diag: [one, v.norm(), u.norm()], off: [o1, u, v] }
}
