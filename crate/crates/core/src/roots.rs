//! Root systems, Weyl-group combinatorics and one-parameter torus actions
//! on rational homogeneous spaces.
//!
//! Roots are carried both in a standard coordinate model and as integer
//! coefficient vectors over the simple roots; all reflection arithmetic runs
//! on the integer side. Fixed points of a cocharacter action on G/P are the
//! Weyl orbit of the fundamental weight of the marked node, enumerated by
//! breadth-first search with reduced words, and each carries the multiset of
//! isotropy weights on the tangent space.

use crate::error::Error;
use crate::linalg::QMatrix;
use crate::rat::{rat, ratio, Rat};
use crate::Result;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Simple Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Type {
    pub fn letter(self) -> char {
        match self {
            Type::A => 'A',
            Type::B => 'B',
            Type::C => 'C',
            Type::D => 'D',
            Type::E => 'E',
            Type::F => 'F',
            Type::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Type> {
        match c.to_ascii_uppercase() {
            'A' => Some(Type::A),
            'B' => Some(Type::B),
            'C' => Some(Type::C),
            'D' => Some(Type::D),
            'E' => Some(Type::E),
            'F' => Some(Type::F),
            'G' => Some(Type::G),
            _ => None,
        }
    }
}

/// A root: coordinates in the standard model plus integer coefficients over
/// the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<Rat>,
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// A complete root system in a standard coordinate model.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub kind: Type,
    pub rank: usize,
    pub simple_coords: Vec<Vec<Rat>>,
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Root>,
    cartan_inv: QMatrix,
    /// squared length of each simple root (twice-normalized inner product)
    simple_norms: Vec<Rat>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn simple_root_model(kind: Type, rank: usize) -> Result<Vec<Vec<Rat>>> {
    let err = || Error::BadType { letter: kind.letter(), rank };
    let e = |dim: usize, i: usize| {
        let mut v = vec![rat(0); dim];
        v[i] = rat(1);
        v
    };
    let sub = |a: &[Rat], b: &[Rat]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
    Ok(match kind {
        Type::A => {
            if rank < 1 {
                return Err(err());
            }
            let d = rank + 1;
            (0..rank).map(|i| sub(&e(d, i), &e(d, i + 1))).collect()
        }
        Type::B => {
            if rank < 2 {
                return Err(err());
            }
            let mut v: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| sub(&e(rank, i), &e(rank, i + 1))).collect();
            v.push(e(rank, rank - 1));
            v
        }
        Type::C => {
            if rank < 2 {
                return Err(err());
            }
            let mut v: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| sub(&e(rank, i), &e(rank, i + 1))).collect();
            let mut last = e(rank, rank - 1);
            last[rank - 1] = rat(2);
            v.push(last);
            v
        }
        Type::D => {
            if rank < 3 {
                return Err(err());
            }
            let mut v: Vec<Vec<Rat>> =
                (0..rank - 1).map(|i| sub(&e(rank, i), &e(rank, i + 1))).collect();
            let mut last = e(rank, rank - 1);
            last[rank - 2] = rat(1);
            v.push(last);
            v
        }
        Type::G => {
            if rank != 2 {
                return Err(err());
            }
            vec![
                sub(&e(3, 0), &e(3, 1)),
                vec![rat(-2), rat(1), rat(1)],
            ]
        }
        Type::F => {
            if rank != 4 {
                return Err(err());
            }
            vec![
                sub(&e(4, 1), &e(4, 2)),
                sub(&e(4, 2), &e(4, 3)),
                e(4, 3),
                vec![ratio(1, 2), ratio(-1, 2), ratio(-1, 2), ratio(-1, 2)],
            ]
        }
        Type::E => {
            if !(6..=8).contains(&rank) {
                return Err(err());
            }
            let mut v = vec![
                vec![
                    ratio(1, 2),
                    ratio(-1, 2),
                    ratio(-1, 2),
                    ratio(-1, 2),
                    ratio(-1, 2),
                    ratio(-1, 2),
                    ratio(-1, 2),
                    ratio(1, 2),
                ],
                {
                    let mut w = vec![rat(0); 8];
                    w[0] = rat(1);
                    w[1] = rat(1);
                    w
                },
            ];
            for i in 0..6 {
                let mut w = vec![rat(0); 8];
                w[i] = rat(-1);
                w[i + 1] = rat(1);
                v.push(w);
            }
            v.truncate(rank);
            v
        }
    })
}

impl RootSystem {
    /// Build the full root system by reflection closure from the simple
    /// roots.
    pub fn build(kind: Type, rank: usize) -> Result<RootSystem> {
        let simple_coords = simple_root_model(kind, rank)?;
        let norms: Vec<Rat> = simple_coords.iter().map(|a| dot(a, a)).collect();
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let v = rat(2) * dot(&simple_coords[i], &simple_coords[j]) / &norms[j];
                assert!(v.is_integer(), "Cartan pairing must be integral");
                cartan[i][j] = i64::try_from(v.to_integer()).expect("small Cartan entry");
            }
        }
        // closure in coefficient space
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut c = vec![0i64; rank];
            c[i] = 1;
            seen.insert(c.clone(), ());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for j in 0..rank {
                let mut c2 = c.clone();
                let pairing: i64 = (0..rank).map(|i| c[i] * cartan[i][j]).sum();
                c2[j] -= pairing;
                if !seen.contains_key(&c2) {
                    seen.insert(c2.clone(), ());
                    queue.push_back(c2);
                }
            }
        }
        let mut coeff_list: Vec<Vec<i64>> = seen.into_keys().collect();
        coeff_list.sort();
        let roots = coeff_list
            .into_iter()
            .map(|coeffs| {
                let dim = simple_coords[0].len();
                let mut coords = vec![rat(0); dim];
                for (c, sr) in coeffs.iter().zip(&simple_coords) {
                    if *c != 0 {
                        for (x, y) in coords.iter_mut().zip(sr) {
                            *x += rat(*c) * y;
                        }
                    }
                }
                Root { coords, coeffs }
            })
            .collect();
        let cartan_q = QMatrix::from_fn(rank, rank, |i, j| rat(cartan[i][j]));
        let cartan_inv = cartan_q.inverse().expect("Cartan matrix is invertible");
        Ok(RootSystem {
            kind,
            rank,
            simple_coords,
            cartan,
            roots,
            cartan_inv,
            simple_norms: norms,
        })
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// The unique root of maximal height.
    pub fn highest_root(&self) -> &Root {
        let top = self.roots.iter().max_by_key(|r| r.height()).expect("nonempty");
        debug_assert_eq!(
            self.roots.iter().filter(|r| r.height() == top.height()).count(),
            1
        );
        debug_assert!((0..self.rank).all(|j| self.pairing_with_simple_covector(&top.coeffs, j) >= 0));
        top
    }

    /// Multiplicity of the simple root `alpha` (1-based) in `root`.
    pub fn coefficient(&self, root: &Root, alpha: usize) -> i64 {
        root.coeffs[alpha - 1]
    }

    /// ⟨β, α_j^∨⟩ for β given by simple-root coefficients, j 0-based.
    fn pairing_with_simple_covector(&self, coeffs: &[i64], j: usize) -> i64 {
        (0..self.rank).map(|i| coeffs[i] * self.cartan[i][j]).sum()
    }

    /// Reflect a root coefficient vector in the simple root j (0-based).
    fn reflect_root(&self, coeffs: &[i64], j: usize) -> Vec<i64> {
        let mut out = coeffs.to_vec();
        out[j] -= self.pairing_with_simple_covector(coeffs, j);
        out
    }

    /// Reflect a weight in fundamental-weight coordinates (0-based node).
    fn reflect_weight(&self, d: &[i64], j: usize) -> Vec<i64> {
        let mut out = d.to_vec();
        for i in 0..self.rank {
            out[i] -= d[j] * self.cartan[j][i];
        }
        out
    }

    /// Reflect a weight in an arbitrary root.
    fn reflect_weight_in_root(&self, d: &[i64], theta: &Root) -> Vec<i64> {
        // coroot coefficients: k_i = c_i (α_i, α_i) / (θ, θ)
        let theta_norm = dot(&theta.coords, &theta.coords);
        let pairing: Rat = (0..self.rank)
            .map(|i| rat(theta.coeffs[i] * d[i]) * &self.simple_norms[i] / &theta_norm)
            .sum();
        assert!(pairing.is_integer());
        let pairing = i64::try_from(pairing.to_integer()).expect("small weight pairing");
        // θ in fundamental-weight coordinates is the Cartan transform of its
        // simple-root coefficients
        let mut out = d.to_vec();
        for (l, o) in out.iter_mut().enumerate() {
            let theta_omega: i64 = (0..self.rank).map(|i| theta.coeffs[i] * self.cartan[i][l]).sum();
            *o -= pairing * theta_omega;
        }
        out
    }

    /// Longest Weyl element as a reduced word, by walking a strictly
    /// dominant weight to the antidominant chamber.
    pub fn longest_element_word(&self) -> Vec<usize> {
        let mut d = vec![1i64; self.rank];
        let mut word = Vec::new();
        loop {
            let Some(j) = (0..self.rank).find(|&j| d[j] > 0) else {
                break;
            };
            d = self.reflect_weight(&d, j);
            word.push(j);
        }
        word.reverse(); // leftmost letter applied last
        assert_eq!(word.len(), self.num_roots() / 2);
        word
    }

    fn apply_word_to_root(&self, word: &[usize], coeffs: &[i64]) -> Vec<i64> {
        let mut c = coeffs.to_vec();
        for &j in word.iter().rev() {
            c = self.reflect_root(&c, j);
        }
        c
    }

    /// The opposition involution ι = −w₀ as a permutation of the nodes
    /// (1-based on both sides).
    pub fn opposition_involution(&self) -> Vec<usize> {
        let w0 = self.longest_element_word();
        (0..self.rank)
            .map(|i| {
                let mut c = vec![0i64; self.rank];
                c[i] = 1;
                let image = self.apply_word_to_root(&w0, &c);
                let neg: Vec<i64> = image.iter().map(|x| -x).collect();
                let j = (0..self.rank)
                    .find(|&j| neg.iter().enumerate().all(|(k, &v)| v == i64::from(k == j)))
                    .expect("-w0 permutes the simple roots");
                j + 1
            })
            .collect()
    }
}

/// A root system with one marked node (1-based), the parabolic datum.
#[derive(Debug, Clone)]
pub struct Marking<'a> {
    pub rs: &'a RootSystem,
    pub alpha: usize,
}

impl<'a> Marking<'a> {
    pub fn new(rs: &'a RootSystem, alpha: usize) -> Result<Self> {
        if alpha == 0 || alpha > rs.rank {
            return Err(Error::BadDimension { what: "marked node", got: alpha });
        }
        Ok(Marking { rs, alpha })
    }

    /// dim G/P: the number of roots with nonzero marked coefficient, halved.
    pub fn dim_gp(&self) -> usize {
        self.rs.roots.iter().filter(|r| r.coeffs[self.alpha - 1] != 0).count() / 2
    }
}

/// Integral cocharacter recorded by its values on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocharacter {
    pub values: Vec<i64>,
}

impl Cocharacter {
    /// The distinguished cocharacter σ_β: value 1 on node β (1-based),
    /// 0 elsewhere.
    pub fn simple(rank: usize, beta: usize) -> Self {
        let mut values = vec![0; rank];
        values[beta - 1] = 1;
        Cocharacter { values }
    }

    pub fn negate(&self) -> Self {
        Cocharacter { values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn eval_root(&self, coeffs: &[i64]) -> i64 {
        coeffs.iter().zip(&self.values).map(|(c, v)| c * v).sum()
    }
}

/// Grading dimensions k ↦ dim 𝔤_k induced by a cocharacter; the Cartan
/// subalgebra contributes `rank` to level zero.
pub fn grading_dims(rs: &RootSystem, sigma: &Cocharacter) -> BTreeMap<i64, usize> {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    *dims.entry(0).or_insert(0) += rs.rank;
    for r in &rs.roots {
        *dims.entry(sigma.eval_root(&r.coeffs)).or_insert(0) += 1;
    }
    dims
}

/// Cominuscule test: the marked node has multiplicity one in the highest
/// root, equivalently σ_α only takes values −1, 0, 1 on roots.
pub fn is_cominuscule(mk: &Marking) -> bool {
    mk.rs.coefficient(mk.rs.highest_root(), mk.alpha) == 1
}

pub fn is_ihss(mk: &Marking) -> bool {
    is_cominuscule(mk)
}

/// Tube type: cominuscule and fixed by the opposition involution. Validated
/// elsewhere against the weight-combinatorics classification.
pub fn is_tube_type(mk: &Marking) -> bool {
    is_cominuscule(mk) && mk.rs.opposition_involution()[mk.alpha - 1] == mk.alpha
}

/// One torus-fixed point of G/P: reduced coset word, the weight-orbit point
/// in fundamental-weight coordinates, and the isotropy weights on the
/// tangent space.
#[derive(Debug, Clone)]
pub struct FixedPointDatum {
    pub word: Vec<usize>,
    pub weight: Vec<i64>,
    pub tangent_weights: Vec<i64>,
    pub sigma_level: Rat,
}

/// All fixed points of the σ-action on G/P_α: the Weyl orbit of ω_α with
/// tangent weights ⟨σ, w·θ⟩ over the roots θ of the opposite nilradical.
pub fn bb_fixed_points(mk: &Marking, sigma: &Cocharacter) -> Vec<FixedPointDatum> {
    let rs = mk.rs;
    let a = mk.alpha - 1;
    // fundamental coweight pairing values ⟨ω_i, ω_β∨⟩-style, for the level
    let t: Vec<Rat> = (0..rs.rank)
        .map(|i| {
            (0..rs.rank)
                .map(|j| rs.cartan_inv.get(i, j) * rat(sigma.values[j]))
                .sum()
        })
        .collect();
    let nilradical_opp: Vec<&Root> =
        rs.roots.iter().filter(|r| r.coeffs[a] < 0).collect();

    let mut omega = vec![0i64; rs.rank];
    omega[a] = 1;
    let mut found: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<usize>)> = VecDeque::new();
    found.insert(omega.clone(), ());
    queue.push_back((omega, Vec::new()));
    let mut out = Vec::new();
    while let Some((d, word)) = queue.pop_front() {
        let tangent_weights: Vec<i64> = nilradical_opp
            .iter()
            .map(|theta| {
                let image = rs.apply_word_to_root(&word, &theta.coeffs);
                sigma.eval_root(&image)
            })
            .collect();
        let sigma_level: Rat = d.iter().zip(&t).map(|(&di, ti)| rat(di) * ti).sum();
        out.push(FixedPointDatum { word: word.clone(), weight: d.clone(), tangent_weights, sigma_level });
        for j in 0..rs.rank {
            let d2 = rs.reflect_weight(&d, j);
            if !found.contains_key(&d2) {
                found.insert(d2.clone(), ());
                let mut w2 = vec![j];
                w2.extend_from_slice(&word);
                queue.push_back((d2, w2));
            }
        }
    }
    out
}

/// Verdict of one cocharacter action on one marked space.
#[derive(Debug, Clone)]
pub struct ActionClassification {
    pub equalized: bool,
    /// Fixed points whose tangent weights are all +1 (isolated Euler source).
    pub euler_sources: Vec<usize>,
    /// Fixed points whose tangent weights are all −1 (isolated Euler sink).
    pub euler_sinks: Vec<usize>,
}

pub fn classify_action(mk: &Marking, beta: usize) -> ActionClassification {
    let sigma = Cocharacter::simple(mk.rs.rank, beta);
    let data = bb_fixed_points(mk, &sigma);
    let equalized =
        data.iter().all(|d| d.tangent_weights.iter().all(|w| (-1..=1).contains(w)));
    let euler_sources = data
        .iter()
        .enumerate()
        .filter(|(_, d)| d.tangent_weights.iter().all(|&w| w == 1))
        .map(|(i, _)| i)
        .collect();
    let euler_sinks = data
        .iter()
        .enumerate()
        .filter(|(_, d)| d.tangent_weights.iter().all(|&w| w == -1))
        .map(|(i, _)| i)
        .collect();
    ActionClassification { equalized, euler_sources, euler_sinks }
}

/// One family entry of the classification: (type, rank, node), node 1-based.
pub type FamilyEntry = (char, usize, usize);

fn all_systems_of_rank(max_rank: usize) -> Vec<RootSystem> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        out.extend(RootSystem::build(Type::A, r));
        if r >= 2 {
            out.extend(RootSystem::build(Type::B, r));
            out.extend(RootSystem::build(Type::C, r));
        }
        if r >= 4 {
            out.extend(RootSystem::build(Type::D, r));
        }
    }
    if max_rank >= 2 {
        out.extend(RootSystem::build(Type::G, 2));
    }
    if max_rank >= 4 {
        out.extend(RootSystem::build(Type::F, 4));
    }
    for r in 6..=8 {
        if max_rank >= r {
            out.extend(RootSystem::build(Type::E, r));
        }
    }
    out
}

/// Exhaustive search over simple types of bounded rank for marked spaces
/// carrying an equalized action with two isolated extremal Euler fixed
/// points, for some distinguished cocharacter.
pub fn two_extreme_families(max_rank: usize) -> Vec<FamilyEntry> {
    let mut out = Vec::new();
    for rs in all_systems_of_rank(max_rank) {
        for node in 1..=rs.rank {
            let mk = Marking::new(&rs, node).unwrap();
            if !is_cominuscule(&mk) {
                continue;
            }
            let passes = (1..=rs.rank).any(|beta| {
                let c = classify_action(&mk, beta);
                c.equalized && c.euler_sources.len() == 1 && c.euler_sinks.len() == 1
            });
            if passes {
                out.push((rs.kind.letter(), rs.rank, node));
            }
        }
    }
    out
}

/// All cominuscule (equivalently IHSS) markings up to a rank bound.
pub fn ihss_markings(max_rank: usize) -> Vec<FamilyEntry> {
    let mut out = Vec::new();
    for rs in all_systems_of_rank(max_rank) {
        for node in 1..=rs.rank {
            let mk = Marking::new(&rs, node).unwrap();
            if is_cominuscule(&mk) {
                out.push((rs.kind.letter(), rs.rank, node));
            }
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// Attracting-order check at an isolated Euler extreme.
///
/// Fixed components are assembled from the moment graph: two fixed points
/// joined by a reflection whose connecting weight line has σ-value zero lie
/// in one component. Orienting the remaining reflection edges by σ-level and
/// closing transitively gives the order ≺; the check verifies there is a
/// unique component Y whose only predecessor is the Euler point, and that Y
/// has exactly one negative tangent weight at each of its points.
pub fn bb_poset_check(mk: &Marking, sigma: &Cocharacter) -> Result<bool> {
    let rs = mk.rs;
    let mut sigma = sigma.clone();
    let mut data = bb_fixed_points(mk, &sigma);
    let all_plus =
        |d: &FixedPointDatum| d.tangent_weights.iter().all(|&w| w == 1);
    let all_minus =
        |d: &FixedPointDatum| d.tangent_weights.iter().all(|&w| w == -1);
    if !data.iter().any(all_plus) {
        if data.iter().any(all_minus) {
            // run the inverse action so the Euler point is the source
            sigma = sigma.negate();
            data = bb_fixed_points(mk, &sigma);
        } else {
            return Err(Error::NotEulerSource);
        }
    }
    let sources: Vec<usize> = data
        .iter()
        .enumerate()
        .filter(|(_, d)| all_plus(d))
        .map(|(i, _)| i)
        .collect();
    if sources.len() != 1 {
        return Err(Error::NotEulerSource);
    }
    let source = sources[0];

    let index_of: HashMap<Vec<i64>, usize> =
        data.iter().enumerate().map(|(i, d)| (d.weight.clone(), i)).collect();
    let positive: Vec<&Root> = rs.roots.iter().filter(|r| r.is_positive()).collect();

    // group into C*-fixed components along σ-invariant curves
    let mut uf = UnionFind::new(data.len());
    for (i, d) in data.iter().enumerate() {
        for theta in &positive {
            if sigma.eval_root(&theta.coeffs) != 0 {
                continue;
            }
            let refl = rs.reflect_weight_in_root(&d.weight, theta);
            if refl != d.weight {
                uf.union(i, index_of[&refl]);
            }
        }
    }
    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..data.len() {
        components.entry(uf.find(i)).or_default().push(i);
    }
    let comp_ids: Vec<usize> = components.keys().copied().collect();
    let comp_of = |i: usize, uf: &mut UnionFind| -> usize {
        let r = uf.find(i);
        comp_ids.binary_search(&r).unwrap()
    };
    let nc = comp_ids.len();
    for members in components.values() {
        let level = &data[members[0]].sigma_level;
        assert!(members.iter().all(|&m| data[m].sigma_level == *level));
    }

    // oriented moment edges between components, low σ-level to high
    let mut adj = vec![vec![false; nc]; nc];
    for (i, d) in data.iter().enumerate() {
        for theta in &positive {
            if sigma.eval_root(&theta.coeffs) == 0 {
                continue;
            }
            let refl = rs.reflect_weight_in_root(&d.weight, theta);
            if refl == d.weight {
                continue;
            }
            let j = index_of[&refl];
            let (ci, cj) = (comp_of(i, &mut uf), comp_of(j, &mut uf));
            if ci == cj {
                continue;
            }
            if data[i].sigma_level < data[j].sigma_level {
                adj[ci][cj] = true;
            } else {
                adj[cj][ci] = true;
            }
        }
    }
    // transitive closure
    for k in 0..nc {
        for i in 0..nc {
            if adj[i][k] {
                for j in 0..nc {
                    if adj[k][j] {
                        adj[i][j] = true;
                    }
                }
            }
        }
    }

    let source_comp = comp_of(source, &mut uf);
    let mut next_layer = Vec::new();
    for y in 0..nc {
        if y == source_comp {
            continue;
        }
        let preds: Vec<usize> = (0..nc).filter(|&p| adj[p][y]).collect();
        if preds == [source_comp] {
            next_layer.push(y);
        }
    }
    if next_layer.len() != 1 {
        return Ok(false);
    }
    let y = next_layer[0];
    Ok(components[&comp_ids[y]].iter().all(|&m| {
        data[m].tangent_weights.iter().filter(|&&w| w < 0).count() == 1
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: Type, rank: usize) -> RootSystem {
        RootSystem::build(kind, rank).unwrap()
    }

    #[test]
    fn classical_root_counts() {
        assert_eq!(rs(Type::A, 3).num_roots(), 12);
        assert_eq!(rs(Type::D, 4).num_roots(), 24);
        assert_eq!(rs(Type::B, 3).num_roots(), 18);
        assert_eq!(rs(Type::C, 4).num_roots(), 32);
        assert_eq!(rs(Type::G, 2).num_roots(), 12);
        assert_eq!(rs(Type::F, 4).num_roots(), 48);
        assert_eq!(rs(Type::E, 6).num_roots(), 72);
        assert_eq!(rs(Type::E, 7).num_roots(), 126);
        assert_eq!(rs(Type::E, 8).num_roots(), 240);
    }

    #[test]
    fn root_lists_are_closed_under_negation_and_signed() {
        for sys in [rs(Type::A, 3), rs(Type::B, 3), rs(Type::E, 6)] {
            for r in &sys.roots {
                let neg: Vec<i64> = r.coeffs.iter().map(|c| -c).collect();
                assert!(sys.roots.iter().any(|s| s.coeffs == neg));
                let pos = r.coeffs.iter().all(|&c| c >= 0);
                let negv = r.coeffs.iter().all(|&c| c <= 0);
                assert!(pos || negv);
            }
        }
    }

    #[test]
    fn bad_types_are_rejected() {
        assert!(RootSystem::build(Type::B, 1).is_err());
        assert!(RootSystem::build(Type::G, 3).is_err());
        assert!(RootSystem::build(Type::E, 9).is_err());
        assert!(RootSystem::build(Type::F, 5).is_err());
    }

    #[test]
    fn highest_roots() {
        let a3 = rs(Type::A, 3);
        assert_eq!(a3.highest_root().coeffs, vec![1, 1, 1]);
        let c3 = rs(Type::C, 3);
        let top = c3.highest_root();
        assert_eq!(c3.coefficient(top, 1), 2);
        assert_eq!(c3.coefficient(top, 3), 1);
        let g2 = rs(Type::G, 2);
        assert!(g2.highest_root().coeffs.contains(&3));
    }

    #[test]
    fn cominuscule_catalogue() {
        let check = |kind, rank, node, expect| {
            let sys = rs(kind, rank);
            let mk = Marking::new(&sys, node).unwrap();
            assert_eq!(is_cominuscule(&mk), expect, "{kind:?}{rank} node {node}");
        };
        check(Type::A, 3, 2, true);
        check(Type::C, 3, 3, true);
        check(Type::C, 3, 1, false);
        check(Type::B, 4, 1, true);
        check(Type::B, 4, 4, false);
        check(Type::D, 5, 1, true);
        check(Type::D, 5, 5, true);
        check(Type::D, 5, 2, false);
        check(Type::E, 6, 1, true);
        check(Type::E, 6, 2, false);
        check(Type::E, 7, 7, true);
        check(Type::E, 7, 1, false);
        check(Type::G, 2, 1, false);
        check(Type::G, 2, 2, false);
        check(Type::F, 4, 1, false);
    }

    #[test]
    fn grading_dimensions() {
        let a3 = rs(Type::A, 3);
        let dims = grading_dims(&a3, &Cocharacter::simple(3, 2));
        assert_eq!(dims[&1], 4);
        assert_eq!(dims[&-1], 4);
        assert_eq!(dims[&0], 4 + 3);
        assert_eq!(dims.values().sum::<usize>(), 12 + 3);

        let e7 = rs(Type::E, 7);
        let dims = grading_dims(&e7, &Cocharacter::simple(7, 7));
        assert_eq!(dims[&1], 27);
        assert_eq!(dims[&-1], 27);
        for (k, v) in &dims {
            assert_eq!(dims[&-k], *v);
        }
    }

    #[test]
    fn opposition_involutions() {
        assert_eq!(rs(Type::A, 3).opposition_involution(), vec![3, 2, 1]);
        assert_eq!(rs(Type::D, 4).opposition_involution(), vec![1, 2, 3, 4]);
        assert_eq!(rs(Type::D, 5).opposition_involution(), vec![1, 2, 3, 5, 4]);
        assert_eq!(rs(Type::E, 6).opposition_involution(), vec![6, 2, 5, 4, 3, 1]);
        assert_eq!(rs(Type::E, 7).opposition_involution(), (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn tube_type_catalogue() {
        let tube = |kind, rank, node| {
            let sys = rs(kind, rank);
            is_tube_type(&Marking::new(&sys, node).unwrap())
        };
        assert!(tube(Type::A, 3, 2)); // Gr(2,4)
        assert!(!tube(Type::A, 4, 2)); // Gr(2,5)
        assert!(tube(Type::C, 3, 3)); // Lag(3,6)
        assert!(tube(Type::B, 3, 1)); // odd quadric
        assert!(tube(Type::D, 4, 1)); // even quadric
        assert!(tube(Type::D, 4, 4));
        assert!(!tube(Type::D, 5, 5)); // odd spinor node
        assert!(tube(Type::D, 6, 6)); // even spinor node
        assert!(!tube(Type::E, 6, 1));
        assert!(tube(Type::E, 7, 7));
    }

    #[test]
    fn fixed_point_counts_and_p1_weights() {
        let a1 = rs(Type::A, 1);
        let mk = Marking::new(&a1, 1).unwrap();
        let data = bb_fixed_points(&mk, &Cocharacter::simple(1, 1));
        assert_eq!(data.len(), 2);
        let weights: Vec<Vec<i64>> = data.iter().map(|d| d.tangent_weights.clone()).collect();
        assert!(weights.contains(&vec![1]));
        assert!(weights.contains(&vec![-1]));

        let a3 = rs(Type::A, 3);
        let mk = Marking::new(&a3, 2).unwrap();
        assert_eq!(bb_fixed_points(&mk, &Cocharacter::simple(3, 2)).len(), 6);

        let d5 = rs(Type::D, 5);
        let mk = Marking::new(&d5, 5).unwrap();
        assert_eq!(bb_fixed_points(&mk, &Cocharacter::simple(5, 5)).len(), 16);

        let e7 = rs(Type::E, 7);
        let mk = Marking::new(&e7, 7).unwrap();
        let data = bb_fixed_points(&mk, &Cocharacter::simple(7, 7));
        assert_eq!(data.len(), 56);
        for d in &data {
            assert_eq!(d.tangent_weights.len(), 27);
        }
    }

    #[test]
    fn tangent_weight_count_is_dim_gp() {
        let e6 = rs(Type::E, 6);
        let mk = Marking::new(&e6, 1).unwrap();
        assert_eq!(mk.dim_gp(), 16);
        let data = bb_fixed_points(&mk, &Cocharacter::simple(6, 1));
        assert_eq!(data.len(), 27);
        assert!(data.iter().all(|d| d.tangent_weights.len() == 16));
    }

    #[test]
    fn classification_examples() {
        let a3 = rs(Type::A, 3);
        let gr24 = Marking::new(&a3, 2).unwrap();
        let c = classify_action(&gr24, 2);
        assert!(c.equalized);
        assert_eq!(c.euler_sources.len(), 1);
        assert_eq!(c.euler_sinks.len(), 1);

        let e6 = rs(Type::E, 6);
        let s5cone = Marking::new(&e6, 1).unwrap();
        let c = classify_action(&s5cone, 1);
        assert!(c.equalized);
        assert_eq!(c.euler_sources.len() + c.euler_sinks.len(), 1);

        let p3 = Marking::new(&a3, 1).unwrap();
        let c = classify_action(&p3, 2);
        assert!(c.euler_sources.is_empty() || c.euler_sinks.is_empty());
    }

    #[test]
    fn poset_checks() {
        let a3 = rs(Type::A, 3);
        let mk = Marking::new(&a3, 2).unwrap();
        assert!(bb_poset_check(&mk, &Cocharacter::simple(3, 2)).unwrap());

        let d4 = rs(Type::D, 4);
        let mk = Marking::new(&d4, 1).unwrap();
        assert!(bb_poset_check(&mk, &Cocharacter::simple(4, 1)).unwrap());

        let a2 = rs(Type::A, 2);
        let mk = Marking::new(&a2, 1).unwrap();
        assert!(bb_poset_check(&mk, &Cocharacter::simple(2, 1)).unwrap());

        // no Euler extreme at all: marked node 1, cocharacter on node 2
        let mk = Marking::new(&a3, 1).unwrap();
        assert!(matches!(
            bb_poset_check(&mk, &Cocharacter::simple(3, 2)),
            Err(Error::NotEulerSource)
        ));
    }

    #[test]
    fn cominuscule_gradings_are_short_with_g1_of_cell_size() {
        for (letter, rank, node) in ihss_markings(6) {
            let sys = rs(Type::from_letter(letter).unwrap(), rank);
            let mk = Marking::new(&sys, node).unwrap();
            let dims = grading_dims(&sys, &Cocharacter::simple(rank, node));
            assert!(dims.keys().all(|k| (-1..=1).contains(k)), "{letter}{rank} node {node}");
            assert_eq!(dims[&1], mk.dim_gp(), "{letter}{rank} node {node}");
        }
    }

    #[test]
    fn tube_markings_have_one_euler_extreme_each() {
        for (kind, rank, node) in
            [(Type::A, 3, 2), (Type::C, 3, 3), (Type::B, 3, 1), (Type::D, 6, 6), (Type::E, 7, 7)]
        {
            let sys = rs(kind, rank);
            let mk = Marking::new(&sys, node).unwrap();
            assert!(is_tube_type(&mk));
            let c = classify_action(&mk, node);
            assert!(c.equalized);
            assert_eq!(c.euler_sources.len(), 1);
            assert_eq!(c.euler_sinks.len(), 1);
            let data = bb_fixed_points(&mk, &Cocharacter::simple(rank, node));
            for idx in c.euler_sources.iter().chain(&c.euler_sinks) {
                assert_eq!(data[*idx].tangent_weights.len(), mk.dim_gp());
            }
        }
    }

    #[test]
    fn two_extreme_families_at_rank_4() {
        let families = two_extreme_families(4);
        let expected: Vec<FamilyEntry> = vec![
            ('A', 1, 1),
            ('A', 3, 2),
            ('B', 2, 1),
            ('B', 3, 1),
            ('B', 4, 1),
            ('C', 2, 2),
            ('C', 3, 3),
            ('C', 4, 4),
            ('D', 4, 1),
            ('D', 4, 3),
            ('D', 4, 4),
        ];
        let mut got = families.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }
}
