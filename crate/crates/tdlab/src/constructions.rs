//! Explicit example groups and actions: Houghton-type eventually
//! translational permutations on finite windows, the symmetric-group
//! generators built from a finite group's left translations and
//! transpositions, and the affine actions AGL(1, q) and AGL(n, 2).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::perm::{FinitaryPerm, LazyPerm};
use crate::permgrp::{GroupError, PermGroup};
use crate::words::FiniteGroupTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("ray count must be at least 2")]
    RayCount,
    #[error("map is not an eventually translational bijection: {0}")]
    NotBijective(String),
    #[error("offsets must sum to zero, got {0}")]
    OffsetSum(i64),
    #[error("tuples must have equal length and distinct entries")]
    BadTuples,
    #[error("{0} is not a prime power at most 64")]
    NotPrimePower(u32),
    #[error("dimension must be between 1 and 4")]
    DimensionRange,
    #[error("the listed elements do not generate the group")]
    NotGenerating,
    #[error("elements must be distinct")]
    EqualElements,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A point of the n-ray set: (ray in 1..=n, position >= 1).
pub type RayPoint = (u32, u32);

/// Flattening (ray r, position p) -> n (p - 1) + r, a bijection onto 1, 2,
/// 3, ... that interleaves the rays.
pub fn flatten(rays: usize, p: RayPoint) -> u32 {
    rays as u32 * (p.1 - 1) + p.0
}

pub fn unflatten(rays: usize, x: u32) -> RayPoint {
    let r = (x - 1) % rays as u32 + 1;
    let pos = (x - 1) / rays as u32 + 1;
    (r, pos)
}

/// A permutation of the n-ray set acting as a translation along each ray
/// outside a finite exceptional set. Offsets sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoughtonElement {
    rays: usize,
    offsets: Vec<i64>,
    exceptional: BTreeMap<RayPoint, RayPoint>,
}

impl HoughtonElement {
    /// Validates and normalizes: exceptional entries agreeing with the
    /// translation rule are pruned, then bijectivity is checked on a window
    /// covering every seam.
    pub fn new(
        rays: usize,
        offsets: Vec<i64>,
        exceptional: BTreeMap<RayPoint, RayPoint>,
    ) -> Result<Self, ConstructionError> {
        if rays < 2 {
            return Err(ConstructionError::RayCount);
        }
        assert_eq!(offsets.len(), rays);
        let total: i64 = offsets.iter().sum();
        if total != 0 {
            return Err(ConstructionError::OffsetSum(total));
        }
        for (&(r, p), &(r2, p2)) in &exceptional {
            if r == 0 || r as usize > rays || p == 0 || r2 == 0 || r2 as usize > rays || p2 == 0 {
                return Err(ConstructionError::NotBijective(format!(
                    "exceptional entry ({},{}) -> ({},{}) leaves the domain",
                    r, p, r2, p2
                )));
            }
        }
        let mut el = HoughtonElement {
            rays,
            offsets,
            exceptional,
        };
        el.prune();
        el.check_bijective()?;
        Ok(el)
    }

    pub fn identity(rays: usize) -> Self {
        HoughtonElement {
            rays,
            offsets: vec![0; rays],
            exceptional: BTreeMap::new(),
        }
    }

    pub fn rays(&self) -> usize {
        self.rays
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    fn prune(&mut self) {
        let offsets = self.offsets.clone();
        self.exceptional.retain(|&(r, p), &mut (r2, p2)| {
            let translated = p as i64 + offsets[(r - 1) as usize];
            !(r == r2 && translated == p2 as i64)
        });
    }

    /// Window size covering all exceptional positions and offsets.
    fn window(&self) -> u32 {
        let mut w = 1i64;
        for (&(_, p), &(_, p2)) in &self.exceptional {
            w = w.max(p as i64).max(p2 as i64);
        }
        for &o in &self.offsets {
            w += o.abs();
        }
        (w + 2) as u32
    }

    fn check_bijective(&self) -> Result<(), ConstructionError> {
        let w = self.window();
        let mut domain: BTreeSet<RayPoint> = self.exceptional.keys().copied().collect();
        for r in 1..=self.rays as u32 {
            for p in 1..=w {
                domain.insert((r, p));
            }
        }
        let mut image = BTreeSet::new();
        for &x in &domain {
            let y = self
                .try_apply(x)
                .ok_or_else(|| ConstructionError::NotBijective(format!("{:?} has no image", x)))?;
            if !image.insert(y) {
                return Err(ConstructionError::NotBijective(format!(
                    "{:?} hit twice",
                    y
                )));
            }
        }
        // the image of the window must be exactly the set of points not
        // reachable by pure translation from outside the window
        let mut required = BTreeSet::new();
        for r in 1..=self.rays as u32 {
            let off = self.offsets[(r - 1) as usize];
            for p in 1.. {
                let pre = p as i64 - off;
                let from_outside = pre >= 1 && !domain.contains(&(r, pre as u32));
                if !from_outside {
                    required.insert((r, p));
                } else if p > w + off.unsigned_abs() as u32 + 1 {
                    break;
                }
                if p > 4 * w {
                    break;
                }
            }
        }
        for y in &image {
            if !required.contains(y) {
                return Err(ConstructionError::NotBijective(format!(
                    "{:?} is also hit by the translation tail",
                    y
                )));
            }
        }
        for y in &required {
            if !image.contains(y) {
                return Err(ConstructionError::NotBijective(format!(
                    "{:?} is never hit",
                    y
                )));
            }
        }
        Ok(())
    }

    fn try_apply(&self, x: RayPoint) -> Option<RayPoint> {
        if let Some(&y) = self.exceptional.get(&x) {
            return Some(y);
        }
        let (r, p) = x;
        let q = p as i64 + self.offsets[(r - 1) as usize];
        (q >= 1).then_some((r, q as u32))
    }

    pub fn apply(&self, x: RayPoint) -> RayPoint {
        self.try_apply(x).expect("validated element is total")
    }

    pub fn apply_inverse(&self, y: RayPoint) -> RayPoint {
        for (&k, &v) in &self.exceptional {
            if v == y {
                return k;
            }
        }
        let (r, p) = y;
        let q = p as i64 - self.offsets[(r - 1) as usize];
        debug_assert!(q >= 1, "validated element is surjective");
        (r, q as u32)
    }

    /// Composition applying `other` first, matching permutation convention.
    pub fn compose(&self, other: &HoughtonElement) -> HoughtonElement {
        assert_eq!(self.rays, other.rays);
        let offsets: Vec<i64> = self
            .offsets
            .iter()
            .zip(&other.offsets)
            .map(|(a, b)| a + b)
            .collect();
        let w = self.window().max(other.window()) + 2;
        let mut exceptional = BTreeMap::new();
        for r in 1..=self.rays as u32 {
            for p in 1..=w {
                let x = (r, p);
                let y = self.apply(other.apply(x));
                let pure = p as i64 + offsets[(r - 1) as usize];
                if !(y.0 == r && pure == y.1 as i64) {
                    exceptional.insert(x, y);
                }
            }
        }
        HoughtonElement::new(self.rays, offsets, exceptional)
            .expect("composition of bijections is a bijection")
    }

    pub fn inverse(&self) -> HoughtonElement {
        let offsets: Vec<i64> = self.offsets.iter().map(|o| -o).collect();
        let mut exceptional = BTreeMap::new();
        for (&k, &v) in &self.exceptional {
            exceptional.insert(v, k);
        }
        HoughtonElement::new(self.rays, offsets, exceptional)
            .expect("inverse of a bijection is a bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.offsets.iter().all(|&o| o == 0) && self.exceptional.is_empty()
    }

    /// Finitary iff all eventual offsets vanish.
    pub fn is_finitary(&self) -> bool {
        self.offsets.iter().all(|&o| o == 0)
    }

    /// The underlying finitary permutation on flattened points, when the
    /// element is finitary.
    pub fn to_finitary(&self) -> Option<FinitaryPerm> {
        if !self.is_finitary() {
            return None;
        }
        let map: BTreeMap<u32, u32> = self
            .exceptional
            .iter()
            .map(|(&k, &v)| (flatten(self.rays, k), flatten(self.rays, v)))
            .collect();
        Some(FinitaryPerm::from_mapping(map).expect("validated bijection"))
    }

    pub fn from_finitary(rays: usize, p: &FinitaryPerm) -> Result<Self, ConstructionError> {
        let exceptional = p
            .support()
            .map(|x| (unflatten(rays, x), unflatten(rays, p.apply(x))))
            .collect();
        HoughtonElement::new(rays, vec![0; rays], exceptional)
    }

    /// Oracle view on the flattened domain.
    pub fn to_lazy_perm(&self) -> LazyPerm {
        let rays = self.rays;
        let fwd = self.clone();
        let bwd = self.clone();
        let supp = self.clone();
        let infinite = !self.is_finitary();
        LazyPerm::new(
            move |x| flatten(rays, fwd.apply(unflatten(rays, x))),
            move |x| flatten(rays, bwd.apply_inverse(unflatten(rays, x))),
            move || {
                let el = supp.clone();
                (1u32..).filter(move |&x| {
                    let p = unflatten(el.rays, x);
                    el.apply(p) != p
                })
            },
            infinite,
        )
    }
}

/// The standard generators g_2, ..., g_n of the n-ray group: g_i shifts
/// ray 1 down by one, ray i up by one, and bridges the origins by sending
/// (1, 1) to (i, 1).
pub fn houghton_generators(rays: usize) -> Result<Vec<HoughtonElement>, ConstructionError> {
    if rays < 2 {
        return Err(ConstructionError::RayCount);
    }
    (2..=rays)
        .map(|i| {
            let mut offsets = vec![0i64; rays];
            offsets[0] = -1;
            offsets[i - 1] = 1;
            let mut exceptional = BTreeMap::new();
            exceptional.insert((1, 1), (i as u32, 1));
            HoughtonElement::new(rays, offsets, exceptional)
        })
        .collect()
}

/// A finitary (hence Houghton) element sending each a_i to b_i, made even
/// by an extra far-away transposition when the completion is odd.
pub fn houghton_witness(
    rays: usize,
    a_points: &[u32],
    b_points: &[u32],
) -> Result<HoughtonElement, ConstructionError> {
    if a_points.len() != b_points.len() {
        return Err(ConstructionError::BadTuples);
    }
    let distinct = |xs: &[u32]| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
    if !distinct(a_points) || !distinct(b_points) || a_points.contains(&0) || b_points.contains(&0)
    {
        return Err(ConstructionError::BadTuples);
    }
    let mut map: BTreeMap<u32, u32> = a_points
        .iter()
        .copied()
        .zip(b_points.iter().copied())
        .collect();
    // complete the partial injection on the union of both point sets
    let all: BTreeSet<u32> = a_points.iter().chain(b_points.iter()).copied().collect();
    let used: BTreeSet<u32> = map.values().copied().collect();
    let sources: Vec<u32> = all.iter().filter(|x| !map.contains_key(x)).copied().collect();
    let mut free: Vec<u32> = all.iter().filter(|x| !used.contains(x)).copied().collect();
    free.reverse();
    for s in sources {
        map.insert(s, free.pop().expect("counts match"));
    }
    let mut perm = FinitaryPerm::from_mapping(map).expect("completed injection");
    if !perm.is_even() {
        let far = perm.max_point().max(*all.iter().next_back().unwrap_or(&0)) + 1;
        perm = perm.compose(&FinitaryPerm::transposition(far, far + 1).expect("far != far+1"));
    }
    HoughtonElement::from_finitary(rays, &perm)
}

/// Generators of the full symmetric group on the elements of Q: the left
/// translations by the generating list together with the transpositions
/// swapping the identity with each generator. Points are 1-based element
/// indices of the table.
pub fn prop_hta_generators(
    q: &FiniteGroupTable,
    gens: &[u16],
) -> Result<PermGroup, ConstructionError> {
    if !q.generates(gens) {
        return Err(ConstructionError::NotGenerating);
    }
    let n = q.size() as u32;
    let mut out = Vec::new();
    for &x in gens {
        let map: BTreeMap<u32, u32> = (0..q.size() as u16)
            .map(|e| (e as u32 + 1, q.mul(x, e) as u32 + 1))
            .filter(|&(a, b)| a != b)
            .collect();
        out.push(FinitaryPerm::from_mapping(map).expect("translation is a bijection"));
        if x != 0 {
            out.push(FinitaryPerm::transposition(1, x as u32 + 1).expect("x is not e"));
        }
    }
    Ok(PermGroup::new(n, out)?)
}

/// A letter of a factorization word over the symmetric-group generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorLetter {
    /// left translation by the i-th generator (0-based), possibly inverted
    Lambda { gen: usize, inverse: bool },
    /// the transposition swapping the identity with the i-th generator
    Swap { gen: usize },
}

/// Word over the generators whose evaluation is the transposition (g, h),
/// built along a geodesic from g to h in the Cayley graph of Q. The
/// recursion uses (a c) = (a b)(b c)(a b) along the path.
pub fn transposition_factorization(
    q: &FiniteGroupTable,
    gens: &[u16],
    g: u16,
    h: u16,
) -> Result<Vec<FactorLetter>, ConstructionError> {
    if g == h {
        return Err(ConstructionError::EqualElements);
    }
    if !q.generates(gens) {
        return Err(ConstructionError::NotGenerating);
    }
    // geodesic via breadth-first search over right multiplication
    let mut parent: HashMap<u16, (u16, usize, bool)> = HashMap::new(); // node -> (prev, gen, inverse)
    let mut queue = VecDeque::from([g]);
    let mut seen: BTreeSet<u16> = BTreeSet::from([g]);
    while let Some(x) = queue.pop_front() {
        if x == h {
            break;
        }
        for (i, &s) in gens.iter().enumerate() {
            for inv in [false, true] {
                let y = q.mul(x, if inv { q.inv(s) } else { s });
                if seen.insert(y) {
                    parent.insert(y, (x, i, inv));
                    queue.push_back(y);
                }
            }
        }
    }
    let mut path = vec![h];
    let mut cur = h;
    while cur != g {
        let (prev, _, _) = parent[&cur];
        path.push(prev);
        cur = prev;
    }
    path.reverse();

    // word for the single edge (u, v) with u^{-1} v a generator letter:
    // lambda(u) swap_i lambda(u)^{-1}, with lambda(u) spelled over the
    // generating list
    let lambda_word = |u: u16| -> Vec<FactorLetter> {
        // factor u over the generators by BFS from the identity
        let mut par: HashMap<u16, (u16, usize, bool)> = HashMap::new();
        let mut q2 = VecDeque::from([0u16]);
        let mut seen2: BTreeSet<u16> = BTreeSet::from([0]);
        while let Some(x) = q2.pop_front() {
            if x == u {
                break;
            }
            for (i, &s) in gens.iter().enumerate() {
                for inv in [false, true] {
                    let y = q.mul(x, if inv { q.inv(s) } else { s });
                    if seen2.insert(y) {
                        par.insert(y, (x, i, inv));
                        q2.push_back(y);
                    }
                }
            }
        }
        let mut letters = Vec::new();
        let mut cur = u;
        while cur != 0 {
            let (prev, i, inv) = par[&cur];
            letters.push(FactorLetter::Lambda { gen: i, inverse: inv });
            cur = prev;
        }
        letters.reverse();
        letters
    };
    let edge_word = |u: u16, v: u16| -> Vec<FactorLetter> {
        let d = q.mul(q.inv(u), v);
        // d is a generator or an inverse generator along a BFS edge
        let (conj_base, i) = if let Some(i) = gens.iter().position(|&s| s == d) {
            (u, i)
        } else {
            let i = gens
                .iter()
                .position(|&s| q.inv(s) == d)
                .expect("path edges step by generator letters");
            (v, i)
        };
        let lam = lambda_word(conj_base);
        let mut word = lam.clone();
        word.push(FactorLetter::Swap { gen: i });
        for l in lam.iter().rev() {
            word.push(match *l {
                FactorLetter::Lambda { gen, inverse } => FactorLetter::Lambda {
                    gen,
                    inverse: !inverse,
                },
                s => s,
            });
        }
        word
    };

    // palindromic expansion of (g_0 g_n) along the path
    fn expand(
        path: &[u16],
        edge_word: &dyn Fn(u16, u16) -> Vec<FactorLetter>,
    ) -> Vec<FactorLetter> {
        if path.len() == 2 {
            return edge_word(path[0], path[1]);
        }
        let head = expand(&path[..path.len() - 1], edge_word);
        let last = edge_word(path[path.len() - 2], path[path.len() - 1]);
        let mut word = head.clone();
        word.extend(last);
        word.extend(head);
        word
    }
    Ok(expand(&path, &edge_word))
}

/// Evaluates a factorization word to a permutation of the table's points.
pub fn evaluate_factor_word(
    q: &FiniteGroupTable,
    gens: &[u16],
    word: &[FactorLetter],
) -> FinitaryPerm {
    let letter_perm = |l: &FactorLetter| -> FinitaryPerm {
        match *l {
            FactorLetter::Lambda { gen, inverse } => {
                let x = if inverse { q.inv(gens[gen]) } else { gens[gen] };
                let map: BTreeMap<u32, u32> = (0..q.size() as u16)
                    .map(|e| (e as u32 + 1, q.mul(x, e) as u32 + 1))
                    .filter(|&(a, b)| a != b)
                    .collect();
                FinitaryPerm::from_mapping(map).expect("translation")
            }
            FactorLetter::Swap { gen } => {
                FinitaryPerm::transposition(1, gens[gen] as u32 + 1).expect("generator is not e")
            }
        }
    };
    // rightmost letter acts first
    word.iter()
        .rev()
        .fold(FinitaryPerm::identity(), |acc, l| letter_perm(l).compose(&acc))
}

/// Finite field with at most 64 elements; elements are encoded as base-p
/// digit strings packed into 0..q-1.
struct Gf {
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl Gf {
    fn new(q: u32) -> Result<Gf, ConstructionError> {
        if !(2..=64).contains(&q) {
            return Err(ConstructionError::NotPrimePower(q));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut e = 0;
        let mut m = q;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(ConstructionError::NotPrimePower(q));
        }
        // monic irreducible of degree e over F_p, low-degree coefficients
        // first (x^e = -(those coefficients))
        let modulus: Vec<u32> = match (p, e) {
            (_, 1) => vec![],
            (2, 2) => vec![1, 1],          // x^2 + x + 1
            (2, 3) => vec![1, 1, 0],       // x^3 + x + 1
            (2, 4) => vec![1, 1, 0, 0],    // x^4 + x + 1
            (2, 5) => vec![1, 0, 1, 0, 0], // x^5 + x^2 + 1
            (2, 6) => vec![1, 1, 0, 0, 0, 0], // x^6 + x + 1
            (3, 2) => vec![1, 0],          // x^2 + 1
            (3, 3) => vec![1, 2, 0],       // x^3 + 2x + 1
            (5, 2) => vec![2, 0],          // x^2 + 2
            (7, 2) => vec![1, 0],          // x^2 + 1
            _ => return Err(ConstructionError::NotPrimePower(q)),
        };
        let decode = |x: u32| -> Vec<u32> {
            let mut digits = vec![0u32; e];
            let mut v = x;
            for d in digits.iter_mut() {
                *d = v % p;
                v /= p;
            }
            digits
        };
        let encode = |digits: &[u32]| -> u32 {
            digits.iter().rev().fold(0, |acc, &d| acc * p + d)
        };
        let mut add = vec![0u16; (q * q) as usize];
        let mut mul = vec![0u16; (q * q) as usize];
        for a in 0..q {
            let da = decode(a);
            for b in 0..q {
                let db = decode(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u16;
                // polynomial product reduced by x^e = -modulus
                let mut prod = vec![0u32; 2 * e];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (e..2 * e).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for (k, &mk) in modulus.iter().enumerate() {
                        // x^e = -sum mk x^k
                        let idx = i - e + k;
                        prod[idx] = (prod[idx] + (p - mk % p) % p * c) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..e]) as u16;
            }
        }
        // sanity: the multiplicative group must have a generator
        let gf = Gf { q, add, mul };
        if gf.primitive_element().is_none() {
            return Err(ConstructionError::NotPrimePower(q));
        }
        Ok(gf)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    /// Smallest multiplicative generator in encoding order.
    fn primitive_element(&self) -> Option<u32> {
        (2..self.q).chain(std::iter::once(1).filter(|_| self.q == 2)).find(|&b| {
            let mut x = b;
            let mut k = 1;
            while x != 1 {
                x = self.mul(x, b);
                k += 1;
                if k > self.q {
                    return false;
                }
            }
            k == self.q - 1
        })
    }
}

/// AGL(1, q) acting on the q field elements (element z sits at point z+1),
/// generated by the translation z -> z + 1 and multiplication by the least
/// primitive element.
pub fn affine_action(q: u32) -> Result<PermGroup, ConstructionError> {
    let gf = Gf::new(q)?;
    let translation: BTreeMap<u32, u32> = (0..q)
        .map(|z| (z + 1, gf.add(z, 1) + 1))
        .filter(|&(a, b)| a != b)
        .collect();
    let g = gf.primitive_element().expect("checked in Gf::new");
    let scaling: BTreeMap<u32, u32> = (0..q)
        .map(|z| (z + 1, gf.mul(g, z) + 1))
        .filter(|&(a, b)| a != b)
        .collect();
    let gens = vec![
        FinitaryPerm::from_mapping(translation).expect("translation is a bijection"),
        FinitaryPerm::from_mapping(scaling).expect("scaling is a bijection"),
    ];
    Ok(PermGroup::new(q, gens)?)
}

/// AGL(n, 2) acting on the 2^n vectors of an n-dimensional space over the
/// two-element field (vector v sits at point v+1): all transvections plus
/// the translation by the first basis vector.
pub fn affine_f2_action(n: u32) -> Result<PermGroup, ConstructionError> {
    if !(1..=4).contains(&n) {
        return Err(ConstructionError::DimensionRange);
    }
    let size = 1u32 << n;
    let mut gens = Vec::new();
    let translation: BTreeMap<u32, u32> = (0..size).map(|v| (v + 1, (v ^ 1) + 1)).collect();
    gens.push(FinitaryPerm::from_mapping(translation).expect("translation"));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // v -> v + v_j e_i
            let map: BTreeMap<u32, u32> = (0..size)
                .map(|v| {
                    let img = if v & (1 << j) != 0 { v ^ (1 << i) } else { v };
                    (v + 1, img + 1)
                })
                .filter(|&(a, b)| a != b)
                .collect();
            if !map.is_empty() {
                gens.push(FinitaryPerm::from_mapping(map).expect("transvection"));
            }
        }
    }
    Ok(PermGroup::new(size, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening_round_trip() {
        for rays in 2..=4usize {
            for x in 1..=40u32 {
                assert_eq!(flatten(rays, unflatten(rays, x)), x);
            }
        }
    }

    #[test]
    fn houghton_generators_two_rays() {
        let gens = houghton_generators(2).unwrap();
        assert_eq!(gens.len(), 1);
        let g = &gens[0];
        assert_eq!(g.offsets(), &[-1, 1]);
        assert_eq!(g.apply((1, 1)), (2, 1));
        assert_eq!(g.apply((1, 5)), (1, 4));
        assert_eq!(g.apply((2, 3)), (2, 4));
        // round trip
        for r in 1..=2u32 {
            for p in 1..=20u32 {
                assert_eq!(g.apply_inverse(g.apply((r, p))), (r, p));
            }
        }
        assert!(houghton_generators(1).is_err());
    }

    #[test]
    fn houghton_offsets_always_cancel() {
        let gens = houghton_generators(3).unwrap();
        for g in &gens {
            assert_eq!(g.offsets().iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn houghton_composition_adds_offsets() {
        let gens = houghton_generators(3).unwrap();
        let (g2, g3) = (&gens[0], &gens[1]);
        let prod = g2.compose(g3);
        assert_eq!(prod.offsets(), &[-2, 1, 1]);
        // evaluates like the composition pointwise
        for r in 1..=3u32 {
            for p in 1..=15u32 {
                assert_eq!(prod.apply((r, p)), g2.apply(g3.apply((r, p))));
            }
        }
    }

    #[test]
    fn houghton_commutator_is_finitary() {
        let gens = houghton_generators(3).unwrap();
        let (g2, g3) = (&gens[0], &gens[1]);
        let comm = g2
            .inverse()
            .compose(&g3.inverse())
            .compose(g2)
            .compose(g3);
        assert!(comm.is_finitary());
        assert!(!comm.is_identity());
        let fin = comm.to_finitary().unwrap();
        // spot check on a window against direct evaluation
        for x in 1..=60u32 {
            let p = unflatten(3, x);
            let direct = g2
                .inverse()
                .apply(g3.inverse().apply(g2.apply(g3.apply(p))));
            assert_eq!(unflatten(3, fin.apply(x)), direct);
        }
    }

    #[test]
    fn houghton_witness_examples() {
        // identity on equal tuples
        let w = houghton_witness(2, &[3, 7], &[3, 7]).unwrap();
        assert!(w.is_identity());
        // single transposition made even
        let w2 = houghton_witness(2, &[5], &[9]).unwrap();
        let f = w2.to_finitary().unwrap();
        assert_eq!(f.apply(5), 9);
        assert!(f.is_even());
        // random-ish 4-tuples
        let a = [1, 4, 9, 16];
        let b = [2, 3, 5, 7];
        let w3 = houghton_witness(2, &a, &b).unwrap();
        let f3 = w3.to_finitary().unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(f3.apply(*x), *y);
        }
        assert!(f3.is_even());
        assert!(houghton_witness(2, &[1, 1], &[2, 3]).is_err());
    }

    #[test]
    fn houghton_lazy_perm_bridge() {
        let g = &houghton_generators(2).unwrap()[0];
        let lazy = g.to_lazy_perm();
        assert!(lazy.has_infinite_support());
        assert!(lazy.verify_on(1..200));
        // flattened action: (1,1) = point 1 maps to (2,1) = point 2
        assert_eq!(lazy.apply(1), 2);
    }

    #[test]
    fn prop_hta_orders() {
        let c2 = FiniteGroupTable::cyclic(2);
        assert_eq!(prop_hta_generators(&c2, &[1]).unwrap().order().unwrap(), 2);
        let c3 = FiniteGroupTable::cyclic(3);
        assert_eq!(prop_hta_generators(&c3, &[1]).unwrap().order().unwrap(), 6);
        // non-generating list is rejected
        let c4 = FiniteGroupTable::cyclic(4);
        assert!(matches!(
            prop_hta_generators(&c4, &[2]),
            Err(ConstructionError::NotGenerating)
        ));
    }

    #[test]
    fn transposition_factorization_c3() {
        let c3 = FiniteGroupTable::cyclic(3);
        let gens = [1u16];
        // g = e, h = g^2 needs a two-edge geodesic
        let word = transposition_factorization(&c3, &gens, 0, 2).unwrap();
        let perm = evaluate_factor_word(&c3, &gens, &word);
        assert_eq!(perm, FinitaryPerm::transposition(1, 3).unwrap());
        // one-edge case from the identity: the bare swap letter
        let word2 = transposition_factorization(&c3, &gens, 0, 1).unwrap();
        assert_eq!(word2.len(), 1);
        let perm2 = evaluate_factor_word(&c3, &gens, &word2);
        assert_eq!(perm2, FinitaryPerm::transposition(1, 2).unwrap());
        assert!(transposition_factorization(&c3, &gens, 1, 1).is_err());
    }

    #[test]
    fn affine_agl1_5() {
        let g = affine_action(5).unwrap();
        assert_eq!(g.order().unwrap(), 20);
        assert!(g.is_k_transitive(2).unwrap());
        assert!(!g.is_k_transitive(3).unwrap());
    }

    #[test]
    fn affine_agl1_prime_powers() {
        for q in [4u32, 8, 9] {
            let g = affine_action(q).unwrap();
            assert_eq!(g.order().unwrap(), (q * (q - 1)) as u64);
            assert!(g.is_k_transitive(2).unwrap());
        }
        assert!(affine_action(6).is_err());
        assert!(affine_action(12).is_err());
    }

    #[test]
    fn affine_f2_examples() {
        let g3 = affine_f2_action(3).unwrap();
        assert_eq!(g3.order().unwrap(), 8 * 168);
        assert!(g3.is_k_transitive(3).unwrap());
        assert!(!g3.is_k_transitive(4).unwrap());
        assert!(affine_f2_action(5).is_err());
    }
}
