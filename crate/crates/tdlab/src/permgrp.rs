//! Finite permutation groups given by generators on {1..n}.
//!
//! A deterministic Schreier-style stabilizer chain (fixed base order
//! 1, 2, 3, ...) provides order and membership. On top of that: orbit
//! computations on tuples (k-transitivity), the union-find block algorithm
//! (primitivity), normal-subgroup enumeration by conjugacy-class closures,
//! product-likeness, the Cameron branch verifier, finite transitivity degree
//! by subgroup enumeration, and the Burnside exponent bound.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::perm::FinitaryPerm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator moves point {0} outside the domain 1..={1}")]
    OutOfDomain(u32, u32),
    #[error("domain size {0} exceeds the configured bound {1}")]
    DomainBound(u32, u32),
    #[error("group order {0} exceeds the configured bound {1}")]
    OrderBound(u64, u64),
    #[error("k = {0} exceeds the domain size {1}")]
    KTooLarge(u32, u32),
    #[error("k must be at least 1")]
    KZero,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("group is not {0}-transitive")]
    NotKTransitive(u32),
    #[error("domain size must be at least 1")]
    EmptyDomain,
}

/// Dense image vector, 0-based: `p[i]` is the image of point `i`.
pub(crate) type Dense = Vec<u32>;

pub(crate) fn dense_identity(n: usize) -> Dense {
    (0..n as u32).collect()
}

pub(crate) fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    // (a * b)(x) = a(b(x)); b acts first.
    b.iter().map(|&x| a[x as usize]).collect()
}

pub(crate) fn dense_inv(a: &Dense) -> Dense {
    let mut out = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

pub(crate) fn dense_is_identity(a: &Dense) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

pub(crate) fn dense_from_finitary(p: &FinitaryPerm, n: u32) -> Result<Dense, GroupError> {
    if p.max_point() > n {
        return Err(GroupError::OutOfDomain(p.max_point(), n));
    }
    Ok((1..=n).map(|i| p.apply(i) - 1).collect())
}

pub(crate) fn dense_to_finitary(d: &Dense) -> FinitaryPerm {
    let map = d
        .iter()
        .enumerate()
        .filter(|&(i, &x)| i as u32 != x)
        .map(|(i, &x)| (i as u32 + 1, x + 1))
        .collect();
    FinitaryPerm::from_mapping(map).expect("dense vector is a permutation")
}

struct ChainLevel {
    base: u32,
    gens: Vec<Dense>,
    /// transversal[p] maps base -> p when p is in the orbit of base.
    transversal: Vec<Option<Dense>>,
}

struct StabChain {
    levels: Vec<ChainLevel>,
    order: u64,
}

/// A finite permutation group on {1..n} given by generators.
pub struct PermGroup {
    n: u32,
    gens: Vec<FinitaryPerm>,
    dense_gens: Vec<Dense>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            n: self.n,
            gens: self.gens.clone(),
            dense_gens: self.dense_gens.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(n={}, gens={:?})", self.n, self.gens)
    }
}

impl PermGroup {
    pub fn new(n: u32, gens: Vec<FinitaryPerm>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyDomain);
        }
        let mut dense_gens = Vec::new();
        let mut kept = Vec::new();
        for g in gens {
            if g.is_identity() {
                continue;
            }
            dense_gens.push(dense_from_finitary(&g, n)?);
            kept.push(g);
        }
        Ok(PermGroup {
            n,
            gens: kept,
            dense_gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(n: u32) -> Self {
        PermGroup::new(n, Vec::new()).unwrap()
    }

    pub fn domain_size(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[FinitaryPerm] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| build_chain(self.n, &self.dense_gens))
    }

    /// Group order via the stabilizer chain. The domain bound guards the
    /// chain computation for oversized inputs.
    pub fn order_bounded(&self, domain_bound: u32) -> Result<u64, GroupError> {
        if self.n > domain_bound {
            return Err(GroupError::DomainBound(self.n, domain_bound));
        }
        Ok(self.chain().order)
    }

    /// Group order with the default domain bound of 64.
    pub fn order(&self) -> Result<u64, GroupError> {
        self.order_bounded(64)
    }

    /// Exact membership test through the stabilizer chain.
    pub fn contains(&self, p: &FinitaryPerm) -> bool {
        if p.max_point() > self.n {
            return false;
        }
        let d = dense_from_finitary(p, self.n).expect("checked max point");
        self.contains_dense(&d)
    }

    pub(crate) fn contains_dense(&self, d: &Dense) -> bool {
        sift(self.chain(), d.clone()).is_none()
    }

    /// All group elements, sorted by their image vectors. Deterministic.
    pub fn elements_bounded(&self, order_bound: u64) -> Result<Vec<FinitaryPerm>, GroupError> {
        Ok(self
            .dense_elements(order_bound)?
            .iter()
            .map(dense_to_finitary)
            .collect())
    }

    pub(crate) fn dense_elements(&self, order_bound: u64) -> Result<Vec<Dense>, GroupError> {
        let order = self.chain().order;
        if order > order_bound {
            return Err(GroupError::OrderBound(order, order_bound));
        }
        let chain = self.chain();
        let mut elems = vec![dense_identity(self.n as usize)];
        for level in chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.transversal.len());
            for t in level.transversal.iter().flatten() {
                for e in &elems {
                    next.push(dense_mul(t, e));
                }
            }
            elems = next;
        }
        elems.sort_unstable();
        debug_assert_eq!(elems.len() as u64, order);
        Ok(elems)
    }

    /// Orbit of a point (1-based), ascending.
    pub fn point_orbit(&self, start: u32) -> Vec<u32> {
        let mut orbit =
            point_orbit_dense(self.n as usize, &self.dense_gens, (start - 1) as usize);
        orbit.iter_mut().for_each(|p| *p += 1);
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbit(1).len() as u32 == self.n
    }

    /// True iff the orbit of one ordered k-tuple of distinct points has the
    /// full size n(n-1)...(n-k+1).
    pub fn is_k_transitive(&self, k: u32) -> Result<bool, GroupError> {
        if k == 0 {
            return Err(GroupError::KZero);
        }
        if k > self.n {
            return Err(GroupError::KTooLarge(k, self.n));
        }
        let full: u64 = (0..k as u64).map(|i| self.n as u64 - i).product();
        let start: Vec<u32> = (0..k).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for g in &self.dense_gens {
                let img: Vec<u32> = t.iter().map(|&p| g[p as usize]).collect();
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        Ok(seen.len() as u64 == full)
    }

    /// Largest k with the natural action k-transitive.
    pub fn max_transitivity(&self) -> Result<u32, GroupError> {
        let mut k = 0;
        while k < self.n && self.is_k_transitive(k + 1)? {
            k += 1;
        }
        Ok(k)
    }
}

fn point_orbit_dense(n: usize, gens: &[Dense], start: usize) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start as u32]);
    let mut orbit = vec![start as u32];
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g[p as usize];
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
                queue.push_back(q);
            }
        }
    }
    orbit.sort_unstable();
    orbit
}

/// Walks `g` down the chain. Returns the first level where stripping gets
/// stuck, with the residue, or None when g sifts to the identity (= member).
fn sift(chain: &StabChain, g: Dense) -> Option<(usize, Dense)> {
    sift_from(chain, 0, g)
}

fn sift_from(chain: &StabChain, from: usize, mut g: Dense) -> Option<(usize, Dense)> {
    for (i, level) in chain.levels.iter().enumerate().skip(from) {
        if dense_is_identity(&g) {
            return None;
        }
        let image = g[level.base as usize] as usize;
        match &level.transversal[image] {
            Some(t) => g = dense_mul(&dense_inv(t), &g),
            None => return Some((i, g)),
        }
    }
    if dense_is_identity(&g) {
        None
    } else {
        Some((chain.levels.len(), g))
    }
}

/// Deterministic Schreier-Sims with the natural base order 1, 2, 3, ...
/// Transversals are built by FIFO orbit search applying generators in list
/// order, so reruns reproduce them exactly.
fn build_chain(n: u32, gens: &[Dense]) -> StabChain {
    let natural: Vec<u32> = (0..n).collect();
    build_chain_with_base(n, gens, &natural)
}

/// Schreier-Sims with an explicit base preference order (a permutation of
/// the points). New levels take the earliest preferred point moved by the
/// residue that created them. `force_first` pins the first base point even
/// when no generator moves it, which point-stabilizer extraction relies on.
fn build_chain_with_base(n: u32, gens: &[Dense], base_order: &[u32]) -> StabChain {
    build_chain_seeded(n, gens, base_order, None)
}

fn build_chain_seeded(
    n: u32,
    gens: &[Dense],
    base_order: &[u32],
    force_first: Option<u32>,
) -> StabChain {
    let mut chain = StabChain {
        levels: Vec::new(),
        order: 1,
    };
    if let Some(b) = force_first {
        let mut transversal: Vec<Option<Dense>> = vec![None; n as usize];
        transversal[b as usize] = Some(dense_identity(n as usize));
        chain.levels.push(ChainLevel {
            base: b,
            gens: Vec::new(),
            transversal,
        });
    }
    for g in gens {
        if let Some((level, residue)) = sift(&chain, g.clone()) {
            insert_strong_generator(&mut chain, n, base_order, level, residue);
            for l in (0..level).rev() {
                complete_level(&mut chain, n, base_order, l);
            }
        }
    }
    chain.order = chain
        .levels
        .iter()
        .map(|l| l.transversal.iter().flatten().count() as u64)
        .product();
    chain
}

fn insert_strong_generator(
    chain: &mut StabChain,
    n: u32,
    base_order: &[u32],
    level: usize,
    residue: Dense,
) {
    if level == chain.levels.len() {
        let base = base_order
            .iter()
            .copied()
            .find(|&p| residue[p as usize] != p)
            .expect("residue is not the identity");
        chain.levels.push(ChainLevel {
            base,
            gens: Vec::new(),
            transversal: vec![None; n as usize],
        });
    }
    chain.levels[level].gens.push(residue);
    complete_level(chain, n, base_order, level);
}

/// Establishes the chain invariant at `level`, assuming it already holds at
/// every deeper level: the orbit of the base under all strong generators at
/// this level and below is computed, and every Schreier generator sifts to
/// the identity through the deeper levels. Restarts whenever a new strong
/// generator lands anywhere, which can only happen finitely often because
/// the stabilizer subgroups grow each time.
fn complete_level(chain: &mut StabChain, n: u32, base_order: &[u32], level: usize) {
    'restart: loop {
        let base = chain.levels[level].base;
        let gens: Vec<Dense> = chain
            .levels
            .iter()
            .skip(level)
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        let mut transversal: Vec<Option<Dense>> = vec![None; n as usize];
        transversal[base as usize] = Some(dense_identity(n as usize));
        let mut orbit: Vec<u32> = vec![base];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            let t_p = transversal[p as usize].clone().unwrap();
            for g in &gens {
                let q = g[p as usize];
                if transversal[q as usize].is_none() {
                    transversal[q as usize] = Some(dense_mul(g, &t_p));
                    orbit.push(q);
                }
            }
        }
        chain.levels[level].transversal = transversal;

        for &p in &orbit {
            let t_p = chain.levels[level].transversal[p as usize]
                .clone()
                .unwrap();
            for g in &gens {
                let q = g[p as usize];
                let t_q = chain.levels[level].transversal[q as usize]
                    .clone()
                    .unwrap();
                let s = dense_mul(&dense_inv(&t_q), &dense_mul(g, &t_p));
                // Schreier generators fix this level's base, so they sift
                // strictly deeper.
                if let Some((deeper, residue)) = sift_from(chain, level + 1, s) {
                    insert_strong_generator(chain, n, base_order, deeper, residue);
                    continue 'restart;
                }
            }
        }
        return;
    }
}

/// A partition of {1..n} into blocks permuted setwise by the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<u32>>,
}

/// Outcome of the minimal block system search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Primitivity {
    Primitive,
    Imprimitive(BlockSystem),
}

impl PermGroup {
    /// Finds a nontrivial invariant partition via the union-find block
    /// algorithm seeded with each pair {1, beta}, or reports primitivity.
    /// The group must be transitive.
    pub fn minimal_block_system(&self) -> Result<Primitivity, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let n = self.n as usize;
        if n == 1 {
            return Ok(Primitivity::Primitive);
        }
        for beta in 1..n {
            let blocks = self.block_closure(0, beta);
            let size = blocks_size(&blocks, n);
            if size > 1 && size < n {
                let mut by_root: HashMap<u32, Vec<u32>> = HashMap::new();
                let mut parent = blocks;
                for p in 0..n {
                    let r = uf_find(&mut parent, p as u32);
                    by_root.entry(r).or_default().push(p as u32 + 1);
                }
                let mut out: Vec<Vec<u32>> = by_root.into_values().collect();
                out.sort();
                return Ok(Primitivity::Imprimitive(BlockSystem { blocks: out }));
            }
        }
        Ok(Primitivity::Primitive)
    }

    /// The finest G-congruence identifying points a and b (0-based),
    /// as a union-find parent vector.
    fn block_closure(&self, a: usize, b: usize) -> Vec<u32> {
        let n = self.n as usize;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        let mut queue = VecDeque::new();
        uf_union(&mut parent, a as u32, b as u32);
        queue.push_back((a as u32, b as u32));
        while let Some((p, q)) = queue.pop_front() {
            for g in &self.dense_gens {
                let gp = g[p as usize];
                let gq = g[q as usize];
                if uf_find(&mut parent, gp) != uf_find(&mut parent, gq) {
                    uf_union(&mut parent, gp, gq);
                    queue.push_back((gp, gq));
                }
            }
        }
        parent
    }
}

fn blocks_size(parent: &[u32], n: usize) -> usize {
    let mut parent = parent.to_vec();
    let mut roots = BTreeSet::new();
    for p in 0..n {
        roots.insert(uf_find(&mut parent, p as u32));
    }
    roots.len()
}

fn uf_find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn uf_union(parent: &mut [u32], a: u32, b: u32) {
    let ra = uf_find(parent, a);
    let rb = uf_find(parent, b);
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi as usize] = lo;
}

enum ClosureOutcome {
    Members(Vec<u32>),
    /// the closure exceeded half of the containing subgroup, so it equals it
    WholeBound,
}

/// Indexed element table of a finite permutation group: every element
/// enumerated and numbered, with fast products via a perm -> index map.
pub(crate) struct GroupData {
    pub n: u32,
    pub elems: Vec<Dense>,
    pub index: HashMap<Dense, u32>,
    pub gen_idx: Vec<u32>,
}

impl GroupData {
    pub fn build(group: &PermGroup, order_bound: u64) -> Result<Self, GroupError> {
        let elems = group.dense_elements(order_bound)?;
        let index: HashMap<Dense, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let gen_idx = group
            .dense_gens
            .iter()
            .map(|g| index[g])
            .collect();
        Ok(GroupData {
            n: group.n,
            elems,
            index,
            gen_idx,
        })
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> u32 {
        self.index[&dense_identity(self.n as usize)]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&dense_mul(&self.elems[a as usize], &self.elems[b as usize])]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&dense_inv(&self.elems[a as usize])]
    }

    pub fn conj(&self, x: u32, g: u32) -> u32 {
        // x^g = g^{-1} x g
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let m = self.size();
        let mut seen = vec![false; m];
        let mut classes = Vec::new();
        for start in 0..m as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut class = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &self.gen_idx {
                    let y = self.conj(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        class.push(y);
                        queue.push_back(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Subgroup generated by the given element indices, as a sorted list.
    /// `bound` is the order of a subgroup known to contain the closure
    /// (the whole group when nothing better is known); once the closure
    /// exceeds half of it, Lagrange forces equality and the search stops.
    fn closure_bounded(&self, gens: &[u32], bound: usize) -> ClosureOutcome {
        let mut in_set = vec![false; self.size()];
        let e = self.identity();
        in_set[e as usize] = true;
        let mut all_gens: Vec<u32> = Vec::new();
        for &g in gens {
            all_gens.push(g);
            all_gens.push(self.inv(g));
        }
        let mut members = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in &all_gens {
                let y = self.mul(x, g);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    members.push(y);
                    if 2 * members.len() > bound {
                        return ClosureOutcome::WholeBound;
                    }
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        ClosureOutcome::Members(members)
    }

    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        match self.closure_bounded(gens, self.size()) {
            ClosureOutcome::Members(m) => m,
            ClosureOutcome::WholeBound => (0..self.size() as u32).collect(),
        }
    }

    /// Normal closure of the given elements: conjugates of the generating
    /// list are adjoined in batches, extending the closure incrementally
    /// rather than from scratch, until conjugation stabilizes.
    pub fn normal_closure(&self, seeds: &[u32]) -> Vec<u32> {
        let e = self.identity();
        let mut old_gens: Vec<u32> = Vec::new();
        let mut in_set = vec![false; self.size()];
        in_set[e as usize] = true;
        let mut members = vec![e];
        let mut batch: Vec<u32> = seeds.to_vec();
        while !batch.is_empty() && members.len() < self.size() {
            self.closure_extend(&mut in_set, &mut members, &old_gens, &batch);
            old_gens.extend(batch.iter().copied());
            let mut fresh: Vec<u32> = Vec::new();
            for &x in &old_gens {
                for &g in &self.gen_idx {
                    let y = self.conj(x, g);
                    if !in_set[y as usize] && !fresh.contains(&y) {
                        fresh.push(y);
                    }
                }
            }
            batch = fresh;
        }
        members.sort_unstable();
        members
    }

    /// Grows a subgroup closure in place. Existing members only meet the
    /// new generators; members discovered here propagate through the whole
    /// symmetrized list, so no product is formed twice across batches.
    fn closure_extend(
        &self,
        in_set: &mut [bool],
        members: &mut Vec<u32>,
        old_gens: &[u32],
        new_gens: &[u32],
    ) {
        let sym = |gs: &[u32]| -> Vec<u32> {
            gs.iter().flat_map(|&g| [g, self.inv(g)]).collect()
        };
        let new_sym = sym(new_gens);
        let mut all_sym = sym(old_gens);
        all_sym.extend(new_sym.iter().copied());
        let mut queue: VecDeque<u32> = VecDeque::new();
        let snapshot: Vec<u32> = members.clone();
        for &x in &snapshot {
            for &g in &new_sym {
                let y = self.mul(x, g);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &all_sym {
                let y = self.mul(x, g);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
    }

    /// A small generating list for a subgroup given by its sorted member
    /// list, grown greedily; at most log2 |H| elements.
    pub fn small_generating_set(&self, members: &[u32]) -> Vec<u32> {
        let e = self.identity();
        let mut gens: Vec<u32> = Vec::new();
        let mut cl: Vec<u32> = vec![e];
        for &m in members {
            if cl.len() == members.len() {
                break;
            }
            if cl.binary_search(&m).is_ok() {
                continue;
            }
            gens.push(m);
            cl = match self.closure_bounded(&gens, members.len()) {
                ClosureOutcome::Members(c) => c,
                ClosureOutcome::WholeBound => members.to_vec(),
            };
        }
        gens
    }

    /// Orbit of a point under a subgroup given by element indices.
    pub fn subgroup_is_transitive(&self, members: &[u32]) -> bool {
        let orbit: BTreeSet<u32> = members
            .iter()
            .map(|&m| self.elems[m as usize][0])
            .collect();
        orbit.len() as u32 == self.n
    }

    pub fn to_perm_group(&self, members: &[u32]) -> PermGroup {
        let gens = self
            .small_generating_set(members)
            .iter()
            .map(|&m| dense_to_finitary(&self.elems[m as usize]))
            .filter(|p| !p.is_identity())
            .collect();
        PermGroup::new(self.n, gens).expect("members act on the same domain")
    }

    /// All subgroups whose elements lie in `pool` (a sorted index list that
    /// is itself closed under the group operation), as sorted index lists.
    pub fn subgroups_within(&self, pool: &[u32]) -> Vec<Vec<u32>> {
        let e = self.identity();
        let closure_in = |gens: &[u32]| -> Vec<u32> {
            let mut set: BTreeSet<u32> = BTreeSet::new();
            set.insert(e);
            let mut all: Vec<u32> = gens.to_vec();
            all.extend(gens.iter().map(|&g| self.inv(g)));
            let mut queue = VecDeque::from([e]);
            while let Some(x) = queue.pop_front() {
                for &g in &all {
                    let y = self.mul(x, g);
                    if set.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            set.into_iter().collect()
        };
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out: Vec<(Vec<u32>, Vec<u32>)> = vec![(vec![e], vec![])];
        seen.insert(vec![e]);
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let (members, gens) = out[idx].clone();
            for &g in pool {
                if members.binary_search(&g).is_ok() {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(g);
                let new_members = closure_in(&new_gens);
                if seen.insert(new_members.clone()) {
                    out.push((new_members, new_gens));
                    frontier.push(out.len() - 1);
                }
            }
        }
        let mut sets: Vec<Vec<u32>> = out.into_iter().map(|(m, _)| m).collect();
        sets.sort_by_key(|s| (s.len(), s.clone()));
        sets
    }
}

impl PermGroup {
    /// All normal subgroups, computed as joins of normal closures of single
    /// conjugacy classes, deduplicated by their element sets. Returned in
    /// increasing order of subgroup order; each entry carries its full
    /// member list as generators.
    pub fn normal_subgroups(&self, order_bound: u64) -> Result<Vec<PermGroup>, GroupError> {
        let data = GroupData::build(self, order_bound)?;
        Ok(normal_subgroup_sets(&data)
            .iter()
            .map(|members| data.to_perm_group(members))
            .collect())
    }
}

pub(crate) fn normal_subgroup_sets(data: &GroupData) -> Vec<Vec<u32>> {
    let e = data.identity();
    let classes = data.conjugacy_classes();
    let mut found: Vec<Vec<u32>> = vec![vec![e]];
    let mut keys: HashSet<Vec<u32>> = HashSet::new();
    keys.insert(vec![e]);

    // Single-class normal closures.
    let mut atoms: Vec<Vec<u32>> = Vec::new();
    for class in &classes {
        if class.len() == 1 && class[0] == e {
            continue;
        }
        let closure = data.normal_closure(&[class[0]]);
        if keys.insert(closure.clone()) {
            found.push(closure.clone());
        }
        atoms.push(closure);
    }

    // Saturate under joins. Every normal subgroup is the join of the
    // closures of the classes it contains, so this reaches all of them.
    let mut frontier = found.clone();
    while let Some(current) = frontier.pop() {
        for atom in &atoms {
            if atom.iter().all(|x| current.binary_search(x).is_ok()) {
                continue;
            }
            let mut seed: Vec<u32> = current.clone();
            seed.extend(atom.iter().copied());
            let join = data.normal_closure(&seed);
            if keys.insert(join.clone()) {
                found.push(join.clone());
                frontier.push(join);
            }
        }
    }
    found.sort_by_key(|s| (s.len(), s.clone()));
    found
}

impl PermGroup {
    /// Searches the normal subgroup list for a pair of nontrivial normal
    /// subgroups with trivial intersection.
    pub fn is_product_like(
        &self,
        order_bound: u64,
    ) -> Result<Option<(PermGroup, PermGroup)>, GroupError> {
        let data = GroupData::build(self, order_bound)?;
        let sets = normal_subgroup_sets(&data);
        for (i, a) in sets.iter().enumerate() {
            if a.len() == 1 {
                continue;
            }
            for b in sets.iter().skip(i + 1) {
                if b.len() == 1 {
                    continue;
                }
                let inter = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
                if inter == 1 {
                    return Ok(Some((data.to_perm_group(a), data.to_perm_group(b))));
                }
            }
        }
        Ok(None)
    }
}

/// One applicable (T, R) pair in the minimality check: T a transitive
/// subgroup centralizing the nontrivial normal subgroup R.
#[derive(Debug, Clone, Serialize)]
pub struct MinLemmaEntry {
    pub r_order: u64,
    pub t_order: u64,
    pub r_is_minimal_normal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinLemmaReport {
    pub entries: Vec<MinLemmaEntry>,
    pub all_ok: bool,
}

fn min_lemma_entries(data: &GroupData, normals: &[Vec<u32>]) -> Vec<MinLemmaEntry> {
    let mut entries = Vec::new();
    for r in normals.iter().filter(|r| r.len() > 1) {
        let pool = PermGroup::centralizer_members(data, r);
        for t in data.subgroups_within(&pool) {
            if !data.subgroup_is_transitive(&t) {
                continue;
            }
            let minimal = normals.iter().all(|n2| {
                n2.len() == 1
                    || n2.len() >= r.len()
                    || !n2.iter().all(|x| r.binary_search(x).is_ok())
            });
            entries.push(MinLemmaEntry {
                r_order: r.len() as u64,
                t_order: t.len() as u64,
                r_is_minimal_normal: minimal,
            });
        }
    }
    entries
}

impl PermGroup {
    /// Finite variant of the minimality lemma: for a primitive group, every
    /// nontrivial normal subgroup R centralized by some transitive subgroup
    /// T must be a minimal normal subgroup. Enumerates all applicable
    /// (T, R) pairs; the centralizer of a transitive subgroup is semiregular,
    /// so the T-search space stays small.
    pub fn check_min_lemma(&self, order_bound: u64) -> Result<MinLemmaReport, GroupError> {
        if self.minimal_block_system()? != Primitivity::Primitive {
            return Err(GroupError::NotPrimitive);
        }
        let data = GroupData::build(self, order_bound)?;
        let normals = normal_subgroup_sets(&data);
        let entries = min_lemma_entries(&data, &normals);
        let all_ok = entries.iter().all(|e| e.r_is_minimal_normal);
        Ok(MinLemmaReport { entries, all_ok })
    }
}

/// Combined report of the classical-lemma checks for one permutation group,
/// computed in a single pass over its element table.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaSuiteReport {
    pub order: u64,
    pub transitive: bool,
    pub two_transitive: bool,
    pub primitive: bool,
    pub normal_subgroup_orders: Vec<u64>,
    /// primitive groups: every nontrivial normal subgroup acts transitively
    pub normals_transitive: Option<bool>,
    /// primitive groups: every point stabilizer is maximal
    pub stabilizers_maximal: Option<bool>,
    pub min_lemma: Option<MinLemmaReport>,
    pub ok: bool,
}

impl PermGroup {
    /// Runs the lemma checks: 2-transitivity forces primitivity; primitivity
    /// forces transitive nontrivial normal subgroups and maximal point
    /// stabilizers; and the finite minimality variant holds for every
    /// applicable centralizing pair.
    pub fn lemma_suite(&self, order_bound: u64) -> Result<LemmaSuiteReport, GroupError> {
        let order = self.order_bounded(u32::MAX)?;
        let transitive = self.is_transitive();
        let two_transitive = self.n >= 2 && transitive && self.is_k_transitive(2)?;
        let primitive = transitive
            && self.minimal_block_system()? == Primitivity::Primitive;
        let mut normals_transitive = None;
        let mut stabilizers_maximal = None;
        let mut min_lemma = None;
        let mut normal_orders = Vec::new();
        if primitive {
            let data = GroupData::build(self, order_bound)?;
            let normals = normal_subgroup_sets(&data);
            normal_orders = normals.iter().map(|s| s.len() as u64).collect();
            normals_transitive = Some(
                normals
                    .iter()
                    .filter(|s| s.len() > 1)
                    .all(|s| data.subgroup_is_transitive(s)),
            );
            let mut all_max = true;
            for omega in 1..=self.n {
                if !self.stabilizer_is_maximal(omega)? {
                    all_max = false;
                    break;
                }
            }
            stabilizers_maximal = Some(all_max);
            let entries = min_lemma_entries(&data, &normals);
            let all_ok = entries.iter().all(|e| e.r_is_minimal_normal);
            min_lemma = Some(MinLemmaReport { entries, all_ok });
        }
        let ok = (!two_transitive || primitive)
            && normals_transitive.unwrap_or(true)
            && stabilizers_maximal.unwrap_or(true)
            && min_lemma.as_ref().map_or(true, |m| m.all_ok);
        Ok(LemmaSuiteReport {
            order,
            transitive,
            two_transitive,
            primitive,
            normal_subgroup_orders: normal_orders,
            normals_transitive,
            stabilizers_maximal,
            min_lemma,
            ok,
        })
    }
}

/// Branch record for one normal subgroup in the Cameron verifier.
#[derive(Debug, Clone, Serialize)]
pub struct CameronEntry {
    pub subgroup_order: u64,
    pub k_minus_one_transitive: bool,
    pub elementary_abelian_2: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CameronReport {
    pub k: u32,
    pub entries: Vec<CameronEntry>,
    pub all_ok: bool,
}

impl PermGroup {
    /// For every nontrivial normal subgroup N, records whether N is
    /// (k-1)-transitive or (k = 3 and N is an elementary abelian 2-group).
    /// Requires the group itself to be k-transitive with k >= 2.
    pub fn verify_cameron(&self, k: u32, order_bound: u64) -> Result<CameronReport, GroupError> {
        if k < 2 {
            return Err(GroupError::KZero);
        }
        if !self.is_k_transitive(k)? {
            return Err(GroupError::NotKTransitive(k));
        }
        let data = GroupData::build(self, order_bound)?;
        let sets = normal_subgroup_sets(&data);
        let mut entries = Vec::new();
        for members in &sets {
            if members.len() == 1 {
                continue;
            }
            let sub = data.to_perm_group(members);
            let trans = sub.is_k_transitive(k - 1)?;
            let ea2 = members.iter().all(|&m| {
                let x = &data.elems[m as usize];
                dense_is_identity(&dense_mul(x, x))
            });
            let ok = trans || (k == 3 && ea2);
            entries.push(CameronEntry {
                subgroup_order: members.len() as u64,
                k_minus_one_transitive: trans,
                elementary_abelian_2: ea2,
                ok,
            });
        }
        let all_ok = entries.iter().all(|e| e.ok);
        Ok(CameronReport { k, entries, all_ok })
    }

    /// Point stabilizer generators for omega (1-based): a fresh chain is
    /// built with omega as the first base point, and the strong generators
    /// of the deeper levels generate the stabilizer.
    pub fn stabilizer_generators(&self, omega: u32) -> Vec<FinitaryPerm> {
        let mut base_order: Vec<u32> = vec![omega - 1];
        base_order.extend((0..self.n).filter(|&p| p != omega - 1));
        let chain =
            build_chain_seeded(self.n, &self.dense_gens, &base_order, Some(omega - 1));
        chain
            .levels
            .iter()
            .skip(1)
            .flat_map(|l| l.gens.iter())
            .map(dense_to_finitary)
            .collect()
    }

    /// Maximality of Stab(omega), decided by checking that adjoining any
    /// element outside the stabilizer generates the whole group. Since
    /// <Stab, h> only depends on the coset h Stab, one representative per
    /// target point beta = h(omega) covers every h outside the stabilizer.
    pub fn stabilizer_is_maximal(&self, omega: u32) -> Result<bool, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let order = self.chain().order;
        let stab_gens: Vec<Dense> = self
            .stabilizer_generators(omega)
            .iter()
            .map(|g| dense_from_finitary(g, self.n))
            .collect::<Result<_, _>>()?;
        let stab_order = order / self.n as u64;
        for beta in 1..=self.n {
            if beta == omega {
                continue;
            }
            let h = self.transporter(omega, beta).ok_or(GroupError::NotTransitive)?;
            let mut gens = stab_gens.clone();
            gens.push(h);
            // <Stab, h> = G iff its orbit of omega is the whole domain:
            // the subgroup contains Stab, so its order is at least
            // |Stab| * |orbit| = |G| once the orbit is everything.
            let orbit = point_orbit_dense(self.n as usize, &gens, (omega - 1) as usize);
            if (orbit.len() as u32) < self.n {
                return Ok(false);
            }
            let _ = stab_order;
        }
        Ok(true)
    }

    /// Some element mapping a to b (1-based), if one exists.
    pub fn transporter(&self, a: u32, b: u32) -> Option<Dense> {
        let n = self.n as usize;
        let a0 = (a - 1) as usize;
        let b0 = (b - 1) as usize;
        let mut reached: Vec<Option<Dense>> = vec![None; n];
        reached[a0] = Some(dense_identity(n));
        let mut queue = VecDeque::from([a0]);
        while let Some(p) = queue.pop_front() {
            if p == b0 {
                return reached[p].clone();
            }
            let t_p = reached[p].clone().unwrap();
            for g in &self.dense_gens {
                let q = g[p] as usize;
                if reached[q].is_none() {
                    reached[q] = Some(dense_mul(g, &t_p));
                    queue.push_back(q);
                }
            }
        }
        reached[b0].clone()
    }

    /// Centralizer element indices of a subgroup (given by members) inside
    /// this group's element table. Commuting with a generating set suffices.
    pub(crate) fn centralizer_members(data: &GroupData, members: &[u32]) -> Vec<u32> {
        let gens = data.small_generating_set(members);
        (0..data.size() as u32)
            .filter(|&x| gens.iter().all(|&m| data.mul(x, m) == data.mul(m, x)))
            .collect()
    }
}

/// Report for the finite transitivity degree computation.
#[derive(Debug, Clone, Serialize)]
pub struct TdReport {
    pub degree: u32,
    pub witness_index: u64,
    pub subgroups_examined: usize,
}

impl PermGroup {
    /// Finite transitivity degree: the maximum, over core-free subgroups H,
    /// of the transitivity of the action on left cosets of H. Subgroups are
    /// enumerated by closure extension; the order budget guards blowup.
    pub fn transitivity_degree_finite(&self, max_order: u64) -> Result<TdReport, GroupError> {
        let data = GroupData::build(self, max_order)?;
        let m = data.size();
        let e = data.identity();

        // Full multiplication table: |G| <= 60-ish makes this cheap.
        let mut mul = vec![0u16; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = data.mul(a as u32, b as u32) as u16;
            }
        }
        let mulf = |a: u16, b: u16| mul[a as usize * m + b as usize];
        let invs: Vec<u16> = (0..m).map(|a| data.inv(a as u32) as u16).collect();

        let closure = |gens: &[u16]| -> Vec<u16> {
            let mut in_set = vec![false; m];
            in_set[e as usize] = true;
            let mut out = vec![e as u16];
            let mut all: Vec<u16> = gens.to_vec();
            all.extend(gens.iter().map(|&g| invs[g as usize]));
            let mut queue = VecDeque::from([e as u16]);
            while let Some(x) = queue.pop_front() {
                for &g in &all {
                    let y = mulf(x, g);
                    if !in_set[y as usize] {
                        in_set[y as usize] = true;
                        out.push(y);
                        queue.push_back(y);
                    }
                }
            }
            out.sort_unstable();
            out
        };

        // All subgroups by iterated one-element extension.
        let mut subgroups: Vec<(Vec<u16>, Vec<u16>)> = Vec::new(); // (members, gens)
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let trivial = vec![e as u16];
        seen.insert(trivial.clone());
        subgroups.push((trivial, vec![]));
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let (members, gens) = subgroups[idx].clone();
            for g in 0..m as u16 {
                if members.binary_search(&g).is_ok() {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(g);
                let new_members = closure(&new_gens);
                if seen.insert(new_members.clone()) {
                    subgroups.push((new_members, new_gens));
                    frontier.push(subgroups.len() - 1);
                }
            }
        }

        // Nontrivial normal subgroups (for the core-free test).
        let normals: Vec<Vec<u16>> = subgroups
            .iter()
            .map(|(mm, _)| mm.clone())
            .filter(|mm| {
                mm.len() > 1
                    && mm.iter().all(|&x| {
                        data.gen_idx.iter().all(|&g| {
                            let c = data.conj(x as u32, g) as u16;
                            mm.binary_search(&c).is_ok()
                        })
                    })
            })
            .collect();

        let mut best = 0u32;
        let mut witness = 0u64;
        for (members, _) in &subgroups {
            let core_free = normals
                .iter()
                .all(|nm| !nm.iter().all(|x| members.binary_search(x).is_ok()));
            if !core_free {
                continue;
            }
            // Left coset decomposition and the coset action of the group
            // generators.
            let mut coset_of = vec![u32::MAX; m];
            let mut reps: Vec<u16> = Vec::new();
            for x in 0..m as u16 {
                if coset_of[x as usize] != u32::MAX {
                    continue;
                }
                let c = reps.len() as u32;
                reps.push(x);
                for &h in members {
                    coset_of[mulf(x, h) as usize] = c;
                }
            }
            let degree_n = reps.len() as u32;
            let mut gens = Vec::new();
            for &g in &data.gen_idx {
                let mut map = std::collections::BTreeMap::new();
                for (c, &rep) in reps.iter().enumerate() {
                    let img = coset_of[mulf(g as u16, rep) as usize];
                    if img != c as u32 {
                        map.insert(c as u32 + 1, img + 1);
                    }
                }
                if !map.is_empty() {
                    gens.push(FinitaryPerm::from_mapping(map).expect("coset action is a bijection"));
                }
            }
            let action = PermGroup::new(degree_n, gens)?;
            let k = action.max_transitivity()?;
            if k > best {
                best = k;
                witness = members.len() as u64;
            }
        }
        Ok(TdReport {
            degree: best,
            witness_index: m as u64 / witness.max(1),
            subgroups_examined: subgroups.len(),
        })
    }
}

/// The largest k such that every positive integer p <= k divides n,
/// equivalently lcm(1..k) | n.
pub fn burnside_td_upper_bound(n: u64) -> u32 {
    let mut k = 1u32;
    let mut l = 1u64;
    loop {
        let next = k as u64 + 1;
        let g = gcd(l, next);
        let nl = l / g * next;
        if n % nl == 0 {
            l = nl;
            k += 1;
        } else {
            return k;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: u32, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn s4() -> PermGroup {
        grp(4, &["(1 2)", "(1 2 3 4)"])
    }

    fn a4() -> PermGroup {
        grp(4, &["(1 2 3)", "(2 3 4)"])
    }

    #[test]
    fn order_examples() {
        assert_eq!(s4().order().unwrap(), 24);
        assert_eq!(PermGroup::trivial(5).order().unwrap(), 1);
        assert_eq!(a4().order().unwrap(), 12);
    }

    #[test]
    fn membership_examples() {
        let g = a4();
        assert!(!g.contains(&"(1 2)".parse().unwrap()));
        assert!(g.contains(&"(1 2)(3 4)".parse().unwrap()));
        assert!(g.contains(&FinitaryPerm::identity()));
    }

    #[test]
    fn order_agrees_with_brute_force_closure() {
        for (n, gens) in [
            (5u32, vec!["(1 2)", "(1 2 3 4 5)"]),
            (6, vec!["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"]),
            (7, vec!["(1 2 3 4 5 6 7)", "(1 2)(3 6)"]),
        ] {
            let g = grp(n, &gens);
            // brute force closure
            let mut set: HashSet<Vec<u32>> = HashSet::new();
            let dg: Vec<Dense> = gens
                .iter()
                .map(|s| dense_from_finitary(&s.parse().unwrap(), n).unwrap())
                .collect();
            let mut queue = vec![dense_identity(n as usize)];
            set.insert(queue[0].clone());
            while let Some(x) = queue.pop() {
                for d in &dg {
                    let y = dense_mul(&x, d);
                    if set.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            assert_eq!(g.order().unwrap(), set.len() as u64);
        }
    }

    #[test]
    fn k_transitivity_classics() {
        let s4 = s4();
        assert!(s4.is_k_transitive(4).unwrap());
        assert_eq!(s4.max_transitivity().unwrap(), 4);
        let a4 = a4();
        assert!(a4.is_k_transitive(2).unwrap());
        assert!(!a4.is_k_transitive(3).unwrap());
        assert_eq!(
            a4.is_k_transitive(5).unwrap_err(),
            GroupError::KTooLarge(5, 4)
        );
    }

    #[test]
    fn transitivity_is_monotone() {
        let g = grp(5, &["(1 2)", "(1 2 3 4 5)"]);
        let kmax = g.max_transitivity().unwrap();
        for k in 1..=kmax {
            assert!(g.is_k_transitive(k).unwrap());
        }
    }

    #[test]
    fn block_system_examples() {
        let c4 = grp(4, &["(1 2 3 4)"]);
        match c4.minimal_block_system().unwrap() {
            Primitivity::Imprimitive(bs) => {
                assert_eq!(bs.blocks, vec![vec![1, 3], vec![2, 4]]);
            }
            Primitivity::Primitive => panic!("C4 is imprimitive"),
        }
        assert_eq!(s4().minimal_block_system().unwrap(), Primitivity::Primitive);
        let d4 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        match d4.minimal_block_system().unwrap() {
            Primitivity::Imprimitive(bs) => {
                assert_eq!(bs.blocks, vec![vec![1, 3], vec![2, 4]]);
            }
            Primitivity::Primitive => panic!("D4 is imprimitive"),
        }
        assert_eq!(
            PermGroup::trivial(3).minimal_block_system().unwrap_err(),
            GroupError::NotTransitive
        );
    }

    #[test]
    fn normal_subgroups_examples() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let orders: Vec<u64> = s3
            .normal_subgroups(10_000)
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![1, 3, 6]);

        // C2 x C2 regular: all five subgroups are normal.
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let orders: Vec<u64> = v4
            .normal_subgroups(10_000)
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4]);

        // A5 is simple.
        let a5 = grp(5, &["(1 2 3)", "(3 4 5)"]);
        let orders: Vec<u64> = a5
            .normal_subgroups(10_000)
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![1, 60]);
    }

    #[test]
    fn product_like_examples() {
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let pair = v4.is_product_like(10_000).unwrap();
        assert!(pair.is_some());
        let (a, b) = pair.unwrap();
        assert_eq!(a.order().unwrap(), 2);
        assert_eq!(b.order().unwrap(), 2);

        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        assert!(s3.is_product_like(10_000).unwrap().is_none());

        // Q8 regular action on 8 points: 1 -> i -> -1 ..., every nontrivial
        // normal subgroup contains the center.
        let q8 = grp(
            8,
            &["(1 2 3 4)(5 8 7 6)", "(1 5 3 7)(2 6 4 8)"],
        );
        assert_eq!(q8.order().unwrap(), 8);
        assert!(q8.is_product_like(10_000).unwrap().is_none());
    }

    #[test]
    fn cameron_s5_k3() {
        let s5 = grp(5, &["(1 2)", "(1 2 3 4 5)"]);
        let rep = s5.verify_cameron(3, 10_000).unwrap();
        assert!(rep.all_ok);
        // A5 (order 60) passes via (k-1)-transitivity.
        let a5 = rep.entries.iter().find(|e| e.subgroup_order == 60).unwrap();
        assert!(a5.k_minus_one_transitive);
    }

    #[test]
    fn cameron_boundary_s4_k4_recorded_not_asserted() {
        // A4 on 4 points is 2- but not 3-transitive; with k = 4 the finite
        // verifier must report a branch failure for N = A4. The infinite
        // hypothesis of the underlying lemma does not transfer here, so the
        // outcome is recorded rather than asserted as a theorem.
        let rep = s4().verify_cameron(4, 10_000).unwrap();
        assert!(!rep.all_ok);
        let a4 = rep.entries.iter().find(|e| e.subgroup_order == 12).unwrap();
        assert!(!a4.k_minus_one_transitive);
        assert!(!a4.ok);
    }

    #[test]
    fn stabilizer_maximality_in_s4() {
        let g = s4();
        for omega in 1..=4 {
            assert!(g.stabilizer_is_maximal(omega).unwrap());
        }
        // C4 regular: stabilizer is trivial, not maximal (C2 sits between).
        let c4 = grp(4, &["(1 2 3 4)"]);
        assert!(!c4.stabilizer_is_maximal(1).unwrap());
    }

    #[test]
    fn td_finite_examples() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(s3.transitivity_degree_finite(60).unwrap().degree, 3);
        assert_eq!(a4().transitivity_degree_finite(60).unwrap().degree, 2);
        let c6 = grp(6, &["(1 2 3 4 5 6)"]);
        assert_eq!(c6.transitivity_degree_finite(60).unwrap().degree, 1);
    }

    #[test]
    fn td_finite_respects_budget() {
        let s5 = grp(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert!(matches!(
            s5.transitivity_degree_finite(60),
            Err(GroupError::OrderBound(120, 60))
        ));
    }

    #[test]
    fn min_lemma_on_s4() {
        // The only applicable pair in S4 is T = R = V4 (self-centralizing,
        // regular); V4 is a minimal normal subgroup.
        let rep = s4().check_min_lemma(10_000).unwrap();
        assert!(rep.all_ok);
        assert!(rep
            .entries
            .iter()
            .any(|e| e.r_order == 4 && e.t_order == 4 && e.r_is_minimal_normal));
        // C4 is imprimitive, so the precondition fails.
        let c4 = grp(4, &["(1 2 3 4)"]);
        assert_eq!(c4.check_min_lemma(10_000).unwrap_err(), GroupError::NotPrimitive);
    }

    #[test]
    fn burnside_bound_examples() {
        assert_eq!(burnside_td_upper_bound(3), 1);
        assert_eq!(burnside_td_upper_bound(665), 1);
        assert_eq!(burnside_td_upper_bound(12), 4);
        assert_eq!(burnside_td_upper_bound(2), 2);
    }

    #[test]
    fn stabilizer_generators_generate_the_stabilizer() {
        let g = s4();
        for omega in 1..=4u32 {
            let gens = g.stabilizer_generators(omega);
            assert!(gens.iter().all(|h| h.apply(omega) == omega));
            let stab = PermGroup::new(4, gens).unwrap();
            assert_eq!(stab.order().unwrap(), 6);
        }
    }
}
