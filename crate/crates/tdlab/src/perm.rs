//! Permutations of the countable domain 1, 2, 3, ...
//!
//! Two representations live here: [`FinitaryPerm`] for permutations moving
//! finitely many points, and [`LazyPerm`] for oracle-backed permutations with
//! (possibly) infinite support. On top of these sit the separating-permutation
//! constructor and the commutator sentence checker for even finitary
//! permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("mapping is not a bijection: {0}")]
    NotBijective(String),
    #[error("point 0 is not in the domain (points are 1-based)")]
    ZeroPoint,
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("oracle permutation must have infinite support")]
    FinitarySupport,
    #[error("need at least one (a_i, alpha_i) pair")]
    EmptyPairs,
}

/// A permutation of {1, 2, 3, ...} moving only finitely many points.
///
/// Only moved points are stored; `n -> n` never appears in the map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinitaryPerm {
    map: BTreeMap<u32, u32>,
}

impl FinitaryPerm {
    pub fn identity() -> Self {
        FinitaryPerm::default()
    }

    /// Builds a permutation from an explicit point -> image map.
    /// Fixed points are pruned; the map must be injective with equal
    /// key and value sets.
    pub fn from_mapping(map: BTreeMap<u32, u32>) -> Result<Self, PermError> {
        if map.keys().any(|&p| p == 0) || map.values().any(|&p| p == 0) {
            return Err(PermError::ZeroPoint);
        }
        let keys: BTreeSet<u32> = map.keys().copied().collect();
        let values: BTreeSet<u32> = map.values().copied().collect();
        if keys != values || values.len() != map.len() {
            return Err(PermError::NotBijective(format!(
                "keys {:?} vs values {:?}",
                keys, values
            )));
        }
        let pruned: BTreeMap<u32, u32> = map.into_iter().filter(|&(p, q)| p != q).collect();
        Ok(FinitaryPerm { map: pruned })
    }

    /// Product of the given cycles, rightmost applied first. Each cycle is a
    /// list of pairwise distinct points.
    pub fn from_cycles(cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut acc = FinitaryPerm::identity();
        for cyc in cycles {
            let mut map = BTreeMap::new();
            let set: BTreeSet<u32> = cyc.iter().copied().collect();
            if set.len() != cyc.len() {
                return Err(PermError::NotBijective(format!(
                    "repeated point in cycle {:?}",
                    cyc
                )));
            }
            if cyc.len() >= 2 {
                for i in 0..cyc.len() {
                    map.insert(cyc[i], cyc[(i + 1) % cyc.len()]);
                }
            }
            acc = acc.compose(&Self::from_mapping(map)?);
        }
        Ok(acc)
    }

    pub fn transposition(a: u32, b: u32) -> Result<Self, PermError> {
        if a == b {
            return Err(PermError::NotBijective("transposition needs a != b".into()));
        }
        Self::from_cycles(&[vec![a, b]])
    }

    pub fn apply(&self, p: u32) -> u32 {
        *self.map.get(&p).unwrap_or(&p)
    }

    pub fn apply_inverse(&self, p: u32) -> u32 {
        self.map
            .iter()
            .find_map(|(&k, &v)| (v == p).then_some(k))
            .unwrap_or(p)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Moved points in increasing order.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.map.keys().copied()
    }

    pub fn support_size(&self) -> usize {
        self.map.len()
    }

    pub fn max_point(&self) -> u32 {
        self.map.keys().next_back().copied().unwrap_or(0)
    }

    /// Composition: `(self . other)(n) = self(other(n))`; `other` acts first.
    pub fn compose(&self, other: &FinitaryPerm) -> FinitaryPerm {
        let mut map = BTreeMap::new();
        for &p in other.map.keys().chain(self.map.keys()) {
            let q = self.apply(other.apply(p));
            if q != p {
                map.insert(p, q);
            }
        }
        FinitaryPerm { map }
    }

    pub fn inverse(&self) -> FinitaryPerm {
        let map = self.map.iter().map(|(&p, &q)| (q, p)).collect();
        FinitaryPerm { map }
    }

    /// `self^y = y^{-1} . self . y`.
    pub fn conjugate_by(&self, y: &FinitaryPerm) -> FinitaryPerm {
        y.inverse().compose(self).compose(y)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(a: &FinitaryPerm, b: &FinitaryPerm) -> FinitaryPerm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    /// Disjoint cycle decomposition, each cycle starting at its smallest
    /// point, cycles sorted by smallest point. Fixed points omitted.
    pub fn cycle_form(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut cycles = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut p = self.apply(start);
            while p != start {
                cyc.push(p);
                seen.insert(p);
                p = self.apply(p);
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// True iff the permutation is even (a product of an even number of
    /// transpositions). A cycle of length L contributes L - 1.
    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_form().iter().map(|c| c.len() - 1).sum();
        transpositions % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.cycle_form()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, lcm)
    }

    pub fn pow(&self, e: i64) -> FinitaryPerm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = FinitaryPerm::identity();
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for FinitaryPerm {
    /// Canonical cycle notation: `(1 2 3)(5 6)`, identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_form();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinitaryPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for FinitaryPerm {
    type Err = PermError;

    /// Parses cycle notation `(1 2 3)(5 6)`; the identity is `()`.
    /// Points may also be separated by commas.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Parse("empty string".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(PermError::Parse(format!("expected '(' at {:?}", rest)));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Parse("unbalanced '('".into()))?;
            let inner = &rest[1..close];
            let points: Result<Vec<u32>, _> = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| PermError::Parse(format!("bad point {:?}", t)))
                })
                .collect();
            let points = points?;
            if points.len() == 1 {
                return Err(PermError::Parse(format!(
                    "cycle of length 1: ({})",
                    points[0]
                )));
            }
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest[close + 1..];
        }
        FinitaryPerm::from_cycles(&cycles)
    }
}

type PointFn = Arc<dyn Fn(u32) -> u32 + Send + Sync>;
type SupportFn = Arc<dyn Fn() -> Box<dyn Iterator<Item = u32> + Send> + Send + Sync>;

/// An oracle-backed permutation of the natural numbers. The forward and
/// inverse maps are total functions; the support enumerator yields moved
/// points in increasing order and may be infinite. Oracles must be pure so
/// values can be shared across threads.
#[derive(Clone)]
pub struct LazyPerm {
    eval: PointFn,
    eval_inverse: PointFn,
    support: SupportFn,
    infinite_support: bool,
}

impl LazyPerm {
    /// Wraps raw oracles. `infinite_support` is a declared property of the
    /// oracle; it cannot be decided from finitely many queries.
    pub fn new<F, G, S, I>(eval: F, eval_inverse: G, support: S, infinite_support: bool) -> Self
    where
        F: Fn(u32) -> u32 + Send + Sync + 'static,
        G: Fn(u32) -> u32 + Send + Sync + 'static,
        S: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = u32> + Send + 'static,
    {
        LazyPerm {
            eval: Arc::new(eval),
            eval_inverse: Arc::new(eval_inverse),
            support: Arc::new(move || Box::new(support())),
            infinite_support,
        }
    }

    pub fn from_finitary(p: &FinitaryPerm) -> Self {
        let fwd = p.clone();
        let bwd = p.inverse();
        let supp = p.clone();
        LazyPerm::new(
            move |n| fwd.apply(n),
            move |n| bwd.apply(n),
            move || supp.support().collect::<Vec<_>>().into_iter(),
            false,
        )
    }

    /// The involution (1 2)(3 4)(5 6)... swapping 2k-1 and 2k.
    pub fn pairwise_swapper() -> Self {
        let swap = |n: u32| if n % 2 == 1 { n + 1 } else { n - 1 };
        LazyPerm::new(swap, swap, || 1u32.., true)
    }

    /// The product of 3-cycles (1 2 3)(4 5 6)(7 8 9)...
    pub fn block_three_cycles() -> Self {
        let fwd = |n: u32| match (n - 1) % 3 {
            0 | 1 => n + 1,
            _ => n - 2,
        };
        let bwd = |n: u32| match (n - 1) % 3 {
            1 | 2 => n - 1,
            _ => n + 2,
        };
        LazyPerm::new(fwd, bwd, || 1u32.., true)
    }

    pub fn apply(&self, n: u32) -> u32 {
        (self.eval)(n)
    }

    pub fn apply_inverse(&self, n: u32) -> u32 {
        (self.eval_inverse)(n)
    }

    pub fn support_iter(&self) -> Box<dyn Iterator<Item = u32> + Send> {
        (self.support)()
    }

    pub fn has_infinite_support(&self) -> bool {
        self.infinite_support
    }

    /// Spot-checks the oracle contract (`eval . eval_inverse = id` and
    /// support points actually move) on the given points.
    pub fn verify_on(&self, points: impl IntoIterator<Item = u32>) -> bool {
        points.into_iter().all(|n| {
            self.apply_inverse(self.apply(n)) == n && self.apply(self.apply_inverse(n)) == n
        })
    }
}

impl fmt::Debug for LazyPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LazyPerm {{ infinite_support: {} }}",
            self.infinite_support
        )
    }
}

/// The bookkeeping produced alongside a separating permutation: the chain
/// points n_0, m_i, n_i, the filler points l_ij, the cycles c_i, the finite
/// patch s_0 and the forbidden sets Y_i.
#[derive(Clone, Debug)]
pub struct SeparatorPlan {
    pub n0: u32,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub fillers: Vec<Vec<u32>>,
    pub cycles: Vec<FinitaryPerm>,
    pub s0: FinitaryPerm,
    pub forbidden: Vec<BTreeSet<u32>>,
}

impl SeparatorPlan {
    /// Re-checks the plan invariants: all chain and filler points pairwise
    /// distinct and disjoint from X union s(X); n_i = a_i(m_i) is checked by
    /// the caller who owns the oracles.
    pub fn check_invariants(&self, x: &BTreeSet<u32>, s: &FinitaryPerm) -> bool {
        let mut all = vec![self.n0];
        all.extend(&self.m);
        all.extend(&self.n);
        for row in &self.fillers {
            all.extend(row);
        }
        let set: BTreeSet<u32> = all.iter().copied().collect();
        if set.len() != all.len() {
            return false;
        }
        let xsx: BTreeSet<u32> = x.iter().copied().chain(x.iter().map(|&p| s.apply(p))).collect();
        set.is_disjoint(&xsx)
    }
}

/// Constructs `t` with `t = s` on `X` while the product
/// `a_k t^{alpha_k} ... a_1 t^{alpha_1}` moves the plan's point n_0 to n_k.
///
/// Wherever a choice is free ("any" point), the smallest admissible point is
/// taken, so the output is reproducible. `t` is assembled as `s_0 c_1 ... c_k`
/// from disjoint cycles.
pub fn construct_separating_permutation(
    s: &FinitaryPerm,
    x: &BTreeSet<u32>,
    pairs: &[(LazyPerm, i64)],
) -> Result<(FinitaryPerm, SeparatorPlan), PermError> {
    if pairs.is_empty() {
        return Err(PermError::EmptyPairs);
    }
    for (a, alpha) in pairs {
        if *alpha == 0 {
            return Err(PermError::ZeroExponent);
        }
        if !a.has_infinite_support() {
            return Err(PermError::FinitarySupport);
        }
    }
    if x.contains(&0) {
        return Err(PermError::ZeroPoint);
    }

    let xsx: BTreeSet<u32> = x.iter().copied().chain(x.iter().map(|&p| s.apply(p))).collect();

    // n_0: smallest point outside X union s(X).
    let n0 = smallest_outside(&xsx);

    let k = pairs.len();
    let mut ms: Vec<u32> = Vec::with_capacity(k);
    let mut ns: Vec<u32> = Vec::with_capacity(k);
    let mut forbidden: Vec<BTreeSet<u32>> = Vec::with_capacity(k);
    for (i, (a, _)) in pairs.iter().enumerate() {
        // Y_i = X u s(X) u {n_0} u {m_j, n_j | j < i}
        let mut y: BTreeSet<u32> = xsx.clone();
        y.insert(n0);
        for j in 0..i {
            y.insert(ms[j]);
            y.insert(ns[j]);
        }
        // m_i: smallest support point of a_i avoiding Y_i and a_i^{-1}(Y_i).
        let a_inv_y: BTreeSet<u32> = y.iter().map(|&p| a.apply_inverse(p)).collect();
        let mut m_i = None;
        for p in a.support_iter() {
            if !y.contains(&p) && !a_inv_y.contains(&p) {
                m_i = Some(p);
                break;
            }
        }
        let m_i = m_i.ok_or(PermError::FinitarySupport)?;
        debug_assert_ne!(a.apply(m_i), m_i, "support point must move");
        ms.push(m_i);
        ns.push(a.apply(m_i));
        forbidden.push(y);
    }

    // Filler points l_ij, |alpha_i| - 1 per cycle, all distinct and avoiding
    // every chain point and X u s(X).
    let mut used: BTreeSet<u32> = xsx.clone();
    used.insert(n0);
    used.extend(ms.iter().copied());
    used.extend(ns.iter().copied());
    let mut fillers: Vec<Vec<u32>> = Vec::with_capacity(k);
    for (_, alpha) in pairs {
        let need = alpha.unsigned_abs() as usize - 1;
        let mut row = Vec::with_capacity(need);
        for _ in 0..need {
            let l = smallest_outside(&used);
            used.insert(l);
            row.push(l);
        }
        fillers.push(row);
    }

    // c_i = (n_{i-1}, l_{i1}, ..., l_{i,|alpha_i|-1}, m_i)^{sgn(alpha_i)}
    let mut cycles = Vec::with_capacity(k);
    for i in 0..k {
        let prev = if i == 0 { n0 } else { ns[i - 1] };
        let mut cyc = vec![prev];
        cyc.extend(&fillers[i]);
        cyc.push(ms[i]);
        let mut c = FinitaryPerm::from_cycles(&[cyc])?;
        if pairs[i].1 < 0 {
            c = c.inverse();
        }
        cycles.push(c);
    }

    // s_0: the partial injection s|_X completed to a permutation of
    // X u s(X), unmatched sources paired with the smallest free targets.
    let mut map: BTreeMap<u32, u32> = x.iter().map(|&p| (p, s.apply(p))).collect();
    let sources: Vec<u32> = xsx.iter().filter(|p| !x.contains(p)).copied().collect();
    let taken: BTreeSet<u32> = map.values().copied().collect();
    let mut free: Vec<u32> = xsx.iter().filter(|p| !taken.contains(p)).copied().collect();
    free.reverse();
    for src in sources {
        let tgt = free.pop().expect("completion target counts must match");
        map.insert(src, tgt);
    }
    let s0 = FinitaryPerm::from_mapping(map)?;

    // Cycles and s_0 have pairwise disjoint supports, so the product order
    // does not matter.
    let mut t = s0.clone();
    for c in &cycles {
        t = t.compose(c);
    }

    let plan = SeparatorPlan {
        n0,
        m: ms,
        n: ns,
        fillers,
        cycles,
        s0,
        forbidden,
    };
    Ok((t, plan))
}

fn smallest_outside(set: &BTreeSet<u32>) -> u32 {
    (1..).find(|p| !set.contains(p)).unwrap()
}

/// Evaluates `a_k t^{alpha_k} ... a_1 t^{alpha_1}(p)` for oracle pairs; used
/// to confirm the chain postcondition of the separating permutation.
pub fn apply_alternating_product(
    t: &FinitaryPerm,
    pairs: &[(LazyPerm, i64)],
    p: u32,
) -> u32 {
    let mut cur = p;
    for (a, alpha) in pairs {
        cur = t.pow(*alpha).apply(cur);
        cur = a.apply(cur);
    }
    cur
}

/// True iff at least one of the commutators `[a^g, a]`, `[b^g, a]`,
/// `[c^g, a]`, `[d^g, a]` is trivial, where a = (1 2 3), b = (4 5 6),
/// c = (7 8 9), d = (10 11 12).
pub fn check_alt_sentence(g: &FinitaryPerm) -> bool {
    let a = FinitaryPerm::from_cycles(&[vec![1, 2, 3]]).unwrap();
    let b = FinitaryPerm::from_cycles(&[vec![4, 5, 6]]).unwrap();
    let c = FinitaryPerm::from_cycles(&[vec![7, 8, 9]]).unwrap();
    let d = FinitaryPerm::from_cycles(&[vec![10, 11, 12]]).unwrap();
    [a.clone(), b, c, d].iter().any(|w| {
        FinitaryPerm::commutator(&w.conjugate_by(g), &a).is_identity()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> FinitaryPerm {
        s.parse().unwrap()
    }

    #[test]
    fn compose_self_inverse_transposition() {
        let t = p("(1 2)");
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // (1 2) . (2 3): n -> (1 2)((2 3)(n)), so 1->2, 2->3, 3->1.
        let r = p("(1 2)").compose(&p("(2 3)"));
        assert_eq!(r.apply(1), 2);
        assert_eq!(r.apply(2), 3);
        assert_eq!(r.apply(3), 1);
        assert_eq!(r, p("(1 2 3)"));
    }

    #[test]
    fn compose_identity_law() {
        let q = p("(1 5 3)(2 8)");
        assert_eq!(FinitaryPerm::identity().compose(&q), q);
        assert_eq!(q.compose(&FinitaryPerm::identity()), q);
    }

    #[test]
    fn cycle_form_examples() {
        assert!(FinitaryPerm::identity().cycle_form().is_empty());
        let two = FinitaryPerm::from_mapping(
            [(1, 2), (2, 1), (4, 5), (5, 4)].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(two.cycle_form(), vec![vec![1, 2], vec![4, 5]]);
        let tri =
            FinitaryPerm::from_mapping([(1, 3), (3, 2), (2, 1)].into_iter().collect()).unwrap();
        assert_eq!(tri.cycle_form(), vec![vec![1, 3, 2]]);
    }

    #[test]
    fn cycle_form_recomposes() {
        let q = p("(1 4 2)(3 9)(5 6 7 8)");
        let cycles = q.cycle_form();
        assert_eq!(FinitaryPerm::from_cycles(&cycles).unwrap(), q);
    }

    #[test]
    fn parity_examples() {
        assert!(FinitaryPerm::identity().is_even());
        assert!(!p("(1 2)").is_even());
        assert!(p("(1 2 3)").is_even());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for s in ["()", "(1 2)", "(1 2 3)(5 6)", "(2 7 4)(10 11)(20 21)"] {
            let q: FinitaryPerm = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
            let back: FinitaryPerm = q.to_string().parse().unwrap();
            assert_eq!(back, q);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("(1 2".parse::<FinitaryPerm>().is_err());
        assert!("1 2".parse::<FinitaryPerm>().is_err());
        assert!("(1 1)".parse::<FinitaryPerm>().is_err());
        assert!("(3)".parse::<FinitaryPerm>().is_err());
    }

    #[test]
    fn from_mapping_rejects_non_bijection() {
        let bad: BTreeMap<u32, u32> = [(1, 2), (3, 2)].into_iter().collect();
        assert!(FinitaryPerm::from_mapping(bad).is_err());
    }

    #[test]
    fn separating_permutation_worked_example() {
        // s = id, X = {1,2}, one pair (pairwise swapper, alpha = 1):
        // the smallest-available policy yields t = (3 5) with
        // n_0 = 3, m_1 = 5, n_1 = 6.
        let s = FinitaryPerm::identity();
        let x: BTreeSet<u32> = [1, 2].into_iter().collect();
        let pairs = vec![(LazyPerm::pairwise_swapper(), 1i64)];
        let (t, plan) = construct_separating_permutation(&s, &x, &pairs).unwrap();
        assert_eq!(t, p("(3 5)"));
        assert_eq!(plan.n0, 3);
        assert_eq!(plan.m, vec![5]);
        assert_eq!(plan.n, vec![6]);
        // witness: a_1 t (3) = 6 != 3
        assert_eq!(apply_alternating_product(&t, &pairs, plan.n0), 6);
        assert!(plan.check_invariants(&x, &s));
    }

    #[test]
    fn separating_permutation_rejects_bad_pairs() {
        let s = FinitaryPerm::identity();
        let x = BTreeSet::new();
        assert_eq!(
            construct_separating_permutation(&s, &x, &[]).unwrap_err(),
            PermError::EmptyPairs
        );
        let zero = vec![(LazyPerm::pairwise_swapper(), 0i64)];
        assert_eq!(
            construct_separating_permutation(&s, &x, &zero).unwrap_err(),
            PermError::ZeroExponent
        );
        let fin = vec![(LazyPerm::from_finitary(&p("(1 2)")), 1i64)];
        assert_eq!(
            construct_separating_permutation(&s, &x, &fin).unwrap_err(),
            PermError::FinitarySupport
        );
    }

    #[test]
    fn separating_permutation_postconditions_hold() {
        let s = p("(1 4)(2 9 7)");
        let x: BTreeSet<u32> = [1, 2, 4, 7].into_iter().collect();
        let pairs = vec![
            (LazyPerm::pairwise_swapper(), -2i64),
            (LazyPerm::block_three_cycles(), 3i64),
        ];
        let (t, plan) = construct_separating_permutation(&s, &x, &pairs).unwrap();
        for &px in &x {
            assert_eq!(t.apply(px), s.apply(px));
        }
        let end = apply_alternating_product(&t, &pairs, plan.n0);
        assert_eq!(end, *plan.n.last().unwrap());
        assert_ne!(end, plan.n0);
        assert!(plan.check_invariants(&x, &s));
        // cycle i has length |alpha_i| + 1
        for (i, c) in plan.cycles.iter().enumerate() {
            assert_eq!(c.support_size() as u64, pairs[i].1.unsigned_abs() + 1);
        }
    }

    #[test]
    fn alt_sentence_examples() {
        assert!(check_alt_sentence(&FinitaryPerm::identity()));
        // conjugating (1 2 3) to (4 5 6) gives disjoint support
        assert!(check_alt_sentence(&p("(1 4)(2 5)(3 6)")));
    }

    #[test]
    fn lazy_perm_contract() {
        let a = LazyPerm::pairwise_swapper();
        assert!(a.verify_on(1..100));
        assert_eq!(a.apply(3), 4);
        assert_eq!(a.apply_inverse(4), 3);
        let b = LazyPerm::block_three_cycles();
        assert!(b.verify_on(1..100));
        assert_eq!(b.apply(1), 2);
        assert_eq!(b.apply(3), 1);
        assert_eq!(b.support_iter().take(4).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }
}
