//! The metric on marked k-generated groups, computed exactly for finite
//! marked groups.
//!
//! A marked group is a finite group with an ordered generating k-tuple; it
//! stands for the kernel of the induced map from the free group F_k. The
//! distance between two marked groups is 1/l where l is the length of the
//! shortest reduced word lying in exactly one kernel, and 0 when the kernels
//! agree. For finite groups kernel equality is decidable: the generator
//! correspondence extends to an isomorphism or it does not.

use thiserror::Error;

use crate::corpus::CorpusError;
use crate::perm::FinitaryPerm;
use crate::permgrp::PermGroup;
use crate::stallings::{ShortlexWords, Word};
use crate::words::{FiniteGroupTable, WordError};

#[derive(Debug, Error)]
pub enum MarkedError {
    #[error("marking does not generate the group")]
    NotGenerating,
    #[error("marked groups have different generator counts: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("marking image {0:?} is not an element of the group")]
    UnknownImage(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// A finite group together with an ordered generating tuple.
#[derive(Clone, Debug)]
pub struct MarkedGroup {
    k: usize,
    table: FiniteGroupTable,
    images: Vec<u16>,
}

impl MarkedGroup {
    pub fn new(table: FiniteGroupTable, images: Vec<u16>) -> Result<Self, MarkedError> {
        if !table.generates(&images) {
            return Err(MarkedError::NotGenerating);
        }
        Ok(MarkedGroup {
            k: images.len(),
            table,
            images,
        })
    }

    /// The trivial marked group on k generators.
    pub fn trivial(k: usize) -> Self {
        MarkedGroup {
            k,
            table: FiniteGroupTable::trivial(),
            images: vec![0; k],
        }
    }

    /// Cyclic group marked by a single generator.
    pub fn cyclic(n: u16) -> Self {
        let table = FiniteGroupTable::cyclic(n);
        let images = vec![if n == 1 { 0 } else { 1 }];
        MarkedGroup::new(table, images).expect("a cyclic generator generates")
    }

    /// Marks a permutation group by explicit generator images.
    pub fn from_perm_group(
        group: &PermGroup,
        marking: &[FinitaryPerm],
    ) -> Result<Self, MarkedError> {
        let table = FiniteGroupTable::from_perm_group(group)?;
        let images = marking
            .iter()
            .map(|p| {
                let label = if p.is_identity() {
                    "e".to_string()
                } else {
                    p.to_string().replace(' ', ",")
                };
                table
                    .element_by_label(&label)
                    .ok_or_else(|| MarkedError::UnknownImage(p.to_string()))
            })
            .collect::<Result<Vec<u16>, _>>()?;
        MarkedGroup::new(table, images)
    }

    pub fn generator_count(&self) -> usize {
        self.k
    }

    pub fn group_order(&self) -> usize {
        self.table.size()
    }

    fn eval(&self, w: &Word) -> u16 {
        w.0.iter().fold(0u16, |acc, &c| {
            let g = self.images[(c.unsigned_abs() - 1) as usize];
            let g = if c < 0 { self.table.inv(g) } else { g };
            self.table.mul(acc, g)
        })
    }

    /// True iff the word evaluates to the identity under the marking.
    pub fn kernel_contains(&self, w: &Word) -> bool {
        self.eval(&w.reduced()) == 0
    }

    /// Decides whether the generator correspondence extends to an
    /// isomorphism, i.e. whether the two kernels coincide. The extension
    /// attempt walks the first group's Cayley graph; any inconsistency or a
    /// size mismatch certifies distinct kernels.
    pub fn kernels_equal(&self, other: &MarkedGroup) -> Result<bool, MarkedError> {
        if self.k != other.k {
            return Err(MarkedError::RankMismatch(self.k, other.k));
        }
        if self.table.size() != other.table.size() {
            return Ok(false);
        }
        let n = self.table.size();
        let mut map: Vec<Option<u16>> = vec![None; n];
        map[0] = Some(0);
        let mut queue = std::collections::VecDeque::from([0u16]);
        while let Some(g) = queue.pop_front() {
            let h = map[g as usize].unwrap();
            for i in 0..self.k {
                for inv in [false, true] {
                    let (gi, hi) = if inv {
                        (self.table.inv(self.images[i]), other.table.inv(other.images[i]))
                    } else {
                        (self.images[i], other.images[i])
                    };
                    let g2 = self.table.mul(g, gi);
                    let h2 = other.table.mul(h, hi);
                    match map[g2 as usize] {
                        None => {
                            map[g2 as usize] = Some(h2);
                            queue.push_back(g2);
                        }
                        Some(existing) => {
                            if existing != h2 {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        // the walked map is a surjective homomorphism; with equal orders it
        // is an isomorphism exactly when it is injective
        let mut seen = vec![false; n];
        for h in map.iter().flatten() {
            if seen[*h as usize] {
                return Ok(false);
            }
            seen[*h as usize] = true;
        }
        Ok(true)
    }
}

/// Distance value: exact 1/denominator, or an upper bound when the search
/// radius was exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkedDistance {
    Zero,
    Exact { denominator: u64 },
    AtMost { denominator: u64 },
}

impl MarkedDistance {
    pub fn is_exact(&self) -> bool {
        !matches!(self, MarkedDistance::AtMost { .. })
    }

    /// Numeric value (the bound value for the inexact case).
    pub fn value(&self) -> f64 {
        match self {
            MarkedDistance::Zero => 0.0,
            MarkedDistance::Exact { denominator } | MarkedDistance::AtMost { denominator } => {
                1.0 / *denominator as f64
            }
        }
    }
}

impl std::fmt::Display for MarkedDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MarkedDistance::Zero => write!(f, "0"),
            MarkedDistance::Exact { denominator } => write!(f, "1/{}", denominator),
            MarkedDistance::AtMost { denominator } => write!(f, "<= 1/{}", denominator),
        }
    }
}

/// Exact distance by breadth-first search over reduced words of length 1
/// to `radius`: 1/l for the shortest word in exactly one kernel, 0 when the
/// kernels provably coincide, and the bound 1/(radius+1) otherwise.
pub fn marked_distance(
    a: &MarkedGroup,
    b: &MarkedGroup,
    radius: u32,
) -> Result<MarkedDistance, MarkedError> {
    if a.generator_count() != b.generator_count() {
        return Err(MarkedError::RankMismatch(a.generator_count(), b.generator_count()));
    }
    if a.kernels_equal(b)? {
        return Ok(MarkedDistance::Zero);
    }
    for w in ShortlexWords::new(a.generator_count()) {
        if w.len() > radius as usize {
            break;
        }
        if w.is_empty() {
            continue;
        }
        if a.kernel_contains(&w) != b.kernel_contains(&w) {
            return Ok(MarkedDistance::Exact {
                denominator: w.len() as u64,
            });
        }
    }
    Ok(MarkedDistance::AtMost {
        denominator: radius as u64 + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_membership_examples() {
        let c2 = MarkedGroup::cyclic(2);
        assert!(c2.kernel_contains(&Word::empty()));
        assert!(c2.kernel_contains(&Word(vec![1, 1])));
        assert!(!c2.kernel_contains(&Word(vec![1])));
        let c3 = MarkedGroup::cyclic(3);
        assert!(!c3.kernel_contains(&Word(vec![1, 1])));
        assert!(c3.kernel_contains(&Word(vec![1, 1, 1])));
    }

    #[test]
    fn distance_examples() {
        let c2 = MarkedGroup::cyclic(2);
        let c3 = MarkedGroup::cyclic(3);
        let trivial = MarkedGroup::trivial(1);
        assert_eq!(
            marked_distance(&c2, &c2.clone(), 8).unwrap(),
            MarkedDistance::Zero
        );
        assert_eq!(
            marked_distance(&c2, &c3, 8).unwrap(),
            MarkedDistance::Exact { denominator: 2 }
        );
        assert_eq!(
            marked_distance(&c2, &trivial, 8).unwrap(),
            MarkedDistance::Exact { denominator: 1 }
        );
    }

    #[test]
    fn distance_is_symmetric() {
        let groups: Vec<MarkedGroup> = (1..=6).map(MarkedGroup::cyclic).collect();
        for x in &groups {
            for y in &groups {
                assert_eq!(
                    marked_distance(x, y, 10).unwrap(),
                    marked_distance(y, x, 10).unwrap()
                );
            }
        }
    }

    #[test]
    fn bound_when_radius_too_small() {
        let c5 = MarkedGroup::cyclic(5);
        let c7 = MarkedGroup::cyclic(7);
        // shortest separating word is x^5, radius 3 cannot see it
        assert_eq!(
            marked_distance(&c5, &c7, 3).unwrap(),
            MarkedDistance::AtMost { denominator: 4 }
        );
        assert_eq!(
            marked_distance(&c5, &c7, 8).unwrap(),
            MarkedDistance::Exact { denominator: 5 }
        );
    }

    #[test]
    fn isomorphic_markings_have_distance_zero() {
        // C4 marked by g and by g^3 are isomorphic as marked groups
        let table = FiniteGroupTable::cyclic(4);
        let a = MarkedGroup::new(table.clone(), vec![1]).unwrap();
        let b = MarkedGroup::new(table.clone(), vec![3]).unwrap();
        assert_eq!(marked_distance(&a, &b, 10).unwrap(), MarkedDistance::Zero);
        // but marking C4 by g^2 does not generate
        assert!(MarkedGroup::new(table, vec![2]).is_err());
    }

    #[test]
    fn rank_mismatch_rejected() {
        let c2 = MarkedGroup::cyclic(2);
        let t2 = MarkedGroup::trivial(2);
        assert!(matches!(
            marked_distance(&c2, &t2, 5),
            Err(MarkedError::RankMismatch(1, 2))
        ));
    }

    #[test]
    fn two_generator_marked_groups() {
        let s3 = crate::corpus::builtin("s3").unwrap();
        let m = MarkedGroup::from_perm_group(
            &s3,
            &["(1 2)".parse().unwrap(), "(1 2 3)".parse().unwrap()],
        )
        .unwrap();
        assert_eq!(m.generator_count(), 2);
        // x1^2 and x2^3 die, x1 x2 does not
        assert!(m.kernel_contains(&Word(vec![1, 1])));
        assert!(m.kernel_contains(&Word(vec![2, 2, 2])));
        assert!(!m.kernel_contains(&Word(vec![1, 2])));
        // distance to the klein group marked by its two generators
        let v4 = crate::corpus::builtin("v4").unwrap();
        let mv = MarkedGroup::from_perm_group(
            &v4,
            &["(1 2)(3 4)".parse().unwrap(), "(1 3)(2 4)".parse().unwrap()],
        )
        .unwrap();
        // x2^2 separates (trivial in V4, nontrivial in S3)
        assert_eq!(
            marked_distance(&m, &mv, 8).unwrap(),
            MarkedDistance::Exact { denominator: 2 }
        );
    }

    #[test]
    fn ultrametric_on_cyclic_family() {
        let mut family: Vec<MarkedGroup> = (1..=6).map(MarkedGroup::cyclic).collect();
        family.push(MarkedGroup::trivial(1));
        let d = |x: &MarkedGroup, y: &MarkedGroup| marked_distance(x, y, 12).unwrap();
        for a in &family {
            for b in &family {
                for c in &family {
                    let (ab, bc, ac) = (d(a, b), d(b, c), d(a, c));
                    assert!(ab.is_exact() && bc.is_exact() && ac.is_exact());
                    assert!(
                        ac.value() <= ab.value().max(bc.value()) + 1e-12,
                        "ultrametric violated: {} > max({}, {})",
                        ac,
                        ab,
                        bc
                    );
                }
            }
        }
    }
}
