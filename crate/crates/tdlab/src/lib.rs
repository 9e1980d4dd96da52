//! Toolkit for computing with transitivity degrees: finitary and oracle
//! permutations, finite permutation group algorithms, free products with
//! finite coefficient groups, Stallings graphs for subgroups of free groups,
//! a certified inductive builder of highly transitive action prefixes,
//! example constructions, and the marked-groups metric.

pub mod constructions;
pub mod corpus;
pub mod htbuilder;
pub mod marked;
pub mod perm;
pub mod permgrp;
pub mod stallings;
pub mod words;

pub use perm::{
    apply_alternating_product, check_alt_sentence, construct_separating_permutation,
    FinitaryPerm, LazyPerm, PermError, SeparatorPlan,
};
pub use permgrp::{
    burnside_td_upper_bound, BlockSystem, CameronReport, GroupError, LemmaSuiteReport, MinLemmaReport, PermGroup,
    Primitivity, TdReport,
};
pub use stallings::{CoreGraph, CosetActionPrefix, ShortlexWords, SubgroupIndex, Word};
pub use words::{FiniteGroupTable, MixedWord, WordError};
