//! The bundled group corpus and its text format.
//!
//! A group file lists one generator per line in cycle notation, after a
//! `domain <n>` header; `#` starts a comment. An optional `marking` line
//! turns the file into a marked group by listing the generator images.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::constructions::{affine_action, affine_f2_action, ConstructionError};
use crate::perm::{FinitaryPerm, PermError};
use crate::permgrp::{GroupError, PermGroup};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing `domain <n>` header")]
    MissingDomain,
    #[error("line {0}: {1}")]
    Line(usize, PermError),
    #[error("unknown corpus group {0:?}")]
    UnknownGroup(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Parsed contents of a corpus file.
#[derive(Debug, Clone)]
pub struct CorpusFile {
    pub domain: u32,
    pub generators: Vec<FinitaryPerm>,
    pub marking: Option<Vec<FinitaryPerm>>,
}

impl CorpusFile {
    pub fn into_group(self) -> Result<PermGroup, CorpusError> {
        Ok(PermGroup::new(self.domain, self.generators)?)
    }
}

pub fn parse_group_file(text: &str) -> Result<CorpusFile, CorpusError> {
    let mut domain: Option<u32> = None;
    let mut generators = Vec::new();
    let mut marking = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(n) = line.strip_prefix("domain") {
            domain = Some(
                n.trim()
                    .parse()
                    .map_err(|_| CorpusError::Line(idx + 1, PermError::Parse(n.into())))?,
            );
            continue;
        }
        if let Some(rest) = line.strip_prefix("marking") {
            let images: Result<Vec<FinitaryPerm>, PermError> = rest
                .split_whitespace()
                .map(|tok| tok.replace(',', " ").parse())
                .collect();
            marking = Some(images.map_err(|e| CorpusError::Line(idx + 1, e))?);
            continue;
        }
        let perm: FinitaryPerm = line
            .parse()
            .map_err(|e| CorpusError::Line(idx + 1, e))?;
        generators.push(perm);
    }
    let domain = domain.ok_or(CorpusError::MissingDomain)?;
    Ok(CorpusFile {
        domain,
        generators,
        marking,
    })
}

pub fn write_group_file(group: &PermGroup, comment: &str) -> String {
    let mut out = String::new();
    if !comment.is_empty() {
        for line in comment.lines() {
            out.push_str(&format!("# {}\n", line));
        }
    }
    out.push_str(&format!("domain {}\n", group.domain_size()));
    for g in group.generators() {
        out.push_str(&format!("{}\n", g));
    }
    out
}

pub fn symmetric(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(FinitaryPerm::transposition(1, 2).unwrap());
    }
    if n >= 3 {
        gens.push(FinitaryPerm::from_cycles(&[(1..=n).collect()]).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

pub fn alternating(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(FinitaryPerm::from_cycles(&[vec![1, 2, 3]]).unwrap());
    }
    if n >= 4 {
        // (1 2 3) together with an n-cycle (n odd) or (n-1)-cycle fixing 1
        if n % 2 == 1 {
            gens.push(FinitaryPerm::from_cycles(&[(1..=n).collect()]).unwrap());
        } else {
            gens.push(FinitaryPerm::from_cycles(&[(2..=n).collect()]).unwrap());
        }
    }
    PermGroup::new(n, gens).unwrap()
}

pub fn cyclic(n: u32) -> PermGroup {
    let gens = if n >= 2 {
        vec![FinitaryPerm::from_cycles(&[(1..=n).collect()]).unwrap()]
    } else {
        vec![]
    };
    PermGroup::new(n.max(1), gens).unwrap()
}

pub fn dihedral_4() -> PermGroup {
    PermGroup::new(
        4,
        vec!["(1 2 3 4)".parse().unwrap(), "(1 3)".parse().unwrap()],
    )
    .unwrap()
}

/// Klein four-group in its regular action.
pub fn klein_regular() -> PermGroup {
    PermGroup::new(
        4,
        vec!["(1 2)(3 4)".parse().unwrap(), "(1 3)(2 4)".parse().unwrap()],
    )
    .unwrap()
}

/// Quaternion group of order 8 in its regular action; points number the
/// elements 1, i, -1, -i, j, ij, -j, -ij.
pub fn quaternion_regular() -> PermGroup {
    PermGroup::new(
        8,
        vec![
            "(1 2 3 4)(5 8 7 6)".parse().unwrap(),
            "(1 5 3 7)(2 6 4 8)".parse().unwrap(),
        ],
    )
    .unwrap()
}

const M11_FILE: &str = include_str!("../../../corpus/m11.grp");
const M12_FILE: &str = include_str!("../../../corpus/m12.grp");

/// Names of every bundled corpus group, in reporting order.
pub fn builtin_names() -> Vec<String> {
    let mut names = Vec::new();
    for n in 3..=7 {
        names.push(format!("s{}", n));
    }
    for n in 4..=7 {
        names.push(format!("a{}", n));
    }
    for n in 2..=12 {
        names.push(format!("c{}", n));
    }
    names.push("d4".into());
    names.push("q8".into());
    names.push("v4".into());
    for q in [4, 5, 7, 8, 9] {
        names.push(format!("agl1_{}", q));
    }
    for n in 2..=4 {
        names.push(format!("aglf2_{}", n));
    }
    names.push("m11".into());
    names.push("m12".into());
    names
}

/// Looks up a bundled corpus group by name (`s5`, `a7`, `c6`, `d4`, `q8`,
/// `v4`, `agl1_8`, `aglf2_3`, `m11`, ...). A trailing `.grp` is ignored.
pub fn builtin(name: &str) -> Result<PermGroup, CorpusError> {
    let name = name.strip_suffix(".grp").unwrap_or(name);
    let num = |prefix: &str| -> Option<u32> {
        name.strip_prefix(prefix).and_then(|s| s.parse().ok())
    };
    if name == "d4" {
        return Ok(dihedral_4());
    }
    if name == "q8" {
        return Ok(quaternion_regular());
    }
    if name == "v4" {
        return Ok(klein_regular());
    }
    if name == "m11" {
        return parse_group_file(M11_FILE)?.into_group();
    }
    if name == "m12" {
        return parse_group_file(M12_FILE)?.into_group();
    }
    if let Some(q) = num("agl1_") {
        return Ok(affine_action(q)?);
    }
    if let Some(n) = num("aglf2_") {
        return Ok(affine_f2_action(n)?);
    }
    if let Some(n) = num("s") {
        if (2..=7).contains(&n) {
            return Ok(symmetric(n));
        }
    }
    if let Some(n) = num("a") {
        if (3..=7).contains(&n) {
            return Ok(alternating(n));
        }
    }
    if let Some(n) = num("c") {
        if (1..=12).contains(&n) {
            return Ok(cyclic(n));
        }
    }
    Err(CorpusError::UnknownGroup(name.into()))
}

/// The corpus used by the lemma test surfaces: every bundled group except
/// the two Mathieu groups, which are listed separately because their
/// generators are external data.
pub fn lemma_corpus() -> Vec<(String, PermGroup)> {
    builtin_names()
        .into_iter()
        .filter(|n| n != "m11" && n != "m12")
        .map(|n| {
            let g = builtin(&n).expect("bundled names resolve");
            (n, g)
        })
        .collect()
}

pub fn mathieu_corpus() -> Vec<(String, PermGroup)> {
    ["m11", "m12"]
        .iter()
        .map(|n| (n.to_string(), builtin(n).expect("bundled")))
        .collect()
}

/// Emits the whole corpus as `.grp` files: (file name, contents).
pub fn bundled_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for name in builtin_names() {
        if name == "m11" {
            out.push(("m11.grp".into(), M11_FILE.to_string()));
            continue;
        }
        if name == "m12" {
            out.push(("m12.grp".into(), M12_FILE.to_string()));
            continue;
        }
        let group = builtin(&name).expect("bundled names resolve");
        out.push((
            format!("{}.grp", name),
            write_group_file(&group, &format!("corpus group {}", name)),
        ));
    }
    out
}

/// Parses a marked-group file: the group itself plus the `marking` images.
pub fn parse_marked_file(text: &str) -> Result<(PermGroup, Vec<FinitaryPerm>), CorpusError> {
    let file = parse_group_file(text)?;
    let marking = file
        .marking
        .clone()
        .unwrap_or_else(|| file.generators.clone());
    let group = file.into_group()?;
    Ok((group, marking))
}

/// Converts a permutation's cycle string like `(1,2,3)` or `(1 2 3)` to a
/// permutation; `e`, `()`, and `1` denote the identity.
pub fn parse_element(text: &str) -> Result<FinitaryPerm, PermError> {
    let t = text.trim();
    if t == "e" || t == "1" || t == "()" {
        return Ok(FinitaryPerm::identity());
    }
    t.replace(',', " ").parse()
}

/// Mapping points 1..n so corpus groups can be compared elementwise.
pub fn element_map(group: &PermGroup) -> BTreeMap<String, FinitaryPerm> {
    group
        .elements_bounded(1 << 20)
        .unwrap_or_default()
        .into_iter()
        .map(|p| (p.to_string(), p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write_round_trip() {
        let text = "# a comment\ndomain 4\n(1 2)\n(1 2 3 4)\n";
        let file = parse_group_file(text).unwrap();
        assert_eq!(file.domain, 4);
        assert_eq!(file.generators.len(), 2);
        let group = file.into_group().unwrap();
        assert_eq!(group.order().unwrap(), 24);
        let emitted = write_group_file(&group, "");
        let file2 = parse_group_file(&emitted).unwrap();
        assert_eq!(file2.domain, 4);
        assert_eq!(file2.generators, group.generators().to_vec());
    }

    #[test]
    fn parse_rejects_bad_files() {
        assert!(matches!(
            parse_group_file("(1 2)\n"),
            Err(CorpusError::MissingDomain)
        ));
        assert!(matches!(
            parse_group_file("domain 3\n(1 1)\n"),
            Err(CorpusError::Line(2, _))
        ));
    }

    #[test]
    fn classic_orders() {
        assert_eq!(symmetric(5).order().unwrap(), 120);
        assert_eq!(symmetric(7).order().unwrap(), 5040);
        assert_eq!(alternating(4).order().unwrap(), 12);
        assert_eq!(alternating(5).order().unwrap(), 60);
        assert_eq!(alternating(6).order().unwrap(), 360);
        assert_eq!(alternating(7).order().unwrap(), 2520);
        assert_eq!(cyclic(6).order().unwrap(), 6);
        assert_eq!(dihedral_4().order().unwrap(), 8);
        assert_eq!(quaternion_regular().order().unwrap(), 8);
        assert_eq!(klein_regular().order().unwrap(), 4);
    }

    #[test]
    fn alternating_groups_are_even_only() {
        for n in 4..=7 {
            let g = alternating(n);
            assert!(g.generators().iter().all(|p| p.is_even()));
            assert_eq!(g.order().unwrap(), factorial(n as u64) / 2);
        }
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("s4").unwrap().order().unwrap(), 24);
        assert_eq!(builtin("s4.grp").unwrap().order().unwrap(), 24);
        assert_eq!(builtin("agl1_5").unwrap().order().unwrap(), 20);
        assert_eq!(builtin("aglf2_2").unwrap().order().unwrap(), 24);
        assert!(builtin("nope").is_err());
        assert!(builtin("s9").is_err());
    }

    #[test]
    fn mathieu_data_files() {
        let m11 = builtin("m11").unwrap();
        assert_eq!(m11.order().unwrap(), 7920);
        assert_eq!(m11.max_transitivity().unwrap(), 4);
        let m12 = builtin("m12").unwrap();
        assert_eq!(m12.order().unwrap(), 95040);
        assert_eq!(m12.max_transitivity().unwrap(), 5);
    }

    #[test]
    fn bundled_files_parse_back() {
        for (name, contents) in bundled_files() {
            let file = parse_group_file(&contents)
                .unwrap_or_else(|e| panic!("{} does not parse: {}", name, e));
            let group = file.into_group().unwrap();
            let original = builtin(&name).unwrap();
            assert_eq!(
                group.order_bounded(64).unwrap(),
                original.order_bounded(64).unwrap(),
                "{} round trip changed the group",
                name
            );
        }
    }

    #[test]
    fn marked_file_parsing() {
        let text = "domain 3\n(1 2)\n(1 2 3)\nmarking (1,2) (1,2,3)\n";
        let (group, marking) = parse_marked_file(text).unwrap();
        assert_eq!(group.order().unwrap(), 6);
        assert_eq!(marking.len(), 2);
        assert_eq!(marking[0], "(1 2)".parse().unwrap());
    }
}
