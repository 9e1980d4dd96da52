//! Folded core graphs for finitely generated subgroups of free groups.
//!
//! Words in F_k are sequences of nonzero letters in -k..=k, where the letter
//! i > 0 is the i-th basis element and -i its inverse. The global order used
//! everywhere (searches, witnesses, coset representatives) is shortlex with
//! 1 < -1 < 2 < -2 < ...
//!
//! A [`CoreGraph`] is the folded, trimmed, canonically renumbered graph whose
//! basepoint loops spell exactly the subgroup's elements. Vertices are dense
//! indices with the basepoint at 0; the edge labelled i out of v is stored in
//! slot 2(i-1), its inverse in slot 2(i-1)+1.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StallingsError {
    #[error("letter {0} is outside the rank-{1} alphabet")]
    LetterRange(i32, usize),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// A word in a free group, as signed letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Free reduction: removes adjacent inverse pairs.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &c in &self.0 {
            if out.last() == Some(&-c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&c| -c).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.inverse().concat(self).concat(u)
    }

    pub fn validate(&self, rank: usize) -> Result<(), StallingsError> {
        for &c in &self.0 {
            if c == 0 || c.unsigned_abs() as usize > rank {
                return Err(StallingsError::LetterRange(c, rank));
            }
        }
        Ok(())
    }

    /// Rank of a letter in the fixed order 1 < -1 < 2 < -2 < ...
    fn letter_rank(c: i32) -> u32 {
        let i = c.unsigned_abs();
        2 * (i - 1) + if c < 0 { 1 } else { 0 }
    }

    /// Shortlex comparison under the global letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| {
                let a: Vec<u32> = self.0.iter().map(|&c| Word::letter_rank(c)).collect();
                let b: Vec<u32> = other.0.iter().map(|&c| Word::letter_rank(c)).collect();
                a.cmp(&b)
            })
    }

    /// Parses either signed integers ("1 2 -1") or letter strings ("abA",
    /// with a..z the basis and A..Z the inverses).
    pub fn parse(text: &str, rank: usize) -> Result<Word, StallingsError> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text == "e" {
            return Ok(Word::empty());
        }
        let w = if text
            .chars()
            .all(|c| c.is_ascii_digit() || c == '-' || c.is_whitespace() || c == ',')
        {
            let letters: Result<Vec<i32>, _> = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i32>()
                        .map_err(|_| StallingsError::Parse(format!("bad letter {:?}", t)))
                })
                .collect();
            Word(letters?)
        } else {
            let mut letters = Vec::new();
            for ch in text.chars() {
                if ch.is_whitespace() {
                    continue;
                }
                if ch.is_ascii_lowercase() {
                    letters.push((ch as u8 - b'a') as i32 + 1);
                } else if ch.is_ascii_uppercase() {
                    letters.push(-(((ch as u8 - b'A') as i32) + 1));
                } else {
                    return Err(StallingsError::Parse(format!("bad character {:?}", ch)));
                }
            }
            Word(letters)
        };
        w.validate(rank)?;
        Ok(w)
    }

    /// Letter-string form: a, b, c ... with capitals for inverses. Falls
    /// back to signed integers past rank 26.
    pub fn letters_string(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        if self.0.iter().all(|c| c.unsigned_abs() <= 26) {
            self.0
                .iter()
                .map(|&c| {
                    let i = (c.unsigned_abs() - 1) as u8;
                    if c > 0 {
                        (b'a' + i) as char
                    } else {
                        (b'A' + i) as char
                    }
                })
                .collect()
        } else {
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters_string())
    }
}

/// Enumerates all reduced words of F_k in shortlex order, starting with the
/// empty word.
pub struct ShortlexWords {
    rank: usize,
    current: Vec<u32>,
    exhausted_empty: bool,
}

impl ShortlexWords {
    pub fn new(rank: usize) -> Self {
        ShortlexWords {
            rank,
            current: Vec::new(),
            exhausted_empty: false,
        }
    }

    fn decode(ranks: &[u32]) -> Word {
        Word(
            ranks
                .iter()
                .map(|&r| {
                    let i = (r / 2 + 1) as i32;
                    if r % 2 == 0 {
                        i
                    } else {
                        -i
                    }
                })
                .collect(),
        )
    }

    fn is_reduced(ranks: &[u32]) -> bool {
        ranks
            .windows(2)
            .all(|w| w[0] / 2 != w[1] / 2 || w[0] % 2 == w[1] % 2)
    }
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.exhausted_empty {
            self.exhausted_empty = true;
            return Some(Word::empty());
        }
        let max_rank = (2 * self.rank - 1) as u32;
        loop {
            // odometer with carry; on full wrap grow the length
            let mut i = self.current.len();
            loop {
                if i == 0 {
                    self.current = vec![0; self.current.len() + 1];
                    break;
                }
                i -= 1;
                if self.current[i] < max_rank {
                    self.current[i] += 1;
                    for j in (i + 1)..self.current.len() {
                        self.current[j] = 0;
                    }
                    break;
                }
            }
            if Self::is_reduced(&self.current) {
                return Some(Self::decode(&self.current));
            }
        }
    }
}

/// Index of a subgroup of a free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupIndex {
    Finite(u32),
    Infinite,
}

/// Prefix of the left coset action: shortlex-least representatives for the
/// first cosets found, and for each generator the partial map on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetActionPrefix {
    pub representatives: Vec<Word>,
    /// generator_maps[i-1][c] is the coset index of x_i . (rep_c H), when it
    /// falls inside the prefix.
    pub generator_maps: Vec<Vec<Option<u32>>>,
}

impl CosetActionPrefix {
    pub fn coset_count(&self) -> usize {
        self.representatives.len()
    }

    /// True when every generator image of every listed coset is listed.
    pub fn is_saturated(&self) -> bool {
        self.generator_maps
            .iter()
            .all(|row| row.iter().all(|x| x.is_some()))
    }
}

/// Folded, trimmed, canonically numbered core graph. Immutable after
/// construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoreGraph {
    rank: usize,
    /// slots[v][2(i-1)] = target of the edge labelled i out of v;
    /// slots[v][2(i-1)+1] = target of the edge labelled -i out of v.
    slots: Vec<Vec<Option<u32>>>,
}

impl CoreGraph {
    /// Folded core graph of the subgroup generated by the given words.
    pub fn from_words(words: &[Word], rank: usize) -> Result<CoreGraph, StallingsError> {
        if rank == 0 {
            return Err(StallingsError::ZeroRank);
        }
        for w in words {
            w.validate(rank)?;
        }
        let mut b = Builder::new(rank);
        for w in words {
            b.add_loop(&w.reduced());
        }
        b.fold();
        b.trim();
        Ok(b.canonical())
    }

    pub fn trivial(rank: usize) -> CoreGraph {
        CoreGraph::from_words(&[], rank).expect("rank checked by caller")
    }

    pub fn rank_of_ambient(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.slots
            .iter()
            .map(|v| v.iter().flatten().count())
            .sum::<usize>()
            / 2
    }

    /// Rank of the subgroup itself: E - V + 1 on the connected core.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    fn slot(c: i32) -> usize {
        let i = c.unsigned_abs() as usize;
        2 * (i - 1) + if c < 0 { 1 } else { 0 }
    }

    fn step(&self, v: u32, c: i32) -> Option<u32> {
        self.slots[v as usize][Self::slot(c)]
    }

    /// Traces a word from the basepoint; None when an edge is missing.
    pub fn trace(&self, w: &Word) -> Option<u32> {
        let mut v = 0u32;
        for &c in &w.reduced().0 {
            v = self.step(v, c)?;
        }
        Some(v)
    }

    /// True iff the word spells a loop at the basepoint.
    pub fn contains(&self, w: &Word) -> bool {
        self.trace(w) == Some(0)
    }

    /// Left cosets: aH = bH iff a^{-1} b lies in H.
    pub fn same_coset(&self, a: &Word, b: &Word) -> bool {
        self.contains(&a.inverse().concat(b))
    }

    /// Finite iff the graph is a full 2k-regular cover; then the index is
    /// the vertex count.
    pub fn index(&self) -> SubgroupIndex {
        if self
            .slots
            .iter()
            .all(|v| v.iter().all(|s| s.is_some()))
        {
            SubgroupIndex::Finite(self.slots.len() as u32)
        } else {
            SubgroupIndex::Infinite
        }
    }

    /// Walks a word from the basepoint as far as the graph allows. The
    /// result identifies the left coset: once the walk leaves the core it
    /// enters the tree part of the Schreier graph, where a reduced word
    /// never returns, so (last core vertex, unread suffix) is a faithful
    /// coset key.
    fn walk_key(&self, w: &Word) -> (u32, Vec<i32>) {
        let r = w.reduced();
        let mut v = 0u32;
        for (i, &c) in r.0.iter().enumerate() {
            match self.step(v, c) {
                Some(next) => v = next,
                None => return (v, r.0[i..].to_vec()),
            }
        }
        (v, Vec::new())
    }

    /// Breadth-first enumeration of the first `max_cosets` left cosets in
    /// shortlex representative order, with the partial action of each
    /// generator. Enumeration stops early once the table saturates.
    pub fn coset_action_prefix(&self, max_cosets: usize) -> CosetActionPrefix {
        let mut keys: HashMap<(u32, Vec<i32>), u32> = HashMap::new();
        let mut reps: Vec<Word> = Vec::new();
        // the left coset of w corresponds to tracing w^{-1} from the base
        let key_of = |g: &CoreGraph, w: &Word| g.walk_key(&w.inverse());
        keys.insert(key_of(self, &Word::empty()), 0);
        reps.push(Word::empty());
        let mut length = 1usize;
        'grow: while keys.len() < max_cosets {
            let mut grew = false;
            for w in ShortlexWords::new(self.rank) {
                if w.len() < length {
                    continue;
                }
                if w.len() > length {
                    break;
                }
                let key = key_of(self, &w);
                if !keys.contains_key(&key) {
                    keys.insert(key, reps.len() as u32);
                    reps.push(w);
                    grew = true;
                    if keys.len() >= max_cosets {
                        break 'grow;
                    }
                }
            }
            if !grew {
                // no coset has a representative of this length; the table
                // is saturated
                break;
            }
            length += 1;
        }
        // partial generator actions: x_i . (wH) = (x_i w) H
        let mut tables = Vec::with_capacity(self.rank);
        for i in 1..=self.rank as i32 {
            let row: Vec<Option<u32>> = reps
                .iter()
                .map(|w| {
                    let img = Word(vec![i]).concat(w);
                    keys.get(&key_of(self, &img)).copied()
                })
                .collect();
            tables.push(row);
        }
        CosetActionPrefix {
            representatives: reps,
            generator_maps: tables,
        }
    }

    /// Plain adjacency text: one line per edge `v <label> w`, plus a header.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = format!(
            "core rank={} vertices={} base=0\n",
            self.rank,
            self.slots.len()
        );
        for (v, row) in self.slots.iter().enumerate() {
            for i in 1..=self.rank {
                if let Some(w) = row[2 * (i - 1)] {
                    out.push_str(&format!("{} {} {}\n", v, i, w));
                }
            }
        }
        out
    }

    /// DOT digraph for visualization.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph core {\n  0 [shape=doublecircle];\n");
        for (v, row) in self.slots.iter().enumerate() {
            for i in 1..=self.rank {
                if let Some(w) = row[2 * (i - 1)] {
                    out.push_str(&format!("  {} -> {} [label=\"x{}\"];\n", v, w, i));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Graph under construction: darts (label, target) per vertex, merged with
/// union-find while folding.
struct Builder {
    rank: usize,
    parent: Vec<u32>,
    adj: Vec<Vec<(i32, u32)>>,
}

impl Builder {
    fn new(rank: usize) -> Builder {
        Builder {
            rank,
            parent: vec![0],
            adj: vec![Vec::new()],
        }
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let up = self.parent[self.parent[v as usize] as usize];
            self.parent[v as usize] = up;
            v = up;
        }
        v
    }

    fn fresh(&mut self) -> u32 {
        let id = self.adj.len() as u32;
        self.parent.push(id);
        self.adj.push(Vec::new());
        id
    }

    /// Attaches the word as a loop at the basepoint with fresh interior
    /// vertices. Each edge v -c-> w is stored as the dart (c, w) at v and
    /// (-c, v) at w.
    fn add_loop(&mut self, w: &Word) {
        if w.is_empty() {
            return;
        }
        let mut v = 0u32;
        for (i, &c) in w.0.iter().enumerate() {
            let target = if i + 1 == w.0.len() { 0 } else { self.fresh() };
            self.adj[v as usize].push((c, target));
            self.adj[target as usize].push((-c, v));
            v = target;
        }
    }

    /// Stallings folding: while some vertex carries two darts with the same
    /// label to distinct targets, merge the targets.
    fn fold(&mut self) {
        let mut work: Vec<u32> = (0..self.adj.len() as u32).collect();
        while let Some(raw) = work.pop() {
            let v = self.find(raw);
            if v != raw && self.adj[raw as usize].is_empty() {
                continue;
            }
            // normalize targets and dedupe identical darts
            let mut darts = std::mem::take(&mut self.adj[v as usize]);
            for d in darts.iter_mut() {
                d.1 = self.find(d.1);
            }
            darts.sort_unstable();
            darts.dedup();
            let mut by_label: HashMap<i32, u32> = HashMap::new();
            let mut merge: Option<(u32, u32)> = None;
            for &(c, w) in &darts {
                match by_label.get(&c) {
                    Some(&w0) if w0 != w => {
                        merge = Some((w0, w));
                        break;
                    }
                    _ => {
                        by_label.insert(c, w);
                    }
                }
            }
            self.adj[v as usize] = darts;
            if let Some((a, b)) = merge {
                let (a, b) = (self.find(a), self.find(b));
                if a != b {
                    // keep the smaller id as representative so the basepoint
                    // (vertex 0) always survives
                    let (keep, gone) = if a < b { (a, b) } else { (b, a) };
                    self.parent[gone as usize] = keep;
                    let moved = std::mem::take(&mut self.adj[gone as usize]);
                    self.adj[keep as usize].extend(moved);
                    work.push(keep);
                }
                work.push(self.find(v));
            }
        }
    }

    /// Rewrites every representative's dart list with resolved targets and
    /// clears stale lists, so later passes need no union-find lookups.
    fn normalize(&mut self) {
        for raw in 0..self.adj.len() as u32 {
            if self.find(raw) != raw {
                debug_assert!(self.adj[raw as usize].is_empty());
                continue;
            }
            let mut darts = std::mem::take(&mut self.adj[raw as usize]);
            for d in darts.iter_mut() {
                d.1 = self.find(d.1);
            }
            darts.sort_unstable();
            darts.dedup();
            self.adj[raw as usize] = darts;
        }
    }

    /// Removes non-basepoint vertices of degree at most one until none are
    /// left. Assumes normalized dart lists.
    fn trim(&mut self) {
        self.normalize();
        let base = self.find(0);
        loop {
            let mut removed = false;
            for v in 0..self.adj.len() as u32 {
                if v == base || self.find(v) != v {
                    continue;
                }
                let darts = self.adj[v as usize].clone();
                if darts.is_empty() && v != base {
                    continue;
                }
                if darts.len() <= 1 {
                    if let Some(&(c, w)) = darts.first() {
                        let neighbor = &mut self.adj[w as usize];
                        if let Some(pos) =
                            neighbor.iter().position(|&d| d.0 == -c && d.1 == v)
                        {
                            neighbor.remove(pos);
                        }
                    }
                    self.adj[v as usize] = Vec::new();
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
    }

    /// Renumbers by breadth-first search from the basepoint following slots
    /// in label order, producing the canonical immutable graph.
    fn canonical(&mut self) -> CoreGraph {
        let base = self.find(0);
        // normalized slot table on representatives
        let mut slot_map: HashMap<u32, Vec<Option<u32>>> = HashMap::new();
        for raw in 0..self.adj.len() as u32 {
            if self.find(raw) != raw {
                continue;
            }
            let darts = self.adj[raw as usize].clone();
            let entry = slot_map
                .entry(raw)
                .or_insert_with(|| vec![None; 2 * self.rank]);
            for (c, w) in darts {
                let w = self.find(w);
                entry[CoreGraph::slot(c)] = Some(w);
            }
        }
        let mut order: Vec<u32> = vec![base];
        let mut number: HashMap<u32, u32> = HashMap::new();
        number.insert(base, 0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            if let Some(row) = slot_map.get(&v) {
                for target in row.iter().flatten() {
                    if !number.contains_key(target) {
                        number.insert(*target, order.len() as u32);
                        order.push(*target);
                    }
                }
            }
        }
        let slots: Vec<Vec<Option<u32>>> = order
            .iter()
            .map(|v| {
                slot_map[v]
                    .iter()
                    .map(|t| t.map(|w| number[&w]))
                    .collect()
            })
            .collect();
        CoreGraph {
            rank: self.rank,
            slots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 4).unwrap()
    }

    fn graph(words: &[&str]) -> CoreGraph {
        CoreGraph::from_words(&words.iter().map(|s| w(s)).collect::<Vec<_>>(), 2).unwrap()
    }

    #[test]
    fn trivial_subgroup_is_one_vertex() {
        let g = CoreGraph::trivial(2);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.contains(&Word::empty()));
        assert!(!g.contains(&w("a")));
    }

    #[test]
    fn single_loop_generator() {
        let g = graph(&["a"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.contains(&w("aaaaa")));
        assert!(!g.contains(&w("b")));
    }

    #[test]
    fn squared_generator_plus_loop() {
        // <a^2, b>: two vertices joined by a pair of a-edges, b-loop at base
        let g = graph(&["aa", "b"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        assert!(g.contains(&w("aa")));
        assert!(!g.contains(&w("a")));
        assert!(g.contains(&w("b")));
        assert!(g.contains(&w("aab")));
        assert!(g.contains(&w("baab")));
        assert!(!g.contains(&w("ab")));
        assert!(!g.contains(&w("abba")));
    }

    #[test]
    fn coset_examples() {
        let g = graph(&["a"]);
        assert!(g.same_coset(&w("b"), &w("b")));
        assert!(g.same_coset(&w("b"), &w("baaa")));
        assert!(!g.same_coset(&w("b"), &w("ab")));
    }

    #[test]
    fn index_examples() {
        assert_eq!(graph(&["a", "b"]).index(), SubgroupIndex::Finite(1));
        assert_eq!(
            graph(&["aa", "b", "aba"]).index(),
            SubgroupIndex::Finite(2)
        );
        assert_eq!(graph(&["a"]).index(), SubgroupIndex::Infinite);
    }

    #[test]
    fn folding_collapses_to_full_group() {
        // <aba^{-1}, ab> = F_2
        let g = graph(&["abA", "ab"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.index(), SubgroupIndex::Finite(1));
        assert!(g.contains(&w("a")));
        assert!(g.contains(&w("b")));
    }

    #[test]
    fn folding_is_order_independent() {
        let words = ["abA", "aabb", "bab", "Aba"];
        let g1 = graph(&words);
        for rot in 1..words.len() {
            let mut rotated: Vec<&str> = words.to_vec();
            rotated.rotate_left(rot);
            let g2 = graph(&rotated);
            assert_eq!(g1, g2);
        }
    }

    #[test]
    fn conjugate_generator_keeps_hanging_path() {
        // <a b a^{-1}>: base --a--> v with a b-loop at v
        let g = graph(&["abA"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(g.contains(&w("abA")));
        assert!(g.contains(&w("abbA")));
        assert!(!g.contains(&w("b")));
        assert_eq!(g.subgroup_rank(), 1);
    }

    #[test]
    fn subgroup_rank_formula() {
        assert_eq!(graph(&["a", "b"]).subgroup_rank(), 2);
        assert_eq!(graph(&["aa", "b", "aba"]).subgroup_rank(), 3);
        assert_eq!(graph(&["aa", "bb"]).subgroup_rank(), 2);
    }

    #[test]
    fn shortlex_enumeration_prefix() {
        let words: Vec<String> = ShortlexWords::new(2)
            .take(9)
            .map(|w| w.letters_string())
            .collect();
        assert_eq!(
            words,
            vec!["1", "a", "A", "b", "B", "aa", "ab", "aB", "AA"]
        );
    }

    #[test]
    fn word_parse_formats() {
        assert_eq!(Word::parse("1 2 -1", 2).unwrap(), w("abA"));
        assert_eq!(Word::parse("abA", 2).unwrap().0, vec![1, 2, -1]);
        assert!(Word::parse("c", 2).is_err());
        assert!(Word::parse("3", 2).is_err());
        assert_eq!(Word::parse("", 2).unwrap(), Word::empty());
    }

    #[test]
    fn reduction_and_inverse() {
        assert_eq!(w("abBA"), Word(vec![1, 2, -2, -1]));
        assert_eq!(w("abBA").reduced(), Word::empty());
        assert_eq!(w("ab").inverse(), Word(vec![-2, -1]));
        assert_eq!(w("ab").concat(&w("BA")), Word::empty());
    }

    #[test]
    fn coset_prefix_whole_group() {
        let g = graph(&["a", "b"]);
        let p = g.coset_action_prefix(10);
        assert_eq!(p.coset_count(), 1);
        assert!(p.is_saturated());
        assert_eq!(p.generator_maps, vec![vec![Some(0)], vec![Some(0)]]);
    }

    #[test]
    fn coset_prefix_cyclic_subgroup() {
        // H = <a> in F_2: cosets H, bH, b^{-1}H, ... x_2 sends H to bH.
        let g = graph(&["a"]);
        let p = g.coset_action_prefix(3);
        assert_eq!(p.coset_count(), 3);
        assert_eq!(p.representatives[0], Word::empty());
        assert_eq!(p.representatives[1], w("b"));
        assert_eq!(p.representatives[2], w("B"));
        // x2 . H = bH
        assert_eq!(p.generator_maps[1][0], Some(1));
        // x2 . (b^{-1}H) = H
        assert_eq!(p.generator_maps[1][2], Some(0));
        assert!(!p.is_saturated());
    }

    #[test]
    fn coset_prefix_saturates_at_finite_index() {
        let g = graph(&["aa", "b", "aba"]);
        assert_eq!(g.index(), SubgroupIndex::Finite(2));
        let p = g.coset_action_prefix(5);
        assert_eq!(p.coset_count(), 2);
        assert!(p.is_saturated());
    }

    #[test]
    fn adjacency_export_mentions_every_edge() {
        let g = graph(&["aa", "b"]);
        let text = g.to_adjacency_text();
        assert!(text.starts_with("core rank=2 vertices=2 base=0"));
        assert_eq!(text.lines().count(), 1 + 3);
        let dot = g.to_dot();
        assert!(dot.contains("0 -> 0 [label=\"x2\"]"));
    }
}
