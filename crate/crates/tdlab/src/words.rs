//! Free products G * F_n over a finite coefficient group G.
//!
//! Elements are kept in the alternating normal form: maximal freely reduced
//! variable runs interleaved with single nontrivial group constants. The
//! module provides length with respect to generating sets, substitution and
//! evaluation, exhaustive mixed-identity testing, the canonical identity
//! words for finite classes and direct products, the iterated-commutator
//! embedding words, and the free-product extension certificate.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::permgrp::{GroupError, PermGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(u16, u16, u16),
    #[error("inverse table is wrong at element {0}")]
    BadInverse(u16),
    #[error("element index {0} out of range (group has {1} elements)")]
    ElementRange(u16, usize),
    #[error("variable index {0} out of range (word has {1} variables)")]
    VariableRange(u16, usize),
    #[error("assignment length {0} does not match variable count {1}")]
    AssignmentLength(usize, usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("element must not be the identity")]
    IdentityElement,
    #[error("word must be nontrivial")]
    TrivialWord,
    #[error("subgroup list is not closed under the group operation")]
    NotSubgroup,
    #[error("tuples are not admissible: {0}")]
    NotAdmissible(String),
    #[error("generating set does not generate: element {0} unreachable")]
    NotGenerating(u16),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("group too large for a multiplication table: {0}")]
    TableTooLarge(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite group as a full multiplication table. The identity sits at
/// index 0. Associativity and the inverse laws are checked once at load.
#[derive(Clone)]
pub struct FiniteGroupTable {
    labels: Vec<String>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    size: usize,
}

impl fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroupTable(|G|={})", self.size)
    }
}

impl FiniteGroupTable {
    pub fn from_raw(labels: Vec<String>, mul: Vec<u16>, inv: Vec<u16>) -> Result<Self, WordError> {
        let n = labels.len();
        assert_eq!(mul.len(), n * n);
        assert_eq!(inv.len(), n);
        let t = FiniteGroupTable {
            labels,
            mul,
            inv,
            size: n,
        };
        t.check_laws()?;
        Ok(t)
    }

    fn check_laws(&self) -> Result<(), WordError> {
        let n = self.size as u16;
        for a in 0..n {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return Err(WordError::BadInverse(0));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(WordError::BadInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(WordError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Multiplication table of a permutation group; elements are indexed in
    /// sorted image-vector order with the identity moved to slot 0, and each
    /// label is the compact cycle notation of the element.
    pub fn from_perm_group(group: &PermGroup) -> Result<Self, WordError> {
        let order = group.order_bounded(u32::MAX)?;
        if order > 2048 {
            return Err(WordError::TableTooLarge(order));
        }
        let mut elems = group.elements_bounded(2048)?;
        // sorted order puts the identity first only on natural domains;
        // swap it to index 0 explicitly.
        if let Some(pos) = elems.iter().position(|p| p.is_identity()) {
            elems.swap(0, pos);
            elems[1..].sort_by_key(|p| p.to_string());
        }
        let index: HashMap<String, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.to_string(), i as u16))
            .collect();
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        let mut inv = vec![0u16; n];
        for (i, a) in elems.iter().enumerate() {
            inv[i] = index[&a.inverse().to_string()];
            for (j, b) in elems.iter().enumerate() {
                // table product ab acts like b first, matching perm compose
                mul[i * n + j] = index[&a.compose(b).to_string()];
            }
        }
        let labels = elems.iter().map(|p| compact_label(&p.to_string())).collect();
        FiniteGroupTable::from_raw(labels, mul, inv)
    }

    pub fn trivial() -> Self {
        FiniteGroupTable::from_raw(vec!["e".into()], vec![0], vec![0]).unwrap()
    }

    pub fn cyclic(n: u16) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| if i == 0 { "e".into() } else { format!("g{}", i) })
            .collect();
        let mut mul = vec![0u16; (n as usize) * (n as usize)];
        let mut inv = vec![0u16; n as usize];
        for a in 0..n {
            inv[a as usize] = (n - a) % n;
            for b in 0..n {
                mul[a as usize * n as usize + b as usize] = (a + b) % n;
            }
        }
        FiniteGroupTable::from_raw(labels, mul, inv).unwrap()
    }

    /// Direct product with pairs labelled `a|b`; (a, b) maps to index
    /// a * |B| + b.
    pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Self {
        let n = a.size * b.size;
        let mut labels = Vec::with_capacity(n);
        let mut mul = vec![0u16; n * n];
        let mut inv = vec![0u16; n];
        let enc = |x: u16, y: u16| x as usize * b.size + y as usize;
        for x in 0..a.size as u16 {
            for y in 0..b.size as u16 {
                labels.push(format!("{}|{}", a.labels[x as usize], b.labels[y as usize]));
                inv[enc(x, y)] = (a.inv(x) as usize * b.size + b.inv(y) as usize) as u16;
            }
        }
        for x1 in 0..a.size as u16 {
            for y1 in 0..b.size as u16 {
                for x2 in 0..a.size as u16 {
                    for y2 in 0..b.size as u16 {
                        mul[enc(x1, y1) * n + enc(x2, y2)] =
                            (a.mul(x1, x2) as usize * b.size + b.mul(y1, y2) as usize) as u16;
                    }
                }
            }
        }
        FiniteGroupTable::from_raw(labels, mul, inv).unwrap()
    }

    /// Embeds an element of the left factor as (a, 1).
    pub fn embed_left(&self, b_size: usize, a: u16) -> u16 {
        (a as usize * b_size) as u16
    }

    /// Embeds an element of the right factor as (1, b).
    pub fn embed_right(&self, b: u16) -> u16 {
        b
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn label(&self, a: u16) -> &str {
        &self.labels[a as usize]
    }

    pub fn element_by_label(&self, label: &str) -> Option<u16> {
        self.labels.iter().position(|l| l == label).map(|i| i as u16)
    }

    pub fn order_of(&self, a: u16) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy class of `a`, sorted.
    pub fn conjugacy_class(&self, a: u16) -> Vec<u16> {
        let mut seen = vec![false; self.size];
        seen[a as usize] = true;
        let mut class = vec![a];
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for g in 0..self.size as u16 {
                let y = self.mul(self.inv(g), self.mul(x, g));
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    class.push(y);
                    queue.push_back(y);
                }
            }
        }
        class.sort_unstable();
        class
    }

    /// Word lengths |g|_S over S union S^{-1} by breadth-first search.
    /// Unreachable elements are None.
    pub fn word_lengths(&self, s: &[u16]) -> Vec<Option<u32>> {
        let mut dist: Vec<Option<u32>> = vec![None; self.size];
        dist[0] = Some(0);
        let mut gens: Vec<u16> = Vec::new();
        for &g in s {
            gens.push(g);
            gens.push(self.inv(g));
        }
        let mut queue = VecDeque::from([0u16]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize].unwrap();
            for &g in &gens {
                let y = self.mul(x, g);
                if dist[y as usize].is_none() {
                    dist[y as usize] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// True iff the listed elements generate the whole group.
    pub fn generates(&self, s: &[u16]) -> bool {
        self.word_lengths(s).iter().all(|d| d.is_some())
    }
}

fn compact_label(cycle_str: &str) -> String {
    // "(1 2 3)(5 6)" -> "(1,2,3)(5,6)"; "()" -> "e"
    if cycle_str == "()" {
        return "e".into();
    }
    cycle_str.replace(' ', ",")
}

/// One syllable of a normal form: a nontrivial group constant, or a freely
/// reduced run of variables stored run-length encoded as (variable index,
/// nonzero exponent) pairs with adjacent entries on distinct variables.
/// Variables are 1-based; exponents are kept wide because canonical identity
/// words use factorial exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    Const(u16),
    Vars(Vec<(u16, i128)>),
}

/// An element of G * F_n in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedWord {
    n_vars: usize,
    syllables: Vec<Syllable>,
}

impl MixedWord {
    pub fn empty(n_vars: usize) -> Self {
        MixedWord {
            n_vars,
            syllables: Vec::new(),
        }
    }

    pub fn constant(n_vars: usize, g: u16) -> Self {
        let syllables = if g == 0 { vec![] } else { vec![Syllable::Const(g)] };
        MixedWord { n_vars, syllables }
    }

    pub fn variable(n_vars: usize, index: u16, exponent: i128) -> Self {
        assert!(index >= 1 && index as usize <= n_vars);
        let syllables = if exponent == 0 {
            vec![]
        } else {
            vec![Syllable::Vars(vec![(index, exponent)])]
        };
        MixedWord { n_vars, syllables }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_trivial(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters in the normal form, counting a constant as one
    /// letter and a variable run by its total absolute exponent.
    pub fn letter_len(&self) -> u128 {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::Const(_) => 1u128,
                Syllable::Vars(run) => run.iter().map(|(_, e)| e.unsigned_abs()).sum(),
            })
            .sum()
    }
}

/// Reduction state: syllables are pushed one letter or syllable at a time
/// and the stack top is kept in normal form, so every adjacency check is
/// against the top only.
struct Reducer<'t> {
    table: &'t FiniteGroupTable,
    stack: Vec<Syllable>,
}

impl<'t> Reducer<'t> {
    fn new(table: &'t FiniteGroupTable) -> Self {
        Reducer {
            table,
            stack: Vec::new(),
        }
    }

    fn push_const(&mut self, g: u16) {
        if g == 0 {
            return;
        }
        match self.stack.last_mut() {
            Some(Syllable::Const(h)) => {
                let prod = self.table.mul(*h, g);
                self.stack.pop();
                self.push_const(prod);
            }
            _ => self.stack.push(Syllable::Const(g)),
        }
    }

    fn push_var(&mut self, index: u16, exponent: i128) {
        if exponent == 0 {
            return;
        }
        match self.stack.last_mut() {
            Some(Syllable::Vars(run)) => {
                let &mut (last_var, last_exp) = run.last_mut().unwrap();
                if last_var == index {
                    let combined = last_exp + exponent;
                    run.pop();
                    if combined != 0 {
                        run.push((index, combined));
                    } else if run.is_empty() {
                        self.stack.pop();
                        // merging may expose two constants
                        if let (Some(Syllable::Const(_)), true) = (
                            self.stack.last(),
                            matches!(self.stack.iter().rev().nth(1), Some(Syllable::Const(_))),
                        ) {
                            // cannot happen: stack was in normal form
                            unreachable!("adjacent constants inside reducer stack");
                        }
                    }
                } else {
                    run.push((index, exponent));
                }
            }
            _ => self.stack.push(Syllable::Vars(vec![(index, exponent)])),
        }
    }

    fn push_syllable(&mut self, s: &Syllable) {
        match s {
            Syllable::Const(g) => self.push_const(*g),
            Syllable::Vars(run) => {
                for &(v, e) in run {
                    self.push_var(v, e);
                }
            }
        }
    }

    fn finish(self, n_vars: usize) -> MixedWord {
        MixedWord {
            n_vars,
            syllables: self.stack,
        }
    }
}

/// The unique normal form. Idempotent; the result is empty exactly when the
/// word represents the identity of G * F_n.
pub fn normal_form(table: &FiniteGroupTable, w: &MixedWord) -> MixedWord {
    let mut r = Reducer::new(table);
    for s in &w.syllables {
        r.push_syllable(s);
    }
    r.finish(w.n_vars)
}

/// Product of two words, reduced.
pub fn mul_words(table: &FiniteGroupTable, a: &MixedWord, b: &MixedWord) -> MixedWord {
    let n = a.n_vars.max(b.n_vars);
    let mut r = Reducer::new(table);
    for s in a.syllables.iter().chain(b.syllables.iter()) {
        r.push_syllable(s);
    }
    r.finish(n)
}

pub fn inverse_word(table: &FiniteGroupTable, w: &MixedWord) -> MixedWord {
    let mut r = Reducer::new(table);
    for s in w.syllables.iter().rev() {
        match s {
            Syllable::Const(g) => r.push_const(table.inv(*g)),
            Syllable::Vars(run) => {
                for &(v, e) in run.iter().rev() {
                    r.push_var(v, -e);
                }
            }
        }
    }
    r.finish(w.n_vars)
}

/// `[a, b] = a^{-1} b^{-1} a b`.
pub fn commutator_word(table: &FiniteGroupTable, a: &MixedWord, b: &MixedWord) -> MixedWord {
    let ai = inverse_word(table, a);
    let bi = inverse_word(table, b);
    mul_words(table, &mul_words(table, &ai, &bi), &mul_words(table, a, b))
}

/// Word length of Cor-style syllable sums: each constant contributes its
/// length over `s_g`, each variable run its total absolute exponent.
pub fn fp_length(
    table: &FiniteGroupTable,
    w: &MixedWord,
    s_g: &[u16],
) -> Result<u128, WordError> {
    let dist = table.word_lengths(s_g);
    let mut total: u128 = 0;
    for s in &w.syllables {
        match s {
            Syllable::Const(g) => match dist[*g as usize] {
                Some(d) => total += d as u128,
                None => return Err(WordError::NotGenerating(*g)),
            },
            Syllable::Vars(run) => {
                total += run.iter().map(|(_, e)| e.unsigned_abs()).sum::<u128>()
            }
        }
    }
    Ok(total)
}

/// Image of the word under the homomorphism fixing G and sending x_i to
/// assignment[i-1]. Exponents are reduced modulo element orders, so huge
/// exponents evaluate in O(order).
pub fn evaluate(
    table: &FiniteGroupTable,
    w: &MixedWord,
    assignment: &[u16],
) -> Result<u16, WordError> {
    if assignment.len() != w.n_vars {
        return Err(WordError::AssignmentLength(assignment.len(), w.n_vars));
    }
    for &g in assignment {
        if g as usize >= table.size() {
            return Err(WordError::ElementRange(g, table.size()));
        }
    }
    let mut acc: u16 = 0;
    for s in &w.syllables {
        match s {
            Syllable::Const(g) => acc = table.mul(acc, *g),
            Syllable::Vars(run) => {
                for &(v, e) in run {
                    let g = assignment[(v - 1) as usize];
                    let ord = table.order_of(g) as i128;
                    let mut r = e % ord;
                    if r < 0 {
                        r += ord;
                    }
                    let mut p: u16 = 0;
                    for _ in 0..r {
                        p = table.mul(p, g);
                    }
                    acc = table.mul(acc, p);
                }
            }
        }
    }
    Ok(acc)
}

/// Exhaustively tests whether `w = 1` holds under every assignment.
/// Returns None when the identity holds, otherwise the lexicographically
/// least witnessing assignment (assignments iterate in row-major element
/// order with the last variable fastest).
pub fn is_mixed_identity(
    table: &FiniteGroupTable,
    w: &MixedWord,
    budget: u64,
) -> Result<Option<Vec<u16>>, WordError> {
    is_mixed_identity_threaded(table, w, budget, 1)
}

/// Same scan, partitioned across worker threads by the leading variable.
/// The returned witness is still the lexicographically least one.
pub fn is_mixed_identity_threaded(
    table: &FiniteGroupTable,
    w: &MixedWord,
    budget: u64,
    threads: usize,
) -> Result<Option<Vec<u16>>, WordError> {
    let n = w.n_vars;
    let size = table.size() as u64;
    let total = size.checked_pow(n as u32).ok_or_else(|| {
        WordError::Budget(format!("|G|^n overflows with |G| = {}, n = {}", size, n))
    })?;
    if total > budget {
        return Err(WordError::Budget(format!(
            "{} assignments exceed the budget {}",
            total, budget
        )));
    }
    if n == 0 {
        let v = evaluate(table, w, &[])?;
        return Ok(if v == 0 { None } else { Some(vec![]) });
    }
    let threads = threads.max(1).min(table.size());
    if threads == 1 {
        return Ok(scan_block(table, w, 0, table.size() as u16)?);
    }
    let step = table.size().div_ceil(threads) as u16;
    let mut results: Vec<Option<Option<Vec<u16>>>> = vec![None; threads];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let lo = t as u16 * step;
            let hi = ((t as u16 + 1) * step).min(table.size() as u16);
            handles.push(scope.spawn(move || scan_block(table, w, lo, hi)));
        }
        for (t, h) in handles.into_iter().enumerate() {
            results[t] = Some(h.join().expect("scan worker panicked").unwrap_or(None));
        }
    });
    // blocks are ordered by leading element, so the first hit is least
    for r in results.into_iter().flatten() {
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

fn scan_block(
    table: &FiniteGroupTable,
    w: &MixedWord,
    first_lo: u16,
    first_hi: u16,
) -> Result<Option<Vec<u16>>, WordError> {
    let n = w.n_vars;
    let size = table.size() as u16;
    let mut assign = vec![0u16; n];
    assign[0] = first_lo;
    if first_lo >= first_hi {
        return Ok(None);
    }
    loop {
        if evaluate(table, w, &assign)? != 0 {
            return Ok(Some(assign));
        }
        // odometer, last variable fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            assign[i] += 1;
            let limit = if i == 0 { first_hi } else { size };
            if assign[i] < limit {
                break;
            }
            assign[i] = if i == 0 { return Ok(None) } else { 0 };
        }
    }
}

/// The word `[x_1^{n!}, a]`, the canonical identity when n is the size of
/// the conjugacy class of a.
pub fn mixed_identity_from_finite_class(
    table: &FiniteGroupTable,
    a: u16,
    class_size: u32,
) -> Result<MixedWord, WordError> {
    if a == 0 {
        return Err(WordError::IdentityElement);
    }
    if a as usize >= table.size() {
        return Err(WordError::ElementRange(a, table.size()));
    }
    if class_size > 33 {
        return Err(WordError::Budget(format!(
            "{}! does not fit the exponent type",
            class_size
        )));
    }
    let mut fact: i128 = 1;
    for i in 2..=class_size as i128 {
        fact *= i;
    }
    let x_pow = MixedWord::variable(1, 1, fact);
    let a_word = MixedWord::constant(1, a);
    Ok(commutator_word(table, &x_pow, &a_word))
}

/// The word `[[a, x], [b, x]]` over A x B with a embedded as (a, 1) and b
/// as (1, b). Returns the product table together with the word.
pub fn direct_product_identity(
    a_table: &FiniteGroupTable,
    a: u16,
    b_table: &FiniteGroupTable,
    b: u16,
) -> Result<(FiniteGroupTable, MixedWord), WordError> {
    if a as usize >= a_table.size() {
        return Err(WordError::ElementRange(a, a_table.size()));
    }
    if b as usize >= b_table.size() {
        return Err(WordError::ElementRange(b, b_table.size()));
    }
    let prod = FiniteGroupTable::direct_product(a_table, b_table);
    let a_emb = prod.embed_left(b_table.size(), a);
    let b_emb = prod.embed_right(b);
    let x = MixedWord::variable(1, 1, 1);
    let left = commutator_word(&prod, &MixedWord::constant(1, a_emb), &x);
    let right = commutator_word(&prod, &MixedWord::constant(1, b_emb), &x);
    let w = commutator_word(&prod, &left, &right);
    Ok((prod, w))
}

/// The iterated commutator `u_i = [w_1, x^{-1} w_2 x, ..., x^{-(i-1)} w_i
/// x^{i-1}]` over G * F_{n+1}, where x is the fresh variable x_{n+1}.
/// Every input must be nontrivial; the output is checked nontrivial.
pub fn build_ui_word(
    table: &FiniteGroupTable,
    ws: &[MixedWord],
) -> Result<MixedWord, WordError> {
    if ws.is_empty() {
        return Err(WordError::TrivialWord);
    }
    let n = ws.iter().map(|w| w.n_vars).max().unwrap();
    let fresh = (n + 1) as u16;
    let widen = |w: &MixedWord| MixedWord {
        n_vars: n + 1,
        syllables: w.syllables.clone(),
    };
    let mut entries = Vec::with_capacity(ws.len());
    for (j, w) in ws.iter().enumerate() {
        let nf = normal_form(table, w);
        if nf.is_trivial() {
            return Err(WordError::TrivialWord);
        }
        let conj = j as i128;
        let x_neg = MixedWord::variable(n + 1, fresh, -conj);
        let x_pos = MixedWord::variable(n + 1, fresh, conj);
        let conjugated = mul_words(table, &mul_words(table, &x_neg, &widen(&nf)), &x_pos);
        entries.push(conjugated);
    }
    let mut acc = entries[0].clone();
    for e in &entries[1..] {
        acc = commutator_word(table, &acc, e);
    }
    let out = normal_form(table, &acc);
    if out.is_trivial() {
        return Err(WordError::TrivialWord);
    }
    Ok(out)
}

/// Substitutes x_i by x^i g x^i, realizing the one-variable embedding of
/// G * F_n into G * F_1. Nontriviality must be preserved; this is checked
/// on every call.
pub fn embed_one_variable(
    table: &FiniteGroupTable,
    w: &MixedWord,
    g: u16,
    letter_budget: u128,
) -> Result<MixedWord, WordError> {
    if g == 0 {
        return Err(WordError::IdentityElement);
    }
    if g as usize >= table.size() {
        return Err(WordError::ElementRange(g, table.size()));
    }
    let input = normal_form(table, w);
    let expanded: u128 = input
        .syllables
        .iter()
        .map(|s| match s {
            Syllable::Const(_) => 1u128,
            Syllable::Vars(run) => run
                .iter()
                .map(|(v, e)| e.unsigned_abs() * (2 * *v as u128 + 1))
                .sum(),
        })
        .sum();
    if expanded > letter_budget {
        return Err(WordError::Budget(format!(
            "substitution would produce {} letters",
            expanded
        )));
    }
    let mut r = Reducer::new(table);
    for s in &input.syllables {
        match s {
            Syllable::Const(c) => r.push_const(*c),
            Syllable::Vars(run) => {
                for &(v, e) in run {
                    // (x^v g x^v)^e, with e copies laid out letter by letter
                    let copies = e.unsigned_abs();
                    for _ in 0..copies {
                        if e > 0 {
                            r.push_var(1, v as i128);
                            r.push_const(g);
                            r.push_var(1, v as i128);
                        } else {
                            r.push_var(1, -(v as i128));
                            r.push_const(table.inv(g));
                            r.push_var(1, -(v as i128));
                        }
                    }
                }
            }
        }
    }
    let out = MixedWord {
        n_vars: 1,
        syllables: r.stack,
    };
    if !input.is_trivial() && out.is_trivial() {
        return Err(WordError::TrivialWord);
    }
    Ok(out)
}

/// Certificate data for the free-product extension check: products of
/// letters from Z = H u {b_i^{-1} t a_i} u {a_i^{-1} t^{-1} b_i} inside
/// G * <t> are enumerated to the given length; every product landing in G
/// must lie in H, and the letter length must be Lipschitz-bounded by three
/// times the syllable length.
#[derive(Debug, Clone)]
pub struct ExtensionCertificate {
    pub enumerated: usize,
    pub in_g: usize,
    pub in_h: usize,
    pub max_z_over_syllable: (u64, u128),
    pub intersection_ok: bool,
    pub lipschitz_ok: bool,
}

impl ExtensionCertificate {
    pub fn passed(&self) -> bool {
        self.intersection_ok && self.lipschitz_ok
    }
}

pub fn check_free_product_extension(
    table: &FiniteGroupTable,
    h_members: &[u16],
    a_tuple: &[u16],
    b_tuple: &[u16],
    max_len: u32,
    element_budget: usize,
) -> Result<ExtensionCertificate, WordError> {
    // H must be a subgroup containing the identity.
    if !h_members.contains(&0) {
        return Err(WordError::NotSubgroup);
    }
    for &x in h_members {
        if x as usize >= table.size() {
            return Err(WordError::ElementRange(x, table.size()));
        }
        if !h_members.contains(&table.inv(x)) {
            return Err(WordError::NotSubgroup);
        }
        for &y in h_members {
            if !h_members.contains(&table.mul(x, y)) {
                return Err(WordError::NotSubgroup);
            }
        }
    }
    if a_tuple.len() != b_tuple.len() || a_tuple.is_empty() {
        return Err(WordError::NotAdmissible("tuple length mismatch".into()));
    }
    let in_h = |x: u16| h_members.contains(&x);
    for i in 0..a_tuple.len() {
        for j in (i + 1)..a_tuple.len() {
            if in_h(table.mul(table.inv(a_tuple[i]), a_tuple[j])) {
                return Err(WordError::NotAdmissible(format!(
                    "a_{} H = a_{} H",
                    i + 1,
                    j + 1
                )));
            }
            if in_h(table.mul(table.inv(b_tuple[i]), b_tuple[j])) {
                return Err(WordError::NotAdmissible(format!(
                    "b_{} H = b_{} H",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    // Z letters as words over G * <t> with t = x_1.
    let t = MixedWord::variable(1, 1, 1);
    let t_inv = MixedWord::variable(1, 1, -1);
    let mut letters: Vec<MixedWord> = Vec::new();
    for &h in h_members {
        if h != 0 {
            letters.push(MixedWord::constant(1, h));
        }
    }
    for i in 0..a_tuple.len() {
        let bi_inv = MixedWord::constant(1, table.inv(b_tuple[i]));
        let ai = MixedWord::constant(1, a_tuple[i]);
        letters.push(mul_words(table, &mul_words(table, &bi_inv, &t), &ai));
        let ai_inv = MixedWord::constant(1, table.inv(a_tuple[i]));
        let bi = MixedWord::constant(1, b_tuple[i]);
        letters.push(mul_words(table, &mul_words(table, &ai_inv, &t_inv), &bi));
    }

    // BFS by Z-length; first-discovery depth is the exact |.|_Z.
    let mut depth: HashMap<MixedWord, u64> = HashMap::new();
    let start = MixedWord::empty(1);
    depth.insert(start.clone(), 0);
    let mut frontier = vec![start];
    let mut intersection_ok = true;
    let mut lipschitz_ok = true;
    let mut in_g = 1usize;
    let mut in_h_count = 1usize;
    let mut worst: (u64, u128) = (0, 1);
    for d in 1..=max_len as u64 {
        let mut next = Vec::new();
        for w in &frontier {
            for z in &letters {
                let prod = mul_words(table, w, z);
                if depth.contains_key(&prod) {
                    continue;
                }
                depth.insert(prod.clone(), d);
                if depth.len() > element_budget {
                    return Err(WordError::Budget(format!(
                        "more than {} distinct elements enumerated",
                        element_budget
                    )));
                }
                // syllable length with A = all of G: constants cost 1,
                // t-runs their absolute exponent
                let syll_len: u128 = prod
                    .syllables
                    .iter()
                    .map(|s| match s {
                        Syllable::Const(_) => 1u128,
                        Syllable::Vars(run) => {
                            run.iter().map(|(_, e)| e.unsigned_abs()).sum()
                        }
                    })
                    .sum();
                let is_const = prod
                    .syllables
                    .iter()
                    .all(|s| matches!(s, Syllable::Const(_)));
                if is_const {
                    in_g += 1;
                    let val = match prod.syllables.first() {
                        Some(Syllable::Const(g)) => *g,
                        _ => 0,
                    };
                    if in_h(val) {
                        in_h_count += 1;
                    } else {
                        intersection_ok = false;
                    }
                }
                if d as u128 > 3 * syll_len {
                    lipschitz_ok = false;
                }
                if d as u128 * worst.1 > worst.0 as u128 * syll_len.max(1) {
                    worst = (d, syll_len.max(1));
                }
                next.push(prod);
            }
        }
        frontier = next;
    }
    Ok(ExtensionCertificate {
        enumerated: depth.len(),
        in_g,
        in_h: in_h_count,
        max_z_over_syllable: worst,
        intersection_ok,
        lipschitz_ok,
    })
}

/// Canonical whitespace-token text format: `g:<label>` for constants,
/// `x<i>` / `X<i>` for x_i and its inverse, with `^<e>` exponent suffixes
/// on variables.
pub fn format_word(table: &FiniteGroupTable, w: &MixedWord) -> String {
    let mut parts: Vec<String> = Vec::new();
    for s in &w.syllables {
        match s {
            Syllable::Const(g) => parts.push(format!("g:{}", table.label(*g))),
            Syllable::Vars(run) => {
                for &(v, e) in run {
                    let (head, mag) = if e > 0 {
                        (format!("x{}", v), e)
                    } else {
                        (format!("X{}", v), -e)
                    };
                    if mag == 1 {
                        parts.push(head);
                    } else {
                        parts.push(format!("{}^{}", head, mag));
                    }
                }
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub fn parse_word(
    table: &FiniteGroupTable,
    n_vars: usize,
    text: &str,
) -> Result<MixedWord, WordError> {
    let mut r = Reducer::new(table);
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        if let Some(label) = tok.strip_prefix("g:") {
            let g = table
                .element_by_label(label)
                .ok_or_else(|| WordError::Parse(format!("unknown element label {:?}", label)))?;
            r.push_const(g);
            continue;
        }
        let (body, exp) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i128>()
                    .map_err(|_| WordError::Parse(format!("bad exponent in {:?}", tok)))?,
            ),
            None => (tok, 1),
        };
        let (inverted, idx_str) = if let Some(i) = body.strip_prefix('x') {
            (false, i)
        } else if let Some(i) = body.strip_prefix('X') {
            (true, i)
        } else {
            return Err(WordError::Parse(format!("unrecognized token {:?}", tok)));
        };
        let idx: u16 = idx_str
            .parse()
            .map_err(|_| WordError::Parse(format!("bad variable index in {:?}", tok)))?;
        if idx == 0 || idx as usize > n_vars {
            return Err(WordError::VariableRange(idx, n_vars));
        }
        r.push_var(idx, if inverted { -exp } else { exp });
    }
    Ok(r.finish(n_vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> FiniteGroupTable {
        let g = PermGroup::new(
            3,
            vec!["(1 2)".parse().unwrap(), "(1 2 3)".parse().unwrap()],
        )
        .unwrap();
        FiniteGroupTable::from_perm_group(&g).unwrap()
    }

    fn elt(t: &FiniteGroupTable, label: &str) -> u16 {
        t.element_by_label(label)
            .unwrap_or_else(|| panic!("no element {:?}", label))
    }

    #[test]
    fn table_from_s3_has_sound_laws() {
        let t = s3_table();
        assert_eq!(t.size(), 6);
        assert_eq!(t.label(0), "e");
        let a = elt(&t, "(1,2)");
        let b = elt(&t, "(1,2,3)");
        assert_eq!(t.order_of(a), 2);
        assert_eq!(t.order_of(b), 3);
        // (1 2) * (1 2 3) with the right factor acting first: 1->2->1,
        // 2->3->3, 3->1->2, i.e. (2 3)
        assert_eq!(t.label(t.mul(a, b)), "(2,3)");
    }

    #[test]
    fn normal_form_free_cancellation() {
        let t = s3_table();
        let g = elt(&t, "(1,2)");
        let h = elt(&t, "(1,3)");
        // g x1 x1^{-1} h -> single constant g*h
        let w = MixedWord {
            n_vars: 1,
            syllables: vec![
                Syllable::Const(g),
                Syllable::Vars(vec![(1, 1)]),
                Syllable::Vars(vec![(1, -1)]),
                Syllable::Const(h),
            ],
        };
        let nf = normal_form(&t, &w);
        assert_eq!(nf.syllables(), &[Syllable::Const(t.mul(g, h))]);
        // and with h = g^{-1} the whole word dies
        let w2 = MixedWord {
            n_vars: 1,
            syllables: vec![
                Syllable::Const(g),
                Syllable::Vars(vec![(1, 1)]),
                Syllable::Vars(vec![(1, -1)]),
                Syllable::Const(t.inv(g)),
            ],
        };
        assert!(normal_form(&t, &w2).is_trivial());
    }

    #[test]
    fn normal_form_absorbs_identity_constant() {
        let t = s3_table();
        let w = MixedWord {
            n_vars: 1,
            syllables: vec![Syllable::Const(0), Syllable::Vars(vec![(1, 1)])],
        };
        assert_eq!(
            normal_form(&t, &w).syllables(),
            &[Syllable::Vars(vec![(1, 1)])]
        );
    }

    #[test]
    fn normal_form_inner_constants_collapse() {
        let t = s3_table();
        let s = elt(&t, "(1,2)");
        // (12) x1 (12)(12) x1^{-1} -> (12): inner constants multiply to e,
        // then the x-run cancels.
        let w = MixedWord {
            n_vars: 1,
            syllables: vec![
                Syllable::Const(s),
                Syllable::Vars(vec![(1, 1)]),
                Syllable::Const(t.mul(s, s)),
                Syllable::Vars(vec![(1, -1)]),
            ],
        };
        let nf = normal_form(&t, &w);
        assert_eq!(nf.syllables(), &[Syllable::Const(s)]);
    }

    #[test]
    fn fp_length_examples() {
        let t = s3_table();
        assert_eq!(fp_length(&t, &MixedWord::empty(1), &[1]).unwrap(), 0);
        let x3 = MixedWord::variable(1, 1, 3);
        assert_eq!(fp_length(&t, &x3, &[elt(&t, "(1,2)")]).unwrap(), 3);
        // |(1 3)| = 2 over {(12), (123)}, so (13) x1 has length 3
        let s = vec![elt(&t, "(1,2)"), elt(&t, "(1,2,3)")];
        let w = mul_words(
            &t,
            &MixedWord::constant(1, elt(&t, "(1,3)")),
            &MixedWord::variable(1, 1, 1),
        );
        assert_eq!(fp_length(&t, &w, &s).unwrap(), 3);
    }

    #[test]
    fn evaluate_examples() {
        let t = s3_table();
        let g = elt(&t, "(1,2)");
        let r = elt(&t, "(1,2,3)");
        assert_eq!(evaluate(&t, &MixedWord::variable(1, 1, 1), &[g]).unwrap(), g);
        // [x1, (123)] at x1 = e is trivial
        let w = commutator_word(
            &t,
            &MixedWord::variable(1, 1, 1),
            &MixedWord::constant(1, r),
        );
        assert_eq!(evaluate(&t, &w, &[0]).unwrap(), 0);
        // [x1^2, (123)] at x1 = (12): (12)^2 = e commutes
        let w2 = commutator_word(
            &t,
            &MixedWord::variable(1, 1, 2),
            &MixedWord::constant(1, r),
        );
        assert_eq!(evaluate(&t, &w2, &[g]).unwrap(), 0);
    }

    #[test]
    fn mixed_identity_examples() {
        let c2 = FiniteGroupTable::cyclic(2);
        let xx = MixedWord::variable(1, 1, 2);
        assert_eq!(is_mixed_identity(&c2, &xx, 1000).unwrap(), None);

        let t = s3_table();
        let r = elt(&t, "(1,2,3)");
        let w = commutator_word(
            &t,
            &MixedWord::variable(1, 1, 2),
            &MixedWord::constant(1, r),
        );
        assert_eq!(is_mixed_identity(&t, &w, 1000).unwrap(), None);

        let w2 = commutator_word(
            &t,
            &MixedWord::variable(1, 1, 1),
            &MixedWord::constant(1, r),
        );
        let witness = is_mixed_identity(&t, &w2, 1000).unwrap().unwrap();
        assert_ne!(evaluate(&t, &w2, &witness).unwrap(), 0);
        // threaded scan returns the same witness
        let threaded = is_mixed_identity_threaded(&t, &w2, 1000, 4).unwrap().unwrap();
        assert_eq!(witness, threaded);
    }

    #[test]
    fn mixed_identity_budget() {
        let t = s3_table();
        let w = MixedWord::variable(3, 1, 1);
        assert!(matches!(
            is_mixed_identity(&t, &w, 10),
            Err(WordError::Budget(_))
        ));
    }

    #[test]
    fn finite_class_identity_examples() {
        let t = s3_table();
        let r = elt(&t, "(1,2,3)");
        let class = t.conjugacy_class(r);
        assert_eq!(class.len(), 2);
        let w = mixed_identity_from_finite_class(&t, r, class.len() as u32).unwrap();
        assert_eq!(is_mixed_identity(&t, &w, 1000).unwrap(), None);

        let s = elt(&t, "(1,2)");
        let class_s = t.conjugacy_class(s);
        assert_eq!(class_s.len(), 3);
        let ws = mixed_identity_from_finite_class(&t, s, class_s.len() as u32).unwrap();
        assert_eq!(is_mixed_identity(&t, &ws, 1000).unwrap(), None);

        assert!(matches!(
            mixed_identity_from_finite_class(&t, 0, 1),
            Err(WordError::IdentityElement)
        ));
    }

    #[test]
    fn direct_product_identity_examples() {
        let c2 = FiniteGroupTable::cyclic(2);
        let (prod, w) = direct_product_identity(&c2, 1, &c2, 1).unwrap();
        assert_eq!(prod.size(), 4);
        assert_eq!(is_mixed_identity(&prod, &w, 1000).unwrap(), None);

        let s3 = s3_table();
        let (prod2, w2) = direct_product_identity(&s3, 1, &c2, 1).unwrap();
        assert_eq!(prod2.size(), 12);
        assert_eq!(is_mixed_identity(&prod2, &w2, 1000).unwrap(), None);

        // degenerate a = 1: the word collapses to the trivial word
        let (prod3, w3) = direct_product_identity(&c2, 0, &c2, 1).unwrap();
        assert!(normal_form(&prod3, &w3).is_trivial());
    }

    #[test]
    fn ui_word_examples() {
        let t = s3_table();
        let g = MixedWord::constant(1, elt(&t, "(1,2)"));
        // i = 1: u_1 = w_1
        let u1 = build_ui_word(&t, &[g.clone()]).unwrap();
        assert_eq!(u1.syllables(), g.syllables());
        // i = 2 with w1 = g, w2 = x1: [g, x^{-1} x1 x] has 8 letters
        let x1 = MixedWord::variable(1, 1, 1);
        let u2 = build_ui_word(&t, &[g.clone(), x1.clone()]).unwrap();
        assert!(!u2.is_trivial());
        assert_eq!(u2.letter_len(), 8);
        // i = 2 with w1 = w2 = x1 stays nontrivial in F_2
        let u3 = build_ui_word(&t, &[x1.clone(), x1]).unwrap();
        assert!(!u3.is_trivial());
        // trivial input rejected
        assert!(matches!(
            build_ui_word(&t, &[MixedWord::empty(1)]),
            Err(WordError::TrivialWord)
        ));
    }

    #[test]
    fn embed_one_variable_examples() {
        let t = s3_table();
        let g = elt(&t, "(1,2)");
        // x1 -> x g x
        let out = embed_one_variable(&t, &MixedWord::variable(1, 1, 1), g, 1 << 20).unwrap();
        assert_eq!(
            out.syllables(),
            &[
                Syllable::Vars(vec![(1, 1)]),
                Syllable::Const(g),
                Syllable::Vars(vec![(1, 1)]),
            ]
        );
        // x1 x2 -> x g x . x^2 g x^2 = x g x^3 g x^2
        let w = mul_words(
            &t,
            &MixedWord::variable(2, 1, 1),
            &MixedWord::variable(2, 2, 1),
        );
        let out2 = embed_one_variable(&t, &w, g, 1 << 20).unwrap();
        assert_eq!(
            out2.syllables(),
            &[
                Syllable::Vars(vec![(1, 1)]),
                Syllable::Const(g),
                Syllable::Vars(vec![(1, 3)]),
                Syllable::Const(g),
                Syllable::Vars(vec![(1, 2)]),
            ]
        );
    }

    #[test]
    fn extension_certificate_s3_example() {
        let t = s3_table();
        let h = vec![0, elt(&t, "(1,2)")];
        let a = vec![0u16];
        let b = vec![elt(&t, "(1,3)")];
        let cert = check_free_product_extension(&t, &h, &a, &b, 6, 1 << 22).unwrap();
        assert!(cert.passed(), "certificate failed: {:?}", cert);
        assert!(cert.enumerated > 100);
    }

    #[test]
    fn extension_rejects_inadmissible() {
        let t = s3_table();
        let h = vec![0, elt(&t, "(1,2)")];
        // a1 H = a2 H forces rejection
        let a = vec![0u16, elt(&t, "(1,2)")];
        let b = vec![elt(&t, "(1,3)"), elt(&t, "(1,2,3)")];
        assert!(matches!(
            check_free_product_extension(&t, &h, &a, &b, 4, 1 << 20),
            Err(WordError::NotAdmissible(_))
        ));
    }

    #[test]
    fn extension_degenerate_h_equals_g() {
        let t = s3_table();
        let h: Vec<u16> = (0..6).collect();
        let cert = check_free_product_extension(&t, &h, &[0], &[0], 4, 1 << 20).unwrap();
        assert!(cert.intersection_ok);
    }

    #[test]
    fn word_text_round_trip() {
        let t = s3_table();
        let w = parse_word(&t, 2, "g:(1,2) x1^3 X2 g:(1,2,3)").unwrap();
        let s = format_word(&t, &w);
        assert_eq!(s, "g:(1,2) x1^3 X2 g:(1,2,3)");
        let back = parse_word(&t, 2, &s).unwrap();
        assert_eq!(back, w);
        assert_eq!(format_word(&t, &MixedWord::empty(1)), "1");
        assert!(parse_word(&t, 1, "x2").is_err());
        assert!(parse_word(&t, 1, "g:nope").is_err());
    }
}

