//! Inductive construction of a highly transitive action prefix for a free
//! group F_k, with machine-checkable certificates.
//!
//! The builder maintains a chain of subgroups H_0 <= H_1 <= ... given by
//! folded core graphs. At stage i+1 it conjugates the next enumerated
//! element g off the current subgroup (extending the faithfulness set B),
//! then, when the scheduled coset tuple pair is admissible, searches for t
//! such that K = <H, b_1^{-1} t a_1, ..., b_k^{-1} t a_k> stays disjoint
//! from B and keeps infinite index. Every accepted stage records the data
//! needed to re-verify all certificates from scratch.
//!
//! Smallness of the extended subgroup is not decidable here; the implemented
//! certificate set (B-disjointness plus infinite index) carries faithfulness
//! and an infinite coset space, which is what the limit action needs. A
//! budget exhaustion in the t-search is surfaced as an error, never skipped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::stallings::{CoreGraph, CosetActionPrefix, ShortlexWords, StallingsError, SubgroupIndex, Word};

#[derive(Debug, Error)]
pub enum HtError {
    #[error("tuple lengths differ: {0} vs {1}")]
    TupleMismatch(usize, usize),
    #[error("element must be nontrivial")]
    TrivialElement,
    #[error("subgroup must have infinite index")]
    FiniteIndex,
    #[error("conjugator search exhausted {budget} candidates at stage {stage}")]
    ConjugatorBudget { stage: u32, budget: u64 },
    #[error("t-search exhausted {budget} candidates at stage {stage}")]
    TSearchBudget { stage: u32, budget: u64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] StallingsError),
}

/// A build error together with whatever part of the report was completed.
#[derive(Debug)]
pub struct BuildFailure {
    pub error: HtError,
    pub partial: Box<BuildReport>,
}

impl std::fmt::Display for BuildFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} (after {} completed stages)",
            self.error,
            self.partial.stages.len()
        )
    }
}

impl std::error::Error for BuildFailure {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub rank: usize,
    pub stages: u32,
    pub conjugator_budget: u64,
    pub t_budget: u64,
    pub prefix_cosets: usize,
    pub seed: u64,
    pub shuffle_t_search: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            rank: 2,
            stages: 8,
            conjugator_budget: 100_000,
            t_budget: 100_000,
            prefix_cosets: 40,
            seed: 0,
            shuffle_t_search: false,
        }
    }
}

impl BuildConfig {
    /// Parses `key = value` lines (# comments allowed) or a JSON object.
    pub fn parse(text: &str) -> Result<BuildConfig, HtError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return serde_json::from_str(text)
                .map_err(|e| HtError::Config(format!("bad JSON config: {}", e)));
        }
        let mut cfg = BuildConfig::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HtError::Config(format!("expected key = value, got {:?}", line)))?;
            let key = key.trim();
            let value = value.trim();
            let parse_u64 =
                |v: &str| v.parse::<u64>().map_err(|_| HtError::Config(format!("bad number {:?}", v)));
            match key {
                "rank" => cfg.rank = parse_u64(value)? as usize,
                "stages" => cfg.stages = parse_u64(value)? as u32,
                "conjugator_budget" => cfg.conjugator_budget = parse_u64(value)?,
                "t_budget" => cfg.t_budget = parse_u64(value)?,
                "prefix_cosets" => cfg.prefix_cosets = parse_u64(value)? as usize,
                "seed" => cfg.seed = parse_u64(value)?,
                "shuffle_t_search" => {
                    cfg.shuffle_t_search = value == "true" || value == "1";
                }
                other => return Err(HtError::Config(format!("unknown key {:?}", other))),
            }
        }
        if cfg.rank == 0 {
            return Err(HtError::Config("rank must be at least 1".into()));
        }
        Ok(cfg)
    }
}

/// Certificates recomputed when a stage is accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCertificates {
    pub b_disjoint: bool,
    pub infinite_index: bool,
    pub chain_inclusion: bool,
    pub witnesses_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub index: u32,
    /// the element enumerated at this stage
    pub g: Word,
    /// conjugator with g^u outside the previous subgroup
    pub u: Word,
    /// g^u, the word appended to B
    pub b_word: Word,
    pub a_tuple: Vec<Word>,
    pub b_tuple: Vec<Word>,
    pub admissible: bool,
    /// accepted t, absent when the stage passed through unchanged
    pub t: Option<Word>,
    /// generator words appended to the subgroup at this stage
    pub added_generators: Vec<Word>,
    pub candidates_tried: u64,
    pub certificates: StageCertificates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub stage: u32,
    pub holds_in_final: bool,
    /// per tuple slot: coset indexes of t.a_j and b_j in the final prefix,
    /// when both land inside it
    pub prefix_cosets: Vec<Option<(u32, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub config: BuildConfig,
    pub stages: Vec<StageRecord>,
    /// all subgroup generator words, in the order they were adjoined
    pub final_generators: Vec<Word>,
    pub final_subgroup_rank: usize,
    pub final_index_infinite: bool,
    pub action_prefix: CosetActionPrefix,
    pub witness_checks: Vec<WitnessCheck>,
}

impl BuildReport {
    /// Canonical JSON: object keys sorted, two-space indentation, trailing
    /// newline. Byte-identical across reruns of the same configuration.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value prints");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<BuildReport, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// True iff all entries of the tuple lie in pairwise distinct left cosets
/// of H, on both sides.
pub fn is_admissible(
    h: &CoreGraph,
    a_tuple: &[Word],
    b_tuple: &[Word],
) -> Result<bool, HtError> {
    if a_tuple.len() != b_tuple.len() {
        return Err(HtError::TupleMismatch(a_tuple.len(), b_tuple.len()));
    }
    for tuple in [a_tuple, b_tuple] {
        for i in 0..tuple.len() {
            for j in (i + 1)..tuple.len() {
                if h.same_coset(&tuple[i], &tuple[j]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The shortlex-least u with u^{-1} g u outside H. Termination for infinite
/// index H is a fact about free groups (a finitely generated infinite-index
/// subgroup contains no nontrivial normal subgroup), so the budget is only a
/// guard against misuse.
pub fn find_conjugator_outside(
    h: &CoreGraph,
    g: &Word,
    budget: u64,
) -> Result<Word, HtError> {
    if g.reduced().is_empty() {
        return Err(HtError::TrivialElement);
    }
    if h.index() != SubgroupIndex::Infinite {
        return Err(HtError::FiniteIndex);
    }
    for (n, u) in ShortlexWords::new(h.rank_of_ambient()).enumerate() {
        if n as u64 >= budget {
            break;
        }
        if !h.contains(&g.conjugate_by(&u)) {
            return Ok(u);
        }
    }
    Err(HtError::ConjugatorBudget { stage: 0, budget })
}

/// Candidate t values in shortlex order; with shuffling on, each length
/// class is permuted by the seeded generator (the seed is recorded in the
/// report, so results stay reproducible).
struct TCandidates {
    rank: usize,
    length: usize,
    buffer: Vec<Word>,
    pos: usize,
    rng: Option<ChaCha20Rng>,
}

impl TCandidates {
    fn new(rank: usize, seed: u64, stage: u32, shuffle: bool) -> TCandidates {
        let rng = shuffle.then(|| {
            let mut key = [0u8; 32];
            key[..8].copy_from_slice(&seed.to_le_bytes());
            key[8..12].copy_from_slice(&stage.to_le_bytes());
            ChaCha20Rng::from_seed(key)
        });
        TCandidates {
            rank,
            length: 0,
            buffer: vec![Word::empty()],
            pos: 0,
            rng,
        }
    }
}

impl Iterator for TCandidates {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.pos == self.buffer.len() {
            self.length += 1;
            self.buffer = ShortlexWords::new(self.rank)
                .skip_while(|w| w.len() < self.length)
                .take_while(|w| w.len() == self.length)
                .collect();
            if let Some(rng) = self.rng.as_mut() {
                self.buffer.shuffle(rng);
            }
            self.pos = 0;
        }
        let w = self.buffer[self.pos].clone();
        self.pos += 1;
        Some(w)
    }
}

/// Diagonal enumeration of all pairs of same-length tuples of words:
/// level s covers tuple lengths up to s with entry ranks below s, emitting
/// only pairs not already seen at smaller levels, ordered by tuple length
/// and then lexicographically by entry ranks.
pub struct TuplePairs {
    rank: usize,
    words: Vec<Word>,
    level: usize,
    queue: std::collections::VecDeque<(Vec<Word>, Vec<Word>)>,
}

impl TuplePairs {
    pub fn new(rank: usize) -> TuplePairs {
        TuplePairs {
            rank,
            words: Vec::new(),
            level: 0,
            queue: std::collections::VecDeque::new(),
        }
    }

    fn ensure_words(&mut self, count: usize) {
        if self.words.len() < count {
            self.words = ShortlexWords::new(self.rank).take(count).collect();
        }
    }

    fn fill_level(&mut self) {
        self.level += 1;
        let s = self.level;
        self.ensure_words(s);
        for len in 1..=s {
            // odometer over 2*len entry ranks, each in 0..s, last fastest
            let slots = 2 * len;
            let mut ranks = vec![0usize; slots];
            'odometer: loop {
                // skip pairs already emitted at a smaller level
                let fresh = len == s || ranks.iter().any(|&r| r == s - 1);
                if fresh {
                    let a: Vec<Word> =
                        ranks[..len].iter().map(|&r| self.words[r].clone()).collect();
                    let b: Vec<Word> =
                        ranks[len..].iter().map(|&r| self.words[r].clone()).collect();
                    self.queue.push_back((a, b));
                }
                let mut i = slots;
                loop {
                    if i == 0 {
                        break 'odometer;
                    }
                    i -= 1;
                    ranks[i] += 1;
                    if ranks[i] < s {
                        break;
                    }
                    ranks[i] = 0;
                }
            }
        }
    }
}

impl Iterator for TuplePairs {
    type Item = (Vec<Word>, Vec<Word>);

    fn next(&mut self) -> Option<Self::Item> {
        while self.queue.is_empty() {
            self.fill_level();
        }
        self.queue.pop_front()
    }
}

struct Builder {
    config: BuildConfig,
    h: CoreGraph,
    gens_acc: Vec<Word>,
    b_set: Vec<Word>,
    stages: Vec<StageRecord>,
    witnesses: Vec<(u32, Vec<Word>, Vec<Word>, Word)>,
}

impl Builder {
    /// Re-checks the stage invariants on the current subgroup: faithfulness
    /// words stay outside, the index stays infinite, every generator word
    /// adjoined so far still reads a loop (which pins the chain inclusion),
    /// and all recorded witnesses still merge their cosets.
    fn certificates(&self, k: &CoreGraph) -> StageCertificates {
        StageCertificates {
            b_disjoint: self.b_set.iter().all(|w| !k.contains(w)),
            infinite_index: k.index() == SubgroupIndex::Infinite,
            chain_inclusion: self.gens_acc.iter().all(|w| k.contains(w)),
            witnesses_hold: self.witnesses.iter().all(|(_, a, b, t)| {
                a.iter()
                    .zip(b.iter())
                    .all(|(aj, bj)| k.same_coset(&t.concat(aj), bj))
            }),
        }
    }

    fn partial_report(self) -> BuildReport {
        let action_prefix = self.h.coset_action_prefix(self.config.prefix_cosets);
        let witness_checks = witness_checks(&self.h, &action_prefix, &self.witnesses);
        BuildReport {
            final_subgroup_rank: self.h.subgroup_rank(),
            final_index_infinite: self.h.index() == SubgroupIndex::Infinite,
            config: self.config,
            stages: self.stages,
            final_generators: self.gens_acc,
            action_prefix,
            witness_checks,
        }
    }
}

fn witness_checks(
    h: &CoreGraph,
    prefix: &CosetActionPrefix,
    witnesses: &[(u32, Vec<Word>, Vec<Word>, Word)],
) -> Vec<WitnessCheck> {
    let locate = |w: &Word| -> Option<u32> {
        prefix
            .representatives
            .iter()
            .position(|rep| h.same_coset(rep, w))
            .map(|i| i as u32)
    };
    witnesses
        .iter()
        .map(|(stage, a, b, t)| {
            let holds = a
                .iter()
                .zip(b.iter())
                .all(|(aj, bj)| h.same_coset(&t.concat(aj), bj));
            let prefix_cosets = a
                .iter()
                .zip(b.iter())
                .map(|(aj, bj)| {
                    let ta = locate(&t.concat(aj));
                    let bc = locate(bj);
                    match (ta, bc) {
                        (Some(x), Some(y)) => Some((x, y)),
                        _ => None,
                    }
                })
                .collect();
            WitnessCheck {
                stage: *stage,
                holds_in_final: holds,
                prefix_cosets,
            }
        })
        .collect()
}

/// Searches for t making `K = <H, b_1^{-1} t a_1, ...>` pass the B-disjoint
/// and infinite-index certificates. Returns the accepted t, the new graph,
/// the generator words adjoined, and the number of candidates tried.
fn search_t(
    builder: &Builder,
    a_tuple: &[Word],
    b_tuple: &[Word],
    stage: u32,
) -> Result<(Word, CoreGraph, Vec<Word>, u64), HtError> {
    let cfg = &builder.config;
    let candidates = TCandidates::new(cfg.rank, cfg.seed, stage, cfg.shuffle_t_search);
    let mut tried = 0u64;
    for t in candidates {
        if tried >= cfg.t_budget {
            break;
        }
        tried += 1;
        let mut added: Vec<Word> = Vec::new();
        for (aj, bj) in a_tuple.iter().zip(b_tuple.iter()) {
            let gen = bj.inverse().concat(&t).concat(aj);
            if !gen.is_empty() {
                added.push(gen);
            }
        }
        let mut all = builder.gens_acc.clone();
        all.extend(added.iter().cloned());
        let k = CoreGraph::from_words(&all, cfg.rank)?;
        let b_ok = builder.b_set.iter().all(|w| !k.contains(w));
        let idx_ok = k.index() == SubgroupIndex::Infinite;
        if b_ok && idx_ok {
            return Ok((t, k, added, tried));
        }
    }
    Err(HtError::TSearchBudget {
        stage,
        budget: cfg.t_budget,
    })
}

/// Runs the full induction. Elements of F_k are enumerated in shortlex
/// order; tuple pairs by the diagonal order of [`TuplePairs`]. Identical
/// configurations produce byte-identical reports.
pub fn run(config: BuildConfig) -> Result<BuildReport, BuildFailure> {
    let mut builder = Builder {
        h: CoreGraph::trivial(config.rank),
        config: config.clone(),
        gens_acc: Vec::new(),
        b_set: Vec::new(),
        stages: Vec::new(),
        witnesses: Vec::new(),
    };
    let mut elements = ShortlexWords::new(config.rank).skip(1); // skip the empty word
    let mut pairs = TuplePairs::new(config.rank);

    for stage in 1..=config.stages {
        let g = elements.next().expect("shortlex enumeration is infinite");
        let u = match find_conjugator_outside(&builder.h, &g, config.conjugator_budget) {
            Ok(u) => u,
            Err(HtError::ConjugatorBudget { budget, .. }) => {
                return Err(BuildFailure {
                    error: HtError::ConjugatorBudget { stage, budget },
                    partial: Box::new(builder.partial_report()),
                });
            }
            Err(e) => {
                return Err(BuildFailure {
                    error: e,
                    partial: Box::new(builder.partial_report()),
                });
            }
        };
        let b_word = g.conjugate_by(&u);
        builder.b_set.push(b_word.clone());

        let (a_tuple, b_tuple) = pairs.next().expect("tuple enumeration is infinite");
        let admissible = match is_admissible(&builder.h, &a_tuple, &b_tuple) {
            Ok(adm) => adm,
            Err(e) => {
                return Err(BuildFailure {
                    error: e,
                    partial: Box::new(builder.partial_report()),
                });
            }
        };

        if !admissible {
            let certificates = builder.certificates(&builder.h);
            builder.stages.push(StageRecord {
                index: stage,
                g,
                u,
                b_word,
                a_tuple,
                b_tuple,
                admissible: false,
                t: None,
                added_generators: Vec::new(),
                candidates_tried: 0,
                certificates,
            });
            continue;
        }

        match search_t(&builder, &a_tuple, &b_tuple, stage) {
            Ok((t, k, added, tried)) => {
                builder.gens_acc.extend(added.iter().cloned());
                builder.h = k;
                builder
                    .witnesses
                    .push((stage, a_tuple.clone(), b_tuple.clone(), t.clone()));
                let certificates = builder.certificates(&builder.h);
                builder.stages.push(StageRecord {
                    index: stage,
                    g,
                    u,
                    b_word,
                    a_tuple,
                    b_tuple,
                    admissible: true,
                    t: Some(t),
                    added_generators: added,
                    candidates_tried: tried,
                    certificates,
                });
            }
            Err(e) => {
                return Err(BuildFailure {
                    error: e,
                    partial: Box::new(builder.partial_report()),
                });
            }
        }
    }
    Ok(builder.partial_report())
}

/// Recomputes every certificate in the report from the stored raw words
/// using freshly folded graphs: schedule consistency, B membership at every
/// stage, chain inclusion, witness cosets at each later stage, index
/// classification, and the final action prefix. Returns the list of
/// discrepancies (empty = report verifies).
pub fn verify_report(report: &BuildReport) -> Vec<String> {
    let mut problems = Vec::new();
    let cfg = &report.config;
    if cfg.rank == 0 {
        return vec!["rank must be positive".into()];
    }

    // schedules derived from the configuration
    let mut elements = ShortlexWords::new(cfg.rank).skip(1);
    let mut pairs = TuplePairs::new(cfg.rank);

    let mut gens_so_far: Vec<Word> = Vec::new();
    let mut b_set: Vec<Word> = Vec::new();
    let mut graphs: Vec<CoreGraph> = Vec::new();
    let mut prev = CoreGraph::trivial(cfg.rank);

    for rec in &report.stages {
        let expect_g = elements.next().unwrap();
        if expect_g != rec.g {
            problems.push(format!(
                "stage {}: element {} does not match the schedule ({})",
                rec.index, rec.g, expect_g
            ));
        }
        let (ea, eb) = pairs.next().unwrap();
        if ea != rec.a_tuple || eb != rec.b_tuple {
            problems.push(format!("stage {}: tuple pair departs from the schedule", rec.index));
        }
        // conjugate lands outside the previous subgroup
        let conj = rec.g.conjugate_by(&rec.u);
        if conj != rec.b_word {
            problems.push(format!("stage {}: recorded b-word is not g^u", rec.index));
        }
        if prev.contains(&rec.b_word) {
            problems.push(format!(
                "stage {}: g^u lies in the previous subgroup",
                rec.index
            ));
        }
        b_set.push(rec.b_word.clone());

        match is_admissible(&prev, &rec.a_tuple, &rec.b_tuple) {
            Ok(adm) => {
                if adm != rec.admissible {
                    problems.push(format!(
                        "stage {}: admissibility flag is wrong",
                        rec.index
                    ));
                }
            }
            Err(e) => problems.push(format!("stage {}: {}", rec.index, e)),
        }

        let current = if rec.admissible {
            let Some(t) = rec.t.clone() else {
                problems.push(format!("stage {}: admissible stage lacks t", rec.index));
                graphs.push(prev.clone());
                continue;
            };
            // added generators must be exactly the reduced b_j^{-1} t a_j
            let mut expect_added = Vec::new();
            for (aj, bj) in rec.a_tuple.iter().zip(rec.b_tuple.iter()) {
                let gen = bj.inverse().concat(&t).concat(aj);
                if !gen.is_empty() {
                    expect_added.push(gen);
                }
            }
            if expect_added != rec.added_generators {
                problems.push(format!(
                    "stage {}: added generators do not match b^-1 t a",
                    rec.index
                ));
            }
            gens_so_far.extend(rec.added_generators.iter().cloned());
            match CoreGraph::from_words(&gens_so_far, cfg.rank) {
                Ok(k) => k,
                Err(e) => {
                    problems.push(format!("stage {}: {}", rec.index, e));
                    prev.clone()
                }
            }
        } else {
            if rec.t.is_some() || !rec.added_generators.is_empty() {
                problems.push(format!(
                    "stage {}: inadmissible stage must pass through unchanged",
                    rec.index
                ));
            }
            prev.clone()
        };

        // chain inclusion: every earlier generator still reads a loop
        for w in &gens_so_far {
            if !current.contains(w) {
                problems.push(format!(
                    "stage {}: chain inclusion fails for generator {}",
                    rec.index, w
                ));
            }
        }
        // faithfulness set stays outside
        for w in &b_set {
            if current.contains(w) {
                problems.push(format!(
                    "stage {}: B word {} fell into the subgroup",
                    rec.index, w
                ));
            }
        }
        if current.index() != SubgroupIndex::Infinite {
            problems.push(format!("stage {}: index is finite", rec.index));
        }
        graphs.push(current.clone());
        prev = current;
    }

    // witness cosets hold at their stage and at every later stage
    for rec in &report.stages {
        if let Some(t) = &rec.t {
            for later in (rec.index as usize - 1)..graphs.len() {
                let h = &graphs[later];
                for (aj, bj) in rec.a_tuple.iter().zip(rec.b_tuple.iter()) {
                    if !h.same_coset(&t.concat(aj), bj) {
                        problems.push(format!(
                            "witness of stage {} fails at stage {}",
                            rec.index,
                            later + 1
                        ));
                    }
                }
            }
        }
    }

    if gens_so_far != report.final_generators {
        problems.push("final generator list does not match the stages".into());
    }
    let final_graph = match CoreGraph::from_words(&report.final_generators, cfg.rank) {
        Ok(g) => g,
        Err(e) => {
            problems.push(format!("final graph: {}", e));
            return problems;
        }
    };
    if final_graph.subgroup_rank() != report.final_subgroup_rank {
        problems.push("final subgroup rank mismatch".into());
    }
    if (final_graph.index() == SubgroupIndex::Infinite) != report.final_index_infinite {
        problems.push("final index classification mismatch".into());
    }
    let prefix = final_graph.coset_action_prefix(cfg.prefix_cosets);
    if prefix != report.action_prefix {
        problems.push("action prefix does not reproduce".into());
    }
    let witnesses: Vec<(u32, Vec<Word>, Vec<Word>, Word)> = report
        .stages
        .iter()
        .filter_map(|r| {
            r.t.clone()
                .map(|t| (r.index, r.a_tuple.clone(), r.b_tuple.clone(), t))
        })
        .collect();
    let expect_checks = witness_checks(&final_graph, &prefix, &witnesses);
    if expect_checks != report.witness_checks {
        problems.push("witness check table does not reproduce".into());
    }
    for c in &report.witness_checks {
        if !c.holds_in_final {
            problems.push(format!("witness of stage {} fails in the final subgroup", c.stage));
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let h = CoreGraph::from_words(&[w("a")], 2).unwrap();
        // single cosets are vacuously admissible
        assert!(is_admissible(&h, &[Word::empty()], &[Word::empty()]).unwrap());
        // a lies in H = <a>, so (1, a) shares a coset
        assert!(!is_admissible(&h, &[Word::empty(), w("a")], &[w("b"), w("ab")]).unwrap());
        assert!(is_admissible(&h, &[Word::empty(), w("b")], &[w("b"), Word::empty()]).unwrap());
        assert!(matches!(
            is_admissible(&h, &[Word::empty()], &[]),
            Err(HtError::TupleMismatch(1, 0))
        ));
    }

    #[test]
    fn conjugator_examples() {
        let trivial = CoreGraph::trivial(2);
        assert_eq!(
            find_conjugator_outside(&trivial, &w("ab"), 100).unwrap(),
            Word::empty()
        );
        // H = <a>, g = a: candidates 1 (a in H), a (a^a = a in H),
        // A (same), then b works: b^{-1} a b not in <a>.
        let h = CoreGraph::from_words(&[w("a")], 2).unwrap();
        assert_eq!(find_conjugator_outside(&h, &w("a"), 100).unwrap(), w("b"));
        // g = b needs no conjugation at all
        let h2 = CoreGraph::from_words(&[w("aa"), w("b")], 2).unwrap();
        // b in H2, so the empty conjugator fails; the search continues
        let u = find_conjugator_outside(&h2, &w("b"), 100).unwrap();
        assert!(!h2.contains(&w("b").conjugate_by(&u)));
        assert_eq!(u, w("a"));
        assert!(matches!(
            find_conjugator_outside(&trivial, &Word::empty(), 10),
            Err(HtError::TrivialElement)
        ));
    }

    #[test]
    fn tuple_pairs_cover_and_start_small() {
        let mut pairs = TuplePairs::new(2);
        let first = pairs.next().unwrap();
        assert_eq!(first, (vec![Word::empty()], vec![Word::empty()]));
        // the first level-2 pairs follow in rank order
        let second = pairs.next().unwrap();
        assert_eq!(second, (vec![Word::empty()], vec![w("a")]));
        // a longer prefix contains a length-2 tuple pair
        let found = TuplePairs::new(2)
            .take(40)
            .any(|(a, _)| a.len() == 2);
        assert!(found);
        // no duplicates in a long prefix
        let prefix: Vec<_> = TuplePairs::new(2).take(500).collect();
        let mut dedup = prefix.clone();
        dedup.sort_by_key(|p| format!("{:?}", p));
        dedup.dedup();
        assert_eq!(dedup.len(), prefix.len());
    }

    #[test]
    fn run_zero_stages_is_regular_prefix() {
        let cfg = BuildConfig {
            stages: 0,
            prefix_cosets: 5,
            ..BuildConfig::default()
        };
        let report = run(cfg).unwrap();
        assert!(report.final_generators.is_empty());
        assert_eq!(report.action_prefix.coset_count(), 5);
        assert!(report.final_index_infinite);
        assert!(verify_report(&report).is_empty());
    }

    #[test]
    fn run_six_stages_verifies_and_is_deterministic() {
        let cfg = BuildConfig {
            stages: 6,
            seed: 7,
            ..BuildConfig::default()
        };
        let r1 = run(cfg.clone()).unwrap();
        assert_eq!(r1.stages.len(), 6);
        let problems = verify_report(&r1);
        assert!(problems.is_empty(), "verification failed: {:?}", problems);
        let r2 = run(cfg).unwrap();
        assert_eq!(r1.to_json_string(), r2.to_json_string());
    }

    #[test]
    fn tampered_reports_fail_verification() {
        let cfg = BuildConfig {
            stages: 6,
            ..BuildConfig::default()
        };
        let report = run(cfg).unwrap();

        // deleting a B word from a stage record
        let mut tampered = report.clone();
        tampered.stages[2].b_word = w("abab");
        assert!(!verify_report(&tampered).is_empty());

        // replacing a witness t by the empty word
        let mut tampered2 = report.clone();
        if let Some(rec) = tampered2.stages.iter_mut().find(|r| r.t.is_some()) {
            rec.t = Some(w("abAB"));
        }
        assert!(!verify_report(&tampered2).is_empty());

        // dropping a final generator
        let mut tampered3 = report.clone();
        if !tampered3.final_generators.is_empty() {
            tampered3.final_generators.pop();
            assert!(!verify_report(&tampered3).is_empty());
        }
    }

    #[test]
    fn shuffled_search_stays_deterministic_per_seed() {
        let cfg = BuildConfig {
            stages: 5,
            seed: 99,
            shuffle_t_search: true,
            ..BuildConfig::default()
        };
        let r1 = run(cfg.clone()).unwrap();
        let r2 = run(cfg).unwrap();
        assert_eq!(r1.to_json_string(), r2.to_json_string());
        assert!(verify_report(&r1).is_empty());
    }

    #[test]
    fn config_parsing() {
        let cfg = BuildConfig::parse("rank = 2\nstages = 6\nseed = 7\n# comment\n").unwrap();
        assert_eq!(cfg.rank, 2);
        assert_eq!(cfg.stages, 6);
        assert_eq!(cfg.seed, 7);
        let js = serde_json::to_string(&BuildConfig::default()).unwrap();
        let cfg2 = BuildConfig::parse(&js).unwrap();
        assert_eq!(cfg2, BuildConfig::default());
        assert!(BuildConfig::parse("bogus = 1").is_err());
    }
}
