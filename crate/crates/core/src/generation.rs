//! Applying strategies to lexicon words.
//!
//! A word unifies with one side of a strategy when its tag matches, its
//! length fits the side's template, and it can be split into the side's
//! difference pattern such that every literal of the pattern falls on a `#`
//! slot and every literal slot of the template is honored. The template is
//! aligned at the difference edge. Creation keeps the material bound to the
//! variables and swaps in the other side's literals and tag.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::comparison::{CompareConfig, Direction, Segment, Slot};
use crate::induction::{accumulate, build_paradigms, extract_strategies, Side, Strategy, StrategyKey};
use crate::lexio::{Lexicon, TaggedWord};
use crate::paradigm::ParadigmIndex;

/// Material a word supplies for each variable of the matched side, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchBinding {
    pub side: Side,
    pub variables: Vec<Vec<char>>,
}

impl MatchBinding {
    pub fn variable_len(&self) -> usize {
        self.variables.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationOptions {
    /// Suppress creations whose category is already filled in the source
    /// word's paradigm.
    pub blocking: bool,
    pub cycles: usize,
    /// Later cycles reuse the first cycle's strategies instead of relearning.
    pub reapply_only: bool,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions {
            blocking: false,
            cycles: 1,
            reapply_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockedWord {
    pub word: TaggedWord,
    pub source: TaggedWord,
    /// Existing entry of the source's paradigm that carries the candidate's tag.
    pub blocker: TaggedWord,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerationReport {
    pub new_words: Vec<TaggedWord>,
    pub blocked: Vec<BlockedWord>,
    /// Creations that were already lexicon entries.
    pub regenerated_count: usize,
    /// Creations beyond the lexicon credited to each strategy, including
    /// words another strategy had already produced.
    pub per_strategy_counts: BTreeMap<usize, usize>,
    /// Lexicon id of the word each new word was created from.
    pub(crate) sources: Vec<usize>,
}

/// Tries every split of `word` into the difference pattern of `side`.
/// Bindings come out ordered by variable lengths, shortest first.
pub fn bindings(word: &TaggedWord, s: &Strategy, side: Side) -> Vec<MatchBinding> {
    if &word.tag != s.tag(side) {
        return Vec::new();
    }
    bindings_chars(&word.graphemes(), s, side)
}

pub(crate) fn bindings_chars(word: &[char], s: &Strategy, side: Side) -> Vec<MatchBinding> {
    let sim = s.sim(side);
    let (min, max) = s.length_range(side);
    let len = word.len();
    if len < min || len > max {
        return Vec::new();
    }
    let offset = match s.direction() {
        Direction::Forward => max - len,
        Direction::Backward => 0,
    };
    let slots = &sim.slots()[offset..offset + len];
    let literals_ok = word.iter().zip(slots).all(|(c, slot)| match slot {
        Slot::Lit(l) => l == c,
        _ => true,
    });
    if !literals_ok {
        return Vec::new();
    }

    let segments = s.dif(side).segments();
    // Shortest material the segments from index k onward can cover.
    let mut tail_min = vec![0; segments.len() + 1];
    for k in (0..segments.len()).rev() {
        tail_min[k] = tail_min[k + 1]
            + match &segments[k] {
                Segment::Var => 1,
                Segment::Lit(run) => run.len(),
            };
    }

    let mut out = Vec::new();
    let mut spans = Vec::new();
    let search = Search {
        word,
        slots,
        segments: &segments,
        tail_min: &tail_min,
    };
    search.run(0, 0, &mut spans, &mut |spans| {
        out.push(MatchBinding {
            side,
            variables: spans.iter().map(|&(a, b)| word[a..b].to_vec()).collect(),
        })
    });
    out
}

/// Receives the variable spans of each complete split.
type Emit<'e> = dyn FnMut(&[(usize, usize)]) + 'e;

struct Search<'a> {
    word: &'a [char],
    slots: &'a [Slot],
    segments: &'a [Segment],
    tail_min: &'a [usize],
}

impl Search<'_> {
    fn run(
        &self,
        k: usize,
        pos: usize,
        spans: &mut Vec<(usize, usize)>,
        emit: &mut Emit,
    ) {
        let len = self.word.len();
        if pos + self.tail_min[k] > len {
            return;
        }
        let Some(segment) = self.segments.get(k) else {
            if pos == len {
                emit(spans);
            }
            return;
        };
        match segment {
            Segment::Lit(run) => {
                let end = pos + run.len();
                let fits = self.word[pos..end] == run[..]
                    && self.slots[pos..end].iter().all(|s| *s == Slot::Required);
                if fits {
                    self.run(k + 1, end, spans, emit);
                }
            }
            Segment::Var => {
                let longest = len - pos - self.tail_min[k + 1];
                for width in 1..=longest {
                    spans.push((pos, pos + width));
                    self.run(k + 1, pos + width, spans, emit);
                    spans.pop();
                }
            }
        }
    }
}

/// First binding of `word` to `side`, if any.
pub fn unify(word: &TaggedWord, s: &Strategy, side: Side) -> Option<MatchBinding> {
    bindings(word, s, side).into_iter().next()
}

/// Builds the other side's word from a binding.
pub fn create(s: &Strategy, binding: &MatchBinding) -> TaggedWord {
    let target = binding.side.other();
    let mut vars = binding.variables.iter();
    let mut form = String::new();
    for segment in s.dif(target).segments() {
        match segment {
            Segment::Var => form.extend(vars.next().expect("sides share their variables")),
            Segment::Lit(run) => form.extend(run),
        }
    }
    TaggedWord {
        form,
        tag: s.tag(target).clone(),
    }
}

/// Lexicon entry, other than `source`, sharing the source's paradigm and
/// carrying the candidate's tag.
pub fn blocking_entry(
    source: usize,
    candidate: &TaggedWord,
    p: &ParadigmIndex,
    lex: &Lexicon,
) -> Option<usize> {
    lex.iter().map(|(id, _)| id).find(|&id| {
        id != source && p.same_paradigm(id, source) && lex.get(id).tag == candidate.tag
    })
}

pub fn is_blocked(source: usize, candidate: &TaggedWord, p: &ParadigmIndex, lex: &Lexicon) -> bool {
    blocking_entry(source, candidate, p, lex).is_some()
}

/// (paradigm, tag) → member ids in lexicon order.
struct BlockingIndex<'a> {
    members: HashMap<(usize, &'a str), Vec<usize>>,
}

impl<'a> BlockingIndex<'a> {
    fn new(lex: &'a Lexicon, p: &ParadigmIndex) -> Self {
        let mut members: HashMap<_, Vec<usize>> = HashMap::new();
        for (id, word) in lex.iter() {
            members
                .entry((p.paradigm(id), word.tag.as_str()))
                .or_default()
                .push(id);
        }
        BlockingIndex { members }
    }

    fn blocker(&self, source: usize, candidate: &TaggedWord, p: &ParadigmIndex) -> Option<usize> {
        self.members
            .get(&(p.paradigm(source), candidate.tag.as_str()))?
            .iter()
            .copied()
            .find(|&id| id != source)
    }
}

/// Everything `source` can create, in strategy, side, binding order.
fn creations(lex: &Lexicon, source: usize, strategies: &[Strategy]) -> Vec<(usize, TaggedWord)> {
    let word = lex.get(source);
    let chars = lex.graphemes(source);
    let mut out = Vec::new();
    for s in strategies {
        for side in [Side::First, Side::Second] {
            if &word.tag != s.tag(side) {
                continue;
            }
            for b in bindings_chars(chars, s, side) {
                out.push((s.id, create(s, &b)));
            }
        }
    }
    out
}

/// Applies every strategy to every lexicon word. Candidate creation runs on
/// the current rayon pool; deduplication and blocking run afterwards in
/// lexicon order, then strategy order, then side order.
pub fn generate(
    lex: &Lexicon,
    strategies: &[Strategy],
    paradigms: &ParadigmIndex,
    opts: &GenerationOptions,
) -> GenerationReport {
    let per_word: Vec<Vec<(usize, TaggedWord)>> = (0..lex.len())
        .into_par_iter()
        .map(|id| creations(lex, id, strategies))
        .collect();

    let blocking = opts.blocking.then(|| BlockingIndex::new(lex, paradigms));
    let mut report = GenerationReport::default();
    let mut emitted: HashSet<TaggedWord> = HashSet::new();
    let mut blocked_seen: HashSet<TaggedWord> = HashSet::new();

    for (source, candidates) in per_word.into_iter().enumerate() {
        for (sid, candidate) in candidates {
            if lex.contains(&candidate) {
                report.regenerated_count += 1;
                continue;
            }
            if let Some(index) = &blocking {
                if let Some(blocker) = index.blocker(source, &candidate, paradigms) {
                    if blocked_seen.insert(candidate.clone()) {
                        report.blocked.push(BlockedWord {
                            word: candidate,
                            source: lex.get(source).clone(),
                            blocker: lex.get(blocker).clone(),
                        });
                    }
                    continue;
                }
            }
            *report.per_strategy_counts.entry(sid).or_default() += 1;
            if emitted.insert(candidate.clone()) {
                report.new_words.push(candidate);
                report.sources.push(source);
            }
        }
    }
    report.blocked.retain(|b| !emitted.contains(&b.word));
    report
}

/// Strategies learned from `lex`, with their paradigm partition.
pub fn learn(lex: &Lexicon, cfg: &CompareConfig, min_support: usize) -> (Vec<Strategy>, ParadigmIndex) {
    let strategies = extract_strategies(&accumulate(lex, cfg), min_support);
    let paradigms = build_paradigms(&strategies, lex);
    (strategies, paradigms)
}

/// Result of a full multi-cycle run.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    /// Strategies learned from the original lexicon.
    pub strategies: Vec<Strategy>,
    pub report: GenerationReport,
    /// Cycles actually executed; stops early once a cycle adds nothing.
    pub cycles_run: usize,
}

pub fn run_cycles(
    lex: &Lexicon,
    cfg: &CompareConfig,
    opts: &GenerationOptions,
    min_support: usize,
) -> GenerationReport {
    run_pipeline(lex, cfg, opts, min_support).report
}

/// Learns, generates, and optionally feeds new words back for further
/// cycles. New words join their source's paradigm. Strategies relearned in
/// later cycles keep the id of an equal first-cycle key; unseen keys get
/// fresh ids. Reported words are all new relative to `lex`.
pub fn run_pipeline(
    lex: &Lexicon,
    cfg: &CompareConfig,
    opts: &GenerationOptions,
    min_support: usize,
) -> PipelineRun {
    let cycles = opts.cycles.max(1);
    let mut working = lex.clone();
    let (first, _) = learn(&working, cfg, min_support);
    let mut ids: BTreeMap<StrategyKey, usize> =
        first.iter().map(|s| (s.key.clone(), s.id)).collect();
    let mut strategies = first.clone();
    let mut source_links: Vec<(usize, usize)> = Vec::new();

    let mut total = GenerationReport::default();
    let mut cycles_run = 0;
    for cycle in 1..=cycles {
        if cycle > 1 && !opts.reapply_only {
            let (mut relearned, _) = learn(&working, cfg, min_support);
            for s in &mut relearned {
                let next = ids.len();
                s.id = *ids.entry(s.key.clone()).or_insert(next);
            }
            relearned.sort_by_key(|s| s.id);
            strategies = relearned;
        }
        let paradigms = ParadigmIndex::from_links(
            working.len(),
            strategies
                .iter()
                .flat_map(|s| s.witnesses.iter().copied())
                .chain(source_links.iter().copied()),
        );
        let report = generate(&working, &strategies, &paradigms, opts);
        cycles_run = cycle;

        total.regenerated_count += report.regenerated_count;
        for (sid, n) in report.per_strategy_counts {
            *total.per_strategy_counts.entry(sid).or_default() += n;
        }
        total.blocked.extend(report.blocked);
        for (word, source) in report.new_words.iter().zip(&report.sources) {
            let (id, _) = working.insert(word.clone());
            source_links.push((id, *source));
        }
        let added = report.new_words.len();
        total.new_words.extend(report.new_words);
        total.sources.extend(report.sources);
        if added == 0 {
            break;
        }
    }

    let produced: HashSet<&TaggedWord> = total.new_words.iter().collect();
    let mut seen = HashSet::new();
    total
        .blocked
        .retain(|b| !produced.contains(&b.word) && seen.insert(b.word.clone()));

    PipelineRun {
        strategies: first,
        report: total,
        cycles_run,
    }
}
