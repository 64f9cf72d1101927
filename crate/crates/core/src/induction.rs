//! Folding pair comparisons into word-formation strategies.
//!
//! Records whose difference patterns, tags and direction coincide are merged
//! into one record: the similarity templates are intersected slot by slot
//! (aligned at the difference edge) so the merged record admits exactly the
//! lengths and constant material shared by all of its witnesses. Records with
//! enough distinct witnesses become strategies.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::comparison::{
    compare_chars, select_direction_chars, side_order, CompareConfig, ComparisonRecord,
    DiffPattern, Direction, SimTemplate,
};
use crate::lexio::{Lexicon, Tag};
use crate::paradigm::ParadigmIndex;

/// Merge identity of a record: its differences, tags and direction, with the
/// two sides in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyKey {
    pub dif1: DiffPattern,
    pub cat1: Tag,
    pub dif2: DiffPattern,
    pub cat2: Tag,
    pub direction: Direction,
}

impl fmt::Display for StrategyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{} <-> {}_{} ({})",
            self.dif1, self.cat1, self.dif2, self.cat2, self.direction
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot merge records with different keys: {left} vs {right}")]
pub struct KeyMismatch {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// A record that passed the support threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub id: usize,
    pub key: StrategyKey,
    pub sim1: SimTemplate,
    pub sim2: SimTemplate,
    pub count: usize,
    pub witnesses: Vec<(usize, usize)>,
}

impl Strategy {
    pub fn dif(&self, side: Side) -> &DiffPattern {
        match side {
            Side::First => &self.key.dif1,
            Side::Second => &self.key.dif2,
        }
    }

    pub fn tag(&self, side: Side) -> &Tag {
        match side {
            Side::First => &self.key.cat1,
            Side::Second => &self.key.cat2,
        }
    }

    pub fn sim(&self, side: Side) -> &SimTemplate {
        match side {
            Side::First => &self.sim1,
            Side::Second => &self.sim2,
        }
    }

    pub fn direction(&self) -> Direction {
        self.key.direction
    }

    /// Admitted word lengths on `side`, inclusive.
    pub fn length_range(&self, side: Side) -> (usize, usize) {
        let sim = self.sim(side);
        (sim.min_len(), sim.len())
    }
}

fn needs_swap(r: &ComparisonRecord) -> bool {
    side_order(&r.cat1, &r.dif1, &r.cat2, &r.dif2).is_gt()
}

/// Puts the record's sides in canonical order.
pub fn canonicalize(r: ComparisonRecord) -> ComparisonRecord {
    if needs_swap(&r) {
        r.swapped()
    } else {
        r
    }
}

pub fn canonical_key(r: &ComparisonRecord) -> StrategyKey {
    let (dif1, cat1, dif2, cat2) = if needs_swap(r) {
        (&r.dif2, &r.cat2, &r.dif1, &r.cat1)
    } else {
        (&r.dif1, &r.cat1, &r.dif2, &r.cat2)
    };
    StrategyKey {
        dif1: dif1.clone(),
        cat1: cat1.clone(),
        dif2: dif2.clone(),
        cat2: cat2.clone(),
        direction: r.direction,
    }
}

fn normalize_witnesses(witnesses: &mut Vec<(usize, usize)>) {
    witnesses.sort_unstable();
    witnesses.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
}

/// Folds `other` into `acc`; both must already be canonical with equal keys.
fn absorb(acc: &mut ComparisonRecord, other: ComparisonRecord) {
    absorb_unsorted(acc, other);
    normalize_witnesses(&mut acc.witnesses);
    acc.count = acc.witnesses.len();
}

/// Like `absorb` but leaves witness normalization to the caller.
fn absorb_unsorted(acc: &mut ComparisonRecord, other: ComparisonRecord) {
    acc.sim1 = acc.sim1.meet(&other.sim1, acc.direction);
    acc.sim2 = acc.sim2.meet(&other.sim2, acc.direction);
    acc.witnesses.extend(other.witnesses);
}

/// Merges two records sharing a canonical key. The result is canonical.
pub fn merge_records(
    a: ComparisonRecord,
    b: ComparisonRecord,
) -> Result<ComparisonRecord, KeyMismatch> {
    let (ka, kb) = (canonical_key(&a), canonical_key(&b));
    if ka != kb {
        return Err(KeyMismatch {
            left: ka.to_string(),
            right: kb.to_string(),
        });
    }
    let mut acc = canonicalize(a);
    absorb(&mut acc, canonicalize(b));
    Ok(acc)
}

/// Canonical key fields of a record, borrowed, in `StrategyKey` order.
fn key_fields(r: &ComparisonRecord) -> (&DiffPattern, &Tag, &DiffPattern, &Tag, Direction) {
    (&r.dif1, &r.cat1, &r.dif2, &r.cat2, r.direction)
}

/// Partner ids `j > i` of every entry `i` that could reach the anchor
/// threshold: entries sharing their first or last `min_anchor` graphemes,
/// plus identical forms when conversion is enabled.
fn candidate_partners(lex: &Lexicon, cfg: &CompareConfig) -> Vec<Vec<usize>> {
    let n = lex.len();
    let anchor = cfg.min_anchor.max(1);
    let mut buckets: HashMap<(u8, &[char]), Vec<usize>> = HashMap::new();
    for id in 0..n {
        let g = lex.graphemes(id);
        if g.len() < cfg.min_word_len {
            continue;
        }
        if g.len() >= anchor {
            buckets.entry((0, &g[..anchor])).or_default().push(id);
            buckets.entry((1, &g[g.len() - anchor..])).or_default().push(id);
        }
        if cfg.allow_conversion {
            buckets.entry((2, g)).or_default().push(id);
        }
    }
    let mut partners = vec![Vec::new(); n];
    for ids in buckets.values() {
        for (k, &i) in ids.iter().enumerate() {
            partners[i].extend_from_slice(&ids[k + 1..]);
        }
    }
    partners.par_iter_mut().for_each(|p| {
        p.sort_unstable();
        p.dedup();
    });
    partners
}

/// Compares every qualifying unordered pair once and folds the records by
/// canonical key. Work is spread over the current rayon pool; the result
/// does not depend on how it is split.
pub fn accumulate(lex: &Lexicon, cfg: &CompareConfig) -> BTreeMap<StrategyKey, ComparisonRecord> {
    let partners = candidate_partners(lex, cfg);
    let mut records: Vec<ComparisonRecord> = partners
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, js)| {
            let (fi, ti) = (lex.graphemes(i), &lex.get(i).tag);
            js.iter().filter_map(move |&j| {
                let (fj, tj) = (lex.graphemes(j), &lex.get(j).tag);
                select_direction_chars(fi, ti, fj, tj, cfg)
                    .map(|dir| canonicalize(compare_chars((fi, ti, i), (fj, tj, j), dir)))
            })
        })
        .collect();
    // Sorting groups equal keys; the meet is order-independent, so the
    // fold below does not depend on how the work was split.
    records.par_sort_unstable_by(|a, b| key_fields(a).cmp(&key_fields(b)));

    let mut out = BTreeMap::new();
    let mut records = records.into_iter().peekable();
    while let Some(mut acc) = records.next() {
        while let Some(next) = records.next_if(|r| key_fields(r) == key_fields(&acc)) {
            // each unordered pair is compared once, so witnesses stay distinct
            absorb_unsorted(&mut acc, next);
        }
        normalize_witnesses(&mut acc.witnesses);
        acc.count = acc.witnesses.len();
        out.insert(canonical_key(&acc), acc);
    }
    out
}

/// Keeps records with at least `min_support` witnesses, numbered in key order.
pub fn extract_strategies(
    records: &BTreeMap<StrategyKey, ComparisonRecord>,
    min_support: usize,
) -> Vec<Strategy> {
    records
        .iter()
        .filter(|(_, r)| r.count >= min_support)
        .enumerate()
        .map(|(id, (key, r))| Strategy {
            id,
            key: key.clone(),
            sim1: r.sim1.clone(),
            sim2: r.sim2.clone(),
            count: r.count,
            witnesses: r.witnesses.clone(),
        })
        .collect()
}

/// Joins the witnesses of every strategy into shared paradigms.
pub fn build_paradigms(strategies: &[Strategy], lex: &Lexicon) -> ParadigmIndex {
    ParadigmIndex::from_links(
        lex.len(),
        strategies.iter().flat_map(|s| s.witnesses.iter().copied()),
    )
}
