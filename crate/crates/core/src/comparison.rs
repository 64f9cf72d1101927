//! Edge-anchored letter-by-letter comparison of word pairs.
//!
//! Two words that share a beginning are walked from the left; two that share
//! an ending are walked from the right. Positions where the graphemes agree
//! become literal slots of the similarity templates and collapse into a
//! variable `X` in the difference patterns; positions where they disagree
//! (and any overhang of the longer word) become `#` slots and literal
//! material of the differences.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lexio::{Tag, TaggedWord};

/// Which edge of the words the comparison was anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Shared beginning; differences sit at the right edge.
    Forward,
    /// Shared ending; differences sit at the left edge.
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DifSymbol {
    /// A collapsed run of shared material.
    Var,
    Lit(char),
}

/// Difference pattern of one side of a comparison, e.g. `Xption`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffPattern(Vec<DifSymbol>);

/// A maximal run of a difference pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Var,
    Lit(Vec<char>),
}

impl DiffPattern {
    pub fn symbols(&self) -> &[DifSymbol] {
        &self.0
    }

    /// Appends a variable unless the pattern already ends in one.
    fn push_var(&mut self) {
        if self.0.last() != Some(&DifSymbol::Var) {
            self.0.push(DifSymbol::Var);
        }
    }

    fn push_lit(&mut self, c: char) {
        self.0.push(DifSymbol::Lit(c));
    }

    pub fn literal_count(&self) -> usize {
        self.0.iter().filter(|s| matches!(s, DifSymbol::Lit(_))).count()
    }

    pub fn var_count(&self) -> usize {
        self.0.len() - self.literal_count()
    }

    /// Groups the pattern into variables and literal runs.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for sym in &self.0 {
            match (sym, out.last_mut()) {
                (DifSymbol::Var, _) => out.push(Segment::Var),
                (DifSymbol::Lit(c), Some(Segment::Lit(run))) => run.push(*c),
                (DifSymbol::Lit(c), _) => out.push(Segment::Lit(vec![*c])),
            }
        }
        out
    }

    fn reverse(&mut self) {
        self.0.reverse();
    }
}

impl FromIterator<DifSymbol> for DiffPattern {
    fn from_iter<I: IntoIterator<Item = DifSymbol>>(iter: I) -> Self {
        DiffPattern(iter.into_iter().collect())
    }
}

impl std::str::FromStr for DiffPattern {
    type Err = std::convert::Infallible;

    /// `X` reads as the variable, every other character as a literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.chars()
            .map(|c| if c == 'X' { DifSymbol::Var } else { DifSymbol::Lit(c) })
            .collect())
    }
}

impl DiffPattern {
    /// Characters of the rendered pattern, without allocating.
    fn rendered(&self) -> impl Iterator<Item = char> + '_ {
        self.0.iter().map(|sym| match sym {
            DifSymbol::Var => 'X',
            DifSymbol::Lit(c) => *c,
        })
    }
}

impl fmt::Display for DiffPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rendered().try_for_each(|c| f.write_fmt(format_args!("{c}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Lit(char),
    /// `#`: a grapheme must be present but is unconstrained.
    Required,
    /// `*`: a grapheme may or may not be present.
    Optional,
}

impl Slot {
    /// Positionwise meet used when merging templates. `None` stands for a
    /// position one template does not reach.
    pub fn meet(a: Option<Slot>, b: Option<Slot>) -> Slot {
        match (a, b) {
            (None, _) | (_, None) | (Some(Slot::Optional), _) | (_, Some(Slot::Optional)) => {
                Slot::Optional
            }
            (Some(Slot::Lit(x)), Some(Slot::Lit(y))) if x == y => Slot::Lit(x),
            _ => Slot::Required,
        }
    }
}

/// Full-word similarity template over literals, `#` and `*`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimTemplate(Vec<Slot>);

impl SimTemplate {
    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    /// Longest word the template admits.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn optional_count(&self) -> usize {
        self.0.iter().filter(|s| **s == Slot::Optional).count()
    }

    /// Shortest word the template admits.
    pub fn min_len(&self) -> usize {
        self.len() - self.optional_count()
    }

    /// The literal graphemes in order.
    pub fn literals(&self) -> Vec<char> {
        self.0
            .iter()
            .filter_map(|s| match s {
                Slot::Lit(c) => Some(*c),
                _ => None,
            })
            .collect()
    }

    /// Merges two templates aligned at the difference edge of `direction`:
    /// the right edge for forward comparisons, the left for backward ones.
    pub fn meet(&self, other: &SimTemplate, direction: Direction) -> SimTemplate {
        let n = self.len().max(other.len());
        match direction {
            Direction::Backward => (0..n)
                .map(|i| Slot::meet(self.0.get(i).copied(), other.0.get(i).copied()))
                .collect(),
            Direction::Forward => {
                let mut slots: Vec<Slot> = (0..n)
                    .map(|k| {
                        let a = self.len().checked_sub(k + 1).map(|i| self.0[i]);
                        let b = other.len().checked_sub(k + 1).map(|i| other.0[i]);
                        Slot::meet(a, b)
                    })
                    .collect();
                slots.reverse();
                SimTemplate(slots)
            }
        }
    }

    fn reverse(&mut self) {
        self.0.reverse();
    }
}

impl FromIterator<Slot> for SimTemplate {
    fn from_iter<I: IntoIterator<Item = Slot>>(iter: I) -> Self {
        SimTemplate(iter.into_iter().collect())
    }
}

impl std::str::FromStr for SimTemplate {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.chars()
            .map(|c| match c {
                '#' => Slot::Required,
                '*' => Slot::Optional,
                c => Slot::Lit(c),
            })
            .collect())
    }
}

impl fmt::Display for SimTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for slot in &self.0 {
            match slot {
                Slot::Lit(c) => write!(f, "{c}")?,
                Slot::Required => f.write_str("#")?,
                Slot::Optional => f.write_str("*")?,
            }
        }
        Ok(())
    }
}

/// Differences and similarities of one or more word pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRecord {
    pub dif1: DiffPattern,
    pub cat1: Tag,
    pub dif2: DiffPattern,
    pub cat2: Tag,
    pub sim1: SimTemplate,
    pub sim2: SimTemplate,
    pub direction: Direction,
    pub count: usize,
    /// Supporting pairs as (side 1 id, side 2 id), sorted and unique.
    pub witnesses: Vec<(usize, usize)>,
}

impl ComparisonRecord {
    /// The same record with sides 1 and 2 exchanged.
    pub fn swapped(self) -> Self {
        ComparisonRecord {
            dif1: self.dif2,
            cat1: self.cat2,
            dif2: self.dif1,
            cat2: self.cat1,
            sim1: self.sim2,
            sim2: self.sim1,
            direction: self.direction,
            count: self.count,
            witnesses: {
                let mut w: Vec<_> = self.witnesses.into_iter().map(|(a, b)| (b, a)).collect();
                w.sort_unstable();
                w
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareConfig {
    /// Minimum shared prefix or suffix for two words to be compared.
    pub min_anchor: usize,
    pub min_word_len: usize,
    /// Compare identical forms that carry different tags.
    pub allow_conversion: bool,
    pub lowercase: bool,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig {
            min_anchor: 2,
            min_word_len: 3,
            allow_conversion: false,
            lowercase: false,
        }
    }
}

/// Lengths of the longest common prefix and longest common suffix.
pub fn shared_anchor(w1: &[char], w2: &[char]) -> (usize, usize) {
    let prefix = w1.iter().zip(w2).take_while(|(a, b)| a == b).count();
    let suffix = w1
        .iter()
        .rev()
        .zip(w2.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    (prefix, suffix)
}

/// Decides whether and from which edge two entries are compared.
pub fn select_direction(
    w1: &TaggedWord,
    w2: &TaggedWord,
    cfg: &CompareConfig,
) -> Option<Direction> {
    select_direction_chars(&w1.graphemes(), &w1.tag, &w2.graphemes(), &w2.tag, cfg)
}

pub(crate) fn select_direction_chars(
    f1: &[char],
    t1: &Tag,
    f2: &[char],
    t2: &Tag,
    cfg: &CompareConfig,
) -> Option<Direction> {
    if f1.len() < cfg.min_word_len || f2.len() < cfg.min_word_len {
        return None;
    }
    if f1 == f2 {
        return (t1 != t2 && cfg.allow_conversion).then_some(Direction::Forward);
    }
    let (prefix, suffix) = shared_anchor(f1, f2);
    if prefix >= cfg.min_anchor {
        Some(Direction::Forward)
    } else if suffix >= cfg.min_anchor {
        Some(Direction::Backward)
    } else {
        None
    }
}

/// Compares two entries from the given edge, producing a fresh record.
pub fn compare_pair(
    w1: &TaggedWord,
    w2: &TaggedWord,
    direction: Direction,
) -> ComparisonRecord {
    compare_chars(
        (&w1.graphemes(), &w1.tag, 0),
        (&w2.graphemes(), &w2.tag, 0),
        direction,
    )
}

pub(crate) fn compare_chars(
    (f1, t1, id1): (&[char], &Tag, usize),
    (f2, t2, id2): (&[char], &Tag, usize),
    direction: Direction,
) -> ComparisonRecord {
    let mut a: Vec<char> = f1.to_vec();
    let mut b: Vec<char> = f2.to_vec();
    if direction == Direction::Backward {
        a.reverse();
        b.reverse();
    }

    let (mut dif1, mut dif2) = (DiffPattern::default(), DiffPattern::default());
    let mut sim1 = Vec::with_capacity(a.len());
    let mut sim2 = Vec::with_capacity(b.len());
    for (&x, &y) in a.iter().zip(&b) {
        if x == y {
            sim1.push(Slot::Lit(x));
            sim2.push(Slot::Lit(y));
            dif1.push_var();
            dif2.push_var();
        } else {
            dif1.push_lit(x);
            dif2.push_lit(y);
            sim1.push(Slot::Required);
            sim2.push(Slot::Required);
        }
    }
    let shared = a.len().min(b.len());
    for &x in &a[shared..] {
        dif1.push_lit(x);
        sim1.push(Slot::Required);
    }
    for &y in &b[shared..] {
        dif2.push_lit(y);
        sim2.push(Slot::Required);
    }

    let mut sim1 = SimTemplate(sim1);
    let mut sim2 = SimTemplate(sim2);
    if direction == Direction::Backward {
        dif1.reverse();
        dif2.reverse();
        sim1.reverse();
        sim2.reverse();
    }

    ComparisonRecord {
        dif1,
        cat1: t1.clone(),
        dif2,
        cat2: t2.clone(),
        sim1,
        sim2,
        direction,
        count: 1,
        witnesses: vec![(id1, id2)],
    }
}

/// Orders two (tag, dif) sides by tag label then rendered pattern.
pub(crate) fn side_order(t1: &Tag, d1: &DiffPattern, t2: &Tag, d2: &DiffPattern) -> Ordering {
    t1.as_str()
        .cmp(t2.as_str())
        .then_with(|| d1.rendered().cmp(d2.rendered()))
        .then_with(|| d1.cmp(d2))
}
