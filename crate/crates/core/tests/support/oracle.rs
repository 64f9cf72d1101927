//! Naive reference pipeline over plain strings.
//!
//! Deliberately unoptimized and written without the library's types: every
//! ordered pair is compared, templates are merged in one pass over all
//! witnesses of a key, and unification enumerates every composition of the
//! variable lengths.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub type Word = (String, String);

/// (dif1, cat1, dif2, cat2, direction)
pub type Key = (String, String, String, String, &'static str);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleStrategy {
    pub key: Key,
    pub sim1: String,
    pub sim2: String,
    pub count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub min_anchor: usize,
    pub min_word_len: usize,
    pub allow_conversion: bool,
    pub min_support: usize,
}

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn common_prefix(a: &[char], b: &[char]) -> usize {
    let mut n = 0;
    while n < a.len() && n < b.len() && a[n] == b[n] {
        n += 1;
    }
    n
}

fn common_suffix(a: &[char], b: &[char]) -> usize {
    let mut n = 0;
    while n < a.len() && n < b.len() && a[a.len() - 1 - n] == b[b.len() - 1 - n] {
        n += 1;
    }
    n
}

fn direction(a: &Word, b: &Word, cfg: &OracleConfig) -> Option<&'static str> {
    let (fa, fb) = (chars(&a.0), chars(&b.0));
    if fa.len() < cfg.min_word_len || fb.len() < cfg.min_word_len {
        return None;
    }
    if fa == fb {
        if a.1 != b.1 && cfg.allow_conversion {
            return Some("F");
        }
        return None;
    }
    if common_prefix(&fa, &fb) >= cfg.min_anchor {
        Some("F")
    } else if common_suffix(&fa, &fb) >= cfg.min_anchor {
        Some("B")
    } else {
        None
    }
}

/// Returns (dif1, dif2, sim1, sim2) as strings in reading order.
pub fn compare(a: &str, b: &str, dir: &str) -> (String, String, String, String) {
    let (fa, fb) = (chars(a), chars(b));
    let shorter = fa.len().min(fb.len());
    // Position k counted from the anchored edge.
    let at = |f: &[char], k: usize| if dir == "F" { f[k] } else { f[f.len() - 1 - k] };
    let mut d1: Vec<String> = Vec::new();
    let mut d2: Vec<String> = Vec::new();
    let mut s1: Vec<char> = Vec::new();
    let mut s2: Vec<char> = Vec::new();
    for k in 0..shorter {
        let (x, y) = (at(&fa, k), at(&fb, k));
        if x == y {
            s1.push(x);
            s2.push(y);
            if d1.last().map(String::as_str) != Some("X") {
                d1.push("X".into());
                d2.push("X".into());
            }
        } else {
            s1.push('#');
            s2.push('#');
            d1.push(x.to_string());
            d2.push(y.to_string());
        }
    }
    for k in shorter..fa.len() {
        d1.push(at(&fa, k).to_string());
        s1.push('#');
    }
    for k in shorter..fb.len() {
        d2.push(at(&fb, k).to_string());
        s2.push('#');
    }
    if dir == "B" {
        d1.reverse();
        d2.reverse();
        s1.reverse();
        s2.reverse();
    }
    (
        d1.concat(),
        d2.concat(),
        s1.into_iter().collect(),
        s2.into_iter().collect(),
    )
}

/// One-pass merge of every template of a key, aligned at the difference edge.
pub fn merge_all(sims: &[String], dir: &str) -> String {
    let sims: Vec<Vec<char>> = sims.iter().map(|s| chars(s)).collect();
    let width = sims.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(width);
    for p in 0..width {
        // p counts from the difference edge
        let column: Vec<Option<char>> = sims
            .iter()
            .map(|s| {
                if p >= s.len() {
                    None
                } else if dir == "F" {
                    Some(s[s.len() - 1 - p])
                } else {
                    Some(s[p])
                }
            })
            .collect();
        let slot = if column.iter().any(|c| c.is_none() || *c == Some('*')) {
            '*'
        } else if column.iter().all(|c| *c == column[0]) && column[0] != Some('#') {
            column[0].unwrap()
        } else {
            '#'
        };
        out.push(slot);
    }
    if dir == "F" {
        out.reverse();
    }
    out.into_iter().collect()
}

pub struct OracleRun {
    pub strategies: Vec<OracleStrategy>,
    /// Witness pairs per strategy, unordered, as lexicon indices.
    pub witnesses: Vec<Vec<(usize, usize)>>,
    pub new_words: BTreeSet<Word>,
    pub new_words_blocked: BTreeSet<Word>,
}

pub fn learn(lex: &[Word], cfg: &OracleConfig) -> (Vec<OracleStrategy>, Vec<Vec<(usize, usize)>>) {
    let mut groups: BTreeMap<Key, Vec<(String, String, usize, usize)>> = BTreeMap::new();
    for i in 0..lex.len() {
        for j in 0..lex.len() {
            if i == j {
                continue;
            }
            let Some(dir) = direction(&lex[i], &lex[j], cfg) else {
                continue;
            };
            let (d1, d2, s1, s2) = compare(&lex[i].0, &lex[j].0, dir);
            let (c1, c2) = (lex[i].1.clone(), lex[j].1.clone());
            let forward = (c1.as_str(), d1.as_str()) <= (c2.as_str(), d2.as_str());
            let (key, entry) = if forward {
                ((d1, c1, d2, c2, dir), (s1, s2, i, j))
            } else {
                ((d2, c2, d1, c1, dir), (s2, s1, j, i))
            };
            groups.entry(key).or_default().push(entry);
        }
    }
    let mut strategies = Vec::new();
    let mut witnesses = Vec::new();
    for (key, entries) in groups {
        let pairs: BTreeSet<(usize, usize)> =
            entries.iter().map(|e| (e.2.min(e.3), e.2.max(e.3))).collect();
        if pairs.len() < cfg.min_support {
            continue;
        }
        let sims1: Vec<String> = entries.iter().map(|e| e.0.clone()).collect();
        let sims2: Vec<String> = entries.iter().map(|e| e.1.clone()).collect();
        strategies.push(OracleStrategy {
            sim1: merge_all(&sims1, key.4),
            sim2: merge_all(&sims2, key.4),
            count: pairs.len(),
            key,
        });
        witnesses.push(pairs.into_iter().collect());
    }
    (strategies, witnesses)
}

/// Splits a rendered dif pattern into `None` for X and `Some(c)` literals.
fn tokens(dif: &str) -> Vec<Option<char>> {
    dif.chars().map(|c| if c == 'X' { None } else { Some(c) }).collect()
}

/// All tuples of `k` positive integers summing to `total`.
fn compositions(k: usize, total: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every word `form` can be mapped to through one side of a strategy.
pub fn apply(form: &str, s: &OracleStrategy, first_side: bool) -> Vec<String> {
    let (dif, sim, other) = if first_side {
        (&s.key.0, &s.sim1, &s.key.2)
    } else {
        (&s.key.2, &s.sim2, &s.key.0)
    };
    let word = chars(form);
    let sim = chars(sim);
    let required = sim.iter().filter(|c| **c != '*').count();
    if word.len() < required || word.len() > sim.len() {
        return vec![];
    }
    let offset = if s.key.4 == "F" { sim.len() - word.len() } else { 0 };
    for (k, c) in word.iter().enumerate() {
        let slot = sim[k + offset];
        if slot != '#' && slot != '*' && slot != *c {
            return vec![];
        }
    }
    let toks = tokens(dif);
    let vars = toks.iter().filter(|t| t.is_none()).count();
    let lits = toks.len() - vars;
    if word.len() < lits + vars {
        return vec![];
    }
    let mut out = Vec::new();
    'shape: for widths in compositions(vars, word.len() - lits) {
        let mut pos = 0;
        let mut w = widths.iter();
        let mut material = Vec::new();
        for t in &toks {
            match t {
                None => {
                    let n = *w.next().unwrap();
                    material.push(word[pos..pos + n].iter().collect::<String>());
                    pos += n;
                }
                Some(c) => {
                    if word[pos] != *c || sim[pos + offset] != '#' {
                        continue 'shape;
                    }
                    pos += 1;
                }
            }
        }
        let mut m = material.into_iter();
        let created: String = tokens(other)
            .into_iter()
            .map(|t| match t {
                None => m.next().unwrap(),
                Some(c) => c.to_string(),
            })
            .collect();
        out.push(created);
    }
    out
}

fn components(n: usize, links: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in links {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        comp[start] = start;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = start;
                    queue.push_back(y);
                }
            }
        }
    }
    comp
}

pub fn run(lex: &[Word], cfg: &OracleConfig) -> OracleRun {
    let (strategies, witnesses) = learn(lex, cfg);
    let known: BTreeSet<&Word> = lex.iter().collect();
    let links: Vec<(usize, usize)> = witnesses.iter().flatten().copied().collect();
    let comp = components(lex.len(), &links);
    let mut by_comp_tag: HashMap<(usize, &str), Vec<usize>> = HashMap::new();
    for (i, w) in lex.iter().enumerate() {
        by_comp_tag.entry((comp[i], w.1.as_str())).or_default().push(i);
    }

    let mut new_words = BTreeSet::new();
    let mut new_words_blocked = BTreeSet::new();
    for (i, word) in lex.iter().enumerate() {
        for s in &strategies {
            for first_side in [true, false] {
                let (tag, other_tag) = if first_side {
                    (&s.key.1, &s.key.3)
                } else {
                    (&s.key.3, &s.key.1)
                };
                if &word.1 != tag {
                    continue;
                }
                for form in apply(&word.0, s, first_side) {
                    let created = (form, other_tag.clone());
                    if known.contains(&created) {
                        continue;
                    }
                    let blocked = by_comp_tag
                        .get(&(comp[i], other_tag.as_str()))
                        .is_some_and(|ids| ids.iter().any(|&id| id != i));
                    if !blocked {
                        new_words_blocked.insert(created.clone());
                    }
                    new_words.insert(created);
                }
            }
        }
    }
    OracleRun {
        strategies,
        witnesses,
        new_words,
        new_words_blocked,
    }
}
