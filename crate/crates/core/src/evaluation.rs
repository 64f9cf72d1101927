//! Precision of generated words against a reference list, and strategy dumps.

use std::collections::HashSet;

use serde::Serialize;

use crate::induction::Strategy;
use crate::lexio::{Lexicon, ReferenceEntry, Tag, TaggedWord};

/// Upper bound on unattested forms quoted in a report.
pub const UNATTESTED_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchMode {
    /// A generated word counts if its form is listed, whatever its tag.
    #[default]
    FormOnly,
    /// Form and tag must both match; untagged reference lines match any tag.
    FormAndTag,
}

/// Set of attested words built from a reference list.
#[derive(Debug, Clone, Default)]
pub struct Reference {
    forms: HashSet<String>,
    tagged: HashSet<(String, Tag)>,
}

impl Reference {
    pub fn from_entries(entries: impl IntoIterator<Item = ReferenceEntry>) -> Self {
        let mut r = Reference::default();
        for e in entries {
            match e.tag {
                Some(tag) => {
                    r.tagged.insert((e.form, tag));
                }
                None => {
                    r.forms.insert(e.form);
                }
            }
        }
        r
    }

    pub fn from_forms<S: Into<String>>(forms: impl IntoIterator<Item = S>) -> Self {
        Reference {
            forms: forms.into_iter().map(Into::into).collect(),
            tagged: HashSet::new(),
        }
    }

    pub fn attests(&self, word: &TaggedWord, mode: MatchMode) -> bool {
        if self.forms.contains(&word.form) {
            return true;
        }
        match mode {
            MatchMode::FormAndTag => self.tagged.contains(&(word.form.clone(), word.tag.clone())),
            MatchMode::FormOnly => self.tagged.iter().any(|(f, _)| f == &word.form),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionReport {
    pub generated: usize,
    pub attested: usize,
    /// `None` when nothing was generated.
    pub precision: Option<f64>,
    pub unattested_sample: Vec<String>,
}

impl PrecisionReport {
    pub fn status(&self) -> &'static str {
        if self.precision.is_some() {
            "ok"
        } else {
            "no_new_words"
        }
    }
}

pub fn precision(new_words: &[TaggedWord], reference: &Reference, mode: MatchMode) -> PrecisionReport {
    let mut unattested = Vec::new();
    let mut attested = 0;
    for word in new_words {
        if reference.attests(word, mode) {
            attested += 1;
        } else {
            unattested.push(word.form.clone());
        }
    }
    unattested.sort();
    unattested.dedup();
    unattested.truncate(UNATTESTED_SAMPLE);
    let generated = new_words.len();
    PrecisionReport {
        generated,
        attested,
        precision: (generated > 0).then(|| attested as f64 / generated as f64),
        unattested_sample: unattested,
    }
}

pub const STRATEGY_TABLE_HEADER: &str = "dif1\tcat1\tdif2\tcat2\tsim1\tsim2\tcount\texamples";

/// Tab-separated strategy inventory, most supported first. The examples
/// column quotes up to three witness pairs as `a/b`.
pub fn strategy_table(strategies: &[Strategy], lex: &Lexicon) -> String {
    let mut rows: Vec<&Strategy> = strategies.iter().collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.key.cmp(&b.key)));
    let mut out = String::from(STRATEGY_TABLE_HEADER);
    for s in rows {
        let examples = s
            .witnesses
            .iter()
            .take(3)
            .map(|&(a, b)| format!("{}/{}", lex.get(a).form, lex.get(b).form))
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.key.dif1, s.key.cat1, s.key.dif2, s.key.cat2, s.sim1, s.sim2, s.count, examples
        ));
    }
    out
}
