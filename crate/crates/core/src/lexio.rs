//! Reading and writing tagged word lists.
//!
//! A lexicon file holds one `form,TAG` entry per line. Blank lines and lines
//! starting with `//` are skipped. Forms are NFC-normalized on the way in so
//! that positional comparison works on Unicode scalar values.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

/// Characters that may never appear in a tag label.
const TAG_FORBIDDEN: &[char] = &[',', '#', '*'];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexError {
    #[error("input is not valid UTF-8 (byte offset {offset})")]
    Encoding { offset: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid tag {0:?}")]
    InvalidTag(String),
}

/// Opaque category label such as `Ns`, `V3s` or `INF`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Tag(String);

impl Tag {
    pub fn new(label: impl Into<String>) -> Result<Self, LexError> {
        let label = label.into();
        if label.is_empty()
            || label.chars().any(|c| c.is_whitespace() || TAG_FORBIDDEN.contains(&c))
        {
            return Err(LexError::InvalidTag(label));
        }
        Ok(Tag(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Tag {
    type Error = LexError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Tag::new(value)
    }
}

impl From<Tag> for String {
    fn from(tag: Tag) -> String {
        tag.0
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An orthographic form together with its category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TaggedWord {
    pub form: String,
    pub tag: Tag,
}

impl TaggedWord {
    /// Builds a word, normalizing the form to NFC.
    pub fn new(form: &str, tag: Tag) -> Self {
        TaggedWord {
            form: form.nfc().collect(),
            tag,
        }
    }

    /// Convenience constructor for tests and fixtures; panics on a bad tag.
    pub fn parse(form: &str, tag: &str) -> Self {
        TaggedWord::new(form, Tag::new(tag).expect("valid tag"))
    }

    pub fn graphemes(&self) -> Vec<char> {
        self.form.chars().collect()
    }

    pub fn len(&self) -> usize {
        self.form.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.form.is_empty()
    }
}

impl fmt::Display for TaggedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.form, self.tag)
    }
}

/// Ordered, duplicate-free collection of tagged words. An entry's id is its
/// position in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<TaggedWord>,
    graphemes: Vec<Vec<char>>,
    index: HashMap<TaggedWord, usize>,
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Inserts `word` unless an identical (form, tag) entry exists. Returns
    /// the id of the entry and whether it was newly added.
    pub fn insert(&mut self, word: TaggedWord) -> (usize, bool) {
        if let Some(&id) = self.index.get(&word) {
            return (id, false);
        }
        let id = self.entries.len();
        self.graphemes.push(word.graphemes());
        self.index.insert(word.clone(), id);
        self.entries.push(word);
        (id, true)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: usize) -> &TaggedWord {
        &self.entries[id]
    }

    /// The form of entry `id` as a grapheme slice.
    pub fn graphemes(&self, id: usize) -> &[char] {
        &self.graphemes[id]
    }

    pub fn entries(&self) -> &[TaggedWord] {
        &self.entries
    }

    pub fn id_of(&self, word: &TaggedWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn contains(&self, word: &TaggedWord) -> bool {
        self.index.contains_key(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &TaggedWord)> {
        self.entries.iter().enumerate()
    }
}

impl FromIterator<TaggedWord> for Lexicon {
    fn from_iter<I: IntoIterator<Item = TaggedWord>>(iter: I) -> Self {
        let mut lex = Lexicon::new();
        for word in iter {
            lex.insert(word);
        }
        lex
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Fold forms to lower case after normalization.
    pub lowercase: bool,
}

fn normalize_form(raw: &str, opts: &ParseOptions) -> String {
    let nfc: String = raw.nfc().collect();
    if opts.lowercase {
        nfc.to_lowercase().nfc().collect()
    } else {
        nfc
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Decodes raw bytes, reporting the first invalid offset.
pub fn decode(bytes: &[u8]) -> Result<&str, LexError> {
    std::str::from_utf8(bytes).map_err(|e| LexError::Encoding {
        offset: e.valid_up_to(),
    })
}

pub fn parse_lexicon_bytes(bytes: &[u8], opts: &ParseOptions) -> Result<Lexicon, LexError> {
    parse_lexicon(decode(bytes)?, opts)
}

pub fn parse_lexicon(text: &str, opts: &ParseOptions) -> Result<Lexicon, LexError> {
    let mut lex = Lexicon::new();
    for (line_no, line) in content_lines(text) {
        let err = |message: &str| LexError::Parse {
            line: line_no,
            message: message.to_string(),
        };
        let (form, tag) = line.split_once(',').ok_or_else(|| err("missing comma"))?;
        let form = form.trim();
        let tag = tag.trim();
        if form.is_empty() {
            return Err(err("empty form"));
        }
        if tag.is_empty() {
            return Err(err("empty tag"));
        }
        let tag = Tag::new(tag).map_err(|e| err(&e.to_string()))?;
        lex.insert(TaggedWord {
            form: normalize_form(form, opts),
            tag,
        });
    }
    Ok(lex)
}

/// Renders words as `form,TAG` lines sorted by (form, tag).
pub fn write_words<'a, I>(words: I) -> String
where
    I: IntoIterator<Item = &'a TaggedWord>,
{
    let mut sorted: Vec<&TaggedWord> = words.into_iter().collect();
    sorted.sort_by(|a, b| (a.form.as_str(), a.tag.as_str()).cmp(&(b.form.as_str(), b.tag.as_str())));
    sorted.dedup();
    sorted
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// One entry of a reference list. A bare form matches any tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReferenceEntry {
    pub form: String,
    pub tag: Option<Tag>,
}

/// Parses a reference list: one form per line, optionally `form,TAG`.
pub fn parse_reference(text: &str, opts: &ParseOptions) -> Result<Vec<ReferenceEntry>, LexError> {
    content_lines(text)
        .map(|(line_no, line)| {
            let (form, tag) = match line.split_once(',') {
                Some((form, tag)) => {
                    let tag = Tag::new(tag.trim()).map_err(|e| LexError::Parse {
                        line: line_no,
                        message: e.to_string(),
                    })?;
                    (form.trim(), Some(tag))
                }
                None => (line, None),
            };
            if form.is_empty() {
                return Err(LexError::Parse {
                    line: line_no,
                    message: "empty form".into(),
                });
            }
            Ok(ReferenceEntry {
                form: normalize_form(form, opts),
                tag,
            })
        })
        .collect()
}
