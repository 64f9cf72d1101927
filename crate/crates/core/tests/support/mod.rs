#![allow(dead_code)]

pub mod oracle;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordform::{Lexicon, Strategy, TaggedWord};

pub fn w(form: &str, tag: &str) -> TaggedWord {
    TaggedWord::parse(form, tag)
}

pub fn lexicon(words: &[(&str, &str)]) -> Lexicon {
    words.iter().map(|(f, t)| w(f, t)).collect()
}

pub fn as_pairs(lex: &Lexicon) -> Vec<oracle::Word> {
    lex.entries()
        .iter()
        .map(|e| (e.form.clone(), e.tag.as_str().to_string()))
        .collect()
}

pub fn strategy_tuple(s: &Strategy) -> oracle::OracleStrategy {
    let dir = match s.key.direction {
        wordform::Direction::Forward => "F",
        wordform::Direction::Backward => "B",
    };
    oracle::OracleStrategy {
        key: (
            s.key.dif1.to_string(),
            s.key.cat1.as_str().to_string(),
            s.key.dif2.to_string(),
            s.key.cat2.as_str().to_string(),
            dir,
        ),
        sim1: s.sim1.to_string(),
        sim2: s.sim2.to_string(),
        count: s.count,
    }
}

pub const RECEIVE_FAMILY: &[(&str, &str)] = &[
    ("receive", "V"),
    ("conceive", "V"),
    ("deceive", "V"),
    ("reception", "Ns"),
    ("conception", "Ns"),
    ("deception", "Ns"),
];

pub fn receive_family_with_perception() -> Lexicon {
    let mut words = RECEIVE_FAMILY.to_vec();
    words.push(("perception", "Ns"));
    lexicon(&words)
}

/// Small random lexicon: at most 30 words over `abcdef`, lengths 3 to 9,
/// four tags. Words are built from shared stems and affixes so that
/// recurring differences actually occur.
pub fn random_lexicon(seed: u64) -> Lexicon {
    const ALPHABET: &[char] = &['a', 'b', 'c', 'd', 'e', 'f'];
    const TAGS: &[&str] = &["T1", "T2", "T3", "T4"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_string = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| -> String {
        let n = rng.gen_range(lo..=hi);
        (0..n).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
    };

    let stems: Vec<String> = (0..rng.gen_range(3..=8))
        .map(|_| random_string(&mut rng, 2, 6))
        .collect();
    // (is_prefix, material, usual tag)
    let affixes: Vec<(bool, String, &str)> = (0..rng.gen_range(2..=5))
        .map(|_| {
            let prefix = rng.gen_bool(0.3);
            let material = random_string(&mut rng, 0, 3);
            (prefix, material, *TAGS.choose(&mut rng).unwrap())
        })
        .collect();

    let target = rng.gen_range(2..=30);
    let mut lex = Lexicon::new();
    let mut attempts = 0;
    while lex.len() < target && attempts < 500 {
        attempts += 1;
        let form = if rng.gen_bool(0.15) {
            random_string(&mut rng, 3, 9)
        } else {
            let stem = stems.choose(&mut rng).unwrap();
            let (prefix, material, _) = affixes.choose(&mut rng).unwrap();
            if *prefix {
                format!("{material}{stem}")
            } else {
                format!("{stem}{material}")
            }
        };
        let len = form.chars().count();
        if !(3..=9).contains(&len) {
            continue;
        }
        let tag = affixes
            .iter()
            .find(|(p, m, _)| if *p { form.starts_with(m.as_str()) } else { form.ends_with(m.as_str()) })
            .filter(|_| rng.gen_bool(0.85))
            .map(|a| a.2)
            .unwrap_or_else(|| TAGS.choose(&mut rng).unwrap());
        lex.insert(w(&form, tag));
    }
    lex
}

pub fn shuffled(lex: &Lexicon, seed: u64) -> Lexicon {
    let mut entries = lex.entries().to_vec();
    entries.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    entries.into_iter().collect()
}

/// Constructed English sample with several members per family.
pub fn english_table_lexicon() -> Lexicon {
    let mut words: Vec<(String, &str)> = Vec::new();
    let mut add = |forms: &[&str], tag: &'static str| {
        for f in forms {
            words.push((f.to_string(), tag));
        }
    };
    // e-final verbs and their participles
    add(&["bake", "charge", "smile", "raise"], "V");
    add(&["baked", "charged", "smiled", "raised"], "PP");
    // consonant-final verbs
    add(&["direct", "walk", "talk", "jump", "play", "paint", "point"], "V");
    add(&["directed", "walked", "talked", "jumped", "played", "painted", "pointed"], "PP");
    add(&["walking", "talking", "jumping", "playing"], "GER");
    add(&["walks", "talks", "jumps", "plays"], "V3s");
    add(&["paintings", "drawings", "buildings"], "Np");
    add(&["draw", "build"], "V");
    // nouns
    add(&["helmet", "rabbit", "harpoon", "pain", "child", "hope"], "Ns");
    add(&["helmets", "rabbits", "harpoons"], "Np");
    // adjectives and derivatives
    add(&["short", "quick", "soft", "hard", "loud", "dark", "kind", "slow"], "ADJ");
    add(&["shortness", "softness", "darkness", "kindness"], "Ns");
    add(&["quickly", "softly", "loudly", "slowly"], "ADV");
    add(&["hardest", "shortest", "loudest", "softest"], "ADJ");
    add(&["harder", "louder", "darker", "slower"], "ADJ");
    add(&["painless", "childless", "hopeless"], "ADJ");
    words.iter().map(|(f, t)| w(f, t)).collect()
}

/// Verb lexicon with two competing second-person to infinitive patterns:
/// `-es`/`-er` and `-s`/`-re`.
pub fn conjugation_lexicon() -> Lexicon {
    lexicon(&[
        ("conjugues", "V2"),
        ("conjuguer", "INF"),
        ("parles", "V2"),
        ("parler", "INF"),
        ("chantes", "V2"),
        ("chanter", "INF"),
        ("aimes", "V2"),
        ("aimer", "INF"),
        ("fais", "V2"),
        ("faire", "INF"),
        ("vends", "V2"),
        ("vendre", "INF"),
        ("prends", "V2"),
        ("prendre", "INF"),
        ("descends", "V2"),
        ("descendre", "INF"),
        ("interromps", "V2"),
        ("interrompre", "INF"),
    ])
}

const CONSONANTS: &[char] = &[
    'b', 'c', 'd', 'f', 'g', 'h', 'j', 'k', 'l', 'm', 'n', 'p', 'q', 'r', 't', 'v', 'w', 'x', 'z',
];
const VOWELS: &[char] = &['a', 'i', 'o', 'u', 'y'];

fn random_stem(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(4..=7);
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                *CONSONANTS.choose(rng).unwrap()
            } else {
                *VOWELS.choose(rng).unwrap()
            }
        })
        .collect()
}

fn unique_stems(rng: &mut ChaCha8Rng, count: usize) -> Vec<String> {
    let mut stems = Vec::with_capacity(count);
    let mut seen = std::collections::HashSet::new();
    while stems.len() < count {
        let s = random_stem(rng);
        if seen.insert(s.clone()) {
            stems.push(s);
        }
    }
    stems
}

pub struct Synthetic {
    pub lexicon: Lexicon,
    /// Every form the rules license for every stem.
    pub closure: Vec<String>,
}

/// A regular suffixing language: every stem has the same five forms. The
/// lexicon holds a random subset of them.
pub fn regular_language(seed: u64, stems: usize) -> Synthetic {
    const PARADIGM: &[(&str, &str)] = &[("", "N"), ("es", "Np"), ("en", "V"), ("ent", "V3"), ("ened", "PP")];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stems = unique_stems(&mut rng, stems);
    let mut lex = Lexicon::new();
    let mut closure = Vec::new();
    for stem in &stems {
        for (suffix, tag) in PARADIGM {
            let form = format!("{stem}{suffix}");
            if rng.gen_bool(0.6) {
                lex.insert(w(&form, tag));
            }
            closure.push(form);
        }
    }
    Synthetic { lexicon: lex, closure }
}

/// Two verb classes whose second-person forms overlap: class A has `-es`
/// and infinitive `-er`, class B has `-s` and infinitive `-re`. The
/// infinitive of some class A stems is listed, which blocking exploits.
pub fn ambiguous_language(seed: u64, stems: usize) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stems = unique_stems(&mut rng, stems);
    let mut lex = Lexicon::new();
    let mut closure = Vec::new();
    for (i, stem) in stems.iter().enumerate() {
        let forms: [(String, &str); 3] = if i % 2 == 0 {
            [
                (format!("{stem}es"), "V2"),
                (format!("{stem}er"), "INF"),
                (format!("{stem}ons"), "V4"),
            ]
        } else {
            [
                (format!("{stem}s"), "V2"),
                (format!("{stem}re"), "INF"),
                (format!("{stem}ions"), "V4"),
            ]
        };
        for (k, (form, tag)) in forms.iter().enumerate() {
            // the second-person form is always present
            if k == 0 || rng.gen_bool(0.6) {
                lex.insert(w(form, tag));
            }
            closure.push(form.clone());
        }
    }
    Synthetic { lexicon: lex, closure }
}
