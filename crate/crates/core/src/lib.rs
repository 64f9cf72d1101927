//! Whole-word morphology learner.
//!
//! Words of a tagged lexicon are compared pairwise from a shared edge.
//! Differences that recur across enough pairs become bidirectional
//! word-formation strategies, which are then applied back to the lexicon to
//! create new words. Optional paradigm-based blocking suppresses creations
//! whose category is already filled by a related word.
//!
//! ```
//! use wordform::{parse_lexicon, run_cycles, CompareConfig, GenerationOptions, ParseOptions};
//!
//! let lex = parse_lexicon(
//!     "receive,V\nreception,Ns\nconceive,V\nconception,Ns\ndeceive,V\ndeception,Ns\nperception,Ns",
//!     &ParseOptions::default(),
//! )
//! .unwrap();
//! let report = run_cycles(&lex, &CompareConfig::default(), &GenerationOptions::default(), 3);
//! assert_eq!(report.new_words[0].to_string(), "perceive,V");
//! ```

pub mod cli;
pub mod comparison;
pub mod evaluation;
pub mod generation;
pub mod induction;
pub mod lexio;
pub mod paradigm;

pub use comparison::{
    compare_pair, select_direction, shared_anchor, CompareConfig, ComparisonRecord, DifSymbol,
    DiffPattern, Direction, Segment, SimTemplate, Slot,
};
pub use evaluation::{precision, strategy_table, MatchMode, PrecisionReport, Reference};
pub use generation::{
    bindings, create, generate, is_blocked, learn, run_cycles, run_pipeline, unify,
    GenerationOptions, GenerationReport, MatchBinding, PipelineRun,
};
pub use induction::{
    accumulate, build_paradigms, canonical_key, extract_strategies, merge_records, Side,
    Strategy, StrategyKey,
};
pub use lexio::{parse_lexicon, write_words, Lexicon, ParseOptions, Tag, TaggedWord};
pub use paradigm::ParadigmIndex;
