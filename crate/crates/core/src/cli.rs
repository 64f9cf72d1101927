//! Command-line front end: `learn`, `generate` and `eval`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::comparison::CompareConfig;
use crate::evaluation::{precision, strategy_table, MatchMode, PrecisionReport, Reference};
use crate::generation::{run_pipeline, GenerationOptions, PipelineRun};
use crate::induction::extract_strategies;
use crate::lexio::{self, Lexicon, ParseOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wordform",
    version,
    about = "Learn word-formation strategies from a tagged lexicon and generate new words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discover strategies and print them as a tab-separated table.
    Learn(LearnArgs),
    /// Discover strategies and write the words they create.
    Generate(GenerateArgs),
    /// Generate, then measure precision against a reference word list.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Lexicon file, one `form,TAG` entry per line.
    #[arg(long)]
    lexicon: PathBuf,
    /// Shortest shared beginning or ending that makes two words comparable.
    #[arg(long, default_value_t = 2, value_parser = positive)]
    min_anchor: usize,
    /// Words shorter than this are never compared.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    min_word_len: usize,
    /// Word pairs needed before a difference becomes a strategy.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    min_support: usize,
    /// Also compare identical forms carrying different tags.
    #[arg(long)]
    allow_conversion: bool,
    /// Fold forms to lower case while reading.
    #[arg(long)]
    lowercase: bool,
    /// Worker threads; output does not depend on this.
    #[arg(long, value_parser = positive)]
    jobs: Option<usize>,
    /// Write the strategy table here.
    #[arg(long)]
    out_strategies: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct LearnArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct GenerationArgs {
    /// Skip creations whose category already exists in the source's paradigm.
    #[arg(long)]
    blocking: bool,
    /// Rounds of generation; new words feed the next round.
    #[arg(long, default_value_t = 1, value_parser = positive)]
    cycles: usize,
    /// Reuse the first round's strategies instead of relearning them.
    #[arg(long)]
    reapply_only: bool,
    /// Write new words here (default: standard output for `generate`).
    #[arg(long)]
    out_words: Option<PathBuf>,
    /// Write blocked words here.
    #[arg(long)]
    out_blocked: Option<PathBuf>,
    /// Write the run report here.
    #[arg(long)]
    out_report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    generation: GenerationArgs,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    generation: GenerationArgs,
    /// Reference list, one form (or `form,TAG`) per line.
    #[arg(long)]
    reference: PathBuf,
    /// Require tags to match as well as forms.
    #[arg(long)]
    match_tags: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON document.
    #[value(alias = "structured")]
    Json,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl CommonArgs {
    fn compare_config(&self) -> CompareConfig {
        CompareConfig {
            min_anchor: self.min_anchor,
            min_word_len: self.min_word_len,
            allow_conversion: self.allow_conversion,
            lowercase: self.lowercase,
        }
    }

    fn parse_options(&self) -> ParseOptions {
        ParseOptions {
            lowercase: self.lowercase,
        }
    }
}

impl GenerationArgs {
    fn options(&self) -> GenerationOptions {
        GenerationOptions {
            blocking: self.blocking,
            cycles: self.cycles,
            reapply_only: self.reapply_only,
        }
    }
}

/// Machine-readable run summary.
#[derive(Debug, Serialize)]
struct RunReport<'a> {
    command: &'static str,
    lexicon_entries: usize,
    strategies: usize,
    cycles_run: usize,
    new_words: usize,
    blocked: usize,
    regenerated: usize,
    per_strategy: &'a BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<PrecisionSection<'a>>,
}

#[derive(Debug, Serialize)]
struct PrecisionSection<'a> {
    status: &'static str,
    #[serde(flatten)]
    report: &'a PrecisionReport,
}

impl RunReport<'_> {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lexicon entries: {}", self.lexicon_entries);
        let _ = writeln!(s, "strategies: {}", self.strategies);
        let _ = writeln!(s, "cycles run: {}", self.cycles_run);
        let _ = writeln!(s, "new words: {}", self.new_words);
        let _ = writeln!(s, "blocked: {}", self.blocked);
        let _ = writeln!(s, "regenerated: {}", self.regenerated);
        if let Some(p) = &self.precision {
            let r = p.report;
            match r.precision {
                Some(v) => {
                    let _ = writeln!(s, "precision: {v:.6} ({}/{})", r.attested, r.generated);
                }
                None => {
                    let _ = writeln!(s, "precision: undefined (no new words)");
                }
            }
            if !r.unattested_sample.is_empty() {
                let _ = writeln!(s, "unattested: {}", r.unattested_sample.join(", "));
            }
        }
        s
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_lexicon(common: &CommonArgs) -> Result<Lexicon, Failure> {
    let bytes = read_file(&common.lexicon)?;
    lexio::parse_lexicon_bytes(&bytes, &common.parse_options())
        .map_err(|e| Failure::Input(format!("{}: {e}", common.lexicon.display())))
}

fn load_reference(args: &EvalArgs) -> Result<Reference, Failure> {
    let bytes = read_file(&args.reference)?;
    let path = args.reference.display();
    let text = lexio::decode(&bytes).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let entries = lexio::parse_reference(text, &args.common.parse_options())
        .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok(Reference::from_entries(entries))
}

fn write_output(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn check_distinct<'a>(paths: impl IntoIterator<Item = &'a Path>) -> Result<(), Failure> {
    let mut seen: Vec<&Path> = Vec::new();
    for p in paths {
        if seen.contains(&p) {
            return Err(Failure::Usage(format!("path {} is used twice", p.display())));
        }
        seen.push(p);
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}"))),
    }
}

fn learn(args: &LearnArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let common = &args.common;
    check_distinct(
        std::iter::once(common.lexicon.as_path()).chain(common.out_strategies.as_deref()),
    )?;
    let lex = load_lexicon(common)?;
    let cfg = common.compare_config();
    let strategies = with_pool(common.jobs, || {
        extract_strategies(&crate::induction::accumulate(&lex, &cfg), common.min_support)
    })?;
    let table = strategy_table(&strategies, &lex) + "\n";
    match &common.out_strategies {
        Some(path) => write_output(path, &table),
        None => emit(out, &table),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn word_list(words: &[crate::lexio::TaggedWord]) -> String {
    let mut text = lexio::write_words(words);
    if !text.is_empty() {
        text.push('\n');
    }
    text
}

struct Generated {
    lex: Lexicon,
    run: PipelineRun,
}

fn run_generation(common: &CommonArgs, generation: &GenerationArgs) -> Result<Generated, Failure> {
    let lex = load_lexicon(common)?;
    let cfg = common.compare_config();
    let opts = generation.options();
    let run = with_pool(common.jobs, || run_pipeline(&lex, &cfg, &opts, common.min_support))?;
    if let Some(path) = &common.out_strategies {
        write_output(path, &(strategy_table(&run.strategies, &lex) + "\n"))?;
    }
    if let Some(path) = &generation.out_blocked {
        let blocked: Vec<_> = run.report.blocked.iter().map(|b| b.word.clone()).collect();
        write_output(path, &word_list(&blocked))?;
    }
    Ok(Generated { lex, run })
}

fn report<'a>(command: &'static str, g: &'a Generated, p: Option<&'a PrecisionReport>) -> RunReport<'a> {
    RunReport {
        command,
        lexicon_entries: g.lex.len(),
        strategies: g.run.strategies.len(),
        cycles_run: g.run.cycles_run,
        new_words: g.run.report.new_words.len(),
        blocked: g.run.report.blocked.len(),
        regenerated: g.run.report.regenerated_count,
        per_strategy: &g.run.report.per_strategy_counts,
        precision: p.map(|report| PrecisionSection {
            status: report.status(),
            report,
        }),
    }
}

fn output_paths<'a>(common: &'a CommonArgs, generation: &'a GenerationArgs) -> Vec<&'a Path> {
    std::iter::once(common.lexicon.as_path())
        .chain(common.out_strategies.as_deref())
        .chain(generation.out_words.as_deref())
        .chain(generation.out_blocked.as_deref())
        .chain(generation.out_report.as_deref())
        .collect()
}

fn generate(args: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    check_distinct(output_paths(&args.common, &args.generation))?;
    let g = run_generation(&args.common, &args.generation)?;
    let words = word_list(&g.run.report.new_words);
    match &args.generation.out_words {
        Some(path) => write_output(path, &words)?,
        None => emit(out, &words)?,
    }
    let rendered = report("generate", &g, None).render(args.common.format);
    match &args.generation.out_report {
        Some(path) => write_output(path, &rendered),
        None => emit(err, &rendered),
    }
}

fn eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut paths = output_paths(&args.common, &args.generation);
    paths.push(&args.reference);
    check_distinct(paths)?;
    let reference = load_reference(args)?;
    let g = run_generation(&args.common, &args.generation)?;
    if let Some(path) = &args.generation.out_words {
        write_output(path, &word_list(&g.run.report.new_words))?;
    }
    let mode = if args.match_tags {
        MatchMode::FormAndTag
    } else {
        MatchMode::FormOnly
    };
    let p = precision(&g.run.report.new_words, &reference, mode);
    let rendered = report("eval", &g, Some(&p)).render(args.common.format);
    match &args.generation.out_report {
        Some(path) => write_output(path, &rendered),
        None => emit(out, &rendered),
    }
}

/// Runs the CLI with explicit output streams and returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Learn(a) => learn(a, out),
        Command::Generate(a) => generate(a, out, err),
        Command::Eval(a) => eval(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
