//! Command-line front end.
//!
//! One binary, subcommand style: build indexes, score phrases, extract
//! phrase tables, classify review files, evaluate results, and manage the
//! query cache. Flags may also come from an optional `key=value` config
//! file; explicit flags win. Exit codes: 0 success, 2 usage error, 3 I/O
//! error, 4 backend or data error.

use std::collections::{BTreeSet, HashMap};
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    read_results_file, read_reviews_file, write_results, ClassifyError, Pipeline, ReviewText,
    TaggerMode,
};
use crate::eval::{build_report, render_text, EvalError, FallbackLabel};
use crate::extract::extract_phrases;
use crate::hits::{
    build_index, read_corpus_file, CachedBackend, FixtureBackend, HitBackend, HitIndex, HitsError,
    QueryCache, DEFAULT_WINDOW,
};
use crate::so::{SoConfig, SoError, SoEstimate, SoEstimator};
use crate::tag::{parse_pretagged, TagError, Tagger};

/// Parses argv, runs the selected subcommand, and returns the process exit
/// code. Diagnostics go to stderr as a single line.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Data(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Data(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

impl From<TagError> for CliError {
    fn from(e: TagError) -> CliError {
        match e {
            TagError::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<HitsError> for CliError {
    fn from(e: HitsError) -> CliError {
        match e {
            HitsError::Io(_) | HitsError::CacheIo(_) => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<SoError> for CliError {
    fn from(e: SoError) -> CliError {
        match e {
            SoError::Backend(inner) => inner.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> CliError {
        match e {
            ClassifyError::Io(_) => CliError::Io(e.to_string()),
            ClassifyError::Tag(inner) => inner.into(),
            ClassifyError::So(inner) => inner.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> CliError {
        CliError::Data(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "semorient",
    version,
    about = "Unsupervised review orientation: extract adjective/adverb phrases, \
             score them by proximity log-odds against reference words, and \
             classify reviews by the average score"
)]
struct Cli {
    /// Optional key=value config file supplying defaults for flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hit-index maintenance.
    Index {
        #[command(subcommand)]
        action: IndexCmd,
    },
    /// Score one two-word phrase and print the value (or SKIPPED) plus the
    /// four raw hit counts.
    So {
        /// The phrase, e.g. "online experience".
        phrase: String,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Print per-review tables of extracted phrases.
    Extract {
        /// Reviews file, JSON Lines.
        #[arg(long = "in", value_name = "REVIEWS")]
        input: Option<PathBuf>,
        #[command(flatten)]
        tagging: TaggerArgs,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Classify reviews and write JSON Lines results.
    Classify {
        /// Reviews file, JSON Lines.
        #[arg(long = "in", value_name = "REVIEWS")]
        input: Option<PathBuf>,
        /// Results file to write; "-" for stdout.
        #[arg(long, value_name = "RESULTS")]
        out: Option<PathBuf>,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        scoring: ScoringArgs,
        #[command(flatten)]
        tagging: TaggerArgs,
        /// Worker pool width; output order is input order regardless.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Score classification results against author labels.
    Evaluate {
        /// Results file written by `classify`.
        #[arg(long, value_name = "RESULTS")]
        results: Option<PathBuf>,
        /// The reviews file the results came from.
        #[arg(long, value_name = "REVIEWS")]
        reviews: Option<PathBuf>,
        /// Label assumed for undetermined reviews when scoring.
        #[arg(long, value_enum)]
        fallback: Option<FallbackArg>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Query-cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum IndexCmd {
    /// Tokenize a JSON Lines corpus and write the positional index.
    Build {
        #[arg(long, value_name = "CORPUS")]
        corpus: Option<PathBuf>,
        #[arg(long, value_name = "INDEX")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Print entry count and file size.
    Stats {
        #[arg(long, value_name = "CACHE")]
        cache: Option<PathBuf>,
    },
    /// Drop all cached query results.
    Clear {
        #[arg(long, value_name = "CACHE")]
        cache: Option<PathBuf>,
    },
}

/// Where hit counts come from. Exactly one source must be configured.
#[derive(Args)]
struct BackendArgs {
    /// Previously built index file.
    #[arg(long, value_name = "INDEX")]
    index: Option<PathBuf>,
    /// JSON Lines corpus to index on the fly.
    #[arg(long, value_name = "CORPUS")]
    corpus: Option<PathBuf>,
    /// JSON fixture of canned counts keyed by canonical query.
    #[arg(long, value_name = "FIXTURE")]
    fixture: Option<PathBuf>,
    /// Persistent query cache file.
    #[arg(long, value_name = "CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct ScoringArgs {
    /// Positive reference word.
    #[arg(long)]
    pos_ref: Option<String>,
    /// Negative reference word.
    #[arg(long)]
    neg_ref: Option<String>,
    /// Smoothing constant added to all four counts.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Skip a phrase when both NEAR counts fall below this.
    #[arg(long)]
    min_hits: Option<u64>,
    /// Proximity window in word positions.
    #[arg(long)]
    window: Option<u32>,
    /// Logarithm base: "e", "2", or any number above 1.
    #[arg(long)]
    log_base: Option<String>,
    /// Source label to exclude from all hit counting; repeatable.
    #[arg(long = "exclude", value_name = "SOURCE")]
    exclude: Vec<String>,
}

#[derive(Args)]
struct TaggerArgs {
    /// How raw review text is tagged.
    #[arg(long, value_enum)]
    tagger: Option<TaggerModeArg>,
    /// Lexicon file replacing the built-in one, surface<TAB>TAG per line.
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TaggerModeArg {
    Baseline,
    Pretagged,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FallbackArg {
    Recommended,
    NotRecommended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Config-file values; consulted for every flag left unset on the command
/// line, so flags always win.
struct Ctx {
    config: HashMap<String, String>,
}

impl Ctx {
    fn load(path: Option<&Path>) -> Result<Ctx, CliError> {
        let mut config = HashMap::new();
        if let Some(path) = path {
            let data = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("config {}: {e}", path.display())))?;
            for (idx, raw) in data.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    CliError::Usage(format!(
                        "config {} line {}: expected key=value",
                        path.display(),
                        idx + 1
                    ))
                })?;
                config.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Ctx { config })
    }

    fn string(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.config.get(key).cloned())
    }

    fn path(&self, flag: Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.or_else(|| self.config.get(key).map(PathBuf::from))
    }

    fn parse<V: FromStr>(&self, flag: Option<V>, key: &str) -> Result<Option<V>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => match self.config.get(key) {
                Some(raw) => raw.parse::<V>().map(Some).map_err(|_| {
                    CliError::Usage(format!("config key {key}: cannot parse {raw:?}"))
                }),
                None => Ok(None),
            },
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx::load(cli.config.as_deref())?;
    match cli.command {
        Command::Index { action } => match action {
            IndexCmd::Build { corpus, out } => cmd_index_build(&ctx, corpus, out),
        },
        Command::So {
            phrase,
            backend,
            scoring,
            format,
        } => cmd_so(&ctx, &phrase, backend, scoring, format),
        Command::Extract {
            input,
            tagging,
            format,
        } => cmd_extract(&ctx, input, tagging, format),
        Command::Classify {
            input,
            out,
            backend,
            scoring,
            tagging,
            jobs,
        } => cmd_classify(&ctx, input, out, backend, scoring, tagging, jobs),
        Command::Evaluate {
            results,
            reviews,
            fallback,
            format,
        } => cmd_evaluate(&ctx, results, reviews, fallback, format),
        Command::Cache { action } => match action {
            CacheCmd::Stats { cache } => cmd_cache_stats(&ctx, cache),
            CacheCmd::Clear { cache } => cmd_cache_clear(&ctx, cache),
        },
    }
}

fn require(path: Option<PathBuf>, what: &str) -> Result<PathBuf, CliError> {
    path.ok_or_else(|| CliError::Usage(format!("missing --{what}")))
}

fn output_format(ctx: &Ctx, flag: Option<OutputFormat>) -> Result<OutputFormat, CliError> {
    match ctx.string(flag.map(|f| format!("{f:?}").to_lowercase()), "format") {
        None => Ok(OutputFormat::Text),
        Some(s) => match s.as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Usage(format!(
                "format must be text or json, got {other:?}"
            ))),
        },
    }
}

fn scoring_config(ctx: &Ctx, args: ScoringArgs) -> Result<SoConfig, CliError> {
    let positive_ref = ctx
        .string(args.pos_ref, "pos-ref")
        .unwrap_or_else(|| "excellent".to_string())
        .to_lowercase();
    let negative_ref = ctx
        .string(args.neg_ref, "neg-ref")
        .unwrap_or_else(|| "poor".to_string())
        .to_lowercase();
    if positive_ref == negative_ref {
        return Err(CliError::Usage(
            "positive and negative reference words must differ".into(),
        ));
    }
    let epsilon = ctx.parse(args.epsilon, "epsilon")?.unwrap_or(0.01);
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(CliError::Usage(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let min_hits = ctx.parse(args.min_hits, "min-hits")?.unwrap_or(4);
    let window = ctx.parse(args.window, "window")?.unwrap_or(DEFAULT_WINDOW);
    if window == 0 {
        return Err(CliError::Usage("window must be at least 1".into()));
    }
    let log_base = parse_log_base(
        &ctx.string(args.log_base, "log-base")
            .unwrap_or_else(|| "e".to_string()),
    )?;
    let mut exclusions: BTreeSet<String> = args.exclude.into_iter().collect();
    if exclusions.is_empty() {
        if let Some(raw) = ctx.config.get("exclude") {
            exclusions = raw
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
        }
    }
    Ok(SoConfig {
        positive_ref,
        negative_ref,
        epsilon,
        min_hits,
        log_base,
        window,
        exclusions,
    })
}

fn parse_log_base(s: &str) -> Result<f64, CliError> {
    if s.eq_ignore_ascii_case("e") {
        return Ok(std::f64::consts::E);
    }
    let base: f64 = s
        .parse()
        .map_err(|_| CliError::Usage(format!("log base must be \"e\" or a number, got {s:?}")))?;
    if base > 1.0 {
        Ok(base)
    } else {
        Err(CliError::Usage(format!(
            "log base must exceed 1, got {base}"
        )))
    }
}

fn tagger_setup(ctx: &Ctx, args: TaggerArgs) -> Result<(Tagger, TaggerMode), CliError> {
    let mode = match ctx.string(
        args.tagger.map(|m| format!("{m:?}").to_lowercase()),
        "tagger",
    ) {
        None => TaggerMode::Baseline,
        Some(s) => match s.as_str() {
            "baseline" => TaggerMode::Baseline,
            "pretagged" => TaggerMode::Pretagged,
            other => {
                return Err(CliError::Usage(format!(
                    "tagger must be baseline or pretagged, got {other:?}"
                )))
            }
        },
    };
    let tagger = match ctx.path(args.lexicon, "lexicon") {
        Some(path) => Tagger::from_lexicon_file(&path)?,
        None => Tagger::with_default_lexicon(),
    };
    Ok((tagger, mode))
}

enum LoadedBackend {
    Index(HitIndex),
    Fixture(FixtureBackend),
}

impl LoadedBackend {
    fn as_backend(&self) -> &dyn HitBackend {
        match self {
            LoadedBackend::Index(i) => i,
            LoadedBackend::Fixture(f) => f,
        }
    }
}

/// Loads the configured count source. Exactly one of index, corpus, or
/// fixture must be set once flags and config are merged.
fn load_backend(ctx: &Ctx, args: &BackendArgs) -> Result<LoadedBackend, CliError> {
    let index = ctx.path(args.index.clone(), "index");
    let corpus = ctx.path(args.corpus.clone(), "corpus");
    let fixture = ctx.path(args.fixture.clone(), "fixture");
    let provided = [index.is_some(), corpus.is_some(), fixture.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if provided != 1 {
        return Err(CliError::Usage(
            "exactly one of --index, --corpus, or --fixture is required".into(),
        ));
    }
    if let Some(path) = index {
        return Ok(LoadedBackend::Index(HitIndex::load(&path)?));
    }
    if let Some(path) = corpus {
        let docs = read_corpus_file(&path)?;
        return Ok(LoadedBackend::Index(build_index(&docs)?));
    }
    Ok(LoadedBackend::Fixture(FixtureBackend::from_json_file(
        &fixture.expect("one source is set"),
    )?))
}

fn cmd_index_build(
    ctx: &Ctx,
    corpus: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let corpus = require(ctx.path(corpus, "corpus"), "corpus")?;
    let out = require(ctx.path(out, "out"), "out")?;
    let docs = read_corpus_file(&corpus)?;
    let index = build_index(&docs)?;
    index.save(&out)?;
    println!(
        "indexed {} documents, {} distinct words -> {}",
        index.doc_count(),
        index.vocab_size(),
        out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct SoOutput<'a> {
    phrase: &'a str,
    #[serde(flatten)]
    estimate: &'a SoEstimate,
}

fn cmd_so(
    ctx: &Ctx,
    phrase: &str,
    backend_args: BackendArgs,
    scoring: ScoringArgs,
    format: Option<OutputFormat>,
) -> Result<(), CliError> {
    let format = output_format(ctx, format)?;
    let words: Vec<&str> = phrase.split_whitespace().collect();
    let [word1, word2] = words.as_slice() else {
        return Err(CliError::Usage(format!(
            "phrase must be exactly two words, got {phrase:?}"
        )));
    };
    let cfg = scoring_config(ctx, scoring)?;
    let loaded = load_backend(ctx, &backend_args)?;
    let cache = match ctx.path(backend_args.cache.clone(), "cache") {
        Some(path) => Some(QueryCache::open(&path)?),
        None => None,
    };
    let cached = cache
        .as_ref()
        .map(|c| CachedBackend::new(c, loaded.as_backend()));
    let backend: &dyn HitBackend = match &cached {
        Some(c) => c,
        None => loaded.as_backend(),
    };
    let estimator = SoEstimator::new(backend, cfg);
    let estimate = estimator.estimate(word1, word2)?;
    let phrase_text = format!("{} {}", word1.to_lowercase(), word2.to_lowercase());
    match format {
        OutputFormat::Json => {
            println!(
                "{}",
                serde_json::to_string(&SoOutput {
                    phrase: &phrase_text,
                    estimate: &estimate,
                })
                .expect("estimate serializes")
            );
        }
        OutputFormat::Text => {
            match estimate.value() {
                Some(v) => println!("so({phrase_text}) = {v:.4}"),
                None => println!("so({phrase_text}) = SKIPPED"),
            }
            let c = estimate.counts;
            println!(
                "counts: near_pos={} near_neg={} ref_pos={} ref_neg={}",
                c.near_pos, c.near_neg, c.ref_pos, c.ref_neg
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ExtractOutput<'a> {
    id: &'a str,
    domain: &'a str,
    phrases: Vec<&'a crate::extract::CandidatePhrase>,
}

fn cmd_extract(
    ctx: &Ctx,
    input: Option<PathBuf>,
    tagging: TaggerArgs,
    format: Option<OutputFormat>,
) -> Result<(), CliError> {
    let format = output_format(ctx, format)?;
    let input = require(ctx.path(input, "in"), "in")?;
    let (tagger, mode) = tagger_setup(ctx, tagging)?;
    let reviews = read_reviews_file(&input)?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for review in &reviews {
        let tagged = match &review.text {
            ReviewText::Raw(text) => {
                if mode == TaggerMode::Pretagged {
                    return Err(ClassifyError::RawTextNotAllowed {
                        review_id: review.review_id.clone(),
                    }
                    .into());
                }
                tagger.tag_text(text)
            }
            ReviewText::Pretagged(line) => parse_pretagged(line)?,
        };
        let phrases = extract_phrases(&tagged);
        match format {
            OutputFormat::Json => {
                let record = ExtractOutput {
                    id: &review.review_id,
                    domain: &review.domain,
                    phrases: phrases.iter().collect(),
                };
                serde_json::to_writer(&mut out, &record)
                    .map_err(|e| CliError::Data(e.to_string()))?;
                writeln!(out)?;
            }
            OutputFormat::Text => {
                writeln!(out, "review {} ({})", review.review_id, review.domain)?;
                writeln!(
                    out,
                    "  {:<34} {:<10} {:>7} {:>9}",
                    "phrase", "tags", "pattern", "position"
                )?;
                for p in &phrases {
                    writeln!(
                        out,
                        "  {:<34} {:<10} {:>7} {:>9}",
                        p.text(),
                        format!("{} {}", p.tag1, p.tag2),
                        p.pattern.get(),
                        p.start_position
                    )?;
                }
                writeln!(out, "  {} phrases\n", phrases.len())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_classify(
    ctx: &Ctx,
    input: Option<PathBuf>,
    out: Option<PathBuf>,
    backend_args: BackendArgs,
    scoring: ScoringArgs,
    tagging: TaggerArgs,
    jobs: Option<usize>,
) -> Result<(), CliError> {
    let input = require(ctx.path(input, "in"), "in")?;
    let out_path = require(ctx.path(out, "out"), "out")?;
    let jobs = ctx.parse(jobs, "jobs")?.unwrap_or(1);
    let cfg = scoring_config(ctx, scoring)?;
    let (tagger, mode) = tagger_setup(ctx, tagging)?;
    let loaded = load_backend(ctx, &backend_args)?;
    // Always memoize: the reference totals alone make it worth it. A cache
    // path makes the memo persistent across runs.
    let cache = match ctx.path(backend_args.cache.clone(), "cache") {
        Some(path) => QueryCache::open(&path)?,
        None => QueryCache::in_memory(),
    };
    let cached = CachedBackend::new(&cache, loaded.as_backend());
    let pipeline = Pipeline::new(tagger, mode, SoEstimator::new(&cached, cfg));
    let reviews = read_reviews_file(&input)?;
    let results = pipeline.classify_batch(&reviews, jobs)?;
    if out_path.as_os_str() == "-" {
        let stdout = std::io::stdout();
        let mut w = BufWriter::new(stdout.lock());
        write_results(&mut w, &results)?;
        w.flush()?;
    } else {
        let mut w = BufWriter::new(File::create(&out_path)?);
        write_results(&mut w, &results)?;
        w.flush()?;
    }
    eprintln!(
        "classified {} reviews ({} queries cached)",
        results.len(),
        cache.len()
    );
    Ok(())
}

fn cmd_evaluate(
    ctx: &Ctx,
    results: Option<PathBuf>,
    reviews: Option<PathBuf>,
    fallback: Option<FallbackArg>,
    format: Option<OutputFormat>,
) -> Result<(), CliError> {
    let format = output_format(ctx, format)?;
    let results_path = require(ctx.path(results, "results"), "results")?;
    let reviews_path = require(ctx.path(reviews, "reviews"), "reviews")?;
    let fallback = match ctx.string(
        fallback.map(|f| {
            match f {
                FallbackArg::Recommended => "recommended",
                FallbackArg::NotRecommended => "not_recommended",
            }
            .to_string()
        }),
        "fallback",
    ) {
        None => FallbackLabel::Recommended,
        Some(s) => match s.as_str() {
            "recommended" => FallbackLabel::Recommended,
            "not_recommended" | "not-recommended" => FallbackLabel::NotRecommended,
            other => {
                return Err(CliError::Usage(format!(
                    "fallback must be recommended or not_recommended, got {other:?}"
                )))
            }
        },
    };
    let results = read_results_file(&results_path)?;
    let reviews = read_reviews_file(&reviews_path)?;
    let report = build_report(&reviews, &results, fallback)?;
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        OutputFormat::Text => print!("{}", render_text(&report)),
    }
    Ok(())
}

fn cmd_cache_stats(ctx: &Ctx, cache: Option<PathBuf>) -> Result<(), CliError> {
    let path = require(ctx.path(cache, "cache"), "cache")?;
    let cache = QueryCache::open(&path)?;
    let size = std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
    println!(
        "cache {}: {} entries, {} bytes",
        path.display(),
        cache.len(),
        size
    );
    Ok(())
}

fn cmd_cache_clear(ctx: &Ctx, cache: Option<PathBuf>) -> Result<(), CliError> {
    let path = require(ctx.path(cache, "cache"), "cache")?;
    let cache = QueryCache::open(&path)?;
    let before = cache.len();
    cache.clear()?;
    println!("cache {}: cleared {} entries", path.display(), before);
    Ok(())
}
