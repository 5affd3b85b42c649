//! The `impactum` command line: `ingest`, `compute`, `compare`, `report`,
//! `synth` and `selftest`.
//!
//! Every command computes its outputs in memory, then writes them together
//! with `manifest.json` (input hashes and the effective configuration).
//! Exit codes: 0 success, 1 usage, 2 data error, 3 internal error. Errors
//! are reported on stderr as a single line `error[<kind>]: <message>`.
//! `IMPACTUM_THREADS` sets the worker count; outputs do not depend on it.

mod output;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::BufReader;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compare::{
    match_journals, JournalKeys, MatchedJournalSet, SourceTable, SubjectIndex, DEFAULT_CROSSWALK_THRESHOLD,
    DEFAULT_MIN_PUBLISHER_JOURNALS,
};
use crate::corpus::{Corpus, CorpusBuilder, CorpusConfig, DocType, IngestReport};
use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::indicators::{compute_indicators, compute_years, I3Offsets, IndicatorConfig, IndicatorTable, WindowPolicy};
use crate::io::{classifications_table, indicators_table, read_indicators, Format, Table};
use crate::percentile::{ClassWeights, Classified};
use crate::synth::{generate, CitationModel, GeneratorConfig, Oracle, OracleSettings};

pub use output::{read_input, sha256_hex, InputDigest, OutputSet, MANIFEST_FILE};
pub use report::{comparison_tables, CompareOptions};

pub const THREADS_ENV: &str = "IMPACTUM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "impactum", version, about = "Percentile-class journal indicators and their comparison")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ingest and validate a corpus; report counts.
    Ingest(IngestArgs),
    /// Compute indicators.csv for one or more years.
    Compute(ComputeArgs),
    /// Compare indicator tables across two years.
    Compare(CompareArgs),
    /// Compute two years from a corpus and run every comparison.
    Report(ReportArgs),
    /// Generate a synthetic corpus.
    Synth(SynthArgs),
    /// Check the engine against the brute-force oracle on built-in corpora.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub papers: PathBuf,
    #[arg(long)]
    pub journals: PathBuf,
    #[arg(long)]
    pub subjects: Option<PathBuf>,
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IndicatorArgs {
    /// Class weights for top 1%, top 10%, top 50% and the rest.
    #[arg(long, default_value = "100,10,2,0")]
    pub weights: String,
    /// Comma-separated document types ranked for I3.
    #[arg(long)]
    pub doc_types: Option<String>,
    /// I3 windows as `pub_from,pub_to,cite_from,cite_to` years back from Y.
    #[arg(long)]
    pub i3_offsets: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::Jsonl,
        }
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub indicators: IndicatorArgs,
    #[arg(long, conflicts_with = "years", required_unless_present = "years")]
    pub year: Option<i32>,
    /// Comma-separated indicator years.
    #[arg(long)]
    pub years: Option<String>,
    /// Also write the per-paper classification of each year.
    #[arg(long)]
    pub dump_classes: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ComparisonArgs {
    /// The two years to compare, `Y1,Y2`.
    #[arg(long)]
    pub years: String,
    #[arg(long, default_value_t = DEFAULT_CROSSWALK_THRESHOLD)]
    pub crosswalk_threshold: usize,
    #[arg(long, default_value_t = DEFAULT_MIN_PUBLISHER_JOURNALS)]
    pub min_publisher_journals: usize,
    /// Length of the top-subject lists per quartile.
    #[arg(long, default_value_t = 10)]
    pub top_subjects: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// An indicators.csv; repeat for several sources or years.
    #[arg(long = "indicators", required = true)]
    pub indicators: Vec<PathBuf>,
    /// Journal records used for ISSN/title matching and publishers.
    #[arg(long)]
    pub journals: Option<PathBuf>,
    #[arg(long, requires = "journals")]
    pub subjects: Option<PathBuf>,
    #[command(flatten)]
    pub comparison: ComparisonArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub indicators: IndicatorArgs,
    #[command(flatten)]
    pub comparison: ComparisonArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Lognormal,
    Powerlaw,
    Planted,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n_journals: u32,
    #[arg(long, default_value_t = 10_000)]
    pub n_papers: u32,
    #[arg(long, value_enum, default_value = "lognormal")]
    pub model: ModelArg,
    #[arg(long)]
    pub first_year: Option<i32>,
    #[arg(long)]
    pub last_year: Option<i32>,
    /// Share of papers without reference metadata (cited via edges.jsonl).
    #[arg(long)]
    pub bare_rate: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Where to write selftest.csv and the manifest; nothing is written
    /// without it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a successful command reports.
#[derive(Debug)]
pub struct Outcome {
    pub summary: String,
    pub code: i32,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

/// Exit code for an error: 1 for bad flags or configuration, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) => 1,
        _ => 2,
    }
}

fn kind_of(code: i32) -> &'static str {
    match code {
        1 => "usage",
        2 => "data",
        _ => "internal",
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Entry point for the binary: quiet panics, real arguments.
pub fn main() -> i32 {
    panic::set_hook(Box::new(|_| {}));
    main_with_args(std::env::args_os())
}

/// Parses `args`, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    eprintln!("error[usage]: {}", one_line(first.trim_start_matches("error: ")));
                    1
                }
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error[usage]: {}", one_line(&e.to_string()));
            return 1;
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| pool.install(|| run(cli.command)))) {
        Ok(Ok(outcome)) => {
            println!("{}", outcome.summary);
            outcome.code
        }
        Ok(Err(e)) => {
            let code = exit_code(&e);
            eprintln!("error[{}]: {}", kind_of(code), one_line(&e.to_string()));
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            eprintln!("error[internal]: {}", one_line(&msg));
            3
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::InvalidConfig(e.to_string()))
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Ingest(a) => ingest(a),
        Command::Compute(a) => compute(a),
        Command::Compare(a) => compare(a),
        Command::Report(a) => report(a),
        Command::Synth(a) => synth(a),
        Command::Selftest(a) => selftest(a),
    }
}

fn parse_years(raw: &str) -> Result<Vec<i32>> {
    let years: Vec<i32> = raw
        .split(',')
        .map(|s| s.trim().parse::<i32>().map_err(|_| usage(format!("bad year `{s}` in `{raw}`"))))
        .collect::<Result<_>>()?;
    if years.is_empty() {
        return Err(usage("no years given"));
    }
    let (lo, hi) = (CorpusConfig::default().min_year, CorpusConfig::default().max_year);
    if let Some(y) = years.iter().find(|y| !(lo..=hi).contains(*y)) {
        return Err(usage(format!("year {y} outside {lo}..={hi}")));
    }
    Ok(years)
}

fn parse_pair(raw: &str) -> Result<(i32, i32)> {
    match parse_years(raw)?.as_slice() {
        [a, b] if a != b => Ok((*a, *b)),
        _ => Err(usage(format!("--years needs two distinct years `Y1,Y2`, got `{raw}`"))),
    }
}

fn indicator_config(a: &IndicatorArgs) -> Result<IndicatorConfig> {
    let weights: ClassWeights = a.weights.parse().map_err(|e: Error| usage(e.to_string()))?;
    let doc_types = match &a.doc_types {
        None => DocType::i3_default(),
        Some(list) => list
            .split(',')
            .map(|t| DocType::parse(t).ok_or_else(|| usage(format!("unknown document type `{}`", t.trim()))))
            .collect::<Result<BTreeSet<_>>>()?,
    };
    let i3_offsets = match &a.i3_offsets {
        None => I3Offsets::default(),
        Some(raw) => {
            let v: Vec<i32> = raw
                .split(',')
                .map(|s| s.trim().parse::<i32>().map_err(|_| usage(format!("bad --i3-offsets `{raw}`"))))
                .collect::<Result<_>>()?;
            let [pub_from, pub_to, cite_from, cite_to] = v[..] else {
                return Err(usage(format!("--i3-offsets needs four values, got `{raw}`")));
            };
            let o = I3Offsets { pub_from, pub_to, cite_from, cite_to };
            WindowPolicy::with_i3_offsets(2000, o).map_err(|e| usage(e.to_string()))?;
            o
        }
    };
    Ok(IndicatorConfig { weights, doc_types, i3_offsets })
}

fn config_json(c: &IndicatorConfig) -> Value {
    json!({
        "weights": c.weights.0,
        "doc_types": c.doc_types.iter().map(|d| d.as_str()).collect::<Vec<_>>(),
        "i3_offsets": [c.i3_offsets.pub_from, c.i3_offsets.pub_to, c.i3_offsets.cite_from, c.i3_offsets.cite_to],
    })
}

fn format_name(f: Format) -> &'static str {
    f.extension()
}

struct Loaded {
    corpus: Corpus,
    reports: Vec<(&'static str, IngestReport)>,
    digests: Vec<InputDigest>,
}

fn load_corpus(a: &CorpusArgs) -> Result<Loaded> {
    let mut digests = Vec::new();
    let mut reports = Vec::new();
    let mut b = CorpusBuilder::new(CorpusConfig::default());
    let bytes = read_input("journals", &a.journals, &mut digests)?;
    reports.push(("journals", b.ingest_journals(BufReader::new(&bytes[..]))?));
    let bytes = read_input("papers", &a.papers, &mut digests)?;
    reports.push(("papers", b.ingest_papers(BufReader::new(&bytes[..]))?));
    if let Some(p) = &a.subjects {
        let bytes = read_input("subjects", p, &mut digests)?;
        reports.push(("subjects", b.ingest_subjects(&bytes[..])?));
    }
    if let Some(p) = &a.edges {
        let bytes = read_input("edges", p, &mut digests)?;
        reports.push(("edges", b.ingest_edges(BufReader::new(&bytes[..]))?));
    }
    Ok(Loaded { corpus: b.seal(), reports, digests })
}

fn ingest_table(reports: &[(&'static str, IngestReport)]) -> Table {
    let mut t = Table::new(
        "ingest_report",
        &["file", "records_read", "accepted", "duplicates", "conflicts", "malformed", "unknown_doc_types", "dropped_keys"],
    );
    for (name, r) in reports {
        t.push(vec![
            name.to_string(),
            r.records_read.to_string(),
            r.records_accepted.to_string(),
            r.duplicates_dropped.to_string(),
            r.conflicts.to_string(),
            r.malformed.to_string(),
            r.unknown_doc_types.to_string(),
            r.dropped_keys.to_string(),
        ]);
    }
    t
}

fn corpus_notes(l: &Loaded, graph: &CitationGraph) -> Value {
    let samples: BTreeMap<&str, Vec<String>> = l
        .reports
        .iter()
        .map(|(n, r)| (*n, r.sample_errors.iter().map(|(line, msg)| format!("line {line}: {msg}")).collect()))
        .collect();
    json!({
        "papers": l.corpus.paper_count(),
        "journals": l.corpus.journals().len(),
        "validation": l.corpus.validate(),
        "resolution": graph.stats(),
        "sample_errors": samples,
    })
}

fn ingest(a: IngestArgs) -> Result<Outcome> {
    let loaded = load_corpus(&a.corpus)?;
    let graph = CitationGraph::build(&loaded.corpus);
    let format = a.out.format.into();
    let mut out = OutputSet::default();
    out.add_table(&ingest_table(&loaded.reports), format)?;
    let notes = corpus_notes(&loaded, &graph);
    out.commit(&a.out.out, "ingest", json!({ "format": format_name(format) }), &loaded.digests, notes)?;
    Ok(Outcome {
        summary: format!(
            "ingested {} papers, {} journals, {} edges into {}",
            loaded.corpus.paper_count(),
            loaded.corpus.journals().len(),
            graph.edge_count(),
            a.out.out.display()
        ),
        code: 0,
    })
}

fn asymmetry_table(t: &IndicatorTable) -> Table {
    let mut out = Table::new("asymmetries", &["journal_id", "year", "jif_numerator"]);
    for f in &t.asymmetries {
        out.push(vec![f.journal_id.clone(), f.year.to_string(), f.numerator.to_string()]);
    }
    out
}

fn compute(a: ComputeArgs) -> Result<Outcome> {
    let config = indicator_config(&a.indicators)?;
    let mut years = match (a.year, &a.years) {
        (Some(y), _) => parse_years(&y.to_string())?,
        (None, Some(raw)) => parse_years(raw)?,
        (None, None) => return Err(usage("--year or --years is required")),
    };
    years.sort_unstable();
    years.dedup();
    let loaded = load_corpus(&a.corpus)?;
    let graph = CitationGraph::build(&loaded.corpus);
    let table = compute_years(&graph, &years, &config)?;
    let format = a.out.format.into();
    let mut out = OutputSet::default();
    out.add_table(&indicators_table(&table), format)?;
    out.add_table(&asymmetry_table(&table), format)?;
    if a.dump_classes {
        for &y in &years {
            let policy = WindowPolicy::with_i3_offsets(y, config.i3_offsets)?;
            let pub_years = policy.i3_pub.years().collect();
            let classified = Classified::compute(&graph, &pub_years, &config.doc_types, &policy.i3_cite, &config.weights)?;
            out.add_table(&classifications_table(&format!("classes_{y}"), &graph, &classified), format)?;
        }
    }
    let mut cfg = config_json(&config);
    cfg["years"] = json!(years);
    cfg["format"] = json!(format_name(format));
    let notes = corpus_notes(&loaded, &graph);
    out.commit(&a.out.out, "compute", cfg, &loaded.digests, notes)?;
    Ok(Outcome {
        summary: format!("computed {} rows for {} year(s) into {}", table.rows.len(), years.len(), a.out.out.display()),
        code: 0,
    })
}

fn compare_options(c: &ComparisonArgs) -> Result<CompareOptions> {
    Ok(CompareOptions {
        years: parse_pair(&c.years)?,
        crosswalk_threshold: c.crosswalk_threshold,
        min_publisher_journals: c.min_publisher_journals,
        top_subjects: c.top_subjects,
    })
}

fn options_json(o: &CompareOptions) -> Value {
    json!({
        "years": [o.years.0, o.years.1],
        "crosswalk_threshold": o.crosswalk_threshold,
        "min_publisher_journals": o.min_publisher_journals,
        "top_subjects": o.top_subjects,
    })
}

fn keys_of(corpus: &Corpus) -> Vec<JournalKeys> {
    corpus
        .journals()
        .map(|j| JournalKeys {
            journal_id: j.id.clone(),
            issn: j.issn.iter().map(|i| i.as_str().to_string()).collect(),
            eissn: j.eissn.iter().map(|i| i.as_str().to_string()).collect(),
            title: j.title.clone(),
            publisher: j.publisher_name.clone().or_else(|| j.publisher_id.clone()),
        })
        .collect()
}

fn compare(a: CompareArgs) -> Result<Outcome> {
    let opts = compare_options(&a.comparison)?;
    let mut digests = Vec::new();
    let mut meta = None;
    if let Some(j) = &a.journals {
        let mut b = CorpusBuilder::new(CorpusConfig::default());
        let bytes = read_input("journals", j, &mut digests)?;
        b.ingest_journals(BufReader::new(&bytes[..]))?;
        if let Some(s) = &a.subjects {
            let bytes = read_input("subjects", s, &mut digests)?;
            b.ingest_subjects(&bytes[..])?;
        }
        meta = Some(b.seal());
    }
    let mut sources = Vec::new();
    for p in &a.indicators {
        let bytes = read_input("indicators", p, &mut digests)?;
        let table = read_indicators(&bytes[..])?;
        let keys = meta.as_ref().map(keys_of).unwrap_or_default();
        let keys: Vec<JournalKeys> = {
            let ids: BTreeSet<&str> = table.rows.iter().map(|r| r.journal_id.as_str()).collect();
            keys.into_iter().filter(|k| ids.contains(k.journal_id.as_str())).collect()
        };
        sources.push(SourceTable::with_keys(&p.display().to_string(), keys, &table));
    }
    let matched = match_journals(sources);
    let index = match (&meta, &a.subjects) {
        (Some(c), Some(_)) => Some(SubjectIndex::build(c.subjects(), &matched, 0)),
        _ => None,
    };
    write_comparison(&a.out, "compare", &matched, index.as_ref(), &opts, &digests, OutputSet::default(), json!({}))
}

#[allow(clippy::too_many_arguments)]
fn write_comparison(
    out_args: &OutArgs,
    command: &str,
    matched: &MatchedJournalSet,
    index: Option<&SubjectIndex>,
    opts: &CompareOptions,
    digests: &[InputDigest],
    mut out: OutputSet,
    extra_config: Value,
) -> Result<Outcome> {
    let format = out_args.format.into();
    let (tables, notes) = comparison_tables(matched, index, opts)?;
    for t in &tables {
        out.add_table(t, format)?;
    }
    let mut cfg = options_json(opts);
    cfg["format"] = json!(format_name(format));
    if let Value::Object(extra) = extra_config {
        for (k, v) in extra {
            cfg[k] = v;
        }
    }
    let n = out.names().count();
    out.commit(&out_args.out, command, cfg, digests, notes)?;
    Ok(Outcome {
        summary: format!(
            "compared {} matched journals ({} vs {}); wrote {} files to {}",
            matched.entries.len(),
            opts.years.0,
            opts.years.1,
            n + 1,
            out_args.out.display()
        ),
        code: 0,
    })
}

fn report(a: ReportArgs) -> Result<Outcome> {
    let config = indicator_config(&a.indicators)?;
    let opts = compare_options(&a.comparison)?;
    let loaded = load_corpus(&a.corpus)?;
    let graph = CitationGraph::build(&loaded.corpus);
    let mut years = vec![opts.years.0, opts.years.1];
    years.sort_unstable();
    let table = compute_years(&graph, &years, &config)?;
    let format = a.out.format.into();
    let mut out = OutputSet::default();
    out.add_table(&indicators_table(&table), format)?;
    out.add_table(&asymmetry_table(&table), format)?;
    let matched = match_journals(vec![SourceTable::from_corpus("corpus", &loaded.corpus, &table)]);
    let index =
        (!loaded.corpus.subjects().is_empty()).then(|| SubjectIndex::build(loaded.corpus.subjects(), &matched, 0));
    write_comparison(&a.out, "report", &matched, index.as_ref(), &opts, &loaded.digests, out, config_json(&config))
}

fn synth(a: SynthArgs) -> Result<Outcome> {
    let mut config = match a.model {
        ModelArg::Lognormal => GeneratorConfig::with_size(a.seed, a.n_journals, a.n_papers),
        ModelArg::Powerlaw => GeneratorConfig {
            citation_model: CitationModel::PowerLaw { alpha: 2.0 },
            ..GeneratorConfig::with_size(a.seed, a.n_journals, a.n_papers)
        },
        ModelArg::Planted => GeneratorConfig::planted(a.seed, a.n_journals, a.n_papers),
    };
    if let Some(y) = a.first_year {
        config.first_year = y;
    }
    if let Some(y) = a.last_year {
        config.last_year = y;
    }
    if let Some(r) = a.bare_rate {
        config.references.bare_rate = r;
    }
    config.validate().map_err(|e| usage(e.to_string()))?;
    let corpus = generate(&config)?;
    let mut out = OutputSet::default();
    for (name, bytes) in corpus.render()? {
        out.add(name, bytes);
    }
    let notes = json!({
        "papers": corpus.papers.len(),
        "journals": corpus.journals.len(),
        "edges": corpus.edges.len(),
        "prng": "chacha8",
    });
    out.commit(&a.out, "synth", serde_json::to_value(&config)?, &[], notes)?;
    Ok(Outcome {
        summary: format!(
            "generated {} papers in {} journals (seed {}) into {}",
            corpus.papers.len(),
            corpus.journals.len(),
            a.seed,
            a.out.display()
        ),
        code: 0,
    })
}

/// Relative agreement used by the self-test and the acceptance suite.
pub fn close(a: Option<f64>, b: Option<f64>, rel: f64) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x == y || (x - y).abs() <= rel * x.abs().max(y.abs()),
        _ => false,
    }
}

fn selftest(a: SelftestArgs) -> Result<Outcome> {
    let mut lognormal = GeneratorConfig::with_size(a.seed, 30, 4000);
    lognormal.references.bare_rate = 0.02;
    let planted = GeneratorConfig::planted(a.seed.wrapping_add(1), 40, 6000);
    let mut t = Table::new("selftest", &["corpus", "year", "journals", "mismatches"]);
    let mut failures = 0usize;
    for (name, cfg) in [("lognormal", lognormal), ("planted", planted)] {
        let synth = generate(&cfg)?;
        let (corpus, _) = synth.load()?;
        let graph = CitationGraph::build(&corpus);
        let oracle = Oracle::from_synth(&synth, OracleSettings::default())?;
        for year in 2021..=2024 {
            let table = compute_indicators(&graph, year, &IndicatorConfig::default())?;
            let expected = oracle.year(year);
            let mut bad = 0usize;
            for row in &table.rows {
                let ok = expected.get(&row.journal_id).is_some_and(|o| {
                    o.i3 == row.i3
                        && o.n_pubs == row.n_pubs
                        && close(o.i3_n, row.i3_n, 1e-9)
                        && close(o.jif, row.jif, 1e-9)
                        && close(o.citescore, row.citescore, 1e-9)
                });
                bad += usize::from(!ok);
            }
            bad += expected.len().abs_diff(table.rows.len());
            failures += bad;
            t.push(vec![name.into(), year.to_string(), table.rows.len().to_string(), bad.to_string()]);
        }
    }
    if let Some(dir) = &a.out {
        let mut out = OutputSet::default();
        out.add_table(&t, Format::Csv)?;
        out.commit(dir, "selftest", json!({ "seed": a.seed }), &[], json!({ "mismatches": failures }))?;
    }
    Ok(if failures == 0 {
        Outcome { summary: format!("selftest ok: engine matches oracle on {} corpus-years", t.rows.len()), code: 0 }
    } else {
        Outcome { summary: format!("selftest FAILED: {failures} journal rows disagree with the oracle"), code: 3 }
    })
}

/// Runs a command with explicit arguments inside a pool of `threads`
/// workers; used by tests that compare runs.
pub fn run_with_threads<I, T>(args: I, threads: usize) -> Result<Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| usage(one_line(&e.to_string())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| run(cli.command))
}

/// Lists the files of a finished run, sorted; for tests and examples.
pub fn list_outputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    v.sort();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn year_parsing() {
        assert_eq!(parse_pair("2023,2024").unwrap(), (2023, 2024));
        assert!(parse_pair("2024").is_err());
        assert!(parse_pair("2024,2024").is_err());
        assert!(parse_years("x").is_err());
        assert!(parse_years("1066").is_err());
    }

    #[test]
    fn indicator_flags() {
        let a = IndicatorArgs { weights: "100,10,2,1".into(), doc_types: Some("research_article, letter".into()), i3_offsets: None };
        let c = indicator_config(&a).unwrap();
        assert_eq!(c.weights.0, [100, 10, 2, 1]);
        assert_eq!(c.doc_types.len(), 2);
        let bad = IndicatorArgs { weights: "1,2,3,4".into(), doc_types: None, i3_offsets: None };
        assert_eq!(exit_code(&indicator_config(&bad).unwrap_err()), 1);
        let bad = IndicatorArgs { weights: "100,10,2,0".into(), doc_types: None, i3_offsets: Some("1,2,3".into()) };
        assert!(indicator_config(&bad).is_err());
    }

    #[test]
    fn usage_and_help_codes() {
        assert_eq!(main_with_args(["impactum", "--help"]), 0);
        assert_eq!(main_with_args(["impactum", "frobnicate"]), 1);
        assert_eq!(main_with_args(["impactum", "compute", "--year", "2024"]), 1);
    }

    #[test]
    fn missing_input_is_a_data_error() {
        let dir = tempfile::tempdir().unwrap();
        let code = main_with_args([
            "impactum",
            "compute",
            "--papers",
            "/nonexistent/papers.jsonl",
            "--journals",
            "/nonexistent/journals.jsonl",
            "--year",
            "2024",
            "--out",
            dir.path().join("o").to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
        assert!(!dir.path().join("o").exists());
    }
}
