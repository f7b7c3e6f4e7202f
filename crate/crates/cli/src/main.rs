//! `charlev` — exact character tables and p-rationality analysis for finite
//! permutation groups.
//!
//! Subcommands:
//!
//! * `table`       — compute and print one character table
//! * `levels`      — conductor / p-rationality level data for one group
//! * `verify`      — run the registered checks over a group or a corpus
//! * `corpus list` — show the groups a corpus provides
//!
//! Reports are JSON by default (`--format md` renders a human-readable
//! summary); identical inputs always produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use charlev::arith;
use charlev::chartab::CharacterTable;
use charlev::classes::ClassData;
use charlev::corpus::{self, GroupSpec};
use charlev::group::PermGroup;
use charlev::rationality;
use charlev::verify::{
    self, CheckResult, CheckStatus, GroupContext, GroupMeta, VerificationReport,
};

/// Largest group order admitted into a corpus run by default.
const DEFAULT_CORPUS_MAX_ORDER: u64 = 2016;
/// Default element-enumeration cap for a single explicitly named group.
const SINGLE_GROUP_MAX_ORDER: u64 = 100_000;
/// Largest class count for which a character table is computed.
const MAX_CLASSES: usize = 30;

#[derive(Parser)]
#[command(
    name = "charlev",
    version,
    about = "Exact character tables and p-rationality analysis for finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and print the character table of a group
    Table(TableArgs),
    /// Conductors and p-rationality levels of the irreducible characters
    Levels(LevelsArgs),
    /// Run the verification checks over a group or a corpus
    Verify(VerifyArgs),
    /// Inspect the group corpus
    Corpus(CorpusCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Machine-readable JSON
    Json,
    /// Human-readable markdown
    Md,
}

#[derive(Args)]
struct TableArgs {
    /// Group: builtin name (S4), family spec (psl2:8, dihedral(12)), or a
    /// JSON group file
    #[arg(long)]
    group: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Largest admissible group order
    #[arg(long, default_value_t = SINGLE_GROUP_MAX_ORDER)]
    max_order: u64,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LevelsArgs {
    /// Group: builtin name (S4), family spec (psl2:8, dihedral(12)), or a
    /// JSON group file
    #[arg(long)]
    group: String,
    /// Prime to analyse, or "all" for every prime dividing the group order
    #[arg(short = 'p', long = "prime", default_value = "all")]
    prime: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest admissible group order
    #[arg(long, default_value_t = SINGLE_GROUP_MAX_ORDER)]
    max_order: u64,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify the whole corpus (the default when --group is absent)
    #[arg(long, conflicts_with = "group")]
    all: bool,
    /// Verify a single group instead of the corpus
    #[arg(long)]
    group: Option<String>,
    /// Corpus source: "builtin" or a directory of group JSON files
    #[arg(long, default_value = "builtin")]
    corpus: String,
    /// Prime to test, or "all" for every prime dividing each group order
    #[arg(short = 'p', long = "prime", default_value = "all")]
    prime: String,
    /// Skip groups with order above this bound
    #[arg(long, default_value_t = DEFAULT_CORPUS_MAX_ORDER)]
    max_order: u64,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusCmd {
    #[command(subcommand)]
    action: CorpusAction,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the groups in the corpus
    List(CorpusListArgs),
}

#[derive(Args)]
struct CorpusListArgs {
    /// Corpus source: "builtin" or a directory of group JSON files
    #[arg(long, default_value = "builtin")]
    corpus: String,
    /// Skip groups with order above this bound
    #[arg(long, default_value_t = DEFAULT_CORPUS_MAX_ORDER)]
    max_order: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Table(args) => {
            cmd_table(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Levels(args) => {
            cmd_levels(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => cmd_verify(args),
        Command::Corpus(cmd) => match cmd.action {
            CorpusAction::List(args) => {
                cmd_corpus_list(args)?;
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

/// Resolve a `--group` argument: an existing file (or anything ending in
/// `.json`) is parsed as a group file, everything else goes through the
/// spec grammar (builtin names, `family:params`, `family(args)`).
fn resolve_group(arg: &str) -> Result<GroupSpec> {
    let path = Path::new(arg);
    if path.is_file() || arg.ends_with(".json") {
        return corpus::parse_group_file(path)
            .with_context(|| format!("reading group file `{arg}`"));
    }
    corpus::parse_spec(arg).with_context(|| format!("parsing group spec `{arg}`"))
}

enum PrimeSel {
    All,
    One(u64),
}

fn parse_prime(s: &str) -> Result<PrimeSel> {
    if s == "all" {
        return Ok(PrimeSel::All);
    }
    let p: u64 = s
        .parse()
        .with_context(|| format!("-p expects a prime number or \"all\", got `{s}`"))?;
    if !arith::is_prime(p) {
        bail!("-p expects a prime number or \"all\", got {p}");
    }
    Ok(PrimeSel::One(p))
}

fn primes_for(order: u64, sel: &PrimeSel) -> Vec<u64> {
    match sel {
        PrimeSel::All => arith::prime_divisors(order),
        PrimeSel::One(p) => vec![*p],
    }
}

/// Load and build a corpus, dropping groups above the order bound.
fn load_corpus(source: &str, max_order: u64) -> Result<Vec<(GroupSpec, PermGroup)>> {
    let specs = if source == "builtin" {
        corpus::builtin_corpus()
    } else {
        let dir = Path::new(source);
        if !dir.is_dir() {
            bail!(
                "--corpus must be \"builtin\" or a directory of group JSON files; \
                 `{source}` is neither"
            );
        }
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .with_context(|| format!("reading corpus directory `{source}`"))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        let mut specs = Vec::with_capacity(paths.len());
        for path in &paths {
            specs.push(
                corpus::parse_group_file(path)
                    .with_context(|| format!("reading group file `{}`", path.display()))?,
            );
        }
        specs
    };
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let group = spec
            .build()
            .with_context(|| format!("building group `{}`", spec.name))?;
        if group.order() <= max_order {
            out.push((spec, group));
        }
    }
    Ok(out)
}

/// Build the character table of one explicitly requested group.
fn single_table(spec: &GroupSpec, max_order: u64) -> Result<CharacterTable> {
    let group = spec
        .build()
        .with_context(|| format!("building group `{}`", spec.name))?;
    if group.order() > max_order {
        bail!(
            "group `{}` has order {}, above --max-order {} (raise the flag to proceed)",
            spec.name,
            group.order(),
            max_order
        );
    }
    let classes = Arc::new(
        ClassData::compute(&group, max_order)
            .with_context(|| format!("enumerating classes of `{}`", spec.name))?,
    );
    if classes.len() > MAX_CLASSES {
        bail!(
            "group `{}` has {} conjugacy classes, above the table cap of {MAX_CLASSES}",
            spec.name,
            classes.len()
        );
    }
    CharacterTable::compute(classes)
        .with_context(|| format!("computing the character table of `{}`", spec.name))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing `{}`", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// table

fn cmd_table(args: TableArgs) -> Result<()> {
    let spec = resolve_group(&args.group)?;
    let table = single_table(&spec, args.max_order)?;
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table_json(&spec, &table))?;
            s.push('\n');
            s
        }
        Format::Md => table_markdown(&spec, &table),
    };
    emit(args.out.as_deref(), &text)
}

fn table_json(spec: &GroupSpec, table: &CharacterTable) -> serde_json::Value {
    let classes = table.classes();
    let class_rows: Vec<serde_json::Value> = (0..classes.len())
        .map(|j| {
            json!({
                "index": j + 1,
                "size": classes.size(j),
                "element_order": classes.element_order(j),
                "representative": classes.representative(j).to_string(),
            })
        })
        .collect();
    let char_rows: Vec<serde_json::Value> = table
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            json!({
                "index": i + 1,
                "degree": chi.degree(),
                "values": chi.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "name": spec.name,
        "order": classes.group().order(),
        "degree": classes.group().degree(),
        "num_classes": classes.len(),
        "exponent": classes.exponent(),
        "classes": class_rows,
        "irreducibles": char_rows,
    })
}

fn md_row(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

fn md_separator(n: usize) -> String {
    format!("|{}\n", " --- |".repeat(n))
}

fn table_markdown(spec: &GroupSpec, table: &CharacterTable) -> String {
    let classes = table.classes();
    let k = classes.len();
    let mut s = String::new();
    let _ = writeln!(s, "# Character table of {}", spec.name);
    let _ = writeln!(s);
    let _ = writeln!(s, "- order: {}", classes.group().order());
    let _ = writeln!(s, "- degree: {}", classes.group().degree());
    let _ = writeln!(s, "- classes: {k}");
    let _ = writeln!(s, "- exponent: {}", classes.exponent());
    let _ = writeln!(s);
    let mut header = vec![String::new()];
    header.extend((1..=k).map(|j| format!("C{j}")));
    s.push_str(&md_row(&header));
    s.push_str(&md_separator(k + 1));
    let mut size_row = vec!["size".to_string()];
    size_row.extend((0..k).map(|j| classes.size(j).to_string()));
    s.push_str(&md_row(&size_row));
    let mut order_row = vec!["element order".to_string()];
    order_row.extend((0..k).map(|j| classes.element_order(j).to_string()));
    s.push_str(&md_row(&order_row));
    let mut rep_row = vec!["representative".to_string()];
    rep_row.extend((0..k).map(|j| format!("`{}`", classes.representative(j))));
    s.push_str(&md_row(&rep_row));
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let mut row = vec![format!("X.{}", i + 1)];
        row.extend(chi.values().iter().map(|v| format!("`{v}`")));
        s.push_str(&md_row(&row));
    }
    s
}

// ---------------------------------------------------------------------------
// levels

fn cmd_levels(args: LevelsArgs) -> Result<()> {
    let sel = parse_prime(&args.prime)?;
    let spec = resolve_group(&args.group)?;
    let table = single_table(&spec, args.max_order)?;
    let classes = table.classes();
    let primes = primes_for(classes.group().order(), &sel);
    let histograms: Vec<rationality::LevelHistogram> =
        primes.iter().map(|&p| rationality::level_histogram(&table, p)).collect();
    let text = match args.format {
        Format::Json => {
            let characters: Vec<serde_json::Value> = table
                .irreducibles()
                .iter()
                .enumerate()
                .map(|(i, chi)| {
                    let levels: BTreeMap<u64, u32> = primes
                        .iter()
                        .map(|&p| (p, rationality::char_level(chi, p)))
                        .collect();
                    json!({
                        "index": i + 1,
                        "degree": chi.degree(),
                        "conductor": rationality::char_conductor(chi),
                        "levels": levels,
                    })
                })
                .collect();
            let value = json!({
                "group": spec.name,
                "order": classes.group().order(),
                "exponent": classes.exponent(),
                "histograms": histograms,
                "characters": characters,
            });
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            s
        }
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "# p-rationality levels of {}", spec.name);
            let _ = writeln!(s);
            let _ = writeln!(s, "- order: {}", classes.group().order());
            let _ = writeln!(s, "- exponent: {}", classes.exponent());
            for hist in &histograms {
                let _ = writeln!(s);
                let _ = writeln!(
                    s,
                    "## p = {} ({} characters of p'-degree)",
                    hist.prime, hist.total
                );
                let _ = writeln!(s);
                s.push_str(&md_row(&["level".to_string(), "count".to_string()]));
                s.push_str(&md_separator(2));
                for (level, count) in &hist.counts {
                    s.push_str(&md_row(&[level.to_string(), count.to_string()]));
                }
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let sel = parse_prime(&args.prime)?;
    let jobs: Vec<(GroupSpec, PermGroup)> = match &args.group {
        Some(arg) => {
            let spec = resolve_group(arg)?;
            let group = spec
                .build()
                .with_context(|| format!("building group `{}`", spec.name))?;
            if group.order() > args.max_order {
                bail!(
                    "group `{}` has order {}, above --max-order {} (raise the flag to proceed)",
                    spec.name,
                    group.order(),
                    args.max_order
                );
            }
            vec![(spec, group)]
        }
        None => load_corpus(&args.corpus, args.max_order)?,
    };
    if jobs.is_empty() {
        bail!("the corpus is empty after the --max-order {} filter", args.max_order);
    }
    // Fan (group, primes) jobs out to the pool; results are gathered in
    // input order and fully sorted inside the report, so the output is
    // byte-identical across runs.
    let outcomes: Result<Vec<(GroupMeta, Vec<CheckResult>)>> = jobs
        .par_iter()
        .map(|(spec, group)| {
            let ctx = GroupContext::new(&spec.name, group.clone(), args.max_order, MAX_CLASSES)
                .with_context(|| format!("preparing `{}`", spec.name))?;
            let primes = primes_for(group.order(), &sel);
            let results = verify::run_all(&ctx, &primes)
                .with_context(|| format!("verifying `{}`", spec.name))?;
            Ok((GroupMeta::of(&ctx), results))
        })
        .collect();
    let outcomes = outcomes?;
    let mut metas = Vec::with_capacity(outcomes.len());
    let mut results = Vec::new();
    for (meta, mut group_results) in outcomes {
        metas.push(meta);
        results.append(&mut group_results);
    }
    let report = VerificationReport::new(metas, results);
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Md => report_markdown(&report),
    };
    emit(args.out.as_deref(), &text)?;
    if let Some(path) = &args.out {
        println!(
            "report written to {} ({} pass, {} fail, {} not applicable)",
            path.display(),
            report.totals.pass,
            report.totals.fail,
            report.totals.not_applicable
        );
    }
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(f) = report.first_failure() {
            let witness = f
                .witnesses
                .first()
                .and_then(|w| serde_json::to_string(w).ok())
                .unwrap_or_default();
            eprintln!(
                "FAIL: group {} at p = {}: check `{}` {witness}",
                f.group, f.prime, f.check_id
            );
        }
        Ok(ExitCode::FAILURE)
    }
}

fn status_label(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "**FAIL**",
        CheckStatus::NotApplicable => "n/a",
    }
}

/// Render the level histogram from a check's details as `level:count`
/// pairs.
fn histogram_label(details: &serde_json::Value) -> String {
    details["histogram"]
        .as_object()
        .map(|counts| {
            counts
                .iter()
                .map(|(level, count)| format!("{level}:{count}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_else(|| "-".to_string())
}

fn report_markdown(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Verification report");
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{} groups, {} results: {} pass, {} fail, {} not applicable.",
        report.corpus.len(),
        report.results.len(),
        report.totals.pass,
        report.totals.fail,
        report.totals.not_applicable
    );
    let _ = writeln!(s);
    let _ = writeln!(s, "## Checks");
    let _ = writeln!(s);
    s.push_str(&md_row(&[
        "check".to_string(),
        "statement".to_string(),
        "proved".to_string(),
        "pass".to_string(),
        "fail".to_string(),
        "n/a".to_string(),
    ]));
    s.push_str(&md_separator(6));
    for info in &report.checks {
        let counts = report.summary.get(&info.id).copied().unwrap_or_default();
        s.push_str(&md_row(&[
            format!("`{}`", info.id),
            info.description.clone(),
            info.proved_for.clone(),
            counts.pass.to_string(),
            counts.fail.to_string(),
            counts.not_applicable.to_string(),
        ]));
    }
    // Per (group, prime) rows: indexed lookup of this group's results.
    let mut by_group: BTreeMap<&str, BTreeMap<u64, BTreeMap<&str, &CheckResult>>> =
        BTreeMap::new();
    for r in &report.results {
        by_group
            .entry(r.group.as_str())
            .or_default()
            .entry(r.prime)
            .or_default()
            .insert(r.check_id.as_str(), r);
    }
    let check_ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    for meta in &report.corpus {
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "## {} (order {}, {} classes, exponent {})",
            meta.name, meta.order, meta.num_classes, meta.exponent
        );
        let _ = writeln!(s);
        let Some(primes) = by_group.get(meta.name.as_str()) else {
            let _ = writeln!(s, "No primes tested.");
            continue;
        };
        let mut header = vec![
            "p".to_string(),
            "exp(P/P')".to_string(),
            "levels".to_string(),
        ];
        header.extend(check_ids.iter().map(|id| format!("`{id}`")));
        s.push_str(&md_row(&header));
        s.push_str(&md_separator(header.len()));
        for (p, by_check) in primes {
            let exp = by_check
                .get("lower-bound")
                .and_then(|r| r.details.get("sylow_abelianized_exponent"))
                .and_then(|v| v.as_u64())
                .map(|e| e.to_string())
                .unwrap_or_else(|| "-".to_string());
            let hist = by_check
                .get("continuity")
                .map(|r| histogram_label(&r.details))
                .unwrap_or_else(|| "-".to_string());
            let mut row = vec![p.to_string(), exp, hist];
            row.extend(check_ids.iter().map(|id| {
                by_check
                    .get(id)
                    .map(|r| status_label(r.status).to_string())
                    .unwrap_or_else(|| "-".to_string())
            }));
            s.push_str(&md_row(&row));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// corpus list

fn cmd_corpus_list(args: CorpusListArgs) -> Result<()> {
    let groups = load_corpus(&args.corpus, args.max_order)?;
    let text = match args.format {
        Format::Json => {
            let specs: Vec<&GroupSpec> = groups.iter().map(|(spec, _)| spec).collect();
            let mut s = serde_json::to_string_pretty(&specs)?;
            s.push('\n');
            s
        }
        Format::Md => {
            let mut s = String::new();
            let _ = writeln!(s, "# Corpus ({} groups)", groups.len());
            let _ = writeln!(s);
            s.push_str(&md_row(&[
                "name".to_string(),
                "order".to_string(),
                "degree".to_string(),
                "generators".to_string(),
            ]));
            s.push_str(&md_separator(4));
            for (spec, group) in &groups {
                s.push_str(&md_row(&[
                    spec.name.clone(),
                    group.order().to_string(),
                    spec.degree.to_string(),
                    spec.generators.len().to_string(),
                ]));
            }
            s
        }
    };
    emit(args.out.as_deref(), &text)
}
