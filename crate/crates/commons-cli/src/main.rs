//! `commons` — command-line front end for the prompt-commons repository:
//! lifecycle, validation, governance actions, benchmarking, simulation,
//! and reporting.
//!
//! Exit codes: 0 success/accept, 1 operational error, 2 validation reject,
//! 3 governance transition refused.

mod lock;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commons_core::checklist::{validate, Severity};
use commons_core::clock::{Clock, SimClock, SystemClock};
use commons_core::config::{GovernanceConfig, GovernanceState, SanctionLevel};
use commons_core::error::CommonsError;
use commons_core::governance::{Engine, ReviewDecision};
use commons_core::metrics::{ci95, corpus_stats, likert_summary, summarize_outcomes};
use commons_core::prompt::Status;
use commons_core::rng::XorShift64Star;
use commons_core::sampler::{
    compose, parse_benchmark_items, parse_outcome_log, run_trial, select, Adapter, HttpAdapter,
    Method, StubAdapter,
};
use commons_core::simulator::{run_engine_stress, run_synthetic, SimConfig};
use commons_core::store::{parse_prompt_draft, QueryFilter, Store};

use lock::{LockMode, RepoLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Parser)]
#[command(name = "commons", about = "Community-governed prompt repository", version)]
struct Cli {
    /// Repository root.
    #[arg(long, global = true, env = "COMMONS_REPO", default_value = ".")]
    repo: PathBuf,
    /// Seed for all randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Simulated clock, epoch seconds; wall clock when omitted.
    #[arg(long, global = true)]
    at: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ActorArg {
    /// Acting contributor, maintainer, or organisation.
    #[arg(long, default_value = "anonymous")]
    actor: String,
}

#[derive(Subcommand)]
enum Command {
    /// Create a fresh repository.
    Init {
        #[arg(long, default_value = "open")]
        state: String,
    },
    /// Add or update a prompt from a front-matter file.
    Add {
        file: PathBuf,
        #[command(flatten)]
        actor: ActorArg,
    },
    /// Run the submission checklist on a prompt file.
    Validate { file: PathBuf },
    /// Move a draft prompt to proposed.
    Propose {
        id: String,
        #[command(flatten)]
        actor: ActorArg,
    },
    /// Merge a proposed prompt under the current governance state.
    Merge {
        id: String,
        #[command(flatten)]
        actor: ActorArg,
        #[arg(long, default_value = "merged after review")]
        rationale: String,
    },
    /// List prompts, optionally filtered.
    List {
        #[arg(long)]
        status: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        locale: Option<String>,
        #[arg(long)]
        claim: Option<String>,
    },
    /// Flag a merged prompt as harmful (opens an incident).
    Flag {
        id: String,
        #[command(flatten)]
        actor: ActorArg,
        #[arg(long)]
        rationale: String,
    },
    /// Resolve an incident.
    Review {
        incident: String,
        #[arg(long, value_enum)]
        decision: Decision,
        #[command(flatten)]
        actor: ActorArg,
        #[arg(long)]
        rationale: String,
    },
    /// Appeal a resolved incident (re-arms the SLA).
    Appeal {
        incident: String,
        #[command(flatten)]
        actor: ActorArg,
    },
    /// Apply (or lift) a graduated sanction against a contributor.
    Sanction {
        target: String,
        #[arg(long, conflicts_with = "lift")]
        level: Option<String>,
        /// Reset the target's sanction ladder.
        #[arg(long)]
        lift: bool,
        #[command(flatten)]
        actor: ActorArg,
        #[arg(long)]
        rationale: String,
    },
    /// Withdraw (or restore with --undo) a group's merged prompts.
    Strike {
        group: String,
        #[arg(long)]
        undo: bool,
        #[command(flatten)]
        actor: ActorArg,
        #[arg(long)]
        rationale: String,
    },
    /// List incidents past their SLA deadline.
    SlaReport,
    /// Select prompts with a method; optionally compose against an item.
    Sample {
        #[arg(long)]
        method: String,
        /// Ensemble size for M4.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Benchmark item file (line-delimited JSON).
        #[arg(long)]
        items: Option<PathBuf>,
        /// Item id within --items to compose against.
        #[arg(long)]
        item: Option<String>,
    },
    /// Summarize outcomes: replay a fixture log or run live trials.
    Bench {
        /// Fixture outcome log (`method,item_id,outcome` lines).
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Benchmark items for live trials.
        #[arg(long, requires = "adapter")]
        items: Option<PathBuf>,
        /// Adapter: `stub` or `http://host:port/path`.
        #[arg(long)]
        adapter: Option<String>,
        /// Methods for live trials.
        #[arg(long, value_delimiter = ',', default_value = "M0,M1,M2,M3,M4")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Run the synthetic moderation experiment or the engine stress test.
    Simulate {
        #[arg(long)]
        state: Option<String>,
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Drive the live governance engine instead of direct sampling.
        #[arg(long)]
        engine: bool,
        /// Also print raw remediation samples.
        #[arg(long)]
        raw: bool,
    },
    /// Corpus or satisfaction statistics.
    Stats {
        /// Directory of prompt files (defaults to the repository corpus).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Report per-prompt containment for these terms.
        #[arg(long)]
        term: Vec<String>,
        /// Satisfaction log (`method,group,score` lines).
        #[arg(long)]
        likert: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Decision {
    Remediate,
    Dismiss,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let clock: Box<dyn Clock> = match cli.at {
        Some(t) => Box::new(SimClock::new(t)),
        None => Box::new(SystemClock),
    };
    match run(&cli, clock.as_ref()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &CommonsError) -> u8 {
    match err {
        CommonsError::ChecklistFailed { .. } => 2,
        CommonsError::QuotaBlocked(_)
        | CommonsError::IllegalTransition(_)
        | CommonsError::LadderViolation(_)
        | CommonsError::SuspendedActor(_) => 3,
        _ => 1,
    }
}

fn open_repo(repo: &Path, mode: LockMode) -> commons_core::Result<(RepoLock, Store)> {
    let lock = RepoLock::acquire(repo, mode)?;
    let store = Store::open(repo)?;
    Ok((lock, store))
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Text => println!("{text}"),
        Format::Jsonl => {
            println!("{}", serde_json::to_string(value).expect("serializable output"))
        }
    }
}

fn run(cli: &Cli, clock: &dyn Clock) -> commons_core::Result<u8> {
    match &cli.command {
        Command::Init { state } => {
            let mut config = GovernanceConfig::default();
            config.state = GovernanceState::from_str(state)?;
            fs::create_dir_all(&cli.repo)?;
            let _lock = RepoLock::acquire(&cli.repo, LockMode::Exclusive)?;
            Store::init(&cli.repo, config)?;
            println!("initialized {} ({} governance)", cli.repo.display(), state);
            Ok(0)
        }
        Command::Add { file, actor } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let draft = parse_prompt_draft(&fs::read_to_string(file)?)?;
            let prompt = store.put(&draft, &actor.actor, clock)?;
            emit(
                cli.format,
                &prompt,
                format!("{} {} {}", prompt.id, prompt.version, prompt.status),
            );
            Ok(0)
        }
        Command::Validate { file } => {
            let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
            let draft = parse_prompt_draft(&fs::read_to_string(file)?)?;
            let report = validate(&draft, &store);
            for finding in &report.findings {
                let severity = match finding.severity {
                    Severity::Error => "error",
                    Severity::Warning => "warning",
                };
                eprintln!("{}:{severity}:{}", finding.rule, finding.message);
            }
            let verdict = if report.accepted() { "accept" } else { "reject" };
            emit(cli.format, &report, format!("{verdict} {}", file.display()));
            Ok(if report.accepted() { 0 } else { 2 })
        }
        Command::Propose { id, actor } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let prompt = Engine::new(&mut store, clock).propose(id, &actor.actor)?;
            emit(cli.format, &prompt, format!("{} {}", prompt.id, prompt.status));
            Ok(0)
        }
        Command::Merge { id, actor, rationale } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let prompt = Engine::new(&mut store, clock).merge(id, &actor.actor, rationale)?;
            emit(cli.format, &prompt, format!("{} {}", prompt.id, prompt.status));
            Ok(0)
        }
        Command::List { status, group, locale, claim } => {
            let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
            let filter = QueryFilter {
                status: status.as_deref().map(Status::from_str).transpose()?,
                group: group.clone(),
                locale: locale.clone(),
                value_claim: claim.clone(),
            };
            for prompt in store.query(&filter) {
                let groups: Vec<&str> =
                    prompt.author_groups.iter().map(|g| g.0.as_str()).collect();
                emit(
                    cli.format,
                    prompt,
                    format!(
                        "{}\t{}\t{}\t{}\t{}",
                        prompt.id,
                        prompt.version,
                        prompt.status,
                        groups.join(","),
                        prompt.locale
                    ),
                );
            }
            Ok(0)
        }
        Command::Flag { id, actor, rationale } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let incident = Engine::new(&mut store, clock).flag(id, &actor.actor, rationale)?;
            emit(
                cli.format,
                &incident,
                format!("{} {} {:?}", incident.id, incident.prompt_ref, incident.state),
            );
            Ok(0)
        }
        Command::Review { incident, decision, actor, rationale } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let decision = match decision {
                Decision::Remediate => ReviewDecision::Remediate,
                Decision::Dismiss => ReviewDecision::Dismiss,
            };
            let incident =
                Engine::new(&mut store, clock).review(incident, &actor.actor, decision, rationale)?;
            emit(cli.format, &incident, format!("{} {:?}", incident.id, incident.state));
            Ok(0)
        }
        Command::Appeal { incident, actor } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let incident = Engine::new(&mut store, clock).appeal(incident, &actor.actor)?;
            emit(
                cli.format,
                &incident,
                format!(
                    "{} {:?} deadline {}",
                    incident.id,
                    incident.state,
                    incident.sla_deadline.unwrap_or(0)
                ),
            );
            Ok(0)
        }
        Command::Sanction { target, level, lift, actor, rationale } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let mut engine = Engine::new(&mut store, clock);
            if *lift {
                engine.lift_sanctions(target, &actor.actor, rationale)?;
                println!("{target} sanctions lifted");
                return Ok(0);
            }
            let level = level
                .as_deref()
                .ok_or_else(|| CommonsError::Config("--level or --lift required".into()))?;
            let level = SanctionLevel::from_str(&level.replace('-', "_"))?;
            let record = engine.sanction(target, level, &actor.actor, rationale)?;
            emit(cli.format, &record, format!("{} {}", record.actor, record.level));
            Ok(0)
        }
        Command::Strike { group, undo, actor, rationale } => {
            let (_lock, mut store) = open_repo(&cli.repo, LockMode::Exclusive)?;
            let mut engine = Engine::new(&mut store, clock);
            let n = if *undo {
                engine.unstrike(group, &actor.actor, rationale)?
            } else {
                engine.strike(group, &actor.actor, rationale)?
            };
            println!("{n} prompts {}", if *undo { "restored" } else { "withdrawn" });
            Ok(0)
        }
        Command::SlaReport => {
            let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
            let now = clock.now();
            let overdue = store
                .incidents()
                .filter(|i| i.state.sla_tracked())
                .filter(|i| i.sla_deadline.is_some_and(|d| d < now));
            for incident in overdue {
                emit(
                    cli.format,
                    incident,
                    format!(
                        "{} {} {:?} deadline {}",
                        incident.id,
                        incident.prompt_ref,
                        incident.state,
                        incident.sla_deadline.unwrap_or(0)
                    ),
                );
            }
            Ok(0)
        }
        Command::Sample { method, k, items, item } => {
            let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
            let mut method = Method::from_str(method)?;
            if let Method::M4 { k: ref mut size } = method {
                *size = *k;
            }
            let mut rng = XorShift64Star::new(cli.seed);
            let selection = select(method, &store, &mut rng)?;
            match (items, item) {
                (Some(path), Some(item_id)) => {
                    let all = parse_benchmark_items(&fs::read_to_string(path)?)?;
                    let item = all
                        .into_iter()
                        .find(|i| &i.item_id == item_id)
                        .ok_or_else(|| CommonsError::NotFound(format!("item {item_id}")))?;
                    let composed = compose(method, &selection, &item)?;
                    emit(cli.format, &composed, composed.text.clone());
                }
                _ => {
                    for prompt in &selection {
                        emit(cli.format, prompt, format!("{} {}", prompt.id, prompt.locale));
                    }
                }
            }
            Ok(0)
        }
        Command::Bench { replay, items, adapter, methods, k } => {
            let records = match (replay, items, adapter) {
                (Some(path), _, _) => parse_outcome_log(&fs::read_to_string(path)?)?,
                (None, Some(items_path), Some(adapter_spec)) => {
                    let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
                    let adapter: Box<dyn Adapter> = if adapter_spec == "stub" {
                        Box::new(StubAdapter)
                    } else {
                        Box::new(HttpAdapter::new(adapter_spec)?)
                    };
                    let bench_items = parse_benchmark_items(&fs::read_to_string(items_path)?)?;
                    let mut records = Vec::new();
                    let mut rng = XorShift64Star::new(cli.seed);
                    for spec in methods {
                        let mut method = Method::from_str(spec)?;
                        if let Method::M4 { k: ref mut size } = method {
                            *size = *k;
                        }
                        for item in &bench_items {
                            let selection = select(method, &store, &mut rng)?;
                            let composed = compose(method, &selection, item)?;
                            records.push(run_trial(&composed, adapter.as_ref())?);
                        }
                    }
                    records
                }
                _ => {
                    return Err(CommonsError::Config(
                        "bench requires --replay or --items with --adapter".into(),
                    ))
                }
            };
            let summaries = summarize_outcomes(&records)?;
            if cli.format == Format::Text {
                println!("method\tn\tleft\tright\tneutral\tD");
            }
            for s in &summaries {
                emit(
                    cli.format,
                    s,
                    format!(
                        "{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}",
                        s.method, s.n, s.p_left, s.p_right, s.p_neutral, s.decisiveness
                    ),
                );
            }
            Ok(0)
        }
        Command::Simulate { state, n, engine, raw } => {
            let config = SimConfig { n_incidents: *n, seed: cli.seed, ..Default::default() };
            let only: Option<GovernanceState> =
                state.as_deref().map(GovernanceState::from_str).transpose()?;
            if *engine {
                let state = only.ok_or_else(|| {
                    CommonsError::Config("--engine requires --state".into())
                })?;
                let report = run_engine_stress(&config, state)?;
                let (mean, half) = ci95(&report.measured)?;
                emit(
                    cli.format,
                    &report,
                    format!(
                        "{state},{mean:.1},{half:.1},{n} breaches={} fraction={:.4}",
                        report.breaches, report.breach_fraction
                    ),
                );
                if *raw && cli.format == Format::Text {
                    for sample in &report.measured {
                        println!("{sample:.6}");
                    }
                }
                return Ok(0);
            }
            let results = run_synthetic(&config)?;
            for (sim_state, summary) in &results {
                if only.is_some_and(|s| s != *sim_state) {
                    continue;
                }
                emit(
                    cli.format,
                    summary,
                    format!("{sim_state},{:.1},{:.1},{n}", summary.mean, summary.ci95_half),
                );
                if *raw && cli.format == Format::Text {
                    for sample in &summary.samples {
                        println!("{sample:.6}");
                    }
                }
            }
            Ok(0)
        }
        Command::Stats { corpus, term, likert } => {
            if let Some(path) = likert {
                let scores = parse_likert_log(&fs::read_to_string(path)?)?;
                for (method, groups) in &scores {
                    let summary = likert_summary(method, groups)?;
                    emit(
                        cli.format,
                        &summary,
                        format!(
                            "{method} mean={:.2} sd={:.2} gini={:.3}",
                            summary.overall_mean,
                            summary.overall_sd,
                            summary.gini_over_group_means
                        ),
                    );
                }
                return Ok(0);
            }
            let texts = match corpus {
                Some(dir) => read_corpus_dir(dir)?,
                None => {
                    let (_lock, store) = open_repo(&cli.repo, LockMode::Shared)?;
                    store.prompts().map(|p| p.text.clone()).collect()
                }
            };
            let stats = corpus_stats(&texts, term)?;
            emit(
                cli.format,
                &stats,
                format!(
                    "prompts={} mean_words={:.1} median_words={:.1} entropy_bits={:.2}",
                    stats.n_prompts, stats.mean_words, stats.median_words, stats.entropy_bits
                ),
            );
            if cli.format == Format::Text {
                for (token, count) in &stats.top_tokens {
                    println!("token\t{token}\t{count}");
                }
                for (t, p) in &stats.term_proportions {
                    println!("term\t{t}\t{p:.3}");
                }
            }
            Ok(0)
        }
    }
}

/// Parse `method,group,score` satisfaction logs into per-method buckets.
fn parse_likert_log(
    content: &str,
) -> commons_core::Result<BTreeMap<String, BTreeMap<String, Vec<i64>>>> {
    let mut out: BTreeMap<String, BTreeMap<String, Vec<i64>>> = BTreeMap::new();
    for (n, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(3, ',');
        let (method, group, score) = match (parts.next(), parts.next(), parts.next()) {
            (Some(m), Some(g), Some(s)) => (m, g, s),
            _ => {
                return Err(CommonsError::Parse(format!(
                    "likert log line {}: expected method,group,score",
                    n + 1
                )))
            }
        };
        let score: i64 = score
            .trim()
            .parse()
            .map_err(|_| CommonsError::Parse(format!("likert log line {}: bad score", n + 1)))?;
        out.entry(method.trim().to_string())
            .or_default()
            .entry(group.trim().to_string())
            .or_default()
            .push(score);
    }
    if out.is_empty() {
        return Err(CommonsError::EmptyInput("likert log".into()));
    }
    Ok(out)
}

/// Read every regular file in a corpus directory; front-matter prompt files
/// contribute their body text, anything else its full content.
fn read_corpus_dir(dir: &Path) -> commons_core::Result<Vec<String>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut texts = Vec::new();
    for path in paths {
        let content = fs::read_to_string(&path)?;
        match parse_prompt_draft(&content) {
            Ok(draft) => texts.push(draft.text),
            Err(_) => texts.push(content),
        }
    }
    Ok(texts)
}
