//! Command-line front end.
//!
//! Every command renders text, CSV or versioned JSON and reports an exit
//! code: 0 pass, 1 a verified negative (failed identity, infeasible system,
//! rejected certificate), 2 a resource or precondition problem, 3 undecided.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Contradiction, Scalar};
use crate::functors::{gram, verify_functor_axioms, FunctorSpec, Label, Model, Mutation};
use crate::partitions::{enumerate_bounded, named, CategorySpec, Partition, DEFAULT_POINT_BOUND};
use crate::rigidity::witness_in;
use crate::tensorrep::DEFAULT_BUDGET;
use crate::yd::{
    canonical_cg_collection, check_conditions, decide_obstruction, nesting_collection,
    replay_decision, Bounds, Decision, Outcome, Status,
};

pub const SCHEMA: &str = "partact/1";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Row size used by `verify` when --bound is not given.
pub const DEFAULT_AXIOM_BOUND: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "partact",
    version,
    about = "Exact partition calculus, spectral functors and Yetter-Drinfeld checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: SessionConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SessionConfig {
    /// Dimension N of the fundamental representation.
    #[arg(id = "size", long = "N", value_name = "N", global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    #[serde(rename = "N")]
    pub n: u32,
    /// Category of partitions: ALL, NC, NC2, NCEVEN, NC12.
    #[arg(long, global = true, default_value = "NC")]
    pub cat: String,
    /// proj, proj0:<cat>, line:<cat>, shift1:<cat>, shift2:<cat> or cg.
    #[arg(long, global = true, default_value = "proj")]
    pub model: String,
    /// Point bound: total points for `enum`, points per row for `verify`.
    #[arg(long, global = true, value_parser = positive)]
    pub bound: Option<usize>,
    /// Largest tensor dimension materialized.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    pub budget: usize,
    /// Largest k with a_k in Yetter-Drinfeld computations.
    #[arg(long, global = true, value_parser = positive)]
    pub kmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub out: Format,
    /// Seed for sampled listings.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List P(k, l) ∩ category with block statistics.
    Enum {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Only projective partitions (needs k = l).
        #[arg(long)]
        projective: bool,
        /// Keep this many items, drawn with --seed.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Exact Gram matrix of K_n.
    Gram {
        #[arg(long)]
        n: usize,
        /// Restrict to these labels, given as name[:param] (id:2, p4, s2, d:1, ...).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Rank of the Gram matrix of K_n.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Check the weak tensor functor identities.
    Verify {
        /// Drop the loop factor from φ as a negative control.
        #[arg(long)]
        mutate: bool,
    },
    /// Yetter-Drinfeld conditions and obstructions.
    Yd {
        #[command(subcommand)]
        action: YdAction,
    },
    /// Witness of a vector in H_n ⊂ H_k ⊗ H_k outside both flip eigenspaces.
    Rigidity {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum YdAction {
    /// Check (a0)-(a5) for the canonical (model cg) or nesting (model line:<cat>) collection.
    Check {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Multiply a_k by a factor, as k:factor.
        #[arg(long)]
        scale: Option<String>,
    },
    /// Decide whether the structure conditions admit any collection.
    Obstruct {
        /// Also write the decision to this file.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Re-verify a stored decision.
    Replay { path: PathBuf },
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Run {
                    code: EXIT_RESOURCE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Run {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Run {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Run {
            code: EXIT_RESOURCE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    config: &'a SessionConfig,
    exit: i32,
    result: T,
}

fn json<T: Serialize>(cfg: &SessionConfig, command: &str, exit: i32, result: T) -> String {
    let env = Envelope {
        schema: SCHEMA,
        command,
        config: cfg,
        exit,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("serializable output");
    s.push('\n');
    s
}

fn csv_of(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
}

/// Builds the functor from --cat, --model and --N.
pub fn functor_spec(cfg: &SessionConfig) -> Result<FunctorSpec> {
    let cat = CategorySpec::parse(&cfg.cat)?;
    Ok(spec_from_parts(cat, &cfg.model, cfg.n)?.with_budget(cfg.budget))
}

/// A functor from a category name, a model string as for --model, and N.
pub fn functor_from_names(cat: &str, model: &str, n: u32) -> Result<FunctorSpec> {
    spec_from_parts(CategorySpec::parse(cat)?, model, n)
}

fn spec_from_parts(cat: CategorySpec, model: &str, n: u32) -> Result<FunctorSpec> {
    let (kind, module) = match model.split_once(':') {
        Some((k, m)) => (k, Some(CategorySpec::parse(m)?)),
        None => (model, None),
    };
    let module_or = |fallback: &CategorySpec| module.clone().unwrap_or_else(|| fallback.clone());
    match kind {
        "proj" => {
            let m = module_or(&cat);
            FunctorSpec::new(
                cat,
                Model::Projective {
                    module: m,
                    zero_through: false,
                },
                n,
            )
        }
        "proj0" => {
            let m = module_or(&cat);
            FunctorSpec::projective_zero(cat, m, n)
        }
        "line" | "shift0" | "shift1" | "shift2" => {
            let shift = match kind {
                "shift1" => 1,
                "shift2" => 2,
                _ => 0,
            };
            let m = module_or(&cat);
            FunctorSpec::line(cat, m, shift, n)
        }
        "cg" => FunctorSpec::canonical(cat, n),
        _ => Err(Error::Parse(format!("unknown model {model:?}"))),
    }
}

/// Inverse of [`FunctorSpec::describe`].
pub fn spec_from_description(desc: &str) -> Result<FunctorSpec> {
    let parts: Vec<&str> = desc.split(" / ").collect();
    let [cat, model, n] = parts.as_slice() else {
        return Err(Error::Parse(format!("functor description {desc:?}")));
    };
    let n: u32 = n
        .strip_prefix("N=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("functor description {desc:?}")))?;
    spec_from_parts(CategorySpec::parse(cat)?, model, n)
}

fn parse_named(s: &str) -> Result<Partition> {
    match s.split_once(':') {
        Some((name, p)) => named::named(
            name,
            p.parse()
                .map_err(|_| Error::Parse(format!("parameter in {s:?}")))?,
        ),
        None => named::named(s, 0),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Enum {
            k,
            l,
            projective,
            sample,
        } => cmd_enum(cfg, *k, *l, *projective, *sample),
        Command::Gram { n, only } => cmd_gram(cfg, *n, only, false),
        Command::Rank { n, only } => cmd_gram(cfg, *n, only, true),
        Command::Verify { mutate } => cmd_verify(cfg, *mutate),
        Command::Yd {
            action: YdAction::Check { k, n, scale },
        } => cmd_yd_check(cfg, *k, *n, scale.as_deref()),
        Command::Yd {
            action: YdAction::Obstruct { cert },
        } => cmd_yd_obstruct(cfg, cert.as_ref()),
        Command::Yd {
            action: YdAction::Replay { path },
        } => cmd_yd_replay(cfg, path),
        Command::Rigidity { k, n } => cmd_rigidity(cfg, *k, *n),
    }
}

#[derive(Serialize)]
struct EnumItem {
    partition: Partition,
    text: String,
    through: usize,
    nonthrough: usize,
    projective: bool,
    noncrossing: bool,
}

#[derive(Serialize)]
struct EnumResult {
    category: String,
    k: usize,
    l: usize,
    projective_only: bool,
    total: usize,
    count: usize,
    items: Vec<EnumItem>,
}

fn cmd_enum(
    cfg: &SessionConfig,
    k: usize,
    l: usize,
    projective: bool,
    sample: Option<usize>,
) -> Result<(i32, String)> {
    let cat = CategorySpec::parse(&cfg.cat)?;
    if projective && k != l {
        return Err(Error::Precondition(format!(
            "projective partitions need k = l, got {k} and {l}"
        )));
    }
    let mut all = enumerate_bounded(&cat, k, l, cfg.bound.unwrap_or(DEFAULT_POINT_BOUND))?;
    if projective {
        all.retain(Partition::is_projective);
    }
    let total = all.len();
    if let Some(m) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut keep = rand::seq::index::sample(&mut rng, total, m.min(total)).into_vec();
        keep.sort_unstable();
        all = keep.into_iter().map(|i| all[i].clone()).collect();
    }
    let items: Vec<EnumItem> = all
        .into_iter()
        .map(|p| {
            let st = p.block_stats();
            EnumItem {
                text: p.to_string(),
                through: st.through,
                nonthrough: st.nonthrough,
                projective: p.is_projective(),
                noncrossing: p.is_noncrossing(),
                partition: p,
            }
        })
        .collect();
    let res = EnumResult {
        category: cat.name().to_string(),
        k,
        l,
        projective_only: projective,
        total,
        count: items.len(),
        items,
    };
    let out = match cfg.out {
        Format::Json => json(cfg, "enum", EXIT_PASS, &res),
        Format::Csv => csv_of(
            &[
                "partition",
                "through",
                "nonthrough",
                "projective",
                "noncrossing",
            ],
            res.items.iter().map(|i| {
                vec![
                    i.text.clone(),
                    i.through.to_string(),
                    i.nonthrough.to_string(),
                    i.projective.to_string(),
                    i.noncrossing.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!("{} items in {}({k},{l})\n", res.count, res.category);
            for i in &res.items {
                s += &format!(
                    "{}  t={} b={}{}{}\n",
                    i.text,
                    i.through,
                    i.nonthrough,
                    if i.projective { " projective" } else { "" },
                    if i.noncrossing { " noncrossing" } else { "" }
                );
            }
            s
        }
    };
    Ok((EXIT_PASS, out))
}

#[derive(Serialize)]
struct GramResult {
    functor: String,
    n: usize,
    labels: Vec<String>,
    matrix: Vec<Vec<Scalar>>,
    rank: usize,
}

fn cmd_gram(
    cfg: &SessionConfig,
    n: usize,
    only: &[String],
    rank_only: bool,
) -> Result<(i32, String)> {
    let spec = functor_spec(cfg)?;
    let mut form = gram(&spec, n)?;
    if !only.is_empty() {
        let labels: Vec<Label> = only
            .iter()
            .map(|s| parse_named(s).map(Label::Part))
            .collect::<Result<_>>()?;
        form = form.restricted(&labels)?;
    }
    let rank = form.rank();
    let command = if rank_only { "rank" } else { "gram" };
    let labels: Vec<String> = form.labels.iter().map(|l| l.to_string()).collect();
    let out = match (cfg.out, rank_only) {
        (Format::Json, true) => json(
            cfg,
            command,
            EXIT_PASS,
            serde_json::json!({ "functor": spec.describe(), "n": n, "size": labels.len(), "rank": rank }),
        ),
        (Format::Json, false) => {
            let matrix = (0..form.matrix.rows())
                .map(|i| form.matrix.row(i).to_vec())
                .collect();
            json(
                cfg,
                command,
                EXIT_PASS,
                GramResult {
                    functor: spec.describe(),
                    n,
                    labels,
                    matrix,
                    rank,
                },
            )
        }
        (Format::Csv, true) => csv_of(
            &["functor", "n", "size", "rank"],
            [vec![
                spec.describe(),
                n.to_string(),
                labels.len().to_string(),
                rank.to_string(),
            ]],
        ),
        (Format::Csv, false) => {
            let mut header = vec![""];
            header.extend(labels.iter().map(String::as_str));
            csv_of(
                &header,
                (0..form.matrix.rows()).map(|i| {
                    std::iter::once(labels[i].clone())
                        .chain(form.matrix.row(i).iter().map(|x| x.to_string()))
                        .collect()
                }),
            )
        }
        (Format::Text, true) => format!("{rank}\n"),
        (Format::Text, false) => {
            let mut s = format!(
                "Gram of K_{n} for {} ({} labels, rank {rank})\n",
                spec.describe(),
                labels.len()
            );
            for (i, l) in labels.iter().enumerate() {
                let row: Vec<String> = form.matrix.row(i).iter().map(|x| x.to_string()).collect();
                s += &format!("{l}: {}\n", row.join(" "));
            }
            s
        }
    };
    Ok((EXIT_PASS, out))
}

fn cmd_verify(cfg: &SessionConfig, mutate: bool) -> Result<(i32, String)> {
    let mut spec = functor_spec(cfg)?;
    if mutate {
        spec = spec.with_mutation(Mutation::DropLoopFactor);
    }
    let report = verify_functor_axioms(&spec, cfg.bound.unwrap_or(DEFAULT_AXIOM_BOUND))?;
    let code = if report.all_pass() {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    };
    let out = match cfg.out {
        Format::Json => json(cfg, "verify", code, &report),
        Format::Csv => csv_of(
            &[
                "identity",
                "parameters",
                "instances",
                "status",
                "counterexample",
            ],
            report.checks.iter().map(|c| {
                vec![
                    c.identity.clone(),
                    c.parameters.clone(),
                    c.instances.to_string(),
                    c.status.clone(),
                    c.counterexample.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            let failed: Vec<_> = report.failures().collect();
            let mut s = format!(
                "{}: {} checks, {} failed\n",
                report.functor,
                report.checks.len(),
                failed.len()
            );
            for c in failed {
                s += &format!(
                    "FAIL {} ({}): {}\n",
                    c.identity,
                    c.parameters,
                    c.counterexample.as_deref().unwrap_or("")
                );
            }
            s
        }
    };
    Ok((code, out))
}

fn cmd_yd_check(
    cfg: &SessionConfig,
    k: usize,
    n: usize,
    scale: Option<&str>,
) -> Result<(i32, String)> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let spec = functor_spec(cfg)?;
    let kmax = cfg.kmax.unwrap_or(k + 2 * (n - 1)).max(1);
    let mut c = match &spec.model {
        Model::CanonicalCG => canonical_cg_collection(spec.category.clone(), spec.n, kmax)?,
        Model::Line { shift: 0, .. } => nesting_collection(spec, kmax)?,
        _ => {
            return Err(Error::Precondition(
                "yd check needs --model cg or --model line:<cat>".into(),
            ))
        }
    };
    if let Some(s) = scale {
        let (idx, factor) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("--scale {s:?} is not k:factor")))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("--scale {s:?}")))?;
        let factor = Scalar::parse(factor, c.spec.n)
            .ok_or_else(|| Error::Parse(format!("--scale {s:?}")))?;
        c = c.scaled(idx, &factor)?;
    }
    let report = check_conditions(&c, Bounds { k, n })?;
    let code = if report.conditions.iter().any(|c| c.status == Status::Fail) {
        EXIT_NEGATIVE
    } else {
        EXIT_PASS
    };
    let status = |s: &Status| match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Disabled => "disabled",
    };
    let out = match cfg.out {
        Format::Json => json(cfg, "yd check", code, &report),
        Format::Csv => csv_of(
            &["condition", "status", "checked", "counterexamples", "note"],
            report.conditions.iter().map(|c| {
                vec![
                    c.condition.to_string(),
                    status(&c.status).to_string(),
                    c.checked.to_string(),
                    c.counterexamples.len().to_string(),
                    c.note.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!(
                "{} collection on {} (K_max = {})\n",
                report.collection, report.functor, report.kmax
            );
            for c in &report.conditions {
                s += &format!(
                    "{} {} ({} instances)",
                    c.condition,
                    status(&c.status),
                    c.checked
                );
                if let Some(w) = c.counterexamples.first() {
                    s += &format!(": {} @ {}, defect {}", w.instance, w.input, w.defect);
                }
                if let Some(note) = &c.note {
                    s += &format!(" [{note}]");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok((code, out))
}

fn outcome_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Feasible { .. } => "feasible",
        Outcome::Infeasible { .. } => "infeasible",
        Outcome::Undecided { .. } => "undecided",
    }
}

fn decision_code(d: &Decision) -> i32 {
    match d.outcome {
        Outcome::Feasible { .. } => EXIT_PASS,
        Outcome::Infeasible { .. } => EXIT_NEGATIVE,
        Outcome::Undecided { .. } => EXIT_UNDECIDED,
    }
}

fn leaf_summary(d: &Decision) -> String {
    let Some(cert) = d.certificate() else {
        return String::new();
    };
    let kinds = cert.leaf_kinds();
    let constant = kinds
        .iter()
        .filter(|k| matches!(k, Contradiction::NonzeroConstant))
        .count();
    format!(
        "{} leaves: {constant} nonzero constant, {} sum of squares",
        kinds.len(),
        kinds.len() - constant
    )
}

fn cmd_yd_obstruct(cfg: &SessionConfig, cert: Option<&PathBuf>) -> Result<(i32, String)> {
    let spec = functor_spec(cfg)?;
    let (_, decision) = decide_obstruction(&spec, cfg.kmax.unwrap_or(2))?;
    let code = decision_code(&decision);
    if let Some(path) = cert {
        std::fs::write(path, json(cfg, "yd obstruct", code, &decision))
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    let out = match cfg.out {
        Format::Json => json(cfg, "yd obstruct", code, &decision),
        Format::Csv => csv_of(
            &[
                "functor",
                "kmax",
                "variables",
                "equations",
                "result",
                "certificate",
            ],
            [vec![
                decision.functor.clone(),
                decision.kmax.to_string(),
                decision.variables.to_string(),
                decision.equations.to_string(),
                outcome_name(&decision.outcome).to_string(),
                leaf_summary(&decision),
            ]],
        ),
        Format::Text => {
            let mut s = format!(
                "{} with K_max = {}: {} ({} unknowns, {} equations)\n",
                decision.functor,
                decision.kmax,
                outcome_name(&decision.outcome),
                decision.variables,
                decision.equations
            );
            match &decision.outcome {
                Outcome::Infeasible { certificate } => {
                    s += &format!(
                        "certificate uses {} equations, {}\n",
                        certificate.used_labels().len(),
                        leaf_summary(&decision)
                    )
                }
                Outcome::Feasible { values } => {
                    s += &format!(
                        "witness with {} nonzero unknowns\n",
                        values.values().filter(|v| !v.is_zero()).count()
                    )
                }
                Outcome::Undecided { residue } => {
                    s += &format!("{} residual equations\n", residue.len())
                }
            }
            s
        }
    };
    Ok((code, out))
}

#[derive(Serialize)]
struct ReplayResult {
    functor: String,
    kmax: usize,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn cmd_yd_replay(cfg: &SessionConfig, path: &PathBuf) -> Result<(i32, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let body = value
        .get("result")
        .filter(|_| value.get("schema").is_some())
        .unwrap_or(&value);
    let decision: Decision =
        serde_json::from_value(body.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if decision.certificate().is_none() {
        return Err(Error::Precondition(format!(
            "{} holds no certificate",
            path.display()
        )));
    }
    let spec = spec_from_description(&decision.functor)?.with_budget(cfg.budget);
    let checked = replay_decision(&spec, &decision);
    let code = if checked.is_ok() {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    };
    let res = ReplayResult {
        functor: decision.functor.clone(),
        kmax: decision.kmax,
        verified: checked.is_ok(),
        reason: checked.err(),
    };
    let out = match cfg.out {
        Format::Json => json(cfg, "yd replay", code, &res),
        Format::Csv => csv_of(
            &["functor", "kmax", "verified", "reason"],
            [vec![
                res.functor.clone(),
                res.kmax.to_string(),
                res.verified.to_string(),
                res.reason.clone().unwrap_or_default(),
            ]],
        ),
        Format::Text => match &res.reason {
            None => format!(
                "certificate for {} with K_max = {} verified\n",
                res.functor, res.kmax
            ),
            Some(r) => format!(
                "certificate for {} with K_max = {} rejected: {r}\n",
                res.functor, res.kmax
            ),
        },
    };
    Ok((code, out))
}

fn cmd_rigidity(cfg: &SessionConfig, k: usize, n: usize) -> Result<(i32, String)> {
    let cat = CategorySpec::parse(&cfg.cat)?;
    let w = witness_in(&cat, cfg.n, k, n)?;
    let code = if w.is_sound() {
        EXIT_PASS
    } else {
        EXIT_NEGATIVE
    };
    let out = match cfg.out {
        Format::Json => json(cfg, "rigidity", code, &w),
        Format::Csv => csv_of(
            &["N", "k", "n", "c1", "c2", "verdict", "member", "projected_verdict"],
            [vec![
                w.size.to_string(),
                w.k.to_string(),
                w.n.to_string(),
                w.c1.to_string(),
                w.c2.to_string(),
                format!("{:?}", w.verdict),
                w.member.to_string(),
                format!("{:?}", w.projected_verdict),
            ]],
        ),
        Format::Text => format!(
            "witness N={} k={} n={}: c1 = {}, c2 = {}, verdict {:?}, in H_n: {}, projected verdict {:?}\n",
            w.size, w.k, w.n, w.c1, w.c2, w.verdict, w.member, w.projected_verdict
        ),
    };
    Ok((code, out))
}
