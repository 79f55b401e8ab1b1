//! `grr-census` command line.
//!
//! Exit codes: 0 success, 1 a bound or lemma violation was found, 2 usage,
//! budget or I/O errors.

mod spec;

pub use spec::parse_group_spec;

use crate::bits::ElemSet;
use crate::catalog::catalog_groups;
use crate::cayley::{build_graph, ConnectionSet, DEFAULT_MAX_C};
use crate::census::{grr_density_report, run_census_multi, CensusDocument, CensusOptions, CensusReport, GroupContext, NormalContext};
use crate::error::{Error, Result};
use crate::group::{is_abelian_exp_gt2, is_generalized_dicyclic, q8_times_ea_rank, FiniteGroup};
use crate::lemmas::{
    aux_sweep, dichotomy_sweep, psi_sweep, sigma_pairs, sigma_sweep, trichotomy_sweep, LemmaId, SweepRow, SweepSummary,
};
use crate::perm::{graph_automorphisms, is_grr};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Overrides the default `c(R)` budget when set.
pub const BUDGET_ENV: &str = "GRR_CENSUS_BUDGET_C";

#[derive(Parser, Debug)]
#[command(name = "grr-census", version, about = "Census of Cayley graph connection sets and lemma oracles")]
struct Cli {
    /// Seed for randomized sweeps; recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest c(R) enumerated (default 30, or $GRR_CENSUS_BUDGET_C).
    #[arg(long, global = true)]
    max_c: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, c-value, family membership and normal subgroups of a group.
    GroupInfo { spec: String },
    /// Whether Cay(R, S) is a GRR. `--set` takes hex (`209`, `0x209`) or an
    /// element list (`1,11` or `[1,11]`).
    GrrCheck {
        spec: String,
        #[arg(long)]
        set: String,
    },
    /// Exhaustive stratum census with bound checks.
    Census {
        spec: String,
        /// `all`, a subgroup index (`2`), or generators (`gens:1,4`).
        #[arg(long, default_value = "all")]
        normal: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep a lemma oracle and emit one CSV row per instance.
    VerifyLemma {
        #[arg(value_enum)]
        lemma: LemmaArg,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Random instances (trichotomy, sigma).
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Largest ground set for trichotomy.
        #[arg(long, default_value_t = 14)]
        max_size: usize,
        /// Random restrictions per tuple (aux lemmas).
        #[arg(long, default_value_t = 2)]
        random_restrictions: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// GRR counts and densities for catalog groups with order in `a..b`.
    DensityReport {
        #[arg(long)]
        orders: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    Icecream,
    Gelato,
    Aux1,
    Aux2,
    Aux3,
    Trichotomy,
    Sigma,
    Psi,
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(violation) => violation as i32,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn max_c(cli: &Cli) -> Result<usize> {
    if let Some(c) = cli.max_c {
        return positive(c, "--max-c");
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => {
            let c = v.trim().parse().map_err(|_| Error::InvalidParameter(format!("{BUDGET_ENV}={v} is not an integer")))?;
            positive(c, BUDGET_ENV)
        }
        Err(_) => Ok(DEFAULT_MAX_C),
    }
}

fn positive(v: usize, what: &str) -> Result<usize> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(v)
}

/// Returns whether a violation was found.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::GroupInfo { spec } => {
            let g = parse_group_spec(spec)?;
            write_out(None, &to_json(&group_info(&g, cli.seed)?)?)?;
            Ok(false)
        }
        Command::GrrCheck { spec, set } => {
            let g = parse_group_spec(spec)?;
            let s = parse_set(&g, set)?;
            write_out(None, &to_json(&grr_check(&g, s, cli.seed)?)?)?;
            Ok(false)
        }
        Command::Census { spec, normal, jobs, checkpoint, output } => {
            let g = parse_group_spec(spec)?;
            let gctx = GroupContext::with_budget(g, max_c(cli)?)?;
            let ns = select_normal(&gctx, normal)?;
            let nctxs = ns.iter().map(|&n| NormalContext::new(&gctx.group, n)).collect::<Result<Vec<_>>>()?;
            let opts = CensusOptions { workers: positive(*jobs, "--jobs")?, checkpoint: checkpoint.clone(), ..Default::default() };
            let outcome = run_census_multi(&gctx, &nctxs, &opts)?;
            let reports = ns
                .iter()
                .zip(&outcome.counts)
                .map(|(&n, k)| CensusReport::new(&gctx, n, k, outcome.complete))
                .collect();
            let doc = CensusDocument::new(cli.seed, reports);
            match output.format {
                Format::Json => write_out(output.out.as_deref(), &doc.to_json()?)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    doc.write_csv(&mut buf)?;
                    write_bytes(output.out.as_deref(), &buf)?;
                }
            }
            Ok(doc.has_violation())
        }
        Command::VerifyLemma { lemma, max_order, instances, max_size, random_restrictions, out } => {
            let summary = verify_lemma(*lemma, *max_order, *instances, *max_size, *random_restrictions, cli.seed, out.as_deref())?;
            eprintln!(
                "seed={} rows={} bound_holds={} exceptional={} violations={} skipped={}",
                cli.seed, summary.rows, summary.bound_holds, summary.exceptional, summary.violations, summary.skipped
            );
            Ok(summary.violations > 0)
        }
        Command::DensityReport { orders, jobs, output } => {
            let (lo, hi) = parse_orders(orders)?;
            let groups: Vec<FiniteGroup> = catalog_groups(hi).into_iter().filter(|g| g.order() >= lo).collect();
            let rows = grr_density_report(&groups, max_c(cli)?, positive(*jobs, "--jobs")?)?;
            match output.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Doc<'a> {
                        seed: u64,
                        rows: &'a [crate::census::DensityRow],
                    }
                    write_out(output.out.as_deref(), &to_json(&Doc { seed: cli.seed, rows: &rows })?)?
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["seed", "group", "order", "c_value", "total_sets", "grr_count", "density"])?;
                    for r in &rows {
                        w.write_record([
                            cli.seed.to_string(),
                            r.group.clone(),
                            r.order.to_string(),
                            r.c_value.to_string(),
                            r.total_sets.to_string(),
                            r.grr_count.to_string(),
                            r.density.to_string(),
                        ])?;
                    }
                    let buf = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                    write_bytes(output.out.as_deref(), &buf)?;
                }
            }
            Ok(false)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    let mut s = text.to_string();
    s.push('\n');
    write_bytes(path, s.as_bytes())
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct GroupInfo {
    seed: u64,
    group: String,
    order: usize,
    c_value: usize,
    exponent: usize,
    abelian: bool,
    involutions: usize,
    abelian_exponent_gt2: bool,
    generalized_dicyclic: bool,
    q8_times_ea_rank: Option<usize>,
    excluded_family: bool,
    center: Vec<usize>,
    /// Non-identity proper normal subgroups, in the order `--normal <idx>` uses.
    normal_subgroups: Vec<Vec<usize>>,
}

fn group_info(g: &FiniteGroup, seed: u64) -> Result<GroupInfo> {
    let abelian_exponent_gt2 = is_abelian_exp_gt2(g);
    let generalized_dicyclic = !is_generalized_dicyclic(g).is_empty();
    let all = g.all();
    let normal_subgroups = crate::group::normal_subgroups(g)?
        .into_iter()
        .filter(|h| h.len() > 1 && *h != all)
        .map(|h| h.to_vec())
        .collect();
    Ok(GroupInfo {
        seed,
        group: g.label().to_string(),
        order: g.order(),
        c_value: g.c_of_group(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
        involutions: g.involution_part(all).len() - 1,
        abelian_exponent_gt2,
        generalized_dicyclic,
        q8_times_ea_rank: q8_times_ea_rank(g),
        excluded_family: abelian_exponent_gt2 || generalized_dicyclic,
        center: g.center().to_vec(),
        normal_subgroups,
    })
}

#[derive(Serialize)]
struct GrrCheck {
    seed: u64,
    group: String,
    set: Vec<usize>,
    hex: String,
    automorphism_group_order: Option<u128>,
    grr: bool,
}

fn grr_check(g: &FiniteGroup, s: ElemSet, seed: u64) -> Result<GrrCheck> {
    let conn = ConnectionSet::new(g, s)?;
    let aut = graph_automorphisms(&build_graph(g, s)?)?;
    Ok(GrrCheck {
        seed,
        group: g.label().to_string(),
        set: conn.elements(),
        hex: conn.to_hex(),
        automorphism_group_order: aut.order(),
        grr: is_grr(g, s)?,
    })
}

/// Hex unless the text has a comma or brackets, in which case it is a list
/// of element indices.
fn parse_set(g: &FiniteGroup, text: &str) -> Result<ElemSet> {
    let t = text.trim();
    let s = if t.contains(',') || t.starts_with('[') {
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        let mut s = ElemSet::EMPTY;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let x: usize = part.parse().map_err(|_| Error::InvalidParameter(format!("bad element index {part:?}")))?;
            if x >= g.order() {
                return Err(Error::IndexOutOfRange { index: x, order: g.order() });
            }
            s.insert(x);
        }
        s
    } else {
        ElemSet::from_hex(t).ok_or_else(|| Error::InvalidParameter(format!("bad hex set {t:?}")))?
    };
    if !s.is_subset(g.all()) {
        return Err(Error::InvalidParameter("set has elements outside the group".into()));
    }
    Ok(s)
}

fn select_normal(gctx: &GroupContext, sel: &str) -> Result<Vec<ElemSet>> {
    let eligible = gctx.eligible_normal_subgroups()?;
    if sel == "all" {
        return Ok(eligible);
    }
    if let Some(gens) = sel.strip_prefix("gens:") {
        let gens = parse_set(&gctx.group, &format!("[{gens}]"))?;
        let n = gctx.group.generate(gens);
        if !eligible.contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "<{sel}> generates {:?}, not a non-identity proper normal subgroup",
                n.to_vec()
            )));
        }
        return Ok(vec![n]);
    }
    let idx: usize = sel
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("--normal expects all, an index or gens:..., got {sel:?}")))?;
    eligible
        .get(idx)
        .map(|&n| vec![n])
        .ok_or_else(|| Error::InvalidParameter(format!("normal subgroup index {idx} out of range (0..{})", eligible.len())))
}

fn parse_orders(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("--orders expects a..b, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let lo: usize = a.trim().parse().map_err(|_| bad())?;
    let hi: usize = b.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn verify_lemma(
    lemma: LemmaArg,
    max_order: usize,
    instances: usize,
    max_size: usize,
    random_restrictions: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<SweepSummary> {
    positive(max_order, "--max-order")?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["seed", "lemma_id", "group", "parameters", "outcome", "count", "bound", "exceptional_clause"])?;
    let mut failure: Option<csv::Error> = None;
    let mut emit = |r: &SweepRow| {
        if failure.is_some() {
            return;
        }
        let rec = [
            seed.to_string(),
            r.lemma_id.to_string(),
            r.group.clone(),
            r.parameters.clone(),
            r.outcome.to_string(),
            r.count.to_string(),
            r.bound.clone(),
            r.exceptional_clause.map_or_else(String::new, |c| c.to_string()),
        ];
        if let Err(e) = w.write_record(rec) {
            failure = Some(e);
        }
    };
    let summary = match lemma {
        LemmaArg::Icecream => dichotomy_sweep(LemmaId::Icecream, max_order, &mut emit)?,
        LemmaArg::Gelato => dichotomy_sweep(LemmaId::Gelato, max_order, &mut emit)?,
        LemmaArg::Aux1 => aux_sweep(LemmaId::Aux1, max_order, random_restrictions, seed, &mut emit)?,
        LemmaArg::Aux2 => aux_sweep(LemmaId::Aux2, max_order, random_restrictions, seed, &mut emit)?,
        LemmaArg::Aux3 => aux_sweep(LemmaId::Aux3, max_order, random_restrictions, seed, &mut emit)?,
        LemmaArg::Trichotomy => trichotomy_sweep(instances, 6.min(max_size), max_size, seed, &mut emit)?,
        LemmaArg::Sigma => sigma_sweep(&sigma_pairs(max_order)?, instances, seed, &mut emit)?,
        LemmaArg::Psi => psi_sweep(&sigma_pairs(max_order)?, true, &mut emit)?,
    };
    if let Some(e) = failure {
        return Err(e.into());
    }
    w.flush()?;
    Ok(summary)
}
