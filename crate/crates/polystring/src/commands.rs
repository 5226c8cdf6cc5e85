//! Subcommands. Each returns the JSON report, a human summary and an exit
//! status; printing is left to the caller.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::rc::Rc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use polystring_core::census::{census_row, Census, CensusOptions, CensusRow};
use polystring_core::constructions::{
    build_thm12, build_thm13, check_thm12_conditions, coxeter_group, example55_group, scan_primes, sl3_order,
    Ambient, CoxeterFamily,
};
use polystring_core::cstring::CString;
use polystring_core::engine::{normal_subgroups, FiniteGroup};
use polystring_core::linalg::GfMatrix;
use polystring_core::polytope::{disc_structure, export_chamber_graph, f_vector, GraphFormat};
use polystring_core::Caps;

use crate::checkpoint::CheckpointFile;
use crate::groupfile::{matrix_spec, GroupFile, LoadedGroup, NormalSpec};
use crate::reference;
use crate::report::*;
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "polystring", version, about = "Verify, construct and enumerate string C-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the C-string axioms, f-vector, unravelledness and chamber discs
    /// of a group file.
    Verify {
        /// Group file (JSON).
        file: String,
    },
    /// Enumerate every C-string of a group up to isomorphism.
    Census(CensusArgs),
    /// Disc sizes of the chamber graph, optionally writing the graph.
    Chambers {
        file: String,
        /// Write the chamber graph in DOT format.
        #[arg(long)]
        dot: Option<String>,
        /// Write the chamber graph as an edge list.
        #[arg(long)]
        edges: Option<String>,
    },
    /// Build a known group and string, check it and emit its group file.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// List the q ≡ 7 mod 24 up to a bound for which the first matrix family
    /// fails its eigenvalue-order condition.
    ScanPrimes {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["file", "coxeter"]))]
pub struct CensusArgs {
    /// Group file (JSON).
    pub file: Option<String>,
    /// A Coxeter group instead of a file, e.g. `B:4` or `D:5`.
    #[arg(long, value_parser = parse_coxeter)]
    pub coxeter: Option<(CoxeterFamily, usize)>,
    #[arg(long, default_value_t = 2)]
    pub rank_min: usize,
    #[arg(long)]
    pub rank_max: Option<usize>,
    /// Keep strings in which adjacent generators commute.
    #[arg(long)]
    pub allow_degenerate: bool,
    /// Stop after this many seconds.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Where to save the search state when it stops early.
    #[arg(long)]
    pub checkpoint: Option<String>,
    /// Continue from a saved search state.
    #[arg(long)]
    pub resume: Option<String>,
    /// Also write the census row as CSV.
    #[arg(long)]
    pub csv: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Rank-4 string of type [4, q+1, 4] in SL₃(q) ⋊ ⟨t⟩.
    #[command(visible_alias = "first-family")]
    Thm12 {
        #[arg(long)]
        q: u64,
        /// Write the group file here as well.
        #[arg(long)]
        out: Option<String>,
    },
    /// Rank-4 string of type [4, p, 4] in SL₃(p) ⋊ ⟨t⟩.
    #[command(visible_alias = "second-family")]
    Thm13 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// The degree-27 permutation group of order 1296.
    #[command(visible_alias = "degree27")]
    Example55 {
        #[arg(long)]
        out: Option<String>,
    },
    /// A Coxeter group of type B or D, e.g. `B:4`.
    Coxeter {
        #[arg(value_parser = parse_coxeter)]
        spec: (CoxeterFamily, usize),
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_coxeter(s: &str) -> Result<(CoxeterFamily, usize), String> {
    let (fam, n) = s.split_once(':').ok_or("expected FAMILY:RANK, e.g. B:4")?;
    let fam = match fam.trim() {
        "B" | "b" => CoxeterFamily::B,
        "D" | "d" => CoxeterFamily::D,
        other => return Err(format!("unknown family `{other}` (expected B or D)")),
    };
    let n: usize = n.trim().parse().map_err(|_| format!("bad rank `{n}`"))?;
    if !(3..=16).contains(&n) {
        return Err(format!("rank {n} out of range 3..=16"));
    }
    Ok((fam, n))
}

/// A finished command.
pub struct Output {
    pub json: String,
    pub summary: String,
    pub code: i32,
}

fn status(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Runs `f`; limit errors become a `skipped` entry instead of failing.
fn soft<T>(skipped: &mut Vec<Skipped>, what: &'static str, f: impl FnOnce() -> Result<T, CliError>) -> Result<Option<T>, CliError> {
    match f() {
        Ok(x) => Ok(Some(x)),
        Err(e @ (CliError::Cap { .. } | CliError::FixedLimit { .. })) => {
            skipped.push(Skipped {
                what,
                reason: e.to_string(),
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn cap_skip(what: &'static str, cap: &'static str, size: u128, limit: usize) -> Skipped {
    Skipped {
        what,
        reason: CliError::Cap {
            cap,
            what,
            size,
            limit: limit as u128,
        }
        .to_string(),
    }
}

fn all_normals(g: &FiniteGroup, caps: Caps) -> Result<Vec<FiniteGroup>, CliError> {
    Ok(normal_subgroups(g, caps.classes)?)
}

fn disc_if_feasible(cs: &CString, caps: Caps, skipped: &mut Vec<Skipped>) -> Result<Option<DiscSummary>, CliError> {
    let order = cs.group().order();
    if order > caps.bfs as u128 {
        skipped.push(cap_skip("chamber graph", "bfs", order, caps.bfs));
        return Ok(None);
    }
    soft(skipped, "chamber graph", || {
        Ok(DiscSummary::new(&disc_structure(cs, caps.bfs)?, order))
    })
}

fn unravelled_if_feasible(
    cs: &CString,
    given: Option<&[FiniteGroup]>,
    caps: Caps,
    skipped: &mut Vec<Skipped>,
) -> Result<Option<UnravelledSummary>, CliError> {
    let order = cs.group().order();
    let (normals, source) = match given {
        Some(ns) => (ns.to_vec(), "file"),
        None if order > caps.classes as u128 => {
            skipped.push(cap_skip("normal subgroups", "classes", order, caps.classes));
            return Ok(None);
        }
        None => match soft(skipped, "normal subgroups", || all_normals(cs.group(), caps))? {
            Some(ns) => (ns, "computed"),
            None => return Ok(None),
        },
    };
    soft(skipped, "unravelledness", || {
        Ok(UnravelledSummary::new(&cs.is_unravelled(&normals)?, source))
    })
}

fn fmt_list<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub fn verify(path: &str, caps: Caps) -> Result<Output, CliError> {
    let lg = LoadedGroup::read(path)?;
    let cs = lg.cstring(caps)?;
    let rep = cs.verify()?;
    let summary = CStringSummary::from(&rep);
    let is_c = rep.is_cstring();
    let order = lg.group.order();
    let mut skipped = Vec::new();
    let (fv, unr, disc) = if is_c {
        (
            Some(f_vector(&cs)?.0),
            unravelled_if_feasible(&cs, lg.normals.as_deref(), caps, &mut skipped)?,
            disc_if_feasible(&cs, caps, &mut skipped)?,
        )
    } else {
        (None, None, None)
    };
    let reference = if is_c {
        reference::lookup(order, &summary.schlafli)
            .map(|r| reference::compare(r, fv.as_deref(), disc.as_ref().map(|d| d.layers.as_slice())))
    } else {
        None
    };
    let passed = is_c && lg.normals_valid && disc.as_ref().is_none_or(|d| d.sum_check);

    let mut text = String::new();
    let _ = writeln!(text, "group of order {order} on {} points", lg.group.degree());
    match rep.failing_axiom() {
        None => {
            let _ = writeln!(text, "C-string of rank {} and type {}", rep.rank, rep.schlafli);
        }
        Some(ax) => {
            let _ = writeln!(text, "not a C-string: fails {}", ax.name());
        }
    }
    if let Some(f) = &fv {
        let _ = writeln!(text, "f-vector {}", fmt_list(f));
    }
    if let Some(u) = &unr {
        let _ = writeln!(text, "unravelled: {}", u.unravelled);
    }
    if let Some(d) = &disc {
        let _ = writeln!(text, "chamber graph diameter {}, disc sum check {}", d.diameter, d.sum_check);
    }
    if !lg.normals_valid {
        let _ = writeln!(text, "a listed normal subgroup is not normal");
    }
    if let Some(r) = &reference {
        for d in &r.diffs {
            let _ = writeln!(text, "flagged: {} published {} computed {} ({})", d.field, d.published, d.computed, r.label);
        }
    }
    for s in &skipped {
        let _ = writeln!(text, "skipped {}: {}", s.what, s.reason);
    }

    let report = VerifyReport {
        version: REPORT_VERSION,
        command: "verify",
        name: lg.file.name.clone(),
        group: GroupSummary::of(&lg.group),
        cstring: summary,
        f_vector: fv,
        normal_subgroups_valid: lg.normals_valid,
        unravelled: unr,
        disc_structure: disc,
        reference,
        skipped,
        passed,
    };
    Ok(Output {
        json: to_json(&report),
        summary: text,
        code: status(passed),
    })
}

pub fn chambers(path: &str, dot: Option<&str>, edges: Option<&str>, caps: Caps) -> Result<Output, CliError> {
    let lg = LoadedGroup::read(path)?;
    let cs = lg.cstring(caps)?;
    let order = lg.group.order();
    let d = disc_structure(&cs, caps.bfs)?;
    let disc = DiscSummary::new(&d, order);
    let mut graph_file = None;
    for (target, format) in [(dot, GraphFormat::Dot), (edges, GraphFormat::EdgeList)] {
        let Some(target) = target else { continue };
        if order > caps.export as u128 {
            return Err(CliError::Cap {
                cap: "export",
                what: "chamber graph export",
                size: order,
                limit: caps.export as u128,
            });
        }
        write_file(target, &export_chamber_graph(&cs, format, caps.export)?)?;
        graph_file = Some(target.to_string());
    }
    let passed = disc.sum_check;
    let summary = format!(
        "{} chambers, diameter {}, layers {}\n",
        d.chambers(),
        disc.diameter,
        fmt_list(&disc.layers)
    );
    let report = ChambersReport {
        version: REPORT_VERSION,
        command: "chambers",
        name: lg.file.name.clone(),
        group: GroupSummary::of(&lg.group),
        schlafli: cs.schlafli().0,
        disc_structure: disc,
        graph_file,
        passed,
    };
    Ok(Output {
        json: to_json(&report),
        summary,
        code: status(passed),
    })
}

fn csv_row(label: &str, row: &CensusRow, min_rank: usize) -> String {
    let max_rank = row.by_rank.keys().copied().max().unwrap_or(min_rank).max(min_rank);
    let mut header = vec!["group".to_string(), "total".to_string()];
    let mut cells = vec![label.to_string(), row.total.to_string()];
    for r in min_rank..=max_rank {
        header.push(format!("rank {r}"));
        cells.push(row.rank(r).to_string());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("writing to memory");
    w.write_record(&cells).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("fields are UTF-8")
}

pub fn census(args: &CensusArgs, caps: Caps) -> Result<Output, CliError> {
    let (group, name): (Rc<FiniteGroup>, Option<String>) = match (&args.coxeter, &args.file) {
        (Some((fam, n)), _) => (coxeter_group(*fam, *n)?.group, Some(format!("{fam}{n}"))),
        (None, Some(path)) => {
            let lg = LoadedGroup::read(path)?;
            (lg.group, lg.file.name)
        }
        (None, None) => return Err(CliError::Usage("census needs a group file or --coxeter".into())),
    };
    let opts = CensusOptions {
        rank_min: args.rank_min,
        rank_max: args.rank_max.unwrap_or(usize::MAX),
        allow_degenerate: args.allow_degenerate,
        reduce: true,
    };
    let mut census = match &args.resume {
        Some(path) => {
            let cp = CheckpointFile::read(path)?.to_checkpoint(&group)?;
            if cp.options != opts {
                return Err(CliError::Usage("checkpoint was made with different census options".into()));
            }
            Census::resume(group.clone(), caps, &cp)?
        }
        None => Census::new(group.clone(), opts, caps)?,
    };
    let start = Instant::now();
    let budget = args.budget;
    let done = census.run(&mut || budget.is_some_and(|b| start.elapsed().as_secs_f64() >= b));
    if let Some(path) = &args.checkpoint {
        CheckpointFile::new(&group, &census.checkpoint()).write(path)?;
    }
    let (explored, subtrees) = census.progress();
    let label = name.clone().unwrap_or_else(|| format!("group of order {}", group.order()));
    let options = CensusOptionsSummary {
        rank_min: opts.rank_min,
        rank_max: args.rank_max,
        allow_degenerate: opts.allow_degenerate,
    };
    if !done {
        let err = CliError::Budget {
            explored,
            total: subtrees,
            checkpoint: args.checkpoint.clone(),
        };
        let report = CensusReport {
            version: REPORT_VERSION,
            command: "census",
            name,
            group: GroupSummary::of(&group),
            options,
            complete: false,
            explored,
            subtrees,
            summary: None,
            rows: Vec::new(),
        };
        return Ok(Output {
            json: to_json(&report),
            summary: format!("{label}: {err}\n"),
            code: EXIT_USAGE,
        });
    }
    let records = census.finish()?;
    let row = census_row(&records);
    if let Some(path) = &args.csv {
        write_file(path, &csv_row(&label, &row, opts.rank_min.max(2)))?;
    }
    let mut text = format!("{label}: {}", row.total);
    for (r, c) in &row.by_rank {
        let _ = write!(text, ", rank {r} {c}");
    }
    text.push('\n');
    let report = CensusReport {
        version: REPORT_VERSION,
        command: "census",
        name,
        group: GroupSummary::of(&group),
        options,
        complete: true,
        explored,
        subtrees,
        summary: Some((&row).into()),
        rows: records.iter().map(RecordSummary::from).collect(),
    };
    Ok(Output {
        json: to_json(&report),
        summary: text,
        code: EXIT_PASS,
    })
}

fn matrix_groupfile(name: String, ambient: &Ambient, gens: &[GfMatrix]) -> GroupFile {
    let ctx = &ambient.ctx;
    let mut file = GroupFile::matrices(Some(name), ctx, gens);
    file.cstring = Some((0..gens.len()).collect());
    file.order = Some(2 * sl3_order(ctx.size()));
    file.normal_subgroups = Some(vec![
        NormalSpec {
            generators: vec![matrix_spec(ctx, &ambient.z)],
            order: None,
        },
        NormalSpec {
            generators: ambient.h_gens.iter().map(|m| matrix_spec(ctx, m)).collect(),
            order: Some(sl3_order(ctx.size())),
        },
    ]);
    file
}

#[derive(serde::Serialize)]
struct PreconditionReport<'a> {
    version: &'static str,
    command: &'static str,
    family: &'a str,
    parameters: BTreeMap<&'static str, u64>,
    lemma_chain: Vec<CheckSummary>,
    passed: bool,
}

fn failed_precondition(family: &str, key: &'static str, value: u64, checks: Vec<CheckSummary>) -> Output {
    let report = PreconditionReport {
        version: REPORT_VERSION,
        command: "construct",
        family,
        parameters: BTreeMap::from([(key, value)]),
        lemma_chain: checks,
        passed: false,
    };
    Output {
        json: to_json(&report),
        summary: format!("{family}: {key} = {value} does not meet the construction's conditions\n"),
        code: EXIT_CHECK_FAILED,
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckSummary {
    CheckSummary { name, passed, detail }
}

struct Built {
    family: String,
    parameters: BTreeMap<&'static str, u64>,
    group: Rc<FiniteGroup>,
    string: Option<CString>,
    normals: Option<Vec<FiniteGroup>>,
    chain: Vec<CheckSummary>,
    unravelled: Option<bool>,
    file: GroupFile,
}

fn finish_construct(b: Built, out: Option<&str>, caps: Caps) -> Result<Output, CliError> {
    let mut skipped = Vec::new();
    let mut chain = b.chain;
    let (schlafli, fv, disc, mut unravelled) = match &b.string {
        Some(cs) => (
            Some(cs.schlafli().0),
            Some(f_vector(cs)?.0),
            disc_if_feasible(cs, caps, &mut skipped)?,
            b.unravelled,
        ),
        None => (None, None, None, None),
    };
    if let (Some(cs), None) = (&b.string, unravelled) {
        unravelled = unravelled_if_feasible(cs, b.normals.as_deref(), caps, &mut skipped)?.map(|u| u.unravelled);
    }
    if let Some(d) = &disc {
        chain.push(check(
            "disc_sum",
            d.sum_check,
            format!("1 + Σ layers = {}", 1 + d.layers.iter().sum::<usize>()),
        ));
    }
    let passed = chain.iter().all(|c| c.passed);
    if let Some(path) = out {
        write_file(path, &b.file.to_json())?;
    }
    let mut text = format!("{}: group of order {}", b.family, b.group.order());
    if let Some(s) = &schlafli {
        let _ = write!(text, ", type {}", fmt_list(s));
    }
    if let Some(u) = unravelled {
        let _ = write!(text, ", unravelled {u}");
    }
    text.push('\n');
    let failed: Vec<&str> = chain.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        let _ = writeln!(text, "all {} checks pass", chain.len());
    } else {
        let _ = writeln!(text, "failed checks: {}", failed.join(", "));
    }
    let report = ConstructReport {
        version: REPORT_VERSION,
        command: "construct",
        family: b.family,
        parameters: b.parameters,
        group: GroupSummary::of(&b.group),
        schlafli,
        f_vector: fv,
        unravelled,
        disc_structure: disc,
        lemma_chain: chain,
        skipped,
        passed,
        groupfile: b.file,
    };
    Ok(Output {
        json: to_json(&report),
        summary: text,
        code: status(passed),
    })
}

pub fn construct(which: &Construction, caps: Caps) -> Result<Output, CliError> {
    match which {
        Construction::Thm12 { q, out } => {
            let cond = check_thm12_conditions(*q)?;
            if !cond.all_hold() {
                let checks = vec![
                    check("six_divides_q_minus_1", cond.six_divides, String::new()),
                    check("square_roots_exist", cond.square_roots_exist(), String::new()),
                    check("eigenvalue_order", cond.order_condition, format!("{:?}", cond.eigen_orders)),
                ];
                return Ok(failed_precondition("thm12", "q", *q, checks));
            }
            let inst = build_thm12(*q)?;
            let (chain, verdict) = inst.lemma_chain()?;
            let file = matrix_groupfile(format!("first matrix family, q = {q}"), &inst.ambient, &inst.generators);
            finish_construct(
                Built {
                    family: "thm12".into(),
                    parameters: BTreeMap::from([("q", *q)]),
                    group: inst.ambient.g.clone(),
                    string: Some(inst.string.clone()),
                    normals: None,
                    chain: checks(&chain),
                    unravelled: Some(verdict.unravelled),
                    file,
                },
                out.as_deref(),
                caps,
            )
        }
        Construction::Thm13 { p, out } => {
            let inst = match build_thm13(*p) {
                Ok(i) => i,
                Err(polystring_core::constructions::ConstructionError::CongruenceFail(_)) => {
                    let c = check("prime_1_mod_3_5_mod_8", false, String::new());
                    return Ok(failed_precondition("thm13", "p", *p, vec![c]));
                }
                Err(e) => return Err(e.into()),
            };
            let (chain, verdict) = inst.lemma_chain()?;
            let file = matrix_groupfile(format!("second matrix family, p = {p}"), &inst.ambient, &inst.generators);
            finish_construct(
                Built {
                    family: "thm13".into(),
                    parameters: BTreeMap::from([("p", *p)]),
                    group: inst.ambient.g.clone(),
                    string: Some(inst.string.clone()),
                    normals: None,
                    chain: checks(&chain),
                    unravelled: Some(verdict.unravelled),
                    file,
                },
                out.as_deref(),
                caps,
            )
        }
        Construction::Example55 { out } => {
            let ex = example55_group()?;
            let rep = ex.string.verify()?;
            let mut file = GroupFile::permutations(
                Some("degree-27 group of order 1296".into()),
                27,
                ex.string.generators(),
            );
            file.cstring = Some(vec![0, 1, 2, 3]);
            let verdict = ex.string.is_unravelled(&ex.normals)?;
            finish_construct(
                Built {
                    family: "example55".into(),
                    parameters: BTreeMap::new(),
                    group: ex.group.clone(),
                    string: Some(ex.string.clone()),
                    normals: None,
                    chain: vec![
                        check("cstring", rep.is_cstring(), format!("type {}", rep.schlafli)),
                        check("unravelled", verdict.unravelled, format!("{} quotients", verdict.entries.len())),
                    ],
                    unravelled: Some(verdict.unravelled),
                    file,
                },
                out.as_deref(),
                caps,
            )
        }
        Construction::Coxeter { spec: (fam, n), out } => {
            let c = coxeter_group(*fam, *n)?;
            let mut file = GroupFile::permutations(Some(format!("Coxeter group {fam}{n}")), 2 * n, &c.generators);
            file.order = Some(fam.order(*n));
            let mut chain = Vec::new();
            if let Some(cs) = &c.string {
                let idx: Vec<usize> = cs
                    .generators()
                    .iter()
                    .map(|g| c.generators.iter().position(|x| x == g).expect("string uses Coxeter generators"))
                    .collect();
                file.cstring = Some(idx);
                let rep = cs.verify()?;
                chain.push(check("cstring", rep.is_cstring(), format!("type {}", rep.schlafli)));
            }
            finish_construct(
                Built {
                    family: format!("coxeter {fam}{n}"),
                    parameters: BTreeMap::from([("rank", *n as u64)]),
                    group: c.group.clone(),
                    string: c.string.clone(),
                    normals: None,
                    chain,
                    unravelled: None,
                    file,
                },
                out.as_deref(),
                caps,
            )
        }
    }
}

pub fn scan(max: u64) -> Result<Output, CliError> {
    let s = scan_primes(max)?;
    let reference_list = s.reference_list();
    let matches_reference = s.failing_prime_powers == reference_list;
    let composite = s.composite_failures();
    let mut text = format!(
        "{} prime powers q ≡ 7 mod 24 up to {max} ({} primes); {} fail the eigenvalue-order condition\n",
        s.prime_powers.len(),
        s.primes.len(),
        s.failing_prime_powers.len()
    );
    if !composite.is_empty() {
        let _ = writeln!(text, "flagged: failing entries that are not prime: {}", fmt_list(&composite));
    }
    let report = ScanReport {
        version: REPORT_VERSION,
        command: "scan-primes",
        max,
        total: s.prime_powers.len(),
        failing: s.failing_prime_powers.clone(),
        primes_only: PrimeListSummary {
            total: s.primes.len(),
            failing: s.failing_primes.clone(),
        },
        composite_failures: composite,
        reference_list,
        matches_reference,
    };
    Ok(Output {
        json: to_json(&report),
        summary: text,
        code: EXIT_PASS,
    })
}

pub fn execute(cli: &Cli, caps: Caps) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify { file } => verify(file, caps),
        Command::Census(args) => census(args, caps),
        Command::Chambers { file, dot, edges } => chambers(file, dot.as_deref(), edges.as_deref(), caps),
        Command::Construct { which } => construct(which, caps),
        Command::ScanPrimes { max } => scan(*max),
    }
}

/// Parses `argv`, runs the command and returns `(stdout, stderr, status)`.
pub fn run<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return match code {
                EXIT_PASS => (e.to_string(), String::new(), code),
                _ => (String::new(), e.to_string(), code),
            };
        }
    };
    let result = crate::caps::caps_from_env().and_then(|caps| execute(&cli, caps));
    match result {
        Ok(out) => (out.json, out.summary, out.code),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_USAGE),
    }
}
