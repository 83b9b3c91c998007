//! Batch front-end: construct products, validate tables, enumerate
//! automorphisms, verify structural claims, and sweep parameter spaces.
//!
//! Exit codes: 0 all checks pass, 1 at least one claim fails, 2 usage or
//! scale errors. Reports are deterministic for identical inputs; sweeps are
//! parallelized per point and merged in canonical parameter order.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use zappa::aut::{a_set, aut_order_spectrum};
use zappa::families::ChainClaim;
use zappa::io::{
    group_from_json, matrix_to_json, pair_from_file, read_file, write_json, zs_file, zs_from_file,
    FileJson, SCHEMA,
};
use zappa::l2::{build_l2, enumerate_l2_params, predicted_aut_l2, L2Params};
use zappa::m3::{build_m3, enumerate_m3_params, predicted_aut_m3, M3Params};
use zappa::pair::{build_zappa, validate_matched_pair};
use zappa::verify::{
    axioms_check, chain_checks, correspondence_checks, decomposition_checks, order_check,
    verify_l2_point, verify_m3_point, PointReport, VerifyOptions,
};
use zappa::{Error, Result};

#[derive(Parser)]
#[command(name = "zappa", version, about = "Zappa-Szép products of cyclic groups: construction, automorphisms, and theorem verification")]
struct Cli {
    /// Worker threads for parameter sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a product from family parameters or a pair file and emit its JSON document.
    Construct(ConstructArgs),
    /// Check a pair file against the interaction axioms, or a group file for table validity.
    Validate(ValidateArgs),
    /// Enumerate the automorphism group of a constructed product.
    Aut(AutArgs),
    /// Verify structural claims at family points or on a pair file.
    Verify(VerifyArgs),
    /// Sweep a family's parameter space, comparing predicted and enumerated orders.
    Search(SearchArgs),
}

/// Where a product comes from: family parameters or a pair document.
#[derive(Args, Clone)]
struct SourceArgs {
    /// Family selector: l2 (Z4 x Zm) or m3 (Zp² x Zm).
    #[arg(long)]
    family: Option<String>,
    /// Modulus m (both families).
    #[arg(long)]
    m: Option<u64>,
    /// l2 parameter s.
    #[arg(long)]
    s: Option<u64>,
    /// l2 parameter t.
    #[arg(long)]
    t: Option<u64>,
    /// m3 prime p.
    #[arg(long)]
    p: Option<u64>,
    /// m3 parameter r.
    #[arg(long)]
    r: Option<u64>,
    /// m3 parameter lambda.
    #[arg(long)]
    lambda: Option<u64>,
    /// Matched-pair JSON document.
    #[arg(long)]
    pair: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Output path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Matched-pair document to check against the interaction axioms.
    #[arg(long)]
    pair: Option<PathBuf>,
    /// Group document to check for table validity.
    #[arg(long)]
    group: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AutArgs {
    /// Constructed-product document (must carry the pair structure).
    #[arg(long)]
    group: PathBuf,
    /// Include every matrix's value tables in the output.
    #[arg(long)]
    matrices: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Claims to check: axioms, correspondence, abcd, chains, lemmas, order,
    /// or a specific chain (chain-eb, chain-cm, chain-fc, chain-bm, chain-ad).
    #[arg(long)]
    claim: Vec<String>,
    /// Run the full battery (structure claims on genuine points only).
    #[arg(long)]
    all_claims: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Family selector: l2 or m3.
    #[arg(long)]
    family: String,
    /// Largest modulus to sweep.
    #[arg(long, default_value_t = 16)]
    m_max: u64,
    /// m3 prime p.
    #[arg(long)]
    p: Option<u64>,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Construct(a) => cmd_construct(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Aut(a) => cmd_aut(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
    }
}

fn usage(msg: &str) -> Error {
    Error::FamilyParams(msg.into())
}

enum Source {
    L2(Vec<L2Params>),
    M3(Vec<M3Params>),
    Pair(PathBuf, FileJson),
}

/// Resolve a source to parameter points (one, or a whole modulus) or a file.
fn resolve(src: &SourceArgs) -> Result<Source> {
    if let Some(path) = &src.pair {
        let f = read_file(path)?;
        return Ok(Source::Pair(path.clone(), f));
    }
    match src.family.as_deref() {
        Some("l2") => {
            let m = src.m.ok_or_else(|| usage("--family l2 needs --m"))?;
            match (src.s, src.t) {
                (Some(s), Some(t)) => Ok(Source::L2(vec![L2Params::new(m, s, t)?])),
                (None, None) => Ok(Source::L2(enumerate_l2_params(m)?)),
                _ => Err(usage("provide both --s and --t, or neither")),
            }
        }
        Some("m3") => {
            let p = src.p.ok_or_else(|| usage("--family m3 needs --p"))?;
            let m = src.m.ok_or_else(|| usage("--family m3 needs --m"))?;
            match (src.r, src.lambda) {
                (Some(r), Some(l)) => Ok(Source::M3(vec![M3Params::new(p, m, r, l)?])),
                (None, None) => Ok(Source::M3(enumerate_m3_params(p, m)?)),
                _ => Err(usage("provide both --r and --lambda, or neither")),
            }
        }
        Some(other) => Err(usage(&format!("unknown family {other:?} (expected l2 or m3)"))),
        None => Err(usage("provide --family with parameters, or --pair FILE")),
    }
}

fn cmd_construct(a: ConstructArgs) -> Result<bool> {
    let doc = match resolve(&a.src)? {
        Source::L2(ps) => match ps.as_slice() {
            [p] => zs_file(&build_zappa(build_l2(p)?)?),
            _ => return Err(usage("construct needs a single point: --m with --s and --t")),
        },
        Source::M3(qs) => match qs.as_slice() {
            [q] => zs_file(&build_zappa(build_m3(q)?)?),
            _ => return Err(usage("construct needs a single point: --r and --lambda")),
        },
        Source::Pair(_, f) => {
            let mp = pair_from_file(&f)?;
            let report = validate_matched_pair(&mp);
            if !report.all_hold() {
                return Err(Error::MatchedPairInvalid(report));
            }
            zs_file(&build_zappa(mp)?)
        }
    };
    write_json(&doc, a.out.as_deref())?;
    Ok(true)
}

#[derive(Serialize)]
struct ValidationOutput<T: Serialize> {
    schema: &'static str,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_validate(a: ValidateArgs) -> Result<bool> {
    match (&a.pair, &a.group) {
        (Some(path), None) => {
            let f = read_file(path)?;
            match pair_from_file(&f) {
                Ok(mp) => {
                    let report = validate_matched_pair(&mp);
                    let valid = report.all_hold();
                    write_json(
                        &ValidationOutput {
                            schema: SCHEMA,
                            valid,
                            order: Some(mp.h().order() * mp.k().order()),
                            report: Some(report),
                            error: None,
                        },
                        a.out.as_deref(),
                    )?;
                    Ok(valid)
                }
                Err(e) => {
                    write_json(
                        &ValidationOutput::<()> {
                            schema: SCHEMA,
                            valid: false,
                            order: None,
                            report: None,
                            error: Some(e.to_string()),
                        },
                        a.out.as_deref(),
                    )?;
                    Ok(false)
                }
            }
        }
        (None, Some(path)) => {
            let f = read_file(path)?;
            let g = f.group.as_ref().ok_or_else(|| usage("document carries no group table"))?;
            match group_from_json(g) {
                Ok(table) => {
                    write_json(
                        &ValidationOutput::<()> {
                            schema: SCHEMA,
                            valid: true,
                            order: Some(table.order()),
                            report: None,
                            error: None,
                        },
                        a.out.as_deref(),
                    )?;
                    Ok(true)
                }
                Err(e) => {
                    write_json(
                        &ValidationOutput::<()> {
                            schema: SCHEMA,
                            valid: false,
                            order: None,
                            report: None,
                            error: Some(e.to_string()),
                        },
                        a.out.as_deref(),
                    )?;
                    Ok(false)
                }
            }
        }
        _ => Err(usage("provide exactly one of --pair or --group")),
    }
}

#[derive(Serialize)]
struct AutOutput {
    schema: &'static str,
    group_order: usize,
    aut_order: usize,
    /// Element-order histogram of Aut(G) under composition.
    order_spectrum: std::collections::BTreeMap<u64, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<zappa::io::MatrixJson>>,
}

fn cmd_aut(a: AutArgs) -> Result<bool> {
    let f = read_file(&a.group)?;
    let zs = zs_from_file(&f)?;
    let aset = a_set(&zs)?;
    let out = AutOutput {
        schema: SCHEMA,
        group_order: zs.order(),
        aut_order: aset.len(),
        order_spectrum: aut_order_spectrum(aset.auts()),
        matrices: a
            .matrices
            .then(|| aset.matrices().iter().map(matrix_to_json).collect()),
    };
    write_json(&out, a.out.as_deref())?;
    Ok(true)
}

/// Parse --claim flags into an options set plus any explicit chain claims.
fn parse_claims(claims: &[String], all: bool) -> Result<(VerifyOptions, Vec<ChainClaim>)> {
    if all {
        return Ok((VerifyOptions::all(), Vec::new()));
    }
    if claims.is_empty() {
        let mut opts = VerifyOptions::none();
        opts.axioms = true;
        opts.order = true;
        return Ok((opts, Vec::new()));
    }
    let mut opts = VerifyOptions::none();
    let mut chains = Vec::new();
    for c in claims {
        match c.as_str() {
            "axioms" => opts.axioms = true,
            "correspondence" => opts.correspondence = true,
            "abcd" | "decomposition" => opts.decomposition = true,
            "chains" => opts.chains = true,
            "lemmas" => opts.lemmas = true,
            "order" => opts.order = true,
            other => chains.push(ChainClaim::parse(other)?),
        }
    }
    Ok((opts, chains))
}

/// Reduced battery for points where the structure theorems do not apply.
fn semidirect_opts(opts: &VerifyOptions) -> VerifyOptions {
    VerifyOptions {
        axioms: opts.axioms,
        correspondence: opts.correspondence,
        decomposition: false,
        chains: false,
        lemmas: false,
        order: opts.order,
    }
}

#[derive(Serialize)]
struct VerifyOutput {
    schema: &'static str,
    reports: Vec<PointReport>,
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let (opts, explicit_chains) = parse_claims(&a.claim, a.all_claims)?;
    let reports: Vec<PointReport> = match resolve(&a.src)? {
        Source::L2(points) => points
            .par_iter()
            .map(|p| {
                let eff = if p.is_semidirect() && a.all_claims {
                    semidirect_opts(&opts)
                } else {
                    opts
                };
                let mut report = verify_l2_point(p, &eff)?;
                append_explicit_chains(&mut report, &explicit_chains, || {
                    build_zappa(build_l2(p)?)
                })?;
                Ok(report)
            })
            .collect::<Result<_>>()?,
        Source::M3(points) => points
            .par_iter()
            .map(|q| {
                let eff = if q.is_semidirect() && a.all_claims {
                    semidirect_opts(&opts)
                } else {
                    opts
                };
                let mut report = verify_m3_point(q, &eff)?;
                append_explicit_chains(&mut report, &explicit_chains, || {
                    build_zappa(build_m3(q)?)
                })?;
                Ok(report)
            })
            .collect::<Result<_>>()?,
        Source::Pair(path, f) => vec![verify_pair_document(&path, &f, &opts, &explicit_chains)?],
    };
    let all_pass = reports.iter().all(|r| r.passed);
    write_json(&VerifyOutput { schema: SCHEMA, reports }, a.out.as_deref())?;
    Ok(all_pass)
}

/// Run explicitly named chain claims and fold them into a point report.
fn append_explicit_chains(
    report: &mut PointReport,
    chains: &[ChainClaim],
    builder: impl Fn() -> Result<zappa::pair::ZsGroup>,
) -> Result<()> {
    if chains.is_empty() {
        return Ok(());
    }
    let zs = builder()?;
    let aset = a_set(&zs)?;
    let items = chain_checks(&aset, zs.pair(), chains)?;
    report.passed = report.passed && items.iter().all(|c| c.passed);
    report.checks.extend(items);
    Ok(())
}

/// Verification over a raw pair document: the generic battery, without
/// family-specific predictions or structural facts.
fn verify_pair_document(
    path: &Path,
    f: &FileJson,
    opts: &VerifyOptions,
    explicit_chains: &[ChainClaim],
) -> Result<PointReport> {
    let label = format!("pair:{}", path.display());
    let mp = pair_from_file(f)?;
    let axioms = validate_matched_pair(&mp);
    let mut checks = vec![axioms_check(&mp)];
    if !axioms.all_hold() {
        // Nothing downstream is meaningful; report the witness and stop.
        return Ok(PointReport {
            label,
            tag: "invalid".into(),
            group_order: mp.h().order() * mp.k().order(),
            aut_order: 0,
            predicted_order: None,
            theorem: None,
            checks,
            passed: false,
        });
    }
    let zs = build_zappa(mp)?;
    let aset = a_set(&zs)?;
    if opts.correspondence {
        checks.extend(correspondence_checks(&zs, &aset));
    }
    if opts.decomposition {
        checks.extend(decomposition_checks(&aset, zs.pair())?);
    }
    let mut chains: Vec<ChainClaim> = explicit_chains.to_vec();
    if opts.chains {
        for c in [ChainClaim::EThenB, ChainClaim::CThenMInsideE] {
            if !chains.contains(&c) {
                chains.push(c);
            }
        }
    }
    checks.extend(chain_checks(&aset, zs.pair(), &chains)?);
    if opts.order {
        checks.push(order_check(&aset, None, None));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(PointReport {
        label,
        tag: "pair".into(),
        group_order: zs.order(),
        aut_order: aset.len(),
        predicted_order: None,
        theorem: None,
        checks,
        passed,
    })
}

#[derive(Serialize)]
struct L2Row {
    schema: &'static str,
    m: u64,
    s: u64,
    t: u64,
    tag: &'static str,
    theorem: String,
    #[serde(rename = "predicted-order")]
    predicted: String,
    #[serde(rename = "brute-force-order")]
    brute: usize,
    #[serde(rename = "match")]
    matched: String,
}

#[derive(Serialize)]
struct M3Row {
    schema: &'static str,
    p: u64,
    m: u64,
    r: u64,
    t: u64,
    branch: String,
    #[serde(rename = "predicted-order")]
    predicted: String,
    #[serde(rename = "brute-force-order")]
    brute: usize,
    #[serde(rename = "match")]
    matched: String,
}

fn match_flag(predicted: Option<u64>, brute: usize) -> (String, bool) {
    match predicted {
        Some(want) => {
            let ok = want == brute as u64;
            (ok.to_string(), ok)
        }
        None => (String::new(), true),
    }
}

fn cmd_search(a: SearchArgs) -> Result<bool> {
    let all_ok;
    let (csv, json): (String, String) = match a.family.as_str() {
        "l2" => {
            let mut points = Vec::new();
            for m in (2..=a.m_max).filter(|m| m % 2 == 0) {
                points.extend(enumerate_l2_params(m)?);
            }
            let rows: Vec<L2Row> = points
                .par_iter()
                .map(|p| -> Result<L2Row> {
                    let brute = a_set(&build_zappa(build_l2(p)?)?)?.len();
                    let pred = if p.is_semidirect() { None } else { Some(predicted_aut_l2(p)?) };
                    let (theorem, predicted) = match &pred {
                        Some(pr) => (
                            pr.theorem.clone(),
                            pr.order.map(|o| o.to_string()).unwrap_or_default(),
                        ),
                        None => (String::new(), String::new()),
                    };
                    let (matched, _) = match_flag(pred.as_ref().and_then(|pr| pr.order), brute);
                    Ok(L2Row {
                        schema: SCHEMA,
                        m: p.m,
                        s: p.s,
                        t: p.t,
                        tag: p.tag(),
                        theorem,
                        predicted,
                        brute,
                        matched,
                    })
                })
                .collect::<Result<_>>()?;
            all_ok = rows.iter().all(|r| r.matched != "false");
            let mut csv = String::from(
                "schema,m,s,t,tag,theorem,predicted-order,brute-force-order,match\n",
            );
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.schema, r.m, r.s, r.t, r.tag, r.theorem, r.predicted, r.brute, r.matched
                ));
            }
            (csv, serde_json::to_string_pretty(&rows)?)
        }
        "m3" => {
            let p = a.p.ok_or_else(|| usage("--family m3 needs --p"))?;
            let mut points = Vec::new();
            for m in (1..=a.m_max).filter(|m| m % p == 0) {
                points.extend(enumerate_m3_params(p, m)?);
            }
            let rows: Vec<M3Row> = points
                .par_iter()
                .map(|q| -> Result<M3Row> {
                    let brute = a_set(&build_zappa(build_m3(q)?)?)?.len();
                    let pred = if q.is_semidirect() { None } else { Some(predicted_aut_m3(q)?) };
                    let (branch, predicted) = match &pred {
                        Some(pr) => (pr.branch.clone(), pr.order.to_string()),
                        None => ("semidirect".into(), String::new()),
                    };
                    let (matched, _) = match_flag(pred.as_ref().map(|pr| pr.order), brute);
                    Ok(M3Row {
                        schema: SCHEMA,
                        p: q.p,
                        m: q.m,
                        r: q.r,
                        t: q.t(),
                        branch,
                        predicted,
                        brute,
                        matched,
                    })
                })
                .collect::<Result<_>>()?;
            all_ok = rows.iter().all(|r| r.matched != "false");
            let mut csv =
                String::from("schema,p,m,r,t,branch,predicted-order,brute-force-order,match\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.schema, r.p, r.m, r.r, r.t, r.branch, r.predicted, r.brute, r.matched
                ));
            }
            (csv, serde_json::to_string_pretty(&rows)?)
        }
        other => return Err(usage(&format!("unknown family {other:?} (expected l2 or m3)"))),
    };
    let text = match a.format.as_str() {
        "csv" => csv,
        "json" => json,
        other => return Err(usage(&format!("unknown format {other:?} (expected csv or json)"))),
    };
    match &a.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(all_ok)
}
