//! `sosgap`: one entry point for the exact SOS/gap toolkit. Subcommands map
//! onto the library modules; every run emits a manifest followed by the
//! report, as aligned text and/or line-delimited JSON records.
//!
//! Exit status: 0 on consistent results, 1 on input errors, 2 when a
//! counterexample candidate (or a violated bound check) was found, so that
//! automation can alarm on discoveries.

mod output;

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use output::{digest_file, manifest, Format, Output};
use serde_json::json;
use sosgap_core::degeneracy::{minimal_k_sequence, replay_main_theorem, verify_k_claim, DegeneracySequence};
use sosgap_core::gaps::{classify_rank, GapTable};
use sosgap_core::hermitian::{check_sos_identity, signature_decompose};
use sosgap_core::instance::{parse_hermitian_form, parse_poly_map, write_hermitian_form};
use sosgap_core::poly::PolyMap;
use sosgap_core::rank::{family_rank_profile, linear_rank, specrk_bounds, tensor_product, tensor_with_z};
use sosgap_core::rational::parse_rational;
use sosgap_core::search::{exhaustive_scan, falsify, Mode, SearchConfig, Target, Verdict};
use sosgap_core::sphere::{check_gap_conclusion, is_proper_ball_map, BallMap};
use sosgap_core::{Error, GaussianRational, RankClass};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sosgap", version, about = "Exact SOS certificates, rank gap tables, and falsification searches")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gap-interval tables: kappa0, the intervals, and D_n
    Gaps(GapsArgs),
    /// Check the SOS identity for a polynomial map instance file
    CheckSos { file: PathBuf },
    /// Classify a linear rank against the band structure
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Signature decomposition of a Hermitian form file
    Decompose { file: PathBuf },
    /// Tensor products, ranks, and quotient bounds
    Tensor(TensorArgs),
    /// Degeneracy-sequence analysis and the affine-dimension replay
    Degeneracy(DegeneracyArgs),
    /// Ball-map propriety and flatness reports
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Exhaustive and randomized falsification searches
    Search(SearchArgs),
}

#[derive(Args)]
struct GapsArgs {
    #[arg(long)]
    n: u64,
    /// Emit tables for every dimension up to this one
    #[arg(long = "max-n")]
    max_n: Option<u64>,
}

#[derive(Args)]
struct TensorArgs {
    /// Polynomial map instance file for the left factor
    #[arg(long)]
    f: PathBuf,
    /// Right factor; when absent the coordinate map is used
    #[arg(long)]
    g: Option<PathBuf>,
    /// Sample count for the interpolating-family rank profile (requires --g)
    #[arg(long)]
    profile: Option<u32>,
}

#[derive(Args)]
struct DegeneracyArgs {
    #[arg(long)]
    n: u64,
    /// Comma-separated dimension sequence, starting at 0
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<u64>,
    /// Band index for the telescoping claim
    #[arg(long)]
    kappa: Option<u64>,
    /// Codimension N - n for the full replay
    #[arg(long)]
    codim: Option<u64>,
    /// Replay without the assumed rank bound d <= (kappa-1) n
    #[arg(long)]
    skip_sos_assumption: bool,
}

#[derive(Subcommand)]
enum MapAction {
    /// Certify propriety and print the Hermitian quotient
    Verify { file: PathBuf },
    /// Full gap-conclusion report
    Report { file: PathBuf },
}

#[derive(Args)]
struct SearchArgs {
    /// One of: sos, weak-sos, huang, gh-band
    #[arg(long)]
    target: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    degree: u32,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate the whole budget instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// Coefficient budget, e.g. "0,1,-1,i,-i" (exhaustive mode; also biases
    /// random draws when present)
    #[arg(long, value_delimiter = ',')]
    coeffs: Vec<String>,
    /// Component bound for exhaustive enumeration
    #[arg(long, default_value_t = 2)]
    max_components: usize,
}

/// Parse one coefficient token: `p/q`, `p/qi`, `i`, `-i`, or `a+bi` / `a-bi`.
fn parse_gaussian_token(token: &str) -> Result<GaussianRational, Error> {
    let t = token.trim();
    if t.is_empty() {
        return Err(Error::Parse {
            detail: "empty coefficient token".to_string(),
        });
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(GaussianRational::from_rational(parse_rational(t)?));
    };
    // a+bi / a-bi: the sign splitting real from imaginary follows a digit
    let bytes = body.as_bytes();
    let split = (1..body.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit());
    if let Some(i) = split {
        let (re_s, im_s) = body.split_at(i);
        let im = match im_s {
            "+" => BigRational::from_integer(1.into()),
            "-" => -BigRational::from_integer(1.into()),
            _ => parse_rational(im_s)?,
        };
        return Ok(GaussianRational::new(parse_rational(re_s)?, im));
    }
    let im = match body {
        "" | "+" => BigRational::from_integer(1.into()),
        "-" => -BigRational::from_integer(1.into()),
        _ => parse_rational(body)?,
    };
    Ok(GaussianRational::new(BigRational::from_integer(0.into()), im))
}

fn load_map(path: &Path) -> Result<PolyMap, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        detail: format!("{}: {e}", path.display()),
    })?;
    parse_poly_map(&text)
}

fn run_gaps(args: &GapsArgs, out: &mut Output) -> Result<u8, Error> {
    let last = args.max_n.unwrap_or(args.n).max(args.n);
    for n in args.n..=last {
        let table = GapTable::new(n)?;
        let intervals: Vec<String> = table
            .intervals
            .iter()
            .enumerate()
            .map(|(i, (a, b))| format!("I_{}=[{a},{b}]", i + 1))
            .collect();
        out.text(format!(
            "n={:<4} kappa0={:<3} D_n={:<6} {}",
            table.n,
            table.kappa0,
            table.d_max,
            intervals.join(" ")
        ));
        for (i, (a, b)) in table.intervals.iter().enumerate() {
            out.record(json!({
                "record": "gap_row",
                "n": table.n,
                "kappa": i + 1,
                "a": a,
                "b": b,
                "d_max": table.d_max,
                "kappa0": table.kappa0,
            }));
        }
    }
    Ok(0)
}

fn run_check_sos(path: &Path, out: &mut Output) -> Result<u8, Error> {
    let map = load_map(path)?;
    let n = map.n() as u64;
    match check_sos_identity(&map) {
        Err(Error::NotDivisible { r, s, residual }) => {
            out.text(format!(
                "identity does not hold: bidegree ({r},{s}) leaves residual {residual}"
            ));
            out.record(json!({
                "record": "sos_check",
                "identity": false,
                "bidegree": [r, s],
                "residual": residual,
            }));
            Ok(0)
        }
        Err(e) => Err(e),
        Ok(a) => {
            let rank = linear_rank(&map).rank;
            let class = classify_rank(n.max(2), rank as u64)?;
            let decomp = signature_decompose(&a);
            let a_is_sos = decomp.q_minus() == 0;
            let verdict = if class == RankClass::Gap {
                Verdict::CounterexampleCandidate
            } else {
                Verdict::Consistent
            };
            out.text(format!("identity holds: A = {a}"));
            out.text(format!(
                "rank r = {rank}, signature (q+, q-) = ({}, {}), classification: {class}",
                decomp.q_plus(),
                decomp.q_minus()
            ));
            out.text(if a_is_sos {
                "A is itself a sum of squares (the band law applies with kappa = q+)".to_string()
            } else {
                "A has a nonzero negative part".to_string()
            });
            if verdict == Verdict::CounterexampleCandidate {
                out.text("VERDICT: counterexample candidate (rank in a conjectured gap)".to_string());
            }
            out.record(json!({
                "record": "sos_check",
                "identity": true,
                "quotient": serde_json::to_value(
                    sosgap_core::instance::HermitianFormFile::from_form(&a)
                ).expect("form serializes"),
                "rank": rank,
                "q_plus": decomp.q_plus(),
                "q_minus": decomp.q_minus(),
                "a_is_sos": a_is_sos,
                "classification": serde_json::to_value(&class).expect("class serializes"),
                "verdict": serde_json::to_value(verdict).expect("verdict serializes"),
            }));
            Ok(if verdict == Verdict::CounterexampleCandidate { 2 } else { 0 })
        }
    }
}

fn run_classify(n: u64, r: u64, out: &mut Output) -> Result<u8, Error> {
    let class = classify_rank(n, r)?;
    out.text(format!("{class}"));
    out.record(json!({
        "record": "classification",
        "n": n,
        "r": r,
        "class": serde_json::to_value(&class).expect("class serializes"),
    }));
    Ok(0)
}

fn run_decompose(path: &Path, out: &mut Output) -> Result<u8, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        detail: format!("{}: {e}", path.display()),
    })?;
    let form = parse_hermitian_form(&text)?;
    let d = signature_decompose(&form);
    out.text(format!(
        "signature (q+, q-) = ({}, {})",
        d.q_plus(),
        d.q_minus()
    ));
    for (w, c) in d.wplus.iter().zip(d.f.components()) {
        out.text(format!("  + {w} * |{c}|^2"));
    }
    for (w, c) in d.wminus.iter().zip(d.g.components()) {
        out.text(format!("  - {w} * |{c}|^2"));
    }
    out.record(json!({
        "record": "decomposition",
        "q_plus": d.q_plus(),
        "q_minus": d.q_minus(),
        "wplus": d.wplus.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "wminus": d.wminus.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "f": d.f.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "g": d.g.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    }));
    Ok(0)
}

fn run_tensor(args: &TensorArgs, out: &mut Output) -> Result<u8, Error> {
    let f = load_map(&args.f)?;
    let (label, t, g) = match &args.g {
        Some(gpath) => {
            let g = load_map(gpath)?;
            ("F (x) G".to_string(), tensor_product(&f, &g)?, Some(g))
        }
        None => ("F (x) z".to_string(), tensor_with_z(&f), None),
    };
    let rank = linear_rank(&t).rank;
    out.text(format!("{label}: {} components, linear rank {rank}", t.q()));
    out.record(json!({
        "record": "tensor",
        "components": t.q(),
        "rank": rank,
    }));
    if let Some(g) = &g {
        match specrk_bounds(&f, g) {
            Ok((lo, hi)) => {
                out.text(format!("rank window for maps with A = |F|^2 - |G|^2: [{lo}, {hi}]"));
                out.record(json!({ "record": "rank_window", "lower": lo, "upper": hi }));
            }
            Err(Error::ContainmentViolated) => {
                out.text(
                    "V_(G(x)z) is not contained in V_(F(x)z): no SOS identity can exist for |F|^2 - |G|^2"
                        .to_string(),
                );
                out.record(json!({ "record": "rank_window", "containment": false }));
            }
            Err(e) => return Err(e),
        }
        if let Some(samples) = args.profile {
            let ts: Vec<BigRational> = (0..=samples.max(1))
                .map(|k| BigRational::new(k.into(), samples.max(1).into()))
                .collect();
            let profile = family_rank_profile(&f, g, &ts)?;
            for s in &profile {
                out.text(format!(
                    "  t = {:<8} rank {}{}",
                    s.t,
                    s.rank,
                    if s.cancellation { "  (cancellation)" } else { "" }
                ));
            }
            out.tagged("rank_profile", &profile);
        }
    }
    Ok(0)
}

fn run_degeneracy(args: &DegeneracyArgs, out: &mut Output) -> Result<u8, Error> {
    let seq = DegeneracySequence::new(args.n, args.dims.clone())?;
    let kreport = minimal_k_sequence(&seq)?;
    out.text(format!(
        "n = {}, dims {:?}: k_l = {:?}, k = {}, shifts m_l = {:?}",
        args.n,
        seq.dims(),
        kreport.k_values,
        kreport.k_total,
        kreport.shifts
    ));
    out.tagged("k_report", &kreport);
    if let Some(kappa) = args.kappa {
        let claim = verify_k_claim(&seq, kappa)?;
        out.text(claim.to_string());
        out.tagged("k_claim", &claim);
    }
    let mut exit = 0;
    if let Some(codim) = args.codim {
        let replay = replay_main_theorem(args.n, args.n + codim, &seq, !args.skip_sos_assumption)?;
        out.text(replay.to_string());
        out.tagged("replay", &replay);
        if !replay.within_bound {
            exit = 2;
        }
    }
    Ok(exit)
}

fn run_map(action: &MapAction, out: &mut Output) -> Result<u8, Error> {
    match action {
        MapAction::Verify { file } => {
            let map = load_map(file)?;
            let ball = BallMap::new(map)?;
            match is_proper_ball_map(&ball) {
                Ok(q) => {
                    out.text(format!(
                        "proper: S^{} -> S^{}, |f|^2 - 1 = q * (|z|^2 - 1) with q = {q}",
                        ball.source_cr_dim(),
                        ball.target_cr_dim()
                    ));
                    out.record(json!({
                        "record": "map_verify",
                        "proper": true,
                        "source_cr_dim": ball.source_cr_dim(),
                        "target_cr_dim": ball.target_cr_dim(),
                        "quotient": write_hermitian_form(&q),
                    }));
                    Ok(0)
                }
                Err(Error::NotProper { point, value }) => {
                    out.text(format!(
                        "not proper: |f|^2 = {value} at sphere point {point}"
                    ));
                    out.record(json!({
                        "record": "map_verify",
                        "proper": false,
                        "witness_point": point,
                        "witness_value": value,
                    }));
                    Ok(0)
                }
                Err(e) => Err(e),
            }
        }
        MapAction::Report { file } => {
            let map = load_map(file)?;
            let ball = BallMap::new(map)?;
            let report = check_gap_conclusion(&ball)?;
            out.text(report.to_string());
            out.tagged("map_report", &report);
            Ok(if report.within_bound == Some(false) { 2 } else { 0 })
        }
    }
}

fn run_search(args: &SearchArgs, out: &mut Output) -> Result<u8, Error> {
    let target = Target::parse(&args.target)?;
    let mode = if args.exhaustive {
        Mode::Exhaustive {
            max_components: args.max_components,
        }
    } else {
        Mode::Random {
            trials: args.trials,
            seed: args.seed,
        }
    };
    let mut config = SearchConfig::new(args.n, args.degree, target, mode);
    config.coefficient_set = args
        .coeffs
        .iter()
        .map(|t| parse_gaussian_token(t))
        .collect::<Result<Vec<_>, _>>()?;
    let report = if args.exhaustive {
        exhaustive_scan(&config)?
    } else {
        falsify(&config)?
    };
    out.text(format!(
        "examined {} | identities {} | candidates {} | discrepancies {}",
        report.stats.examined,
        report.stats.identities,
        report.stats.candidates,
        report.stats.discrepancies
    ));
    let ranks: Vec<String> = report
        .stats
        .rank_histogram
        .iter()
        .map(|(r, c)| format!("r={r}:{c}"))
        .collect();
    out.text(format!("rank histogram: {}", ranks.join(" ")));
    let classes: Vec<String> = report
        .stats
        .class_histogram
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect();
    out.text(format!("classification histogram: {}", classes.join(" ")));
    for r in &report.reports {
        if r.verdict == Verdict::CounterexampleCandidate {
            out.text(format!(
                "CANDIDATE #{}: {} rank {} class {} (q+={}, q-={})",
                r.id, r.p_summary, r.rank, r.classification, r.q_plus, r.q_minus
            ));
            if let Some(instance) = &r.instance {
                out.text(instance.clone());
            }
        }
    }
    out.tagged("search_stats", &report.stats);
    for r in &report.reports {
        out.tagged("instance", r);
    }
    Ok(if report.has_candidates() { 2 } else { 0 })
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<u8, Error> {
    match &cli.command {
        Command::Gaps(args) => {
            let params = json!({ "n": args.n, "max_n": args.max_n });
            manifest(out, "gaps", params, &[]);
            run_gaps(args, out)
        }
        Command::CheckSos { file } => {
            let inputs = digests(&[file])?;
            manifest(out, "check-sos", json!({ "file": file.display().to_string() }), &inputs);
            run_check_sos(file, out)
        }
        Command::Classify { n, r } => {
            manifest(out, "classify", json!({ "n": n, "r": r }), &[]);
            run_classify(*n, *r, out)
        }
        Command::Decompose { file } => {
            let inputs = digests(&[file])?;
            manifest(out, "decompose", json!({ "file": file.display().to_string() }), &inputs);
            run_decompose(file, out)
        }
        Command::Tensor(args) => {
            let mut files = vec![&args.f];
            if let Some(g) = &args.g {
                files.push(g);
            }
            let inputs = digests(&files)?;
            let params = json!({
                "f": args.f.display().to_string(),
                "g": args.g.as_ref().map(|p| p.display().to_string()),
                "profile": args.profile,
            });
            manifest(out, "tensor", params, &inputs);
            run_tensor(args, out)
        }
        Command::Degeneracy(args) => {
            let params = json!({
                "n": args.n,
                "dims": args.dims,
                "kappa": args.kappa,
                "codim": args.codim,
                "skip_sos_assumption": args.skip_sos_assumption,
            });
            manifest(out, "degeneracy", params, &[]);
            run_degeneracy(args, out)
        }
        Command::Map { action } => {
            let file = match action {
                MapAction::Verify { file } | MapAction::Report { file } => file,
            };
            let inputs = digests(&[file])?;
            let sub = match action {
                MapAction::Verify { .. } => "map verify",
                MapAction::Report { .. } => "map report",
            };
            manifest(out, sub, json!({ "file": file.display().to_string() }), &inputs);
            run_map(action, out)
        }
        Command::Search(args) => {
            let params = json!({
                "target": args.target,
                "n": args.n,
                "degree": args.degree,
                "trials": args.trials,
                "seed": args.seed,
                "exhaustive": args.exhaustive,
                "coeffs": args.coeffs,
                "max_components": args.max_components,
            });
            manifest(out, "search", params, &[]);
            run_search(args, out)
        }
    }
}

fn digests(files: &[&PathBuf]) -> Result<Vec<(String, String)>, Error> {
    files
        .iter()
        .map(|f| {
            digest_file(f).map_err(|e| Error::Parse {
                detail: format!("{}: {e}", f.display()),
            })
        })
        .collect()
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SOSGAP_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    // exit 1 on argument errors; clap's default of 2 is reserved for
    // counterexample candidates
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let mut out = Output::new(cli.format);
    match dispatch(&cli, &mut out) {
        Ok(code) => {
            out.emit();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
