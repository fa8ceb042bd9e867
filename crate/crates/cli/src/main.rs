//! Command-line front end: validation, structural analysis, deconstruction
//! reports, bound certificates, ratio reports, generation, DOT export, and
//! corpus verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use ordaut::bounds::{
    check_certificate, iou_bound, natural_union, primitive_orbit_bound,
    verify_controllednest_constant, BoundOutcome,
};
use ordaut::catalog;
use ordaut::counting::{
    ac_ratio_capped, aut_group, constructive_endo_lower_bound, count_endomorphisms_capped,
    count_frame_endomorphisms, EndCount,
};
use ordaut::deconstruction::{deconstruction_sequence, verify_factorization, NoncutPolicy};
use ordaut::orbit_structure::{
    interdependent_orbit_unions, is_max_locked, orbit_graph, orbit_graph_dot, tighten,
    union_element_sets, OrbitFrame, StructuredPoset,
};
use ordaut::poset_core::{parse_poset_with_frame, to_poset_text, Poset};

const VERSION_HEADER: &str = concat!("ordaut ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "ordaut", version, about = "poset automorphism machinery")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// worker threads for corpus verification
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// cap on explicit automorphism-group enumeration
    #[arg(long, global = true, default_value_t = 1_000_000)]
    aut_cap: usize,
    /// cap on the poset size for exact endomorphism counting
    #[arg(long, global = true, default_value_t = 16)]
    end_cap: usize,
    /// seed for generators and random corpora
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a poset file and report basic well-formedness
    Validate { file: PathBuf },
    /// Structural report: size, height, width, automorphisms, orbits, unions
    Analyze { file: PathBuf },
    /// Step-by-step deconstruction report for each orbit union
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Policy::First)]
        policy: Policy,
    },
    /// Bound certificates for the orbit unions
    Bound { file: PathBuf },
    /// |Aut| / |End| ratio report
    Ratio { file: PathBuf },
    /// Automorphism and endomorphism counts
    Count { file: PathBuf },
    /// Emit a catalog poset in the poset file format
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// primary size parameter
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// secondary parameter (blow-up factor)
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// rank levels for random generation
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// cover density percentage for random generation
        #[arg(long, default_value_t = 30)]
        density: u32,
    },
    /// DOT rendering of the orbit graph
    ExportDot { file: PathBuf },
    /// Run the invariant suites over small and seeded random posets
    CorpusVerify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// number of seeded random posets
        #[arg(long, default_value_t = 100)]
        random_count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    First,
    MaxCell,
    MinCell,
}

impl From<Policy> for NoncutPolicy {
    fn from(p: Policy) -> NoncutPolicy {
        match p {
            Policy::First => NoncutPolicy::First,
            Policy::MaxCell => NoncutPolicy::MaxCell,
            Policy::MinCell => NoncutPolicy::MinCell,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Antichain,
    Chain,
    StandardExample,
    TwoChains,
    Crown,
    CrownBlownUp,
    NoDEndos,
    TransmitDrive,
    Random,
}

fn rational_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn load(file: &PathBuf) -> Result<(Poset, Option<Vec<Vec<usize>>>), String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    parse_poset_with_frame(&text).map_err(|e| format!("{}: {e}", file.display()))
}

/// The structured set to operate on: the provided frame, or the natural
/// frame, tightened either way.
fn structured(p: &Poset, frame: Option<Vec<Vec<usize>>>) -> Result<StructuredPoset, String> {
    let sp = match frame {
        Some(cells) => {
            let f = OrbitFrame::new(p, cells).map_err(|e| e.to_string())?;
            StructuredPoset::new(p.clone(), f)
        }
        None => StructuredPoset::natural(p.clone()),
    };
    Ok(tighten(&sp))
}

fn echo_header(cli: &Cli) -> Value {
    json!({
        "version": VERSION_HEADER,
        "seed": cli.seed,
        "aut_cap": cli.aut_cap,
        "end_cap": cli.end_cap,
    })
}

fn emit(cli: &Cli, report: &Value, text: String) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string(report).expect("serializable")),
        Format::Text => {
            println!("{VERSION_HEADER}");
            print!("{text}");
        }
    }
}

fn cmd_validate(cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let frame_report = match &frame {
        Some(cells) => match OrbitFrame::new(&p, cells.clone()) {
            Ok(f) => json!({ "present": true, "valid": true, "cells": f.len() }),
            Err(e) => json!({ "present": true, "valid": false, "error": e.to_string() }),
        },
        None => json!({ "present": false }),
    };
    let report = json!({
        "header": echo_header(cli),
        "file": file.display().to_string(),
        "elements": p.size(),
        "covers": p.covers().len(),
        "frame": frame_report,
        "valid": frame.is_none() || frame_report["valid"] == json!(true),
    });
    let text = format!(
        "{}: {} elements, {} cover pairs, frame: {}\n",
        file.display(),
        p.size(),
        p.covers().len(),
        if frame.is_some() { "present" } else { "absent" }
    );
    emit(cli, &report, text);
    if report["valid"] == json!(false) {
        return Err("invalid frame".into());
    }
    Ok(())
}

fn cmd_analyze(cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let (_, height, width) = p.rank_height_width();
    let aut = aut_group(&p).order();
    let sp = structured(&p, frame)?;
    let og = orbit_graph(&sp);
    let unions = interdependent_orbit_unions(&og);
    let report = json!({
        "header": echo_header(cli),
        "n": p.size(),
        "height": height,
        "width": width,
        "aut_order": aut.to_string(),
        "orbits": sp.frame.len(),
        "unions": unions.len(),
        "tight": sp.tight,
        "max_locked": is_max_locked(&p),
    });
    let text = format!(
        "n={}, height {}, width {}, |Aut| = {}, {} orbits, {} interdependent orbit union{}, max-locked = {}\n",
        p.size(),
        height,
        width,
        aut,
        sp.frame.len(),
        unions.len(),
        if unions.len() == 1 { "" } else { "s" },
        is_max_locked(&p)
    );
    emit(cli, &report, text);
    Ok(())
}

fn union_structures(p: &Poset, sp: &StructuredPoset) -> Vec<(Vec<usize>, StructuredPoset)> {
    let og = orbit_graph(sp);
    let sets = union_element_sets(&og);
    let cell_of = sp.frame.cell_of(p.size());
    sets.into_iter()
        .filter(|set| set.len() >= 2)
        .map(|set| {
            let (sub, map) = p.induced(&set);
            let mut by_cell: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for (local, &orig) in map.iter().enumerate() {
                by_cell.entry(cell_of[orig]).or_default().push(local);
            }
            let f = OrbitFrame::new(&sub, by_cell.into_values().collect())
                .expect("restricted frame stays valid");
            (set, tighten(&StructuredPoset::new(sub, f)))
        })
        .collect()
}

fn cmd_decompose(cli: &Cli, file: &PathBuf, policy: Policy) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let sp = structured(&p, frame)?;
    let mut lines = Vec::new();
    let mut text = String::new();
    for (idx, (set, u)) in union_structures(&p, &sp).into_iter().enumerate() {
        if !u.tight || u.frame.len() < 3 {
            lines.push(json!({
                "union": idx, "elements": set, "steps": [],
                "note": if u.tight { "fewer than three cells" } else { "not tight" },
            }));
            text.push_str(&format!("union {idx}: skipped ({} cells, tight = {})\n", u.frame.len(), u.tight));
            continue;
        }
        let seq = deconstruction_sequence(&u, policy.into()).map_err(|e| e.to_string())?;
        let mut steps = Vec::new();
        let mut current = u.clone();
        for step in &seq.steps {
            let verification = verify_factorization(&current, step.context.removed_cell, cli.aut_cap)
                .map(|(lhs, l, r, eq)| {
                    json!({ "whole": lhs.to_string(), "kept": l.to_string(), "residual": r.to_string(), "equal": eq })
                })
                .unwrap_or_else(|e| json!({ "error": e.to_string() }));
            steps.push(json!({
                "removed_cell": step.context.removed_cell,
                "s": step.context.s,
                "t": step.context.t,
                "antichain_cell_sizes": step.context.nontrivial_antichain_sizes(),
                "verification": verification,
            }));
            text.push_str(&format!(
                "union {idx}: remove cell {}, s={}, t={}, nontrivial antichains {:?}\n",
                step.context.removed_cell,
                step.context.s,
                step.context.t,
                step.context.nontrivial_antichain_sizes()
            ));
            current = step.u_n.clone();
        }
        lines.push(json!({
            "union": idx,
            "elements": set,
            "steps": steps,
            "b": seq.b,
        }));
        text.push_str(&format!("union {idx}: b = {:?}\n", seq.b));
    }
    let report = json!({ "header": echo_header(cli), "unions": lines });
    emit(cli, &report, text);
    Ok(())
}

fn outcome_json(outcome: &BoundOutcome, exact_order: Option<&BigUint>) -> Value {
    match outcome {
        BoundOutcome::Certified(cert) => {
            let sound = exact_order.map(|o| check_certificate(o, cert));
            json!({
                "status": "certified",
                "target": cert.target,
                "n": cert.n,
                "exponent": rational_json(&cert.exponent),
                "claim": cert.claim,
                "rule": cert.derivation.rule,
                "checked_against_exact_order": sound,
            })
        }
        BoundOutcome::Refused(r) => json!({
            "status": "refused",
            "reason": r.reason,
            "cell": r.cell,
            "level": r.level,
            "lock_cycles": r.lock_cycles.iter().map(|c| json!({
                "cycle": c.cycle, "m": c.m, "locked_pairs": c.locked_pairs,
            })).collect::<Vec<_>>(),
        }),
    }
}

fn cmd_bound(cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let sp = structured(&p, frame)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    let constant = verify_controllednest_constant();
    for (idx, (_, u)) in union_structures(&p, &sp).into_iter().enumerate() {
        let order = ordaut::orbit_structure::frame_automorphisms(&u).order();
        let outcome = iou_bound(&u).map_err(|e| e.to_string())?;
        let primitive = primitive_orbit_bound(&u).ok();
        let j = json!({
            "union": idx,
            "iou_bound": outcome_json(&outcome, Some(&order)),
            "primitive_orbit_bound": primitive.as_ref().map(|o| outcome_json(o, Some(&order))),
        });
        match &outcome {
            BoundOutcome::Certified(cert) => text.push_str(&format!(
                "union {idx}: certified exponent {}/{} ({})\n",
                cert.exponent.numer(),
                cert.exponent.denom(),
                cert.claim
            )),
            BoundOutcome::Refused(r) => {
                text.push_str(&format!("union {idx}: certificate refused: {}\n", r.reason));
                for c in &r.lock_cycles {
                    text.push_str(&format!(
                        "  lock cycle through cells {:?} with level size {}\n",
                        c.cycle, c.m
                    ));
                }
            }
        }
        entries.push(j);
    }
    let report = json!({
        "header": echo_header(cli),
        "nesting_constant": {
            "levels_max": rational_json(&constant.levels_max),
            "tail": rational_json(&constant.tail),
            "total": rational_json(&constant.total),
        },
        "unions": entries,
    });
    emit(cli, &report, text);
    Ok(())
}

fn cmd_ratio(cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, _) = load(file)?;
    let r = ac_ratio_capped(&p, cli.end_cap);
    let (end_value, end_exact) = match &r.end_count {
        EndCount::Exact(v) => (v.to_string(), true),
        EndCount::LowerBound(v) => (v.to_string(), false),
    };
    let report = json!({
        "header": echo_header(cli),
        "aut_order": r.aut_order.to_string(),
        "end_count": { "value": end_value, "exact": end_exact },
        "lg_ratio_upper": rational_json(&r.lg_ratio_upper),
    });
    let text = format!(
        "|Aut| = {}, |End| {} {}, lg ratio upper bound {}/{}\n",
        r.aut_order,
        if end_exact { "=" } else { ">=" },
        end_value,
        r.lg_ratio_upper.numer(),
        r.lg_ratio_upper.denom()
    );
    emit(cli, &report, text);
    Ok(())
}

fn cmd_count(cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let aut = aut_group(&p).order();
    let endos = count_endomorphisms_capped(&p, cli.end_cap);
    let family = constructive_endo_lower_bound(&p);
    let frame_endos = frame
        .as_ref()
        .map(|cells| count_frame_endomorphisms(&p, cells).map(|v| v.to_string()));
    let report = json!({
        "header": echo_header(cli),
        "aut_order": aut.to_string(),
        "end_count": match &endos {
            Ok(v) => json!({ "value": v.to_string(), "exact": true }),
            Err(_) => json!({ "value": family.count.to_string(), "exact": false }),
        },
        "constructive_family": {
            "description": family.description,
            "count": family.count.to_string(),
            "verified": family.verified,
        },
        "frame_end_count": frame_endos.map(|r| match r {
            Ok(v) => json!(v),
            Err(e) => json!({ "error": e.to_string() }),
        }),
    });
    let text = format!(
        "|Aut| = {aut}, |End| {} ({} via {})\n",
        match &endos {
            Ok(v) => format!("= {v}"),
            Err(_) => format!(">= {}", family.count),
        },
        family.count,
        family.description
    );
    emit(cli, &report, text);
    Ok(())
}

fn cmd_generate(cli: &Cli, family: Family, n: usize, k: usize, levels: usize, density: u32) -> Result<(), String> {
    let (p, frame) = match family {
        Family::Antichain => (catalog::antichain(n), None),
        Family::Chain => (catalog::chain(n), None),
        Family::StandardExample => (catalog::standard_example(n).map_err(|e| e.to_string())?, None),
        Family::TwoChains => (catalog::disjoint_two_chains(n).map_err(|e| e.to_string())?, None),
        Family::Crown => (catalog::crown(n).map_err(|e| e.to_string())?, None),
        Family::CrownBlownUp => (catalog::crown_blown_up(n, k).map_err(|e| e.to_string())?, None),
        Family::NoDEndos => (
            catalog::no_d_endos(n).map_err(|e| e.to_string())?,
            Some(catalog::no_d_endos_frame(n)),
        ),
        Family::TransmitDrive => (catalog::transmit_drive(), Some(catalog::transmit_drive_frame())),
        Family::Random => (
            catalog::random_poset(n, cli.seed, levels, density).map_err(|e| e.to_string())?,
            None,
        ),
    };
    print!("{}", to_poset_text(&p, frame.as_deref()));
    Ok(())
}

fn cmd_export_dot(_cli: &Cli, file: &PathBuf) -> Result<(), String> {
    let (p, frame) = load(file)?;
    let sp = structured(&p, frame)?;
    let og = orbit_graph(&sp);
    print!("{}", orbit_graph_dot(&og));
    Ok(())
}

/// One corpus poset's invariant run. Returns violations.
fn verify_poset(p: &Poset, end_cap: usize) -> Vec<String> {
    let mut bad = Vec::new();
    // factorization identity over the natural unions
    let (lhs, rhs, equal) = ordaut::orbit_structure::factorization_check(p);
    if !equal {
        bad.push(format!("factorization {lhs} != {rhs} for covers {:?}", p.covers()));
    }
    // width against the brute-force oracle
    if p.size() <= 16 && p.width() != p.width_bruteforce() {
        bad.push("width mismatch against brute force".into());
    }
    // coconnectivity cross-check
    if p.size() <= 16 && p.is_coconnected() != p.is_coconnected_bruteforce() {
        bad.push("coconnectivity mismatch against brute force".into());
    }
    // automorphism order against the brute-force oracle
    if p.size() <= 8 {
        let fast = aut_group(p).order();
        let brute = ordaut::counting::aut_order_bruteforce(p);
        if fast != brute {
            bad.push(format!("aut order {fast} != brute {brute}"));
        }
    }
    // constructive endomorphism floor against the exact count
    if p.size() <= end_cap {
        if let Ok(endos) = count_endomorphisms_capped(p, end_cap) {
            let family = constructive_endo_lower_bound(p);
            if family.verified && family.count > endos {
                bad.push(format!(
                    "constructive family {} exceeds exact count {endos}",
                    family.count
                ));
            }
        }
    }
    // certificate soundness on the tight unions
    let sp = StructuredPoset::natural(p.clone());
    let og = orbit_graph(&sp);
    let count = union_element_sets(&og).len();
    for idx in 0..count {
        let Ok(u) = natural_union(p, idx) else { continue };
        if !u.tight || u.size() < 2 {
            continue;
        }
        let order = ordaut::orbit_structure::frame_automorphisms(&u).order();
        if let Ok(BoundOutcome::Certified(cert)) = iou_bound(&u) {
            if !check_certificate(&order, &cert) {
                bad.push(format!("iou certificate unsound on union {idx}"));
            }
        }
        if let Ok(BoundOutcome::Certified(cert)) = primitive_orbit_bound(&u) {
            if !check_certificate(&order, &cert) {
                bad.push(format!("primitive certificate unsound on union {idx}"));
            }
        }
    }
    bad
}

fn cmd_corpus_verify(cli: &Cli, max_n: usize, random_count: usize) -> Result<bool, String> {
    let mut corpus: Vec<Poset> = Vec::new();
    for n in 1..=max_n.min(6) {
        corpus.extend(ordaut::catalog::enumerate_small_posets(n).map_err(|e| e.to_string())?);
    }
    for i in 0..random_count {
        let n = 4 + (i % 7);
        corpus.push(
            catalog::random_poset(n, cli.seed.wrapping_add(i as u64), 3, 35)
                .map_err(|e| e.to_string())?,
        );
    }
    let jobs = cli.jobs.max(1);
    let end_cap = cli.end_cap;
    let chunks: Vec<Vec<Poset>> = corpus
        .chunks(corpus.len().div_ceil(jobs).max(1))
        .map(|c| c.to_vec())
        .collect();
    let mut violations: Vec<String> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    chunk.iter().flat_map(|p| verify_poset(p, end_cap)).collect::<Vec<String>>()
                })
            })
            .collect();
        for h in handles {
            violations.extend(h.join().expect("worker panicked"));
        }
    });
    let report = json!({
        "header": echo_header(cli),
        "corpus_size": corpus.len(),
        "violations": violations,
        "ok": violations.is_empty(),
    });
    let mut text = format!(
        "verified {} posets: {}\n",
        corpus.len(),
        if violations.is_empty() { "all invariants hold" } else { "VIOLATIONS FOUND" }
    );
    for v in &violations {
        text.push_str(&format!("  violation: {v}\n"));
    }
    emit(cli, &report, text);
    Ok(violations.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool, String> = match &cli.command {
        Command::Validate { file } => cmd_validate(&cli, file).map(|_| true),
        Command::Analyze { file } => cmd_analyze(&cli, file).map(|_| true),
        Command::Decompose { file, policy } => cmd_decompose(&cli, file, *policy).map(|_| true),
        Command::Bound { file } => cmd_bound(&cli, file).map(|_| true),
        Command::Ratio { file } => cmd_ratio(&cli, file).map(|_| true),
        Command::Count { file } => cmd_count(&cli, file).map(|_| true),
        Command::Generate { family, n, k, levels, density } => {
            cmd_generate(&cli, *family, *n, *k, *levels, *density).map(|_| true)
        }
        Command::ExportDot { file } => cmd_export_dot(&cli, file).map(|_| true),
        Command::CorpusVerify { max_n, random_count } => {
            cmd_corpus_verify(&cli, *max_n, *random_count)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        // corpus verification found a genuine invariant violation
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
