//! Command-line front end.
//!
//! Exit codes: `0` success (and all verifications passed), `1` a
//! verification failed (a table row, bound, or cross-check was contradicted
//! by the graph), `2` usage errors (bad flags, unknown family, capacity).
//!
//! With `--json`, every command prints one stable, versioned JSON document;
//! rerunning with the same flags and seed reproduces it byte for byte, for
//! any `--threads` value.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand};

use crate::density::{
    self, check_bound, check_recursion, density_slope_estimate, pi_table, standard_bounds,
    StepBound,
};
use crate::graph::{DomainLabel, Graph, GraphSpec, SubsetLabel, TupleLabel};
use crate::hamming;
use crate::johnson;
use crate::report::CheckReport;
use crate::search::{vc_dimension_pruned, SearchBudget};
use crate::set_system::{NeighborhoodMode, SetSystem};
use crate::witness::{
    builtin_witnesses, certificate_to_witness, export_witness, import_witness_value,
    verify_witness, WitnessTable,
};

#[derive(Parser, Debug)]
#[command(
    name = "vcgraph",
    version,
    about = "Shattering, VC-dimension, and shatter-function analysis for Johnson, Hamming, and rook graphs"
)]
struct Cli {
    /// Worker threads for exhaustive scans (default: all cores). Output is
    /// identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit a machine-readable JSON document instead of text.
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    json: bool,

    /// Write the command's artifact (graph, certificate, or table) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and print it as an adjacency list (or JSON).
    Gen {
        #[arg(long)]
        family: String,
        /// Comma-separated integer parameters, e.g. `7,2`.
        #[arg(long)]
        params: String,
    },
    /// VC-dimension of the neighbourhood set system, with a certificate.
    Vcdim {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        /// Use closed neighbourhoods instead of open ones.
        #[arg(long, action = ArgAction::SetTrue)]
        closed: bool,
    },
    /// Check whether an explicit vertex set is shattered.
    Shatter {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        /// Comma-separated vertex labels with dash-joined elements,
        /// e.g. `1-3,1-4,1-5,1-6` for subsets or `0-0-1,0-1-0` for tuples.
        #[arg(long)]
        set: String,
        #[arg(long, action = ArgAction::SetTrue)]
        closed: bool,
    },
    /// Classify a 4-subset of a Johnson neighbourhood into one of the
    /// sixteen configurations.
    Classify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        /// `centre:v1,v2,v3,v4` with dash-joined subset labels,
        /// e.g. `1-2:1-3,1-4,1-5,1-6`.
        #[arg(long)]
        quad: String,
    },
    /// Verify witness tables row by row against freshly built graphs.
    Verify {
        /// Verify the built-in tables.
        #[arg(long, action = ArgAction::SetTrue)]
        builtin: bool,
        /// Verify a witness document from a JSON file.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Shatter-function table plus every applicable growth bound.
    Density {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        /// Largest set size to tabulate.
        #[arg(long)]
        nmax: u32,
        /// Force exhaustive scanning regardless of the evaluation cap.
        #[arg(long, action = ArgAction::SetTrue, conflicts_with = "budget")]
        exact: bool,
        /// Restart count for the sampled (lower-bound) mode.
        #[arg(long)]
        budget: Option<u32>,
        /// Seed for the sampled mode; echoed in the output.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, action = ArgAction::SetTrue)]
        closed: bool,
    },
    /// Replay the closed-form Johnson/Hamming predicates against brute
    /// force on a concrete graph; nonzero exit on any mismatch.
    OracleCheck {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
    },
}

enum CliError {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    /// `false` means a verification failed: exit 1.
    verified: bool,
    /// Artifact written to `--out` (defaults to the stdout document).
    artifact: Option<String>,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome {
            text,
            json,
            verified: true,
            artifact: None,
        }
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output with exit code 0.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    if let Some(threads) = cli.threads {
        // Ignore the error when a pool already exists (repeated in-process
        // calls); the chunked reductions are thread-count independent anyway.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(outcome) => {
            let document = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json)
                    .expect("output serializes");
                s.push('\n');
                s
            } else {
                outcome.text.clone()
            };
            if let Some(path) = &cli.out {
                let artifact = outcome.artifact.as_ref().unwrap_or(&document);
                if let Err(e) = std::fs::write(path, artifact) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
                // Keep stdout byte-deterministic; the path note goes to stderr.
                eprintln!("artifact written: {}", path.display());
            }
            let _ = stdout.write_all(document.as_bytes());
            if outcome.verified {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen { family, params } => gen_command(family, params),
        Command::Vcdim {
            family,
            params,
            closed,
        } => vcdim_command(family, params, *closed),
        Command::Shatter {
            family,
            params,
            set,
            closed,
        } => shatter_command(family, params, set, *closed),
        Command::Classify {
            family,
            params,
            quad,
        } => classify_command(family, params, quad),
        Command::Verify { builtin, file } => verify_command(*builtin, file.as_deref()),
        Command::Density {
            family,
            params,
            nmax,
            exact,
            budget,
            seed,
            closed,
        } => density_command(family, params, *nmax, *exact, *budget, *seed, *closed),
        Command::OracleCheck { family, params } => oracle_check_command(family, params),
    }
}

fn parse_spec(family: &str, params: &str) -> Result<GraphSpec, CliError> {
    let values: Vec<u32> = params
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad parameter '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    Ok(GraphSpec::parse(family, &values)?)
}

fn parse_label(spec: &GraphSpec, text: &str) -> Result<DomainLabel, CliError> {
    let ints: Vec<u32> = text
        .split('-')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad label component '{p}' in '{text}'")))
        })
        .collect::<Result<_, _>>()?;
    Ok(match spec {
        GraphSpec::Johnson { .. } => DomainLabel::Subset(
            SubsetLabel::from_unsorted(ints).map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        GraphSpec::Hamming { .. } => DomainLabel::Tuple(TupleLabel::new(ints)),
        GraphSpec::Rook { .. } => {
            if ints.len() != 2 {
                return Err(CliError::Usage(format!(
                    "rook labels are row-col pairs, got '{text}'"
                )));
            }
            DomainLabel::Pair {
                row: ints[0],
                col: ints[1],
            }
        }
        GraphSpec::Complete { .. } | GraphSpec::SubdividedComplete { .. } => {
            if ints.len() != 1 {
                return Err(CliError::Usage(format!(
                    "vertex labels for this family are single ids, got '{text}'"
                )));
            }
            DomainLabel::Index(ints[0] as u64)
        }
    })
}

fn resolve_labels(
    g: &Graph,
    spec: &GraphSpec,
    list: &str,
) -> Result<(Vec<DomainLabel>, Vec<usize>), CliError> {
    let labels: Vec<DomainLabel> = list
        .split(',')
        .map(|t| parse_label(spec, t))
        .collect::<Result<_, _>>()?;
    let ids = labels
        .iter()
        .map(|l| {
            g.vertex_with_label(l)
                .ok_or_else(|| CliError::Usage(format!("label {l} is not a vertex of {spec}")))
        })
        .collect::<Result<_, _>>()?;
    Ok((labels, ids))
}

fn graph_json(spec: &GraphSpec) -> serde_json::Value {
    serde_json::json!({
        "family": spec.family_tag().family_name(),
        "params": spec.family_tag().params(),
    })
}

fn report_json(report: &CheckReport) -> serde_json::Value {
    serde_json::json!({
        "passed": report.passed(),
        "items": report.items.iter().map(|i| serde_json::json!({
            "name": i.name,
            "pass": i.pass,
            "detail": i.detail,
        })).collect::<Vec<_>>(),
    })
}

fn gen_command(family: &str, params: &str) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let g = spec.build()?;
    let text = g.to_adjacency_text();
    let json = g.to_json();
    Ok(Outcome {
        artifact: Some(text.clone()),
        ..Outcome::ok(text, json)
    })
}

fn vcdim_command(family: &str, params: &str, closed: bool) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let g = spec.build()?;
    let mode = if closed {
        NeighborhoodMode::Closed
    } else {
        NeighborhoodMode::Open
    };
    let ss = SetSystem::neighborhoods(&g, mode);
    let (dim, cert) = vc_dimension_pruned(&ss);
    let dimension = dim.as_finite().ok_or_else(|| {
        CliError::Usage("the graph is empty; its neighbourhood family has no members".into())
    })?;
    let cert = cert.expect("finite dimension has a certificate");

    let base_labels: Vec<String> = cert
        .base_set()
        .iter()
        .map(|&v| g.label(v).to_string())
        .collect();
    let mut text = format!(
        "graph: {} ({} vertices)\nneighborhoods: {}\nvc_dimension: {}\nwitness base set: {}\n",
        spec,
        g.num_vertices(),
        if closed { "closed" } else { "open" },
        dimension,
        if base_labels.is_empty() {
            "{} (empty set)".to_string()
        } else {
            base_labels.join(" ")
        },
    );

    let certificate_json = if closed {
        serde_json::json!({
            "base_set": cert.base_set().iter().map(|&v| g.label(v).to_json()).collect::<Vec<_>>(),
            "witnesses": cert.witnesses().iter().enumerate().map(|(mask, &w)| serde_json::json!({
                "subset_mask": mask,
                "witness_label": g.label(w).to_json(),
            })).collect::<Vec<_>>(),
        })
    } else {
        let doc = certificate_to_witness(&g, &cert, "search certificate")?;
        export_witness(&doc)
    };
    let json = serde_json::json!({
        "schema_version": 1,
        "command": "vcdim",
        "graph": graph_json(&spec),
        "neighborhoods": if closed { "closed" } else { "open" },
        "vc_dimension": dimension,
        "certificate": certificate_json,
    });
    let mut artifact = serde_json::to_string_pretty(&certificate_json).expect("serializes");
    artifact.push('\n');
    let _ = writeln!(text, "certificate rows: {}", cert.witnesses().len());
    Ok(Outcome {
        text,
        json,
        verified: true,
        artifact: Some(artifact),
    })
}

fn shatter_command(
    family: &str,
    params: &str,
    set: &str,
    closed: bool,
) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let g = spec.build()?;
    let (labels, ids) = resolve_labels(&g, &spec, set)?;
    let mode = if closed {
        NeighborhoodMode::Closed
    } else {
        NeighborhoodMode::Open
    };
    let ss = SetSystem::neighborhoods(&g, mode);
    let cert = ss.is_shattered(&ids)?;
    let mut text = format!(
        "graph: {}\nset: {}\nshattered: {}\n",
        spec,
        labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        cert.is_some()
    );
    let certificate = cert.map(|c| {
        let rows: Vec<serde_json::Value> = c
            .witnesses()
            .iter()
            .enumerate()
            .map(|(mask, &w)| {
                serde_json::json!({
                    "subset_mask": mask,
                    "witness_label": g.label(w).to_json(),
                })
            })
            .collect();
        for (mask, &w) in c.witnesses().iter().enumerate() {
            let _ = writeln!(text, "  mask {:#06b}: witness {}", mask, g.label(w));
        }
        rows
    });
    let json = serde_json::json!({
        "schema_version": 1,
        "command": "shatter",
        "graph": graph_json(&spec),
        "neighborhoods": if closed { "closed" } else { "open" },
        "set": labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        "shattered": certificate.is_some(),
        "witnesses": certificate,
    });
    Ok(Outcome::ok(text, json))
}

fn classify_command(family: &str, params: &str, quad: &str) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let GraphSpec::Johnson { .. } = spec else {
        return Err(CliError::Usage(
            "classify applies to Johnson graphs only".into(),
        ));
    };
    let (centre_text, quad_text) = quad
        .split_once(':')
        .ok_or_else(|| CliError::Usage("--quad expects 'centre:v1,v2,v3,v4'".into()))?;
    let DomainLabel::Subset(centre) = parse_label(&spec, centre_text)? else {
        unreachable!("johnson labels are subsets");
    };
    let members: Vec<SubsetLabel> = quad_text
        .split(',')
        .map(|t| match parse_label(&spec, t) {
            Ok(DomainLabel::Subset(s)) => Ok(s),
            Ok(_) => unreachable!("johnson labels are subsets"),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    let qc = johnson::classify_four_subset(&centre, &members)?;
    let text = format!(
        "centre: {}\nquad: {}\ncase: {}\nshatters: {}\nremoved-element classes: {:?}\nadded-element classes: {:?}\nalignment cells: {:?}\n",
        centre,
        members
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        qc.case,
        qc.case.shatters(),
        qc.removed_partition,
        qc.added_partition,
        qc.alignment,
    );
    let json = serde_json::json!({
        "schema_version": 1,
        "command": "classify",
        "graph": graph_json(&spec),
        "centre": centre.elements(),
        "quad": members.iter().map(|m| m.elements().to_vec()).collect::<Vec<_>>(),
        "case": qc.case.roman(),
        "shatters": qc.case.shatters(),
        "removed_partition": qc.removed_partition,
        "added_partition": qc.added_partition,
        "alignment": qc.alignment.iter().map(|&(r, c)| vec![r, c]).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn verify_command(builtin: bool, file: Option<&std::path::Path>) -> Result<Outcome, CliError> {
    if !builtin && file.is_none() {
        return Err(CliError::Usage(
            "verify needs --builtin and/or --file <path>".into(),
        ));
    }
    let mut witnesses: Vec<WitnessTable> = Vec::new();
    if builtin {
        witnesses.extend(builtin_witnesses());
    }
    if let Some(path) = file {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&raw)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        witnesses.push(import_witness_value(&value)?);
    }
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all_pass = true;
    for w in &witnesses {
        let report = verify_witness(w)?;
        let passed = report.passed();
        all_pass &= passed;
        let _ = writeln!(
            text,
            "{}: {} ({}/{} rows pass)",
            w.source,
            if passed { "ok" } else { "FAILED" },
            report.items.iter().filter(|i| i.pass).count(),
            report.items.len(),
        );
        for f in report.failures() {
            let _ = writeln!(text, "  FAIL {}: {}", f.name, f.detail);
        }
        results.push(serde_json::json!({
            "source": w.source,
            "graph": graph_json(&w.graph),
            "report": report_json(&report),
        }));
    }
    let _ = writeln!(
        text,
        "{}/{} witness tables verified",
        results.len() - results.iter().filter(|r| !r["report"]["passed"].as_bool().unwrap()).count(),
        results.len()
    );
    let json = serde_json::json!({
        "schema_version": 1,
        "command": "verify",
        "passed": all_pass,
        "witnesses": results,
    });
    Ok(Outcome {
        text,
        json,
        verified: all_pass,
        artifact: None,
    })
}

fn density_command(
    family: &str,
    params: &str,
    nmax: u32,
    exact: bool,
    budget_restarts: Option<u32>,
    seed: Option<u64>,
    closed: bool,
) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let mut budget = if exact {
        SearchBudget::exact()
    } else {
        SearchBudget::default()
    };
    if let Some(r) = budget_restarts {
        budget.restarts = r;
    }
    if let Some(s) = seed {
        budget.seed = s;
    }
    let mode = if closed {
        NeighborhoodMode::Closed
    } else {
        NeighborhoodMode::Open
    };
    let table = pi_table(spec, mode, nmax, &budget)?;

    let mut text = format!(
        "graph: {}\nneighborhoods: {}\nseed: {}\n{}",
        spec,
        if closed { "closed" } else { "open" },
        budget.seed,
        density::table_to_csv(&table),
    );

    let mut bound_reports = Vec::new();
    let mut recursion_reports = Vec::new();
    let mut all_pass = true;
    if !closed {
        // The growth bounds are statements about the open-neighbourhood
        // (edge relation) system.
        let g = spec.build()?;
        let (vc, _) = crate::search::vc_dimension_edge(&g)?;
        for bound in standard_bounds(&spec, Some(vc)) {
            let report = check_bound(&table, &bound)?;
            all_pass &= report.passed();
            let _ = writeln!(
                text,
                "bound {}: {}",
                report.bound,
                if report.passed() { "ok" } else { "VIOLATED" }
            );
            bound_reports.push(serde_json::to_value(&report).expect("serializes"));
        }
        let step = match spec {
            GraphSpec::Johnson { m, k } => Some(StepBound::Johnson { m, k }),
            GraphSpec::Hamming { .. } => Some(StepBound::Hamming),
            _ => None,
        };
        if let Some(step) = step {
            let report = check_recursion(&table, &step);
            all_pass &= report.passed();
            let _ = writeln!(
                text,
                "recursion step {}: {}",
                report.step,
                if report.passed() { "ok" } else { "VIOLATED" }
            );
            recursion_reports.push(serde_json::to_value(&report).expect("serializes"));
        }
    }
    let slope = density_slope_estimate(&table).ok();
    if let Some(s) = slope {
        let _ = writeln!(
            text,
            "empirical log-log slope: {:.4} (residual {:.4}, {} rows; an indicator, not the class VC-density)",
            s.slope, s.residual, s.rows_used
        );
    }

    let json = serde_json::json!({
        "schema_version": 1,
        "command": "density",
        "table": density::table_to_json(&table),
        "bounds": bound_reports,
        "recursions": recursion_reports,
        "slope": slope.map(|s| serde_json::json!({
            "slope": s.slope,
            "residual": s.residual,
            "rows_used": s.rows_used,
            "note": "empirical growth indicator, not the class VC-density",
        })),
        "passed": all_pass,
    });
    Ok(Outcome {
        text,
        json,
        verified: all_pass,
        artifact: Some(density::table_to_csv(&table)),
    })
}

fn oracle_check_command(family: &str, params: &str) -> Result<Outcome, CliError> {
    let spec = parse_spec(family, params)?;
    let g = spec.build()?;
    let report = match spec {
        GraphSpec::Johnson { .. } => johnson::cross_check(&g)?,
        GraphSpec::Hamming { .. } => hamming::cross_check(&g)?,
        _ => {
            return Err(CliError::Usage(
                "oracle-check applies to johnson and hamming families".into(),
            ))
        }
    };
    let mut text = format!("graph: {spec}\n");
    for item in &report.items {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if item.pass { "ok  " } else { "FAIL" },
            item.name,
            item.detail
        );
    }
    let passed = report.passed();
    let json = serde_json::json!({
        "schema_version": 1,
        "command": "oracle-check",
        "graph": graph_json(&spec),
        "report": report_json(&report),
    });
    Ok(Outcome {
        text,
        json,
        verified: passed,
        artifact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(
            std::iter::once("vcgraph").chain(args.iter().copied()),
            &mut buf,
        );
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn vcdim_johnson_7_2() {
        let (code, out) = run_capture(&["vcdim", "--family", "johnson", "--params", "7,2"]);
        assert_eq!(code, 0);
        assert!(out.contains("vc_dimension: 4"), "{out}");
    }

    #[test]
    fn vcdim_hamming_2_3_is_below_three() {
        let (code, out) = run_capture(&["vcdim", "--family", "hamming", "--params", "2,3"]);
        assert_eq!(code, 0);
        assert!(out.contains("vc_dimension: 2"), "{out}");
    }

    #[test]
    fn verify_builtin_passes() {
        let (code, out) = run_capture(&["verify", "--builtin"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("5/5 witness tables verified"), "{out}");
    }

    #[test]
    fn classify_case_ii() {
        let (code, out) = run_capture(&[
            "classify",
            "--family",
            "johnson",
            "--params",
            "8,4",
            "--quad",
            "1-2-3-4:2-3-4-5,1-3-4-5,2-3-4-6,1-3-4-6",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("case: II"), "{out}");
    }

    #[test]
    fn gen_prints_adjacency() {
        let (code, out) = run_capture(&["gen", "--family", "complete", "--params", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0: 1 2\n1: 0 2\n2: 0 1\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _) = run_capture(&["gen", "--family", "moebius", "--params", "3"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["gen", "--family", "johnson", "--params", "x,y"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["verify"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["gen", "--family", "johnson", "--params", "40,20"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn oracle_check_hamming() {
        let (code, out) = run_capture(&["oracle-check", "--family", "hamming", "--params", "3,3"]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"), "{out}");
    }

    #[test]
    fn density_rook_with_bound_report() {
        let (code, out) = run_capture(&[
            "density", "--family", "rook", "--params", "3,3", "--nmax", "4", "--exact",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("n,pi,mode,witness"), "{out}");
        assert!(out.contains("bound min(n+1,3)*min(n+1,3): ok"), "{out}");
    }

    #[test]
    fn shatter_reports_figure_set() {
        let (code, out) = run_capture(&[
            "shatter",
            "--family",
            "johnson",
            "--params",
            "7,2",
            "--set",
            "1-3,1-4,1-5,1-6",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("shattered: true"), "{out}");
    }

    #[test]
    fn shatter_parses_rook_and_index_labels() {
        let (code, out) = run_capture(&[
            "shatter", "--family", "rook", "--params", "3,3", "--set", "0-1,1-0",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("shattered: true"), "{out}");

        let (code, out) = run_capture(&[
            "shatter", "--family", "complete", "--params", "5", "--set", "2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("shattered: true"), "{out}");

        let (code, _) = run_capture(&[
            "shatter", "--family", "rook", "--params", "3,3", "--set", "0-1-2",
        ]);
        assert_eq!(code, 2, "rook labels must be pairs");
    }

    #[test]
    fn json_mode_is_stable_json() {
        let (code, out) = run_capture(&[
            "vcdim", "--family", "johnson", "--params", "5,2", "--json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "vcdim");
        assert_eq!(v["vc_dimension"], 2);
    }
}
