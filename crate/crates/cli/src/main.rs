//! Command-line driver. Machine-readable JSON goes to stdout, one object
//! per record; human diagnostics go to stderr. Exit codes: 0 success, 1
//! domain failure (invalid instance, failed verification), 2 usage errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use halin_coloring::colorer::color_halin;
use halin_coloring::fan_coloring::{compose_fans, FanColoring};
use halin_coloring::graph::{verify_oriented_coloring, Coloring, Verdict, Violation};
use halin_coloring::halin::{
    from_json, generate_random_halin, to_dot, to_json, Fan, GenProfile, OrientedHalin,
};
use halin_coloring::oracle::{oriented_chromatic_number_with_budget, witness_search, ChromaticOutcome};
use halin_coloring::tournament::{t7, t7_arc, AffineMap, NON_RESIDUES};

#[derive(Parser)]
#[command(
    name = "halin-color",
    version,
    about = "Oriented coloring of Halin graphs with at most 8 colors, with an exact oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded random instances as JSON lines on stdout.
    Generate {
        /// Number of exterior vertices (at least 3).
        #[arg(long)]
        leaves: usize,
        /// Seed; instance i uses seed + i.
        #[arg(long)]
        seed: u64,
        /// How many instances to emit.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Maximum children per interior node (at least 3).
        #[arg(long, default_value_t = 5)]
        max_children: usize,
    },
    /// Color instances with at most 8 colors; prints coloring and case tag.
    Color {
        /// Instance file ("-" for stdin): one JSON object or JSON lines.
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the first record's colored instance as Graphviz DOT.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
        /// Suppress wall-clock fields for byte-identical reruns.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check a coloring against an instance.
    Verify {
        /// Instance records, or combined records with embedded colorings
        /// (the `color` output) when --coloring is absent.
        #[arg(long = "in")]
        input: PathBuf,
        /// Coloring file: a bare array, an object with a "coloring" field,
        /// or JSON lines of either, one per instance record.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Exact oriented chromatic number by exhaustive search.
    Ochrom {
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest color count to try.
        #[arg(long, default_value_t = 8)]
        kmax: u8,
        /// Backtracking-node budget per instance.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Exhaustive oracle sweep over all enumerated instances.
    Search {
        #[arg(long)]
        max_leaves: usize,
        #[arg(long, default_value_t = 8)]
        kmax: u8,
        /// Backtracking-node budget per instance.
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for instance-parallel scoring.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Export the first instance record as Graphviz DOT.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
    /// Run the exhaustive correctness sweeps and print their counts.
    Selftest,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Domain(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { leaves, seed, count, max_children } => {
            cmd_generate(leaves, seed, count, max_children)
        }
        Command::Color { input, emit_dot, no_timing } => cmd_color(&input, emit_dot.as_deref(), no_timing),
        Command::Verify { input, coloring } => cmd_verify(&input, coloring.as_deref()),
        Command::Ochrom { input, kmax, budget, no_timing } => cmd_ochrom(&input, kmax, budget, no_timing),
        Command::Search { max_leaves, kmax, budget, jobs, no_timing } => {
            cmd_search(max_leaves, kmax, budget, jobs, no_timing)
        }
        Command::Export { input, dot } => cmd_export(&input, &dot),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(code) => code,
        Err(e) => e.report(),
    }
}

// ============================================================================
// Input plumbing
// ============================================================================

fn read_payload(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))
    }
}

/// One JSON value, or a JSON-lines stream, as a list of records.
fn parse_records(text: &str) -> Result<Vec<Value>, CliError> {
    if let Ok(v) = serde_json::from_str::<Value>(text.trim()) {
        return Ok(vec![v]);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v = serde_json::from_str(line)
            .map_err(|e| CliError::Domain(format!("record on line {}: {e}", i + 1)))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Domain("no records in input".to_string()));
    }
    Ok(out)
}

fn instance_from_value(v: &Value) -> Result<OrientedHalin, CliError> {
    from_json(&v.to_string()).map_err(|e| CliError::Domain(format!("invalid instance: {e}")))
}

fn coloring_from_value(v: &Value, n: usize) -> Result<Coloring, CliError> {
    let array = match v {
        Value::Array(_) => v,
        Value::Object(map) => map
            .get("coloring")
            .ok_or_else(|| CliError::Domain("coloring record lacks a \"coloring\" field".into()))?,
        _ => return Err(CliError::Domain("coloring must be an array or an object".into())),
    };
    let colors: Vec<u8> = serde_json::from_value(array.clone())
        .map_err(|e| CliError::Domain(format!("malformed coloring: {e}")))?;
    if colors.len() != n {
        return Err(CliError::Domain(format!(
            "coloring covers {} vertices, instance has {n}",
            colors.len()
        )));
    }
    Coloring::new(colors).map_err(|e| CliError::Domain(format!("malformed coloring: {e}")))
}

fn violation_value(v: &Violation) -> Value {
    match v {
        Violation::AdjacentSameColor { arc, color } => json!({
            "kind": "adjacent-same-color",
            "arc": [arc.0, arc.1],
            "color": color,
        }),
        Violation::OpposingColorPair { first, second, colors } => json!({
            "kind": "opposing-color-pair",
            "first": [first.0, first.1],
            "second": [second.0, second.1],
            "colors": [colors.0, colors.1],
        }),
    }
}

// ============================================================================
// Commands
// ============================================================================

fn cmd_generate(
    leaves: usize,
    seed: u64,
    count: usize,
    max_children: usize,
) -> Result<ExitCode, CliError> {
    let profile = GenProfile { max_children };
    for i in 0..count {
        let h = generate_random_halin(leaves, &profile, seed + i as u64)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        println!("{}", to_json(&h));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_color(input: &Path, emit_dot: Option<&Path>, no_timing: bool) -> Result<ExitCode, CliError> {
    let records = parse_records(&read_payload(input)?)?;
    let mut first_dot = true;
    for record in &records {
        let h = instance_from_value(record)?;
        let start = Instant::now();
        let out = color_halin(&h).map_err(|e| CliError::Domain(e.to_string()))?;
        let mut line = json!({
            "instance": record,
            "coloring": out.coloring.as_slice(),
            "case": out.case.as_str(),
            "colors_used": out.coloring.distinct_colors(),
            "case4_fallback": out.used_case4_fallback,
        });
        if !no_timing {
            line["time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        println!("{line}");
        if first_dot {
            if let Some(path) = emit_dot {
                fs::write(path, to_dot(&h, Some(&out.coloring)))
                    .map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display())))?;
            }
            first_dot = false;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &Path, coloring_path: Option<&Path>) -> Result<ExitCode, CliError> {
    let records = parse_records(&read_payload(input)?)?;
    let pairs: Vec<(OrientedHalin, Coloring)> = match coloring_path {
        Some(cpath) => {
            let coloring_records = parse_records(&read_payload(cpath)?)?;
            if coloring_records.len() != records.len() {
                return Err(CliError::Domain(format!(
                    "{} instances but {} colorings",
                    records.len(),
                    coloring_records.len()
                )));
            }
            records
                .iter()
                .zip(&coloring_records)
                .map(|(r, c)| {
                    let h = instance_from_value(r)?;
                    let coloring = coloring_from_value(c, h.vertex_count())?;
                    Ok((h, coloring))
                })
                .collect::<Result<_, CliError>>()?
        }
        None => records
            .iter()
            .map(|r| {
                let obj = r.as_object().ok_or_else(|| {
                    CliError::Domain("combined records must be objects".to_string())
                })?;
                let instance = obj.get("instance").ok_or_else(|| {
                    CliError::Domain(
                        "record lacks \"instance\"; pass --coloring for plain instances".into(),
                    )
                })?;
                let h = instance_from_value(instance)?;
                let coloring = coloring_from_value(r, h.vertex_count())?;
                Ok((h, coloring))
            })
            .collect::<Result<_, CliError>>()?,
    };

    let mut all_valid = true;
    for (h, coloring) in &pairs {
        let verdict = verify_oriented_coloring(&h.to_graph(), coloring)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        match verdict {
            Verdict::Valid => println!(
                "{}",
                json!({"valid": true, "colors_used": coloring.distinct_colors()})
            ),
            Verdict::Invalid(violation) => {
                eprintln!("verification failed: {violation}");
                println!(
                    "{}",
                    json!({"valid": false, "violation": violation_value(&violation)})
                );
                all_valid = false;
            }
        }
    }
    Ok(if all_valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_ochrom(
    input: &Path,
    kmax: u8,
    budget: Option<u64>,
    no_timing: bool,
) -> Result<ExitCode, CliError> {
    if kmax == 0 || kmax > 8 {
        return Err(CliError::Usage(format!("kmax must be in 1..=8, got {kmax}")));
    }
    let records = parse_records(&read_payload(input)?)?;
    for record in &records {
        let h = instance_from_value(record)?;
        let start = Instant::now();
        let outcome = oriented_chromatic_number_with_budget(&h.to_graph(), kmax, budget);
        let mut line = match outcome {
            ChromaticOutcome::Exact(r) => json!({
                "chi": r.value,
                "witness": r.witness.as_slice(),
                "nodes": r.nodes_explored,
            }),
            ChromaticOutcome::AboveKmax { kmax, nodes_explored } => json!({
                "above_kmax": true,
                "kmax": kmax,
                "nodes": nodes_explored,
            }),
            ChromaticOutcome::OutOfBudget { nodes_explored } => json!({
                "budget_exhausted": true,
                "nodes": nodes_explored,
            }),
        };
        if !no_timing {
            line["time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(
    max_leaves: usize,
    kmax: u8,
    budget: Option<u64>,
    jobs: Option<usize>,
    no_timing: bool,
) -> Result<ExitCode, CliError> {
    if max_leaves < 3 {
        return Err(CliError::Usage("search needs --max-leaves >= 3".to_string()));
    }
    if kmax == 0 || kmax > 8 {
        return Err(CliError::Usage(format!("kmax must be in 1..=8, got {kmax}")));
    }
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let start = Instant::now();
    let report = witness_search(max_leaves, kmax, budget, |record| {
        let instance: Value =
            serde_json::from_str(&record.instance).expect("instances serialize to JSON");
        let mut line = json!({
            "index": record.index,
            "instance": instance,
            "leaves": record.leaves,
            "vertices": record.vertices,
            "chi": record.chi,
            "above_kmax": record.above_kmax,
            "budget_exhausted": record.budget_exhausted,
            "nodes": record.nodes,
        });
        if !no_timing {
            line["time_s"] = json!(start.elapsed().as_secs_f64());
        }
        println!("{line}");
    });
    let witness_instance: Option<Value> = report
        .witness_instance
        .as_deref()
        .map(|s| serde_json::from_str(s).expect("witness serializes"));
    let mut summary = json!({
        "summary": {
            "max_leaves": report.max_leaves,
            "kmax": report.kmax,
            "instances": report.instances,
            "max_chi": report.max_chi,
            "witness_instance": witness_instance,
            "witness_coloring": report.witness_coloring,
            "budget_exhausted": report.budget_exhausted,
            "above_kmax": report.above_kmax,
            "total_nodes": report.total_nodes,
        }
    });
    if !no_timing {
        summary["summary"]["time_s"] = json!(start.elapsed().as_secs_f64());
    }
    println!("{summary}");
    eprintln!(
        "search over {} instances: max chi {:?}, {} over kmax, {} out of budget",
        report.instances, report.max_chi, report.above_kmax, report.budget_exhausted
    );
    Ok(if report.above_kmax == 0 {
        ExitCode::SUCCESS
    } else {
        // A Halin instance above 8 colors contradicts the bound; surface it.
        ExitCode::from(1)
    })
}

fn cmd_export(input: &Path, dot: &Path) -> Result<ExitCode, CliError> {
    let records = parse_records(&read_payload(input)?)?;
    let h = instance_from_value(&records[0])?;
    fs::write(dot, to_dot(&h, None))
        .map_err(|e| CliError::Usage(format!("writing {}: {e}", dot.display())))?;
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// Selftest: the exhaustive correctness sweeps
// ============================================================================

fn leaf_fan(base: usize, color: u8) -> (Fan, FanColoring) {
    let children = BTreeMap::from([(base, vec![base + 1])]);
    let edge_down = BTreeMap::from([(base + 1, t7_arc(0, color))]);
    let fan = Fan::new(base, children, edge_down, vec![]).expect("two-vertex fan");
    let coloring = FanColoring::new(BTreeMap::from([(base, 0), (base + 1, color)]));
    (fan, coloring)
}

fn second_fan(base: usize, first: u8, last: u8) -> (Fan, FanColoring) {
    if first == last {
        return leaf_fan(base, first);
    }
    let children = BTreeMap::from([(base, vec![base + 1, base + 2])]);
    let edge_down = BTreeMap::from([(base + 1, t7_arc(0, first)), (base + 2, t7_arc(0, last))]);
    let fan = Fan::new(base, children, edge_down, vec![t7_arc(first, last)]).expect("three-vertex fan");
    let coloring =
        FanColoring::new(BTreeMap::from([(base, 0), (base + 1, first), (base + 2, last)]));
    (fan, coloring)
}

fn cmd_selftest() -> Result<ExitCode, CliError> {
    // The 21 residue-scale affine maps all preserve the tournament;
    // non-residue scales never do.
    let g = t7();
    let mut automorphisms = 0usize;
    for map in AffineMap::all() {
        for &(i, j) in g.arcs() {
            assert!(g.has_arc(map.apply(i as u8) as usize, map.apply(j as u8) as usize));
        }
        automorphisms += 1;
    }
    let mut rejected = 0usize;
    for a in NON_RESIDUES {
        for b in 0..7u8 {
            let breaks = g
                .arcs()
                .iter()
                .any(|&(i, j)| !g.has_arc(((a * i as u8 + b) % 7) as usize, ((a * j as u8 + b) % 7) as usize));
            assert!(breaks);
            rejected += 1;
        }
    }
    eprintln!("selftest: {automorphisms} automorphisms verified, {rejected} non-residue maps rejected");

    // Closure of the affine family under composition.
    let all: Vec<AffineMap> = AffineMap::all().collect();
    let mut compositions = 0usize;
    for f in &all {
        for h in &all {
            let c = f.compose(h);
            assert!(all.contains(&c));
            compositions += 1;
        }
    }
    eprintln!("selftest: {compositions} affine compositions closed");

    // Composition sweep: every endpoint/direction configuration.
    let mut configurations = 0usize;
    let mut colorings_verified = 0usize;
    for u in 1..=6u8 {
        for v in 1..=6u8 {
            for y in 1..=6u8 {
                for root_forward in [true, false] {
                    for link_forward in [true, false] {
                        let (f1, c1) = leaf_fan(0, u);
                        let (f2, c2) = second_fan(2, v, y);
                        let result = compose_fans(&f1, &c1, &f2, &c2, root_forward, link_forward)
                            .expect("configuration composes");
                        let ll = f2.last_leaf();
                        assert_ne!(result.alternatives[0][&ll], result.alternatives[1][&ll]);
                        colorings_verified += 2;
                        configurations += 1;
                    }
                }
            }
        }
    }
    eprintln!(
        "selftest: {configurations} compositions swept, {colorings_verified} colorings verified"
    );

    println!(
        "{}",
        json!({
            "automorphisms_verified": automorphisms,
            "non_residue_maps_rejected": rejected,
            "affine_compositions_closed": compositions,
            "composition_configurations": configurations,
            "composition_colorings_verified": colorings_verified,
        })
    );
    Ok(ExitCode::SUCCESS)
}
