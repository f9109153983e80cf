use std::collections::BTreeMap;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde::Serialize;

use vknots::codes::{emit_gauss_code, parse_gauss_code};
use vknots::cover::{double_cover, lk_n, Layer, RunImage};
use vknots::cutfind::find_small_cut_system;
use vknots::cutpath::{find_move_path, PathError};
use vknots::cuts::{is_cut_system, is_normal, CutMove, CutSystem};
use vknots::invariants::{f_polynomial, odd_writhe, writhe, DEFAULT_STATE_LIMIT};
use vknots::laurent::Laurent;
use vknots::moves::{random_walk, MoveTrace};
use vknots::pd::{canonical_cut_system, parse_pd, trace_pd, PdCode, TracedPd};
use vknots::verify::{run_suite, Suite, SuiteConfig};
use vknots::{ChordId, GaussDiagram};

#[derive(Parser)]
#[command(name = "vknots", version, about = "Virtual link diagrams: codes, cut systems, double covers, invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a Gauss or PD code and print the normalized Gauss code
    Parse {
        /// Diagram text, @FILE, or - for stdin
        input: String,
    },
    /// Print writhe, odd writhe, normality, lk_N, and f as JSON
    Invariants {
        /// Diagram text, @FILE, or - for stdin
        input: String,
        /// Cut system: auto, a JSON array of [circle, gap, count] triples, or a file
        #[arg(long, default_value = "auto")]
        cuts: String,
        /// Largest chord count the bracket state sum will expand
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: usize,
    },
    /// Print the double cover along a cut system as JSON
    Cover {
        /// Diagram text, @FILE, or - for stdin
        input: String,
        /// Cut system: auto, a JSON array of [circle, gap, count] triples, or a file
        #[arg(long, default_value = "auto")]
        cuts: String,
    },
    /// Decide whether marked points form a cut system
    CheckCut {
        /// Diagram text, @FILE, or - for stdin
        input: String,
        /// A JSON array of [circle, gap, count] triples, or a file
        #[arg(long)]
        cuts: String,
    },
    /// Search for a cut-move path between two cut systems
    CutPath {
        /// Diagram text, @FILE, or - for stdin
        input: String,
        /// Starting cut system: a JSON array of triples, or a file
        #[arg(long)]
        from: String,
        /// Target cut system: a JSON array of triples, or a file
        #[arg(long)]
        to: String,
        /// Maximum number of moves to search
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Largest per-gap count explored during the search
        #[arg(long, default_value_t = 4)]
        cap: u32,
    },
    /// Apply a seeded random walk of diagram moves and print the trace
    Walk {
        /// Diagram text, @FILE, or - for stdin
        input: String,
        #[arg(long, default_value_t = 10)]
        steps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also roll flypes, which preserve f but not the underlying link
        #[arg(long)]
        allow_flype: bool,
    },
    /// Run a randomized checking suite and print its report as JSON
    Verify {
        /// One of: thm-lkN-equals-odd-writhe, thm-cover-invariance, thm-cutpath,
        /// cor-even, prop-cover-normal, cor-normal-zero, remark-flype-f
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_chords: usize,
    },
    /// Compute invariants for a CSV of diagrams and print a CSV report
    Ingest {
        /// CSV file of `code` or `name,code` rows, or - for stdin
        path: String,
        /// Largest chord count the bracket state sum will expand
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        state_limit: usize,
    },
}

enum Fail {
    Content(String),
    NotFound(String),
    File(String),
    Limit(String),
    Usage(String),
}

impl Fail {
    fn code(&self) -> i32 {
        match self {
            Fail::Content(_) => 2,
            Fail::NotFound(_) => 3,
            Fail::File(_) => 66,
            Fail::Limit(_) => 69,
            Fail::Usage(_) => 64,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Content(m)
            | Fail::NotFound(m)
            | Fail::File(m)
            | Fail::Limit(m)
            | Fail::Usage(m) => m,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(fail) => {
            eprintln!("vknots: {}", fail.message());
            std::process::exit(fail.code());
        }
    }
}

fn read_source(arg: &str) -> Result<String, Fail> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Fail::File(format!("{path}: {e}")))
    } else if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Fail::File(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        Ok(arg.to_string())
    }
}

enum Loaded {
    Gauss(GaussDiagram),
    Pd { code: PdCode, traced: TracedPd },
}

impl Loaded {
    fn diagram(&self) -> &GaussDiagram {
        match self {
            Loaded::Gauss(g) => g,
            Loaded::Pd { traced, .. } => &traced.diagram,
        }
    }
}

fn load_diagram(arg: &str) -> Result<Loaded, Fail> {
    let text = read_source(arg)?;
    let looks_like_pd = matches!(text.trim_start().chars().next(), Some('X') | Some('V'));
    if looks_like_pd {
        let code = parse_pd(&text).map_err(|e| Fail::Content(e.to_string()))?;
        let traced = trace_pd(&code).map_err(|e| Fail::Content(e.to_string()))?;
        Ok(Loaded::Pd { code, traced })
    } else {
        parse_gauss_code(&text)
            .map(Loaded::Gauss)
            .map_err(|e| Fail::Content(e.to_string()))
    }
}

fn resolve_cuts(source: &str, loaded: &Loaded) -> Result<CutSystem, Fail> {
    if source == "auto" {
        return match loaded {
            Loaded::Pd { code, .. } => canonical_cut_system(code)
                .map(|(_, cuts)| cuts)
                .map_err(|e| Fail::Content(e.to_string())),
            Loaded::Gauss(g) => find_small_cut_system(g)
                .ok_or_else(|| Fail::Content("the diagram admits no cut system".into())),
        };
    }
    let text = if source.trim_start().starts_with('[') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).map_err(|e| Fail::File(format!("{source}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Fail::Content(format!("cut system: {e}")))
}

#[derive(Serialize)]
struct InvariantsOut {
    writhe: i64,
    #[serde(rename = "oddWrithe", skip_serializing_if = "Option::is_none")]
    odd_writhe: Option<i64>,
    normal: bool,
    #[serde(rename = "lkN", skip_serializing_if = "Option::is_none")]
    lk_n: Option<i64>,
    f: Laurent,
}

#[derive(Serialize)]
struct ProvenanceOut {
    layer: Layer,
    source: ChordId,
}

#[derive(Serialize)]
struct CoverOut {
    cover: String,
    normal: bool,
    provenance: BTreeMap<ChordId, ProvenanceOut>,
    runs: Vec<RunImage>,
}

#[derive(Serialize)]
struct CheckCutOut {
    valid: bool,
    total: u32,
}

#[derive(Serialize)]
struct PathOut {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<Vec<CutMove>>,
}

#[derive(Serialize)]
struct WalkOut {
    result: String,
    trace: MoveTrace,
}

fn run(cli: Cli) -> Result<i32, Fail> {
    match cli.command {
        Command::Parse { input } => {
            let loaded = load_diagram(&input)?;
            println!("{}", emit_gauss_code(loaded.diagram()));
            Ok(0)
        }
        Command::Invariants { input, cuts, state_limit } => {
            let loaded = load_diagram(&input)?;
            let g = loaded.diagram();
            let f = f_polynomial(g, state_limit).map_err(|e| Fail::Limit(e.to_string()))?;
            let lk = if g.is_knot() {
                let cuts = resolve_cuts(&cuts, &loaded)?;
                Some(lk_n(g, &cuts).map_err(|e| Fail::Content(e.to_string()))?)
            } else {
                None
            };
            let out = InvariantsOut {
                writhe: writhe(g),
                odd_writhe: odd_writhe(g),
                normal: is_normal(g),
                lk_n: lk,
                f,
            };
            println!("{}", serde_json::to_string(&out).expect("reports serialize"));
            Ok(0)
        }
        Command::Cover { input, cuts } => {
            let loaded = load_diagram(&input)?;
            let cuts = resolve_cuts(&cuts, &loaded)?;
            let cover = double_cover(loaded.diagram(), &cuts)
                .map_err(|e| Fail::Content(e.to_string()))?;
            let out = CoverOut {
                cover: emit_gauss_code(&cover.diagram),
                normal: is_normal(&cover.diagram),
                provenance: cover
                    .provenance
                    .into_iter()
                    .map(|(id, (layer, source))| (id, ProvenanceOut { layer, source }))
                    .collect(),
                runs: cover.runs,
            };
            println!("{}", serde_json::to_string(&out).expect("reports serialize"));
            Ok(0)
        }
        Command::CheckCut { input, cuts } => {
            let loaded = load_diagram(&input)?;
            let cuts = resolve_cuts(&cuts, &loaded)?;
            let valid = is_cut_system(loaded.diagram(), &cuts);
            let out = CheckCutOut { valid, total: cuts.total() };
            println!("{}", serde_json::to_string(&out).expect("reports serialize"));
            Ok(if valid { 0 } else { 2 })
        }
        Command::CutPath { input, from, to, depth, cap } => {
            let loaded = load_diagram(&input)?;
            let from = resolve_cuts(&from, &loaded)?;
            let to = resolve_cuts(&to, &loaded)?;
            match find_move_path(loaded.diagram(), &from, &to, depth, cap) {
                Ok(path) => {
                    let out = PathOut { found: true, path: Some(path) };
                    println!("{}", serde_json::to_string(&out).expect("reports serialize"));
                    Ok(0)
                }
                Err(PathError::NotFound) => {
                    let out = PathOut { found: false, path: None };
                    println!("{}", serde_json::to_string(&out).expect("reports serialize"));
                    Err(Fail::NotFound(format!(
                        "no path within {depth} moves at cap {cap}"
                    )))
                }
                Err(e) => Err(Fail::Content(e.to_string())),
            }
        }
        Command::Walk { input, steps, seed, allow_flype } => {
            let loaded = load_diagram(&input)?;
            let (result, trace) = random_walk(loaded.diagram(), steps, seed, allow_flype);
            let out = WalkOut { result: emit_gauss_code(&result), trace };
            println!("{}", serde_json::to_string(&out).expect("reports serialize"));
            Ok(0)
        }
        Command::Verify { suite, trials, seed, max_chords } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Fail::Usage(format!("unknown suite {suite:?}; expected one of {}", names.join(", ")))
            })?;
            let config = SuiteConfig { trials, seed, max_chords };
            let report = run_suite(suite, &config);
            eprintln!(
                "{}: {} trials, {} failures, {:.3}s",
                report.suite,
                report.trials,
                report.failures.len(),
                report.elapsed.as_secs_f64()
            );
            println!("{}", serde_json::to_string(&report).expect("reports serialize"));
            Ok(if report.passed() { 0 } else { 4 })
        }
        Command::Ingest { path, state_limit } => {
            let text = if path == "-" {
                let mut t = String::new();
                std::io::stdin()
                    .read_to_string(&mut t)
                    .map_err(|e| Fail::File(format!("stdin: {e}")))?;
                t
            } else {
                std::fs::read_to_string(&path).map_err(|e| Fail::File(format!("{path}: {e}")))?
            };
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .from_reader(text.as_bytes());
            let mut writer = csv::Writer::from_writer(std::io::stdout());
            writer
                .write_record(["name", "oddWrithe", "lkN", "f", "normal"])
                .map_err(|e| Fail::File(e.to_string()))?;
            for (row, record) in reader.records().enumerate() {
                let record = record.map_err(|e| Fail::Content(format!("row {}: {e}", row + 1)))?;
                let (name, code) = match record.len() {
                    0 => continue,
                    1 => (format!("row{}", row + 1), record[0].to_string()),
                    _ => (record[0].to_string(), record[1].to_string()),
                };
                let loaded = load_diagram(&code)
                    .map_err(|e| Fail::Content(format!("{name}: {}", e.message())))?;
                let g = loaded.diagram();
                let f = f_polynomial(g, state_limit)
                    .map_err(|e| Fail::Limit(format!("{name}: {e}")))?;
                let (ow, lk) = if g.is_knot() {
                    let cuts = resolve_cuts("auto", &loaded)?;
                    let lk = lk_n(g, &cuts)
                        .map_err(|e| Fail::Content(format!("{name}: {e}")))?;
                    (odd_writhe(g).map(|v| v.to_string()).unwrap_or_default(), lk.to_string())
                } else {
                    (String::new(), String::new())
                };
                writer
                    .write_record([
                        name.as_str(),
                        ow.as_str(),
                        lk.as_str(),
                        &f.to_string(),
                        if is_normal(g) { "true" } else { "false" },
                    ])
                    .map_err(|e| Fail::File(e.to_string()))?;
            }
            writer.flush().map_err(|e| Fail::File(e.to_string()))?;
            Ok(0)
        }
    }
}
