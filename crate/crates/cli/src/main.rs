//! `parkhull`: command-line access to the parking-function polytope engine.
//!
//! Exit codes: 0 success, 1 verification mismatch or integrity failure,
//! 2 usage error, 3 resource bound exceeded.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parkhull::faces::{edge_count, f_vector};
use parkhull::lattice::{
    lattice_count, postnikov_slice_count, slice_count_bruteforce, slice_spec, slice_vertex_type,
    CountMethod, SliceKind,
};
use parkhull::numerics::format_rational;
use parkhull::polytope::{edge_graph, vertex_count, vertices};
use parkhull::scan::{ScanConfig, BUDGET_ENV, DEFAULT_BUDGET};
use parkhull::verify::{verify, Level, Status};
use parkhull::volume::{ehrhart_count, volume, volume_oracle};
use parkhull::Error;

use report::{Format, RunReport};

const MAX_FVECTOR_N: usize = 30;

#[derive(Debug, Parser)]
#[command(name = "parkhull", version, about = "Faces, volume and lattice points of the parking-function polytope")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Parallel shards for brute-force scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    shards: u16,

    /// Maximum number of points (or subset collections) one computation may visit.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Add wall-clock timing to reports (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Bruteforce,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VolumeMethod {
    Formula,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face counts (f_0, ..., f_{n-1}).
    Fvector {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_FVECTOR_N as u64))]
        n: u64,
    },
    /// Exact volume.
    Volume {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=200))]
        n: u64,
        #[arg(long, value_enum, default_value = "formula")]
        method: VolumeMethod,
    },
    /// Number of integer points.
    Lattice {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
        n: u64,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
    },
    /// Vertices as JSON lines `{"v":[...],"layer":k}`.
    Vertices {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        n: u64,
        /// Print only the count report.
        #[arg(long)]
        count_only: bool,
    },
    /// Edges as JSON lines `{"e":[[...],[...]]}`.
    Edges {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=10))]
        n: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Integer points of the dilation m P_n.
    Ehrhart {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Slice at coordinate sum S: its vertex type and both lattice counts.
    Slice {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
        n: u64,
        #[arg(long)]
        s: i64,
    },
    /// Run the cross-verification suite.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=127))]
        n: u64,
        #[arg(long, value_enum, default_value = "full")]
        level: VerifyLevel,
    },
}

enum Outcome {
    Report(RunReport),
    /// Report plus a nonzero exit code (verification mismatch).
    Mismatch(RunReport),
    Streamed,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ResourceBound { .. } => 3,
        Error::Integrity(_) => 1,
        Error::Domain(_) | Error::DegenerateDimension(_) | Error::Contract(_) => 2,
    }
}

fn error_json(err: &Error) -> Value {
    match err {
        Error::ResourceBound { method, required, budget } => json!({
            "error": "resource_bound",
            "method": method,
            "required": required.to_string(),
            "budget": budget.to_string(),
            "message": err.to_string(),
        }),
        Error::Integrity(_) => json!({"error": "integrity", "message": err.to_string()}),
        _ => json!({"error": "usage", "message": err.to_string()}),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn coords_csv(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let config = ScanConfig::default()
        .with_shards(cli.shards as usize)
        .with_budget(cli.budget);
    let out = io::stdout();
    let outcome = match cli.command {
        Command::Fvector { n } => {
            let f = f_vector(n as usize)?;
            Outcome::Report(RunReport::new("fvector", "formula").param("n", n).result("f", strings(f)))
        }
        Command::Volume { n, method } => {
            let (value, tag) = match method {
                VolumeMethod::Formula => (volume(n as usize), "formula"),
                VolumeMethod::Oracle => (volume_oracle(n as usize, &config)?, "oracle"),
            };
            Outcome::Report(RunReport::new("volume", tag).param("n", n).result("volume", format_rational(&value)))
        }
        Command::Lattice { n, method } => {
            let method = match method {
                Method::Closed => CountMethod::Closed,
                Method::Bruteforce => CountMethod::BruteForce,
            };
            let count = lattice_count(n as usize, method, &config)?;
            let provenance = match method {
                CountMethod::Closed => "formula",
                CountMethod::BruteForce => "oracle",
            };
            Outcome::Report(
                RunReport::new("lattice", provenance)
                    .param("n", n)
                    .result("count", count.to_string())
                    .result("counting", method.as_str()),
            )
        }
        Command::Vertices { n, count_only } => {
            let n = n as usize;
            if count_only {
                Outcome::Report(
                    RunReport::new("vertices", "formula")
                        .param("n", n)
                        .result("count", vertex_count(n).to_string()),
                )
            } else {
                let mut lock = out.lock();
                match cli.format {
                    Format::Json => {
                        for v in vertices(n) {
                            writeln!(lock, "{}", json!({"v": v.coords(), "layer": v.layer()})).map_err(io_err)?;
                        }
                    }
                    Format::Csv => {
                        let mut w = csv::Writer::from_writer(lock);
                        w.write_record(["layer", "v"]).map_err(csv_err)?;
                        for v in vertices(n) {
                            w.write_record([v.layer().to_string(), coords_csv(v.coords())]).map_err(csv_err)?;
                        }
                        w.flush().map_err(io_err)?;
                    }
                }
                Outcome::Streamed
            }
        }
        Command::Edges { n, count_only } => {
            let g = edge_graph(n as usize)?;
            if count_only {
                Outcome::Report(
                    RunReport::new("edges", "formula")
                        .param("n", n)
                        .result("count", edge_count(n as usize)?.to_string())
                        .result("graph_edges", g.edge_count().to_string()),
                )
            } else {
                let verts = g.vertices();
                let mut lock = out.lock();
                match cli.format {
                    Format::Json => {
                        for (i, j) in g.edges() {
                            writeln!(lock, "{}", json!({"e": [verts[i].coords(), verts[j].coords()]})).map_err(io_err)?;
                        }
                    }
                    Format::Csv => {
                        let mut w = csv::Writer::from_writer(lock);
                        w.write_record(["u", "v"]).map_err(csv_err)?;
                        for (i, j) in g.edges() {
                            w.write_record([coords_csv(verts[i].coords()), coords_csv(verts[j].coords())])
                                .map_err(csv_err)?;
                        }
                        w.flush().map_err(io_err)?;
                    }
                }
                Outcome::Streamed
            }
        }
        Command::Ehrhart { n, m } => {
            let count = ehrhart_count(n as usize, m, &config)?;
            Outcome::Report(
                RunReport::new("ehrhart", "oracle")
                    .param("n", n)
                    .param("m", m)
                    .result("count", count.to_string()),
            )
        }
        Command::Slice { n, s } => {
            let n = n as usize;
            let spec = slice_spec(n, s)?;
            let kind = match spec.kind {
                SliceKind::AllOnes => json!({"kind": "all_ones"}),
                SliceKind::Pair { r, k } => json!({"kind": "pair", "r": r, "k": k}),
            };
            let closed = postnikov_slice_count(n, s, &config)?;
            let brute = slice_count_bruteforce(n, s, &config)?;
            let report = RunReport::new("slice", "formula+oracle")
                .param("n", n)
                .param("s", s)
                .result("spec", kind)
                .result("vertex_type", slice_vertex_type(&spec))
                .result("closed", closed.to_string())
                .result("bruteforce", brute.to_string());
            if closed == brute {
                Outcome::Report(report)
            } else {
                Outcome::Mismatch(report)
            }
        }
        Command::Verify { n, level } => {
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
            };
            let checks = verify(n as usize, level, &config)?;
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| match &c.status {
                    Status::Passed => json!({"check": c.name, "status": "pass"}),
                    Status::Failed { counterexample } => {
                        json!({"check": c.name, "status": "fail", "counterexample": counterexample})
                    }
                    Status::Skipped { reason } => json!({"check": c.name, "status": "skipped", "reason": reason}),
                })
                .collect();
            let first_failure = checks.iter().find(|c| c.failed());
            let mut report = RunReport::new("verify", "formula+oracle")
                .param("n", n)
                .param("level", if level == Level::Full { "full" } else { "fast" })
                .result("passed", first_failure.is_none())
                .result("checks", rows);
            if let Some(c) = first_failure {
                report = report.result("first_failure", c.to_string());
                Outcome::Mismatch(report)
            } else {
                Outcome::Report(report)
            }
        }
    };
    Ok(outcome)
}

fn io_err(e: io::Error) -> Error {
    Error::Contract(format!("output failed: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Contract(format!("output failed: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(Outcome::Streamed) => ExitCode::SUCCESS,
        Ok(outcome) => {
            let (mut report, code) = match outcome {
                Outcome::Report(r) => (r, 0),
                Outcome::Mismatch(r) => (r, 1),
                Outcome::Streamed => unreachable!(),
            };
            if cli.timing {
                report.elapsed = Some(start.elapsed());
            }
            if let Err(e) = report.emit(cli.format) {
                eprintln!("parkhull: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            println!("{}", error_json(&err));
            eprintln!("parkhull: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
