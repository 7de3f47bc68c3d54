//! `stabletrace` command-line tool.
//!
//! Exit codes: 0 success or verified, 1 usage or I/O error, 2 precondition
//! violation, 3 heuristic failure, 4 verification failed.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use stabletrace::{
    block_concatenation, corpus, euler_concatenation, expand_to_4_regular, parallel_d_stable,
    DoubleTrace, EdgeTag, Error, Graph, HeuristicOutcome, DEFAULT_SEARCH_BUDGET,
};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "stabletrace",
    version,
    about = "Build and check parallel d-stable double traces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a parallel d-stable double trace.
    Construct {
        #[arg(long)]
        d: usize,
        #[arg(long = "in")]
        input: PathBuf,
        /// Trace file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a trace is a parallel d-stable double trace of a graph.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Print passage components per vertex and the direction class per edge.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Largest repetition order listed.
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Run one of the concatenation heuristics.
    Heuristic {
        #[arg(value_enum)]
        method: Method,
        #[arg(long = "in")]
        input: PathBuf,
        /// Let blocks contain vertices of degree 2 (blocks method only).
        #[arg(long)]
        relaxed: bool,
        /// Node budget of the second-circuit search.
        #[arg(long, env = "STABLE_TRACE_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split high-degree vertices into paths, giving a 4-regular graph.
    Expand {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the expansion map.
        #[arg(long)]
        map: PathBuf,
    },
    /// Emit a named or random graph.
    Gen {
        name: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    EulerConcat,
    Blocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Success = 0,
    Usage = 1,
    Precondition = 2,
    Heuristic = 3,
    Verification = 4,
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Trace validation and the self-check belong to verification; every other
/// library error is a violated input condition.
fn exit_for(e: &Error) -> Exit {
    match e {
        Error::WrongLength { .. }
        | Error::NonEdgeStep { .. }
        | Error::EdgeCountMismatch { .. }
        | Error::InternalStabilityCheckFailed(_) => Exit::Verification,
        _ => Exit::Precondition,
    }
}

struct Session {
    report: RunReport,
    /// Set when an artifact went to standard output, which moves the report
    /// to standard error.
    stdout_taken: bool,
}

impl Session {
    fn read(&mut self, role: &str, path: &PathBuf) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        self.report
            .digest(role, &path.display().to_string(), &bytes);
        String::from_utf8(bytes).map_err(|_| Failure::Io(format!("{}: not UTF-8", path.display())))
    }

    fn graph(&mut self, path: &PathBuf) -> Result<Arc<Graph>, Failure> {
        let text = self.read("graph", path)?;
        Ok(Arc::new(Graph::parse(&text)?))
    }

    fn write(&mut self, key: &str, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => {
                fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                self.report.push(key, p.display());
            }
            None => {
                print!("{text}");
                self.stdout_taken = true;
                self.report.push(key, "-");
            }
        }
        Ok(())
    }
}

fn run(command: Command, s: &mut Session) -> Result<Exit, Failure> {
    match command {
        Command::Construct { d, input, out } => {
            let g = s.graph(&input)?;
            let w = parallel_d_stable(&g, d)?;
            let r = w.stability_report(d)?;
            s.write("trace", out.as_ref(), &format!("{w}\n"))?;
            s.report.push("outcome", "constructed");
            s.report.stability(&w, &r);
            Ok(Exit::Success)
        }
        Command::Verify { d, graph, trace } => {
            let g = s.graph(&graph)?;
            let text = s.read("trace", &trace)?;
            let w = DoubleTrace::parse(g, &text)?;
            let r = w.stability_report(d)?;
            let parallel = w.is_parallel();
            let bound = if r.repetitions.is_empty() { ">=" } else { "<" };
            s.report.push(
                "verdict",
                format!("parallel={parallel} stable_order{bound}{d}"),
            );
            s.report.push(
                "outcome",
                if r.stable { "verified" } else { "not_verified" },
            );
            s.report.stability(&w, &r);
            Ok(if r.stable {
                Exit::Success
            } else {
                Exit::Verification
            })
        }
        Command::Analyze { graph, trace, d } => {
            let g = s.graph(&graph)?;
            let text = s.read("trace", &trace)?;
            let w = DoubleTrace::parse(Arc::clone(&g), &text)?;
            let classes = w.classify_edges();
            s.report.push("kind", classes.kind());
            for ts in w.transition_systems() {
                let comps: Vec<String> = ts
                    .components()
                    .iter()
                    .map(|c| {
                        let names: Vec<&str> = c.iter().map(|&x| g.name(x)).collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect();
                s.report
                    .push(format!("vertex.{}", g.name(ts.center)), comps.join(" "));
            }
            for (&(a, b), tag) in g.edges().iter().zip(&classes.tags) {
                let tag = match tag {
                    EdgeTag::Parallel => "parallel",
                    EdgeTag::Antiparallel => "antiparallel",
                };
                s.report
                    .push(format!("edge.{}-{}", g.name(a), g.name(b)), tag);
            }
            let reps: Vec<String> = w
                .find_repetitions(d)?
                .iter()
                .map(|r| r.describe(&g))
                .collect();
            s.report.push(
                format!("repetitions_le_{d}"),
                if reps.is_empty() {
                    "none".into()
                } else {
                    reps.join(" ")
                },
            );
            Ok(Exit::Success)
        }
        Command::Heuristic {
            method,
            input,
            relaxed,
            budget,
            out,
        } => {
            let g = s.graph(&input)?;
            let outcome = match method {
                Method::EulerConcat => {
                    s.report.push("method", "euler-concat");
                    s.report.push("budget", budget);
                    euler_concatenation(&g, budget)?
                }
                Method::Blocks => {
                    s.report
                        .push("method", if relaxed { "blocks-relaxed" } else { "blocks" });
                    block_concatenation(&g, relaxed)?
                }
            };
            match outcome {
                HeuristicOutcome::Found(w) => {
                    let r = w.stability_report(2)?;
                    s.write("trace", out.as_ref(), &format!("{w}\n"))?;
                    s.report.push("outcome", "constructed");
                    s.report.stability(&w, &r);
                    Ok(Exit::Success)
                }
                HeuristicOutcome::Failed(f) => {
                    s.report.push("outcome", "heuristic_failed");
                    s.report.push("reason", f.reason.code());
                    s.report.push("detail", f.detail);
                    Ok(Exit::Heuristic)
                }
            }
        }
        Command::Expand { input, out, map } => {
            let g = s.graph(&input)?;
            let (expanded, m) = expand_to_4_regular(&g)?;
            s.write("graph", Some(&out), &expanded.to_text())?;
            s.write("map", Some(&map), &m.to_text())?;
            s.report.push("outcome", "expanded");
            s.report.push("vertices", expanded.vertex_count());
            s.report.push("edges", expanded.edge_count());
            Ok(Exit::Success)
        }
        Command::Gen {
            name,
            params,
            seed,
            out,
        } => {
            let g = corpus::generate(&name, &params, seed)?;
            s.report.push("seed", seed);
            s.write("graph", out.as_ref(), &g.to_text())?;
            s.report.push("outcome", "generated");
            s.report.push("vertices", g.vertex_count());
            s.report.push("edges", g.edge_count());
            Ok(Exit::Success)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Usage as u8 } else { 0 });
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut session = Session {
        report: RunReport::new(&argv.join(" ")),
        stdout_taken: false,
    };
    let exit = match run(cli.command, &mut session) {
        Ok(exit) => exit,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            session.report.push("outcome", "io_error");
            session.report.push("error", msg);
            Exit::Usage
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let exit = exit_for(&e);
            session.report.push(
                "outcome",
                if exit == Exit::Precondition {
                    "precondition_violated"
                } else {
                    "verification_failed"
                },
            );
            session.report.push("error", format!("{e:?}"));
            exit
        }
    };
    let code = exit as u8;
    let text = session.report.render(code);
    if session.stdout_taken {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(code)
}
