//! Command-line interface for in-place graph traversal on succinct
//! adjacency arrays.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 input not restored
//! after a traversal, 4 output differs from the reference implementation,
//! 5 malformed or corrupt input.

use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ipg::graph::{self, EdgeList, Model};
use ipg::oracle::{self, Event, Start};
use ipg::{bfs, dfs, io, Error, Mode, WordArray};

#[derive(Parser)]
#[command(name = "ipg", version, about = "in-place graph traversal tools")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Binary,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Banded,
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Banded => Mode::Banded,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

#[derive(Args)]
struct StartArgs {
    /// start vertex (default: traverse all components)
    #[arg(long)]
    start: Option<u64>,
}

impl StartArgs {
    fn start(&self) -> Start {
        match self.start {
            Some(v) => Start::Vertex(v),
            None => Start::All,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph and write it out
    Gen {
        /// gnm, path, cycle, star, binary-tree, deg1-chains, isolated-mix
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: u64,
        /// edge count (gnm and isolated-mix)
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// word width in bits; default is the minimum for the graph
        #[arg(long)]
        width: Option<u32>,
        #[arg(long, value_enum, default_value = "binary")]
        format: FormatArg,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Convert between the binary array format and the text edge list
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        width: Option<u32>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that a file holds a well-formed sorted standard array
    Validate { input: PathBuf },
    /// Depth-first search; prints "pre v" / "post v" lines
    /// (and "preexp u v" / "postexp u v" with --edges)
    Dfs {
        input: PathBuf,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, value_enum, default_value = "banded")]
        mode: ModeArg,
        /// also report every edge inspection
        #[arg(long)]
        edges: bool,
        /// suppress event output
        #[arg(long)]
        quiet: bool,
        /// print access statistics to stderr
        #[arg(long)]
        stats: bool,
    },
    /// Breadth-first search; prints "v dist root" lines
    Bfs {
        input: PathBuf,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long)]
        quiet: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Run both traversals against the reference implementation and check
    /// that the input array is restored bit-for-bit
    Verify {
        input: PathBuf,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, value_enum, default_value = "banded")]
        mode: ModeArg,
        #[arg(long)]
        edges: bool,
    },
    /// Time traversals on a generated graph
    Bench {
        #[arg(long, default_value = "gnm")]
        model: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_USAGE: u8 = 2;
const EXIT_RESTORE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_CORRUPT: u8 = 5;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Corruption { .. } | Error::Format { .. } | Error::Representation(_) => EXIT_CORRUPT,
        Error::RestoreViolation => EXIT_RESTORE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn load_array(path: &std::path::Path) -> ipg::Result<(WordArray, bool)> {
    io::load(path)
}

fn min_width(e: &EdgeList) -> u32 {
    ipg::layout::Layout { n: e.n, l: e.adjacency_len() }.min_width()
}

fn print_events(out: &mut impl Write, events: &[Event]) -> std::io::Result<()> {
    for ev in events {
        match ev {
            Event::Pre(v) => writeln!(out, "pre {v}")?,
            Event::Post(v) => writeln!(out, "post {v}")?,
            Event::PreExplore(u, v) => writeln!(out, "preexp {u} {v}")?,
            Event::PostExplore(u, v) => writeln!(out, "postexp {u} {v}")?,
        }
    }
    Ok(())
}

fn run(cli: Cli) -> ipg::Result<u8> {
    match cli.cmd {
        Cmd::Gen { model, n, m, directed, seed, width, format, output } => {
            let model: Model = model.parse()?;
            let e = graph::generate(model, n, m, directed, seed)?;
            match format {
                FormatArg::Binary => {
                    let w = width.unwrap_or_else(|| min_width(&e));
                    let a = graph::build(&e, w)?;
                    io::save(&output, &a, e.directed)?;
                }
                FormatArg::Text => {
                    std::fs::write(&output, io::edge_list_to_text(&e))?;
                }
            }
            Ok(0)
        }
        Cmd::Convert { input, format, width, output } => {
            let data = std::fs::read(&input)?;
            let (e, _w) = match io::detect_format(&data) {
                io::Format::Binary => {
                    let (a, directed) = io::from_bytes(&data)?;
                    (graph::edge_list_from_array(&a, directed)?, Some(a.width()))
                }
                io::Format::Text => {
                    let text = String::from_utf8_lossy(&data);
                    (io::edge_list_from_text(&text)?, None)
                }
            };
            match format {
                FormatArg::Binary => {
                    let w = width.unwrap_or_else(|| min_width(&e));
                    let a = graph::build(&e, w)?;
                    io::save(&output, &a, e.directed)?;
                }
                FormatArg::Text => {
                    std::fs::write(&output, io::edge_list_to_text(&e))?;
                }
            }
            Ok(0)
        }
        Cmd::Validate { input } => {
            let (a, _) = load_array(&input)?;
            let report = graph::validate_sorted_standard(&a);
            if report.pass() {
                println!("ok: n = {}, width = {}", a.read(0)?, a.width());
                Ok(0)
            } else {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                Ok(EXIT_CORRUPT)
            }
        }
        Cmd::Dfs { input, start, mode, edges, quiet, stats } => {
            let (mut a, _) = load_array(&input)?;
            let before = a.snapshot();
            let mode: Mode = mode.into();
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let st = if quiet {
                dfs::dfs_streaming(&mut a, mode, start.start(), edges, &mut |_| {})?
            } else {
                let mut err = None;
                let st = dfs::dfs_streaming(&mut a, mode, start.start(), edges, &mut |ev| {
                    if err.is_none() {
                        err = print_events(&mut out, &[ev]).err();
                    }
                })?;
                out.flush()?;
                if let Some(e) = err {
                    return Err(e.into());
                }
                st
            };
            if stats {
                eprintln!(
                    "reads {} writes {} peak-registers {}",
                    st.reads, st.writes, st.peak_registers
                );
            }
            if a.snapshot() != before {
                eprintln!("error: input array was not restored");
                return Ok(EXIT_RESTORE);
            }
            Ok(0)
        }
        Cmd::Bfs { input, start, quiet, stats } => {
            let (mut a, _) = load_array(&input)?;
            let before = a.snapshot();
            let stdout = std::io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let mut err = None;
            let st = bfs::bfs_streaming(&mut a, start.start(), &mut |v, d, r| {
                if !quiet && err.is_none() {
                    err = writeln!(out, "{v} {d} {r}").err();
                }
            })?;
            out.flush()?;
            if let Some(e) = err {
                return Err(e.into());
            }
            if stats {
                eprintln!(
                    "reads {} writes {} peak-registers {}",
                    st.reads, st.writes, st.peak_registers
                );
            }
            if a.snapshot() != before {
                eprintln!("error: input array was not restored");
                return Ok(EXIT_RESTORE);
            }
            Ok(0)
        }
        Cmd::Verify { input, start, mode, edges } => {
            let (mut a, directed) = load_array(&input)?;
            let e = graph::edge_list_from_array(&a, directed)?;
            let before = a.snapshot();
            let start = start.start();
            let (got, _) = dfs::dfs(&mut a, mode.into(), start, edges)?;
            if a.snapshot() != before {
                eprintln!("FAIL dfs: input array was not restored");
                return Ok(EXIT_RESTORE);
            }
            if got != oracle::dfs(&e, start, edges) {
                eprintln!("FAIL dfs: event stream differs from reference");
                return Ok(EXIT_MISMATCH);
            }
            let (got, _) = bfs::bfs(&mut a, start)?;
            if a.snapshot() != before {
                eprintln!("FAIL bfs: input array was not restored");
                return Ok(EXIT_RESTORE);
            }
            if got != oracle::bfs(&e, start) {
                eprintln!("FAIL bfs: output differs from reference");
                return Ok(EXIT_MISMATCH);
            }
            println!("ok: dfs and bfs match the reference and restore the input");
            Ok(0)
        }
        Cmd::Bench { model, n, m, directed, seed } => {
            let model: Model = model.parse()?;
            let e = graph::generate(model, n, m, directed, seed)?;
            let mut a = graph::build(&e, min_width(&e))?;
            let edges = e.m();

            let t0 = Instant::now();
            let (_, st) = {
                let mut count = 0u64;
                let st =
                    dfs::dfs_streaming(&mut a, Mode::Banded, Start::All, false, &mut |_| count += 1)?;
                (count, st)
            };
            let dt = t0.elapsed();
            println!(
                "dfs  n={n} m={edges} time={:?} reads={} writes={} per-edge={:.2}",
                dt,
                st.reads,
                st.writes,
                (st.reads + st.writes) as f64 / edges.max(1) as f64
            );

            let t0 = Instant::now();
            let st = bfs::bfs_streaming(&mut a, Start::All, &mut |_, _, _| {})?;
            let dt = t0.elapsed();
            println!(
                "bfs  n={n} m={edges} time={:?} reads={} writes={} per-edge={:.2}",
                dt,
                st.reads,
                st.writes,
                (st.reads + st.writes) as f64 / edges.max(1) as f64
            );
            Ok(0)
        }
    }
}
