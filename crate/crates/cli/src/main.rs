use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use covpath_core::{
    generate, min_link_path, parse_points, solve, to_svg, verify, write_points, DegeneracyMode, Error, GenKind,
    GenSpec, OracleMode, OutputFormat, PathDocument, PointSet, RenderSpec, SolveOptions, TraceOverlay, VerifyMode,
};

#[derive(Parser)]
#[command(name = "covpath", version, about = "Plane covering paths with at most ceil(6n/7) segments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated point set.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinate resolution; defaults to the generator's own.
        #[arg(long)]
        scale: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute a covering path for a point file (`-` reads stdin).
    Solve {
        #[arg(default_value = "-")]
        points: PathBuf,
        /// Fail on a window that cannot be covered within budget instead of
        /// falling back to a monotone chain.
        #[arg(long)]
        strict: bool,
        /// Include the per-iteration trace in the output.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a path document against a point file. Exit 1 when it fails.
    Verify {
        points: PathBuf,
        /// Path document; `-` reads stdin.
        #[arg(default_value = "-")]
        path: PathBuf,
        /// Allow segments to touch; only proper crossings fail.
        #[arg(long)]
        standard: bool,
    },
    /// Draw a point set and its path as SVG. Without a path document the
    /// path is solved here, and the window constructions can be shown.
    Render {
        points: PathBuf,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
        #[arg(long)]
        aux: bool,
        #[arg(long)]
        labels: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum number of segments for at most nine points.
    Oracle {
        points: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Crossing)]
        mode: Mode,
    },
    /// Time solves of generated inputs.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![10_000usize, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, value_parser = parse_kind, default_value = "uniform")]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Crossing,
    Plane,
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Verification failed; the report has already been printed.
#[derive(Debug)]
struct Rejected;

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Rejected {}

/// Input the user can fix: unreadable files, malformed text, empty sets.
#[derive(Debug)]
struct BadInput(String);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            if code != 1 {
                eprintln!("covpath: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Rejected>() {
        return 1;
    }
    if e.is::<BadInput>() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::DegenerateWindowUnsolvable { .. }) => 3,
        Some(_) => 2,
        None => 3,
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| BadInput(format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| BadInput(format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_points(path: &PathBuf) -> Result<PointSet> {
    let (ps, dedup) = parse_points(&read_input(path)?)?;
    if !dedup.duplicates.is_empty() {
        eprintln!("covpath: merged {} duplicate point(s)", dedup.duplicates.len());
    }
    if ps.is_empty() {
        return Err(Error::EmptyInput.into());
    }
    Ok(ps)
}

fn write_output(output: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Gen { kind, n, seed, scale, output } => {
            let mut spec = GenSpec::new(kind, n, seed);
            if let Some(s) = scale {
                spec.coordinate_scale = s;
            }
            let ps = generate(&spec)?;
            write_output(&output, write_points(ps.points()).as_bytes())
        }
        Command::Solve { points, strict, trace, format, output } => {
            let ps = read_points(&points)?;
            let opts = SolveOptions {
                degeneracy_mode: if strict { DegeneracyMode::Strict } else { DegeneracyMode::Permissive },
                emit_trace: trace,
                output_format: match format {
                    Format::Json => OutputFormat::Json,
                    Format::Text => OutputFormat::Text,
                },
            };
            let sol = solve(&ps, &opts)?;
            for w in &sol.warnings {
                eprintln!("covpath: warning: {w}");
            }
            let text = match format {
                Format::Json => PathDocument::from_solution(&sol, trace).to_json(),
                Format::Text => write_points(sol.path.vertices()),
            };
            write_output(&output, text.as_bytes())
        }
        Command::Verify { points, path, standard } => {
            let ps = read_points(&points)?;
            let doc = PathDocument::from_json(&read_input(&path)?)?;
            let mode = if standard { VerifyMode::Standard } else { VerifyMode::Strict };
            let report = verify(&ps, &doc.path(), mode);
            print!("{}", covpath_core::io::to_json(&report));
            if report.passes(mode) {
                Ok(())
            } else {
                Err(Rejected.into())
            }
        }
        Command::Render { points, path, width, height, aux, labels, output } => {
            let ps = read_points(&points)?;
            let spec = RenderSpec { width, height, show_aux: aux, label_roles: labels };
            let svg = match path {
                Some(p) => to_svg(&ps, &PathDocument::from_json(&read_input(&p)?)?.path(), None, &spec),
                None => {
                    let opts = SolveOptions { emit_trace: aux || labels, ..SolveOptions::default() };
                    let sol = solve(&ps, &opts)?;
                    let overlay = TraceOverlay { traces: &sol.traces, frame: &sol.frame };
                    to_svg(&ps, &sol.path, Some(overlay), &spec)
                }
            };
            write_output(&output, &svg)
        }
        Command::Oracle { points, mode } => {
            let ps = read_points(&points)?;
            let mode = match mode {
                Mode::Crossing => OracleMode::CrossingAllowed,
                Mode::Plane => OracleMode::Plane,
            };
            let result = min_link_path(&ps, mode)?;
            print!("{}", covpath_core::io::to_json(&result));
            Ok(())
        }
        Command::Bench { sizes, repetitions, kind, seed } => bench(&sizes, repetitions, kind, seed),
    }
}

fn bench(sizes: &[usize], repetitions: usize, kind: GenKind, seed: u64) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{:>10} {:>4} {:>12} {:>12} {:>12} {:>10}", "n", "rep", "sort_ms", "scan_ms", "total_ms", "segs/n")?;
    for &n in sizes {
        let ps = generate(&GenSpec::new(kind, n, seed))?;
        for rep in 0..repetitions.max(1) {
            let started = Instant::now();
            let sol = solve(&ps, &SolveOptions::default())?;
            let total = started.elapsed();
            let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
            writeln!(
                out,
                "{:>10} {:>4} {:>12.1} {:>12.1} {:>12.1} {:>10.4}",
                n,
                rep,
                ms(sol.stats.prepare_time),
                ms(sol.stats.scan_time),
                ms(total),
                sol.path.segment_count() as f64 / n as f64
            )?;
            out.flush()?;
        }
    }
    Ok(())
}
