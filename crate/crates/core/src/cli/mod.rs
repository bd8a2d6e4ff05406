//! The `fqw` command line.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when an
//! internal consistency check fails.

mod commands;
pub mod format;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builtin::{builtin, builtin_names};
use crate::coin::Coin;
use crate::dynamics::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::rotation_graph::{parse_rotation_graph, RotationTailedGraph};

/// Environment variable that replaces the default tolerance.
pub const TOL_ENV: &str = "FQW_TOL";

#[derive(Parser, Debug)]
#[command(name = "fqw", version, about = "Facial quantum walks on rotation graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the facial walks and the genus.
    Faces(GraphArgs),
    /// Euler characteristic bookkeeping and the genus of the closed surface.
    Genus(GraphArgs),
    /// Arc and vertex tables of the blow-up digraph.
    Blowup(GraphArgs),
    /// Scattering blocks of the external faces.
    Scatter(ScatterArgs),
    /// Iterate the walk from the empty state and log convergence.
    Simulate(SimulateArgs),
    /// Stationary state, face coefficients and cross-method residual.
    Stationary(StationaryArgs),
    /// Spanning-subgraph weights and the inverse Gram matrix.
    Oracle(OracleArgs),
    /// Boundary vertices reached from one tail.
    Detect(DetectArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Built-in graph name or path to a graph file.
    #[arg(long, value_name = "NAME|PATH")]
    graph: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write the report to this file instead of standard output.
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoinArgs {
    /// Coin as `d=<real>,omega=<omega>,phi=<real>`; omega accepts
    /// `exp(i*pi*p/q)`, `<x>deg` or a complex literal.
    #[arg(long, value_name = "SPEC", default_value = "d=0.5,omega=1,phi=0")]
    coin: String,
    /// Raw coin entries `a,b,c,d` as complex literals.
    #[arg(long, value_name = "A,B,C,D", conflicts_with = "coin")]
    coin_matrix: Option<String>,
}

#[derive(Args, Debug)]
struct IterArgs {
    /// Inflow: `ones`, `zeros`, `e:<vertex>` or a list in boundary order.
    #[arg(long, value_name = "SPEC", default_value = "ones")]
    inflow: String,
    /// Convergence tolerance (default from FQW_TOL, else 1e-10).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = crate::dynamics::DEFAULT_MAX_STEPS)]
    max_steps: u64,
}

#[derive(Args, Debug)]
struct ScatterArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coin: CoinArgs,
    /// Also run the support experiment from this boundary vertex.
    #[arg(long, value_name = "VERTEX")]
    detect: Option<String>,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coin: CoinArgs,
    /// Boundary vertex receiving the unit inflow.
    #[arg(long, value_name = "VERTEX")]
    source: String,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coin: CoinArgs,
    #[command(flatten)]
    iter: IterArgs,
    #[arg(long, value_enum, default_value_t = StrategyArg::Stepwise)]
    strategy: StrategyArg,
}

#[derive(Args, Debug)]
struct StationaryArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coin: CoinArgs,
    #[command(flatten)]
    iter: IterArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Project)]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    coin: CoinArgs,
    /// Print every member of every subgraph family.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Stepwise,
    Doubling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Gram,
    Project,
    Solve,
    Evolve,
}

fn load_graph(source: &str) -> Result<RotationTailedGraph> {
    if builtin_names().contains(&source) {
        return builtin(source);
    }
    let text = std::fs::read_to_string(source).map_err(|e| {
        Error::Domain(format!(
            "{source:?} is neither a built-in graph ({}) nor a readable file: {e}",
            builtin_names().join(", ")
        ))
    })?;
    parse_rotation_graph(&text)
}

impl CoinArgs {
    fn resolve(&self) -> Result<Coin> {
        match &self.coin_matrix {
            Some(m) => parse::parse_coin_matrix(m),
            None => parse::parse_coin(&self.coin),
        }
    }
}

impl IterArgs {
    fn tol(&self) -> Result<f64> {
        let tol = match self.tol {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("{TOL_ENV}={s:?} is not a number")))?,
                Err(_) => DEFAULT_TOL,
            },
        };
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        Ok(tol)
    }
}

/// Parses `args` (program name first) and runs the subcommand, printing to
/// the process streams. Returns the exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = OsString>,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut warnings = Vec::new();
    let (report, output) = match execute(&cli.command, &mut warnings) {
        Ok(r) => r,
        Err(e) => {
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let _ = writeln!(err, "error: {e}");
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let written = match output {
        Some(path) => std::fs::write(path, report.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(report.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute<'a>(command: &'a Command, warnings: &mut Vec<String>) -> Result<(String, Option<&'a PathBuf>)> {
    let graph_args = match command {
        Command::Faces(g) | Command::Genus(g) | Command::Blowup(g) => g,
        Command::Scatter(a) => &a.graph,
        Command::Simulate(a) => &a.graph,
        Command::Stationary(a) => &a.graph,
        Command::Oracle(a) => &a.graph,
        Command::Detect(a) => &a.graph,
    };
    let g = load_graph(&graph_args.graph)?;
    let csv = graph_args.format == OutputFormat::Csv;
    let report = match command {
        Command::Faces(_) => commands::faces(&g, csv)?,
        Command::Genus(_) => commands::genus(&g, csv)?,
        Command::Blowup(_) => commands::blowup(&g),
        Command::Scatter(a) => {
            let coin = a.coin.resolve()?;
            let source = a.detect.as_deref().map(|s| parse::vertex(&g, s)).transpose()?;
            commands::scatter(&g, &coin, source, csv, warnings)?
        }
        Command::Detect(a) => {
            let coin = a.coin.resolve()?;
            let source = parse::vertex(&g, &a.source)?;
            commands::detect(&g, &coin, source, csv, warnings)?
        }
        Command::Simulate(a) => {
            let coin = a.coin.resolve()?;
            let alpha = parse::parse_inflow(&a.iter.inflow, &g)?;
            let strategy = match a.strategy {
                StrategyArg::Stepwise => crate::dynamics::Strategy::Stepwise,
                StrategyArg::Doubling => crate::dynamics::Strategy::Doubling,
            };
            commands::simulate(&g, &coin, &alpha, a.iter.tol()?, a.iter.max_steps, strategy, warnings)?
        }
        Command::Stationary(a) => {
            let coin = a.coin.resolve()?;
            let alpha = parse::parse_inflow(&a.iter.inflow, &g)?;
            let method = match a.method {
                MethodArg::Gram => commands::Method::Gram,
                MethodArg::Project => commands::Method::Project,
                MethodArg::Solve => commands::Method::Solve,
                MethodArg::Evolve => commands::Method::Evolve,
            };
            commands::stationary(&g, &coin, &alpha, method, a.iter.tol()?, a.iter.max_steps, csv, warnings)?
        }
        Command::Oracle(a) => {
            let coin = a.coin.resolve()?;
            commands::oracle(&g, &coin, a.list, csv)?
        }
    };
    Ok((report, graph_args.output.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fqw").chain(args.iter().copied()).map(OsString::from);
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&[]).0, 1);
        assert_eq!(run_args(&["faces"]).0, 1);
        assert_eq!(run_args(&["nonsense", "--graph", "tetrahedron"]).0, 1);
        assert_eq!(run_args(&["faces", "--graph", "no-such-graph"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("stationary"));
    }

    #[test]
    fn bad_coin_is_a_validation_error() {
        let (code, _, err) = run_args(&["scatter", "--graph", "tetrahedron", "--coin", "d=1.5"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn faces_of_k33_18() {
        let (code, out, _) = run_args(&["faces", "--graph", "k33-18"]);
        assert_eq!(code, 0);
        assert!(out.contains("genus 2"));
    }
}
