//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for parse or I/O errors, 2 when the input is
//! outside the supported class (K4, a claw, ...), 3 when an internal
//! invariant breaks.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bisection::{self, Bisection, BisectionRecord};
use crate::constructor::{min_bisection, BisectionCertificate};
use crate::error::{Error, Result};
use crate::generator::{generate, BlockRecipe};
use crate::multigraph::Multigraph;
use crate::oracle::{self, oracle_min};
use crate::structure::find_blocks;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "claw-bisect", version, about = "Minimum 2-bisections of claw-free cubic multigraphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Largest graph the oracle will enumerate.
    #[arg(long, default_value_t = oracle::DEFAULT_LIMIT, value_parser = parse_oracle_limit, global = true)]
    pub oracle_limit: usize,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

fn parse_oracle_limit(s: &str) -> std::result::Result<usize, String> {
    let limit: usize = s.parse().map_err(|e| format!("{e}"))?;
    if (1..=oracle::HARD_CAP).contains(&limit) {
        Ok(limit)
    } else {
        Err(format!("must be between 1 and {}", oracle::HARD_CAP))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report whether the graph is connected, cubic, claw-free and not K4.
    Check { input: Option<PathBuf> },
    /// Print the diamond/triangle/trumpet/digon partition.
    Partition { input: Option<PathBuf> },
    /// Construct a minimum 2-bisection and its certificate.
    Bisect { input: Option<PathBuf> },
    /// Exhaustively compute the minimum over all 2-bisections.
    Oracle { input: Option<PathBuf> },
    /// Generate a graph with k diamonds, t triangles and p digons.
    Gen { k: usize, t: usize, p: usize },
    /// Check a bisection (JSON) of a graph.
    Verify { graph: PathBuf, bisection: PathBuf },
}

#[derive(Serialize)]
struct BisectOutput<'a> {
    bisection: &'a BisectionRecord,
    certificate: &'a BisectionCertificate,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BisectionInput {
    Wrapped { bisection: BisectionRecord },
    Plain(BisectionRecord),
}

#[derive(Serialize)]
struct VerifyOutput {
    is_2bisection: bool,
    is_desired: Option<bool>,
    violations: Vec<String>,
    mono_stats: bisection::MonoStats,
}

fn read_graph(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Multigraph> {
    let text = match path {
        Some(p) => fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Multigraph::parse(&text)
}

fn applicable(g: &Multigraph) -> Result<()> {
    let report = g.validate();
    if report.is_applicable() {
        Ok(())
    } else {
        Err(Error::NotApplicable(Box::new(report)))
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn bisection_text(g: &Multigraph, b: &Bisection) -> Result<String> {
    let rec = BisectionRecord::new(g, b)?;
    let list = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    Ok(format!(
        "black: {}\nwhite: {}\nepsilon: {} (black {}, white {})\n",
        list(&rec.black),
        list(&rec.white),
        rec.epsilon.unwrap_or_default(),
        rec.epsilon_black.unwrap_or_default(),
        rec.epsilon_white.unwrap_or_default()
    ))
}

/// Output text and exit status of one command.
fn execute(config: &RunConfig, stdin: &mut dyn Read) -> Result<(String, i32)> {
    let format = config.format;
    match &config.command {
        Command::Check { input } => {
            let g = read_graph(input.as_deref(), stdin)?;
            let report = g.validate();
            let status = if report.is_applicable() { 0 } else { 2 };
            let out = match format {
                Format::Json => to_json(&report)?,
                Format::Dot => g.to_dot(None),
                Format::Text => {
                    let mut s = format!(
                        "cubic: {}\nconnected: {}\nclaw-free: {}\nk4: {}\n",
                        report.is_cubic, report.is_connected, report.is_claw_free, report.is_k4
                    );
                    if let Some([c, x, y, z]) = report.claw_witness {
                        let _ = writeln!(s, "claw: center {c}, leaves {x} {y} {z}");
                    }
                    let _ = writeln!(s, "{}", report.summary());
                    s
                }
            };
            Ok((out, status))
        }
        Command::Partition { input } => {
            let g = read_graph(input.as_deref(), stdin)?;
            applicable(&g)?;
            let part = find_blocks(&g)?;
            let out = match format {
                Format::Json => to_json(&part)?,
                Format::Dot => g.to_dot(None),
                Format::Text => {
                    let mut s = format!("k = {}, t = {}, p = {}\n", part.k, part.t, part.p);
                    for block in &part.blocks {
                        let vs: Vec<String> = block.vertices().iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(s, "{} {}", block.kind().as_str(), vs.join(" "));
                    }
                    s
                }
            };
            Ok((out, 0))
        }
        Command::Bisect { input } => {
            let g = read_graph(input.as_deref(), stdin)?;
            let (b, cert) = min_bisection(&g)?;
            let out = match format {
                Format::Json => {
                    let rec = BisectionRecord::new(&g, &b)?;
                    to_json(&BisectOutput { bisection: &rec, certificate: &cert })?
                }
                Format::Dot => g.to_dot(Some(b.coloring())),
                Format::Text => format!(
                    "{}formula: {} ({} diamonds, {} digons, {} case)\nvalid: {}\n",
                    bisection_text(&g, &b)?,
                    cert.formula_value,
                    cert.k,
                    cert.p,
                    cert.parity.as_str(),
                    cert.is_valid()
                ),
            };
            Ok((out, 0))
        }
        Command::Oracle { input } => {
            let g = read_graph(input.as_deref(), stdin)?;
            let result = oracle_min(&g, config.oracle_limit)?;
            let out = match format {
                Format::Json => to_json(&result)?,
                Format::Dot => g.to_dot(result.witness.as_ref().map(|b| b.coloring())),
                Format::Text => format!(
                    "min epsilon: {}\noptima: {}\ndesired bisection exists: {}\nenumerated: {}\n",
                    result.min_epsilon.map_or("none".to_string(), |e| e.to_string()),
                    result.optima_count,
                    result.desired_exists,
                    result.enumerated
                ),
            };
            Ok((out, 0))
        }
        Command::Gen { k, t, p } => {
            let g = generate(&BlockRecipe::new(*k, *t, *p, config.seed))?;
            let out = match format {
                Format::Text => g.to_text(),
                Format::Dot => g.to_dot(None),
                Format::Json => {
                    let edges: Vec<[usize; 2]> =
                        g.pairs().flat_map(|((u, v), m)| std::iter::repeat_n([u, v], m as usize)).collect();
                    to_json(&json!({ "n": g.order(), "edges": edges }))?
                }
            };
            Ok((out, 0))
        }
        Command::Verify { graph, bisection: path } => {
            let g = read_graph(Some(graph), stdin)?;
            let input: BisectionInput = serde_json::from_str(&fs::read_to_string(path)?)?;
            let record = match input {
                BisectionInput::Wrapped { bisection } | BisectionInput::Plain(bisection) => bisection,
            };
            let b = record.to_bisection(g.order())?;
            let stats = bisection::mono_stats(&g, &b)?;
            let desired = if g.validate().is_applicable() {
                find_blocks(&g).ok().map(|part| bisection::is_desired(&g, &part, &b))
            } else {
                None
            };
            let out = VerifyOutput {
                is_2bisection: bisection::is_2bisection(&g, &b),
                is_desired: desired.as_ref().map(|d| d.is_desired()),
                violations: desired.map(|d| d.violations.iter().map(|v| v.to_string()).collect()).unwrap_or_default(),
                mono_stats: stats,
            };
            let text = match format {
                Format::Json => to_json(&out)?,
                Format::Dot => g.to_dot(Some(b.coloring())),
                Format::Text => {
                    let mut s = format!(
                        "2-bisection: {}\ndesired: {}\nepsilon: {} (black {}, white {})\n",
                        out.is_2bisection,
                        out.is_desired.map_or("n/a".to_string(), |d| d.to_string()),
                        stats.epsilon,
                        stats.epsilon_black,
                        stats.epsilon_white
                    );
                    for v in &out.violations {
                        let _ = writeln!(s, "{v}");
                    }
                    s
                }
            };
            Ok((text, 0))
        }
    }
}

/// Runs one command, writing results to `stdout` (or `--output`) and
/// diagnostics to `stderr`. Returns the process exit status.
pub fn run(config: &RunConfig, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = execute(config, stdin).and_then(|(out, status)| {
        match &config.output {
            Some(path) => fs::write(path, &out)?,
            None => stdout.write_all(out.as_bytes())?,
        }
        Ok(status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator;

    fn run_with(args: &[&str], input: &str) -> (i32, String, String) {
        let config = RunConfig::try_parse_from(std::iter::once("claw-bisect").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&config, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bisect_diamond_digon() {
        let (code, out, _) = run_with(&["bisect", "--format", "json"], &generator::diamond_digon().to_text());
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["certificate"]["epsilon"], 2);
        assert_eq!(v["certificate"]["parity"], "odd");
        assert_eq!(v["bisection"]["epsilon"], 2);
    }

    #[test]
    fn bisect_k4_exits_2() {
        let (code, out, err) = run_with(&["bisect"], &generator::k4().to_text());
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("K4"));
    }

    #[test]
    fn oracle_prism() {
        let (code, out, _) = run_with(&["oracle", "--format", "json"], &generator::prism().to_text());
        assert_eq!(code, 0);
        assert!(out.starts_with(r#"{"min_epsilon":2,"#));
    }

    #[test]
    fn parse_error_exits_1() {
        let (code, _, err) = run_with(&["check"], "3 1\n0 0\n");
        assert_eq!(code, 1);
        assert!(err.contains("loop"));
    }

    #[test]
    fn check_reports_claw() {
        let (code, out, _) = run_with(&["check", "--format", "json"], &generator::cube().to_text());
        assert_eq!(code, 2);
        assert!(out.contains(r#""is_claw_free":false"#));
        let (code, _, _) = run_with(&["partition"], &generator::cube().to_text());
        assert_eq!(code, 2);
    }

    #[test]
    fn gen_is_seeded() {
        let (_, a, _) = run_with(&["gen", "1", "2", "1", "--seed", "7"], "");
        let (_, b, _) = run_with(&["gen", "1", "2", "1", "--seed", "7"], "");
        assert_eq!(a, b);
        assert!(Multigraph::parse(&a).unwrap().validate().is_applicable());
        let (code, _, _) = run_with(&["gen", "0", "1", "0"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn oracle_limit_is_capped() {
        assert!(RunConfig::try_parse_from(["claw-bisect", "oracle", "--oracle-limit", "25"]).is_err());
        assert!(RunConfig::try_parse_from(["claw-bisect", "oracle", "--oracle-limit", "24"]).is_ok());
        let (code, _, _) = run_with(&["oracle", "--oracle-limit", "4"], &generator::prism().to_text());
        assert_eq!(code, 2);
    }

    #[test]
    fn dot_output_colors_vertices() {
        let (code, out, _) = run_with(&["bisect", "--format", "dot"], &generator::prism().to_text());
        assert_eq!(code, 0);
        assert!(out.starts_with("graph G {"));
        assert_eq!(out.matches("fillcolor=black").count(), 3);
    }

    #[test]
    fn partition_text() {
        let (code, out, _) = run_with(&["partition"], &generator::diamond_digon().to_text());
        assert_eq!(code, 0);
        assert_eq!(out, "k = 1, t = 0, p = 1\ndiamond 0 1 2 3\ndigon 4 5\n");
    }
}
