use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{CommandFactory, Parser, Subcommand};

use ckalg::corners::{build_forest, corner_family, corner_weights, t_corner, Forest};
use ckalg::ktheory::{classify, UnitRank};
use ckalg::lpa::{check_grading, verify_ck_family, FamilyFile, WeightMap};
use ckalg::monoid::{self, Equivalence, MonoidElement};
use ckalg::moves::{desourcify, MoveKind, MoveTrace};
use ckalg::Graph;

#[derive(Parser)]
#[command(name = "ckalg", version, about = "Leavitt path algebras of finite graphs: moves, corners, K-theory")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K-theory ranks and the classification criteria.
    Analyze {
        graph: PathBuf,
        /// Rank of the unit group of the field: a nonnegative integer or `inf`.
        #[arg(long, default_value = "0")]
        unit_rank: UnitRank,
    },
    /// Apply one move and print the resulting graph.
    Move {
        #[arg(value_parser = [
            "expand-hereditary", "attach-head", "subdivide", "attach-sources",
            "eliminate-source", "sources-to-head", "head-to-subdivision",
        ])]
        kind: String,
        graph: PathBuf,
        /// Vertex set `a,b,c`, or a vertex or edge name followed by a length.
        params: Vec<String>,
    },
    /// Remove sources from a graph without sinks.
    Desourcify {
        graph: PathBuf,
        /// Write the move trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Re-run a move trace and print its final graph.
    Replay { graph: PathBuf, trace: PathBuf },
    /// The T-corner graph for a root set.
    Corner {
        graph: PathBuf,
        /// Comma-separated root vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        roots: Vec<String>,
        /// Use this forest instead of the default one.
        #[arg(long)]
        forest: Option<PathBuf>,
        /// Print the Cuntz-Krieger family realizing the corner.
        #[arg(long)]
        emit_family: bool,
        /// Print the weight map that makes the family graded.
        #[arg(long)]
        emit_weights: bool,
    },
    /// Check a family file against the relations of its target graph.
    Verify { graph: PathBuf, family: PathBuf },
    /// Graph monoid computations.
    #[command(subcommand)]
    Monoid(MonoidCommand),
}

#[derive(Subcommand)]
enum MonoidCommand {
    /// Bounded search for a chain of expansions and collapses.
    Equiv {
        graph: PathBuf,
        a: String,
        b: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
    },
    /// Whether the support generates everything.
    Full { graph: PathBuf, element: String },
    /// Expand until every vertex is present.
    Rebalance { graph: PathBuf, element: String },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    Graph::parse(&text).with_context(|| format!("in `{}`", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write `{}`", path.display()))
}

fn analyze(g: &Graph, unit_rank: UnitRank) -> Result<String> {
    let v = classify(g, unit_rank);
    if !v.consistent {
        bail!("internal: classification criteria disagree");
    }
    let s = &v.summary;
    let torsion = if s.torsion.is_empty() {
        "none".to_string()
    } else {
        s.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    let mut out = String::new();
    writeln!(out, "rank_k0 {}", s.rank_k0)?;
    writeln!(out, "rank_k1(r={unit_rank}) {}", s.rank_k1)?;
    writeln!(out, "torsion {torsion}")?;
    writeln!(out, "singular {}", s.singular)?;
    writeln!(out, "is_ck {}", v.is_ck)?;
    writeln!(out, "strongly_graded {}", v.strongly_graded)?;
    writeln!(out, "criterion4 {}", v.criterion4)?;
    writeln!(out, "criterion5 {}", v.criterion5)?;
    Ok(out)
}

fn corner(g: &Graph, roots: &[String], forest: Option<&Path>, family: bool, weights: bool) -> Result<String> {
    let roots = g.resolve_vertices(roots)?;
    let t = match forest {
        Some(path) => {
            let t = Forest::parse(&read(path)?, g).with_context(|| format!("in `{}`", path.display()))?;
            if *t.roots() != roots {
                bail!("forest roots differ from --roots");
            }
            t
        }
        None => build_forest(g, &roots)?,
    };
    let named = || -> Result<BTreeMap<String, i64>> {
        let w = corner_weights(g, &t)?;
        Ok(g.edges().map(|e| (g.edge_name(e).to_string(), w.get(e))).collect())
    };
    if family {
        let (target, assignment) = corner_family(g, &t)?;
        let weights = if weights { Some(named()?) } else { None };
        return Ok(FamilyFile { target, assignment, weights }.to_text(g));
    }
    if weights {
        let w = corner_weights(g, &t)?;
        return Ok(g.edges().map(|e| format!("weight {} {}\n", g.edge_name(e), w.get(e))).collect());
    }
    Ok(t_corner(g, &t)?.to_text())
}

fn verify(g: &Graph, path: &Path) -> Result<(String, bool)> {
    let file = FamilyFile::parse(&read(path)?, g).with_context(|| format!("in `{}`", path.display()))?;
    let mut report = verify_ck_family(&file.target, &file.assignment, g)?;
    if let Some(w) = &file.weights {
        report.merge(check_grading(&file.target, &file.assignment, g, &WeightMap::from_names(g, w)?)?);
    }
    Ok((report.to_string(), report.passed()))
}

fn run_monoid(cmd: MonoidCommand) -> Result<String> {
    let mut out = String::new();
    match cmd {
        MonoidCommand::Equiv { graph, a, b, steps, size } => {
            let g = load_graph(&graph)?;
            let (a, b) = (MonoidElement::parse(&a, &g)?, MonoidElement::parse(&b, &g)?);
            match monoid::equivalent(&g, &a, &b, steps as usize, size) {
                Equivalence::Equivalent(chain) => {
                    writeln!(out, "result equivalent")?;
                    writeln!(out, "steps {}", chain.len())?;
                    for s in chain {
                        writeln!(out, "step {}", s.display(&g))?;
                    }
                }
                Equivalence::NotWithinBound => writeln!(out, "result not-within-bound")?,
            }
        }
        MonoidCommand::Full { graph, element } => {
            let g = load_graph(&graph)?;
            writeln!(out, "full {}", monoid::is_full(&g, &MonoidElement::parse(&element, &g)?)?)?;
        }
        MonoidCommand::Rebalance { graph, element } => {
            let g = load_graph(&graph)?;
            let m = MonoidElement::parse(&element, &g)?;
            let (balanced, chain) = monoid::rebalance_full(&g, &m)?;
            if monoid::replay(&g, &m, &chain).as_ref() != Some(&balanced) {
                bail!("internal: rebalancing certificate does not replay");
            }
            writeln!(out, "element {}", balanced.display(&g))?;
            writeln!(out, "steps {}", chain.len())?;
            for s in chain {
                writeln!(out, "step {}", s.display(&g))?;
            }
        }
    }
    Ok(out)
}

/// Prints the report; `false` when a verification fails.
fn run(cli: Cli) -> Result<bool> {
    let text = match cli.command {
        Command::Analyze { graph, unit_rank } => analyze(&load_graph(&graph)?, unit_rank)?,
        Command::Move { kind, graph, params } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            let mv = match MoveKind::from_fields(&kind, &params) {
                Ok(mv) => mv,
                Err(msg) => Cli::command().error(clap::error::ErrorKind::InvalidValue, msg).exit(),
            };
            mv.apply(&load_graph(&graph)?)?.to_text()
        }
        Command::Desourcify { graph, trace } => {
            let (out, log) = desourcify(&load_graph(&graph)?)?;
            if let Some(path) = trace {
                write(&path, &log.to_text())?;
            }
            out.to_text()
        }
        Command::Replay { graph, trace } => {
            let log = MoveTrace::parse(&read(&trace)?).with_context(|| format!("in `{}`", trace.display()))?;
            log.replay(&load_graph(&graph)?)?.to_text()
        }
        Command::Corner { graph, roots, forest, emit_family, emit_weights } => {
            corner(&load_graph(&graph)?, &roots, forest.as_deref(), emit_family, emit_weights)?
        }
        Command::Verify { graph, family } => {
            let (text, passed) = verify(&load_graph(&graph)?, &family)?;
            emit(cli.output.as_deref(), &text)?;
            return Ok(passed);
        }
        Command::Monoid(cmd) => run_monoid(cmd)?,
    };
    emit(cli.output.as_deref(), &text)?;
    Ok(true)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
