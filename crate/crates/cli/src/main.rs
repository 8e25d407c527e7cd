//! `quandle`: build, inspect and convert finite quandles and graph quandles.
//!
//! Exit codes: 0 success, 1 a checked property is false, 2 input or usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quandle_core::{
    aknn, axis_quandle, cocycle_extension, connected_components, dihedral, discrete_torus, flat_connected_census,
    from_graph, property_report, to_graph, trivial, CocycleTable, Error, FiniteQuandle, PropertyReport, SimpleGraph,
};

#[derive(Parser)]
#[command(name = "quandle", version, about = "Finite quandles, their groups, and graph quandles")]
struct Cli {
    /// Machine-readable JSON on standard output instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a quandle and write it as JSON.
    Construct {
        #[command(subcommand)]
        kind: Kind,
    },
    /// Report properties of a quandle file.
    Check {
        file: PathBuf,
        /// Comma-separated properties that must hold for exit code 0.
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
    },
    /// Recover the graph of a graph quandle.
    ToGraph {
        file: PathBuf,
        /// Also write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Build the graph quandle of a graph file.
    FromGraph {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Flat connected quandles of small order and their torus identification.
    Census {
        #[arg(long)]
        max_order: usize,
    },
}

#[derive(Subcommand)]
enum Kind {
    /// Trivial quandle on n points.
    Trivial {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Dihedral quandle of order r.
    Dihedral {
        r: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Signed coordinate axes of R^n.
    Axis {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Oriented k-planes spanned by coordinate vectors of R^n.
    Aknn {
        k: usize,
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Graph quandle of a graph JSON file.
    Graph {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Discrete torus: product of dihedral quandles of the given orders.
    Torus {
        #[arg(required = true)]
        orders: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Abelian extension of a quandle by a 2-cocycle.
    Extension {
        base: PathBuf,
        cocycle: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// A requested property or precondition does not hold.
    False(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCrossed { .. } | Error::BadComponentSize { .. } => Failure::False(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_quandle(path: &Path) -> Result<FiniteQuandle, Failure> {
    Ok(FiniteQuandle::from_json(&read_input(path)?)?)
}

fn read_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    Ok(SimpleGraph::from_json(&read_input(path)?)?)
}

/// Writes the quandle to `--out` with a one-line summary, or its JSON to stdout.
fn emit_quandle(q: &FiniteQuandle, name: &str, out: &Output, json: bool) -> Outcome {
    let text = q.to_json();
    let Some(path) = &out.out else {
        println!("{text}");
        return Ok(());
    };
    write_output(path, &text)?;
    let components = connected_components(q).len();
    if json {
        let summary = serde_json::json!({ "name": name, "size": q.size(), "components": components, "out": path });
        println!("{summary}");
    } else {
        println!("{name}: {} points, {components} components, written to {}", q.size(), path.display());
    }
    Ok(())
}

fn construct(kind: Kind, json: bool) -> Outcome {
    let (q, name, out) = match kind {
        Kind::Trivial { n, out } => (trivial(n)?, format!("trivial({n})"), out),
        Kind::Dihedral { r, out } => (dihedral(r)?, format!("dihedral({r})"), out),
        Kind::Axis { n, out } => (axis_quandle(n)?, format!("axis({n})"), out),
        Kind::Aknn { k, n, out } => (aknn(k, n)?, format!("A({k},{n})"), out),
        Kind::Graph { file, out } => (from_graph(&read_graph(&file)?), format!("Q_G({})", file.display()), out),
        Kind::Torus { orders, out } => {
            let name = format!("torus{orders:?}");
            (discrete_torus(&orders)?, name, out)
        }
        Kind::Extension { base, cocycle, out } => {
            let q = read_quandle(&base)?;
            let phi = CocycleTable::from_json(&read_input(&cocycle)?)?;
            let name = format!("{} x Z_{}", base.display(), phi.modulus());
            (cocycle_extension(&q, &phi)?, name, out)
        }
    };
    emit_quandle(&q, &name, &out, json)
}

fn human_report(report: &PropertyReport) -> String {
    let mut text = format!("size: {}\n", report.size);
    for name in PropertyReport::PROPERTY_NAMES {
        let value = match report.flag(name) {
            Some(v) => v.to_string(),
            None => "unknown".to_string(),
        };
        write!(text, "{name}: {value}").unwrap();
        if let Some(w) = report.witnesses.get(name) {
            write!(text, " (witness {w:?})").unwrap();
        }
        text.push('\n');
    }
    let comps: Vec<String> = report.components.iter().map(|c| format!("{c:?}")).collect();
    write!(text, "components: {}", comps.join(" ")).unwrap();
    text
}

fn check(file: &Path, props: &[String], json: bool) -> Outcome {
    for p in props {
        if !PropertyReport::PROPERTY_NAMES.contains(&p.as_str()) {
            let known = PropertyReport::PROPERTY_NAMES.join(", ");
            return Err(Failure::Input(format!("unknown property {p:?}; expected one of {known}")));
        }
    }
    let q = read_quandle(file)?;
    if let Some(v) = q.verify().first_violation {
        if json {
            println!("{}", serde_json::json!({ "size": q.size(), "quandle": false, "violation": v }));
        } else {
            println!("not a quandle: {v}");
        }
        return Err(Failure::False("quandle axioms fail".into()));
    }
    let report = property_report(&q)?;
    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{}", human_report(&report));
    }
    let mut failed = Vec::new();
    for p in props {
        match report.flag(p) {
            Some(true) => {}
            Some(false) => failed.push(p.as_str()),
            None => return Err(Failure::Input(format!("{p} is undecided at size {}", report.size))),
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::False(format!("false: {}", failed.join(", "))))
    }
}

fn convert_to_graph(file: &Path, dot: Option<&Path>, out: &Output, json: bool) -> Outcome {
    let q = read_quandle(file)?;
    let rec = to_graph(&q)?;
    if let Some(path) = dot {
        write_output(path, &rec.graph.to_dot())?;
    }
    let text = rec.graph.to_json();
    match &out.out {
        Some(path) => write_output(path, &text)?,
        None if json => {}
        None => println!("{text}"),
    }
    if json {
        let pairs: Vec<[usize; 2]> = rec.vertex_of.iter().map(|&(v, a)| [v, a]).collect();
        let graph: serde_json::Value = serde_json::from_str(&text).expect("graph JSON is valid");
        println!("{}", serde_json::json!({ "graph": graph, "vertex_of": pairs }));
    } else if out.out.is_some() || dot.is_some() {
        println!("graph: {} vertices, {} edges", rec.graph.vertex_count(), rec.graph.edge_count());
    }
    Ok(())
}

fn census(max_order: usize, json: bool) -> Outcome {
    if !(1..=6).contains(&max_order) {
        return Err(Failure::Input(format!("--max-order must be in 1..=6, got {max_order}")));
    }
    let orders = flat_connected_census(max_order)?;
    if json {
        println!("{}", serde_json::to_string(&orders).expect("census serializes"));
        return Ok(());
    }
    println!("order  classes  flat-connected  identification");
    for order in &orders {
        let ids: Vec<String> = order
            .survivors
            .iter()
            .map(|s| match &s.torus {
                Some(shape) => shape.iter().map(|r| format!("D_{r}")).collect::<Vec<_>>().join(" x "),
                None => "unidentified".to_string(),
            })
            .collect();
        let line = format!("{:>5}  {:>7}  {:>14}  {}", order.order, order.classes, order.survivors.len(), ids.join(", "));
        println!("{}", line.trim_end());
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Construct { kind } => construct(kind, json),
        Command::Check { file, props } => check(&file, &props, json),
        Command::ToGraph { file, dot, out } => convert_to_graph(&file, dot.as_deref(), &out, json),
        Command::FromGraph { file, out } => {
            let g = read_graph(&file)?;
            emit_quandle(&from_graph(&g), &format!("Q_G({})", file.display()), &out, json)
        }
        Command::Census { max_order } => census(max_order, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::False(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
