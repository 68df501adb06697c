use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chgraph::evaluator::compute_potential;
use chgraph::graphs::enumerate_graphs;
use chgraph::homotopy::compute_gamma;
use chgraph::pipeline::{self, Config};
use chgraph::report::all_passed;
use chgraph::{ChAlgebra, Error, Report, Status};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chgraph", version, about = "Graph-sum potentials and identity checks for cyclic Hodge dGBV algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation degree of all series.
    #[arg(short, long, global = true, env = "CHGRAPH_DEGREE", default_value_t = 4,
          value_parser = clap::value_parser!(u64).range(1..=pipeline::MAX_DEGREE as u64))]
    degree: u64,
    #[arg(short, long, global = true, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=1))]
    genus: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for the random cubic actions checked by `all` and `check bcov`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Check the 1/12 axiom during validation.
    #[arg(long, global = true)]
    require_one_twelfth: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra axioms.
    Validate { algebra: PathBuf },
    /// List isomorphism classes of trivalent graphs with labelled leaves.
    Graphs {
        #[arg(long)]
        leaves: usize,
        /// Comma-separated leaf labels; defaults to 1..n.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// The genus-0 or genus-1 potential.
    Potential { algebra: PathBuf },
    /// The Maurer-Cartan vector.
    Gamma { algebra: PathBuf },
    /// One group of identity checks.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Every check on one algebra.
    All { algebra: PathBuf },
}

#[derive(Subcommand)]
enum Check {
    Wdvv { algebra: PathBuf },
    Getzler { algebra: PathBuf },
    Identities { algebra: PathBuf },
    Bcov { algebra: PathBuf },
}

enum Output {
    Reports(Vec<Report>),
    Data(Value, String),
}

fn load(p: &Path) -> chgraph::Result<ChAlgebra> {
    ChAlgebra::load(p)
}

fn run(cli: &Cli) -> chgraph::Result<(&'static str, Output)> {
    let d = cli.degree as usize;
    let cfg = Config::new(d, cli.require_one_twelfth, cli.seed)?;
    Ok(match &cli.command {
        Command::Validate { algebra } => ("validate", Output::Reports(pipeline::validate(&load(algebra)?, &cfg))),
        Command::Graphs { leaves, labels, max_vertices } => {
            let labels: Vec<String> = if labels.is_empty() { (1..=*leaves).map(|i| i.to_string()).collect() } else { labels.clone() };
            if labels.len() != *leaves {
                return Err(Error::Input(format!("{} labels given for {} leaves", labels.len(), leaves)));
            }
            let g = cli.genus as usize;
            let max = max_vertices.unwrap_or((leaves + 2 * g).saturating_sub(2).max(1));
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            let classes = enumerate_graphs(&refs, g, max)?;
            let mut text = String::new();
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    let edges: Vec<Value> = c.graph.edges.iter().map(|e| json!([e.u, e.v])).collect();
                    let leaves: Vec<Value> = c.graph.leaves.iter().map(|(v, l)| json!([v, l])).collect();
                    text.push_str(&format!(
                        "vertices {}  edges {:?}  leaves {:?}  |Aut| {}\n",
                        c.graph.n_vertices,
                        c.graph.edges.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>(),
                        c.graph.leaves,
                        c.aut_order
                    ));
                    json!({"vertices": c.graph.n_vertices, "edges": edges, "leaves": leaves, "aut_order": c.aut_order})
                })
                .collect();
            ("graphs", Output::Data(json!(list), text))
        }
        Command::Potential { algebra } => {
            let alg = load(algebra)?;
            let f = compute_potential(&alg, cli.genus as usize, d)?;
            let n = alg.vars.len();
            let terms: Vec<Value> =
                f.terms().map(|(m, c)| json!({"exponents": m.exps(n), "coefficient": chgraph::scalar::format(c)})).collect();
            let text = alg.series_string(&f);
            let data = json!({"genus": cli.genus, "degree": d, "variables": (0..n).map(|i| alg.vars.name(i)).collect::<Vec<_>>(),
                              "series": text, "terms": terms});
            ("potential", Output::Data(data, format!("F{} = {text}\n", cli.genus)))
        }
        Command::Gamma { algebra } => {
            let alg = load(algebra)?;
            let g = compute_gamma(&alg, d);
            let comps: Vec<Value> = (0..alg.dim()).map(|i| json!({"label": alg.label(i), "series": alg.series_string(&g.0[i])})).collect();
            ("gamma", Output::Data(json!({"degree": d, "components": comps}), format!("gamma = {}\n", alg.show(&g))))
        }
        Command::Check { what } => match what {
            Check::Wdvv { algebra } => ("check wdvv", Output::Reports(pipeline::wdvv(&load(algebra)?, d)?)),
            Check::Getzler { algebra } => ("check getzler", Output::Reports(pipeline::getzler(&load(algebra)?, d)?)),
            Check::Identities { algebra } => ("check identities", Output::Reports(pipeline::identities(&load(algebra)?, d)?)),
            Check::Bcov { algebra } => ("check bcov", Output::Reports(pipeline::bcov(&load(algebra)?, d, cli.seed)?)),
        },
        Command::All { algebra } => ("all", Output::Reports(pipeline::all(&load(algebra)?, &cfg)?)),
    })
}

fn human_line(r: &Report) -> String {
    let tag = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    };
    let mut s = format!("{tag}  {}", r.check);
    if let Some(d) = r.degree {
        s.push_str(&format!("  [D={d}]"));
    }
    if let Some(w) = &r.witness {
        s.push_str(&format!("  at {w}"));
    }
    if let Some(m) = &r.residual_leading_monomial {
        s.push_str(&format!("  residual {m}"));
    }
    if let Some(x) = &r.detail {
        s.push_str(&format!("  ({x})"));
    }
    s
}

/// A closed pipe on stdout is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, out) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("chgraph: {e}");
            return ExitCode::from(2);
        }
    };
    match out {
        Output::Reports(reports) => {
            match cli.format {
                Format::Json => {
                    let v = json!({"command": name, "degree": cli.degree, "seed": cli.seed, "reports": reports});
                    emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("reports serialize")));
                }
                Format::Human => emit(&reports.iter().map(|r| human_line(r) + "\n").collect::<String>()),
            }
            if all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Output::Data(v, text) => {
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("data serializes"))),
                Format::Human => emit(&text),
            }
            ExitCode::SUCCESS
        }
    }
}
