//! `minorforge`: classification, reduction emission, containment queries and
//! verification runs from the command line.
//!
//! Exit codes: 0 = contained / pass, 1 = not contained / fail,
//! 2 = bad input, refusal, out-of-scope family or inconclusive run.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minorforge::family::classification_record;
use minorforge::graph::Graph;
use minorforge::harness::verify_equivalence;
use minorforge::io::{format_dot, parse_edge_list};
use minorforge::minors::find_model;
use minorforge::reductions::{build_enhanced_framework, vc_reduction, PisInstance};
use minorforge::{Error, Relation, SearchLimits};

#[derive(Parser, Debug)]
#[command(name = "minorforge", version, about = "Forbidden-minor deletion: family analysis, reductions and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Node budget for enumerations (overrides MINORFORGE_LIMITS).
    #[arg(long, global = true)]
    limit_nodes: Option<u64>,
    /// Largest host component an exhaustive search accepts.
    #[arg(long, global = true)]
    limit_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print class flags and the dispatched case for both relations.
    Classify {
        /// Graph in edge-list format.
        graph: PathBuf,
    },
    /// Emit a reduction as a manifest (or DOT).
    Reduce {
        #[command(subcommand)]
        mode: ReduceMode,
    },
    /// Is H contained in G? Prints a model when it is.
    Check {
        h: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = Rel::Minor)]
        relation: Rel,
        /// Write the model here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full equivalence pipeline on one instance.
    Verify {
        /// Forbidden graph; repeat for a family.
        #[arg(long = "H", required = true)]
        h: Vec<PathBuf>,
        #[command(flatten)]
        pis: PisArgs,
        #[arg(long, value_enum, default_value_t = Rel::Minor)]
        relation: Rel,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceMode {
    /// Vertex Cover reduction for a connected family.
    Vc {
        /// Forbidden graph; repeat for a family.
        #[arg(long, required = true)]
        family: Vec<PathBuf>,
        /// Vertex Cover input graph.
        #[arg(long)]
        graph: PathBuf,
        /// Vertex Cover budget.
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Rel::Minor)]
        relation: Rel,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enhanced framework graph for a PIS instance.
    Framework {
        #[arg(long = "H", required = true)]
        h: Vec<PathBuf>,
        #[command(flatten)]
        pis: PisArgs,
        #[arg(long, value_enum, default_value_t = Rel::Minor)]
        relation: Rel,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct PisArgs {
    /// PIS instance file.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pis: Option<PathBuf>,
    /// Generate a random normalized instance instead of reading one.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Total number of edges (row cliques included); overrides --p.
    #[arg(long)]
    m: Option<usize>,
    /// Probability of each cross-row pair.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rel {
    Minor,
    Tm,
}

impl From<Rel> for Relation {
    fn from(r: Rel) -> Self {
        match r {
            Rel::Minor => Relation::Minor,
            Rel::Tm => Relation::TopologicalMinor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_family(paths: &[PathBuf]) -> Result<Vec<Graph>, String> {
    paths.iter().map(|p| read_graph(p)).collect()
}

impl PisArgs {
    fn instance(&self) -> Result<PisInstance, String> {
        if let Some(path) = &self.pis {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            return PisInstance::parse(&text).map_err(|e| format!("{}: {e}", path.display()));
        }
        match self.m {
            Some(m) => PisInstance::random_with_edges(self.k, m, self.seed).map_err(|e| e.to_string()),
            None => Ok(PisInstance::random(self.k, self.p, self.seed)),
        }
    }

    fn describe(&self) -> Option<String> {
        self.random.then(|| match self.m {
            Some(m) => format!("random k={} m={m} seed={}", self.k, self.seed),
            None => format!("random k={} p={} seed={}", self.k, self.p, self.seed),
        })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn limits(args: &LimitArgs) -> Result<SearchLimits, String> {
    let mut limits = SearchLimits::from_env().map_err(|e| format!("MINORFORGE_LIMITS: {e}"))?;
    if let Some(n) = args.limit_nodes {
        limits.max_nodes = n;
    }
    if let Some(n) = args.limit_n {
        limits.max_host = n;
    }
    Ok(limits)
}

fn run(cli: Cli) -> Result<u8, String> {
    let limits = limits(&cli.limits)?;
    match cli.command {
        Command::Classify { graph } => {
            let g = read_graph(&graph)?;
            for rel in [Relation::Minor, Relation::TopologicalMinor] {
                let (record, _) = classification_record(&g, rel).map_err(|e| e.to_string())?;
                println!("relation={rel} {record}");
            }
            Ok(0)
        }
        Command::Reduce { mode } => match mode {
            ReduceMode::Vc { family, graph, k, relation, output } => {
                let fam = read_family(&family)?;
                let g = read_graph(&graph)?;
                let rel = relation.into();
                let red = vc_reduction(&fam, &g, k, rel).map_err(|e| e.to_string())?;
                let text = match output.format {
                    Format::Edgelist => red.manifest(rel),
                    Format::Dot => format_dot(&red.graph, "vc"),
                };
                emit(output.out.as_deref(), &text)?;
                Ok(0)
            }
            ReduceMode::Framework { h, pis, relation, output } => {
                let fam = read_family(&h)?;
                let inst = pis.instance()?;
                let fw = build_enhanced_framework(&fam, &inst, relation.into()).map_err(|e| e.to_string())?;
                let text = match output.format {
                    Format::Edgelist => fw.manifest(),
                    Format::Dot => format_dot(&fw.graph, "framework"),
                };
                emit(output.out.as_deref(), &text)?;
                Ok(0)
            }
        },
        Command::Check { h, g, relation, out } => {
            let (h, g) = (read_graph(&h)?, read_graph(&g)?);
            match find_model(&h, &g, relation.into(), &limits).map_err(|e| e.to_string())? {
                Some(model) => {
                    println!("contained");
                    emit(out.as_deref(), &model.to_text())?;
                    Ok(0)
                }
                None => {
                    println!("not contained");
                    Ok(1)
                }
            }
        }
        Command::Verify { h, pis, relation, timings, out } => {
            let fam = read_family(&h)?;
            let inst = pis.instance()?;
            let report = verify_equivalence(&fam, &inst, relation.into(), &limits).map_err(|e| match e {
                Error::NotInScope(_) => format!("NotInScope: {e}"),
                other => other.to_string(),
            })?;
            let mut text = String::new();
            if let Some(source) = pis.describe() {
                text.push_str(&format!("instance={source}\n"));
            }
            text.push_str(&report.to_text(timings));
            emit(out.as_deref(), &text)?;
            Ok(report.verdict.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
