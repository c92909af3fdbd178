mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pmpoly::ehrhart;
use pmpoly::graph::{Family, Graph, GraphJson, NeighborGraph, SubsetSpec};
use pmpoly::matching;
use pmpoly::paperlab::{self, Verdict, VerificationReport, WitnessName};
use pmpoly::polytope::{self, ScalableHRep};
use pmpoly::{Budget, EdgeVector, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "pmpoly", version, about = "Perfect matching and S-matching polytopes: lattice points, Ehrhart data, Gorenstein checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a grid or torus graph.
    Graph {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Enumerate perfect matchings, or S-matchings with --subset.
    Matchings {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Print the H-description of the polytope.
    Hrep {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = polytope::DEFAULT_CUT_CAP)]
        cut_cap: usize,
    },
    /// Ehrhart polynomial, h*-vector, codegree and Gorenstein flag.
    Profile {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, default_value_t = polytope::DEFAULT_CUT_CAP)]
        cut_cap: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run verification checks and stream their reports.
    Verify(VerifyArgs),
    /// Classify a range of grids or tori.
    Scan(scan::ScanArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub(crate) enum FamilyArg {
    Grid,
    Torus,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Grid => Family::Grid,
            FamilyArg::Torus => Family::Torus,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_enum, required_unless_present = "graph_file")]
    family: Option<FamilyArg>,
    #[arg(long, required_unless_present = "graph_file")]
    m: Option<usize>,
    #[arg(long, required_unless_present = "graph_file")]
    n: Option<usize>,
    /// Graph JSON file, instead of --family/--m/--n.
    #[arg(long = "graph", conflicts_with_all = ["family", "m", "n"])]
    graph_file: Option<PathBuf>,
}

#[derive(Args)]
pub(crate) struct BudgetArgs {
    /// Time limit, e.g. "60s", "2m", "500ms".
    #[arg(long, env = "PMPOLY_BUDGET", default_value = "60s", value_parser = parse_budget)]
    budget: Duration,
    /// Cap on search nodes per count.
    #[arg(long)]
    max_nodes: Option<u64>,
}

impl BudgetArgs {
    pub(crate) fn start(&self) -> Budget {
        let b = Budget::with_timeout(self.budget);
        match self.max_nodes {
            Some(n) => b.with_max_nodes(n),
            None => b,
        }
    }
}

fn parse_budget(s: &str) -> Result<Duration, String> {
    let d = match s.parse::<u64>() {
        Ok(secs) => Duration::from_secs(secs),
        Err(_) => humantime::parse_duration(s).map_err(|e| e.to_string())?,
    };
    if d.is_zero() {
        return Err("budget must be positive".into());
    }
    Ok(d)
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum WitnessArg {
    Fig1,
    Fig4,
    Fig5,
    RowOnes,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id; without --m/--n (or --witness) its default instances run.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(paperlab::CHECK_IDS), required_unless_present = "all")]
    check: Option<String>,
    #[arg(long, conflicts_with = "check")]
    all: bool,
    #[arg(long, value_enum, default_value_t = FamilyArg::Torus)]
    family: FamilyArg,
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    /// Subset for the S-matching checks: "interior", "all" or "i,j;i,j;...".
    #[arg(long)]
    subset: Option<String>,
    /// Dilation bound for cor-oyo and theorem-main.
    #[arg(long, default_value_t = 3)]
    t_max: i64,
    /// Shift level for lemma-inj.
    #[arg(long, default_value_t = 3)]
    k: i64,
    /// Source dilation for lemma-inj.
    #[arg(long, default_value_t = 1)]
    l: i64,
    #[arg(long, value_enum)]
    witness: Option<WitnessArg>,
    /// Move the witness to the transposed torus.
    #[arg(long)]
    transpose: bool,
    /// Largest graph for exhaustive subset searches.
    #[arg(long, default_value_t = paperlab::DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
    #[arg(long, default_value_t = polytope::DEFAULT_CUT_CAP)]
    cut_cap: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Emit JUnit XML instead of JSON lines.
    #[arg(long)]
    junit: bool,
    /// Record wall-clock runtimes in the reports.
    #[arg(long)]
    timings: bool,
}

/// A command failure carrying its exit code.
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } | Error::CapExceeded { .. } => EXIT_INCONCLUSIVE,
            Error::InvalidArgument(_)
            | Error::EmptySubset
            | Error::VertexOutOfRange { .. }
            | Error::InvalidEdge(..)
            | Error::NotBipartite
            | Error::HypothesisFailed(_)
            | Error::DimensionMismatch { .. } => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed pipe means the reader has seen enough.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: 0,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_FAIL,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(kind) => io::Error::from(kind).into(),
            None => Failure {
                code: EXIT_FAIL,
                message: e.to_string(),
            },
        }
    }
}

pub(crate) fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

pub(crate) fn build_graph(family: FamilyArg, m: usize, n: usize) -> Result<Graph, Failure> {
    Ok(match family {
        FamilyArg::Grid => Graph::grid(m, n)?,
        FamilyArg::Torus => Graph::torus(m, n)?,
    })
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    if let Some(path) = &args.graph_file {
        let text = fs::read_to_string(path)?;
        let doc: GraphJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Ok(Graph::from_json(&doc)?);
    }
    match (args.family, args.m, args.n) {
        (Some(f), Some(m), Some(n)) => build_graph(f, m, n),
        _ => Err(usage("give --family, --m and --n, or --graph")),
    }
}

fn parse_subset(g: &Graph, spec: &str) -> Result<SubsetSpec, Failure> {
    match spec.trim() {
        "all" => Ok(SubsetSpec::all(g.n_vertices())),
        "interior" => Ok(SubsetSpec::lattice_interior(g)?),
        list => {
            let coords = list
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|pair| {
                    let (i, j) = pair
                        .split_once(',')
                        .ok_or_else(|| usage(format!("subset entry {pair:?} is not \"i,j\"")))?;
                    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad coordinate {x:?}")));
                    Ok((parse(i)?, parse(j)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(SubsetSpec::from_coords(g, &coords)?)
        }
    }
}

/// H-description and vertices of the perfect matching polytope, or of the
/// S-matching polytope when a subset is given.
fn polytope_of(g: &Graph, subset: Option<&str>, cut_cap: usize) -> Result<(ScalableHRep, Vec<EdgeVector>), Failure> {
    match subset {
        None => {
            let h = polytope::edmond_hrep_with_cap(g, cut_cap)?;
            let vs = matching::characteristic_vectors(&matching::enumerate_perfect_matchings(g), g.n_edges());
            Ok((h, vs))
        }
        Some(spec) => {
            let s = parse_subset(g, spec)?;
            let ng = NeighborGraph::new(g, &s)?;
            let h = polytope::smatching_hrep(&ng)?;
            let vs = matching::characteristic_vectors(&matching::enumerate_s_matchings(&ng), ng.n_slots());
            Ok((h, vs))
        }
    }
}

pub(crate) fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_graph(args: &GraphArgs, format: GraphFormat) -> CmdResult {
    let g = load_graph(args)?;
    match format {
        GraphFormat::Json => print_json(&g.to_json())?,
        GraphFormat::Dot => write!(io::stdout().lock(), "{}", g.to_dot())?,
    }
    Ok(0)
}

fn cmd_matchings(args: &GraphArgs, subset: Option<&str>, count_only: bool) -> CmdResult {
    let g = load_graph(args)?;
    let ms = match subset {
        None => matching::enumerate_perfect_matchings(&g),
        Some(spec) => {
            let s = parse_subset(&g, spec)?;
            matching::enumerate_s_matchings(&NeighborGraph::new(&g, &s)?)
        }
    };
    if count_only {
        print_json(&json!({ "count": ms.len() }))?;
    } else {
        let lists: Vec<&[usize]> = ms.iter().map(|m| m.edge_ids.as_slice()).collect();
        print_json(&json!({ "count": ms.len(), "matchings": lists }))?;
    }
    Ok(0)
}

fn cmd_hrep(args: &GraphArgs, subset: Option<&str>, cut_cap: usize) -> CmdResult {
    let g = load_graph(args)?;
    let h = match subset {
        None => polytope::edmond_hrep_with_cap(&g, cut_cap)?,
        Some(spec) => {
            let s = parse_subset(&g, spec)?;
            polytope::smatching_hrep(&NeighborGraph::new(&g, &s)?)?
        }
    };
    print_json(&h.to_json())?;
    Ok(0)
}

fn cmd_profile(args: &GraphArgs, subset: Option<&str>, cut_cap: usize, budget: &BudgetArgs) -> CmdResult {
    let g = load_graph(args)?;
    let (h, vs) = polytope_of(&g, subset, cut_cap)?;
    match ehrhart::profile(&h, &vs, &budget.start()) {
        Ok(p) => {
            print_json(&p)?;
            Ok(0)
        }
        Err(Error::EmptyPolytope) => {
            print_json(&json!({
                "status": "not_applicable",
                "reason": "the polytope is empty: the graph has no perfect matching",
            }))?;
            Ok(0)
        }
        Err(e) => Err(e.into()),
    }
}

fn single_check(args: &VerifyArgs, id: &str, budget: &Budget) -> Result<Vec<VerificationReport>, Failure> {
    if id == "witness" {
        let name = match (args.witness, args.m, args.n) {
            (Some(WitnessArg::Fig1), _, _) => WitnessName::Fig1,
            (Some(WitnessArg::Fig4), _, Some(n)) => WitnessName::Fig4 { n },
            (Some(WitnessArg::Fig5), _, Some(n)) => WitnessName::Fig5 { n },
            (Some(WitnessArg::RowOnes), Some(m), Some(n)) => WitnessName::RowOnes { m, n },
            _ => return Err(usage("witness needs --witness, with --m/--n for the sized patterns")),
        };
        let mut w = paperlab::witness(name)?;
        if args.transpose {
            w = w.transposed()?;
        }
        return Ok(vec![paperlab::verify_witness(&w)?]);
    }
    let (Some(m), Some(n)) = (args.m, args.n) else {
        return Err(usage(format!("{id} needs --m and --n")));
    };
    let needs_subset = || {
        args.subset
            .as_deref()
            .ok_or_else(|| usage(format!("{id} needs --subset")))
    };
    let report = match id {
        "hokan" => paperlab::verify_theorem_hokan_with_cap(m, n, budget, args.cut_cap)?,
        "lemma-first" => paperlab::verify_lemma_first(m, n, args.subset_cap)?,
        "lemma-inj" => paperlab::verify_lemma_inj(&build_graph(args.family, m, n)?, args.k, args.l, budget)?,
        "prop-dimensions" => return Ok(paperlab::verify_prop_dimensions(&[(args.family.into(), m, n)])?),
        "cor-gorcor" => {
            let g = build_graph(args.family, m, n)?;
            let s = parse_subset(&g, args.subset.as_deref().unwrap_or("interior"))?;
            paperlab::verify_cor_gorcor(&g, &s, budget)?
        }
        "cor-oyo" => {
            let g = build_graph(args.family, m, n)?;
            let s = parse_subset(&g, needs_subset()?)?;
            paperlab::verify_cor_oyo(&g, &s, args.t_max, budget)?
        }
        "theorem-main" => {
            let g = build_graph(args.family, m, n)?;
            let s = parse_subset(&g, needs_subset()?)?;
            paperlab::verify_theorem_main(&g, &s, args.t_max, budget)?
        }
        other => return Err(usage(format!("unknown check {other:?}"))),
    };
    Ok(vec![report])
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let budget = args.budget.start();
    let only = args.check.as_deref();
    let targeted = args.m.is_some() || args.witness.is_some();
    let reports = match only {
        Some(id) if targeted => {
            let start = Instant::now();
            let mut reports = single_check(args, id, &budget)?;
            if args.timings {
                let ms = start.elapsed().as_millis() as u64;
                reports.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
            }
            reports
        }
        _ => paperlab::run_suite(&budget, only, args.timings)?,
    };
    let mut out = io::stdout().lock();
    if args.junit {
        write!(out, "{}", paperlab::to_junit(&reports))?;
    } else {
        for r in &reports {
            let line = serde_json::to_string(r)?;
            writeln!(out, "{line}")?;
        }
    }
    Ok(exit_for(reports.iter().map(|r| r.verdict)))
}

/// 1 if anything failed, else 3 if anything was inconclusive, else 0.
pub(crate) fn exit_for(verdicts: impl Iterator<Item = Verdict>) -> u8 {
    let mut code = 0;
    for v in verdicts {
        match v {
            Verdict::Fail => return EXIT_FAIL,
            Verdict::Inconclusive => code = EXIT_INCONCLUSIVE,
            Verdict::Pass | Verdict::NotApplicable => {}
        }
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Graph { graph, format } => cmd_graph(graph, *format),
        Command::Matchings {
            graph,
            subset,
            count_only,
        } => cmd_matchings(graph, subset.as_deref(), *count_only),
        Command::Hrep { graph, subset, cut_cap } => cmd_hrep(graph, subset.as_deref(), *cut_cap),
        Command::Profile {
            graph,
            subset,
            cut_cap,
            budget,
        } => cmd_profile(graph, subset.as_deref(), *cut_cap, budget),
        Command::Verify(args) => cmd_verify(args),
        Command::Scan(args) => scan::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("pmpoly: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
