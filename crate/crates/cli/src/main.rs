use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use expodom::arith::RationalJson;
use expodom::family::{tau, FamilyContext};
use expodom::graph::{emit_graph6, enumerate_subcubic_trees, parse_graph, Graph, GraphFormat};
use expodom::harness::{run_suite, search_counterexample, FixtureId, Report, Suite, SuiteParams};
use expodom::lp::{build_porous_lp, solve_exact};
use expodom::par::Exec;
use expodom::solve::{domination_number, exponential_domination_number, porous_exponential_domination_number};

const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "expodom", version, about = "Exact (porous) exponential domination on small graphs")]
struct Cli {
    /// Worker threads for suites and scans; 1 runs sequentially.
    #[arg(long, global = true, env = "EXPODOM_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domination parameters of one graph.
    Compute(ComputeArgs),
    /// All subcubic trees of one order, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// The threshold τ at one vertex.
    Tau {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        vertex: usize,
    },
    /// Generate the operation family, or recognize one tree.
    Family {
        #[arg(long, required_unless_present = "recognize")]
        nmax: Option<usize>,
        /// Tree to recognize (path or `-`).
        #[arg(long, conflicts_with = "nmax")]
        recognize: Option<String>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        nmax: Option<usize>,
        /// Largest cycle for suites that include cycles.
        #[arg(long)]
        cycles: Option<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Scan for counterexamples to one of the two conjectures.
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print a reference fixture.
    Fixture {
        #[command(subcommand)]
        which: FixtureCmd,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureCmd {
    F1 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    F2,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge list or graph6 file, `-` for stdin.
    #[arg(required_unless_present = "fixture")]
    input: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Use a built-in fixture (`f1:K` or `f2`) instead of an input file.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<FixtureId>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Skip the integer parameters.
    #[arg(long)]
    no_ilp: bool,
    /// Skip the linear program.
    #[arg(long)]
    no_lp: bool,
    /// Run the integer searches past the order guard.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 26)]
    max_order: usize,
    /// Also write the LP in CPLEX-LP format.
    #[arg(long)]
    emit_lp: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report 0 ms so identical runs are byte-identical.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn usage(err: anyhow::Error) -> Failure {
    Failure { code: EXIT_USAGE, err }
}

fn data(err: anyhow::Error) -> Failure {
    Failure { code: EXIT_DATA, err }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn load(src: &str, format: Option<FormatArg>) -> Result<Graph, Failure> {
    let text = read_source(src).map_err(data)?;
    parse_graph(&text, format.map(Into::into)).map_err(|e| data(anyhow!("{src}: {e}")))
}

fn load_input(a: &InputArgs) -> Result<Graph, Failure> {
    match (&a.fixture, &a.input) {
        (Some(f), _) => Ok(f.graph()),
        (None, Some(src)) => load(src, a.format),
        (None, None) => Err(usage(anyhow!("an input path or --fixture is required"))),
    }
}

fn print_json(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| data(e.into()))?;
    writeln!(out).map_err(|e| data(e.into()))
}

fn emit_report(report: Report, out: &OutArgs) -> Result<(), Failure> {
    let report = if out.deterministic { report.deterministic() } else { report };
    match &out.out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| data(e.into()))?;
            fs::write(path, text + "\n")
                .with_context(|| format!("writing {}", path.display()))
                .map_err(data)
        }
        None => print_json(&serde_json::to_value(&report).map_err(|e| data(e.into()))?),
    }
}

fn compute(a: &ComputeArgs) -> Result<Value, Failure> {
    let g = load_input(&a.input)?;
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(g.n()));
    out.insert("m".into(), json!(g.edge_count()));
    out.insert("graph6".into(), json!(emit_graph6(&g)));
    if !a.no_ilp {
        if g.n() > a.max_order && !a.force {
            return Err(usage(anyhow!(
                "order {} exceeds the search guard {}; pass --force or --no-ilp",
                g.n(),
                a.max_order
            )));
        }
        let gamma = domination_number(&g);
        let ge = exponential_domination_number(&g);
        let ges = porous_exponential_domination_number(&g);
        out.insert("gamma".into(), json!(gamma.value));
        out.insert("gamma_witness".into(), json!(gamma.witness.to_vec()));
        out.insert("gamma_e".into(), json!(ge.value));
        out.insert("gamma_e_witness".into(), json!(ge.witness.to_vec()));
        out.insert("gamma_e_star".into(), json!(ges.value));
        out.insert("gamma_e_star_witness".into(), json!(ges.witness.to_vec()));
        out.insert(
            "witnesses_verified".into(),
            json!(gamma.verified() && ge.verified() && ges.verified()),
        );
    }
    if !a.no_lp || a.emit_lp.is_some() {
        let model = build_porous_lp(&g);
        if let Some(path) = &a.emit_lp {
            fs::write(path, model.to_cplex_lp())
                .with_context(|| format!("writing {}", path.display()))
                .map_err(data)?;
        }
        if !a.no_lp {
            let sol = solve_exact(&model).map_err(|e| data(e.into()))?;
            out.insert("gamma_ef_star".into(), json!(RationalJson(&sol.objective)));
            out.insert("lp_certified".into(), json!(sol.certifies(&model)));
            out.insert("lp_primal".into(), json!(sol.primal.iter().map(RationalJson).collect::<Vec<_>>()));
        }
    }
    Ok(Value::Object(out))
}

fn exec_for(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    }
}

fn configure_threads(jobs: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs.filter(|&n| n > 1) {
        // a second configuration attempt in the same process is harmless to ignore
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

fn run(cli: Cli) -> Result<u8, Failure> {
    configure_threads(cli.jobs);
    let exec = exec_for(cli.jobs);
    match cli.command {
        Command::Compute(a) => print_json(&compute(&a)?)?,
        Command::Enumerate { n, count } => {
            let trees: Vec<String> = enumerate_subcubic_trees(n).map(|t| emit_graph6(&t)).collect();
            if count {
                print_json(&json!({ "n": n, "count": trees.len() }))?;
            } else {
                print_json(&json!({ "n": n, "count": trees.len(), "graph6": trees }))?;
            }
        }
        Command::Tau { input, vertex } => {
            let g = load_input(&input)?;
            let r = tau(&g, vertex).map_err(|e| usage(e.into()))?;
            print_json(&json!({
                "vertex": vertex,
                "tau": r.value,
                "witness": r.witness.map(|d| d.to_vec()),
            }))?;
        }
        Command::Family { nmax, recognize, format } => {
            let ctx = FamilyContext::new();
            if let Some(src) = recognize {
                let t = load(&src, format)?;
                let trace = ctx.recognize(&t).map_err(|e| data(e.into()))?;
                print_json(&json!({
                    "graph6": emit_graph6(&t),
                    "member": trace.is_some(),
                    "trace": trace,
                }))?;
            } else {
                let n_max = nmax.expect("clap enforces one of the two");
                let members: Vec<String> = ctx.generate_family(n_max).iter().map(emit_graph6).collect();
                print_json(&json!({ "n_max": n_max, "count": members.len(), "graph6": members }))?;
            }
        }
        Command::Verify { suite, nmax, cycles, samples, seed, out } => {
            let mut p = SuiteParams::new(nmax.unwrap_or_else(|| suite.default_n_max())).with_exec(exec);
            p.cycle_max = cycles;
            p.samples = samples;
            p.seed = seed;
            let report = run_suite(suite, &p);
            let passed = report.passed();
            emit_report(report, &out)?;
            if !passed {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Conjecture { id, nmax, out } => {
            let report = search_counterexample(id, nmax, exec).map_err(|e| usage(e.into()))?;
            emit_report(report, &out)?;
        }
        Command::Fixture { which } => {
            let id = match which {
                FixtureCmd::F1 { k } => FixtureId::F1(k as usize),
                FixtureCmd::F2 => FixtureId::F2,
            };
            let g = id.graph();
            print_json(&json!({
                "fixture": id.to_string(),
                "n": g.n(),
                "graph6": emit_graph6(&g),
                "edges": g.edges().collect::<Vec<_>>(),
            }))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, err }) => {
            eprintln!("expodom: {err:#}");
            ExitCode::from(code)
        }
    }
}
