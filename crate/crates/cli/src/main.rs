use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuttree::cutring::{oracle_dump, Oracle};
use cuttree::flow::verify_flow;
use cuttree::formats::{self, FlowJson, TreeJson};
use cuttree::strips::{self, StripPoint};
use cuttree::structure::{canonical_system, gomory_hu_extract, level_up_fast, level_up_oracle, tree_from_nested};
use cuttree::structure::{CanonicalOptions, NestedSystem};
use cuttree::{Error, Network, StructureTree};

#[derive(Parser)]
#[command(name = "cuttree", version, about = "Max-flow, canonical min-cuts and structure trees")]
struct Cli {
    /// Output format for trees.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the main artifact here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Largest network handed to exhaustive enumeration.
    #[arg(long, env = "CUTTREE_ORACLE_LIMIT", default_value_t = cuttree::DEFAULT_ORACLE_LIMIT, global = true)]
    oracle_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum flow value; the flow itself goes to --output.
    Maxflow {
        input: PathBuf,
        #[arg(short)]
        s: String,
        #[arg(short)]
        t: String,
    },
    /// The inclusion-smallest minimum cut containing s.
    Mincut {
        input: PathBuf,
        #[arg(short)]
        s: String,
        #[arg(short)]
        t: String,
    },
    /// Canonical structure tree.
    Tree { input: PathBuf },
    /// Gomory-Hu tree obtained from the structure tree.
    Ghtree { input: PathBuf },
    /// Every cut with capacity, thinness and tightness.
    Oracle { input: PathBuf },
    /// Check the fast algorithms against exhaustive enumeration.
    Verify { input: PathBuf },
    /// Periodic strips.
    Strip {
        #[command(subcommand)]
        command: StripCommand,
    },
}

#[derive(Subcommand)]
enum StripCommand {
    /// Least capacity of a cut separating two points or ends.
    Sep {
        input: PathBuf,
        #[arg(short, allow_hyphen_values = true)]
        x: String,
        #[arg(short, allow_hyphen_values = true)]
        y: String,
    },
    /// Level-n tree of the truncation at width w.
    Tree {
        input: PathBuf,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        w: usize,
    },
}

enum Failure {
    Input(String),
    Verification(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<Network, Failure> {
    Ok(formats::parse_network(&read(path)?)?)
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_tree(cli: &Cli, tree: &StructureTree, json: TreeJson) -> Result<String, Failure> {
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(&json).map_err(|e| Failure::Input(e.to_string()))? + "\n",
        Format::Dot => formats::tree_to_dot(tree),
    })
}

fn options(cli: &Cli) -> CanonicalOptions {
    CanonicalOptions { oracle_limit: cli.oracle_limit, ..CanonicalOptions::default() }
}

fn canonical_tree(cli: &Cli, net: &Network) -> Result<StructureTree, Failure> {
    let sys = canonical_system(net, None, &options(cli))?;
    Ok(tree_from_nested(net, &sys.top()))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Maxflow { input, s, t } => {
            let net = load(input)?;
            let (f, value) = cuttree::max_flow(&net, net.id(s)?, net.id(t)?)?;
            println!("{value}");
            if let Some(path) = &cli.output {
                let text = serde_json::to_string_pretty(&FlowJson::from_flow(&net, &f)).expect("flow serializes");
                std::fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Mincut { input, s, t } => {
            let net = load(input)?;
            let cut = cuttree::min_cut_smallest(&net, net.id(s)?, net.id(t)?)?;
            let out = serde_json::json!({
                "capacity": cuttree::capacity(&net, &cut)?,
                "side": net.names_of(cut.side()),
            });
            emit(cli, &format!("{out}\n"))
        }
        Command::Tree { input } => {
            let net = load(input)?;
            let tree = canonical_tree(cli, &net)?;
            emit(cli, &render_tree(cli, &tree, TreeJson::from_tree(&tree))?)
        }
        Command::Ghtree { input } => {
            let net = load(input)?;
            let tree = gomory_hu_extract(&canonical_tree(cli, &net)?);
            emit(cli, &render_tree(cli, &tree, TreeJson::from_tree(&tree))?)
        }
        Command::Oracle { input } => {
            let net = load(input)?;
            let dump = oracle_dump(&net, cli.oracle_limit)?;
            emit(cli, &(serde_json::to_string_pretty(&dump).expect("dump serializes") + "\n"))
        }
        Command::Verify { input } => verify(cli, &load(input)?),
        Command::Strip { command } => match command {
            StripCommand::Sep { input, x, y } => {
                let strip = formats::parse_strip(&read(input)?)?;
                let (x, y) = (StripPoint::parse(x, &strip)?, StripPoint::parse(y, &strip)?);
                println!("{}", strips::separation_level(&strip, x, y)?);
                Ok(())
            }
            StripCommand::Tree { input, n, w } => {
                let strip = formats::parse_strip(&read(input)?)?;
                let wt = strips::windowed_tree(&strip, *n, *w)?;
                emit(cli, &render_tree(cli, &wt.tree, TreeJson::from_windowed(&wt))?)
            }
        },
    }
}

fn verify(cli: &Cli, net: &Network) -> Outcome {
    let oracle = Oracle::new(net, cli.oracle_limit)?;
    let lambda = oracle.lambda();
    let nv = net.vertex_count();
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        println!("{name}: {}", if ok { "ok" } else { "FAILED" });
        if !ok {
            failures.push(name.to_string());
        }
    };

    let mut flows = true;
    let mut smallest = true;
    for s in 0..nv {
        for t in (0..nv).filter(|&t| t != s) {
            let (f, value) = cuttree::max_flow(net, s, t)?;
            flows &= verify_flow(net, &f) && value == lambda.get(s, t);
            let least = cuttree::min_cut_smallest(net, s, t)?;
            smallest &= oracle.min_cuts(s, t).iter().all(|c| least.side().is_subset(c.side()));
        }
    }
    check("max-flow equals minimum cut", flows);
    check("smallest minimum cut is least", smallest);

    let mut same = true;
    let mut fast_used = true;
    let mut prev = NestedSystem::new();
    let opts = options(cli);
    for n in 1..=lambda.max() {
        let slow = level_up_oracle(&oracle, &prev, n)?;
        match level_up_fast(net, lambda, &prev, n, &opts) {
            Some(fast) => same &= fast == slow,
            None => fast_used = false,
        }
        prev = slow;
    }
    check("fast levels equal enumeration", same);
    check("fast levels never fell back", fast_used);

    let tree = tree_from_nested(net, &prev);
    let tree_ok = (0..nv).all(|u| (u + 1..nv).all(|v| tree.min_cut_value(u, v) == Some(lambda.get(u, v))));
    check("tree gives every connectivity", tree_ok);
    let gh = gomory_hu_extract(&tree);
    let gh_ok = gh.node_count() == nv
        && (0..nv).all(|u| (u + 1..nv).all(|v| gh.min_cut_value(u, v) == Some(lambda.get(u, v))));
    check("Gomory-Hu tree gives every connectivity", gh_ok);
    let thin_tight = oracle
        .cuts()
        .all(|(c, _)| !oracle.is_thin(&c) || cuttree::netcore::is_tight(net, &c).unwrap_or(false));
    check("thin cuts are tight", thin_tight);

    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(failed)) => {
            eprintln!("verification failed: {}", failed.join(", "));
            ExitCode::from(2)
        }
    }
}
