use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Coherent configurations, Weisfeiler-Leman refinement and circulant
/// scheme analysis.
///
/// Inputs are given inline ("n=5;S=1,4", "n=3;arcs=1:0,1;...") or as a
/// path to a scheme file ("n=<int>" then "C: a,b,c" lines) or a matrix
/// file ("n=<int>" then n rows of color ids); "-" reads stdin.
#[derive(Parser, Debug)]
#[command(name = "circwl", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format; csv applies to enumerate and verify.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for corpus scans (enumerate, dim, verify).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for memoized graph closures.
    #[arg(long, global = true, env = "CIRCWL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Largest order for graph and scheme corpora.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Largest m-ary color array (entries) for WL_m refinement.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub memory_cap: usize,
    /// Largest arity accepted by WL_m refinement.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_m: usize,
    /// Largest degree for normality tests.
    #[arg(long, global = true, default_value_t = 20)]
    pub normal_max_n: usize,
    /// Largest degree for the pebble-game oracle.
    #[arg(long, global = true, default_value_t = 8)]
    pub oracle_max_n: usize,
    /// Largest arity for the pebble-game oracle.
    #[arg(long, global = true, default_value_t = 3)]
    pub oracle_max_m: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// Circulant graph shorthand, e.g. "n=5;S=1,4".
    #[arg(long, conflicts_with = "scheme")]
    pub graph: Option<String>,
    /// Input file (scheme file, matrix file or shorthand), or "-".
    #[arg(long, visible_alias = "input")]
    pub scheme: Option<String>,
}

impl InputArg {
    pub fn spec(&self) -> anyhow::Result<&str> {
        self.graph
            .as_deref()
            .or(self.scheme.as_deref())
            .ok_or_else(|| anyhow::anyhow!("an input is required: --graph or --scheme"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Dimension bound over the graph corpus.
    Main,
    /// Reduction to singular extensions on non-quasinormal schemes.
    Reduction,
    /// Algebraic isomorphisms of circulant schemes are induced.
    Muzychuk,
    /// Unit multipliers permute basis sets.
    Schur,
    /// Discreteness at the base tuple for quasinormal schemes.
    Discreteness,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// WL closure of the input, printed as a scheme or matrix file.
    Close(InputArg),
    /// Checks the coherence axioms.
    Validate(InputArg),
    /// Summary of a circulant scheme.
    Analyze(InputArg),
    /// Sections and their projective-equivalence classes.
    Sections(InputArg),
    /// Trivial classes of order > 2 and the singularity test.
    Singular(InputArg),
    /// Singular extension at a section, printed as a scheme file.
    Extend {
        #[command(flatten)]
        input: InputArg,
        /// Section as "|U|/|L|" (subgroup orders); default: the smallest
        /// member of the first singular class.
        #[arg(long)]
        section: Option<String>,
        /// Append the postcondition checks as comment lines.
        #[arg(long)]
        check: bool,
    },
    /// WL_m refinement, or WL_m-equivalence against a second input.
    Wlm {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, short)]
        m: usize,
        /// Second configuration; equivalence is tested for each
        /// algebraic isomorphism (or --phi).
        #[arg(long)]
        against: Option<String>,
        /// Algebraic isomorphism as JSON {"map": [...]}.
        #[arg(long)]
        phi: Option<String>,
        /// Also run the pebble-game oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// WL-dimension estimate relative to all circulant schemes of the order.
    Dim {
        #[command(flatten)]
        input: InputArg,
        /// Largest m tried.
        #[arg(long, default_value_t = 4)]
        m: usize,
    },
    /// Circulant graphs or schemes of one order.
    Enumerate {
        #[arg(long, short)]
        n: usize,
        #[arg(long)]
        directed: bool,
        /// List schemes instead of graphs.
        #[arg(long)]
        schemes: bool,
        /// With --schemes: keep every scheme, not one per Cayley class.
        #[arg(long)]
        all: bool,
    },
    /// Algebraic isomorphisms and whether isomorphisms induce them.
    Iso {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        against: String,
    },
    /// Section multipliers σ_S of an algebraic automorphism.
    Multiplier {
        #[command(flatten)]
        input: InputArg,
        /// φ induced by d ↦ ud.
        #[arg(long, conflicts_with = "phi")]
        unit: Option<usize>,
        /// Algebraic automorphism as JSON {"map": [...]}.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Corpus-wide verification runs.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// "a..b" or a comma-separated list.
        #[arg(long, default_value = "4..12")]
        orders: String,
        #[arg(long)]
        directed: bool,
        /// Arity for the reduction run.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Largest m tried by dimension estimates.
        #[arg(long, default_value_t = 4)]
        max_estimate_m: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
