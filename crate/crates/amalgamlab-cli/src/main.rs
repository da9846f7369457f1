//! `amalgamlab`: catalog queries, amalgam classification, graph construction and
//! verification from the command line.
//!
//! Exit codes: 0 success, 2 verification mismatch, 3 scope exceeded, 4 input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use amalgamlab::catalog::{Catalog, Family, CATALOG_ENV};
use amalgamlab::Error;

#[derive(Parser, Debug)]
#[command(name = "amalgamlab", version, about = "Amalgams of locally 2-arc-transitive graphs")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every command. Equal settings and inputs give identical
/// JSON output.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Data directory holding `catalog/` and `matrices/`.
    #[arg(long, global = true, env = CATALOG_ENV)]
    pub catalog_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Query and validate the 2-transitive catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Pair catalog entries into amalgams and compare with the reference table.
    Classify {
        #[arg(long, value_enum, default_value_t = TierArg::Descriptor)]
        tier: TierArg,
        /// Also list the pairs with isomorphic socles.
        #[arg(long)]
        regular: bool,
        /// Reference table to compare against instead of the bundled one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Amalgams admitting a locally 3-arc-transitive graph.
    ThreeArc,
    /// Build a graph and write it with its group.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        /// Directory for the graph and group files.
        #[arg(long, global = true, default_value = ".")]
        out: PathBuf,
        /// File stem; defaults to a name derived from the construction.
        #[arg(long, global = true)]
        name: Option<String>,
    },
    /// Arc-transitivity, kernels, composition factors and kernel chains of a graph file.
    Check {
        graph: PathBuf,
        /// Largest s to test.
        #[arg(long = "s", default_value_t = 3)]
        s: usize,
        /// Random arcs for the chain checks.
        #[arg(long, default_value_t = 20)]
        paths: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        degree: Option<u64>,
        /// Only entries with a concrete construction.
        #[arg(long)]
        constructed: bool,
    },
    Show {
        id: String,
    },
    /// Check entries against their constructions; all entries when none are named.
    Validate {
        ids: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildKind {
    /// A row of the complete bipartite examples, by 1-based index or group label.
    Example {
        row: String,
    },
    /// The 2-arc-transitive Cayley graph with vertex stabiliser H.
    Cayley {
        /// A catalog id or a group name such as S3.
        #[arg(long = "H", alias = "h")]
        h: String,
        #[arg(long)]
        p: u64,
    },
    /// The complete graph under a 2-transitive catalog group.
    Complete {
        id: String,
    },
    /// The cycle with its dihedral group.
    Cycle {
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TierArg {
    Descriptor,
    Concrete,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    Affine,
    AlmostSimple,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Affine => Family::Affine,
            FamilyArg::AlmostSimple => Family::AlmostSimple,
        }
    }
}

impl RunConfig {
    fn catalog(&self) -> amalgamlab::Result<Catalog> {
        match &self.catalog_dir {
            Some(dir) => Catalog::load(dir),
            None => Catalog::load_default(),
        }
    }
}

/// What a command produced and whether it matched expectations.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub dot: Option<String>,
    pub mismatch: bool,
}

fn run(cli: Cli) -> amalgamlab::Result<Outcome> {
    let cfg = &cli.config;
    match cli.command {
        Command::Catalog(CatalogCmd::List { family, degree, constructed }) => {
            commands::catalog_list(&cfg.catalog()?, family.map(Into::into), degree, constructed)
        }
        Command::Catalog(CatalogCmd::Show { id }) => commands::catalog_show(&cfg.catalog()?, &id),
        Command::Catalog(CatalogCmd::Validate { ids }) => commands::catalog_validate(&cfg.catalog()?, &ids),
        Command::Classify { tier, regular, golden } => {
            commands::classify(&cfg.catalog()?, cfg, tier, regular, golden.as_deref())
        }
        Command::ThreeArc => commands::three_arc(&cfg.catalog()?, cfg),
        Command::Build { kind, out, name } => commands::build(&cfg.catalog()?, kind, &out, name.as_deref()),
        Command::Check { graph, s, paths } => commands::check(&graph, s, paths, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.config.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialise")),
                Format::Dot => match &out.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(4);
                    }
                },
            }
            if out.mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
