//! `dessins`: dessins d'enfants, Pauli contextuality and finite geometry from the command line.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{CliError, Session};

#[derive(Debug, Parser)]
#[command(name = "dessins", version, about = "Dessins d'enfants, Pauli contextuality and finite geometries")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write a Graphviz rendering of the produced graph to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<String>,
    /// Include wall-clock timing in the JSON report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pauli group arithmetic. Observables are written `[+|-][i]{I,X,Y,Z}+`.
    #[command(subcommand)]
    Pauli(PauliCmd),
    /// Parity proofs and censuses of contextual configurations.
    #[command(subcommand)]
    Magic(MagicCmd),
    /// CHSH operator norms.
    #[command(subcommand)]
    Chsh(ChshCmd),
    /// Dessin analysis and enumeration.
    #[command(subcommand)]
    Dessin(DessinCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Fp(FpCmd),
    /// Graphs and incidence geometries.
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// Belyi function verification.
    #[command(subcommand)]
    Belyi(BelyiCmd),
    /// Named reference structures.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Debug, Subcommand)]
pub enum PauliCmd {
    /// Product with exact phase.
    Mul { a: String, b: String },
    /// Whether two operators commute.
    Commutes { a: String, b: String },
}

#[derive(Debug, Subcommand)]
pub enum MagicCmd {
    /// Parity certificate of a configuration file (or `catalog:NAME`); exit 1 if not magic.
    Verify { config: String },
    /// Exhaustive census of CHSH squares or Mermin pentagrams.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, conflicts_with = "pentagrams", required_unless_present = "pentagrams")]
    pub squares: bool,
    #[arg(long)]
    pub pentagrams: bool,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub qubits: u8,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum ChshCmd {
    /// Operator norm of σ1σ2 + σ2σ3 + σ3σ4 − σ4σ1.
    Norm { s1: String, s2: String, s3: String, s4: String },
}

#[derive(Debug, Subcommand)]
pub enum DessinCmd {
    /// Passport, signature, genus and monodromy group of a dessin file.
    Analyze {
        dessin: String,
        /// Maximum monodromy group order to enumerate.
        #[arg(long, default_value_t = dessins_core::dessin::DEFAULT_GROUP_CAP)]
        group_cap: usize,
    },
    /// All clean dessins with the given edge count, up to relabeling.
    Enumerate {
        #[arg(long)]
        edges: usize,
        /// Black cycle type, e.g. "3^3 1^1".
        #[arg(long)]
        black: Option<String>,
        /// White cycle type (an involution type).
        #[arg(long)]
        white: Option<String>,
        /// Face cycle type.
        #[arg(long)]
        faces: Option<String>,
        /// Monodromy group order.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FpCmd {
    /// Todd-Coxeter enumeration of the cosets of the `sub:` words.
    Coset {
        #[arg(long)]
        presentation: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// Conjugacy classes of subgroups of index at most K.
    LowIndex {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        max_index: usize,
        /// Largest index accepted for `--max-index`.
        #[arg(long, default_value_t = dessins_core::fpgroup::DEFAULT_MAX_INDEX)]
        index_cap: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GeometryCmd {
    /// Stabilizer classes of edge pairs and the geometries they induce.
    Induce {
        dessin: String,
        /// Report only this class (0-based, in listed order).
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, default_value_t = dessins_core::dessin::DEFAULT_GROUP_CAP)]
        group_cap: usize,
    },
    /// Canonical certificate, automorphism group order and catalog matches.
    Identify { graph: String },
    /// Generalized polygon test; exit 1 if it fails.
    Polygon {
        geometry: String,
        #[arg(long)]
        n: usize,
    },
    /// Geometric hyperplanes and closure under addition.
    Hyperplanes { geometry: String },
    /// Maximal cliques.
    Cliques { graph: String },
    /// Independence number, chromatic index, bipartiteness and planarity.
    Facts { graph: String },
}

#[derive(Debug, Subcommand)]
pub enum BelyiCmd {
    /// Exact critical-value test, passport and vertex coordinates; exit 1 if it fails.
    Verify {
        #[arg(long)]
        candidate: String,
        /// Also require the passport of this dessin.
        #[arg(long)]
        dessin: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    List,
    Get { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session::new(std::env::args().skip(1).collect(), cli.threads, cli.dot.clone(), cli.timing);
    let outcome = commands::run(&cli.command, &mut session);
    match outcome {
        Ok(out) => {
            if let Err(e) = session.finish(&out, cli.json) {
                return e.exit();
            }
            ExitCode::from(out.code)
        }
        Err(e) => e.exit(),
    }
}

impl CliError {
    fn exit(&self) -> ExitCode {
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}
