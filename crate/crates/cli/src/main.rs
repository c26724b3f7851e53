//! `dgs`: classify graphs, certify them as determined by their generalized
//! spectrum, and run catalogue censuses and mate scans.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "dgs",
    version,
    about = "Generalized-spectrum certificates for graphs"
)]
struct Cli {
    /// Worker threads for corpus commands (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report family, ranks, SNF, twins and the cofactor vector
    Classify {
        /// graph6 file, one graph per line
        file: Option<PathBuf>,
        /// Inline 0/1 adjacency rows separated by ';'
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
    },
    /// Decide DGS and emit one certificate per graph
    CheckDgs {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
        /// graph6 file searched for generalized-cospectral mates
        #[arg(long)]
        mate_corpus: Option<PathBuf>,
        /// Write cert-<k>.json for the k-th input graph into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print the certificates as a JSON array instead of the summary
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Count almost controllable graphs of one order
    Census {
        /// Order for the built-in enumeration (at most 6)
        n: Option<usize>,
        /// Isomorph-free graph6 catalogue instead of the enumeration
        #[arg(long, conflicts_with = "n")]
        corpus: Option<PathBuf>,
    },
    /// Print the rational orthogonal matrices carrying G to H
    QMatrix {
        /// graph6 string or inline matrix
        g: String,
        h: String,
    },
    /// List generalized-cospectral, non-isomorphic pairs in a catalogue
    MateScan {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Built-in enumeration of this order instead of a corpus
        #[arg(long, conflicts_with = "corpus")]
        order: Option<usize>,
    },
    /// Re-check a certificate from its own fields
    VerifyCert { cert: PathBuf },
}

pub enum Failure {
    /// bad arguments, unreadable input, failed precondition
    Usage(String),
    /// a computed object contradicts a proven identity
    Invariant(String),
}

impl From<dgs_core::engine::EngineError> for Failure {
    fn from(e: dgs_core::engine::EngineError) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Classify { file, matrix } => commands::classify(file, matrix),
        Command::CheckDgs {
            file,
            matrix,
            mate_corpus,
            out_dir,
            json,
            no_timestamp,
        } => commands::check_dgs(commands::CheckOptions {
            file,
            matrix,
            mate_corpus,
            out_dir,
            json,
            timestamp: !no_timestamp,
        }),
        Command::Census { n, corpus } => commands::census(n, corpus),
        Command::QMatrix { g, h } => commands::q_matrix(&g, &h),
        Command::MateScan { corpus, order } => commands::mate_scan(corpus, order),
        Command::VerifyCert { cert } => commands::verify_cert(&cert),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(2)
        }
    }
}
