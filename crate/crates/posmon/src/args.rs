use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "posmon",
    version,
    about = "Word problem, divisibility and structure checks for positive homogeneous monoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Catalog type label, e.g. B_ii or B_ii_alt.
    #[arg(long = "type", global = true, value_name = "LABEL")]
    pub type_label: Option<String>,

    /// Presentation file with `letters:` and `rel:` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub presentation_file: Option<PathBuf>,

    /// Maximum number of words visited by any single class search.
    #[arg(
        long,
        global = true,
        default_value_t = 50_000_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub budget_nodes: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    I,
    Ii,
    Degenerate,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the equivalence class of a word.
    Class {
        #[arg(long)]
        word: String,
        /// List every member even for large classes.
        #[arg(long)]
        full: bool,
    },
    /// Decide whether two words are equivalent.
    Equiv {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Shortest chain of elementary equivalences from u to v.
    Derive {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Decide whether u divides w on one side.
    Divides {
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Classes of a given length divisible by both u and v.
    CommonMultiples {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        length: usize,
    },
    /// Bounded certificate for the least common multiple of u and v.
    Lcm {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        max_length: usize,
    },
    /// Test whether a word is a fundamental element.
    Fundamental {
        #[arg(long)]
        word: String,
        /// Choose the two witnesses per generator independently (non-standard).
        #[arg(long)]
        independent: bool,
    },
    /// Permutations σ with a·Δ ≃ Δ·σ(a) for every generator a.
    QuasiCentral {
        #[arg(long)]
        word: String,
    },
    /// Verify the listed fundamental elements of a catalog type.
    Theorem3,
    /// Search for failures of single-letter cancellation.
    CancelScan {
        #[arg(long)]
        max_length: usize,
    },
    /// Check that a letter map between two catalog types respects relations.
    Morphism {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Comma-separated `letter=word` pairs.
        #[arg(long)]
        map: String,
    },
    /// Least k with (cba)^k fundamental.
    Coxeter {
        #[arg(long)]
        max_k: usize,
    },
    /// Check the exact 2×2 matrix representation against every relation.
    RepVerify {
        /// Defaults to every non-degenerate branch of the type.
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
    },
    /// Compare the restricted z-resultant with its tabulated factored form.
    OmegaCheck {
        #[arg(long)]
        all: bool,
    },
    /// List the seventeen catalog types.
    Catalog,
}
