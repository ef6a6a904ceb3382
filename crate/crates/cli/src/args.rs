use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "chios",
    version,
    about = "Exact computations in Orlik-Solomon type algebras of matroids"
)]
pub struct Cli {
    /// Vector configuration (`.vec`) or circuit list (`.circ`).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub kind: Option<InputKind>,

    /// `os`, `ot`, `cordovil` or `file:<table.json>`.
    #[arg(long, global = true, default_value = "os")]
    pub chi: String,

    /// `exterior`, `commutative` or `file:<beta.json>`; defaults to exterior
    /// for `os` and commutative otherwise.
    #[arg(long, global = true)]
    pub beta: Option<String>,

    /// `natural` or `pi:<e1,e2,...>` listing the elements smallest first.
    #[arg(long, global = true, default_value = "natural")]
    pub order: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// `lex` or `file:<flats.json>`: bases of flats for the determinant map.
    #[arg(long, global = true, default_value = "lex")]
    pub flat_basis: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Vectors,
    Circuits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// No-broken-circuit sets for the chosen order.
    Nbc {
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Degreewise nbc, inactive unidependent and dependent counts.
    Dims,
    /// Reduced (default) or universal Gröbner basis.
    Groebner {
        #[arg(long, conflicts_with = "universal")]
        reduced: bool,
        #[arg(long)]
        universal: bool,
    },
    /// Leading monomials of the universal basis and the minimal generators
    /// of the ideal they span.
    LtIdeal,
    /// Standard monomials of one degree.
    CanonicalBasis {
        #[arg(long)]
        degree: usize,
    },
    /// Expand `e_J` in the nbc basis or a diagonal basis from a file.
    Expand {
        /// `nbc` or `file:<candidate.json>`.
        #[arg(long, default_value = "nbc")]
        basis: String,
        #[arg(long)]
        target: String,
    },
    /// Iterated residue of `e_J` along an ordered independent set.
    Residue {
        #[arg(long)]
        word: String,
        /// `id`, `oneline:<p1,...>` or `cycle:<(a,b,...)...>`, acting on the
        /// positions of `--word`.
        #[arg(long, default_value = "id")]
        sigma: String,
        #[arg(long)]
        target: String,
    },
    /// Check a diagonal-basis candidate and its dual pairing.
    DiagonalCheck {
        #[arg(long)]
        file: PathBuf,
    },
    /// Deletion-contraction exact sequence at one element.
    ExactSeq {
        #[arg(long)]
        element: usize,
    },
    /// Run the invariant suite (seed from `CHIOS_SEED`).
    Verify,
}
