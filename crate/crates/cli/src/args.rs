use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ndga", version, about = "Exact computations with N-differential graded algebras")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized batteries.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Truncation `<grade,word-length>` for nilpotency certificates.
    #[arg(long, global = true, value_parser = parse_bounds, default_value = "8,4")]
    pub bounds: (i32, usize),

    #[command(subcommand)]
    pub command: Command,
}

fn parse_bounds(s: &str) -> Result<(i32, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected <grade,word>")?;
    let grade = a.trim().parse().map_err(|e| format!("grade: {e}"))?;
    let word = b.trim().parse().map_err(|e| format!("word length: {e}"))?;
    Ok((grade, word))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maurer-Cartan coefficients of (d + e)^N for a 3-dga.
    Mc(McArgs),
    /// The t-linear part of (d + te)^N.
    Infinitesimal(InfinitesimalArgs),
    /// Weighted paths on the Maurer-Cartan graph.
    Paths(PathsArgs),
    /// Weighted path sums on a finite digraph or the Maurer-Cartan graph.
    Kernel(KernelArgs),
    /// Depth-N differential forms, difference forms, simplicial sets.
    #[command(subcommand)]
    Forms(FormsCommand),
    /// N-complexes of finite-dimensional vector spaces.
    #[command(subcommand)]
    Ncomplex(NcomplexCommand),
    /// 3-Lie algebras and algebroids.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Polynomial algebras, derivations and vector fields.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Rerun every reproduced result and report per-check verdicts.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[arg(long = "N")]
    pub n: u32,
    /// Report the single coefficient c(s, N), e.g. `--coeff 1,1`.
    #[arg(long)]
    pub coeff: Option<String>,
    /// List the contributing paths.
    #[arg(long)]
    pub show_paths: bool,
    /// Keep multi-indices with entries >= 3.
    #[arg(long)]
    pub complete: bool,
    /// Also check the identity word by word.
    #[arg(long)]
    pub check: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TrailingArg {
    K,
    Mirrored,
}

#[derive(Args, Debug)]
pub struct InfinitesimalArgs {
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long, value_enum, default_value = "k")]
    pub trailing: TrailingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightFlip {
    Prepend,
    Loop,
    Increment,
}

#[derive(Args, Debug)]
pub struct PathsArgs {
    #[arg(long = "N")]
    pub n: u32,
    /// Only this target multi-index; all of E_N otherwise.
    #[arg(long)]
    pub target: Option<String>,
    /// Flip the sign of a family of edge weights.
    #[arg(long, value_enum)]
    pub flip: Vec<WeightFlip>,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long, default_value = "enumeration")]
    pub backend: String,
    #[arg(long = "N")]
    pub n: u32,
    /// Finite digraph `{"vertices": n, "edges": [[s, t, "w"], ...]}`.
    #[arg(long, conflicts_with = "target")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub from: usize,
    #[arg(long, default_value_t = 0)]
    pub to: usize,
    /// Target multi-index on the Maurer-Cartan graph (source ∅).
    #[arg(long)]
    pub target: Option<String>,
    /// Bound on |s| + l(s) certifying that larger vertices are irrelevant.
    #[arg(long)]
    pub truncation: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum FormsCommand {
    /// Certify the nilpotency order of Ω_N(ℝⁿ) or Ω_N(n).
    Omega {
        #[arg(long = "N")]
        n_depth: u32,
        #[arg(long = "n")]
        dim: u32,
        #[arg(long)]
        simplex: bool,
    },
    /// Apply δ to a difference form on ℤⁿ (or the n-simplex lattice).
    Delta {
        #[arg(long = "N")]
        n_depth: u32,
        #[arg(long = "n")]
        dim: u32,
        /// File holding the form in text syntax.
        #[arg(long, conflicts_with = "form")]
        input: Option<PathBuf>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long)]
        simplex: bool,
    },
    /// Truncated forms of one degree on a simplicial set.
    Sset {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "N", default_value_t = 3)]
        n_depth: u32,
        #[arg(long, default_value_t = 0)]
        degree: i32,
        #[arg(long, default_value_t = 2)]
        poly_bound: u32,
        /// Difference forms instead of differential forms.
        #[arg(long)]
        difference: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum NcomplexCommand {
    /// Check d^N = 0 and properness.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// ₚHⁱ = Ker d^p / Im d^{N-p}.
    Cohomology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        i: i32,
    },
}

#[derive(Subcommand, Debug)]
pub enum LieCommand {
    /// Decide whether a bracket is 3-Lie; exits 1 when it is not.
    Check3 {
        #[arg(long)]
        input: PathBuf,
        /// `operator`, `shuffle`, or `all` (both plus Jacobi).
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Square and cube of a deformed de Rham differential.
    Deform {
        #[arg(long, conflicts_with = "example")]
        input: Option<PathBuf>,
        /// One of the two displayed 4×4 matrices: `closed` or `open`.
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        infinitesimal: bool,
    },
    /// Coordinate identities of a Lie algebroid against the operator.
    Identities {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        order: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCommand {
    /// Normal form of a polynomial.
    Nf {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Product of two polynomials.
    Mul {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Certify D^N = 0 for a derivation
    /// `{"presentation": {..}, "degree": 1, "images": {"x1": "d1x1"}}`.
    Nilpotency {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "N")]
        order: u32,
    },
    /// N-th power of a vector field
    /// `{"presentation": {..}, "field": {"x1": "x2"}}`.
    Power {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "N")]
        n: u32,
        /// `direct`, `closed`, or `all` (both, compared).
        #[arg(long, default_value = "all")]
        method: String,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated check numbers, group names or name fragments.
    #[arg(long)]
    pub filter: Option<String>,
    /// Run against a weight table with one sign family flipped.
    #[arg(long, value_enum, hide = true)]
    pub flip_weight: Vec<WeightFlip>,
    /// List the available checks and exit.
    #[arg(long)]
    pub list: bool,
}
