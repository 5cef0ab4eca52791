//! Command-line front end for `grassmann-core`: argument parsing, text and JSON reports,
//! and the exit-code contract.
//!
//! Exit codes: `0` success, `1` internal disagreement between equivalent computations,
//! `2` parse error, `3` dimension cap or resource limit, `4` failed precondition.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod text;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "grassmann.v1";

#[derive(Parser, Debug)]
#[command(name = "grassmann", version, about = "Exact exterior algebra, blade decompositions and fermionic operators")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Coefficient field for multivector input.
    #[arg(long, global = true, value_enum, default_value_t = Field::Rational)]
    pub field: Field,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Rational,
    Gaussian,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inner and outer spaces with the grade profile.
    Spaces(MvArgs),
    /// Blade factorization M = B ^ N.
    Factor(FactorArgs),
    /// Blade carving M = N _| B.
    Carve(CarveArgs),
    /// Simplicity verdict under one criterion.
    Simple(SimpleArgs),
    /// Plücker-type relation systems.
    Plucker(PluckerArgs),
    /// Fermionic operators on the exterior algebra.
    Fermion(FermionArgs),
}

#[derive(Args, Debug)]
pub struct MvArgs {
    /// Ambient dimension.
    #[arg(long)]
    pub dim: usize,
    /// Multivector text, e.g. `e134-e145+3/2*e2`.
    #[arg(long, allow_hyphen_values = true)]
    pub mv: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FactorMode {
    MaximalOrthogonal,
    InComplement,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[command(flatten)]
    pub input: MvArgs,
    #[arg(long, value_enum, default_value_t = FactorMode::MaximalOrthogonal)]
    pub mode: FactorMode,
    /// Inner blade B; required for `in-complement`.
    #[arg(long, allow_hyphen_values = true)]
    pub blade: Option<String>,
    /// Complement V of [B] as `;`-separated vectors; defaults to the orthogonal complement.
    #[arg(long, allow_hyphen_values = true)]
    pub complement: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CarveMode {
    MinimalInternal,
    InComplement,
}

#[derive(Args, Debug)]
pub struct CarveArgs {
    #[command(flatten)]
    pub input: MvArgs,
    #[arg(long, value_enum, default_value_t = CarveMode::MinimalInternal)]
    pub mode: CarveMode,
    /// Outer blade B; required for `in-complement`.
    #[arg(long, allow_hyphen_values = true)]
    pub blade: Option<String>,
    /// Complement V of [B]^perp as `;`-separated vectors; defaults to [B].
    #[arg(long, allow_hyphen_values = true)]
    pub complement: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Spaces,
    Cartan1,
    Cartan2,
    PluckerClassical,
    PluckerReduced,
}

#[derive(Args, Debug)]
pub struct SimpleArgs {
    #[command(flatten)]
    pub input: MvArgs,
    #[arg(long, value_enum)]
    pub criterion: Criterion,
}

#[derive(Args, Debug)]
pub struct PluckerArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: usize,
    /// classical, classical-signed, reduced or reduced-expanded.
    #[arg(long)]
    pub form: String,
    /// Drop repeated relations.
    #[arg(long)]
    pub dedupe: bool,
    /// Print the histogram of monomial counts only.
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Args, Debug)]
pub struct FermionArgs {
    /// Number of modes; defaults to the largest index mentioned.
    #[arg(long)]
    pub dim: Option<usize>,
    #[command(subcommand)]
    pub op: FermionOp,
}

#[derive(Subcommand, Debug)]
pub enum FermionOp {
    /// The supercommutator [a+_i, a_j].
    Scom(ScomArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScomForm {
    /// Sum of a+ a terms.
    Expand7,
    /// Sum of a a+ terms.
    Expand8,
    /// Diagonal sum of a a+ terms; needs i = j.
    Diag,
    /// Closed form on one basis state; needs --apply.
    Direct,
}

#[derive(Args, Debug)]
pub struct ScomArgs {
    /// Index list: digits (`2347`), commas (`2,3,4,7`) or `{}`.
    #[arg(long)]
    pub i: String,
    #[arg(long)]
    pub j: String,
    /// Basis state v_k to apply the operator to.
    #[arg(long)]
    pub apply: Option<String>,
    #[arg(long, value_enum, default_value_t = ScomForm::Expand7)]
    pub form: ScomForm,
}

/// Everything a run produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: rendered, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: rendered, code: 2 }
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text
            };
            Outcome { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", e.msg), code: e.code },
    }
}
