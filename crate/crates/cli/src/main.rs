//! `cmv`: command-line front end for cmvkit.
//!
//! Exit status: 0 on success or a true verdict, 1 on a false verdict,
//! 2 on usage or input errors, 3 when an internal invariant fails.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cmvkit::sample::DEFAULT_SEED;
use cmvkit::{Config, Exec};

use input::CliError;

#[derive(Parser, Debug)]
#[command(name = "cmv", version, about = "Composition MV-algebras: models, ideals, modules and logic")]
pub struct Cli {
    /// Output format; `tsv` is only produced by `mcn plot`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Largest operation table an operation may build.
    #[arg(long, global = true)]
    max_cells: Option<u128>,
    /// Run exhaustive scans on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Check every axiom of an algebra file or builtin.
    Validate { source: String },
    /// The n-element Łukasiewicz chain.
    Chain { n: usize },
    /// All self-maps of an MV-algebra, or those preserving a subalgebra.
    Funcalg {
        base: String,
        /// Indices of a subalgebra the maps must preserve.
        #[arg(long, value_delimiter = ',')]
        preserve: Option<Vec<usize>>,
    },
    /// The CMV-algebra generated by the constant maps and the identity.
    Tilde { base: String },
    /// The Cayley representation a ↦ (x ↦ a◇x).
    Cayley { algebra: String },
    /// The endomorphism monoid of an MV-algebra.
    Endos { base: String },
    /// CMV-algebras of a given size up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Also run the unrestricted table search on every MV-algebra.
        #[arg(long)]
        raw: bool,
    },
    /// Every MV-ideal, classified as ◇-ideal and CMV-ideal.
    Ideals { algebra: String },
    /// Classify a subset as MV-, ◇- or CMV-ideal.
    ClassifySubset {
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// The quotient by a CMV-ideal.
    Quotient {
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ideal: Vec<usize>,
    },
    /// Whether {0} and the whole algebra are the only CMV-ideals.
    Simple { algebra: String },
    /// S_B, J and S_B/J inside the algebra of self-maps of `base`.
    Stabilizer {
        base: String,
        /// `constants`, `boolean` (c0 and c1), `all`, or element indices.
        #[arg(long)]
        b: String,
    },
    /// Zero-set lemmas and ideal images over an algebra of self-maps.
    Zeros { algebra: String },
    /// McNaughton functions.
    Mcn {
        #[command(subcommand)]
        cmd: McnCmd,
    },
    /// Modules over CMV-algebras.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// The substitution logic.
    Logic {
        #[command(subcommand)]
        cmd: LogicCmd,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealArg {
    Boundary,
    Germ,
    GermAtZero,
    GermAtOne,
    Midpoint,
}

/// Functions are JSON files, inline JSON, or terms such as `v + v`.
#[derive(Subcommand, Debug)]
pub enum McnCmd {
    Eval {
        f: String,
        #[arg(long)]
        at: String,
    },
    Op {
        /// oplus, odot, join, meet, ominus or implies
        op: String,
        f: String,
        g: String,
    },
    /// f ∘ g
    Compose { f: String, g: String },
    /// Membership in M1, in its rational extension, or in an ideal.
    Member {
        f: String,
        #[arg(long, value_enum)]
        ideal: Option<IdealArg>,
    },
    Plot {
        f: String,
        #[arg(long, default_value_t = 64)]
        resolution: u32,
    },
    /// Sampled CMV-ideal conditions for a decidable ideal.
    Closure {
        #[arg(long, value_enum)]
        ideal: IdealArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Canonical {
    Reduct,
    Evaluation,
    Constants,
    Power,
    Restriction,
    M1,
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    /// Check the module laws of a module file or a canonical construction.
    Check {
        file: Option<String>,
        #[arg(long, value_enum, requires = "algebra")]
        canonical: Option<Canonical>,
        #[arg(long)]
        algebra: Option<String>,
        /// Exponent for the power module.
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Whether the four-element CMV-algebra acts on an MV-algebra.
    A4 { base: String },
}

#[derive(Subcommand, Debug)]
pub enum LogicCmd {
    /// The valuation of a formula; `--algebra mcnaughton` for M1.
    Eval {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        formula: String,
    },
    Taut {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        formula: String,
    },
    /// Axiom schemas the formula instantiates.
    Match {
        #[arg(long)]
        formula: String,
    },
    /// Check a proof script (or JSON proof).
    Prove {
        file: String,
        /// Find missing axiom bindings with the matcher.
        #[arg(long)]
        infer: bool,
    },
    Equiv {
        #[arg(long)]
        algebra: String,
        lhs: String,
        rhs: String,
    },
    /// Sampled axiom and congruence laws behind the Lindenbaum algebra.
    Lindenbaum {
        #[arg(long)]
        algebra: String,
    },
}

impl Cli {
    fn config(&self) -> Config {
        let mut cfg = Config::default();
        if let Some(c) = self.max_cells {
            cfg.max_cells = c;
        }
        if self.sequential {
            cfg.exec = Exec::Sequential;
        }
        cfg
    }
}

/// What a command produced.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub tsv: Option<String>,
    pub verdict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli, &cli.config());
    let mut out = std::io::stdout().lock();
    match result {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json values serialize") + "\n",
                Format::Tsv => match report.tsv {
                    Some(t) => t,
                    None => {
                        eprintln!("cmv: --format tsv is only available for `mcn plot`");
                        return ExitCode::from(2);
                    }
                },
            };
            // a closed pipe is not worth a panic
            let _ = out.write_all(body.as_bytes());
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("cmv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl From<IdealArg> for cmvkit::pwl::PwlIdeal {
    fn from(a: IdealArg) -> Self {
        use cmvkit::pwl::PwlIdeal;
        match a {
            IdealArg::Boundary => PwlIdeal::Boundary,
            IdealArg::Germ => PwlIdeal::Germ,
            IdealArg::GermAtZero => PwlIdeal::GermAtZero,
            IdealArg::GermAtOne => PwlIdeal::GermAtOne,
            IdealArg::Midpoint => PwlIdeal::Midpoint,
        }
    }
}

pub(crate) type Outcome = Result<Report, CliError>;
