//! Resolving algebra sources, subsets, functions and formulas from the
//! command line.
//!
//! An algebra source is a path to an algebra JSON file or one of the
//! builtins `chain:N` (the N-element chain), `power:N:K`, `a4`, `func:N`,
//! `restricted:N` and `tilde:N`, the last three built over `chain:N`.

use std::fmt;
use std::path::Path;

use cmvkit::cmv::{function_cmv, restricted_function_cmv, tilde_closure, FiniteCmvAlgebra, FunctionCmv};
use cmvkit::io::{parse_algebra_json, Algebra};
use cmvkit::logic::{parse_formula, Formula};
use cmvkit::mv::{lukasiewicz_chain, power_mv, FiniteMvAlgebra};
use cmvkit::pwl::PwlFunction;
use cmvkit::term::parse_term;
use cmvkit::{Config, Error, Subset};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Invariant(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// A loaded algebra; function algebras keep their maps.
pub enum Loaded {
    Mv(FiniteMvAlgebra),
    Cmv(FiniteCmvAlgebra),
    Functions(FunctionCmv),
}

impl Loaded {
    pub fn mv(&self) -> &FiniteMvAlgebra {
        match self {
            Loaded::Mv(m) => m,
            Loaded::Cmv(a) => a.mv(),
            Loaded::Functions(f) => f.algebra().mv(),
        }
    }

    pub fn cmv(&self) -> Option<&FiniteCmvAlgebra> {
        match self {
            Loaded::Mv(_) => None,
            Loaded::Cmv(a) => Some(a),
            Loaded::Functions(f) => Some(f.algebra()),
        }
    }
}

fn chain(n: usize) -> CliResult<FiniteMvAlgebra> {
    if n < 2 {
        return usage(format!("a chain needs at least 2 elements, got {n}"));
    }
    Ok(lukasiewicz_chain(n - 1)?)
}

fn number(text: &str, what: &str) -> CliResult<usize> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected a number, got {text:?}")))
}

fn boolean_ends(m: &FiniteMvAlgebra) -> Subset {
    Subset::new([m.zero(), m.one()])
}

/// A builtin name or a file path; file contents are validated.
pub fn load(source: &str, cfg: &Config) -> CliResult<Loaded> {
    let parts: Vec<&str> = source.split(':').collect();
    let arg = |k: usize| number(parts[k], source);
    Ok(match (parts[0], parts.len()) {
        ("chain", 2) => Loaded::Mv(chain(arg(1)?)?),
        ("power", 3) => Loaded::Mv(power_mv(&chain(arg(1)?)?, arg(2)?, cfg)?),
        ("a4", 1) => Loaded::Functions(function_cmv(&chain(2)?, cfg)?),
        ("func", 2) => Loaded::Functions(function_cmv(&chain(arg(1)?)?, cfg)?),
        ("restricted", 2) => {
            let m = chain(arg(1)?)?;
            Loaded::Functions(restricted_function_cmv(&m, &boolean_ends(&m), cfg)?)
        }
        ("tilde", 2) => Loaded::Functions(tilde_closure(&chain(arg(1)?)?, cfg)?),
        _ => {
            let file = parse_algebra_json(&read_file(source)?).map_err(|e| in_file(source, e))?;
            match file.validate(cfg.exec).map_err(|e| in_file(source, e))? {
                Algebra::Mv(m) => Loaded::Mv(m),
                Algebra::Cmv(a) => Loaded::Cmv(a),
            }
        }
    })
}

fn in_file(path: &str, e: Error) -> CliError {
    match e {
        Error::Invariant(_) => CliError::Lib(e),
        other => CliError::Usage(format!("{path}: {other}")),
    }
}

pub fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

pub fn load_cmv(source: &str, cfg: &Config) -> CliResult<Loaded> {
    let l = load(source, cfg)?;
    if l.cmv().is_none() {
        return usage(format!("{source} is an MV-algebra; a CMV-algebra is needed"));
    }
    Ok(l)
}

pub fn load_functions(source: &str, cfg: &Config) -> CliResult<FunctionCmv> {
    match load(source, cfg)? {
        Loaded::Functions(f) => Ok(f),
        Loaded::Mv(m) => Ok(function_cmv(&m, cfg)?),
        Loaded::Cmv(_) => usage(format!(
            "{source}: an algebra of self-maps is needed (a4, func:N, restricted:N, tilde:N or an MV source)"
        )),
    }
}

pub fn subset(items: &[usize], size: usize) -> CliResult<Subset> {
    if let Some(bad) = items.iter().find(|&&x| x >= size) {
        return usage(format!("element index {bad} out of range for size {size}"));
    }
    Ok(Subset::new(items.iter().copied()))
}

/// A function given as a JSON file, inline JSON, or a term such as `v + v`.
pub fn pwl(text: &str) -> CliResult<PwlFunction> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| CliError::Usage(format!("function JSON: {e}")));
    }
    if t.ends_with(".json") {
        let body = read_file(t)?;
        return serde_json::from_str(&body).map_err(|e| CliError::Usage(format!("{t}: {e}")));
    }
    parse_term(t)
        .map(|term| term.to_pwl())
        .map_err(|e| CliError::Usage(format!("term {t:?}: {e}")))
}

pub fn formula(text: &str) -> CliResult<Formula> {
    parse_formula(text).map_err(|e| CliError::Usage(format!("formula {text:?}: {e}")))
}
