//! The fifteen axiom schemas and a complete matcher. In Ax5–Ax8 the
//! variable `v` is part of the schema, not a metavariable.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaVar {
    Phi,
    Psi,
    Chi,
    Gamma,
}

impl MetaVar {
    pub fn name(self) -> &'static str {
        match self {
            MetaVar::Phi => "phi",
            MetaVar::Psi => "psi",
            MetaVar::Chi => "chi",
            MetaVar::Gamma => "gamma",
        }
    }
}

impl std::str::FromStr for MetaVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" | "φ" => MetaVar::Phi,
            "psi" | "ψ" => MetaVar::Psi,
            "chi" | "χ" => MetaVar::Chi,
            "gamma" | "γ" => MetaVar::Gamma,
            other => return Err(Error::InvalidArgument(format!("unknown metavariable {other:?}"))),
        })
    }
}

pub type Bindings = BTreeMap<MetaVar, Formula>;

/// Axiom number 1 through 15.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct AxiomId(u8);

impl AxiomId {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=15).contains(&n) {
            Ok(AxiomId(n))
        } else {
            Err(Error::InvalidArgument(format!("no axiom Ax{n}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = AxiomId> {
        (1..=15).map(AxiomId)
    }

    /// Metavariables occurring in the schema.
    pub fn metavars(self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        schema(self).collect_metavars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    pub fn schema_text(self) -> String {
        schema(self).to_string()
    }
}

impl TryFrom<u8> for AxiomId {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        AxiomId::new(n)
    }
}

impl From<AxiomId> for u8 {
    fn from(a: AxiomId) -> u8 {
        a.0
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ax{}", self.0)
    }
}

#[derive(Clone, Debug)]
enum Pat {
    Meta(MetaVar),
    V,
    Not(Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
    Subst(Box<Pat>, Box<Pat>),
}

impl Pat {
    fn collect_metavars(&self, out: &mut Vec<MetaVar>) {
        match self {
            Pat::Meta(m) => out.push(*m),
            Pat::V => {}
            Pat::Not(a) => a.collect_metavars(out),
            Pat::Imp(a, b) | Pat::Subst(a, b) => {
                a.collect_metavars(out);
                b.collect_metavars(out);
            }
        }
    }

    fn matches(&self, phi: &Formula, b: &mut Bindings) -> bool {
        match (self, phi) {
            (Pat::Meta(m), _) => match b.get(m) {
                Some(bound) => bound == phi,
                None => {
                    b.insert(*m, phi.clone());
                    true
                }
            },
            (Pat::V, Formula::Var) => true,
            (Pat::Not(p), Formula::Not(a)) => p.matches(a, b),
            (Pat::Imp(p, q), Formula::Imp(x, y)) | (Pat::Subst(p, q), Formula::Subst(x, y)) => {
                p.matches(x, b) && q.matches(y, b)
            }
            _ => false,
        }
    }

    fn build(&self, b: &Bindings) -> Result<Formula> {
        Ok(match self {
            Pat::Meta(m) => b
                .get(m)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("missing binding for {}", m.name())))?,
            Pat::V => Formula::Var,
            Pat::Not(a) => Formula::not(a.build(b)?),
            Pat::Imp(x, y) => Formula::imp(x.build(b)?, y.build(b)?),
            Pat::Subst(x, y) => Formula::subst(x.build(b)?, y.build(b)?),
        })
    }
}

impl fmt::Display for Pat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pat::Meta(m) => f.write_str(m.name()),
            Pat::V => f.write_str("v"),
            Pat::Not(a) => write!(f, "!{a}"),
            Pat::Imp(a, b) => write!(f, "({a} -> {b})"),
            Pat::Subst(a, b) => write!(f, "({a} <| {b})"),
        }
    }
}

fn schema(id: AxiomId) -> Pat {
    use MetaVar::*;
    let m = Pat::Meta;
    let not = |a: Pat| Pat::Not(Box::new(a));
    let imp = |a: Pat, b: Pat| Pat::Imp(Box::new(a), Box::new(b));
    let sub = |a: Pat, b: Pat| Pat::Subst(Box::new(a), Box::new(b));
    let (phi, psi, chi, gamma) = (m(Phi), m(Psi), m(Chi), m(Gamma));
    match id.0 {
        1 => imp(phi.clone(), imp(psi, phi)),
        2 => imp(
            imp(phi.clone(), psi.clone()),
            imp(imp(psi, chi.clone()), imp(phi, chi)),
        ),
        3 => imp(
            imp(imp(phi.clone(), psi.clone()), psi.clone()),
            imp(imp(psi, phi.clone()), phi),
        ),
        4 => imp(imp(not(phi.clone()), not(psi.clone())), imp(psi, phi)),
        5 => imp(sub(phi.clone(), Pat::V), phi),
        6 => imp(sub(Pat::V, phi.clone()), phi),
        7 => imp(phi.clone(), sub(Pat::V, phi)),
        8 => imp(phi.clone(), sub(phi, Pat::V)),
        9 => imp(
            sub(imp(phi.clone(), psi.clone()), gamma.clone()),
            imp(sub(phi, gamma.clone()), sub(psi, gamma)),
        ),
        10 => imp(
            sub(imp(not(phi.clone()), psi.clone()), gamma.clone()),
            imp(not(sub(phi, gamma.clone())), sub(psi, gamma)),
        ),
        11 => imp(
            imp(not(sub(phi.clone(), gamma.clone())), sub(psi.clone(), gamma.clone())),
            sub(imp(not(phi), psi), gamma),
        ),
        12 => imp(
            sub(phi.clone(), sub(psi.clone(), gamma.clone())),
            sub(sub(phi, psi), gamma),
        ),
        13 => imp(
            sub(sub(phi.clone(), psi.clone()), gamma.clone()),
            sub(phi, sub(psi, gamma)),
        ),
        14 => imp(not(sub(phi.clone(), psi.clone())), sub(not(phi), psi)),
        15 => imp(sub(not(phi.clone()), psi.clone()), not(sub(phi, psi))),
        _ => unreachable!("axiom ids are 1..=15"),
    }
}

/// Every schema `phi` instantiates, with the bindings that witness it.
pub fn match_axiom(phi: &Formula) -> Vec<(AxiomId, Bindings)> {
    AxiomId::all()
        .filter_map(|id| {
            let mut b = Bindings::new();
            schema(id).matches(phi, &mut b).then_some((id, b))
        })
        .collect()
}

/// The instance of a schema under `bindings`; every metavariable of the
/// schema must be bound and no other.
pub fn instantiate(id: AxiomId, bindings: &Bindings) -> Result<Formula> {
    let used = id.metavars();
    if let Some(extra) = bindings.keys().find(|m| !used.contains(m)) {
        return Err(Error::InvalidArgument(format!(
            "{id} has no metavariable {}",
            extra.name()
        )));
    }
    schema(id).build(bindings)
}
