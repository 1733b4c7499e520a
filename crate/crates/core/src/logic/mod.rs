//! The one-variable substitution logic: formulas over `v, ¬, →, ◄`, their
//! valuation in any CMV-algebra, the axiom schemas, and a proof checker.
//!
//! Concrete syntax, loosest binding first:
//!
//! | level | operators          | associativity |
//! |-------|--------------------|---------------|
//! | 1     | `->` `→`           | right         |
//! | 2     | `+` `⊕` `.` `⊙`    | left          |
//! | 3     | `<|` `◄`           | left          |
//! | 4     | `!` `¬` (prefix)   |               |
//!
//! `α + β` abbreviates `!α -> β` and `α . β` abbreviates `!(α -> !β)`;
//! both are expanded while parsing.

mod axioms;
mod parse;
mod proof;
mod semantics;

use std::fmt;

pub use axioms::{instantiate, match_axiom, AxiomId, Bindings, MetaVar};
pub use parse::{parse_formula, parse_formula_with_constants};
pub use proof::{
    bundled_proofs, check_proof, corrupt_proof, parse_proof, parse_proof_json, BindingMode,
    Corruption, Justification, Proof, Step, Verdict,
};
pub use semantics::{
    evaluate, is_tautology, lindenbaum_check, random_axiom_instance, rule_soundness,
    semantic_equiv, LawCount, LindenbaumReport, RuleSoundness,
};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Var,
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// `α ◄ β`: substitute `β` for `v` in `α`.
    Subst(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn subst(a: Formula, b: Formula) -> Formula {
        Formula::Subst(Box::new(a), Box::new(b))
    }

    /// `α ⊕ β := ¬α → β`
    pub fn oplus(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::not(a), b)
    }

    /// `α ⊙ β := ¬(α → ¬β)`
    pub fn odot(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imp(a, Formula::not(b)))
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Imp(a, b) | Formula::Subst(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Subst(..) => 3,
            Formula::Not(_) => 4,
            Formula::Var => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var => f.write_str("v"),
            Formula::Not(a) => {
                f.write_str("!")?;
                a.write_at(f, 4)
            }
            Formula::Imp(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)
            }
            Formula::Subst(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" <| ")?;
                b.write_at(f, 4)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Text with the fewest parentheses that parses back to `phi`.
pub fn format_formula(phi: &Formula) -> String {
    phi.to_string()
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn minimal_parentheses() {
        let v = || Formula::Var;
        let cases = [
            (Formula::imp(v(), v()), "v -> v"),
            (Formula::imp(Formula::imp(v(), v()), v()), "(v -> v) -> v"),
            (Formula::imp(v(), Formula::imp(v(), v())), "v -> v -> v"),
            (Formula::subst(Formula::not(v()), v()), "!v <| v"),
            (Formula::not(Formula::subst(v(), v())), "!(v <| v)"),
            (Formula::subst(v(), Formula::subst(v(), v())), "v <| (v <| v)"),
            (Formula::subst(Formula::subst(v(), v()), v()), "v <| v <| v"),
            (Formula::subst(Formula::imp(v(), v()), v()), "(v -> v) <| v"),
            (Formula::not(Formula::not(v())), "!!v"),
        ];
        for (phi, text) in cases {
            assert_eq!(format_formula(&phi), text);
            assert_eq!(p(text), phi);
        }
    }
}
