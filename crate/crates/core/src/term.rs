//! One-variable MV-terms over `⊕, *, 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{parse_formula_with_constants, Formula};
use crate::ops::MvOps;
use crate::pwl::{McNaughton, PwlFunction};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var,
    Zero,
    Neg(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
}

impl Term {
    pub fn one() -> Term {
        Term::Zero.neg()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        Term::Neg(Box::new(self))
    }

    pub fn oplus(self, other: Term) -> Term {
        Term::Oplus(Box::new(self), Box::new(other))
    }

    pub fn odot(self, other: Term) -> Term {
        self.neg().oplus(other.neg()).neg()
    }

    pub fn implies(self, other: Term) -> Term {
        self.neg().oplus(other)
    }

    pub fn ominus(self, other: Term) -> Term {
        self.odot(other.neg())
    }

    pub fn join(self, other: Term) -> Term {
        let x = self.clone();
        self.oplus(x.neg().odot(other))
    }

    pub fn meet(self, other: Term) -> Term {
        let x = self.clone();
        self.odot(x.neg().oplus(other))
    }

    /// `t ⊕ … ⊕ t` with `n` summands, `0` for `n = 0`.
    pub fn multiple(self, n: usize) -> Term {
        (1..n).fold(if n == 0 { Term::Zero } else { self.clone() }, |acc, _| {
            acc.oplus(self.clone())
        })
    }

    /// Value of the term with the variable set to `x`.
    pub fn eval<O: MvOps>(&self, ops: &O, x: &O::Elem) -> O::Elem {
        match self {
            Term::Var => x.clone(),
            Term::Zero => ops.zero(),
            Term::Neg(t) => ops.neg(&t.eval(ops, x)),
            Term::Oplus(a, b) => ops.oplus(&a.eval(ops, x), &b.eval(ops, x)),
        }
    }

    /// The term with every occurrence of the variable replaced by `s`.
    pub fn substitute(&self, s: &Term) -> Term {
        match self {
            Term::Var => s.clone(),
            Term::Zero => Term::Zero,
            Term::Neg(t) => t.substitute(s).neg(),
            Term::Oplus(a, b) => a.substitute(s).oplus(b.substitute(s)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var | Term::Zero => 1,
            Term::Neg(t) => 1 + t.size(),
            Term::Oplus(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// The McNaughton function the term denotes.
    pub fn to_pwl(&self) -> PwlFunction {
        self.eval(&McNaughton, &PwlFunction::identity())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var => f.write_str("v"),
            Term::Zero => f.write_str("0"),
            Term::Neg(t) => write!(f, "!{t}"),
            Term::Oplus(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

impl Term {
    /// Reads a `◄`-free formula as a term, with `α -> β` as `!α + β`.
    pub fn from_formula(phi: &Formula) -> Result<Term> {
        Ok(match phi {
            Formula::Var => Term::Var,
            Formula::Not(a) => Term::from_formula(a)?.neg(),
            Formula::Imp(a, b) => Term::from_formula(a)?.implies(Term::from_formula(b)?),
            Formula::Subst(..) => {
                return Err(Error::InvalidArgument("terms cannot contain <|".into()))
            }
        })
    }
}

/// Parses a term in the formula syntax, plus the constants `0` and `1`.
pub fn parse_term(text: &str) -> Result<Term> {
    Term::from_formula(&parse_formula_with_constants(text)?)
}

/// `term_to_pwl`: the standard-algebra semantics of a term.
pub fn term_to_pwl(t: &Term) -> PwlFunction {
    t.to_pwl()
}
