use std::fmt;

use serde::Serialize;

/// One of the six defining equations of an MV-algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MvAxiom {
    /// `(x ⊕ y) ⊕ z = x ⊕ (y ⊕ z)`
    Associativity,
    /// `x ⊕ y = y ⊕ x`
    Commutativity,
    /// `x ⊕ 0 = x`
    ZeroNeutral,
    /// `x** = x`
    Involution,
    /// `x ⊕ 1 = 1`
    OneAbsorbing,
    /// `(x* ⊕ y)* ⊕ y = (y* ⊕ x)* ⊕ x`
    Lukasiewicz,
}

impl fmt::Display for MvAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MvAxiom::Associativity => "MV1 (x+y)+z = x+(y+z)",
            MvAxiom::Commutativity => "MV2 x+y = y+x",
            MvAxiom::ZeroNeutral => "MV3 x+0 = x",
            MvAxiom::Involution => "MV4 x** = x",
            MvAxiom::OneAbsorbing => "MV5 x+1 = 1",
            MvAxiom::Lukasiewicz => "MV6 (x*+y)*+y = (y*+x)*+x",
        };
        f.write_str(s)
    }
}

/// A law of the compatible monoid of a CMV-algebra, or one of its
/// consequences for nontrivial algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CmvLaw {
    LeftIdentity,
    RightIdentity,
    Associativity,
    /// `(y ⊕ z) ◇ x = (y ◇ x) ⊕ (z ◇ x)`
    OplusCompatible,
    /// `x* ◇ y = (x ◇ y)*`
    NegCompatible,
    /// `0 ◇ x = 0`
    ZeroCompatible,
    /// `0 < i < 1`
    IdentityStrictlyInside,
    /// `i ≠ i*`
    IdentityNotFixed,
    /// `i* ◇ i* = i`
    NegIdentitySquare,
    /// at least four elements
    MinimumSize,
}

impl fmt::Display for CmvLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CmvLaw::LeftIdentity => "monoid: i<>x = x",
            CmvLaw::RightIdentity => "monoid: x<>i = x",
            CmvLaw::Associativity => "monoid: (x<>y)<>z = x<>(y<>z)",
            CmvLaw::OplusCompatible => "(i) (y+z)<>x = (y<>x)+(z<>x)",
            CmvLaw::NegCompatible => "(ii) x*<>y = (x<>y)*",
            CmvLaw::ZeroCompatible => "(iii) 0<>x = 0",
            CmvLaw::IdentityStrictlyInside => "nontrivial: 0 < i < 1",
            CmvLaw::IdentityNotFixed => "nontrivial: i != i*",
            CmvLaw::NegIdentitySquare => "nontrivial: i*<>i* = i",
            CmvLaw::MinimumSize => "nontrivial: at least four elements",
        };
        f.write_str(s)
    }
}

/// A precondition for building a CMV-algebra from an assignment of
/// endomorphisms `x ↦ Φ(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActionCondition {
    /// `Φ(x)` is not an MV-endomorphism.
    NotEndomorphism,
    /// `Φ(x) = Φ(y)` for `x ≠ y`.
    NotInjective,
    /// the identity map is not in the image of `Φ`.
    MissingIdentity,
    /// the image is not closed under `⊡`.
    NotSubmonoid,
    /// `Φ(Φ(z)(y)) ≠ Φ(y) ⊡ Φ(z)`.
    Composition,
    /// `Φ(x)(i) ≠ x`.
    IdentityEvaluation,
}

impl fmt::Display for ActionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ActionCondition::NotEndomorphism => "every image is an endomorphism",
            ActionCondition::NotInjective => "(i) injective",
            ActionCondition::MissingIdentity => "(ii) image contains the identity",
            ActionCondition::NotSubmonoid => "(ii) image closed under composition",
            ActionCondition::Composition => "(iii) Phi(Phi(z)(y)) = Phi(y) then Phi(z)",
            ActionCondition::IdentityEvaluation => "(iv) Phi(x)(i) = x",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("MV axiom {axiom} violated at {witness:?}")]
    MvAxiom { axiom: MvAxiom, witness: Vec<usize> },

    #[error("CMV law {law} violated at {witness:?}")]
    CmvLaw { law: CmvLaw, witness: Vec<usize> },

    #[error("{what} needs {needed} table cells, limit is {limit}")]
    SizeBound {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("action condition {condition} fails at {witness:?}")]
    Action {
        condition: ActionCondition,
        witness: Vec<usize>,
    },

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("piecewise-linear function: {0}")]
    Pwl(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("module law violated: {0}")]
    ModuleLaw(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// A property that holds by construction failed; indicates a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
