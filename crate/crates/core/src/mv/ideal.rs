use std::collections::BTreeSet;

use serde::Serialize;

use super::FiniteMvAlgebra;
use crate::error::{Error, Result};
use crate::par::Config;
use crate::subset::Subset;

/// Why a subset fails to be an (MV-, ◇-, or CMV-) ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdealFailure {
    Empty,
    OutOfRange { index: usize },
    /// `member ∈ I`, `below ≤ member`, `below ∉ I`.
    NotDownwardClosed { member: usize, below: usize },
    /// `x, y ∈ I`, `x ⊕ y ∉ I`.
    NotOplusClosed { x: usize, y: usize },
    /// `x ∈ I`, `x ◇ y ∉ I`.
    NotRightIdeal { x: usize, y: usize },
    /// `x ∼ y` but `a ◇ x ≁ a ◇ y`.
    NotLeftCompatible { a: usize, x: usize, y: usize },
}

impl std::fmt::Display for IdealFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdealFailure::Empty => write!(f, "empty subset"),
            IdealFailure::OutOfRange { index } => write!(f, "index {index} out of range"),
            IdealFailure::NotDownwardClosed { member, below } => {
                write!(f, "{below} <= {member} but {below} is missing")
            }
            IdealFailure::NotOplusClosed { x, y } => write!(f, "{x} + {y} is missing"),
            IdealFailure::NotRightIdeal { x, y } => write!(f, "{x} <> {y} is missing"),
            IdealFailure::NotLeftCompatible { a, x, y } => {
                write!(f, "{x} ~ {y} but {a}<>{x} and {a}<>{y} are not related")
            }
        }
    }
}

/// Checks non-emptiness, downward closure and `⊕`-closure.
pub fn check_mv_ideal(a: &FiniteMvAlgebra, s: &Subset) -> Result<(), IdealFailure> {
    let n = a.size();
    if s.is_empty() {
        return Err(IdealFailure::Empty);
    }
    if let Some(index) = s.iter().find(|&x| x >= n) {
        return Err(IdealFailure::OutOfRange { index });
    }
    for member in s.iter() {
        if let Some(below) = (0..n).find(|&y| a.leq(y, member) && !s.contains(y)) {
            return Err(IdealFailure::NotDownwardClosed { member, below });
        }
    }
    for x in s.iter() {
        if let Some(y) = s.iter().find(|&y| !s.contains(a.oplus(x, y))) {
            return Err(IdealFailure::NotOplusClosed { x, y });
        }
    }
    Ok(())
}

/// The ideal generated by `gens`: everything below some multiple of their sum.
pub fn ideal_generated(a: &FiniteMvAlgebra, gens: impl IntoIterator<Item = usize>) -> Subset {
    let s = gens.into_iter().fold(a.zero(), |acc, g| a.oplus(acc, g));
    let mut top = s;
    loop {
        let next = a.oplus(top, s);
        if next == top {
            break;
        }
        top = next;
    }
    (0..a.size()).filter(|&x| a.leq(x, top)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvIdeal {
    pub members: Subset,
    pub proper: bool,
    pub prime: bool,
    pub maximal: bool,
}

fn is_prime(a: &FiniteMvAlgebra, s: &Subset) -> bool {
    let n = a.size();
    s.len() < n
        && (0..n).all(|x| (0..n).all(|y| s.contains(a.ominus(x, y)) || s.contains(a.ominus(y, x))))
}

/// Every MV-ideal, each flagged prime/maximal.
///
/// In a finite algebra an ideal is generated by the sum of its members, so
/// the principal ideals `⟨a⟩` already exhaust all ideals.
pub fn enumerate_mv_ideals(a: &FiniteMvAlgebra, cfg: &Config) -> Result<Vec<MvIdeal>> {
    cfg.check_size("ideal enumeration", a.size() as u128)?;
    let n = a.size();
    let sets: BTreeSet<Subset> = (0..n).map(|x| ideal_generated(a, [x])).collect();
    let mut sets: Vec<Subset> = sets.into_iter().collect();
    sets.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    let proper: Vec<&Subset> = sets.iter().filter(|s| s.len() < n).collect();
    let ideals = sets
        .iter()
        .map(|s| {
            let is_proper = s.len() < n;
            let maximal = is_proper
                && !proper
                    .iter()
                    .any(|t| t.len() > s.len() && s.is_subset_of(t));
            MvIdeal {
                members: s.clone(),
                proper: is_proper,
                prime: is_prime(a, s),
                maximal,
            }
        })
        .collect();
    Ok(ideals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    /// Intersection of the maximal ideals.
    pub radical: Subset,
    /// `{0}` plus every `a ≠ 0` with `n·a ≤ a*` for `n ≤ |A|`.
    pub infinitesimals: Subset,
    pub maximal_ideals: usize,
    pub perfect: bool,
    pub simple: bool,
    /// The one-element algebra is reported as neither simple nor perfect.
    pub trivial: bool,
}

pub fn radical_and_perfect(a: &FiniteMvAlgebra, cfg: &Config) -> Result<RadicalReport> {
    let n = a.size();
    let ideals = enumerate_mv_ideals(a, cfg)?;
    let maximal: Vec<&MvIdeal> = ideals.iter().filter(|i| i.maximal).collect();
    let radical = maximal
        .iter()
        .fold(Subset::full(n), |acc, m| acc.intersection(&m.members));
    let infinitesimals: Subset = (0..n)
        .filter(|&x| x == a.zero() || (1..=n).all(|k| a.leq(a.multiple(x, k), a.neg(x))))
        .collect();
    if radical != infinitesimals {
        return Err(Error::Invariant(format!(
            "radical {:?} differs from infinitesimals {:?}",
            radical, infinitesimals
        )));
    }
    let trivial = a.is_trivial();
    let perfect = !trivial
        && (0..n).all(|x| radical.contains(x) || radical.contains(a.neg(x)));
    let simple = !trivial && ideals.iter().filter(|i| i.proper).count() == 1;
    Ok(RadicalReport {
        radical,
        infinitesimals,
        maximal_ideals: maximal.len(),
        perfect,
        simple,
        trivial,
    })
}

/// `class[x]` is the least `y` with `d(x, y) ∈ I`.
pub fn congruence_classes(a: &FiniteMvAlgebra, ideal: &Subset) -> Vec<usize> {
    let n = a.size();
    (0..n)
        .map(|x| (0..n).find(|&y| ideal.contains(a.dist(x, y))).unwrap_or(x))
        .collect()
}

/// Whether the partition `class` is an equivalence compatible with `⊕, *`.
pub fn is_mv_congruence(a: &FiniteMvAlgebra, class: &[usize]) -> bool {
    let n = a.size();
    let rel = |x: usize, y: usize| class[x] == class[y];
    (0..n).all(|x| {
        (0..n).all(|y| {
            !rel(x, y)
                || (rel(a.neg(x), a.neg(y))
                    && (0..n).all(|z| rel(a.oplus(x, z), a.oplus(y, z))))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvQuotient {
    pub algebra: FiniteMvAlgebra,
    /// Projection `A → A/I` as element indices.
    pub projection: Vec<usize>,
}

/// `A/I` with classes ordered by their least representative.
pub fn quotient_mv(a: &FiniteMvAlgebra, ideal: &Subset) -> Result<MvQuotient> {
    check_mv_ideal(a, ideal).map_err(|f| Error::NotIdeal(f.to_string()))?;
    let class = congruence_classes(a, ideal);
    let (reps, projection) = quotient_indexing(&class);
    let m = reps.len();
    let mut oplus = Vec::with_capacity(m * m);
    for &x in &reps {
        for &y in &reps {
            oplus.push(projection[a.oplus(x, y)]);
        }
    }
    let neg = reps.iter().map(|&x| projection[a.neg(x)]).collect();
    let names = reps.iter().map(|&x| format!("[{}]", a.name(x))).collect();
    let algebra = FiniteMvAlgebra::from_parts(names, oplus, neg, projection[a.zero()]);
    if let Some((axiom, w)) = algebra.first_violation(Default::default()) {
        return Err(Error::Invariant(format!("quotient violates {axiom} at {w:?}")));
    }
    if !a.is_homomorphism_to(&algebra, &projection) {
        return Err(Error::Invariant("projection is not a homomorphism".into()));
    }
    Ok(MvQuotient {
        algebra,
        projection,
    })
}

/// Representatives in increasing order and the projection onto their positions.
pub(crate) fn quotient_indexing(class: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let reps: Vec<usize> = class
        .iter()
        .enumerate()
        .filter_map(|(x, &c)| (c == x).then_some(x))
        .collect();
    let projection = class
        .iter()
        .map(|c| reps.binary_search(c).expect("class representative"))
        .collect();
    (reps, projection)
}
