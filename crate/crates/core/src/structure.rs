//! Ideals, congruences and quotients of finite CMV-algebras, and the
//! zero-set machinery for algebras of self-maps.
//!
//! A CMV-ideal is an MV-ideal `I` that is a right ideal of `⟨A, ◇, i⟩`
//! (a `◇`-ideal) and whose congruence `x ∼ y ⇔ d(x, y) ∈ I` is respected
//! by left `◇`. The last condition is checked literally over all related
//! pairs.

use serde::Serialize;

use crate::cmv::{FiniteCmvAlgebra, FunctionCmv};
use crate::error::{Error, Result};
use crate::mv::{check_mv_ideal, congruence_classes, enumerate_mv_ideals, quotient_indexing, IdealFailure};
use crate::par::{Config, Exec};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmvIdealReport {
    pub subset: Subset,
    pub is_mv_ideal: bool,
    pub is_diamond_ideal: bool,
    pub is_cmv_ideal: bool,
    /// The first failed condition; `None` exactly when `is_cmv_ideal`.
    pub witness: Option<IdealFailure>,
}

fn right_ideal_failure(a: &FiniteCmvAlgebra, s: &Subset, exec: Exec) -> Option<IdealFailure> {
    let members = s.as_slice();
    let n = a.size();
    exec.find_first(members.len(), |k| {
        let x = members[k];
        (0..n)
            .find(|&y| !s.contains(a.diamond(x, y)))
            .map(|y| IdealFailure::NotRightIdeal { x, y })
    })
}

/// `x ∼ y ⇒ a ◇ x ∼ a ◇ y`, scanning every `a` and every related pair.
fn left_compatibility_failure(a: &FiniteCmvAlgebra, s: &Subset, exec: Exec) -> Option<IdealFailure> {
    let n = a.size();
    let mv = a.mv();
    let mask = s.mask(n);
    let related = |x: usize, y: usize| mask[mv.dist(x, y)];
    exec.find_first(n, |x| {
        for y in 0..n {
            if !related(x, y) {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| !related(a.diamond(c, x), a.diamond(c, y))) {
                return Some(IdealFailure::NotLeftCompatible { a: c, x, y });
            }
        }
        None
    })
}

/// Checks the four ideal conditions in order and flags how far `s` gets.
pub fn classify_subset(a: &FiniteCmvAlgebra, s: &Subset, exec: Exec) -> CmvIdealReport {
    let report = |mv: bool, dia: bool, witness: Option<IdealFailure>| CmvIdealReport {
        subset: s.clone(),
        is_mv_ideal: mv,
        is_diamond_ideal: dia,
        is_cmv_ideal: witness.is_none(),
        witness,
    };
    if let Err(f) = check_mv_ideal(a.mv(), s) {
        return report(false, false, Some(f));
    }
    if let Some(f) = right_ideal_failure(a, s, exec) {
        return report(true, false, Some(f));
    }
    report(true, true, left_compatibility_failure(a, s, exec))
}

fn require_cmv_ideal(a: &FiniteCmvAlgebra, s: &Subset, exec: Exec) -> Result<()> {
    match classify_subset(a, s, exec).witness {
        None => Ok(()),
        Some(f) => Err(Error::NotIdeal(f.to_string())),
    }
}

/// A partition of the carrier; `class[x]` is the least element related to `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub class: Vec<usize>,
}

impl Congruence {
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    pub fn classes(&self) -> Vec<Subset> {
        let (reps, proj) = quotient_indexing(&self.class);
        let mut out = vec![Vec::new(); reps.len()];
        for (x, &p) in proj.iter().enumerate() {
            out[p].push(x);
        }
        out.into_iter().map(Subset::new).collect()
    }

    pub fn class_count(&self) -> usize {
        self.class.iter().enumerate().filter(|&(x, &c)| c == x).count()
    }

    /// Compatibility with `⊕`, `*`, and with `◇` on both sides.
    pub fn is_cmv_congruence(&self, a: &FiniteCmvAlgebra) -> bool {
        let n = a.size();
        if self.class.len() != n || self.class.iter().enumerate().any(|(x, &c)| c > x || self.class[c] != c) {
            return false;
        }
        let mv = a.mv();
        (0..n).all(|x| {
            (0..n).all(|y| {
                !self.related(x, y)
                    || (self.related(mv.neg(x), mv.neg(y))
                        && (0..n).all(|z| {
                            self.related(mv.oplus(x, z), mv.oplus(y, z))
                                && self.related(a.diamond(x, z), a.diamond(y, z))
                                && self.related(a.diamond(z, x), a.diamond(z, y))
                        }))
            })
        })
    }
}

/// `∼_I`. Errors unless `i` is a CMV-ideal.
pub fn congruence_of_ideal(a: &FiniteCmvAlgebra, i: &Subset) -> Result<Congruence> {
    require_cmv_ideal(a, i, Exec::default())?;
    let c = Congruence {
        class: congruence_classes(a.mv(), i),
    };
    if !c.is_cmv_congruence(a) {
        return Err(Error::Invariant("congruence of a CMV-ideal is not compatible".into()));
    }
    Ok(c)
}

/// The class of `0`. Errors unless `c` is a CMV-congruence.
pub fn ideal_of_congruence(a: &FiniteCmvAlgebra, c: &Congruence) -> Result<Subset> {
    if !c.is_cmv_congruence(a) {
        return Err(Error::InvalidArgument("partition is not a CMV-congruence".into()));
    }
    let zero = a.mv().zero();
    Ok((0..a.size()).filter(|&x| c.related(x, zero)).collect())
}

#[derive(Clone, Debug)]
pub struct CmvQuotient {
    pub algebra: FiniteCmvAlgebra,
    pub projection: Vec<usize>,
}

/// `A/I`, classes ordered by least representative.
pub fn quotient_cmv(a: &FiniteCmvAlgebra, i: &Subset) -> Result<CmvQuotient> {
    let c = congruence_of_ideal(a, i)?;
    let mv_q = crate::mv::quotient_mv(a.mv(), i)?;
    let (reps, projection) = quotient_indexing(&c.class);
    if projection != mv_q.projection {
        return Err(Error::Invariant("MV and CMV quotient indexing disagree".into()));
    }
    let mut diamond = Vec::with_capacity(reps.len() * reps.len());
    for &x in &reps {
        for &y in &reps {
            diamond.push(projection[a.diamond(x, y)]);
        }
    }
    let algebra = FiniteCmvAlgebra::from_parts(mv_q.algebra, diamond, projection[a.identity()]);
    if let Some((law, w)) = algebra.first_violation(Exec::default()) {
        return Err(Error::Invariant(format!("quotient violates {law} at {w:?}")));
    }
    if !a.is_homomorphism_to(&algebra, &projection) {
        return Err(Error::Invariant("projection is not a CMV-homomorphism".into()));
    }
    Ok(CmvQuotient { algebra, projection })
}

/// `h⁻¹(J)` for a CMV-homomorphism `h: A → B` and a CMV-ideal `J` of `B`.
pub fn preimage_ideal(
    a: &FiniteCmvAlgebra,
    b: &FiniteCmvAlgebra,
    h: &[usize],
    j: &Subset,
) -> Result<CmvIdealReport> {
    if h.len() != a.size() || h.iter().any(|&y| y >= b.size()) || !a.is_homomorphism_to(b, h) {
        return Err(Error::NotHomomorphism("map does not preserve the CMV operations".into()));
    }
    require_cmv_ideal(b, j, Exec::default())?;
    let pre: Subset = (0..a.size()).filter(|&x| j.contains(h[x])).collect();
    let report = classify_subset(a, &pre, Exec::default());
    if !report.is_cmv_ideal {
        return Err(Error::Invariant(format!(
            "preimage {:?} is not a CMV-ideal: {:?}",
            pre.as_slice(),
            report.witness
        )));
    }
    Ok(report)
}

/// Classification of every MV-ideal of the reduct.
pub fn classify_mv_ideals(a: &FiniteCmvAlgebra, cfg: &Config) -> Result<Vec<CmvIdealReport>> {
    let ideals = enumerate_mv_ideals(a.mv(), cfg)?;
    Ok(cfg
        .exec
        .map_slice(&ideals, |i| classify_subset(a, &i.members, Exec::Sequential)))
}

pub fn enumerate_cmv_ideals(a: &FiniteCmvAlgebra, cfg: &Config) -> Result<Vec<Subset>> {
    Ok(classify_mv_ideals(a, cfg)?
        .into_iter()
        .filter(|r| r.is_cmv_ideal)
        .map(|r| r.subset)
        .collect())
}

pub fn enumerate_diamond_ideals(a: &FiniteCmvAlgebra, cfg: &Config) -> Result<Vec<Subset>> {
    Ok(classify_mv_ideals(a, cfg)?
        .into_iter()
        .filter(|r| r.is_diamond_ideal)
        .map(|r| r.subset)
        .collect())
}

/// Nontrivial with `{0}` and `A` as its only CMV-ideals.
pub fn is_simple_cmv(a: &FiniteCmvAlgebra, cfg: &Config) -> Result<bool> {
    Ok(!a.is_trivial() && enumerate_cmv_ideals(a, cfg)?.len() == 2)
}

/// The least `◇`-ideal containing `gens`.
pub fn diamond_ideal_generated(a: &FiniteCmvAlgebra, gens: &[usize]) -> Subset {
    let n = a.size();
    let mut current = crate::mv::ideal_generated(a.mv(), gens.iter().copied());
    loop {
        let mut grown: Vec<usize> = current.iter().collect();
        for x in current.iter() {
            grown.extend((0..n).map(|y| a.diamond(x, y)));
        }
        let next = crate::mv::ideal_generated(a.mv(), grown);
        if next == current {
            return current;
        }
        current = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    /// `S_B = {a : a ◇ x ∈ B for all x ∈ B}`, as indices of `A`.
    pub stabilizer: Subset,
    /// `J = {a ∈ S_B : a ◇ x = 0 for all x ∈ B}`, as indices of `A`.
    pub annihilator: Subset,
    pub quotient_size: usize,
    #[serde(skip)]
    pub subalgebra: FiniteCmvAlgebra,
    /// `subalgebra` element `k` is `A` element `embed[k]`.
    #[serde(skip)]
    pub embed: Vec<usize>,
    #[serde(skip)]
    pub quotient: CmvQuotient,
}

/// `S_B`, its ideal `J`, and `S_B / J` for an MV-subalgebra `B` of `A`.
pub fn stabilizer_and_annihilator(a: &FiniteCmvAlgebra, b: &Subset, cfg: &Config) -> Result<StabilizerReport> {
    if !a.mv().is_subalgebra(b) {
        return Err(Error::NotSubalgebra(format!("{:?} is not an MV-subalgebra", b.as_slice())));
    }
    let zero = a.mv().zero();
    let stabilizer = Subset::new(
        cfg.exec
            .filter(a.size(), |x| b.iter().all(|y| b.contains(a.diamond(x, y)))),
    );
    let annihilator: Subset = stabilizer
        .iter()
        .filter(|&x| b.iter().all(|y| a.diamond(x, y) == zero))
        .collect();
    let (subalgebra, embed) = a
        .subalgebra(&stabilizer)
        .map_err(|e| Error::Invariant(format!("stabilizer is not a subalgebra: {e}")))?;
    let local: Subset = annihilator
        .iter()
        .map(|x| embed.binary_search(&x).expect("annihilator inside stabilizer"))
        .collect();
    let quotient = quotient_cmv(&subalgebra, &local)
        .map_err(|e| Error::Invariant(format!("annihilator is not a CMV-ideal: {e}")))?;
    Ok(StabilizerReport {
        stabilizer,
        annihilator,
        quotient_size: quotient.algebra.size(),
        subalgebra,
        embed,
        quotient,
    })
}

/// `zero(f)`: points of the base where element `f` of `b` vanishes.
pub fn zero_set(b: &FunctionCmv, f: usize) -> Subset {
    let z = b.base().zero();
    b.function(f)
        .iter()
        .enumerate()
        .filter_map(|(t, &v)| (v == z).then_some(t))
        .collect()
}

pub fn support(b: &FunctionCmv, f: usize) -> Subset {
    let z = b.base().zero();
    b.function(f)
        .iter()
        .enumerate()
        .filter_map(|(t, &v)| (v != z).then_some(t))
        .collect()
}

/// `Z(S) = {f ∈ B : f(s) = 0 for all s ∈ S}`.
pub fn vanishing_ideal(b: &FunctionCmv, s: &Subset) -> Subset {
    let z = b.base().zero();
    (0..b.functions().len())
        .filter(|&f| s.iter().all(|t| b.function(f)[t] == z))
        .collect()
}

/// `Σ(I)`: the common zeros of the elements of `i`.
pub fn common_zeros(b: &FunctionCmv, i: &Subset) -> Subset {
    i.iter()
        .fold(Subset::full(b.base().size()), |acc, f| acc.intersection(&zero_set(b, f)))
}

/// Whether every `f ∈ B` maps `s` into itself.
pub fn is_b_stable(b: &FunctionCmv, s: &Subset) -> bool {
    b.functions()
        .iter()
        .all(|f| s.iter().all(|t| s.contains(f[t])))
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroLemmaReport {
    pub stable_subsets: usize,
    /// Nonempty stable `S` whose `Z(S)` is not a proper CMV-ideal.
    pub vanishing_failures: Vec<Subset>,
    pub proper_diamond_ideals: usize,
    pub with_common_zeros: usize,
    /// Proper `◇`-ideals with nonempty, unstable `Σ(J)`.
    pub zero_set_failures: Vec<Subset>,
}

impl ZeroLemmaReport {
    pub fn holds(&self) -> bool {
        self.vanishing_failures.is_empty() && self.zero_set_failures.is_empty()
    }
}

/// Checks both zero-set lemmas over every subset of the base and every
/// `◇`-ideal of `b`.
pub fn verify_zero_lemmas(b: &FunctionCmv, cfg: &Config) -> Result<ZeroLemmaReport> {
    let m = b.base().size();
    if m > 20 {
        return Err(Error::SizeBound {
            what: "subsets of the base",
            needed: 1u128 << m,
            limit: 1 << 20,
        });
    }
    let a = b.algebra();
    let masks: Vec<u32> = (1u32..(1 << m)).collect();
    let results = cfg.exec.map_slice(&masks, |&mask| {
        let s: Subset = (0..m).filter(|t| mask >> t & 1 == 1).collect();
        if !is_b_stable(b, &s) {
            return None;
        }
        let z = vanishing_ideal(b, &s);
        let ok = z.len() < a.size() && classify_subset(a, &z, Exec::Sequential).is_cmv_ideal;
        Some((s, ok))
    });
    let stable: Vec<(Subset, bool)> = results.into_iter().flatten().collect();
    let vanishing_failures = stable.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.clone()).collect();

    let proper: Vec<Subset> = enumerate_diamond_ideals(a, cfg)?
        .into_iter()
        .filter(|j| j.len() < a.size())
        .collect();
    let mut with_common_zeros = 0;
    let mut zero_set_failures = Vec::new();
    for j in &proper {
        let sigma = common_zeros(b, j);
        if sigma.is_empty() {
            continue;
        }
        with_common_zeros += 1;
        if !is_b_stable(b, &sigma) {
            zero_set_failures.push(j.clone());
        }
    }
    Ok(ZeroLemmaReport {
        stable_subsets: stable.len(),
        vanishing_failures,
        proper_diamond_ideals: proper.len(),
        with_common_zeros,
        zero_set_failures,
    })
}

/// `I(a) = {f(a) : f ∈ I}` for a `◇`-ideal `I`.
pub fn ideal_image(b: &FunctionCmv, i: &Subset, point: usize) -> Result<Subset> {
    let report = classify_subset(b.algebra(), i, Exec::default());
    if !report.is_diamond_ideal {
        return Err(Error::NotIdeal(format!(
            "not a diamond ideal: {}",
            report.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    if point >= b.base().size() {
        return Err(Error::InvalidArgument(format!("no point {point} in the base")));
    }
    Ok(i.iter().map(|f| b.function(f)[point]).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealImageReport {
    /// `images[a] = I(a)`.
    pub images: Vec<Subset>,
    pub independent: bool,
    pub equals_union_of_ranges: bool,
    pub is_mv_ideal: bool,
}

impl IdealImageReport {
    pub fn holds(&self) -> bool {
        self.independent && self.equals_union_of_ranges && self.is_mv_ideal
    }
}

/// Computes `I(a)` at every point and compares them.
pub fn ideal_image_report(b: &FunctionCmv, i: &Subset) -> Result<IdealImageReport> {
    let m = b.base().size();
    let images = (0..m).map(|p| ideal_image(b, i, p)).collect::<Result<Vec<_>>>()?;
    let ranges: Subset = i.iter().flat_map(|f| b.function(f).to_vec()).collect();
    Ok(IdealImageReport {
        independent: images.iter().all(|s| *s == images[0]),
        equals_union_of_ranges: images.iter().all(|s| *s == ranges),
        is_mv_ideal: images.iter().all(|s| check_mv_ideal(b.base(), s).is_ok()),
        images,
    })
}
