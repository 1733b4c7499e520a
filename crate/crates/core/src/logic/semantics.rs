//! Valuations into CMV-algebras. The valuation is fixed by `val(v) = i`,
//! so a formula is a tautology of `A` exactly when its one valuation is 1.

use serde::Serialize;

use super::{format_formula, instantiate, AxiomId, Bindings, Formula};
use crate::ops::CmvOps;
use crate::sample::Sampler;

pub fn evaluate<A: CmvOps>(a: &A, phi: &Formula) -> A::Elem {
    match phi {
        Formula::Var => a.identity(),
        Formula::Not(x) => a.neg(&evaluate(a, x)),
        Formula::Imp(x, y) => a.implies(&evaluate(a, x), &evaluate(a, y)),
        Formula::Subst(x, y) => a.diamond(&evaluate(a, x), &evaluate(a, y)),
    }
}

pub fn is_tautology<A: CmvOps>(a: &A, phi: &Formula) -> bool {
    evaluate(a, phi) == a.one()
}

pub fn semantic_equiv<A: CmvOps>(a: &A, alpha: &Formula, beta: &Formula) -> bool {
    evaluate(a, alpha) == evaluate(a, beta)
}

/// How often a sampled law was checked and failed, with the first failure.
#[derive(Clone, Debug, Serialize)]
pub struct LawCount {
    pub law: String,
    pub checked: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl LawCount {
    fn new(law: impl Into<String>) -> Self {
        LawCount {
            law: law.into(),
            checked: 0,
            failed: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LindenbaumReport {
    pub seed: u64,
    pub samples: usize,
    pub laws: Vec<LawCount>,
}

impl LindenbaumReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }
}

fn random_bindings(id: AxiomId, s: &mut Sampler, depth: usize) -> Bindings {
    id.metavars()
        .into_iter()
        .map(|m| (m, s.formula(depth)))
        .collect()
}

/// A random instance of an axiom schema.
pub fn random_axiom_instance(id: AxiomId, s: &mut Sampler, depth: usize) -> Formula {
    instantiate(id, &random_bindings(id, s, depth)).expect("all metavariables bound")
}

/// Samples the semantic content of the Lindenbaum construction: each axiom
/// evaluates to 1, and `◄` is associative, unital and compatible with `¬`
/// and `→` at the level of valuations.
pub fn lindenbaum_check<A: CmvOps>(a: &A, samples: usize, seed: u64) -> LindenbaumReport {
    let mut s = Sampler::new(seed);
    let mut laws: Vec<LawCount> = AxiomId::all()
        .map(|id| LawCount::new(format!("{id} evaluates to 1")))
        .collect();
    let mut assoc = LawCount::new("a <| (b <| c) = (a <| b) <| c");
    let mut unit = LawCount::new("a <| v = a = v <| a");
    let mut neg = LawCount::new("!(a <| c) = !a <| c");
    let mut imp = LawCount::new("(a -> b) <| c = (a <| c) -> (b <| c)");
    for _ in 0..samples {
        for (k, id) in AxiomId::all().enumerate() {
            let phi = random_axiom_instance(id, &mut s, 2);
            laws[k].record(is_tautology(a, &phi), || format_formula(&phi));
        }
        let (x, y, z) = (s.formula(2), s.formula(2), s.formula(2));
        let (vx, vy, vz) = (evaluate(a, &x), evaluate(a, &y), evaluate(a, &z));
        let show = || format!("a = {x}, b = {y}, c = {z}");
        assoc.record(
            a.diamond(&vx, &a.diamond(&vy, &vz)) == a.diamond(&a.diamond(&vx, &vy), &vz),
            show,
        );
        let i = a.identity();
        unit.record(a.diamond(&vx, &i) == vx && a.diamond(&i, &vx) == vx, show);
        neg.record(
            evaluate(a, &Formula::not(Formula::subst(x.clone(), z.clone())))
                == evaluate(a, &Formula::subst(Formula::not(x.clone()), z.clone())),
            show,
        );
        imp.record(
            evaluate(a, &Formula::subst(Formula::imp(x.clone(), y.clone()), z.clone()))
                == a.implies(&a.diamond(&vx, &vz), &a.diamond(&vy, &vz)),
            show,
        );
    }
    laws.extend([assoc, unit, neg, imp]);
    LindenbaumReport {
        seed,
        samples,
        laws,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleSoundness {
    pub seed: u64,
    pub modus_ponens: LawCount,
    pub substitution: LawCount,
    pub arrow: LawCount,
}

impl RuleSoundness {
    pub fn passed(&self, samples: usize) -> bool {
        [&self.modus_ponens, &self.substitution, &self.arrow]
            .iter()
            .all(|l| l.failed == 0 && l.checked >= samples)
    }
}

/// Applies each inference rule to `samples` premises that evaluate to 1 and
/// checks that the conclusion does too. Premises are axiom instances and
/// formulas derived from them.
pub fn rule_soundness<A: CmvOps>(a: &A, samples: usize, seed: u64) -> RuleSoundness {
    let mut s = Sampler::new(seed);
    let mut mp = LawCount::new("modus ponens");
    let mut sub = LawCount::new("substitution rule");
    let mut arr = LawCount::new("arrow rule");
    let premise = |s: &mut Sampler| -> Formula {
        let id = AxiomId::new(1 + s.below(15) as u8).expect("in range");
        let phi = random_axiom_instance(id, s, 2);
        match s.below(3) {
            0 => Formula::subst(phi, s.formula(2)),
            _ => phi,
        }
    };
    let mut attempts = 0;
    while mp.checked < samples && attempts < samples * 50 {
        attempts += 1;
        let alpha = premise(&mut s);
        // β is either a theorem-shaped formula or arbitrary; only pairs
        // whose premises both hold count
        let beta = if s.coin() { premise(&mut s) } else { s.formula(3) };
        let imp = Formula::imp(alpha.clone(), beta.clone());
        if is_tautology(a, &alpha) && is_tautology(a, &imp) {
            mp.record(is_tautology(a, &beta), || format_formula(&imp));
        }
    }
    for _ in 0..samples {
        let alpha = premise(&mut s);
        let beta = s.formula(3);
        if !is_tautology(a, &alpha) {
            continue;
        }
        let c1 = Formula::subst(alpha.clone(), beta.clone());
        sub.record(is_tautology(a, &c1), || format_formula(&c1));
        let c2 = Formula::imp(alpha.clone(), c1);
        arr.record(is_tautology(a, &c2), || format_formula(&c2));
    }
    RuleSoundness {
        seed,
        modus_ponens: mp,
        substitution: sub,
        arrow: arr,
    }
}
