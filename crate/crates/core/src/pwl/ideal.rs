//! Decidable ideals of the McNaughton algebra and a randomized check of
//! the CMV-ideal conditions on them.

use serde::Serialize;

use super::{PwlFunction, PwlOp};
use crate::rational::Rational;
use crate::sample::Sampler;
use crate::term::Term;

/// Ideals given by a membership test and the congruence they induce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PwlIdeal {
    /// `f(0) = f(1) = 0`.
    Boundary,
    /// zero on a neighbourhood of 0 and on a neighbourhood of 1.
    Germ,
    /// zero on a neighbourhood of 0.
    GermAtZero,
    /// zero on a neighbourhood of 1.
    GermAtOne,
    /// `f(1/2) = 0`: an MV-ideal that is not closed under right composition.
    Midpoint,
}

impl PwlIdeal {
    pub const ALL: [PwlIdeal; 5] = [
        PwlIdeal::Boundary,
        PwlIdeal::Germ,
        PwlIdeal::GermAtZero,
        PwlIdeal::GermAtOne,
        PwlIdeal::Midpoint,
    ];

    pub fn contains(self, f: &PwlFunction) -> bool {
        let flat = |(v, m): (Rational, Rational)| v.is_zero() && m.is_zero();
        match self {
            PwlIdeal::Boundary => f.points()[0].1.is_zero() && f.last_piece().0.is_zero(),
            PwlIdeal::Germ => flat(f.first_piece()) && flat(f.last_piece()),
            PwlIdeal::GermAtZero => flat(f.first_piece()),
            PwlIdeal::GermAtOne => flat(f.last_piece()),
            PwlIdeal::Midpoint => f.value_at(&Rational::half()).is_zero(),
        }
    }

    /// `f ∼ g` for the congruence of the ideal, decided directly.
    pub fn congruent(self, f: &PwlFunction, g: &PwlFunction) -> bool {
        match self {
            PwlIdeal::Boundary => {
                f.points()[0].1 == g.points()[0].1 && f.last_piece().0 == g.last_piece().0
            }
            PwlIdeal::Germ => {
                f.first_piece() == g.first_piece() && f.last_piece() == g.last_piece()
            }
            PwlIdeal::GermAtZero => f.first_piece() == g.first_piece(),
            PwlIdeal::GermAtOne => f.last_piece() == g.last_piece(),
            PwlIdeal::Midpoint => {
                let h = Rational::half();
                f.value_at(&h) == g.value_at(&h)
            }
        }
    }

    /// A function in the ideal below `f`: `f ∧ β` for a fixed member `β`.
    fn member_below(self, f: &PwlFunction, s: &mut Sampler) -> PwlFunction {
        let v = Term::Var;
        let scale = 1 + s.below(3);
        let beta = match self {
            PwlIdeal::Boundary => v.clone().meet(v.neg()).multiple(scale),
            PwlIdeal::Germ => {
                let low = v.clone().multiple(2).odot(v.clone());
                let high = v.clone().neg().multiple(2).odot(v.neg());
                low.meet(high)
            }
            PwlIdeal::GermAtZero => v.clone().multiple(2).odot(v),
            PwlIdeal::GermAtOne => v.clone().neg().multiple(2).odot(v.neg()),
            PwlIdeal::Midpoint => v.clone().odot(v.clone()).oplus(v.clone().neg().odot(v.neg())).multiple(scale),
        };
        PwlFunction::pointwise(PwlOp::Meet, f, &beta.to_pwl())
    }
}

pub fn boundary_ideal_member(f: &PwlFunction) -> bool {
    PwlIdeal::Boundary.contains(f)
}

pub fn germ_ideal_member(f: &PwlFunction) -> bool {
    PwlIdeal::Germ.contains(f)
}

pub fn congruent_mod(ideal: PwlIdeal, f: &PwlFunction, g: &PwlFunction) -> bool {
    ideal.congruent(f, g)
}

fn distance(f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
    PwlFunction::pointwise(
        PwlOp::Oplus,
        &PwlFunction::pointwise(PwlOp::Ominus, f, g),
        &PwlFunction::pointwise(PwlOp::Ominus, g, f),
    )
}

/// Trials run for one condition and the first counterexample found.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConditionOutcome {
    pub trials: usize,
    pub counterexample: Option<Vec<PwlFunction>>,
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<PwlFunction>) {
        self.trials += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }
}

/// Outcomes of the sampled CMV-ideal conditions. `prime` is informative:
/// a sampled pair `f, g` with neither `f ⊖ g` nor `g ⊖ f` in the ideal.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub ideal: PwlIdeal,
    pub seed: u64,
    pub samples: usize,
    /// The direct congruence test agrees with `d(f, g) ∈ I`.
    pub congruence_matches_distance: ConditionOutcome,
    pub downward_closed: ConditionOutcome,
    pub oplus_closed: ConditionOutcome,
    pub right_ideal: ConditionOutcome,
    pub left_compatible: ConditionOutcome,
    pub prime: ConditionOutcome,
}

impl ClosureReport {
    /// Conditions (i)–(iv) all held on every sample.
    pub fn is_cmv_ideal_on_samples(&self) -> bool {
        self.downward_closed.holds()
            && self.oplus_closed.holds()
            && self.right_ideal.holds()
            && self.left_compatible.holds()
    }
}

/// Checks the four CMV-ideal conditions on `samples` random instances drawn
/// from McNaughton functions.
pub fn closure_properties_check(ideal: PwlIdeal, samples: usize, seed: u64) -> ClosureReport {
    let mut s = Sampler::new(seed);
    let mut r = ClosureReport {
        ideal,
        seed,
        samples,
        congruence_matches_distance: ConditionOutcome::default(),
        downward_closed: ConditionOutcome::default(),
        oplus_closed: ConditionOutcome::default(),
        right_ideal: ConditionOutcome::default(),
        left_compatible: ConditionOutcome::default(),
        prime: ConditionOutcome::default(),
    };
    for _ in 0..samples {
        let f = s.m1_function();
        let g = s.m1_function();
        let h = s.m1_function();
        let m = ideal.member_below(&s.m1_function(), &mut s);
        let m2 = ideal.member_below(&s.m1_function(), &mut s);

        let d = distance(&f, &g);
        r.congruence_matches_distance
            .record(ideal.congruent(&f, &g) == ideal.contains(&d), || vec![f.clone(), g.clone()]);

        let below = PwlFunction::pointwise(PwlOp::Meet, &m, &g);
        let below2 = PwlFunction::pointwise(PwlOp::Odot, &m, &g);
        r.downward_closed.record(
            ideal.contains(&m) && ideal.contains(&below) && ideal.contains(&below2),
            || vec![m.clone(), g.clone()],
        );

        let sum = PwlFunction::pointwise(PwlOp::Oplus, &m, &m2);
        r.oplus_closed
            .record(ideal.contains(&sum), || vec![m.clone(), m2.clone()]);

        let right = PwlFunction::compose(&m, &g);
        r.right_ideal
            .record(ideal.contains(&right), || vec![m.clone(), g.clone()]);

        // (f ⊕ m) ⊖ m2 is congruent to f
        let f2 = PwlFunction::pointwise(
            PwlOp::Ominus,
            &PwlFunction::pointwise(PwlOp::Oplus, &f, &m),
            &m2,
        );
        if ideal.congruent(&f, &f2) {
            let hf = PwlFunction::compose(&h, &f);
            let hf2 = PwlFunction::compose(&h, &f2);
            r.left_compatible
                .record(ideal.congruent(&hf, &hf2), || vec![h.clone(), f.clone(), f2.clone()]);
        } else {
            r.congruence_matches_distance
                .record(false, || vec![f.clone(), f2.clone()]);
        }

        let fg = PwlFunction::pointwise(PwlOp::Ominus, &f, &g);
        let gf = PwlFunction::pointwise(PwlOp::Ominus, &g, &f);
        r.prime
            .record(ideal.contains(&fg) || ideal.contains(&gf), || vec![f.clone(), g.clone()]);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let id = PwlFunction::identity();
        let tent2 = PwlFunction::from_points(vec![
            (r("0"), r("0")),
            (r("1/2"), r("1")),
            (r("1"), r("0")),
        ])
        .unwrap();
        assert!(boundary_ideal_member(&tent2));
        assert!(!germ_ideal_member(&tent2));
        let zero = PwlFunction::zero();
        assert!(boundary_ideal_member(&zero) && germ_ideal_member(&zero));
        assert!(!boundary_ideal_member(&id) && !germ_ideal_member(&id));
        let bump = PwlFunction::from_points(vec![
            (r("0"), r("0")),
            (r("1/3"), r("0")),
            (r("1/2"), r("1/6")),
            (r("2/3"), r("0")),
            (r("1"), r("0")),
        ])
        .unwrap();
        assert!(germ_ideal_member(&bump));
        assert!(congruent_mod(PwlIdeal::Germ, &id, &PwlFunction::pointwise(PwlOp::Oplus, &id, &bump)));
    }

    #[test]
    fn boundary_and_germ_pass() {
        for ideal in [PwlIdeal::Boundary, PwlIdeal::Germ] {
            let rep = closure_properties_check(ideal, 60, 1);
            assert!(rep.congruence_matches_distance.holds(), "{ideal:?}");
            assert!(rep.is_cmv_ideal_on_samples(), "{ideal:?}: {rep:?}");
        }
    }

    #[test]
    fn midpoint_is_not_right_closed() {
        let rep = closure_properties_check(PwlIdeal::Midpoint, 60, 1);
        assert!(rep.downward_closed.holds() && rep.oplus_closed.holds());
        let w = rep.right_ideal.counterexample.expect("witness");
        let composed = PwlFunction::compose(&w[0], &w[1]);
        assert!(PwlIdeal::Midpoint.contains(&w[0]));
        assert!(!PwlIdeal::Midpoint.contains(&composed));
        assert!(rep.left_compatible.holds());
    }
}
