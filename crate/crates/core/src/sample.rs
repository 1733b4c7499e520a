//! Seeded random generators for the property suites: terms, McNaughton
//! functions, rationals, formulas, and semantically equal term pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::Formula;
use crate::pwl::{PwlFunction, PwlOp};
use crate::rational::Rational;
use crate::term::Term;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// A rational in `[0,1]` with denominator at most `max_denom`.
    pub fn unit_rational(&mut self, max_denom: i64) -> Rational {
        let q = self.rng.random_range(1..=max_denom.max(1));
        let p = self.rng.random_range(0..=q);
        Rational::new(p, q)
    }

    /// A random term of depth at most `depth`; derived connectives appear
    /// expanded into `⊕, *, 0`.
    pub fn term(&mut self, depth: usize) -> Term {
        if depth == 0 || self.below(5) == 0 {
            return match self.below(6) {
                0 => Term::Zero,
                1 => Term::one(),
                _ => Term::Var,
            };
        }
        let d = depth - 1;
        match self.below(7) {
            0 => self.term(d).neg(),
            1 => self.term(d).oplus(self.term(d)),
            2 => self.term(d).odot(self.term(d)),
            3 => self.term(d).join(self.term(d)),
            4 => self.term(d).meet(self.term(d)),
            5 => self.term(d).ominus(self.term(d)),
            _ => self.term(d).multiple(2),
        }
    }

    /// A random McNaughton function: a term's semantics, sometimes composed
    /// with another.
    pub fn m1_function(&mut self) -> PwlFunction {
        let f = self.term(4).to_pwl();
        if self.below(3) == 0 {
            let g = self.term(3).to_pwl();
            PwlFunction::compose(&f, &g)
        } else {
            f
        }
    }

    /// A random function generated from the identity and rational constants.
    pub fn tilde_q_function(&mut self) -> PwlFunction {
        self.tilde_q(4)
    }

    fn tilde_q(&mut self, depth: usize) -> PwlFunction {
        if depth == 0 || self.below(4) == 0 {
            return if self.coin() {
                PwlFunction::identity()
            } else {
                PwlFunction::constant(self.unit_rational(6)).expect("in range")
            };
        }
        let a = self.tilde_q(depth - 1);
        match self.below(8) {
            0 => a.neg(),
            1 => PwlFunction::compose(&a, &self.tilde_q(depth - 1)),
            k => {
                let op = PwlOp::ALL[(k - 2) % PwlOp::ALL.len()];
                PwlFunction::pointwise(op, &a, &self.tilde_q(depth - 1))
            }
        }
    }

    /// A random formula over `v, ¬, →, ◄` of depth at most `depth`.
    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.below(4) == 0 {
            return Formula::Var;
        }
        let d = depth - 1;
        match self.below(3) {
            0 => Formula::not(self.formula(d)),
            1 => Formula::imp(self.formula(d), self.formula(d)),
            _ => Formula::subst(self.formula(d), self.formula(d)),
        }
    }

    /// A term and a syntactically different rewrite of it with the same
    /// semantics in every MV-algebra.
    pub fn equal_term_pair(&mut self) -> (Term, Term) {
        let t = self.term(3);
        let mut u = t.clone();
        for _ in 0..3 {
            u = self.rewrite(u);
        }
        if u == t {
            u = u.neg().neg();
        }
        (t, u)
    }

    fn rewrite(&mut self, t: Term) -> Term {
        // descend to a random subterm half of the time
        if self.coin() {
            match t {
                Term::Neg(a) => return self.rewrite(*a).neg(),
                Term::Oplus(a, b) => {
                    return if self.coin() {
                        self.rewrite(*a).oplus(*b)
                    } else {
                        a.oplus(self.rewrite(*b))
                    };
                }
                _ => {}
            }
        }
        match (self.below(4), t) {
            (0, Term::Oplus(a, b)) => b.oplus(*a),
            (1, Term::Oplus(a, b)) => match *a {
                Term::Oplus(x, y) => x.oplus(y.oplus(*b)),
                other => other.oplus(*b).oplus(Term::Zero),
            },
            (2, Term::Neg(a)) => match *a {
                Term::Neg(x) => *x,
                other => other.neg().neg().neg(),
            },
            (3, t) => t.oplus(Term::Zero),
            (_, t) => t.neg().neg(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::StandardMv;

    #[test]
    fn deterministic() {
        let a: Vec<Term> = {
            let mut s = Sampler::new(7);
            (0..10).map(|_| s.term(4)).collect()
        };
        let b: Vec<Term> = {
            let mut s = Sampler::new(7);
            (0..10).map(|_| s.term(4)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn rewrites_preserve_semantics() {
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let (t, u) = s.equal_term_pair();
            assert_ne!(t, u);
            assert_eq!(t.to_pwl(), u.to_pwl());
            let q = s.unit_rational(9);
            assert_eq!(t.eval(&StandardMv, &q), u.eval(&StandardMv, &q));
        }
    }

    #[test]
    fn generated_functions_are_well_classified() {
        let mut s = Sampler::new(3);
        for _ in 0..30 {
            assert!(s.m1_function().membership().in_m1);
            assert!(s.tilde_q_function().membership().integer_slopes);
        }
    }
}
