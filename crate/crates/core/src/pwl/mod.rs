//! Continuous piecewise-linear self-maps of `[0,1]` with rational
//! breakpoints and integer slopes.
//!
//! A function is stored as its breakpoints `(xₖ, yₖ)`; consecutive points
//! are joined linearly. Every constructor returns the canonical form, in
//! which no interior point is collinear with its neighbours, so structural
//! equality is equality of functions.

mod ideal;

pub use ideal::{
    boundary_ideal_member, closure_properties_check, congruent_mod, germ_ideal_member,
    ClosureReport, ConditionOutcome, PwlIdeal,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::{CmvOps, MvOps};
use crate::rational::{Rational, StandardMv};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PwlJson", into = "PwlJson")]
pub struct PwlFunction {
    points: Vec<(Rational, Rational)>,
}

#[derive(Serialize, Deserialize)]
struct PwlJson {
    points: Vec<[Rational; 2]>,
}

impl TryFrom<PwlJson> for PwlFunction {
    type Error = Error;

    fn try_from(raw: PwlJson) -> Result<Self> {
        PwlFunction::from_points(raw.points.into_iter().map(|[x, y]| (x, y)).collect())
    }
}

impl From<PwlFunction> for PwlJson {
    fn from(f: PwlFunction) -> Self {
        PwlJson {
            points: f.points.into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl std::fmt::Debug for PwlFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for PwlFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (k, (x, y)) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        f.write_str("]")
    }
}

/// One linear piece `x ↦ slope·x + intercept` on `[start, end]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub start: Rational,
    pub end: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

/// Which algebra a function belongs to. Slopes are always integral; the
/// intercepts decide between the McNaughton algebra and its extension by
/// rational constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipClass {
    pub integer_slopes: bool,
    pub in_m1: bool,
    pub in_tilde_q: bool,
}

/// Binary operations applied pointwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PwlOp {
    Oplus,
    Odot,
    Join,
    Meet,
    Ominus,
    Implies,
}

impl PwlOp {
    pub const ALL: [PwlOp; 6] = [
        PwlOp::Oplus,
        PwlOp::Odot,
        PwlOp::Join,
        PwlOp::Meet,
        PwlOp::Ominus,
        PwlOp::Implies,
    ];

    pub fn apply(self, x: &Rational, y: &Rational) -> Rational {
        let s = StandardMv;
        match self {
            PwlOp::Oplus => s.oplus(x, y),
            PwlOp::Odot => s.odot(x, y),
            PwlOp::Join => x.max(y).clone(),
            PwlOp::Meet => x.min(y).clone(),
            PwlOp::Ominus => s.ominus(x, y),
            PwlOp::Implies => s.implies(x, y),
        }
    }
}

impl std::str::FromStr for PwlOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oplus" | "+" => PwlOp::Oplus,
            "odot" | "." => PwlOp::Odot,
            "join" | "or" => PwlOp::Join,
            "meet" | "and" => PwlOp::Meet,
            "ominus" | "-" => PwlOp::Ominus,
            "implies" | "->" => PwlOp::Implies,
            other => return Err(Error::InvalidArgument(format!("unknown operation {other:?}"))),
        })
    }
}

fn slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PwlFunction {
    /// Validates raw breakpoints and returns the canonical form.
    pub fn from_points(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let (Some(first), Some(last)) = (points.first(), points.last()) else {
            return Err(Error::Pwl("no points".into()));
        };
        if !first.0.is_zero() {
            return Err(Error::Pwl(format!("first breakpoint is at {}, not 0", first.0)));
        }
        if !last.0.is_one() {
            return Err(Error::Pwl(format!("last breakpoint is at {}, not 1", last.0)));
        }
        if let Some((x, y)) = points.iter().find(|(_, y)| !y.in_unit_interval()) {
            return Err(Error::Pwl(format!("value {y} at {x} is outside [0,1]")));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Pwl(format!(
                    "breakpoints {} and {} are not increasing",
                    w[0].0, w[1].0
                )));
            }
            let m = slope(&w[0], &w[1]);
            if !m.is_integer() {
                return Err(Error::Pwl(format!(
                    "slope {m} on [{}, {}] is not an integer",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(Self::canonical(points))
    }

    /// Drops interior points collinear with their neighbours.
    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for p in points {
            if out.len() >= 2 {
                let k = out.len();
                if slope(&out[k - 2], &out[k - 1]) == slope(&out[k - 1], &p) {
                    out.pop();
                }
            }
            out.push(p);
        }
        let f = PwlFunction { points: out };
        debug_assert!(f.pieces().iter().all(|p| p.slope.is_integer()), "{f}");
        f
    }

    /// Samples `value` at sorted, deduplicated abscissae that include every
    /// point where the result may bend.
    fn from_breakpoints(mut xs: Vec<Rational>, value: impl Fn(&Rational) -> Rational) -> Self {
        xs.sort();
        xs.dedup();
        Self::canonical(xs.into_iter().map(|x| {
            let y = value(&x);
            (x, y)
        }).collect())
    }

    pub fn identity() -> Self {
        PwlFunction {
            points: vec![(Rational::zero(), Rational::zero()), (Rational::one(), Rational::one())],
        }
    }

    /// The constant map `c_q`; errors unless `q ∈ [0,1]`.
    pub fn constant(q: Rational) -> Result<Self> {
        if !q.in_unit_interval() {
            return Err(Error::Pwl(format!("constant {q} is outside [0,1]")));
        }
        Ok(PwlFunction {
            points: vec![(Rational::zero(), q.clone()), (Rational::one(), q)],
        })
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero()).expect("0 is in range")
    }

    pub fn one() -> Self {
        Self::constant(Rational::one()).expect("1 is in range")
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.points.iter().map(|(x, _)| x)
    }

    pub fn pieces(&self) -> Vec<Piece> {
        self.points
            .windows(2)
            .map(|w| {
                let m = slope(&w[0], &w[1]);
                Piece {
                    intercept: &w[0].1 - &(&m * &w[0].0),
                    start: w[0].0.clone(),
                    end: w[1].0.clone(),
                    slope: m,
                }
            })
            .collect()
    }

    /// `f(q)`; errors unless `q ∈ [0,1]`.
    pub fn eval(&self, q: &Rational) -> Result<Rational> {
        if !q.in_unit_interval() {
            return Err(Error::Pwl(format!("argument {q} is outside [0,1]")));
        }
        Ok(self.value_at(q))
    }

    fn value_at(&self, q: &Rational) -> Rational {
        let k = self.points.partition_point(|(x, _)| x < q);
        if k < self.points.len() && &self.points[k].0 == q {
            return self.points[k].1.clone();
        }
        let (a, b) = (&self.points[k - 1], &self.points[k]);
        &a.1 + &(slope(a, b) * (q - &a.0))
    }

    /// Value at the left end of `[0,1]` and slope of the first piece.
    pub fn first_piece(&self) -> (Rational, Rational) {
        (self.points[0].1.clone(), slope(&self.points[0], &self.points[1]))
    }

    /// Value at `1` and slope of the last piece.
    pub fn last_piece(&self) -> (Rational, Rational) {
        let k = self.points.len();
        (
            self.points[k - 1].1.clone(),
            slope(&self.points[k - 2], &self.points[k - 1]),
        )
    }

    pub fn neg(&self) -> Self {
        PwlFunction {
            points: self
                .points
                .iter()
                .map(|(x, y)| (x.clone(), Rational::one() - y))
                .collect(),
        }
    }

    /// `op(f, g)` computed exactly: breakpoints of both arguments plus
    /// every point inside a common piece where `f + g` crosses 1 or `f`
    /// crosses `g`, which are the only places the truncations can bend.
    pub fn pointwise(op: PwlOp, f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
        let mut xs: Vec<Rational> = f.breakpoints().chain(g.breakpoints()).cloned().collect();
        xs.sort();
        xs.dedup();
        let mut extra = Vec::new();
        for w in xs.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (fa, fb) = (f.value_at(a), f.value_at(b));
            let (ga, gb) = (g.value_at(a), g.value_at(b));
            let one = Rational::one();
            for (ha, hb) in [
                (&fa + &ga - &one, &fb + &gb - &one),
                (&fa - &ga, &fb - &gb),
            ] {
                if (ha.is_negative() && hb.is_positive()) || (ha.is_positive() && hb.is_negative()) {
                    extra.push(a + &((b - a) * &ha / (&ha - &hb)));
                }
            }
        }
        xs.extend(extra);
        Self::from_breakpoints(xs, |x| op.apply(&f.value_at(x), &g.value_at(x)))
    }

    /// `f ∘ g`: the breakpoints of `g` together with every preimage, under
    /// a non-constant piece of `g`, of a breakpoint of `f`.
    pub fn compose(f: &PwlFunction, g: &PwlFunction) -> PwlFunction {
        let mut xs: Vec<Rational> = g.breakpoints().cloned().collect();
        for w in g.points.windows(2) {
            let ((a, ga), (b, gb)) = (&w[0], &w[1]);
            if ga == gb {
                continue;
            }
            let (lo, hi) = if ga < gb { (ga, gb) } else { (gb, ga) };
            for p in f.breakpoints().filter(|p| *p > lo && *p < hi) {
                xs.push(a + &((b - a) * (p - ga) / (gb - ga)));
            }
        }
        Self::from_breakpoints(xs, |x| f.value_at(&g.value_at(x)))
    }

    pub fn membership(&self) -> MembershipClass {
        let pieces = self.pieces();
        MembershipClass {
            integer_slopes: pieces.iter().all(|p| p.slope.is_integer()),
            in_m1: pieces.iter().all(|p| p.intercept.is_integer()),
            in_tilde_q: true,
        }
    }

    /// `resolution + 1` equally spaced samples `(k/resolution, f(k/resolution))`.
    pub fn samples(&self, resolution: u32) -> Vec<(Rational, Rational)> {
        let r = resolution.max(1) as i64;
        (0..=r)
            .map(|k| {
                let x = Rational::new(k, r);
                let y = self.value_at(&x);
                (x, y)
            })
            .collect()
    }
}

/// The CMV-algebra of piecewise-linear maps with pointwise MV operations,
/// composition as `◇` and the identity map as `i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct McNaughton;

impl MvOps for McNaughton {
    type Elem = PwlFunction;

    fn zero(&self) -> PwlFunction {
        PwlFunction::zero()
    }

    fn neg(&self, x: &PwlFunction) -> PwlFunction {
        x.neg()
    }

    fn oplus(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Oplus, x, y)
    }

    fn one(&self) -> PwlFunction {
        PwlFunction::one()
    }

    fn odot(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Odot, x, y)
    }

    fn implies(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Implies, x, y)
    }

    fn ominus(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Ominus, x, y)
    }

    fn join(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Join, x, y)
    }

    fn meet(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::pointwise(PwlOp::Meet, x, y)
    }
}

impl CmvOps for McNaughton {
    fn diamond(&self, x: &PwlFunction, y: &PwlFunction) -> PwlFunction {
        PwlFunction::compose(x, y)
    }

    fn identity(&self) -> PwlFunction {
        PwlFunction::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pwl(pts: &[(&str, &str)]) -> PwlFunction {
        PwlFunction::from_points(pts.iter().map(|&(x, y)| (r(x), r(y))).collect()).unwrap()
    }

    #[test]
    fn canonicalize() {
        assert_eq!(pwl(&[("0", "0"), ("1/2", "1/2"), ("1", "1")]), PwlFunction::identity());
        let err = PwlFunction::from_points(vec![(r("0"), r("0")), (r("1/3"), r("2/3")), (r("1"), r("1"))]);
        assert!(matches!(err, Err(Error::Pwl(_))));
        let double = pwl(&[("0", "0"), ("1/2", "1"), ("1", "1")]);
        assert_eq!(double.points().len(), 3);
        assert!(PwlFunction::from_points(vec![(r("0"), r("0")), (r("1/2"), r("1"))]).is_err());
        assert!(PwlFunction::from_points(vec![(r("0"), r("0")), (r("1"), r("2"))]).is_err());
        assert!(PwlFunction::from_points(vec![(r("0"), r("0")), (r("0"), r("0")), (r("1"), r("1"))]).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let id = PwlFunction::identity();
        let double = PwlFunction::pointwise(PwlOp::Oplus, &id, &id);
        assert_eq!(double, pwl(&[("0", "0"), ("1/2", "1"), ("1", "1")]));
        let tent = PwlFunction::pointwise(PwlOp::Meet, &id, &id.neg());
        assert_eq!(tent, pwl(&[("0", "0"), ("1/2", "1/2"), ("1", "0")]));
        assert_eq!(PwlFunction::pointwise(PwlOp::Oplus, &tent, &PwlFunction::zero()), tent);
    }

    #[test]
    fn composition_examples() {
        let id = PwlFunction::identity();
        let double = PwlFunction::pointwise(PwlOp::Oplus, &id, &id);
        let quad = PwlFunction::compose(&double, &double);
        assert_eq!(quad, pwl(&[("0", "0"), ("1/4", "1"), ("1", "1")]));
        assert_eq!(PwlFunction::compose(&double, &id), double);
        assert_eq!(PwlFunction::compose(&id, &double), double);
        assert_eq!(PwlFunction::compose(&id.neg(), &id.neg()), id);
        assert_eq!(quad.eval(&r("1/5")).unwrap(), r("4/5"));
        assert_eq!(double.eval(&r("2/3")).unwrap(), r("1"));
        assert_eq!(id.eval(&r("3/7")).unwrap(), r("3/7"));
        assert!(id.eval(&r("3/2")).is_err());
    }

    #[test]
    fn composition_bends_inside_pieces() {
        // the doubled tent composed with itself is a zigzag with four pieces
        let id = PwlFunction::identity();
        let tent = PwlFunction::pointwise(PwlOp::Meet, &id, &id.neg());
        let t2 = PwlFunction::pointwise(PwlOp::Oplus, &tent, &tent);
        let c = PwlFunction::compose(&t2, &t2);
        for k in 0..=24 {
            let q = Rational::new(k, 24);
            assert_eq!(c.eval(&q).unwrap(), t2.eval(&t2.eval(&q).unwrap()).unwrap());
        }
        assert_eq!(c.points().len(), 5);
    }

    #[test]
    fn membership_flags() {
        let id = PwlFunction::identity();
        assert!(id.membership().in_m1);
        let half = PwlFunction::constant(Rational::half()).unwrap();
        let m = half.membership();
        assert!(!m.in_m1 && m.in_tilde_q);
        let third = PwlFunction::constant(Rational::new(1, 3)).unwrap();
        let f = PwlFunction::pointwise(PwlOp::Oplus, &id, &third);
        let m = f.membership();
        assert!(!m.in_m1 && m.in_tilde_q && m.integer_slopes);
    }

    #[test]
    fn json_round_trip() {
        let f = pwl(&[("0", "0"), ("1/2", "1"), ("1", "1")]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"points":[["0","0"],["1/2","1"],["1","1"]]}"#);
        assert_eq!(serde_json::from_str::<PwlFunction>(&s).unwrap(), f);
        assert!(serde_json::from_str::<PwlFunction>(r#"{"points":[["0","0"],["1/3","2/3"],["1","1"]]}"#).is_err());
    }

    #[test]
    fn samples_for_plotting() {
        let s = PwlFunction::identity().neg().samples(4);
        assert_eq!(s.len(), 5);
        assert_eq!(s[1], (r("1/4"), r("3/4")));
    }
}
