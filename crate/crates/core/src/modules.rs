//! Modules over CMV-algebras: an MV-algebra `M` with an external law
//! `A × M → M` satisfying
//!
//! - (i) `(a ⊕ b)x = ax ⊕ bx`
//! - (ii) `a* x = (ax)*`
//! - (iii) `0x = 0`
//! - (iv) `ix = x`
//! - (v) `(a ◇ b)x = a(bx)`
//!
//! Finite actions are stored as tables and checked exhaustively. The
//! McNaughton algebra acts on any finite MV-algebra through term witnesses
//! and is checked on samples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cmv::{FiniteCmvAlgebra, FunctionCmv};
use crate::error::{Error, Result};
use crate::mv::{power_mv, FiniteMvAlgebra};
use crate::ops::{CmvOps, MvOps};
use crate::par::{Config, Exec};
use crate::pwl::{McNaughton, PwlFunction};
use crate::sample::Sampler;
use crate::subset::Subset;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleLaw {
    OplusDistributes,
    NegCommutes,
    ZeroActs,
    IdentityActs,
    Associative,
}

impl ModuleLaw {
    pub const ALL: [ModuleLaw; 5] = [
        ModuleLaw::OplusDistributes,
        ModuleLaw::NegCommutes,
        ModuleLaw::ZeroActs,
        ModuleLaw::IdentityActs,
        ModuleLaw::Associative,
    ];
}

impl fmt::Display for ModuleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleLaw::OplusDistributes => "(i) (a + b)x = ax + bx",
            ModuleLaw::NegCommutes => "(ii) a* x = (ax)*",
            ModuleLaw::ZeroActs => "(iii) 0x = 0",
            ModuleLaw::IdentityActs => "(iv) ix = x",
            ModuleLaw::Associative => "(v) (a <> b)x = a(bx)",
        })
    }
}

/// A failed law with the scalars and carrier element involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleViolation {
    pub law: ModuleLaw,
    /// Display forms of `a`, `b` (when the law has two scalars) and `x`.
    pub witness: Vec<String>,
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.law, self.witness.join(", "))
    }
}

/// First law broken by the triple `(a, b, x)`, checked in order (i)–(v).
fn triple_violation<S, C, F>(
    scalars: &S,
    carrier: &C,
    act: &F,
    a: &S::Elem,
    b: &S::Elem,
    x: &C::Elem,
) -> Option<ModuleLaw>
where
    S: CmvOps,
    C: MvOps,
    F: Fn(&S::Elem, &C::Elem) -> C::Elem,
{
    let ax = act(a, x);
    let bx = act(b, x);
    if act(&scalars.oplus(a, b), x) != carrier.oplus(&ax, &bx) {
        return Some(ModuleLaw::OplusDistributes);
    }
    if act(&scalars.neg(a), x) != carrier.neg(&ax) {
        return Some(ModuleLaw::NegCommutes);
    }
    if act(&scalars.zero(), x) != carrier.zero() {
        return Some(ModuleLaw::ZeroActs);
    }
    if act(&scalars.identity(), x) != *x {
        return Some(ModuleLaw::IdentityActs);
    }
    if act(&scalars.diamond(a, b), x) != act(a, &bx) {
        return Some(ModuleLaw::Associative);
    }
    None
}

/// A finite CMV-algebra acting on a finite MV-algebra by a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    scalars: FiniteCmvAlgebra,
    carrier: FiniteMvAlgebra,
    table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub scalars: usize,
    pub carrier: usize,
    pub triples_checked: u64,
    pub violation: Option<ModuleViolation>,
}

impl ModuleReport {
    pub fn valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::ModuleLaw(v.to_string())),
        }
    }
}

impl ModuleAction {
    /// `action[a][x] = ax`; only the shape is checked here.
    pub fn new(scalars: FiniteCmvAlgebra, carrier: FiniteMvAlgebra, action: Vec<Vec<usize>>) -> Result<Self> {
        let (s, m) = (scalars.size(), carrier.size());
        if action.len() != s || action.iter().any(|r| r.len() != m) {
            return Err(Error::Malformed(format!("action must be a {s}x{m} table")));
        }
        if let Some((a, x)) = (0..s)
            .flat_map(|a| (0..m).map(move |x| (a, x)))
            .find(|&(a, x)| action[a][x] >= m)
        {
            return Err(Error::Malformed(format!("action[{a}][{x}] out of range")));
        }
        Ok(ModuleAction {
            scalars,
            carrier,
            table: action.concat(),
        })
    }

    fn from_fn(scalars: FiniteCmvAlgebra, carrier: FiniteMvAlgebra, f: impl Fn(usize, usize) -> usize) -> Self {
        let m = carrier.size();
        let table = (0..scalars.size())
            .flat_map(|a| (0..m).map(move |x| (a, x)))
            .map(|(a, x)| f(a, x))
            .collect();
        ModuleAction {
            scalars,
            carrier,
            table,
        }
    }

    pub fn scalars(&self) -> &FiniteCmvAlgebra {
        &self.scalars
    }

    pub fn carrier(&self) -> &FiniteMvAlgebra {
        &self.carrier
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.table[a * self.carrier.size() + x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.carrier.size().max(1)).map(|r| r.to_vec()).collect()
    }

    /// Whether `x ∈ I ⇒ ax ∈ I` for every scalar.
    pub fn is_stable(&self, ideal: &Subset) -> bool {
        ideal
            .iter()
            .all(|x| (0..self.scalars.size()).all(|a| ideal.contains(self.act(a, x))))
    }
}

/// Checks all five laws over every `(a, b, x)`.
pub fn validate_module(m: &ModuleAction, exec: Exec) -> ModuleReport {
    let (s, n) = (m.scalars.size(), m.carrier.size());
    let act = |a: &usize, x: &usize| m.act(*a, *x);
    let violation = exec.find_first(s, |a| {
        for b in 0..s {
            for x in 0..n {
                if let Some(law) = triple_violation(&m.scalars, &m.carrier, &act, &a, &b, &x) {
                    let mut witness = vec![m.scalars.name(a).to_string()];
                    if matches!(law, ModuleLaw::OplusDistributes | ModuleLaw::Associative) {
                        witness.push(m.scalars.name(b).to_string());
                    }
                    witness.push(m.carrier.name(x).to_string());
                    return Some(ModuleViolation { law, witness });
                }
            }
        }
        None
    });
    ModuleReport {
        scalars: s,
        carrier: n,
        triples_checked: (s * s * n) as u64,
        violation,
    }
}

/// `A` acting on its own MV-reduct by `ax = a ◇ x`.
pub fn reduct_module(a: &FiniteCmvAlgebra) -> ModuleAction {
    ModuleAction::from_fn(a.clone(), a.mv().clone(), |s, x| a.diamond(s, x))
}

/// An algebra of self-maps acting on their domain by evaluation.
pub fn evaluation_module(f: &FunctionCmv) -> ModuleAction {
    ModuleAction::from_fn(f.algebra().clone(), f.base().clone(), |k, x| f.function(k)[x])
}

/// `A` acting on its constants by `ak = a ◇ k`.
pub fn constants_module(a: &FiniteCmvAlgebra) -> Result<ModuleAction> {
    let k = a.constants()?.constants;
    let (carrier, embed) = a.mv().subalgebra(&k)?;
    let pos = |x: usize| {
        embed
            .binary_search(&x)
            .map_err(|_| Error::Invariant(format!("{} <> constant is not a constant", a.name(x))))
    };
    let s = a.size();
    let mut action = vec![vec![0; embed.len()]; s];
    for (sa, row) in action.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = pos(a.diamond(sa, embed[j]))?;
        }
    }
    ModuleAction::new(a.clone(), carrier, action)
}

/// The pointwise action on `M^k`: `(af)(t) = a f(t)`.
pub fn power_module(m: &ModuleAction, k: usize, cfg: &Config) -> Result<ModuleAction> {
    let carrier = power_mv(&m.carrier, k, cfg)?;
    let base = m.carrier.size();
    let decode = |mut idx: usize| {
        let mut t = vec![0; k];
        for d in t.iter_mut().rev() {
            *d = idx % base;
            idx /= base;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &d| acc * base + d);
    let scalars = m.scalars.clone();
    Ok(ModuleAction::from_fn(scalars, carrier, |a, x| {
        let t: Vec<usize> = decode(x).into_iter().map(|d| m.act(a, d)).collect();
        encode(&t)
    }))
}

/// Restriction of scalars along a CMV-homomorphism `h: A → B`, where `m`
/// is a `B`-module: `ax = h(a)x`.
pub fn restrict_scalars(a: &FiniteCmvAlgebra, h: &[usize], m: &ModuleAction) -> Result<ModuleAction> {
    if h.len() != a.size() || h.iter().any(|&y| y >= m.scalars.size()) || !a.is_homomorphism_to(&m.scalars, h) {
        return Err(Error::NotHomomorphism("scalar map does not preserve the CMV operations".into()));
    }
    Ok(ModuleAction::from_fn(a.clone(), m.carrier.clone(), |s, x| m.act(h[s], x)))
}

/// The quotient of the carrier by an ideal whose congruence the action
/// respects, with the projection.
pub fn quotient_module(m: &ModuleAction, ideal: &Subset) -> Result<(ModuleAction, Vec<usize>)> {
    let q = crate::mv::quotient_mv(&m.carrier, ideal)?;
    let p = &q.projection;
    let n = m.carrier.size();
    for x in 0..n {
        for y in 0..n {
            if p[x] != p[y] {
                continue;
            }
            if let Some(a) = (0..m.scalars.size()).find(|&a| p[m.act(a, x)] != p[m.act(a, y)]) {
                return Err(Error::NotIdeal(format!(
                    "action does not respect the congruence: {} ~ {} but not after {}",
                    m.carrier.name(x),
                    m.carrier.name(y),
                    m.scalars.name(a)
                )));
            }
        }
    }
    let reps: Vec<usize> = (0..q.algebra.size())
        .map(|c| p.iter().position(|&v| v == c).expect("surjective"))
        .collect();
    let action = ModuleAction::from_fn(m.scalars.clone(), q.algebra, |a, c| p[m.act(a, reps[c])]);
    Ok((action, q.projection))
}

/// Whether `phi` is an MV-homomorphism with `φ(ax) = aφ(x)`.
pub fn is_module_morphism(from: &ModuleAction, to: &ModuleAction, phi: &[usize]) -> bool {
    from.scalars == to.scalars
        && phi.len() == from.carrier.size()
        && phi.iter().all(|&y| y < to.carrier.size())
        && from.carrier.is_homomorphism_to(&to.carrier, phi)
        && (0..from.scalars.size())
            .all(|a| (0..from.carrier.size()).all(|x| phi[from.act(a, x)] == to.act(a, phi[x])))
}

#[derive(Clone, Debug, Serialize)]
pub struct A4Search {
    pub carrier_size: usize,
    pub boolean: bool,
    pub admits: bool,
    /// Actions found, capped at `limit`.
    pub actions_found: usize,
    /// Whether the search ran to completion within the node budget.
    pub exhausted: bool,
    pub nodes: u64,
    #[serde(skip)]
    pub action: Option<ModuleAction>,
}

impl A4Search {
    pub fn agrees_with_booleanness(&self) -> bool {
        self.exhausted && self.admits == self.boolean
    }

    pub fn unique(&self) -> bool {
        self.exhausted && self.actions_found == 1
    }
}

struct ActionSearch<'a> {
    s: &'a FiniteCmvAlgebra,
    m: &'a FiniteMvAlgebra,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl ActionSearch<'_> {
    /// Sets `(a, x) ↦ v` and everything the laws then force; `false` on a
    /// conflict.
    fn assign(&self, cells: &mut [Option<usize>], a: usize, x: usize, v: usize) -> bool {
        let n = self.m.size();
        let s = self.s.size();
        let mut queue = vec![(a, x, v)];
        while let Some((a, x, v)) = queue.pop() {
            match cells[a * n + x] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => cells[a * n + x] = Some(v),
            }
            let get = |cells: &[Option<usize>], a: usize, x: usize| cells[a * n + x];
            queue.push((self.s.mv().neg(a), x, self.m.neg(v)));
            for b in 0..s {
                if let Some(bx) = get(cells, b, x) {
                    queue.push((self.s.mv().oplus(a, b), x, self.m.oplus(v, bx)));
                }
                if let Some(bv) = get(cells, b, v) {
                    queue.push((self.s.diamond(b, a), x, bv));
                }
            }
            // (a, x) as the outer step of some (c ◇ b) y with b y = x
            for b in 0..s {
                for y in 0..n {
                    if get(cells, b, y) == Some(x) {
                        queue.push((self.s.diamond(a, b), y, v));
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cells: Vec<Option<usize>>) {
        if self.found.len() >= self.limit || self.nodes >= self.budget {
            return;
        }
        self.nodes += 1;
        let Some(pos) = cells.iter().position(Option::is_none) else {
            self.found.push(cells.into_iter().map(|c| c.expect("complete")).collect());
            return;
        };
        let n = self.m.size();
        for v in 0..n {
            let mut next = cells.clone();
            if self.assign(&mut next, pos / n, pos % n, v) {
                self.run(next);
            }
        }
    }
}

/// Every action of `scalars` on `carrier`, up to `limit`, by backtracking
/// with law propagation. Returns the actions, the node count and whether
/// the search finished.
pub fn search_module_actions(
    scalars: &FiniteCmvAlgebra,
    carrier: &FiniteMvAlgebra,
    limit: usize,
    cfg: &Config,
) -> (Vec<ModuleAction>, u64, bool) {
    let (s, n) = (scalars.size(), carrier.size());
    let mut search = ActionSearch {
        s: scalars,
        m: carrier,
        nodes: 0,
        budget: cfg.max_search_nodes,
        limit,
        found: Vec::new(),
    };
    let mut cells = vec![None; s * n];
    let mut ok = true;
    for x in 0..n {
        ok &= search.assign(&mut cells, scalars.mv().zero(), x, carrier.zero());
        ok &= ok && search.assign(&mut cells, scalars.identity(), x, x);
    }
    if ok {
        search.run(cells);
    }
    let exhausted = search.nodes < search.budget && search.found.len() < limit;
    let actions = search
        .found
        .into_iter()
        .map(|t| ModuleAction {
            scalars: scalars.clone(),
            carrier: carrier.clone(),
            table: t,
        })
        .collect();
    (actions, search.nodes, exhausted)
}

/// Searches for actions of the four-element CMV-algebra on `m` and
/// compares the outcome with Booleanness of `m`.
pub fn admits_a4_module(m: &FiniteMvAlgebra, cfg: &Config) -> Result<A4Search> {
    cfg.check_size("module action search", (4 * m.size()) as u128)?;
    let a4 = crate::cmv::function_cmv(&crate::mv::lukasiewicz_chain(1)?, cfg)?.into_algebra();
    let (actions, nodes, exhausted) = search_module_actions(&a4, m, 2, cfg);
    for act in &actions {
        if let Some(v) = validate_module(act, Exec::Sequential).violation {
            return Err(Error::Invariant(format!("search produced an invalid action: {v}")));
        }
    }
    Ok(A4Search {
        carrier_size: m.size(),
        boolean: m.is_boolean(),
        admits: !actions.is_empty(),
        actions_found: actions.len(),
        // a second action would have stopped the search early
        exhausted: exhausted || actions.len() >= 2,
        nodes,
        action: actions.into_iter().next(),
    })
}

/// The substitution `Φ_f(h) = h ∘ f` on McNaughton functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    f: PwlFunction,
}

impl Substitution {
    /// Errors unless `f` has integer coefficients.
    pub fn new(f: PwlFunction) -> Result<Self> {
        if !f.membership().in_m1 {
            return Err(Error::InvalidArgument(format!("{f} is not a McNaughton function")));
        }
        Ok(Substitution { f })
    }

    pub fn function(&self) -> &PwlFunction {
        &self.f
    }

    pub fn apply(&self, h: &PwlFunction) -> PwlFunction {
        PwlFunction::compose(h, &self.f)
    }
}

pub fn phi_f(f: PwlFunction) -> Result<Substitution> {
    Substitution::new(f)
}

/// `φ_x(t)`: the term evaluated in `b` at `x`.
pub fn phi_x_eval(b: &FiniteMvAlgebra, x: usize, t: &Term) -> Result<usize> {
    if x >= b.size() {
        return Err(Error::InvalidArgument(format!("no element {x}")));
    }
    Ok(t.eval(b, &x))
}

/// Tallies for one sampled property.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SampledCheck {
    pub checked: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl SampledCheck {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubstitutionReport {
    pub seed: u64,
    /// `Φ_f` preserves `⊕, *, 0` and the action `a·h = a ∘ h`.
    pub endomorphism: SampledCheck,
    pub identity_image: SampledCheck,
    /// `Φ_{f∘g} = Φ_g ∘ Φ_f`.
    pub contravariance: SampledCheck,
    pub identity_substitution: SampledCheck,
}

impl SubstitutionReport {
    pub fn passed(&self) -> bool {
        self.endomorphism.passed()
            && self.identity_image.passed()
            && self.contravariance.passed()
            && self.identity_substitution.passed()
    }
}

pub fn substitution_check(samples: usize, seed: u64) -> SubstitutionReport {
    let mut s = Sampler::new(seed);
    let mut rep = SubstitutionReport {
        seed,
        endomorphism: SampledCheck::default(),
        identity_image: SampledCheck::default(),
        contravariance: SampledCheck::default(),
        identity_substitution: SampledCheck::default(),
    };
    let id = Substitution::new(PwlFunction::identity()).expect("identity is McNaughton");
    let mc = McNaughton;
    for _ in 0..samples {
        let (f, g, h, k) = (s.m1_function(), s.m1_function(), s.m1_function(), s.m1_function());
        let phi = Substitution::new(f.clone()).expect("sampled from terms");
        let show = || format!("f = {f}, g = {g}, h = {h}, k = {k}");
        let ok = phi.apply(&mc.oplus(&h, &k)) == mc.oplus(&phi.apply(&h), &phi.apply(&k))
            && phi.apply(&h.neg()) == phi.apply(&h).neg()
            && phi.apply(&PwlFunction::zero()) == PwlFunction::zero()
            && phi.apply(&mc.diamond(&g, &h)) == mc.diamond(&g, &phi.apply(&h));
        rep.endomorphism.record(ok, show);
        rep.identity_image.record(phi.apply(&PwlFunction::identity()) == f, show);
        let fg = Substitution::new(PwlFunction::compose(&f, &g)).expect("closed under composition");
        let psi = Substitution::new(g.clone()).expect("sampled from terms");
        rep.contravariance.record(fg.apply(&h) == psi.apply(&phi.apply(&h)), show);
        rep.identity_substitution.record(id.apply(&h) == h, show);
    }
    rep
}

/// A scalar of the McNaughton algebra: a term witness and the function it
/// denotes. Equality compares functions only.
#[derive(Clone, Debug)]
pub struct M1Scalar {
    pub term: Term,
    pub function: PwlFunction,
}

impl M1Scalar {
    pub fn new(term: Term) -> Self {
        let function = term.to_pwl();
        M1Scalar { term, function }
    }
}

impl PartialEq for M1Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.function == other.function
    }
}

/// The McNaughton CMV-algebra on term-carrying scalars; `a ◇ b` substitutes
/// `b`'s term into `a`'s.
#[derive(Clone, Copy, Debug, Default)]
pub struct M1Scalars;

impl MvOps for M1Scalars {
    type Elem = M1Scalar;

    fn zero(&self) -> M1Scalar {
        M1Scalar::new(Term::Zero)
    }

    fn neg(&self, x: &M1Scalar) -> M1Scalar {
        M1Scalar {
            term: x.term.clone().neg(),
            function: x.function.neg(),
        }
    }

    fn oplus(&self, x: &M1Scalar, y: &M1Scalar) -> M1Scalar {
        M1Scalar {
            term: x.term.clone().oplus(y.term.clone()),
            function: McNaughton.oplus(&x.function, &y.function),
        }
    }
}

impl CmvOps for M1Scalars {
    fn diamond(&self, x: &M1Scalar, y: &M1Scalar) -> M1Scalar {
        M1Scalar {
            term: x.term.substitute(&y.term),
            function: PwlFunction::compose(&x.function, &y.function),
        }
    }

    fn identity(&self) -> M1Scalar {
        M1Scalar::new(Term::Var)
    }
}

/// A finite MV-algebra as a module over the McNaughton algebra.
#[derive(Clone, Debug)]
pub struct M1Module {
    carrier: FiniteMvAlgebra,
}

impl M1Module {
    pub fn carrier(&self) -> &FiniteMvAlgebra {
        &self.carrier
    }

    /// `f·x = φ_x(t_f)`.
    pub fn act(&self, f: &M1Scalar, x: usize) -> usize {
        f.term.eval(&self.carrier, &x)
    }
}

pub fn m1c_action(b: &FiniteMvAlgebra) -> M1Module {
    M1Module { carrier: b.clone() }
}

#[derive(Clone, Debug, Serialize)]
pub struct M1ModuleReport {
    pub seed: u64,
    /// Laws (i)–(v) on sampled scalar pairs, every carrier element.
    pub laws: SampledCheck,
    pub first_violation: Option<ModuleLaw>,
    /// Semantically equal term witnesses act identically.
    pub well_defined: SampledCheck,
    /// `φ_x ∘ Φ_f = φ_{fx}`, evaluated on terms and cross-checked on functions.
    pub evaluation_identity: SampledCheck,
}

impl M1ModuleReport {
    pub fn passed(&self) -> bool {
        self.laws.passed() && self.well_defined.passed() && self.evaluation_identity.passed()
    }
}

pub fn check_m1_module(m: &M1Module, samples: usize, seed: u64) -> M1ModuleReport {
    let mut s = Sampler::new(seed);
    let b = &m.carrier;
    let n = b.size();
    let act = |f: &M1Scalar, x: &usize| m.act(f, *x);
    let mut laws = SampledCheck::default();
    let mut first_violation = None;
    let mut well_defined = SampledCheck::default();
    let mut evaluation_identity = SampledCheck::default();
    for _ in 0..samples {
        let (fa, fb) = (M1Scalar::new(s.term(3)), M1Scalar::new(s.term(3)));
        for x in 0..n {
            let v = triple_violation(&M1Scalars, b, &act, &fa, &fb, &x);
            if first_violation.is_none() {
                first_violation = v;
            }
            laws.record(v.is_none(), || format!("a = {}, b = {}, x = {}", fa.term, fb.term, b.name(x)));
        }

        let (t, u) = s.equal_term_pair();
        let same_function = t.to_pwl() == u.to_pwl();
        let agree = (0..n).all(|x| t.eval(b, &x) == u.eval(b, &x));
        well_defined.record(same_function && agree, || format!("{t} vs {u}"));

        let (f, g) = (s.term(3), s.term(3));
        let x = s.below(n);
        let lhs = g.substitute(&f).eval(b, &x);
        let rhs = g.eval(b, &f.eval(b, &x));
        let bridge = g.substitute(&f).to_pwl() == PwlFunction::compose(&g.to_pwl(), &f.to_pwl());
        evaluation_identity.record(lhs == rhs && bridge, || {
            format!("f = {f}, g = {g}, x = {}", b.name(x))
        });
    }
    M1ModuleReport {
        seed,
        laws,
        first_violation,
        well_defined,
        evaluation_identity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::function_cmv;
    use crate::mv::{lukasiewicz_chain, mv_catalog, power_mv};

    fn cfg() -> Config {
        Config::default()
    }

    fn a4() -> FunctionCmv {
        function_cmv(&lukasiewicz_chain(1).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn canonical_modules_are_valid() {
        let f = a4();
        let a = f.algebra();
        let reduct = reduct_module(a);
        assert!(validate_module(&reduct, Exec::default()).valid());
        assert!(validate_module(&evaluation_module(&f), Exec::default()).valid());
        let l3 = function_cmv(&lukasiewicz_chain(2).unwrap(), &cfg()).unwrap();
        assert!(validate_module(&evaluation_module(&l3), Exec::default()).valid());

        let k = constants_module(a).unwrap();
        assert_eq!(k.carrier().size(), 2);
        assert!(validate_module(&k, Exec::default()).valid());

        let p = power_module(&reduct, 2, &cfg()).unwrap();
        assert_eq!(p.carrier().size(), 16);
        assert!(validate_module(&p, Exec::default()).valid());

        let big = function_cmv(a.mv(), &cfg()).unwrap();
        let h = a.cayley_embed().unwrap().indices_in(&big).unwrap();
        let r = restrict_scalars(a, &h, &evaluation_module(&big)).unwrap();
        assert!(validate_module(&r, Exec::default()).valid());
        assert_eq!(r.table(), reduct.table());
        let r2 = restrict_scalars(a, &h, &reduct_module(big.algebra())).unwrap();
        assert!(validate_module(&r2, Exec::default()).valid());
        assert!(restrict_scalars(a, &[0, 0, 0, 0], &reduct).is_err());
    }

    #[test]
    fn broken_action_reports_witness() {
        let f = a4();
        let a = f.algebra().clone();
        let action: Vec<Vec<usize>> = (0..4).map(|s| vec![s; 4]).collect();
        let m = ModuleAction::new(a.clone(), a.mv().clone(), action).unwrap();
        let rep = validate_module(&m, Exec::default());
        assert!(!rep.valid());
        // ax = a satisfies (i)-(iii)
        let v = rep.violation.unwrap();
        assert_eq!(v.law, ModuleLaw::IdentityActs);
        assert!(ModuleAction::new(a.clone(), a.mv().clone(), vec![vec![9; 4]; 4]).is_err());
    }

    #[test]
    fn a4_modules_are_boolean() {
        let two = lukasiewicz_chain(1).unwrap();
        let r = admits_a4_module(&two, &cfg()).unwrap();
        assert!(r.admits && r.unique() && r.agrees_with_booleanness());
        let sq = power_mv(&two, 2, &cfg()).unwrap();
        let r = admits_a4_module(&sq, &cfg()).unwrap();
        assert!(r.admits && r.unique());
        let r = admits_a4_module(&lukasiewicz_chain(2).unwrap(), &cfg()).unwrap();
        assert!(!r.admits && r.agrees_with_booleanness());
        for size in 2..=6 {
            for m in mv_catalog(size, &cfg()).unwrap() {
                let r = admits_a4_module(&m, &cfg()).unwrap();
                assert!(r.agrees_with_booleanness(), "{size}: {r:?}");
            }
        }
    }

    /// Brute force over every table for tiny carriers.
    #[test]
    fn action_search_matches_brute_force() {
        let f = a4();
        let a = f.algebra();
        let two = lukasiewicz_chain(1).unwrap();
        let three = lukasiewicz_chain(2).unwrap();
        for m in [two, three] {
            let n = m.size();
            let cells = 4 * n;
            let mut count = 0;
            for code in 0..n.pow(cells as u32) {
                let mut c = code;
                let table: Vec<Vec<usize>> = (0..4)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let d = c % n;
                                c /= n;
                                d
                            })
                            .collect()
                    })
                    .collect();
                let act = ModuleAction::new(a.clone(), m.clone(), table).unwrap();
                if validate_module(&act, Exec::Sequential).valid() {
                    count += 1;
                }
            }
            let (found, _, done) = search_module_actions(a, &m, 10, &cfg());
            assert!(done);
            assert_eq!(found.len(), count);
        }
    }

    #[test]
    fn quotient_modules() {
        let f = function_cmv(&lukasiewicz_chain(1).unwrap(), &cfg()).unwrap();
        let two = lukasiewicz_chain(1).unwrap();
        let sq = power_mv(&two, 2, &cfg()).unwrap();
        let m = admits_a4_module(&sq, &cfg()).unwrap().action.unwrap();
        assert_eq!(m.scalars(), f.algebra());
        // c1 moves (0,0) out of {(0,0), (0,1)}, but the congruence is respected
        let ideal = Subset::new([0, 1]);
        assert!(!m.is_stable(&ideal));
        let (q, p) = quotient_module(&m, &ideal).unwrap();
        assert!(validate_module(&q, Exec::default()).valid());
        assert!(is_module_morphism(&m, &q, &p));
    }

    #[test]
    fn substitutions() {
        let rep = substitution_check(30, 4);
        assert!(rep.passed(), "{rep:?}");
        let half = PwlFunction::constant("1/2".parse().unwrap()).unwrap();
        assert!(phi_f(half).is_err());
        let f = PwlFunction::identity();
        assert_eq!(phi_f(f.clone()).unwrap().apply(&PwlFunction::identity()), f);
    }

    #[test]
    fn evaluation_and_m1_action() {
        let l3 = lukasiewicz_chain(2).unwrap();
        let half = 1;
        assert_eq!(phi_x_eval(&l3, half, &Term::Var).unwrap(), half);
        let vv = Term::Var.oplus(Term::Var);
        assert_eq!(phi_x_eval(&l3, half, &vv).unwrap(), 2);
        let m = m1c_action(&l3);
        assert_eq!(m.act(&M1Scalar::new(vv), half), 2);
        let id = M1Scalar::new(Term::Var);
        assert!((0..3).all(|x| m.act(&id, x) == x));

        let l5 = lukasiewicz_chain(4).unwrap();
        let m5 = m1c_action(&l5);
        let nn = M1Scalar::new(Term::Var.neg().neg());
        assert_eq!(nn, id);
        assert!((0..5).all(|x| m5.act(&nn, x) == m5.act(&id, x)));
        let rep = check_m1_module(&m5, 40, 11);
        assert!(rep.passed(), "{rep:?}");
    }
}
