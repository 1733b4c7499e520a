//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p cmvkit --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmvkit::cmv::{
    enumerate_cmv, function_cmv, restricted_function_cmv, tilde_closure, FiniteCmvAlgebra, FunctionCmv,
};
use cmvkit::logic::{
    bundled_proofs, check_proof, corrupt_proof, is_tautology, random_axiom_instance, rule_soundness, AxiomId,
    BindingMode,
};
use cmvkit::modules::{
    admits_a4_module, check_m1_module, constants_module, evaluation_module, m1c_action, power_module,
    reduct_module, restrict_scalars, validate_module,
};
use cmvkit::mv::{enumerate_mv_ideals, lukasiewicz_chain, mv_catalog, power_mv, quotient_mv, FiniteMvAlgebra};
use cmvkit::pwl::{McNaughton, PwlFunction, PwlOp};
use cmvkit::sample::{Sampler, DEFAULT_SEED};
use cmvkit::structure::{
    enumerate_cmv_ideals, enumerate_diamond_ideals, ideal_image_report, quotient_cmv, verify_zero_lemmas,
};
use cmvkit::{Config, Exec, Subset};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> Config {
    Config::default()
}

/// The chain with `n` elements.
fn chain(n: usize) -> FiniteMvAlgebra {
    lukasiewicz_chain(n - 1).unwrap()
}

fn a4() -> FunctionCmv {
    function_cmv(&chain(2), &cfg()).unwrap()
}

fn l3_l3() -> FunctionCmv {
    function_cmv(&chain(3), &cfg()).unwrap()
}

fn restricted(n: usize) -> FunctionCmv {
    let m = chain(n);
    restricted_function_cmv(&m, &Subset::new([m.zero(), m.one()]), &cfg()).unwrap()
}

fn revalidate_mv(name: &str, m: &FiniteMvAlgebra) -> Result<(), String> {
    FiniteMvAlgebra::validate_with(m.tables(), Exec::Sequential)
        .map(|_| ())
        .map_err(|e| format!("{name}: {e}"))
}

fn revalidate_cmv(name: &str, a: &FiniteCmvAlgebra) -> Result<(), String> {
    FiniteCmvAlgebra::validate_tables(a.tables())
        .map(|_| ())
        .map_err(|e| format!("{name}: {e}"))
}

fn mv_axioms() -> Outcome {
    let mut algebras: Vec<(String, FiniteMvAlgebra)> =
        (2..=6).map(|n| (format!("chain of {n}"), chain(n))).collect();
    algebras.push(("L2^2".into(), power_mv(&chain(2), 2, &cfg()).unwrap()));
    let l3_cubed = power_mv(&chain(3), 3, &cfg()).unwrap();
    algebras.push(("L3^3".into(), l3_cubed.clone()));
    let mut quotients = 0;
    for base in [&l3_cubed, &power_mv(&chain(2), 2, &cfg()).unwrap(), &chain(5)] {
        for ideal in enumerate_mv_ideals(base, &cfg()).map_err(|e| e.to_string())? {
            let q = quotient_mv(base, &ideal.members).map_err(|e| e.to_string())?;
            algebras.push((format!("quotient {quotients}"), q.algebra));
            quotients += 1;
        }
    }
    for (name, m) in &algebras {
        revalidate_mv(name, m)?;
    }
    Ok(format!("{} algebras including {quotients} quotients", algebras.len()))
}

fn cmv_laws() -> Outcome {
    let mut algebras: Vec<(String, FiniteCmvAlgebra)> = vec![
        ("A4".into(), a4().into_algebra()),
        ("L3^L3".into(), l3_l3().into_algebra()),
        ("restricted L3".into(), restricted(3).into_algebra()),
        ("tilde L4".into(), tilde_closure(&chain(4), &cfg()).unwrap().into_algebra()),
    ];
    for (k, a) in enumerate_cmv(4, &cfg()).unwrap().algebras.into_iter().enumerate() {
        algebras.push((format!("enumerated {k}"), a));
    }
    let r = restricted(3);
    for (k, ideal) in enumerate_cmv_ideals(r.algebra(), &cfg()).unwrap().into_iter().enumerate() {
        let q = quotient_cmv(r.algebra(), &ideal).map_err(|e| e.to_string())?;
        algebras.push((format!("quotient {k} of restricted L3"), q.algebra));
    }
    let mut nontrivial = 0;
    for (name, a) in &algebras {
        revalidate_cmv(name, a)?;
        if a.is_trivial() {
            continue;
        }
        nontrivial += 1;
        let mv = a.mv();
        let i = a.identity();
        let ni = mv.neg(i);
        ensure(mv.lt(mv.zero(), i) && mv.lt(i, mv.one()), || format!("{name}: 0 < i < 1 fails"))?;
        ensure(i != ni, || format!("{name}: i = i*"))?;
        ensure(a.diamond(ni, ni) == i, || format!("{name}: i* <> i* != i"))?;
        ensure(a.size() >= 4, || format!("{name}: fewer than four elements"))?;
        ensure(a.incomparable_pair().is_some(), || format!("{name}: totally ordered"))?;
    }
    Ok(format!("{} algebras, {nontrivial} nontrivial, all with incomparable pairs", algebras.len()))
}

fn four_element_uniqueness() -> Outcome {
    let mut counts = Vec::new();
    for size in [2, 3, 4, 5] {
        let e = enumerate_cmv(size, &cfg()).map_err(|e| e.to_string())?;
        counts.push((size, e.algebras.len()));
    }
    ensure(counts == [(2, 0), (3, 0), (4, 1), (5, 0)], || format!("counts {counts:?}"))?;
    Ok(format!("nontrivial counts by size {counts:?}"))
}

fn tilde_sizes() -> Outcome {
    let mut detail = Vec::new();
    for (n, want) in [(2usize, 4usize), (3, 27), (4, 256)] {
        let start = Instant::now();
        let t = tilde_closure(&chain(n), &cfg()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let full = function_cmv(&chain(n), &cfg()).unwrap();
        ensure(t.algebra().size() == want, || format!("n={n}: {} elements", t.algebra().size()))?;
        ensure(t.functions() == full.functions(), || format!("n={n}: differs from the full algebra"))?;
        if n == 3 {
            ensure(took < Duration::from_secs(10), || format!("n=3 took {took:?}"))?;
        }
        detail.push(format!("{want} in {:.0?}", took));
    }
    Ok(detail.join(", "))
}

fn simplicity() -> Outcome {
    let count = |f: &FunctionCmv| enumerate_cmv_ideals(f.algebra(), &cfg()).unwrap().len();
    let (a, b, r) = (count(&a4()), count(&l3_l3()), count(&restricted(3)));
    ensure(a == 2 && b == 2 && r > 2, || format!("ideal counts {a}, {b}, {r}"))?;
    Ok(format!("CMV-ideals: A4 {a}, L3^L3 {b}, restricted L3 {r}"))
}

fn restricted_counts() -> Outcome {
    let mut seen = Vec::new();
    for n in [2usize, 3] {
        let size = restricted(n + 1).algebra().size();
        let want = 4 * (n + 1).pow(n as u32 - 1);
        ensure(size == want, || format!("n={n}: {size}, expected {want}"))?;
        seen.push(size);
    }
    Ok(format!("sizes {seen:?}"))
}

fn mcnaughton_arithmetic() -> Outcome {
    let mut s = Sampler::new(DEFAULT_SEED);
    for k in 0..1000 {
        let (f, g) = (s.m1_function(), s.m1_function());
        let q = s.unit_rational(12);
        let (fq, gq) = (f.eval(&q).unwrap(), g.eval(&q).unwrap());
        for op in PwlOp::ALL {
            let got = PwlFunction::pointwise(op, &f, &g).eval(&q).unwrap();
            ensure(got == op.apply(&fq, &gq), || format!("sample {k}: {op:?} at {q}"))?;
        }
        let c = PwlFunction::compose(&f, &g).eval(&q).unwrap();
        ensure(c == f.eval(&gq).unwrap(), || format!("sample {k}: composition at {q}"))?;
    }
    let id = PwlFunction::identity();
    for k in 0..100 {
        let (f, g, h) = (s.m1_function(), s.m1_function(), s.m1_function());
        let l = PwlFunction::compose(&PwlFunction::compose(&f, &g), &h);
        let r = PwlFunction::compose(&f, &PwlFunction::compose(&g, &h));
        ensure(l == r, || format!("triple {k}: not associative"))?;
        ensure(
            PwlFunction::compose(&f, &id) == f && PwlFunction::compose(&id, &f) == f,
            || format!("triple {k}: identity is not a unit"),
        )?;
    }
    Ok("1000 samples, 100 triples".into())
}

fn logic_soundness() -> Outcome {
    let (a, b) = (a4(), l3_l3());
    let mut s = Sampler::new(DEFAULT_SEED);
    let mut checked = 0;
    for id in AxiomId::all() {
        for k in 0..100 {
            let phi = random_axiom_instance(id, &mut s, 3);
            ensure(is_tautology(a.algebra(), &phi), || format!("{id} instance {k} in A4: {phi}"))?;
            ensure(is_tautology(b.algebra(), &phi), || format!("{id} instance {k} in L3^L3: {phi}"))?;
            ensure(is_tautology(&McNaughton, &phi), || format!("{id} instance {k} in M1: {phi}"))?;
            checked += 1;
        }
    }
    ensure(checked == 1500, || format!("{checked} instances"))?;
    let rules = [
        ("A4", rule_soundness(a.algebra(), 100, DEFAULT_SEED)),
        ("L3^L3", rule_soundness(b.algebra(), 100, DEFAULT_SEED)),
        ("M1", rule_soundness(&McNaughton, 100, DEFAULT_SEED)),
    ];
    for (name, r) in &rules {
        ensure(r.passed(100), || format!("rules in {name}: {r:?}"))?;
    }
    Ok("15 schemas x 100 instances in 3 algebras; 3 rules x 100 premises".into())
}

fn proof_checker() -> Outcome {
    let (a, b) = (a4(), l3_l3());
    let proofs = bundled_proofs();
    for (name, p) in &proofs {
        let v = check_proof(p, BindingMode::Strict);
        ensure(v.accepted, || format!("{name} rejected: {:?}", v.reason))?;
        let last = &p.steps.last().unwrap().formula;
        ensure(
            is_tautology(a.algebra(), last) && is_tautology(b.algebra(), last) && is_tautology(&McNaughton, last),
            || format!("{name}: conclusion is not a tautology"),
        )?;
    }
    let mut s = Sampler::new(DEFAULT_SEED);
    for k in 0..50 {
        let (name, p) = &proofs[k % proofs.len()];
        let (bad, c) = corrupt_proof(p, &mut s).ok_or_else(|| format!("{name}: no corruption found"))?;
        let v = check_proof(&bad, BindingMode::Strict);
        ensure(!v.accepted && v.failed_step == Some(c.step), || {
            format!("{name}: corruption {} -> {} gave {v:?}", c.original, c.corrupted)
        })?;
    }
    Ok(format!("{} proofs accepted, 50 corruptions rejected at their step", proofs.len()))
}

fn modules() -> Outcome {
    let f = a4();
    let a = f.algebra();
    let big = function_cmv(a.mv(), &cfg()).unwrap();
    let h = a.cayley_embed().unwrap().indices_in(&big).unwrap();
    let l3 = l3_l3();
    let reduct = reduct_module(a);
    let built = [
        ("reduct", reduct.clone()),
        ("evaluation", evaluation_module(&l3)),
        ("constants", constants_module(l3.algebra()).unwrap()),
        ("power", power_module(&reduct, 2, &cfg()).unwrap()),
        ("restriction", restrict_scalars(a, &h, &evaluation_module(&big)).unwrap()),
    ];
    for (name, m) in &built {
        let r = validate_module(m, Exec::default());
        ensure(r.valid(), || format!("{name}: {:?}", r.violation))?;
    }
    let mut carriers = 0;
    for size in 1..=9 {
        for m in mv_catalog(size, &cfg()).map_err(|e| e.to_string())? {
            let r = admits_a4_module(&m, &cfg()).map_err(|e| e.to_string())?;
            ensure(r.agrees_with_booleanness(), || format!("size {size}: {r:?}"))?;
            ensure(!r.boolean || r.unique(), || format!("size {size}: A4 action not unique"))?;
            carriers += 1;
        }
    }
    let r = check_m1_module(&m1c_action(&chain(5)), 100, DEFAULT_SEED);
    ensure(r.evaluation_identity.passed() && r.evaluation_identity.checked >= 100, || {
        format!("evaluation identity: {:?}", r.evaluation_identity)
    })?;
    ensure(r.well_defined.passed() && r.well_defined.checked >= 100, || {
        format!("well-definedness: {:?}", r.well_defined)
    })?;
    ensure(r.laws.passed(), || format!("module laws over M1: {:?}", r.first_violation))?;
    Ok(format!("5 constructions, {carriers} carriers, M1 action on 5 elements"))
}

fn structure_lemmas() -> Outcome {
    let mut detail = Vec::new();
    for (name, b) in [("L3^L3", l3_l3()), ("restricted L3", restricted(3))] {
        let z = verify_zero_lemmas(&b, &cfg()).map_err(|e| e.to_string())?;
        ensure(z.holds(), || format!("{name}: {z:?}"))?;
        detail.push(format!("{name}: {} stable sets, {} proper ideals", z.stable_subsets, z.proper_diamond_ideals));
    }
    for (name, b) in [("A4", a4()), ("L3^L3", l3_l3())] {
        let ideals = enumerate_diamond_ideals(b.algebra(), &cfg()).map_err(|e| e.to_string())?;
        for i in &ideals {
            let r = ideal_image_report(&b, i).map_err(|e| e.to_string())?;
            ensure(r.independent, || format!("{name}: image of {:?} depends on the point", i.as_slice()))?;
        }
        detail.push(format!("{name}: {} images", ideals.len()));
    }
    Ok(detail.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("MV axiom suite", mv_axioms),
        ("CMV law suite", cmv_laws),
        ("four-element uniqueness", four_element_uniqueness),
        ("tilde closure", tilde_sizes),
        ("simplicity", simplicity),
        ("restricted counting", restricted_counts),
        ("McNaughton arithmetic", mcnaughton_arithmetic),
        ("logic soundness", logic_soundness),
        ("proof checker", proof_checker),
        ("modules", modules),
        ("structure lemmas", structure_lemmas),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.1?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{took:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
