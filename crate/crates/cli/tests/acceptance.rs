//! One PASS/FAIL line per acceptance criterion, with timings.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bbdescent_cli::{build_problem, parse_problem, run_text, Report, RunOptions};
use bbdescent_core::cocycle::{
    pm_coboundary_f2, pm_coboundary_witness, verify_cocycle, verify_unit_coboundary, OneChain, Sign, TwoCocycle,
};
use bbdescent_core::delta::{
    alpha_value, build_cn_sign_cocycle, build_d2n_cocycles, cn_a_value, cn_cocycle, d2n_sign_cocycle, gamma_c2,
    gamma_s_a, gamma_s_t, gamma_t_b, one_plus_zeta, power_lifts, v4_cocycle, v4_sign_symbols, SignComponent,
};
use bbdescent_core::descent::{check_lifts, identify_brauer_class, IdentifyOptions, IdentifyOutcome, Witness, WitnessCheck};
use bbdescent_core::groups::{cyclic_group, dihedral_group, klein_group, subgroup, FiniteGroup};
use bbdescent_core::numfield::FieldAutomorphism;
use bbdescent_core::qalg::{qinv, qmul, QuaternionElement};
use bbdescent_core::qarith::{
    factor, hilbert_symbol, symbol_class, Place, PolyquadraticField, QuaternionClass, QuaternionSymbol, SquareClass,
};
use bbdescent_core::rational::int;
use bbdescent_core::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn problem_text(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.problem"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run_bundled(name: &str) -> Result<Report, String> {
    run_text(&problem_text(name), RunOptions::default()).map_err(|e| e.to_string())
}

fn sc(n: i64) -> SquareClass {
    SquareClass::new(n).unwrap()
}

fn q() -> PolyquadraticField {
    PolyquadraticField::rationals()
}

fn places(ps: &[u64]) -> QuaternionClass {
    QuaternionClass::from_places(ps.iter().map(|&p| Place::Finite(p))).unwrap()
}

fn c1_ex243() -> Outcome {
    let r = run_bundled("ex243")?;
    ensure(r.verdict.as_deref() == Some("Defined"), format!("verdict {:?}", r.verdict))?;
    let w = r.witness.ok_or("no witness")?;
    ensure(w.text == "C2: t=-3 b=6", format!("witness {}", w.text))?;
    Ok(w.text)
}

fn c2_ex60() -> Outcome {
    let r = run_bundled("ex60")?;
    ensure(r.verdict.as_deref() == Some("Defined"), format!("verdict {:?}", r.verdict))?;
    let w = r.witness.ok_or("no witness")?;
    ensure(w.shape.as_deref() == Some("C2xC2"), format!("shape {:?}", w.shape))?;
    ensure(w.params["sign"] == "ram{3,5}", format!("sign {}", w.params["sign"]))?;
    Ok(w.text)
}

fn c3_ex80_endos() -> Outcome {
    let r = run_bundled("ex80-endos")?;
    ensure(r.verdict.as_deref() == Some("NotDefined"), format!("verdict {:?}", r.verdict))?;
    ensure(r.case_log.len() == 4, format!("{} options", r.case_log.len()))?;
    ensure(r.case_log.iter().all(|c| c.shape == "C2xC2" && c.outcome == "refuted"), "all options C2xC2 and refuted")?;
    let compatible: Vec<_> = r
        .case_log
        .iter()
        .filter(|c| !c.reasons.iter().any(|x| x.kind == "algebra-mismatch"))
        .collect();
    ensure(compatible.len() == 2, format!("{} B-compatible options", compatible.len()))?;
    for c in &compatible {
        ensure(
            c.reasons.iter().any(|x| x.kind == "sign-mismatch"),
            format!("{} not sign-refuted", c.option),
        )?;
    }
    Ok(format!("B-compatible: {}", compatible.iter().map(|c| c.option.as_str()).collect::<Vec<_>>().join(" | ")))
}

fn c4_ex80_certificate() -> Outcome {
    let r = run_bundled("ex80")?;
    ensure(r.verdict.as_deref() == Some("Defined"), format!("verdict {:?}", r.verdict))?;
    let w = r.witness.ok_or("no witness")?;
    ensure(w.shape.as_deref() == Some("D8"), format!("shape {:?}", w.shape))?;

    let problem = build_problem(&parse_problem(&problem_text("ex80")).unwrap()).map_err(|e| e.to_string())?;
    let cert = problem.certificates[0].clone();
    let (_, _, c) = build_d2n_cocycles(4, &int(-1), &int(3), &alpha_value(4).unwrap()).unwrap();
    let v = cert.validate().map_err(|e| e.to_string())?;
    let id = identify_brauer_class(&c, &v, &q(), IdentifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(id.outcome == IdentifyOutcome::Class(places(&[2, 5])), format!("{:?}", id.outcome))?;

    let mut bare = cert;
    bare.norm_facts.clear();
    let v = bare.validate().map_err(|e| e.to_string())?;
    let id = identify_brauer_class(&c, &v, &q(), IdentifyOptions::default()).map_err(|e| e.to_string())?;
    let IdentifyOutcome::Undecided(obs) = id.outcome else {
        return Err("norm fact removed but class identified".into());
    };
    let shown: Vec<String> = obs.iter().map(|o| o.to_string()).collect();
    ensure(shown == ["NormQuestion(M, Q(sqrt -1), -1)"], format!("{shown:?}"))?;
    Ok(format!("{}; without norm fact: {}", w.text, shown[0]))
}

fn c5_ex336() -> Outcome {
    let r = run_bundled("ex336")?;
    ensure(r.verdict.as_deref() == Some("NotDefined"), format!("verdict {:?}", r.verdict))?;
    let texts = |shape: &str| -> Vec<(String, String)> {
        r.case_log
            .iter()
            .filter(|c| c.shape == shape)
            .flat_map(|c| c.reasons.iter().map(|x| (x.kind.clone(), x.text.clone())))
            .collect()
    };
    ensure(texts("C4").iter().any(|(_, t)| t.contains("alpha = 2 vs 11")), "C4 alpha mismatch")?;
    ensure(texts("C6").iter().any(|(_, t)| t.contains("alpha = 3 vs 11")), "C6 alpha mismatch")?;
    let c2: Vec<_> = r.case_log.iter().filter(|c| c.shape == "C2").collect();
    ensure(c2.len() == 2, format!("{} C2 options", c2.len()))?;
    for c in c2 {
        ensure(c.reasons.iter().any(|x| x.kind == "sign-mismatch"), format!("C2 {} lacks sign mismatch", c.option))?;
    }
    Ok(format!("{} refuted cases", r.case_log.len()))
}

// ---------------------------------------------------------------------------
// randomized closed form vs explicit lifts

fn pure(b: QuaternionSymbol, c: [i64; 3]) -> QuaternionElement {
    QuaternionElement::new(b, [int(0), int(c[0]), int(c[1]), int(c[2])])
}

fn square_class(x: &QuaternionElement) -> SquareClass {
    let sq = qmul(x, x).unwrap();
    SquareClass::from_rational(sq.central_value().expect("pure quaternion")).unwrap()
}

fn random_unit(rng: &mut StdRng, b: QuaternionSymbol) -> QuaternionElement {
    loop {
        let g = QuaternionElement::new(b, std::array::from_fn(|_| int(rng.gen_range(-3..=3))));
        if !g.is_zero() {
            return g;
        }
    }
}

fn random_pure(rng: &mut StdRng, b: QuaternionSymbol) -> QuaternionElement {
    loop {
        let x = pure(b, std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if !x.is_zero() {
            return x;
        }
    }
}

fn conj(g: &QuaternionElement, x: &QuaternionElement) -> QuaternionElement {
    qmul(&qmul(g, x).unwrap(), &qinv(g).unwrap()).unwrap()
}

fn pure_part(x: &QuaternionElement) -> QuaternionElement {
    let mut y = x.clone();
    y.c[0] = Rational::from_integer(0.into());
    y
}

const POOL: [i64; 12] = [-1, 2, -2, 3, 5, -5, 6, 7, -7, 10, 11, 13];

fn independent_pair(rng: &mut StdRng) -> (SquareClass, SquareClass) {
    loop {
        let (s, t) = (sc(POOL[rng.gen_range(0..POOL.len())]), sc(POOL[rng.gen_range(0..POOL.len())]));
        if s != t {
            return (s, t);
        }
    }
}

/// One random instance of `kind`; returns the witness and its explicit lifts.
fn instance(rng: &mut StdRng, kind: usize, b: QuaternionSymbol) -> Option<(Witness, Vec<QuaternionElement>)> {
    let one = QuaternionElement::one(b);
    let t = sc(POOL[rng.gen_range(0..POOL.len())]);
    match kind {
        0 => {
            let y = random_pure(rng, b);
            Some((Witness::C2 { t, b: square_class(&y) }, vec![one, y]))
        }
        1 => {
            let (s, t) = independent_pair(rng);
            let x = random_pure(rng, b);
            let y = pure_part(&qmul(&x, &random_pure(rng, b)).unwrap());
            if y.is_zero() {
                return None;
            }
            let (a, bb) = (square_class(&x), square_class(&y));
            let sign = SignComponent::from_symbols(v4_sign_symbols(s, t, a, bb)).class().unwrap().clone();
            let xy = qmul(&x, &y).unwrap();
            Some((Witness::V4 { s, t, a, b: bb, sign }, vec![one, x, y, xy]))
        }
        2..=4 => {
            let n = [3, 4, 6][kind - 2];
            let x = conj(&random_unit(rng, b), &one_plus_zeta(n, b).ok()?);
            let w = Witness::Cyclic {
                n,
                t,
                extension: "M".into(),
                sigma: "s".into(),
                sign: QuaternionClass::trivial(),
            };
            Some((w, power_lifts(n as usize, &x, None).unwrap()))
        }
        _ => {
            let n = [3, 4][kind - 5];
            let zeta = one_plus_zeta(n, b).ok()?;
            let y = pure_part(&qmul(&QuaternionElement::i(b), &random_pure(rng, b)).unwrap());
            if y.is_zero() {
                return None;
            }
            let g = random_unit(rng, b);
            let (x, y) = (conj(&g, &zeta), conj(&g, &y));
            let s = if n == 4 {
                let (s, t2) = independent_pair(rng);
                return Some((
                    Witness::Dihedral {
                        n,
                        s: Some(s),
                        t: t2,
                        b: square_class(&y),
                        extension: None,
                        sigma: None,
                        tau: None,
                        sign: QuaternionClass::trivial(),
                    },
                    power_lifts(4, &x, Some(&y)).unwrap(),
                ));
            } else {
                None
            };
            let w = Witness::Dihedral {
                n,
                s,
                t,
                b: square_class(&y),
                extension: None,
                sigma: None,
                tau: None,
                sign: QuaternionClass::trivial(),
            };
            Some((w, power_lifts(n as usize, &x, Some(&y)).unwrap()))
        }
    }
}

fn c6_oracle() -> Outcome {
    let algebras: Vec<QuaternionSymbol> = [(-1, 3), (-3, 2), (-3, 5), (-3, 11)]
        .iter()
        .map(|&(a, b)| QuaternionSymbol::from_integers(a, b).unwrap())
        .collect();
    let names = ["C2", "C2xC2", "C3", "C4", "C6", "D6", "D8"];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut counts = [0usize; 7];
    let mut total = 0;
    while total < 280 {
        let kind = total % 7;
        let b = algebras[rng.gen_range(0..algebras.len())];
        let Some((w, lifts)) = instance(&mut rng, kind, b) else { continue };
        match check_lifts(&w, b, &q(), &lifts).map_err(|e| e.to_string())? {
            WitnessCheck::Verified(_) => {}
            other => return Err(format!("{w} in {b}: {other:?}")),
        }
        counts[kind] += 1;
        total += 1;
    }
    let per: Vec<String> = names.iter().zip(counts).map(|(n, c)| format!("{n}:{c}")).collect();
    Ok(format!("{total} instances ({})", per.join(" ")))
}

fn c7_product_formula() -> Outcome {
    let mut n = 0;
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            if a == 0 || b == 0 {
                continue;
            }
            let (sa, sb) = (sc(a), sc(b));
            let mut vs = vec![Place::Infinity, Place::Finite(2)];
            vs.extend(factor((a * b).unsigned_abs()).into_iter().filter(|&(p, _)| p != 2).map(|(p, _)| Place::Finite(p)));
            let mut bad: Vec<Place> = vs.into_iter().filter(|&v| hilbert_symbol(sa, sb, v) == -1).collect();
            bad.sort();
            ensure(bad.len() % 2 == 0, format!("({a},{b}): odd number of ramified places"))?;
            let ram: Vec<Place> = symbol_class(sa, sb).ramified().iter().copied().collect();
            ensure(ram == bad, format!("({a},{b}): class disagrees with local symbols"))?;
            n += 1;
        }
    }
    Ok(format!("{n} symbols"))
}

fn c8_cocycles() -> Outcome {
    let mut checked = 0;
    let mut ok = |c: bool, what: String| -> Result<(), String> {
        checked += 1;
        ensure(c, format!("{what} is not a cocycle"))
    };
    for x in [-3i64, -1, 2, 5] {
        ok(verify_cocycle(&gamma_s_a(&int(x))), format!("gamma_s,a a={x}"))?;
        ok(verify_cocycle(&gamma_t_b(&int(x))), format!("gamma_t,b b={x}"))?;
        ok(verify_cocycle(&gamma_c2(&int(x))), format!("gamma_b b={x}"))?;
        ok(verify_cocycle(&v4_cocycle(&int(x), &int(3))), format!("C2xC2 a={x}"))?;
    }
    ok(verify_cocycle(&gamma_s_t()), "gamma_s,t".into())?;
    for n in [3u32, 4, 6] {
        let a = cn_a_value(n).unwrap();
        ok(verify_cocycle(&cn_cocycle(n as usize, &a)), format!("C{n} cocycle"))?;
        ok(verify_cocycle(&build_cn_sign_cocycle(n as usize)), format!("C{n} sign table"))?;
        for b in [-1i64, 2, 3] {
            let (gb, e, c) = build_d2n_cocycles(n, &a, &int(b), &alpha_value(n).unwrap()).map_err(|e| e.to_string())?;
            ok(verify_cocycle(&gb), format!("D{} gamma_b", 2 * n))?;
            ok(verify_cocycle(&e), format!("D{} e", 2 * n))?;
            ok(verify_cocycle(&c), format!("D{} c", 2 * n))?;
        }
        ok(verify_cocycle(&d2n_sign_cocycle(n).unwrap()), format!("D{} sign table", 2 * n))?;
    }
    // odd n: the sign tables are the coboundaries of i ↦ (−1)^i
    for n in [3usize, 5] {
        let g = cyclic_group(n);
        let d = OneChain::new(g.clone(), g.elements().map(|i| Sign::from_minus(i % 2 == 1)).collect()).unwrap();
        ensure(d.coboundary() == build_cn_sign_cocycle(n), format!("C{n} coboundary witness"))?;
    }
    let g = dihedral_group(3);
    let d = OneChain::new(g.clone(), g.elements().map(|x| Sign::from_minus(x % 3 % 2 == 1)).collect()).unwrap();
    ensure(d.coboundary() == d2n_sign_cocycle(3).unwrap(), "D6 coboundary witness")?;
    Ok(format!("{checked} cocycles, 3 coboundary witnesses"))
}

fn c9_lambda() -> Outcome {
    let problem = build_problem(&parse_problem(&problem_text("ex80")).unwrap()).map_err(|e| e.to_string())?;
    let cert = &problem.certificates[0];
    let v = cert.validate().map_err(|e| e.to_string())?;
    let lambda = &cert.lambdas[0];
    let (h, emb) = subgroup(&v.group, &lambda.subgroup).unwrap();
    let (_, _, c) = build_d2n_cocycles(4, &int(-1), &int(3), &alpha_value(4).unwrap()).unwrap();
    let ch = c.restrict(&h, &emb);
    let action: Vec<FieldAutomorphism> = emb.iter().map(|&x| v.action[x].clone()).collect();
    let f = &cert.field;
    ensure(verify_unit_coboundary(&ch, &lambda.values, f, &action), "bundled lambda rejected")?;
    let i = cert.embeds.iter().find(|(n, _)| n == "i").unwrap().1.clone();
    let candidates = [f.one(), f.neg(&f.one()), i.clone(), f.neg(&i)];
    let mut perturbations = 0;
    for k in 1..lambda.values.len() {
        for cand in &candidates {
            if cand == &lambda.values[k] {
                continue;
            }
            let mut bad = lambda.values.clone();
            bad[k] = cand.clone();
            ensure(!verify_unit_coboundary(&ch, &bad, f, &action), format!("perturbed entry {k} accepted"))?;
            perturbations += 1;
        }
    }
    Ok(format!("{perturbations} perturbations rejected"))
}

fn agree(c: &TwoCocycle<Sign>) -> Result<bool, String> {
    let a = pm_coboundary_witness(c);
    let b = pm_coboundary_f2(c);
    ensure(a.is_some() == b.is_some(), "methods disagree on solvability")?;
    if let (Some(a), Some(b)) = (a, b) {
        ensure(&a.coboundary() == c && &b.coboundary() == c, "returned chain is not a solution")?;
        return Ok(true);
    }
    Ok(false)
}

fn c10_two_methods() -> Outcome {
    let groups: Vec<(FiniteGroup, Vec<TwoCocycle<Sign>>)> = vec![
        (cyclic_group(2), vec![build_cn_sign_cocycle(2), gamma_c2(&int(-1)).map(Sign::of)]),
        (
            klein_group(),
            vec![gamma_s_t(), gamma_s_a(&int(-1)).map(Sign::of), gamma_t_b(&int(-3)).map(Sign::of), v4_cocycle(&int(-1), &int(-1)).map(Sign::of)],
        ),
        (cyclic_group(3), vec![build_cn_sign_cocycle(3)]),
        (cyclic_group(4), vec![build_cn_sign_cocycle(4), cn_cocycle(4, &int(-1)).map(Sign::of)]),
        (cyclic_group(6), vec![build_cn_sign_cocycle(6), cn_cocycle(6, &int(-3)).map(Sign::of)]),
        (dihedral_group(3), vec![d2n_sign_cocycle(3).unwrap()]),
        (dihedral_group(4), vec![d2n_sign_cocycle(4).unwrap()]),
    ];
    let mut constructors = 0;
    for (_, cs) in &groups {
        for c in cs {
            agree(c)?;
            constructors += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(10);
    let (mut trivial, mut nontrivial) = (0, 0);
    for _ in 0..100 {
        let (g, cs) = &groups[rng.gen_range(0..groups.len())];
        let chain = OneChain::new(g.clone(), g.elements().map(|x| Sign::from_minus(x != 0 && rng.gen_bool(0.5))).collect()).unwrap();
        let mut c = chain.coboundary();
        if rng.gen_bool(0.5) {
            c = c.product(&cs[rng.gen_range(0..cs.len())]).unwrap();
        }
        ensure(verify_cocycle(&c), "random cocycle invalid")?;
        if agree(&c)? {
            trivial += 1;
        } else {
            nontrivial += 1;
        }
    }
    Ok(format!("{constructors} constructor cocycles; 100 random ({trivial} coboundaries, {nontrivial} not)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("example 243 decide", Some(Duration::from_secs(1)), c1_ex243),
        ("example 60 decide-with-endos", Some(Duration::from_secs(1)), c2_ex60),
        ("example 80 decide-with-endos", Some(Duration::from_secs(1)), c3_ex80_endos),
        ("example 80 certificate and identification", Some(Duration::from_secs(5)), c4_ex80_certificate),
        ("example 336 decide", Some(Duration::from_secs(1)), c5_ex336),
        ("closed forms vs explicit lifts", Some(Duration::from_secs(30)), c6_oracle),
        ("Hilbert product formula", None, c7_product_formula),
        ("cocycle constructors", None, c8_cocycles),
        ("lambda unit coboundary", None, c9_lambda),
        ("two coboundary methods agree", None, c10_two_methods),
    ];
    let mut failed = 0;
    for (idx, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took longer than {l:?}")),
            (r, _) => r,
        };
        let ms = elapsed.as_secs_f64() * 1000.0;
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({ms:.1} ms): {detail}", idx + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms:.1} ms): {why}", idx + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
