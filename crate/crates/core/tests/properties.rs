mod common;

use bbdescent_core::cocycle::{pm_coboundary_f2, pm_coboundary_witness, verify_cocycle, OneChain, Sign, TwoCocycle};
use bbdescent_core::delta::{
    admissible_subgroups, alpha_value, build_cn_sign_cocycle, build_d2n_cocycles, cn_a_value, cn_cocycle, d2n_sign_cocycle, gamma_s_t, v4_cocycle,
    GammaClass, PMorphism, SignComponent,
};
use bbdescent_core::descent::{
    bruteforce_check, check_lifts, decide, minimal_fields_with_endos, restrict_gamma, DecideOptions, Verdict, Witness, WitnessCheck,
};
use bbdescent_core::groups::{cyclic_group, dihedral_group, klein_group, FiniteGroup};
use bbdescent_core::qalg::{qmul, QuaternionElement};
use bbdescent_core::qarith::{factor, hilbert_symbol, symbol_class, Place, QuaternionSymbol};
use bbdescent_core::rational::int;
use common::*;
use proptest::prelude::*;

#[test]
fn hilbert_product_formula() {
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            if a == 0 || b == 0 {
                continue;
            }
            let (sa, sb) = (sc(a), sc(b));
            let mut places = vec![Place::Infinity, Place::Finite(2)];
            for (p, _) in factor((a * b).unsigned_abs()) {
                if p != 2 {
                    places.push(Place::Finite(p));
                }
            }
            let mut bad: Vec<Place> = places.into_iter().filter(|&v| hilbert_symbol(sa, sb, v) == -1).collect();
            bad.sort();
            assert_eq!(bad.len() % 2, 0, "({a},{b})");
            let ram: Vec<Place> = symbol_class(sa, sb).ramified().iter().copied().collect();
            assert_eq!(ram, bad, "({a},{b})");
        }
    }
}

#[test]
fn built_cocycles_are_cocycles() {
    for x in [-7i64, -1, 2, 3, 10] {
        for y in [-5i64, -1, 3, 6] {
            assert!(verify_cocycle(&v4_cocycle(&int(x), &int(y))));
        }
    }
    assert!(verify_cocycle(&gamma_s_t()));
    for n in [3usize, 4, 6] {
        assert!(verify_cocycle(&cn_cocycle(n, &int(-3))));
        assert!(verify_cocycle(&build_cn_sign_cocycle(n)));
    }
    for n in [3u32, 4, 6] {
        for b in [-6i64, -1, 2, 3, 5] {
            let (g, e, c) = build_d2n_cocycles(n, &cn_a_value(n).unwrap(), &int(b), &alpha_value(n).unwrap()).unwrap();
            assert!(verify_cocycle(&g) && verify_cocycle(&e) && verify_cocycle(&c));
        }
        assert!(verify_cocycle(&d2n_sign_cocycle(n).unwrap()));
    }
}

#[test]
fn odd_n_sign_tables_are_explicit_coboundaries() {
    for n in [3usize, 5] {
        let g = cyclic_group(n);
        let d = OneChain::new(g.clone(), g.elements().map(|i| Sign::from_minus(i % 2 == 1)).collect()).unwrap();
        assert_eq!(d.coboundary(), build_cn_sign_cocycle(n));
    }
    let g = dihedral_group(3);
    let d = OneChain::new(g.clone(), g.elements().map(|x| Sign::from_minus(x % 3 % 2 == 1)).collect()).unwrap();
    assert_eq!(d.coboundary(), d2n_sign_cocycle(3).unwrap());
}

#[test]
fn oracle_detects_wrong_witness() {
    let b = sym(-1, 3);
    let (one, x, y) = (QuaternionElement::one(b), QuaternionElement::i(b), QuaternionElement::j(b));
    // y² = 3 but the witness claims b = −3; (3,−1) is not split
    let w = Witness::C2 { t: sc(3), b: sc(-3) };
    let r = check_lifts(&w, b, &q(), &[one.clone(), y.clone()]).unwrap();
    assert!(matches!(r, WitnessCheck::Failed(_)), "{r:?}");
    let w = Witness::C2 { t: sc(3), b: sc(3) };
    let r = check_lifts(&w, b, &q(), &[one.clone(), y.clone()]).unwrap();
    assert!(matches!(r, WitnessCheck::Verified(_)));
    // x² = −1, y² = 3: swapping a and b is detected through pbar
    let xy = qmul(&x, &y).unwrap();
    let w = Witness::V4 { s: sc(5), t: sc(7), a: sc(3), b: sc(-1), sign: class(&[]) };
    let r = check_lifts(&w, b, &q(), &[one, x, y, xy]).unwrap();
    assert!(matches!(r, WitnessCheck::Failed(_)), "{r:?}");
}

fn groups() -> Vec<(FiniteGroup, TwoCocycle<Sign>)> {
    vec![
        (cyclic_group(2), build_cn_sign_cocycle(2)),
        (klein_group(), gamma_s_t()),
        (cyclic_group(4), build_cn_sign_cocycle(4)),
        (cyclic_group(6), build_cn_sign_cocycle(6)),
        (dihedral_group(3), d2n_sign_cocycle(3).unwrap()),
        (dihedral_group(4), d2n_sign_cocycle(4).unwrap()),
        (dihedral_group(6), d2n_sign_cocycle(6).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Exhaustive search and linear algebra agree on random ±1 cocycles.
    #[test]
    fn coboundary_methods_agree(which in 0usize..7, twist in any::<bool>(), bits in any::<u64>()) {
        let (g, base) = groups().swap_remove(which);
        let chain = OneChain::new(
            g.clone(),
            g.elements().map(|x| Sign::from_minus(x != 0 && bits >> x & 1 == 1)).collect(),
        ).unwrap();
        let mut c = chain.coboundary();
        if twist {
            c = c.product(&base).unwrap();
        }
        prop_assert!(verify_cocycle(&c));
        let a = pm_coboundary_witness(&c);
        let b = pm_coboundary_f2(&c);
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(a.coboundary(), c.clone());
            prop_assert_eq!(b.coboundary(), c);
        }
        if !twist {
            prop_assert!(pm_coboundary_f2(&chain.coboundary()).is_some());
        }
    }
}

const POOL: [i64; 10] = [-1, 2, -2, 3, -3, 5, 6, -7, 10, 13];
const ALGEBRAS: [(i64, i64); 5] = [(-1, 3), (-1, 7), (-2, 5), (-3, 2), (3, 5)];

fn random_gamma(pairs: &[(usize, usize)], sign: Option<(usize, usize)>) -> GammaClass {
    let ps = pairs
        .iter()
        .map(|&(t, d)| (sc(POOL[t % POOL.len()]), sc(POOL[d % POOL.len()]).abs()))
        .collect();
    let sign = sign.map_or_else(
        || class(&[]),
        |(x, y)| symbol_class(sc(POOL[x % POOL.len()]), sc(POOL[y % POOL.len()])),
    );
    GammaClass {
        pbar: PMorphism::new(ps, q()),
        sign: SignComponent::from_class(sign),
        base: q(),
    }
}

fn algebra(i: usize) -> QuaternionSymbol {
    let (a, b) = ALGEBRAS[i % ALGEBRAS.len()];
    let s = sym(a, b);
    assert!(s.is_division() && !s.is_definite(), "{s}");
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A witness over K restricts to every extension of K.
    #[test]
    fn defined_is_monotone(
        pairs in prop::collection::vec((0usize..10, 0usize..10), 0..=2),
        sign in prop::option::of((0usize..10, 0usize..10)),
        alg in 0usize..5,
        u in 0usize..10,
    ) {
        let g = random_gamma(&pairs, sign);
        let b = algebra(alg);
        let d = decide(&g, b, &q(), &[], DecideOptions::default()).unwrap();
        if let Verdict::NotDefined = d.verdict {
            let mut shapes: Vec<_> = d.case_log.iter().map(|r| r.shape).collect();
            shapes.dedup();
            prop_assert_eq!(shapes, admissible_subgroups(b).unwrap());
        }
        if g.pbar.is_trivial() && g.sign.class().unwrap().is_trivial() {
            let trivial = matches!(d.verdict, Verdict::Defined { witness: Witness::Trivial, .. });
            prop_assert!(trivial);
        }
        if let Verdict::Defined { witness, .. } = &d.verdict {
            let r = bruteforce_check(witness, b, &q()).unwrap();
            prop_assert!(!matches!(r, WitnessCheck::Failed(_)), "{} {:?}", witness, r);
            let l = field(&[POOL[u]]);
            let d2 = decide(&g, b, &l, &[], DecideOptions::default()).unwrap();
            prop_assert!(!matches!(d2.verdict, Verdict::NotDefined), "{:?}", d2.case_log);
        }
    }

    /// Minimal fields contain `K_P` and kill the whole class.
    #[test]
    fn minimal_fields_contain_kp(
        pairs in prop::collection::vec((0usize..10, 0usize..10), 0..=3),
        sign in prop::option::of((0usize..10, 0usize..10)),
    ) {
        let g = random_gamma(&pairs, sign);
        let mf = minimal_fields_with_endos(&g).unwrap();
        prop_assert!(!mf.fields.is_empty());
        for f in &mf.fields {
            prop_assert!(mf.kp.is_subfield_of(f));
            prop_assert!(restrict_gamma(&g, f).is_trivial().unwrap());
        }
    }
}
