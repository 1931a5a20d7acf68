//! Closed-form `δ(ψ)` against `δ` computed from random explicit lifts.

mod common;

use bbdescent_core::delta::{admissible_subgroups, one_plus_zeta, power_lifts, v4_sign_symbols, Shape, SignComponent};
use bbdescent_core::descent::{check_lifts, Witness, WitnessCheck};
use bbdescent_core::qalg::{qinv, qmul, QuaternionElement};
use bbdescent_core::qarith::{QuaternionClass, QuaternionSymbol, SquareClass};
use bbdescent_core::rational::int;
use bbdescent_core::Rational;
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

const ALGEBRAS: [(i64, i64); 5] = [(-1, 3), (-1, 7), (-1, 11), (-3, 2), (-3, 5)];
const POOL: [i64; 14] = [-1, 2, -2, 3, 5, -5, 6, 7, -7, 10, 11, 13, -15, 14];

fn pure(b: QuaternionSymbol, c: [i64; 3]) -> QuaternionElement {
    QuaternionElement::new(b, [int(0), int(c[0]), int(c[1]), int(c[2])])
}

fn pure_part(x: &QuaternionElement) -> QuaternionElement {
    let mut y = x.clone();
    y.c[0] = Rational::zero();
    y
}

fn square_class(x: &QuaternionElement) -> SquareClass {
    let sq = qmul(x, x).unwrap();
    SquareClass::from_rational(sq.central_value().expect("pure")).unwrap()
}

fn conj(g: &QuaternionElement, x: &QuaternionElement) -> QuaternionElement {
    qmul(&qmul(g, x).unwrap(), &qinv(g).unwrap()).unwrap()
}

fn unit(b: QuaternionSymbol, c: [i64; 4]) -> QuaternionElement {
    let g = QuaternionElement::new(b, c.map(int));
    if g.is_zero() {
        QuaternionElement::one(b)
    } else {
        g
    }
}

fn algebra(idx: usize) -> QuaternionSymbol {
    let (a, b) = ALGEBRAS[idx % ALGEBRAS.len()];
    let s = sym(a, b);
    assert!(s.is_division() && !s.is_definite());
    s
}

fn independent(s: i64, t: i64) -> Option<(SquareClass, SquareClass)> {
    let (s, t) = (sc(s), sc(t));
    (s != t && !s.is_one() && !t.is_one()).then_some((s, t))
}

fn assert_verified(w: &Witness, b: QuaternionSymbol, lifts: &[QuaternionElement]) {
    match check_lifts(w, b, &q(), lifts).unwrap() {
        WitnessCheck::Verified(_) => {}
        other => panic!("{w} in {b}: {other:?}"),
    }
}

fn coords() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-4i64..=4).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

/// Algebras admitting `shape` whose presentation carries `ζₙ`.
fn zeta_algebras(n: u32, shape: Shape) -> Vec<QuaternionSymbol> {
    (0..ALGEBRAS.len())
        .map(algebra)
        .filter(|b| admissible_subgroups(*b).unwrap().contains(&shape) && one_plus_zeta(n, *b).is_ok())
        .collect()
}

fn run_cyclic(n: u32, alg: usize, t: i64, g: [i64; 4]) {
    let algebras = zeta_algebras(n, Shape::Cyclic(n));
    let b = algebras[alg % algebras.len()];
    let x = conj(&unit(b, g), &one_plus_zeta(n, b).unwrap());
    let w = Witness::Cyclic {
        n,
        t: sc(t),
        extension: "M".into(),
        sigma: "s".into(),
        sign: QuaternionClass::trivial(),
    };
    assert_verified(&w, b, &power_lifts(n as usize, &x, None).unwrap());
}

fn run_dihedral(n: u32, alg: usize, s: i64, t: i64, c: [i64; 3], g: [i64; 4]) {
    let algebras = zeta_algebras(n, Shape::Dihedral(n));
    let b = algebras[alg % algebras.len()];
    let y = pure_part(&qmul(&QuaternionElement::i(b), &pure(b, c)).unwrap());
    if y.is_zero() {
        return;
    }
    let g = unit(b, g);
    let (x, y) = (conj(&g, &one_plus_zeta(n, b).unwrap()), conj(&g, &y));
    let (s, t) = if n % 2 == 0 {
        match independent(s, t) {
            Some((s, t)) => (Some(s), t),
            None => return,
        }
    } else {
        (None, sc(t))
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
    assert_verified(&w, b, &power_lifts(n as usize, &x, Some(&y)).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn c2_matches(alg in 0usize..5, t in prop::sample::select(&POOL[..]), c in coords()) {
        let b = algebra(alg);
        let y = pure(b, c);
        let w = Witness::C2 { t: sc(t), b: square_class(&y) };
        assert_verified(&w, b, &[QuaternionElement::one(b), y]);
    }

    #[test]
    fn v4_matches(
        alg in 0usize..5,
        s in prop::sample::select(&POOL[..]),
        t in prop::sample::select(&POOL[..]),
        c1 in coords(),
        c2 in coords(),
    ) {
        let b = algebra(alg);
        let Some((s, t)) = independent(s, t) else { return Ok(()) };
        let x = pure(b, c1);
        let y = pure_part(&qmul(&x, &pure(b, c2)).unwrap());
        prop_assume!(!y.is_zero());
        let (a, bb) = (square_class(&x), square_class(&y));
        let sign = SignComponent::from_symbols(v4_sign_symbols(s, t, a, bb)).class().unwrap().clone();
        let w = Witness::V4 { s, t, a, b: bb, sign };
        let xy = qmul(&x, &y).unwrap();
        assert_verified(&w, b, &[QuaternionElement::one(b), x, y, xy]);
    }

    #[test]
    fn c3_matches(alg in 0usize..5, t in prop::sample::select(&POOL[..]), g in prop::array::uniform4(-3i64..=3)) {
        run_cyclic(3, alg, t, g);
    }

    #[test]
    fn c4_matches(alg in 0usize..5, t in prop::sample::select(&POOL[..]), g in prop::array::uniform4(-3i64..=3)) {
        run_cyclic(4, alg, t, g);
    }

    #[test]
    fn c6_matches(alg in 0usize..5, t in prop::sample::select(&POOL[..]), g in prop::array::uniform4(-3i64..=3)) {
        run_cyclic(6, alg, t, g);
    }

    #[test]
    fn d6_matches(
        alg in 0usize..5,
        t in prop::sample::select(&POOL[..]),
        c in coords(),
        g in prop::array::uniform4(-3i64..=3),
    ) {
        run_dihedral(3, alg, 1, t, c, g);
    }

    #[test]
    fn d8_matches(
        alg in 0usize..5,
        s in prop::sample::select(&POOL[..]),
        t in prop::sample::select(&POOL[..]),
        c in coords(),
        g in prop::array::uniform4(-3i64..=3),
    ) {
        run_dihedral(4, alg, s, t, c, g);
    }

    #[test]
    fn d12_matches(
        alg in 0usize..5,
        s in prop::sample::select(&POOL[..]),
        t in prop::sample::select(&POOL[..]),
        c in coords(),
        g in prop::array::uniform4(-3i64..=3),
    ) {
        run_dihedral(6, alg, s, t, c, g);
    }
}
