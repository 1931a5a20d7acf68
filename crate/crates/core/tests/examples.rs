mod common;

use bbdescent_core::cocycle::verify_unit_coboundary;
use bbdescent_core::delta::{build_d2n_cocycles, Shape};
use bbdescent_core::descent::{
    bruteforce_check, decide, decide_with_endos, identify_brauer_class, minimal_fields_with_endos, CaseOutcome,
    DecideOptions, IdentifyOptions, IdentifyOutcome, Verdict, Witness, WitnessCheck,
};
use bbdescent_core::groups::subgroup;
use bbdescent_core::numfield::FieldAutomorphism;
use bbdescent_core::rational::int;
use common::*;

#[test]
fn certificate_support_is_two_and_five() {
    let v = ex80_certificate(None, false).validate().unwrap();
    assert_eq!(v.support, vec![2, 5]);
    let labels: Vec<String> = v
        .subfields
        .iter()
        .map(|s| format!("{} {}", s.label, s.field))
        .collect();
    assert!(labels.contains(&"<s> Q(sqrt -1)".to_string()), "{labels:?}");
    assert!(labels.contains(&"<s^2,t> Q(sqrt 5)".to_string()), "{labels:?}");
}

#[test]
fn lambda_on_klein_subgroup_is_a_unit_coboundary() {
    let v = ex80_certificate(None, false).validate().unwrap();
    let (_, _, c) = build_d2n_cocycles(4, &int(-1), &int(3), &int(2)).unwrap();
    let (h, emb) = subgroup(&v.group, &[2, 4]).unwrap();
    let ch = c.restrict(&h, &emb);
    let action: Vec<FieldAutomorphism> = emb.iter().map(|&x| v.action[x].clone()).collect();
    let e = ex80();
    assert!(verify_unit_coboundary(&ch, &ex80_lambda(), &e.field, &action));
    // literal value λ(σ²τ) = −i does not satisfy the coboundary relation
    let mut typo = ex80_lambda();
    typo[3] = e.field.neg(&e.i);
    assert!(!verify_unit_coboundary(&ch, &typo, &e.field, &action));
}

#[test]
fn identify_d8_sign_class() {
    let v = ex80_certificate(Some(ex80_lambda()), true).validate().unwrap();
    let (_, _, c) = build_d2n_cocycles(4, &int(-1), &int(3), &int(2)).unwrap();
    let id = identify_brauer_class(&c, &v, &q(), IdentifyOptions::default()).unwrap();
    assert_eq!(id.outcome, IdentifyOutcome::Class(class(&[2, 5])));
    assert!(!id.oracle_facts.is_empty());
    let bare = ex80_certificate(Some(ex80_lambda()), false).validate().unwrap();
    let id = identify_brauer_class(&c, &bare, &q(), IdentifyOptions::default()).unwrap();
    let IdentifyOutcome::Undecided(obs) = id.outcome else { panic!() };
    let shown: Vec<String> = obs.iter().map(|o| o.to_string()).collect();
    assert_eq!(shown, vec!["NormQuestion(M, Q(sqrt -1), -1)".to_string()]);
    assert_eq!(id.survivors, vec![class(&[]), class(&[2, 5])]);
}

#[test]
fn example_80_decide() {
    let g = gamma(&[(5, 2), (-4, 3)], &[2, 5]);
    let b = sym(-1, 3);
    let cert = ex80_certificate(Some(ex80_lambda()), true);
    let d = decide(&g, b, &q(), &[cert], DecideOptions::default()).unwrap();
    let Verdict::Defined { witness, .. } = &d.verdict else { panic!("{:?}", d.verdict) };
    let Witness::Dihedral { n: 4, s, t, b: bb, sign, .. } = witness else { panic!("{witness}") };
    assert_eq!((*s, *t, *bb), (Some(sc(5)), sc(-1), sc(3)));
    assert_eq!(sign, &class(&[2, 5]));
    assert!(!d.oracle_facts.is_empty());

    let d = decide(&g, b, &q(), &[ex80_certificate(Some(ex80_lambda()), false)], DecideOptions::default()).unwrap();
    let Verdict::Undecided { obligations } = &d.verdict else { panic!("{:?}", d.verdict) };
    assert!(obligations.iter().any(|o| o.to_string() == "NormQuestion(M, Q(sqrt -1), -1)"));

    let d = decide(&g, b, &q(), &[], DecideOptions::default()).unwrap();
    assert!(matches!(d.verdict, Verdict::Undecided { .. }));
}

#[test]
fn example_80_with_endos_is_not_defined() {
    let g = gamma(&[(5, 2), (-4, 3)], &[2, 5]);
    let mf = minimal_fields_with_endos(&g).unwrap();
    let kmin = mf.minimum().unwrap().clone();
    assert_eq!(kmin, field(&[5, -1]));
    let d = decide_with_endos(&g, sym(-1, 3), &kmin, &q()).unwrap();
    assert!(matches!(d.verdict, Verdict::NotDefined));
    assert_eq!(d.case_log.len(), 4);
    for r in &d.case_log {
        let CaseOutcome::Refuted(reasons) = &r.outcome else { panic!() };
        assert!(reasons.iter().any(|x| x.kind() == "sign-mismatch"), "{}", r.option);
    }
    let negative: Vec<_> = d.case_log.iter().filter(|r| r.option.contains("a=-2")).collect();
    assert_eq!(negative.len(), 2);
    for r in negative {
        let CaseOutcome::Refuted(reasons) = &r.outcome else { panic!() };
        assert!(reasons.iter().any(|x| x.kind() == "algebra-mismatch"));
    }
}

#[test]
fn example_60_with_endos() {
    let g = gamma(&[(5, 2), (-3, 5)], &[3, 5]);
    let b = sym(-2, 5);
    let kmin = minimal_fields_with_endos(&g).unwrap().minimum().unwrap().clone();
    assert_eq!(kmin, field(&[5, -3]));
    let d = decide_with_endos(&g, b, &kmin, &q()).unwrap();
    let Verdict::Defined { witness, .. } = &d.verdict else { panic!() };
    let Witness::V4 { a, b: bb, sign, .. } = witness else { panic!() };
    assert_eq!((*a, *bb), (sc(2), sc(5)));
    assert_eq!(sign, &class(&[3, 5]));
    assert!(matches!(bruteforce_check(witness, b, &q()).unwrap(), WitnessCheck::Verified(_)));
}

#[test]
fn example_243() {
    let d = decide(&gamma(&[(-3, 6)], &[]), sym(-1, 3), &q(), &[], DecideOptions::default()).unwrap();
    let Verdict::Defined { witness, .. } = &d.verdict else { panic!() };
    assert_eq!(witness.to_string(), "C2: t=-3 b=6");
}

#[test]
fn example_336_reasons() {
    let d = decide(&gamma(&[(-3, 11)], &[2, 3]), sym(-1, 3), &q(), &[], DecideOptions::default()).unwrap();
    assert!(matches!(d.verdict, Verdict::NotDefined));
    let kinds = |shape: Shape| -> Vec<&'static str> {
        d.case_log
            .iter()
            .filter(|r| r.shape == shape)
            .flat_map(|r| match &r.outcome {
                CaseOutcome::Refuted(v) => v.iter().map(|x| x.kind()).collect::<Vec<_>>(),
                _ => panic!("{} {} not refuted", r.shape, r.option),
            })
            .collect()
    };
    assert!(kinds(Shape::C2).contains(&"sign-mismatch"));
    assert!(kinds(Shape::V4).contains(&"algebra-mismatch"));
    assert_eq!(kinds(Shape::Cyclic(3)), vec!["trivial-delta"]);
    assert_eq!(kinds(Shape::Cyclic(4)), vec!["alpha-mismatch"]);
    assert_eq!(kinds(Shape::Cyclic(6)), vec!["alpha-mismatch"]);
    assert!(kinds(Shape::Dihedral(3)).contains(&"algebra-mismatch"));
    assert!(kinds(Shape::Dihedral(3)).contains(&"sign-mismatch"));
    assert_eq!(kinds(Shape::Dihedral(4)), vec!["alpha-mismatch"]);
    assert_eq!(kinds(Shape::Dihedral(6)), vec!["alpha-mismatch"]);
    let c4 = d.case_log.iter().find(|r| r.shape == Shape::Cyclic(4)).unwrap();
    let CaseOutcome::Refuted(v) = &c4.outcome else { panic!() };
    assert!(v[0].to_string().contains("alpha = 2 vs 11"));
}
