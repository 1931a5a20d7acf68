#![allow(dead_code)]

use bbdescent_core::delta::{GammaClass, PMorphism, Shape, SignComponent};
use bbdescent_core::descent::{ExtensionCertificate, LambdaWitness, NormFact, NormSource};
use bbdescent_core::numfield::{FieldElement, NumberField};
use bbdescent_core::qarith::{
    AbsSquareClass, Place, PolyquadraticField, QuaternionClass, QuaternionSymbol, SquareClass,
};
use bbdescent_core::rational::frac;

pub fn sc(n: i64) -> SquareClass {
    SquareClass::new(n).unwrap()
}

pub fn ab(n: u64) -> AbsSquareClass {
    AbsSquareClass::new(n).unwrap()
}

pub fn q() -> PolyquadraticField {
    PolyquadraticField::rationals()
}

pub fn field(gens: &[i64]) -> PolyquadraticField {
    PolyquadraticField::new(&gens.iter().map(|&g| sc(g)).collect::<Vec<_>>()).unwrap()
}

pub fn sym(a: i64, b: i64) -> QuaternionSymbol {
    QuaternionSymbol::from_integers(a, b).unwrap()
}

/// `0` stands for the infinite place.
pub fn class(ps: &[u64]) -> QuaternionClass {
    QuaternionClass::from_places(ps.iter().map(|&p| if p == 0 { Place::Infinity } else { Place::Finite(p) }))
        .unwrap()
}

pub fn gamma(pairs: &[(i64, u64)], ram: &[u64]) -> GammaClass {
    GammaClass {
        pbar: PMorphism::new(pairs.iter().map(|&(t, d)| (sc(t), ab(d))).collect(), q()),
        sign: SignComponent::from_class(class(ram)),
        base: q(),
    }
}

fn elt(f: &NumberField, c: [(i64, i64); 8]) -> FieldElement {
    f.element(c.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap()
}

pub struct Ex80 {
    pub field: NumberField,
    pub i: FieldElement,
    pub r4_5: FieldElement,
    pub sigma: FieldElement,
    pub tau: FieldElement,
}

/// `ℚ(i, ⁴√5)` with `θ = i + ⁴√5 … ` presented by a degree 8 polynomial.
pub fn ex80() -> Ex80 {
    let field = NumberField::from_i64(&[16, 0, 64, 0, -4, 0, 4, 0, 1]).unwrap();
    let i = elt(&field, [(0, 1), (-35, 18), (0, 1), (5, 18), (0, 1), (-1, 9), (0, 1), (-5, 144)]);
    let r4_5 = elt(&field, [(0, 1), (53, 18), (0, 1), (-5, 18), (0, 1), (1, 9), (0, 1), (5, 144)]);
    let sigma = elt(&field, [(14, 9), (-35, 18), (5, 18), (5, 18), (5, 36), (-1, 9), (1, 36), (-5, 144)]);
    let tau = elt(&field, [(0, 1), (44, 9), (0, 1), (-5, 9), (0, 1), (2, 9), (0, 1), (5, 72)]);
    Ex80 {
        field,
        i,
        r4_5,
        sigma,
        tau,
    }
}

/// The D8 certificate; `lambda` gives the values on `⟨σ², τ⟩` and
/// `norm` decides whether to include the oracle fact on `⟨σ⟩`.
pub fn ex80_certificate(lambda: Option<[FieldElement; 4]>, norm: bool) -> ExtensionCertificate {
    let e = ex80();
    let mut cert = ExtensionCertificate {
        name: "M".into(),
        field: e.field.clone(),
        shape: Shape::Dihedral(4),
        generator_images: vec![e.sigma.clone(), e.tau.clone()],
        embeds: vec![("i".into(), e.i.clone()), ("r4_5".into(), e.r4_5.clone())],
        lambdas: vec![],
        norm_facts: vec![],
    };
    if let Some(values) = lambda {
        cert.lambdas.push(LambdaWitness {
            subgroup: vec![2, 4],
            values: values.to_vec(),
        });
    }
    if norm {
        cert.norm_facts.push(NormFact {
            subgroup: vec![1],
            element: e.field.from_rational(frac(-1, 1)),
            is_norm: false,
            source: NormSource::Oracle("-1 is not a norm from Q(i, 5^(1/4)) to Q(i)".into()),
        });
    }
    cert
}

pub fn ex80_lambda() -> [FieldElement; 4] {
    let e = ex80();
    let f = &e.field;
    [f.one(), e.i.clone(), e.i.clone(), f.from_rational(frac(-1, 1))]
}
